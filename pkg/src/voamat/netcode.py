"""Code assignment for the two-source, four-middle-edge multicast network.

Sources x and y feed four parallel middle edges; each of the six sinks
sees a different pair of edges and must recover both sources.  Carrying
(x, y, L1(x,y), L2(x,y)) on the edges, with L1 and L2 a pair of
orthogonal Latin squares, makes every pair of edge symbols determine
(x, y): the four columns form a strength-2 array of index one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InputError
from .oa_builders import oa_2_4
from .voa import verify_oa

EDGE_NAMES = ("e1", "e2", "e3", "e4")


@dataclass(frozen=True)
class Sink:
    receives: tuple[str, str]
    decode: dict  # (symbol, symbol) -> (x, y)


@dataclass(frozen=True)
class NetcodeScheme:
    level: int
    edges: tuple[str, ...]
    assignments: dict  # edge name -> v x v table, indexed [x][y]
    sinks: tuple[Sink, ...]

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "sources": ["x", "y"],
            "edges": list(self.edges),
            "assignments": {e: [list(r) for r in tbl]
                            for e, tbl in self.assignments.items()},
            "sinks": [
                {
                    "receives": list(s.receives),
                    "decode": {f"{a},{b}": list(xy)
                               for (a, b), xy in sorted(s.decode.items())},
                }
                for s in self.sinks
            ],
        }


def netcode_combination(v: int) -> NetcodeScheme:
    """Build and exhaustively check the scheme at level v.

    Edge e1 carries x, e2 carries y, e3 and e4 carry the two orthogonal
    Latin square symbols.  Every sink's decode table is constructed by
    inverting its pair of columns over all v^2 source pairs; a collision
    would mean the underlying array is not strength 2 and is reported as
    an error.
    """
    oa = oa_2_4(v)
    ok, lam = verify_oa(oa, 2, v)
    if not ok or lam != 1:
        raise InputError("internal: four-column array failed its strength-2 check")
    tables = {
        name: [[0] * v for _ in range(v)] for name in EDGE_NAMES
    }
    for row in oa.rows:
        x, y = row[0], row[1]
        for c, name in enumerate(EDGE_NAMES):
            tables[name][x][y] = row[c]
    sinks = []
    for i, j in itertools.combinations(range(4), 2):
        decode = {}
        for x in range(v):
            for y in range(v):
                key = (tables[EDGE_NAMES[i]][x][y], tables[EDGE_NAMES[j]][x][y])
                if key in decode and decode[key] != (x, y):
                    raise InputError(
                        f"sink {EDGE_NAMES[i]},{EDGE_NAMES[j]} cannot decode: "
                        f"{key} is ambiguous")
                decode[key] = (x, y)
        if len(decode) != v * v:
            raise InputError("decode table does not cover all source pairs")
        sinks.append(Sink((EDGE_NAMES[i], EDGE_NAMES[j]), decode))
    return NetcodeScheme(v, EDGE_NAMES, tables, tuple(sinks))
