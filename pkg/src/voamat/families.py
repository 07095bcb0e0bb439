"""Standard matroid families and matroids derived from graphs and matrices."""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import InputError
from .gf import gf, prime_power
from .linalg import gf_rank, rational_rank
from .matroid import (MAX_GROUND, Label, Matroid, iter_bits, popcount,
                      relax_circuit_hyperplane)

# The seven 3-point lines of the rank-3 binary projective plane, with the
# labeling whose dual has its rank-3 four-sets on
# {1,2,3,5},{1,2,4,6},{1,3,4,7},{1,5,6,7},{2,3,6,7},{2,4,5,7},{3,4,5,6}.
FANO_LINES = (
    (1, 2, 7), (1, 3, 6), (1, 4, 5), (2, 3, 4), (2, 5, 6), (3, 5, 7), (4, 6, 7),
)


def uniform(t: int, n: int) -> Matroid:
    """U_{t,n}: every subset of size at most t is independent."""
    if not 0 <= t <= n:
        raise InputError(f"uniform matroid needs 0 <= t <= n, got t={t}, n={n}")
    if n > MAX_GROUND:
        raise InputError(f"n={n} exceeds the ground set cap {MAX_GROUND}")
    table = bytes(min(t, popcount(m)) for m in range(1 << n))
    return Matroid(tuple(range(1, n + 1)), table, validate=False)


def fano() -> Matroid:
    """The rank-3 binary projective plane on labels 1..7."""
    lines = {frozenset(l) for l in FANO_LINES}
    labels = tuple(range(1, 8))
    table = bytearray(1 << 7)
    for m in range(1 << 7):
        k = popcount(m)
        if k <= 2:
            table[m] = k
        elif k == 3:
            table[m] = 2 if frozenset(i + 1 for i in iter_bits(m)) in lines else 3
        else:
            table[m] = 3
    return Matroid(labels, bytes(table), validate=False)


def fano_dual() -> Matroid:
    return fano().dual()


def wheel_graph(r: int) -> tuple[list[tuple[int, int]], list[str]]:
    """Hub-and-rim graph with r spokes.

    Vertex 0 is the hub; rim vertices are 1..r.  Edge order is the rim
    a1..ar (ai joins rim vertex i to i+1, wrapping) followed by the
    spokes b1..br (bi joins the hub to rim vertex i).
    """
    if r < 2:
        raise InputError("wheel needs r >= 2")
    edges = [(i, i % r + 1) for i in range(1, r + 1)]
    edges += [(0, i) for i in range(1, r + 1)]
    labels = [f"a{i}" for i in range(1, r + 1)] + [f"b{i}" for i in range(1, r + 1)]
    return edges, labels


def wheel(r: int) -> Matroid:
    """Cycle matroid of the wheel graph with r spokes (rank r)."""
    edges, labels = wheel_graph(r)
    return graphic_matroid(edges, labels)


def rim_labels(r: int) -> tuple[str, ...]:
    return tuple(f"a{i}" for i in range(1, r + 1))


def whirl(r: int) -> Matroid:
    """The wheel with its rim relaxed from a circuit-hyperplane to a basis."""
    return relax_circuit_hyperplane(wheel(r), rim_labels(r))


def house_graph() -> tuple[list[tuple[int, int]], list[int]]:
    """A four-cycle sharing one edge with a triangle; edges labeled 1..6."""
    edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 3)]
    return edges, [1, 2, 3, 4, 5, 6]


def house() -> Matroid:
    """Cycle matroid of the house graph: rank 4 on six elements, circuits
    {1,2,3,4}, {4,5,6} and {1,2,3,5,6}."""
    edges, labels = house_graph()
    return graphic_matroid(edges, labels)


def graphic_matroid(edges: Sequence[tuple], labels: Sequence[Label] | None = None) -> Matroid:
    """Cycle matroid of a finite multigraph (self-loops allowed).

    rank(A) = (vertices touched by A) - (components of the subgraph on A).
    """
    if labels is None:
        labels = tuple(range(1, len(edges) + 1))
    labels = tuple(labels)
    if len(labels) != len(edges):
        raise InputError("edge labels must match the edge list")
    m = len(edges)
    if m > MAX_GROUND:
        raise InputError(f"{m} edges exceed the ground set cap {MAX_GROUND}")
    verts = sorted({v for e in edges for v in e}, key=repr)
    vid = {v: i for i, v in enumerate(verts)}
    pairs = [(vid[u], vid[w]) for u, w in edges]

    table = bytearray(1 << m)
    parent = list(range(len(verts)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for mask in range(1, 1 << m):
        touched = set()
        for i in iter_bits(mask):
            touched.add(pairs[i][0])
            touched.add(pairs[i][1])
        for v in touched:
            parent[v] = v
        comp = len(touched)
        for i in iter_bits(mask):
            a, b = find(pairs[i][0]), find(pairs[i][1])
            if a != b:
                parent[a] = b
                comp -= 1
        table[mask] = len(touched) - comp
    return Matroid(labels, bytes(table), validate=False)


def vector_matroid(matrix: Sequence[Sequence[int]], field,
                   labels: Sequence[Label] | None = None) -> Matroid:
    """Column matroid of an integer matrix over GF(q) or the rationals.

    ``field`` is a prime power q for exact GF(q) arithmetic (entries are
    element codes 0..q-1; for prime q plain integers are reduced mod q),
    or ``None``/"Q" for the rationals.
    """
    rows = [list(r) for r in matrix]
    if not rows:
        raise InputError("matrix must have at least one row")
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise InputError("matrix rows must all have the same length")
    if labels is None:
        labels = tuple(range(1, ncols + 1))
    labels = tuple(labels)
    if len(labels) != ncols:
        raise InputError("labels must match the number of columns")
    if ncols > MAX_GROUND:
        raise InputError(f"{ncols} columns exceed the ground set cap {MAX_GROUND}")

    if field in (None, "Q", "q"):
        def rank_cols(cols):
            return rational_rank([[row[c] for c in cols] for row in rows])
    else:
        q = int(field)
        if prime_power(q) is None:
            raise InputError(f"field order {q} is not a prime power")
        table_q = gf(q)
        if table_q.k == 1:
            rows_f = [[x % q for x in r] for r in rows]
        else:
            if any(not 0 <= x < q for r in rows for x in r):
                raise InputError(
                    f"entries for GF({q}) must be element codes in 0..{q - 1}")
            rows_f = rows

        def rank_cols(cols):
            return gf_rank([[row[c] for c in cols] for row in rows_f], table_q)

    table = bytearray(1 << ncols)
    for mask in range(1, 1 << ncols):
        table[mask] = rank_cols(list(iter_bits(mask)))
    return Matroid(labels, bytes(table), validate=False)


def standard(kind: str, **params) -> Matroid:
    """Named standard matroids reachable from the CLI.

    kinds: uniform(t, n), fano, fano_dual, wheel(r), whirl(r), house.
    """
    try:
        if kind == "uniform":
            out = uniform(int(params.pop("t")), int(params.pop("n")))
        elif kind == "wheel":
            out = wheel(int(params.pop("r")))
        elif kind == "whirl":
            out = whirl(int(params.pop("r")))
        elif kind == "fano":
            out = fano()
        elif kind == "fano_dual":
            out = fano_dual()
        elif kind == "house":
            out = house()
        else:
            raise InputError(f"unknown standard matroid kind {kind!r}")
    except KeyError as exc:
        raise InputError(f"missing parameter {exc} for {kind}") from None
    if params:
        raise InputError(f"unexpected parameters {sorted(params)} for {kind}")
    return out
