"""Constructive suppliers of the small orthogonal arrays everything else eats.

Strength-2 arrays on three columns come from the cyclic group table; on
four columns from a pair of mutually orthogonal Latin squares (MOLS:
prime powers linearly over GF(q), composites by the direct-product
composition).  Orders 2 and 6 are refused because no MOLS pair exists
(order 6 is Euler's 36-officers problem, settled by Tarry); orders
congruent to 2 mod 4 beyond 6 do admit pairs but are outside this
builder and are refused with a distinct reason.

The strength-3 catalog on four ternary columns is enumerated by
depth-first completion of the last column as a function of the other
three that is bijective along every axis line.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import InputError, UnsupportedLevelError
from .gf import factorize, gf
from .voa import Voa


@dataclass(frozen=True)
class LatinSquare:
    order: int
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        v = self.order
        if len(self.cells) != v or any(len(r) != v for r in self.cells):
            raise InputError("latin square cells must be a v x v grid")
        want = list(range(v))
        for r in self.cells:
            if sorted(r) != want:
                raise InputError("latin square row is not a permutation")
        for c in range(v):
            if sorted(row[c] for row in self.cells) != want:
                raise InputError("latin square column is not a permutation")

    def __call__(self, x: int, y: int) -> int:
        return self.cells[x][y]


def cyclic_square(v: int) -> LatinSquare:
    return LatinSquare(v, tuple(tuple((x + y) % v for y in range(v))
                                for x in range(v)))


def gf_linear_square(q: int, alpha: int) -> LatinSquare:
    """L(x, y) = x + alpha * y over GF(q); alpha must be nonzero."""
    if alpha % q == 0:
        raise InputError("alpha must be nonzero")
    f = gf(q)
    return LatinSquare(q, tuple(tuple(f.add[x][f.mul[alpha][y]] for y in range(q))
                                for x in range(q)))


def are_orthogonal(l1: LatinSquare, l2: LatinSquare) -> bool:
    """Superimposing must produce every ordered pair exactly once."""
    if l1.order != l2.order:
        return False
    v = l1.order
    seen = {(l1(x, y), l2(x, y)) for x in range(v) for y in range(v)}
    return len(seen) == v * v


def product_square(a: LatinSquare, b: LatinSquare) -> LatinSquare:
    """Direct-product square of order |a|*|b| on pair-encoded symbols."""
    va, vb = a.order, b.order
    v = va * vb
    cells = [[0] * v for _ in range(v)]
    for x1, x2, y1, y2 in itertools.product(range(va), range(vb), range(va), range(vb)):
        cells[x1 * vb + x2][y1 * vb + y2] = a(x1, y1) * vb + b(x2, y2)
    return LatinSquare(v, tuple(tuple(r) for r in cells))


def mols_pair(v: int) -> tuple[LatinSquare, LatinSquare]:
    """A pair of mutually orthogonal Latin squares of order v.

    Supported orders: prime powers >= 3 and products of such (every
    order not congruent to 2 mod 4).  Orders 2 and 6 have no pair at
    all; other orders 2 mod 4 exist in the literature but are not
    constructed here.
    """
    if v < 2:
        raise InputError("order must be at least 2")
    if v in (2, 6):
        raise UnsupportedLevelError(
            v, "nonexistent", f"no pair of orthogonal Latin squares of order {v} exists")
    if v % 4 == 2:
        raise UnsupportedLevelError(
            v, "out_of_scope",
            f"order {v} (2 mod 4) is not covered by the direct-product builder")
    first, second = None, None
    for p, k in sorted(factorize(v).items()):
        q = p ** k
        a = gf_linear_square(q, 1)
        b = gf_linear_square(q, 2 % q)
        first = a if first is None else product_square(first, a)
        second = b if second is None else product_square(second, b)
    if not are_orthogonal(first, second):
        raise InputError(f"internal: constructed squares of order {v} not orthogonal")
    return first, second


def cyclic_oa23(v: int) -> Voa:
    """Strength-2 array on three columns from the cyclic group:
    rows (x, y, x+y mod v)."""
    if v < 2:
        raise InputError("level must be at least 2")
    rows = [(x, y, (x + y) % v) for x in range(v) for y in range(v)]
    return Voa(v, (1, 2, 3), rows)


def oa_2_4(v: int) -> Voa:
    """Strength-2 array on four columns: rows (x, y, L1(x,y), L2(x,y))."""
    l1, l2 = mols_pair(v)
    rows = [(x, y, l1(x, y), l2(x, y)) for x in range(v) for y in range(v)]
    return Voa(v, (1, 2, 3, 4), rows)


@lru_cache(maxsize=1)
def oa343_functions() -> tuple[tuple[int, ...], ...]:
    """All completions f: Z_3^3 -> Z_3 bijective along every axis line.

    Each is returned as a 27-tuple indexed by 9x + 3y + z.  Together
    with the identity columns these are exactly the strength-3 arrays
    on four ternary columns with every triple hit once.
    """
    out: list[tuple[int, ...]] = []
    vals = [0] * 27
    used_xy = [[0] * 3 for _ in range(3)]
    used_xz = [[0] * 3 for _ in range(3)]
    used_yz = [[0] * 3 for _ in range(3)]
    cells = [(x, y, z) for x in range(3) for y in range(3) for z in range(3)]

    def fill(i: int):
        if i == 27:
            out.append(tuple(vals))
            return
        x, y, z = cells[i]
        blocked = used_xy[x][y] | used_xz[x][z] | used_yz[y][z]
        for c in range(3):
            bit = 1 << c
            if blocked & bit:
                continue
            vals[i] = c
            used_xy[x][y] |= bit
            used_xz[x][z] |= bit
            used_yz[y][z] |= bit
            fill(i + 1)
            used_xy[x][y] ^= bit
            used_xz[x][z] ^= bit
            used_yz[y][z] ^= bit

    fill(0)
    return tuple(sorted(out))


def enumerate_oa343() -> list[Voa]:
    """The complete catalog of strength-3 arrays on four ternary columns,
    canonicalized by lexicographic row order."""
    catalog = []
    for f in oa343_functions():
        rows = [(x, y, z, f[9 * x + 3 * y + z])
                for x in range(3) for y in range(3) for z in range(3)]
        catalog.append(Voa(3, (1, 2, 3, 4), rows))
    return catalog
