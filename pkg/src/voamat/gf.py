"""Exact arithmetic tables for small finite fields GF(q).

Field elements are the integers ``0 .. q-1``.  For prime q this is plain
modular arithmetic; for a prime power p^k an element's base-p digits are
the coefficients of a polynomial over GF(p), reduced by a fixed monic
irreducible polynomial.  Tables are built once and checked against the
field axioms on construction.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import InputError

# Monic irreducible polynomials over GF(p), low-degree coefficient first,
# leading 1 omitted: q -> coefficients of x^0 .. x^(k-1).
_IRREDUCIBLE = {
    4: (1, 1),          # x^2 + x + 1 over GF(2)
    8: (1, 1, 0),       # x^3 + x + 1
    16: (1, 1, 0, 0),   # x^4 + x + 1
    32: (1, 0, 1, 0, 0),  # x^5 + x^2 + 1
    9: (1, 0),          # x^2 + 1 over GF(3)
    27: (1, 2, 0),      # x^3 + 2x + 1
    25: (2, 0),         # x^2 + 2 over GF(5)
    49: (1, 0),         # x^2 + 1 over GF(7)
}


def factorize(n: int) -> dict[int, int]:
    """Prime factorization as {prime: exponent}."""
    if n < 1:
        raise InputError(f"cannot factorize {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, k) with n == p**k, or None if n is not a prime power."""
    fac = factorize(n)
    if len(fac) != 1:
        return None
    ((p, k),) = fac.items()
    return p, k


class GfTable:
    """Addition/multiplication tables for GF(q), elements encoded 0..q-1."""

    def __init__(self, q: int):
        pk = prime_power(q)
        if pk is None or q < 2:
            raise InputError(f"{q} is not a prime power")
        p, k = pk
        self.q = q
        self.p = p
        self.k = k
        if k == 1:
            self.add = [[(a + b) % p for b in range(p)] for a in range(p)]
            self.mul = [[(a * b) % p for b in range(p)] for a in range(p)]
        else:
            if q not in _IRREDUCIBLE:
                raise InputError(f"no irreducible polynomial table for GF({q})")
            red = _IRREDUCIBLE[q]
            self.add = [
                [self._enc(tuple((x + y) % p for x, y in zip(self._dec(a), self._dec(b))))
                 for b in range(q)]
                for a in range(q)
            ]
            self.mul = [[self._poly_mul(a, b, red) for b in range(q)] for a in range(q)]
        self.neg = [self.add[a].index(0) for a in range(q)]
        self.inv = [0] + [self.mul[a].index(1) for a in range(1, q)]
        self._check()

    def _dec(self, a: int) -> tuple[int, ...]:
        digits = []
        for _ in range(self.k):
            digits.append(a % self.p)
            a //= self.p
        return tuple(digits)

    def _enc(self, digits) -> int:
        val = 0
        for d in reversed(digits):
            val = val * self.p + d
        return val

    def _poly_mul(self, a: int, b: int, red) -> int:
        p, k = self.p, self.k
        da, db = self._dec(a), self._dec(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
        # reduce: x^k == -red
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j, r in enumerate(red):
                    prod[i - k + j] = (prod[i - k + j] - c * r) % p
        return self._enc(prod[:k])

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]

    def _check(self):
        q, add, mul = self.q, self.add, self.mul
        for a in range(q):
            if sorted(add[a]) != list(range(q)):
                raise InputError(f"GF({q}): addition row {a} is not a permutation")
            if a and sorted(mul[a]) != list(range(q)):
                raise InputError(f"GF({q}): multiplication row {a} is not a permutation")
        # distributivity on a sample grid is cheap and catches table bugs
        for a in range(q):
            for b in range(q):
                for c in range(q):
                    if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
                        raise InputError(f"GF({q}): distributivity fails at {(a, b, c)}")


@lru_cache(maxsize=None)
def gf(q: int) -> GfTable:
    """Cached field table for GF(q)."""
    return GfTable(q)
