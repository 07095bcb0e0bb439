"""Exact finite matroids as dense rank tables over bitmask subsets.

A ground set is an ordered tuple of distinct labels (small ints or
strings); a subset is the bitmask of label positions.  The rank function
is stored as one byte per subset, so everything stays exact and the
whole 2^n table can be checked or rebuilt directly.  Ground sets are
capped at 24 elements so masks fit comfortably in a machine word.

All values are immutable and all operations are pure functions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import InputError, PreconditionError

Label = int | str

MAX_GROUND = 24


def popcount(mask: int) -> int:
    return mask.bit_count()


def iter_bits(mask: int):
    """Yield bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def submasks(mask: int):
    """Yield all submasks of ``mask`` (including 0 and mask itself)."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str
    witnesses: tuple[tuple[Label, ...], ...]
    detail: str

    def __str__(self):
        sets = ", ".join("{" + ",".join(map(str, w)) + "}" for w in self.witnesses)
        return f"{self.axiom} violated at {sets}: {self.detail}"


def _as_table(rank, n: int | None) -> tuple[list[int], int]:
    """Normalize a rank function given as sequence or mapping to a dense list."""
    if isinstance(rank, Mapping):
        if n is None:
            if not rank:
                raise InputError("empty rank mapping and no ground size given")
            n = max(int(k) for k in rank).bit_length()
        size = 1 << n
        table = [None] * size
        for k, v in rank.items():
            k = int(k)
            if not 0 <= k < size:
                raise InputError(f"rank key {k} outside 2^{n} subsets")
            table[k] = int(v)
        missing = [i for i, v in enumerate(table) if v is None]
        if missing:
            raise InputError(f"rank function is not total: missing subset mask {missing[0]}")
        return table, n
    table = [int(v) for v in rank]
    size = len(table)
    if size == 0 or size & (size - 1):
        raise InputError(f"rank table length {size} is not a power of two")
    m = size.bit_length() - 1
    if n is not None and n != m:
        raise InputError(f"rank table length {size} does not match n={n}")
    return table, m


def check_axioms(rank, n: int | None = None,
                 labels: Sequence[Label] | None = None) -> list[AxiomViolation]:
    """Exhaustively check the three rank axioms of a matroid.

    ``rank`` is a total map from subsets (bitmask-encoded) to integers,
    given either as a dense sequence of length 2^n or as a mapping.
    Returns an empty list iff normalization/bounds, monotonicity and
    submodularity all hold; otherwise one entry per violation, naming
    the axiom and the witness subsets.
    """
    table, n = _as_table(rank, n)
    if n > MAX_GROUND:
        raise InputError(f"ground set of size {n} exceeds the cap of {MAX_GROUND}")
    if labels is None:
        labels = tuple(range(1, n + 1))
    labels = tuple(labels)

    def named(mask: int) -> tuple[Label, ...]:
        return tuple(labels[i] for i in iter_bits(mask))

    out: list[AxiomViolation] = []
    for m in range(1 << n):
        r = table[m]
        if not 0 <= r <= popcount(m):
            out.append(AxiomViolation(
                "0<=r(A)<=|A|", (named(m),), f"r(A)={r} for |A|={popcount(m)}"))
    for m in range(1 << n):
        free = ~m & ((1 << n) - 1)
        for i in iter_bits(free):
            if table[m] > table[m | (1 << i)]:
                out.append(AxiomViolation(
                    "monotonicity", (named(m), named(m | (1 << i))),
                    f"r(A)={table[m]} > r(B)={table[m | (1 << i)]}"))
    # Local exchange form; together with totality it is equivalent to
    # submodularity over all pairs of subsets.
    for m in range(1 << n):
        free = list(iter_bits(~m & ((1 << n) - 1)))
        for a, i in enumerate(free):
            for j in free[a + 1:]:
                mi, mj = m | (1 << i), m | (1 << j)
                if table[mi] + table[mj] < table[mi | mj] + table[m]:
                    out.append(AxiomViolation(
                        "submodularity", (named(mi), named(mj)),
                        f"r(A)+r(B)={table[mi] + table[mj]} < "
                        f"r(A|B)+r(A&B)={table[mi | mj] + table[m]}"))
    return out


def check_polymatroid_axioms(rank, n: int | None = None,
                             labels: Sequence[Label] | None = None) -> list[AxiomViolation]:
    """Like :func:`check_axioms` but without the r(A) <= |A| cap."""
    table, n = _as_table(rank, n)
    if labels is None:
        labels = tuple(range(1, n + 1))
    labels = tuple(labels)

    def named(mask):
        return tuple(labels[i] for i in iter_bits(mask))

    out = []
    if table[0] != 0:
        out.append(AxiomViolation("r(empty)=0", ((),), f"r(empty)={table[0]}"))
    for m in range(1 << n):
        if table[m] < 0:
            out.append(AxiomViolation("r(A)>=0", (named(m),), f"r(A)={table[m]}"))
    for m in range(1 << n):
        free = ~m & ((1 << n) - 1)
        for i in iter_bits(free):
            if table[m] > table[m | (1 << i)]:
                out.append(AxiomViolation(
                    "monotonicity", (named(m), named(m | (1 << i))),
                    f"r(A)={table[m]} > r(B)={table[m | (1 << i)]}"))
    for m in range(1 << n):
        free = list(iter_bits(~m & ((1 << n) - 1)))
        for a, i in enumerate(free):
            for j in free[a + 1:]:
                mi, mj = m | (1 << i), m | (1 << j)
                if table[mi] + table[mj] < table[mi | mj] + table[m]:
                    out.append(AxiomViolation(
                        "submodularity", (named(mi), named(mj)),
                        f"r(A)+r(B)={table[mi] + table[mj]} < "
                        f"r(A|B)+r(A&B)={table[mi | mj] + table[m]}"))
    return out


class _RankedGround:
    """Shared plumbing of Matroid and IntegerPolymatroid."""

    labels: tuple[Label, ...]
    table: bytes

    def __init__(self, labels: Iterable[Label], table, validate: bool = True,
                 meta: dict | None = None):
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise InputError("ground set labels must be distinct")
        if len(labels) > MAX_GROUND:
            raise InputError(f"ground set of size {len(labels)} exceeds {MAX_GROUND}")
        tbl, n = _as_table(table, len(labels))
        if any(v < 0 or v > 255 for v in tbl):
            raise InputError("rank values must fit in one byte")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "table", bytes(tbl))
        object.__setattr__(self, "meta", meta)
        if validate:
            violations = self._axiom_check()
            if violations:
                raise InputError("not a valid rank function: " + "; ".join(
                    str(v) for v in violations[:3]))

    def _axiom_check(self):
        raise NotImplementedError

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def full_rank(self) -> int:
        return self.table[self.full_mask]

    @cached_property
    def _pos(self) -> dict[Label, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def mask_of(self, elements: Iterable[Label]) -> int:
        mask = 0
        for e in elements:
            try:
                mask |= 1 << self._pos[e]
            except KeyError:
                raise InputError(f"{e!r} is not a ground set element") from None
        return mask

    def elements_of(self, mask: int) -> tuple[Label, ...]:
        return tuple(self.labels[i] for i in iter_bits(mask))

    def rank_mask(self, mask: int) -> int:
        return self.table[mask]

    def rank(self, elements: Iterable[Label]) -> int:
        return self.table[self.mask_of(elements)]

    def __eq__(self, other):
        return (type(self) is type(other) and self.labels == other.labels
                and self.table == other.table)

    def __hash__(self):
        return hash((type(self).__name__, self.labels, self.table))

    def __repr__(self):
        return (f"{type(self).__name__}(n={self.n}, rank={self.full_rank}, "
                f"labels={list(self.labels)})")


class Matroid(_RankedGround):
    """A matroid given by its exact rank table."""

    def _axiom_check(self):
        return check_axioms(self.table, self.n, self.labels)

    # -- derived families ------------------------------------------------

    @cached_property
    def circuit_masks(self) -> tuple[int, ...]:
        """Minimal dependent subsets, as ascending bitmasks."""
        t = self.table
        out = []
        for m in range(1, 1 << self.n):
            if t[m] == popcount(m):
                continue
            if all(t[m ^ (1 << i)] == popcount(m) - 1 for i in iter_bits(m)):
                out.append(m)
        return tuple(out)

    def is_independent(self, elements: Iterable[Label]) -> bool:
        m = self.mask_of(elements)
        return self.table[m] == popcount(m)

    @cached_property
    def loops(self) -> tuple[Label, ...]:
        return tuple(l for i, l in enumerate(self.labels) if self.table[1 << i] == 0)

    @cached_property
    def coloops(self) -> tuple[Label, ...]:
        full = self.full_mask
        return tuple(l for i, l in enumerate(self.labels)
                     if self.table[full ^ (1 << i)] == self.full_rank - 1)

    # -- structural predicates --------------------------------------------

    def is_loopless(self) -> bool:
        return not self.loops

    def is_connected(self) -> bool:
        """True iff every pair of elements lies on a common circuit."""
        if self.n < 2:
            raise PreconditionError("connectivity needs at least two elements")
        pair_ok = [[False] * self.n for _ in range(self.n)]
        for c in self.circuit_masks:
            members = list(iter_bits(c))
            for a, b in itertools.combinations(members, 2):
                pair_ok[a][b] = True
        return all(pair_ok[a][b]
                   for a in range(self.n) for b in range(a + 1, self.n))

    def is_uniform(self) -> int | None:
        """Return t if this matroid is U_{t,n} on its labels, else None."""
        t = self.full_rank
        if all(self.table[m] == min(t, popcount(m)) for m in range(1 << self.n)):
            return t
        return None

    # -- unary operations --------------------------------------------------

    def minor(self, delete: Iterable[Label] = (), contract: Iterable[Label] = ()) -> "Matroid":
        """Delete one subset and contract a disjoint one.

        rank'(A) = r(A | contracted) - r(contracted); pure deletion keeps
        ranks as they are.
        """
        dmask = self.mask_of(delete)
        cmask = self.mask_of(contract)
        if dmask & cmask:
            raise InputError("delete and contract sets overlap")
        keep = [i for i in range(self.n) if not (dmask | cmask) & (1 << i)]
        base = self.table[cmask]
        table = bytearray(1 << len(keep))
        for m in range(1 << len(keep)):
            old = cmask
            mm = m
            while mm:
                low = mm & -mm
                old |= 1 << keep[low.bit_length() - 1]
                mm ^= low
            table[m] = self.table[old] - base
        return Matroid(tuple(self.labels[i] for i in keep), bytes(table), validate=False)

    def dual(self) -> "Matroid":
        """Dual matroid: rank*(A) = |A| - r(N) + r(N \\ A)."""
        full = self.full_mask
        r = self.full_rank
        t = self.table
        table = bytes(popcount(m) - r + t[full ^ m] for m in range(1 << self.n))
        return Matroid(self.labels, table, validate=False)

    def relabel(self, mapping: Mapping[Label, Label]) -> "Matroid":
        new = tuple(mapping.get(l, l) for l in self.labels)
        return Matroid(new, self.table, validate=False)


class IntegerPolymatroid(_RankedGround):
    """Integer polymatroid: like a matroid but per-element rank may exceed 1."""

    def _axiom_check(self):
        return check_polymatroid_axioms(self.table, self.n, self.labels)

    @property
    def loops(self) -> tuple[Label, ...]:
        return tuple(l for i, l in enumerate(self.labels) if self.table[1 << i] == 0)

    def is_loopless(self) -> bool:
        return not self.loops

    def element_rank(self, label: Label) -> int:
        return self.table[1 << self._pos[label]]


def as_polymatroid(m: Matroid) -> IntegerPolymatroid:
    return IntegerPolymatroid(m.labels, m.table, validate=False)


def merge_elements(m: Matroid | IntegerPolymatroid,
                   groups: Sequence[Iterable[Label]],
                   labels: Sequence[Label] | None = None) -> IntegerPolymatroid:
    """Quotient a (poly)matroid by a partition of its ground set.

    Each group becomes one element whose rank function is the original
    rank of the group's union.  This is the inverse direction of free
    expansion.
    """
    masks = [m.mask_of(g) for g in groups]
    union = 0
    for g in masks:
        if union & g:
            raise InputError("groups must be disjoint")
        union |= g
    if union != m.full_mask:
        raise InputError("groups must cover the ground set")
    if labels is None:
        labels = tuple(range(1, len(groups) + 1))
    table = bytearray(1 << len(groups))
    for mm in range(1 << len(groups)):
        old = 0
        for i in iter_bits(mm):
            old |= masks[i]
        table[mm] = m.table[old]
    return IntegerPolymatroid(tuple(labels), bytes(table), validate=False)


def scale_rank(p: Matroid | IntegerPolymatroid, factor: int) -> IntegerPolymatroid:
    """Multiply a rank function pointwise by a positive integer."""
    if factor < 1:
        raise InputError("scale factor must be a positive integer")
    return IntegerPolymatroid(p.labels, bytes(v * factor for v in p.table),
                              validate=False)


# -- construction from circuits -------------------------------------------


def from_circuits(labels: Sequence[Label], circuits: Iterable[Iterable[Label]],
                  meta: dict | None = None) -> Matroid:
    """Build a matroid from its complete family of circuits.

    The family is validated first: members are nonempty incomparable
    subsets of the ground set, and for every pair sharing an element the
    circuit-elimination axiom must be witnessed inside the family.  The
    rank of a subset is then the size of its largest subset containing
    no circuit.
    """
    labels = tuple(labels)
    pos = {l: i for i, l in enumerate(labels)}
    n = len(labels)
    if n > MAX_GROUND:
        raise InputError(f"ground set of size {n} exceeds {MAX_GROUND}")
    cmasks = []
    for c in circuits:
        mask = 0
        for e in c:
            if e not in pos:
                raise InputError(f"circuit element {e!r} is not a ground set label")
            mask |= 1 << pos[e]
        if mask == 0:
            raise InputError("the empty set cannot be a circuit")
        cmasks.append(mask)
    if len(set(cmasks)) != len(cmasks):
        raise InputError("duplicate circuits")
    for a, b in itertools.combinations(cmasks, 2):
        if a & b == a or a & b == b:
            raise InputError(
                f"circuits must be incomparable: {set(iter_bits(a))} vs {set(iter_bits(b))}")
    for a, b in itertools.combinations(cmasks, 2):
        common = a & b
        for e in iter_bits(common):
            union = (a | b) & ~(1 << e)
            if not any(c & union == c for c in cmasks):
                raise InputError(
                    "circuit elimination fails for "
                    f"{{{','.join(map(str, (labels[i] for i in iter_bits(a))))}}} and "
                    f"{{{','.join(map(str, (labels[i] for i in iter_bits(b))))}}} at "
                    f"{labels[e]}")
    size = 1 << n
    dependent = bytearray(size)
    for c in cmasks:
        dependent[c] = 1
    for m in range(size):
        if dependent[m]:
            continue
        for i in iter_bits(m):
            if dependent[m ^ (1 << i)]:
                dependent[m] = 1
                break
    table = bytearray(size)
    for m in range(1, size):
        if not dependent[m]:
            table[m] = popcount(m)
        else:
            table[m] = max(table[m ^ (1 << i)] for i in iter_bits(m))
    return Matroid(labels, bytes(table), validate=False, meta=meta)


# -- derived families, as label tuples -------------------------------------


@dataclass(frozen=True)
class SetFamily:
    kind: str
    members: tuple[tuple[Label, ...], ...]

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, subset):
        return tuple(subset) in self.members or frozenset(subset) in {
            frozenset(m) for m in self.members}


@dataclass(frozen=True)
class Families:
    independents: SetFamily
    bases: SetFamily
    circuits: SetFamily
    loops: SetFamily
    coloops: SetFamily


def derived_families(m: Matroid) -> Families:
    """All five standard families, exactly consistent with the rank table."""
    t = m.table
    ind, bas = [], []
    r = m.full_rank
    for mask in range(1 << m.n):
        if t[mask] == popcount(mask):
            ind.append(mask)
            if t[mask] == r:
                bas.append(mask)
    circ = m.circuit_masks

    def fam(kind, masks):
        members = tuple(m.elements_of(mk) for mk in sorted(
            masks, key=lambda mk: (popcount(mk), mk)))
        return SetFamily(kind, members)

    return Families(
        independents=fam("independents", ind),
        bases=fam("bases", bas),
        circuits=fam("circuits", circ),
        loops=SetFamily("loops", tuple((l,) for l in m.loops)),
        coloops=SetFamily("coloops", tuple((l,) for l in m.coloops)),
    )


def minor(m: Matroid, delete: Iterable[Label] = (),
          contract: Iterable[Label] = ()) -> Matroid:
    return m.minor(delete, contract)


def dual(m: Matroid) -> Matroid:
    return m.dual()


def is_connected(m: Matroid) -> bool:
    return m.is_connected()


def relax_circuit_hyperplane(m: Matroid, subset: Iterable[Label]) -> Matroid:
    """Relax a circuit-hyperplane: its rank rises by one, nothing else moves.

    The subset must be both a circuit and a hyperplane (a maximal set of
    rank r(N)-1); the relaxed matroid has the same rank table except at
    that single subset, and its bases gain exactly that subset.
    """
    x = m.mask_of(subset)
    t = m.table
    k = popcount(x)
    if not (t[x] == k - 1 and all(t[x ^ (1 << i)] == k - 1 for i in iter_bits(x))):
        raise PreconditionError("subset is not a circuit")
    if t[x] != m.full_rank - 1:
        raise PreconditionError("subset is not a hyperplane: wrong rank")
    outside = ~x & m.full_mask
    if any(t[x | (1 << i)] != m.full_rank for i in iter_bits(outside)):
        raise PreconditionError("subset is not a hyperplane: not closed")
    table = bytearray(t)
    table[x] += 1
    return Matroid(m.labels, bytes(table), validate=False)


# -- binary connections -----------------------------------------------------


def _fresh_int_labels(used: set, count: int) -> list[int]:
    out = []
    candidate = 1
    used_ints = {l for l in used if isinstance(l, int)}
    while len(out) < count:
        if candidate not in used_ints:
            out.append(candidate)
            used_ints.add(candidate)
        candidate += 1
    return out


def connection_layout(labels1: Sequence[Label], p1: Label,
                      labels2: Sequence[Label], p2: Label):
    """Shared label layout for series/parallel/2-sum connections.

    Returns ``(columns, map2, joint)``: the result's element order is
    (ground 1 minus p1) + [joint] + (ground 2 minus p2, relabeled where
    it collides with side 1); ``map2`` records side 2's relabeling and
    ``joint`` is the fresh label of the new shared element (the smallest
    unused positive integer).
    """
    if p1 not in labels1:
        raise InputError(f"base point {p1!r} not in the first ground set")
    if p2 not in labels2:
        raise InputError(f"base point {p2!r} not in the second ground set")
    left = [l for l in labels1 if l != p1]
    right = [l for l in labels2 if l != p2]
    used = set(left)
    collisions = [l for l in right if l in used]
    fresh = _fresh_int_labels(used | set(right), len(collisions) + 1)
    map2 = dict(zip(collisions, fresh[:-1]))
    right = [map2.get(l, l) for l in right]
    joint = _fresh_int_labels(set(left) | set(right), 1)[0]
    return tuple(left) + (joint,) + tuple(right), map2, joint


def _base_point_ok(m: Matroid, p: Label):
    if p in m.loops:
        raise PreconditionError(f"base point {p!r} is a loop")
    if p in m.coloops:
        raise PreconditionError(f"base point {p!r} is a coloop")


def series_connection(m1: Matroid, p1: Label, m2: Matroid, p2: Label) -> Matroid:
    """Series connection at base points: circuits through the joint element
    combine one circuit through each base point."""
    _base_point_ok(m1, p1)
    _base_point_ok(m2, p2)
    columns, map2, joint = connection_layout(m1.labels, p1, m2.labels, p2)

    def side(m, p, mp):
        through, avoiding = [], []
        for c in m.circuit_masks:
            labs = [mp.get(l, l) for l in m.elements_of(c)]
            if p in m.elements_of(c):
                through.append([x for x in labs if x != mp.get(p, p)])
            else:
                avoiding.append(labs)
        return through, avoiding

    thr1, avoid1 = side(m1, p1, {})
    thr2, avoid2 = side(m2, p2, map2)
    circuits = [tuple(c) for c in avoid1 + avoid2]
    for c1 in thr1:
        for c2 in thr2:
            circuits.append(tuple(c1) + (joint,) + tuple(c2))
    meta = {"kind": "series", "joint": joint, "relabeled": map2}
    return from_circuits(columns, circuits, meta=meta)


def parallel_connection(m1: Matroid, p1: Label, m2: Matroid, p2: Label) -> Matroid:
    """Parallel connection at base points.

    Circuits: those of either side avoiding its base point; each side's
    base-point circuits rerouted through the joint element; and the
    cross family pairing one base-point circuit from each side with the
    base points removed.
    """
    _base_point_ok(m1, p1)
    _base_point_ok(m2, p2)
    columns, map2, joint = connection_layout(m1.labels, p1, m2.labels, p2)

    def side(m, p, mp):
        through, avoiding = [], []
        for c in m.circuit_masks:
            labs = m.elements_of(c)
            mapped = [mp.get(l, l) for l in labs]
            if p in labs:
                through.append([mp.get(l, l) for l in labs if l != p])
            else:
                avoiding.append(mapped)
        return through, avoiding

    thr1, avoid1 = side(m1, p1, {})
    thr2, avoid2 = side(m2, p2, map2)
    circuits = [tuple(c) for c in avoid1 + avoid2]
    circuits += [tuple(c) + (joint,) for c in thr1]
    circuits += [tuple(c) + (joint,) for c in thr2]
    circuits += [tuple(c1) + tuple(c2) for c1 in thr1 for c2 in thr2]
    meta = {"kind": "parallel", "joint": joint, "relabeled": map2}
    return from_circuits(columns, circuits, meta=meta)


def direct_sum(m1: Matroid, m2: Matroid) -> Matroid:
    """Direct sum: rank adds across the two (disjoint, relabeled) grounds."""
    used = set(m1.labels)
    collisions = [l for l in m2.labels if l in used]
    fresh = _fresh_int_labels(used | set(m2.labels), len(collisions))
    map2 = dict(zip(collisions, fresh))
    labels = m1.labels + tuple(map2.get(l, l) for l in m2.labels)
    n1 = m1.n
    table = bytearray(1 << (n1 + m2.n))
    for mm in range(len(table)):
        table[mm] = m1.table[mm & ((1 << n1) - 1)] + m2.table[mm >> n1]
    meta = {"kind": "direct_sum", "relabeled": map2}
    return Matroid(labels, bytes(table), validate=False, meta=meta)


def two_sum(m1: Matroid, p1: Label, m2: Matroid, p2: Label) -> Matroid:
    """2-sum: the series connection with the joint element contracted
    (equivalently the parallel connection with it deleted)."""
    s = series_connection(m1, p1, m2, p2)
    joint = s.meta["joint"]
    out = s.minor(contract=[joint])
    object.__setattr__(out, "meta", {"kind": "two_sum", "joint": joint,
                                     "relabeled": s.meta["relabeled"]})
    return out


def connect(kind: str, m1: Matroid, p1: Label | None,
            m2: Matroid, p2: Label | None) -> Matroid:
    """Dispatch for the four binary connections."""
    if kind == "direct_sum":
        if p1 is not None or p2 is not None:
            raise InputError("direct_sum takes no base points")
        return direct_sum(m1, m2)
    if p1 is None or p2 is None:
        raise InputError(f"{kind} connection needs base points on both sides")
    if kind == "series":
        return series_connection(m1, p1, m2, p2)
    if kind == "parallel":
        return parallel_connection(m1, p1, m2, p2)
    if kind == "two_sum":
        return two_sum(m1, p1, m2, p2)
    raise InputError(f"unknown connection kind {kind!r}")


# -- isomorphism and minors --------------------------------------------------


def _signatures(m: Matroid) -> list[tuple]:
    """Per-element invariants used to prune isomorphism search."""
    t = m.table
    n = m.n
    circ_count = [dict() for _ in range(n)]
    for c in m.circuit_masks:
        size = popcount(c)
        for i in iter_bits(c):
            circ_count[i][size] = circ_count[i].get(size, 0) + 1
    sigs = []
    for i in range(n):
        pair = sorted(t[(1 << i) | (1 << j)] for j in range(n) if j != i)
        sigs.append((t[1 << i], tuple(pair),
                     tuple(sorted(circ_count[i].items())),
                     t[m.full_mask ^ (1 << i)]))
    return sigs


def isomorphism(m1: Matroid, m2: Matroid) -> dict[Label, Label] | None:
    """A rank-preserving bijection of ground sets, or None.

    Backtracking over label assignments, elements ordered by signature
    rarity; deterministic (first witness in that fixed order).
    """
    if m1.n != m2.n or m1.full_rank != m2.full_rank:
        return None
    by_card1 = [sorted(m1.table[mm] for mm in range(1 << m1.n) if popcount(mm) == k)
                for k in range(m1.n + 1)]
    by_card2 = [sorted(m2.table[mm] for mm in range(1 << m2.n) if popcount(mm) == k)
                for k in range(m2.n + 1)]
    if by_card1 != by_card2:
        return None
    sig1, sig2 = _signatures(m1), _signatures(m2)
    if sorted(sig1) != sorted(sig2):
        return None
    freq = {}
    for s in sig1:
        freq[s] = freq.get(s, 0) + 1
    order = sorted(range(m1.n), key=lambda i: (freq[sig1[i]], i))
    t1, t2 = m1.table, m2.table
    assigned1 = 0
    image = [0] * m1.n  # image[i] = bit index in m2 once assigned
    used2 = 0

    def extend(depth: int) -> bool:
        nonlocal assigned1, used2
        if depth == m1.n:
            return True
        i = order[depth]
        bit_i = 1 << i
        prefix = assigned1
        for j in range(m2.n):
            bit_j = 1 << j
            if used2 & bit_j or sig2[j] != sig1[i]:
                continue
            ok = True
            for sub in submasks(prefix):
                mapped = bit_j
                for x in iter_bits(sub):
                    mapped |= 1 << image[x]
                if t1[sub | bit_i] != t2[mapped]:
                    ok = False
                    break
            if not ok:
                continue
            image[i] = j
            assigned1 |= bit_i
            used2 |= bit_j
            if extend(depth + 1):
                return True
            assigned1 ^= bit_i
            used2 ^= bit_j
        return False

    if not extend(0):
        return None
    return {m1.labels[i]: m2.labels[image[i]] for i in range(m1.n)}


def is_isomorphic(m1: Matroid, m2: Matroid) -> bool:
    return isomorphism(m1, m2) is not None


def minor_witness(m: Matroid, target: Matroid):
    """First (delete, contract) pair, in ascending mask order, whose minor
    is isomorphic to the target; None if there is none."""
    n, k = m.n, target.n
    if k > n:
        return None
    drop = n - k
    uniform_t = target.is_uniform()
    tsize = 1 << k
    target_table = target.table
    for dmask in range(1 << n):
        d = popcount(dmask)
        if d > drop:
            continue
        rest = ~dmask & m.full_mask
        rest_bits = list(iter_bits(rest))
        cmasks = sorted(sum(1 << b for b in combo)
                        for combo in itertools.combinations(rest_bits, drop - d))
        for cmask in cmasks:
            keep = [b for b in rest_bits if not cmask & (1 << b)]
            base = m.table[cmask]
            # rank of the minor must match before anything else
            if m.table[rest] - base != target.full_rank:
                continue
            sub = bytearray(tsize)
            ok = True
            for mm in range(tsize):
                old = cmask
                x = mm
                while x:
                    low = x & -x
                    old |= 1 << keep[low.bit_length() - 1]
                    x ^= low
                sub[mm] = m.table[old] - base
            if uniform_t is not None:
                for mm in range(tsize):
                    if sub[mm] != min(uniform_t, popcount(mm)):
                        ok = False
                        break
                if ok:
                    return (m.elements_of(dmask), m.elements_of(cmask))
                continue
            if bytes(sub) == target_table or isomorphism(
                    Matroid(tuple(m.labels[b] for b in keep), bytes(sub),
                            validate=False), target) is not None:
                return (m.elements_of(dmask), m.elements_of(cmask))
    return None


def has_minor(m: Matroid, target: Matroid) -> bool:
    """True iff some deletion/contraction of m is isomorphic to target."""
    return minor_witness(m, target) is not None
