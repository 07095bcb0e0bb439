"""Array-level counterparts of the matroid operations.

Each construction mirrors a matroid operation and is sound for it:
deleting columns and deduplicating matches deletion, fixing a sub-row
matches contraction, and the three gluing constructions (series,
parallel, direct sum) combine two arrays into one for the glued
matroid.  Unit-determinant integer matrices yield arrays by evaluating
all row vectors, and the whirl family is built inductively with every
stage verified before it is trusted.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InputError, PreconditionError, UnsupportedLevelError
from .gf import gf, prime_power
from .linalg import bareiss_det
from .matroid import (IntegerPolymatroid, Label, Matroid, connection_layout,
                      iter_bits, popcount, _fresh_int_labels)
from .families import vector_matroid, whirl
from .oa_builders import cyclic_oa23, oa_2_4
from .voa import Voa, ded, verify_oa, verify_voa


# -- deletion / contraction / minor -----------------------------------------


def voa_delete(t: Voa, columns: Iterable[Label]) -> Voa:
    """Drop the columns and keep one copy of each surviving row."""
    return ded(t.drop(columns))


def voa_contract(t: Voa, columns: Iterable[Label],
                 at: Sequence[int] | int | None = None) -> Voa:
    """Keep the rows whose sub-row on ``columns`` equals ``at`` (default:
    the first such sub-row), then drop those columns."""
    cols = tuple(columns)
    idx = [t.column_index(c) for c in cols]
    if at is None:
        if not t.rows:
            raise PreconditionError("cannot contract an empty array")
        at = tuple(t.rows[0][i] for i in idx)
    elif isinstance(at, int):
        at = (at,)
    else:
        at = tuple(int(x) for x in at)
    if len(at) != len(cols):
        raise InputError(f"anchor {at} has width {len(at)}, expected {len(cols)}")
    if not any(tuple(r[i] for i in idx) == at for r in t.rows):
        raise PreconditionError(f"{at} is not a row of the projection onto {cols}")
    keep = [j for j in range(t.n_columns) if j not in idx]
    rows = [tuple(r[j] for j in keep)
            for r in t.rows if tuple(r[i] for i in idx) == at]
    return Voa(t.level, [t.columns[j] for j in keep], rows)


def voa_minor(t: Voa, delete: Iterable[Label] = (), contract: Iterable[Label] = (),
              at=None) -> Voa:
    return voa_contract(voa_delete(t, delete), contract, at) if tuple(contract) \
        else voa_delete(t, delete)


# -- binary connections ------------------------------------------------------


def _same_level(t1: Voa, t2: Voa) -> int:
    if t1.level != t2.level:
        raise PreconditionError(f"level mismatch: {t1.level} vs {t2.level}")
    return t1.level


def _oa23_lookup(u: Voa, v: int) -> dict[tuple[int, int], int]:
    ok, lam = verify_oa(u, 2, v)
    if u.n_columns != 3 or not ok or lam != 1:
        raise PreconditionError("auxiliary array must be a strength-2, "
                                "index-1 array on three columns")
    return {(r[0], r[1]): r[2] for r in u.rows}


def voa_series(t1: Voa, p1: Label, t2: Voa, p2: Label, u: Voa | None = None) -> Voa:
    """Series connection of two arrays at base columns.

    One output row per input row pair; the joint column completes the
    two base symbols to a row of the auxiliary strength-2 array ``u``
    (default: the cyclic one).  Output rows are in t1-major order and
    the joint column sits between the two sides.
    """
    v = _same_level(t1, t2)
    if u is None:
        u = cyclic_oa23(v)
    z = _oa23_lookup(u, v)
    columns, map2, joint = connection_layout(t1.columns, p1, t2.columns, p2)
    i1 = t1.column_index(p1)
    i2 = t2.column_index(p2)
    keep1 = [j for j in range(t1.n_columns) if j != i1]
    keep2 = [j for j in range(t2.n_columns) if j != i2]
    rows = []
    for a1 in t1.rows:
        left = tuple(a1[j] for j in keep1)
        for a2 in t2.rows:
            rows.append(left + (z[a1[i1], a2[i2]],) + tuple(a2[j] for j in keep2))
    return Voa(v, columns, rows)


def voa_parallel(t1: Voa, p1: Label, t2: Voa, p2: Label) -> Voa:
    """Parallel connection: pairs agreeing at the base columns merge, and
    the joint column carries the shared symbol."""
    v = _same_level(t1, t2)
    columns, map2, joint = connection_layout(t1.columns, p1, t2.columns, p2)
    i1 = t1.column_index(p1)
    i2 = t2.column_index(p2)
    keep1 = [j for j in range(t1.n_columns) if j != i1]
    keep2 = [j for j in range(t2.n_columns) if j != i2]
    rows = []
    for a1 in t1.rows:
        left = tuple(a1[j] for j in keep1)
        for a2 in t2.rows:
            if a1[i1] == a2[i2]:
                rows.append(left + (a1[i1],) + tuple(a2[j] for j in keep2))
    return Voa(v, columns, rows)


def voa_direct_sum(t1: Voa, t2: Voa) -> Voa:
    """Cartesian concatenation, t1-major; colliding side-2 labels are
    relabeled with fresh integers (same policy as the matroid sum)."""
    v = _same_level(t1, t2)
    used = set(t1.columns)
    collisions = [c for c in t2.columns if c in used]
    fresh = _fresh_int_labels(used | set(t2.columns), len(collisions))
    map2 = dict(zip(collisions, fresh))
    columns = t1.columns + tuple(map2.get(c, c) for c in t2.columns)
    rows = [r1 + r2 for r1 in t1.rows for r2 in t2.rows]
    return Voa(v, columns, rows)


def voa_two_sum(t1: Voa, p1: Label, t2: Voa, p2: Label, mode: str = "series",
                u: Voa | None = None, at: int = 0) -> Voa:
    """2-sum of arrays: series then contract the joint column at ``at``,
    or parallel then delete the joint column."""
    if mode == "series":
        s = voa_series(t1, p1, t2, p2, u)
        joint = s.columns[t1.n_columns - 1]
        return voa_contract(s, [joint], (at,))
    if mode == "parallel":
        p = voa_parallel(t1, p1, t2, p2)
        joint = p.columns[t1.n_columns - 1]
        return voa_delete(p, [joint])
    raise InputError(f"unknown 2-sum mode {mode!r}")


# -- matrices over Z_v -------------------------------------------------------


@dataclass(frozen=True)
class ZvMatrix:
    """Integer matrix with labeled columns, read modulo a level on demand."""

    entries: tuple[tuple[int, ...], ...]
    labels: tuple[Label, ...]
    modulus: int | None = None

    def __post_init__(self):
        ent = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", ent)
        object.__setattr__(self, "labels", tuple(self.labels))
        if ent and any(len(r) != len(ent[0]) for r in ent):
            raise InputError("matrix rows must all have the same length")
        width = len(ent[0]) if ent else 0
        if len(self.labels) != width:
            raise InputError("column labels must match the matrix width")
        if len(set(self.labels)) != len(self.labels):
            raise InputError("column labels must be distinct")

    @property
    def n_rows(self) -> int:
        return len(self.entries)

    @property
    def n_cols(self) -> int:
        return len(self.labels)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> list[list[int]]:
        return [[self.entries[i][j] for j in cols] for i in rows]

    @cached_property
    def column_matroid(self) -> Matroid:
        """Vector matroid of the columns over the rationals."""
        return vector_matroid(self.entries, None, self.labels)

    def is_totally_unimodular(self, max_checks: int = 2_000_000) -> bool:
        """Exact check that every square submatrix has determinant in
        {-1, 0, 1}; refuses matrices where that sweep would be huge."""
        r, n = self.n_rows, self.n_cols
        total = sum(math.comb(r, k) * math.comb(n, k)
                    for k in range(1, min(r, n) + 1))
        if total > max_checks:
            raise InputError(
                f"total unimodularity sweep of {total} submatrices exceeds the cap")
        for k in range(1, min(r, n) + 1):
            for rows in itertools.combinations(range(r), k):
                for cols in itertools.combinations(range(n), k):
                    if bareiss_det(self.submatrix(rows, cols)) not in (-1, 0, 1):
                        return False
        return True


def graphic_tu_matrix(edges: Sequence[tuple], labels: Sequence[Label] | None = None) -> ZvMatrix:
    """Totally unimodular representation of a connected graph's cycle matroid.

    Rows are indexed by a spanning tree (first edges that join
    components, in input order); a tree edge's column is its unit
    vector, and a non-tree edge's column records the signed traversal of
    its fundamental cycle through the tree.
    """
    if labels is None:
        labels = tuple(range(1, len(edges) + 1))
    labels = tuple(labels)
    if len(labels) != len(edges):
        raise InputError("edge labels must match the edge list")
    verts = sorted({v for e in edges for v in e}, key=repr)
    vid = {v: i for i, v in enumerate(verts)}
    nvert = len(verts)
    parent = list(range(nvert))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree: list[int] = []
    for i, (uu, ww) in enumerate(edges):
        a, b = find(vid[uu]), find(vid[ww])
        if a != b:
            parent[a] = b
            tree.append(i)
    if len(tree) != nvert - 1:
        raise InputError("graph must be connected")

    adj: dict[int, list[tuple[int, int, int]]] = {i: [] for i in range(nvert)}
    for row, i in enumerate(tree):
        u, w = vid[edges[i][0]], vid[edges[i][1]]
        adj[u].append((w, row, +1))
        adj[w].append((u, row, -1))

    def tree_path(src: int, dst: int) -> list[tuple[int, int]]:
        """(row, sign) steps of the unique tree path src -> dst."""
        prev: dict[int, tuple[int, int, int]] = {src: (-1, -1, 0)}
        stack = [src]
        while stack:
            x = stack.pop()
            if x == dst:
                break
            for y, row, sign in adj[x]:
                if y not in prev:
                    prev[y] = (x, row, sign)
                    stack.append(y)
        path = []
        x = dst
        while x != src:
            px, row, sign = prev[x]
            path.append((row, sign))
            x = px
        path.reverse()
        return path

    nrows = len(tree)
    cols = []
    for i, (uu, ww) in enumerate(edges):
        col = [0] * nrows
        if i in tree:
            col[tree.index(i)] = 1
        else:
            u, w = vid[uu], vid[ww]
            if u != w:
                for row, sign in tree_path(u, w):
                    col[row] = sign
        cols.append(col)
    entries = tuple(tuple(cols[c][r] for c in range(len(edges)))
                    for r in range(nrows))
    return ZvMatrix(entries, labels)


def matrix_voa(a: ZvMatrix, v: int) -> Voa:
    """Evaluate every length-r vector against the matrix modulo v.

    Requires full row rank over the rationals and, for every basis of
    the column matroid, a basis determinant coprime to v; totally
    unimodular matrices satisfy this at every level.  The rows
    {x * A mod v} then form an array verifying against the column
    matroid.
    """
    if v < 2:
        raise InputError("level must be at least 2")
    m = a.column_matroid
    r = a.n_rows
    if m.full_rank != r:
        raise PreconditionError(
            f"matrix rows are dependent: rank {m.full_rank} < {r} rows")
    if r > 12:
        raise PreconditionError("matrix evaluation is capped at 12 rows")
    all_rows = list(range(r))
    for mask in range(1 << a.n_cols):
        if popcount(mask) != r or m.table[mask] != r:
            continue
        cols = list(iter_bits(mask))
        det = bareiss_det(a.submatrix(all_rows, cols))
        if _gcd(det % v, v) != 1:
            raise PreconditionError(
                f"basis {m.elements_of(mask)} has determinant {det}, "
                f"not a unit modulo {v}")
    ent = a.entries
    rows = []
    for x in itertools.product(range(v), repeat=r):
        rows.append(tuple(sum(x[i] * ent[i][j] for i in range(r)) % v
                          for j in range(a.n_cols)))
    return Voa(v, a.labels, rows)


def _gcd(x: int, y: int) -> int:
    while y:
        x, y = y, x % y
    return abs(x)


# -- whirl arrays ------------------------------------------------------------


def _gluing_tables(v: int, budget: int) -> list[tuple[str, dict]]:
    """Candidate strength-2 three-column tables for the inductive gluing,
    as (name, {(x, y): z}) pairs in a fixed deterministic order."""
    tables: list[tuple[str, dict]] = []

    def add(name, rows):
        lut = {(x, y): z for x, y, z in rows}
        if all(lut != t for _, t in tables):
            tables.append((name, lut))

    add("cyclic", [(x, y, (x + y) % v) for x in range(v) for y in range(v)])
    if prime_power(v):
        f = gf(v)
        add("field-additive", [(x, y, f.add[x][y]) for x in range(v) for y in range(v)])
        for alpha in range(2, v):
            if len(tables) >= budget:
                break
            add(f"field-linear-{alpha}",
                [(x, y, f.add[x][f.mul[alpha][y]]) for x in range(v) for y in range(v)])
    return tables[:budget]


def _whirl_step(tk: Voa, k: int, v: int, ox1: dict, swap_slots: bool) -> Voa | None:
    """One inductive stage: extend a rank-k whirl array to rank k+1.

    New row (t, j) carries the old row j with the k-th rim column
    twisted by t through the gluing table, one new rim column equal to
    t, and one new spoke column completing (old spoke k, twisted rim k)
    inside the contracted strength-2 table read off the construction
    itself.  Returns None when the internal three-column table cannot be
    read off (the candidate gluing is unusable).
    """
    a_cols = [tk.column_index(f"a{i}") for i in range(1, k + 1)]
    b_cols = [tk.column_index(f"b{i}") for i in range(1, k + 1)]
    rows_k = tk.rows
    nk = len(rows_k)

    # columns a'_1..a'_{k+1} and b'_1..b'_k, indexed by (t, j)
    a_new: list[list[int]] = []
    b_new: list[list[int]] = []
    for t in range(v):
        for j in range(nk):
            old = rows_k[j]
            a_row = [old[a_cols[i]] for i in range(k - 1)]
            a_row.append(ox1[old[a_cols[k - 1]], t])
            a_row.append(t)
            a_new.append(a_row)
            b_new.append([old[b_cols[i]] for i in range(k)])

    # read the second gluing table off columns (a'_k, b'_k, b'_1, a'_{k+1})
    quad = [(a_new[i][k - 1], b_new[i][k - 1], b_new[i][0], a_new[i][k])
            for i in range(v * nk)]
    t2 = ded(Voa(v, ("x", "y", "z", "w"), quad))
    ok3, lam3 = verify_oa(t2, 3, v)
    if not ok3 or lam3 != 1:
        return None
    t3 = {(r[0], r[1]): r[2] for r in t2.rows if r[3] == 0}
    if len(t3) != v * v:
        return None

    rows = []
    for i in range(v * nk):
        x = a_new[i][k - 1]
        y = b_new[i][k - 1]
        key = (x, y) if swap_slots else (y, x)
        if key not in t3:
            return None
        rows.append(tuple(a_new[i]) + tuple(b_new[i]) + (t3[key],))
    labels = tuple(f"a{i}" for i in range(1, k + 2)) + \
        tuple(f"b{i}" for i in range(1, k + 2))
    return Voa(v, labels, rows)


def whirl_voa(r: int, v: int, table_budget: int = 8) -> Voa:
    """Array for the rank-r whirl at level v, built inductively.

    The base case is the four-column strength-2 array (so levels 2 and 6
    are impossible and raise).  Each inductive stage tries a fixed list
    of gluing tables and both slot orders for the read-off table,
    verifies the candidate exhaustively against the rank-(k+1) whirl,
    and keeps the first one that passes; if none does the stage fails
    loudly rather than returning an unverified array.
    """
    if r < 2:
        raise PreconditionError("whirl rank must be at least 2")
    base = oa_2_4(v)  # raises for unsupported v, including 2 and 6
    t = Voa(v, ("a1", "a2", "b1", "b2"), base.rows)
    report = verify_voa(t, whirl(2), v)
    if not report.passed:
        raise InputError("internal: base whirl array failed verification")
    candidates = _gluing_tables(v, table_budget)
    for k in range(2, r):
        target = whirl(k + 1)
        found = None
        for name, ox1 in candidates:
            for swap_slots in (False, True):
                cand = _whirl_step(t, k, v, ox1, swap_slots)
                if cand is None:
                    continue
                if verify_voa(cand, target, v).passed:
                    found = cand
                    break
            if found is not None:
                break
        if found is None:
            raise InputError(
                f"whirl construction failed at stage {k + 1} for level {v}: "
                f"no gluing table in the candidate budget verified")
        t = found
    return t


# -- free expansion ----------------------------------------------------------


def free_expansion(p: IntegerPolymatroid) -> Matroid:
    """Split every element into rank-many copies.

    The expanded rank of K is min over subsets I of the original ground
    of r(I) + |K minus the copies of I|.  Elements of rank one keep
    their labels; an element e of rank k becomes e.1 .. e.k.
    """
    groups: list[list[Label]] = []
    for i, lab in enumerate(p.labels):
        k = p.table[1 << i]
        if k == 0:
            raise PreconditionError("free expansion needs a loopless polymatroid")
        if k == 1:
            groups.append([lab])
        else:
            groups.append([f"{lab}.{c}" for c in range(1, k + 1)])
    new_labels = tuple(itertools.chain.from_iterable(groups))
    n_new = len(new_labels)
    if n_new > 24:
        raise InputError(f"expanded ground set of size {n_new} exceeds 24")
    phi_mask = []
    shift = 0
    for g in groups:
        phi_mask.append(((1 << len(g)) - 1) << shift)
        shift += len(g)
    n_old = p.n
    # phi(I) for every original subset
    phi = [0] * (1 << n_old)
    for imask in range(1 << n_old):
        mm = 0
        for i in iter_bits(imask):
            mm |= phi_mask[i]
        phi[imask] = mm
    table = bytearray(1 << n_new)
    for kmask in range(1 << n_new):
        best = popcount(kmask)  # I = empty
        for imask in range(1, 1 << n_old):
            val = p.table[imask] + popcount(kmask & ~phi[imask])
            if val < best:
                best = val
        table[kmask] = best
    meta = {"kind": "free_expansion",
            "groups": {str(lab): groups[i] for i, lab in enumerate(p.labels)}}
    return Matroid(new_labels, bytes(table), validate=True, meta=meta)
