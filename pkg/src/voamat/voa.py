"""Arrays over Z_v and the verification oracles for their strength claims.

A ``Voa`` is an ordered multiset of rows over labeled columns together
with a symbol level v.  Verification against a matroid checks, for every
column subset A, that each row of the subarray T(A) occurs exactly
v^(r(N)-r(A)) times; the orthogonal-array check is the constant-strength
special case.  Multiplicity counting is done on lexicographically sorted
projections so reports are deterministic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError, PreconditionError
from .matroid import IntegerPolymatroid, Label, Matroid, iter_bits, popcount


class Voa:
    """Level, column labels, and rows over Z_v (entries validated nonnegative)."""

    def __init__(self, level: int, columns: Iterable[Label], rows: Iterable[Sequence[int]]):
        level = int(level)
        if level < 2:
            raise InputError("level must be an integer >= 2")
        columns = tuple(columns)
        if len(set(columns)) != len(columns):
            raise InputError("column labels must be distinct")
        width = len(columns)
        clean = []
        for r in rows:
            row = tuple(int(x) for x in r)
            if len(row) != width:
                raise InputError(f"row {row} has width {len(row)}, expected {width}")
            if any(x < 0 for x in row):
                raise InputError(f"row {row} has a negative entry")
            clean.append(row)
        self.level = level
        self.columns = columns
        self.rows = tuple(clean)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_columns(self) -> int:
        return len(self.columns)

    @cached_property
    def _array(self) -> np.ndarray:
        if not self.rows:
            return np.zeros((0, self.n_columns), dtype=np.int64)
        return np.asarray(self.rows, dtype=np.int64)

    def column_index(self, label: Label) -> int:
        try:
            return self.columns.index(label)
        except ValueError:
            raise InputError(f"{label!r} is not a column of this array") from None

    def project(self, columns: Iterable[Label]) -> "Voa":
        idx = [self.column_index(c) for c in columns]
        return Voa(self.level, [self.columns[i] for i in idx],
                   [tuple(r[i] for i in idx) for r in self.rows])

    def drop(self, columns: Iterable[Label]) -> "Voa":
        gone = set(columns)
        keep = [c for c in self.columns if c not in gone]
        if len(gone - set(self.columns)) != 0:
            raise InputError(f"not columns of this array: {sorted(gone - set(self.columns), key=repr)}")
        return self.project(keep)

    def canonical(self) -> "Voa":
        """Rows sorted lexicographically; the representative used for
        'equal up to row order' comparisons."""
        return Voa(self.level, self.columns, sorted(self.rows))

    def __eq__(self, other):
        return (isinstance(other, Voa) and self.level == other.level
                and self.columns == other.columns and self.rows == other.rows)

    def __hash__(self):
        return hash((self.level, self.columns, self.rows))

    def __repr__(self):
        return f"Voa(level={self.level}, columns={list(self.columns)}, rows={self.n_rows})"


def canonical_equal(a: Voa, b: Voa) -> bool:
    return a.canonical() == b.canonical()


def ded(t: Voa) -> Voa:
    """Keep one copy of each row, in first-occurrence order."""
    seen = set()
    rows = []
    for r in t.rows:
        if r not in seen:
            seen.add(r)
            rows.append(r)
    return Voa(t.level, t.columns, rows)


@dataclass(frozen=True)
class Failure:
    kind: str  # "shape", "multiplicity" or "range"
    subset: tuple[Label, ...]
    expected: int
    row: tuple[int, ...]
    observed: int

    def __str__(self):
        if self.kind == "range":
            return (f"column {self.subset[0]} entry {self.row[0]} outside "
                    f"0..{self.expected - 1}")
        if self.kind == "shape":
            return f"expected {self.expected} rows, found {self.observed}"
        return (f"subset {{{','.join(map(str, self.subset))}}}: row {self.row} "
                f"occurs {self.observed} times, expected {self.expected}")


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    failures: tuple[Failure, ...]

    def __bool__(self):
        return self.passed


def _counts(arr: np.ndarray, idx: list[int]):
    """Distinct projected rows (lex sorted) and their multiplicities."""
    proj = arr[:, idx]
    return np.unique(proj, axis=0, return_counts=True)


def _checkable(m: Matroid | IntegerPolymatroid):
    if not m.is_loopless():
        raise PreconditionError("verification needs a loopless (poly)matroid")
    if m.full_rank < 2:
        raise PreconditionError("verification needs rank at least 2")


def _column_map(t: Voa, m: Matroid | IntegerPolymatroid) -> list[int]:
    if set(t.columns) != set(m.labels):
        raise InputError("array columns do not match the ground set")
    return [t.column_index(lab) for lab in m.labels]


def verify_voa(t: Voa, m: Matroid, v: int | None = None) -> VerificationReport:
    """Exhaustive multiplicity check of an array against a matroid.

    For every subset A of the ground set, every row of T(A) must occur
    exactly v^(r(N)-r(A)) times.  All 2^n subsets are scanned; the first
    offending row (lex order) is reported per subset.
    """
    if v is None:
        v = t.level
    if any(x >= v for row in t.rows for x in row):
        raise InputError(f"entry out of range for level {v}")
    col = _column_map(t, m)
    _checkable(m)
    failures: list[Failure] = []
    expected_rows = v ** m.full_rank
    if t.n_rows != expected_rows:
        failures.append(Failure("shape", m.labels, expected_rows, (), t.n_rows))
        return VerificationReport(False, tuple(failures))
    arr = t._array
    r_full = m.full_rank
    for mask in range(1 << m.n):
        expected = v ** (r_full - m.table[mask])
        if mask == 0:
            if t.n_rows != expected:
                failures.append(Failure("multiplicity", (), expected, (), t.n_rows))
            continue
        idx = [col[i] for i in iter_bits(mask)]
        uniq, counts = _counts(arr, idx)
        bad = np.nonzero(counts != expected)[0]
        if bad.size:
            i = int(bad[0])
            failures.append(Failure("multiplicity", m.elements_of(mask),
                                    expected, tuple(int(x) for x in uniq[i]),
                                    int(counts[i])))
    return VerificationReport(not failures, tuple(failures))


def verify_oa(t: Voa, strength: int, v: int | None = None) -> tuple[bool, int | None]:
    """Constant-strength check: every ``strength``-column subarray must hit
    every tuple of Z_v^strength equally often.  Returns (ok, index)."""
    if v is None:
        v = t.level
    if strength > t.n_columns:
        raise PreconditionError(
            f"strength {strength} exceeds {t.n_columns} columns")
    if strength < 0:
        raise PreconditionError("strength must be nonnegative")
    if any(x >= v for row in t.rows for x in row):
        raise InputError(f"entry out of range for level {v}")
    block = v ** strength
    if t.n_rows == 0 or t.n_rows % block:
        return False, None
    lam = t.n_rows // block
    arr = t._array
    for idx in itertools.combinations(range(t.n_columns), strength):
        if strength == 0:
            continue
        uniq, counts = _counts(arr, list(idx))
        if uniq.shape[0] != block or not (counts == lam).all():
            return False, lam
    return True, lam


@dataclass(frozen=True)
class Lemma1Report:
    independent_failures: tuple[Failure, ...]
    basis_failures: tuple[Failure, ...]
    circuit_failures: tuple[Failure, ...]

    @property
    def passed(self) -> bool:
        return not (self.independent_failures or self.basis_failures
                    or self.circuit_failures)


def lemma1_report(t: Voa, m: Matroid, v: int | None = None) -> Lemma1Report:
    """Family-wise multiplicity checks equivalent to the subset sweep:

    independent sets at v^(r(N)-|I|), bases at 1, circuits at
    v^(r(N)-|C|+1) for the circuit and for each of its single deletions.
    """
    if v is None:
        v = t.level
    col = _column_map(t, m)
    _checkable(m)
    arr = t._array
    r_full = m.full_rank

    def check(mask: int, expected: int, sink: list[Failure]):
        if mask == 0:
            if t.n_rows != expected:
                sink.append(Failure("multiplicity", (), expected, (), t.n_rows))
            return
        idx = [col[i] for i in iter_bits(mask)]
        uniq, counts = _counts(arr, idx)
        if uniq.shape[0] * expected != t.n_rows or not (counts == expected).all():
            bad = np.nonzero(counts != expected)[0]
            if bad.size:
                i = int(bad[0])
                sink.append(Failure("multiplicity", m.elements_of(mask), expected,
                                    tuple(int(x) for x in uniq[i]), int(counts[i])))
            else:
                sink.append(Failure("multiplicity", m.elements_of(mask), expected,
                                    (), uniq.shape[0]))

    ind_fail: list[Failure] = []
    bas_fail: list[Failure] = []
    cir_fail: list[Failure] = []
    for mask in range(1 << m.n):
        k = popcount(mask)
        if m.table[mask] == k:
            check(mask, v ** (r_full - k), ind_fail)
            if k == r_full:
                check(mask, 1, bas_fail)
    for cmask in m.circuit_masks:
        expected = v ** (r_full - popcount(cmask) + 1)
        check(cmask, expected, cir_fail)
        for i in iter_bits(cmask):
            check(cmask ^ (1 << i), expected, cir_fail)
    return Lemma1Report(tuple(ind_fail), tuple(bas_fail), tuple(cir_fail))


def entropy_function(t: Voa) -> dict[tuple[Label, ...], float]:
    """Empirical joint entropy, in bits, of every column subset.

    Rows are taken as equally likely outcomes; H(A) is the entropy of
    the induced distribution on sub-rows indexed by A.
    """
    if not t.rows:
        raise PreconditionError("entropy needs a nonempty array")
    arr = t._array
    total = t.n_rows
    out: dict[tuple[Label, ...], float] = {}
    ncols = t.n_columns
    for mask in range(1 << ncols):
        cols = tuple(t.columns[i] for i in iter_bits(mask))
        if mask == 0:
            out[cols] = 0.0
            continue
        _, counts = _counts(arr, list(iter_bits(mask)))
        p = counts / total
        out[cols] = float(-(p * np.log2(p)).sum())
    return out


def entropy_vs_rank(t: Voa, m: Matroid, v: int, tol: float = 1e-9) -> tuple[bool, float]:
    """Largest deviation of empirical entropies from r(A) * log2(v)."""
    col = _column_map(t, m)
    ent = entropy_function(t)
    logv = math.log2(v)
    worst = 0.0
    for mask in range(1 << m.n):
        cols = tuple(t.columns[i] for i in sorted(col[i] for i in iter_bits(mask)))
        dev = abs(ent[cols] - m.table[mask] * logv)
        worst = max(worst, dev)
    return worst <= tol, worst


def verify_mvoa(t: Voa, p: IntegerPolymatroid, v: int | None = None) -> VerificationReport:
    """Mixed-level check: column i ranges over 0..v^r(i)-1, and every
    subset obeys the same v^(r(N)-r(A)) multiplicity rule."""
    if v is None:
        v = t.level
    col = _column_map(t, p)
    _checkable(p)
    failures: list[Failure] = []
    for i, lab in enumerate(p.labels):
        cap = v ** p.table[1 << i]
        ci = col[i]
        for row in t.rows:
            if row[ci] >= cap:
                failures.append(Failure("range", (lab,), cap, (row[ci],), row[ci]))
                break
    expected_rows = v ** p.full_rank
    if t.n_rows != expected_rows:
        failures.append(Failure("shape", p.labels, expected_rows, (), t.n_rows))
        return VerificationReport(False, tuple(failures))
    arr = t._array
    r_full = p.full_rank
    for mask in range(1, 1 << p.n):
        expected = v ** (r_full - p.table[mask])
        idx = [col[i] for i in iter_bits(mask)]
        uniq, counts = _counts(arr, idx)
        bad = np.nonzero(counts != expected)[0]
        if bad.size:
            i = int(bad[0])
            failures.append(Failure("multiplicity", p.elements_of(mask), expected,
                                    tuple(int(x) for x in uniq[i]), int(counts[i])))
    return VerificationReport(not failures, tuple(failures))
