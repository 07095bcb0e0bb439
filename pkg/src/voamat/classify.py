"""Classification of realizable levels for matroids and build expressions.

For a matroid M, the level set is the set of integers v >= 2 at which an
array verifying against M exists.  Classification applies only sound
rules: the regular/unit-determinant construction, recognition of
cataloged matroids (whirls, small uniforms, the binary plane and its
dual), exact intersection across connection operations, and outer
bounds transferred from detected minors (an array restricts to every
minor, so a minor's impossible levels are impossible for the host).
The output is a three-way partition known-in / known-out / undecided
over a sampled range, with one citation line per rule fired.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .errors import InputError, PreconditionError
from .families import fano, fano_dual, house, standard, uniform, wheel, whirl
from .formats import matroid_from_json
from .matroid import (Label, Matroid, connect, has_minor, is_isomorphic,
                      iter_bits)


# -- level predicates --------------------------------------------------------


@dataclass(frozen=True)
class LevelPredicate:
    """A named membership test on integer levels v >= 2."""

    description: str
    fn: Callable[[int], bool]

    def __call__(self, v: int) -> bool:
        return v >= 2 and bool(self.fn(v))


NOTHING = LevelPredicate("no levels", lambda v: False)
ALL_LEVELS = LevelPredicate("all v >= 2", lambda v: True)
U24_LEVELS = LevelPredicate("v >= 3 and v != 6", lambda v: v >= 3 and v != 6)
POWERS_OF_TWO = LevelPredicate("powers of two", lambda v: v & (v - 1) == 0)


def at_least(a: int, exclude: frozenset[int] = frozenset()) -> LevelPredicate:
    if exclude:
        desc = f"v >= {a} and v not in {{{','.join(map(str, sorted(exclude)))}}}"
    else:
        desc = f"v >= {a}"
    return LevelPredicate(desc, lambda v: v >= a and v not in exclude)


def finite(values: Iterable[int]) -> LevelPredicate:
    vals = frozenset(values)
    return LevelPredicate("{" + ",".join(map(str, sorted(vals))) + "}",
                          lambda v: v in vals)


def pred_or(a: LevelPredicate, b: LevelPredicate) -> LevelPredicate:
    if a is NOTHING:
        return b
    if b is NOTHING:
        return a
    return LevelPredicate(f"({a.description}) or ({b.description})",
                          lambda v: a(v) or b(v))


def pred_and(a: LevelPredicate, b: LevelPredicate) -> LevelPredicate:
    if a is ALL_LEVELS:
        return b
    if b is ALL_LEVELS:
        return a
    return LevelPredicate(f"({a.description}) and ({b.description})",
                          lambda v: a(v) and b(v))


@dataclass(frozen=True)
class Knowledge:
    """Sound inner and outer information about one level set."""

    known_in: LevelPredicate
    known_out: LevelPredicate

    def intersect(self, other: "Knowledge") -> "Knowledge":
        """Exact-intersection combination (connection operations)."""
        return Knowledge(pred_and(self.known_in, other.known_in),
                         pred_or(self.known_out, other.known_out))

    def merge(self, other: "Knowledge") -> "Knowledge":
        """Union of two sound views of the same matroid."""
        return Knowledge(pred_or(self.known_in, other.known_in),
                         pred_or(self.known_out, other.known_out))


EXACT_ALL = Knowledge(ALL_LEVELS, NOTHING)
EXACT_U24 = Knowledge(U24_LEVELS, finite({2, 6}))
EXACT_POW2 = Knowledge(POWERS_OF_TWO,
                       LevelPredicate("not a power of two", lambda v: v & (v - 1) != 0))
U25_KNOWLEDGE = Knowledge(at_least(4, frozenset({6, 10})), finite({2, 3, 6}))
U35_KNOWLEDGE = Knowledge(NOTHING, finite({2, 6}))
F7STAR_KNOWLEDGE = Knowledge(NOTHING, finite({3}))
EMPTY_KNOWLEDGE = Knowledge(NOTHING, NOTHING)


# -- rule registry (name -> the mathematical fact it rests on) ---------------

RULE_STATEMENTS = {
    "rank-at-most-one":
        "rank at most one is realizable at every level (repeat one symbol)",
    "loops-dropped":
        "loops only pin constant coordinates; the level set is unchanged",
    "regular":
        "a totally unimodular representation evaluates to an array at every "
        "level v >= 2 (all basis determinants are units in every Z_v)",
    "whirl-family":
        "whirls of every rank share the level set {v >= 3, v != 6}: the "
        "inductive gluing realizes every such level, and the contraction/"
        "deletion chain down to the four-point rank-two matroid excludes 2 "
        "and 6",
    "u24-mols":
        "a four-column strength-2 array of level v is a pair of orthogonal "
        "Latin squares of order v: exists iff v >= 3 and v != 6 "
        "(Euler's 36 officers; Tarry 1900; Bose-Shrikhande-Parker 1960)",
    "u25-table":
        "five-column strength-2 arrays: impossible at v in {2,3,6}, known "
        "for v >= 4 except 6 with order 10 open (MOLS tables)",
    "u35-outer":
        "contracting one point of the rank-3 uniform matroid on five "
        "elements leaves the four-point rank-two one, so 2 and 6 are "
        "excluded",
    "fano-powers-of-two":
        "the binary projective plane is realizable exactly at powers of two "
        "(Matus, Matroid representations by partitions, 1999)",
    "fano-dual-level3":
        "level 3 for the dual binary plane is excluded by exhausting all "
        "24^3 candidate completions (f7star_search)",
    "uniform-outer":
        "every uniform matroid with rank and corank at least two contains "
        "the four-point rank-two one as a minor, excluding levels 2 and 6",
    "connection-intersection":
        "series, parallel, direct-sum and 2-sum connections realize exactly "
        "the intersection of the operands' level sets",
    "minor-inner":
        "an array for the host restricts to an array for any minor, so the "
        "host's known levels transfer to the minor",
    "minor-outer":
        "an array for the host restricts to any minor, so a minor's "
        "excluded levels are excluded for the host",
}


@dataclass(frozen=True)
class PCharReport:
    """Three-way level partition with the rules that produced it."""

    subject: str
    levels: tuple[int, ...]
    known_in: tuple[int, ...]
    known_out: tuple[int, ...]
    undecided: tuple[int, ...]
    rules: tuple[tuple[str, str], ...]
    knowledge: Knowledge = field(compare=False, repr=False)

    def __post_init__(self):
        overlap = set(self.known_in) & set(self.known_out)
        if overlap:
            raise RuntimeError(f"inconsistent classification: {sorted(overlap)} "
                               "both included and excluded")
        if (not self.undecided and len(self.known_out) == 1
                and min(self.levels, default=2) == 2):
            (i,) = self.known_out
            if i != 3 and set(self.known_in) == set(self.levels) - {i}:
                raise RuntimeError(
                    f"classification claims the level set 'all v >= 2 except {i}', "
                    "which no matroid attains")

    def is_exact(self) -> bool:
        return not self.undecided

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "levels": list(self.levels),
            "known_in": list(self.known_in),
            "known_out": list(self.known_out),
            "undecided": list(self.undecided),
            "known_in_description": self.knowledge.known_in.description,
            "known_out_description": self.knowledge.known_out.description,
            "rules": [{"rule": name, "statement": stmt} for name, stmt in self.rules],
        }


def _report(subject: str, knowledge: Knowledge, rules, levels) -> PCharReport:
    levels = tuple(levels)
    k_in = tuple(v for v in levels if knowledge.known_in(v))
    k_out = tuple(v for v in levels if knowledge.known_out(v) and not knowledge.known_in(v))
    overlap = [v for v in levels if knowledge.known_in(v) and knowledge.known_out(v)]
    if overlap:
        raise RuntimeError(f"inconsistent classification at levels {overlap}")
    und = tuple(v for v in levels if v not in k_in and v not in k_out)
    return PCharReport(subject, levels, k_in, k_out, und, tuple(rules), knowledge)


# -- excluded-minor regularity test ------------------------------------------


@lru_cache(maxsize=1)
def _excluded_minors() -> tuple[Matroid, Matroid, Matroid]:
    return uniform(2, 4), fano(), fano_dual()


def is_regular(m: Matroid) -> bool:
    """Excluded-minor test: no four-point rank-two, binary-plane, or
    dual-binary-plane minor."""
    if m.n > 12:
        raise PreconditionError("regularity test is capped at 12 elements")
    return not any(has_minor(m, t) for t in _excluded_minors())


# -- bare-matroid classification ----------------------------------------------


def _classify_matroid(m: Matroid, rules: list) -> Knowledge:
    if m.n > 12:
        raise PreconditionError("bare-matroid classification is capped at 12 elements")
    if m.loops:
        rules.append(("loops-dropped", RULE_STATEMENTS["loops-dropped"]))
        m = m.minor(delete=m.loops)
    if m.full_rank <= 1 or m.n == 0:
        rules.append(("rank-at-most-one", RULE_STATEMENTS["rank-at-most-one"]))
        return EXACT_ALL
    if is_regular(m):
        rules.append(("regular", RULE_STATEMENTS["regular"]))
        return EXACT_ALL
    # whirl recognition covers the four-point rank-two matroid as rank 2
    if m.n % 2 == 0 and m.full_rank * 2 == m.n and m.n >= 4:
        if is_isomorphic(m, whirl(m.full_rank)):
            name = "u24-mols" if m.n == 4 else "whirl-family"
            rules.append((name, RULE_STATEMENTS[name]))
            return EXACT_U24
    t = m.is_uniform()
    if t is None:
        for other in _excluded_minors():
            if is_isomorphic(m, other):
                if other.full_rank == 3:  # the binary plane
                    rules.append(("fano-powers-of-two",
                                  RULE_STATEMENTS["fano-powers-of-two"]))
                    return EXACT_POW2
                rules.append(("fano-dual-level3",
                              RULE_STATEMENTS["fano-dual-level3"]))
                return F7STAR_KNOWLEDGE
    if t is not None:
        if (t, m.n) == (2, 5):
            rules.append(("u25-table", RULE_STATEMENTS["u25-table"]))
            return U25_KNOWLEDGE
        if (t, m.n) == (3, 5):
            rules.append(("u35-outer", RULE_STATEMENTS["u35-outer"]))
            return U35_KNOWLEDGE
        if 2 <= t <= m.n - 2:
            rules.append(("uniform-outer", RULE_STATEMENTS["uniform-outer"]))
            return Knowledge(NOTHING, finite({2, 6}))
    # outer bounds from detected minors
    knowledge = EMPTY_KNOWLEDGE
    targets = [
        ("four-point rank-two", uniform(2, 4), finite({2, 6})),
        ("five-point rank-two", uniform(2, 5), finite({2, 3, 6})),
        ("five-point rank-three", uniform(3, 5), finite({2, 6})),
        ("binary plane", fano(),
         LevelPredicate("not a power of two", lambda v: v & (v - 1) != 0)),
        ("dual binary plane", fano_dual(), finite({3})),
    ]
    for name, target, out in targets:
        if has_minor(m, target):
            rules.append((f"minor-outer({name})", RULE_STATEMENTS["minor-outer"]))
            knowledge = Knowledge(knowledge.known_in,
                                  pred_or(knowledge.known_out, out))
    return knowledge


# -- construction expressions --------------------------------------------------


_CONNECTION_OPS = ("series", "parallel", "direct_sum", "two_sum")


@dataclass(frozen=True)
class ExprLeaf:
    kind: str
    params: dict
    matroid: Matroid

    def describe(self) -> str:
        if self.params:
            inner = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
            return f"{self.kind}({inner})"
        return self.kind


@dataclass(frozen=True)
class ExprNode:
    op: str
    children: tuple
    params: dict

    def describe(self) -> str:
        inner = ",".join(c.describe() for c in self.children)
        return f"{self.op}({inner})"


ConstructionExpr = ExprLeaf | ExprNode


def expr_from_json(data: dict) -> ConstructionExpr:
    """AST for classification: leaves are named matroids (or an inline rank
    table), nodes are the four connections or a minor step."""
    if "leaf" in data:
        kind = data["leaf"]
        params = {k: v for k, v in data.items() if k != "leaf"}
        if kind == "matroid":
            m = matroid_from_json(params.pop("matroid"))
        else:
            m = standard(kind, **params)
        return ExprLeaf(kind, params, m)
    if "op" in data:
        op = data["op"]
        if op in _CONNECTION_OPS:
            left = expr_from_json(data["left"])
            right = expr_from_json(data["right"])
            params = {k: data[k] for k in ("p1", "p2") if k in data}
            return ExprNode(op, (left, right), params)
        if op == "minor":
            child = expr_from_json(data["child"])
            params = {"delete": tuple(data.get("delete", ())),
                      "contract": tuple(data.get("contract", ()))}
            return ExprNode(op, (child,), params)
        raise InputError(f"unknown expression op {data['op']!r}")
    raise InputError("expression node needs 'leaf' or 'op'")


def evaluate_expr(expr: ConstructionExpr) -> Matroid:
    if isinstance(expr, ExprLeaf):
        return expr.matroid
    if expr.op in _CONNECTION_OPS:
        m1 = evaluate_expr(expr.children[0])
        m2 = evaluate_expr(expr.children[1])
        p1 = expr.params.get("p1")
        p2 = expr.params.get("p2")
        if expr.op != "direct_sum":
            if p1 is None or p2 is None:
                raise InputError(f"{expr.op} expression needs base points p1 and p2")
        return connect(expr.op, m1, p1, m2, p2)
    child = evaluate_expr(expr.children[0])
    return child.minor(delete=expr.params["delete"],
                       contract=expr.params["contract"])


def _classify_expr(expr: ConstructionExpr, rules: list) -> Knowledge:
    if isinstance(expr, ExprLeaf):
        return _classify_matroid(expr.matroid, rules)
    if expr.op in _CONNECTION_OPS:
        left = _classify_expr(expr.children[0], rules)
        right = _classify_expr(expr.children[1], rules)
        rules.append(("connection-intersection",
                      RULE_STATEMENTS["connection-intersection"]))
        return left.intersect(right)
    child = _classify_expr(expr.children[0], rules)
    rules.append(("minor-inner", RULE_STATEMENTS["minor-inner"]))
    return Knowledge(child.known_in, NOTHING)


def classify_pchar(obj: Matroid | ConstructionExpr | dict,
                   levels: Sequence[int] = tuple(range(2, 31)),
                   evaluate: bool = True) -> PCharReport:
    """Three-way classification of an object's realizable levels.

    ``obj`` is a matroid, a construction expression, or expression JSON.
    Expressions combine their leaves' level sets exactly across
    connection nodes; the evaluated matroid is additionally classified
    bare (when small enough) and both sound views are merged.
    """
    if isinstance(obj, dict):
        obj = expr_from_json(obj)
    rules: list[tuple[str, str]] = []
    if isinstance(obj, Matroid):
        knowledge = _classify_matroid(obj, rules)
        subject = repr(obj)
    else:
        knowledge = _classify_expr(obj, rules)
        subject = obj.describe()
        if evaluate:
            evaluated = evaluate_expr(obj)
            if evaluated.n <= 12:
                knowledge = knowledge.merge(_classify_matroid(evaluated, rules))
    seen = set()
    unique_rules = []
    for r in rules:
        if r[0] not in seen:
            seen.add(r[0])
            unique_rules.append(r)
    return _report(subject, knowledge, unique_rules, levels)
