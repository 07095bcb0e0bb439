"""Command-line front end.

Exit codes: 0 = success (including a search that exhausts its space),
1 = the requested property is false (verification failed, axiom
violations, search ran out of budget), 2 = bad input.  Output files are
written atomically; array-emitting verbs honor a --max-rows guard and
re-verify any array they claim is sound before writing it.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import constructions as cons
from . import formats
from .classify import classify_pchar, expr_from_json
from .errors import InputError, VoamatError
from .families import graphic_matroid, standard, uniform, vector_matroid
from .formats import (matrix_from_json, matroid_from_json, matroid_to_json,
                      polymatroid_from_json, voa_from_csv, voa_to_csv,
                      write_atomic, write_voa_csv)
from .matroid import Matroid, check_axioms, connect, derived_families
from .netcode import netcode_combination
from .oa_builders import cyclic_oa23, enumerate_oa343, oa_2_4
from .search import f7star_search, voa_backtracking_search
from .voa import (Voa, entropy_function, entropy_vs_rank, verify_mvoa,
                  verify_oa, verify_voa)


def _label(text: str):
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        return text


def _label_list(text: str | None):
    if not text:
        return []
    return [_label(p) for p in text.split(",") if p.strip() != ""]


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _load_matroid(path: str) -> Matroid:
    try:
        data = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return matroid_from_json(data)


def _load_json(path: str) -> dict:
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _emit(text: str, path: str | None):
    if path:
        write_atomic(path, text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(obj, path: str | None):
    _emit(json.dumps(obj, indent=2, default=str), path)


def _emit_voa(t: Voa, path: str | None, max_rows: int):
    if path:
        write_voa_csv(path, t, max_rows=max_rows)
    else:
        if t.n_rows > max_rows:
            raise InputError(
                f"array has {t.n_rows} rows, above the --max-rows guard {max_rows}")
        sys.stdout.write(voa_to_csv(t))


def _verified_or_die(t: Voa, m: Matroid, v: int, what: str) -> None:
    report = verify_voa(t, m, v)
    if not report.passed:
        raise InputError(f"internal: {what} failed its own verification: "
                         f"{report.failures[0]}")


# -- matroid verbs ------------------------------------------------------------


def cmd_matroid_build(args) -> int:
    sources = [bool(args.kind), bool(args.graph), bool(args.matrix),
               bool(args.circuits), bool(args.free_expansion)]
    if sum(sources) != 1:
        raise InputError("pick exactly one of --kind/--graph/--matrix/"
                         "--circuits/--free-expansion")
    if args.kind:
        params = {}
        for name in ("t", "n", "r"):
            val = getattr(args, name)
            if val is not None:
                params[name] = val
        m = standard(args.kind, **params)
    elif args.graph:
        data = _load_json(args.graph)
        m = graphic_matroid([tuple(e) for e in data["edges"]],
                            data.get("labels"))
    elif args.matrix:
        entries, labels, _modulus = matrix_from_json(_load_json(args.matrix))
        field = None if args.field in (None, "Q", "q") else int(args.field)
        m = vector_matroid(entries, field, labels)
    elif args.circuits:
        m = matroid_from_json(_load_json(args.circuits))
    else:
        p = polymatroid_from_json(_load_json(args.free_expansion))
        m = cons.free_expansion(p)
    _emit_json(matroid_to_json(m), args.output)
    return 0


def cmd_matroid_families(args) -> int:
    m = _load_matroid(args.input)
    fams = derived_families(m)
    out = {kind: [list(s) for s in getattr(fams, kind).members]
           for kind in ("independents", "bases", "circuits", "loops", "coloops")}
    _emit_json(out, args.output)
    return 0


def cmd_matroid_minor(args) -> int:
    m = _load_matroid(args.input)
    out = m.minor(delete=_label_list(args.delete), contract=_label_list(args.contract))
    _emit_json(matroid_to_json(out), args.output)
    return 0


def cmd_matroid_dual(args) -> int:
    _emit_json(matroid_to_json(_load_matroid(args.input).dual()), args.output)
    return 0


def cmd_matroid_connect(args) -> int:
    m1 = _load_matroid(args.first)
    m2 = _load_matroid(args.second)
    p1 = _label(args.p1) if args.p1 is not None else None
    p2 = _label(args.p2) if args.p2 is not None else None
    out = connect(args.kind, m1, p1, m2, p2)
    payload = matroid_to_json(out)
    if out.meta:
        payload["provenance"] = {k: (v if not isinstance(v, dict)
                                     else {str(a): b for a, b in v.items()})
                                 for k, v in out.meta.items()}
    _emit_json(payload, args.output)
    return 0


def cmd_matroid_check(args) -> int:
    data = _load_json(args.input)
    labels = data.get("labels")
    if "rank" not in data:
        raise InputError("matroid check needs the rank-table schema")
    rank = {int(k): int(v) for k, v in data["rank"].items()}
    n = int(data["n"]) if "n" in data else None
    violations = check_axioms(rank, n, labels)
    _emit_json({"violations": [
        {"axiom": v.axiom, "witnesses": [list(w) for w in v.witnesses],
         "detail": v.detail} for v in violations]}, args.output)
    return 1 if violations else 0


# -- voa verbs ----------------------------------------------------------------


def cmd_voa_build(args) -> int:
    v = args.v
    if args.kind == "factorial":
        import itertools
        if args.n is None:
            raise InputError("--kind factorial needs --n")
        rows = list(itertools.product(range(v), repeat=args.n))
        t = Voa(v, tuple(range(1, args.n + 1)), rows)
        _verified_or_die(t, uniform(args.n, args.n), v, "full factorial")
    elif args.kind == "oa23":
        t = cyclic_oa23(v)
        _verified_or_die(t, uniform(2, 3), v, "three-column array")
    elif args.kind == "oa24":
        t = oa_2_4(v)
        _verified_or_die(t, uniform(2, 4), v, "four-column array")
    elif args.kind == "whirl":
        if args.r is None:
            raise InputError("--kind whirl needs --r")
        t = cons.whirl_voa(args.r, v)  # verified at every stage internally
    elif args.kind == "matrix":
        if not args.matrix:
            raise InputError("--kind matrix needs --matrix")
        entries, labels, _ = matrix_from_json(_load_json(args.matrix))
        zm = cons.ZvMatrix(tuple(tuple(r) for r in entries), labels)
        t = cons.matrix_voa(zm, v)
        _verified_or_die(t, zm.column_matroid, v, "matrix evaluation")
    else:
        raise InputError(f"unknown build kind {args.kind!r}")
    _emit_voa(t, args.output, args.max_rows)
    return 0


def cmd_voa_verify(args) -> int:
    t = voa_from_csv(_read(args.array), args.v)
    modes = [bool(args.matroid), bool(args.polymatroid), args.strength is not None]
    if sum(modes) != 1:
        raise InputError("pick exactly one of --matroid/--polymatroid/--strength")
    if args.matroid:
        report = verify_voa(t, _load_matroid(args.matroid), args.v)
        payload = {"passed": report.passed,
                   "failures": [str(f) for f in report.failures]}
    elif args.polymatroid:
        p = polymatroid_from_json(_load_json(args.polymatroid))
        report = verify_mvoa(t, p, args.v)
        payload = {"passed": report.passed,
                   "failures": [str(f) for f in report.failures]}
    else:
        ok, lam = verify_oa(t, args.strength, args.v)
        payload = {"passed": ok, "index": lam}
        report = type("R", (), {"passed": ok})
    _emit_json(payload, args.output)
    return 0 if report.passed else 1


def _maybe_verify(out: Voa, matroid: Matroid | None, v: int, what: str) -> None:
    if matroid is not None:
        _verified_or_die(out, matroid, v, what)


def cmd_voa_delete(args) -> int:
    t = voa_from_csv(_read(args.array), args.v)
    out = cons.voa_delete(t, _label_list(args.columns))
    if args.matroid:
        m = _load_matroid(args.matroid).minor(delete=_label_list(args.columns))
        _verified_or_die(out, m, args.v, "deletion")
    _emit_voa(out, args.output, args.max_rows)
    return 0


def cmd_voa_contract(args) -> int:
    t = voa_from_csv(_read(args.array), args.v)
    at = tuple(int(x) for x in args.at.split(",")) if args.at else None
    out = cons.voa_contract(t, _label_list(args.columns), at)
    if args.matroid:
        m = _load_matroid(args.matroid).minor(contract=_label_list(args.columns))
        _verified_or_die(out, m, args.v, "contraction")
    _emit_voa(out, args.output, args.max_rows)
    return 0


def _binary_arrays(args):
    t1 = voa_from_csv(_read(args.first), args.v)
    t2 = voa_from_csv(_read(args.second), args.v)
    return t1, t2


def _binary_matroid_check(args, out, kind, v):
    if args.matroid_a and args.matroid_b:
        m1 = _load_matroid(args.matroid_a)
        m2 = _load_matroid(args.matroid_b)
        p1 = _label(args.p1) if getattr(args, "p1", None) is not None else None
        p2 = _label(args.p2) if getattr(args, "p2", None) is not None else None
        target = connect(kind, m1, p1, m2, p2)
        _verified_or_die(out, target, v, kind)


def cmd_voa_series(args) -> int:
    t1, t2 = _binary_arrays(args)
    aux = voa_from_csv(_read(args.aux), args.v) if args.aux else None
    out = cons.voa_series(t1, _label(args.p1), t2, _label(args.p2), aux)
    _binary_matroid_check(args, out, "series", args.v)
    _emit_voa(out, args.output, args.max_rows)
    return 0


def cmd_voa_parallel(args) -> int:
    t1, t2 = _binary_arrays(args)
    out = cons.voa_parallel(t1, _label(args.p1), t2, _label(args.p2))
    _binary_matroid_check(args, out, "parallel", args.v)
    _emit_voa(out, args.output, args.max_rows)
    return 0


def cmd_voa_dsum(args) -> int:
    t1, t2 = _binary_arrays(args)
    out = cons.voa_direct_sum(t1, t2)
    if args.matroid_a and args.matroid_b:
        target = connect("direct_sum", _load_matroid(args.matroid_a), None,
                         _load_matroid(args.matroid_b), None)
        _verified_or_die(out, target, args.v, "direct_sum")
    _emit_voa(out, args.output, args.max_rows)
    return 0


def cmd_voa_twosum(args) -> int:
    t1, t2 = _binary_arrays(args)
    out = cons.voa_two_sum(t1, _label(args.p1), t2, _label(args.p2), args.mode)
    _binary_matroid_check(args, out, "two_sum", args.v)
    _emit_voa(out, args.output, args.max_rows)
    return 0


def cmd_voa_entropy(args) -> int:
    t = voa_from_csv(_read(args.array), args.v)
    ent = entropy_function(t)
    payload = {"entropies_bits": {",".join(map(str, k)): round(h, 12)
                                  for k, h in sorted(ent.items(), key=lambda kv: (len(kv[0]), kv[0]))}}
    if args.matroid:
        m = _load_matroid(args.matroid)
        ok, dev = entropy_vs_rank(t, m, args.v)
        payload["matches_rank_times_log2v"] = ok
        payload["max_deviation_bits"] = dev
        _emit_json(payload, args.output)
        return 0 if ok else 1
    _emit_json(payload, args.output)
    return 0


# -- oa verbs -----------------------------------------------------------------


def cmd_oa_build(args) -> int:
    if (args.t, args.n) == (2, 3):
        t = cyclic_oa23(args.v)
        _verified_or_die(t, uniform(2, 3), args.v, "three-column array")
    elif (args.t, args.n) == (2, 4):
        t = oa_2_4(args.v)
        _verified_or_die(t, uniform(2, 4), args.v, "four-column array")
    else:
        raise InputError("supported builders: --t 2 --n 3 and --t 2 --n 4 "
                         "(see 'oa catalog343' for the strength-3 catalog)")
    _emit_voa(t, args.output, args.max_rows)
    return 0


def cmd_oa_catalog343(args) -> int:
    catalog = enumerate_oa343()
    for member in catalog:
        ok, lam = verify_oa(member, 3, 3)
        if not ok or lam != 1:
            raise InputError("internal: catalog member failed its strength-3 check")
    blocks = [voa_to_csv(m) for m in catalog]
    _emit("\n".join(blocks), args.output)
    sys.stderr.write(f"{len(catalog)} arrays\n")
    return 0


# -- search / classify / netcode ---------------------------------------------


def cmd_search_f7star(args) -> int:
    res = f7star_search()
    payload = {
        "outcome": res.outcome,
        "candidates": res.candidates,
        "valid_candidates": res.trace["valid_candidates"],
        "elapsed_seconds": round(res.elapsed, 3),
        "first_failing_quadruple": res.trace["first_failing_quadruple"],
        "conclusion": ("level 3 admits no array for the dual binary plane"
                       if res.outcome == "exhausted"
                       and res.trace["valid_candidates"] == 0 else "see witnesses"),
    }
    _emit_json(payload, args.output)
    sys.stderr.write(f"{res.outcome} {res.candidates}, "
                     f"{res.trace['valid_candidates']} valid\n")
    return 0


def cmd_search_voa(args) -> int:
    m = _load_matroid(args.matroid)
    res = voa_backtracking_search(m, args.v, budget=args.budget)
    payload = {"outcome": res.outcome, "nodes": res.candidates,
               "elapsed_seconds": round(res.elapsed, 3), "trace": res.trace}
    _emit_json(payload, args.json_output)
    if res.found and args.output:
        write_voa_csv(args.output, res.array, max_rows=args.max_rows)
    return 1 if res.outcome == "budget_exceeded" else 0


def cmd_classify(args) -> int:
    if bool(args.input) == bool(args.expr):
        raise InputError("pick exactly one of -i/--input or --expr")
    levels = range(args.levels_from, args.levels_to + 1)
    if args.input:
        obj = _load_matroid(args.input)
    else:
        obj = expr_from_json(_load_json(args.expr))
    report = classify_pchar(obj, levels=tuple(levels))
    _emit_json(report.to_json(), args.output)
    return 0


def cmd_netcode_combination(args) -> int:
    scheme = netcode_combination(args.v)
    _emit_json(scheme.to_json(), args.output)
    return 0


# -- parser -------------------------------------------------------------------


def _add_output(p):
    p.add_argument("-o", "--output", help="output path (default: stdout)")


def _add_max_rows(p):
    p.add_argument("--max-rows", type=int, default=10_000_000,
                   help="refuse to emit arrays larger than this (default 1e7)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="voamat",
        description="Matroid-driven variable-strength orthogonal arrays: "
                    "build, verify, transform, search, classify.")
    sub = ap.add_subparsers(dest="group", required=True)

    mat = sub.add_parser("matroid", help="matroid operations").add_subparsers(
        dest="verb", required=True)
    p = mat.add_parser("build", help="build a matroid from a family, graph, "
                                     "matrix, circuits, or free expansion")
    p.add_argument("--kind", choices=["uniform", "fano", "fano_dual", "wheel",
                                      "whirl", "house"])
    p.add_argument("--t", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--graph", help="JSON file {edges: [[u,v],...], labels: [...]}")
    p.add_argument("--matrix", help="JSON matrix file")
    p.add_argument("--field", help="prime power q, or Q for the rationals")
    p.add_argument("--circuits", help="JSON file {labels: [...], circuits: [[...]]}")
    p.add_argument("--free-expansion", dest="free_expansion",
                   help="JSON polymatroid to expand")
    _add_output(p)
    p.set_defaults(func=cmd_matroid_build)

    p = mat.add_parser("families", help="independents/bases/circuits/loops/coloops")
    p.add_argument("-i", "--input", required=True)
    _add_output(p)
    p.set_defaults(func=cmd_matroid_families)

    p = mat.add_parser("minor", help="delete and contract")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--delete", default="")
    p.add_argument("--contract", default="")
    _add_output(p)
    p.set_defaults(func=cmd_matroid_minor)

    p = mat.add_parser("dual", help="dual matroid")
    p.add_argument("-i", "--input", required=True)
    _add_output(p)
    p.set_defaults(func=cmd_matroid_dual)

    p = mat.add_parser("connect", help="series/parallel/direct_sum/two_sum")
    p.add_argument("--kind", required=True,
                   choices=["series", "parallel", "direct_sum", "two_sum"])
    p.add_argument("-a", "--first", required=True)
    p.add_argument("-b", "--second", required=True)
    p.add_argument("--p1")
    p.add_argument("--p2")
    _add_output(p)
    p.set_defaults(func=cmd_matroid_connect)

    p = mat.add_parser("check", help="exhaustive rank-axiom check")
    p.add_argument("-i", "--input", required=True)
    _add_output(p)
    p.set_defaults(func=cmd_matroid_check)

    voa = sub.add_parser("voa", help="array operations").add_subparsers(
        dest="verb", required=True)
    p = voa.add_parser("build", help="build an array (verified before writing)")
    p.add_argument("--kind", required=True,
                   choices=["factorial", "oa23", "oa24", "whirl", "matrix"])
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--matrix")
    _add_output(p)
    _add_max_rows(p)
    p.set_defaults(func=cmd_voa_build)

    p = voa.add_parser("verify", help="verify an array against a matroid, "
                                      "polymatroid, or constant strength")
    p.add_argument("--array", required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--matroid")
    p.add_argument("--polymatroid")
    p.add_argument("--strength", type=int)
    _add_output(p)
    p.set_defaults(func=cmd_voa_verify)

    p = voa.add_parser("delete", help="drop columns and deduplicate")
    p.add_argument("--array", required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--columns", required=True)
    p.add_argument("--matroid", help="input's matroid; verifies the output")
    _add_output(p)
    _add_max_rows(p)
    p.set_defaults(func=cmd_voa_delete)

    p = voa.add_parser("contract", help="fix a sub-row and drop its columns")
    p.add_argument("--array", required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--columns", required=True)
    p.add_argument("--at", help="comma-separated anchor sub-row (default: first)")
    p.add_argument("--matroid", help="input's matroid; verifies the output")
    _add_output(p)
    _add_max_rows(p)
    p.set_defaults(func=cmd_voa_contract)

    def binary(nameplate, helptext, with_points=True, with_aux=False, with_mode=False):
        p = voa.add_parser(nameplate, help=helptext)
        p.add_argument("-a", "--first", required=True)
        p.add_argument("-b", "--second", required=True)
        p.add_argument("--v", type=int, required=True)
        if with_points:
            p.add_argument("--p1", required=True)
            p.add_argument("--p2", required=True)
        if with_aux:
            p.add_argument("--aux", help="three-column strength-2 CSV "
                                         "(default: cyclic)")
        if with_mode:
            p.add_argument("--mode", choices=["series", "parallel"],
                           default="series")
        p.add_argument("--matroid-a", help="first input's matroid (for verification)")
        p.add_argument("--matroid-b", help="second input's matroid")
        _add_output(p)
        _add_max_rows(p)
        return p

    binary("series", "series connection", with_aux=True).set_defaults(
        func=cmd_voa_series)
    binary("parallel", "parallel connection").set_defaults(func=cmd_voa_parallel)
    binary("dsum", "direct sum", with_points=False).set_defaults(func=cmd_voa_dsum)
    binary("twosum", "2-sum", with_mode=True).set_defaults(func=cmd_voa_twosum)

    p = voa.add_parser("entropy", help="empirical subset entropies in bits")
    p.add_argument("--array", required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--matroid", help="compare against rank times log2(v)")
    _add_output(p)
    p.set_defaults(func=cmd_voa_entropy)

    oa = sub.add_parser("oa", help="orthogonal-array builders").add_subparsers(
        dest="verb", required=True)
    p = oa.add_parser("build", help="strength-2 builders on 3 or 4 columns")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    _add_output(p)
    _add_max_rows(p)
    p.set_defaults(func=cmd_oa_build)

    p = oa.add_parser("catalog343", help="all 24 strength-3 arrays on four "
                                         "ternary columns, as a CSV bundle")
    _add_output(p)
    p.set_defaults(func=cmd_oa_catalog343)

    search = sub.add_parser("search", help="exhaustive searches").add_subparsers(
        dest="verb", required=True)
    p = search.add_parser("f7star", help="exhaust the 24^3 dual-plane "
                                         "candidates at level 3")
    _add_output(p)
    p.set_defaults(func=cmd_search_f7star)

    p = search.add_parser("voa", help="backtracking search for an array")
    p.add_argument("--matroid", required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--budget", type=int)
    p.add_argument("--json", dest="json_output", help="write the result summary here")
    p.add_argument("-o", "--output", help="write a found array here (CSV)")
    _add_max_rows(p)
    p.set_defaults(func=cmd_search_voa)

    p = sub.add_parser("classify", help="three-way level classification")
    p.add_argument("-i", "--input", help="matroid JSON")
    p.add_argument("--expr", help="construction-expression JSON")
    p.add_argument("--levels-from", type=int, default=2)
    p.add_argument("--levels-to", type=int, default=30)
    _add_output(p)
    p.set_defaults(func=cmd_classify)

    net = sub.add_parser("netcode", help="network-code emitters").add_subparsers(
        dest="verb", required=True)
    p = net.add_parser("combination", help="two-source four-edge multicast scheme")
    p.add_argument("--v", type=int, required=True)
    _add_output(p)
    p.set_defaults(func=cmd_netcode_combination)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except VoamatError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
