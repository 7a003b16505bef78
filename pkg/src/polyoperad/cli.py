"""Command-line front end.

Every command prints deterministic text (or, with ``--json``, one JSON object
with a fixed key order) and exits 0 on success.  Check commands exit 1 when
the verdict is negative; invalid input exits 2 with a message on stderr.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Any

from . import __version__
from .axioms import axioms_for, evaluate_relation, expected_axiom_count
from .chainhom import (
    ChainError,
    check_d_squared,
    check_simplicial,
    dend_letter,
    free_dend_algebra,
    free_dend_words,
    free_tetra_algebra,
    free_tetra_words,
    get_complex,
    homology_ranks,
    letters,
    tetra_letter,
)
from .exactlin import LinComb
from .expr import BinOp, evaluate
from .genseries import (
    comp_inverse,
    compose,
    format_triangle,
    pascal_tables,
    series_of,
)
from .hopfcop import METHODS, UndefinedUnitProduct, aug_mul, coproduct, format_tensor
from .kgonal import (
    check_gonal_axioms,
    enumerate_monomials as gonal_monomials,
    evaluate_gonal_expr,
    gonal_dim,
    gonal_lin_mul,
    gonal_mul,
    parse_gonal_expr,
)
from .mdend import (
    DendError,
    check_dend_axioms,
    decompose_by_solve,
    decompose_ternary,
    dend_involution,
    dend_mul,
    evaluate_dend_expr,
    format_dend_expr,
    op_symbol as dend_op_symbol,
    parse_dend_expr,
    parse_op as parse_dend_op,
    tree_mul,
)
from .mtetra import (
    TetraError,
    check_tetra_axioms,
    chi,
    enumerate_monomials as tetra_monomials,
    evaluate_tetra_expr,
    from_polynomial,
    parse_polynomial,
    parse_tetra_expr,
    tetra_dim,
    tetra_lin_mul,
    tetra_mul,
    to_polynomial,
)
from .opdual import DualityError, duality_report, normalize_family, reduced_basis
from .trees import MTree, corolla, count_trees, enumerate_trees, leaf


class CliError(ValueError):
    pass


def _num(q: Fraction) -> str:
    return str(q)


def _emit(args, text: str, data: dict[str, Any]) -> None:
    if args.json:
        print(json.dumps(data, ensure_ascii=False))
    else:
        print(text)


def _lin_json(x: LinComb, key_str=str) -> list[list[str]]:
    return [[key_str(k), _num(c)] for k, c in x.items()]


# ---------------------------------------------------------------------------
# Operation spellings for the tetrahedral side
# ---------------------------------------------------------------------------


def _parse_perp_op(text: str, bound: int, what: str) -> int:
    text = text.strip()
    table = {"-|": 0, "|-": 1}
    if text in table:
        return table[text]
    if text.startswith("_") and text[1:].isdigit() and 2 <= int(text[1:]) <= bound - 1:
        return int(text[1:])
    raise CliError(f"unknown operation {text!r} for {what}; expected -|, |- or _i with 2 <= i <= {bound - 1}")


# ---------------------------------------------------------------------------
# trees
# ---------------------------------------------------------------------------


def cmd_trees(args) -> int:
    if args.arity < 2 or args.degree < 0:
        raise CliError("need --arity >= 2 and --degree >= 0")
    if args.action == "count":
        n = count_trees(args.arity, args.degree)
        _emit(args, str(n), {"arity": args.arity, "degree": args.degree, "count": n})
        return 0
    trees = enumerate_trees(args.arity, args.degree) if args.degree else [leaf(args.arity)]
    keys = [t.key for t in trees]
    _emit(args, "\n".join(keys), {"arity": args.arity, "degree": args.degree, "count": len(keys), "trees": keys})
    return 0


# ---------------------------------------------------------------------------
# dend / hopf
# ---------------------------------------------------------------------------


def _aug_atom(m: int):
    def atom_value(t: MTree) -> LinComb:
        if t.arity != m:
            raise DendError(f"arity mismatch: {t.arity} vs {m}")
        return LinComb.basis(t)

    return atom_value


def _aug_evaluate(expr, m: int) -> LinComb:
    """Evaluate with ``.`` as the unit; undefined unit products name their source."""

    def walk(e):
        if isinstance(e, BinOp):
            left, right = walk(e.left), walk(e.right)
            try:
                return aug_mul(e.op, left, right)
            except UndefinedUnitProduct as exc:
                raise UndefinedUnitProduct(f"{exc} in {format_dend_expr(e)}") from None
        return evaluate(e, _aug_atom(m), lambda op, a, b: aug_mul(op, a, b))

    return walk(expr)


def _aug_str(t: MTree) -> str:
    return "1" if t.is_leaf else t.key


def cmd_dend(args) -> int:
    m = args.arity
    if m < 2:
        raise CliError("need --arity >= 2")
    if args.action == "mul":
        op = parse_dend_op(args.op, m)
        if args.augmented:
            x = _aug_evaluate(parse_dend_expr(args.left, m), m)
            y = _aug_evaluate(parse_dend_expr(args.right, m), m)
            try:
                out = aug_mul(op, x, y)
            except UndefinedUnitProduct as exc:
                raise UndefinedUnitProduct(f"{exc} in ({args.left} {args.op} {args.right})") from None
            text = out.format(_aug_str)
        else:
            x = evaluate_dend_expr(parse_dend_expr(args.left, m), m)
            y = evaluate_dend_expr(parse_dend_expr(args.right, m), m)
            out = dend_mul(op, x, y)
            text = out.format(str)
        _emit(args, text, {"arity": m, "op": dend_op_symbol(op), "result": text, "terms": _lin_json(out, _aug_str)})
        return 0
    x = evaluate_dend_expr(parse_dend_expr(args.expr, m), m)
    if args.action == "involution":
        out = dend_involution(x)
        text = out.format(str)
        _emit(args, text, {"arity": m, "result": text, "terms": _lin_json(out)})
        return 0
    # decompose
    if len(x) != 1 or x.items()[0][1] != 1:
        raise CliError("decompose expects a single tree")
    (t,) = x.keys()
    method = args.method or ("formula" if m == 3 else "solve")
    if method == "formula":
        if m != 3:
            raise CliError("--method formula needs --arity 3")
        expr = decompose_ternary(t)
    else:
        expr = decompose_by_solve(t) if t.degree > 1 else parse_dend_expr("c", m)
    text = format_dend_expr(expr)
    if evaluate_dend_expr(expr, m) != x:
        raise CliError(f"internal error: decomposition of {t} does not evaluate back")
    _emit(args, text, {"arity": m, "tree": t.key, "method": method, "expression": text})
    return 0


def cmd_hopf(args) -> int:
    m = args.arity
    x = _aug_evaluate(parse_dend_expr(args.expr, m), m)
    u = coproduct(x, args.method)
    text = format_tensor(u)
    terms = [[_aug_str(a), _aug_str(b), _num(c)] for (a, b), c in u.items()]
    _emit(args, text, {"arity": m, "method": args.method or ("formula" if m == 3 else "solve"), "result": text, "terms": terms})
    return 0


# ---------------------------------------------------------------------------
# tetra / gonal
# ---------------------------------------------------------------------------


def _dims_table(args, name: str, param: int, dim) -> int:
    rows = [(n, dim(param, n)) for n in range(1, args.max_degree + 1)]
    text = "\n".join(f"{n:>3} {d}" for n, d in rows)
    _emit(args, text, {name: param, "dims": [d for _, d in rows]})
    return 0


def cmd_tetra(args) -> int:
    m = args.arity
    if m < 3:
        raise CliError("need --arity >= 3")
    if args.action == "dims":
        return _dims_table(args, "arity", m, tetra_dim)
    if args.action == "mul":
        op = _parse_perp_op(args.op, m, f"arity {m}")
        x = evaluate_tetra_expr(parse_tetra_expr(args.left, m), m)
        y = evaluate_tetra_expr(parse_tetra_expr(args.right, m), m)
        out = tetra_lin_mul(op, x, y)
        text = out.format(str)
        _emit(args, text, {"arity": m, "op": args.op, "result": text, "terms": _lin_json(out)})
        return 0
    # poly
    if args.from_poly:
        mono = from_polynomial(parse_polynomial(args.expr, m))
        text = str(mono)
        _emit(args, text, {"arity": m, "polynomial": args.expr, "monomial": text})
        return 0
    x = evaluate_tetra_expr(parse_tetra_expr(args.expr, m), m)
    out = x.map_keys(to_polynomial)
    text = out.format(str)
    _emit(args, text, {"arity": m, "result": text, "terms": _lin_json(out)})
    return 0


def cmd_gonal(args) -> int:
    k = args.k
    if k < 3:
        raise CliError("need --k >= 3")
    if args.action == "dims":
        return _dims_table(args, "k", k, gonal_dim)
    op = _parse_perp_op(args.op, k, f"k = {k}")
    x = evaluate_gonal_expr(parse_gonal_expr(args.left, k), k)
    y = evaluate_gonal_expr(parse_gonal_expr(args.right, k), k)
    out = gonal_lin_mul(op, x, y)
    text = out.format(str)
    _emit(args, text, {"k": k, "op": args.op, "result": text, "terms": _lin_json(out)})
    return 0


# ---------------------------------------------------------------------------
# axioms
# ---------------------------------------------------------------------------


def _family_setup(family: str, param: int):
    if family == "mdend":
        return (lambda d: enumerate_trees(param, d)), tree_mul, check_dend_axioms
    if family == "mtetra":
        return (lambda d: tetra_monomials(param, d)), tetra_mul, check_tetra_axioms
    if family == "kgonal":
        return (lambda d: gonal_monomials(param, d)), gonal_mul, check_gonal_axioms
    raise CliError("kP has no free-algebra model here; check it through 'dual check' instead")


def cmd_axioms(args) -> int:
    family = normalize_family(args.family)
    param = args.param
    min_param = 2 if family == "mdend" else 3
    if param < min_param:
        raise CliError(f"{args.family} needs --param >= {min_param}")
    basis, mul, exhaustive = _family_setup(family, param)
    if args.sample is None:
        report = exhaustive(param, args.max_degree, stop_at_first=False)
        text = report.summary()
        data = {
            "family": family,
            "param": param,
            "max_degree": args.max_degree,
            "axioms": report.axiom_count,
            "expected_axioms": expected_axiom_count(family, param),
            "triples": report.triples_checked,
            "passed": report.passed,
            "failures": len(report.failures),
        }
        _emit(args, text, data)
        return 0 if report.passed else 1
    seed = args.seed if args.seed is not None else 0
    rng = random.Random(seed)
    axioms = axioms_for(family, param)
    pools = {d: list(basis(d)) for d in range(1, args.max_degree + 1)}
    degree_triples = [
        (a, b, c)
        for a in range(1, args.max_degree + 1)
        for b in range(1, args.max_degree + 1)
        for c in range(1, args.max_degree + 1)
        if a + b + c <= args.max_degree
    ]
    if not degree_triples:
        raise CliError("--max-degree must be >= 3 to form triples")
    failures = 0
    for _ in range(args.sample):
        da, db, dc = rng.choice(degree_triples)
        triple = (rng.choice(pools[da]), rng.choice(pools[db]), rng.choice(pools[dc]))
        failures += sum(1 for ax in axioms if evaluate_relation(ax, mul, *triple))
    verdict = "pass" if not failures else "FAIL"
    text = f"{family}({param}) N={args.max_degree}: {verdict}, {len(axioms)} axioms x {args.sample} sampled triples (seed {seed})"
    _emit(
        args,
        text,
        {"family": family, "param": param, "max_degree": args.max_degree, "axioms": len(axioms),
         "sampled": args.sample, "seed": seed, "passed": not failures, "failures": failures},
    )
    return 0 if not failures else 1


# ---------------------------------------------------------------------------
# homology
# ---------------------------------------------------------------------------


def _complex_models(name: str):
    cx = get_complex(name)
    if name == "dend3":
        return cx, free_dend_words(3), (lambda x: dend_letter(x, 3)), free_dend_algebra(3), corolla(3)
    m = int(name[5:] or 3)
    return cx, free_tetra_words(m), (lambda x: tetra_letter(x, m)), free_tetra_algebra(m), chi(m)


def cmd_homology(args) -> int:
    cx, words, letter, free, generator = _complex_models(args.complex)
    if args.action == "d2":
        rows, ok = [], True
        for n in range(2, args.max_n + 1):
            sym_count, sym_fail = check_d_squared(cx, words, n, [tuple(letter(x) for x in letters(n))])
            con_count, con_fail = check_d_squared(cx, free, n, [(generator,) * n])
            simp_count, simp_fail = check_simplicial(cx, words, n, [tuple(letter(x) for x in letters(n))])
            good = not (sym_fail or con_fail or simp_fail)
            ok &= good
            rows.append({"n": n, "cells": len(cx.cells(n)), "symbolic_failures": len(sym_fail),
                         "concrete_failures": len(con_fail), "simplicial_checks": simp_count,
                         "simplicial_failures": len(simp_fail), "passed": good})
        lines = [f"{'n':>3} {'cells':>7} {'d2 sym':>7} {'d2 conc':>8} {'simplicial':>11}  verdict"]
        for r in rows:
            lines.append(
                f"{r['n']:>3} {r['cells']:>7} {r['symbolic_failures']:>7} {r['concrete_failures']:>8} "
                f"{r['simplicial_failures']:>11}  {'pass' if r['passed'] else 'FAIL'}"
            )
        _emit(args, "\n".join(lines), {"complex": cx.name, "max_n": args.max_n, "passed": ok, "rows": rows})
        return 0 if ok else 1
    weight = args.max_weight if args.max_weight is not None else max(args.max_n, 4)
    report = homology_ranks(cx, free, args.max_n, weight)
    lines = [f"# {cx.name} over the {free.name} algebra, argument weights 1..{weight}",
             f"{'n':>3} {'dim C_n':>8} {'rank d_n':>9} {'rank d_n+1':>11} {'dim H_n':>8}"]
    rows = []
    for r in report.rows:
        lines.append(f"{r.n:>3} {r.dim_chains:>8} {r.rank_out:>9} {r.rank_in:>11} {r.dim_homology:>8}")
        rows.append({"n": r.n, "dim_C": r.dim_chains, "rank_d_n": r.rank_out, "rank_d_n+1": r.rank_in,
                     "dim_H": r.dim_homology, "transpose_consistent": r.consistent})
    if not all(r.consistent for r in report.rows):
        lines.append("WARNING: ranks of transposed matrices disagree")
    _emit(args, "\n".join(lines), {"complex": cx.name, "max_weight": weight, "rows": rows})
    return 0 if all(r.consistent for r in report.rows) else 1


# ---------------------------------------------------------------------------
# dual
# ---------------------------------------------------------------------------


def cmd_dual(args) -> int:
    if ":" not in args.pair:
        raise CliError("--pair expects A:B, e.g. mDend:mTetra")
    a, b = args.pair.split(":", 1)
    report = duality_report(a, b, args.param)
    text = report.summary()
    data = {"pair": [report.a.label, report.b.label], "param": args.param, "dim_R": report.a.dim,
            "dim_R_perp": report.perp.dim, "dim_R_other": report.b.dim, "ambient": report.a.ambient_dim,
            "dual": report.holds}
    if args.dump_basis:
        dumps = {}
        for title, space in (("R", report.a), ("R_perp", report.perp), ("R_other", report.b)):
            rows = reduced_basis(space)
            dumps[title] = [[_num(c) for c in row] for row in rows]
            text += f"\n# {title} ({len(rows)} rows; columns: {' '.join(map(str, space.monomials()))})"
            text += "".join("\n" + " ".join(_num(c) for c in row) for row in rows)
        data["basis"] = dumps
    _emit(args, text, data)
    return 0 if report.holds else 1


# ---------------------------------------------------------------------------
# series
# ---------------------------------------------------------------------------


def _series_param(args) -> int:
    if args.param is None:
        raise CliError("give the family parameter with --param (or --m / --k)")
    return args.param


def _coeff_line(s, use_abs: bool) -> str:
    return " ".join(map(_num, s.abs_terms() if use_abs else s.signed_terms()))


def _parse_family_spec(text: str) -> tuple[str, int]:
    if ":" not in text:
        raise CliError(f"expected FAMILY:PARAM, got {text!r}")
    fam, p = text.split(":", 1)
    try:
        return fam, int(p)
    except ValueError:
        raise CliError(f"parameter must be an integer in {text!r}") from None


def cmd_series(args) -> int:
    if args.action == "pascal":
        tri, dual = pascal_tables(args.rows)
        text = "# binomial triangle\n" + format_triangle(tri, args.csv)
        text += "\n# tree-count triangle\n" + format_triangle(dual, args.csv)
        _emit(args, text, {"rows": args.rows, "pascal": tri, "dual": dual})
        return 0
    if args.action == "compose":
        (fa, pa), (fb, pb) = _parse_family_spec(args.outer), _parse_family_spec(args.inner)
        s = compose(series_of(fa, pa, args.terms), series_of(fb, pb, args.terms))
        line = _coeff_line(s, args.abs)
        _emit(args, f"{line}\n# {s}" if not args.abs else line,
              {"outer": args.outer, "inner": args.inner, "terms": args.terms, "coefficients": line.split()})
        return 0
    family, param = args.family, _series_param(args)
    s = series_of(family, param, args.terms)
    if args.action == "inverse":
        s = comp_inverse(s)
    line = _coeff_line(s, args.abs)
    if args.csv:
        line = line.replace(" ", ",")
    _emit(args, line, {"family": family, "param": param, "action": args.action, "terms": args.terms,
                       "abs": args.abs, "coefficients": line.replace(",", " ").split()})
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="structured output")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for sampled checks")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="polyoperad", description="Polygonal and polyhedral operads toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--json", action="store_true", help="structured output")
    parser.add_argument("--seed", type=int, default=None, help="seed for sampled checks")
    sub = parser.add_subparsers(dest="group", required=True)

    def action_parsers(name, help_text, actions):
        grp = sub.add_parser(name, help=help_text)
        acts = grp.add_subparsers(dest="action", required=True)
        return {a: acts.add_parser(a, parents=[common], help=h) for a, h in actions}

    t = action_parsers("trees", "enumerate or count m-ary trees", [("enum", "list trees"), ("count", "count trees")])
    for p in t.values():
        p.add_argument("--arity", type=int, required=True)
        p.add_argument("--degree", type=int, required=True)
        p.set_defaults(func=cmd_trees)

    d = action_parsers("dend", "free m-dendriform algebra", [
        ("mul", "multiply two expressions"),
        ("involution", "mirror image"),
        ("decompose", "write a tree in the generator"),
    ])
    for name, p in d.items():
        p.add_argument("--arity", type=int, required=True)
        p.set_defaults(func=cmd_dend)
    d["mul"].add_argument("--op", required=True, help="<, >, *, or .i")
    d["mul"].add_argument("--augmented", action="store_true", help="allow the unit '.'")
    d["mul"].add_argument("left")
    d["mul"].add_argument("right")
    d["involution"].add_argument("expr")
    d["decompose"].add_argument("expr")
    d["decompose"].add_argument("--method", choices=METHODS)

    h = action_parsers("hopf", "coproduct on the augmented algebra", [("coproduct", "Delta of an element")])
    h["coproduct"].add_argument("--arity", type=int, required=True)
    h["coproduct"].add_argument("--method", choices=METHODS)
    h["coproduct"].add_argument("expr")
    h["coproduct"].set_defaults(func=cmd_hopf)

    te = action_parsers("tetra", "free m-tetrahedral algebra", [
        ("mul", "multiply two expressions"),
        ("dims", "dimensions by degree"),
        ("poly", "monomial <-> homogeneous polynomial"),
    ])
    for p in te.values():
        p.add_argument("--arity", type=int, required=True)
        p.set_defaults(func=cmd_tetra)
    te["mul"].add_argument("--op", required=True, help="-|, |-, or _i")
    te["mul"].add_argument("left")
    te["mul"].add_argument("right")
    te["dims"].add_argument("--max-degree", type=int, default=8)
    te["poly"].add_argument("--from-poly", action="store_true", help="read a polynomial such as 'X0^2 X2'")
    te["poly"].add_argument("expr")

    g = action_parsers("gonal", "free k-gonal algebra", [("mul", "multiply two expressions"), ("dims", "dimensions")])
    for p in g.values():
        p.add_argument("--k", type=int, required=True)
        p.set_defaults(func=cmd_gonal)
    g["mul"].add_argument("--op", required=True, help="-|, |-, or _i")
    g["mul"].add_argument("left")
    g["mul"].add_argument("right")
    g["dims"].add_argument("--max-degree", type=int, default=8)

    a = action_parsers("axioms", "check relations in a free algebra", [("check", "exhaustive or sampled check")])
    a["check"].add_argument("--family", required=True, help="mDend, mTetra or kGonal")
    a["check"].add_argument("--param", type=int, required=True)
    a["check"].add_argument("--max-degree", type=int, required=True)
    a["check"].add_argument("--sample", type=int, help="check this many random triples instead (uses --seed)")
    a["check"].set_defaults(func=cmd_axioms)

    hm = action_parsers("homology", "the chain complexes", [("d2", "d.d = 0 and simplicial identities"),
                                                            ("ranks", "homology dimensions")])
    for p in hm.values():
        p.add_argument("--complex", required=True, help="dend3 or tetraM (tetra3, tetra4, ...)")
        p.add_argument("--max-n", type=int, required=True)
        p.set_defaults(func=cmd_homology)
    hm["ranks"].add_argument("--max-weight", type=int, help="bound on total argument weight (default max(n, 4))")

    du = action_parsers("dual", "quadratic duality", [("check", "compare R^perp with another family")])
    du["check"].add_argument("--pair", required=True, help="A:B, e.g. mDend:mTetra")
    du["check"].add_argument("--param", type=int, required=True)
    du["check"].add_argument("--dump-basis", action="store_true")
    du["check"].set_defaults(func=cmd_dual)

    se = action_parsers("series", "generating series", [
        ("table", "coefficients of a family's series"),
        ("inverse", "compositional inverse"),
        ("compose", "outer(inner(x))"),
        ("pascal", "the two number triangles"),
    ])
    for name in ("table", "inverse"):
        p = se[name]
        p.add_argument("--family", required=True, help="mDend, mTetra, kP or kGonal")
        p.add_argument("--param", "--m", "--k", dest="param", type=int)
        p.add_argument("--terms", type=int, default=8)
        p.add_argument("--abs", action="store_true", help="unsigned dimensions")
        p.add_argument("--csv", action="store_true")
    se["compose"].add_argument("outer", help="FAMILY:PARAM")
    se["compose"].add_argument("inner", help="FAMILY:PARAM")
    se["compose"].add_argument("--terms", type=int, default=8)
    se["compose"].add_argument("--abs", action="store_true")
    se["pascal"].add_argument("--rows", type=int, default=6)
    se["pascal"].add_argument("--csv", action="store_true")
    for p in se.values():
        p.set_defaults(func=cmd_series)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UndefinedUnitProduct as exc:
        print(f"error: undefined product: {exc}", file=sys.stderr)
    except (CliError, DendError, TetraError, ChainError, DualityError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    raise SystemExit(main())
