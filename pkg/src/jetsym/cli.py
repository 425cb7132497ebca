"""Command-line interface."""
from __future__ import annotations

import argparse
import sys

from .corpus import load_corpus, run_corpus, split_invariants
from .determining import AnsatzSpec, classical_symmetries
from .equation import SourceEquation, to_solved_form
from .errors import JetsymError
from .models import MODELS, model
from .nonclassical import (describe_family, governing_condition_eta0, governing_condition_eta1,
                           nonclassical_solve_eta0, nonclassical_solve_eta1)
from .expr import func
from .parser import DEFAULT_CONTEXT, parse_expr
from .printer import print_expr
from .prolong import apply_prolonged, prolong_coefficient
from .reduction import (invariants_for_generator, invariants_from_text, reduce_with_invariants,
                        reduced_context, reduced_system_from_text)
from .report import make_report, parse_generator_literal, to_json
from .verify import (classification_report, flow_transform, verify_reduced_solution,
                     verify_solution)

EXIT_OK, EXIT_DISCREPANCY, EXIT_USAGE = 0, 1, 2
MAX_DEGREE = 3


class UsageError(Exception):
    pass


def _names(text):
    return [s.strip() for s in (text or "").split(",") if s.strip()]


def _equation(args):
    ctx = DEFAULT_CONTEXT.with_symbols(_names(args.params), _names(args.functions))
    if args.eq is None:
        raise UsageError("--eq is required")
    if args.eq in MODELS:
        eq = model(args.eq)
        return SourceEquation(eq.lhs, eq.rhs, ctx, eq.name)
    return SourceEquation.parse(args.eq, ctx)


def _degree(args):
    if not 0 <= args.degree <= MAX_DEGREE:
        raise UsageError(f"--degree must be between 0 and {MAX_DEGREE}")
    return args.degree


def _generator(args, ctx):
    if not args.gen:
        raise UsageError("--gen is required")
    return parse_generator_literal(args.gen, ctx)


def cmd_symmetries(args):
    eq = _equation(args)
    basis = classical_symmetries(to_solved_form(eq), _degree(args))
    lines = [f"dimension {len(basis)}"] + [str(g) for g in basis]
    report = make_report("symmetries", {"eq": str(eq), "degree": args.degree},
                         [g.as_dict() for g in basis])
    return report, lines, EXIT_OK


def cmd_nonclassical(args):
    eq = _equation(args)
    ef = to_solved_form(eq)
    ctx = eq.context
    if args.phi is not None or args.xi is not None:
        phi = parse_expr(args.phi or "0", ctx)
        if args.eta == 1:
            res = governing_condition_eta1(ef, parse_expr(args.xi or "0", ctx), phi)
        else:
            res = governing_condition_eta0(ef, phi)
        report = make_report("nonclassical", {"eq": str(eq), "eta": args.eta, "xi": args.xi,
                                              "phi": args.phi}, [], [res],
                             "ok" if res.is_zero() else "nonzero")
        return report, [f"residual {print_expr(res)}"], EXIT_OK
    degree = _degree(args)
    if args.eta == 1:
        result = nonclassical_solve_eta1(ef, AnsatzSpec(degree, ctx.independent, ctx.dependent))
    elif args.full:
        phi = func("phi", [parse_expr(v, ctx) for v in ctx.independent + (ctx.dependent,)])
        res = governing_condition_eta0(ef, phi)
        report = make_report("nonclassical", {"eq": str(eq), "eta": 0, "full": True}, [res])
        return report, [f"{print_expr(res)} = 0"], EXIT_OK
    else:
        result = nonclassical_solve_eta0(ef, degree)
    fams = [describe_family(f) for f in result.families]
    chars = [print_expr(c) for c in result.characteristics()]
    results = {"branch": f"eta={args.eta}", "families": fams, "characteristics": chars,
               "constraints": result.constraint_set(), "unresolved": len(result.unresolved)}
    lines = [f"branch eta={args.eta}"]
    for f in fams:
        lines.append(f"xi = {f['xi']}, phi = {f['phi']}  free: {', '.join(f['free']) or '-'}")
    lines.append("characteristics: " + ", ".join(chars))
    if result.constraint_set():
        lines.append("constraints: " + ", ".join(result.constraint_set()))
    if result.unresolved:
        lines.append(f"{len(result.unresolved)} branch(es) left unresolved")
    report = make_report("nonclassical", {"eq": str(eq), "eta": args.eta, "degree": degree}, [results])
    return report, lines, EXIT_OK


def cmd_reduce(args):
    eq = _equation(args)
    if args.invariants:
        r, u = split_invariants(args.invariants)
        ctx = eq.context
        inv = invariants_from_text(r, u, reduced_context(params=ctx.params, functions=ctx.functions))
    else:
        inv = invariants_for_generator(_generator(args, eq.context))
    sys_ = reduce_with_invariants(eq, inv)
    lines = [f"invariants: {inv}", f"{print_expr(sys_.expression)} = 0", f"status {sys_.status}"]
    if sys_.parametric:
        for m, c in sys_.as_dict()["split"].items():
            lines.append(f"  [{m}] {c} = 0")
    if sys_.certificate:
        lines += [f"  {s}" for s in sys_.certificate.steps]
    results = dict(sys_.as_dict(), r=print_expr(inv.r), u=print_expr(inv.u_expression))
    report = make_report("reduce", {"eq": str(eq), "gen": args.gen, "invariants": args.invariants},
                         [results], [], sys_.status)
    return report, lines, EXIT_OK


def cmd_verify(args):
    if args.ode:
        sys_ = reduced_system_from_text([args.ode], _names(args.params), _names(args.functions))
        if not args.w:
            raise UsageError("--w is required with --ode")
        ctx = reduced_context(params=_names(args.params), functions=_names(args.functions))
        res = verify_reduced_solution(sys_, parse_expr(args.w, ctx))
        inputs = {"ode": args.ode, "w": args.w}
    else:
        eq = _equation(args)
        if args.u is None:
            raise UsageError("--u is required")
        res = verify_solution(eq, parse_expr(args.u, eq.context))
        inputs = {"eq": str(eq), "u": args.u}
    status = "ok" if res.is_zero else "discrepancy"
    lines = [f"residual {print_expr(res.expr)}"]
    if res.witness:
        lines.append("witness " + ", ".join(f"{a}={v}" for a, v in res.witness.items()))
    report = make_report("verify", inputs, [], [res.as_dict()], status)
    return report, lines, EXIT_OK if res.is_zero else EXIT_DISCREPANCY


def cmd_classify(args):
    eq = _equation(args)
    g = _generator(args, eq.context)
    rep = classification_report(to_solved_form(eq), g)
    report = make_report("classify", {"eq": str(eq), "gen": args.gen}, [rep])
    return report, [rep["class"]], EXIT_OK


def cmd_transform(args):
    eq = _equation(args)
    ctx = eq.context.with_symbols([args.epsilon])
    g = _generator(args, ctx)
    if args.u is None:
        raise UsageError("--u is required")
    out = flow_transform(parse_expr(args.u, ctx), g, args.epsilon)
    lines = [f"u = {print_expr(out)}"]
    residuals = []
    code = EXIT_OK
    if args.check:
        res = verify_solution(SourceEquation(eq.lhs, eq.rhs, ctx, eq.name), out)
        residuals.append(res.as_dict())
        lines.append(f"residual {print_expr(res.expr)}")
        if not res.is_zero:
            code = EXIT_DISCREPANCY
    report = make_report("transform", {"eq": str(eq), "u": args.u, "gen": args.gen}, [out], residuals)
    return report, lines, code


def cmd_prolong(args):
    eq = _equation(args)
    g = _generator(args, eq.context)
    if args.jet:
        e = prolong_coefficient(g, args.jet)
        lines = [f"phi^{args.jet} = {print_expr(e)}"]
    else:
        e = apply_prolonged(g, eq.delta, args.max_order)
        lines = [f"pr X(Delta) = {print_expr(e)}"]
    report = make_report("prolong", {"eq": str(eq), "gen": args.gen, "jet": args.jet}, [e])
    return report, lines, EXIT_OK


def cmd_corpus(args):
    rows = run_corpus(load_corpus())
    ok = all(r["matches_expected"] for r in rows)
    width = max(len(r["id"]) for r in rows)
    lines = [f"{r['id']:<{width}}  {r['outcome']:<11}  expected {r['expected_status']:<11}"
             f"  {'ok' if r['matches_expected'] else 'MISMATCH'}  {r['detail']}" for r in rows]
    report = make_report("corpus", {}, rows, [], "ok" if ok else "discrepancy")
    return report, lines, EXIT_OK if ok else EXIT_DISCREPANCY


COMMANDS = {
    "symmetries": cmd_symmetries,
    "nonclassical": cmd_nonclassical,
    "reduce": cmd_reduce,
    "verify": cmd_verify,
    "classify": cmd_classify,
    "transform": cmd_transform,
    "prolong": cmd_prolong,
}


def _add_common(p, suppress: bool):
    def d(value):
        return argparse.SUPPRESS if suppress else value
    p.add_argument("--eq", default=d(None),
                   help="model name (" + ", ".join(MODELS) + ") or equation text")
    p.add_argument("--json", action="store_true", default=d(False), help="emit a JSON report")
    p.add_argument("--degree", type=int, default=d(1), help="ansatz degree (0-3)")
    p.add_argument("--max-order", type=int, default=d(None))
    p.add_argument("--params", default=d(None), help="comma-separated parameter names")
    p.add_argument("--functions", default=d(None), help="comma-separated function names")
    p.add_argument("--gen", default=d(None), help='generator "xi, eta, phi"')
    p.add_argument("--invariants", default=d(None), help='"r=<expr>;u=<expr>"')


def build_parser() -> argparse.ArgumentParser:
    # options may appear before or after the command
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, suppress=True)

    p = argparse.ArgumentParser(prog="jetsym",
                                description="Symmetry analysis of scalar evolution-type PDEs.")
    _add_common(p, suppress=False)
    p.add_argument("--corpus", action="store_true", help="run the bundled result corpus")
    sub = p.add_subparsers(dest="command")
    sub.add_parser("symmetries", parents=[common], help="classical point symmetries")
    nc = sub.add_parser("nonclassical", parents=[common], help="non-classical symmetries")
    nc.add_argument("--eta", type=int, choices=(0, 1), default=1)
    nc.add_argument("--xi", help="evaluate the governing residual for this xi (eta=1)")
    nc.add_argument("--phi", help="evaluate the governing residual for this phi")
    nc.add_argument("--full", action="store_true", help="eta=0 with phi(x, t, u), unsplit")
    sub.add_parser("reduce", parents=[common], help="similarity reduction")
    v = sub.add_parser("verify", parents=[common], help="residual of a candidate solution")
    v.add_argument("--u", help="candidate u(x, t)")
    v.add_argument("--ode", help="reduced equation in w(r) instead of --eq")
    v.add_argument("--w", help="candidate w(r) for --ode")
    sub.add_parser("classify", parents=[common], help="strong / non-classical / weak")
    tr = sub.add_parser("transform", parents=[common], help="apply the flow of a generator")
    tr.add_argument("--u", help="solution u(x, t)")
    tr.add_argument("--epsilon", default="epsilon", help="group parameter name")
    tr.add_argument("--check", action="store_true", help="verify the transformed solution")
    pr = sub.add_parser("prolong", parents=[common], help="prolongation coefficients")
    pr.add_argument("--jet", help="multi-index such as xxt")
    return p


def run(argv=None, out=sys.stdout, err=sys.stderr) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.corpus:
        handler = cmd_corpus
    elif args.command:
        handler = COMMANDS[args.command]
    else:
        parser.print_usage(err)
        return EXIT_USAGE
    try:
        report, lines, code = handler(args)
    except (UsageError, JetsymError, ValueError) as e:
        print(f"error: {type(e).__name__}: {e}", file=err)
        if args.json:
            print(to_json(make_report(args.command or "corpus", vars(args), [], [], "error")), file=out)
        return EXIT_USAGE
    if args.json:
        print(to_json(report), file=out)
    else:
        print("\n".join(lines), file=out)
    return code


def main(argv=None) -> int:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
