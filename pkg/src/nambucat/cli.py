"""Command-line front end.

Exit codes: 0 all checks passed, 1 mathematical failure (failed identity,
failed construction hypothesis, false flag claim), 2 usage or parse error.
All output is deterministic; --parallel is accepted for compatibility but
evaluation is sequential (ordering is identical either way).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import constructions, corpus, faulkner, fileio, spaces
from .algebra import (BilinearForm, HomAssocNAry, HomLeibnizAlgebra,
                      HomNambuAlgebra, QuadraticStructure)
from .checks import (CheckReport, TupleBudgetExceeded,
                     check_hom_leibniz, check_hom_nambu_identity,
                     check_multiplicativity, check_quadratic,
                     check_skew_symmetry, check_total_hom_associativity)
from .constructions import ConstructionError
from .faulkner import QuadraticLieAlgebra
from .fileio import FileFormatError, FlagVerificationError
from .linalg import Matrix, Vector, frac_str, rank

SELECTORS = ("nambu", "skew", "multiplicative", "quadratic", "leibniz", "assoc")


def _applicable(obj, defaults: bool = False) -> List[str]:
    """Selectors valid for this file kind; with defaults=True, only those run
    when none are named (skew/multiplicative only when the file claims them)."""
    if isinstance(obj, QuadraticLieAlgebra):
        return ["nambu", "skew", "quadratic"]
    if isinstance(obj, (QuadraticStructure, HomNambuAlgebra)):
        a = obj.algebra if isinstance(obj, QuadraticStructure) else obj
        sel = ["nambu", "skew", "multiplicative"]
        if defaults:
            sel = ["nambu"] + (["skew"] if a.skew else []) \
                + (["multiplicative"] if a.multiplicative else [])
        if isinstance(obj, QuadraticStructure):
            sel.append("quadratic")
        return sel
    if isinstance(obj, HomLeibnizAlgebra):
        return ["leibniz"]
    if isinstance(obj, HomAssocNAry):
        return ["assoc"]
    raise FileFormatError(f"cannot verify a {type(obj).__name__}")


def _run_check(obj, selector: str, max_tuples: Optional[int]) -> CheckReport:
    if isinstance(obj, QuadraticLieAlgebra):
        algebra, quad = obj.algebra, QuadraticStructure(obj.algebra, obj.form)
    elif isinstance(obj, QuadraticStructure):
        algebra, quad = obj.algebra, obj
    else:
        algebra, quad = obj, None
    if selector == "nambu":
        return check_hom_nambu_identity(algebra, max_tuples=max_tuples)
    if selector == "skew":
        return check_skew_symmetry(algebra, max_tuples=max_tuples)
    if selector == "multiplicative":
        return check_multiplicativity(algebra, max_tuples=max_tuples)
    if selector == "quadratic":
        if quad is None:
            raise FileFormatError("file carries no form; 'quadratic' not applicable")
        return check_quadratic(quad, max_tuples=max_tuples)
    if selector == "leibniz":
        return check_hom_leibniz(algebra, max_tuples=max_tuples)
    if selector == "assoc":
        return check_total_hom_associativity(algebra, max_tuples=max_tuples)
    raise FileFormatError(f"unknown selector {selector!r}")


def _report_ok(r: CheckReport) -> bool:
    # at the command line a quadratic structure must be nondegenerate, so a
    # degeneracy warning counts against the verdict even though the library
    # check only warns
    if r.identity == "quadratic" and r.warnings:
        return False
    return r.passed


def _emit_reports(path: str, reports: List[CheckReport], fmt: str) -> None:
    if fmt == "json":
        doc = {"file": path,
               "reports": [r.to_json() for r in reports],
               "passed": all(_report_ok(r) for r in reports)}
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        for r in reports:
            verdict = "PASS" if _report_ok(r) else "FAIL"
            line = f"{path}: {r.identity}: {verdict} ({r.tuples_checked} tuples)"
            if r.warnings:
                line += " [" + "; ".join(r.warnings) + "]"
            if r.detail:
                line += f" -- {r.detail}"
            if r.counterexample is not None:
                line += f" -- counterexample at {tuple(i + 1 for i in r.counterexample.indices)}"
            sys.stdout.write(line + "\n")


def cmd_verify(args) -> int:
    obj = fileio.load(args.file)
    selectors = args.selectors or _applicable(obj, defaults=True)
    applicable = _applicable(obj)
    reports = []
    for s in selectors:
        if s not in SELECTORS:
            raise UsageError(f"unknown selector {s!r} (choose from {', '.join(SELECTORS)})")
        if s not in applicable:
            raise UsageError(f"selector {s!r} does not apply to this file kind")
        reports.append(_run_check(obj, s, args.max_tuples))
    _emit_reports(args.file, reports, args.format)
    return 0 if all(_report_ok(r) for r in reports) else 1


def _as_quadratic(obj, what: str) -> QuadraticStructure:
    if isinstance(obj, QuadraticStructure):
        return obj
    if isinstance(obj, HomNambuAlgebra):
        return QuadraticStructure(obj, BilinearForm.standard(obj.dim))
    raise UsageError(f"{what}: expected an n-ary algebra file")


def _as_nambu(obj, what: str) -> HomNambuAlgebra:
    if isinstance(obj, QuadraticStructure):
        return obj.algebra
    if isinstance(obj, HomNambuAlgebra):
        return obj
    raise UsageError(f"{what}: expected an n-ary algebra file")


def _form_arg(spec: str, dim: int) -> BilinearForm:
    if spec == "identity":
        return BilinearForm.standard(dim)
    return BilinearForm(dim, fileio.matrix_from_file(spec, dim))


def cmd_construct(args) -> int:
    sub = args.construction
    inputs = args.inputs
    if sub == "tensor":
        if len(inputs) != 2:
            raise UsageError("tensor needs two input files")
    elif len(inputs) != 1:
        raise UsageError(f"{sub} needs exactly one input file")
    objs = [fileio.load(p) for p in inputs]
    names = [os.path.basename(p) for p in inputs]
    provenance = f"constructed by '{sub}' from {', '.join(names)}"

    if sub == "twist":
        if not args.rho:
            raise UsageError("twist needs --rho")
        a = _as_nambu(objs[0], sub)
        out = constructions.twist_by_morphism(a, fileio.matrix_from_file(args.rho, a.dim))
    elif sub == "self-twist":
        out = constructions.self_twist(_as_nambu(objs[0], sub))
    elif sub == "tensor":
        h, a = objs
        if not isinstance(h, HomAssocNAry):
            raise UsageError("first tensor input must be a hom_assoc file")
        out = constructions.tensor_product(h, _as_nambu(a, sub))
    elif sub == "leibniz":
        out = constructions.induced_hom_leibniz(_as_nambu(objs[0], sub))
    elif sub == "tstar":
        a = _as_nambu(objs[0], sub)
        form = _form_arg(args.form or "identity", a.dim)
        omega = fileio.matrix_from_file(args.omega, a.dim) if args.omega else None
        out = constructions.tstar_extension(a, form, omega=omega).structure
    elif sub == "trace-ternary":
        l = objs[0]
        if isinstance(l, (QuadraticStructure, HomNambuAlgebra)):
            a = _as_nambu(l, sub)
            if a.arity != 2:
                raise UsageError("trace-ternary input must be binary")
            l = HomLeibnizAlgebra(a.dim, a.bracket, a.twists[0])
        if not isinstance(l, HomLeibnizAlgebra):
            raise UsageError("trace-ternary input must be a binary algebra file")
        if not (args.gamma and args.tau):
            raise UsageError("trace-ternary needs --gamma and --tau")
        gamma = fileio.matrix_from_file(args.gamma, l.dim)
        tau = fileio.vector_from_file(args.tau, l.dim)
        out = constructions.trace_induced_ternary(l, gamma, tau)
    elif sub == "raise":
        out = constructions.raise_arity(_as_quadratic(objs[0], sub), args.k)
    elif sub == "reduce":
        if not args.fixed:
            raise UsageError("reduce needs at least one --fixed vector file")
        q = _as_quadratic(objs[0], sub)
        fixed = [fileio.vector_from_file(p, q.algebra.dim) for p in args.fixed]
        out = constructions.reduce_arity(q, fixed)
    elif sub == "centroid-bracket":
        if not args.theta:
            raise UsageError("centroid-bracket needs --theta")
        a = _as_nambu(objs[0], sub)
        out = constructions.centroid_twisted_bracket(
            a, fileio.matrix_from_file(args.theta, a.dim), args.p)
    elif sub == "pullback-form":
        q = objs[0]
        if not isinstance(q, QuadraticStructure):
            raise UsageError("pullback-form input must carry a form")
        if not args.map:
            raise UsageError("pullback-form needs --map")
        m = fileio.matrix_from_file(args.map, q.algebra.dim)
        out = QuadraticStructure(q.algebra, constructions.pullback_form(q.form, m),
                                 beta=q.beta)
    elif sub == "faulkner":
        g = objs[0]
        if not isinstance(g, QuadraticLieAlgebra):
            raise UsageError("faulkner input must be a quadratic_lie file")
        alpha = fileio.matrix_from_file(args.alpha, g.dim) if args.alpha else None
        if args.what == "leibniz":
            if alpha is None:
                out = faulkner.tensor_leibniz(g)
            else:
                out = faulkner.omega_twist_leibniz(g, alpha)[0]
        else:
            out = faulkner.faulkner_ternary(g, alpha=alpha)
    else:
        raise UsageError(f"unknown construction {sub!r}")

    fileio.save(out, args.output, name=os.path.basename(args.output),
                provenance=provenance)
    sys.stdout.write(f"wrote {args.output}\n")
    return 0


def cmd_solve(args) -> int:
    obj = fileio.load(args.file)
    a = _as_nambu(obj.algebra if isinstance(obj, QuadraticLieAlgebra) else obj,
                  "solve")
    if args.space == "centroid":
        basis = spaces.compute_centroid(a, args.k)
    elif args.space == "derivations":
        basis = spaces.compute_derivations(a, args.k)
    elif args.space == "center":
        basis = spaces.compute_center(a)
    elif args.space == "central-derivations":
        basis = spaces.compute_central_derivations(a)
    else:
        raise UsageError(f"unknown space {args.space!r}")
    doc = fileio.subspace_to_document(basis)
    if args.format == "json":
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write(f"{args.file}: {args.space} dimension {basis.dimension}\n")
    return 0


def cmd_report(args) -> int:
    failures = 0
    rows = []
    for path in args.files:
        try:
            obj = fileio.load(path)
            a = obj.algebra if isinstance(obj, (QuadraticStructure, QuadraticLieAlgebra)) \
                else obj
            checks = [_run_check(obj, s, args.max_tuples)
                      for s in _applicable(obj, defaults=True)]
            ok = all(_report_ok(r) for r in checks)
            if not ok:
                failures += 1
            if isinstance(obj, (QuadraticStructure, QuadraticLieAlgebra)):
                form = obj.form
                quad = "nondegenerate" if form.nondegenerate else \
                    f"degenerate (rank {rank(form.gram)})"
            else:
                quad = "-"
            cent = der = "-"
            if isinstance(a, HomNambuAlgebra):
                cent = spaces.compute_centroid(a, 0).dimension
                try:
                    der = spaces.compute_derivations(a, 0).dimension
                except ValueError:
                    der = "-"     # distinct twists: no single commuting map
            kind = fileio.to_document(obj)["kind"]
            arity = 2 if isinstance(a, HomLeibnizAlgebra) else a.arity
            rows.append((path, kind, str(a.dim), str(arity),
                         "pass" if ok else "FAIL", str(cent), str(der), quad))
        except (FileFormatError, FlagVerificationError, ValueError) as e:
            failures += 1
            rows.append((path, "error", "-", "-", str(e), "-", "-", "-"))
    header = ("file", "kind", "dim", "arity", "checks", "centroid", "derivations",
              "form")
    widths = [max(len(header[i]), *(len(r[i]) for r in rows)) if rows else len(header[i])
              for i in range(len(header))]
    for row in (header,) + tuple(rows):
        sys.stdout.write("  ".join(c.ljust(widths[i]) for i, c in enumerate(row)).rstrip()
                         + "\n")
    return 1 if failures else 0


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"),
                        default=argparse.SUPPRESS, help="report output format")
    common.add_argument("--parallel", type=int, metavar="N",
                        default=argparse.SUPPRESS,
                        help="worker count (accepted; evaluation is sequential)")
    common.add_argument("--max-tuples", type=int, metavar="N",
                        default=argparse.SUPPRESS,
                        help="abort any single check needing more than N basis tuples")
    parser = argparse.ArgumentParser(
        prog="nambucat", parents=[common],
        description="Verify, construct, and analyze n-ary Hom-Nambu algebras "
                    "over exact rationals.")
    subs = parser.add_subparsers(dest="command")

    p = subs.add_parser("verify", parents=[common],
                        help="run identity checks on an algebra file")
    p.add_argument("file")
    p.add_argument("selectors", nargs="*",
                   help=f"identities to check (default: all applicable); "
                        f"choose from {', '.join(SELECTORS)}")
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("construct", parents=[common], help="build a new algebra from inputs")
    p.add_argument("construction",
                   choices=("twist", "self-twist", "tensor", "leibniz", "tstar",
                            "trace-ternary", "raise", "reduce",
                            "centroid-bracket", "pullback-form", "faulkner"))
    p.add_argument("inputs", nargs="+")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--rho", help="endomorphism matrix file (twist)")
    p.add_argument("--form", help="'identity' or a matrix file (tstar)")
    p.add_argument("--omega", help="involution matrix file (tstar)")
    p.add_argument("--gamma", help="second twist matrix file (trace-ternary)")
    p.add_argument("--tau", help="trace vector file (trace-ternary)")
    p.add_argument("--theta", help="centroid element matrix file (centroid-bracket)")
    p.add_argument("--map", help="form-symmetric matrix file (pullback-form)")
    p.add_argument("--alpha", help="involution matrix file (faulkner)")
    p.add_argument("--what", choices=("ternary", "leibniz"), default="ternary",
                   help="faulkner output type")
    p.add_argument("--fixed", action="append",
                   help="vector file of a fixed argument (reduce); repeatable")
    p.add_argument("-k", type=int, default=1, help="iteration count (raise)")
    p.add_argument("-p", type=int, default=1,
                   help="number of twisted slots (centroid-bracket)")
    p.set_defaults(func=cmd_construct)

    p = subs.add_parser("solve", parents=[common], help="compute a structure space basis")
    p.add_argument("file")
    p.add_argument("space", choices=("centroid", "derivations", "center",
                                     "central-derivations"))
    p.add_argument("k", nargs="?", type=int, default=0,
                   help="twist power level (centroid/derivations)")
    p.set_defaults(func=cmd_solve)

    p = subs.add_parser("report", parents=[common], help="summary table, one row per file")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # the shared flags may arrive before or after the subcommand; fall back
    # to the documented defaults when neither position supplied them
    for dest, default in (("format", "json"), ("parallel", 1),
                          ("max_tuples", None)):
        if not hasattr(args, dest):
            setattr(args, dest, default)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    if args.parallel < 1:
        sys.stderr.write("error: --parallel must be at least 1\n")
        return 2
    try:
        return args.func(args)
    except UsageError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except FileFormatError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except FileNotFoundError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except FlagVerificationError as e:
        sys.stderr.write(f"verification failure: {e}\n")
        if e.report is not None:
            sys.stderr.write(json.dumps(e.report.to_json(), indent=2) + "\n")
        return 1
    except ConstructionError as e:
        sys.stderr.write(f"construction failure: {e}\n")
        if e.report is not None:
            sys.stderr.write(json.dumps(e.report.to_json(), indent=2) + "\n")
        return 1
    except TupleBudgetExceeded as e:
        sys.stderr.write(f"tuple budget exceeded: {e}\n")
        return 1
    except ValueError as e:
        sys.stderr.write(f"error: {e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
