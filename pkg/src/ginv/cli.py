"""Command line front end: ``ginv compute``, ``ginv verify`` and ``ginv solve``.

Exit codes: 0 success, 1 property failure, 2 inconsistent system,
3 precondition violation (bad input file, singular matrix, missing inverse),
4 float rank ambiguity.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bdd import bdd_inverse, bott_duffin, build_context
from .errors import (
    BackendMismatchError,
    DimensionError,
    InconsistentSystemError,
    JordanBasisUnavailable,
    NonComplementaryError,
    NonexistenceError,
    RankAmbiguityError,
    SingularMatrixError,
    VerificationError,
)
from .geninv import drazin, moore_penrose
from .io import MatrixFileError, dumps_matrix, matrix_to_dict, parse_matrix, parse_subspace
from .matrix import DEFAULT_TOL, EXACT, F64, Matrix
from .solver import (
    PNorm,
    core_nilpotent_basis,
    cramer_min_p_norm,
    jordan_basis,
    min_p_norm_certify,
    solve_constrained,
    solve_restricted,
)
from .suites import (
    CLI_SUITES,
    SUITES,
    Instance,
    corpus,
    merge_reports,
    reference_instances,
    run_corpus,
    run_instance,
)

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_INCONSISTENT = 2
EXIT_PRECONDITION = 3
EXIT_AMBIGUOUS = 4

_PRECONDITION_ERRORS = (
    MatrixFileError,
    OSError,
    SingularMatrixError,
    NonexistenceError,
    NonComplementaryError,
    DimensionError,
    BackendMismatchError,
    JordanBasisUnavailable,
)


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _load(args) -> tuple[Matrix, object]:
    if not args.matrix:
        raise UsageError("--matrix is required")
    a = parse_matrix(args.matrix, args.backend, args.tol)
    l = parse_subspace(args.subspace, args.backend, args.tol) if args.subspace else None
    return a, l


def _optional(path: str | None, args) -> Matrix | None:
    return parse_matrix(path, args.backend, args.tol) if path else None


def cmd_compute(args) -> int:
    a, l = _load(args)
    if args.kind in ("bd", "bdd") and l is None:
        raise UsageError(f"compute {args.kind} needs --subspace")
    if args.kind == "mp":
        result = moore_penrose(a)
    elif args.kind == "drazin":
        result = drazin(a).d_inverse
    elif args.kind == "bd":
        result = bott_duffin(a, l)
    else:
        result = bdd_inverse(a, l)
    _emit(dumps_matrix(result), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    suites = SUITES if args.suite == "all" else (args.suite,)
    candidate = _optional(args.candidate, args)
    if args.matrix:
        a, l = _load(args)
        if l is None:
            raise UsageError("verify with --matrix needs --subspace")
        inst = Instance(a.to_exact() if a.backend == F64 else a,
                        l if l.backend == EXACT else type(l)(l.basis.to_exact()), Path(args.matrix).stem)
        if candidate is not None and candidate.backend == F64:
            candidate = candidate.to_exact()
        report = run_instance(inst, suites, args.backend, args.tol, args.seed, args.samples, candidate)
    else:
        if candidate is not None:
            raise UsageError("--candidate needs a fixed --matrix/--subspace instance")
        instances = reference_instances() + corpus(args.seed, args.count)
        reports = run_corpus(instances, suites, args.backend, args.tol, args.seed, args.samples,
                             args.parallel)
        report = merge_reports(reports, {"seed": args.seed, "count": args.count,
                                         "suites": list(suites), "backend": args.backend})
    _emit(_json(report.to_dict()), args.out)
    return EXIT_OK if report.ok else EXIT_PROPERTY


def _pnorm(args, ctx) -> tuple[str, PNorm]:
    if args.pnorm:
        return "supplied", PNorm.from_matrix(parse_matrix(args.pnorm, args.backend, args.tol))
    core = ctx.core if ctx.a.is_exact else ctx.core.to_exact()
    try:
        kind, pn = "Jordan basis", jordan_basis(core)
    except JordanBasisUnavailable:
        kind, pn = "core-nilpotent basis", core_nilpotent_basis(core)
    if ctx.a.is_exact:
        return kind, pn
    return kind, PNorm(pn.p.to_f64(args.tol), pn.p_inv.to_f64(args.tol))


def cmd_solve(args) -> int:
    a, l = _load(args)
    if l is None or not args.rhs:
        raise UsageError("solve needs --matrix, --subspace and --rhs")
    rhs = parse_matrix(args.rhs, args.backend, args.tol)
    ctx = build_context(a, l)
    doc: dict = {"mode": args.mode}
    if args.mode == "restricted":
        sol = solve_restricted(ctx, rhs, args.in_range)
        doc.update(x=matrix_to_dict(sol.x_particular), y=matrix_to_dict(sol.y_particular),
                   unique=sol.unique)
    elif args.mode == "constrained":
        sol = solve_constrained(ctx, rhs)
        doc["x"] = matrix_to_dict(sol.x_min)
        kind, pnorm = _pnorm(args, ctx)
        cert = min_p_norm_certify(ctx, rhs, pnorm, args.samples, args.seed)
        doc["certificate"] = {"status": "pass" if cert.ok else "fail", "basis": kind, "samples": cert.samples,
                              "violations": cert.violations, "equalities": cert.equalities}
        if not cert.ok:
            _emit(_json(doc), args.out)
            return EXIT_PROPERTY
    else:
        f, g = _optional(args.border_f, args), _optional(args.border_g, args)
        if (f is None) != (g is None):
            raise UsageError("--border-f and --border-g go together")
        try:
            x = cramer_min_p_norm(ctx, rhs, f, g)
        except ValueError as exc:
            if isinstance(exc, InconsistentSystemError):
                raise
            raise UsageError(str(exc)) from None
        doc["x"] = matrix_to_dict(x)
    _emit(_json(doc), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--matrix", help="matrix file A")
    common.add_argument("--subspace", help="matrix file whose columns span L")
    common.add_argument("--backend", choices=(EXACT, F64), default=EXACT)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="f64 tolerance")
    common.add_argument("--out", help="write the result here instead of stdout")

    parser = argparse.ArgumentParser(prog="ginv", description="Generalized inverses over exact rationals.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="compute a generalized inverse")
    p.add_argument("kind", choices=("mp", "drazin", "bd", "bdd"))
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite", choices=CLI_SUITES + ("representations",))
    p.add_argument("--candidate", help="matrix file to judge against the characterizations")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=20, help="random instances (without --matrix)")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--parallel", nargs="?", type=int, const=0, default=None,
                   help="evaluate instances in a process pool (optional worker count)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", parents=[common], help="solve a constrained system")
    p.add_argument("mode", choices=("restricted", "constrained", "cramer"))
    p.add_argument("--rhs", help="right-hand side column file")
    p.add_argument("--pnorm", help="nonsingular P for the P-norm certificate (default: Jordan or core-nilpotent basis)")
    p.add_argument("--border-f", help="bordering columns F with R(F) = T (cramer)")
    p.add_argument("--border-g", help="bordering rows G with N(G) = S (cramer)")
    p.add_argument("--in-range", action="store_true", help="also require x + y in the range (restricted)")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_solve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "parallel", None) == 0:
        args.parallel = True
    try:
        return args.func(args)
    except RankAmbiguityError as exc:
        print(f"ginv: rank ambiguity: {exc}", file=sys.stderr)
        return EXIT_AMBIGUOUS
    except InconsistentSystemError as exc:
        print(f"ginv: inconsistent system: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except VerificationError as exc:
        print(f"ginv: verification failed: {exc}", file=sys.stderr)
        return EXIT_PROPERTY
    except (UsageError, *_PRECONDITION_ERRORS) as exc:
        print(f"ginv: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
