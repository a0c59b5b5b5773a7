"""Command-line front end.

Every subcommand prints one JSON report on stdout. Exit status is 0 on
success, 1 when the library rejects the input (the report is then
``{"error": <class name>, "message": ...}``) and 2 for usage or file
format problems.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .certificate import Verdict
from .certify import block_criterion, certify, certify_with_rules
from .curvature import (
    ahz_assemble_G,
    ahz_bounds,
    ahz_lambda_threshold,
    check_hsc_positive,
    cheung_lemma_check,
    curvature_to_tensor,
    hsc,
)
from .errors import FormatError, HTensorError, NotHermitian
from .inclusion import gershgorin_set, ll_set, llk_set
from .plot import regions_svg
from .solver import SolverConfig, certify_pd_by_eigen, enumerate_eigenvalues, extremal_eigenvalues
from .tensor import eval_form, is_cps, is_hermitian, symmetrize

SET_BUILDERS = {"ger": gershgorin_set, "llk": llk_set, "ll": ll_set}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--starts", type=int)
    p.add_argument("--tol", type=float, dest="newton_tol")
    p.add_argument("--max-iter", type=int)
    p.add_argument("--dedup-tol", type=float)
    p.add_argument("--seed", type=int, dest="rng_seed")


def _config(args) -> SolverConfig:
    overrides = {k: getattr(args, k, None) for k in ("starts", "newton_tol", "max_iter", "dedup_tol", "rng_seed")}
    return SolverConfig.from_env(**{k: v for k, v in overrides.items() if v is not None})


def _pair(p) -> dict:
    return {"eigenvalue": p.eigenvalue, "vector": p.vector, "residual": p.residual}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="htensor", description="Spectral tools for Hermitian complex tensors.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="report Hermitian / CPS status")
    p.add_argument("path")

    p = sub.add_parser("symmetrize", help="write the conjugate partial symmetrization")
    p.add_argument("path")
    p.add_argument("--out")

    p = sub.add_parser("eval", help="evaluate the conjugate form at a vector")
    p.add_argument("path")
    p.add_argument("--vector", required=True)

    p = sub.add_parser("eigen", help="extremal or all eigenvalues")
    p.add_argument("path")
    p.add_argument("--mode", choices=("extremal", "enumerate"), default="extremal")
    p.add_argument("--no-symmetrize", action="store_true")
    _solver_flags(p)

    p = sub.add_parser("inclusion", help="inclusion regions")
    p.add_argument("path")
    p.add_argument("--sets", default="ger,llk,ll")
    p.add_argument("--plot")
    p.add_argument("--grid", type=int, default=200)
    p.add_argument("--point", action="append", default=[])

    p = sub.add_parser("certify", help="positive definiteness certificate")
    p.add_argument("path")
    p.add_argument("--method", choices=("auto", "dd", "llk", "ll", "eigen"), default="auto")
    _solver_flags(p)

    p = sub.add_parser("block", help="block criterion")
    p.add_argument("path")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--K1", type=float)
    p.add_argument("--K2", type=float)
    _solver_flags(p)

    p = sub.add_parser("curvature", help="curvature data operations")
    p.add_argument("action", choices=("tensor", "hsc", "certify", "ahz", "cheung"))
    p.add_argument("path")
    p.add_argument("--vector", help="hsc: vector")
    p.add_argument("--out", help="tensor: write A_R here")
    p.add_argument("--s", type=int, help="cheung: split index")
    p.add_argument("--K1", type=float)
    p.add_argument("--K2", type=float)
    p.add_argument("--a", type=float, help="ahz: base bound (computed when omitted)")
    p.add_argument("--b", type=float, help="ahz: fiber bound (computed when omitted)")
    p.add_argument("--lam", type=float, help="ahz: also check G at this lambda")
    _solver_flags(p)
    return parser


def _check(args):
    A = io.load_tensor(args.path)
    return {"m": A.m, "n": A.n, "nnz": A.nnz, "hermitian": is_hermitian(A), "cps": is_cps(A)}


def _symmetrize(args):
    A = io.load_tensor(args.path)
    if not is_hermitian(A):
        raise NotHermitian("symmetrize expects a Hermitian tensor")
    S = symmetrize(A)
    if args.out:
        io.save_tensor(S, args.out)
        return {"out": args.out, "nnz": S.nnz}
    return io.tensor_to_dict(S)


def _eval(args):
    A = io.load_tensor(args.path)
    return {"value": eval_form(A, io.parse_vector(args.vector))}


def _eigen(args):
    A = io.load_tensor(args.path)
    cfg = _config(args)
    if args.mode == "extremal":
        low, high = extremal_eigenvalues(A, cfg)
        return {"mode": "extremal", "eigenvalues": [low.eigenvalue, high.eigenvalue],
                "min": _pair(low), "max": _pair(high)}
    pairs = enumerate_eigenvalues(A, cfg, use_symmetrization=not args.no_symmetrize)
    return {"mode": "enumerate", "eigenvalues": [p.eigenvalue for p in pairs],
            "pairs": [_pair(p) for p in pairs]}


def _inclusion(args):
    A = io.load_tensor(args.path)
    names = [s.strip() for s in args.sets.split(",") if s.strip()]
    unknown = [s for s in names if s not in SET_BUILDERS]
    if unknown or not names:
        raise UsageError(f"unknown inclusion sets {unknown}; choose from ger, llk, ll")
    if args.grid < 2:
        raise UsageError("--grid must be at least 2")
    regions = {name: SET_BUILDERS[name](A) for name in names}
    report = {"regions": {name: region.to_dict() for name, region in regions.items()}}
    if args.point:
        points = []
        for token in args.point:
            z = io.parse_complex(token)
            points.append({"z": z, **{name: bool(region.contains(z)) for name, region in regions.items()}})
        report["points"] = points
    if args.plot:
        box = gershgorin_set(A).bounding_box()
        Path(args.plot).write_text(regions_svg(regions, args.grid, box=box))
        report["plot"] = args.plot
    return report


def _certify(args):
    A = io.load_tensor(args.path)
    if args.method == "auto":
        return certify(A, _config(args))
    if args.method == "eigen":
        return certify_pd_by_eigen(A, _config(args))
    return certify_with_rules(A, (args.method,))


def _block(args):
    A = io.load_tensor(args.path)
    return block_criterion(A, args.s, args.K1, args.K2, _config(args))


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"curvature {args.action} needs " + ", ".join("--" + n for n in missing))


def _curvature(args):
    cfg = _config(args)
    if args.action == "ahz":
        c = io.load_ahz(args.path)
        a, b = args.a, args.b
        if a is None or b is None:
            ca, cb = ahz_bounds(c, cfg)
            a = ca if a is None else a
            b = cb if b is None else b
        report = {"a": a, "b": b, "lambda_threshold": ahz_lambda_threshold(c, a, b)}
        if args.lam is not None:
            neg = -ahz_assemble_G(c, args.lam)
            report["G_at_lambda"] = {"lambda": args.lam, "negated": certify(neg, cfg)}
        return report
    data = io.load_curvature(args.path)
    if args.action == "tensor":
        A = curvature_to_tensor(data)
        if args.out:
            io.save_tensor(A, args.out)
        return {"hermitian": is_hermitian(A), "cps": is_cps(A), "kahler_like": data.is_kahler_like(),
                "tensor": io.tensor_to_dict(A)}
    if args.action == "hsc":
        _require(args, "vector")
        return {"hsc": hsc(data, io.parse_vector(args.vector))}
    if args.action == "certify":
        cert = check_hsc_positive(data, cfg)
        report = {"certificate": cert}
        if cert.verdict is Verdict.INDEFINITE_OR_NEGATIVE and "vector" in cert.witness:
            report["hsc_at_witness"] = hsc(data, cert.witness["vector"])
        return report
    _require(args, "s", "K1", "K2")
    return cheung_lemma_check(data, args.s, args.K1, args.K2)


HANDLERS = {"check": _check, "symmetrize": _symmetrize, "eval": _eval, "eigen": _eigen,
            "inclusion": _inclusion, "certify": _certify, "block": _block, "curvature": _curvature}


def run(argv: list[str] | None = None, stdout=None) -> int:
    out = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        report = HANDLERS[args.command](args)
    except UsageError as exc:
        print(io.dumps({"error": "UsageError", "message": str(exc)}), file=out)
        return 2
    except (FormatError, OSError) as exc:
        print(io.dumps({"error": type(exc).__name__, "message": str(exc)}), file=out)
        return 2
    except HTensorError as exc:
        print(io.dumps({"error": type(exc).__name__, "message": str(exc)}), file=out)
        return 1
    print(io.dumps(report), file=out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
