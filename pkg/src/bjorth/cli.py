"""``bjorth``: decide BJ orthogonality from the command line and print a JSON certificate.

Exit status: 0 on success, 2 on bad input, 1 on an internal error
(and for ``verify-all`` when a battery fails).
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import io, oracle, selfcheck
from .attainment import DEFAULT_GAP_TOL, attainment_sampled, top_singular
from .bilinear import BilinearForm, bilinear_orth_check
from .function_orth import TIE_EPS, function_orth_check
from .matrix_orth import DEFAULT_SPHERE_SAMPLES, bhatia_semrl_check, operator_orth_check
from .norms import NormSpec, norm, parse_norm
from .primitives import DEFAULT_TOL, bracket_radius, is_bj_orthogonal
from .io import InputError

PROFILE_POINTS = 401


def _space(text: str, dim: int) -> NormSpec:
    try:
        return parse_norm(text, dim)
    except ValueError as exc:
        raise InputError("--norm", str(exc)) from None


def _same_shape(a, b, field: str):
    if a.shape != b.shape:
        raise InputError(field, f"shape {b.shape} does not match {a.shape}")


def _verification(cert, line, base: float, direction: float, tol: float) -> dict:
    res = oracle.oracle_orth(line, base, direction, tol=tol)
    return {
        "oracle": {"verdict": res.verdict, "lambda_star": res.lambda_star,
                   "min_value": res.min_value, "margin": res.margin},
        "agreement": bool(res.orthogonal == cert.orthogonal),
    }


def _write_profile(path: str, line, base: float, direction: float):
    if direction == 0:
        lams = np.zeros(1)
    else:
        R = bracket_radius(base, direction)
        lams = np.linspace(-R, R, PROFILE_POINTS)
        lams[PROFILE_POINTS // 2] = 0.0
    values = line.many(lams)
    try:
        with open(path, "w") as fh:
            fh.write(io.profile_csv(lams, values))
    except OSError as exc:
        raise InputError("--dump-profile", f"cannot write {path!r} ({exc.strerror or exc})") from None


def _finish(args, payload: dict, cert, line=None, base=None, direction=None) -> dict:
    payload.update(cert.to_dict())
    if line is not None and args.dump_profile:
        _write_profile(args.dump_profile, line, base, direction)
    if args.verify:
        if line is None or not base or not direction:
            payload["verification"] = {"oracle": None, "agreement": None,
                                       "note": "no oracle line for this input"}
        else:
            payload["verification"] = _verification(cert, line, base, direction, args.tol)
    return payload


def cmd_vec_orth(args) -> dict:
    x = io.read_vector("--x", args.x)
    y = io.read_vector("--y", args.y)
    _same_shape(x, y, "--y")
    space = _space(args.norm, len(x))
    cert = is_bj_orthogonal(space, x, y, args.tol)
    payload = {"command": "vec-orth", "norm": space.label, "tol": args.tol}
    return _finish(args, payload, cert, oracle.vector_line(space, x, y),
                   norm(space, x), norm(space, y))


def cmd_mat_orth(args) -> dict:
    A = io.read_matrix("--a", args.a)
    B = io.read_matrix("--b", args.b)
    _same_shape(A, B, "--b")
    payload = {"command": "mat-orth", "norm": args.norm, "tol": args.tol}
    if args.norm.strip().lower() == "l2":
        cert = bhatia_semrl_check(A, B, tol=args.tol, gap_tol=args.gap_tol)
        line = oracle.spectral_line(A, B)
        return _finish(args, payload, cert, line, np.linalg.norm(A, 2), np.linalg.norm(B, 2))
    space = _space(args.norm, A.shape[1])
    eps = TIE_EPS if args.eps_att is None else args.eps_att
    cert = operator_orth_check(A, B, space, sphere_samples=args.samples, tol=args.tol,
                               eps_att=eps, seed=args.seed)
    payload["norm"] = space.label
    p = space.p
    if p in (1.0, 2.0, math.inf):
        return _finish(args, payload, cert, oracle.operator_line(A, B, p),
                       oracle.operator_norm_exact(A, p), oracle.operator_norm_exact(B, p))
    return _finish(args, payload, cert)


def cmd_bilinear_orth(args) -> dict:
    A = io.read_matrix("--a", args.a)
    B = io.read_matrix("--b", args.b)
    _same_shape(A, B, "--b")
    cert = bilinear_orth_check(BilinearForm(A), BilinearForm(B), tol=args.tol, gap_tol=args.gap_tol)
    payload = {"command": "bilinear-orth", "tol": args.tol}
    return _finish(args, payload, cert, oracle.spectral_line(A, B),
                   np.linalg.norm(A, 2), np.linalg.norm(B, 2))


def _read_function_pair(args):
    grid = io.read_grid("--grid", args.grid) if args.grid else None
    adjacency = io.read_adjacency("--adjacency", args.adjacency) if args.adjacency else None
    kw = dict(space_text=args.norm, grid=grid, grid_dim=args.grid_dim, adjacency=adjacency,
              identify_antipodes=args.antipodes)
    f = io.read_sampled("--f", args.f, **kw)
    if getattr(args, "g", None) is None:
        return f, None
    g = io.read_sampled("--g", args.g, **kw)
    if not f.same_grid(g):
        raise InputError("--g", "grid differs from the grid of --f")
    if f.values.shape != g.values.shape:
        raise InputError("--g", f"values have shape {g.values.shape}, expected {f.values.shape}")
    return f, g


def cmd_func_orth(args) -> dict:
    f, g = _read_function_pair(args)
    eps = TIE_EPS if args.eps_att is None else args.eps_att
    cert = function_orth_check(f, g, tol=args.tol, eps_att=eps, identify_antipodes=args.antipodes)
    payload = {"command": "func-orth", "norm": f.space.label, "tol": args.tol,
               "grid_points": len(f)}
    sup_f = float(f.pointwise_norms().max())
    sup_g = float(g.pointwise_norms().max())
    return _finish(args, payload, cert, oracle.function_line(f.values, g.values, f.space),
                   sup_f, sup_g)


def cmd_attainment(args) -> dict:
    if (args.a is None) == (args.f is None):
        raise InputError("--a/--f", "give exactly one of --a (matrix) or --f (sampled function)")
    if args.a is not None:
        A = io.read_matrix("--a", args.a)
        if not np.any(A):
            raise InputError("--a", "the zero matrix attains its norm everywhere")
        top = top_singular(A, args.gap_tol)
        return {"command": "attainment", "kind": "matrix", "sigma_max": top.sigma_max,
                "dim": top.dim, "gap": top.gap, "basis": top.basis.T,
                "singular_values": top.singular_values}
    f, _ = _read_function_pair(args)
    eps = 1e-6 if args.eps_att is None else args.eps_att
    att = attainment_sampled(f, eps_att=eps, identify_antipodes=args.antipodes)
    return {"command": "attainment", "kind": "function", "sup_norm": att.sup_norm,
            "eps_att": eps, "indices": att.indices,
            "components": [{"indices": c, "points": f.grid[c]} for c in att.components],
            "representatives": att.representatives(f.grid)}


QUICK = {"bhatia_semrl": dict(count=60), "bilinear": dict(count=40), "functions": dict(count=24),
         "cones": dict(count=100), "operators": dict(count_l2=30, count_lp=20)}


def cmd_verify_all(args) -> dict:
    out = {}
    for name, run in selfcheck.BATTERIES.items():
        kwargs = dict(QUICK.get(name, {})) if args.quick else {}
        if args.seed is not None and name != "sin_example":
            kwargs["seed"] = args.seed
        out[name] = run(**kwargs).summary()
    return {"command": "verify-all", "quick": bool(args.quick),
            "passed": all(r["passed"] for r in out.values()), "batteries": out}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="normalised slope tolerance")
    common.add_argument("--verify", action="store_true", help="also run the brute-force oracle")
    common.add_argument("--dump-profile", metavar="CSV", help="write the lambda -> norm curve")
    common.add_argument("--gap-tol", type=float, default=DEFAULT_GAP_TOL)
    common.add_argument("--eps-att", type=float, default=None,
                        help="relative tie threshold for sampled attainment sets")

    fn = argparse.ArgumentParser(add_help=False)
    fn.add_argument("--grid", help="grid points (one row per point), if not inside --f")
    fn.add_argument("--grid-dim", type=int, default=1, help="coordinate columns in CSV input")
    fn.add_argument("--adjacency", help="edge list JSON/CSV; inferred for product grids")
    fn.add_argument("--antipodes", action="store_true", help="identify u with -u")

    parser = argparse.ArgumentParser(prog="bjorth", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("vec-orth", parents=[common], help="two vectors")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--norm", default="l2")
    p.set_defaults(run=cmd_vec_orth)

    p = sub.add_parser("mat-orth", parents=[common], help="two matrices (operator norm)")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--norm", default="l2", help="l2 uses the singular-subspace test")
    p.add_argument("--samples", type=int, default=DEFAULT_SPHERE_SAMPLES)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_mat_orth)

    p = sub.add_parser("bilinear-orth", parents=[common], help="two bilinear forms by matrix")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(run=cmd_bilinear_orth)

    p = sub.add_parser("func-orth", parents=[common, fn], help="two sampled functions")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--norm", default="l2")
    p.set_defaults(run=cmd_func_orth)

    p = sub.add_parser("attainment", parents=[common, fn], help="norm attainment set")
    p.add_argument("--a")
    p.add_argument("--f")
    p.add_argument("--norm", default="l2")
    p.set_defaults(run=cmd_attainment)

    p = sub.add_parser("verify-all", help="run every agreement battery")
    p.add_argument("--quick", action="store_true", help="small sample counts")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(run=cmd_verify_all)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload = args.run(args)
    except InputError as exc:
        print(f"bjorth: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - report anything else as internal
        print(f"bjorth: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(io.dumps(payload))
    if args.command == "verify-all" and not payload["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
