"""Command-line front end: solve / eval / verify / normalize.

Exit codes: 0 ok, 2 invalid input, 3 constraint or solvability violation,
4 convergence failure, 5 verification failed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from anharm2d.closed_form import (
    ClosedFormState,
    PotentialParams,
    SolvabilityError,
    excited_solve,
    excited_state,
    ground_constraint_residual,
    ground_kappa,
    ground_state,
    radial_eval,
    SignBranch,
)
from anharm2d.numeric import (
    ConvergenceError,
    build_grid,
    normalization_constant,
    verify,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CONSTRAINT = 3
EXIT_CONVERGENCE = 4
EXIT_VERIFY_FAILED = 5

CONSTRAINT_REL_TOL = 1e-9


class ConstraintViolation(ValueError):
    """Supplied (a, b, c, m) are off the exact-solvability surface."""


def _fmt(x: float) -> str:
    return format(float(x), ".9g")


def _check_ground_constraint(params: PotentialParams, m: int) -> None:
    res = ground_constraint_residual(params, m)
    scale = max(
        1.0,
        (params.b + 2.0 * math.sqrt(params.c)) ** 2,
        4.0 * params.c * (m * m + 2.0 * math.sqrt(params.a * params.c)),
    )
    if abs(res) > CONSTRAINT_REL_TOL * scale:
        raise ConstraintViolation(
            f"parameters violate the ground-state constraint: residual {res:.3e}"
        )


def _check_excited_constraint(params: PotentialParams, m: int) -> None:
    sqrt_c = math.sqrt(params.c)
    if abs(params.b + 6.0 * sqrt_c) > CONSTRAINT_REL_TOL * max(1.0, 6.0 * sqrt_c):
        raise ConstraintViolation(
            f"excited state requires b = -6*sqrt(c); got b = {params.b}"
        )
    gap = m * m + 2.0 * math.sqrt(params.a * params.c) - 4.0
    if abs(gap) > CONSTRAINT_REL_TOL * 4.0:
        raise ConstraintViolation(
            "excited state requires m^2 + 2*sqrt(ac) = 4; "
            f"got {m * m + 2.0 * math.sqrt(params.a * params.c):.6g}"
        )


def _resolve_state(args) -> tuple[ClosedFormState, PotentialParams]:
    """Build the requested closed-form state from either the joint solve
    (only --a given) or explicit --c/--b, gated by the constraint residual."""
    if (args.c is None) != (args.b is None):
        raise ValueError("--c and --b must be given together")
    if args.c is None:
        joint = excited_solve(args.a, args.m)
        state = joint.ground if args.state == "ground" else joint.excited
        return state, joint.params
    params = PotentialParams(a=args.a, b=args.b, c=args.c)
    if args.state == "ground":
        _check_ground_constraint(params, args.m)
        # infer the kappa branch b was generated from
        kappa = (params.b + 3.0 * math.sqrt(params.c)) / (2.0 * math.sqrt(params.c))
        plus = ground_kappa(args.m, params.a, params.c, SignBranch.PLUS)
        branch = SignBranch.PLUS if abs(kappa - plus) < 1e-6 * max(1.0, abs(plus)) else SignBranch.MINUS
        return ground_state(params, args.m, branch), params
    _check_excited_constraint(params, args.m)
    return excited_state(params), params


def _write_text(path, text: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    joint = excited_solve(args.a, args.m)
    doc = {
        "a": joint.params.a,
        "m": joint.m,
        "c": joint.params.c,
        "b": joint.params.b,
        "kappa": joint.kappa,
        "kappa1": joint.kappa1,
        "E0": joint.e0,
        "E1": joint.e1,
        "a1": joint.a1,
        "a2": joint.a2,
        "a3": joint.a3,
    }
    _write_text(args.out, json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def cmd_eval(args) -> int:
    state, params = _resolve_state(args)
    grid = build_grid(params, max(args.samples, 16))
    r_min = grid.r_min if args.r_min is None else args.r_min
    r_max = grid.r_max if args.r_max is None else args.r_max
    if not (0.0 < r_min < r_max):
        raise ValueError(f"need 0 < r_min < r_max, got [{r_min}, {r_max}]")
    if args.samples < 2:
        raise ValueError("need at least 2 samples")
    r = np.linspace(r_min, r_max, args.samples)
    values = radial_eval(state, r)
    if args.normalize:
        values = values * normalization_constant(state, grid)
    lines = ["r,R"]
    lines.extend(f"{_fmt(ri)},{_fmt(vi)}" for ri, vi in zip(r, values))
    _write_text(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify(args.a, args.m, args.grid_n)
    _write_text(args.out, json.dumps(report.to_dict(), indent=2) + "\n")
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def cmd_normalize(args) -> int:
    state, params = _resolve_state(args)
    grid = build_grid(params, 4000)
    n = normalization_constant(state, grid)
    doc = {"integral": n**-2, "N": n}
    _write_text(args.out, json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anharm2d",
        description="Exact and numerical bound states for V(r) = a r^2 + b r^-4 + c r^-6 in 2D.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_state=False):
        p.add_argument("--a", type=float, required=True, help="harmonic strength (> 0)")
        p.add_argument("--m", type=int, default=0, help="angular momentum (default 0)")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        if with_state:
            p.add_argument("--state", choices=["ground", "excited"], default="ground")
            p.add_argument("--c", type=float, default=None, help="explicit r^-6 coefficient")
            p.add_argument("--b", type=float, default=None, help="explicit r^-4 coefficient")

    p = sub.add_parser("solve", help="joint closed-form configuration for given a, m")
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("eval", help="emit a wavefunction curve as CSV")
    common(p, with_state=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--r-min", type=float, default=None)
    p.add_argument("--r-max", type=float, default=None)
    p.add_argument("--normalize", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="numerical cross-check, JSON report")
    common(p)
    p.add_argument("--grid-n", type=int, default=4000)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("normalize", help="normalization integral and constant")
    common(p, with_state=True)
    p.set_defaults(func=cmd_normalize)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SolvabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT
    except ConstraintViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
