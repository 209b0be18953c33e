"""Command-line entry points.

Exit codes: 0 on success with all checks passing, 1 when a verification
fails, 2 on malformed input.  The environment variable ABW_TOL overrides the
default tolerance everywhere.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .background import (
    automorphism_lie_algebra,
    check_background,
    check_order0,
    check_order1,
    configuration_space,
    is_compatible,
)
from .clifford import build_clifford
from .linalg import DEFAULT_TOL, SolverError
from .serialize import (
    ValidationError,
    background_to_json,
    dumps,
    load_background,
    load_field,
    matrix_to_json,
    model_from_meta,
    save_background,
    sm_meta,
)
from .sm import build_extended_background, build_sm_background, random_yukawa
from .suite import SuiteOptions, run_suite
from .tensor import ResidualNonzero, classify_fiber_field, fiber_model, graded_tensor

__all__ = ["main"]


def _tol(args) -> float:
    if getattr(args, "tol", None) is not None:
        return args.tol
    env = os.environ.get("ABW_TOL")
    return float(env) if env else DEFAULT_TOL


def _emit(doc):
    print(dumps(doc))


def _cmd_clifford(args) -> int:
    mod = build_clifford(args.p, args.q)
    signs = mod.space.signs
    doc = {
        "p": args.p,
        "q": args.q,
        "gammas": [matrix_to_json(g) for g in mod.gammas],
        "spinor_metric": matrix_to_json(mod.H0),
        "chirality": matrix_to_json(mod.chi0),
        "real_structure": {"mat": matrix_to_json(mod.C0.mat), "antilinear": True},
        "ko": {"eps": signs.eps, "kappa": signs.kappa, "eps2": signs.eps2,
               "kappa2": signs.kappa2, "mu": signs.mu, "nu": signs.nu},
    }
    if args.emit == "json":
        _emit(doc)
    else:
        print(f"signature ({args.p},{args.q}): spinor dimension {mod.spinor_dim}")
        print(f"KO signs: eps={signs.eps:+d} kappa={signs.kappa:+d} "
              f"eps2={signs.eps2:+d} kappa2={signs.kappa2:+d} (mu,nu)=({signs.mu},{signs.nu})")
    return 0


def _cmd_sm(args) -> int:
    y = random_yukawa(args.gens, args.seed, args.s, args.epsF)
    if args.extended:
        model = build_extended_background(y, tol=_tol(args))
    else:
        model = build_sm_background(y, _tol(args))
    meta = sm_meta(model, extra={"seed": args.seed, "extended": bool(args.extended)})
    doc = background_to_json(model.background, meta)
    if args.out:
        save_background(model.background, args.out, meta)
        print(f"wrote background ({model.dim} x {model.dim}) to {args.out}")
    else:
        _emit(doc)
    return 0


def _cmd_check(args) -> int:
    b, _ = load_background(args.background, _tol(args))
    report = check_background(b)
    doc = {
        "axioms": report.items,
        "order0": check_order0(b),
        "order1": check_order1(b),
    }
    _emit(doc)
    return 0 if report.passed and doc["order0"] and doc["order1"] else 1


def _cmd_ko(args) -> int:
    b, _ = load_background(args.background, _tol(args))
    s = b.space.signs
    _emit({"eps": s.eps, "kappa": s.kappa, "eps2": s.eps2, "kappa2": s.kappa2,
           "mu": s.mu, "nu": s.nu})
    return 0


def _cmd_config_space(args) -> int:
    b, _ = load_background(args.background, _tol(args))
    cfg = configuration_space(b)
    doc = {
        "dim": cfg.dim,
        "all_compatible": all(is_compatible(b, d) for d in cfg.basis),
    }
    if args.emit_basis:
        doc["basis"] = [matrix_to_json(d) for d in cfg.basis]
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(dumps(doc))
        print(f"configuration space dimension {cfg.dim}; report written to {args.out}")
    else:
        _emit(doc)
    return 0


def _cmd_aut(args) -> int:
    b, _ = load_background(args.background, _tol(args))
    alg = automorphism_lie_algebra(b, vertical_only=args.vertical)
    _emit({"vertical_only": bool(args.vertical), "dim": alg.dim})
    return 0


def _cmd_tensor(args) -> int:
    b1, _ = load_background(args.left, _tol(args))
    b2, _ = load_background(args.right, _tol(args))
    prod = graded_tensor(b1, b2)
    save_background(prod, args.out)
    print(f"wrote graded product ({prod.dim} x {prod.dim}) to {args.out}")
    return 0


def _cmd_classify(args) -> int:
    _, meta = load_background(args.background, _tol(args))
    model = model_from_meta(meta, _tol(args))
    zeta = load_field(args.field)
    fm = fiber_model(model)
    dec = classify_fiber_field(fm, zeta, tol=_tol(args))
    norms = dec.sector_norms()
    _emit({
        "sectors": {k: float(v) for k, v in norms.items()},
        "dominant": dec.dominant_sector(),
        "clean": norms["residual"] <= _tol(args) * max(float(np.linalg.norm(zeta)), 1.0),
    })
    return 0


def _cmd_verify_sm(args) -> int:
    options = SuiteOptions(
        n_gen=args.gens, seed=args.seed, s=args.s, eps_F=args.epsF,
        tol=_tol(args), degenerate=args.degenerate,
    )
    report = run_suite("sm", options)
    out = report.serialized()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
        summary = report.to_json()["summary"]
        print(f"{summary['checks']} checks, {summary['failed']} failed; report in {args.out}")
    else:
        print(out)
    return 0 if report.passed else 1


def _cmd_suite(args) -> int:
    options = SuiteOptions(n_gen=args.gens, seed=args.seed, s=args.s,
                           eps_F=args.epsF, tol=_tol(args))
    report = run_suite(args.name, options)
    print(report.serialized())
    return 0 if report.passed else 1


def _sign(value: str) -> int:
    v = int(value)
    if v not in (1, -1):
        raise argparse.ArgumentTypeError("expected +1 or -1")
    return v


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abw",
        description="Finite algebraic backgrounds: build, check, and solve.",
    )
    parser.add_argument("--tol", type=float, default=None,
                        help="rank tolerance (default 1e-9, or ABW_TOL)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("clifford", help="build a spinor module for a signature")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--emit", choices=["json", "summary"], default="summary")
    p.set_defaults(fn=_cmd_clifford)

    p = sub.add_parser("sm", help="emit a Standard-Model background as JSON")
    p.add_argument("--gens", type=int, default=3)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--s", type=_sign, default=-1)
    p.add_argument("--epsF", type=_sign, default=-1)
    p.add_argument("--extended", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_sm)

    p = sub.add_parser("check", help="run the background axioms on a JSON file")
    p.add_argument("background")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("ko", help="detect the sign data of a background")
    p.add_argument("background")
    p.set_defaults(fn=_cmd_ko)

    p = sub.add_parser("config-space", help="solve for the admissible Dirac operators")
    p.add_argument("background")
    p.add_argument("--out", default=None)
    p.add_argument("--emit-basis", action="store_true")
    p.set_defaults(fn=_cmd_config_space)

    p = sub.add_parser("aut", help="solve for the symmetry Lie algebra")
    p.add_argument("background")
    p.add_argument("--vertical", action="store_true")
    p.set_defaults(fn=_cmd_aut)

    p = sub.add_parser("tensor", help="graded product of two backgrounds")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_tensor)

    p = sub.add_parser("classify", help="sort a fiber field into physical sectors")
    p.add_argument("field")
    p.add_argument("--background", required=True)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("verify-sm", help="run the Standard-Model verification suite")
    p.add_argument("--gens", type=int, default=3)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--s", type=_sign, default=-1)
    p.add_argument("--epsF", type=_sign, default=-1)
    p.add_argument("--degenerate", choices=["nu-eq-e", "singular"], default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_verify_sm)

    p = sub.add_parser("suite", help="run a named verification suite")
    p.add_argument("name", choices=["clifford", "sm", "tensor", "all"])
    p.add_argument("--gens", type=int, default=3)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--s", type=_sign, default=-1)
    p.add_argument("--epsF", type=_sign, default=-1)
    p.set_defaults(fn=_cmd_suite)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValidationError, ResidualNonzero, json.JSONDecodeError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
