"""Command-line entry point: ``theta13 <command> ...`` or ``python -m theta13``.

Exit codes: 0 all checks pass, 1 some check failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import __version__
from .divisor import translates_distinct, two_torsion_census
from .errors import Theta13Error
from .report import (
    THRESHOLDS,
    SuiteConfig,
    dumps,
    emit_trace,
    product_section,
    run_suite,
    z_entries,
)
from .theta import DEFAULT_EPS, classical_theta
from .torus import RealCharacteristic, make_siegel, random_siegel
from .zeros import smoothness_report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


def parse_complex(text: str) -> complex:
    """Parse ``1.5``, ``i``, ``-0.2+1.1i`` and the like; ``j`` is accepted too."""
    s = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(s)
    except ValueError:
        raise InputError(f"cannot parse complex number {text!r}") from None


def parse_list(text: str, n: int, conv=parse_complex) -> list:
    parts = text.split(",")
    if len(parts) != n:
        raise InputError(f"expected {n} comma-separated values, got {len(parts)} in {text!r}")
    try:
        return [conv(p) for p in parts]
    except ValueError as exc:
        raise InputError(str(exc)) from None


def parse_z(text: str):
    return make_siegel(*parse_list(text, 3))


def default_eps() -> float:
    raw = os.environ.get("THETA13_EPS")
    if raw is None:
        return DEFAULT_EPS
    try:
        eps = float(raw)
    except ValueError:
        raise InputError(f"THETA13_EPS={raw!r} is not a number") from None
    if not 0 < eps < 1:
        raise InputError("THETA13_EPS must lie in (0, 1)")
    return eps


def _emit(obj, out) -> None:
    text = dumps(obj)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands ---------------------------------------------------------------


def cmd_gen(args) -> int:
    Z = random_siegel(np.random.default_rng(args.seed))
    print(",".join(f"{z.real!r}{z.imag:+}i" for z in Z.entries()))
    return EXIT_OK


def cmd_theta(args) -> int:
    Z = parse_z(args.z)
    c = parse_list(args.char, 4, float)
    ch = RealCharacteristic(c[:2], c[2:])
    v = parse_list(args.v, 2)
    val = classical_theta(Z, ch, v, args.eps)
    _emit({"value": val.value, "tail_bound": val.tail_bound, "radius_used": val.radius_used}, None)
    return EXIT_OK


def cmd_census(args) -> int:
    Z = parse_z(args.z)
    res = two_torsion_census(Z, args.eps, strict=False)
    ok = res.on_count == 10 and res.separation_ratio > THRESHOLDS["census_separation"]
    _emit(
        {
            "Z": z_entries(Z),
            "on_count": res.on_count,
            "separation_ratio": res.separation_ratio,
            "on_points": [str(c) for c in res.on_points],
            "on_parities": res.on_parities(),
            "passed": ok,
        },
        None,
    )
    return EXIT_OK if ok else EXIT_FAIL


def cmd_translates(args) -> int:
    Z = parse_z(args.z)
    w = translates_distinct(Z, args.zeros, args.seed, args.eps)
    _emit({"Z": z_entries(Z), "all_distinct": w.all_distinct, "witnesses": w.best}, None)
    return EXIT_OK if w.all_distinct else EXIT_FAIL


def cmd_product(args) -> int:
    Z = make_siegel(parse_complex(args.tau1), 0, parse_complex(args.tau2))
    sec = product_section(Z, SuiteConfig(eps=args.eps, seed=args.seed))
    _emit(sec, None)
    return EXIT_OK if sec["status"] == "pass" else EXIT_FAIL


def cmd_smoothness(args) -> int:
    Z = parse_z(args.z)
    rep = smoothness_report(Z, args.n, args.seed, args.eps)
    _emit(
        {
            "Z": z_entries(Z),
            "n": rep.n,
            "min_gradient_relative": rep.min_relative,
            "generic": rep.generic,
            "max_residual": rep.max_residual,
        },
        None,
    )
    # genericity is report-only
    return EXIT_OK


def cmd_trace(args) -> int:
    Z = parse_z(args.z)
    rows = emit_trace(Z, args.n, args.seed, args.output, args.eps)
    print(f"wrote {rows} rows to {args.output}", file=sys.stderr)
    return EXIT_OK


def cmd_suite(args) -> int:
    if args.random is not None:
        seed = args.random
        Z = random_siegel(np.random.default_rng(seed))
    else:
        seed = args.seed
        Z = parse_z(args.z)
    cfg = SuiteConfig(eps=args.eps, seed=seed, paranoid=args.paranoid, n_smooth=args.n)
    report = run_suite(Z, cfg)
    _emit(report.to_dict(), args.output)
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="theta13", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    z_default = "0.1+1.1i,0.2+0.3i,-0.1+1.4i"

    def add(name, func, help_, z=True, seed=True):
        sp = sub.add_parser(name, help=help_)
        if z:
            sp.add_argument("--z", default=z_default, help="z11,z12,z22 as complex literals, e.g. 'i,0,i' (use --z=... if it starts with '-')")
        if seed:
            sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--eps", type=float, default=None, help="truncation tolerance (env THETA13_EPS)")
        sp.set_defaults(func=func)
        return sp

    add("gen", cmd_gen, "print a random valid Z", z=False)
    sp = add("theta", cmd_theta, "evaluate a classical theta value", seed=False)
    sp.add_argument("--char", default="0,0,0,0", help="c1a,c1b,c2a,c2b")
    sp.add_argument("--v", default="0,0", help="v1,v2")
    add("census", cmd_census, "2-torsion points on the theta divisor", seed=False)
    sp = add("translates", cmd_translates, "distinctness of the nine kernel translates")
    sp.add_argument("--zeros", type=int, default=12)
    sp = add("product", cmd_product, "component check for Z = diag(tau1, tau2)", z=False)
    sp.add_argument("--tau1", default="i")
    sp.add_argument("--tau2", default="i")
    sp = add("smoothness", cmd_smoothness, "gradient statistics on sampled curve points")
    sp.add_argument("-n", type=int, default=100)
    sp = add("trace", cmd_trace, "write sampled curve points as CSV")
    sp.add_argument("-n", type=int, default=100)
    sp.add_argument("-o", "--output", default="trace.csv")
    sp = add("suite", cmd_suite, "run the full invariant battery and emit a JSON report")
    sp.add_argument("--random", type=int, default=None, metavar="SEED", help="use a random Z from this seed")
    sp.add_argument("--paranoid", action="store_true", help="include oracle comparisons")
    sp.add_argument("-n", type=int, default=100, help="curve samples for the smoothness section")
    sp.add_argument("-o", "--output", default=None, help="report path (default stdout)")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if args.eps is None:
            args.eps = default_eps()
        elif not 0 < args.eps < 1:
            raise InputError("--eps must lie in (0, 1)")
        if getattr(args, "n", 1) < 1:
            raise InputError("-n must be at least 1")
        return args.func(args)
    except ValueError as exc:
        # InputError, NotPositiveDefinite and NotHalfInteger all land here
        print(f"theta13: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Theta13Error as exc:
        print(f"theta13: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
