"""Command line frontend.

Subcommands: complex, tower, mahler, knot, l2, regularize-demo.  Exit codes:
0 success, 1 input error, 2 verification failure.  Set TORSION_LOG=debug for
verbose progress output.
"""
from __future__ import annotations

import argparse
import logging
import math
import os
import sys

from . import complexes, l2constants, polynomials, regularize, tower

log = logging.getLogger("torsiongrowth")


def _fmt_frac(x) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def cmd_complex(args) -> int:
    try:
        C = complexes.load_complex(args.file)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"complex with dims {list(C.dims)}")
    for s in complexes.cohomology_all(C):
        tors = "·".join(f"Z/{f}" for f in s.torsion_factors) or "-"
        print(f"  H^{s.degree}: free rank {s.free_rank}, torsion {tors}, "
              f"regulator^2 = {_fmt_frac(s.regulator_sq)}")
    ok = True
    rt = complexes.check_rt_identity(C)
    print(f"  (RT):   lhs = {_fmt_frac(rt.lhs)}, rhs = {_fmt_frac(rt.rhs)} "
          f"-> {'ok' if rt.holds else 'FAIL'}")
    dl = complexes.check_dlap_identity(C)
    print(f"  (dLap): lhs = {_fmt_frac(dl.lhs)}, rhs = {_fmt_frac(dl.rhs)} "
          f"-> {'ok' if dl.holds else 'FAIL'}")
    ok = rt.holds and dl.holds
    D = complexes.dual_complex(C)
    dual_ok = all(
        complexes.cohomology(D, C.top - j).regulator_sq
        * complexes.cohomology(C, j).regulator_sq == 1
        for j in range(C.top + 1))
    print(f"  duality R̂·R = 1: {'ok' if dual_ok else 'FAIL'}")
    return 0 if ok and dual_ok else 2


def cmd_tower(args) -> int:
    try:
        T = tower.load_tower(args.file)
        ns = range(1, args.nmax + 1)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    acyclic = tower.l2_acyclic(T)
    tau = None
    if all(acyclic):
        tau = tower.tau2(T)
        print(f"τ² = {tau:.9f}")
    else:
        print("warning: tower is not L2-acyclic; τ² omitted", file=sys.stderr)
    log.debug("computing torsion sequence for N up to %d", args.nmax)
    points = tower.torsion_sequence(T, ns, workers=args.workers)
    for p in points:
        orders = ", ".join(str(t) for t in p.torsion_orders)
        print(f"N={p.N:4d}  |H_tors| = ({orders})  log T/N = {p.log_T_over_index:+.6f}")
    if args.csv:
        tower.write_sequence_csv(args.csv, points, tau)
        print(f"wrote {args.csv}")
    if args.plot:
        from . import plotting
        plotting.plot_torsion_sequence(points, tau, args.plot)
        print(f"wrote {args.plot}")
    if tau is not None:
        residual = points[-1].log_T_over_index + tau
        print(f"residual log T/N + τ² = {residual:+.6f} at N={points[-1].N}")
        if abs(residual) > args.tol:
            print(f"verification failure: residual exceeds tol {args.tol}",
                  file=sys.stderr)
            return 2
    return 0


def cmd_mahler(args) -> int:
    try:
        p = polynomials.parse_poly(args.poly)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if p.nvars <= 1:
        mv = polynomials.mahler_measure(p.to_intpoly())
        exact = " (exactly 1: monomial × cyclotomics)" if mv.is_exactly_one else ""
        print(f"M({args.poly}) = {mv.value:.9f} ± {mv.error:.1e}{exact}")
    else:
        est, err = polynomials.mahler_multivariate_estimate(p, grid=args.grid)
        print(f"log M({args.poly}) ≈ {est:.7f} (two-grid disagreement {err:.2e})")
    return 0


def cmd_knot(args) -> int:
    try:
        delta = polynomials.parse_poly(args.alexander).to_intpoly()
        rows = [(N, polynomials.branched_cover_order(delta, N))
                for N in range(1, args.nmax + 1)]
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    lm = polynomials.log_mahler(delta)
    print(f"log M(Δ) = {lm:.9f}")
    for N, order in rows:
        rate = f"{math.log(order) / N:+.6f}" if order > 1 else "        "
        inf = " (infinite H₁)" if order == 0 else ""
        print(f"N={N:4d}  |H₁(M_N)| = {order}{inf}  log/N = {rate}")
    if args.csv:
        import csv as _csv
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            w = _csv.writer(fh)
            w.writerow(["N", "order", "log_order_over_N"])
            for N, order in rows:
                w.writerow([N, str(order),
                            repr(math.log(order) / N) if order > 0 else ""])
        print(f"wrote {args.csv}")
    if args.plot:
        from . import plotting
        plotting.plot_knot_orders(rows, lm, args.plot)
        print(f"wrote {args.plot}")
    return 0


def cmd_l2(args) -> int:
    try:
        w = [int(x) for x in args.w.split(",")] if args.w else []
        if args.family == "hyperbolic":
            n = args.n if args.n else (len(w) - 1 if w else 1)
            weight = l2constants.WeightSO(n, tuple(w) if w else (0,) * (n + 1))
            t2 = l2constants.t2_hyperbolic(weight)
        elif args.family == "sl2c":
            if len(w) != 2:
                raise ValueError("sl2c needs --w p,q")
            weight = l2constants.WeightSL2C(*w)
            t2 = l2constants.t2_sl2c(*w)
        elif args.family == "sl3":
            if len(w) != 3:
                raise ValueError("sl3 needs --w p,q,r")
            weight = l2constants.WeightSL3(*w)
            t2 = l2constants.t2_sl3(*w)
        else:
            raise ValueError(f"unknown family {args.family}")
    except (TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"t² = {t2} ≈ {t2.value():.6f}")
    try:
        acyclic = l2constants.strongly_acyclic(weight)
        print(f"strongly acyclic: {acyclic}")
    except TypeError:
        pass
    if args.vol is not None:
        try:
            g = l2constants.predicted_growth(args.family, weight, args.vol)
        except (ValueError, ArithmeticError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        print(f"predicted torsion growth rate: {g:.9f} (volume {args.vol})")
    return 0


def cmd_regularize_demo(args) -> int:
    import numpy as np

    print("closed form: prod^(2πn) =", regularize.zeta_reg_product_scaled(2 * math.pi))
    ok = True
    for c in (1.0, 2 * math.pi, 10.0):
        lam = c * np.arange(1, 100001)
        fit = regularize.smoothed_log_product(lam)
        expect = math.log(regularize.zeta_reg_product_scaled(c))
        err = abs(fit.constant - expect)
        ok &= err <= 1e-3
        print(f"smoothed c={c:9.5f}: constant {fit.constant:+.6f} "
              f"(closed form {expect:+.6f}, err {err:.1e})")
    for k in (0, 2, 4):
        lhs, rhs = regularize.reg_integral_even_poly(k, 1)
        ok &= lhs == rhs
        print(f"reg integral k={k}: LHS = {lhs}, RHS = {rhs} "
              f"-> {'ok' if lhs == rhs else 'FAIL'}")
    return 0 if ok else 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="torsiongrowth",
        description="Exact torsion growth in cyclic covers and L²-torsion "
                    "constants.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("complex", help="analyze a metrized complex JSON file")
    p.add_argument("file")
    p.set_defaults(func=cmd_complex)

    p = sub.add_parser("tower", help="torsion sequence of the covers of a tower")
    p.add_argument("file")
    p.add_argument("--nmax", type=int, default=16)
    p.add_argument("--tol", type=float, default=0.05)
    p.add_argument("--csv", metavar="PATH")
    p.add_argument("--plot", metavar="PATH", help="render growth figure (PNG)")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_tower)

    p = sub.add_parser("mahler", help="Mahler measure of a polynomial")
    p.add_argument("poly")
    p.add_argument("--grid", type=int, default=256,
                   help="quadrature resolution for several variables")
    p.set_defaults(func=cmd_mahler)

    p = sub.add_parser("knot", help="branched cyclic cover homology orders")
    p.add_argument("--alexander", required=True)
    p.add_argument("--nmax", type=int, default=12)
    p.add_argument("--csv", metavar="PATH")
    p.add_argument("--plot", metavar="PATH", help="render growth figure (PNG)")
    p.set_defaults(func=cmd_knot)

    p = sub.add_parser("l2", help="closed-form L²-torsion constants")
    p.add_argument("family", choices=["hyperbolic", "sl2c", "sl3"])
    p.add_argument("--w", help="weight entries, comma separated")
    p.add_argument("--n", type=int, help="hyperbolic rank parameter n")
    p.add_argument("--vol", type=float, help="volume for growth prediction")
    p.set_defaults(func=cmd_l2)

    p = sub.add_parser("regularize-demo",
                       help="regularized products and integrals demo")
    p.set_defaults(func=cmd_regularize_demo)
    return ap


def main(argv=None) -> int:
    level = os.environ.get("TORSION_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(name)s %(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
