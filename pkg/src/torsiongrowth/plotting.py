"""Figure rendering for tower and knot reports.

Renders next to the delimited output: torsion growth per cover index against
the L²-torsion prediction, and branched-cover order growth against the
Mahler-measure asymptote.  Uses the Agg backend only; every function writes a
PNG and returns the path.
"""
from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_torsion_sequence(points, tau, path):
    """Growth rate log T(K_N)/N with the -τ² asymptote, and regulator decay."""
    ns = [p.N for p in points]
    rates = [p.log_T_over_index for p in points]
    regs = [max((abs(r) for r in p.regulator_logs), default=0.0) / p.N
            for p in points]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    ax1.plot(ns, rates, "o-", ms=3, label="log T(K_N)/N")
    if tau is not None:
        ax1.axhline(-tau, color="crimson", ls="--", lw=1, label="-τ²")
    ax1.set_xlabel("N")
    ax1.legend(frameon=False)
    ax1.set_title("torsion growth rate")
    ax2.plot(ns, regs, "s-", ms=3, color="seagreen")
    ax2.set_xlabel("N")
    ax2.set_title("max |log R^i| / N")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_knot_orders(rows, log_mahler_value, path):
    """rows: (N, |H1| order); plots log(order)/N against log M(Δ)."""
    ns = [n for n, order in rows if order > 1]
    ys = [math.log(order) / n for n, order in rows if order > 1]
    fig, ax = plt.subplots(figsize=(5, 3.6))
    ax.plot(ns, ys, "o-", ms=3, label="log|H₁(M_N)|/N")
    ax.axhline(log_mahler_value, color="crimson", ls="--", lw=1, label="log M(Δ)")
    ax.set_xlabel("N")
    ax.legend(frameon=False)
    ax.set_title("branched cover homology growth")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
