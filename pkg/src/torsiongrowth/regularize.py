"""Zeta-regularized products and regularized integrals, made executable.

Three pieces: the closed form for the regularized product of an arithmetic
progression c·n, a numerical "naive definition" estimator that recovers the
same constant from smoothly truncated partial sums, and the exact evaluation
of the regularized integral of an even polynomial against log(x²+a²).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .l2constants import SymbolicReal


def zeta_reg_product_scaled(c: float) -> float:
    """The regularized product over n ≥ 1 of c·n: exp(-ζ_λ'(0)) = √(2π/c).

    From ζ_λ(s) = c^(-s) ζ(s), ζ(0) = -1/2 and ζ'(0) = -½ log 2π.
    """
    if c <= 0:
        raise ValueError("scale must be positive")
    return math.sqrt(2 * math.pi / c)


def smooth_bump(x):
    """C^∞ cutoff: 1 on (-∞, 1/2], 0 on [1, ∞), exponential blend between."""
    x = np.asarray(x, dtype=float)
    out = np.ones_like(x)
    out[x >= 1] = 0.0
    mid = (x > 0.5) & (x < 1)
    u = (x[mid] - 0.5) / 0.5
    f = lambda s: np.exp(-1.0 / np.maximum(s, 1e-300))
    out[mid] = f(1 - u) / (f(1 - u) + f(u))
    return out


def smooth_bump_wide(x):
    """A second C^∞ cutoff (plateau up to 1/4) for independence checks."""
    x = np.asarray(x, dtype=float)
    out = np.ones_like(x)
    out[x >= 1] = 0.0
    mid = (x > 0.25) & (x < 1)
    u = (x[mid] - 0.25) / 0.75
    f = lambda s: np.exp(-1.0 / np.maximum(s, 1e-300))
    out[mid] = f(1 - u) / (f(1 - u) + f(u))
    return out


@dataclass(frozen=True)
class SmoothedFit:
    constant: float          # fitted constant term of P(T) = Σ h(λ/T) log λ
    product: float           # exp(constant)
    residual: float          # max fit residual over the grid
    coefficients: tuple      # (T log T, T, log T, 1) coefficients


def smoothed_log_product(eigenvalues, h=smooth_bump, t_grid=None) -> SmoothedFit:
    """Extrapolate the constant term of P(T) = Σ_i h(λ_i/T) log λ_i.

    P(T) is fitted by least squares on the basis {T log T, T, log T, 1}; for
    the sequences in scope the constant term converges to the log of the
    zeta-regularized product as the truncation point grows.  The eigenvalue
    list must extend beyond the largest grid point (h vanishes from 1 on).
    """
    lam = np.asarray(sorted(float(x) for x in eigenvalues))
    if len(lam) == 0 or lam[0] <= 0:
        raise ValueError("eigenvalues must be positive")
    if t_grid is None:
        hi = lam[-1]
        t_grid = np.geomspace(hi / 40.0, hi, 60)
    t_grid = np.asarray(sorted(float(t) for t in t_grid))
    loglam = np.log(lam)
    P = np.array([float(np.dot(h(lam / T), loglam)) for T in t_grid])
    basis = np.column_stack([t_grid * np.log(t_grid), t_grid,
                             np.log(t_grid), np.ones_like(t_grid)])
    coeffs, *_ = np.linalg.lstsq(basis, P, rcond=None)
    fit = basis @ coeffs
    resid = float(np.max(np.abs(fit - P)))
    if not np.isfinite(resid) or resid > 1.0:
        raise ArithmeticError(f"ill-conditioned fit (residual {resid:.3g})")
    const = float(coeffs[3])
    return SmoothedFit(const, math.exp(const), resid, tuple(float(c) for c in coeffs))


def reg_integral_even_poly(k: int, a) -> tuple:
    """Both sides of the regularized-integral identity
    ∫^ (ix)^k log(x²+a²) dx = π ∫_{-a}^{a} x^k dx, as exact SymbolicReals.

    The left side comes from differentiating the Beta-function formula for
    ∫ (x²+a²)^(-s) x^k dx at s=0, using Γ((k+1)/2) Γ(-(k+1)/2) =
    (-1)^(k/2+1) 2π/(k+1), times the i^k = (-1)^(k/2) measure factor.
    """
    if k < 0 or k % 2 != 0:
        raise ValueError("k must be a nonnegative even integer")
    a = Fraction(a)
    if a <= 0:
        raise ValueError("a must be positive")
    gamma_pair = Fraction((-1) ** (k // 2 + 1) * 2, k + 1)
    lebesgue_side = -gamma_pair * a ** (k + 1)        # ∫^ x^k log(x²+a²) dx / π
    lhs = SymbolicReal.of(Fraction((-1) ** (k // 2)) * lebesgue_side, 0, 1)
    rhs = SymbolicReal.of(2 * a ** (k + 1) / (k + 1), 0, 1)
    return lhs, rhs
