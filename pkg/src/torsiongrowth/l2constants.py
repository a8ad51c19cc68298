"""Closed-form L²-torsion constants for odd hyperbolic spaces, SL2(C), SL3(R).

Every value here is an exact rational multiple of (√2)^s π^k, held in a
SymbolicReal.  The per-family formulas are polynomial integrals evaluated
over Q; the predicted growth rate of homology torsion in a tower of locally
symmetric spaces is |t²| times the volume.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class SymbolicReal:
    """Exact real of the shape coef · (√2)^sqrt2_pow · π^pi_pow."""

    coef: Fraction
    sqrt2_pow: int = 0
    pi_pow: int = 0

    def __post_init__(self):
        if self.sqrt2_pow not in (0, 1):
            raise ValueError("sqrt2 exponent must be 0 or 1")
        if self.coef == 0 and (self.sqrt2_pow or self.pi_pow):
            raise ValueError("zero must be canonical")

    @staticmethod
    def of(coef, sqrt2_pow: int = 0, pi_pow: int = 0) -> "SymbolicReal":
        coef = Fraction(coef)
        s, p = sqrt2_pow, pi_pow
        while s >= 2:
            coef *= 2
            s -= 2
        while s < 0:
            coef /= 2
            s += 2
        if coef == 0:
            s = p = 0
        return SymbolicReal(coef, s, p)

    def __mul__(self, other: "SymbolicReal") -> "SymbolicReal":
        return SymbolicReal.of(self.coef * other.coef,
                               self.sqrt2_pow + other.sqrt2_pow,
                               self.pi_pow + other.pi_pow)

    def __add__(self, other: "SymbolicReal") -> "SymbolicReal":
        if self.coef == 0:
            return other
        if other.coef == 0:
            return self
        if (self.sqrt2_pow, self.pi_pow) != (other.sqrt2_pow, other.pi_pow):
            raise ValueError("incompatible symbolic parts")
        return SymbolicReal.of(self.coef + other.coef, self.sqrt2_pow, self.pi_pow)

    def __neg__(self) -> "SymbolicReal":
        return SymbolicReal.of(-self.coef, self.sqrt2_pow, self.pi_pow)

    def __abs__(self) -> "SymbolicReal":
        return SymbolicReal.of(abs(self.coef), self.sqrt2_pow, self.pi_pow)

    def value(self) -> float:
        return float(self.coef) * math.sqrt(2) ** self.sqrt2_pow \
            * math.pi ** self.pi_pow

    def __str__(self):
        if self.coef == 0:
            return "0"
        num, den = abs(self.coef.numerator), self.coef.denominator
        top = []
        if num != 1 or (self.sqrt2_pow == 0 and self.pi_pow <= 0):
            top.append(str(num))
        if self.sqrt2_pow:
            top.append("√2")
        if self.pi_pow > 0:
            top.append("π" if self.pi_pow == 1 else f"π^{self.pi_pow}")
        bot = []
        if den != 1:
            bot.append(str(den))
        if self.pi_pow < 0:
            bot.append("π" if self.pi_pow == -1 else f"π^{-self.pi_pow}")
        s = "·".join(top) if top else "1"
        if bot:
            b = "·".join(bot)
            s = f"{s}/({b})" if len(bot) > 1 or (den != 1 and den > 9) else f"{s}/{b}"
        return ("-" if self.coef < 0 else "") + s


# ---------------------------------------------------------------------------
# weights


@dataclass(frozen=True)
class WeightSO:
    """Dominant weight λ1 ≥ … ≥ λ(n+1) ≥ 0 for SO(2n+1, 1); the shifted
    parameters a_j = j + λ(n+1-j) are strictly decreasing read (a_n, …, a_0)."""

    n: int
    lam: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if len(self.lam) != self.n + 1:
            raise ValueError("need n+1 weight entries")
        if any(a < b for a, b in zip(self.lam, self.lam[1:])) or self.lam[-1] < 0:
            raise ValueError("weight must be dominant: λ1 ≥ … ≥ λn+1 ≥ 0")

    @property
    def a(self) -> tuple:
        """(a_0, a_1, …, a_n), strictly increasing."""
        return tuple(j + self.lam[self.n - j] for j in range(self.n + 1))


@dataclass(frozen=True)
class WeightSL2C:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError("p, q must be nonnegative")

    @property
    def a(self) -> tuple:
        return (abs(self.p - self.q), self.p + self.q + 1)


@dataclass(frozen=True)
class WeightSL3:
    p: int
    q: int
    r: int

    def __post_init__(self):
        if not self.p >= self.q >= self.r:
            raise ValueError("need p ≥ q ≥ r")

    @property
    def A(self) -> tuple:
        p, q, r = self.p, self.q, self.r
        return (Fraction(p + 1 - q, 2), Fraction(p - r + 2, 2),
                Fraction(q - r + 1, 2))

    @property
    def C(self) -> tuple:
        p, q, r = self.p, self.q, self.r
        return (Fraction(p + q - 2 * r + 3, 3), Fraction(p + r - 2 * q, 3),
                Fraction(2 * p - q - r + 3, 3))


def strongly_acyclic(w) -> bool:
    """Whether every unitary twist of the local system stays acyclic: the
    lowest shifted parameter avoids 0 (SO case) / p ≠ q (SL2(C) case)."""
    if isinstance(w, WeightSO):
        return w.lam[-1] != 0
    if isinstance(w, WeightSL2C):
        return w.p != w.q
    raise TypeError("no strong-acyclicity criterion for this weight type")


# ---------------------------------------------------------------------------
# polynomial helpers over Q (coefficients ascending)


def _polymul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _polyint(a):
    return [Fraction(0)] + [c / (i + 1) for i, c in enumerate(a)]


def _polyeval(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _pi_k(a, k):
    """Π_k(t) = ∏_{j≠k} (t² - a_j²)/(a_k² - a_j²) as a polynomial in t."""
    num = [Fraction(1)]
    den = Fraction(1)
    for j, aj in enumerate(a):
        if j == k:
            continue
        num = _polymul(num, [Fraction(-aj * aj), Fraction(0), Fraction(1)])
        den *= Fraction(a[k] * a[k] - aj * aj)
    return [c / den for c in num]


def hyperbolic_segment_integrals(w: WeightSO):
    """The exact integrals ∫_{a_(k-1)}^{a_k} Q_k with Q_k = Π_k + … + Π_n and
    a_(-1) = 0; each is positive and they sum to Σ_k ∫_0^{a_k} Π_k."""
    a = w.a
    n = w.n
    pis = [_pi_k(a, k) for k in range(n + 1)]
    out = []
    for k in range(n + 1):
        q = [Fraction(0)]
        for p in pis[k:]:
            q = [x + y for x, y in zip(q + [Fraction(0)] * len(p), p + [Fraction(0)] * len(q))]
        anti = _polyint(q)
        lo = a[k - 1] if k > 0 else 0
        out.append(_polyeval(anti, Fraction(a[k])) - _polyeval(anti, Fraction(lo)))
    return tuple(out)


def t2_hyperbolic(w: WeightSO) -> SymbolicReal:
    """t² of H^(2n+1) with the given coefficient system:
    (-1)^n (n!/(2 π^n)) (E/F) Σ_k ∫_0^{a_k} Π_k(t) dt."""
    a = w.a
    n = w.n
    E = Fraction(1)
    F = Fraction(1)
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            E *= Fraction(a[j] * a[j] - a[i] * a[i])
            F *= Fraction(j * j - i * i)
    total = Fraction(0)
    for k in range(n + 1):
        anti = _polyint(_pi_k(a, k))
        total += _polyeval(anti, Fraction(a[k]))
    coef = Fraction((-1) ** n * math.factorial(n), 2) * (E / F) * total
    return SymbolicReal.of(coef, 0, -n)


def t2_sl2c(p: int, q: int) -> SymbolicReal:
    """t² of SL2(C) ≃ H³ local systems: -(1/6π)(a1³ - a0³ + 3 a1 a0 (a1-a0))."""
    a0, a1 = WeightSL2C(p, q).a
    val = a1 ** 3 - a0 ** 3 + 3 * a1 * a0 * (a1 - a0)
    return SymbolicReal.of(Fraction(-val, 6), 0, -1)


def sl3_alternating_sum(w: WeightSL3) -> Fraction:
    """Σ_k (-1)^(k+1) (A_k |C_k| / 4)(3 C_k² - 4 A_k²), exact."""
    out = Fraction(0)
    for k in range(3):
        A, C = w.A[k], w.C[k]
        term = (A * abs(C) / 4) * (3 * C * C - 4 * A * A)
        out += term if k % 2 == 0 else -term
    return out


def sl3_factored_sum(w: WeightSL3) -> Fraction:
    """The same sum in its factored form
    (1/4)(8 A1 A3 C1 C3 + 8 A2 |C2| · (A3 C3 if C2 ≥ 0 else A1 C1))."""
    A, C = w.A, w.C
    cross = A[2] * C[2] if C[1] >= 0 else A[0] * C[0]
    return Fraction(1, 4) * (8 * A[0] * A[2] * C[0] * C[2]
                             + 8 * A[1] * abs(C[1]) * cross)


def t2_sl3(p: int, q: int, r: int) -> SymbolicReal:
    """t² of the SL3(R) symmetric space: (2√2/π²) times the alternating sum."""
    w = WeightSL3(p, q, r)
    return SymbolicReal.of(2 * sl3_alternating_sum(w), 1, -2)


# ---------------------------------------------------------------------------
# growth prediction


_FAMILY_DIM = {"hyperbolic": None, "sl2c": 3, "sl3": 5}


def predicted_growth(family: str, weight, volume: float) -> float:
    """Predicted exponential growth rate of torsion: |t²| · vol.

    Refuses weights that are not strongly acyclic (where the predicate is
    defined) and enforces the sign law (-1)^((dim S - 1)/2) t² > 0.
    """
    family = family.lower()
    if family == "hyperbolic":
        if not isinstance(weight, WeightSO):
            raise TypeError("hyperbolic family takes a WeightSO")
        if not strongly_acyclic(weight):
            raise ValueError(
                "weight is not strongly acyclic (lowest entry is 0): torsion "
                "growth is not governed by t² for this coefficient system")
        t2 = t2_hyperbolic(weight)
        dim_s = 2 * weight.n + 1
    elif family == "sl2c":
        if not isinstance(weight, WeightSL2C):
            raise TypeError("sl2c family takes a WeightSL2C")
        if not strongly_acyclic(weight):
            raise ValueError(
                "weight is not strongly acyclic (p = q): torsion growth is "
                "not governed by t² for this coefficient system")
        t2 = t2_sl2c(weight.p, weight.q)
        dim_s = 3
    elif family == "sl3":
        if not isinstance(weight, WeightSL3):
            raise TypeError("sl3 family takes a WeightSL3")
        t2 = t2_sl3(weight.p, weight.q, weight.r)
        dim_s = 5
    else:
        raise ValueError(f"unknown family {family!r}")
    sign = (-1) ** ((dim_s - 1) // 2)
    if sign * t2.coef <= 0:
        raise ArithmeticError("sign law violated; formula or weight invalid")
    return abs(t2).value() * volume


# Apéry's constant, for the SL3(Z) prediction vol = ζ(2)ζ(3)/(8π²) etc.
ZETA3 = 1.2020569031595942854
