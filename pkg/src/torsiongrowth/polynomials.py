"""Integer and Laurent polynomial arithmetic.

Characteristic polynomials, resultants, Mahler measures (with a cyclotomic
pre-test so measure-one inputs are decided exactly), the log det'(1-A^N)/N
limit sequence, and branched cover homology orders.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .intlinalg import IntMatrix, rat_charpoly


@dataclass(frozen=True)
class IntPoly:
    """Univariate integer polynomial, coefficients ascending."""

    coeffs: tuple

    @staticmethod
    def from_coeffs(cs) -> "IntPoly":
        cs = [int(c) for c in cs]
        while cs and cs[-1] == 0:
            cs.pop()
        return IntPoly(tuple(cs))

    @staticmethod
    def monomial(c: int, k: int) -> "IntPoly":
        return IntPoly.from_coeffs([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1   # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return IntPoly.from_coeffs([x + y for x, y in zip(a, b)])

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if self.is_zero() or other.is_zero():
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    def derivative(self) -> "IntPoly":
        return IntPoly.from_coeffs([i * c for i, c in enumerate(self.coeffs)][1:])

    def divmod_exactable(self, other: "IntPoly"):
        """Polynomial division over Q, returned as (quot, rem) with Fraction
        coefficients cleared only when exact; used via try_divide."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = [Fraction(c) for c in self.coeffs]
        div = [Fraction(c) for c in other.coeffs]
        dq = len(rem) - len(div)
        quot = [Fraction(0)] * (dq + 1) if dq >= 0 else []
        while len(rem) >= len(div) and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) < len(div):
                break
            k = len(rem) - len(div)
            f = rem[-1] / div[-1]
            quot[k] = f
            for i, d in enumerate(div):
                rem[k + i] -= f * d
            rem.pop()
        return quot, rem

    def try_divide(self, other: "IntPoly"):
        """Exact quotient over Z, or None."""
        quot, rem = self.divmod_exactable(other)
        if any(rem) or any(q.denominator != 1 for q in quot):
            return None
        return IntPoly.from_coeffs([int(q) for q in quot])

    def __str__(self):
        return format_poly({(i,): c for i, c in enumerate(self.coeffs) if c}, ("t",))


def charpoly(A: IntMatrix) -> IntPoly:
    """Monic characteristic polynomial det(t I - A), exact."""
    if A.rows != A.cols:
        raise ValueError("characteristic polynomial of non-square matrix")
    cs = rat_charpoly(A.to_rat())
    assert all(c.denominator == 1 for c in cs)
    return IntPoly.from_coeffs([int(c) for c in cs])


def detprime_int(M: IntMatrix) -> int:
    """|product of nonzero eigenvalues| of an integer endomorphism.

    The magnitude of the lowest nonzero coefficient of the characteristic
    polynomial; 1 for the zero map (empty product).
    """
    if M.rows == 0:
        return 1
    for c in charpoly(M).coeffs:
        if c:
            return abs(c)
    raise AssertionError("unreachable: monic polynomial")


# ---------------------------------------------------------------------------
# cyclotomic machinery


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> IntPoly:
    """The n-th cyclotomic polynomial, by the recursive quotient formula."""
    p = IntPoly.from_coeffs([-1] + [0] * (n - 1) + [1])   # t^n - 1
    for d in range(1, n):
        if n % d == 0:
            q = p.try_divide(cyclotomic_poly(d))
            assert q is not None
            p = q
    return p


def _euler_phi(n: int) -> int:
    out = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out


def strip_cyclotomic_factors(p: IntPoly):
    """Divide out t^k and every cyclotomic factor.

    Returns (residual, k, cyclo_orders).  The residual carries the original
    leading coefficient; p is a monomial times cyclotomics exactly when the
    residual is the constant +-1.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    k = 0
    cs = list(p.coeffs)
    while cs[0] == 0:
        cs.pop(0)
        k += 1
    q = IntPoly(tuple(cs))
    orders = []
    d = q.degree
    n = 1
    while q.degree > 0 and n <= 2 * d * d + 1:
        if _euler_phi(n) <= q.degree:
            while True:
                r = q.try_divide(cyclotomic_poly(n))
                if r is None:
                    break
                q = r
                orders.append(n)
        n += 1
    return q, k, tuple(sorted(orders))


# ---------------------------------------------------------------------------
# Mahler measure


@dataclass(frozen=True)
class MahlerValue:
    value: float
    error: float
    is_exactly_one: bool = False


def _roots(coeffs, prec: int):
    with mpmath.workdps(prec):
        return mpmath.polyroots([mpmath.mpf(c) for c in reversed(coeffs)],
                                maxsteps=200, extraprec=prec * 4)


def _poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd over Z via the Euclidean algorithm on fractions."""
    fa = [Fraction(c) for c in a.coeffs]
    fb = [Fraction(c) for c in b.coeffs]

    def deg(u):
        return len(u) - 1

    def rem(u, v):
        u = u[:]
        while len(u) >= len(v) and any(u):
            while u and u[-1] == 0:
                u.pop()
            if len(u) < len(v):
                break
            f = u[-1] / v[-1]
            k = len(u) - len(v)
            for i, d in enumerate(v):
                u[k + i] -= f * d
            u.pop()
        while u and u[-1] == 0:
            u.pop()
        return u

    while any(fb):
        fa, fb = fb, rem(fa, fb)
    if not any(fa):
        return IntPoly(())
    den = math.lcm(*(f.denominator for f in fa))
    ints = [int(f * den) for f in fa]
    g = math.gcd(*ints) if len(ints) > 1 else abs(ints[0])
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return IntPoly(tuple(ints))


def mahler_measure(p: IntPoly, tol: float = 1e-9) -> MahlerValue:
    """M(p) = |lead| * prod max(1, |root|), with certified-style error bound.

    Monomial-times-cyclotomic inputs are detected exactly and return 1.
    Otherwise roots of the cyclotomic-free part are found at increasing
    precision until two runs agree within tol/4.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    residual, _k, _orders = strip_cyclotomic_factors(p)
    if residual.degree == 0:
        c = abs(residual.lead)
        return MahlerValue(float(c), 0.0, is_exactly_one=(c == 1))
    g = _poly_gcd(residual, residual.derivative())
    if g.degree > 0:
        # Mahler measure is multiplicative; peel repeated-root content so
        # the root finder only ever sees squarefree polynomials.
        a = mahler_measure(residual.try_divide(g), tol / 2)
        b = mahler_measure(g, tol / 2)
        return MahlerValue(a.value * b.value, tol,
                           a.is_exactly_one and b.is_exactly_one)
    lead = abs(residual.lead)
    prev = None
    prec = 40
    while prec <= 640:
        try:
            roots = _roots(residual.coeffs, prec)
        except mpmath.libmp.NoConvergence:
            prec *= 2
            continue
        with mpmath.workdps(prec):
            m = mpmath.mpf(lead)
            for r in roots:
                a = abs(r)
                if a > 1:
                    m *= a
            val = float(m)
        if prev is not None and abs(val - prev) <= tol / 4:
            return MahlerValue(val, tol, False)
        prev = val
        prec *= 2
    raise ArithmeticError("root finding did not stabilize")


def log_mahler(p: IntPoly) -> float:
    mv = mahler_measure(p)
    return 0.0 if mv.is_exactly_one else math.log(mv.value)


# ---------------------------------------------------------------------------
# Gelfond-Lind sequence


def gelfond_lind_sequence(A: IntMatrix, n_max: int):
    """[(N, log det'(1 - A^N) / N)]; converges to log M(charpoly A).

    det' skips vanishing eigenvalue factors, so root-of-unity eigenvalues of
    A are handled; everything is exact big-integer arithmetic until the final
    log.
    """
    if A.rows != A.cols:
        raise ValueError("square matrix required")
    n = A.rows
    out = []
    power = IntMatrix.identity(n)
    one = IntMatrix.identity(n)
    for N in range(1, n_max + 1):
        power = power @ A
        d = detprime_int(one - power)
        out.append((N, math.log(d) / N))
    return out


# ---------------------------------------------------------------------------
# resultants and branched covers


def resultant(p: IntPoly, q: IntPoly) -> int:
    """Exact resultant by the subresultant polynomial remainder sequence."""
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of zero polynomial")
    if p.degree == 0:
        return p.coeffs[0] ** q.degree
    if q.degree == 0:
        return q.coeffs[0] ** p.degree
    a, b = list(p.coeffs), list(q.coeffs)
    s = 1
    g, h = 1, 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        if da < db:
            a, b = b, a
            if da % 2 == 1 and db % 2 == 1:
                s = -s
            continue
        delta = da - db
        # pseudo-remainder of lead(b)^(delta+1) * a by b
        r = [c * b[-1] ** (delta + 1) for c in a]
        for k in range(delta, -1, -1):
            f, r[db + k] = divmod(r[db + k], b[-1])
            assert r[db + k] == 0
            for i in range(db):
                r[k + i] -= f * b[i]
        del r[db:]
        while r and r[-1] == 0:
            r.pop()
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        if not r:
            return 0
        dr = len(r) - 1
        divisor = g * h ** delta
        r = [c // divisor for c in r]
        g = b[-1]
        h = (h ** (1 - delta)) * (g ** delta) if delta <= 1 else (g ** delta) // (h ** (delta - 1))
        a, b = b, r
        if dr == 0:
            db = len(a) - 1
            res = (h ** (1 - db)) * (b[0] ** db) if db <= 1 else (b[0] ** db) // (h ** (db - 1))
            return s * res


def branched_cover_order(delta: IntPoly, N: int) -> int:
    """|H_1| of the N-th cyclic branched cover determined by an Alexander
    polynomial: |Res(delta, 1 + t + ... + t^(N-1))|.  Returns 0 when the
    homology is infinite (delta vanishes at an N-th root of unity)."""
    if delta.is_zero() or abs(delta(1)) != 1:
        raise ValueError("not an Alexander polynomial: |p(1)| must be 1")
    if N < 1:
        raise ValueError("N must be >= 1")
    if N == 1:
        return 1
    qn = IntPoly.from_coeffs([1] * N)
    return abs(resultant(delta, qn))


# ---------------------------------------------------------------------------
# multivariate Laurent polynomials


@dataclass(frozen=True)
class LaurentPoly:
    """Laurent polynomial in nvars variables: {exponent vector: coefficient}."""

    nvars: int
    terms: tuple   # sorted tuple of (exp tuple, coeff), no zero coeffs

    @staticmethod
    def from_terms(nvars: int, terms) -> "LaurentPoly":
        acc = {}
        for e, c in (terms.items() if isinstance(terms, dict) else terms):
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise ValueError("exponent arity mismatch")
            acc[e] = acc.get(e, 0) + int(c)
        return LaurentPoly(nvars, tuple(sorted((e, c) for e, c in acc.items() if c)))

    @staticmethod
    def constant(nvars: int, c: int) -> "LaurentPoly":
        return LaurentPoly.from_terms(nvars, {(0,) * nvars: c})

    @staticmethod
    def var(nvars: int, i: int, k: int = 1) -> "LaurentPoly":
        e = [0] * nvars
        e[i] = k
        return LaurentPoly.from_terms(nvars, {tuple(e): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        return LaurentPoly.from_terms(self.nvars, list(self.terms) + list(other.terms))

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        acc = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPoly.from_terms(self.nvars, acc)

    def bar(self) -> "LaurentPoly":
        """The involution sending each variable to its inverse."""
        return LaurentPoly(self.nvars,
                           tuple(sorted((tuple(-x for x in e), c) for e, c in self.terms)))

    def specialize_one(self) -> int:
        """Value at (1, ..., 1)."""
        return sum(c for _, c in self.terms)

    def to_intpoly(self) -> IntPoly:
        """Univariate case: multiply by the monomial clearing negative powers."""
        if self.nvars != 1:
            raise ValueError("univariate only")
        if not self.terms:
            return IntPoly(())
        lo = min(e[0] for e, _ in self.terms)
        cs = [0] * (max(e[0] for e, _ in self.terms) - lo + 1)
        for e, c in self.terms:
            cs[e[0] - lo] = c
        return IntPoly(tuple(cs))

    def __str__(self):
        names = ("t",) if self.nvars == 1 else tuple("xyzuvw"[i] for i in range(self.nvars))
        return format_poly(dict(self.terms), names)


def log_mahler_univariate(p: LaurentPoly) -> float:
    """Torus average of log|p|: the log Mahler measure, monomials dropped."""
    return log_mahler(p.to_intpoly())


def mahler_multivariate_estimate(p: LaurentPoly, grid: int = 256):
    """Quadrature estimate of the torus average of log|p|.

    Tensor grid offset by half a cell so exact zeros are dodged generically.
    Returns (estimate, error_heuristic): the estimate at the full resolution
    and its disagreement with a half-resolution pass.
    """
    import numpy as np

    if p.is_zero():
        raise ValueError("zero polynomial")

    def estimate(res):
        angles = 2.0 * np.pi * (np.arange(res) + 0.5) / res
        z = np.exp(1j * angles)
        vals = np.zeros((res,) * p.nvars, dtype=complex)
        for e, c in p.terms:
            term = complex(c)
            for axis, k in enumerate(e):
                shape = [1] * p.nvars
                shape[axis] = res
                term = term * (z ** k).reshape(shape)
            vals = vals + term
        mags = np.abs(vals)
        if np.all(mags == 0):
            raise ArithmeticError("polynomial vanished on the whole grid")
        mags = np.maximum(mags, 1e-300)
        return float(np.mean(np.log(mags)))

    coarse = estimate(max(grid // 2, 2))
    fine = estimate(grid)
    return fine, abs(fine - coarse)


# ---------------------------------------------------------------------------
# parsing / formatting


def parse_poly(text: str, nvars: int | None = None) -> LaurentPoly:
    """Parse strings like "t^2-3t+1", "3x^2y - 2", "t^-1 + 2".

    Variables: t (univariate) or x, y, z (multivariate).  Returns a
    LaurentPoly; use .to_intpoly() for ordinary integer polynomials.
    """
    import re

    s = text.replace(" ", "").replace("*", "")
    if not s:
        raise ValueError("empty polynomial string")
    token = re.compile(r"([+-]?\d*)((?:[a-z](?:\^-?\d+)?)*)")
    varnames = []
    terms = []
    pos = 0
    while pos < len(s):
        m = token.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at ...{s[pos:]!r}")
        coefstr, varpart = m.groups()
        coef = int(coefstr) if coefstr not in ("", "+", "-") else (-1 if coefstr == "-" else 1)
        exps = {}
        for vm in re.finditer(r"([a-z])(?:\^(-?\d+))?", varpart):
            v, e = vm.group(1), int(vm.group(2) or 1)
            exps[v] = exps.get(v, 0) + e
            if v not in varnames:
                varnames.append(v)
        terms.append((coef, exps))
        pos = m.end()
    varnames.sort()
    if nvars is not None and len(varnames) > nvars:
        raise ValueError("too many variables")
    n = nvars if nvars is not None else max(len(varnames), 1)
    out = []
    for coef, exps in terms:
        e = [0] * n
        for v, k in exps.items():
            e[varnames.index(v)] = k
        out.append((tuple(e), coef))
    return LaurentPoly.from_terms(n, out)


def format_poly(terms: dict, names: tuple) -> str:
    if not terms:
        return "0"
    parts = []
    for e, c in sorted(terms.items(), reverse=True):
        mono = "".join(
            (names[i] if k == 1 else f"{names[i]}^{k}") for i, k in enumerate(e) if k)
        if not mono:
            parts.append(f"{c:+d}")
        elif abs(c) == 1:
            parts.append(("+" if c > 0 else "-") + mono)
        else:
            parts.append(f"{c:+d}" + mono)
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out
