"""Cochain complexes over Z[t^±1] and their finite cyclic covers.

A tower complex presents an infinite cyclic family: substituting the N-cycle
permutation matrix for t produces the metrized complex of the N-fold cover
K_N, whose torsion is computed exactly.  The module also evaluates the
combinatorial L²-torsion τ² from the Laurent Laplacians and checks the
predicted growth rate of torsion against it.
"""
from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .complexes import HomologySummary, MetrizedComplex, cohomology_all
from .intlinalg import (
    IntMatrix,
    bareiss_det,
    cokernel_invariants,
    image_basis,
    kernel_basis,
    rat_inverse,
    rat_solve,
    smith_normal_form,
)
from .polynomials import (
    IntPoly,
    LaurentPoly,
    charpoly,
    log_mahler_univariate,
    mahler_multivariate_estimate,
    strip_cyclotomic_factors,
)


@dataclass(frozen=True)
class LaurentMatrix:
    nvars: int
    entries: tuple   # rows of LaurentPoly
    shape: tuple

    @staticmethod
    def from_rows(nvars: int, rows, cols: int | None = None) -> "LaurentMatrix":
        rows = tuple(tuple(r) for r in rows)
        if rows:
            cols = len(rows[0])
            if any(len(r) != cols for r in rows):
                raise ValueError("ragged rows")
        elif cols is None:
            raise ValueError("empty matrix needs explicit column count")
        for r in rows:
            for p in r:
                if p.nvars != nvars:
                    raise ValueError("variable count mismatch")
        return LaurentMatrix(nvars, rows, (len(rows), cols))

    @staticmethod
    def identity(nvars: int, n: int) -> "LaurentMatrix":
        one = LaurentPoly.constant(nvars, 1)
        zero = LaurentPoly.from_terms(nvars, {})
        return LaurentMatrix(nvars, tuple(
            tuple(one if i == j else zero for j in range(n)) for i in range(n)),
            (n, n))

    @property
    def rows(self) -> int:
        return self.shape[0]

    @property
    def cols(self) -> int:
        return self.shape[1]

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        zero = LaurentPoly.from_terms(self.nvars, {})
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(tuple(row))
        return LaurentMatrix(self.nvars, tuple(out), (self.rows, other.cols))

    def __add__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return LaurentMatrix(self.nvars, tuple(
            tuple(a + b for a, b in zip(r1, r2))
            for r1, r2 in zip(self.entries, other.entries)), self.shape)

    def transpose(self) -> "LaurentMatrix":
        if not self.entries:
            return LaurentMatrix(self.nvars, tuple(() for _ in range(self.cols)),
                                 (self.cols, self.rows))
        return LaurentMatrix(self.nvars, tuple(zip(*self.entries)),
                             (self.cols, self.rows))

    def bar(self) -> "LaurentMatrix":
        """Entrywise involution t ↦ t^{-1} (all variables)."""
        return LaurentMatrix(self.nvars, tuple(
            tuple(p.bar() for p in r) for r in self.entries), self.shape)

    def adjoint(self) -> "LaurentMatrix":
        """Formal adjoint for the group-ring inner product: conj transpose."""
        return self.bar().transpose()

    def is_zero(self) -> bool:
        return all(p.is_zero() for r in self.entries for p in r)

    def det(self) -> LaurentPoly:
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        memo = {}

        def minor(rows_left, cols_left):
            if not rows_left:
                return LaurentPoly.constant(self.nvars, 1)
            key = (rows_left, cols_left)
            if key in memo:
                return memo[key]
            i = rows_left[0]
            rest = rows_left[1:]
            acc = LaurentPoly.from_terms(self.nvars, {})
            for s, j in enumerate(cols_left):
                p = self.entries[i][j]
                if p.is_zero():
                    continue
                sub = minor(rest, cols_left[:s] + cols_left[s + 1:])
                term = p * sub
                acc = acc + (term if s % 2 == 0 else -term)
            memo[key] = acc
            return acc

        return minor(tuple(range(n)), tuple(range(n)))


@dataclass(frozen=True)
class TowerComplex:
    nvars: int
    dims: tuple
    differentials: tuple   # LaurentMatrix per adjacent pair

    @staticmethod
    def make(nvars, dims, differentials) -> "TowerComplex":
        dims = tuple(int(d) for d in dims)
        diffs = tuple(differentials)
        if len(diffs) != max(len(dims) - 1, 0):
            raise ValueError("need one differential per adjacent degree pair")
        for j, d in enumerate(diffs):
            if d.nvars != nvars:
                raise ValueError("variable count mismatch")
            if (d.rows, d.cols) != (dims[j + 1], dims[j]):
                raise ValueError(f"d_{j} has wrong shape")
        for j in range(len(diffs) - 1):
            if not (diffs[j + 1] @ diffs[j]).is_zero():
                raise ValueError(f"d_{j + 1} d_{j} != 0 in the group ring")
        return TowerComplex(nvars, dims, diffs)

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def diff(self, j: int):
        if 0 <= j < len(self.differentials):
            return self.differentials[j]
        return None


def circle_complex(A: IntMatrix) -> TowerComplex:
    """Mapping-torus complex of a unimodular monodromy: 0 → R^n →^{1-tA} R^n → 0
    over R = Z[t^±1]."""
    if A.rows != A.cols:
        raise ValueError("square matrix required")
    n = A.rows
    if abs(bareiss_det(A)) != 1:
        raise ValueError("monodromy must be unimodular (det ±1)")
    t = LaurentPoly.var(1, 0)
    one = LaurentPoly.constant(1, 1)
    zero = LaurentPoly.from_terms(1, {})
    rows = []
    for i in range(n):
        rows.append(tuple(
            (one if i == j else zero) - t * LaurentPoly.constant(1, A[(i, j)])
            for j in range(n)))
    d0 = LaurentMatrix(1, tuple(rows), (n, n))
    return TowerComplex.make(1, (n, n), (d0,))


def knot_exterior_complex(delta: IntPoly) -> TowerComplex:
    """Two-generator one-relator presentation of a knot exterior with
    Alexander polynomial delta (|delta(1)| = 1 required)."""
    if delta.is_zero() or abs(delta(1)) != 1:
        raise ValueError("|delta(1)| must be 1")
    tinv = LaurentPoly.var(1, 0, -1)
    one = LaurentPoly.constant(1, 1)
    dbar = LaurentPoly.from_terms(1, {(-i,): c for i, c in enumerate(delta.coeffs)})
    d0 = LaurentMatrix.from_rows(1, [[tinv - one], [tinv - one]])
    d1 = LaurentMatrix.from_rows(1, [[dbar, -dbar]])
    return TowerComplex.make(1, (1, 2, 1), (d0, d1))


def finite_cover(T: TowerComplex, N: int) -> MetrizedComplex:
    """K_N: substitute the N-cycle shift for t, blowing each entry up to an
    N×N circulant block; the cell basis is orthonormal (identity grams)."""
    if T.nvars != 1:
        raise ValueError("finite covers need a single deck variable")
    if N < 1:
        raise ValueError("N must be >= 1")
    diffs = []
    for d in T.differentials:
        big = [[0] * (d.cols * N) for _ in range(d.rows * N)]
        for r in range(d.rows):
            for c in range(d.cols):
                p = d.entries[r][c]
                if p.is_zero():
                    continue
                col0 = [0] * N
                for e, coef in p.terms:
                    col0[e[0] % N] += coef
                for b in range(N):
                    for k, coef in enumerate(col0):
                        if coef:
                            big[r * N + (b + k) % N][c * N + b] += coef
        diffs.append(IntMatrix.from_rows(big, cols=d.cols * N))
    return MetrizedComplex.make(tuple(n * N for n in T.dims), diffs)


def laplacian_matrix(T: TowerComplex, j: int) -> LaurentMatrix:
    """Δ_j(t) = d_j* d_j + d_{j-1} d_{j-1}* over the group ring."""
    if not 0 <= j <= T.top:
        raise ValueError("degree out of range")
    n = T.dims[j]
    out = LaurentMatrix.from_rows(
        T.nvars, [[LaurentPoly.from_terms(T.nvars, {})] * n for _ in range(n)],
        cols=n) if n else LaurentMatrix(T.nvars, (), (0, 0))
    dnext = T.diff(j)
    if dnext is not None:
        out = out + dnext.adjoint() @ dnext
    dprev = T.diff(j - 1)
    if dprev is not None:
        out = out + dprev @ dprev.adjoint()
    return out


def l2_acyclic(T: TowerComplex):
    """Per-degree test that det Δ_j(z) is not identically zero."""
    return tuple(not laplacian_matrix(T, j).det().is_zero()
                 for j in range(T.top + 1))


def tau2(T: TowerComplex, grid: int = 256) -> float:
    """Combinatorial L²-torsion: ½ Σ_j (-1)^(j+1) j · ∫ log|det Δ_j(z)|.

    The torus integral is the log Mahler measure; exact Kronecker detection
    applies in one variable, quadrature with the given grid otherwise.
    """
    out = 0.0
    for j in range(T.top + 1):
        if j == 0:
            continue
        det = laplacian_matrix(T, j).det()
        if det.is_zero():
            raise ValueError(f"not L2-acyclic: det Δ_{j} vanishes identically")
        if T.nvars == 1:
            integral = log_mahler_univariate(det)
        else:
            integral, _ = mahler_multivariate_estimate(det, grid=grid)
        out += 0.5 * (-1) ** (j + 1) * j * integral
    return out


@dataclass(frozen=True)
class TorsionSequencePoint:
    N: int
    log_T: float                  # Σ (-1)^i log|H^i_tors|
    log_T_over_index: float
    per_degree: tuple             # HomologySummary per degree
    regulator_logs: tuple         # log R^i per degree

    @property
    def torsion_orders(self):
        return tuple(s.torsion_order for s in self.per_degree)


def _log_fraction(x: Fraction) -> float:
    return math.log(x.numerator) - math.log(x.denominator)


def _sequence_point(T: TowerComplex, N: int) -> TorsionSequencePoint:
    summaries = cohomology_all(finite_cover(T, N))
    log_t = sum((-1) ** i * math.log(s.torsion_order)
                for i, s in enumerate(summaries))
    reg_logs = tuple(_log_fraction(s.regulator_sq) / 2 for s in summaries)
    return TorsionSequencePoint(N, log_t, log_t / N, tuple(summaries), reg_logs)


def torsion_sequence(T: TowerComplex, n_values, workers: int | None = None):
    """Exact torsion data of K_N for each N, in increasing order of N.

    With workers > 1 the per-N computations run in a process pool; the output
    order is deterministic either way.
    """
    ns = sorted(set(int(n) for n in n_values))
    if any(n < 1 for n in ns):
        raise ValueError("cover indices must be >= 1")
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            points = list(pool.map(_sequence_point, [T] * len(ns), ns))
    else:
        points = [_sequence_point(T, n) for n in ns]
    return points


@dataclass(frozen=True)
class PapproxReport:
    tau2: float
    n_max: int
    residual: float               # log T(K_N)/N + τ²
    max_reg_log_over_n: float
    tol: float
    failures: tuple

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_papprox(T: TowerComplex, n_max: int, tol: float = 0.05,
                   workers: int | None = None) -> PapproxReport:
    """Check the torsion growth limit log T(K_N)/N → -τ² and the regulator
    decay log R^i(K_N)/N → 0 at N = n_max."""
    if not all(l2_acyclic(T)):
        raise ValueError("tower is not L2-acyclic")
    tau = tau2(T)
    point = torsion_sequence(T, [n_max], workers=workers)[0]
    residual = point.log_T_over_index + tau
    max_reg = max((abs(r) / n_max for r in point.regulator_logs), default=0.0)
    failures = []
    if abs(residual) > tol:
        failures.append(f"torsion residual {residual:+.4f} exceeds {tol} at N={n_max}")
    for i, r in enumerate(point.regulator_logs):
        if abs(r) / n_max > tol:
            failures.append(f"regulator log R^{i}/N = {r / n_max:+.4f} exceeds {tol}")
    return PapproxReport(tau, n_max, residual, max_reg, tol, tuple(failures))


# ---------------------------------------------------------------------------
# cokernel sandwich for monodromy with eigenvalue 1


@dataclass(frozen=True)
class SandwichReport:
    N: int
    torsion_order: int
    lower: int
    upper: int

    @property
    def holds(self) -> bool:
        return self.lower <= self.torsion_order <= self.upper


def coker_sandwich_check(A: IntMatrix, N: int) -> SandwichReport:
    """Sandwich the torsion of coker(1-A^N) when 1 is an eigenvalue of A.

    Lower bound: |det| of Σ A^k restricted to the image of 1-A.  Upper bound:
    |det| of the map 1-A^N induced on the quotient by ker(1-A).  Requires the
    eigenvalue 1 to be simple and all other eigenvalues off roots of unity.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    n = A.rows
    one = IntMatrix.identity(n)
    cp = charpoly(A)
    quot = cp.try_divide(IntPoly.from_coeffs([-1, 1]))
    if quot is None:
        raise ValueError("1 is not an eigenvalue of A")
    if quot.degree == 0:
        raise ValueError("no eigenvalues besides roots of unity; quotient block empty")
    residual, _k, orders = strip_cyclotomic_factors(quot)
    if residual.degree != quot.degree:
        raise ValueError("eigenvalues other than 1 must avoid roots of unity")

    M_N = one - A.power(N)
    _free, tors = cokernel_invariants(M_N)
    tors_order = 1
    for f in tors:
        tors_order *= f

    # lower: det of C = 1 + A + ... + A^(N-1) on im(1-A)
    B = image_basis(one - A)
    C_mat = IntMatrix.identity(n)
    power = one
    for _ in range(N - 1):
        power = power @ A
        C_mat = C_mat + power
    Brat = B.to_rat()
    X = rat_solve(Brat.transpose() @ Brat, Brat.transpose() @ (C_mat @ B).to_rat())
    lower = _int_det_of_rat(X)

    # upper: induced map on Z^n / ker(1-A), in an SNF-adapted basis
    K = kernel_basis(one - A)
    snf = smith_normal_form(K)
    P = snf.U
    Pinv_rat = rat_inverse(P.to_rat())
    Pinv = IntMatrix.from_rows(
        [[int(Pinv_rat[(i, j)]) for j in range(n)] for i in range(n)], cols=n)
    Mp = P @ M_N @ Pinv
    k = K.cols
    Q = IntMatrix.from_rows(
        [[Mp[(i, j)] for j in range(k, n)] for i in range(k, n)], cols=n - k)
    upper = abs(bareiss_det(Q))
    return SandwichReport(N, tors_order, abs(lower), upper)


def _int_det_of_rat(X) -> int:
    from .intlinalg import rat_det
    d = rat_det(X)
    if d.denominator != 1:
        raise ArithmeticError("expected an integer determinant")
    return d.numerator


# ---------------------------------------------------------------------------
# I/O


def tower_from_dict(doc: dict) -> TowerComplex:
    """Build a tower from {"m":1, "dims":[...], "differentials": entries as
    lists of {"exp":[k], "coef":c}}."""
    try:
        m = int(doc["m"])
        dims = [int(x) for x in doc["dims"]]
        diffs = []
        for j, mat in enumerate(doc["differentials"]):
            rows = []
            for row in mat:
                rows.append(tuple(
                    LaurentPoly.from_terms(
                        m, [(tuple(term["exp"]), int(term["coef"]))
                            for term in entry])
                    for entry in row))
            diffs.append(LaurentMatrix.from_rows(m, rows, cols=dims[j]))
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise ValueError(f"bad tower document: {exc}") from exc
    return TowerComplex.make(m, dims, diffs)


def load_tower(path) -> TowerComplex:
    with open(path, "r", encoding="utf-8") as fh:
        return tower_from_dict(json.load(fh))


def write_sequence_csv(path, points, tau: float | None):
    """CSV with exact decimal torsion orders plus float logs.

    Columns: N, index, one torsion-order column per degree, log_T,
    log_T_over_N, max_log_regulator_over_N, predicted_minus_tau2.
    """
    degrees = range(len(points[0].per_degree)) if points else range(0)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["N", "index"] + [f"torsion_order_{i}" for i in degrees]
                   + ["log_T", "log_T_over_N", "max_log_regulator_over_N",
                      "predicted_minus_tau2"])
        for idx, p in enumerate(points):
            max_reg = max((abs(r) / p.N for r in p.regulator_logs), default=0.0)
            pred = "" if tau is None else repr(-p.log_T_over_index - tau)
            w.writerow([p.N, idx] + [str(t) for t in p.torsion_orders]
                       + [repr(p.log_T), repr(p.log_T_over_index),
                          repr(max_reg), pred])


def read_sequence_csv(path):
    """Parse the CSV back to (N, torsion order tuple, log_T) rows, exactly."""
    out = []
    with open(path, "r", newline="", encoding="utf-8") as fh:
        rdr = csv.reader(fh)
        header = next(rdr)
        torsion_cols = [i for i, h in enumerate(header)
                        if h.startswith("torsion_order_")]
        for row in rdr:
            out.append((int(row[0]),
                        tuple(int(row[i]) for i in torsion_cols),
                        float(row[header.index("log_T")])))
    return out
