"""Exact integer and rational linear algebra.

Dense arbitrary-precision matrices, Smith normal form, lattice volumes, and
products of nonzero singular values (squared), all in exact arithmetic.
Everything here is immutable and pure, so callers may parallelize freely.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


def _as_row_tuples(rows, cast):
    out = tuple(tuple(cast(x) for x in row) for row in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


@dataclass(frozen=True)
class IntMatrix:
    """Dense matrix with arbitrary-precision integer entries."""

    entries: tuple
    shape: tuple

    @staticmethod
    def from_rows(rows, cols: int | None = None) -> "IntMatrix":
        e = _as_row_tuples(rows, int)
        c = len(e[0]) if e else (cols if cols is not None else 0)
        return IntMatrix(e, (len(e), c))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @staticmethod
    def zero(r: int, c: int) -> "IntMatrix":
        return IntMatrix(tuple((0,) * c for _ in range(r)), (r, c))

    @property
    def rows(self) -> int:
        return self.shape[0]

    @property
    def cols(self) -> int:
        return self.shape[1]

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        ot = other.transpose().entries
        return IntMatrix(tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in ot)
            for row in self.entries), (self.rows, other.cols))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(tuple(tuple(a + b for a, b in zip(r1, r2))
                               for r1, r2 in zip(self.entries, other.entries)), self.shape)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(tuple(tuple(a - b for a, b in zip(r1, r2))
                               for r1, r2 in zip(self.entries, other.entries)), self.shape)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(-a for a in r) for r in self.entries), self.shape)

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(c * a for a in r) for r in self.entries), self.shape)

    def transpose(self) -> "IntMatrix":
        if not self.entries:
            return IntMatrix(tuple(() for _ in range(self.cols)), (self.cols, self.rows))
        return IntMatrix(tuple(zip(*self.entries)), (self.cols, self.rows))

    def power(self, k: int) -> "IntMatrix":
        if self.rows != self.cols:
            raise ValueError("power of non-square matrix")
        out = IntMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.entries for a in r)

    def to_rat(self) -> "RatMatrix":
        return RatMatrix(_as_row_tuples(self.entries, Fraction), self.shape)

    def columns(self, idx) -> "IntMatrix":
        idx = list(idx)
        return IntMatrix(tuple(tuple(row[j] for j in idx) for row in self.entries),
                         (self.rows, len(idx)))


@dataclass(frozen=True)
class RatMatrix:
    """Dense matrix of exact rationals (reduced fractions)."""

    entries: tuple
    shape: tuple

    @staticmethod
    def from_rows(rows, cols: int | None = None) -> "RatMatrix":
        e = _as_row_tuples(rows, Fraction)
        c = len(e[0]) if e else (cols if cols is not None else 0)
        return RatMatrix(e, (len(e), c))

    @staticmethod
    def identity(n: int) -> "RatMatrix":
        return RatMatrix.from_rows([[Fraction(int(i == j)) for j in range(n)]
                                    for i in range(n)], n)

    @staticmethod
    def zero(r: int, c: int) -> "RatMatrix":
        return RatMatrix(tuple((Fraction(0),) * c for _ in range(r)), (r, c))

    @property
    def rows(self) -> int:
        return self.shape[0]

    @property
    def cols(self) -> int:
        return self.shape[1]

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        ot = other.transpose().entries
        return RatMatrix(tuple(
            tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in ot)
            for row in self.entries), (self.rows, other.cols))

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RatMatrix(tuple(tuple(a + b for a, b in zip(r1, r2))
                               for r1, r2 in zip(self.entries, other.entries)), self.shape)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RatMatrix(tuple(tuple(a - b for a, b in zip(r1, r2))
                               for r1, r2 in zip(self.entries, other.entries)), self.shape)

    def transpose(self) -> "RatMatrix":
        if not self.entries:
            return RatMatrix(tuple(() for _ in range(self.cols)), (self.cols, self.rows))
        return RatMatrix(tuple(zip(*self.entries)), (self.cols, self.rows))

    def columns(self, idx) -> "RatMatrix":
        idx = tuple(idx)
        return RatMatrix(tuple(tuple(row[i] for i in idx) for row in self.entries),
                         (self.rows, len(idx)))

    def is_symmetric(self) -> bool:
        return self.entries == self.transpose().entries


def rat(m) -> RatMatrix:
    return m.to_rat() if isinstance(m, IntMatrix) else m


# ---------------------------------------------------------------------------
# fraction-free elimination


def bareiss_det(M: IntMatrix) -> int:
    """Exact determinant by fraction-free Gaussian elimination."""
    n = M.rows
    if n != M.cols:
        raise ValueError("determinant of non-square matrix")
    if n == 0:
        return 1
    a = [list(r) for r in M.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(M: IntMatrix) -> int:
    """Rank over Q via fraction-free elimination with full pivoting."""
    a = [list(r) for r in M.entries]
    m, n = M.rows, M.cols
    r = 0
    prev = 1
    while r < m and r < n:
        pi = pj = -1
        for i in range(r, m):
            for j in range(r, n):
                if a[i][j]:
                    pi, pj = i, j
                    break
            if pi >= 0:
                break
        if pi < 0:
            break
        a[r], a[pi] = a[pi], a[r]
        if pj != r:
            for row in a:
                row[r], row[pj] = row[pj], row[r]
        for i in range(r + 1, m):
            for j in range(r + 1, n):
                a[i][j] = (a[i][j] * a[r][r] - a[i][r] * a[r][j]) // prev
            a[i][r] = 0
        prev = a[r][r]
        r += 1
    return r


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    invariant_factors: tuple


def _sym_div(a: int, p: int):
    """Quotient q with |a - q p| <= |p|/2."""
    q, r = divmod(a, p)   # r has the sign of p
    if 2 * abs(r) > abs(p):
        q += 1            # a = (q+1) p + (r - p), and |r - p| < |p|/2
    return q


def _snf_core(M: IntMatrix, want_u: bool, want_v: bool, want_uinv: bool,
              modulus: int | None = None):
    """Diagonalize by unimodular row/column operations.

    Returns (diag, U, V, Uinv) where U M V = D, with the requested transform
    matrices as lists (None otherwise).  With a modulus, entries are kept in
    the symmetric range; only determinantal-divisor gcds with the modulus are
    then meaningful (transforms must not be requested).
    """
    m, n = M.rows, M.cols
    a = [list(r) for r in M.entries]
    U = [[int(i == j) for j in range(m)] for i in range(m)] if want_u else None
    Uinv = [[int(i == j) for j in range(m)] for i in range(m)] if want_uinv else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if want_v else None
    if modulus is not None and (want_u or want_v or want_uinv):
        raise ValueError("modular reduction loses the transforms")

    def reduce_mod():
        if modulus is None:
            return
        d = modulus
        for i in range(m):
            row = a[i]
            for j in range(n):
                x = row[j] % d
                if 2 * x > d:
                    x -= d
                row[j] = x

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]
        if Uinv is not None:
            for row in Uinv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, c):
        # row_dst += c * row_src
        rd, rs = a[dst], a[src]
        for j in range(n):
            if rs[j]:
                rd[j] += c * rs[j]
        if U is not None:
            ud, us = U[dst], U[src]
            for j in range(m):
                ud[j] += c * us[j]
        if Uinv is not None:
            for row in Uinv:
                row[src] -= c * row[dst]

    def addmul_col(dst, src, c):
        for row in a:
            if row[src]:
                row[dst] += c * row[src]
        if V is not None:
            for row in V:
                row[dst] += c * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        if U is not None:
            U[i] = [-x for x in U[i]]
        if Uinv is not None:
            for row in Uinv:
                row[i] = -row[i]

    t = 0
    while t < min(m, n):
        # pick the nonzero entry of minimal magnitude as pivot
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                x = row[j]
                if x:
                    if best is None or abs(x) < best[0]:
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)

        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, m):
                x = a[i][t]
                if x:
                    q = _sym_div(x, a[t][t])
                    if q:
                        addmul_row(i, t, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            if dirty:
                continue
            # clear row t
            for j in range(t + 1, n):
                x = a[t][j]
                if x:
                    q = _sym_div(x, a[t][t])
                    if q:
                        addmul_col(j, t, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # pivot must divide the remaining block (gives the chain)
            p = a[t][t]
            offender = None
            for i in range(t + 1, m):
                row = a[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            addmul_row(t, offender, 1)
        if a[t][t] < 0:
            negate_row(t)
        reduce_mod()
        t += 1

    diag = [a[i][i] for i in range(min(m, n))]
    return diag, U, V, Uinv


def smith_normal_form(M: IntMatrix) -> SmithDecomposition:
    """U M V = D with U, V unimodular, D diagonal, divisibility chain."""
    diag, U, V, _ = _snf_core(M, want_u=True, want_v=True, want_uinv=False)
    m, n = M.rows, M.cols
    d_rows = [[0] * n for _ in range(m)]
    for i, d in enumerate(diag):
        d_rows[i][i] = d
    factors = tuple(d for d in diag if d != 0)
    return SmithDecomposition(
        U=IntMatrix.from_rows(U), D=IntMatrix.from_rows(d_rows),
        V=IntMatrix.from_rows(V), invariant_factors=factors)


def invariant_factors(M: IntMatrix) -> tuple:
    """Nonzero invariant factors of M, fastest available route.

    For a square nonsingular matrix, entries are reduced modulo |det M|
    throughout the elimination; the true determinantal divisors are then
    recovered as gcds with |det M|.  This keeps entry growth bounded on the
    large circulant matrices of cover towers.
    """
    m, n = M.rows, M.cols
    if m == n and n > 0:
        d = abs(bareiss_det(M))
        if d == 1:
            return (1,) * n
        if d > 1:
            diag, _, _, _ = _snf_core(M, False, False, False, modulus=d)
            factors = []
            prev_dd = 1
            run = 1
            for g in diag:
                run = (run * (g % d)) % d
                dd = math.gcd(run, d)
                if dd == 0:
                    dd = d
                factors.append(dd // prev_dd)
                prev_dd = dd
            return tuple(factors)
    diag, _, _, _ = _snf_core(M, False, False, False)
    return tuple(x for x in diag if x != 0)


def cokernel_invariants(M: IntMatrix):
    """Structure of coker(M) = Z^rows / M Z^cols.

    Returns (free_rank, torsion_factors) with the torsion factors forming a
    divisibility chain, each > 1.
    """
    facs = invariant_factors(M)
    free_rank = M.rows - len(facs)
    return free_rank, tuple(f for f in facs if f > 1)


def snf_adapted_target_basis(M: IntMatrix):
    """(diagonal, U^{-1}) for U M V = D: the columns of U^{-1} are a basis of
    the target lattice adapted to the image (column i spans direction of the
    i-th invariant factor)."""
    diag, _, _, Uinv = _snf_core(M, want_u=False, want_v=False, want_uinv=True)
    return diag, IntMatrix.from_rows(Uinv)


def kernel_basis(M: IntMatrix) -> IntMatrix:
    """Columns form a basis of the (saturated) integer kernel lattice."""
    diag, _, V, _ = _snf_core(M, want_u=False, want_v=True, want_uinv=False)
    r = sum(1 for d in diag if d != 0)
    V = IntMatrix.from_rows(V)
    return V.columns(range(r, M.cols))


def image_basis(M: IntMatrix) -> IntMatrix:
    """Columns form a basis of the image lattice M(Z^cols)."""
    diag, _, _, Uinv = _snf_core(M, want_u=False, want_v=False, want_uinv=True)
    r = sum(1 for d in diag if d != 0)
    Uinv = IntMatrix.from_rows(Uinv)
    cols = []
    for i in range(r):
        cols.append(tuple(Uinv[(k, i)] * diag[i] for k in range(M.rows)))
    return IntMatrix(tuple(zip(*cols)) if cols else tuple(() for _ in range(M.rows)),
                     (M.rows, r))


# ---------------------------------------------------------------------------
# rational solvers


def rat_det(M: RatMatrix) -> Fraction:
    n = M.rows
    if n != M.cols:
        raise ValueError("determinant of non-square matrix")
    a = [list(r) for r in M.entries]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] * inv
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return det


def rat_solve(A: RatMatrix, B: RatMatrix) -> RatMatrix:
    """Solve A X = B for square nonsingular A, exactly."""
    n = A.rows
    if A.cols != n or B.rows != n:
        raise ValueError("dimension mismatch")
    a = [list(ra) + list(rb) for ra, rb in zip(A.entries, B.entries)]
    w = n + B.cols
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            raise ValueError("singular system")
        a[k], a[piv] = a[piv], a[k]
        inv = 1 / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k]:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return RatMatrix(tuple(tuple(row[n:w]) for row in a), (n, B.cols))


def rat_inverse(A: RatMatrix) -> RatMatrix:
    return rat_solve(A, RatMatrix.identity(A.rows))


def rat_charpoly(M: RatMatrix) -> tuple:
    """Coefficients (ascending) of det(t I - M), exact, monic."""
    n = M.rows
    if n != M.cols:
        raise ValueError("characteristic polynomial of non-square matrix")
    # Faddeev-LeVerrier
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = RatMatrix.identity(n)
    for k in range(1, n + 1):
        Mk = M @ Mk
        trace = sum(Mk[(i, i)] for i in range(n))
        c = -trace / k
        coeffs[n - k] = c
        if k < n:
            Mk = _add_scalar(Mk, c)
    return tuple(coeffs)


def _add_scalar(M: RatMatrix, c: Fraction) -> RatMatrix:
    rows = [list(r) for r in M.entries]
    for i in range(M.rows):
        rows[i][i] += c
    return RatMatrix.from_rows(rows)


def is_positive_definite(G: RatMatrix) -> bool:
    """Symmetric with all leading principal minors > 0."""
    if G.rows != G.cols or not G.is_symmetric():
        return False
    for k in range(1, G.rows + 1):
        mk = RatMatrix.from_rows([row[:k] for row in G.entries[:k]])
        if rat_det(mk) <= 0:
            return False
    return True


# ---------------------------------------------------------------------------
# metrized lattices


@dataclass(frozen=True)
class Lattice:
    """Sublattice of (Q^ambient_dim, gram) spanned by the given basis."""

    ambient_dim: int
    basis: tuple        # tuple of rational vectors
    gram: RatMatrix     # ambient inner product

    def __post_init__(self):
        if self.gram.rows != self.ambient_dim:
            raise ValueError("gram size does not match ambient dimension")
        if not is_positive_definite(self.gram):
            raise ValueError("gram matrix is not positive definite")
        for v in self.basis:
            if len(v) != self.ambient_dim:
                raise ValueError("basis vector of wrong length")

    @staticmethod
    def standard(n: int) -> "Lattice":
        return Lattice(n, tuple(tuple(Fraction(int(i == j)) for j in range(n))
                                for i in range(n)), RatMatrix.identity(n))

    def basis_matrix(self) -> RatMatrix:
        cols = [tuple(Fraction(x) for x in v) for v in self.basis]
        return RatMatrix(tuple(zip(*cols)) if cols else
                         tuple(() for _ in range(self.ambient_dim)),
                         (self.ambient_dim, len(cols)))


def gram_of(B: RatMatrix, G: RatMatrix) -> RatMatrix:
    return B.transpose() @ G @ B


def lattice_volume_sq(L: Lattice) -> Fraction:
    """det of the Gram matrix of the basis; equals vol(L)^2."""
    B = L.basis_matrix()
    v = rat_det(gram_of(B, L.gram))
    if L.basis and v <= 0:
        raise ValueError("basis is not linearly independent")
    return v if L.basis else Fraction(1)


def detprime_sq(f: IntMatrix, gram_src: RatMatrix, gram_dst: RatMatrix) -> Fraction:
    """Product of the nonzero eigenvalues of f* f; equals det'(f)^2.

    The adjoint is taken with respect to the given inner products.  Computed
    exactly as the magnitude of the lowest nonzero coefficient of the
    characteristic polynomial of f* f.
    """
    if f.cols != gram_src.rows or f.rows != gram_dst.rows:
        raise ValueError("gram dimensions do not match the map")
    if not (is_positive_definite(gram_src) and is_positive_definite(gram_dst)):
        raise ValueError("gram matrices must be positive definite")
    frat = f.to_rat()
    fsf = rat_solve(gram_src, frat.transpose() @ gram_dst @ frat)
    return detprime_sq_endo(fsf)


def detprime_sq_endo(M: RatMatrix) -> Fraction:
    """|product of nonzero eigenvalues| of a rational endomorphism."""
    if M.rows == 0:
        return Fraction(1)
    for c in rat_charpoly(M):
        if c != 0:
            return abs(c)
    raise AssertionError("monic charpoly cannot vanish identically")
