"""Metrized cochain complexes of free Z-modules.

A complex carries per-degree inner products (rational Gram matrices, identity
by default).  Cohomology is computed with exact integer/rational arithmetic:
torsion via Smith normal form, regulators as squared covolumes of harmonic
representatives.  The module also checks the two determinant identities tying
regulators, torsion and the det' of the differentials / Laplacians, builds
the metrized dual, and verifies the group-action lower bound on regulators.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .intlinalg import (
    IntMatrix,
    RatMatrix,
    detprime_sq,
    detprime_sq_endo,
    image_basis,
    invariant_factors,
    is_positive_definite,
    kernel_basis,
    rank,
    rat_det,
    rat_inverse,
    rat_solve,
    snf_adapted_target_basis,
)


@dataclass(frozen=True)
class MetrizedComplex:
    """0 → Z^{dims[0]} → … → Z^{dims[n]} → 0 with d_j: degree j → j+1."""

    dims: tuple
    differentials: tuple   # IntMatrix d_0 .. d_{n-1}
    grams: tuple           # RatMatrix per degree

    @staticmethod
    def make(dims, differentials, grams=None) -> "MetrizedComplex":
        dims = tuple(int(d) for d in dims)
        diffs = tuple(differentials)
        if len(diffs) != max(len(dims) - 1, 0):
            raise ValueError("need exactly one differential per adjacent pair")
        for j, d in enumerate(diffs):
            if (d.rows, d.cols) != (dims[j + 1], dims[j]):
                raise ValueError(f"d_{j} has shape {(d.rows, d.cols)}, "
                                 f"expected {(dims[j + 1], dims[j])}")
        for j in range(len(diffs) - 1):
            if not (diffs[j + 1] @ diffs[j]).is_zero():
                raise ValueError(f"d_{j + 1} d_{j} != 0")
        if grams is None:
            grams = tuple(RatMatrix.identity(n) for n in dims)
        else:
            grams = tuple(grams)
            if len(grams) != len(dims):
                raise ValueError("one gram per degree required")
            for j, g in enumerate(grams):
                if (g.rows, g.cols) != (dims[j], dims[j]):
                    raise ValueError(f"gram {j} has wrong shape")
                if not (g.is_symmetric() and is_positive_definite(g)):
                    raise ValueError(f"gram {j} is not symmetric positive definite")
        return MetrizedComplex(dims, diffs, grams)

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def diff(self, j: int):
        """d_j, or None outside 0..top-1."""
        if 0 <= j < len(self.differentials):
            return self.differentials[j]
        return None


@dataclass(frozen=True)
class HomologySummary:
    degree: int
    free_rank: int
    torsion_factors: tuple    # divisibility chain, each > 1
    regulator_sq: Fraction    # exact squared covolume, 1 when free part is 0

    @property
    def torsion_order(self) -> int:
        out = 1
        for f in self.torsion_factors:
            out *= f
        return out


@lru_cache(maxsize=256)
def _diff_rank(C: MetrizedComplex, j: int) -> int:
    d = C.diff(j)
    return rank(d) if d is not None else 0


@lru_cache(maxsize=256)
def cohomology(C: MetrizedComplex, j: int) -> HomologySummary:
    """H^j = ker d_j / im d_{j-1} with its exact squared regulator.

    The regulator is the covolume of the free part of H^j embedded in the
    harmonic space ker d_j ∩ (im d_{j-1})^⊥, squared; orthogonality is with
    respect to the degree-j gram.
    """
    if not 0 <= j <= C.top:
        raise ValueError(f"degree {j} out of range 0..{C.top}")
    dprev = C.diff(j - 1)
    dnext = C.diff(j)
    rank_prev = _diff_rank(C, j - 1)
    rank_next = _diff_rank(C, j)
    # torsion of ker/im equals torsion of Z^dims[j]/im: the kernel lattice is
    # saturated and contains the image
    torsion = tuple(f for f in (invariant_factors(dprev) if dprev is not None else ())
                    if f > 1)
    free_rank = C.dims[j] - rank_prev - rank_next
    if free_rank == 0:
        return HomologySummary(j, 0, torsion, Fraction(1))

    K = kernel_basis(dnext) if dnext is not None else IntMatrix.identity(C.dims[j])
    G = C.grams[j]
    if rank_prev == 0:
        F = K.to_rat()
    else:
        B = image_basis(dprev)
        # coordinates of the image inside the kernel lattice (exact integers:
        # the kernel lattice is saturated)
        Krat, Brat = K.to_rat(), B.to_rat()
        S = rat_solve(Krat.transpose() @ Krat, Krat.transpose() @ Brat)
        Sint = IntMatrix.from_rows(
            [[_as_int(S[(i, k)]) for k in range(S.cols)] for i in range(S.rows)],
            cols=S.cols)
        _diag, Uinv = snf_adapted_target_basis(Sint)
        F = (K @ Uinv).columns(range(rank_prev, K.cols)).to_rat()
        # orthogonal projection away from the image sublattice
        BGB = Brat.transpose() @ G @ Brat
        coeffs = rat_solve(BGB, Brat.transpose() @ G @ F)
        F = F - Brat @ coeffs
    gram = F.transpose() @ G @ F
    reg_sq = rat_det(gram)
    if reg_sq <= 0:
        raise ArithmeticError("regulator degenerated; complex data inconsistent")
    return HomologySummary(j, free_rank, torsion, reg_sq)


def _as_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise ArithmeticError("expected integer coordinates in kernel lattice")
    return x.numerator


def cohomology_all(C: MetrizedComplex):
    return tuple(cohomology(C, j) for j in range(C.top + 1))


def laplacian(C: MetrizedComplex, j: int) -> RatMatrix:
    """Δ_j = d_j* d_j + d_{j-1} d_{j-1}*, adjoints w.r.t. the grams."""
    if not 0 <= j <= C.top:
        raise ValueError(f"degree {j} out of range 0..{C.top}")
    n = C.dims[j]
    out = RatMatrix.zero(n, n)
    dnext = C.diff(j)
    if dnext is not None:
        d = dnext.to_rat()
        out = out + rat_solve(C.grams[j], d.transpose() @ C.grams[j + 1] @ d)
    dprev = C.diff(j - 1)
    if dprev is not None:
        d = dprev.to_rat()
        dstar = rat_solve(C.grams[j - 1], d.transpose() @ C.grams[j])
        out = out + d @ dstar
    return out


@dataclass(frozen=True)
class IdentityReport:
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def _alt(values):
    """Alternating product prod values[i]^((-1)^i), exact."""
    out = Fraction(1)
    for i, v in enumerate(values):
        out = out * v if i % 2 == 0 else out / v
    return out


def check_rt_identity(C: MetrizedComplex) -> IdentityReport:
    """Alternating product of squared regulators over squared torsion orders
    against the alternating product of squared det' of the differentials.

    A general gram contributes the squared covolume det(G_j) of each lattice;
    with identity (or any unimodular-equivalent) grams the volume term is 1
    and this is the plain Reidemeister-torsion identity.
    """
    summaries = cohomology_all(C)
    lhs = _alt([s.regulator_sq for s in summaries])
    lhs /= _alt([Fraction(s.torsion_order) for s in summaries]) ** 2
    rhs = _alt([detprime_sq(C.differentials[j], C.grams[j], C.grams[j + 1])
                for j in range(C.top)] + [Fraction(1)])
    rhs *= _alt([rat_det(g) for g in C.grams])
    return IdentityReport(lhs, rhs)


def check_dlap_identity(C: MetrizedComplex) -> IdentityReport:
    """Squared alternating product of det'(d_i) against
    prod_i det'(Δ_i)^(i (-1)^(i+1))."""
    lhs = _alt([detprime_sq(C.differentials[j], C.grams[j], C.grams[j + 1])
                for j in range(C.top)] + [Fraction(1)])
    rhs = Fraction(1)
    for i in range(C.top + 1):
        if i == 0:
            continue
        dp = detprime_sq_endo(laplacian(C, i))
        e = i if i % 2 == 1 else -i
        rhs *= dp ** e if e >= 0 else Fraction(1) / dp ** (-e)
    return IdentityReport(lhs, rhs)


def dual_complex(C: MetrizedComplex) -> MetrizedComplex:
    """Hom(·, Z) with inverse grams, regraded increasingly.

    Degree j of the dual corresponds to degree top-j of C, and the squared
    regulators satisfy reg(dual, top-j) * reg(C, j) = 1 in every degree.
    """
    n = C.top
    dims = tuple(reversed(C.dims))
    diffs = tuple(C.differentials[n - 1 - j].transpose() for j in range(n))
    grams = tuple(rat_inverse(C.grams[n - j]) for j in range(n + 1))
    return MetrizedComplex.make(dims, diffs, grams)


# ---------------------------------------------------------------------------
# group actions


@dataclass(frozen=True)
class GroupActionData:
    """Generators of a finite abelian group acting on the complex.

    Each generator is a tuple of integer matrices, one per degree, commuting
    with the differentials and preserving the grams (an isometric action).
    """

    generators: tuple   # tuple of per-degree IntMatrix tuples
    order: int


def _validate_action(C: MetrizedComplex, G: GroupActionData):
    for gen in G.generators:
        if len(gen) != C.top + 1:
            raise ValueError("generator must act in every degree")
        for j, g in enumerate(gen):
            if (g.rows, g.cols) != (C.dims[j], C.dims[j]):
                raise ValueError(f"generator block at degree {j} has wrong shape")
            grat = g.to_rat()
            if grat.transpose() @ C.grams[j] @ grat != C.grams[j]:
                raise ValueError("action does not preserve the metric")
        for j, d in enumerate(C.differentials):
            if gen[j + 1] @ d != d @ gen[j]:
                raise ValueError("action does not commute with the differential")
    for a in G.generators:
        for b in G.generators:
            for ga, gb in zip(a, b):
                if ga @ gb != gb @ ga:
                    raise ValueError("only abelian actions are supported")


def _enumerate_group(C: MetrizedComplex, G: GroupActionData):
    ident = tuple(IntMatrix.identity(n) for n in C.dims)
    seen = {ident}
    frontier = [ident]
    while frontier:
        elem = frontier.pop()
        for gen in G.generators:
            nxt = tuple(g @ e for g, e in zip(gen, elem))
            if nxt not in seen:
                if len(seen) >= G.order:
                    raise ValueError("action generates more than |G| elements")
                seen.add(nxt)
                frontier.append(nxt)
    if len(seen) != G.order:
        raise ValueError(f"action generates {len(seen)} elements, |G|={G.order}")
    return seen


def _joint_eigenspaces(C: MetrizedComplex, G: GroupActionData, j: int):
    """Simultaneous eigenspaces of the generators on A^j ⊗ C.

    Returns a dict {label: complex basis matrix}; the label is the tuple of
    eigenvalue exponents (as multiples of 2π/|G|) per generator, which
    identifies the character of the abelian group.
    """
    import numpy as np

    n = C.dims[j]
    spaces = {(): np.eye(n, dtype=complex)}
    for gen in G.generators:
        g = np.array([[gen[j][(r, c)] for c in range(n)] for r in range(n)],
                     dtype=complex)
        refined = {}
        for label, Q in spaces.items():
            # restriction of g to the invariant subspace spanned by Q
            R = np.linalg.lstsq(Q, g @ Q, rcond=None)[0]
            vals, vecs = np.linalg.eig(R)
            ks = np.round(np.angle(vals) * G.order / (2 * np.pi)).astype(int) % G.order
            for k in sorted(set(ks)):
                sub = Q @ vecs[:, ks == k]
                refined[label + (int(k),)] = sub
        spaces = refined
    return spaces


def _numeric_rank(M, tol=1e-8):
    import numpy as np
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    # absolute floor keeps a numerically-zero block from reporting rank 1
    scale = max(s[0], 1.0) if len(s) else 1.0
    return int((s > tol * scale).sum())


@dataclass(frozen=True)
class GActionBoundReport:
    degree: int
    isotypic_dim: int          # D of the bound
    regulator_sq: Fraction
    bound_sq: Fraction

    @property
    def holds(self) -> bool:
        return self.regulator_sq >= self.bound_sq


def verify_gaction_bound(C: MetrizedComplex, G: GroupActionData):
    """Check R^i >= (M ν |G|^5)^(-D) in every degree, squared and exact.

    M is an exact upper bound on all singular values of the differentials
    (square root of the Frobenius trace), ν bounds the basis vector lengths,
    and D is the dimension of the isotypic subspace of A^i for the characters
    occurring in H^i ⊗ C.  The character decomposition runs at floating
    precision and is confirmed against exact ranks before use.
    """
    import numpy as np

    _validate_action(C, G)
    _enumerate_group(C, G)

    M2 = Fraction(1)
    for j, d in enumerate(C.differentials):
        drat = d.to_rat()
        fsf = rat_solve(C.grams[j], drat.transpose() @ C.grams[j + 1] @ drat)
        tr = sum(fsf[(i, i)] for i in range(fsf.rows))
        M2 = max(M2, tr)
    nu2 = Fraction(1)
    for g in C.grams:
        for i in range(g.rows):
            nu2 = max(nu2, g[(i, i)])

    spaces = [_joint_eigenspaces(C, G, j) for j in range(C.top + 1)]
    diffs_np = []
    for j, d in enumerate(C.differentials):
        diffs_np.append(np.array(
            [[d[(r, c)] for c in range(d.cols)] for r in range(d.rows)],
            dtype=complex))

    # per degree and character: dim, rank of d_j on the eigenspace
    reports = []
    for i in range(C.top + 1):
        labels = set(spaces[i])
        dims_here = {lab: spaces[i][lab].shape[1] for lab in labels}
        if sum(dims_here.values()) != C.dims[i]:
            raise ArithmeticError("eigenspace dimensions do not add up")
        rank_next = {lab: _numeric_rank(diffs_np[i] @ spaces[i][lab])
                     for lab in labels} if i < C.top else {lab: 0 for lab in labels}
        rank_prev = {lab: 0 for lab in labels}
        if i > 0:
            for lab, Q in spaces[i - 1].items():
                if lab in rank_prev:
                    rank_prev[lab] = _numeric_rank(diffs_np[i - 1] @ Q)
        if i < C.top and sum(rank_next.values()) != _diff_rank(C, i):
            raise ArithmeticError("character ranks disagree with the exact rank")
        summary = cohomology(C, i)
        mult = {lab: dims_here[lab] - rank_next[lab] - rank_prev.get(lab, 0)
                for lab in labels}
        if sum(mult.values()) != summary.free_rank:
            raise ArithmeticError("character multiplicities disagree with free rank")
        D = sum(dims_here[lab] for lab in labels if mult[lab] > 0)
        bound_sq = Fraction(1) / (M2 * nu2 * G.order ** 10) ** D
        reports.append(GActionBoundReport(i, D, summary.regulator_sq, bound_sq))
    return tuple(reports)


# ---------------------------------------------------------------------------
# I/O


def _parse_int(x) -> int:
    if isinstance(x, bool):
        raise ValueError("boolean is not a matrix entry")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        return int(x)
    raise ValueError(f"not an integer entry: {x!r}")


def _parse_frac(x) -> Fraction:
    if isinstance(x, bool):
        raise ValueError("boolean is not a matrix entry")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise ValueError(f"not a rational entry: {x!r}")


def complex_from_dict(doc: dict) -> MetrizedComplex:
    """Build a complex from {"dims": [...], "differentials": [[[...]]],
    "grams": optional}.  Large entries may be given as decimal strings;
    gram entries may be "p/q" strings."""
    try:
        dims = [int(x) for x in doc["dims"]]
        diffs = []
        for j, mat in enumerate(doc["differentials"]):
            rows = [[_parse_int(x) for x in row] for row in mat]
            diffs.append(IntMatrix.from_rows(rows, cols=dims[j]))
        grams = None
        if "grams" in doc and doc["grams"] is not None:
            grams = []
            for j, mat in enumerate(doc["grams"]):
                rows = [[_parse_frac(x) for x in row] for row in mat]
                grams.append(RatMatrix.from_rows(rows, cols=dims[j]))
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise ValueError(f"bad complex document: {exc}") from exc
    return MetrizedComplex.make(dims, diffs, grams)


def load_complex(path) -> MetrizedComplex:
    with open(path, "r", encoding="utf-8") as fh:
        return complex_from_dict(json.load(fh))
