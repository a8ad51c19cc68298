import random
from fractions import Fraction

import pytest

from torsiongrowth.intlinalg import (
    IntMatrix, Lattice, RatMatrix, bareiss_det, cokernel_invariants,
    detprime_sq, detprime_sq_endo, image_basis, invariant_factors,
    is_positive_definite, kernel_basis, lattice_volume_sq, rank, rat_charpoly,
    rat_det, rat_inverse, rat_solve, smith_normal_form,
    snf_adapted_target_basis,
)


def rand_mat(rng, r, c, lo=-9, hi=9):
    return IntMatrix.from_rows([[rng.randint(lo, hi) for _ in range(c)]
                                for _ in range(r)], c)


def test_det_small():
    M = IntMatrix.from_rows([[1, 2], [3, 4]])
    assert bareiss_det(M) == -2
    assert bareiss_det(IntMatrix.identity(5)) == 1
    assert bareiss_det(IntMatrix.from_rows([[0]])) == 0


def test_det_matches_expansion_fuzz():
    rng = random.Random(7)

    def cof(rows):
        if len(rows) == 1:
            return rows[0][0]
        return sum((-1) ** j * rows[0][j]
                   * cof([r[:j] + r[j + 1:] for r in rows[1:]])
                   for j in range(len(rows)))

    for _ in range(50):
        n = rng.randint(1, 5)
        M = rand_mat(rng, n, n)
        assert bareiss_det(M) == cof([list(r) for r in M.entries])


def test_smith_normal_form_properties():
    rng = random.Random(11)
    for _ in range(60):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        M = rand_mat(rng, r, c)
        snf = smith_normal_form(M)
        assert abs(bareiss_det(snf.U)) == 1 and abs(bareiss_det(snf.V)) == 1
        assert snf.U @ M @ snf.V == snf.D
        diag = [snf.D[(i, i)] for i in range(min(r, c))]
        assert all(d >= 0 for d in diag)
        for a, b in zip(diag, diag[1:]):
            if b:
                assert a != 0 and b % a == 0
        assert snf.invariant_factors == tuple(d for d in diag if d)
        assert invariant_factors(M) == snf.invariant_factors


def test_cokernel_and_kernel():
    M = IntMatrix.from_rows([[2, 0], [0, 6]])
    free, tors = cokernel_invariants(M)
    assert free == 0 and tors == (2, 6)
    row = IntMatrix.from_rows([[1, 1, 1]])
    K = kernel_basis(row)
    assert K.cols == 2
    assert (row @ K).is_zero()


def test_kernel_is_saturated():
    # kernel of [2 -2] is spanned by (1, 1), not (2, 2)
    K = kernel_basis(IntMatrix.from_rows([[2, -2]]))
    assert sorted(abs(K[(i, 0)]) for i in range(2)) == [1, 1]


def test_rank_and_image():
    M = IntMatrix.from_rows([[1, 2, 3], [2, 4, 6], [0, 0, 1]])
    assert rank(M) == 2
    assert image_basis(M).cols == 2


def test_image_spans_column_space():
    rng = random.Random(23)
    for _ in range(40):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        M = rand_mat(rng, r, c, -5, 5)
        B = image_basis(M)
        assert B.cols == rank(M)
        # every column of M is an integer combination of the image basis
        if B.cols:
            X = rat_solve(gram(B), B.to_rat().transpose() @ M.to_rat())
            assert all(x.denominator == 1 for row in X.entries for x in row)
            assert B.to_rat() @ X == M.to_rat()


def gram(B):
    Br = B.to_rat()
    return Br.transpose() @ Br


def test_rat_solve_and_inverse():
    A = RatMatrix.from_rows([[Fraction(2), Fraction(1)],
                             [Fraction(1), Fraction(1)]])
    assert A @ rat_inverse(A) == RatMatrix.identity(2)
    b = RatMatrix.from_rows([[Fraction(3)], [Fraction(2)]])
    assert A @ rat_solve(A, b) == b


def test_rat_solve_empty_system_shape():
    B = RatMatrix(tuple(), (0, 3))
    X = rat_solve(RatMatrix(tuple(), (0, 0)), B)
    assert X.shape == (0, 3)


def test_charpoly():
    A = RatMatrix.from_rows([[Fraction(2), Fraction(1)],
                             [Fraction(1), Fraction(1)]])
    # t^2 - 3 t + 1
    assert rat_charpoly(A) == (Fraction(1), Fraction(-3), Fraction(1))


def test_positive_definite():
    assert is_positive_definite(RatMatrix.from_rows(
        [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(2)]]))
    assert not is_positive_definite(RatMatrix.from_rows(
        [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(1)]]))


def test_lattice_volume():
    assert lattice_volume_sq(Lattice.standard(3)) == 1
    L = Lattice(2, ((Fraction(2), Fraction(0)),), RatMatrix.identity(2))
    assert lattice_volume_sq(L) == 4


def test_detprime_sq():
    f = IntMatrix.from_rows([[2, 0], [0, 0]])
    assert detprime_sq(f, RatMatrix.identity(2), RatMatrix.identity(2)) == 4
    assert detprime_sq_endo(RatMatrix.identity(3)) == 1


def test_snf_adapted_target_basis():
    rng = random.Random(3)
    for _ in range(30):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        M = rand_mat(rng, r, c, -5, 5)
        diag, Uinv = snf_adapted_target_basis(M)
        assert abs(bareiss_det(Uinv)) == 1
        assert len(diag) == min(r, c)


def test_shape_mismatch_raises():
    with pytest.raises(ValueError):
        IntMatrix.identity(2) + IntMatrix.identity(3)
