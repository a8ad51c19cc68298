import json
import math

import pytest

from torsiongrowth.complexes import cohomology_all
from torsiongrowth.intlinalg import IntMatrix
from torsiongrowth.polynomials import (
    IntPoly, LaurentPoly, branched_cover_order, charpoly,
    gelfond_lind_sequence, log_mahler,
)
from torsiongrowth.tower import (
    LaurentMatrix, TowerComplex, circle_complex, coker_sandwich_check,
    finite_cover, knot_exterior_complex, l2_acyclic, laplacian_matrix,
    load_tower, read_sequence_csv, tau2, torsion_sequence, tower_from_dict,
    verify_papprox, write_sequence_csv,
)

HYPERBOLIC = IntMatrix.from_rows([[2, 1], [1, 1]])


def test_laurent_matrix_basics():
    t = LaurentPoly.var(1, 0)
    M = LaurentMatrix.from_rows(1, [[t, LaurentPoly.constant(1, 1)],
                                    [LaurentPoly.constant(1, 0), t.bar()]])
    assert M.adjoint().adjoint() == M
    assert M.det() == t * t.bar() - LaurentPoly.constant(1, 0)
    I = LaurentMatrix.identity(1, 2)
    assert M @ I == M


def test_circle_complex_requires_unimodular():
    with pytest.raises(ValueError):
        circle_complex(IntMatrix.from_rows([[2, 0], [0, 1]]))


def test_finite_cover_matches_gelfond_lind():
    T = circle_complex(HYPERBOLIC)
    for N in range(1, 12):
        C = finite_cover(T, N)
        tors = 1
        for s in cohomology_all(C):
            tors *= s.torsion_order
        oracle = dict(gelfond_lind_sequence(HYPERBOLIC, N))[N]
        assert math.log(tors) / N == pytest.approx(oracle, abs=1e-12)


def test_tau2_circle_equals_log_mahler():
    T = circle_complex(HYPERBOLIC)
    assert tau2(T) == pytest.approx(log_mahler(charpoly(HYPERBOLIC)), abs=1e-9)


def test_tau2_trivial_circle_is_zero():
    T = circle_complex(IntMatrix.identity(1))
    assert all(l2_acyclic(T))
    assert tau2(T) == pytest.approx(0.0, abs=1e-12)


def test_non_acyclic_rejected():
    zero = LaurentMatrix.from_rows(1, [[LaurentPoly.constant(1, 0)]])
    T = TowerComplex.make(1, (1, 1), (zero,))
    assert not all(l2_acyclic(T))
    with pytest.raises(ValueError):
        tau2(T)


def test_laplacian_matrix_selfadjoint():
    T = circle_complex(HYPERBOLIC)
    for j in range(T.top + 1):
        L = laplacian_matrix(T, j)
        assert L.adjoint() == L


def test_torsion_sequence_growth():
    T = circle_complex(HYPERBOLIC)
    pts = torsion_sequence(T, range(1, 25))
    tau = tau2(T)
    assert abs(pts[-1].log_T_over_index + tau) < 0.05
    rep = verify_papprox(T, 24)
    assert rep.passed
    assert rep.max_reg_log_over_n <= 0.05


def test_knot_exterior_tau_and_covers():
    fig8 = IntPoly.from_coeffs([1, -3, 1])
    T = knot_exterior_complex(fig8)
    assert tau2(T) == pytest.approx(-log_mahler(fig8), abs=1e-9)
    for N in range(2, 8):
        C = finite_cover(T, N)
        top_tors = cohomology_all(C)[-1].torsion_order
        assert top_tors == branched_cover_order(fig8, N)


def test_coker_sandwich():
    A = IntMatrix.from_rows([[1, 0, 0], [0, 2, 1], [0, 1, 1]])
    r2 = coker_sandwich_check(A, 2)
    assert r2.holds and (r2.lower, r2.torsion_order, r2.upper) == (5, 5, 5)
    r6 = coker_sandwich_check(A, 6)
    assert r6.holds and (r6.lower, r6.torsion_order, r6.upper) == (320, 320, 320)
    for N in range(1, 16):
        assert coker_sandwich_check(A, N).holds


def test_coker_sandwich_rejects_trivial_quotient():
    with pytest.raises(ValueError):
        coker_sandwich_check(IntMatrix.identity(1), 2)


def test_tower_json_roundtrip(tmp_path):
    doc = {"m": 1, "dims": [1, 1],
           "differentials": [[[[{"exp": [0], "coef": 1},
                                {"exp": [1], "coef": -1},
                                {"exp": [2], "coef": -1}]]]]}
    T = tower_from_dict(doc)
    p = tmp_path / "t.json"
    p.write_text(json.dumps(doc))
    T2 = load_tower(p)
    assert T2.dims == T.dims and T2.differentials == T.differentials
    # det(1 - t - t^2): golden-mean shift, tau^2 = log of golden ratio^... > 0
    assert tau2(T) == pytest.approx(
        log_mahler(IntPoly.from_coeffs([1, -1, -1])), abs=1e-9)


def test_sequence_csv_roundtrip(tmp_path):
    T = circle_complex(HYPERBOLIC)
    pts = torsion_sequence(T, range(1, 9))
    path = tmp_path / "seq.csv"
    write_sequence_csv(path, pts, tau2(T))
    back = read_sequence_csv(path)
    assert [n for n, _, _ in back] == [p.N for p in pts]
    for (_, tors, log_t), p in zip(back, pts):
        assert tors == p.torsion_orders
        assert log_t == p.log_T


def test_workers_deterministic():
    T = circle_complex(HYPERBOLIC)
    seq = torsion_sequence(T, range(1, 9))
    par = torsion_sequence(T, range(1, 9), workers=2)
    assert seq == par
