import math
import random

import pytest

from torsiongrowth.intlinalg import IntMatrix, bareiss_det
from torsiongrowth.polynomials import (
    IntPoly, LaurentPoly, branched_cover_order, charpoly, cyclotomic_poly,
    detprime_int, gelfond_lind_sequence, log_mahler, log_mahler_univariate,
    mahler_measure, mahler_multivariate_estimate, parse_poly, resultant,
    strip_cyclotomic_factors,
)


def test_intpoly_arithmetic():
    p = IntPoly.from_coeffs([1, -3, 1])     # 1 - 3t + t^2
    q = IntPoly.from_coeffs([-1, 1])        # t - 1
    assert (p * q).degree == 3
    assert (p + q)(2) == p(2) + q(2)
    assert p.derivative() == IntPoly.from_coeffs([-3, 2])
    assert (p * q).try_divide(q) == p
    assert p.try_divide(q) is None


def test_charpoly_and_detprime():
    A = IntMatrix.from_rows([[2, 1], [1, 1]])
    assert charpoly(A) == IntPoly.from_coeffs([1, -3, 1])
    # det'(diag(3, 0)) = 3
    assert detprime_int(IntMatrix.from_rows([[3, 0], [0, 0]])) == 3
    assert detprime_int(IntMatrix.zero(2, 2)) == 1


def test_cyclotomic():
    assert cyclotomic_poly(1) == IntPoly.from_coeffs([-1, 1])
    assert cyclotomic_poly(4) == IntPoly.from_coeffs([1, 0, 1])
    assert cyclotomic_poly(6) == IntPoly.from_coeffs([1, -1, 1])
    # product of Phi_d over d | n is t^n - 1
    for n in (1, 2, 3, 4, 6, 12):
        prod = IntPoly.from_coeffs([1])
        for d in range(1, n + 1):
            if n % d == 0:
                prod = prod * cyclotomic_poly(d)
        assert prod == IntPoly.from_coeffs([-1] + [0] * (n - 1) + [1])


def test_strip_cyclotomic():
    p = cyclotomic_poly(5) * IntPoly.from_coeffs([1, -3, 1])
    residual, k, orders = strip_cyclotomic_factors(p)
    assert residual == IntPoly.from_coeffs([1, -3, 1])
    assert 5 in orders


def test_mahler_exact_cases():
    golden = mahler_measure(IntPoly.from_coeffs([1, -3, 1]))
    assert abs(golden.value - ((3 + math.sqrt(5)) / 2)) < 1e-9
    cyc = mahler_measure(cyclotomic_poly(12) * IntPoly.from_coeffs([0, 1]))
    assert cyc.is_exactly_one and cyc.value == 1.0
    lead = mahler_measure(IntPoly.from_coeffs([1, 0, 2]))  # 2t^2 + 1
    assert abs(lead.value - 2.0) < 1e-9


def test_mahler_lehmer():
    lehmer = IntPoly.from_coeffs([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
    mv = mahler_measure(lehmer)
    assert abs(mv.value - 1.17628081825991751) < 1e-8


def test_mahler_squarefree_peeling():
    p = IntPoly.from_coeffs([1, -3, 1])
    sq = p * p
    assert abs(mahler_measure(sq).value - mahler_measure(p).value ** 2) < 1e-8


def test_gelfond_lind():
    A = IntMatrix.from_rows([[2, 1], [1, 1]])
    seq = gelfond_lind_sequence(A, 6)
    one = IntMatrix.identity(2)
    for N, v in seq:
        d = abs(bareiss_det(one - A.power(N)))
        if d:
            assert v == pytest.approx(math.log(d) / N)
    # converges to log of the Mahler measure of the characteristic polynomial
    assert seq[-1][1] == pytest.approx(
        log_mahler(charpoly(A)), abs=0.02)


def test_resultant_defining_formula():
    rng = random.Random(5)
    for _ in range(40):
        dp, dq = rng.randint(1, 4), rng.randint(1, 4)
        p = IntPoly.from_coeffs([rng.randint(-4, 4) for _ in range(dp)]
                                + [rng.randint(1, 4)])
        q = IntPoly.from_coeffs([rng.randint(-4, 4) for _ in range(dq)]
                                + [rng.randint(1, 4)])
        res = resultant(p, q)
        assert resultant(q, p) == (-1) ** (p.degree * q.degree) * res
    # Res(t - 1, t - 2) = q(1) = -1 with the lc(p)^deg q * prod q(alpha) sign
    assert resultant(IntPoly.from_coeffs([-1, 1]),
                     IntPoly.from_coeffs([-2, 1])) == -1
    # Res(t^2+1, t^2-2) = (i^2-2)(-i^2-2)... = ( -3 )( -3 ) = 9
    assert resultant(IntPoly.from_coeffs([1, 0, 1]),
                     IntPoly.from_coeffs([-2, 0, 1])) == 9


def test_resultant_multiplicative():
    rng = random.Random(9)
    for _ in range(25):
        mk = lambda d: IntPoly.from_coeffs(
            [rng.randint(-3, 3) for _ in range(d)] + [rng.randint(1, 3)])
        p, q, r = mk(rng.randint(1, 3)), mk(rng.randint(1, 3)), mk(rng.randint(1, 3))
        assert resultant(p * q, r) == resultant(p, r) * resultant(q, r)


def test_branched_cover_orders():
    trefoil = IntPoly.from_coeffs([1, -1, 1])
    assert [branched_cover_order(trefoil, N) for N in range(2, 7)] \
        == [3, 4, 3, 1, 0]
    fig8 = IntPoly.from_coeffs([1, -3, 1])
    assert [branched_cover_order(fig8, N) for N in range(2, 6)] \
        == [5, 16, 45, 121]


def test_branched_cover_requires_unit_at_one():
    with pytest.raises(ValueError):
        branched_cover_order(IntPoly.from_coeffs([2, 1]), 3)


def test_laurent_poly():
    t = LaurentPoly.var(1, 0)
    p = t + t.bar() - LaurentPoly.constant(1, 3)
    assert p.bar() == p
    assert p.specialize_one() == -1
    assert log_mahler_univariate(p) == pytest.approx(
        log_mahler(IntPoly.from_coeffs([1, -3, 1])), abs=1e-9)


def test_parse_poly():
    p = parse_poly("t^2-3t+1")
    assert p.to_intpoly() == IntPoly.from_coeffs([1, -3, 1])
    q = parse_poly("t + t^-1 - 3")
    assert q.bar() == q
    assert parse_poly("1+x+y").nvars == 2
    with pytest.raises(ValueError):
        parse_poly("t^^2")


def test_multivariate_mahler():
    p = parse_poly("1+x+y")
    est, err = mahler_multivariate_estimate(p, grid=256)
    assert abs(est - 0.3230659472194505) < 1e-3
    assert err < 1e-3
