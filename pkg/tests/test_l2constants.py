import math
import random
from fractions import Fraction

import pytest

from torsiongrowth.l2constants import (
    SymbolicReal, WeightSL2C, WeightSL3, WeightSO, ZETA3,
    hyperbolic_segment_integrals, predicted_growth, sl3_alternating_sum,
    sl3_factored_sum, strongly_acyclic, t2_hyperbolic, t2_sl2c, t2_sl3,
)


def test_symbolic_real():
    x = SymbolicReal.of(Fraction(1, 2), sqrt2_pow=1, pi_pow=-2)
    assert str(x) == "√2/(2·π^2)"
    assert x.value() == pytest.approx(math.sqrt(2) / (2 * math.pi ** 2))
    # folding: sqrt2 * sqrt2 = 2
    assert x * x == SymbolicReal.of(Fraction(1, 2), 0, -4)
    zero = SymbolicReal.of(0, 1, 5)
    assert zero == SymbolicReal.of(0)
    assert str(-SymbolicReal.of(Fraction(13, 6), pi_pow=-1)) == "-13/(6·π)"


def test_weight_a_sequences():
    w = WeightSO(2, (0, 0, 0))
    assert w.a == (0, 1, 2)
    assert WeightSL2C(1, 0).a == (1, 2)
    with pytest.raises(ValueError):
        WeightSO(2, (3, 1, 2))   # not dominant (must be nonincreasing lam)


def test_strongly_acyclic():
    assert strongly_acyclic(WeightSO(1, (1, 1)))
    assert not strongly_acyclic(WeightSO(1, (1, 0)))
    assert strongly_acyclic(WeightSL2C(2, 1))
    assert not strongly_acyclic(WeightSL2C(3, 3))
    with pytest.raises(TypeError):
        strongly_acyclic(WeightSL3(0, 0, 0))


def test_hyperbolic_anchor_values():
    # trivial weight on hyperbolic 3-space: -1/(6 pi)
    assert t2_hyperbolic(WeightSO(1, (0, 0))) \
        == SymbolicReal.of(Fraction(-1, 6), pi_pow=-1)
    # hyperbolic 5-space, trivial weight: 31/(45 pi^2)
    assert t2_hyperbolic(WeightSO(2, (0, 0, 0))) \
        == SymbolicReal.of(Fraction(31, 45), pi_pow=-2)


def test_hyperbolic_segment_positivity():
    rng = random.Random(17)
    for _ in range(50):
        n = rng.randint(1, 4)
        lam = sorted((rng.randint(0, 5) for _ in range(n + 1)), reverse=True)
        w = WeightSO(n, tuple(lam))
        vals = hyperbolic_segment_integrals(w)
        a = w.a
        for k, v in enumerate(vals):
            if (a[k - 1] if k else 0) < a[k]:
                assert v > 0


def test_sl2c_anchor_and_cross_family():
    assert t2_sl2c(0, 0) == SymbolicReal.of(Fraction(-1, 6), pi_pow=-1)
    assert t2_sl2c(1, 0) == SymbolicReal.of(Fraction(-13, 6), pi_pow=-1)
    # same exponent sequence, same constant: (p, q) <-> SO weight (p+q, |p-q|)
    for p in range(0, 21):
        for q in range(0, 21):
            lhs = t2_sl2c(p, q)
            assert lhs == t2_sl2c(q, p)
            assert lhs == t2_hyperbolic(WeightSO(1, (p + q, abs(p - q))))


def test_sl2c_sign_law():
    for p in range(0, 12):
        for q in range(0, 12):
            assert t2_sl2c(p, q).value() < 0


def test_sl3_anchors():
    assert t2_sl3(0, 0, 0) == SymbolicReal.of(1, sqrt2_pow=1, pi_pow=-2)
    assert t2_sl3(1, 0, 0) == SymbolicReal.of(Fraction(55, 9),
                                              sqrt2_pow=1, pi_pow=-2)


def test_sl3_positivity_and_factored_identity():
    rng = random.Random(29)
    for _ in range(300):
        p = rng.randint(0, 12)
        q = rng.randint(0, p)
        r = rng.randint(0, q)
        w = WeightSL3(p, q, r)
        assert sl3_alternating_sum(w) == sl3_factored_sum(w)
        assert t2_sl3(p, q, r).value() > 0


def test_predicted_growth():
    vol = math.pi ** 2 * ZETA3 / math.e  # arbitrary positive volume
    g = predicted_growth("sl2c", WeightSL2C(1, 0), vol)
    assert g == pytest.approx(abs(t2_sl2c(1, 0).value()) * vol)
    with pytest.raises(ValueError):
        predicted_growth("sl2c", WeightSL2C(2, 2), 1.0)  # not strongly acyclic
    with pytest.raises(ValueError):
        predicted_growth("nope", WeightSL2C(1, 0), 1.0)


def test_sl3_lattice_prediction_value():
    # vol(SL3(Z)\SL3(R)) with the trace form normalization
    vol = math.pi ** 2 * ZETA3 / (2 ** 3 * math.pi ** 2) * (math.pi ** 2 / 6) \
        / (math.pi ** 2 / 6)
    vol = (math.pi ** 2 / 6) * ZETA3 / (8 * math.pi ** 2)
    g = predicted_growth("sl3", WeightSL3(0, 0, 0), vol)
    assert g == pytest.approx(math.sqrt(2) / math.pi ** 2 * vol, rel=1e-12)
