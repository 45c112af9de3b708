import pytest

from jetcalc.bounds import (
    EULER_QUARTIC, PUBLISHED_C, PreconditionError, constant_C, fit_sum_g, g_poly, g_weight,
    h2_partition_bound, leading_factor, persistent_threshold, sum_g, surface_2jet_bound, threshold_euler_quartic,
    threshold_order3,
)
from jetcalc.chow import LAMBDA, HypersurfaceIn, LogPair, Schur, Atom, Twist, euler_characteristic
from jetcalc.jets import chi_leading_exact
from jetcalc.poly import Poly

d = Poly.var("d")


def test_g_weight():
    assert g_weight((2, 1, 0)) == 81
    assert g_weight((5, 0, 0)) == 0
    assert g_weight((3, 1, 0)) == 576
    assert g_weight((4, 4, 1)) == 0
    for lam in [(7, 3, 1), (9, 5, 0), (2, 1, 0)]:
        assert g_poly().subs(dict(zip(LAMBDA, lam))) == g_weight(lam)


def test_sum_g_small():
    assert sum_g(5) == 657
    assert sum_g(1) == 0
    for m in range(1, 60):
        assert sum_g(m) == sum_g(m, "direct")
        assert sum_g(m, min_gamma=1) == sum_g(m, "direct", min_gamma=1)


def test_h2_bound_precondition():
    with pytest.raises(PreconditionError, match=r"4\(d-5\)\+18"):
        h2_partition_bound((3, 2, 1), 20)
    with pytest.raises(PreconditionError, match=r"3d\+2"):
        h2_partition_bound((30, 20, 10), 20, log=True)
    with pytest.raises(PreconditionError):
        h2_partition_bound((30, 30, 10), 6)


def test_h2_bound_is_second_difference():
    lam, deg = (60, 40, 20), 7
    rep = h2_partition_bound(lam, deg)
    v = HypersurfaceIn(4, deg)
    chi = lambda k: euler_characteristic(v, Twist(Schur(lam, Atom.COTANGENT), k * 120))  # noqa: E731
    assert rep.value == chi(9) - 2 * chi(6) + chi(3)
    assert rep.bound == rep.leading_part + rep.remainder
    assert rep.remainder_degree <= 5


@pytest.mark.parametrize("log", [False, True])
def test_leading_part_shape(log):
    rep = h2_partition_bound(None, None, log)
    assert rep.remainder_degree <= 5
    assert rep.leading_matches_g()
    assert rep.leading_part == g_poly() * leading_factor(d, log)


def test_constant_C():
    assert constant_C() == PUBLISHED_C
    assert fit_sum_g(min_gamma=1).coefficient(9) == PUBLISHED_C


def test_sum_g_numeric_convergence():
    assert abs(sum_g(120, "float") / float(sum_g(120)) - 1) < 1e-12
    ratio = sum_g(2000, "float") / 2000 ** 9
    assert abs(ratio / float(PUBLISHED_C) - 1) < 0.05


def test_euler_threshold():
    assert threshold_euler_quartic() == 43
    assert EULER_QUARTIC.evaluate({"d": 42}) < 0 < EULER_QUARTIC.evaluate({"d": 43})


def test_persistent_threshold():
    assert persistent_threshold((d - 3) * (d - 10)) == 11
    assert persistent_threshold(d + 5) == 1
    with pytest.raises(ValueError):
        persistent_threshold(-d)


@pytest.mark.parametrize("log,start", [(False, 97), (True, 92)])
def test_order3_thresholds(log, start):
    v = LogPair() if log else HypersurfaceIn(4)
    rep = threshold_order3(log, leading=chi_leading_exact(v, 3), c=PUBLISHED_C)
    assert rep.verified and rep.leading_positive
    assert rep.verified_from == start
    assert rep.minimal_found <= start
    assert rep.delta.evaluate({"d": rep.minimal_found - 1}) <= 0


def test_surface_bound():
    coeff, thr = surface_2jet_bound()
    assert coeff == d * (4 * d ** 2 - 68 * d + 154)
    assert thr == 15
    assert surface_2jet_bound(14)[0] == -196
    assert surface_2jet_bound(15)[0].constant() > 0
