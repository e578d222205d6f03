import pytest

from edskit.curve import Curve, point_order
from edskit.errors import ParameterError
from edskit.tate import (
    ALL_ORDERS, EXCLUDED_ALPHA, ORIGIN, TATE_ORDERS, admissible_alphas, admissible_pairs, eta,
    family_member, kubert_curve, lam, tate_curve, theta, zeta,
)


@pytest.mark.parametrize("N", TATE_ORDERS)
def test_origin_has_order_n(N):
    for alpha in admissible_alphas(N, -12, 12):
        tc = tate_curve(N, alpha)
        assert point_order(tc.curve, ORIGIN) == N
        assert tc.curve.is_integral


def test_known_models():
    assert tate_curve(5, 1).curve == Curve(0, -1, -1, 0, 0)
    assert tate_curve(8, 2).curve == Curve(-1, -12, -24, 0, 0)
    assert tate_curve(4, 2).curve == Curve(1, -2, -2, 0, 0)


@pytest.mark.parametrize("N", TATE_ORDERS)
def test_excluded_alphas(N):
    for alpha in EXCLUDED_ALPHA[N]:
        with pytest.raises(ParameterError):
            tate_curve(N, alpha)


def test_bad_orders_and_types():
    with pytest.raises(ParameterError):
        tate_curve(11, 2)
    with pytest.raises(ParameterError):
        tate_curve(8, "2")
    with pytest.raises(ParameterError):
        kubert_curve(4, 1, 1)


def test_kubert_families():
    assert len(admissible_pairs(2, -4, 4)) == 68
    assert len(admissible_pairs(3, -4, 4)) == 70
    for N in (2, 3):
        for p, q in admissible_pairs(N, -4, 4):
            assert point_order(kubert_curve(N, p, q).curve, ORIGIN) == N
        with pytest.raises(ParameterError):
            kubert_curve(N, 1, 0)


def test_derived_quantities():
    assert zeta(3) == -1
    assert eta(2) == 3
    assert theta(2) == -5
    assert lam(2) == (3 * 4 - 6 + 1) * (2 - 8)


def test_family_member_dispatch():
    assert family_member(2, 0, 1).params == (0, 1)
    assert family_member(9, 3).alpha == 3
    assert not family_member(2, 0, 1).h_available
    assert all(family_member(N, *((1, 1) if N < 4 else (2,))).h_available for N in ALL_ORDERS if N != 2)
