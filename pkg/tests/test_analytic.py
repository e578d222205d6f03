from fractions import Fraction

import pytest

from edskit.analytic import (
    WardData, proof_chain_identities, recover_curve, ward_data, ward_invariants, weierstrass_values,
)
from edskit.curve import Curve, Point
from edskit.errors import ParameterError, TorsionObstruction

from helpers import random_curve_points

E = Curve.short(0, 1)
P = Point.affine(2, 3)


def test_invariants_for_known_point():
    w = WardData(2, 0, 3, 216)
    assert ward_invariants(w) == (0, -4)
    assert ward_data(E, P) == w


def test_recover_examples():
    assert recover_curve(E, P) == (0, 1)
    assert recover_curve(Curve.short(-2, 0), Point.affine(-1, 1)) == (-2, 0)


def test_torsion_obstructions():
    with pytest.raises(TorsionObstruction):
        recover_curve(E, Point.affine(0, 1))  # order 3
    with pytest.raises(TorsionObstruction):
        recover_curve(E, Point.affine(-1, 0))  # order 2
    with pytest.raises(TorsionObstruction):
        ward_invariants(WardData(1, 4 * 1 * 9, 3, 5))


def test_long_form_rejected():
    with pytest.raises(ParameterError):
        recover_curve(Curve(1, 0, 0, 0, 1), Point.affine(0, 1))


def test_weierstrass_values():
    assert weierstrass_values(WardData(2, 0, 3, 216)) == (2, -6)
    assert weierstrass_values(WardData(0, 1, 5, 1)) == (0, -10)
    assert weierstrass_values(WardData(Fraction(1, 2), 1, Fraction(1, 8), 1, 2)) == (2, -2)


def test_weierstrass_values_are_coordinates():
    for curve, p in random_curve_points(10, seed=31, short=True, avoid_3_torsion=True):
        assert weierstrass_values(ward_data(curve, p)) == (p.x, -2 * p.y)


def test_homogeneity():
    w = ward_data(E, P)
    for g in (2, Fraction(-3, 5)):
        scaled = w.rescaled(g)
        assert scaled == ward_data(E, P, g)
        g2, g3 = ward_invariants(scaled)
        assert (g2, g3) == ward_invariants(w)  # the invariants do not depend on gamma
        bare = ward_invariants(WardData(scaled.G1, scaled.G2, scaled.H1, scaled.H2, 1))
        assert g2 == Fraction(g) ** 4 * bare[0]
        assert g3 == Fraction(g) ** 6 * bare[1]


def test_proof_chain_example():
    rep = proof_chain_identities(E, P)
    assert rep.ok, rep.failures
    seq_f2, seq_f4 = 6, 2592
    assert seq_f2 == 2 * 3 and seq_f4 == 4 * 3 * 216


def test_proof_chain_on_random_points():
    for curve, p in random_curve_points(15, seed=77, short=True, avoid_3_torsion=True):
        assert proof_chain_identities(curve, p, Fraction(2, 3)).ok


def test_proof_chain_rejects_two_torsion():
    with pytest.raises(TorsionObstruction):
        proof_chain_identities(E, Point.affine(-1, 0))


def test_zero_gamma_rejected():
    with pytest.raises(ParameterError):
        WardData(1, 1, 1, 1, 0)
