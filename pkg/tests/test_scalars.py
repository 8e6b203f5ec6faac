"""Exact scalar layer: ring arithmetic, circle reduction, matrix actions."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rotalab.errors import DegreeOverflow, InvalidMu, PoleAtTheta
from rotalab.scalars import (
    IntMatrix2,
    ThetaScalar,
    TorusPoint,
    mobius_defect,
    mobius_transform,
    require_nonzero_defect,
    scalar_arith,
    scalar_eval,
    torus_reduce,
)

rationals = st.fractions(
    min_value=-5, max_value=5, max_denominator=12
)
small_ints = st.integers(min_value=-5, max_value=5)


def theta_scalars():
    return st.builds(ThetaScalar, rationals, rationals, rationals)


def det_one_matrices():
    """All of SL(2, Z) with entries in [-5, 5], as a sampled list."""
    mats = [
        IntMatrix2(a, b, c, d)
        for a in range(-5, 6)
        for b in range(-5, 6)
        for c in range(-5, 6)
        for d in range(-5, 6)
        if a * d - b * c == 1
    ]
    return st.sampled_from(mats)


class TestRingArithmetic:
    def test_sum_cancels_theta(self):
        one_plus = ThetaScalar(1, 1)
        one_minus = ThetaScalar(1, -1)
        assert one_plus + one_minus == ThetaScalar(2)

    def test_product_hits_degree_two(self):
        one_plus = ThetaScalar(1, 1)
        one_minus = ThetaScalar(1, -1)
        assert one_plus * one_minus == ThetaScalar(1, 0, -1)

    def test_cubic_overflows(self):
        with pytest.raises(DegreeOverflow):
            ThetaScalar.theta() * ThetaScalar.theta_squared()

    def test_dispatcher_matches_dunders(self):
        a, b = ThetaScalar(2, 3), ThetaScalar(-1, 0, 4)
        assert scalar_arith(a, "+", b) == a + b
        assert scalar_arith(a, "-", b) == a - b
        assert scalar_arith(a, "*", ThetaScalar(5)) == a * 5

    def test_eval_is_polynomial_evaluation(self):
        s = ThetaScalar(Fraction(1, 2), 3, Fraction(-1, 4))
        theta = 0.7071067811865476
        expected = 0.5 + 3 * theta - 0.25 * theta**2
        assert scalar_eval(s, theta) == pytest.approx(expected, abs=1e-15)

    @given(theta_scalars(), theta_scalars(), theta_scalars())
    def test_addition_associative_commutative(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a

    @given(theta_scalars(), st.fractions(max_denominator=12))
    def test_rational_multiplication_distributes(self, a, f):
        assert a * f + a * f == a * (2 * f)


class TestTorusReduction:
    def test_reduce_moves_rational_part_only(self):
        p = torus_reduce(ThetaScalar(Fraction(7, 3), 2, -1))
        assert p.x == ThetaScalar(Fraction(1, 3), 2, -1)

    def test_reduce_idempotent(self):
        p = torus_reduce(ThetaScalar(Fraction(-9, 4), 1))
        assert torus_reduce(p.x) == p

    @given(theta_scalars(), small_ints)
    def test_integer_shifts_invisible(self, s, n):
        assert torus_reduce(s) == torus_reduce(s + n)

    @given(theta_scalars())
    def test_canonical_rational_part_in_unit_interval(self, s):
        p = torus_reduce(s)
        assert 0 <= p.x.p < 1

    def test_numeric_value_reduced_mod_one(self):
        theta = 0.7071067811865476
        p = torus_reduce(ThetaScalar(0, 2))
        assert p.evalf(theta) == pytest.approx((2 * theta) % 1.0, abs=1e-15)


class TestMatrixLayer:
    def test_defect_of_shear(self):
        assert mobius_defect(IntMatrix2(1, 1, 0, 1)) == ThetaScalar(1)

    def test_defect_of_identity(self):
        assert mobius_defect(IntMatrix2.identity()) == ThetaScalar(0)

    def test_defect_of_rotation(self):
        assert mobius_defect(IntMatrix2(0, -1, 1, 0)) == ThetaScalar(-1, 0, -1)

    def test_transform_shear(self):
        assert mobius_transform(IntMatrix2(1, 1, 0, 1), 0.5) == pytest.approx(1.5)

    def test_transform_rotation(self):
        assert mobius_transform(IntMatrix2(0, -1, 1, 0), 2.0) == pytest.approx(-0.5)

    def test_pole_detection(self):
        with pytest.raises(PoleAtTheta):
            mobius_transform(IntMatrix2(0, -1, 1, 0), 0.0)

    def test_zero_defect_guard(self):
        with pytest.raises(InvalidMu):
            require_nonzero_defect(IntMatrix2.identity())

    @settings(max_examples=100)
    @given(det_one_matrices(), det_one_matrices())
    def test_transform_is_an_action(self, g, h):
        # numeric composition law at a generic irrational point
        theta = 1.0 / math.sqrt(2.0)
        via_product = mobius_transform(g @ h, theta)
        via_steps = mobius_transform(g, mobius_transform(h, theta))
        assert via_steps == pytest.approx(via_product, abs=1e-12)

    @settings(max_examples=100)
    @given(det_one_matrices())
    def test_zero_defect_iff_theta_fixed(self, g):
        mu = mobius_defect(g)
        fixes = all(
            abs(mobius_transform(g, t) - t) < 1e-9
            for t in (0.7071067811865476, 1.4142135623730951, 0.318309886,
                      2.718281828, 0.5773502691896258)
        )
        assert (mu == ThetaScalar(0)) == fixes

    @given(det_one_matrices())
    def test_inverse_is_matrix_inverse(self, g):
        assert g @ g.inverse() == IntMatrix2.identity()

    @given(det_one_matrices(), theta_scalars(), theta_scalars())
    def test_pair_action_respects_products(self, g, x, y):
        gx, gy = g.apply_pair(x, y)
        hx, hy = g.inverse().apply_pair(gx, gy)
        assert (hx, hy) == (x, y)


class TestHashability:
    def test_scalars_usable_as_keys(self):
        d = {ThetaScalar(1, 2): "a", TorusPoint(ThetaScalar(Fraction(1, 2))): "b"}
        assert d[ThetaScalar(1, 2)] == "a"
        assert d[torus_reduce(ThetaScalar(Fraction(3, 2)))] == "b"
