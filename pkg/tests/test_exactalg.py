"""Exact polynomial and piecewise-polynomial arithmetic."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heunops.exactalg import NEG_INFINITY, PiecewisePoly, Poly, integrate_product, rat

fractions = st.builds(F, st.integers(-9, 9), st.integers(1, 9))
small_polys = st.lists(fractions, min_size=0, max_size=6).map(lambda cs: Poly(tuple(cs)))


def test_rat_accepts_exact_types_only():
    assert rat("33/40") == F(33, 40)
    assert rat(7) == 7
    with pytest.raises(TypeError):
        rat(0.5)


class TestPolyEval:
    def test_zero_poly_anywhere(self):
        assert Poly()(rat(7)) == 0

    def test_direct_substitution(self):
        # direct oracle: 1 - 2/4 + 2/16 = 5/8
        p = Poly.of(1, -2, 2)
        assert p(F(1, 4)) == F(5, 8)

    def test_cube_at_negative(self):
        assert Poly.monomial(3)(-2) == -8

    def test_float_argument_gives_float(self):
        assert Poly.of(0, 0, 1)(0.5) == 0.25


class TestPolyArith:
    def test_mul(self):
        assert Poly.of(1, 1) * Poly.of(1, -1) == Poly.of(1, 0, -1)

    def test_compose_affine(self):
        assert Poly.monomial(2).compose_affine(2, -1) == Poly.of(1, -4, 4)

    def test_compose_affine_zero_slope(self):
        assert Poly.of(1, 2, 3).compose_affine(0, 2) == Poly.constant(1 + 4 + 12)

    def test_additive_inverse(self):
        p = Poly.of(3, -1, F(2, 7))
        assert (p + (-1) * p).is_zero()

    def test_degree_marker(self):
        assert Poly().degree == NEG_INFINITY
        assert Poly.constant(5).degree == 0
        assert Poly.of(0, 0, 0).degree == NEG_INFINITY


class TestPolyCalculus:
    def test_derivative(self):
        assert Poly.monomial(3).derivative() == Poly.of(0, 0, 3)

    def test_antiderivative_constant_zero(self):
        assert Poly.of(0, 0, 3).antiderivative() == Poly.monomial(3)
        assert Poly.of(0, 0, 3).antiderivative().coeff(0) == 0

    def test_derivative_of_constant(self):
        assert Poly.constant(5).derivative().is_zero()

    def test_antiderivative_constants_cancel_under_iterated_derivative(self):
        # only D^k of an order-k antiderivative is ever used downstream, so
        # any polynomial of degree < k added to the antiderivative cancels
        f = Poly.of(2, -3, 1)
        lifted = f.antiderivative().antiderivative()
        shifted = lifted + Poly.of(F(5, 3), -7)
        assert shifted.derivative().derivative() == f


@settings(max_examples=60)
@given(small_polys, small_polys)
def test_product_rule(p, q):
    lhs = (p * q).derivative()
    rhs = p.derivative() * q + p * q.derivative()
    assert lhs == rhs


@settings(max_examples=60)
@given(small_polys, fractions, fractions, fractions)
def test_compose_affine_evaluation(p, a, b, x):
    assert p.compose_affine(a, b)(x) == p(a * x + b)


def _pp(breaks, *pieces):
    return PiecewisePoly(tuple(rat(b) for b in breaks), tuple(pieces))


HAT = _pp([-1, 0, 1], Poly.of(1, 1), Poly.of(1, -1))  # peak 1 at 0, integral 1


class TestPiecewise:
    def test_constant_square_integral(self):
        box = _pp([-1, 1], Poly.constant(F(1, 2)))
        assert integrate_product(box, box) == F(1, 2)

    def test_disjoint_supports(self):
        f = _pp([0, 1], Poly.constant(1))
        g = _pp([2, 3], Poly.constant(1))
        assert integrate_product(f, g) == 0

    def test_hat_square_integral(self):
        assert integrate_product(HAT, HAT) == F(2, 3)

    def test_zero_outside_support(self):
        assert HAT(F(5)) == 0
        assert HAT(-1.5) == 0.0

    def test_breakpoint_uses_right_piece(self):
        steps = _pp([0, 1, 2], Poly.monomial(1), Poly.constant(5))
        assert steps(F(1)) == 5
        assert steps(F(2)) == 5  # last breakpoint falls to the final piece

    def test_shift(self):
        moved = HAT.shift(F(3))
        assert moved.support == (2, 4)
        assert moved(F(3)) == 1
        assert moved(F(7, 2)) == HAT(F(1, 2))

    def test_moment(self):
        box = _pp([-1, 1], Poly.constant(F(1, 2)))
        assert box.moment(0) == 1
        assert box.moment(1) == 0
        assert box.moment(2) == F(1, 3)

    def test_validation(self):
        with pytest.raises(ValueError):
            _pp([0, 0], Poly.constant(1))
        with pytest.raises(ValueError):
            PiecewisePoly((F(0), F(1)), (Poly.constant(1), Poly.constant(2)))


@settings(max_examples=40)
@given(fractions, fractions)
def test_integrate_product_symmetric_bilinear(a, b):
    f = _pp([0, 1, 2], Poly.of(a, 1), Poly.of(1, -1))
    g = _pp([F(1, 2), 2], Poly.of(b, 0, 1))
    assert integrate_product(f, g) == integrate_product(g, f)
    scaled = integrate_product(f.scale(3), g)
    assert scaled == 3 * integrate_product(f, g)
    h = _pp([0, 2], Poly.of(1, b))
    lhs = integrate_product(f, _pp_sum(g, h))
    assert lhs == integrate_product(f, g) + integrate_product(f, h)


def _pp_sum(g, h):
    """Pointwise sum of two piecewise polynomials, for the bilinearity check."""
    cuts = sorted(set(g.breakpoints) | set(h.breakpoints))
    pieces = []
    for u, v in zip(cuts, cuts[1:]):
        mid = (u + v) / 2
        gi, hi = g.piece_index(mid), h.piece_index(mid)
        total = Poly()
        if gi >= 0:
            total = total + g.pieces[gi]
        if hi >= 0:
            total = total + h.pieces[hi]
        pieces.append(total)
    return PiecewisePoly(tuple(cuts), tuple(pieces))
