"""Kernel densities, the exact squared-kernel constants, moments and the
integral operator."""

import math
from fractions import Fraction as F

import pytest

from heunops import bspline
from heunops.bspline import (
    ConstantSigma,
    KnotVector,
    QuadraticSigma,
    TableSigma,
    apply_Ln,
    bspline_density,
    c_constant,
    kernel,
    kernel_moment,
)
from heunops.errors import InvalidKnots, NonpositiveWidth
from heunops.exactalg import E0, E1, E2, Poly, integrate_product

SIGMAS = (F(1, 2), F(1), F(7, 3))
XS = (F(-1), F(0), F(5, 2))


def _cox_de_boor_value(pts, i, p, t):
    """Independent pointwise Cox-de Boor oracle (basis normalization)."""
    if p == 0:
        return F(1) if pts[i] <= t < pts[i + 1] else F(0)
    left = (t - pts[i]) / (pts[i + p] - pts[i]) * _cox_de_boor_value(pts, i, p - 1, t)
    right = (pts[i + p + 1] - t) / (pts[i + p + 1] - pts[i + 1]) * _cox_de_boor_value(pts, i + 1, p - 1, t)
    return left + right


def _density_oracle(pts, t):
    m = len(pts) - 1
    return _cox_de_boor_value(pts, 0, m - 1, t) * F(m) / (pts[-1] - pts[0])


class TestDensity:
    def test_single_interval_is_uniform(self):
        d = bspline_density([-1, 1])
        assert d(F(0)) == F(1, 2)
        assert d.integrate() == 1

    def test_hat(self):
        d = bspline_density([-1, 0, 1])
        assert d(F(0)) == 1
        assert d.integrate() == 1

    def test_quadratic_value_against_recursion_oracle(self):
        pts = [F(0), F(1, 3), F(2, 3), F(1)]
        d = bspline_density(pts)
        assert d(F(1, 2)) == F(9, 4)
        for t in (F(1, 10), F(1, 3), F(1, 2), F(4, 5)):
            assert d(t) == _density_oracle(pts, t)

    def test_smoothness_at_interior_knots(self):
        pts = [F(0), F(1, 4), F(1, 2), F(3, 4), F(1)]
        d = bspline_density(pts)
        for i in range(1, 4):
            left, right = d.pieces[i - 1], d.pieces[i]
            t = pts[i]
            assert left(t) == right(t)
            assert left.derivative()(t) == right.derivative()(t)

    def test_invalid_knots(self):
        with pytest.raises(InvalidKnots):
            bspline_density([0, 2, 3])  # not equidistant
        with pytest.raises(InvalidKnots):
            bspline_density([1, 1, 2])
        with pytest.raises(InvalidKnots):
            KnotVector((F(3), F(2)))


class TestKernel:
    def test_n1_box(self):
        inst = kernel(1, ConstantSigma(1), 0)
        assert inst.density(F(0)) == F(1, 2)
        assert inst.density.support == (-1, 1)

    def test_n2_translated_hat(self):
        inst = kernel(2, ConstantSigma(1), 3)
        assert inst.density.support == (2, 4)
        assert inst.density(F(3)) == 1

    def test_n3_squared_integral(self):
        inst = kernel(3, ConstantSigma(1), 0)
        assert integrate_product(inst.density, inst.density) == F(33, 40)

    def test_nonpositive_width(self):
        with pytest.raises(NonpositiveWidth):
            kernel(2, ConstantSigma(-1), 0)
        with pytest.raises(NonpositiveWidth):
            kernel(2, QuadraticSigma(F(-5), 1), 1)

    def test_translation_covariance(self):
        for n in (1, 2, 3, 4):
            base = kernel(n, ConstantSigma(F(7, 3)), 0)
            moved = kernel(n, ConstantSigma(F(7, 3)), F(5, 2))
            assert moved.density == base.density.shift(F(5, 2))


class TestConstants:
    def test_first_three_constants(self):
        assert c_constant(1) == F(1, 2)
        assert c_constant(2) == F(2, 3)
        assert c_constant(3) == F(33, 40)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_independent_of_x_and_sigma(self, n):
        expected = c_constant(n)
        for s in SIGMAS:
            for x in XS:
                inst = kernel(n, ConstantSigma(s), x)
                assert s * integrate_product(inst.density, inst.density) == expected


class TestMoments:
    def test_mass(self):
        for n in (1, 2, 5):
            assert kernel_moment(kernel(n, ConstantSigma(F(7, 3)), F(5, 2)), 0) == 1

    def test_symmetry_first_moment(self):
        assert kernel_moment(kernel(2, ConstantSigma(1), 5), 1) == 5

    def test_second_moment(self):
        # direct oracle: integral of t^2/2 over [-1, 1] = 1/3
        assert kernel_moment(kernel(1, ConstantSigma(1), 0), 2) == F(1, 3)


class TestApplyLn:
    def test_reproduces_constants(self):
        for n in (1, 3, 6):
            assert apply_Ln(n, QuadraticSigma(1, 1), E0, F(1, 2)) == 1

    def test_first_moment_is_x(self):
        assert apply_Ln(3, ConstantSigma(1), E1, F(1, 4)) == F(1, 4)

    def test_second_moment_matches_width(self):
        assert apply_Ln(1, ConstantSigma(2), E2, 0) == F(4, 3)

    def test_callable_path_agrees_with_exact(self):
        exact = apply_Ln(3, ConstantSigma(1), E2, F(1, 4))
        quad = apply_Ln(3, ConstantSigma(1), lambda t: t * t, F(1, 4))
        assert abs(quad - float(exact)) < 1e-13

    def test_callable_smooth_function(self):
        # L_1 at x=0, sigma=1 is the average over [-1,1]: integral cos = 2 sin(1), halved
        got = apply_Ln(1, ConstantSigma(1), math.cos, 0)
        assert abs(got - math.sin(1.0)) < 1e-13

    @pytest.mark.parametrize("n", range(1, 9))
    def test_variance_formula(self, n):
        for s in SIGMAS:
            for x in XS:
                v = apply_Ln(n, ConstantSigma(s), E2, x) - apply_Ln(n, ConstantSigma(s), E1, x) ** 2
                assert v == s * s / F(3 * n)

    def test_variance_with_quadratic_sigma(self):
        sig = QuadraticSigma(1, 1)
        for n in (1, 2, 4):
            for x in (F(-2), F(1, 2)):
                v = bspline.variance(n, sig, x)
                assert v == sig.at(x) ** 2 / F(3 * n)


class TestSigmaSpecs:
    def test_table_interpolates(self):
        sig = TableSigma((F(0), F(1), F(2)), (F(1), F(3), F(1)))
        assert sig.at(F(1, 2)) == 2
        assert sig.at(F(5)) == 1  # clamped beyond the table

    def test_table_positivity_enforced(self):
        sig = TableSigma((F(0), F(1)), (F(1), F(-1)))
        with pytest.raises(NonpositiveWidth):
            sig.at(F(1))


# --- exact nonnegativity ----------------------------------------------------


def _sign_in_quadratic_field(a: F, b: F, d: F) -> int:
    """Exact sign of a + b*sqrt(d) for rational a, b and d > 0."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return (b > 0) - (b < 0)
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    lhs, rhs = a * a, b * b * d
    if lhs == rhs:
        return 0
    if a > 0:
        return 1 if lhs > rhs else -1
    return 1 if rhs > lhs else -1


def _eval_in_quadratic_field(p: Poly, u: F, v: F, d: F) -> tuple[F, F]:
    """p(u + v*sqrt(d)) as (rational, sqrt-coefficient) pair."""
    ra, rb = F(0), F(0)
    for c in reversed(p.coeffs):
        ra, rb = ra * u + rb * v * d + c, ra * v + rb * u
    return ra, rb


def _piece_min_nonneg_exact(p: Poly, lo: F, hi: F) -> bool:
    """Exact nonnegativity of a piece of degree <= 3 on [lo, hi]."""
    if p(lo) < 0 or p(hi) < 0:
        return False
    deg = p.degree
    if deg <= 1:  # zero, constant or linear: endpoints suffice
        return True
    if deg == 2:
        der = p.derivative()
        root = -der.coeff(0) / der.coeff(1)
        return not (lo < root < hi) or p(root) >= 0
    assert deg == 3
    der = p.derivative()
    a2, a1, a0 = der.coeff(2), der.coeff(1), der.coeff(0)
    disc = a1 * a1 - 4 * a2 * a0
    if disc <= 0:
        return True  # monotone piece, endpoints suffice
    u = -a1 / (2 * a2)
    for s in (F(1), F(-1)):
        v = s / (2 * a2)
        inside_lo = _sign_in_quadratic_field(u - lo, v, disc) > 0
        inside_hi = _sign_in_quadratic_field(hi - u, -v, disc) > 0
        if inside_lo and inside_hi:
            ra, rb = _eval_in_quadratic_field(p, u, v, disc)
            if _sign_in_quadratic_field(ra, rb, disc) < 0:
                return False
    return True


@pytest.mark.parametrize("n", range(1, 9))
def test_density_nonnegative(n):
    inst = kernel(n, ConstantSigma(1), 0)
    d = inst.density
    if n <= 4:  # pieces of degree <= 3: exact minimization
        for i, piece in enumerate(d.pieces):
            assert _piece_min_nonneg_exact(piece, d.breakpoints[i], d.breakpoints[i + 1])
    else:  # rational sampling
        lo, hi = d.support
        for k in range(321):
            t = lo + (hi - lo) * F(k, 320)
            assert d(t) >= 0
