"""B-spline densities on equidistant knots, the induced integral-operator
kernel, its moments, and the exact squared-kernel constants.

The B-spline here is density-normalized: the spline on knots
``x_0 < ... < x_m`` integrates to exactly 1 (degree m-1, smoothness
C^(m-2)).  That normalization is what makes the squared-kernel integral
equal ``c_n / sigma(x)`` with ``c_1 = 1/2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence, Union

from .errors import InvalidKnots, NonpositiveWidth
from .exactalg import E1, E2, PiecewisePoly, Poly, integrate_product, rat
from .specfun import gauss_legendre, quadrature


@dataclass(frozen=True)
class KnotVector:
    """Strictly increasing, exactly equidistant rational knots."""

    points: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        pts = tuple(rat(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise InvalidKnots("need at least two knots")
        gaps = [pts[i + 1] - pts[i] for i in range(len(pts) - 1)]
        if any(g <= 0 for g in gaps):
            raise InvalidKnots("knots must be strictly increasing")
        if any(g != gaps[0] for g in gaps):
            raise InvalidKnots("knots must be exactly equidistant")


class SigmaSpec:
    """Positive width function sigma; subclasses are the closed family
    that keeps every kernel computation exact at rational points."""

    def at(self, x) -> Fraction:
        value = self._value(rat(x))
        if value <= 0:
            raise NonpositiveWidth(f"sigma({x}) = {value} <= 0")
        return value

    def _value(self, x: Fraction) -> Fraction:
        raise NotImplementedError


@dataclass(frozen=True)
class ConstantSigma(SigmaSpec):
    c: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", rat(self.c))

    def _value(self, x: Fraction) -> Fraction:
        return self.c


@dataclass(frozen=True)
class QuadraticSigma(SigmaSpec):
    """sigma(x) = c + d x^2."""

    c: Fraction
    d: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", rat(self.c))
        object.__setattr__(self, "d", rat(self.d))

    def _value(self, x: Fraction) -> Fraction:
        return self.c + self.d * x * x


@dataclass(frozen=True)
class TableSigma(SigmaSpec):
    """Piecewise-linear interpolation through rational sample points,
    extended by its end values outside the table."""

    xs: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        xs = tuple(rat(v) for v in self.xs)
        vals = tuple(rat(v) for v in self.values)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "values", vals)
        if len(xs) != len(vals) or len(xs) < 2:
            raise ValueError("need matching sample abscissae and values, at least two")
        if any(xs[i] >= xs[i + 1] for i in range(len(xs) - 1)):
            raise ValueError("sample abscissae must be strictly increasing")

    def _value(self, x: Fraction) -> Fraction:
        if x <= self.xs[0]:
            return self.values[0]
        if x >= self.xs[-1]:
            return self.values[-1]
        i = max(i for i in range(len(self.xs) - 1) if self.xs[i] <= x)
        t = (x - self.xs[i]) / (self.xs[i + 1] - self.xs[i])
        return self.values[i] + t * (self.values[i + 1] - self.values[i])


@dataclass(frozen=True)
class KernelInstance:
    """One kernel slice t -> W_n(x, t): a B-spline density supported on
    [x - sigma(x), x + sigma(x)] with n equal subintervals."""

    n: int
    x: Fraction
    width: Fraction
    density: PiecewisePoly


def bspline_density(knots: Union[KnotVector, Sequence]) -> PiecewisePoly:
    """Degree-(m-1) B-spline on the given m+1 knots, normalized to
    integrate to exactly 1, built by the Cox-de Boor recursion in exact
    rational arithmetic."""
    if not isinstance(knots, KnotVector):
        knots = KnotVector(tuple(knots))
    return _bspline_density_cached(knots.points)


@lru_cache(maxsize=None)
def _bspline_density_cached(pts: tuple[Fraction, ...]) -> PiecewisePoly:
    m = len(pts) - 1
    # level 0: indicators of the m knot intervals, one list of per-interval polys each
    level = [[Poly.constant(1) if j == i else Poly() for j in range(m)] for i in range(m)]
    for deg in range(1, m):
        nxt = []
        for i in range(m - deg):
            left = Poly.of(-pts[i], 1).scale(1 / (pts[i + deg] - pts[i]))
            right = Poly.of(pts[i + deg + 1], -1).scale(1 / (pts[i + deg + 1] - pts[i + 1]))
            nxt.append([left * level[i][j] + right * level[i + 1][j] for j in range(m)])
        level = nxt
    pp = PiecewisePoly(pts, tuple(level[0]))
    total = pp.integrate()
    return pp.scale(1 / total)


def kernel(n: int, sigma, x) -> KernelInstance:
    """Kernel slice with width sigma(x) and n equal knot intervals."""
    if n < 1:
        raise InvalidKnots("kernel order n must be >= 1")
    x = rat(x)
    w = sigma.at(x)
    step = 2 * w / n
    knots = tuple(x - w + step * i for i in range(n + 1))
    return KernelInstance(n, x, w, bspline_density(knots))


@lru_cache(maxsize=None)
def c_constant(n: int) -> Fraction:
    """Exact squared-kernel constant: sigma(x) * integral of W_n(x,.)^2.

    Computed at sigma = 1, x = 0; independence from x and sigma is a
    tested property of the kernel family, not an assumption here.
    """
    k = kernel(n, ConstantSigma(1), 0)
    return integrate_product(k.density, k.density)


def kernel_moment(k: KernelInstance, order: int) -> Fraction:
    """Exact ``integral t^order W_n(x, t) dt``."""
    return k.density.moment(order)


def apply_Ln(n: int, sigma, f, x, quad_points: int = 32):
    """Apply the kernel-integral operator at the point x.

    Polynomial arguments integrate exactly; general callables are handled
    by Gauss-Legendre quadrature on each polynomial piece of the kernel.
    """
    inst = kernel(n, sigma, x)
    if isinstance(f, Poly):
        return inst.density.integrate(weight=f)
    total = 0.0
    bps = inst.density.breakpoints
    for i, piece in enumerate(inst.density.pieces):
        lo, hi = float(bps[i]), float(bps[i + 1])
        rule = gauss_legendre(quad_points, lo, hi)
        val, _ = quadrature(rule, lambda t, piece=piece: float(piece(t)) * f(t))
        total += val
    return total


def variance(n: int, sigma, x) -> Fraction:
    """Exact kernel variance  L e_2 - (L e_1)^2  at the point x."""
    m1 = apply_Ln(n, sigma, E1, x)
    m2 = apply_Ln(n, sigma, E2, x)
    return m2 - m1 * m1
