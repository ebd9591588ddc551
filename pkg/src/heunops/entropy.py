"""Order-2 Renyi/Tsallis entropies, variances and squared-kernel
quantities for the two positive-linear-operator families, plus the
grid synchronicity check.

For an operator with kernel density W(x, .) the quantities are

    squared kernel  s(x) = integral W(x, t)^2 dt
    Renyi entropy   -log s(x)
    Tsallis entropy 1 - s(x)
    variance        L e_2 (x) - (L e_1 (x))^2
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence, Union

from . import bspline
from .errors import DomainError, IndexOutOfRange, LengthMismatch, UnsupportedK
from .exactalg import E1, E2, Poly, PiecewisePoly, integrate_product, rat
from .specfun import periodic_trapezoid, quadrature


@dataclass(frozen=True)
class BSplineOp:
    """Kernel-integral operator on the whole line: order n, width sigma."""

    n: int
    sigma: bspline.SigmaSpec


@dataclass(frozen=True)
class KantorovichOp:
    """k-th Kantorovich modification of the degree-n Bernstein operator on [0, 1]."""

    n: int
    k: int

    def __post_init__(self) -> None:
        if not 0 <= self.k <= self.n:
            raise DomainError("Kantorovich order requires 0 <= k <= n")


OperatorSpec = Union[BSplineOp, KantorovichOp]


@dataclass(frozen=True)
class EntropyPoint:
    x: float
    squared_kernel_integral: float
    renyi: float
    tsallis: float
    variance: float

    def __post_init__(self) -> None:
        assert self.squared_kernel_integral > 0
        assert self.renyi == -math.log(self.squared_kernel_integral)
        assert self.tsallis == 1.0 - self.squared_kernel_integral


@dataclass(frozen=True)
class SynchronicityReport:
    passed: bool
    worst_pair: tuple[int, int]
    worst_product: float


def bernstein_basis(n: int, j: int, x) -> Fraction:
    """Exact Bernstein weight  C(n,j) x^j (1-x)^(n-j)."""
    if not 0 <= j <= n:
        raise IndexOutOfRange(f"basis index {j} outside 0..{n}")
    x = rat(x)
    return comb(n, j) * x**j * (1 - x) ** (n - j)


@lru_cache(maxsize=None)
def bernstein_poly(n: int, j: int) -> Poly:
    if not 0 <= j <= n:
        raise IndexOutOfRange(f"basis index {j} outside 0..{n}")
    return (Poly.monomial(j) * Poly.of(1, -1) ** (n - j)).scale(comb(n, j))


def bernstein_apply(n: int, f: Poly) -> Poly:
    """Bernstein operator on a polynomial, as an exact polynomial."""
    total = Poly()
    for j in range(n + 1):
        total = total + bernstein_poly(n, j).scale(f(Fraction(j, n)))
    return total


@lru_cache(maxsize=None)
def _kantorovich_cell(n: int, k: int, j: int) -> PiecewisePoly:
    """Degree-(k-1) B-spline density on the k+1 knots j/n, ..., (j+k)/n."""
    return bspline.bspline_density([Fraction(j + i, n) for i in range(k + 1)])


def kantorovich_poly(n: int, k: int, f: Poly, method: str = "definition") -> Poly:
    """Exact polynomial image of ``f`` under the k-th Kantorovich
    modification of the degree-n Bernstein operator.

    ``definition``    scale * D^k (Bernstein of the k-fold antiderivative)
    ``bspline-form``  sum of Bernstein weights times exact B-spline moments
                      of ``f`` (point evaluation when k = 0)

    Exact agreement of the two routes on polynomials is one of the
    verified identities.
    """
    if not 0 <= k <= n:
        raise DomainError("require 0 <= k <= n")
    if method == "definition":
        g = f
        for _ in range(k):
            g = g.antiderivative()
        out = bernstein_apply(n, g)
        for _ in range(k):
            out = out.derivative()
        scale = Fraction(n**k * math.factorial(n - k), math.factorial(n))
        return out.scale(scale)
    if method == "bspline-form":
        total = Poly()
        for j in range(n - k + 1):
            if k == 0:
                weight = f(Fraction(j, n))
            else:
                weight = _kantorovich_cell(n, k, j).integrate(weight=f)
            total = total + bernstein_poly(n - k, j).scale(weight)
        return total
    raise DomainError(f"unknown method {method!r}")


def kantorovich_apply(n: int, k: int, f: Poly, x, method: str = "definition") -> Fraction:
    """Exact value of the Kantorovich-modified operator on a polynomial."""
    return kantorovich_poly(n, k, f, method)(rat(x))


# ---------------------------------------------------------------------------
# squared kernel of the Kantorovich family
# ---------------------------------------------------------------------------


def s_direct_poly(n: int, k: int) -> Poly:
    """Squared-kernel integral of the k-th Kantorovich modification as an
    exact polynomial in x, straight from the definition:

        sum_{j,j'} b_{n-k,j}(x) b_{n-k,j'}(x) * integral B_j B_j'
    """
    if not 1 <= k <= n:
        raise UnsupportedK("squared kernel defined for 1 <= k <= n (k = 0 is the discrete family)")
    total = Poly()
    cells = [_kantorovich_cell(n, k, j) for j in range(n - k + 1)]
    for j in range(n - k + 1):
        for jp in range(n - k + 1):
            if abs(j - jp) >= k:
                continue  # disjoint supports
            overlap = integrate_product(cells[j], cells[jp])
            total = total + (bernstein_poly(n - k, j) * bernstein_poly(n - k, jp)).scale(overlap)
    return total


@lru_cache(maxsize=None)
def s2_sum_poly(n: int) -> Poly:
    """Closed sum form of the squared kernel for k = 2, an even polynomial
    in (x - 1/2):

        (n / (3(n-1) 4^(n-2))) * sum_i (3(n-2) - 2i + 2) 4^i C(2i,i)
                                        C(2(n-2)-2i, (n-2)-i) (x-1/2)^(2i)
    """
    if n < 2:
        raise UnsupportedK("sum form needs operator index >= 2")
    m = n - 2
    shifted = Poly.of(Fraction(-1, 2), 1)  # x - 1/2
    total = Poly()
    for i in range(m + 1):
        coeff = (3 * m - 2 * i + 2) * 4**i * comb(2 * i, i) * comb(2 * m - 2 * i, m - i)
        total = total + (shifted ** (2 * i)).scale(coeff)
    return total.scale(Fraction(n, 3 * (n - 1) * 4**m))


def s2_integral_form(n: int, x: float, npoints: int = 256) -> float:
    """Quadrature evaluation of the k = 2 squared kernel:

        (n / 3 pi) * integral_0^pi (1 - 4x(1-x) sin^2(phi/2))^(n-2)
                                   (1 + 2 cos^2(phi/2)) dphi
    """
    if n < 2:
        raise UnsupportedK("integral form needs operator index >= 2")
    m = n - 2
    xf = float(x)

    def integrand(phi: float) -> float:
        return (1 - 4 * xf * (1 - xf) * math.sin(phi / 2) ** 2) ** m * (
            1 + 2 * math.cos(phi / 2) ** 2
        )

    val, _ = quadrature(periodic_trapezoid(npoints, 0.0, math.pi), integrand)
    return n / (3 * math.pi) * val


def s_nk(n: int, k: int, x, method: str = "direct"):
    """Squared-kernel integral of the k-th Kantorovich modification at x.

    ``direct`` works for any 1 <= k <= n and is exact at rational x;
    ``sum-form`` and ``integral-form`` implement the k = 2 closed forms.
    """
    if method == "direct":
        return s_direct_poly(n, k)(rat(x))
    if method == "sum-form":
        if k != 2:
            raise UnsupportedK("sum form available only for k = 2")
        return s2_sum_poly(n)(rat(x))
    if method == "integral-form":
        if k != 2:
            raise UnsupportedK("integral form available only for k = 2")
        return s2_integral_form(n, float(x))
    raise DomainError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# profiles and synchronicity
# ---------------------------------------------------------------------------


def _kantorovich_point(op: KantorovichOp, x: Fraction) -> EntropyPoint:
    if x < 0 or x > 1:
        raise DomainError(f"x = {x} outside the operator domain [0, 1]")
    s = s_direct_poly(op.n, op.k)(x)
    m1 = kantorovich_poly(op.n, op.k, E1)(x)
    m2 = kantorovich_poly(op.n, op.k, E2)(x)
    var = m2 - m1 * m1
    sf = float(s)
    return EntropyPoint(float(x), sf, -math.log(sf), 1.0 - sf, float(var))


def _bspline_point(op: BSplineOp, x: Fraction) -> EntropyPoint:
    inst = bspline.kernel(op.n, op.sigma, x)
    s = integrate_product(inst.density, inst.density)
    m1 = inst.density.moment(1)
    m2 = inst.density.moment(2)
    var = m2 - m1 * m1
    sf = float(s)
    return EntropyPoint(float(x), sf, -math.log(sf), 1.0 - sf, float(var))


def entropy_profile(op: OperatorSpec, xs: Sequence) -> list[EntropyPoint]:
    """Per-point squared-kernel integral, both entropies, and the variance
    computed from exact moments (never from the closed forms)."""
    xs = [rat(x) for x in xs]
    if isinstance(op, BSplineOp):
        return [_bspline_point(op, x) for x in xs]
    if isinstance(op, KantorovichOp):
        if op.k < 1:
            raise UnsupportedK("entropy profile needs k >= 1 (k = 0 has a discrete kernel)")
        return [_kantorovich_point(op, x) for x in xs]
    raise DomainError(f"unknown operator spec {op!r}")


def synchronicity_check(f_vals: Sequence[float], g_vals: Sequence[float]) -> SynchronicityReport:
    """Pairwise-product test: pass iff (f_i - f_j)(g_i - g_j) >= 0 for all
    pairs, i.e. the two sequences move together on the grid."""
    if len(f_vals) != len(g_vals):
        raise LengthMismatch(f"{len(f_vals)} f-values vs {len(g_vals)} g-values")
    if len(f_vals) < 2:
        raise LengthMismatch("need at least two grid points")
    worst = math.inf
    worst_pair = (0, 1)
    for i in range(len(f_vals)):
        for j in range(i + 1, len(f_vals)):
            prod = (f_vals[i] - f_vals[j]) * (g_vals[i] - g_vals[j])
            if prod < worst:
                worst = prod
                worst_pair = (i, j)
    return SynchronicityReport(worst >= 0, worst_pair, worst)
