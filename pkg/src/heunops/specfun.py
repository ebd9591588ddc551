"""Series evaluation of Gauss hypergeometric, Legendre, local Heun and
confluent Heun functions, squared-weight kernel sums, and the quadrature
rules used by their integral representations.

Two arithmetic regimes coexist:

* exact mode (``Fraction`` parameters) for coefficient recurrences,
  termination detection and polynomial extraction;
* float mode for grid evaluation, with the truncation rule "stop once
  three consecutive terms fall below ``tol`` times the partial sum".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Iterable, Iterator, Union

import numpy as np

from .errors import (
    DivergentSeries,
    DomainError,
    IndexOutOfRange,
    InvalidC,
    InvalidGamma,
    NonFinite,
)
from .exactalg import Poly, rat

Scalar = Union[Fraction, int, float]

MAX_TERMS = 100_000
#: how many exact coefficients are scanned for termination before falling
#: back to float streaming (covers every polynomial case used here)
EXACT_PREFIX = 128


def _is_exact(v: Scalar) -> bool:
    return isinstance(v, (int, Fraction)) and not isinstance(v, bool)


def _is_nonpositive_integer(v: Scalar) -> bool:
    if isinstance(v, (int, Fraction)):
        return v <= 0 and Fraction(v).denominator == 1
    return v <= 0 and float(v).is_integer()


@dataclass(frozen=True)
class SeriesResult:
    """Outcome of a truncated series evaluation.

    ``terminated`` means the series stopped exactly (polynomial case), in
    which case ``tail_estimate`` is 0 by construction.
    """

    value: float
    terms_used: int
    terminated: bool
    tail_estimate: float


@dataclass(frozen=True)
class HeunParams:
    """Parameters (a, q; alpha, beta; gamma, delta) of the local Heun
    function normalized to 1 at the origin.

    The second exponent parameter is fixed by the Fuchsian relation,
    ``epsilon = alpha + beta + 1 - gamma - delta``.
    """

    a: Scalar
    q: Scalar
    alpha: Scalar
    beta: Scalar
    gamma: Scalar
    delta: Scalar

    def __post_init__(self) -> None:
        if self.a == 0 or self.a == 1:
            raise DomainError("singularity location a must avoid 0 and 1")
        if _is_nonpositive_integer(self.gamma):
            raise InvalidGamma("gamma must not be a non-positive integer")

    @property
    def epsilon(self) -> Scalar:
        return self.alpha + self.beta + 1 - self.gamma - self.delta

    @property
    def is_rational(self) -> bool:
        return all(_is_exact(v) for v in (self.a, self.q, self.alpha, self.beta, self.gamma, self.delta))


@dataclass(frozen=True)
class ConfluentHeunParams:
    """Parameters (p, gamma, delta, alpha, sigma) of the confluent Heun
    function u with u(0) = 1, solving

        u'' + (4p + gamma/x + delta/(x-1)) u' + (4 p alpha x - sigma)/(x(x-1)) u = 0.
    """

    p: Scalar
    gamma: Scalar
    delta: Scalar
    alpha: Scalar
    sigma: Scalar

    def __post_init__(self) -> None:
        if _is_nonpositive_integer(self.gamma):
            raise InvalidGamma("gamma must not be a non-positive integer")

    @property
    def is_rational(self) -> bool:
        return all(_is_exact(v) for v in (self.p, self.gamma, self.delta, self.alpha, self.sigma))


# ---------------------------------------------------------------------------
# generic three-term machinery
# ---------------------------------------------------------------------------


def _heun_stream(params: HeunParams, exact: bool) -> Iterator:
    """Yield the local-series coefficients c_0 = 1, c_1, c_2, ...

    Recurrence (coefficient of x^k in the polynomial form of the ODE):

        a(k+1)(k+gamma) c_{k+1}
            = [(1+a)k(k-1) + (gamma(1+a) + delta*a + epsilon)k + q] c_k
              - (k-1+alpha)(k-1+beta) c_{k-1}
    """
    conv: Callable = rat if exact else float
    a, q = conv(params.a), conv(params.q)
    al, be = conv(params.alpha), conv(params.beta)
    ga, de = conv(params.gamma), conv(params.delta)
    eps = al + be + 1 - ga - de
    lin = ga * (1 + a) + de * a + eps
    c_prev = 0 if exact else 0.0
    c = Fraction(1) if exact else 1.0
    yield c
    k = 0
    while True:
        num = ((1 + a) * k * (k - 1) + lin * k + q) * c - (k - 1 + al) * (k - 1 + be) * c_prev
        c_prev, c = c, num / (a * (k + 1) * (k + ga))
        yield c
        k += 1


def _confluent_stream(params: ConfluentHeunParams, exact: bool) -> Iterator:
    """Yield the series coefficients of the confluent Heun function at 0.

        (k+1)(k+gamma) c_{k+1}
            = [k(k-1) + (gamma + delta - 4p)k - sigma] c_k + 4p(k-1+alpha) c_{k-1}
    """
    conv: Callable = rat if exact else float
    p, ga, de = conv(params.p), conv(params.gamma), conv(params.delta)
    al, sg = conv(params.alpha), conv(params.sigma)
    c_prev = 0 if exact else 0.0
    c = Fraction(1) if exact else 1.0
    yield c
    k = 0
    while True:
        num = (k * (k - 1) + (ga + de - 4 * p) * k - sg) * c + 4 * p * (k - 1 + al) * c_prev
        c_prev, c = c, num / ((k + 1) * (k + ga))
        yield c
        k += 1


def _exact_prefix(stream: Iterator, cap: int) -> tuple[list[Fraction], bool]:
    """Collect exact coefficients until two consecutive zeros (all later
    ones vanish in a three-term recurrence) or ``cap`` terms.

    Returns the collected list and whether the series terminated.
    """
    coeffs: list[Fraction] = []
    for c in stream:
        coeffs.append(c)
        if len(coeffs) >= 2 and coeffs[-1] == 0 and coeffs[-2] == 0:
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
            return coeffs, True
        if len(coeffs) > cap:
            return coeffs, False


def _sum_series(stream: Iterator, x: float, tol: float, radius: float, deriv: bool) -> SeriesResult:
    """Float summation with the three-consecutive-small-terms stop rule."""
    s = 0.0
    small = 0
    zeros = 0
    last = 0.0
    xpow = 1.0  # x^(k-1) when deriv else x^k
    for k, c in enumerate(stream):
        if k > MAX_TERMS:
            raise DivergentSeries(f"no convergence within {MAX_TERMS} terms")
        if abs(c) > 1e280:
            raise DivergentSeries("coefficient overflow; argument too close to the disk boundary")
        if deriv:
            t = k * c * xpow if k else 0.0
            if k:
                xpow *= x
        else:
            t = c * xpow
            xpow *= x
        s += t
        last = t
        zeros = zeros + 1 if c == 0.0 else 0
        if zeros >= 3:
            return SeriesResult(s, k + 1, True, 0.0)
        small = small + 1 if abs(t) <= tol * abs(s) else 0
        if small >= 3:
            break
    r = min(abs(x) / radius, 0.999) if radius < math.inf else 0.0
    tail = abs(last) * r / (1.0 - r)
    return SeriesResult(s, k + 1, False, tail)


def _eval_exact_poly(coeffs: list[Fraction], x, deriv: bool) -> float:
    p = Poly(tuple(coeffs))
    if deriv:
        p = p.derivative()
    return float(p(rat(x) if _is_exact(x) else float(x)))


# ---------------------------------------------------------------------------
# Gauss hypergeometric series
# ---------------------------------------------------------------------------


def _hyp2f1_stop_index(a: Scalar, b: Scalar) -> int | None:
    """Largest index with a nonzero term when the series terminates, else None."""
    stops = [int(-v) for v in (a, b) if _is_nonpositive_integer(v)]
    return min(stops) if stops else None


def hyp2f1(a: Scalar, b: Scalar, c: Scalar, x: Scalar, tol: float = 1e-15) -> SeriesResult:
    """Gauss series ``sum (a)_k (b)_k / ((c)_k k!) x^k``.

    Terminating cases (a or b a non-positive integer) are summed exactly
    and work for any x; otherwise |x| < 1 is required.
    """
    stop = _hyp2f1_stop_index(a, b)
    if stop is not None and _is_nonpositive_integer(c) and -int(Fraction(c) if _is_exact(c) else c) < stop:
        raise InvalidC("c hits a non-positive integer before the series terminates")
    if stop is None:
        if _is_nonpositive_integer(c):
            raise InvalidC("c is a non-positive integer and the series does not terminate")
        if abs(float(x)) >= 1.0:
            raise DivergentSeries("|x| >= 1 with a non-terminating Gauss series")
    if stop is not None and all(_is_exact(v) for v in (a, b, c)) and _is_exact(x):
        value = float(hyp2f1_poly(a, b, c)(rat(x)))
        return SeriesResult(value, stop + 1, True, 0.0)

    xf = float(x)
    if stop is not None:
        s = 0.0
        t = 1.0
        for k in range(stop + 1):
            s += t * xf**k
            if k < stop:
                t = t * (float(a) + k) * (float(b) + k) / ((float(c) + k) * (k + 1))
        return SeriesResult(s, stop + 1, True, 0.0)

    s = 0.0
    small = 0
    last = 0.0
    t = 1.0
    for k in range(MAX_TERMS):
        term = t * xf**k
        s += term
        last = term
        small = small + 1 if abs(term) <= tol * abs(s) else 0
        if small >= 3:
            break
        t = t * (float(a) + k) * (float(b) + k) / ((float(c) + k) * (k + 1))
    else:
        raise DivergentSeries(f"no convergence within {MAX_TERMS} terms")
    r = min(abs(xf), 0.999)
    return SeriesResult(s, k + 1, False, abs(last) * r / (1 - r))


def hyp2f1_poly(a: Scalar, b: Scalar, c: Scalar) -> Poly:
    """Exact polynomial form of a terminating Gauss series with rational parameters."""
    if not all(_is_exact(v) for v in (a, b, c)):
        raise TypeError("exact polynomial form requires rational parameters")
    stop = _hyp2f1_stop_index(a, b)
    if stop is None:
        raise DivergentSeries("series does not terminate; no polynomial form")
    a, b, c = rat(a), rat(b), rat(c)
    coeffs = []
    t = Fraction(1)
    for k in range(stop + 1):
        coeffs.append(t)
        if k < stop:
            denom = (c + k) * (k + 1)
            if denom == 0:
                raise InvalidC("c hits a non-positive integer before the series terminates")
            t = t * (a + k) * (b + k) / denom
    return Poly(tuple(coeffs))


def hyp2f1_pfaff(a: Scalar, b: Scalar, c: Scalar, x: Scalar, tol: float = 1e-15) -> SeriesResult:
    """Evaluate the Gauss function through the Pfaff map on the second
    parameter: ``(1-x)^(-b) 2F1(c-a, b; c; x/(x-1))``.

    Restores convergence for x < -1, where the raw series diverges.
    """
    xf = float(x)
    if xf >= 1.0:
        raise DomainError("Pfaff-transformed evaluation requires x < 1")
    inner = hyp2f1(float(c) - float(a), b, c, xf / (xf - 1.0), tol)
    pref = (1.0 - xf) ** (-float(b))
    return SeriesResult(pref * inner.value, inner.terms_used, inner.terminated,
                        abs(pref) * inner.tail_estimate)


# ---------------------------------------------------------------------------
# Legendre polynomials
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def legendre_poly(n: int) -> Poly:
    """Exact Legendre polynomial via the three-term recurrence."""
    if n < 0:
        raise IndexOutOfRange("Legendre degree must be non-negative")
    if n == 0:
        return Poly.constant(1)
    if n == 1:
        return Poly.monomial(1)
    p_prev, p = legendre_poly(n - 2), legendre_poly(n - 1)
    k = n - 1
    return (Poly.monomial(1) * p).scale(Fraction(2 * k + 1, k + 1)) - p_prev.scale(Fraction(k, k + 1))


def legendre_p(n: int, x: Scalar):
    """Value of P_n(x) by the three-term recurrence; exact for rational x."""
    if n < 0:
        raise IndexOutOfRange("Legendre degree must be non-negative")
    one = Fraction(1) if _is_exact(x) else 1.0
    p_prev, p = one, x * one
    if n == 0:
        return p_prev
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    return p


# ---------------------------------------------------------------------------
# local Heun functions
# ---------------------------------------------------------------------------


def heun_radius(params: HeunParams) -> float:
    return min(1.0, abs(float(params.a)))


def heun_coeffs(params: HeunParams, count: int) -> list:
    """First ``count`` local-series coefficients (exact when the parameters are)."""
    stream = _heun_stream(params, params.is_rational)
    return [c for _, c in zip(range(count), stream)]


def _heun_terminated(params: HeunParams, cap: int) -> tuple[list[Fraction], bool]:
    if not params.is_rational:
        return [], False
    return _exact_prefix(_heun_stream(params, True), cap)


def heun_poly(params: HeunParams, max_degree: int = 256) -> Poly:
    """Exact polynomial form of a terminating local Heun series.

    Raises :class:`DivergentSeries` if no termination occurs by ``max_degree``.
    """
    coeffs, terminated = _heun_terminated(params, max_degree + 2)
    if not terminated:
        raise DivergentSeries(f"local Heun series does not terminate by degree {max_degree}")
    return Poly(tuple(coeffs))


def heun_local(params: HeunParams, x: Scalar, tol: float = 1e-12) -> SeriesResult:
    """Local Heun function at ``x`` (series at the origin, value 1 there)."""
    return _heun_eval(params, x, tol, deriv=False)


def heun_local_deriv(params: HeunParams, x: Scalar, tol: float = 1e-12) -> SeriesResult:
    """Termwise-differentiated local Heun series at ``x``."""
    return _heun_eval(params, x, tol, deriv=True)


def _heun_eval(params: HeunParams, x: Scalar, tol: float, deriv: bool) -> SeriesResult:
    coeffs, terminated = _heun_terminated(params, EXACT_PREFIX)
    if terminated:
        return SeriesResult(_eval_exact_poly(coeffs, x, deriv), len(coeffs), True, 0.0)
    radius = heun_radius(params)
    if abs(float(x)) >= radius:
        raise DivergentSeries(f"|x| >= {radius}: outside the disk of the non-terminating local series")
    return _sum_series(_heun_stream(params, False), float(x), tol, radius, deriv)


def heun_ode_residual(params: HeunParams, p: Poly) -> Poly:
    """Exact residual of ``p`` in the polynomial form of Heun's equation:

        x(x-1)(x-a) p'' + [gamma (x-1)(x-a) + delta x(x-a) + epsilon x(x-1)] p'
        + (alpha beta x - q) p

    The zero polynomial certifies that ``p`` solves the equation.
    """
    if not params.is_rational:
        raise TypeError("exact residual requires rational parameters")
    a, q = rat(params.a), rat(params.q)
    al, be = rat(params.alpha), rat(params.beta)
    ga, de = rat(params.gamma), rat(params.delta)
    eps = al + be + 1 - ga - de
    m = Poly.of(0, a, -(1 + a), 1)
    n = Poly.of(a, -(1 + a), 1).scale(ga) + Poly.of(0, -a, 1).scale(de) + Poly.of(0, -1, 1).scale(eps)
    lin = Poly.of(-q, al * be)
    return m * p.derivative().derivative() + n * p.derivative() + lin * p


# ---------------------------------------------------------------------------
# confluent Heun functions
# ---------------------------------------------------------------------------


def confluent_heun_coeffs(params: ConfluentHeunParams, count: int) -> list:
    stream = _confluent_stream(params, params.is_rational)
    return [c for _, c in zip(range(count), stream)]


def confluent_heun_poly(params: ConfluentHeunParams, max_degree: int = 256) -> Poly:
    coeffs, terminated = _confluent_terminated(params, max_degree + 2)
    if not terminated:
        raise DivergentSeries(f"confluent Heun series does not terminate by degree {max_degree}")
    return Poly(tuple(coeffs))


def _confluent_terminated(params: ConfluentHeunParams, cap: int) -> tuple[list[Fraction], bool]:
    if not params.is_rational:
        return [], False
    return _exact_prefix(_confluent_stream(params, True), cap)


def confluent_heun(params: ConfluentHeunParams, x: Scalar, tol: float = 1e-12) -> SeriesResult:
    """Confluent Heun function at ``x``, series at the origin with value 1."""
    return _confluent_eval(params, x, tol, deriv=False)


def confluent_heun_deriv(params: ConfluentHeunParams, x: Scalar, tol: float = 1e-12) -> SeriesResult:
    return _confluent_eval(params, x, tol, deriv=True)


def _confluent_eval(params: ConfluentHeunParams, x: Scalar, tol: float, deriv: bool) -> SeriesResult:
    coeffs, terminated = _confluent_terminated(params, EXACT_PREFIX)
    if terminated:
        return SeriesResult(_eval_exact_poly(coeffs, x, deriv), len(coeffs), True, 0.0)
    if abs(float(x)) >= 1.0:
        raise DivergentSeries("|x| >= 1: outside the disk set by the singularity at 1")
    return _sum_series(_confluent_stream(params, False), float(x), tol, 1.0, deriv)


def confluent_heun_ode_residual(params: ConfluentHeunParams, u: Poly) -> Poly:
    """Exact residual of ``u`` in the cleared-denominator confluent equation:

        x(x-1) u'' + [4p x(x-1) + gamma (x-1) + delta x] u' + (4 p alpha x - sigma) u

    For a truncated series of a true solution the residual coefficients
    vanish through the truncation order.
    """
    if not params.is_rational:
        raise TypeError("exact residual requires rational parameters")
    p, ga, de = rat(params.p), rat(params.gamma), rat(params.delta)
    al, sg = rat(params.alpha), rat(params.sigma)
    m = Poly.of(0, -1, 1)
    n = m.scale(4 * p) + Poly.of(-ga, ga) + Poly.of(0, de)
    lin = Poly.of(-sg, 4 * p * al)
    return m * u.derivative().derivative() + n * u.derivative() + lin * u


# ---------------------------------------------------------------------------
# squared-weight kernel sums
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def f_poly(n: int) -> Poly:
    """Exact polynomial  sum_k [C(n,k) x^k (1-x)^(n-k)]^2  of degree 2n."""
    if n < 0:
        raise IndexOutOfRange("degree index must be non-negative")
    one_minus_x = Poly.of(1, -1)
    total = Poly()
    for k in range(n + 1):
        total = total + (Poly.monomial(2 * k) * one_minus_x ** (2 * (n - k))).scale(comb(n, k) ** 2)
    return total


def kernel_sum(kind: str, n: int, x: Scalar, tol: float = 1e-15):
    """Squared-weight sums of the four discrete operator families.

    ``F`` and ``U`` are finite sums, exact for rational ``x``.  ``G`` is
    restricted to x >= 0 (the operator domain); ``J`` requires |x| < 1.
    """
    if n < 0:
        raise IndexOutOfRange("family index must be non-negative")
    if kind == "F":
        acc = Fraction(0) if _is_exact(x) else 0.0
        for k in range(n + 1):
            acc += (comb(n, k) ** 2) * x ** (2 * k) * (1 - x) ** (2 * (n - k))
        return acc
    if kind == "U":
        if x == -1:
            raise DomainError("U is undefined at x = -1")
        acc = Fraction(0) if _is_exact(x) else 0.0
        for k in range(n + 1):
            acc += (comb(n, k) ** 2) * x ** (2 * k)
        return acc / (1 + x) ** (2 * n)
    if kind == "G":
        if x < 0:
            raise DomainError("G is evaluated on x >= 0 only")
        if n == 0:
            return 1.0  # only the k = 0 term survives
        xf = float(x)
        s = 0.0
        small = 0
        for k in range(MAX_TERMS):
            t = (comb(n + k - 1, k) * xf**k * (1 + xf) ** (-n - k)) ** 2
            s += t
            small = small + 1 if t <= tol * s else 0
            if small >= 3:
                return s
        raise DivergentSeries("G series did not converge")
    if kind == "J":
        if abs(float(x)) >= 1:
            raise DivergentSeries("J series requires |x| < 1")
        xf = float(x)
        pref = (1 - xf) ** (2 * (n + 1))
        s = 0.0
        small = 0
        for k in range(MAX_TERMS):
            t = (comb(n + k, k) * xf**k) ** 2
            s += t
            small = small + 1 if abs(t) <= tol * abs(s) else 0
            if small >= 3:
                return pref * s
        raise DivergentSeries("J series did not converge")
    raise DomainError(f"unknown kernel-sum family {kind!r}")


# ---------------------------------------------------------------------------
# squared Poisson-weight sum K_n and its derivatives
# ---------------------------------------------------------------------------


def kn_deriv_zero(n: int, j: int) -> Fraction:
    """Exact j-th derivative at 0 of the squared Poisson-weight sum:

        (-2n)^j sum_{i=0}^{[j/2]} C(j, 2i) C(2i, i) 4^(-i)
    """
    if j < 0:
        raise IndexOutOfRange("derivative order must be non-negative")
    s = sum(Fraction(comb(j, 2 * i) * comb(2 * i, i), 4**i) for i in range(j // 2 + 1))
    return Fraction(-2 * n) ** j * s


def kn_taylor_coeffs(n: int, count: int) -> list[Fraction]:
    """Exact Taylor coefficients of ``exp(-2nx) * sum_k (nx)^(2k)/(k!)^2``
    at the origin, by Cauchy product of the two factor series.

    Independent oracle for the closed form of :func:`kn_deriv_zero`.
    """
    out = []
    for m in range(count):
        acc = Fraction(0)
        for k in range(m // 2 + 1):
            acc += Fraction(n ** (2 * k), math.factorial(k) ** 2) * Fraction(
                (-2 * n) ** (m - 2 * k), math.factorial(m - 2 * k)
            )
        out.append(acc)
    return out


def szasz_K(n: int, j: int, x: Scalar, tol: float = 1e-15) -> float:
    """j-th derivative of the squared Poisson-weight sum at x >= 0.

    j = 0 sums the defining series; j = 1 sums its termwise derivative;
    higher orders climb the second-order derivative ladder

        x K^(m) = -(4nx + m - 1) K^(m-1) - 2n(2m - 3) K^(m-2),

    which avoids the cancellation of repeated termwise differentiation.
    At x = 0 the exact closed form is used.
    """
    if j < 0:
        raise IndexOutOfRange("derivative order must be non-negative")
    if j > 16:
        raise DomainError("derivative ladder supported for j <= 16")
    if x < 0:
        raise DomainError("K is evaluated on x >= 0 only")
    xf = float(x)
    if xf == 0.0:
        return float(kn_deriv_zero(n, j))

    def poisson_weights() -> Iterator[float]:
        w = math.exp(-n * xf)
        k = 0
        while True:
            yield w
            w = w * (n * xf) / (k + 1)
            k += 1

    k0 = 0.0
    k1 = 0.0
    w_prev = 0.0
    small = 0
    for idx, w in enumerate(poisson_weights()):
        k0 += w * w
        k1 += 2 * n * w * (w_prev - w)
        w_prev = w
        small = small + 1 if w * w <= tol * k0 else 0
        if small >= 3 and idx > n * xf:
            break
        if idx > MAX_TERMS:
            raise DivergentSeries("Poisson-weight series did not converge")
    if j == 0:
        return k0
    if j == 1:
        return k1
    lower, upper = k0, k1
    for m in range(2, j + 1):
        lower, upper = upper, -((4 * n * xf + m - 1) * upper + 2 * n * (2 * m - 3) * lower) / xf
    return upper


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadratureRule:
    """A concrete quadrature rule on a closed interval.

    ``gauss-legendre`` uses ``npoints`` Gauss nodes; ``periodic-trapezoid``
    uses the closed composite trapezoid with ``npoints`` subintervals,
    which converges spectrally for smooth integrands extending to even
    periodic functions.
    """

    kind: str
    npoints: int
    a: float
    b: float

    def __post_init__(self) -> None:
        if self.kind not in ("gauss-legendre", "periodic-trapezoid"):
            raise DomainError(f"unknown quadrature kind {self.kind!r}")
        if self.npoints < 2:
            raise DomainError("quadrature needs at least 2 points")


def gauss_legendre(npoints: int, a: float, b: float) -> QuadratureRule:
    return QuadratureRule("gauss-legendre", npoints, float(a), float(b))


def periodic_trapezoid(npoints: int, a: float, b: float) -> QuadratureRule:
    return QuadratureRule("periodic-trapezoid", npoints, float(a), float(b))


def _apply_rule(kind: str, npoints: int, a: float, b: float, f: Callable[[float], float]) -> float:
    if kind == "gauss-legendre":
        nodes, weights = np.polynomial.legendre.leggauss(npoints)
        nodes = 0.5 * (b - a) * nodes + 0.5 * (a + b)
        weights = 0.5 * (b - a) * weights
    else:
        h = (b - a) / npoints
        nodes = np.linspace(a, b, npoints + 1)
        weights = np.full(npoints + 1, h)
        weights[0] = weights[-1] = h / 2
    total = 0.0
    for t, w in zip(nodes, weights):
        v = f(float(t))
        if not math.isfinite(v):
            raise NonFinite(f"integrand is not finite at node {t}")
        total += w * v
    return total


def quadrature(rule: QuadratureRule, f: Callable[[float], float]) -> tuple[float, float]:
    """Apply ``rule`` to ``f``; the error estimate compares against the
    same rule with twice the points."""
    coarse = _apply_rule(rule.kind, rule.npoints, rule.a, rule.b, f)
    fine = _apply_rule(rule.kind, 2 * rule.npoints, rule.a, rule.b, f)
    return coarse, abs(fine - coarse)
