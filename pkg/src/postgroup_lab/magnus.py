"""Truncated formal series over the tensor algebra.

A series holds one TensorPoly per power of t up to a fixed order;
products keep the cross terms that fit and drop the rest.  The module
builds the dot exponential of a generator, the twisted exponential and
logarithm, the deformation series alpha(tx) = S_*(exp^.(tx)) |> x, the
right flow Y' = Y.alpha solved order by order, and the twisted Magnus
series whose twisted exponential reproduces exp^.(tx).  All
coefficients are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import ShapeError, SizeCapError
from .tensor_postlie import (
    DEGREE_CAP,
    LawReport,
    MagmaTree,
    TensorPoly,
    antipode_star,
    concat,
    gl_lie_bracket,
    gl_star,
    is_primitive,
    kmap_tensor,
    triangle,
)


@dataclass(frozen=True)
class TruncatedSeries:
    """Polynomial in t with TensorPoly coefficients, exact truncation."""

    coeffs: tuple  # tuple[TensorPoly, ...], index = power of t

    def __post_init__(self):
        if not self.coeffs:
            raise ShapeError("a series needs at least the constant coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> TensorPoly:
        if 0 <= k <= self.order:
            return self.coeffs[k]
        return TensorPoly.zero()

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls(tuple(TensorPoly.zero() for _ in range(order + 1)))

    @classmethod
    def unit(cls, order: int) -> "TruncatedSeries":
        polys = [TensorPoly.unit()]
        polys += [TensorPoly.zero() for _ in range(order)]
        return cls(tuple(polys))

    def __add__(self, other):
        order = min(self.order, other.order)
        return TruncatedSeries(
            tuple(self.coeffs[k] + other.coeffs[k] for k in range(order + 1))
        )

    def __sub__(self, other):
        order = min(self.order, other.order)
        return TruncatedSeries(
            tuple(self.coeffs[k] - other.coeffs[k] for k in range(order + 1))
        )

    def __rmul__(self, scalar):
        return TruncatedSeries(tuple(scalar * c for c in self.coeffs))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)


def _convolve(left: TruncatedSeries, right: TruncatedSeries, product) -> TruncatedSeries:
    order = min(left.order, right.order)
    out = []
    for k in range(order + 1):
        total = TensorPoly.zero()
        for i in range(k + 1):
            a, b = left.coeffs[i], right.coeffs[k - i]
            if a.is_zero() or b.is_zero():
                continue
            total = total + product(a, b)
        out.append(total)
    return TruncatedSeries(tuple(out))


def series_concat(left: TruncatedSeries, right: TruncatedSeries) -> TruncatedSeries:
    return _convolve(left, right, concat)


def series_star(left: TruncatedSeries, right: TruncatedSeries) -> TruncatedSeries:
    return _convolve(left, right, gl_star)


def series_triangle(left: TruncatedSeries, right: TruncatedSeries) -> TruncatedSeries:
    return _convolve(left, right, triangle)


def derivative(series: TruncatedSeries) -> TruncatedSeries:
    if series.order == 0:
        return TruncatedSeries.zero(0)
    return TruncatedSeries(
        tuple((k + 1) * series.coeffs[k + 1] for k in range(series.order))
    )


def integrate(series: TruncatedSeries) -> TruncatedSeries:
    polys = [TensorPoly.zero()]
    polys += [
        Fraction(1, k + 1) * series.coeffs[k] for k in range(series.order + 1)
    ]
    return TruncatedSeries(tuple(polys))


def _check_order(order: int) -> None:
    if order < 0:
        raise ShapeError("series order must be nonnegative")
    if order + 1 > DEGREE_CAP:
        raise SizeCapError(
            f"order {order} would need leaf degrees past the cap {DEGREE_CAP}"
        )


def exp_dot_series(x: MagmaTree, order: int) -> TruncatedSeries:
    """exp of tx for the concatenation product: t^k x^{.k} / k!."""
    _check_order(order)
    polys, factorial = [], 1
    for k in range(order + 1):
        factorial *= max(k, 1)
        polys.append(TensorPoly({(x,) * k: Fraction(1, factorial)}))
    return TruncatedSeries(tuple(polys))


def _resize(series: TruncatedSeries, order: int) -> TruncatedSeries:
    polys = [series.coeff(k) for k in range(order + 1)]
    return TruncatedSeries(tuple(polys))


def exp_star_series(z: TruncatedSeries, order: int | None = None) -> TruncatedSeries:
    """exp of a zero-constant series for the twisted product."""
    if order is None:
        order = z.order
    _check_order(order)
    if not z.coeffs[0].is_zero():
        raise ShapeError("twisted exp needs a vanishing constant term")
    z = _resize(z, order)
    total = TruncatedSeries.unit(order)
    power = TruncatedSeries.unit(order)
    factorial = 1
    for m in range(1, order + 1):
        power = series_star(power, z)
        factorial *= m
        total = total + Fraction(1, factorial) * power
    return total


def log_dot_series(y: TruncatedSeries) -> TruncatedSeries:
    """log of a unit-constant series for the concatenation product."""
    _check_order(y.order)
    if y.coeffs[0] != TensorPoly.unit():
        raise ShapeError("log needs the constant coefficient to be the unit")
    shifted = y - TruncatedSeries.unit(y.order)
    total = TruncatedSeries.zero(y.order)
    power = TruncatedSeries.unit(y.order)
    for m in range(1, y.order + 1):
        power = series_concat(power, shifted)
        sign = Fraction(1, m) if m % 2 else Fraction(-1, m)
        total = total + sign * power
    return total


@lru_cache(maxsize=None)
def bernoulli_modified(n: int) -> Fraction:
    """Bernoulli numbers with the index-one value flipped to +1/2."""
    if n < 0:
        raise ShapeError("negative Bernoulli index")
    if n == 1:
        return Fraction(1, 2)
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    for j in range(n):
        value = -bernoulli_modified(j) if j == 1 else bernoulli_modified(j)
        total += comb(n + 1, j) * value
    return -total / (n + 1)


def alpha_series(x: MagmaTree, order: int) -> TruncatedSeries:
    """The deformation series S_*(exp^.(tx)) |> x; t^k has degree k+1."""
    _check_order(order)
    exp = exp_dot_series(x, order)
    twisted = TruncatedSeries(tuple(antipode_star(c) for c in exp.coeffs))
    target = TruncatedSeries(
        tuple([TensorPoly({(x,): 1})] + [TensorPoly.zero()] * order)
    )
    return series_triangle(twisted, target)


def check_alpha_ode(x: MagmaTree, order: int, series: TruncatedSeries | None = None) -> LawReport:
    """Verify (k+1) alpha_{k+1} = -sum_{i+j=k} alpha_i |> alpha_j."""
    alpha = alpha_series(x, order) if series is None else series
    for k in range(alpha.order):
        lhs = (k + 1) * alpha.coeffs[k + 1]
        rhs = TensorPoly.zero()
        for i in range(k + 1):
            rhs = rhs - triangle(alpha.coeffs[i], alpha.coeffs[k - i])
        if lhs != rhs:
            return LawReport(
                False, f"flow equation for the deformation series fails at order {k}"
            )
    return LawReport(True)


def solve_right_flow(x: MagmaTree, order: int) -> TruncatedSeries:
    """Solve Y' = Y.alpha(tx), Y(0) = 1, order by order."""
    _check_order(order)
    alpha = alpha_series(x, order)
    polys = [TensorPoly.unit()]
    for k in range(order):
        total = TensorPoly.zero()
        for i in range(k + 1):
            total = total + concat(polys[i], alpha.coeffs[k - i])
        polys.append(Fraction(1, k + 1) * total)
    return TruncatedSeries(tuple(polys))


def _magnus_rhs(omega: TruncatedSeries, alpha: TruncatedSeries) -> TruncatedSeries:
    total = TruncatedSeries.zero(alpha.order)
    iterated = alpha
    factorial = 1
    for n in range(alpha.order + 1):
        factorial *= max(n, 1)
        weight = bernoulli_modified(n)
        if weight:
            total = total + weight * Fraction(1, factorial) * iterated
        iterated = _convolve(omega, iterated, gl_lie_bracket)
        if iterated.is_zero():
            break
    return total


def magnus_gl(x: MagmaTree, order: int) -> TruncatedSeries:
    """Twisted Magnus series: omega with exp^*(omega) = exp^.(tx).

    Built as the fixed point of omega = integral of
    sum_n (B~_n / n!) ad^n_omega(alpha), one order at a time.
    """
    _check_order(order)
    alpha = alpha_series(x, order)
    coeffs = [TensorPoly.zero() for _ in range(order + 1)]
    for k in range(order):
        rhs = _magnus_rhs(TruncatedSeries(tuple(coeffs)), alpha)
        coeffs[k + 1] = Fraction(1, k + 1) * rhs.coeffs[k]
    return TruncatedSeries(tuple(coeffs))


def check_primitivity_of_log(y: TruncatedSeries) -> LawReport:
    """Every coefficient of log^.(Y) must be primitive."""
    logs = log_dot_series(y)
    for k in range(1, logs.order + 1):
        if not is_primitive(logs.coeffs[k]):
            return LawReport(False, f"log coefficient at order {k} is not primitive")
    return LawReport(True)


def flow_matches_twisted_exp(x: MagmaTree, order: int) -> LawReport:
    """The solved flow is K applied to exp^.(tx), coefficient by
    coefficient, and the twisted exp of the Magnus series is exp^.(tx)."""
    flow = solve_right_flow(x, order)
    exp = exp_dot_series(x, order)
    for k in range(order + 1):
        if flow.coeffs[k] != kmap_tensor(exp.coeffs[k]):
            return LawReport(False, f"flow deviates from the twist map at order {k}")
    if exp_star_series(magnus_gl(x, order)) != exp:
        return LawReport(False, "twisted exp of the Magnus series misses exp^.(tx)")
    return LawReport(True)
