"""Exact truncated power series and the count identities built on them.

All coefficients are :class:`fractions.Fraction`; nothing in this module is
allowed to round.  A series of order N stores c_0..c_N.  Binary operations
truncate to the smaller order of their operands, so precision loss is
explicit in the result's order.

Normalizations: the parking and prime series divide count n by (n!)^2,
covering relabelings of the tree and reorderings of the sequence; the
distribution series divide by n! only, since a weakly increasing sequence
has no reorderings.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, isqrt
from typing import Callable, Iterator, NamedTuple, Sequence

from .errors import (
    BranchUndefinedError,
    FixedPointNotConvergedError,
    IdentityViolatedError,
    InputError,
    OrderMismatchError,
)

Q = Fraction


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Series:
    """Dense truncated power series with exact rational coefficients."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(_as_fraction(c) for c in self.coeffs))

    @staticmethod
    def constant(value, order: int) -> "Series":
        return Series((_as_fraction(value),) + (Q(0),) * order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> Fraction:
        if not 0 <= k <= self.order:
            raise OrderMismatchError(f"coefficient {k} beyond truncation order {self.order}")
        return self.coeffs[k]

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise OrderMismatchError(f"cannot extend order {self.order} to {order}")
        return Series(self.coeffs[: order + 1])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def first_nonzero(self) -> tuple[int, Fraction] | None:
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k, c
        return None

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> "Series":
        if isinstance(other, Series):
            return Series(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))
        other = _as_fraction(other)
        return Series((self.coeffs[0] + other,) + self.coeffs[1:])

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "Series":
        return self + (-other if isinstance(other, Series) else -_as_fraction(other))

    def __rsub__(self, other) -> "Series":
        return (-self) + _as_fraction(other)

    def __mul__(self, other) -> "Series":
        if not isinstance(other, Series):
            other = _as_fraction(other)
            return Series(tuple(c * other for c in self.coeffs))
        n = min(self.order, other.order)
        out = [Q(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return Series(tuple(out))

    __rmul__ = __mul__

    def shift_up(self) -> "Series":
        """Multiply by x; the order grows by one."""
        return Series((Q(0),) + self.coeffs)

    def shift_down(self) -> "Series":
        """Divide by x; requires a vanishing constant term."""
        if self.coeffs[0] != 0:
            raise BranchUndefinedError("cannot divide by x: constant term is nonzero")
        return Series(self.coeffs[1:])

    def x_derivative(self) -> "Series":
        """x * d/dx, which keeps the order."""
        return Series(tuple(k * c for k, c in enumerate(self.coeffs)))

    def derivative(self) -> "Series":
        return Series(tuple(k * c for k, c in enumerate(self.coeffs))[1:])

    def integral(self, constant=0) -> "Series":
        return Series(
            (_as_fraction(constant),)
            + tuple(c / (k + 1) for k, c in enumerate(self.coeffs))
        )

    # -- transcendental operations -------------------------------------------

    def exp(self) -> "Series":
        if self.coeffs[0] != 0:
            raise BranchUndefinedError("exp needs a vanishing constant term")
        n = self.order
        out = [Q(1)] + [Q(0)] * n
        for k in range(1, n + 1):
            acc = Q(0)
            for j in range(1, k + 1):
                if self.coeffs[j]:
                    acc += j * self.coeffs[j] * out[k - j]
            out[k] = acc / k
        return Series(tuple(out))

    def log(self) -> "Series":
        if self.coeffs[0] != 1:
            raise BranchUndefinedError("log needs constant term 1")
        n = self.order
        out = [Q(0)] * (n + 1)
        for k in range(1, n + 1):
            acc = k * self.coeffs[k]
            for j in range(1, k):
                acc -= j * out[j] * self.coeffs[k - j]
            out[k] = acc / k
        return Series(tuple(out))

    def sqrt(self) -> "Series":
        """Principal branch: the constant term of the result is the positive
        exact square root of c_0, which must be a perfect square rational."""
        c0 = self.coeffs[0]
        root_num, root_den = isqrt(c0.numerator), isqrt(c0.denominator)
        if c0 < 0 or root_num * root_num != c0.numerator or root_den * root_den != c0.denominator:
            raise BranchUndefinedError(f"constant term {c0} is not a perfect square")
        s0 = Q(root_num, root_den)
        if s0 == 0:
            raise BranchUndefinedError("sqrt with vanishing constant term is not a power series")
        n = self.order
        out = [s0] + [Q(0)] * n
        for k in range(1, n + 1):
            acc = self.coeffs[k]
            for j in range(1, k):
                acc -= out[j] * out[k - j]
            out[k] = acc / (2 * s0)
        return Series(tuple(out))

    def inverse(self) -> "Series":
        if self.coeffs[0] == 0:
            raise BranchUndefinedError("cannot invert a series with zero constant term")
        n = self.order
        out = [1 / self.coeffs[0]] + [Q(0)] * n
        for k in range(1, n + 1):
            acc = Q(0)
            for j in range(1, k + 1):
                if self.coeffs[j]:
                    acc += self.coeffs[j] * out[k - j]
            out[k] = -acc / self.coeffs[0]
        return Series(tuple(out))

    def compose(self, inner: "Series") -> "Series":
        """Substitute ``inner`` (which must have no constant term) into self."""
        if inner.coeffs[0] != 0:
            raise BranchUndefinedError("composition needs an inner series with zero constant term")
        n = min(self.order, inner.order)
        a = self.coeffs
        acc = Series.constant(a[n], n)
        b = inner.truncate(n)
        for k in range(n - 1, -1, -1):
            acc = acc * b + a[k]
        return acc

    def scale_argument(self, factor) -> "Series":
        """f(x) -> f(factor * x)."""
        factor = _as_fraction(factor)
        return Series(tuple(c * factor**k for k, c in enumerate(self.coeffs)))


def x_series(order: int) -> Series:
    return Series((Q(0), Q(1)) + (Q(0),) * (order - 1))


# ---------------------------------------------------------------------------
# Named series
# ---------------------------------------------------------------------------


def tree_function(order: int) -> Series:
    """Exponential series of labeled rooted trees: sum n^(n-1) x^n / n!."""
    return Series(
        (Q(0),) + tuple(Q(n ** (n - 1), factorial(n)) for n in range(1, order + 1))
    )


def catalan_series(order: int) -> Series:
    """(1 - sqrt(1 - 4x)) / (2x); coefficients are the Catalan numbers."""
    radicand = Series((Q(1), Q(-4)) + (Q(0),) * order)  # order + 1
    return ((1 - radicand.sqrt()).shift_down()) * Q(1, 2)


def schroder_series(order: int) -> Series:
    """(1 - x - sqrt(x^2 - 6x + 1)) / (2x); the large Schroeder numbers."""
    radicand = Series((Q(1), Q(-6), Q(1)) + (Q(0),) * max(order - 1, 0))  # order + 1
    numerator = Series((Q(1), Q(-1)) + (Q(0),) * order) - radicand.sqrt()
    return numerator.shift_down() * Q(1, 2)


def catalan_number(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def schroder_number(n: int) -> int:
    value = schroder_series(n).coefficient(n)
    assert value.denominator == 1
    return value.numerator


def parking_count(n: int) -> int:
    """Closed form for the number of (tree, parking function) pairs on n vertices."""
    total = sum(Q((n - i) * (2 * n) ** i, factorial(i)) for i in range(n))
    value = Q(factorial(n - 1) ** 2) * total
    assert value.denominator == 1
    return value.numerator


def prime_count(n: int) -> int:
    return factorial(2 * n - 2)


def prime_distribution_count(n: int) -> int:
    return factorial(n - 1) * schroder_number(n - 1)


def parking_series(order: int) -> Series:
    """Parking-pair series built from the tree function:
    T(2x) + log(1 - T(2x)/2), with coefficient of x^n equal to count/(n!)^2."""
    t2 = tree_function(order).scale_argument(2)
    return t2 + (1 - t2 * Q(1, 2)).log()


def prime_series(order: int, verify: bool = True) -> Series:
    """Prime-pair series sum (2n-2)! x^n / (n!)^2.

    With ``verify`` set, checks three zero residuals up to ``order``: the
    composition identity against the parking series, the derivative identity
    against the Catalan series, and the closed logarithmic form.
    """
    series = Series(
        (Q(0),)
        + tuple(Q(prime_count(n), factorial(n) ** 2) for n in range(1, order + 1))
    )
    if verify:
        assert_identities(
            order, ["parking-composition", "prime-derivative", "prime-log-form"]
        )
    return series


def _distribution_rhs(f: Series) -> Series:
    one_plus = 1 + f.x_derivative()
    one_plus2 = 1 + 2 * f.x_derivative()
    return f.exp() * one_plus * one_plus2


def distribution_ode_iterations(order: int) -> Iterator[Series]:
    """Successive coefficient iterates for the distribution series equation
    f' = exp(f) (1 + x f') (1 + 2x f') with f(0) = 0.

    Each round pins down at least one further coefficient, so the sequence
    stabilizes within ``order`` rounds.
    """
    f = x_series(order)
    yield f
    for _ in range(order + 1):
        rhs = _distribution_rhs(f)
        coeffs = [Q(0)] + [rhs.coeffs[k - 1] / k for k in range(1, order + 1)]
        nxt = Series(tuple(coeffs))
        yield nxt
        if nxt == f:
            return
        f = nxt
    raise FixedPointNotConvergedError(f"no fixed point within {order + 1} rounds")


def _distribution_series(order: int) -> Series:
    result = None
    previous = None
    for it in distribution_ode_iterations(order):
        previous, result = result, it
    assert result == previous  # loop ends on a genuine fixed point
    return result


def prime_distribution_series(order: int) -> Series:
    return Series(
        (Q(0),) + tuple(Q(schroder_number(n - 1), n) for n in range(1, order + 1))
    )


class DistributionSeries(NamedTuple):
    distribution: Series  # exponential series of parking distributions
    prime_distribution: Series  # ... of prime parking distributions
    marked_prime: Series  # prime distributions with a marked leaf
    marked_distribution: Series  # distributions with a marked leaf


def distribution_series(order: int, verify: bool = True) -> DistributionSeries:
    """The four distribution series, cross-checked against one another.

    With ``verify`` set, every distribution identity is asserted to have an
    exactly zero residual up to ``order``.
    """
    bundle = DistributionSeries(
        _distribution_series(order),
        prime_distribution_series(order),
        marked_prime_series(order),
        marked_distribution_series(order),
    )
    if verify:
        assert_identities(
            order,
            [
                "distribution-composition",
                "marked-prime-sum",
                "marked-prime-recursion",
                "schroder-quadratic",
                "schroder-gf",
                "marked-distribution-sum",
                "marked-distribution-recursion",
                "distribution-ode",
                "parking-ode",
            ],
        )
    return bundle


def marked_prime_series(order: int) -> Series:
    """x + x^2 * (prime distribution series)'."""
    inner = prime_distribution_series(order)
    return (x_series(order + 1) + inner.x_derivative().shift_up()).truncate(order)


def marked_distribution_series(order: int) -> Series:
    """x + 2 x^2 * (distribution series)'."""
    inner = _distribution_series(order)
    return (x_series(order + 1) + 2 * inner.x_derivative().shift_up()).truncate(order)


# ---------------------------------------------------------------------------
# Identity residuals
# ---------------------------------------------------------------------------


def _closed_parking_series(order: int) -> Series:
    return Series(
        (Q(0),)
        + tuple(Q(parking_count(n), factorial(n) ** 2) for n in range(1, order + 1))
    )


def _residual_parking_gf(order: int) -> Series:
    return parking_series(order) - _closed_parking_series(order)


def _residual_parking_composition(order: int) -> Series:
    f = parking_series(order)
    z = f.exp().shift_up().truncate(order)
    return f - prime_series(order, verify=False).compose(z)


def _residual_combined_composition(order: int) -> Series:
    f = parking_series(order)
    z = f.exp().shift_up().truncate(order)
    t2 = tree_function(order).scale_argument(2)
    return prime_series(order, verify=False).compose(z) - (t2 + (1 - t2 * Q(1, 2)).log())


def _residual_catalan_ratio(order: int) -> Series:
    c = catalan_series(order + 1)
    xc = c.shift_up().truncate(order + 1)
    lhs = c.truncate(order) * xc.derivative().inverse()
    rhs = (1 - 2 * xc.truncate(order)) * (1 - xc.truncate(order)).inverse()
    return lhs - rhs


def _residual_prime_derivative(order: int) -> Series:
    return prime_series(order + 1, verify=False).derivative() - catalan_series(order)


def _residual_prime_log_form(order: int) -> Series:
    c = catalan_series(order)
    xc = c.shift_up().truncate(order)
    return prime_series(order, verify=False) - (2 * xc + (1 - xc).log())


def _residual_distribution_composition(order: int) -> Series:
    f = _distribution_series(order)
    z = f.exp().shift_up().truncate(order)
    return f - prime_distribution_series(order).compose(z)


def _residual_marked_prime_sum(order: int) -> Series:
    return marked_prime_series(order) - (
        x_series(order + 1) + prime_distribution_series(order).x_derivative().shift_up()
    ).truncate(order)


def _residual_marked_prime_recursion(order: int) -> Series:
    star = marked_prime_series(order)
    d = prime_distribution_series(order + 1).derivative()
    denom = (1 - d.shift_up()).truncate(order)
    return star - (x_series(order) + (star * denom.inverse()).shift_up().truncate(order))


def _residual_schroder_quadratic(order: int) -> Series:
    d = prime_distribution_series(order + 1).derivative()
    quad = (d * d).shift_up().truncate(order)
    return quad + d.shift_up().truncate(order) - d.truncate(order) + 1


def _residual_schroder_gf(order: int) -> Series:
    return prime_distribution_series(order + 1).derivative() - schroder_series(order)


def _residual_marked_distribution_sum(order: int) -> Series:
    return marked_distribution_series(order) - (
        x_series(order + 1) + 2 * _distribution_series(order).x_derivative().shift_up()
    ).truncate(order)


def _residual_marked_distribution_recursion(order: int) -> Series:
    star = marked_distribution_series(order)
    f = _distribution_series(order + 1)
    ef = f.truncate(order).exp()
    fd = f.derivative()
    term1 = (star * ef).shift_up().truncate(order)
    term2 = fd.shift_up().shift_up().truncate(order)
    term3 = (star * fd.truncate(order) * ef).shift_up().shift_up().truncate(order)
    return star - (x_series(order) + term1 + term2 + term3)


def _residual_marked_distribution_unnormalized(order: int) -> Series:
    # Same shape as the recursion above but with the doubly-factorial parking
    # series in place of the distribution series.  Informational: the two
    # normalizations differ, so the residual is not expected to vanish.
    star = marked_distribution_series(order)
    f = parking_series(order + 1)
    ef = f.truncate(order).exp()
    fd = f.derivative()
    term1 = (star * ef).shift_up().truncate(order)
    term2 = fd.shift_up().shift_up().truncate(order)
    term3 = (star * fd.truncate(order) * ef).shift_up().shift_up().truncate(order)
    return star - (x_series(order) + term1 + term2 + term3)


def _residual_distribution_ode(order: int) -> Series:
    f = _distribution_series(order + 1)
    return f.derivative() - _distribution_rhs(f.truncate(order))


def _residual_parking_ode(order: int) -> Series:
    f = parking_series(order + 1)
    one_plus = (1 + f.truncate(order).x_derivative())
    return f.derivative() - f.truncate(order).exp() * one_plus * one_plus


_RESIDUALS: dict[str, Callable[[int], Series]] = {
    "parking-gf": _residual_parking_gf,
    "parking-composition": _residual_parking_composition,
    "combined-composition": _residual_combined_composition,
    "catalan-ratio": _residual_catalan_ratio,
    "prime-derivative": _residual_prime_derivative,
    "prime-log-form": _residual_prime_log_form,
    "distribution-composition": _residual_distribution_composition,
    "marked-prime-sum": _residual_marked_prime_sum,
    "marked-prime-recursion": _residual_marked_prime_recursion,
    "schroder-quadratic": _residual_schroder_quadratic,
    "schroder-gf": _residual_schroder_gf,
    "marked-distribution-sum": _residual_marked_distribution_sum,
    "marked-distribution-recursion": _residual_marked_distribution_recursion,
    "distribution-ode": _residual_distribution_ode,
    "parking-ode": _residual_parking_ode,
    "marked-distribution-unnormalized": _residual_marked_distribution_unnormalized,
}

# Residuals that document a relation without being expected to vanish.
INFORMATIONAL_IDENTITIES = frozenset({"marked-distribution-unnormalized"})

IDENTITY_NAMES = tuple(_RESIDUALS)


@dataclass(frozen=True)
class IdentityResult:
    name: str
    order: int
    first_bad: tuple[int, Fraction] | None
    expected_zero: bool

    @property
    def ok(self) -> bool:
        return self.first_bad is None or not self.expected_zero


def check_identity(name: str, order: int) -> IdentityResult:
    if name not in _RESIDUALS:
        raise InputError(f"unknown identity {name!r}")
    residual = _RESIDUALS[name](order)
    return IdentityResult(
        name, residual.order, residual.first_nonzero(), name not in INFORMATIONAL_IDENTITIES
    )


def check_identities(order: int, names: Sequence[str] | None = None) -> list[IdentityResult]:
    return [check_identity(name, order) for name in (names or IDENTITY_NAMES)]


def assert_identities(order: int, names: Sequence[str] | None = None) -> None:
    for result in check_identities(order, names):
        if not result.ok:
            k, value = result.first_bad
            raise IdentityViolatedError(
                f"{result.name}: residual coefficient {value} at x^{k}"
            )


# ---------------------------------------------------------------------------
# Exact count table
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CountRow:
    n: int
    parking: int
    prime: int
    distribution: int
    prime_distribution: int
    marked_prime: int
    marked_distribution: int
    catalan: int
    schroder: int


@dataclass(frozen=True)
class CountTable:
    rows: tuple[CountRow, ...]

    def row(self, n: int) -> CountRow:
        return self.rows[n - 1]


def _series_count(series: Series, n: int, normalization: int, what: str) -> int:
    value = series.coefficient(n) * normalization
    if value.denominator != 1:
        raise IdentityViolatedError(f"{what}: coefficient {n} times {normalization} is {value}")
    return value.numerator


def closed_counts(max_n: int) -> CountTable:
    """Exact integer counts for n = 1..max_n, cross-checked against the series.

    Every closed-form entry must equal the matching series coefficient times
    its factorial normalization; a mismatch raises ``IdentityViolatedError``.
    """
    parking = parking_series(max_n)
    prime = prime_series(max_n, verify=False)
    bundle = distribution_series(max_n, verify=False)
    rows = []
    for n in range(1, max_n + 1):
        square = factorial(n) ** 2
        f_n = parking_count(n)
        p_n = prime_count(n)
        ft_n = _series_count(bundle.distribution, n, factorial(n), "distribution count")
        pt_n = prime_distribution_count(n)
        ps_n = 1 if n == 1 else n * (n - 1) * prime_distribution_count(n - 1)
        fs_prev = (
            1
            if n == 1
            else _series_count(bundle.distribution, n - 1, factorial(n - 1), "distribution count")
        )
        fs_n = 1 if n == 1 else 2 * n * (n - 1) * fs_prev
        checks = [
            (parking, n, square, f_n, "parking count"),
            (prime, n, square, p_n, "prime count"),
            (bundle.prime_distribution, n, factorial(n), pt_n, "prime distribution count"),
            (bundle.marked_prime, n, factorial(n), ps_n, "marked prime count"),
            (bundle.marked_distribution, n, factorial(n), fs_n, "marked distribution count"),
        ]
        for series, k, norm, expected, what in checks:
            got = _series_count(series, k, norm, what)
            if got != expected:
                raise IdentityViolatedError(f"{what} at n={k}: series gives {got}, closed form {expected}")
        rows.append(
            CountRow(
                n,
                f_n,
                p_n,
                ft_n,
                pt_n,
                ps_n,
                fs_n,
                catalan_number(n - 1),
                schroder_number(n - 1),
            )
        )
    return CountTable(tuple(rows))
