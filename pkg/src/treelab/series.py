"""Order-limited formal power series with exact polynomial coefficients.

A series holds coefficients c_0..c_K in one distinguished variable t, each
an exact ``Polynomial`` over a shared variable tuple (possibly empty, in
which case coefficients are plain rationals).  Arithmetic is exact through
the truncation order; binary operations truncate to the smaller order of
the two operands.

Operations with ring-theoretic preconditions check them and reject
violations: inversion needs a nonzero constant *scalar* term, sqrt needs
constant term exactly 1, exp needs constant term 0, and division by t
requires the discarded low-order coefficients to vanish exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .polynomials import Polynomial, Scalar


class SeriesDomainError(ValueError):
    pass


def _promote(variables: tuple[str, ...], value: "Polynomial | Scalar") -> Polynomial:
    if isinstance(value, Polynomial):
        if value.vars != variables:
            raise ValueError(f"variable mismatch: {variables} vs {value.vars}")
        return value
    return Polynomial.constant(variables, value)


class TruncatedSeries:
    __slots__ = ("vars", "order", "coeffs")

    def __init__(
        self,
        variables: tuple[str, ...],
        coeffs: Sequence[Polynomial | Scalar],
        order: int,
    ):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        if len(coeffs) > order + 1:
            coeffs = coeffs[: order + 1]
        padded = list(coeffs) + [0] * (order + 1 - len(coeffs))
        self.vars = tuple(variables)
        self.order = order
        self.coeffs = tuple(_promote(self.vars, c) for c in padded)

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, variables: tuple[str, ...], order: int) -> "TruncatedSeries":
        return cls(variables, [], order)

    @classmethod
    def constant(
        cls, variables: tuple[str, ...], value: Polynomial | Scalar, order: int
    ) -> "TruncatedSeries":
        return cls(variables, [value], order)

    @classmethod
    def t(cls, variables: tuple[str, ...], order: int) -> "TruncatedSeries":
        return cls(variables, [0, 1], order)

    # -- queries ---------------------------------------------------------------

    def coefficient(self, n: int) -> Polynomial:
        if not 0 <= n <= self.order:
            raise IndexError(f"coefficient {n} beyond truncation order {self.order}")
        return self.coeffs[n]

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.vars, self.coeffs[: order + 1], order)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.vars == other.vars
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __repr__(self) -> str:
        inner = "; ".join(c.render() for c in self.coeffs)
        return f"TruncatedSeries[{inner}]"

    # -- arithmetic --------------------------------------------------------------

    def _align(self, other: "TruncatedSeries") -> int:
        if other.vars != self.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")
        return min(self.order, other.order)

    def __add__(self, other: "TruncatedSeries | Polynomial | Scalar") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(self.vars, other, self.order)
        k = self._align(other)
        return TruncatedSeries(
            self.vars,
            [a + b for a, b in zip(self.coeffs[: k + 1], other.coeffs[: k + 1])],
            k,
        )

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.vars, [-c for c in self.coeffs], self.order)

    def __sub__(self, other: "TruncatedSeries | Polynomial | Scalar") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(self.vars, other, self.order)
        return self + (-other)

    def __rsub__(self, other: "Polynomial | Scalar") -> "TruncatedSeries":
        return TruncatedSeries.constant(self.vars, other, self.order) - self

    def __mul__(self, other: "TruncatedSeries | Polynomial | Scalar") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            factor = _promote(self.vars, other)
            return TruncatedSeries(
                self.vars, [c * factor for c in self.coeffs], self.order
            )
        k = self._align(other)
        out = [Polynomial.zero(self.vars) for _ in range(k + 1)]
        for i, a in enumerate(self.coeffs[: k + 1]):
            if a.is_zero:
                continue
            for j in range(k + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(self.vars, out, k)

    __rmul__ = __mul__

    # -- ring operations with preconditions ---------------------------------------

    def inverse(self) -> "TruncatedSeries":
        c0 = self.coeffs[0]
        if not c0.is_constant or c0.constant_term() == 0:
            raise SeriesDomainError("inversion needs a nonzero constant scalar term")
        inv0 = Fraction(1) / c0.constant_term()
        out = [Polynomial.constant(self.vars, inv0)]
        for n in range(1, self.order + 1):
            acc = Polynomial.zero(self.vars)
            for k in range(1, n + 1):
                acc = acc + self.coeffs[k] * out[n - k]
            out.append(acc * (-inv0))
        return TruncatedSeries(self.vars, out, self.order)

    def sqrt(self) -> "TruncatedSeries":
        """Square root of a series with constant term exactly 1, by the
        coefficient recursion for R*R = S."""
        if self.coeffs[0] != Polynomial.constant(self.vars, 1):
            raise SeriesDomainError("series sqrt needs constant term 1")
        out = [Polynomial.constant(self.vars, 1)]
        half = Fraction(1, 2)
        for n in range(1, self.order + 1):
            acc = self.coeffs[n]
            for k in range(1, n):
                acc = acc - out[k] * out[n - k]
            out.append(acc * half)
        return TruncatedSeries(self.vars, out, self.order)

    def exp(self) -> "TruncatedSeries":
        """exp of a series with zero constant term, via E' = F'E."""
        if not self.coeffs[0].is_zero:
            raise SeriesDomainError("series exp needs constant term 0")
        out = [Polynomial.constant(self.vars, 1)]
        for n in range(1, self.order + 1):
            acc = Polynomial.zero(self.vars)
            for k in range(1, n + 1):
                acc = acc + self.coeffs[k] * out[n - k] * k
            out.append(acc * Fraction(1, n))
        return TruncatedSeries(self.vars, out, self.order)

    def derivative(self) -> "TruncatedSeries":
        if self.order == 0:
            raise SeriesDomainError("cannot differentiate an order-0 series")
        out = [self.coeffs[n] * n for n in range(1, self.order + 1)]
        return TruncatedSeries(self.vars, out, self.order - 1)

    def integral(self) -> "TruncatedSeries":
        """Formal integral from 0; gains one order."""
        out: list[Polynomial] = [Polynomial.zero(self.vars)]
        out.extend(self.coeffs[n] * Fraction(1, n + 1) for n in range(self.order + 1))
        return TruncatedSeries(self.vars, out, self.order + 1)

    def divide_by_t(self, power: int = 1) -> "TruncatedSeries":
        """Exact division by t**power; the discarded coefficients must be
        identically zero."""
        if power > self.order:
            raise SeriesDomainError("order too small to divide by t")
        for n in range(power):
            if not self.coeffs[n].is_zero:
                raise ArithmeticError(
                    f"division by t^{power} leaves remainder at order {n}"
                )
        return TruncatedSeries(self.vars, self.coeffs[power:], self.order - power)
