"""Counting sequences, Motzkin polynomials, the refined Narayana
generating function, refined Eulerian polynomials, and the exponential
generating functions they satisfy.

Everything here is exact.  Ordinary generating functions live over the
five Narayana variables (u1, u2, u3, v1, v2); the Eulerian material lives
over (x, y, z1, z2); single-variable EGFs use (z,); purely numeric series
use an empty variable tuple.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core import DomainError, Multiset
from .perms import consecutive_pattern_count, perm_stats
from .polynomials import Polynomial, Scalar
from .series import TruncatedSeries

NARAYANA_VARS = ("u1", "u2", "u3", "v1", "v2")
EULERIAN_VARS = ("x", "y", "z1", "z2")
MOTZKIN_VARS = ("u", "v")


class UnsupportedParametersError(DomainError):
    pass


# ---------------------------------------------------------------------------
# Counting sequences


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside the triangle."""
    if k < 0 or k > n or n < 0:
        return 0
    return math.comb(n, k)


def catalan(n: int) -> int:
    if n < 0:
        raise DomainError("Catalan numbers need n >= 0")
    return math.comb(2 * n, n) // (n + 1)


def narayana(n: int, k: int) -> int:
    """Number of plane trees with n edges and k leaves."""
    if n < 1:
        raise DomainError("Narayana numbers need n >= 1")
    return binomial(n, k) * binomial(n, k - 1) // n


def refined_narayana_count(n: int, k: int, l: int) -> int:
    """Number of plane trees with n edges, k old leaves and l young
    leaves: (1/n) C(n,k) C(n-k,l) C(n-k-l,k-1)."""
    if n < 1:
        raise DomainError("refined Narayana counts need n >= 1")
    product = binomial(n, k) * binomial(n - k, l) * binomial(n - k - l, k - 1)
    quotient, remainder = divmod(product, n)
    if remainder:
        raise ArithmeticError("refined Narayana formula did not divide exactly")
    return quotient


def plane_tree_old_leaf_count(n: int, k: int) -> int:
    """Number of plane trees with n edges and k old leaves:
    2^(n-2k+1) C(n-1, 2k-2) C_{k-1}."""
    if n < 1:
        raise DomainError("old-leaf counts need n >= 1")
    if k < 1:
        return 0
    b = binomial(n - 1, 2 * k - 2)
    if b == 0:
        return 0
    return (2 ** (n - 2 * k + 1)) * b * catalan(k - 1)


def motzkin_poly(n: int) -> Polynomial:
    """Two-variable Motzkin polynomial
    M_n(u, v) = sum_k C(n, 2k) C_k u^(k+1) v^(n-2k)."""
    if n < 0:
        raise DomainError("Motzkin polynomials need n >= 0")
    terms = {}
    for k in range(n // 2 + 1):
        terms[(k + 1, n - 2 * k)] = binomial(n, 2 * k) * catalan(k)
    return Polynomial(MOTZKIN_VARS, terms)


# ---------------------------------------------------------------------------
# Refined Narayana generating function


def narayana_from_trees(n: int) -> Polynomial:
    """Distribution of (sleaf, etleaf, entleaf, yerleaf, syleaf) over plane
    trees with n edges, by enumeration."""
    from .stats import distribution_polynomial

    return distribution_polynomial(
        Multiset((n,)),
        ("sleaf", "etleaf", "entleaf", "yerleaf", "syleaf"),
        NARAYANA_VARS,
    )


def narayana_gf_closed(order: int) -> TruncatedSeries:
    """Closed form of N(t) = sum_n N_n t^n:

        N(t) = (a t^2 - c t + 1 - sqrt(a^2 t^4 + 2(bc - 2 u1 - 2 u2 v2) t^3
                + (c^2 - 2b) t^2 - 2 c t + 1)) / (2 t)

    with a = u1 - u3 + v1 - v2, b = u1 + u3 - v1 + v2, c = v1 + 1.  The
    numerator is checked to be divisible by t.
    """
    if order < 1:
        raise DomainError("order must be >= 1")
    V = NARAYANA_VARS
    u1, u2, u3, v1, v2 = (Polynomial.variable(V, name) for name in V)
    one = Polynomial.constant(V, 1)
    a = u1 - u3 + v1 - v2
    b = u1 + u3 - v1 + v2
    c = v1 + one
    inner = order + 1
    radicand = TruncatedSeries(
        V,
        [one, c * (-2), c * c - b * 2, (b * c - u1 * 2 - u2 * v2 * 2) * 2, a * a],
        inner,
    )
    numerator = TruncatedSeries(V, [one, -c, a], inner) - radicand.sqrt()
    return numerator.divide_by_t() * Fraction(1, 2)


def narayana_gf_fixedpoint(order: int) -> TruncatedSeries:
    """The same series from the fixed-point equation of the root
    decomposition,

        N = t (u1 + N + (N + u3 t - u1 t) N + u2 v2 t + v2 t N
               + v1 (N - u1 t - t N)),

    iterated from 0; each iteration settles one more coefficient.

    The left-branch-with-only-right-child case carries v2 (the root is a
    second-leaf there, its left child having no left child); writing u2 for
    that case contradicts both the closed form and direct enumeration at
    order 3.
    """
    if order < 1:
        raise DomainError("order must be >= 1")
    V = NARAYANA_VARS
    u1, u2, u3, v1, v2 = (Polynomial.variable(V, name) for name in V)
    t = TruncatedSeries.t(V, order)
    series = TruncatedSeries.zero(V, order)
    for _ in range(order):
        series = t * (
            u1
            + series
            + (series + t * u3 - t * u1) * series
            + t * (u2 * v2)
            + t * series * v2
            + (series - t * u1 - t * series) * v1
        )
    return series


# Frozen low-order expansions of the refined Narayana polynomials, used as
# cross-checks; exponents over (u1, u2, u3, v1, v2).  The degree-5 data
# fixes two coefficients that circulate misprinted (u1*v1*v2 carries 2 and
# 2*u2*v2^2 replaces a spurious second u2*v2 term); the enumeration route
# confirms both and the coefficient sum is C_5 = 42.
REFERENCE_REFINED_NARAYANA: dict[int, dict[tuple[int, ...], int]] = {
    1: {(1, 0, 0, 0, 0): 1},
    2: {(1, 0, 0, 0, 0): 1, (0, 1, 0, 0, 1): 1},
    3: {
        (1, 0, 0, 0, 0): 1,
        (1, 0, 1, 0, 0): 1,
        (1, 0, 0, 0, 1): 1,
        (0, 1, 0, 0, 1): 1,
        (0, 1, 0, 1, 1): 1,
    },
    4: {
        (0, 1, 0, 2, 1): 1,
        (1, 1, 0, 0, 1): 1,
        (1, 0, 1, 1, 0): 1,
        (1, 0, 0, 1, 1): 1,
        (0, 1, 1, 0, 1): 1,
        (0, 1, 0, 1, 1): 1,
        (0, 1, 0, 0, 2): 1,
        (2, 0, 0, 0, 0): 1,
        (1, 0, 1, 0, 0): 2,
        (1, 0, 0, 0, 1): 2,
        (0, 1, 0, 0, 1): 1,
        (1, 0, 0, 0, 0): 1,
    },
    5: {
        (0, 1, 0, 3, 1): 1,
        (1, 1, 0, 1, 1): 2,
        (1, 0, 1, 2, 0): 1,
        (1, 0, 0, 2, 1): 1,
        (0, 2, 0, 0, 2): 1,
        (0, 1, 1, 1, 1): 2,
        (0, 1, 0, 2, 1): 1,
        (0, 1, 0, 1, 2): 2,
        (2, 0, 1, 0, 0): 1,
        (2, 0, 0, 1, 0): 1,
        (2, 0, 0, 0, 1): 1,
        (1, 1, 0, 0, 1): 4,
        (1, 0, 2, 0, 0): 1,
        (1, 0, 1, 1, 0): 2,
        (1, 0, 1, 0, 1): 2,
        (1, 0, 0, 1, 1): 2,
        (1, 0, 0, 0, 2): 1,
        (0, 1, 1, 0, 1): 2,
        (0, 1, 0, 1, 1): 1,
        (0, 1, 0, 0, 2): 2,
        (0, 1, 0, 0, 1): 1,
        (2, 0, 0, 0, 0): 3,
        (1, 0, 1, 0, 0): 3,
        (1, 0, 0, 0, 1): 3,
        (1, 0, 0, 0, 0): 1,
    },
}


def reference_refined_narayana(n: int) -> Polynomial:
    return Polynomial(NARAYANA_VARS, REFERENCE_REFINED_NARAYANA[n])


# ---------------------------------------------------------------------------
# Refined Eulerian polynomials


@lru_cache(maxsize=None)
def eulerian_refined(n: int) -> Polynomial:
    """Joint distribution of (dd, da, pk1, pk2) over all permutations of
    1..n, by brute force."""
    if n < 1:
        raise DomainError("refined Eulerian polynomials need n >= 1")
    counts: dict[tuple[int, int, int, int], int] = {}
    for word in itertools.permutations(range(1, n + 1)):
        v = perm_stats(word)
        key = (v.dd, v.da, v.pk1, v.pk2)
        counts[key] = counts.get(key, 0) + 1
    return Polynomial(EULERIAN_VARS, {k: Fraction(c) for k, c in counts.items()})


def eulerian_recurrence_residual(n: int) -> Polynomial:
    """A_n minus the convolution recurrence
    (x+y) A_{n-1} + (n-1)(z1+z2) A_{n-2} + sum_{i=2}^{n-3} C(n-1,i) A_i A_{n-1-i};
    identically zero for n >= 4."""
    if n < 4:
        raise DomainError("the recurrence starts at n = 4")
    V = EULERIAN_VARS
    x, y, z1, z2 = (Polynomial.variable(V, name) for name in V)
    rhs = (x + y) * eulerian_refined(n - 1) + (z1 + z2) * eulerian_refined(n - 2) * (n - 1)
    for i in range(2, n - 2):
        rhs = rhs + eulerian_refined(i) * eulerian_refined(n - 1 - i) * binomial(n - 1, i)
    return eulerian_refined(n) - rhs


def eulerian_egf(order: int) -> TruncatedSeries:
    """A(x, y, z1, z2; t) = sum_{n>=1} A_n t^n / n!, brute-forced through
    the requested order."""
    coeffs: list[Polynomial | Scalar] = [0]
    for n in range(1, order + 1):
        coeffs.append(eulerian_refined(n) * Fraction(1, math.factorial(n)))
    return TruncatedSeries(EULERIAN_VARS, coeffs, order)


def riccati_residual(order: int = 8) -> TruncatedSeries:
    """dA/dt - (A^2 + ((z2 - z1) t + x + y) A + (z2 - z1) y t + z1),
    truncated at order-1; identically zero."""
    V = EULERIAN_VARS
    x, y, z1, z2 = (Polynomial.variable(V, name) for name in V)
    series = eulerian_egf(order)
    t = TruncatedSeries.t(V, order)
    rhs = series * series + (t * (z2 - z1) + (x + y)) * series + t * ((z2 - z1) * y) + z1
    return series.derivative() - rhs.truncate(order - 1)


# ---------------------------------------------------------------------------
# EGFs for pk1 and for consecutive 132 counts


def pk1_distribution(n: int) -> Polynomial:
    """sum over permutations of 1..n of z^pk1, from the refined Eulerian
    polynomial by specialisation."""
    return eulerian_refined(n).substitute(
        ("z",), {"x": 1, "y": 1, "z1": Polynomial.variable(("z",), "z"), "z2": 1}
    )


def _gauss_kernel(order: int) -> TruncatedSeries:
    """exp((z - 1) t^2 / 2) as a series over (z,)."""
    V = ("z",)
    z = Polynomial.variable(V, "z")
    half = (z - 1) * Fraction(1, 2)
    quadratic = TruncatedSeries(V, [Polynomial.zero(V), Polynomial.zero(V), half], order)
    return quadratic.exp()


def pk1_egf_closed(order: int) -> TruncatedSeries:
    """Closed form
    A(z; t) = exp((z-1) t^2/2) / (1 - int_0^t exp((z-1) x^2/2) dx) + (z-1) t - 1;
    n! [t^n] is the pk1 distribution over permutations of 1..n."""
    if order < 1:
        raise DomainError("order must be >= 1")
    V = ("z",)
    z = Polynomial.variable(V, "z")
    kernel = _gauss_kernel(order)
    denominator = 1 - kernel.integral().truncate(order)
    linear = TruncatedSeries(V, [Polynomial.zero(V), z - 1], order)
    return kernel * denominator.inverse() + linear - 1


def elizalde_noy_egf(order: int) -> TruncatedSeries:
    """EGF of the consecutive-132 enumerators:
    sum_n B_n(z) t^n / n! = 1 / (1 - int_0^t exp((z-1) x^2/2) dx)."""
    if order < 0:
        raise DomainError("order must be >= 0")
    kernel = _gauss_kernel(order)
    return (1 - kernel.integral().truncate(order)).inverse()


@lru_cache(maxsize=None)
def consecutive_132_distribution(n: int) -> Polynomial:
    """sum over permutations of 1..n of z^(#consecutive 132), by brute
    force; B_0 = B_1 = 1."""
    if n < 0:
        raise DomainError("need n >= 0")
    V = ("z",)
    counts: dict[tuple[int, ...], int] = {}
    for word in itertools.permutations(range(1, n + 1)):
        k = consecutive_pattern_count(word, (1, 3, 2))
        counts[(k,)] = counts.get((k,), 0) + 1
    return Polynomial(V, {k: Fraction(c) for k, c in counts.items()})


@dataclass(frozen=True)
class Corollary34Report:
    n: int
    lhs: Polynomial
    rhs_multinomial: Polynomial
    rhs_binomial_variant: Polynomial
    multinomial_ok: bool
    binomial_variant_ok: bool


def corollary34_check(n: int) -> Corollary34Report:
    """Compare the pk1 distribution against
    sum_k (z-1)^k / 2^k * coef(n, k) * B_{n-2k}(z) for the two candidate
    coefficients: the multinomial n!/(k! (n-2k)!) (which the EGF identity
    forces) and the plain binomial C(n, k) variant."""
    if n < 2:
        raise DomainError("the comparison needs n >= 2")
    V = ("z",)
    z = Polynomial.variable(V, "z")
    lhs = pk1_distribution(n)

    def rhs(coef) -> Polynomial:
        total = Polynomial.zero(V)
        for k in range(n // 2 + 1):
            piece = (z - 1) ** k * Fraction(coef(n, k), 2**k)
            total = total + piece * consecutive_132_distribution(n - 2 * k)
        return total

    multinomial = rhs(lambda n_, k_: math.factorial(n_) // (math.factorial(k_) * math.factorial(n_ - 2 * k_)))
    binomial_variant = rhs(binomial)
    return Corollary34Report(
        n=n,
        lhs=lhs,
        rhs_multinomial=multinomial,
        rhs_binomial_variant=binomial_variant,
        multinomial_ok=multinomial == lhs,
        binomial_variant_ok=binomial_variant == lhs,
    )


# ---------------------------------------------------------------------------
# Carlitz-Scoville specialisation


def _fraction_sqrt(value: Fraction) -> Fraction | None:
    if value < 0:
        return None
    num = math.isqrt(value.numerator)
    den = math.isqrt(value.denominator)
    if num * num != value.numerator or den * den != value.denominator:
        return None
    return Fraction(num, den)


def carlitz_scoville_series(x: Scalar, y: Scalar, z: Scalar, order: int) -> TruncatedSeries:
    """u v (e^{ut} - e^{vt}) / (u e^{vt} - v e^{ut}) with u + v = x + y and
    u v = z, over the rationals; requires distinct rational roots."""
    x, y, z = Fraction(x), Fraction(y), Fraction(z)
    s = x + y
    disc = s * s - 4 * z
    root = _fraction_sqrt(disc)
    if root is None:
        raise UnsupportedParametersError(
            f"w^2 - {s} w + {z} has irrational roots; pick parameters with a square discriminant"
        )
    if root == 0:
        raise UnsupportedParametersError("repeated root u = v is not supported")
    u = (s + root) / 2
    v = (s - root) / 2

    def exponential(rate: Fraction) -> TruncatedSeries:
        coeffs = [Fraction(rate**n, math.factorial(n)) for n in range(order + 1)]
        return TruncatedSeries((), coeffs, order)

    e_u, e_v = exponential(u), exponential(v)
    numerator = (e_u - e_v) * (u * v)
    denominator = e_u * (-v) + e_v * u
    return numerator * denominator.inverse()


def carlitz_scoville_check(x: Scalar, y: Scalar, z: Scalar, order: int) -> str | None:
    """None when n! [t^n] of the closed form equals the refined Eulerian
    polynomial at (x, y, z, z) for every n <= order."""
    series = carlitz_scoville_series(x, y, z, order)
    for n in range(1, order + 1):
        expected = eulerian_refined(n).evaluate({"x": x, "y": y, "z1": z, "z2": z})
        got = series.coefficient(n).constant_term() * math.factorial(n)
        if got != expected:
            return f"order {n}: closed form gives {got}, permutations give {expected}"
    return None
