"""Exact sparse multivariate polynomials over the rationals.

Coefficients are ``Fraction`` throughout (integers in the combinatorial
identities, proper rationals inside exponential generating functions).  A
polynomial owns a fixed, ordered variable tuple; arithmetic requires both
operands to share it.  Terms are kept sparse with no zero coefficients.

The canonical term order used for rendering is graded: ascending total
degree, ties broken by descending exponent vector, which lists low-order
terms first and weights earlier variables first inside a grade.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Union

Scalar = Union[int, Fraction]


def _as_fraction(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact scalar, got {type(value).__name__}")


class Polynomial:
    __slots__ = ("vars", "terms")

    def __init__(
        self,
        variables: tuple[str, ...],
        terms: Mapping[tuple[int, ...], Scalar] | None = None,
    ):
        self.vars = tuple(variables)
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            width = len(self.vars)
            for exps, coef in terms.items():
                if len(exps) != width:
                    raise ValueError(
                        f"exponent vector {exps} does not match variables {self.vars}"
                    )
                c = _as_fraction(coef)
                if c:
                    clean[tuple(exps)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, variables: tuple[str, ...]) -> "Polynomial":
        return cls(variables)

    @classmethod
    def constant(cls, variables: tuple[str, ...], value: Scalar) -> "Polynomial":
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def variable(cls, variables: tuple[str, ...], name: str) -> "Polynomial":
        if name not in variables:
            raise ValueError(f"{name!r} is not among {variables}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exps: 1})

    @classmethod
    def monomial(
        cls, variables: tuple[str, ...], exps: tuple[int, ...], coef: Scalar = 1
    ) -> "Polynomial":
        return cls(variables, {tuple(exps): coef})

    # -- queries -------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        zero = (0,) * len(self.vars)
        return all(exps == zero for exps in self.terms)

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def coefficient(self, exps: tuple[int, ...]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(
            self.terms.items(), key=lambda item: (sum(item[0]), tuple(-e for e in item[0]))
        )

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other: "Polynomial | Scalar") -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        return Polynomial.constant(self.vars, other)

    def __add__(self, other: "Polynomial | Scalar") -> "Polynomial":
        if not isinstance(other, (Polynomial, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        terms = dict(self.terms)
        for exps, coef in other.terms.items():
            terms[exps] = terms.get(exps, Fraction(0)) + coef
        return Polynomial(self.vars, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial | Scalar") -> "Polynomial":
        if not isinstance(other, (Polynomial, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other: Scalar) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other: "Polynomial | Scalar") -> "Polynomial":
        if not isinstance(other, (Polynomial, int, Fraction)):
            return NotImplemented
        if not isinstance(other, Polynomial):
            c = _as_fraction(other)
            return Polynomial(self.vars, {e: coef * c for e, coef in self.terms.items()})
        other = self._coerce(other)
        terms: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                terms[key] = terms.get(key, Fraction(0)) + c1 * c2
        return Polynomial(self.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative powers are not defined for polynomials")
        result = Polynomial.constant(self.vars, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.vars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __bool__(self) -> bool:
        return not self.is_zero

    # -- structural operations ------------------------------------------------

    def substitute(
        self,
        target_vars: tuple[str, ...],
        images: Mapping[str, "Polynomial | Scalar"],
    ) -> "Polynomial":
        """Replace every variable by its image (a polynomial or scalar over
        target_vars); all variables must be mapped."""
        missing = [v for v in self.vars if v not in images]
        if missing:
            raise ValueError(f"no image given for {missing}")
        promoted = {
            v: (img if isinstance(img, Polynomial) else Polynomial.constant(target_vars, img))
            for v, img in images.items()
        }
        for v, img in promoted.items():
            if img.vars != tuple(target_vars):
                raise ValueError(f"image of {v!r} is over {img.vars}, expected {target_vars}")
        powers: dict[str, list[Polynomial]] = {
            v: [Polynomial.constant(target_vars, 1)] for v in self.vars
        }

        def power(v: str, e: int) -> Polynomial:
            cache = powers[v]
            while len(cache) <= e:
                cache.append(cache[-1] * promoted[v])
            return cache[e]

        result = Polynomial.zero(tuple(target_vars))
        for exps, coef in self.terms.items():
            term = Polynomial.constant(tuple(target_vars), coef)
            for v, e in zip(self.vars, exps):
                if e:
                    term = term * power(v, e)
            result = result + term
        return result

    def permute_vars(self, mapping: Mapping[str, str]) -> "Polynomial":
        """Rename variables by a bijection of the variable tuple onto
        itself, e.g. swapping u1 and u3."""
        full = {v: mapping.get(v, v) for v in self.vars}
        if sorted(full.values()) != sorted(self.vars):
            raise ValueError("mapping must permute the variable tuple")
        position = {v: i for i, v in enumerate(self.vars)}
        terms: dict[tuple[int, ...], Fraction] = {}
        for exps, coef in self.terms.items():
            new = [0] * len(self.vars)
            for v, e in zip(self.vars, exps):
                new[position[full[v]]] = e
            terms[tuple(new)] = coef
        return Polynomial(self.vars, terms)

    def evaluate(self, values: Mapping[str, Scalar]) -> Fraction:
        missing = [v for v in self.vars if v not in values]
        if missing:
            raise ValueError(f"no value given for {missing}")
        total = Fraction(0)
        for exps, coef in self.terms.items():
            product = coef
            for v, e in zip(self.vars, exps):
                if e:
                    product *= _as_fraction(values[v]) ** e
            total += product
        return total

    # -- rendering -------------------------------------------------------------

    def render(self) -> str:
        """Canonical text: terms in graded order joined by ' + '/' - ',
        coefficient and exponent 1 elided, factors joined by '*'."""
        if self.is_zero:
            return "0"
        pieces: list[str] = []
        for position, (exps, coef) in enumerate(self.sorted_terms()):
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.vars, exps)
                if e
            ]
            magnitude = abs(coef)
            if magnitude != 1 or not factors:
                factors.insert(0, str(magnitude))
            body = "*".join(factors)
            if position == 0:
                pieces.append(body if coef > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if coef > 0 else f"- {body}")
        return " ".join(pieces)

    __str__ = render

    def __repr__(self) -> str:
        return f"Polynomial({self.render()!r})"

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [
                [list(exps), str(coef)] for exps, coef in self.sorted_terms()
            ],
        }
