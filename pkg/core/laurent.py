"""
Exact multivariate Laurent polynomials in half-parameter variables.

A `LaurentPoly` is a finite map from exponent vectors to rationals. Slot c of
an exponent vector is the power of v_c, where v_c**2 = u_c is the abstract
parameter of parameter class c. Exponents may be negative. Zero terms are never
stored, so two polynomials are equal iff their term maps are equal.
"""
import logging
import math
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]


class LaurentPoly:
    """
    Laurent polynomial in v_0, ..., v_{nvars-1} with rational coefficients.

    Attributes:
        nvars (int): Number of parameter classes.
        terms (Dict[Exponent, Fraction]): Nonzero coefficients keyed by exponent vector.
    """
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Scalar] = None):
        self.nvars = nvars
        self.terms: Dict[Exponent, Fraction] = {}
        if terms:
            for exp, coeff in terms.items():
                if len(exp) != nvars:
                    raise ValueError(f"exponent {exp} does not have {nvars} slots")
                if coeff != 0:
                    self.terms[tuple(exp)] = Fraction(coeff)

    @classmethod
    def constant(cls, nvars: int, value: Scalar = 1) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff: Scalar = 1) -> "LaurentPoly":
        return cls(len(exponent), {tuple(exponent): coeff})

    @classmethod
    def u(cls, nvars: int, c: int, power: int = 1) -> "LaurentPoly":
        """The abstract parameter u_c**power = v_c**(2*power)."""
        exp = [0] * nvars
        exp[c] = 2 * power
        return cls(nvars, {tuple(exp): 1})

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"cannot combine Laurent polynomials in {self.nvars} and {other.nvars} variables")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        result = dict(self.terms)
        for exp, coeff in other.terms.items():
            value = result.get(exp, 0) + coeff
            if value == 0:
                result.pop(exp, None)
            else:
                result[exp] = value
        out = LaurentPoly(self.nvars)
        out.terms = result
        return out

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly(self.nvars)
        out.terms = {exp: -coeff for exp, coeff in self.terms.items()}
        return out

    def __sub__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return LaurentPoly(self.nvars)
            out = LaurentPoly(self.nvars)
            out.terms = {exp: coeff * other for exp, coeff in self.terms.items()}
            return out
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        result: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                result[exp] = result.get(exp, 0) + c1 * c2
        return LaurentPoly(self.nvars, result)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "LaurentPoly":
        if power < 0:
            return self.inverse_monomial() ** (-power)
        result = LaurentPoly.constant(self.nvars)
        for _ in range(power):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(self.nvars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def inverse_monomial(self) -> "LaurentPoly":
        """Inverse of a single-term polynomial."""
        if not self.is_monomial():
            raise ValueError(f"only monomials are invertible, got {self}")
        (exp, coeff), = self.terms.items()
        return LaurentPoly(self.nvars, {tuple(-e for e in exp): 1 / coeff})

    def evaluate(self, q: Sequence[float]) -> float:
        """
        Numeric value at u_c = q[c], i.e. v_c = sqrt(q[c]).

        Args:
            q: One positive number per parameter class.

        Returns:
            float: The value in double precision.
        """
        total = 0.0
        for exp, coeff in self.terms.items():
            term = float(coeff)
            for c, e in enumerate(exp):
                if e:
                    term *= math.sqrt(float(q[c])) ** e
            total += term
        return total

    def evaluate_exact(self, q: Sequence[Scalar]) -> Fraction:
        """Exact value at u_c = q[c]; every exponent must be even."""
        total = Fraction(0)
        for exp, coeff in self.terms.items():
            term = Fraction(coeff)
            for c, e in enumerate(exp):
                if e % 2:
                    raise ValueError("odd v-exponent has no exact rational value")
                term *= Fraction(q[c]) ** (e // 2)
            total += term
        return total

    def to_dict(self) -> Dict[str, str]:
        """Serializes as {"e0,e1,...": "p/q"} in sorted exponent order."""
        return {",".join(str(e) for e in exp): str(self.terms[exp]) for exp in sorted(self.terms)}

    @classmethod
    def from_dict(cls, nvars: int, data: Mapping[str, str]) -> "LaurentPoly":
        terms = {}
        for key, value in data.items():
            exp = tuple(int(x) for x in key.split(",")) if key else ()
            terms[exp] = Fraction(value)
        return cls(nvars, terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms):
            factors = [f"v{c}^{e}" if e != 1 else f"v{c}" for c, e in enumerate(exp) if e]
            coeff = self.terms[exp]
            if not factors:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{coeff}*" + "*".join(factors))
        return " + ".join(parts)


def poly_sum(items: Iterable[LaurentPoly], nvars: int) -> LaurentPoly:
    total = LaurentPoly(nvars)
    for item in items:
        total = total + item
    return total
