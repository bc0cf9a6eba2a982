"""Exact arithmetic for the contraction parameter j.

A :class:`ContractionScalar` is a polynomial ``a0 + a1*j + a2*j^2 + ...``
with exact complex-rational coefficients.  The parameter j can later be
interpreted three ways (:class:`JMode`): as 1, as the nilpotent unit
``iota`` with ``iota^2 = 0``, or as a small real number.  Multiplication
never truncates; truncation happens only in :meth:`ContractionScalar.reduce`,
so the full j-grading of any product stays readable.

Division by j is a partial operation: ``a/j`` exists only when the
degree-0 part of ``a`` vanishes (identical units cancel, but a plain
number divided by the nilpotent unit is undefined).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction]


class DivisionUndefinedError(ZeroDivisionError):
    """Raised when dividing by j a scalar with a nonzero degree-0 part."""


class ComplexRational:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("ComplexRational is immutable")

    @classmethod
    def of(cls, value) -> "ComplexRational":
        if isinstance(value, ComplexRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        if isinstance(value, float):
            return cls(Fraction(value))
        raise TypeError(f"cannot interpret {value!r} as a complex rational")

    def __add__(self, other) -> "ComplexRational":
        o = ComplexRational.of(other)
        return ComplexRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other) -> "ComplexRational":
        o = ComplexRational.of(other)
        return ComplexRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other) -> "ComplexRational":
        return ComplexRational.of(other) - self

    def __mul__(self, other) -> "ComplexRational":
        o = ComplexRational.of(other)
        return ComplexRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ComplexRational":
        o = ComplexRational.of(other)
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero complex rational")
        return ComplexRational(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )

    def __neg__(self) -> "ComplexRational":
        return ComplexRational(-self.re, -self.im)

    def conjugate(self) -> "ComplexRational":
        return ComplexRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Exact squared modulus."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ComplexRational(other)
        if not isinstance(other, ComplexRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


CR_ZERO = ComplexRational(0)
CR_ONE = ComplexRational(1)
CR_I = ComplexRational(0, 1)


class JMode:
    """Interpretation of the contraction parameter: 1, iota, or a small real."""

    __slots__ = ("kind", "value")

    def __init__(self, kind: str, value: Fraction | None = None):
        if kind not in ("one", "nilpotent", "numeric"):
            raise ValueError(f"unknown JMode kind {kind!r}")
        if kind == "numeric":
            value = Fraction(value)
            # The j->0 limit itself is admitted as the boundary value.
            if value < 0:
                raise ValueError("numeric j value must be finite and >= 0")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("JMode is immutable")

    @classmethod
    def numeric(cls, value) -> "JMode":
        return cls("numeric", Fraction(value))

    @classmethod
    def from_text(cls, text: str) -> "JMode":
        """Parse '1', 'iota', or a number (e.g. '0.01', '1/100')."""
        t = text.strip().lower()
        if t == "1":
            return J_ONE
        if t in ("iota", "nilpotent"):
            return J_NILPOTENT
        try:
            return cls.numeric(Fraction(t))
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"cannot parse j mode from {text!r}") from None

    @property
    def is_one(self) -> bool:
        return self.kind == "one"

    @property
    def is_nilpotent(self) -> bool:
        return self.kind == "nilpotent"

    @property
    def is_numeric(self) -> bool:
        return self.kind == "numeric"

    def __eq__(self, other) -> bool:
        if not isinstance(other, JMode):
            return NotImplemented
        return self.kind == other.kind and self.value == other.value

    def __hash__(self):
        return hash((self.kind, self.value))

    def __repr__(self) -> str:
        if self.kind == "numeric":
            return f"JMode.numeric({self.value})"
        return {"one": "J_ONE", "nilpotent": "J_NILPOTENT"}[self.kind]

    def label(self) -> str:
        if self.kind == "one":
            return "j=1"
        if self.kind == "nilpotent":
            return "j=iota"
        return f"j={float(self.value):g}"


J_ONE = JMode("one")
J_NILPOTENT = JMode("nilpotent")


class ContractionScalar:
    """Polynomial in j with :class:`ComplexRational` coefficients.

    Immutable; zero coefficients are never stored.  Negative j-degrees are
    not representable, which keeps :meth:`divide_by_j` an explicit partial
    operation instead of silently extending the ring.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=()):
        cleaned = {}
        for degree, value in dict(coeffs).items():
            value = ComplexRational.of(value)
            if degree < 0:
                raise ValueError("j-degree must be non-negative")
            if not value.is_zero():
                cleaned[int(degree)] = value
        object.__setattr__(self, "_coeffs", tuple(sorted(cleaned.items())))

    def __setattr__(self, name, value):
        raise AttributeError("ContractionScalar is immutable")

    @classmethod
    def term(cls, value, degree: int = 0) -> "ContractionScalar":
        if degree < 0:
            raise ValueError("j-degree must be non-negative")
        return cls({degree: ComplexRational.of(value)})

    @classmethod
    def zero(cls) -> "ContractionScalar":
        return cls()

    @classmethod
    def one(cls) -> "ContractionScalar":
        return cls.term(1)

    @classmethod
    def j(cls, power: int = 1) -> "ContractionScalar":
        return cls.term(1, power)

    @property
    def coeffs(self):
        return self._coeffs

    def coeff(self, degree: int) -> ComplexRational:
        for d, v in self._coeffs:
            if d == degree:
                return v
        return CR_ZERO

    def degrees(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    @staticmethod
    def _coerce(value) -> "ContractionScalar":
        if isinstance(value, ContractionScalar):
            return value
        return ContractionScalar.term(ComplexRational.of(value))

    def __add__(self, other) -> "ContractionScalar":
        o = self._coerce(other)
        out = dict(self._coeffs)
        for d, v in o._coeffs:
            out[d] = out.get(d, CR_ZERO) + v
        return ContractionScalar(out)

    __radd__ = __add__

    def __sub__(self, other) -> "ContractionScalar":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "ContractionScalar":
        return self._coerce(other) - self

    def __neg__(self) -> "ContractionScalar":
        return ContractionScalar({d: -v for d, v in self._coeffs})

    def __mul__(self, other) -> "ContractionScalar":
        o = self._coerce(other)
        out: dict[int, ComplexRational] = {}
        for d1, v1 in self._coeffs:
            for d2, v2 in o._coeffs:
                d = d1 + d2
                out[d] = out.get(d, CR_ZERO) + v1 * v2
        return ContractionScalar(out)

    __rmul__ = __mul__

    def conjugate(self) -> "ContractionScalar":
        """Complex-conjugate the coefficients; j itself is real."""
        return ContractionScalar({d: v.conjugate() for d, v in self._coeffs})

    def divide_by_j(self) -> "ContractionScalar":
        """Cancel one power of j.  Defined only when the degree-0 part is zero."""
        if not self.coeff(0).is_zero():
            raise DivisionUndefinedError(
                "cannot divide by j: scalar has a nonzero degree-0 part"
            )
        return ContractionScalar({d - 1: v for d, v in self._coeffs})

    def reduce(self, mode: JMode):
        """Interpret j according to ``mode``.

        j=1 sums all coefficients; j=iota drops degrees >= 2; a numeric j
        evaluates the polynomial and returns a complex float.
        """
        if mode.is_one:
            total = CR_ZERO
            for _, v in self._coeffs:
                total = total + v
            return ContractionScalar.term(total)
        if mode.is_nilpotent:
            return ContractionScalar({d: v for d, v in self._coeffs if d < 2})
        return complex(self.evaluate_exact(mode.value))

    def evaluate_exact(self, jvalue) -> ComplexRational:
        """Exact evaluation at a rational j value."""
        jv = Fraction(jvalue)
        total = CR_ZERO
        for d, v in self._coeffs:
            total = total + v * ComplexRational(jv**d)
        return total

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, ComplexRational)):
            other = self._coerce(other)
        if not isinstance(other, ContractionScalar):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for d, v in self._coeffs:
            if d == 0:
                parts.append(repr(v))
            else:
                jpart = "j" if d == 1 else f"j^{d}"
                parts.append(jpart if v == CR_ONE else f"{v!r}*{jpart}")
        return " + ".join(parts)
