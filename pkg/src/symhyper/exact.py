"""Exact scalars and one-variable Laurent polynomials over the rationals.

Scalars are plain :class:`fractions.Fraction` values.  Every other module in the
package computes on :class:`LaurentPolynomial`, an immutable sparse map from
integer exponents (negative ones allowed) to nonzero rational coefficients.
"""
from __future__ import annotations

import enum
import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

Scalar = Fraction
ScalarLike = Union[Fraction, int, str]

_SCALAR_RE = re.compile(r"^(-?)(\d+)(?:/(\d+))?$")


class ParityError(ValueError):
    """Raised when an operation needs a pure-parity polynomial."""


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"
    MIXED = "mixed"


def as_scalar(value: ScalarLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return scalar_from_str(value)
    raise TypeError(f"cannot interpret {value!r} as an exact scalar")


def scalar_to_str(value: Fraction) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is one."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def scalar_from_str(text: str) -> Fraction:
    """Strict inverse of :func:`scalar_to_str` (a unicode minus is accepted)."""
    m = _SCALAR_RE.match(text.strip().replace("−", "-"))
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    sign, num, den = m.groups()
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    value = Fraction(int(num), int(den) if den else 1)
    return -value if sign else value


class LaurentPolynomial:
    """Immutable sparse Laurent polynomial in ``x`` with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, ScalarLike] | Iterable[tuple[int, ScalarLike]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Fraction] = {}
        for exp, coeff in items:
            if not isinstance(exp, int) or isinstance(exp, bool):
                raise TypeError(f"exponent must be an int, got {exp!r}")
            acc[exp] = acc.get(exp, Fraction(0)) + as_scalar(coeff)
        self._terms = {e: c for e, c in sorted(acc.items()) if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, Fraction]) -> "LaurentPolynomial":
        # trusted constructor: caller guarantees nonzero coefficients
        obj = cls.__new__(cls)
        obj._terms = dict(sorted(terms.items()))
        obj._hash = None
        return obj

    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return cls._raw({})

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return cls._raw({0: Fraction(1)})

    @classmethod
    def monomial(cls, exp: int, coeff: ScalarLike = 1) -> "LaurentPolynomial":
        return cls({exp: coeff})

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[ScalarLike]) -> "LaurentPolynomial":
        """Build from ascending dense coefficients ``c_0, c_1, ...``."""
        return cls(enumerate(coeffs))

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, Fraction]]:
        return iter(self._terms.items())

    def coeff(self, exp: int) -> Fraction:
        return self._terms.get(exp, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        if not self._terms:
            raise ValueError("degree of the zero polynomial is undefined")
        return max(self._terms)

    @property
    def low_degree(self) -> int:
        if not self._terms:
            raise ValueError("low degree of the zero polynomial is undefined")
        return min(self._terms)

    def is_proper(self) -> bool:
        return not self._terms or min(self._terms) >= 0

    def is_monic(self) -> bool:
        return bool(self._terms) and self._terms[self.degree] == 1

    def parity(self) -> Parity:
        parities = {e % 2 for e in self._terms}
        if parities <= {0}:
            return Parity.EVEN
        if parities == {1}:
            return Parity.ODD
        return Parity.MIXED

    def __len__(self) -> int:
        return len(self._terms)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for e, c in other._terms.items():
            s = acc.get(e, 0) + c
            if s:
                acc[e] = s
            else:
                acc.pop(e, None)
        return LaurentPolynomial._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, factor: ScalarLike) -> "LaurentPolynomial":
        factor = as_scalar(factor)
        if factor == 0:
            return LaurentPolynomial.zero()
        return LaurentPolynomial._raw({e: c * factor for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        acc: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial._raw({e: c for e, c in acc.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPolynomial":
        if not isinstance(k, int) or isinstance(k, bool):
            return NotImplemented
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("negative powers exist only for monomials")
            (e, c), = self._terms.items()
            return LaurentPolynomial._raw({e * k: c**k})
        out = LaurentPolynomial.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by ``x**k``."""
        return LaurentPolynomial._raw({e + k: c for e, c in self._terms.items()})

    def __call__(self, x: ScalarLike) -> Fraction:
        x = as_scalar(x)
        if x == 0 and not self.is_proper():
            raise ZeroDivisionError("negative power evaluated at zero")
        return sum((c * x**e for e, c in self._terms.items()), Fraction(0))

    evaluate = __call__

    def substitute_square(self) -> "LaurentPolynomial":
        """Return ``p(x**2)``."""
        return LaurentPolynomial._raw({2 * e: c for e, c in self._terms.items()})

    def restrict_square(self) -> "LaurentPolynomial":
        """Inverse of the squaring substitution.

        An even ``U(x**2)`` gives ``U``; an odd ``x*V(x**2)`` gives ``V``.
        """
        parity = self.parity()
        if parity is Parity.MIXED:
            raise ParityError("restriction needs an even or odd polynomial")
        off = 1 if parity is Parity.ODD else 0
        return LaurentPolynomial._raw({(e - off) // 2: c for e, c in self._terms.items()})

    # -- comparison / display ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == LaurentPolynomial({0: other})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPolynomial({str(self)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            mag = abs(c)
            if e == 0:
                body = scalar_to_str(mag)
            else:
                xs = "x" if e == 1 else f"x^{e}"
                body = xs if mag == 1 else f"{scalar_to_str(mag)}*{xs}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {"terms": [[e, scalar_to_str(c)] for e, c in self._terms.items()]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "LaurentPolynomial":
        try:
            raw = obj["terms"]
        except (KeyError, TypeError):
            raise ValueError("polynomial JSON needs a 'terms' list") from None
        terms: dict[int, Fraction] = {}
        for pair in raw:
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise ValueError(f"bad term {pair!r}")
            exp, coeff = pair
            if not isinstance(exp, int) or isinstance(exp, bool):
                raise ValueError(f"bad exponent {exp!r}")
            if exp in terms:
                raise ValueError(f"duplicate exponent {exp}")
            value = scalar_from_str(coeff) if isinstance(coeff, str) else as_scalar(coeff)
            terms[exp] = value
        return cls(terms)


def _coerce(value) -> LaurentPolynomial:
    if isinstance(value, LaurentPolynomial):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return LaurentPolynomial({0: value})
    return NotImplemented


X = LaurentPolynomial({1: 1})


def reflect(p: LaurentPolynomial) -> LaurentPolynomial:
    """``p(x) -> p(-x)``."""
    return LaurentPolynomial._raw({e: (-c if e % 2 else c) for e, c in p.items()})


def project(p: LaurentPolynomial, parity: Parity | str) -> LaurentPolynomial:
    """Even part ``(1+R)/2`` or odd part ``(1-R)/2`` of ``p``."""
    parity = Parity(parity)
    if parity is Parity.MIXED:
        raise ValueError("projection is onto the even or odd subspace")
    want = 0 if parity is Parity.EVEN else 1
    return LaurentPolynomial._raw({e: c for e, c in p.items() if e % 2 == want})
