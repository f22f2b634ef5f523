"""q-difference and differential realizations ``L = L_0 pi_0 + L_1 pi_1``.

Each part is a sum of compositions of atoms.  An atom sends a Laurent
monomial to a multiple of a single Laurent monomial, so a composition is
evaluated right-to-left on each monomial.  Intermediate negative powers are
allowed; only the assembled result must be an ordinary polynomial.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact import LaurentPolynomial, Parity, ScalarLike, as_scalar, project, scalar_to_str
from .families import FamilyKind, FamilySpec


class UnsupportedFamilyError(ValueError):
    pass


class RealizationError(ArithmeticError):
    """Negative powers survived assembly: a bug or inconsistent parameters."""


class AtomKind(enum.Enum):
    Q_SHIFT_UP = "T+"
    Q_SHIFT_DOWN = "T-"
    DERIVATIVE = "D"
    SECOND_DERIVATIVE = "D2"
    MULTIPLY_X_POWER = "x^"
    REFLECTION = "R"
    IDENTITY = "I"


@dataclass(frozen=True)
class OperatorAtom:
    kind: AtomKind
    scale: Fraction = Fraction(1)
    power: int = 0
    q: Optional[Fraction] = None

    def act(self, n: int) -> tuple[int, Fraction]:
        """Image of ``x^n`` as ``(exponent, coefficient)``."""
        k = self.kind
        if k is AtomKind.IDENTITY:
            return n, self.scale
        if k is AtomKind.MULTIPLY_X_POWER:
            return n + self.power, self.scale
        if k is AtomKind.Q_SHIFT_UP:
            return n, self.scale * self.q**n
        if k is AtomKind.Q_SHIFT_DOWN:
            return n, self.scale * self.q**-n
        if k is AtomKind.DERIVATIVE:
            return n - 1, self.scale * n
        if k is AtomKind.SECOND_DERIVATIVE:
            return n - 2, self.scale * n * (n - 1)
        return n, self.scale * (-1) ** (n % 2)

    def __str__(self):
        if self.kind is AtomKind.MULTIPLY_X_POWER:
            body = f"x^{self.power}"
        else:
            body = self.kind.value
        return body if self.scale == 1 else f"{scalar_to_str(self.scale)}*{body}"


Term = tuple[OperatorAtom, ...]


@dataclass(frozen=True)
class OpExpr:
    """A sum of atom compositions; ``*`` composes (right factor acts first)."""

    terms: tuple[Term, ...] = ()

    def __add__(self, other: "OpExpr | ScalarLike") -> "OpExpr":
        other = _as_expr(other)
        return OpExpr(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> "OpExpr":
        return self * Fraction(-1)

    def __sub__(self, other):
        return self + (-_as_expr(other))

    def __rsub__(self, other):
        return _as_expr(other) + (-self)

    def __mul__(self, other: "OpExpr | ScalarLike") -> "OpExpr":
        other = _as_expr(other)
        return OpExpr(tuple(t1 + t2 for t1 in self.terms for t2 in other.terms))

    def __rmul__(self, other):
        return _as_expr(other) * self

    def monomial(self, n: int) -> LaurentPolynomial:
        acc: dict[int, Fraction] = {}
        for term in self.terms:
            e, c = n, Fraction(1)
            for atom in reversed(term):
                e, f = atom.act(e)
                c *= f
                if c == 0:
                    break
            if c:
                acc[e] = acc.get(e, 0) + c
        return LaurentPolynomial(acc)

    def apply(self, p: LaurentPolynomial) -> LaurentPolynomial:
        out = LaurentPolynomial.zero()
        for e, c in p.items():
            out = out + self.monomial(e).scale(c)
        return out

    def __str__(self):
        parts = []
        for term in self.terms:
            coef = Fraction(1)
            for atom in term:
                coef *= atom.scale
            body = [str(OperatorAtom(a.kind, Fraction(1), a.power, a.q))
                    for a in term if a.kind is not AtomKind.IDENTITY]
            if coef == 0:
                continue
            if not body:
                parts.append(scalar_to_str(coef))
            else:
                parts.append("*".join(([] if coef == 1 else [scalar_to_str(coef)]) + body))
        return " + ".join(parts) or "0"


def _as_expr(v) -> OpExpr:
    if isinstance(v, OpExpr):
        return v
    return scalar(v)


def scalar(c: ScalarLike) -> OpExpr:
    return OpExpr(((OperatorAtom(AtomKind.IDENTITY, as_scalar(c)),),))


def xpow(k: int, c: ScalarLike = 1) -> OpExpr:
    return OpExpr(((OperatorAtom(AtomKind.MULTIPLY_X_POWER, as_scalar(c), power=k),),))


def t_up(q: Fraction) -> OpExpr:
    return OpExpr(((OperatorAtom(AtomKind.Q_SHIFT_UP, q=q),),))


def t_down(q: Fraction) -> OpExpr:
    return OpExpr(((OperatorAtom(AtomKind.Q_SHIFT_DOWN, q=q),),))


D = OpExpr(((OperatorAtom(AtomKind.DERIVATIVE),),))
D2 = OpExpr(((OperatorAtom(AtomKind.SECOND_DERIVATIVE),),))
I = scalar(1)  # noqa: E741


@dataclass(frozen=True)
class RealizedOperator:
    even_part: OpExpr
    odd_part: OpExpr
    family: Optional[FamilySpec] = None

    def to_dict(self) -> dict:
        return {"L0": str(self.even_part), "L1": str(self.odd_part)}


def build_realization(spec: FamilySpec) -> RealizedOperator:
    """Concrete ``L_0`` (even part) and ``L_1`` (odd part) of ``L`` for ``spec``."""
    a, b, rho, e0, e1 = spec.a, spec.b, spec.rho, spec.eps0, spec.eps1
    kind = spec.kind
    if kind is FamilyKind.LITTLE_Q_JACOBI:
        q = spec.q
        tp, tm = t_up(q), t_down(q)
        L0 = ((-a) + xpow(-2, b)) * (tp - I) + (1 - xpow(-2)) * (tm - I) + e0
        L1 = (rho * q) * (a - xpow(-2, b)) * tp + (rho * q) * (-1 + xpow(-2)) * tm \
            + (e1 + rho - a * rho * q * q) + xpow(-2, rho * (b * q * q - 1))
    elif kind is FamilyKind.GEGENBAUER:
        L0 = (1 - xpow(2)) * D2 + (xpow(-1, b + 1) - xpow(1, a + 1)) * D + e0
        L1 = rho * (xpow(2) - 1) * D2 + rho * (xpow(1, a + 1) - xpow(-1, b + 1)) * D \
            + (e1 - rho * (a + 1)) + xpow(-2, rho * (b + 1))
    elif kind is FamilyKind.LAGUERRE:
        L0 = D2 + (xpow(1, -1) + xpow(-1, b + 1)) * D + e0
        L1 = (-rho) * D2 + rho * (xpow(1) - xpow(-1, b + 1)) * D + (e1 - rho) + xpow(-2, rho * (b + 1))
    else:
        raise UnsupportedFamilyError(f"no realization for {kind.value}")
    return RealizedOperator(L0, L1, spec)


def apply_realized(op: RealizedOperator, p: LaurentPolynomial) -> LaurentPolynomial:
    """``(L_0 pi_0 + L_1 pi_1) p``; the result must have no negative powers."""
    if not p.is_proper():
        raise ValueError("realized operators act on ordinary polynomials")
    out = op.even_part.apply(project(p, Parity.EVEN)) + op.odd_part.apply(project(p, Parity.ODD))
    if not out.is_proper():
        bad = {e: scalar_to_str(c) for e, c in out.items() if e < 0}
        raise RealizationError(f"uncancelled negative powers {bad}")
    return out


def check_realization(op: RealizedOperator, n_max: int, coeffs=None) -> dict:
    """Compare ``L x^n`` with ``lambda_n x^n + nu_n x^(n-2)`` for ``0 <= n <= n_max``."""
    coeffs = coeffs if coeffs is not None else op.family
    for n in range(n_max + 1):
        lam, nu = coeffs.lambda_nu(n)
        expected = LaurentPolynomial({n: lam, n - 2: nu})
        try:
            got = apply_realized(op, LaurentPolynomial.monomial(n))
        except RealizationError as exc:
            return {"name": "realization", "passed": False, "checked": n,
                    "first_failure": {"n": n, "error": str(exc)}}
        if got != expected:
            return {"name": "realization", "passed": False, "checked": n,
                    "first_failure": {"n": n, "got": got.to_json(), "expected": expected.to_json()}}
    return {"name": "realization", "passed": True, "checked": n_max + 1, "first_failure": None}


def classical_collapse(op: RealizedOperator, n_bound: int = 40) -> Optional[OpExpr]:
    """The reflection-free form when ``L_0`` and ``L_1`` agree on ``x^0..x^n_bound``."""
    for n in range(n_bound + 1):
        if op.even_part.monomial(n) != op.odd_part.monomial(n):
            return None
    return op.even_part
