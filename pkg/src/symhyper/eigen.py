"""Monic eigenpolynomials of ``L``, built by spectral descent and by recurrence.

Matching the coefficient of ``x^k`` in ``L P_n = lambda_n P_n`` gives the
descent relation

    A[n, k] * (lambda_n - lambda_k) = nu_{k+2} * A[n, k+2],

so ``A[n, n-2] = +nu_n / (lambda_n - lambda_{n-2})``.  Together with the
recurrence bookkeeping this yields ``u_n = A[n, n-2] - A[n+1, n-1]``.
"""
from __future__ import annotations

import functools
import threading
from fractions import Fraction
from typing import Callable, Sequence, Union

from .exact import X, LaurentPolynomial, Parity, ParityError, as_scalar
from .families import Coefficients, FamilySpec, u_closed


class EigenvalueCollisionError(ArithmeticError):
    """Two same-parity eigenvalues coincide, so the descent cannot proceed."""


class KernelTransformError(ArithmeticError):
    """The Christoffel kernel transform is undefined (``U_n(0) = 0``)."""


class Expansion:
    """Lazily built rows ``A[n, k]`` of the monomial expansion of ``P_n``."""

    def __init__(self, coeffs: Coefficients):
        self.coeffs = coeffs
        self._rows: dict[int, dict[int, Fraction]] = {}
        self._lock = threading.Lock()

    def lam(self, n: int) -> Fraction:
        return as_scalar(self.coeffs.lambda_nu(n)[0])

    def nu(self, n: int) -> Fraction:
        return as_scalar(self.coeffs.lambda_nu(n)[1])

    def row(self, n: int) -> dict[int, Fraction]:
        """Nonzero entries of row ``n`` (descending ``k = n, n-2, ...``)."""
        cached = self._rows.get(n)
        if cached is not None:
            return cached
        lam_n = self.lam(n)
        row = {n: Fraction(1)}
        prev = Fraction(1)
        for k in range(n - 2, -1, -2):
            gap = lam_n - self.lam(k)
            if gap == 0:
                raise EigenvalueCollisionError(f"lambda_{n} = lambda_{k}")
            prev = self.nu(k + 2) * prev / gap
            if prev == 0:
                # every lower entry is a multiple of this one
                break
            row[k] = prev
        with self._lock:
            self._rows.setdefault(n, row)
        return self._rows[n]

    def coefficient(self, n: int, k: int) -> Fraction:
        return self.row(n).get(k, Fraction(0)) if 0 <= k <= n else Fraction(0)

    def poly(self, n: int) -> LaurentPolynomial:
        return LaurentPolynomial(self.row(n))


@functools.lru_cache(maxsize=64)
def expansion_for(coeffs: Coefficients) -> Expansion:
    return Expansion(coeffs)


def eigenpoly_descent(coeffs: Coefficients, n: int) -> LaurentPolynomial:
    """Monic ``P_n`` with ``L P_n = lambda_n P_n``, from the descent relation."""
    return expansion_for(coeffs).poly(n)


USource = Union[Coefficients, Sequence[Fraction], Callable[[int], Fraction]]


def _u_getter(u: USource) -> Callable[[int], Fraction]:
    if isinstance(u, FamilySpec):
        return functools.partial(u_closed, u)
    if callable(u):
        return u
    if hasattr(u, "lambda_nu"):
        return functools.partial(u_via_descent, u)
    seq = list(u)
    # a plain sequence is 1-indexed: seq[0] is u_1
    return lambda n: seq[n - 1]


def eigenpolys_recurrence(u: USource, n_max: int) -> list[LaurentPolynomial]:
    """``P_0..P_{n_max}`` from ``P_{n+1} = x P_n - u_n P_{n-1}``.

    ``u`` is a family spec (closed-form ``u_n``), a callable ``n -> u_n``,
    or a sequence holding ``u_1, u_2, ...``.
    """
    get = _u_getter(u)
    polys = [LaurentPolynomial.one(), X]
    for n in range(1, n_max):
        polys.append(X * polys[n] - polys[n - 1].scale(get(n)))
    return polys[: n_max + 1]


def eigenpoly_recurrence(u: USource, n: int) -> LaurentPolynomial:
    return eigenpolys_recurrence(u, n)[n]


def u_via_descent(coeffs: Coefficients, n: int) -> Fraction:
    """``u_n = nu_n/(lambda_n - lambda_{n-2}) - nu_{n+1}/(lambda_{n+1} - lambda_{n-1})``."""
    if n < 1:
        raise ValueError("u_n is defined for n >= 1")

    def term(m: int) -> Fraction:
        if m < 2:
            return Fraction(0)
        lam, nu = map(as_scalar, coeffs.lambda_nu(m))
        gap = lam - as_scalar(coeffs.lambda_nu(m - 2)[0])
        if gap == 0:
            raise EigenvalueCollisionError(f"lambda_{m} = lambda_{m - 2}")
        return nu / gap

    return term(n) - term(n + 1)


def split_uv(p_even: LaurentPolynomial, p_odd: LaurentPolynomial) -> tuple[LaurentPolynomial, LaurentPolynomial]:
    """``P_2n = U_n(x^2)`` and ``P_2n+1 = x V_n(x^2)``; returns ``(U_n, V_n)``."""
    if p_even.parity() is not Parity.EVEN:
        raise ParityError("first argument must be even")
    if p_odd.parity() is not Parity.ODD:
        raise ParityError("second argument must be odd")
    return p_even.restrict_square(), p_odd.restrict_square()


def kernel_transform(u_n: LaurentPolynomial, u_next: LaurentPolynomial) -> LaurentPolynomial:
    """Christoffel kernel polynomial ``(U_{n+1} - A_n U_n) / x`` with ``A_n = U_{n+1}(0)/U_n(0)``."""
    at0 = u_n.coeff(0)
    if at0 == 0:
        raise KernelTransformError("U_n(0) = 0")
    ratio = u_next.coeff(0) / at0
    numer = u_next - u_n.scale(ratio)
    if numer.coeff(0) != 0 or not numer.is_proper():
        raise KernelTransformError("numerator is not divisible by x")
    return numer.shift(-1)


def apply_abstract(coeffs: Coefficients, p: LaurentPolynomial) -> LaurentPolynomial:
    """Apply ``L`` through its monomial action ``x^n -> lambda_n x^n + nu_n x^(n-2)``."""
    if not p.is_proper():
        raise ValueError("L acts on ordinary polynomials")
    acc: dict[int, Fraction] = {}
    for e, c in p.items():
        lam, nu = coeffs.lambda_nu(e)
        acc[e] = acc.get(e, 0) + c * lam
        if nu:
            acc[e - 2] = acc.get(e - 2, 0) + c * nu
    return LaurentPolynomial(acc)
