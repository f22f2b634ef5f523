"""Moment functional of the eigenpolynomials and exact orthogonality checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .eigen import Expansion, apply_abstract, expansion_for, u_via_descent
from .exact import LaurentPolynomial, scalar_to_str
from .families import Coefficients, FamilySpec, u_closed
from .linalg import det_bareiss


class MomentRangeError(IndexError):
    """Polynomial needs moments that are not available (or has negative powers)."""


@dataclass(frozen=True)
class MomentFunctional:
    """Moments ``c_0, c_1, ...`` of ``sigma``; ``c_0 = 1``."""

    c: tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.c)

    def __getitem__(self, n: int) -> Fraction:
        return self.c[n]

    def evaluate(self, p: LaurentPolynomial) -> Fraction:
        return evaluate(self, p)


def moments_from_expansion(A: Expansion | Coefficients, n_max: int) -> MomentFunctional:
    """Solve ``<sigma, P_n> = 0`` (n >= 1) with ``c_0 = 1`` for ``c_0..c_{n_max}``."""
    if not isinstance(A, Expansion):
        A = expansion_for(A)
    c = [Fraction(1)]
    for n in range(1, n_max + 1):
        row = A.row(n)
        c.append(-sum((a * c[k] for k, a in row.items() if k < n), Fraction(0)))
    return MomentFunctional(tuple(c))


def moments_dyck_oracle(u: Sequence[Fraction] | Callable[[int], Fraction], m: int) -> Fraction:
    """``c_{2m}`` as a sum over Dyck paths of length ``2m`` weighted by ``u_height`` per down-step.

    Accumulated by dynamic programming over path heights; see
    :func:`dyck_paths` for the explicit enumeration used to cross-check it.
    """
    get = u if callable(u) else (lambda n, s=list(u): s[n - 1])
    weights = {0: Fraction(1)}  # height -> total weight of partial paths
    for step in range(2 * m):
        remaining = 2 * m - step - 1
        nxt: dict[int, Fraction] = {}
        for h, w in weights.items():
            if h + 1 <= remaining:
                nxt[h + 1] = nxt.get(h + 1, 0) + w
            if h > 0:
                nxt[h - 1] = nxt.get(h - 1, 0) + w * get(h)
        weights = nxt
    return weights.get(0, Fraction(0))


def dyck_paths(m: int):
    """Yield every Dyck path of length ``2m`` as a tuple of +1/-1 steps."""
    def rec(path, h, ups):
        if len(path) == 2 * m:
            yield tuple(path)
            return
        if ups < m:
            path.append(1)
            yield from rec(path, h + 1, ups + 1)
            path.pop()
        if h > 0:
            path.append(-1)
            yield from rec(path, h - 1, ups)
            path.pop()
    yield from rec([], 0, 0)


def dyck_weight(path: Sequence[int], u: Callable[[int], Fraction]) -> Fraction:
    w, h = Fraction(1), 0
    for s in path:
        if s < 0:
            w *= u(h)
        h += s
    return w


def evaluate(sigma: MomentFunctional, p: LaurentPolynomial) -> Fraction:
    """``<sigma, p> = sum_k p_k c_k``."""
    if not p.is_proper():
        raise MomentRangeError("functional is defined on ordinary polynomials")
    if not p.is_zero() and p.degree >= len(sigma.c):
        raise MomentRangeError(f"need c_{p.degree}, have up to c_{len(sigma.c) - 1}")
    return sum((coef * sigma.c[e] for e, coef in p.items()), Fraction(0))


@dataclass
class CheckReport:
    name: str
    passed: bool
    checked: int = 0
    first_failure: Optional[dict] = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checked": self.checked,
                "first_failure": self.first_failure, "details": self.details}


def check_ns_condition(coeffs: Coefficients, sigma: MomentFunctional, n_max: int) -> CheckReport:
    """``(lambda_n - lambda_m) c_{n+m} + (nu_n - nu_m) c_{n+m-2} = 0`` for ``m < n <= n_max``."""
    if len(sigma) < 2 * n_max:
        raise MomentRangeError(f"need moments up to c_{2 * n_max - 1}")
    report = CheckReport("ns", True)
    for n in range(n_max + 1):
        lam_n, nu_n = coeffs.lambda_nu(n)
        for m in range(n):
            if n + m < 2:
                continue
            lam_m, nu_m = coeffs.lambda_nu(m)
            value = (lam_n - lam_m) * sigma[n + m] + (nu_n - nu_m) * sigma[n + m - 2]
            report.checked += 1
            if value != 0 and report.passed:
                report.passed = False
                report.first_failure = {"n": n, "m": m, "value": scalar_to_str(value)}
    return report


def check_operator_symmetry(coeffs: Coefficients, sigma: MomentFunctional,
                            f: LaurentPolynomial, g: LaurentPolynomial) -> CheckReport:
    """``<sigma, g L f> = <sigma, f L g>``."""
    left = evaluate(sigma, g * apply_abstract(coeffs, f))
    right = evaluate(sigma, f * apply_abstract(coeffs, g))
    report = CheckReport("symmetry", left == right, 1,
                         details={"left": scalar_to_str(left), "right": scalar_to_str(right)})
    if not report.passed:
        report.first_failure = {"f": f.to_json(), "g": g.to_json(), **report.details}
    return report


def hankel(sigma: MomentFunctional, n: int) -> Fraction:
    """``det(c_{i+k})_{i,k=0..n}``."""
    if 2 * n >= len(sigma):
        raise MomentRangeError(f"need moments up to c_{2 * n}")
    return det_bareiss([[sigma[i + k] for k in range(n + 1)] for i in range(n + 1)])


@dataclass
class OrthogonalityReport:
    max_index: int
    passed: bool
    norms: list[Fraction]
    first_failure: Optional[tuple[int, int, Fraction]] = None

    def to_dict(self) -> dict:
        ff = None
        if self.first_failure is not None:
            n, m, v = self.first_failure
            ff = {"n": n, "m": m, "value": scalar_to_str(v)}
        return {"name": "orthogonality", "passed": self.passed, "max_index": self.max_index,
                "norms": [scalar_to_str(h) for h in self.norms], "first_failure": ff}


def orthogonality_report(spec: Coefficients, n_max: int) -> OrthogonalityReport:
    """Check ``<sigma, P_n P_m> = h_n delta_nm`` with ``h_n = u_1 ... u_n``.

    ``u_n`` comes from the closed form for a :class:`FamilySpec` and from the
    descent formula for any other coefficient source.
    """
    A = expansion_for(spec)
    sigma = moments_from_expansion(A, 2 * n_max)
    polys = [A.poly(n) for n in range(n_max + 1)]
    if isinstance(spec, FamilySpec):
        u = lambda n: u_closed(spec, n)  # noqa: E731
    else:
        u = lambda n: u_via_descent(spec, n)  # noqa: E731
    norms = [Fraction(1)]
    for n in range(1, n_max + 1):
        norms.append(norms[-1] * u(n))
    report = OrthogonalityReport(n_max, True, norms)
    for n in range(n_max + 1):
        for m in range(n + 1):
            value = evaluate(sigma, polys[n] * polys[m])
            expected = norms[n] if n == m else 0
            if value != expected:
                report.passed = False
                report.first_failure = (n, m, value)
                return report
    return report


def uv_moments(sigma: MomentFunctional) -> tuple[list[Fraction], list[Fraction]]:
    """``c^(U)_n = c_{2n}`` and (unnormalized) ``c^(V)_n = c_{2n+2}``."""
    cu = list(sigma.c[0::2])
    return cu, cu[1:]


def check_uv_conditions(coeffs: Coefficients, sigma: MomentFunctional, total_max: int) -> CheckReport:
    """First-order moment conditions of the U and V subsequences for ``n + m <= total_max``."""
    cu, cv = uv_moments(sigma)
    report = CheckReport("uv-moments", True)
    for label, off, cs in (("U", 0, cu), ("V", 1, cv)):
        for n in range(total_max + 1):
            for m in range(total_max + 1 - n):
                if n + m < 1 or n + m >= len(cs):
                    continue
                lam_n, nu_n = coeffs.lambda_nu(2 * n + off)
                lam_m, nu_m = coeffs.lambda_nu(2 * m + off)
                value = (lam_n - lam_m) * cs[n + m] + (nu_n - nu_m) * cs[n + m - 1]
                report.checked += 1
                if value != 0 and report.passed:
                    report.passed = False
                    report.first_failure = {"part": label, "n": n, "m": m, "value": scalar_to_str(value)}
    return report

