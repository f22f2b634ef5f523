"""Inverse problem: from raw sequences ``lambda_n, nu_n`` to an Omega-class.

Each of the four subsequences ``lambda^U, nu^U, lambda^V, nu^V`` (even and
odd indices) is fitted to ``s_{n+1} + s_{n-1} - Omega s_n + B = 0``.  All
ratio conditions are checked cross-multiplied, so zero denominators need no
special handling.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Optional, Sequence

from .exact import ScalarLike, as_scalar, scalar_to_str
from .linalg import nullspace
from .moments import CheckReport


class DegenerateFitError(ArithmeticError):
    """Every consecutive pair of relations gives a singular 2x2 system."""


class OmegaClass(str, enum.Enum):
    Q = "q"
    JACOBI = "jacobi"
    MINUS_ONE = "minus_one"
    UNIT_CIRCLE = "unit_circle"
    INADMISSIBLE = "inadmissible"


@dataclass(frozen=True)
class DifferenceEquationFit:
    omega: Fraction
    B: Fraction
    residual_ok: bool
    first_bad_index: Optional[int] = None

    def to_dict(self) -> dict:
        return {"Omega": scalar_to_str(self.omega), "B": scalar_to_str(self.B),
                "residual_ok": self.residual_ok, "first_bad_index": self.first_bad_index}


def fit_difference_equation(seq: Sequence[ScalarLike]) -> DifferenceEquationFit:
    """Exact ``(Omega, B)`` from the first nonsingular pair of consecutive relations.

    The relation at ``n`` reads ``-s_n Omega + B = -(s_{n+1} + s_{n-1})``; the
    pair ``(n, n+1)`` is singular exactly when ``s_n = s_{n+1}``.
    """
    s = [as_scalar(v) for v in seq]
    if len(s) < 5:
        raise ValueError("need at least 5 terms")
    for n in range(1, len(s) - 2):
        if s[n] != s[n + 1]:
            r0 = s[n + 1] + s[n - 1]
            r1 = s[n + 2] + s[n]
            omega = (r1 - r0) / (s[n + 1] - s[n])
            B = omega * s[n] - r0
            break
    else:
        raise DegenerateFitError(
            "s_n = s_{n+1} for every 1 <= n <= len-3 (constant tail): Omega is undetermined")
    for n in range(1, len(s) - 1):
        if s[n + 1] + s[n - 1] - omega * s[n] + B != 0:
            return DifferenceEquationFit(omega, B, False, n)
    return DifferenceEquationFit(omega, B, True)


def rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    p, q = isqrt(x.numerator), isqrt(x.denominator)
    return Fraction(p, q) if p * p == x.numerator and q * q == x.denominator else None


def q_from_omega(omega: Fraction) -> Optional[Fraction]:
    """Root of ``t^2 - Omega t + 1`` with ``0 < |t| < 1`` when it is rational (``|Omega| > 2``)."""
    root = rational_sqrt(omega * omega - 4)
    if root is None or root == 0:
        return None
    t = (omega - root) / 2 if omega > 0 else (omega + root) / 2
    return t


def shape_parameters(seq: Sequence[ScalarLike], fit: DifferenceEquationFit) -> Optional[list[Fraction]]:
    """``[p0, p1, p2]`` of the closed-form solution matching ``seq``.

    Omega > 2 (or < -2): ``s_n = p1 t^n + p2 t^-n + p0``;
    Omega = 2: ``s_n = p2 n^2 + p1 n + p0``;
    Omega = -2: ``s_n = (-1)^n (p1 + p2 n) + p0``.
    ``None`` when ``t`` is irrational or ``|Omega| < 2``.
    """
    s0, s1 = as_scalar(seq[0]), as_scalar(seq[1])
    omega, B = fit.omega, fit.B
    if omega == 2:
        p2 = -B / 2
        return [s0, s1 - p2 - s0, p2]
    if omega == -2:
        p0 = -B / 4
        p1 = s0 - p0
        return [p0, p1, p0 - p1 - s1]
    if abs(omega) < 2:
        return None
    t = q_from_omega(omega)
    if t is None:
        return None
    p0 = B / (omega - 2)
    # p1 + p2 = s0 - p0 and p1 t + p2 / t = s1 - p0
    d0, d1 = s0 - p0, s1 - p0
    p1 = (d1 - d0 / t) / (t - 1 / t)
    return [p0, p1, d0 - p1]


def evaluate_shape(params: Sequence[Fraction], omega: Fraction, n: int) -> Fraction:
    p0, p1, p2 = params
    if omega == 2:
        return p2 * n * n + p1 * n + p0
    if omega == -2:
        return (-1) ** n * (p1 + p2 * n) + p0
    t = q_from_omega(omega)
    return p1 * t**n + p2 * t**-n + p0


def _pairs_report(name: str, rows) -> CheckReport:
    report = CheckReport(name, True)
    for idx, lhs, rhs in rows:
        report.checked += 1
        if lhs != rhs:
            report.passed = False
            report.first_failure = {**idx, "lhs": scalar_to_str(lhs), "rhs": scalar_to_str(rhs)}
            break
    return report


def check_cross_condition(lam: Sequence[ScalarLike], nu: Sequence[ScalarLike]) -> CheckReport:
    """``(lambda_{n+1} - lambda_k)(nu_n - nu_{k+1}) = (lambda_n - lambda_{k+1})(nu_{n+1} - nu_k)``."""
    lam = [as_scalar(v) for v in lam]
    nu = [as_scalar(v) for v in nu]
    if len(lam) != len(nu) or len(lam) < 3:
        raise ValueError("need equal-length sequences of at least 3 terms")
    N = len(lam)

    def rows():
        for n in range(N - 1):
            for k in range(N - 1):
                yield ({"n": n, "k": k},
                       (lam[n + 1] - lam[k]) * (nu[n] - nu[k + 1]),
                       (lam[n] - lam[k + 1]) * (nu[n + 1] - nu[k]))
    return _pairs_report("cross", rows())


def split_uv(seq: Sequence[ScalarLike]) -> tuple[list[Fraction], list[Fraction]]:
    s = [as_scalar(v) for v in seq]
    return s[0::2], s[1::2]


def check_uv_compatibility(lam: Sequence[ScalarLike], nu: Sequence[ScalarLike]) -> CheckReport:
    """``(lV_n - lV_m)(nU_{n+1} - nU_m) = (lU_{n+1} - lU_m)(nV_n - nV_m)`` on the merged sequences."""
    if len(lam) != len(nu) or len(lam) < 8:
        raise ValueError("need equal-length merged sequences of at least 8 terms")
    lu, lv = split_uv(lam)
    nu_u, nu_v = split_uv(nu)
    top = min(len(lu) - 1, len(lv))

    def rows():
        for n in range(top):
            for m in range(top):
                yield ({"n": n, "m": m},
                       (lv[n] - lv[m]) * (nu_u[n + 1] - nu_u[m]),
                       (lu[n + 1] - lu[m]) * (nu_v[n] - nu_v[m]))
    return _pairs_report("uv-compatibility", rows())


@dataclass
class ClassifyResult:
    cls: OmegaClass
    omega: Optional[Fraction] = None
    q: Optional[Fraction] = None
    family_q: Optional[Fraction] = None
    fits: dict[str, DifferenceEquationFit] = field(default_factory=dict)
    parameters: dict[str, dict[str, list[Fraction]]] = field(default_factory=dict)
    nu_start_zero: bool = True
    compatibility: bool = False
    checks: list[CheckReport] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        opt = lambda v: None if v is None else scalar_to_str(v)  # noqa: E731
        return {
            "class": self.cls.value,
            "Omega": opt(self.omega),
            "q": opt(self.q),
            "family_q": opt(self.family_q),
            "fits": {k: f.to_dict() for k, f in self.fits.items()},
            "parameters": {part: {k: [scalar_to_str(v) for v in vs] for k, vs in d.items()}
                           for part, d in self.parameters.items()},
            "nu_start_zero": self.nu_start_zero,
            "compatibility": self.compatibility,
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
        }


def classify(lam: Sequence[ScalarLike], nu: Sequence[ScalarLike]) -> ClassifyResult:
    """Omega-class, shape parameters and admissibility of a merged ``(lambda, nu)`` table.

    For q-families the subsequences live in ``q^2``: the reported ``q`` is the
    root of ``t^2 - Omega t + 1`` inside ``(0, 1)`` and ``family_q`` its
    square root when rational.
    """
    lam = [as_scalar(v) for v in lam]
    nu = [as_scalar(v) for v in nu]
    if len(lam) != len(nu) or len(lam) < 10:
        raise ValueError("need equal-length sequences of at least 10 terms")
    if len(set(lam)) != len(lam):
        raise ValueError("lambda values must be pairwise distinct")

    lu, lv = split_uv(lam)
    nuu, nuv = split_uv(nu)
    subs = {"lambda_U": lu, "nu_U": nuu, "lambda_V": lv, "nu_V": nuv}
    result = ClassifyResult(OmegaClass.INADMISSIBLE)
    for name, seq in subs.items():
        try:
            result.fits[name] = fit_difference_equation(seq)
        except DegenerateFitError as exc:
            result.notes.append(f"{name}: {exc}")
    if len(result.fits) < 4:
        return result
    bad = [k for k, f in result.fits.items() if not f.residual_ok]
    if bad:
        result.notes.append(f"no second-order difference equation fits {', '.join(bad)}")
        return result
    omegas = {f.omega for f in result.fits.values()}
    if len(omegas) > 1:
        result.notes.append("subsequences disagree on Omega: "
                            + ", ".join(f"{k}={scalar_to_str(f.omega)}" for k, f in result.fits.items()))
        return result
    omega = omegas.pop()
    result.omega = omega
    result.nu_start_zero = nu[0] == 0 and nu[1] == 0
    if not result.nu_start_zero:
        result.notes.append("nu_0 and nu_1 must vanish for L to preserve degree 0 and 1")
        return result

    if abs(omega) < 2:
        result.cls = OmegaClass.UNIT_CIRCLE
        result.notes.append("|Omega| < 2: q on the unit circle, not positive definite; not processed")
        return result
    if omega == 2:
        result.cls = OmegaClass.JACOBI
    elif omega == -2:
        result.cls = OmegaClass.MINUS_ONE
    else:
        result.cls = OmegaClass.Q
        result.q = q_from_omega(omega)
        if result.q is None:
            result.notes.append("q is irrational; shape parameters omitted")
        else:
            result.family_q = rational_sqrt(result.q) if result.q > 0 else None
        if omega < -2:
            result.notes.append("Omega < -2: negative q")

    for part, (ls, ns) in (("U", (lu, nuu)), ("V", (lv, nuv))):
        alpha = shape_parameters(ls, result.fits[f"lambda_{part}"])
        beta = shape_parameters(ns, result.fits[f"nu_{part}"])
        if alpha is not None and beta is not None:
            result.parameters[part] = {"alpha": alpha, "beta": beta}

    cross_u = check_cross_condition(lu, nuu)
    cross_u.name = "cross-U"
    cross_v = check_cross_condition(lv, nuv)
    cross_v.name = "cross-V"
    uv = check_uv_compatibility(lam, nu)
    result.checks = [cross_u, cross_v, uv]
    result.compatibility = all(c.passed for c in result.checks)
    if not uv.passed and result.cls is OmegaClass.MINUS_ONE:
        result.notes.append("U/V compatibility fails, as expected for the little -1 Jacobi class")
    return result


@dataclass(frozen=True)
class PartnerSpace:
    """Odd-part sequences of Omega = -2 shape compatible with a fixed even part.

    Each basis vector holds ``(a0, a1, a2, b0, b1, b2)`` with
    ``lambda^V_n = (-1)^n (a1 + a2 n) + a0`` and ``nu^V_n = (-1)^n (b1 + b2 n) + b0``.
    """

    basis: list[list[Fraction]]

    @property
    def nontrivial(self) -> list[list[Fraction]]:
        """Directions that move ``lambda^V`` off a constant."""
        return [v for v in self.basis if v[1] != 0 or v[2] != 0]

    @property
    def has_distinct_partner(self) -> bool:
        """Whether some partner has pairwise distinct ``lambda^V`` (needs ``a2 != 0``)."""
        return any(v[2] != 0 for v in self.nontrivial)


def minus_one_partners(lam_u: Sequence[ScalarLike], nu_u: Sequence[ScalarLike]) -> PartnerSpace:
    """Every Omega = -2 odd part with ``nu^V_0 = 0`` passing U/V compatibility with the given even part.

    The compatibility condition is linear in the odd-part shape parameters once
    the even part is fixed, so the admissible partners form a null space.
    """
    lu = [as_scalar(v) for v in lam_u]
    nuu = [as_scalar(v) for v in nu_u]
    N = len(lu)

    def shape(n):
        return [1, (-1) ** n, (-1) ** n * n]

    rows = []
    for n in range(N - 1):
        for m in range(N - 1):
            d = [x - y for x, y in zip(shape(n), shape(m))]
            rows.append([c * (nuu[n + 1] - nuu[m]) for c in d] + [-c * (lu[n + 1] - lu[m]) for c in d])
    rows.append([0, 0, 0, 1, 1, 0])  # nu^V_0 = b0 + b1 = 0
    return PartnerSpace(nullspace(rows))
