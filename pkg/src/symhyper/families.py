"""The four symmetric families: eigenvalue data, recurrence coefficients, gauges.

Sequences are exposed in the merged index ``n``.  Internally an even ``n = 2k``
reads the U-formulas at ``k`` and an odd ``n = 2k + 1`` the V-formulas at ``k``.
"""
from __future__ import annotations

import enum
import functools
import random
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from typing import Mapping, Optional, Protocol

from .exact import ScalarLike, as_scalar, scalar_to_str


class DegenerateParameterError(ValueError):
    """Parameters make a closed form singular or violate nondegeneracy."""


class InadmissibleGaugeError(ValueError):
    """A gauge transform produced colliding eigenvalues."""


class FamilyKind(str, enum.Enum):
    LITTLE_Q_JACOBI = "GeneralizedLittleQJacobi"
    Q_LAGUERRE = "GeneralizedQLaguerre"
    GEGENBAUER = "GeneralizedGegenbauer"
    LAGUERRE = "GeneralizedLaguerre"

    @property
    def is_q(self) -> bool:
        return self in (FamilyKind.LITTLE_Q_JACOBI, FamilyKind.Q_LAGUERRE)

    @property
    def has_a(self) -> bool:
        return self in (FamilyKind.LITTLE_Q_JACOBI, FamilyKind.GEGENBAUER)


class Coefficients(Protocol):
    """Anything that yields the pair ``(lambda_n, nu_n)`` of ``L x^n``."""

    def lambda_nu(self, n: int) -> tuple[Fraction, Fraction]: ...


def _frac(v: Optional[ScalarLike]) -> Optional[Fraction]:
    return None if v is None else as_scalar(v)


@dataclass(frozen=True)
class FamilySpec:
    kind: FamilyKind
    b: Fraction
    rho: Fraction
    eps0: Fraction
    eps1: Fraction
    q: Optional[Fraction] = None
    a: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", FamilyKind(self.kind))
        for f in fields(self):
            if f.name != "kind":
                object.__setattr__(self, f.name, _frac(getattr(self, f.name)))
        if self.kind.is_q:
            if self.q is None:
                raise DegenerateParameterError(f"{self.kind.value} needs q")
            if not 0 < self.q < 1:
                raise DegenerateParameterError("q must satisfy 0 < q < 1")
        elif self.q is not None:
            raise DegenerateParameterError(f"{self.kind.value} takes no q")
        if self.kind.has_a and self.a is None:
            raise DegenerateParameterError(f"{self.kind.value} needs a")
        if not self.kind.has_a and self.a is not None:
            raise DegenerateParameterError(f"{self.kind.value} takes no a")
        if self.rho == 0:
            raise DegenerateParameterError("rho must be nonzero")

    # -- construction -----------------------------------------------------
    @classmethod
    def make(cls, kind: FamilyKind | str, *, b: ScalarLike, q: ScalarLike | None = None,
             a: ScalarLike | None = None, rho: ScalarLike | None = None,
             eps0: ScalarLike | None = None, eps1: ScalarLike | None = None) -> "FamilySpec":
        """Build a spec, filling absent ``rho, eps0, eps1`` with the family's algebra gauge."""
        kind = FamilyKind(kind)
        q, a, b = _frac(q), _frac(a), as_scalar(b)
        if kind.is_q and (q is None or not 0 < q < 1):
            raise DegenerateParameterError(f"{kind.value} needs 0 < q < 1")
        if kind.has_a and a is None:
            raise DegenerateParameterError(f"{kind.value} needs a")
        d_rho, d_e0, d_e1 = _default_gauge(kind, q, a, b)
        return cls(kind=kind, q=q, a=a, b=b,
                   rho=d_rho if rho is None else as_scalar(rho),
                   eps0=d_e0 if eps0 is None else as_scalar(eps0),
                   eps1=d_e1 if eps1 is None else as_scalar(eps1))

    @classmethod
    def little_q_jacobi(cls, q, a, b, **gauge) -> "FamilySpec":
        return cls.make(FamilyKind.LITTLE_Q_JACOBI, q=q, a=a, b=b, **gauge)

    @classmethod
    def q_laguerre(cls, q, b, **gauge) -> "FamilySpec":
        return cls.make(FamilyKind.Q_LAGUERRE, q=q, b=b, **gauge)

    @classmethod
    def gegenbauer(cls, a, b, **gauge) -> "FamilySpec":
        return cls.make(FamilyKind.GEGENBAUER, a=a, b=b, **gauge)

    @classmethod
    def laguerre(cls, b, **gauge) -> "FamilySpec":
        return cls.make(FamilyKind.LAGUERRE, b=b, **gauge)

    def with_params(self, **changes) -> "FamilySpec":
        return replace(self, **{k: _frac(v) for k, v in changes.items()})

    def in_algebra_gauge(self) -> "FamilySpec":
        """Same polynomials, with ``rho, eps0, eps1`` reset to the algebra gauge."""
        return FamilySpec.make(self.kind, q=self.q, a=self.a, b=self.b)

    # -- serialization ----------------------------------------------------
    def to_dict(self) -> dict:
        out = {"kind": self.kind.value}
        for name in ("q", "a", "b", "rho", "eps0", "eps1"):
            v = getattr(self, name)
            if v is not None:
                out[name] = scalar_to_str(v)
        return out

    @classmethod
    def from_dict(cls, obj: Mapping) -> "FamilySpec":
        if not isinstance(obj, Mapping) or "kind" not in obj:
            raise ValueError("family spec must be an object with a 'kind'")
        unknown = set(obj) - {"kind", "q", "a", "b", "rho", "eps0", "eps1"}
        if unknown:
            raise ValueError(f"unknown family fields: {sorted(unknown)}")
        try:
            kind = FamilyKind(obj["kind"])
        except ValueError:
            raise ValueError(f"unknown family kind {obj['kind']!r}") from None
        if "b" not in obj:
            raise ValueError("family spec needs 'b'")
        params = {k: _parse_json_scalar(obj[k]) for k in ("q", "a", "b", "rho", "eps0", "eps1") if k in obj}
        return cls.make(kind, **params)

    # -- coefficient sequences --------------------------------------------
    @property
    def omega(self) -> Fraction:
        """Difference-equation parameter of each parity subsequence."""
        if self.kind.is_q:
            return self.q**2 + self.q**-2
        return Fraction(2)

    def lambda_nu(self, n: int) -> tuple[Fraction, Fraction]:
        return lambda_nu(self, n)

    def u(self, n: int) -> Fraction:
        return u_closed(self, n)


def _parse_json_scalar(v) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise ValueError(f"parameters are rational strings or integers, got {v!r}")
    return as_scalar(v)


def _default_gauge(kind: FamilyKind, q, a, b) -> tuple[Fraction, Fraction, Fraction]:
    if kind is FamilyKind.LITTLE_Q_JACOBI:
        return -1 / q, 1 - a, 1 / q - a * q
    if kind is FamilyKind.Q_LAGUERRE:
        # makes lambda_n = -q^n, the a -> oo image of the q-Jacobi gauge
        return q, Fraction(-1), -q
    if kind is FamilyKind.GEGENBAUER:
        return Fraction(-1), 1 - a * a / 4, -a - a * a / 4
    return Fraction(-1), -1 - b / 2, -2 - b / 2


@functools.lru_cache(maxsize=None)
def lambda_nu(spec: FamilySpec, n: int) -> tuple[Fraction, Fraction]:
    """Coefficients of ``L x^n = lambda_n x^n + nu_n x^(n-2)``."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    k, odd = divmod(n, 2)
    a, b, rho, e0, e1 = spec.a, spec.b, spec.rho, spec.eps0, spec.eps1
    kind = spec.kind
    if kind is FamilyKind.LITTLE_Q_JACOBI:
        t = spec.q ** (2 * k)
        q2 = spec.q**2
        if not odd:
            return (1 - t) * (1 / t + a) + e0, (t - 1) * (1 / t + b)
        return rho * (t - 1) * (1 / t + a * q2) + e1, rho * (1 - t) * (1 / t + b * q2)
    if kind is FamilyKind.Q_LAGUERRE:
        t = spec.q ** (2 * k)
        if not odd:
            return (1 - t) + e0, (t - 1) * (1 / t + b)
        return rho * (1 - t) + e1, rho * (t - 1) * (1 / (t * spec.q**2) + b)
    if kind is FamilyKind.GEGENBAUER:
        if not odd:
            return -2 * k * (2 * k + a) + e0, 2 * k * (2 * k + b)
        return 2 * rho * k * (2 * k + a + 2) + e1, -2 * rho * k * (2 * k + b + 2)
    if not odd:
        return -2 * k + e0, 2 * k * (2 * k + b)
    return 2 * rho * k + e1, -2 * rho * k * (2 * k + b + 2)


def _ratio(num: Fraction, den: Fraction, what: str) -> Fraction:
    if den == 0:
        raise DegenerateParameterError(f"zero denominator in {what}")
    return num / den


@functools.lru_cache(maxsize=None)
def u_closed(spec: FamilySpec, n: int) -> Fraction:
    """Closed-form coefficient ``u_n`` of ``P_{n+1} + u_n P_{n-1} = x P_n``."""
    if n < 1:
        raise ValueError("u_n is defined for n >= 1")
    k, odd = divmod(n, 2)
    a, b = spec.a, spec.b
    kind = spec.kind
    if kind is FamilyKind.LITTLE_Q_JACOBI:
        q = spec.q
        if not odd:
            num = q ** (2 * k) * (1 - q ** (2 * k)) * (a * q ** (2 * k - 2) - b)
            den = (1 + a * q ** (4 * k)) * (1 + a * q ** (4 * k - 2))
        else:
            num = q ** (2 * k) * (b * q ** (2 * k + 2) + 1) * (a * q ** (2 * k) + 1)
            den = (1 + a * q ** (4 * k)) * (1 + a * q ** (4 * k + 2))
        return _ratio(num, den, f"u_{n}")
    if kind is FamilyKind.Q_LAGUERRE:
        q = spec.q
        if not odd:
            return q ** (-4 * k) * (1 - q ** (2 * k))
        return q ** (-4 * k - 2) * (1 + b * q ** (2 * k + 2))
    if kind is FamilyKind.GEGENBAUER:
        if not odd:
            return _ratio(2 * k * (2 * k - 2 + a - b), (a + 4 * k) * (a + 4 * k - 2), f"u_{n}")
        return _ratio((2 * k + a) * (2 * k + 2 + b), (a + 4 * k + 2) * (a + 4 * k), f"u_{n}")
    if not odd:
        return Fraction(2 * k)
    return 2 * k + 2 + b


def u_gegenbauer_classical(a: ScalarLike, n: int) -> Fraction:
    """Gegenbauer recurrence ``n(n+a-1) / ((2n+a)(2n+a-2))``."""
    a = as_scalar(a)
    return _ratio(n * (n + a - 1), (2 * n + a) * (2 * n + a - 2), f"u_{n}")


def u_big_q_jacobi(q: ScalarLike, a: ScalarLike, n: int) -> Fraction:
    """Symmetric big q-Jacobi recurrence reached at ``b = rho = -1/q``."""
    q, a = as_scalar(q), as_scalar(a)
    num = q ** (n - 1) * (1 - q**n) * (1 + a * q ** (n - 1))
    den = (1 + a * q ** (2 * n)) * (1 + a * q ** (2 * n - 2))
    return _ratio(num, den, f"u_{n}")


def check_nondegenerate(coeffs: Coefficients, n_max: int) -> None:
    """Raise unless lambda_0..lambda_{n_max} are distinct and nu_0 = nu_1 = 0 != nu_n (n >= 2)."""
    seen: dict[Fraction, int] = {}
    for n in range(n_max + 1):
        lam, nu = coeffs.lambda_nu(n)
        if lam in seen:
            raise DegenerateParameterError(f"lambda_{seen[lam]} = lambda_{n} = {lam}")
        seen[lam] = n
        if n < 2 and nu != 0:
            raise DegenerateParameterError(f"nu_{n} = {nu} must vanish")
        if n >= 2 and nu == 0:
            raise DegenerateParameterError(f"nu_{n} vanishes")


def admissibility_report(spec: FamilySpec, n_max: int) -> dict:
    """Nondegeneracy status plus the sign pattern of ``u_1..u_{n_max}``."""
    report = {"family": spec.to_dict(), "n_max": n_max}
    try:
        check_nondegenerate(spec, n_max)
        report["nondegenerate"] = True
    except DegenerateParameterError as exc:
        report["nondegenerate"] = False
        report["reason"] = str(exc)
    nonpositive = []
    for n in range(1, n_max + 1):
        try:
            if u_closed(spec, n) <= 0:
                nonpositive.append(n)
        except DegenerateParameterError:
            nonpositive.append(n)
    report["positive_definite"] = not nonpositive
    report["nonpositive_u"] = nonpositive
    return report


def table(spec: FamilySpec, n_max: int) -> list[dict]:
    """Rows ``n = 1..n_max`` with ``lambda_n, nu_n, u_n``."""
    rows = []
    for n in range(1, n_max + 1):
        lam, nu = spec.lambda_nu(n)
        rows.append({"n": n, "lambda": lam, "nu": nu, "u": u_closed(spec, n)})
    return rows


# -- gauge freedom ---------------------------------------------------------

@dataclass(frozen=True)
class GaugeTransform:
    """``L -> L + xi2 L R + eta1 I + eta2 R`` (the overall factor is fixed to 1)."""

    xi2: Fraction = Fraction(0)
    eta1: Fraction = Fraction(0)
    eta2: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("xi2", "eta1", "eta2"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))


@dataclass(frozen=True)
class GaugedFamily:
    spec: FamilySpec
    gauge: GaugeTransform = field(default_factory=GaugeTransform)

    def lambda_nu(self, n: int) -> tuple[Fraction, Fraction]:
        lam, nu = self.spec.lambda_nu(n)
        s = -1 if n % 2 else 1
        factor = 1 + s * self.gauge.xi2
        return factor * lam + self.gauge.eta1 + s * self.gauge.eta2, factor * nu


def gauge(spec: FamilySpec, g: GaugeTransform, n_max: int) -> list[Fraction]:
    """Gauged eigenvalues for ``n = 0..n_max``; collisions are inadmissible."""
    gauged = GaugedFamily(spec, g)
    values = [gauged.lambda_nu(n)[0] for n in range(n_max + 1)]
    seen: dict[Fraction, int] = {}
    for n, v in enumerate(values):
        if v in seen:
            raise InadmissibleGaugeError(f"gauged lambda_{seen[v]} = lambda_{n} = {v}")
        seen[v] = n
    return values


# -- classical reductions --------------------------------------------------

@dataclass(frozen=True)
class ClassicalReduction:
    name: Optional[str]
    polynomials_classical: bool
    operator_classical: bool

    @property
    def classical(self) -> bool:
        return self.operator_classical

    def to_dict(self) -> dict:
        return {"name": self.name, "polynomials_classical": self.polynomials_classical,
                "operator_classical": self.operator_classical}


def classical_reduction_check(spec: FamilySpec) -> ClassicalReduction:
    """Whether the polynomials are classical, and whether ``L_0 = L_1`` (R drops out)."""
    kind, b, rho, e0, e1 = spec.kind, spec.b, spec.rho, spec.eps0, spec.eps1
    if kind is FamilyKind.LITTLE_Q_JACOBI:
        q, a = spec.q, spec.a
        poly = b == -1 / q
        op = poly and rho == -1 / q and e1 == e0 + (1 / q - 1) * (a * q + 1)
        return ClassicalReduction("big q-Jacobi" if poly else None, poly, op)
    if kind is FamilyKind.GEGENBAUER:
        poly = b == -1
        op = poly and rho == -1 and e0 == e1 + spec.a + 1
        return ClassicalReduction("Gegenbauer" if poly else None, poly, op)
    if kind is FamilyKind.LAGUERRE:
        poly = b == -1
        op = poly and rho == -1 and e0 == e1 + 1
        return ClassicalReduction("Hermite" if poly else None, poly, op)
    return ClassicalReduction(None, False, False)


# -- presets and random parameters -----------------------------------------

PRESETS: dict[str, FamilySpec] = {
    "hermite": FamilySpec.laguerre(b=-1),
    "laguerre-default": FamilySpec.laguerre(b=1),
    "gegenbauer-default": FamilySpec.gegenbauer(a=3, b=1),
    "qjacobi-default": FamilySpec.little_q_jacobi(q=Fraction(1, 2), a=2, b=1),
    "qlaguerre-default": FamilySpec.q_laguerre(q=Fraction(1, 2), b=1),
}

DEFAULT_SPECS: dict[FamilyKind, FamilySpec] = {
    FamilyKind.LITTLE_Q_JACOBI: PRESETS["qjacobi-default"],
    FamilyKind.Q_LAGUERRE: PRESETS["qlaguerre-default"],
    FamilyKind.GEGENBAUER: PRESETS["gegenbauer-default"],
    FamilyKind.LAGUERRE: PRESETS["laguerre-default"],
}


def _rand_frac(rng: random.Random, lo: int, hi: int, max_den: int = 5, nonzero: bool = False) -> Fraction:
    while True:
        v = Fraction(rng.randint(lo * max_den, hi * max_den), rng.randint(1, max_den))
        if not (nonzero and v == 0):
            return v


def random_spec(kind: FamilyKind | str, rng: random.Random, *, algebra_gauge: bool = False,
                n_check: int = 41) -> FamilySpec:
    """Random rational parameters, resampled until nondegenerate up to ``n_check``."""
    kind = FamilyKind(kind)
    while True:
        kw = {"b": _rand_frac(rng, -3, 3)}
        if kind.is_q:
            den = rng.randint(2, 7)
            kw["q"] = Fraction(rng.randint(1, den - 1), den)
        if kind.has_a:
            kw["a"] = _rand_frac(rng, -3, 4)
        if not algebra_gauge:
            kw.update(rho=_rand_frac(rng, -3, 3, nonzero=True),
                      eps0=_rand_frac(rng, -3, 3), eps1=_rand_frac(rng, -3, 3))
        try:
            spec = FamilySpec.make(kind, **kw)
            check_nondegenerate(spec, n_check)
            if any(u_closed(spec, n) == 0 for n in range(1, n_check + 1)):
                continue
        except DegenerateParameterError:
            continue
        return spec
