"""Banded operators on the monomial basis and the bispectral algebra relations.

Every operator here is a closed-form rule ``n -> {offset: coefficient}`` on
``x^n``, so identities are checked exactly on each monomial with no matrix
truncation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .exact import LaurentPolynomial, ScalarLike, as_scalar, scalar_to_str
from .families import Coefficients, FamilyKind, FamilySpec
from .linalg import solve

Rule = Callable[[int], dict[int, Fraction]]


class MonomialOperator:
    """Linear operator given by its action on each monomial ``x^n`` (n >= 0)."""

    def __init__(self, rule: Rule, offsets: frozenset[int], name: str = "?"):
        self._rule = rule
        self.offsets = frozenset(offsets)
        self.name = name
        self._cache: dict[int, dict[int, Fraction]] = {}

    def action(self, n: int) -> dict[int, Fraction]:
        """Nonzero ``{offset: coefficient}`` with ``A x^n = sum c x^(n+offset)``."""
        if n < 0:
            raise ValueError(f"{self.name} applied to x^{n}")
        hit = self._cache.get(n)
        if hit is None:
            hit = {o: c for o, c in self._rule(n).items() if c != 0}
            self._cache[n] = hit
        return hit

    def image(self, n: int) -> LaurentPolynomial:
        return LaurentPolynomial({n + o: c for o, c in self.action(n).items()})

    def apply(self, p: LaurentPolynomial) -> LaurentPolynomial:
        acc: dict[int, Fraction] = {}
        for e, c in p.items():
            for o, v in self.action(e).items():
                acc[e + o] = acc.get(e + o, 0) + c * v
        return LaurentPolynomial(acc)

    # -- algebra ----------------------------------------------------------
    def __add__(self, other: "MonomialOperator") -> "MonomialOperator":
        if not isinstance(other, MonomialOperator):
            return NotImplemented

        def rule(n):
            out = dict(self.action(n))
            for o, c in other.action(n).items():
                out[o] = out.get(o, 0) + c
            return out
        return MonomialOperator(rule, self.offsets | other.offsets, f"({self.name} + {other.name})")

    def __neg__(self) -> "MonomialOperator":
        return self.scale(-1)

    def __sub__(self, other: "MonomialOperator") -> "MonomialOperator":
        if not isinstance(other, MonomialOperator):
            return NotImplemented
        return self + other.scale(-1)

    def scale(self, c: ScalarLike) -> "MonomialOperator":
        c = as_scalar(c)
        return MonomialOperator(lambda n: {o: c * v for o, v in self.action(n).items()},
                                self.offsets, f"{scalar_to_str(c)}*{self.name}")

    def __rmul__(self, c: ScalarLike) -> "MonomialOperator":
        if isinstance(c, MonomialOperator):
            return NotImplemented
        return self.scale(c)

    def __matmul__(self, other: "MonomialOperator") -> "MonomialOperator":
        """Composition ``self . other`` (``other`` acts first)."""
        def rule(n):
            out: dict[int, Fraction] = {}
            for ob, cb in other.action(n).items():
                for oa, ca in self.action(n + ob).items():
                    out[ob + oa] = out.get(ob + oa, 0) + cb * ca
            return out
        offsets = frozenset(a + b for a in self.offsets for b in other.offsets)
        return MonomialOperator(rule, offsets, f"{self.name}{other.name}")

    def __repr__(self):
        return f"MonomialOperator({self.name})"


def L_operator(coeffs: Coefficients, name: str = "L") -> MonomialOperator:
    def rule(n):
        lam, nu = coeffs.lambda_nu(n)
        return {0: lam, -2: nu} if n >= 2 else {0: lam}
    return MonomialOperator(rule, frozenset({0, -2}), name)


Y = MonomialOperator(lambda n: {2: Fraction(1)}, frozenset({2}), "Y")
R = MonomialOperator(lambda n: {0: Fraction(-1 if n % 2 else 1)}, frozenset({0}), "R")
I = MonomialOperator(lambda n: {0: Fraction(1)}, frozenset({0}), "I")  # noqa: E741
ZERO = MonomialOperator(lambda n: {}, frozenset(), "0")


def first_difference(A: MonomialOperator, B: MonomialOperator, n_max: int) -> Optional[int]:
    """Smallest ``n <= n_max`` where ``A x^n != B x^n``, else ``None``."""
    for n in range(n_max + 1):
        if A.action(n) != B.action(n):
            return n
    return None


def equal_on(A: MonomialOperator, B: MonomialOperator, n_max: int) -> bool:
    return first_difference(A, B, n_max) is None


def q_commutator(A: MonomialOperator, B: MonomialOperator, q: ScalarLike) -> MonomialOperator:
    """``[A, B]_q = q AB - q^-1 BA``."""
    q = as_scalar(q)
    if q == 0:
        raise ValueError("q must be nonzero")
    return (A @ B).scale(q) - (B @ A).scale(1 / q)


def commutator(A: MonomialOperator, B: MonomialOperator) -> MonomialOperator:
    return A @ B - B @ A


def anticommutator(A: MonomialOperator, B: MonomialOperator) -> MonomialOperator:
    return A @ B + B @ A


def bracket_q(spec: FamilySpec) -> Fraction:
    """Deformation parameter of the brackets: the family's ``q``, or 1."""
    return spec.q if spec.kind.is_q else Fraction(1)


def build_w(spec: FamilySpec | Coefficients, omega: ScalarLike | None = None) -> tuple[MonomialOperator, MonomialOperator]:
    """``W1 = L^2 Y + Y L^2 - Omega LYL`` and ``W2 = L Y^2 + Y^2 L - Omega YLY``."""
    if omega is None:
        omega = spec.omega
    omega = as_scalar(omega)
    L = L_operator(spec)
    W1 = L @ L @ Y + Y @ L @ L - (L @ Y @ L).scale(omega)
    W2 = L @ Y @ Y + Y @ Y @ L - (Y @ L @ Y).scale(omega)
    return W1, W2


def build_w_brackets(spec: FamilySpec, q: ScalarLike | None = None) -> tuple[MonomialOperator, MonomialOperator]:
    """``W1 = [L,[L,Y]_q]_{1/q}`` and ``W2 = [Y,[Y,L]_q]_{1/q}``."""
    q = bracket_q(spec) if q is None else as_scalar(q)
    L = L_operator(spec)
    W1 = q_commutator(L, q_commutator(L, Y, q), 1 / q)
    W2 = q_commutator(Y, q_commutator(Y, L, q), 1 / q)
    return W1, W2


# -- relation coefficients ---------------------------------------------------

def qjacobi_coefficients(q: ScalarLike, a: ScalarLike, b: ScalarLike) -> dict[str, Fraction]:
    """Structure constants of the q-Jacobi relations (as verified on monomials).

    ``xi1`` and ``eta`` are the published values; ``xi0`` carries ``(q + 1)``
    where the published formula has ``(q - 1)``, and ``zeta`` carries an extra
    ``1/(1 + q^2)``.
    """
    q, a, b = as_scalar(q), as_scalar(a), as_scalar(b)
    s = (q - 1 / q) ** 2
    t = (q * q - 1 / (q * q)) ** 2
    return {
        "xi0": Fraction(1, 2) * (q + 1) * (b - 1 / q) * s,
        "xi1": Fraction(1, 2) * (1 - q) * (b + 1 / q) * s,
        "eta": a * t,
        "zeta": -(a + b * q * q) * t / (1 + q * q),
    }


def qjacobi_coefficients_published(q: ScalarLike, a: ScalarLike, b: ScalarLike) -> dict[str, Fraction]:
    """The structure constants exactly as printed in the source, kept for comparison."""
    q, a, b = as_scalar(q), as_scalar(a), as_scalar(b)
    s = (q - 1 / q) ** 2
    t = (q * q - 1 / (q * q)) ** 2
    return {
        "xi0": Fraction(1, 2) * (q - 1) * (b - 1 / q) * s,
        "xi1": Fraction(1, 2) * (1 - q) * (b + 1 / q) * s,
        "eta": a * t,
        "zeta": -(a + b * q * q) * t,
    }


def qlaguerre_coefficients(q: ScalarLike, b: ScalarLike) -> dict[str, Fraction]:
    """q-Jacobi template constants for the q-Laguerre family in its default gauge.

    ``xi0`` and ``xi1`` are the q-Jacobi values, ``eta`` vanishes, and
    ``zeta = -(q^2 - q^-2)^2 / (1 + q^2)``.  Found by exact fitting at several
    ``(q, b)``; no published values exist to compare against.
    """
    q, b = as_scalar(q), as_scalar(b)
    out = qjacobi_coefficients(q, 0, b)
    out["zeta"] = -((q * q - 1 / (q * q)) ** 2) / (1 + q * q)
    return out


def gegenbauer_coefficients(a: ScalarLike, b: ScalarLike) -> dict[str, Fraction]:
    a, b = as_scalar(a), as_scalar(b)
    return {"y2": Fraction(-8), "y": Fraction(8), "anti": Fraction(-8), "l": Fraction(8),
            "r": 4 * (b + 1), "mu": 2 * a * a - 4 * a * b - 8 * a + 4 * b + 4}


def sl2_coefficients() -> dict[str, Fraction]:
    return {"y_w2": Fraction(8), "l": Fraction(8), "y": Fraction(4)}


# -- templates ---------------------------------------------------------------

Equation = tuple[MonomialOperator, list[tuple[str, MonomialOperator]]]

TEMPLATES = ("qjacobi", "gegenbauer", "sl2")


def template_equations(spec: FamilySpec, template: str) -> list[Equation]:
    """Ansatz ``W = sum_i c_i B_i`` for the two W-operators; shared names share unknowns."""
    L = L_operator(spec)
    W1, W2 = build_w(spec)
    if template == "qjacobi":
        return [(W2, [("xi0", Y), ("xi1", Y @ R)]),
                (W1, [("xi0", L), ("xi1", L @ R), ("eta", Y), ("zeta", I)])]
    if template == "gegenbauer":
        return [(W2, [("y2", Y @ Y), ("y", Y)]),
                (W1, [("anti", anticommutator(L, Y)), ("l", L), ("r", R), ("mu", I)])]
    if template == "sl2":
        return [(W2, [("y_w2", Y)]), (W1, [("l", L), ("y", Y)])]
    raise ValueError(f"unknown template {template!r}; choose from {TEMPLATES}")


def default_template(kind: FamilyKind) -> str:
    return {FamilyKind.LITTLE_Q_JACOBI: "qjacobi", FamilyKind.Q_LAGUERRE: "qjacobi",
            FamilyKind.GEGENBAUER: "gegenbauer", FamilyKind.LAGUERRE: "sl2"}[kind]


@dataclass
class FitResult:
    template: str
    consistent: bool
    unique: bool
    coefficients: dict[str, Fraction]
    equations: int
    rank: int
    failing_monomial: Optional[int] = None

    @property
    def holds(self) -> bool:
        return self.consistent and self.unique

    def to_dict(self) -> dict:
        return {"template": self.template, "consistent": self.consistent, "unique": self.unique,
                "coefficients": {k: scalar_to_str(v) for k, v in self.coefficients.items()},
                "equations": self.equations, "rank": self.rank,
                "failing_monomial": self.failing_monomial}


def fit_equations(equations: list[Equation], n_max: int, template: str = "custom") -> FitResult:
    """Least-unknowns exact fit of ``target = sum c_i B_i`` on ``x^0..x^n_max``."""
    names: list[str] = []
    for _, basis in equations:
        for nm, _ in basis:
            if nm not in names:
                names.append(nm)
    rows, rhs, origin = [], [], []
    for target, basis in equations:
        for n in range(n_max + 1):
            t = target.action(n)
            acts = [(names.index(nm), B.action(n)) for nm, B in basis]
            offsets = set(t)
            for _, act in acts:
                offsets |= set(act)
            for o in sorted(offsets):
                row = [Fraction(0)] * len(names)
                for j, act in acts:
                    row[j] += act.get(o, 0)
                rows.append(row)
                rhs.append(t.get(o, Fraction(0)))
                origin.append(n)
    result = solve(rows, rhs)
    coeffs = dict(zip(names, result.solution)) if result.solution is not None else {}
    failing = origin[result.inconsistent_row] if result.inconsistent_row is not None else None
    return FitResult(template, result.consistent, result.unique, coeffs, len(rows), result.rank, failing)


def fit_relation(spec: FamilySpec, template: str | None = None, n_max: int = 12) -> FitResult:
    """Solve for the template's unknown scalars; inconsistency means the relation fails."""
    template = template or default_template(spec.kind)
    return fit_equations(template_equations(spec, template), n_max, template)


# -- verification --------------------------------------------------------------

@dataclass
class RelationCheck:
    name: str
    holds: bool
    first_failure: Optional[int] = None
    coefficients: dict[str, Fraction] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "holds": self.holds, "first_failure": self.first_failure,
                "coefficients": {k: scalar_to_str(v) for k, v in self.coefficients.items()}}


def _combo(terms: list[tuple[Fraction, MonomialOperator]]) -> MonomialOperator:
    out = ZERO
    for c, B in terms:
        out = out + B.scale(c)
    return out


def relation_sides(spec: FamilySpec, coeffs: dict[str, Fraction]) -> list[tuple[str, MonomialOperator, MonomialOperator]]:
    """``(name, lhs, rhs)`` of the family's two relations with the given constants."""
    eqs = template_equations(spec, default_template(spec.kind))
    labels = {"qjacobi": ("[Y,[Y,L]_q]_1/q", "[L,[L,Y]_q]_1/q"),
              "gegenbauer": ("[Y,[Y,L]]", "[L,[L,Y]]"),
              "sl2": ("[Y,[Y,L]]", "[L,[L,Y]]")}[default_template(spec.kind)]
    return [(label, target, _combo([(coeffs[nm], B) for nm, B in basis]))
            for label, (target, basis) in zip(labels, eqs)]


def expected_coefficients(spec: FamilySpec) -> dict[str, Fraction]:
    kind = spec.kind
    if kind is FamilyKind.LITTLE_Q_JACOBI:
        return qjacobi_coefficients(spec.q, spec.a, spec.b)
    if kind is FamilyKind.Q_LAGUERRE:
        return qlaguerre_coefficients(spec.q, spec.b)
    if kind is FamilyKind.GEGENBAUER:
        return gegenbauer_coefficients(spec.a, spec.b)
    return sl2_coefficients()


def published_coefficients(spec: FamilySpec) -> Optional[dict[str, Fraction]]:
    kind = spec.kind
    if kind is FamilyKind.LITTLE_Q_JACOBI:
        return qjacobi_coefficients_published(spec.q, spec.a, spec.b)
    if kind is FamilyKind.GEGENBAUER:
        return gegenbauer_coefficients(spec.a, spec.b)
    if kind is FamilyKind.LAGUERRE:
        return sl2_coefficients()
    return None


def check_relations(spec: FamilySpec, coeffs: dict[str, Fraction], n_max: int) -> list[RelationCheck]:
    checks = []
    for name, lhs, rhs in relation_sides(spec, coeffs):
        n = first_difference(lhs, rhs, n_max)
        checks.append(RelationCheck(name, n is None, n, dict(coeffs)))
    return checks


@dataclass
class RelationReport:
    family: dict
    n_max: int
    algebra_gauge: bool
    relations: list[RelationCheck]
    published: Optional[list[RelationCheck]]
    fit: FitResult
    errata: dict[str, dict[str, str]]

    @property
    def passed(self) -> bool:
        return all(r.holds for r in self.relations)

    def to_dict(self) -> dict:
        return {"family": self.family, "n_max": self.n_max, "algebra_gauge": self.algebra_gauge,
                "passed": self.passed,
                "relations": [r.to_dict() for r in self.relations],
                "published": None if self.published is None else [r.to_dict() for r in self.published],
                "fit": self.fit.to_dict(), "errata": self.errata}


def verify_relation(spec: FamilySpec, n_max: int = 30) -> RelationReport:
    """Check both relations exactly on ``x^0..x^n_max``.

    The report carries the structure constants used, the outcome with the
    published constants where they exist, an independent fit, and every
    constant on which the published value and the fitted value disagree.
    """
    expected = expected_coefficients(spec)
    relations = check_relations(spec, expected, n_max)
    pub = published_coefficients(spec)
    published = check_relations(spec, pub, n_max) if pub is not None else None
    fit = fit_relation(spec, n_max=min(n_max, 16))
    errata = {}
    if pub is not None and fit.holds:
        for k, v in pub.items():
            if fit.coefficients.get(k) != v:
                errata[k] = {"published": scalar_to_str(v), "fitted": scalar_to_str(fit.coefficients[k])}
    return RelationReport(spec.to_dict(), n_max, spec == spec.in_algebra_gauge(),
                          relations, published, fit, errata)


def verify_q_onsager(spec: FamilySpec, n_max: int = 25) -> list[RelationCheck]:
    """``[Y,[Y,[Y,L]_q]_1/q] = 0`` and ``[L,[L,[L,Y]_q]_1/q] = eta [L,Y]``."""
    q = bracket_q(spec)
    L = L_operator(spec)
    eta = expected_coefficients(spec)["eta"]
    inner_y = q_commutator(Y, q_commutator(Y, L, q), 1 / q)
    inner_l = q_commutator(L, q_commutator(L, Y, q), 1 / q)
    n1 = first_difference(commutator(Y, inner_y), ZERO, n_max)
    n2 = first_difference(commutator(L, inner_l), commutator(L, Y).scale(eta), n_max)
    return [RelationCheck("[Y,[Y,[Y,L]_q]_1/q] = 0", n1 is None, n1),
            RelationCheck("[L,[L,[L,Y]_q]_1/q] = eta [L,Y]", n2 is None, n2, {"eta": eta})]
