"""Compare the literal q-Laguerre coefficient formulas with the repaired family.

The literal pair (lambda_n, nu_n) is run through the classifier, and its
recurrence coefficients, computed from the operator, are set beside the
literal u_n.  The repaired family (the a -> infinity limit of little q-Jacobi)
is checked the same way.
"""
import argparse
from dataclasses import dataclass
from fractions import Fraction

from symhyper.classify import classify
from symhyper.eigen import u_via_descent
from symhyper.exact import scalar_from_str, scalar_to_str
from symhyper.families import FamilySpec, u_closed


@dataclass(frozen=True)
class RepairConfig:
    q: Fraction = Fraction(1, 2)
    b: Fraction = Fraction(1)
    length: int = 20


@dataclass(frozen=True)
class LiteralQLaguerre:
    q: Fraction
    b: Fraction
    rho: Fraction = Fraction(-1)
    eps0: Fraction = Fraction(0)
    eps1: Fraction = Fraction(7, 3)

    def lambda_nu(self, n):
        q, b, k = self.q, self.b, n // 2
        if n % 2 == 0:
            return 1 - q**k + self.eps0, (1 - q**k) * (q**-k - b)
        return self.rho * (1 - q**k) + self.eps1, self.rho * (1 - q**k) * (q**-k - b * q)

    def u_printed(self, n):
        q, b, k = self.q, self.b, n // 2
        if n % 2 == 0:
            return b * q ** (2 - 2 * k) * (q ** (2 * k) - 1)
        return q ** (-4 * k - 2) * (q**2 + 1 - q ** (2 * k + 2)) * (b * q ** (2 * k + 2) + 1)


def summarize(name, coeffs, length):
    pairs = [coeffs.lambda_nu(n) for n in range(length)]
    res = classify([p[0] for p in pairs], [p[1] for p in pairs])
    print(f"{name}: class={res.cls.value} Omega={scalar_to_str(res.omega)} compatible={res.compatibility}")
    for check in res.checks:
        print(f"    {check.name:17s} passed={check.passed} first_failure={check.first_failure}")
    return res.compatibility


def run(cfg: RepairConfig) -> int:
    literal = LiteralQLaguerre(cfg.q, cfg.b)
    repaired = FamilySpec.q_laguerre(q=cfg.q, b=cfg.b)
    summarize("literal ", literal, cfg.length)
    ok = summarize("repaired", repaired, cfg.length)
    print(f"{'n':>3s} {'u_n from literal operator':>28s} {'literal u_n':>16s} {'repaired u_n':>22s}")
    for n in range(1, 9):
        print(f"{n:3d} {scalar_to_str(u_via_descent(literal, n)):>28s} "
              f"{scalar_to_str(literal.u_printed(n)):>16s} {scalar_to_str(u_closed(repaired, n)):>22s}")
    return 0 if ok else 1


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--q", type=scalar_from_str, default=RepairConfig.q)
    p.add_argument("--b", type=scalar_from_str, default=RepairConfig.b)
    ns = p.parse_args()
    raise SystemExit(run(RepairConfig(ns.q, ns.b)))
