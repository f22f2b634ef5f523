"""Search for odd-part partners of Omega = -2 even parts.

For a random even part of Omega = -2 shape, the odd parts of the same shape that
satisfy the U/V compatibility condition form a linear space.  The script prints
that space and whether any member has pairwise distinct eigenvalues.
"""
import argparse
import random
from dataclasses import dataclass
from fractions import Fraction

from symhyper.classify import minus_one_partners
from symhyper.eigen import EigenvalueCollisionError, u_via_descent
from symhyper.exact import scalar_to_str


@dataclass(frozen=True)
class PartnerConfig:
    trials: int = 20
    seed: int = 1
    length: int = 10


def random_even_part(rng: random.Random, length: int, special: bool):
    def r():
        return Fraction(rng.randint(-9, 9), rng.randint(1, 4))

    a0, a1, a2 = r(), r(), r() or Fraction(1)
    lam = [(-1) ** n * (a1 + a2 * n) + a0 for n in range(length)]
    if special:
        # lambda - nu constant: the one shape that admits partners
        nu = [v - lam[0] for v in lam]
    else:
        b1, b2 = r(), r() or Fraction(1)
        nu = [(-1) ** n * (b1 + b2 * n) - b1 for n in range(length)]
    return lam, nu


@dataclass(frozen=True)
class MergedTable:
    lam: tuple
    nu: tuple

    def lambda_nu(self, n):
        return self.lam[n], self.nu[n]


def zero_recurrence_indices(lam_u, nu_u, vec, length):
    """Merge the even part with the partner ``vec`` and list ``n`` with ``u_n = 0``."""
    a0, a1, a2, b0, b1, b2 = vec
    # shift the odd eigenvalues off the even ones; the shift does not affect compatibility
    a0 += 1000
    lam_v = [(-1) ** n * (a1 + a2 * n) + a0 for n in range(length)]
    nu_v = [(-1) ** n * (b1 + b2 * n) + b0 for n in range(length)]
    table = MergedTable(tuple(v for pr in zip(lam_u, lam_v) for v in pr),
                        tuple(v for pr in zip(nu_u, nu_v) for v in pr))
    try:
        return [n for n in range(1, 2 * length - 2) if u_via_descent(table, n) == 0]
    except EigenvalueCollisionError as exc:
        return str(exc)


def run(cfg: PartnerConfig) -> int:
    rng = random.Random(cfg.seed)
    distinct = 0
    for trial in range(cfg.trials):
        special = trial % 4 == 3
        lam, nu = random_even_part(rng, cfg.length, special)
        space = minus_one_partners(lam, nu)
        distinct += space.has_distinct_partner
        basis = ["(" + ", ".join(scalar_to_str(v) for v in vec) + ")" for vec in space.basis]
        print(f"trial {trial:2d} special={special!s:5s} dim={len(space.basis)} "
              f"distinct_partner={space.has_distinct_partner} basis={basis}")
        if space.has_distinct_partner:
            vec = next(v for v in space.basis if v[2] != 0)
            print(f"          partner {basis[space.basis.index(vec)]}: u_n = 0 at n = "
                  f"{zero_recurrence_indices(lam, nu, vec, cfg.length)}")
    print(f"{distinct} of {cfg.trials} even parts admit an odd partner with a2 != 0")
    return 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--trials", type=int, default=PartnerConfig.trials)
    p.add_argument("--seed", type=int, default=PartnerConfig.seed)
    ns = p.parse_args()
    raise SystemExit(run(PartnerConfig(ns.trials, ns.seed)))
