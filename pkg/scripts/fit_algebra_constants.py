"""Fit the algebra structure constants on a parameter grid and compare with the printed ones.

Usage: python3 scripts/fit_algebra_constants.py [--n-max 16] [--seed 0] [--samples 3]
"""
import argparse
import random
from dataclasses import dataclass

from symhyper.algebra import fit_relation, published_coefficients, verify_q_onsager
from symhyper.exact import scalar_to_str
from symhyper.families import FamilyKind, random_spec


@dataclass(frozen=True)
class FitConfig:
    n_max: int = 16
    seed: int = 0
    samples: int = 3


def fmt(v):
    return "-" if v is None else scalar_to_str(v)


def run(cfg: FitConfig) -> int:
    rng = random.Random(cfg.seed)
    failures = 0
    for kind in FamilyKind:
        print(f"== {kind.value}")
        for _ in range(cfg.samples):
            spec = random_spec(kind, rng, algebra_gauge=True, n_check=cfg.n_max + 1)
            params = {k: fmt(getattr(spec, k)) for k in ("q", "a", "b") if getattr(spec, k) is not None}
            fit = fit_relation(spec, n_max=cfg.n_max)
            printed = published_coefficients(spec) or {}
            print(f"  {params}  consistent={fit.consistent} unique={fit.unique}")
            failures += not fit.holds
            for name, value in (fit.coefficients or {}).items():
                other = printed.get(name)
                flag = "" if other is None or other == value else "   <- differs from printed"
                print(f"    {name:5s} fitted={fmt(value):>28s} printed={fmt(other):>28s}{flag}")
            if kind.is_q:
                ok = all(c.holds for c in verify_q_onsager(spec, cfg.n_max))
                failures += not ok
                print(f"    degenerate q-Onsager relations hold: {ok}")
    return 1 if failures else 0


def parse_args() -> FitConfig:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n-max", type=int, default=FitConfig.n_max)
    p.add_argument("--seed", type=int, default=FitConfig.seed)
    p.add_argument("--samples", type=int, default=FitConfig.samples)
    ns = p.parse_args()
    return FitConfig(ns.n_max, ns.seed, ns.samples)


if __name__ == "__main__":
    raise SystemExit(run(parse_args()))
