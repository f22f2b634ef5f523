import os
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from symhyper.exact import LaurentPolynomial
from symhyper.families import DEFAULT_SPECS, FamilyKind, random_spec

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=(HealthCheck.too_slow,))
settings.register_profile("thorough", max_examples=400, deadline=None,
                          suppress_health_check=(HealthCheck.too_slow,))
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ALL_KINDS = list(FamilyKind)
REALIZED_KINDS = [FamilyKind.LITTLE_Q_JACOBI, FamilyKind.GEGENBAUER, FamilyKind.LAGUERRE]


def rationals(lo=-20, hi=20, max_den=12):
    return st.builds(Fraction, st.integers(lo, hi), st.integers(1, max_den))


def laurent_polys(min_exp=-4, max_exp=8, max_terms=6):
    return st.dictionaries(st.integers(min_exp, max_exp), rationals(), max_size=max_terms).map(LaurentPolynomial)


def proper_polys(max_deg=8):
    return laurent_polys(0, max_deg)


def family_specs(kinds=None, algebra_gauge=False):
    """Random nondegenerate specs (seeded so hypothesis can shrink the seed)."""
    kinds = kinds or ALL_KINDS
    return st.tuples(st.sampled_from(kinds), st.integers(0, 10**6)).map(
        lambda t: random_spec(t[0], random.Random(t[1]), algebra_gauge=algebra_gauge, n_check=25))


def specs_per_kind(seed=2024, count=3, algebra_gauge=False):
    """Default spec plus ``count`` randomized specs for every kind."""
    rng = random.Random(seed)
    out = []
    for kind in ALL_KINDS:
        out.append(DEFAULT_SPECS[kind])
        out.extend(random_spec(kind, rng, algebra_gauge=algebra_gauge) for _ in range(count))
    return out


@pytest.fixture(scope="session")
def sample_specs():
    return specs_per_kind()


# criterion number -> (title, passed); filled by test_acceptance.py
ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_RESULTS):
        title, passed = ACCEPTANCE_RESULTS[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if passed else 'FAIL'}  {title}")
