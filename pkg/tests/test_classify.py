import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from symhyper.classify import (DegenerateFitError, OmegaClass, check_cross_condition, check_uv_compatibility,
                               classify, evaluate_shape, fit_difference_equation, minus_one_partners,
                               q_from_omega, shape_parameters)
from symhyper.families import DEFAULT_SPECS, FamilyKind, FamilySpec, random_spec

from conftest import ALL_KINDS, family_specs, rationals

F = Fraction
EXPECTED_CLASS = {FamilyKind.LITTLE_Q_JACOBI: OmegaClass.Q, FamilyKind.Q_LAGUERRE: OmegaClass.Q,
                  FamilyKind.GEGENBAUER: OmegaClass.JACOBI, FamilyKind.LAGUERRE: OmegaClass.JACOBI}


def tables(spec, length=20):
    pairs = [spec.lambda_nu(n) for n in range(length)]
    return [p[0] for p in pairs], [p[1] for p in pairs]


def minus_one_input(length=20):
    """Merged table whose even and odd parts are each of Omega = -2 shape."""
    lu = [(-1) ** n * (2 * n + 1) for n in range(length // 2)]
    nuu = [(-1) ** n * (1 + 2 * n) - 1 for n in range(length // 2)]
    lv = [(-1) ** n * (2 * n + 3) + F(1, 2) for n in range(length // 2)]
    nuv = [(-1) ** n * (1 + 4 * n) - 1 for n in range(length // 2)]
    lam = [x for pair in zip(lu, lv) for x in pair]
    nu = [x for pair in zip(nuu, nuv) for x in pair]
    return lam, nu


def test_fit_examples():
    fit = fit_difference_equation([n * n for n in range(8)])
    assert (fit.omega, fit.B, fit.residual_ok) == (2, -2, True)
    fit = fit_difference_equation([F(2) ** n for n in range(8)])
    assert (fit.omega, fit.B) == (F(5, 2), 0)
    fit = fit_difference_equation([(-1) ** n * n for n in range(8)])
    assert (fit.omega, fit.B) == (-2, 0)


def test_fit_errors():
    with pytest.raises(DegenerateFitError):
        fit_difference_equation([3] * 6)
    with pytest.raises(ValueError):
        fit_difference_equation([1, 2, 3, 4])
    fit = fit_difference_equation([0, 1, 2, 3, 5, 8])
    assert not fit.residual_ok and fit.first_bad_index == 3


@given(st.lists(rationals(), min_size=3, max_size=3), st.sampled_from([2, -2, F(5, 2), F(10, 3), F(-17, 4)]),
       rationals(1, 9, 9).filter(lambda c: c != 0))
def test_fit_recovers_generated_sequences_and_scale_invariance(seed, omega, c):
    s = seed[:2]
    B = seed[2]
    while len(s) < 10:
        s.append(omega * s[-1] - s[-2] - B)
    try:
        fit = fit_difference_equation(s)
    except DegenerateFitError:
        return
    assert fit.residual_ok and fit.omega == omega and fit.B == B
    scaled = fit_difference_equation([c * v for v in s])
    assert scaled.omega == omega and scaled.B == c * B
    params = shape_parameters(s, fit)
    assert [evaluate_shape(params, omega, n) for n in range(10)] == s


def test_q_from_omega():
    assert q_from_omega(F(5, 2)) == F(1, 2)
    assert q_from_omega(F(17, 4)) == F(1, 4)
    assert q_from_omega(F(-5, 2)) == F(-1, 2)
    assert q_from_omega(F(3)) is None


def test_cross_condition_examples():
    spec = DEFAULT_SPECS[FamilyKind.LAGUERRE]
    lam, nu = tables(spec)
    assert check_cross_condition(lam[0::2], nu[0::2]).passed
    rep = check_cross_condition(list(range(10)), [n**3 for n in range(10)])
    assert not rep.passed and set(rep.first_failure) >= {"n", "k"}
    # quadratic nu with linear lambda is an admissible Omega = 2 pair
    assert check_cross_condition(list(range(10)), [n * n for n in range(10)]).passed
    with pytest.raises(ValueError):
        check_cross_condition([1, 2], [0, 0])


@given(family_specs())
def test_cross_condition_on_subsequences(spec):
    lam, nu = tables(spec)
    assert check_cross_condition(lam[0::2], nu[0::2]).passed
    assert check_cross_condition(lam[1::2], nu[1::2]).passed


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_uv_compatibility_defaults(kind):
    assert check_uv_compatibility(*tables(DEFAULT_SPECS[kind])).passed


def test_uv_compatibility_smallest_instance():
    lam, nu = tables(DEFAULT_SPECS[FamilyKind.GEGENBAUER], 8)
    # n = 1, m = 0 compares (lambda_3 - lambda_1)(nu_4 - nu_0) with (lambda_4 - lambda_0)(nu_3 - nu_1)
    lhs = (lam[3] - lam[1]) * (nu[4] - nu[0])
    rhs = (lam[4] - lam[0]) * (nu[3] - nu[1])
    assert lhs == rhs and lhs != 0
    with pytest.raises(ValueError):
        check_uv_compatibility(lam[:6], nu[:6])


def test_minus_one_input_fails_uv_compatibility():
    lam, nu = minus_one_input()
    result = classify(lam, nu)
    assert result.cls is OmegaClass.MINUS_ONE
    names = {c.name: c.passed for c in result.checks}
    assert names == {"cross-U": True, "cross-V": True, "uv-compatibility": False}
    assert not result.compatibility


def test_minus_one_partners_collide():
    rng = random.Random(11)
    for _ in range(10):
        a0, a1, a2, b1, b2 = (F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(5))
        if a2 == 0 or b2 == 0 or (a1, a2) == (b1, b2):
            continue
        lu = [(-1) ** n * (a1 + a2 * n) + a0 for n in range(10)]
        nuu = [(-1) ** n * (b1 + b2 * n) - b1 for n in range(10)]
        partners = minus_one_partners(lu, nuu)
        # every compatible odd part alternates between two eigenvalues
        assert not partners.has_distinct_partner


def test_classify_examples():
    geg = classify(*tables(FamilySpec.gegenbauer(a=3, b=1)))
    assert geg.cls is OmegaClass.JACOBI and geg.compatibility
    qj = classify(*tables(FamilySpec.little_q_jacobi(q=F(1, 2), a=2, b=1)))
    assert qj.cls is OmegaClass.Q and qj.compatibility
    assert (qj.omega, qj.q, qj.family_q) == (F(17, 4), F(1, 4), F(1, 2))


def test_random_sequences_are_inadmissible():
    rng = random.Random(3)
    hits = 0
    for _ in range(20):
        lam = rng.sample(range(-500, 500), 20)
        nu = [0, 0] + [F(rng.randint(-50, 50), rng.randint(1, 6)) for _ in range(18)]
        hits += classify(lam, nu).cls is OmegaClass.INADMISSIBLE
    assert hits == 20


def test_classify_rejects_bad_input():
    with pytest.raises(ValueError):
        classify(list(range(8)), [0] * 8)
    with pytest.raises(ValueError):
        classify([1] * 12, [0] * 12)


def test_classify_nonzero_start():
    lam, nu = tables(DEFAULT_SPECS[FamilyKind.GEGENBAUER])
    shifted = [v + 1 for v in nu]
    res = classify(lam, shifted)
    assert res.cls is OmegaClass.INADMISSIBLE and not res.nu_start_zero


def test_unit_circle_class():
    # Omega = 1: s_{n+1} = s_n - s_{n-1} has period 6
    period = [0, 1, 1, 0, -1, -1]
    assert fit_difference_equation([period[n % 6] for n in range(12)]).omega == 1
    lam_u = [period[n % 6] + 3 * F(n % 6) for n in range(10)]
    fit = fit_difference_equation(lam_u)
    assert not fit.residual_ok


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_round_trip_random_parameters(kind):
    rng = random.Random(hash(kind.value) % 1000)
    for _ in range(3):
        spec = random_spec(kind, rng)
        res = classify(*tables(spec))
        assert res.cls is EXPECTED_CLASS[kind] and res.compatibility
        assert res.omega == spec.omega
        if kind.is_q:
            assert res.q == spec.q**2 and res.family_q == spec.q


@given(family_specs())
def test_round_trip_property(spec):
    res = classify(*tables(spec))
    assert res.cls is EXPECTED_CLASS[spec.kind] and res.compatibility
    lam, nu = tables(spec)
    for part, off in (("U", 0), ("V", 1)):
        alpha, beta = res.parameters[part]["alpha"], res.parameters[part]["beta"]
        assert [evaluate_shape(alpha, res.omega, n) for n in range(10)] == lam[off::2]
        assert [evaluate_shape(beta, res.omega, n) for n in range(10)] == nu[off::2]


def test_unit_circle_is_reported_but_not_processed():
    def seq(s0, s1, omega, n=10):
        s = [F(s0), F(s1)]
        while len(s) < n:
            s.append(omega * s[-1] - s[-2])
        return s

    omega = F(1, 2)  # not 2cos of a rational angle, so no collisions
    lam = [v for pr in zip(seq(0, 1, omega), seq(5, 7, omega)) for v in pr]
    nu = [v for pr in zip(seq(0, 3, omega), seq(0, 2, omega)) for v in pr]
    res = classify(lam, nu)
    assert res.cls is OmegaClass.UNIT_CIRCLE and res.omega == omega
    assert not res.compatibility and res.checks == [] and res.notes
