import threading
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from symhyper.eigen import (EigenvalueCollisionError, Expansion, KernelTransformError, apply_abstract,
                            eigenpoly_descent, eigenpoly_recurrence, eigenpolys_recurrence, expansion_for,
                            kernel_transform, split_uv, u_via_descent)
from symhyper.exact import X, LaurentPolynomial, ParityError, reflect
from symhyper.families import PRESETS, FamilySpec, u_closed

from conftest import ALL_KINDS, family_specs

F = Fraction
HERMITE = PRESETS["hermite"]
GEGEN = PRESETS["gegenbauer-default"]


def test_descent_examples():
    assert eigenpoly_descent(HERMITE, 2) == X**2 - 1
    assert eigenpoly_descent(HERMITE, 3) == X**3 - 3 * X
    assert eigenpoly_descent(GEGEN, 2) == X**2 - F(3, 5)


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_low_degrees(kind, sample_specs):
    spec = next(s for s in sample_specs if s.kind is kind)
    assert eigenpoly_descent(spec, 0) == LaurentPolynomial.one()
    assert eigenpoly_descent(spec, 1) == X


def test_recurrence_examples():
    assert eigenpoly_recurrence(lambda n: F(n), 4) == X**4 - 6 * X**2 + 3
    assert eigenpoly_recurrence([F(1), F(2)], 1) == X
    assert eigenpoly_recurrence(FamilySpec.gegenbauer(a=3, b=-1), 2) == X**2 - F(1, 5)


def test_u_via_descent_examples():
    assert u_via_descent(HERMITE, 2) == 2
    assert u_via_descent(GEGEN, 2) == F(4, 35)
    lam0, _ = GEGEN.lambda_nu(0)
    lam2, nu2 = GEGEN.lambda_nu(2)
    assert u_via_descent(GEGEN, 1) == -nu2 / (lam2 - lam0)
    with pytest.raises(ValueError):
        u_via_descent(GEGEN, 0)


def test_split_uv_examples():
    U1, V1 = split_uv(X**2 - 1, X**3 - 3 * X)
    assert (U1, V1) == (X - 1, X - 3)
    U2, _ = split_uv(X**4 - 6 * X**2 + 3, X)
    assert U2 == X**2 - 6 * X + 3
    with pytest.raises(ParityError):
        split_uv(X**2 + X, X)
    with pytest.raises(ParityError):
        split_uv(X**2, X**2)


def test_kernel_transform_examples():
    assert kernel_transform(X - 1, X**2 - 6 * X + 3) == X - 3
    assert kernel_transform(LaurentPolynomial.one(), X - 1) == LaurentPolynomial.one()
    with pytest.raises(KernelTransformError):
        kernel_transform(X, X**2 + 1)


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_kernel_identity(kind, sample_specs):
    for spec in (s for s in sample_specs if s.kind is kind):
        for n in range(11):
            U_n, V_n = split_uv(eigenpoly_descent(spec, 2 * n), eigenpoly_descent(spec, 2 * n + 1))
            U_next = eigenpoly_descent(spec, 2 * n + 2).restrict_square()
            assert kernel_transform(U_n, U_next) == V_n


def test_collision_is_reported():
    class Flat:
        def lambda_nu(self, n):
            return F(1), F(0 if n < 2 else 1)
    with pytest.raises(EigenvalueCollisionError):
        Expansion(Flat()).row(2)
    with pytest.raises(EigenvalueCollisionError):
        u_via_descent(Flat(), 2)


def test_plain_integer_sources_stay_exact():
    class Ints:
        def lambda_nu(self, n):
            return n * n, 0 if n < 2 else n

    assert isinstance(u_via_descent(Ints(), 3), Fraction)
    assert all(isinstance(c, Fraction) for _, c in Expansion(Ints()).poly(6).items())


@given(family_specs(), st.integers(0, 18))
def test_eigen_equation_and_parity(spec, n):
    p = eigenpoly_descent(spec, n)
    assert p.is_monic() and p.degree == n
    assert apply_abstract(spec, p) == p.scale(spec.lambda_nu(n)[0])
    assert reflect(p) == p.scale((-1) ** n)
    A = expansion_for(spec)
    assert all((n - k) % 2 == 0 for k in A.row(n))


@given(family_specs())
def test_descent_equals_recurrence(spec):
    rec = eigenpolys_recurrence(spec, 16)
    assert all(eigenpoly_descent(spec, n) == rec[n] for n in range(17))


@given(family_specs(), st.integers(1, 14))
def test_expansion_bookkeeping(spec, n):
    A = expansion_for(spec)
    u = u_closed(spec, n)
    for k in range(n + 2):
        assert A.coefficient(n + 1, k) + u * A.coefficient(n - 1, k) == A.coefficient(n, k - 1)
    assert u == A.coefficient(n, n - 2) - A.coefficient(n + 1, n - 1)


def test_expansion_concurrent_rows():
    spec = FamilySpec.little_q_jacobi(q=F(2, 7), a=F(3, 2), b=F(-1, 3))
    A = Expansion(spec)
    results = {}

    def work(n):
        results[n] = A.poly(n)

    threads = [threading.Thread(target=work, args=(n,)) for n in range(30)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(results[n] == eigenpoly_recurrence(spec, n) for n in range(30))
