import math

import pytest
from hypothesis import given, settings, strategies as st

from regulus.errors import CostLimit, DomainError, TruncationTooSmall
from regulus.etaq import FQuotient, expand_fquotient
from regulus.numtheory import (
    CharacterSpec,
    NewmanParams,
    hecke_Tp,
    is_prime,
    kronecker,
    legendre,
    newman_verify,
    omega,
    tau_exact,
    tau_mod2,
)
from regulus.series import ZZ, from_coeffs, make_constant

SMALL_ODD_PRIMES = [3, 5, 7, 11, 13]


def test_is_prime():
    primes_below_100 = [n for n in range(100) if is_prime(n)]
    assert primes_below_100 == [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
        67, 71, 73, 79, 83, 89, 97,
    ]
    assert is_prime(2**31 - 1)
    assert not is_prime(2**32 + 1)


def test_legendre_examples():
    assert legendre(3, 7) == -1  # squares mod 7 are {1, 2, 4}
    assert legendre(7 * 3, 7) == 0
    assert legendre(4, 5) == 1
    with pytest.raises(DomainError):
        legendre(3, 2)
    with pytest.raises(DomainError):
        legendre(3, 9)


@given(
    st.integers(min_value=-200, max_value=200),
    st.integers(min_value=-200, max_value=200),
    st.sampled_from(SMALL_ODD_PRIMES),
)
def test_legendre_multiplicative(a, b, p):
    assert legendre(a * b, p) == legendre(a, p) * legendre(b, p)


def test_kronecker_examples():
    assert kronecker(17, 1) == 1
    assert kronecker(2, 7) == 1 == legendre(2, 7)
    for d in (1, 5, 9, 13):
        assert kronecker(-1, d) == 1
    for d in (3, 7, 11):
        assert kronecker(-1, d) == -1
    assert kronecker(-4, 2) == 0
    assert kronecker(12, 4) == 0
    assert kronecker(5, 0) == 0
    assert kronecker(1, 0) == 1


@given(
    st.integers(min_value=-300, max_value=300),
    st.sampled_from(SMALL_ODD_PRIMES),
)
def test_kronecker_agrees_with_legendre(a, p):
    assert kronecker(a, p) == legendre(a, p)


@given(
    st.integers(min_value=-60, max_value=60),
    st.integers(min_value=-60, max_value=60),
    st.integers(min_value=-40, max_value=40),
)
@settings(max_examples=150)
def test_kronecker_multiplicative_in_top(a, b, n):
    assert kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n)


# ---------------------------------------------------------------------------
# tau
# ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def tau():
    return tau_exact(3000)


def test_tau_values(tau):
    assert tau[1] == 1
    assert tau[2] == -24
    assert tau[3] == 252
    assert tau[6] == tau[2] * tau[3]
    with pytest.raises(CostLimit):
        tau_exact(5001)


def test_tau_multiplicative(tau):
    for m in range(2, 55):
        for n in range(m + 1, 3000 // m + 1):
            if math.gcd(m, n) == 1:
                assert tau[m * n] == tau[m] * tau[n]


def test_tau_prime_power_recurrence(tau):
    for p in (2, 3, 5):
        power = p * p
        while power <= 3000:
            ell = round(math.log(power, p))
            assert (
                tau[power]
                == tau[p] * tau[power // p] - p**11 * tau[power // (p * p)]
            )
            power *= p


def test_tau_hecke_coefficient_identity(tau):
    for p in (2, 3, 5, 7):
        for n in range(1, 3000 // p + 1):
            lhs = tau[p * n]
            if n % p == 0:
                lhs += p**11 * tau[n // p]
            assert lhs == tau[p] * tau[n]


def test_tau_mod2(tau):
    assert tau_mod2(9) == 1
    for p in (2, 3, 5, 7, 11, 13, 97):
        assert tau_mod2(p) == 0
    for n in range(1, 3001):
        assert tau_mod2(n) == tau[n] % 2


# ---------------------------------------------------------------------------
# Hecke action
# ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def delta_series():
    tau = tau_exact(1001)
    return from_coeffs(ZZ, tau[:1001])


def test_hecke_delta_eigenform(delta_series):
    tau = tau_exact(1001)
    for p in (2, 3, 5):
        acted = hecke_Tp(delta_series, p, 12)
        upto = min(200, acted.trunc)
        expected = [tau[p] * tau[n] if n else 0 for n in range(upto + 1)]
        assert acted.coeffs()[: upto + 1] == expected


def test_hecke_zero_series():
    zero = make_constant(ZZ, 0, 100)
    assert hecke_Tp(zero, 5, 3).coeffs() == [0] * 21


def test_hecke_eta4_6_annihilated_by_T3(eta4_6_series):
    chi = CharacterSpec(-4)
    acted = hecke_Tp(eta4_6_series, 3, 3, chi)
    assert acted.coeffs() == [0] * (acted.trunc + 1)


def test_eta4_6_eigenform_relation(eta4_6_series):
    # exact eigenvalue relation a(pn) + chi(p) p^2 a(n/p) == a(p) a(n)
    chi = CharacterSpec(-4)
    a = eta4_6_series.at
    for p in (5, 7, 13, 17):
        ap = a(p)
        for n in range(2000 // p + 1):
            lhs = a(p * n)
            if n % p == 0:
                lhs += chi(p) * p * p * a(n // p)
            assert lhs == ap * a(n)


def test_eta4_6_prime_coefficient_vanishing(eta4_6_series):
    # a(p) vanishes exactly at p = 3 mod 4; at p = 5 mod 8 the coefficient
    # is nonzero but even, which is what the mod-6 congruence chain uses
    a = eta4_6_series.at
    assert a(5) == -6 and a(13) == 10  # nonzero despite p != 1 mod 8
    for p in range(3, 101):
        if not is_prime(p):
            continue
        if p % 4 == 3:
            assert a(p) == 0
        if p % 8 != 1:
            assert a(p) % 2 == 0


def test_eta4_6_support(eta4_6_series):
    # exact support lies on 1 mod 4; odd coefficients only on 1 mod 8
    for n in eta4_6_series.support():
        assert n % 4 == 1
        if eta4_6_series.at(n) % 2:
            assert n % 8 == 1


# ---------------------------------------------------------------------------
# the two-prime product recurrence
# ---------------------------------------------------------------------------


def test_newman_params_validation():
    params = NewmanParams(-1, 6, 3, 5)
    assert params.epsilon == 2.5
    assert params.t.numerator == 17 and params.t.denominator == 24
    assert params.delta() == 17
    assert NewmanParams(-1, 6, 3, 7).delta() == 34
    with pytest.raises(DomainError):
        NewmanParams(2, 6, 3, 5)  # same parity
    with pytest.raises(DomainError):
        NewmanParams(0, 3, 3, 5)
    with pytest.raises(DomainError):
        NewmanParams(-1, 6, 5, 5)  # equal primes
    with pytest.raises(DomainError):
        NewmanParams(6, -1, 3, 5).theta_symbol()  # odd s unsupported


def test_omega_values(a3_series):
    assert a3_series.at(17) == 1  # odd
    assert omega(5, a3_series) == 6
    assert omega(7, a3_series) == 16
    short = expand_fquotient(FQuotient.make({3: 6, 1: -1}), 10, ZZ)
    with pytest.raises(TruncationTooSmall):
        omega(5, short)
    with pytest.raises(DomainError):
        omega(4, a3_series)


def test_newman_recurrence(a3_series):
    rep5 = newman_verify(NewmanParams(-1, 6, 3, 5), a3_series, 300)
    assert rep5.passed, rep5
    rep7 = newman_verify(NewmanParams(-1, 6, 3, 7), a3_series, 150)
    assert rep7.passed, rep7
    with pytest.raises(TruncationTooSmall):
        newman_verify(NewmanParams(-1, 6, 3, 5), a3_series, 10**6)


def test_newman_n0_reduces_to_gamma0(a3_series):
    # at n = 0 the recurrence collapses to a(Delta) = gamma(0)
    for p in (5, 7):
        params = NewmanParams(-1, 6, 3, p)
        delta = params.delta()
        w = omega(p, a3_series)
        gamma0 = w - p * legendre(2, p) * legendre(-delta, p)
        assert a3_series.at(delta) == gamma0
