import pytest
from hypothesis import given, strategies as st

from meanexp.arith import PrimePower, is_prime, kronecker, sieve_primes, tame_local_factor, vp
from meanexp.errors import DomainError


def trial_division_primes(limit):
    return [n for n in range(2, limit + 1) if all(n % d for d in range(2, n))]


def test_sieve_small():
    assert sieve_primes(10) == [2, 3, 5, 7]
    assert sieve_primes(2) == [2]


def test_sieve_against_trial_division():
    primes = sieve_primes(100)
    assert primes == trial_division_primes(100)
    assert len(primes) == 25
    assert primes[-1] == 97


def test_sieve_rejects_empty_range():
    with pytest.raises(DomainError):
        sieve_primes(1)


def test_kronecker_examples():
    # squares mod 7 are {1,2,4}; -3 = 4 mod 7
    assert kronecker(-3, 7) == 1
    # squares mod 11 contain 5
    assert kronecker(5, 11) == 1
    assert kronecker(22, 11) == 0
    assert kronecker(0, 5) == 0


def test_kronecker_rejects_zero_modulus():
    with pytest.raises(DomainError):
        kronecker(3, 0)


def test_kronecker_matches_quadratic_residues():
    # full agreement with brute-force residue testing, all odd primes < 1000
    for p in sieve_primes(999):
        if p == 2:
            continue
        squares = {x * x % p for x in range(1, p)}
        for a in range(-999, 1000):
            expected = 0 if a % p == 0 else (1 if a % p in squares else -1)
            assert kronecker(a, p) == expected, (a, p)


@given(
    st.integers(min_value=-400, max_value=400),
    st.integers(min_value=1, max_value=200),
    st.integers(min_value=1, max_value=200),
)
def test_kronecker_multiplicative_in_odd_modulus(a, m, n):
    m = 2 * m + 1
    n = 2 * n + 1
    assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)


def test_vp_examples():
    assert vp(12, 2) == 2
    assert vp(12, 3) == 1
    assert vp(7, 5) == 0
    with pytest.raises(DomainError):
        vp(0, 3)
    with pytest.raises(DomainError):
        vp(10, 4)


@given(st.integers(min_value=1, max_value=10**6), st.sampled_from([2, 3, 5, 7, 11]))
def test_vp_shifts_by_one_under_multiplication(n, p):
    assert vp(n * p, p) == vp(n, p) + 1


def test_tame_local_factor_examples():
    # 7 = 1 + 2*3 with 3 odd: v_2(4) + 1 = 3
    assert tame_local_factor(7, 2) == 3
    assert tame_local_factor(13, 2) == 2
    assert tame_local_factor(7, 2, split_completely=True) == 1
    assert tame_local_factor(9, 7) == 0  # odd p, v_7(8) = 0
    with pytest.raises(DomainError):
        tame_local_factor(9, 3)


def test_tame_local_factor_positive_on_unit_norms():
    for p in (2, 3, 5):
        for q in range(3, 400):
            if q % p == 1:
                assert tame_local_factor(q, p) >= 1, (q, p)


def test_tame_local_sum():
    from meanexp.arith import tame_local_sum

    assert tame_local_sum([], 2) == 0
    assert tame_local_sum([7, 13], 2) == 5  # 3 + 2
    assert tame_local_sum([7, 13], 2, split_completely=True) == 3  # 1 + 2


def test_prime_power():
    pp = PrimePower(3, 2)
    assert pp.value == 9
    assert PrimePower.from_value(9) == pp
    assert PrimePower.from_value(7) == PrimePower(7, 1)
    with pytest.raises(DomainError):
        PrimePower(4, 1)
    with pytest.raises(DomainError):
        PrimePower.from_value(12)


def test_is_prime_smallish():
    primes = set(sieve_primes(2000))
    for n in range(2, 2000):
        assert is_prime(n) == (n in primes)
    assert is_prime(2**61 - 1)
    assert not is_prime(2**61 + 1)
