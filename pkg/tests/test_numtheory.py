import pytest
from hypothesis import given, settings, strategies as st
from sympy import isprime as sym_isprime
from sympy.functions.combinatorial.numbers import jacobi_symbol

from diamondcheck.numtheory import (
    is_prime,
    is_prime_power,
    is_proven_prime,
    jacobi,
    primes_up_to,
    repunit,
)


def test_sieve_agrees_with_is_prime_to_a_million():
    sieve = set(primes_up_to(10**6))
    assert len(sieve) == 78498
    assert all(is_prime(n) == (n in sieve) for n in range(-5, 10**6 + 1))


def test_primes_up_to_small_limits():
    assert primes_up_to(1) == []
    assert primes_up_to(2) == [2]
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize("n", [
    3215031751,            # strong pseudoprime to bases 2, 3, 5, 7
    3825123056546413051,   # strong pseudoprime to bases up to 23
    318665857834031151167461,  # strong pseudoprime to bases up to 37
    3317044064679887385961981,  # strong pseudoprime to bases up to 41
    561, 41041, 825265,    # Carmichael numbers
])
def test_known_strong_pseudoprimes_are_composite(n):
    assert not is_prime(n)


@pytest.mark.parametrize("n", [2**61 - 1, 2**89 - 1, 2**127 - 1, 2**521 - 1,
                               10**24 + 7, repunit(17, 71)])
def test_large_primes(n):
    assert is_prime(n) == sym_isprime(n)
    assert is_prime(n)


def test_large_composites():
    assert not is_prime((2**61 - 1) * (2**89 - 1))
    assert not is_prime(2**128 + 1)
    assert not is_prime(repunit(17, 72))


def test_proven_range():
    assert is_proven_prime(2**61 - 1)
    assert not is_proven_prime(2**127 - 1)  # prime, but beyond the deterministic range
    assert not is_proven_prime(15)


@settings(max_examples=300)
@given(st.integers(min_value=0, max_value=2**100))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == sym_isprime(n)


@given(st.integers(-200, 200), st.integers(1, 400).map(lambda k: 2 * k + 1))
def test_jacobi_matches_sympy(a, n):
    assert jacobi(a, n) == jacobi_symbol(a % n, n)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 31, 97])
def test_jacobi_is_legendre_for_primes(p):
    squares = {x * x % p for x in range(1, p)}
    for a in range(p):
        expected = 0 if a == 0 else (1 if a in squares else -1)
        assert jacobi(a, p) == expected


@pytest.mark.parametrize("n", [0, -3, 4])
def test_jacobi_rejects_bad_modulus(n):
    with pytest.raises(ValueError):
        jacobi(1, n)


def test_prime_powers():
    assert [n for n in range(1, 33) if is_prime_power(n)] == [
        2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32]


@given(st.integers(2, 36), st.integers(1, 30))
def test_repunit_is_all_ones_in_base_q(q, n):
    assert repunit(q, n) == int("1" * n, q)


def test_repunit_rejects_bad_arguments():
    with pytest.raises(ValueError):
        repunit(1, 3)
    with pytest.raises(ValueError):
        repunit(3, 0)
