from math import gcd, lcm

import pytest
from hypothesis import given, strategies as st
from sympy import isprime as sym_isprime

from diamondcheck import congruence as cg
from diamondcheck.congruence import CongruenceFamily
from diamondcheck.numtheory import repunit


def test_family_normalizes_residues():
    fam = CongruenceFamily.plus_minus(40, [11, 19])
    assert fam.residues == (11, 19, 21, 29)
    assert str(fam) == "11, 19, 21, 29 (mod 40)"
    assert 59 in fam and 61 in fam and 13 not in fam


def test_family_rejects_bad_residues():
    with pytest.raises(ValueError):
        CongruenceFamily.of(8, [2])
    with pytest.raises(ValueError):
        CongruenceFamily.of(0, [1])
    with pytest.raises(ValueError):
        CongruenceFamily.of(8, [])


def test_crt_known_example():
    fam = cg.crt_intersect([CongruenceFamily.of(4, [3]), CongruenceFamily.plus_minus(8, [1]),
                            CongruenceFamily.of(7, [1, 2, 4])])
    assert (fam.modulus, fam.residues) == (56, (15, 23, 39))


def test_crt_inconsistent_conditions_give_empty_family():
    fam = cg.crt_intersect([CongruenceFamily.of(4, [1]), CongruenceFamily.of(8, [3, 7])])
    assert fam.empty and fam.residues == ()
    assert cg.first_primes(fam, 3) == []


units = st.integers(2, 30).flatmap(lambda m: st.tuples(
    st.just(m),
    st.lists(st.sampled_from([r for r in range(m) if gcd(r, m) == 1]), min_size=1, max_size=4)))


@given(st.lists(units, min_size=1, max_size=3))
def test_crt_against_brute_force(conds):
    fams = [CongruenceFamily.of(m, rs) for m, rs in conds]
    fam = cg.crt_intersect(fams)
    M = lcm(*(m for m, _ in conds))
    assert fam.modulus == M
    brute = tuple(x for x in range(M) if all(x in f for f in fams))
    assert fam.residues == brute


def test_first_primes_and_enumeration():
    fam = CongruenceFamily.of(56, [15, 23, 39])
    assert cg.first_primes(fam, 3) == [23, 71, 79]
    assert cg.first_primes(CongruenceFamily.plus_minus(40, [11, 19]), 2) == [11, 19]
    assert cg.enumerate_primes(fam, 100) == [23, 71, 79]


def test_quadratic_residues_and_powers():
    assert cg.quadratic_residues(7) == [1, 2, 4]
    assert len(cg.quadratic_residues(31)) == 15
    assert cg.powers_mod(2, 31) == [1, 2, 4, 8, 16]
    assert set(cg.powers_mod(2, 31)) < set(cg.quadratic_residues(31))


@given(st.integers(2, 400), st.integers(2, 40))
def test_lemma_condition_matches_brute_force(q, n):
    from diamondcheck.numtheory import is_prime_power
    if not is_prime_power(q) or (q == 2 and n == 2):
        return
    assert cg.lemma_condition(q, n) == (repunit(q, n) % 8 == 7)


def test_reality_predicates():
    assert [d for d in range(3, 30, 2) if cg.dcycle_real_in_alternating(d)] == [5, 9, 13, 17,
                                                                                  21, 25, 29]
    assert cg.regular_unipotent_rational(7) and cg.regular_unipotent_rational(9)
    assert not cg.regular_unipotent_rational(11)
    assert cg.special_example_condition(31)
    assert not cg.special_example_condition(13)
    with pytest.raises(ValueError):
        cg.dcycle_real_in_alternating(4)
    with pytest.raises(ValueError):
        cg.special_example_condition(15)


def test_n11_search_also_finds_q5():
    # (5^11 - 1) / 4 = 12207031 is prime, and (5, 11) passes the mod 8 test
    assert repunit(5, 11) == 12207031
    assert sym_isprime(12207031)
    assert cg.lemma_condition(5, 11)
    qs = cg.search_q_for_fixed_n(11, 7300)
    assert qs[0] == 5
    assert qs[1:] == [53, 229, 389, 709, 1213, 2029, 5581, 5669, 5813, 5861, 7229]


def test_q2_is_excluded_unless_asked():
    assert 2 not in cg.search_q_for_fixed_n(7, 100)
    assert cg.search_q_for_fixed_n(7, 100, q_min=2)[0] == 2


def test_prime_power_search_matches_prime_search_for_n7():
    assert cg.search_q_for_fixed_n(7, 4500, prime_powers=True) == cg.search_q_for_fixed_n(7, 4500)


def test_search_without_special_filter_is_a_superset():
    plain = cg.search_q_for_fixed_n(3, 200, special=False)
    assert all(sym_isprime(repunit(q, 3)) for q in plain)
    assert set(cg.search_q_for_fixed_n(3, 200)) <= set(plain)


def test_repunit_search_digits():
    hits = cg.search_repunit_primes(17, 100, require_special=True)
    assert hits == [(7, 8), (47, 57), (71, 87)]
    assert all(sym_isprime(repunit(17, n)) for n, _ in hits)


@pytest.mark.parametrize("n,sign,modulus", [(3, 1, 56), (3, -1, 56), (4, 1, 60), (5, 1, 248)])
def test_unbounded_rank_family(n, sign, modulus):
    fam = cg.unbounded_rank_family(n, sign)
    assert fam.modulus == modulus
    d = 2**n - 1
    for r in fam.residues:
        assert (sign * r) % 4 == 3
        assert r % d in cg.quadratic_residues(d)


def test_unbounded_rank_n3_plus_matches_psl4():
    assert cg.unbounded_rank_family(3, 1).residues == (15, 23, 39)


def test_unbounded_rank_rejects_bad_input():
    with pytest.raises(ValueError):
        cg.unbounded_rank_family(2, 1)
    with pytest.raises(ValueError):
        cg.unbounded_rank_family(5, 0)
