"""Congruence families of primes, CRT intersection, and repunit-prime searches."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from .numtheory import is_prime, is_prime_power, primes_up_to, repunit

PUBLISHED = "published"
CRT_DERIVED = "crt-derived"


@dataclass(frozen=True)
class CongruenceFamily:
    """Integers p with ``p % modulus`` in ``residues``.

    Residues are stored as least nonnegative representatives, sorted and
    deduplicated.  A family is allowed to be empty only when it is the
    result of intersecting inconsistent conditions.
    """

    modulus: int
    residues: tuple[int, ...]
    label: str = ""
    provenance: str = PUBLISHED
    empty: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        residues = tuple(sorted({r % self.modulus for r in self.residues}))
        object.__setattr__(self, "residues", residues)
        if not residues and not self.empty:
            raise ValueError("empty residue set")
        bad = [r for r in residues if gcd(r, self.modulus) != 1]
        if bad and self.modulus > 1:
            raise ValueError(f"residues {bad} share a factor with {self.modulus}")

    @classmethod
    def of(cls, modulus: int, residues: Iterable[int], label: str = "",
           provenance: str = PUBLISHED) -> CongruenceFamily:
        return cls(modulus, tuple(residues), label, provenance)

    @classmethod
    def plus_minus(cls, modulus: int, values: Iterable[int], label: str = "") -> CongruenceFamily:
        """Expand ``±a, ±b, ...`` into least nonnegative residues."""
        values = list(values)
        return cls.of(modulus, values + [-v for v in values], label)

    def __contains__(self, p: int) -> bool:
        return p % self.modulus in self.residues

    def __str__(self) -> str:
        if not self.residues:
            return f"(none) (mod {self.modulus})"
        return f"{', '.join(map(str, self.residues))} (mod {self.modulus})"

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "residues": list(self.residues),
                "label": self.label, "provenance": self.provenance}


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> int | None:
    g = gcd(m1, m2)
    if (r2 - r1) % g:
        return None
    m2g = m2 // g
    t = (r2 - r1) // g * pow(m1 // g, -1, m2g) % m2g if m2g > 1 else 0
    return (r1 + m1 * t) % lcm(m1, m2)


def crt_intersect(conditions: Sequence[CongruenceFamily], label: str = "") -> CongruenceFamily:
    """Residue classes modulo the lcm satisfying every condition at once."""
    if not conditions:
        raise ValueError("need at least one condition")

    def merge(a: tuple[int, frozenset], c: CongruenceFamily) -> tuple[int, frozenset]:
        m, rs = a
        out = {_crt_pair(r, m, s, c.modulus) for r in rs for s in c.residues}
        out.discard(None)
        return lcm(m, c.modulus), frozenset(out)

    modulus, residues = reduce(merge, conditions, (1, frozenset([0])))
    return CongruenceFamily(modulus, tuple(residues), label, CRT_DERIVED, empty=not residues)


def enumerate_primes(family: CongruenceFamily, limit: int) -> list[int]:
    return [p for p in primes_up_to(limit) if p in family]


def first_primes(family: CongruenceFamily, k: int) -> list[int]:
    if not family.residues:
        return []
    limit = max(64, 4 * family.modulus)
    while True:
        found = enumerate_primes(family, limit)
        if len(found) >= k:
            return found[:k]
        limit *= 4


def quadratic_residues(m: int) -> list[int]:
    """Units modulo m that are squares."""
    return sorted({x * x % m for x in range(1, m) if gcd(x, m) == 1}) if m > 1 else [0]


def powers_mod(base: int, m: int) -> list[int]:
    out, x = set(), 1 % m
    while x not in out:
        out.add(x)
        x = x * base % m
    return sorted(out)


# ---------------------------------------------------------------------------
# predicates on q, n, d


def lemma_condition(q: int, n: int) -> bool:
    """Residue conditions on (q, n) equivalent to repunit(q, n) = 7 (mod 8)."""
    return (q == 2 and n > 2) or (q % 8 == 1 and n % 8 == 7) or (q % 8 == 5 and n % 8 == 3)


def _require_odd(x: int, what: str) -> None:
    if x % 2 == 0:
        raise ValueError(f"{what} must be odd, got {x}")


def dcycle_real_in_alternating(d: int) -> bool:
    """Whether a d-cycle is conjugate to its inverse inside A_d (d odd)."""
    _require_odd(d, "d")
    if d < 3:
        raise ValueError(f"d must be at least 3, got {d}")
    return d % 4 == 1


def regular_unipotent_rational(m: int) -> bool:
    """Whether the regular unipotent classes of Omega_m are rational (m odd)."""
    _require_odd(m, "m")
    return m % 8 in (1, 7)


def regular_unipotent_real(d: int) -> bool:
    """Regular unipotents of Omega_{d-2}(d) are conjugate to their inverses."""
    return dcycle_real_in_alternating(d) or regular_unipotent_rational(d - 2)


def special_example_condition(d: int) -> bool:
    """For prime d, whether the transpose-inverse map lies outside Omega_{d-2}(d)."""
    if not is_prime(d):
        raise ValueError(f"{d} is not prime")
    return d % 8 == 7


def lemma_sweep(q_max: int, n_max: int) -> tuple[int, list[tuple[int, int]]]:
    """Compare :func:`lemma_condition` with repunit(q, n) mod 8 by brute force.

    Runs over prime powers q <= q_max and 2 <= n <= n_max (n > 2 for q = 2).
    Returns the number of pairs checked and the mismatching pairs.
    """
    checked, mismatches = 0, []
    for q in range(2, q_max + 1):
        if not is_prime_power(q):
            continue
        for n in range(3 if q == 2 else 2, n_max + 1):
            checked += 1
            if lemma_condition(q, n) != (repunit(q, n) % 8 == 7):
                mismatches.append((q, n))
    return checked, mismatches


# ---------------------------------------------------------------------------
# repunit prime searches


#: Exponents n with (5^n - 1)/4 prime and n = 3 (mod 8) beyond desk-scale search.
#: Recorded from the literature; not verified here.
CITED_Q5_EXPONENTS = (3407, 16519, 201359, 1888279)


def search_repunit_primes(q: int, n_max: int, require_special: bool = False) -> list[tuple[int, int]]:
    """All n <= n_max with repunit(q, n) prime, as (n, decimal digits of d).

    Only prime n are tried: for composite n = ab the repunit factors through
    repunit(q, a).
    """
    out = []
    for n in primes_up_to(n_max):
        if require_special and not lemma_condition(q, n):
            continue
        d = repunit(q, n)
        if is_prime(d):
            out.append((n, len(str(d))))
    return out


def search_q_for_fixed_n(n: int, q_max: int,
                         q_residue: tuple[int, Iterable[int]] | None = None,
                         special: bool = True, prime_powers: bool = False,
                         q_min: int = 3) -> list[int]:
    """All q in [q_min, q_max] with repunit(q, n) prime.

    ``q`` runs over primes (or prime powers).  With ``special`` the pair
    must also satisfy :func:`lemma_condition`; ``q_residue=(m, S)`` keeps
    only q with ``q % m in S``.  q = 2 is excluded by default (Mersenne case).
    """
    if prime_powers:
        candidates = [q for q in range(max(q_min, 2), q_max + 1) if is_prime_power(q)]
    else:
        candidates = [q for q in primes_up_to(q_max) if q >= q_min]
    if q_residue is not None:
        m, allowed = q_residue[0], set(q_residue[1])
        candidates = [q for q in candidates if q % m in allowed]
    if special:
        candidates = [q for q in candidates if lemma_condition(q, n)]
    return [q for q in candidates if is_prime(repunit(q, n))]


def unbounded_rank_family(n: int, sign: int) -> CongruenceFamily:
    """Primes p for the L_n(2) < A_d < Omega_{d-1}^sign(p) series, d = 2^n - 1.

    Conditions: sign*p = 3 (mod 4); p a square mod d; p = ±1 (mod 8) when
    n is odd.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    d = 2**n - 1
    conds = [CongruenceFamily.of(4, [3 if sign == 1 else 1]),
             CongruenceFamily.of(d, quadratic_residues(d))]
    if n % 2:
        conds.append(CongruenceFamily.plus_minus(8, [1]))
    return crt_intersect(conds, label=f"unbounded_rank n={n} sign={'+' if sign == 1 else '-'}")
