"""Permutation groups on {0, ..., n-1}.

Permutations act on the right: ``a * b`` first applies ``a`` then ``b``, so
``x^(a*b) = b(a(x))``.  Conjugation is ``a ^ g = g**-1 * a * g``.

Stabilizer chains are built with the deterministic Schreier-Sims algorithm.
The base is chosen greedily: the smallest point moved by a generator that
fixes all earlier base points.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import lcm, prod
from pathlib import Path
from typing import Iterable, Iterator, Sequence

#: Largest group order for which element enumeration is allowed.
ELEMENT_BOUND = 10**7


class BoundExceeded(ValueError):
    """An exhaustive algorithm was asked to walk a group that is too big."""


class Permutation:
    """A bijection of ``range(degree)`` stored as a tuple of images."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int], check: bool = True):
        images = tuple(images)
        if check:
            if not images:
                raise ValueError("a permutation needs degree >= 1")
            if sorted(images) != list(range(len(images))):
                raise ValueError(f"not a permutation: {list(images)}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree), check=False)

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for x in cyc:
                if not 0 <= x < degree:
                    raise ValueError(f"point {x} out of range for degree {degree}")
                if x in seen:
                    raise ValueError(f"repeated point {x}")
                seen.add(x)
            for x, y in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
                images[x] = y
        return cls(images, check=False)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __invert__(self) -> Permutation:
        return inverse(self)

    def __pow__(self, k: int) -> Permutation:
        if k < 0:
            return inverse(self) ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __xor__(self, g: Permutation) -> Permutation:
        return conjugate(self, g)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, degree={self.degree})"

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def support(self) -> list[int]:
        return [i for i, x in enumerate(self.images) if i != x]

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return lcm(1, *(len(c) for c in self.cycles()))

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0


def _check_degrees(a: Permutation, b: Permutation) -> None:
    if len(a.images) != len(b.images):
        raise ValueError(f"degree mismatch: {a.degree} vs {b.degree}")


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Return ``a`` followed by ``b``."""
    _check_degrees(a, b)
    return Permutation(map(b.images.__getitem__, a.images), check=False)


def inverse(a: Permutation) -> Permutation:
    inv = [0] * len(a.images)
    for i, x in enumerate(a.images):
        inv[x] = i
    return Permutation(inv, check=False)


def conjugate(a: Permutation, g: Permutation) -> Permutation:
    """``g**-1 * a * g``: the map ``g(x) -> g(a(x))``."""
    _check_degrees(a, g)
    out = [0] * len(a.images)
    gi = g.images
    for x, y in enumerate(a.images):
        out[gi[x]] = gi[y]
    return Permutation(out, check=False)


# ---------------------------------------------------------------------------
# cycle notation and generator files

def parse_cycles(text: str, degree: int, one_based: bool = False) -> Permutation:
    """Parse disjoint cycle notation such as ``(1,2)(3,4)``.

    Points may be separated by commas and/or whitespace.  ``()`` is the
    identity.
    """
    norm = re.sub(r"\s+", "", re.sub(r"(?<=\d)\s+(?=\d)", ",", text))
    if not re.fullmatch(r"(\((\d+(,\d+)*)?\))+", norm):
        raise ValueError(f"malformed cycle notation: {text!r}")
    offset = 1 if one_based else 0
    cycles = [[int(t) - offset for t in body.split(",")]
              for body in re.findall(r"\(([^()]*)\)", norm) if body]
    return Permutation.from_cycles(cycles, degree)


def format_cycles(p: Permutation, one_based: bool = False) -> str:
    offset = 1 if one_based else 0
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(x + offset) for x in c) + ")" for c in cycles)


def read_generators(path: str | Path) -> list[Permutation]:
    """Read a generator file.

    Format: a header ``degree <n> base <0|1>``, then one permutation per line
    in cycle notation.  ``#`` starts a comment.
    """
    return parse_generator_text(Path(path).read_text())


def parse_generator_text(text: str) -> list[Permutation]:
    degree = one_based = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            m = re.fullmatch(r"degree\s+(\d+)\s+base\s+([01])", line)
            if not m:
                raise ValueError(f"line {lineno}: expected 'degree <n> base <0|1>'")
            degree, one_based = int(m.group(1)), m.group(2) == "1"
            continue
        try:
            gens.append(parse_cycles(line, degree, one_based))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if degree is None:
        raise ValueError("missing header line")
    return gens


def format_generator_text(gens: Sequence[Permutation], one_based: bool = False) -> str:
    if not gens:
        raise ValueError("no generators")
    lines = [f"degree {gens[0].degree} base {int(one_based)}"]
    lines += [format_cycles(g, one_based) for g in gens]
    return "\n".join(lines) + "\n"


@dataclass
class GroupSpec:
    name: str
    degree: int
    generators: list[Permutation]
    expected_order: int | None = None

    @classmethod
    def from_file(cls, path: str | Path, name: str | None = None,
                  expected_order: int | None = None) -> GroupSpec:
        gens = read_generators(path)
        return cls(name or Path(path).stem, gens[0].degree, gens, expected_order)

    def chain(self) -> StabilizerChain:
        chain = schreier_sims(self.generators)
        if self.expected_order is not None and chain.order() != self.expected_order:
            raise ValueError(f"{self.name}: order {chain.order()} != expected "
                             f"{self.expected_order}")
        return chain


# ---------------------------------------------------------------------------
# stabilizer chains


@dataclass
class _Level:
    base_point: int
    gens: list[Permutation] = field(default_factory=list)
    # point -> u with base_point^u == point, and its inverse
    transversal: dict[int, Permutation] = field(default_factory=dict)
    inv_transversal: dict[int, Permutation] = field(default_factory=dict)
    tested: set[tuple[int, int]] = field(default_factory=set)

    def extend_orbit(self, degree: int) -> None:
        if not self.transversal:
            e = Permutation.identity(degree)
            self.transversal[self.base_point] = e
            self.inv_transversal[self.base_point] = e
        queue = list(self.transversal)
        while queue:
            beta = queue.pop(0)
            u = self.transversal[beta]
            for s in self.gens:
                gamma = s.images[beta]
                if gamma not in self.transversal:
                    v = u * s
                    self.transversal[gamma] = v
                    self.inv_transversal[gamma] = inverse(v)
                    queue.append(gamma)


class StabilizerChain:
    """Base and strong generating set of a permutation group.

    Built by :func:`schreier_sims`; treat as immutable afterwards.
    """

    def __init__(self, degree: int, levels: list[_Level], generators: list[Permutation]):
        self.degree = degree
        self._levels = levels
        self.generators = generators

    @property
    def base(self) -> list[int]:
        return [lv.base_point for lv in self._levels]

    @property
    def strong_generators(self) -> list[Permutation]:
        return list(self._levels[0].gens) if self._levels else []

    def orbit_sizes(self) -> list[int]:
        return [len(lv.transversal) for lv in self._levels]

    def level_generators(self, i: int) -> list[Permutation]:
        """Strong generators of the stabilizer of the first ``i`` base points."""
        if i >= len(self._levels):
            return []
        return list(self._levels[i].gens)

    def transversal(self, i: int) -> dict[int, Permutation]:
        return dict(self._levels[i].transversal)

    def order(self) -> int:
        return prod(self.orbit_sizes())

    def sift(self, g: Permutation, start: int = 0) -> tuple[Permutation, int]:
        """Strip ``g`` through the chain from level ``start``.

        Returns the residue and the level at which sifting stopped
        (``len(base)`` if it went all the way).
        """
        return _sift(self._levels, g, start)

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            raise ValueError(f"degree mismatch: {g.degree} vs {self.degree}")
        h, _ = self.sift(g)
        return h.is_identity()

    __contains__ = contains

    def elements(self, bound: int = ELEMENT_BOUND) -> Iterator[Permutation]:
        """Yield every group element once, as products of transversal elements."""
        if self.order() > bound:
            raise BoundExceeded(f"group order {self.order()} exceeds bound {bound}")
        reps = [list(lv.transversal.values()) for lv in self._levels]

        # g = u_{k-1} * ... * u_1 * u_0, deepest level first
        def walk(i: int, acc: Permutation) -> Iterator[Permutation]:
            if i < 0:
                yield acc
                return
            for u in reps[i]:
                yield from walk(i - 1, acc * u)

        yield from walk(len(reps) - 1, Permutation.identity(self.degree))

    def random_element(self, rng) -> Permutation:
        g = Permutation.identity(self.degree)
        for lv in reversed(self._levels):
            g = g * rng.choice(list(lv.transversal.values()))
        return g


def _sift(levels: list[_Level], g: Permutation, start: int) -> tuple[Permutation, int]:
    for i in range(start, len(levels)):
        lv = levels[i]
        inv = lv.inv_transversal.get(g.images[lv.base_point])
        if inv is None:
            return g, i
        g = g * inv
    return g, len(levels)


def schreier_sims(gens: Sequence[Permutation], degree: int | None = None) -> StabilizerChain:
    """Deterministic Schreier-Sims.

    Every Schreier generator at every level is sifted through the deeper
    levels, so the result is a verified base and strong generating set.
    """
    if not gens and degree is None:
        raise ValueError("need at least one generator or an explicit degree")
    degree = gens[0].degree if gens else degree
    for g in gens:
        if g.degree != degree:
            raise ValueError("generators of unequal degree")
    gens = [g for g in gens if not g.is_identity()]
    levels: list[_Level] = []

    def fixes_base(g: Permutation) -> bool:
        return all(g.images[lv.base_point] == lv.base_point for lv in levels)

    for g in gens:
        if fixes_base(g):
            levels.append(_Level(g.support()[0]))
    for i, lv in enumerate(levels):
        prefix = [l.base_point for l in levels[:i]]
        lv.gens = [g for g in gens if all(g.images[b] == b for b in prefix)]
        lv.extend_orbit(degree)

    i = len(levels) - 1
    while i >= 0:
        lv = levels[i]
        restart = None
        for beta in list(lv.transversal):
            if restart is not None:
                break
            for k, s in enumerate(lv.gens):
                if (beta, k) in lv.tested:
                    continue
                lv.tested.add((beta, k))
                gamma = s.images[beta]
                sg = lv.transversal[beta] * s * lv.inv_transversal[gamma]
                if sg.is_identity():
                    continue
                h, j = _sift(levels, sg, i + 1)
                if h.is_identity():
                    continue
                if j == len(levels):
                    levels.append(_Level(h.support()[0]))
                for lv2 in levels[i + 1:j + 1]:
                    lv2.gens.append(h)
                    lv2.extend_orbit(degree)
                restart = j
                break
        # levels above i never gain generators while level i is scanned
        i = restart if restart is not None else i - 1
    return StabilizerChain(degree, levels, list(gens))


def group_order(gens: Sequence[Permutation], degree: int | None = None) -> int:
    return schreier_sims(gens, degree).order()


def trivial_chain(degree: int) -> StabilizerChain:
    return schreier_sims([], degree)


def symmetric_generators(d: int) -> list[Permutation]:
    """An n-cycle and a transposition."""
    if d < 2:
        return [Permutation.identity(max(d, 1))]
    return [Permutation([(i + 1) % d for i in range(d)]), Permutation.from_cycles([(0, 1)], d)]


def alternating_generators(d: int) -> list[Permutation]:
    """3-cycles (0,1,k) for k >= 2; they generate A_d."""
    if d < 3:
        return [Permutation.identity(d)]
    return [Permutation.from_cycles([(0, 1, k)], d) for k in range(2, d)]


# ---------------------------------------------------------------------------
# orbits, stabilizers, conjugacy


def orbit(gens: Sequence[Permutation], point: int) -> set[int]:
    if gens and not 0 <= point < gens[0].degree:
        raise ValueError(f"point {point} out of range")
    seen = {point}
    stack = [point]
    while stack:
        x = stack.pop()
        for g in gens:
            y = g.images[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def orbits(gens: Sequence[Permutation], degree: int) -> list[set[int]]:
    out, seen = [], set()
    for x in range(degree):
        if x not in seen:
            orb = orbit(gens, x)
            seen |= orb
            out.append(orb)
    return out


def is_transitive(gens: Sequence[Permutation], degree: int) -> bool:
    return len(orbit(gens, 0)) == degree if degree else True


def point_stabilizer(chain: StabilizerChain, point: int) -> list[Permutation]:
    """Generators of the stabilizer of ``point`` (Schreier's lemma)."""
    if not 0 <= point < chain.degree:
        raise ValueError(f"point {point} out of range")
    gens = chain.strong_generators
    transversal = {point: Permutation.identity(chain.degree)}
    queue = [point]
    while queue:
        beta = queue.pop(0)
        for s in gens:
            gamma = s.images[beta]
            if gamma not in transversal:
                transversal[gamma] = transversal[beta] * s
                queue.append(gamma)
    out: list[Permutation] = []
    seen = set()
    for beta, u in transversal.items():
        for s in gens:
            h = u * s * inverse(transversal[s.images[beta]])
            if not h.is_identity() and h not in seen:
                seen.add(h)
                out.append(h)
    # sift-reduce: keep only generators not already in the group so far
    reduced: list[Permutation] = []
    current = trivial_chain(chain.degree)
    for h in out:
        if not current.contains(h):
            reduced.append(h)
            current = schreier_sims(reduced)
    return reduced


def find_conjugator(G: StabilizerChain, A: Sequence[Permutation],
                    B: StabilizerChain, bound: int = ELEMENT_BOUND) -> Permutation | None:
    """Exhaustively look for ``g`` in ``G`` with ``a ^ g`` in ``B`` for all ``a`` in ``A``."""
    if G.order() > bound:
        raise BoundExceeded(f"group order {G.order()} exceeds bound {bound}")
    A = [a for a in A if not a.is_identity()]
    if not A:
        return Permutation.identity(G.degree)
    if B.order() % group_order(A):
        return None
    for g in G.elements(bound):
        if all(B.contains(conjugate(a, g)) for a in A):
            return g
    return None


def cycle_inverter(G: StabilizerChain) -> Permutation | None:
    """An element of G conjugating the cycle (0, 1, ..., d-1) to its inverse.

    In S_d the inverting elements form the coset r<c>, where r is the
    reflection x -> -x; its centralizer is <c> itself.  Testing all d
    members of that coset for membership in G is therefore exhaustive.
    """
    d = G.degree
    c = Permutation([(i + 1) % d for i in range(d)])
    c_inv = inverse(c)
    g = Permutation([(-i) % d for i in range(d)])
    for _ in range(d):
        if conjugate(c, g) != c_inv:
            raise AssertionError("reflection coset does not invert the cycle")
        if G.contains(g):
            return g
        g = g * c
    return None


def conjugate_all(gens: Sequence[Permutation], g: Permutation) -> list[Permutation]:
    return [conjugate(a, g) for a in gens]


def same_subgroup(chain_a: StabilizerChain, gens_a: Sequence[Permutation],
                  chain_b: StabilizerChain, gens_b: Sequence[Permutation]) -> bool:
    """Equality test by order plus mutual generator membership."""
    return (chain_a.order() == chain_b.order()
            and all(chain_b.contains(g) for g in gens_a)
            and all(chain_a.contains(g) for g in gens_b))


def element_set(gens: Sequence[Permutation], degree: int, cap: int | None = None) -> set[Permutation] | None:
    """Closure of ``gens`` under multiplication by brute force.

    Returns ``None`` as soon as more than ``cap`` elements are found.
    """
    e = Permutation.identity(degree)
    gens = [g for g in gens if not g.is_identity()]
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    if cap is not None and len(seen) > cap:
                        return None
                    nxt.append(y)
        frontier = nxt
    return seen
