"""Overgroup intervals [H, G] and the Boolean rank-2 counterexample check."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

from .permgroup import (
    ELEMENT_BOUND,
    Permutation,
    StabilizerChain,
    conjugate,
    element_set,
    find_conjugator,
    inverse,
    is_transitive,
    schreier_sims,
)

log = logging.getLogger(__name__)

#: Largest group order accepted by the brute-force subgroup oracle.
ORACLE_BOUND = 10**3

CHAIN = "Chain"
BOOLEAN_RANK2 = "BooleanRank2"


@dataclass
class SubgroupNode:
    generators: list[Permutation]
    chain: StabilizerChain

    @classmethod
    def from_generators(cls, gens: Sequence[Permutation], degree: int) -> SubgroupNode:
        gens = _reduce_generators(gens, degree)
        return cls(gens, schreier_sims(gens, degree))

    @property
    def order(self) -> int:
        return self.chain.order()

    @property
    def degree(self) -> int:
        return self.chain.degree

    def contains(self, g: Permutation) -> bool:
        return self.chain.contains(g)

    def contains_subgroup(self, other: SubgroupNode) -> bool:
        return other.order <= self.order and self.order % other.order == 0 and \
            all(self.chain.contains(g) for g in other.generators)

    def same_as(self, other: SubgroupNode) -> bool:
        return self.order == other.order and self.contains_subgroup(other) and \
            other.contains_subgroup(self)

    def sort_key(self) -> tuple:
        return (self.order, sorted(g.images for g in self.generators))

    def is_transitive(self) -> bool:
        return is_transitive(self.generators, self.degree)


def _reduce_generators(gens: Sequence[Permutation], degree: int) -> list[Permutation]:
    """Drop identities and generators lying in the span of earlier ones."""
    kept: list[Permutation] = []
    chain = schreier_sims([], degree)
    for g in gens:
        if g.is_identity() or chain.contains(g):
            continue
        kept.append(g)
        chain = schreier_sims(kept)
    return kept


@dataclass
class IntervalLattice:
    """Subgroups between ``nodes[0]`` (H) and ``nodes[-1]`` (G).

    ``edges`` holds pairs ``(i, j)`` with node ``i`` maximal in node ``j``.
    ``extensions[i]`` lists ``(g, j)``: one element g per nontrivial double
    coset of node i, with ``<node i, g>`` equal to node j.
    """

    nodes: list[SubgroupNode]
    edges: set[tuple[int, int]]
    below: set[tuple[int, int]] = field(default_factory=set)  # strict containment
    shape: str = ""
    extensions: dict[int, list[tuple[Permutation, int]]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.shape:
            self.shape = classify_shape(self)

    @property
    def orders(self) -> list[int]:
        return [n.order for n in self.nodes]


def _containment(nodes: list[SubgroupNode]) -> tuple[set, set]:
    below = {(i, j) for i, a in enumerate(nodes) for j, b in enumerate(nodes)
             if a.order < b.order and b.contains_subgroup(a)}
    edges = {(i, j) for (i, j) in below
             if not any((i, k) in below and (k, j) in below for k in range(len(nodes)))}
    return below, edges


def _lattice(nodes: list[SubgroupNode],
             extensions: dict[int, list[tuple[Permutation, int]]] | None = None) -> IntervalLattice:
    perm = sorted(range(len(nodes)), key=lambda i: nodes[i].sort_key())
    new_index = {old: new for new, old in enumerate(perm)}
    nodes = [nodes[i] for i in perm]
    below, edges = _containment(nodes)
    ext = {new_index[i]: [(g, new_index[j]) for g, j in reps]
           for i, reps in (extensions or {}).items()}
    return IntervalLattice(nodes, edges, below, extensions=dict(sorted(ext.items())))


def _node_index(nodes: list[SubgroupNode], K: SubgroupNode) -> tuple[int, bool]:
    for i, N in enumerate(nodes):
        if K.same_as(N):
            return i, False
    nodes.append(K)
    return len(nodes) - 1, True


def interval_lattice(G: StabilizerChain, H: Sequence[Permutation],
                     bound: int = ELEMENT_BOUND) -> IntervalLattice:
    """Every subgroup K with <H> <= K <= G.

    Breadth-first closure: each discovered K != G is extended by every
    element of G outside it.  ``<K, g>`` depends only on the double coset
    KgK, so each double coset is tried once.
    """
    degree = G.degree
    if any(not G.contains(h) for h in H):
        raise ValueError("H is not contained in G")
    elems = list(G.elements(bound))
    top = G.order()
    nodes = [SubgroupNode.from_generators(H, degree)]
    extensions: dict[int, list[tuple[Permutation, int]]] = {}
    queue = [0]
    while queue:
        i = queue.pop(0)
        S = nodes[i]
        if S.order == top:
            continue
        s_elems = list(S.chain.elements(bound))
        covered: set[Permutation] = set()
        reps = extensions[i] = []
        for g in elems:
            if g in covered or S.contains(g):
                continue
            K = SubgroupNode.from_generators(S.generators + [g], degree)
            for x in s_elems:
                xg = x * g
                covered.update(xg * y for y in s_elems)
            j, new = _node_index(nodes, K)
            reps.append((g, j))
            if new:
                log.debug("new node of order %d", K.order)
                queue.append(j)
    return _lattice(nodes, extensions)


def classify_shape(lattice: IntervalLattice) -> str:
    n = len(lattice.nodes)
    below = lattice.below
    if all((i, j) in below or (j, i) in below
           for i in range(n) for j in range(i + 1, n)):
        return CHAIN
    if n == 4 and lattice.edges == {(0, 1), (0, 2), (1, 3), (2, 3)}:
        return BOOLEAN_RANK2
    return f"Other({n})"


def maximal_overgroups(lattice: IntervalLattice) -> list[SubgroupNode]:
    top = len(lattice.nodes) - 1
    return [lattice.nodes[i] for i in range(top) if (i, top) in lattice.edges]


def is_maximal_in(H: Sequence[Permutation], M: StabilizerChain,
                  bound: int = ELEMENT_BOUND) -> bool:
    return len(interval_lattice(M, H, bound).nodes) == 2


def all_subgroups(G: StabilizerChain, bound: int = ORACLE_BOUND) -> list[SubgroupNode]:
    """Every subgroup of G, found with element sets only.

    Starts from the trivial group and adds one element at a time; no
    stabilizer chains are used during the search, so this is an oracle
    independent of :func:`interval_lattice`.
    """
    if G.order() > bound:
        raise ValueError(f"group order {G.order()} exceeds oracle bound {bound}")
    degree = G.degree
    elems = sorted(G.elements(bound))
    e = Permutation.identity(degree)
    found = {frozenset([e]): []}
    queue = [frozenset([e])]
    while queue:
        S = queue.pop(0)
        for g in elems:
            if g in S:
                continue
            T = frozenset(element_set(found[S] + [g], degree))
            if T not in found:
                found[T] = found[S] + [g]
                queue.append(T)
    nodes = [SubgroupNode(gens, schreier_sims(gens, degree)) for gens in found.values()]
    return sorted(nodes, key=SubgroupNode.sort_key)


# ---------------------------------------------------------------------------
# searching for subgroups


def conjugacy_class_reps(G: StabilizerChain, bound: int = ELEMENT_BOUND) -> list[Permutation]:
    gens = G.strong_generators
    seen: set[Permutation] = set()
    reps = []
    for g in G.elements(bound):
        if g in seen:
            continue
        reps.append(g)
        seen.add(g)
        stack = [g]
        while stack:
            x = stack.pop()
            for s in gens:
                y = conjugate(x, s)
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return reps


def _subgroup_conjugates(elements: frozenset, gens: Sequence[Permutation]) -> set[frozenset]:
    out = {elements}
    stack = [elements]
    while stack:
        K = stack.pop()
        for s in gens:
            L = frozenset(conjugate(x, s) for x in K)
            if L not in out:
                out.add(L)
                stack.append(L)
    return out


@dataclass
class FoundSubgroup:
    node: SubgroupNode
    class_size: int


def find_transitive_subgroups(G: StabilizerChain, target_order: int,
                              max_generators: int = 2,
                              bound: int = ELEMENT_BOUND) -> list[FoundSubgroup]:
    """Representatives of the G-classes of transitive subgroups of a given order.

    Exhaustive over generating tuples of length up to ``max_generators`` whose
    first entry runs over conjugacy class representatives of G.  Candidates are
    pruned by element orders (orders of generators and short words must divide
    the target) and by capped brute-force closure.  Subgroups needing more
    generators than ``max_generators`` are not found.
    """
    degree = G.degree
    if G.order() % target_order:
        return []
    elems = list(G.elements(bound))
    order_of = {g: g.order() for g in elems}
    usable = [g for g in elems if target_order % order_of[g] == 0]
    gens_G = G.strong_generators
    known: list[frozenset] = []
    results: list[FoundSubgroup] = []

    def words_ok(a: Permutation, b: Permutation) -> bool:
        ab = a * b
        return all(target_order % w.order() == 0
                   for w in (ab, ab * b, ab * a * inverse(b), ab * ab * inverse(b)))

    def record(tup: list[Permutation], S: set) -> None:
        key = frozenset(S)
        conjugates = _subgroup_conjugates(key, gens_G)
        known.extend(conjugates)
        node = SubgroupNode.from_generators(tup, degree)
        results.append(FoundSubgroup(node, len(conjugates)))
        log.info("transitive subgroup of order %d, class size %d", target_order, len(conjugates))

    def extend(prefix: list[Permutation], depth: int) -> None:
        covered = set().union(*[K for K in known if all(x in K for x in prefix)])
        for b in usable:
            if b in covered:
                continue
            tup = prefix + [b]
            last = depth == 1
            if last and not is_transitive(tup, degree):
                continue
            if len(prefix) == 1 and not words_ok(prefix[0], b):
                continue
            S = element_set(tup, degree, cap=target_order)
            if S is None or target_order % len(S):
                continue
            if len(S) == target_order:
                if is_transitive(tup, degree):
                    record(tup, S)
                    covered = set().union(*[K for K in known if all(x in K for x in prefix)])
            elif not last:
                extend(tup, depth - 1)

    for a in conjugacy_class_reps(G, bound):
        if target_order % order_of[a]:
            continue
        S = element_set([a], degree)
        if len(S) == target_order:
            if is_transitive([a], degree) and frozenset(S) not in known:
                record([a], S)
            continue
        if max_generators > 1:
            extend([a], max_generators - 1)
    return sorted(results, key=lambda f: f.node.sort_key())


# ---------------------------------------------------------------------------
# the counterexample verdict


@dataclass
class CounterexampleReport:
    lattice: IntervalLattice
    tops_conjugate: bool
    conjugator: Permutation | None
    h_maximal_in_tops: bool

    @property
    def shape(self) -> str:
        return self.lattice.shape

    @property
    def verdict(self) -> bool:
        return self.shape == BOOLEAN_RANK2 and self.tops_conjugate and self.h_maximal_in_tops


def verify_counterexample(G: StabilizerChain, H: Sequence[Permutation],
                          bound: int = ELEMENT_BOUND) -> CounterexampleReport:
    lattice = interval_lattice(G, H, bound)
    tops = maximal_overgroups(lattice)
    H = lattice.nodes[0].generators
    h_max = bool(tops) and all(is_maximal_in(H, M.chain, bound) for M in tops)
    conjugator = None
    if len(tops) == 2:
        conjugator = find_conjugator(G, tops[0].generators, tops[1].chain, bound)
    return CounterexampleReport(lattice, conjugator is not None, conjugator, h_max)
