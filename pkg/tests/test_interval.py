import pytest

from diamondcheck.interval import (
    BOOLEAN_RANK2,
    CHAIN,
    SubgroupNode,
    all_subgroups,
    classify_shape,
    conjugacy_class_reps,
    find_transitive_subgroups,
    interval_lattice,
    is_maximal_in,
    maximal_overgroups,
    verify_counterexample,
)
from diamondcheck.permgroup import (
    Permutation,
    alternating_generators,
    conjugate,
    element_set,
    schreier_sims,
    symmetric_generators,
)


def cyc(cycles, d):
    return Permutation.from_cycles(cycles, d)


S4 = schreier_sims(symmetric_generators(4))
S5 = schreier_sims(symmetric_generators(5))
A5 = schreier_sims(alternating_generators(5))


def test_oracle_counts():
    # subgroup counts of small groups
    assert len(all_subgroups(S4)) == 30
    assert len(all_subgroups(schreier_sims(alternating_generators(4)))) == 10
    assert len(all_subgroups(A5)) == 59


def test_oracle_refuses_large_groups():
    with pytest.raises(ValueError):
        all_subgroups(schreier_sims(symmetric_generators(7)))


def test_chain_interval():
    lattice = interval_lattice(S4, alternating_generators(4))
    assert lattice.orders == [12, 24]
    assert lattice.shape == CHAIN
    assert lattice.edges == {(0, 1)}


def test_cyclic_six_gives_a_diamond_with_non_conjugate_tops():
    g = cyc([(0, 1), (2, 3, 4)], 5)
    C6 = schreier_sims([g])
    lattice = interval_lattice(C6, [])
    assert lattice.orders == [1, 2, 3, 6]
    assert lattice.shape == BOOLEAN_RANK2
    report = verify_counterexample(C6, [])
    assert report.h_maximal_in_tops
    assert not report.tops_conjugate
    assert not report.verdict


def test_interval_rejects_outside_subgroup():
    with pytest.raises(ValueError):
        interval_lattice(A5, [cyc([(0, 1)], 5)])


def test_nodes_sorted_and_extensions_cover_every_node_below_top():
    H = [cyc([(0, 1)], 4)]
    lattice = interval_lattice(S4, H)
    keys = [n.sort_key() for n in lattice.nodes]
    assert keys == sorted(keys)
    top = len(lattice.nodes) - 1
    assert sorted(lattice.extensions) == list(range(top))
    for i, reps in lattice.extensions.items():
        for g, j in reps:
            K = SubgroupNode.from_generators(lattice.nodes[i].generators + [g], 4)
            assert K.same_as(lattice.nodes[j])


def test_other_shape():
    lattice = interval_lattice(S4, [])
    assert lattice.shape == "Other(30)"


def test_maximality():
    D10 = [cyc([(0, 1, 2, 3, 4)], 5), cyc([(1, 4), (2, 3)], 5)]
    assert is_maximal_in(D10, A5)
    assert not is_maximal_in([cyc([(0, 1, 2, 3, 4)], 5)], S5)
    lattice = interval_lattice(S5, alternating_generators(5))
    assert [n.order for n in maximal_overgroups(lattice)] == [60]


def test_conjugacy_class_reps_count():
    # S5 has 7 classes, A5 has 5
    assert len(conjugacy_class_reps(S5)) == 7
    assert len(conjugacy_class_reps(A5)) == 5


def _transitive_by_oracle(G, order):
    d = G.degree
    subs = [frozenset(element_set(K.generators, d)) for K in all_subgroups(G)]
    return [K for K in subs if len(K) == order and K and _transitive_set(K, d)]


def _transitive_set(K, d):
    return {g(0) for g in K} == set(range(d))


@pytest.mark.parametrize("G,order", [(S4, 4), (S4, 8), (S4, 12), (S4, 24), (S4, 6),
                                     (A5, 10), (A5, 60), (S5, 20)])
def test_transitive_search_against_oracle(G, order):
    found = find_transitive_subgroups(G, order)
    expected = _transitive_by_oracle(G, order)
    assert sum(f.class_size for f in found) == len(expected)
    for f in found:
        assert f.node.order == order and f.node.is_transitive()
    # representatives lie in distinct classes
    sets = [frozenset(f.node.chain.elements()) for f in found]
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            assert not any(frozenset(conjugate(x, g) for x in sets[i]) == sets[j]
                           for g in G.elements())


def test_transitive_search_impossible_order():
    assert find_transitive_subgroups(S4, 5) == []
