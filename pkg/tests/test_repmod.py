import numpy as np
import pytest

from diamondcheck import repmod
from diamondcheck.permgroup import (
    Permutation,
    alternating_generators,
    conjugate,
    schreier_sims,
    symmetric_generators,
)


def rank_mod(rows, p):
    """Plain Gaussian elimination, kept separate from the library's echelon code."""
    m = [[int(x) % p for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col] * inv
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[rank])]
        rank += 1
        col += 1
    return rank


def brute_irreducible(gens, p):
    """Irreducible iff every nonzero vector's orbit under the whole group spans the space."""
    G = schreier_sims(gens)
    elems = list(G.elements())
    mats = repmod.deleted_module(elems, p).action
    dim = mats[0].shape[0]
    for v in repmod.projective_points(dim, p):
        v = np.array(v, dtype=np.int64)
        if rank_mod([v @ m % p for m in mats], p) < dim:
            return False
    return True


def test_perm_matrix_is_a_homomorphism():
    a = Permutation.from_cycles([(0, 1, 2)], 4)
    b = Permutation.from_cycles([(1, 3)], 4)
    assert np.array_equal(repmod.perm_matrix(a * b, 5),
                          repmod.perm_matrix(a, 5) @ repmod.perm_matrix(b, 5))


@pytest.mark.parametrize("gens,p", [(symmetric_generators(5), 3), (symmetric_generators(6), 5),
                                    (alternating_generators(7), 7), (symmetric_generators(4), 2)])
def test_deleted_module_action_is_a_homomorphism(gens, p):
    a, b = gens[0], gens[1]
    m = repmod.deleted_module([a, b, a * b], p).action
    assert np.array_equal(m[0] @ m[1] % p, m[2] % p)


@pytest.mark.parametrize("d,p", [(5, 3), (6, 5), (7, 2)])
def test_deleted_module_intertwines_with_permutation_module(d, p):
    gens = symmetric_generators(d)
    module = repmod.deleted_module(gens, p)
    assert module.dim == d - 1
    B = np.array([[1 if j == i else -1 if j == i + 1 else 0 for j in range(d)]
                  for i in range(d - 1)])
    for g, A in zip(gens, module.action):
        assert np.array_equal(A @ B % p, B @ repmod.perm_matrix(g, p) % p)
    assert np.array_equal(module.gram % p, B @ B.T % p)


@pytest.mark.parametrize("d,p,dim", [(7, 7, 5), (4, 2, 2), (6, 3, 4), (5, 5, 3)])
def test_doubly_deleted_dimension(d, p, dim):
    module = repmod.deleted_module(symmetric_generators(d), p)
    assert module.dim == dim


def test_quotient_needs_p_dividing_degree():
    with pytest.raises(ValueError):
        repmod.deleted_module(symmetric_generators(5), 3, quotient=True)
    assert repmod.deleted_module(symmetric_generators(6), 3, quotient=False).dim == 5


def test_non_prime_field_rejected():
    with pytest.raises(ValueError):
        repmod.deleted_module(symmetric_generators(4), 4)


def test_singular_action_rejected():
    with pytest.raises(ValueError):
        repmod.FpModule(5, 2, [np.array([[1, 2], [2, 4]])])


@pytest.mark.parametrize("name", ["points", "lines"])
def test_fano_actions_give_l3_2(name):
    points, lines = repmod.fano_actions()
    gens = points if name == "points" else lines
    G = schreier_sims(gens)
    assert G.order() == 168
    # 2-transitive: the point stabilizer is transitive on the other 6 points
    assert G.orbit_sizes()[:2] == [7, 6]
    assert schreier_sims(repmod.fano_diagonal_action()).order() == 168


def test_fano_actions_share_fixed_point_counts():
    points, lines = repmod.fano_actions()
    P, L = schreier_sims(points), schreier_sims(lines)
    fixed = sorted(7 - len(g.support()) for g in P.elements())
    assert fixed == sorted(7 - len(g.support()) for g in L.elements())


def test_fano_point_and_line_actions_are_inequivalent():
    # no relabelling of the 7 symbols turns one action into the other
    points, lines = repmod.fano_actions()
    S7 = schreier_sims(symmetric_generators(7))
    assert not any(all(conjugate(a, s) == b for a, b in zip(points, lines))
                   for s in S7.elements())


def test_invariant_form_on_doubly_deleted_modules():
    points, lines = repmod.fano_actions()
    for gens in (points, lines, alternating_generators(7)):
        module = repmod.deleted_module(gens, 7)
        gram = repmod.invariant_gram(module)
        assert gram is not None
        assert np.array_equal(gram, gram.T)
        assert repmod.det_mod(gram, 7) != 0
        assert module.form_is_invariant()
    assert not repmod.deleted_module(points, 7).form_is_invariant(np.diag([1, 2, 3, 4, 5]))


def test_full_module_form():
    m = repmod.full_module(symmetric_generators(5), 3)
    assert m.form_is_invariant()


@pytest.mark.parametrize("gens,p", [
    (symmetric_generators(4), 2),
    (symmetric_generators(4), 3),
    (symmetric_generators(5), 5),
    (alternating_generators(5), 2),
    (repmod.fano_actions()[0], 2),
    (repmod.fano_actions()[0], 3),
])
def test_irreducibility_against_brute_force(gens, p):
    module = repmod.deleted_module(gens, p)
    assert repmod.is_irreducible(module) == brute_irreducible(gens, p)


def test_l3_2_mod_2_is_reducible_and_random_spinning_finds_it():
    module = repmod.deleted_module(repmod.fano_actions()[0], 2)
    assert not repmod.is_irreducible(module)
    sub = repmod.random_invariant_subspace(module)
    assert sub is not None and 0 < len(sub) < module.dim


def test_a7_mod_7_irreducible():
    assert repmod.is_irreducible(repmod.deleted_module(alternating_generators(7), 7))


def test_spin_rejects_zero_seed():
    module = repmod.deleted_module(symmetric_generators(4), 3)
    with pytest.raises(ValueError):
        repmod.spin([0, 0, 0], module.action, 3)


def test_line_bound():
    module = repmod.deleted_module(symmetric_generators(9), 7)
    with pytest.raises(ValueError):
        repmod.is_irreducible(module, bound=1000)
