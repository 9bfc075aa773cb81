import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from flagvec.enumeration import components, cycle_union, enumerate_graphs, optional_cycle
from flagvec.flagvector import (WordVector, abc_values, adjacent_pairs, class_flag_vector,
                                disjoint_pair_relations, fit_components, fit_linear_functional,
                                flag_nullspace, flag_span_rank, flag_vector,
                                flag_vector_by_shellings, functionals_descend, link_contribution,
                                manifold_nullspace, quotient_basis)
from flagvec.hypergraph import (FormalSum, Hypergraph, OptionalSpec, canonical_form, empty_graph,
                                expand_optional, possible_cells)
from flagvec.linalg import InfeasibleError

A = Hypergraph(2, 3)
B = Hypergraph(2, 3, [(0, 1)])
C = Hypergraph(2, 3, [(0, 1), (1, 2)])
D = Hypergraph(2, 3, [(0, 1), (1, 2), (0, 2)])


def random_graph(rnd, arity, n):
    cells = possible_cells(arity, n)
    return Hypergraph(arity, n, [c for c in cells if rnd.random() < 0.5])


def test_link_contribution_examples():
    assert link_contribution(Hypergraph(1, 3, [(0,), (2,)])) == (1, 2)
    assert link_contribution(Hypergraph(2, 3, [(0, 1), (1, 2)])) == (1, 2, 1)
    assert link_contribution(Hypergraph(1, 0)) == (1,)
    assert link_contribution(Hypergraph(0, 0)) == (1, 0)
    assert link_contribution(Hypergraph(0, 0, [()])) == (0, 1)


def test_adjacent_pairs():
    assert adjacent_pairs(D) == 3
    assert adjacent_pairs(Hypergraph(2, 4, [(0, 1), (2, 3)])) == 0


def test_small_flag_vectors():
    assert str(flag_vector(Hypergraph(2, 2, [(0, 1)]))) == "2aa+2ba"
    assert str(flag_vector(B)) == "6aaa+2aba+4baa"
    assert str(flag_vector(Hypergraph(1, 2, [(0,)]))) == "ab+ba"


@pytest.mark.parametrize("n,m", [(2, 0), (2, 1), (2, 2), (3, 1), (4, 2)])
def test_one_graph_formula(n, m):
    # m!(n-m)! times the sum of words with b at m positions
    v = flag_vector(Hypergraph(1, n, [(i,) for i in range(m)]))
    coeffs = v.as_strings()
    assert all(w.count("b") == m for w in coeffs)
    assert set(coeffs.values()) == {factorial(m) * factorial(n - m)}
    assert len(coeffs) == factorial(n) // (factorial(m) * factorial(n - m))


def test_three_vertex_relation():
    total = flag_vector(A) - 3 * flag_vector(B) + 3 * flag_vector(C) - flag_vector(D)
    assert total.is_zero()
    assert flag_vector(FormalSum({A: 1, B: -3, C: 3, D: -1})).is_zero()


@pytest.mark.parametrize("arity,n", [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (3, 3), (3, 4), (3, 5),
                                     (1, 4)])
def test_dp_matches_shellings(arity, n):
    for g in enumerate_graphs(arity, n):
        assert flag_vector(g) == flag_vector_by_shellings(g)


def test_generic_mode_matches_shellings():
    for g in enumerate_graphs(3, 4):
        assert flag_vector(g, "generic") == flag_vector_by_shellings(g, "generic")


@given(st.integers(1, 3), st.integers(0, 6), st.randoms(use_true_random=False))
def test_label_invariance(arity, n, rnd):
    g = random_graph(rnd, arity, n)
    perm = list(range(n))
    rnd.shuffle(perm)
    assert flag_vector(g) == flag_vector(g.relabel(perm)) == flag_vector(canonical_form(g))


@given(st.integers(-5, 5), st.integers(-5, 5), st.randoms(use_true_random=False))
def test_linearity(l1, l2, rnd):
    g1, g2 = random_graph(rnd, 2, 4), random_graph(rnd, 2, 4)
    lhs = flag_vector(FormalSum([(l1, g1), (l2, g2)]))
    rhs = flag_vector(g1) * l1 + flag_vector(g2) * l2
    # a sum that cancels to zero carries no word length, so compare coefficients
    assert lhs.as_strings() == rhs.as_strings()


@given(st.sampled_from([2, 3]), st.integers(1, 6), st.randoms(use_true_random=False))
def test_last_letter_is_a(arity, n, rnd):
    v = flag_vector(random_graph(rnd, arity, n))
    assert all(w.endswith("a") for w in v.as_strings())


@pytest.mark.parametrize("arity", [1, 2, 3])
@pytest.mark.parametrize("n", range(0, 6))
def test_empty_graph_mass(arity, n):
    v = flag_vector(empty_graph(arity, n))
    assert v.as_strings() == ({"a" * n: factorial(n)} if n else {"": 1})


def test_mass_is_sum_over_shellings():
    rnd = random.Random(3)
    for _ in range(10):
        g = random_graph(rnd, 2, 4)
        assert flag_vector(g).mass() == flag_vector_by_shellings(g).mass()


def test_optional_cycles_vanish():
    for n in range(3, 7):
        for length in range(3, min(n, 5) + 1):
            assert flag_vector(optional_cycle(n, range(length))).is_zero()
    assert flag_vector(optional_cycle(5, (4, 0, 2), base={(1, 3), (0, 1)})).is_zero()


def test_word_vector_json_round_trip():
    v = flag_vector(Hypergraph(3, 4, [(0, 1, 2), (1, 2, 3)]))
    assert WordVector.from_json(v.to_json()) == v
    w = flag_vector(Hypergraph(4, 5, [(0, 1, 2, 3)]))
    assert WordVector.from_json(w.to_json()) == w


@pytest.mark.parametrize("n,expected", list(enumerate([1, 1, 2, 3, 5, 7])))
def test_partition_ranks(n, expected):
    if n:
        assert flag_span_rank(2, n) == expected


@pytest.mark.parametrize("n", range(1, 6))
def test_generic_and_closed_ranks_agree(n):
    assert flag_span_rank(2, n, "generic") == flag_span_rank(2, n, "closed")
    assert flag_span_rank(3, n, "generic") == flag_span_rank(3, n, "closed")


def test_flag_nullspaces():
    (relation,) = flag_nullspace(2, 3)
    assert relation == FormalSum({A: 1, B: -3, C: 3, D: -1})
    assert len(flag_nullspace(2, 4)) == 6
    for n in range(1, 7):
        assert flag_nullspace(1, n) == []
    for rel in flag_nullspace(2, 4):
        assert flag_vector(rel).is_zero()


@pytest.mark.parametrize("k", range(2, 7))
def test_one_graph_quotient(k):
    assert quotient_basis(1, k).dim == 2


@pytest.mark.parametrize("k,dim", [(0, 1), (1, 1), (2, 2), (3, 3), (4, 3), (5, 3)])
def test_two_graph_quotient(k, dim):
    q = quotient_basis(2, k)
    assert q.dim == dim
    if k >= 3:
        family = enumerate_graphs(2, k)
        descends, rank = functionals_descend(q, family, [abc_values(g) for g in family])
        assert descends and rank == 3


@pytest.mark.parametrize("arity,k", [(1, 3), (2, 4), (2, 5), (3, 5)])
def test_disjoint_pair_relations_die(arity, k):
    q = quotient_basis(arity, k)
    for rel in disjoint_pair_relations(arity, k, all_pairs=True):
        assert all(x == 0 for x in q.project(flag_vector(FormalSum(rel))))


@pytest.mark.parametrize("arity,k", [(1, 4), (2, 4), (2, 5)])
def test_single_pair_matches_all_pairs(arity, k):
    assert quotient_basis(arity, k).dim == quotient_basis(arity, k, all_pairs=True).dim


def test_quotient_projection_of_spec_relation():
    spec = OptionalSpec(2, 4, base={(0, 2)}, options={(0, 1), (2, 3)})
    q = quotient_basis(2, 4)
    assert q.project(flag_vector(expand_optional(spec))) == (0, 0, 0)


@pytest.mark.parametrize("n", range(3, 10))
def test_component_functional(n):
    graphs, functional = fit_components(n)
    for g in graphs:
        assert functional(class_flag_vector(g)) == len(components(g))


def test_fit_examples():
    single = fit_linear_functional([B], [Fraction(7, 3)])
    assert single(flag_vector(B)) == Fraction(7, 3)
    two = fit_linear_functional([cycle_union([6]), cycle_union([3, 3])], [1, 2])
    assert two(flag_vector(cycle_union([3, 3]))) == 2
    nine = [cycle_union(p) for p in ([9], [6, 3], [5, 4], [3, 3, 3])]
    f9 = fit_linear_functional(nine, [1, 2, 2, 3])
    assert [f9(flag_vector(g)) for g in nine] == [1, 2, 2, 3]


def test_fit_infeasible_certificate():
    with pytest.raises(InfeasibleError):
        fit_linear_functional([A, B, C, D], [0, 0, 0, 1])
    with pytest.raises(ValueError, match="mixed word lengths"):
        fit_linear_functional([A, Hypergraph(2, 2)], [0, 0])


def test_manifold_nullspace_small():
    for n in (3, 4, 5, 6):
        assert manifold_nullspace(n) == []
