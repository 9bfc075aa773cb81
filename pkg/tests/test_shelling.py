import random
from math import factorial

import pytest

from flagvec.enumeration import enumerate_graphs
from flagvec.flagvector import flag_vector
from flagvec.hypergraph import Hypergraph, possible_cells
from flagvec.limits import InstanceTooLarge
from flagvec.shelling import (ShellingSum, count_map, distinguishes_report, kernel_element_check,
                              one_graph, shelling_vector, shelling_vector_by_orders,
                              symmetric_kernel_elements)


def test_one_graphs_on_two_vertices():
    texts = [shelling_vector(one_graph(2, m)).flatten() for m in range(3)]
    assert texts == [{"aa": 2}, {"ab": 1, "ba": 1}, {"bb": 2}]
    assert shelling_vector(one_graph(2, 1)).text == "[a,b]+[b,a]"


def test_k2():
    s = shelling_vector(Hypergraph(2, 2, [(0, 1)]))
    assert s.text == "2*[[b],[]]"
    assert s.mass() == 2


@pytest.mark.parametrize("arity,n", [(1, 3), (2, 3), (2, 4), (3, 4)])
def test_memoized_matches_orders(arity, n):
    for g in enumerate_graphs(arity, n):
        assert shelling_vector(g) == shelling_vector_by_orders(g)


@pytest.mark.parametrize("arity,n", [(1, 5), (2, 5), (3, 5)])
def test_mass_is_factorial(arity, n):
    for g in enumerate_graphs(arity, n):
        assert shelling_vector(g).mass() == factorial(n)


@pytest.mark.parametrize("n", range(1, 6))
def test_flatten_matches_flag_vector(n):
    for m in range(n + 1):
        g = one_graph(n, m)
        assert shelling_vector(g).flatten() == flag_vector(g).as_strings()


def test_isomorphism_invariance():
    rnd = random.Random(11)
    cells = possible_cells(2, 5)
    for _ in range(20):
        g = Hypergraph(2, 5, rnd.sample(cells, rnd.randint(0, 10)))
        perm = list(range(5))
        rnd.shuffle(perm)
        assert shelling_vector(g) == shelling_vector(g.relabel(perm))


def test_cap():
    with pytest.raises(InstanceTooLarge):
        shelling_vector(Hypergraph(2, 8))


def test_sum_arithmetic():
    a = shelling_vector(one_graph(2, 0))
    b = shelling_vector(one_graph(2, 2))
    assert (a + b - a) == b
    assert (a * 3).mass() == 6
    assert ShellingSum().text == "0"


def test_symmetric_elements_n2():
    (e,) = symmetric_kernel_elements(2)
    assert e == {"aa": 1, "ab": -1, "ba": -1, "bb": 1}
    assert count_map(2, e) == (0, 0)


@pytest.mark.parametrize("n", range(2, 6))
def test_kernel_check(n):
    report = kernel_element_check(n)
    assert report.kernel_dim == n - 1
    assert report.passed


def test_kernel_image_identity():
    assert kernel_element_check(2).image_identity is True


def test_kernel_check_rejects_small_n():
    with pytest.raises(ValueError):
        kernel_element_check(1)


@pytest.mark.parametrize("n", range(1, 7))
def test_one_graph_shellings_independent(n):
    report = distinguishes_report(1, n)
    assert report.rank_expanded == n + 1 and report.distinguishes_graphs


def test_two_graphs_three_vertices():
    report = distinguishes_report(2, 3)
    assert report.rank_brackets == 4 and report.distinguishes_graphs
