"""Acceptance criteria, each run from cold caches under its own time bound."""

import random
import time
from fractions import Fraction
from math import factorial

import pytest

from flagvec import clear_caches
from flagvec.enumeration import enumerate_graphs, one_manifolds, optional_cycle, components
from flagvec.flagvector import (abc_values, fit_linear_functional, flag_span_rank, flag_vector,
                                flag_vector_by_shellings, functionals_descend, quotient_basis)
from flagvec.hypergraph import FormalSum, Hypergraph, canonical_form, cone, link, possible_cells
from flagvec.linalg import affine_dim, hull_vertex_test
from flagvec.shelling import kernel_element_check, one_graph, shelling_vector

from conftest import SEED

CASES = 200


@pytest.fixture
def criterion(record_property):
    def start(number, bound):
        record_property("criterion", number)
        clear_caches()
        return _Timer(number, bound)
    return start


class _Timer:
    def __init__(self, number, bound):
        self.number, self.bound = number, bound

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert elapsed < self.bound, f"criterion {self.number} took {elapsed:.2f}s (bound {self.bound}s)"


def _random_graph(rnd, arity, n):
    return Hypergraph(arity, n, [c for c in possible_cells(arity, n) if rnd.random() < 0.5])


def test_criterion_01_one_graph_shellings(criterion):
    with criterion(1, 1):
        got = [shelling_vector(one_graph(2, m)).flatten() for m in range(3)]
        assert got == [{"aa": 2}, {"ab": 1, "ba": 1}, {"bb": 2}]


def test_criterion_02_kernel_elements(criterion):
    with criterion(2, 5):
        g0, g1, g2 = (shelling_vector(one_graph(2, m)).flatten() for m in range(3))
        combo = {w: g0.get(w, 0) - 2 * g1.get(w, 0) + g2.get(w, 0) for w in ("aa", "ab", "ba", "bb")}
        # 2(a-b)(a-b) expanded
        assert combo == {"aa": 2, "ab": -2, "ba": -2, "bb": 2}
        for n in range(2, 6):
            report = kernel_element_check(n)
            assert report.passed and report.kernel_dim == n - 1


def test_criterion_03_three_vertex_relation(criterion):
    with criterion(3, 1):
        a, b, c, d = enumerate_graphs(2, 3)
        assert (flag_vector(a) - 3 * flag_vector(b) + 3 * flag_vector(c) - flag_vector(d)).is_zero()
        assert flag_vector(b).as_strings() == {"aaa": 6, "baa": 4, "aba": 2}
        assert flag_vector_by_shellings(b) == flag_vector(b)


def test_criterion_04_optional_cycles(criterion):
    rnd = random.Random(SEED)
    with criterion(4, 10):
        for n in range(3, 7):
            for length in (3, 4, 5):
                if length > n:
                    continue
                for _ in range(3):
                    cycle = rnd.sample(range(n), length)
                    edges = {tuple(sorted((cycle[j], cycle[(j + 1) % length]))) for j in range(length)}
                    base = [c for c in possible_cells(2, n) if c not in edges and rnd.random() < 0.5]
                    assert flag_vector(optional_cycle(n, cycle, base)).is_zero()


def test_criterion_05_partition_ranks(criterion):
    with criterion(5, 30):
        assert [flag_span_rank(2, n) for n in range(1, 6)] == [1, 2, 3, 5, 7]


def test_criterion_06_four_vertex_polytope(criterion):
    with criterion(6, 30):
        family = enumerate_graphs(2, 4)
        assert len(family) == 11
        vectors = [flag_vector(g) for g in family]
        assert len(set(vectors)) == 11
        words = sorted({w for v in vectors for w in v.terms})
        points = [[v.terms.get(w, 0) for w in words] for v in vectors]
        assert affine_dim(points) == 4
        for i, p in enumerate(points):
            assert hull_vertex_test(p, points[:i] + points[i + 1:])


def test_criterion_07_component_functional(criterion):
    with criterion(7, 60):
        for n in range(3, 10):
            graphs = one_manifolds(n)
            targets = [len(components(g)) for g in graphs]
            fitted = fit_linear_functional(graphs, targets)
            assert [fitted(flag_vector(g)) for g in graphs] == [Fraction(t) for t in targets]


def test_criterion_08_quotient_dimensions(criterion):
    with criterion(8, 60):
        assert [quotient_basis(1, k).dim for k in range(2, 7)] == [2] * 5
        assert quotient_basis(2, 3).dim == 3
        for k in (4, 5):
            q = quotient_basis(2, k)
            assert q.dim == 3
            family = enumerate_graphs(2, k)
            descends, rank = functionals_descend(q, family, [abc_values(g) for g in family])
            assert descends and rank == 3


def test_criterion_09_dp_matches_shellings(criterion):
    with criterion(9, 60):
        for arity, top in ((2, 5), (3, 4)):
            for n in range(0, top + 1):
                for g in enumerate_graphs(arity, n):
                    assert flag_vector(g) == flag_vector_by_shellings(g)


def test_criterion_10_properties(criterion):
    rnd = random.Random(SEED)
    with criterion(10, 30):
        for _ in range(CASES):
            arity, n = rnd.randint(1, 3), rnd.randint(0, 6)
            g = _random_graph(rnd, arity, n)
            perm = list(range(n))
            rnd.shuffle(perm)
            assert flag_vector(g.relabel(perm)) == flag_vector(g) == flag_vector(canonical_form(g))
        for _ in range(CASES):
            n = rnd.randint(1, 5)
            g1, g2 = _random_graph(rnd, 2, n), _random_graph(rnd, 2, n)
            l1, l2 = Fraction(rnd.randint(-9, 9), rnd.randint(1, 4)), rnd.randint(-9, 9)
            lhs = flag_vector(FormalSum([(l1, g1), (l2, g2)]))
            assert lhs.as_strings() == (flag_vector(g1) * l1 + flag_vector(g2) * l2).as_strings()
        for _ in range(CASES):
            g = _random_graph(rnd, rnd.randint(2, 3), rnd.randint(1, 6))
            assert all(w.endswith("a") for w in flag_vector(g).as_strings())
        for _ in range(CASES):
            arity, n = rnd.randint(1, 3), rnd.randint(0, 7)
            v = flag_vector(Hypergraph(arity, n))
            assert v.mass() == factorial(n) and v.as_strings() == {"a" * n: factorial(n)}
        for _ in range(CASES):
            g = _random_graph(rnd, rnd.randint(0, 3), rnd.randint(0, 6))
            if g.arity == 0:
                g = Hypergraph(0, g.nvertices, [()] if rnd.random() < 0.5 else [])
            assert link(cone(g), g.nvertices) == g
