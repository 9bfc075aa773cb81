"""Isomorphism classes of i-graphs and the special families used by the claims."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .hypergraph import FormalSum, Hypergraph, OptionalSpec, canonical_form, expand_optional
from .limits import BudgetExceeded, check_vertices

DEFAULT_MAX_CANDIDATES = 200_000


@dataclass(frozen=True)
class GraphFamily:
    arity: int
    nvertices: int
    members: tuple[Hypergraph, ...]

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, index):
        return self.members[index]

    def index(self, g: Hypergraph) -> int:
        return self.members.index(canonical_form(g))

    def to_json(self) -> list:
        return [g.to_json() for g in self.members]


def family_sort_key(g: Hypergraph):
    return (len(g.cells), g.encoding())


def enumerate_graphs(arity: int, n: int, max_candidates: int = DEFAULT_MAX_CANDIDATES) -> GraphFamily:
    """One canonical representative per isomorphism class of arity-graphs on n vertices.

    Classes on ``n`` vertices are generated by adding vertex ``n-1`` with every
    possible link to each class on ``n-1`` vertices (every graph restricts to
    one of those), then deduplicating by canonical form.  Members are sorted
    by cell count, then by canonical encoding.
    """
    if arity < 0 or n < 0:
        raise ValueError("arity and vertex count must be non-negative")
    check_vertices(n)
    return _enumerate(arity, n, max_candidates)


@lru_cache(maxsize=None)
def _enumerate(arity: int, n: int, max_candidates: int) -> GraphFamily:
    if arity == 0:
        members = [Hypergraph(0, n), Hypergraph(0, n, [()])]
    elif n < arity:
        members = [Hypergraph(arity, n)]
    else:
        smaller = _enumerate(arity, n - 1, max_candidates)
        new_cells = [t + (n - 1,) for t in combinations(range(n - 1), arity - 1)]
        count = len(smaller) * 2 ** len(new_cells)
        if count > max_candidates:
            raise BudgetExceeded(
                f"enumerating {arity}-graphs on {n} vertices needs {count} candidates "
                f"(budget {max_candidates})")
        found = set()
        for base in smaller:
            for size in range(len(new_cells) + 1):
                for extra in combinations(new_cells, size):
                    g = Hypergraph(arity, n, base.cells | set(extra))
                    found.add(canonical_form(g))
        members = found
    return GraphFamily(arity, n, tuple(sorted(members, key=family_sort_key)))


def partitions(n: int, min_part: int = 1, max_part: int | None = None):
    """Partitions of n as non-increasing tuples with parts in [min_part, max_part]."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), min_part - 1, -1):
        for rest in partitions(n - first, min_part, first):
            yield (first,) + rest


def partition_count(n: int) -> int:
    return sum(1 for _ in partitions(n))


def cycle_union(lengths) -> Hypergraph:
    """Vertex-disjoint union of polygons with the given numbers of vertices."""
    lengths = list(lengths)
    if any(k < 3 for k in lengths):
        raise ValueError("polygon requires at least 3 vertices")
    cells = []
    start = 0
    for k in lengths:
        cells.extend((start + j, start + (j + 1) % k) for j in range(k))
        start += k
    return Hypergraph(2, start, cells)


def optional_cycle(n: int, cycle, base=()) -> FormalSum:
    """Alternating sum over all subsets of the cycle's edges (plus fixed ``base`` cells)."""
    cycle = list(cycle)
    if len(cycle) < 3:
        raise ValueError("polygon requires at least 3 vertices")
    if len(set(cycle)) != len(cycle) or any(not 0 <= v < n for v in cycle):
        raise ValueError("cycle vertices must be distinct and below n")
    edges = {tuple(sorted((cycle[j], cycle[(j + 1) % len(cycle)]))) for j in range(len(cycle))}
    return expand_optional(OptionalSpec(2, n, frozenset(base), frozenset(edges)))


def components(g: Hypergraph) -> list[set[int]]:
    """Connected components, treating each cell as a clique."""
    adj = {v: set() for v in range(g.nvertices)}
    for c in g.cells:
        for u in c:
            adj[u].update(c)
    seen: set[int] = set()
    out = []
    for v in range(g.nvertices):
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            for w in adj[stack.pop()]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        out.append(comp)
    return out


def is_1manifold(g: Hypergraph) -> bool:
    """Whether |g| is a nonempty disjoint union of polygons.

    Isolated vertices (points) disqualify a graph, as does the empty vertex set.
    """
    if g.arity != 2:
        raise ValueError(f"is_1manifold needs a 2-graph, got arity {g.arity}")
    if g.nvertices == 0:
        return False
    if any(g.degree(v) != 2 for v in range(g.nvertices)):
        return False
    # in a simple graph every component of a 2-regular graph is a cycle of length >= 3
    return all(len(comp) >= 3 for comp in components(g))


def one_manifolds(n: int) -> list[Hypergraph]:
    """Canonical 1-manifold 2-graphs on n vertices, one per partition of n into parts >= 3."""
    return sorted((canonical_form(cycle_union(p)) for p in partitions(n, min_part=3)),
                  key=family_sort_key)
