"""Uniform hypergraphs (i-graphs) and formal sums of them.

An i-graph is a set of i-element subsets ("cells") of ``{0, ..., n-1}``.
Vertices are plain integers; every operation that removes a vertex relabels
the survivors order-preservingly so results are again on ``{0, ..., n-2}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

from .limits import check_vertices
from .linalg import format_fraction

Cell = tuple[int, ...]


@dataclass(frozen=True)
class Hypergraph:
    arity: int
    nvertices: int
    cells: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.arity < 0 or self.nvertices < 0:
            raise ValueError("arity and vertex count must be non-negative")
        cells = frozenset(tuple(sorted(c)) for c in self.cells)
        for c in cells:
            if len(c) != self.arity or len(set(c)) != self.arity:
                raise ValueError(f"cell {list(c)} does not have {self.arity} distinct vertices")
            if c and (c[0] < 0 or c[-1] >= self.nvertices):
                raise ValueError(f"cell {list(c)} has a vertex outside [0, {self.nvertices})")
        object.__setattr__(self, "cells", cells)

    def __repr__(self):
        return f"Hypergraph({self.arity}, {self.nvertices}, {self.sorted_cells()})"

    def sorted_cells(self) -> list[Cell]:
        return sorted(self.cells)

    def degree(self, v: int) -> int:
        return sum(1 for c in self.cells if v in c)

    def relabel(self, perm) -> "Hypergraph":
        """Apply ``old -> perm[old]``."""
        return Hypergraph(self.arity, self.nvertices, (tuple(perm[x] for x in c) for c in self.cells))

    def encoding(self) -> tuple[Cell, ...]:
        """Cells written in decreasing vertex order, sorted (colex order)."""
        return tuple(sorted(tuple(reversed(c)) for c in self.cells))

    def to_json(self) -> dict:
        return {"arity": self.arity, "vertices": self.nvertices,
                "cells": [list(c) for c in self.sorted_cells()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Hypergraph":
        try:
            return cls(int(data["arity"]), int(data["vertices"]), (tuple(c) for c in data["cells"]))
        except KeyError as exc:
            raise ValueError(f"hypergraph JSON is missing the {exc.args[0]!r} field") from None


def empty_graph(arity: int, n: int) -> Hypergraph:
    return Hypergraph(arity, n)


def complete_graph(arity: int, n: int) -> Hypergraph:
    return Hypergraph(arity, n, combinations(range(n), arity))


def possible_cells(arity: int, n: int) -> list[Cell]:
    return list(combinations(range(n), arity))


def _drop(x: int, v: int) -> int:
    return x if x < v else x - 1


def link(g: Hypergraph, v: int) -> Hypergraph:
    """The (i-1)-graph left by the cells through ``v`` once ``v`` is removed."""
    if g.arity == 0:
        raise ValueError("no link for 0-graphs")
    if not 0 <= v < g.nvertices:
        raise ValueError(f"vertex {v} not in graph on {g.nvertices} vertices")
    cells = (tuple(_drop(x, v) for x in c if x != v) for c in g.cells if v in c)
    return Hypergraph(g.arity - 1, g.nvertices - 1, cells)


def delete_vertex(g: Hypergraph, v: int) -> Hypergraph:
    """Induced i-graph on the other vertices."""
    if not 0 <= v < g.nvertices:
        raise ValueError(f"vertex {v} not in graph on {g.nvertices} vertices")
    cells = (tuple(_drop(x, v) for x in c) for c in g.cells if v not in c)
    return Hypergraph(g.arity, g.nvertices - 1, cells)


def cone(g: Hypergraph) -> Hypergraph:
    """Add an apex (vertex ``n``) to every cell."""
    apex = g.nvertices
    return Hypergraph(g.arity + 1, g.nvertices + 1, (c + (apex,) for c in g.cells))


def glue_split(g: Hypergraph, part: Iterable[int]) -> tuple[Hypergraph, Hypergraph, Hypergraph]:
    """Split ``g`` along a vertex partition ``(part, rest)``.

    Returns ``(g1, g2, boundary)`` on the same vertex set: the cells inside
    ``part``, the cells inside the complement, and every remaining cell.
    """
    part = set(part)
    if any(not 0 <= v < g.nvertices for v in part):
        raise ValueError("vertex subset is not contained in the graph")
    inside, outside, rest = [], [], []
    for c in g.cells:
        members = sum(1 for x in c if x in part)
        if members == len(c):
            inside.append(c)
        elif members == 0:
            outside.append(c)
        else:
            rest.append(c)
    # the empty cell of a 0-graph lies inside both sides; it goes to the first
    if g.arity == 0:
        outside = []
    n, i = g.nvertices, g.arity
    return Hypergraph(i, n, inside), Hypergraph(i, n, outside), Hypergraph(i, n, rest)


# -- canonical labeling ----------------------------------------------------


def _twin_classes(g: Hypergraph) -> list[int]:
    """Class id per vertex; u, w share a class iff swapping them is an automorphism."""
    n = g.nvertices
    cls = list(range(n))
    for u in range(n):
        if cls[u] != u:
            continue
        for w in range(u + 1, n):
            if cls[w] != w:
                continue
            swap = list(range(n))
            swap[u], swap[w] = w, u
            if all(tuple(sorted(swap[x] for x in c)) in g.cells for c in g.cells):
                cls[w] = u
    return cls


@lru_cache(maxsize=None)
def _colex_tails(arity: int, k: int) -> tuple[Cell, ...]:
    # (arity-1)-subsets of range(k) in colex order
    return tuple(sorted(combinations(range(k), arity - 1), key=lambda t: tuple(reversed(t))))


@lru_cache(maxsize=1 << 16)
def _canonical(g: Hypergraph) -> tuple[Hypergraph, tuple[int, ...]]:
    n, arity = g.nvertices, g.arity
    if arity == 0 or arity > n or not g.cells:
        return g, tuple(range(n))
    cells = g.cells
    twins = _twin_classes(g)

    # Labels are handed out 0, 1, 2, ...; once labels 0..k are placed the
    # colex-ordered indicator of cells inside {0..k} is fixed.  The canonical
    # form maximises that indicator, i.e. minimises the sorted colex encoding.
    best: list = []
    best_order: list = []

    def segment(order, u):
        k = len(order)
        return tuple(int(tuple(sorted([order[t] for t in tail] + [u])) in cells)
                     for tail in _colex_tails(arity, k))

    def search(order, remaining, prefix):
        nonlocal best, best_order
        k = len(order)
        if k == n:
            if not best_order or prefix > best:
                best, best_order = list(prefix), list(order)
            return
        segs = {u: segment(order, u) for u in remaining}
        top = max(segs.values())
        prefix.append(top)
        if not best_order or prefix >= best[:k + 1]:
            seen = set()
            for u in sorted(remaining):
                if segs[u] != top or twins[u] in seen:
                    continue
                seen.add(twins[u])
                order.append(u)
                remaining.discard(u)
                search(order, remaining, prefix)
                remaining.add(u)
                order.pop()
        prefix.pop()

    search([], set(range(n)), [])
    perm = [0] * n
    for new, old in enumerate(best_order):
        perm[old] = new
    return g.relabel(perm), tuple(perm)


def canonicalize(g: Hypergraph, max_n: int | None = None) -> tuple[Hypergraph, tuple[int, ...]]:
    """Canonical representative of the isomorphism class of ``g``.

    The canonical form is the relabeling with the lexicographically smallest
    :meth:`Hypergraph.encoding`.  The second value is a witnessing permutation
    ``perm`` with ``g.relabel(perm)`` equal to the canonical form.
    """
    check_vertices(g.nvertices, max_n)
    return _canonical(g)


def canonical_form(g: Hypergraph) -> Hypergraph:
    return canonicalize(g)[0]


def is_isomorphic(g: Hypergraph, h: Hypergraph) -> bool:
    return (g.arity, g.nvertices) == (h.arity, h.nvertices) and canonical_form(g) == canonical_form(h)


# -- formal sums -----------------------------------------------------------


class FormalSum:
    """Rational combination of isomorphism classes of i-graphs."""

    __slots__ = ("terms", "arity")

    def __init__(self, terms: Mapping[Hypergraph, object] | Iterable[tuple[object, Hypergraph]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else ((g, c) for c, g in terms)
        merged: dict[Hypergraph, Fraction] = {}
        arity = None
        for g, coeff in items:
            if arity is None:
                arity = g.arity
            elif g.arity != arity:
                raise ValueError("all graphs in a formal sum must share one arity")
            key = canonical_form(g)
            merged[key] = merged.get(key, Fraction(0)) + Fraction(coeff)
        self.terms = {g: c for g, c in sorted(merged.items(), key=lambda kv: _sort_key(kv[0])) if c}
        self.arity = arity

    @classmethod
    def of(cls, g: Hypergraph, coeff=1) -> "FormalSum":
        return cls({g: coeff})

    def items(self):
        return self.terms.items()

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: "FormalSum") -> "FormalSum":
        return FormalSum([(c, g) for g, c in self.items()] + [(c, g) for g, c in other.items()])

    def __neg__(self) -> "FormalSum":
        return FormalSum({g: -c for g, c in self.items()})

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + (-other)

    def __mul__(self, scalar) -> "FormalSum":
        return FormalSum({g: c * Fraction(scalar) for g, c in self.items()})

    __rmul__ = __mul__

    def __repr__(self):
        inner = " + ".join(f"{c}*{g!r}" for g, c in self.items())
        return f"FormalSum({inner or '0'})"

    def to_json(self) -> dict:
        return {"terms": [{"coeff": format_fraction(c), "graph": g.to_json()} for g, c in self.items()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "FormalSum":
        return cls([(Fraction(t["coeff"]), Hypergraph.from_json(t["graph"])) for t in data["terms"]])


def _sort_key(g: Hypergraph):
    return (g.nvertices, len(g.cells), g.encoding())


@dataclass(frozen=True)
class OptionalSpec:
    """Base cells ``base`` plus optional cells ``options`` on ``nvertices`` vertices."""

    arity: int
    nvertices: int
    base: frozenset = frozenset()
    options: frozenset = frozenset()

    def __post_init__(self):
        base = frozenset(tuple(sorted(c)) for c in self.base)
        options = frozenset(tuple(sorted(c)) for c in self.options)
        # validates every cell
        Hypergraph(self.arity, self.nvertices, base | options)
        if base & options:
            raise ValueError("options must be disjoint from base")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "options", options)


def optional_terms(spec: OptionalSpec) -> list[tuple[int, Hypergraph]]:
    """The ``2^#B`` signed labeled graphs of the alternating sum, unmerged."""
    options = sorted(spec.options)
    k = len(options)
    out = []
    for size in range(k + 1):
        sign = -1 if (k - size) % 2 else 1
        for chosen in combinations(options, size):
            out.append((sign, Hypergraph(spec.arity, spec.nvertices, spec.base | set(chosen))))
    return out


def expand_optional(spec: OptionalSpec) -> FormalSum:
    """Sum over ``C`` in the options of ``(-1)^(#B-#C) (A + C)``, merged by class."""
    return FormalSum(optional_terms(spec))


def dumps(obj) -> str:
    return json.dumps(obj.to_json(), sort_keys=True)
