"""Shelling vectors: nested bracket expressions summed over all vertex orders.

A 0-graph is an atom, ``a`` (no cells) or ``b`` (the empty cell).  For an
i-graph with i >= 1 each order of removing the vertices contributes one
bracket ``[s1, ..., sN]`` whose entries are the shelling vectors of the links
met along the way.  Entries are kept as unexpanded sums, so each shelling
contributes exactly one bracket and the coefficients of an actual graph on N
vertices add up to N!.  :meth:`ShellingSum.expand` multiplies the brackets out
into nested expressions built from atoms only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from math import factorial
from typing import Mapping

from .enumeration import enumerate_graphs
from .hypergraph import Hypergraph, canonical_form, delete_vertex, link
from .limits import check_vertices
from .linalg import QMatrix, rank

DEFAULT_MAX_N = 7


def _format_coeff(c) -> str:
    c = Fraction(c)
    if c == 1:
        return ""
    if c == -1:
        return "-"
    return f"{c}*"


def _sum_text(coeffs: Mapping[str, object]) -> str:
    if not coeffs:
        return "0"
    parts = []
    for key in sorted(coeffs):
        body = _format_coeff(coeffs[key]) + key
        if parts and not body.startswith("-"):
            body = "+" + body
        parts.append(body)
    return "".join(parts)


class ShellingSum:
    """Rational combination of shelling expressions, keyed by their text."""

    __slots__ = ("coeffs", "exprs", "text")

    def __init__(self, terms: Mapping = ()):
        self.coeffs: dict[str, Fraction] = {}
        self.exprs: dict[str, object] = {}
        for expr, c in dict(terms).items():
            key = expr_text(expr)
            total = self.coeffs.get(key, 0) + c
            self.exprs[key] = expr
            if total:
                self.coeffs[key] = total
            else:
                self.coeffs.pop(key, None)
        self.exprs = {k: self.exprs[k] for k in self.coeffs}
        self.text = _sum_text(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, ShellingSum):
            return NotImplemented
        return self.text == other.text

    def __hash__(self):
        return hash(self.text)

    def __str__(self):
        return self.text

    def __repr__(self):
        return f"ShellingSum({self.text!r})"

    def __add__(self, other: "ShellingSum") -> "ShellingSum":
        terms: dict = {}
        for s in (self, other):
            for key, c in s.coeffs.items():
                expr = s.exprs[key]
                terms[expr] = terms.get(expr, 0) + c
        return ShellingSum(terms)

    def __mul__(self, scalar) -> "ShellingSum":
        return ShellingSum({self.exprs[k]: c * scalar for k, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __sub__(self, other: "ShellingSum") -> "ShellingSum":
        return self + other * -1

    def mass(self):
        return sum(self.coeffs.values())

    def child_text(self) -> str:
        if len(self.coeffs) == 1:
            (key, c), = self.coeffs.items()
            if c == 1:
                return key
        return f"({self.text})"

    def expand(self) -> dict[str, Fraction]:
        """Multiply every bracket out; keys are expressions over atoms only."""
        out: dict[str, Fraction] = {}
        for key, c in self.coeffs.items():
            for pure, x in _expand_expr(self.exprs[key]).items():
                out[pure] = out.get(pure, 0) + c * x
        return {k: v for k, v in sorted(out.items()) if v}

    def flatten(self) -> dict[str, Fraction]:
        """Words for sums of brackets of atoms (the 1-graph case): ``[a,b]`` -> ``ab``."""
        out: dict[str, Fraction] = {}
        for key, c in self.expand().items():
            word = key.strip("[]").replace(",", "")
            if any(ch not in "ab" for ch in word):
                raise ValueError("flatten only applies to brackets of atoms")
            out[word] = out.get(word, 0) + c
        return {k: v for k, v in sorted(out.items()) if v}


def expr_text(expr) -> str:
    if isinstance(expr, str):
        return expr
    return "[" + ",".join(child.child_text() for child in expr) + "]"


def _expand_expr(expr) -> dict[str, Fraction]:
    if isinstance(expr, str):
        return {expr: 1}
    pieces = [child.expand() for child in expr]
    out: dict[str, Fraction] = {}
    for combo in product(*(p.items() for p in pieces)):
        key = "[" + ",".join(k for k, _ in combo) + "]"
        coeff = 1
        for _, x in combo:
            coeff *= x
        out[key] = out.get(key, 0) + coeff
    return out


def shelling_vector(g: Hypergraph, max_n: int | None = None) -> ShellingSum:
    """Shelling vector of ``g``.

    Computed as the sum over the first removed vertex v of the bracket
    ``[shelling(link(g, v)), ...]`` prepended to every bracket of
    ``shelling(g - v)``, memoized by isomorphism class.
    """
    check_vertices(g.nvertices, DEFAULT_MAX_N if max_n is None else max_n)
    return _shelling(canonical_form(g))


@lru_cache(maxsize=None)
def _shelling(g: Hypergraph) -> ShellingSum:
    if g.arity == 0:
        return ShellingSum({"b" if g.cells else "a": 1})
    if g.nvertices == 0:
        return ShellingSum({(): 1})
    terms: dict = {}
    for v in range(g.nvertices):
        head = _shelling(canonical_form(link(g, v)))
        tail = _shelling(canonical_form(delete_vertex(g, v)))
        for key, c in tail.coeffs.items():
            expr = (head,) + tail.exprs[key]
            terms[expr] = terms.get(expr, 0) + c
    return ShellingSum(terms)


def shelling_vector_by_orders(g: Hypergraph) -> ShellingSum:
    """Reference implementation: one bracket per vertex order, no memoization."""
    if g.arity == 0 or g.nvertices == 0:
        return _shelling(g)
    terms: dict = {}
    for order in permutations(range(g.nvertices)):
        current = g
        labels = list(range(g.nvertices))
        children = []
        for v in order:
            pos = labels.index(v)
            children.append(shelling_vector_by_orders(link(current, pos)))
            current = delete_vertex(current, pos)
            labels.pop(pos)
        expr = tuple(children)
        terms[expr] = terms.get(expr, 0) + 1
    return ShellingSum(terms)


# -- experiments -------------------------------------------------------------


@dataclass
class KernelReport:
    n: int
    expected_dim: int
    kernel_dim: int
    elements: list[dict[str, Fraction]] = field(default_factory=list)
    in_span: bool = False
    killed: bool = False
    elements_rank: int = 0
    image_identity: bool | None = None

    @property
    def passed(self) -> bool:
        ok = (self.in_span and self.killed and self.kernel_dim == self.expected_dim
              and self.elements_rank == self.kernel_dim)
        return ok and self.image_identity is not False


def one_graph(n: int, m: int) -> Hypergraph:
    """1-graph on n vertices whose cells are the first m vertices."""
    return Hypergraph(1, n, ((v,) for v in range(m)))


def symmetric_kernel_elements(n: int) -> list[dict[str, int]]:
    """Symmetrized words with two factors (a - b) and n - 2 letters from {a, b}.

    One element per number j of ``b`` letters among the n - 2 plain factors;
    each is the sum over all distinct placements of the factors.
    """
    out = []
    for j in range(n - 1):
        acc: dict[str, int] = {}
        for diff in combinations(range(n), 2):
            rest = [p for p in range(n) if p not in diff]
            for bs in combinations(rest, j):
                for signs in product((0, 1), repeat=2):
                    word = ["b" if p in bs else "a" for p in range(n)]
                    coeff = 1
                    for p, s in zip(diff, signs):
                        word[p] = "ab"[s]
                        coeff *= -1 if s else 1
                    key = "".join(word)
                    acc[key] = acc.get(key, 0) + coeff
        out.append({k: v for k, v in sorted(acc.items()) if v})
    return out


def count_map(n: int, vector: Mapping[str, object]) -> tuple[Fraction, Fraction]:
    """The linear map sending a symmetric word with k b's to (a + k b) / n!."""
    a = Fraction(0)
    b = Fraction(0)
    for word, c in vector.items():
        a += Fraction(c)
        b += Fraction(c) * word.count("b")
    scale = factorial(n)
    return a / scale, b / scale


def _rows(vectors: list[Mapping[str, object]], keys: list[str]) -> QMatrix:
    return QMatrix([[v.get(k, 0) for k in keys] for v in vectors], len(keys))


def kernel_element_check(n: int) -> KernelReport:
    """Kernel of the cell-count map on the span of 1-graph shelling vectors.

    The span of the shelling vectors of the n + 1 classes of 1-graphs on n
    vertices maps onto ``a + m b`` coordinates; the kernel has dimension n - 1
    and should be spanned by the symmetrized products with two ``(a - b)``.
    """
    if n < 2:
        raise ValueError("the kernel check needs n >= 2")
    check_vertices(n, 8)
    vectors = [shelling_vector(one_graph(n, m)).flatten() for m in range(n + 1)]
    keys = sorted({k for v in vectors for k in v})
    span = _rows(vectors, keys)
    span_rank = rank(span)
    images = QMatrix([count_map(n, v) for v in vectors], 2)
    kernel_dim = len(vectors) - rank(images)
    elements = symmetric_kernel_elements(n)
    all_keys = sorted(set(keys).union(*elements))
    in_span = rank(_rows(vectors + elements, all_keys)) == span_rank
    killed = all(count_map(n, e) == (0, 0) for e in elements)
    report = KernelReport(n, n - 1, kernel_dim, elements, in_span, killed,
                          rank(_rows(elements, all_keys)))
    if n == 2:
        combo: dict[str, Fraction] = {}
        for coeff, v in zip((1, -2, 1), vectors):
            for k, x in v.items():
                combo[k] = combo.get(k, 0) + coeff * x
        combo = {k: v for k, v in combo.items() if v}
        report.image_identity = combo == {k: 2 * v for k, v in elements[0].items()}
    return report


@dataclass
class DistinguishReport:
    arity: int
    n: int
    classes: int
    equal_pairs: list[tuple[int, int]]
    rank_brackets: int
    rank_expanded: int

    @property
    def distinguishes_graphs(self) -> bool:
        return not self.equal_pairs

    @property
    def independent(self) -> bool:
        return self.rank_expanded == self.classes


def distinguishes_report(arity: int, n: int) -> DistinguishReport:
    """Do shelling vectors separate the classes, and are they linearly independent?

    Ranks are reported both over unexpanded brackets and over fully expanded
    expressions; the expanded rank is the one that respects linearity of the
    bracket product.
    """
    family = enumerate_graphs(arity, n)
    sums = [shelling_vector(g) for g in family]
    equal = [(i, j) for i, j in combinations(range(len(sums)), 2) if sums[i] == sums[j]]
    bracket_keys = sorted({k for s in sums for k in s.coeffs})
    rank_brackets = rank(_rows([s.coeffs for s in sums], bracket_keys))
    expanded = [s.expand() for s in sums]
    expanded_keys = sorted({k for e in expanded for k in e})
    rank_expanded = rank(_rows(expanded, expanded_keys))
    return DistinguishReport(arity, n, len(family), equal, rank_brackets, rank_expanded)
