"""Flag vectors of i-graphs.

The flag vector of a graph on N vertices is the sum, over all N! orders of
removing its vertices, of the tensor product of the link contributions seen
along the way.  A word records one letter per removed vertex.

Link contributions come in two flavours:

* closed form, for links of arity 0, 1 and 2.  A 0-graph link gives the letter
  ``a`` (no cell) or ``b`` (the empty cell).  A 1-graph link with ``m`` cells
  gives ``a + m b``.  A 2-graph link with ``e`` edges and ``t`` pairs of edges
  sharing a vertex gives ``a + e b + t c``.  A link on no vertices gives ``a``.
* generic, for any arity: the coordinates of the link's own flag vector in the
  quotient of the span of all such flag vectors by the flag vectors of the
  graphs with a disjoint pair of optional cells (see :func:`quotient_basis`).

Generic coordinates depend on the echelon basis chosen; ranks and nullspaces
do not.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Mapping, Sequence

from .enumeration import GraphFamily, components, enumerate_graphs, one_manifolds
from .hypergraph import FormalSum, Hypergraph, canonical_form, delete_vertex, link
from .limits import BudgetExceeded, check_vertices
from .linalg import (EchelonBasis, InfeasibleError, QMatrix, format_fraction, left_nullspace,
                     rank, solve)

LETTERS = "abcdefghijklmnopqrstuvwxyz"
CLOSED_ARITY = 3
DEFAULT_MAX_RELATIONS = 1 << 16

Word = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class WordVector:
    """Rational combination of words, one letter per position.

    ``terms`` maps words (tuples of letter indices) to nonzero coefficients;
    ``alphabet`` gives the letter names available at each position.
    """

    length: int
    alphabet: tuple[tuple[str, ...], ...]
    terms: Mapping[Word, Fraction]

    def __post_init__(self):
        if len(self.alphabet) != self.length:
            raise ValueError("one alphabet per position is required")
        clean = {}
        for w, c in self.terms.items():
            if len(w) != self.length:
                raise ValueError(f"word {w} does not have length {self.length}")
            if c:
                clean[tuple(w)] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def uniform(cls, length: int, letters: Sequence[str], terms) -> "WordVector":
        return cls(length, (tuple(letters),) * length, terms)

    @classmethod
    def zero(cls, length: int = 0, letters: Sequence[str] = "ab") -> "WordVector":
        return cls.uniform(length, tuple(letters), {})

    def __eq__(self, other):
        if not isinstance(other, WordVector):
            return NotImplemented
        return self.length == other.length and self.terms == other.terms

    def __hash__(self):
        return hash((self.length, tuple(self.terms.items())))

    def _check(self, other: "WordVector"):
        if self.length != other.length:
            raise ValueError(f"word lengths differ: {self.length} vs {other.length}")

    def __add__(self, other: "WordVector") -> "WordVector":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        alphabet = self.alphabet if len(self.terms) or not other.terms else other.alphabet
        return WordVector(self.length, _wider(alphabet, other.alphabet), out)

    def __neg__(self) -> "WordVector":
        return WordVector(self.length, self.alphabet, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "WordVector") -> "WordVector":
        return self + (-other)

    def __mul__(self, scalar) -> "WordVector":
        return WordVector(self.length, self.alphabet, {w: c * scalar for w, c in self.terms.items()})

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def word(self, w: Word) -> str:
        return "".join(self.alphabet[pos][letter] for pos, letter in enumerate(w))

    def as_strings(self) -> dict[str, Fraction]:
        return {self.word(w): c for w, c in self.terms.items()}

    def coefficient(self, word: str):
        return self.as_strings().get(word, 0)

    def mass(self):
        return sum(self.terms.values())

    def dot(self, weights: Mapping[Word, Fraction]):
        return sum((weights.get(w, 0) * c for w, c in self.terms.items()), Fraction(0))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.terms.items():
            c = Fraction(c)
            if c.denominator == 1:
                body = ("" if c == 1 else "-" if c == -1 else str(c)) + self.word(w)
            else:
                body = f"{c}*{self.word(w)}"
            if parts and not body.startswith("-"):
                body = "+" + body
            parts.append(body)
        return "".join(parts)

    def to_json(self) -> dict:
        letters = self.alphabet[0] if self.alphabet else ("a",)
        uniform = all(a == letters for a in self.alphabet)
        return {
            "length": self.length,
            "alphabet": list(letters) if uniform else [list(a) for a in self.alphabet],
            "terms": [{"word": self.word(w), "coeff": format_fraction(c)} for w, c in self.terms.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "WordVector":
        length = int(data["length"])
        alphabet = data["alphabet"]
        if alphabet and isinstance(alphabet[0], list):
            per_position = tuple(tuple(a) for a in alphabet)
        else:
            per_position = (tuple(alphabet),) * length
        terms = {}
        for t in data["terms"]:
            word = t["word"]
            if len(word) != length:
                raise ValueError(f"word {word!r} does not have length {length}")
            terms[tuple(per_position[p].index(ch) for p, ch in enumerate(word))] = Fraction(t["coeff"])
        return cls(length, per_position, terms)


def _wider(a, b):
    return tuple(x if len(x) >= len(y) else y for x, y in zip(a, b))


# -- link contributions ------------------------------------------------------


def link_contribution(lk: Hypergraph, mode: str = "closed", quotient: "QuotientBasis | None" = None
                      ) -> tuple[Fraction, ...]:
    """Coordinates of the contribution made by removing a vertex with link ``lk``."""
    if mode == "closed":
        if lk.arity == 0:
            return (1, 0) if not lk.cells else (0, 1)
        if lk.nvertices == 0:
            return (1,)
        if lk.arity == 1:
            return (1, len(lk.cells))
        if lk.arity == 2:
            return (1, len(lk.cells), adjacent_pairs(lk))
        raise ValueError(f"no closed-form link contribution for arity {lk.arity}")
    if mode == "generic":
        if quotient is None or (quotient.arity, quotient.nvertices) != (lk.arity, lk.nvertices):
            raise ValueError(f"missing quotient basis for ({lk.arity}, {lk.nvertices})")
        return quotient.project(flag_vector(lk))
    raise ValueError(f"unknown mode {mode!r}")


def adjacent_pairs(g: Hypergraph) -> int:
    """Pairs of distinct edges of a 2-graph that share a vertex."""
    return sum(comb(g.degree(v), 2) for v in range(g.nvertices))


def _alphabet(arity: int, n: int, mode: str) -> tuple[tuple[str, ...], ...]:
    if mode == "closed":
        letters = tuple(LETTERS[:3 if arity == 3 else 2])
        return (letters,) * n
    out = []
    for pos in range(n):
        dim = 2 if arity == 1 else quotient_basis(arity - 1, n - 1 - pos).dim
        out.append(tuple(LETTERS[:dim]))
    return tuple(out)


def _resolve_mode(g: Hypergraph, mode: str) -> str:
    if mode == "auto":
        return "closed" if g.arity <= CLOSED_ARITY else "generic"
    if mode == "closed" and g.arity > CLOSED_ARITY:
        raise ValueError(f"closed-form letters only go up to arity {CLOSED_ARITY}")
    if mode not in ("closed", "generic"):
        raise ValueError(f"unknown mode {mode!r}")
    return mode


# -- flag vectors ------------------------------------------------------------


def flag_vector(g: Hypergraph | FormalSum, mode: str = "auto", max_n: int | None = None) -> WordVector:
    """Flag vector of a graph, or of a formal sum by linearity.

    Uses the recursion f(G) = sum over v of f'(link(G, v)) (x) f(G - v),
    evaluated bottom-up over the vertex subsets of G.
    """
    if isinstance(g, FormalSum):
        total = None
        for h, c in g.items():
            term = flag_vector(h, mode, max_n) * c
            total = term if total is None else total + term
        return total if total is not None else WordVector.zero()
    if g.arity == 0:
        raise ValueError("flag vectors are defined for arity >= 1")
    check_vertices(g.nvertices, max_n)
    mode = _resolve_mode(g, mode)
    return WordVector(g.nvertices, _alphabet(g.arity, g.nvertices, mode), _subset_dp(g, mode))


def _subset_dp(g: Hypergraph, mode: str) -> dict[Word, int]:
    n, arity = g.nvertices, g.arity
    masks = [sum(1 << x for x in c) for c in g.cells]
    through = [[mk for mk, c in zip(masks, g.cells) if v in c] for v in range(n)]
    cell_list = list(g.cells)

    def contribution(v: int, subset: int, size: int):
        if mode == "generic" and arity >= 2:
            lk = Hypergraph(arity - 1, size - 1, _induced_link(cell_list, v, subset))
            return _generic_contribution(lk)
        inside = [mk for mk in through[v] if mk & subset == mk]
        if arity == 1:
            return (0, 1) if inside else (1,)
        if size == 1:
            return (1,)
        if arity == 2:
            return (1, len(inside))
        # arity 3: link edges are the cells minus v; count pairs meeting at a vertex
        bit = 1 << v
        deg: dict[int, int] = defaultdict(int)
        for mk in inside:
            rest = mk & ~bit
            while rest:
                low = rest & -rest
                deg[low] += 1
                rest ^= low
        return (1, len(inside), sum(d * (d - 1) // 2 for d in deg.values()))

    table: list[dict[Word, int] | None] = [None] * (1 << n)
    table[0] = {(): 1}
    for subset in range(1, 1 << n):
        size = bin(subset).count("1")
        acc: dict[Word, int] = defaultdict(int)
        rest = subset
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            tail = table[subset ^ low]
            for letter, coeff in enumerate(contribution(v, subset, size)):
                if not coeff:
                    continue
                for w, x in tail.items():
                    acc[(letter,) + w] += coeff * x
        table[subset] = {w: x for w, x in acc.items() if x}
    return table[(1 << n) - 1]


def _induced_link(cells, v: int, subset: int):
    # link of the induced subgraph on `subset` at v, relabeled order-preservingly
    members = [x for x in range(subset.bit_length()) if subset >> x & 1 and x != v]
    index = {x: k for k, x in enumerate(members)}
    out = []
    for c in cells:
        if v in c and all(subset >> x & 1 for x in c):
            out.append(tuple(index[x] for x in c if x != v))
    return out


@lru_cache(maxsize=None)
def _generic_contribution_canonical(lk: Hypergraph) -> tuple[Fraction, ...]:
    return quotient_basis(lk.arity, lk.nvertices).project(flag_vector(lk))


def _generic_contribution(lk: Hypergraph) -> tuple[Fraction, ...]:
    return _generic_contribution_canonical(canonical_form(lk))


def flag_vector_by_shellings(g: Hypergraph, mode: str = "auto") -> WordVector:
    """Reference flag vector: explicit sum over all N! shellings.

    Each shelling removes vertices one at a time with :func:`link` and
    :func:`delete_vertex` and multiplies the link contributions out.
    """
    if g.arity == 0:
        raise ValueError("flag vectors are defined for arity >= 1")
    mode = _resolve_mode(g, mode)
    n = g.nvertices
    acc: dict[Word, Fraction] = defaultdict(int)
    for order in permutations(range(n)):
        current = g
        labels = list(range(n))
        factors = []
        for v in order:
            pos = labels.index(v)
            lk = link(current, pos)
            if mode == "closed" or lk.arity == 0:
                factors.append(link_contribution(lk))
            else:
                factors.append(link_contribution(lk, "generic", quotient_basis(lk.arity, lk.nvertices)))
            current = delete_vertex(current, pos)
            labels.pop(pos)
        partial = {(): 1}
        for coords in factors:
            partial = {w + (letter,): x * c for w, x in partial.items()
                       for letter, c in enumerate(coords) if c}
        for w, x in partial.items():
            acc[w] += x
    return WordVector(n, _alphabet(g.arity, n, mode), acc)


@lru_cache(maxsize=None)
def _class_flag(g: Hypergraph, mode: str) -> WordVector:
    return flag_vector(g, mode)


def class_flag_vector(g: Hypergraph, mode: str = "auto") -> WordVector:
    """Flag vector cached by isomorphism class."""
    return _class_flag(canonical_form(g), mode)


# -- spans, nullspaces, quotients -------------------------------------------


def word_matrix(vectors: Sequence[WordVector]) -> tuple[QMatrix, list[Word]]:
    """Stack word vectors as rows over the sorted union of their supports."""
    words = sorted({w for v in vectors for w in v.terms})
    index = {w: k for k, w in enumerate(words)}
    rows = []
    for v in vectors:
        row = [0] * len(words)
        for w, c in v.terms.items():
            row[index[w]] = c
        rows.append(row)
    return QMatrix(rows, len(words)), words


def flag_span_rank(arity: int, n: int, mode: str = "auto") -> int:
    """Dimension of the span of the flag vectors of all arity-graphs on n vertices."""
    family = enumerate_graphs(arity, n)
    matrix, _ = word_matrix([class_flag_vector(g, mode) for g in family])
    return rank(matrix)


def relations_among(graphs: Sequence[Hypergraph], mode: str = "auto") -> list[FormalSum]:
    """Echelon basis of the formal sums of ``graphs`` whose flag vector is zero."""
    matrix, _ = word_matrix([class_flag_vector(g, mode) for g in graphs])
    basis = left_nullspace(matrix)
    return [FormalSum([(c, g) for c, g in zip(row, graphs) if c]) for row in basis]


def flag_nullspace(arity: int, n: int, mode: str = "auto") -> list[FormalSum]:
    """Basis of the formal sums of classes on n vertices with zero flag vector."""
    return relations_among(list(enumerate_graphs(arity, n)), mode)


def manifold_nullspace(n: int) -> list[FormalSum]:
    """Basis of the intersection of the span of 1-manifold graphs with the flag nullspace."""
    return relations_among(one_manifolds(n))


@dataclass(frozen=True)
class QuotientBasis:
    """Span of flag vectors of arity-graphs on k vertices, modulo disjoint-pair relations."""

    arity: int
    nvertices: int
    words: tuple[Word, ...]
    span: tuple[tuple[Fraction, ...], ...]
    relations: tuple[tuple[Fraction, ...], ...]
    quotient: tuple[tuple[Fraction, ...], ...]
    quotient_pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.quotient)

    @property
    def span_dim(self) -> int:
        return len(self.span)

    @property
    def relations_dim(self) -> int:
        return len(self.relations)

    def _dense(self, v: WordVector) -> list[Fraction]:
        index = {w: k for k, w in enumerate(self.words)}
        row = [Fraction(0)] * len(self.words)
        for w, c in v.terms.items():
            if w not in index:
                raise ValueError("word vector lies outside the span of this quotient")
            row[index[w]] = Fraction(c)
        return row

    def project(self, v: WordVector) -> tuple[Fraction, ...]:
        """Quotient coordinates of a flag vector from the span."""
        if v.length != self.nvertices:
            raise ValueError(f"expected words of length {self.nvertices}, got {v.length}")
        row = self._dense(v)
        for basis_row in self.relations:
            lead = next(c for c, x in enumerate(basis_row) if x)
            f = row[lead]
            if f:
                row = [x - f * y for x, y in zip(row, basis_row)]
        coords = tuple(row[c] for c in self.quotient_pivots)
        residue = [Fraction(0)] * len(row)
        for k, q in zip(coords, self.quotient):
            if k:
                residue = [x + k * y for x, y in zip(residue, q)]
        if residue != row:
            raise ValueError("word vector lies outside the span of this quotient")
        return coords

    def to_json(self) -> dict:
        return {
            "arity": self.arity,
            "vertices": self.nvertices,
            "span_dim": self.span_dim,
            "relations_dim": self.relations_dim,
            "dim": self.dim,
            "words": ["".join(LETTERS[x] for x in w) for w in self.words],
            "quotient_basis": [[format_fraction(x) for x in row] for row in self.quotient],
        }


def disjoint_pair_relations(arity: int, k: int, all_pairs: bool = False,
                            max_relations: int = DEFAULT_MAX_RELATIONS):
    """Labeled formal sums (as signed graph lists) with a disjoint pair of optional cells.

    Every disjoint pair of cells is carried onto every other by a vertex
    permutation, and flag vectors do not see labels, so by default a single
    pair ``{0..i-1}, {i..2i-1}`` is used with every possible base.  Pass
    ``all_pairs=True`` to range over all pairs explicitly.
    """
    if arity == 0 or k < 2 * arity:
        return []
    cells = list(combinations(range(k), arity))
    if all_pairs:
        pairs = [(c1, c2) for c1, c2 in combinations(cells, 2) if not set(c1) & set(c2)]
    else:
        pairs = [(tuple(range(arity)), tuple(range(arity, 2 * arity)))]
    others = len(cells) - 2
    if len(pairs) * 2 ** others > max_relations:
        raise BudgetExceeded(
            f"{len(pairs) * 2 ** others} disjoint-pair relations for ({arity}, {k}) exceed "
            f"the budget of {max_relations}")
    out = []
    for c1, c2 in pairs:
        rest = [c for c in cells if c != c1 and c != c2]
        for size in range(len(rest) + 1):
            for base in combinations(rest, size):
                base = set(base)
                out.append([
                    (1, Hypergraph(arity, k, base | {c1, c2})),
                    (-1, Hypergraph(arity, k, base | {c1})),
                    (-1, Hypergraph(arity, k, base | {c2})),
                    (1, Hypergraph(arity, k, base)),
                ])
    return out


def quotient_basis(arity: int, k: int, mode: str = "auto", all_pairs: bool = False) -> QuotientBasis:
    """Quotient of the flag-vector span of arity-graphs on k vertices by disjoint-pair relations."""
    check_vertices(k)
    return _quotient_basis(arity, k, mode, all_pairs)


@lru_cache(maxsize=None)
def _quotient_basis(arity: int, k: int, mode: str, all_pairs: bool) -> QuotientBasis:
    family = enumerate_graphs(arity, k)
    flags = [class_flag_vector(g, mode) for g in family]
    _, words = word_matrix(flags)
    width = len(words)
    index = {w: j for j, w in enumerate(words)}

    def dense(v: WordVector):
        row = [Fraction(0)] * width
        for w, c in v.terms.items():
            row[index[w]] = Fraction(c)
        return row

    span = EchelonBasis(width)
    for v in flags:
        span.add(dense(v))
    relations = EchelonBasis(width)
    seen = set()
    for signed in disjoint_pair_relations(arity, k, all_pairs):
        combo: dict[Hypergraph, int] = defaultdict(int)
        for sign, g in signed:
            combo[canonical_form(g)] += sign
        key = frozenset((g, c) for g, c in combo.items() if c)
        if not key or key in seen:
            continue
        seen.add(key)
        total = [Fraction(0)] * width
        for g, c in key:
            for w, x in class_flag_vector(g, mode).terms.items():
                total[index[w]] += c * x
        relations.add(total)
    residues = EchelonBasis(width)
    for row in span.rows():
        residues.add(relations.reduce(row))
    return QuotientBasis(arity, k, tuple(words), tuple(span.rows()), tuple(relations.rows()),
                         tuple(residues.rows()), residues.pivots)


def functionals_descend(q: QuotientBasis, family: GraphFamily | Sequence[Hypergraph],
                        values: Sequence[Sequence]) -> tuple[bool, int]:
    """Check that per-graph functional values factor through the quotient.

    ``values[j]`` lists the functional values on ``family[j]``.  Returns whether
    every functional is a linear function of the quotient coordinates, and the
    rank of the functionals (as columns over the family).
    """
    coords = [q.project(class_flag_vector(g)) for g in family]
    base = rank(QMatrix(coords, q.dim))
    extended = rank(QMatrix([list(c) + list(v) for c, v in zip(coords, values)], q.dim + len(values[0])))
    return extended == base, rank(QMatrix(values, len(values[0])))


def abc_values(g: Hypergraph) -> tuple[int, int, int]:
    """(1, #edges, #adjacent edge pairs) of a 2-graph."""
    return 1, len(g.cells), adjacent_pairs(g)


# -- fitting functionals -----------------------------------------------------


@dataclass(frozen=True)
class Functional:
    """Word weights ``w`` with ``<w, f(G_j)> = target_j`` on a family."""

    length: int
    alphabet: tuple[tuple[str, ...], ...]
    weights: Mapping[Word, Fraction]

    def __call__(self, v: WordVector) -> Fraction:
        return v.dot(self.weights)

    def to_json(self) -> dict:
        def name(w):
            return "".join(self.alphabet[p][x] for p, x in enumerate(w))
        return {"length": self.length,
                "weights": [{"word": name(w), "coeff": format_fraction(c)}
                            for w, c in sorted(self.weights.items())]}


def fit_linear_functional(family: Sequence[Hypergraph], targets: Sequence, mode: str = "auto") -> Functional:
    """Exact word weights reproducing ``targets`` on ``family``.

    Raises :class:`~flagvec.linalg.InfeasibleError` when the targets are not a
    linear function of the flag vector on this family; its certificate is a
    formal-sum coefficient vector with zero flag vector but nonzero target.
    """
    if not family:
        raise ValueError("empty family")
    if len(family) != len(targets):
        raise ValueError("one target per graph is required")
    sizes = {g.nvertices for g in family}
    if len(sizes) != 1:
        raise ValueError("mixed word lengths")
    flags = [class_flag_vector(g, mode) for g in family]
    matrix, words = word_matrix(flags)
    x = solve(matrix, [Fraction(t) for t in targets])
    weights = {w: c for w, c in zip(words, x) if c}
    fitted = Functional(flags[0].length, flags[0].alphabet, weights)
    for v, t in zip(flags, targets):
        if fitted(v) != Fraction(t):  # pragma: no cover - solve is exact
            raise InfeasibleError("fitted functional does not reproduce the targets")
    return fitted


def component_targets(graphs: Sequence[Hypergraph]) -> list[int]:
    return [len(components(g)) for g in graphs]


def fit_components(n: int) -> tuple[list[Hypergraph], Functional]:
    """Fit the number of components over all 1-manifold 2-graphs on n vertices."""
    graphs = one_manifolds(n)
    return graphs, fit_linear_functional(graphs, component_targets(graphs))
