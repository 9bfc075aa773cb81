"""Catalog of checkable statements about flag and shelling vectors.

Each claim is data: an id, default parameters and a function returning
``(status, witnesses)``.  Status is ``"pass"``/``"fail"`` for exact
assertions and ``"report"`` for experiments whose outcome is not asserted.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .enumeration import enumerate_graphs, one_manifolds, optional_cycle, partition_count
from .flagvector import (abc_values, class_flag_vector, component_targets, fit_linear_functional,
                         flag_nullspace, flag_span_rank, flag_vector, flag_vector_by_shellings,
                         functionals_descend, manifold_nullspace, quotient_basis, word_matrix)
from .hypergraph import Hypergraph
from .limits import BudgetExceeded
from .linalg import InfeasibleError, affine_dim, format_fraction, hull_vertex_test, rank
from .shelling import distinguishes_report, kernel_element_check, one_graph, shelling_vector

PASS, FAIL, REPORT, SKIPPED = "pass", "fail", "report", "skipped"


@dataclass
class ClaimReport:
    claim: str
    params: dict
    status: str
    witnesses: dict = field(default_factory=dict)
    runtime: float = 0.0
    detail: str = ""

    def to_json(self, timing: bool = True) -> dict:
        out = {"claim": self.claim, "params": self.params, "status": self.status,
               "witnesses": self.witnesses, "detail": self.detail}
        if timing:
            out["runtime"] = round(self.runtime, 4)
        return out


@dataclass(frozen=True)
class Claim:
    id: str
    summary: str
    check: Callable[..., tuple[str, dict]]
    defaults: dict = field(default_factory=dict)
    report_only: bool = False


def _verdict(ok: bool) -> str:
    return PASS if ok else FAIL


def _fractions(values) -> list[str]:
    return [format_fraction(x) for x in values]


def _as_list(value):
    return list(value) if isinstance(value, (list, tuple, range)) else [value]


def _three_vertex_relation():
    a, b, c, d = enumerate_graphs(2, 3)
    total = flag_vector(a) - 3 * flag_vector(b) + 3 * flag_vector(c) - flag_vector(d)
    fb = flag_vector(b)
    oracle = flag_vector_by_shellings(b)
    ok = total.is_zero() and fb == oracle and str(fb) == "6aaa+2aba+4baa"
    return _verdict(ok), {"relation": total.to_json(), "fB": str(fb), "fB_by_shellings": str(oracle)}


def _optional_cycle_zero(max_n=6, lengths=(3, 4, 5), bases=3, seed=0):
    rng = random.Random(seed)
    checked = []
    ok = True
    for length in _as_list(lengths):
        for n in range(length, max_n + 1):
            cycle = list(range(length))
            cycle_edges = {tuple(sorted((cycle[j], cycle[(j + 1) % length]))) for j in range(length)}
            others = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in cycle_edges]
            choices = [()] + [tuple(e for e in others if rng.random() < 0.5) for _ in range(bases)]
            for base in choices:
                fv = flag_vector(optional_cycle(n, cycle, base))
                ok &= fv.is_zero()
                checked.append({"n": n, "length": length, "base": [list(e) for e in base],
                                "zero": fv.is_zero()})
    return _verdict(ok), {"seed": seed, "cases": checked}


def _partition_rank(n=(1, 2, 3, 4, 5)):
    rows = []
    ok = True
    for k in _as_list(n):
        r = flag_span_rank(2, k)
        p = partition_count(k)
        ok &= r == p
        rows.append({"n": k, "rank": r, "partitions": p})
    return _verdict(ok), {"ranks": rows}


def _partition_rank_report(n=6):
    return REPORT, _partition_rank(n)[1]


def _four_vertex_polytope():
    family = enumerate_graphs(2, 4)
    flags = [class_flag_vector(g) for g in family]
    matrix, words = word_matrix(flags)
    points = [list(row) for row in matrix]
    distinct = len({tuple(p) for p in points}) == len(points)
    dim = affine_dim(points)
    vertices = [hull_vertex_test(p, points[:j] + points[j + 1:]) for j, p in enumerate(points)]
    ok = len(family) == 11 and distinct and dim == 4 and all(vertices)
    return _verdict(ok), {
        "classes": len(family),
        "pairwise_distinct": distinct,
        "affine_dim": dim,
        "hull_vertices": vertices,
        "flag_vectors": [str(f) for f in flags],
    }


def _component_functional(n=tuple(range(3, 10))):
    fits = []
    ok = True
    for k in _as_list(n):
        graphs = one_manifolds(k)
        targets = component_targets(graphs)
        try:
            fitted = fit_linear_functional(graphs, targets)
        except InfeasibleError as exc:
            ok = False
            fits.append({"n": k, "feasible": False, "certificate": _fractions(exc.certificate or ())})
            continue
        reproduced = [fitted(class_flag_vector(g)) for g in graphs]
        ok &= reproduced == [Fraction(t) for t in targets]
        fits.append({"n": k, "feasible": True, "targets": targets,
                     "graphs": [g.to_json() for g in graphs], "functional": fitted.to_json()})
    return _verdict(ok), {"fits": fits}


def _kernel_sym_products(n=(2, 3, 4, 5)):
    rows = []
    ok = True
    for k in _as_list(n):
        r = kernel_element_check(k)
        ok &= r.passed
        rows.append({"n": k, "kernel_dim": r.kernel_dim, "expected": r.expected_dim,
                     "elements_rank": r.elements_rank, "in_span": r.in_span, "killed": r.killed,
                     "image_identity": r.image_identity})
    return _verdict(ok), {"checks": rows}


def _abc_rule(n=(4, 5)):
    rows = []
    ok = True
    for k in _as_list(n):
        q = quotient_basis(2, k)
        family = enumerate_graphs(2, k)
        descend, func_rank = functionals_descend(q, family, [abc_values(g) for g in family])
        good = q.dim == 3 and descend and func_rank == q.dim
        ok &= good
        rows.append({"n": k, "span_dim": q.span_dim, "relations_dim": q.relations_dim,
                     "quotient_dim": q.dim, "functionals_descend": descend,
                     "functionals_rank": func_rank})
    return _verdict(ok), {"quotients": rows}


def _one_graph_independence(n=tuple(range(1, 7))):
    rows = []
    ok = True
    for k in _as_list(n):
        graphs = [one_graph(k, m) for m in range(k + 1)]
        flag_rank = rank(word_matrix([flag_vector(g) for g in graphs])[0])
        shellings = [shelling_vector(g).flatten() for g in graphs]
        keys = sorted({w for s in shellings for w in s})
        shell_rank = rank([[s.get(w, 0) for w in keys] for s in shellings])
        ok &= flag_rank == shell_rank == k + 1
        rows.append({"n": k, "flag_rank": flag_rank, "shelling_rank": shell_rank, "classes": k + 1})
    return _verdict(ok), {"ranks": rows}


def _distinguish_report(cases=((1, 4), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5))):
    rows = []
    for arity, k in cases:
        r = distinguishes_report(arity, k)
        rows.append({"arity": arity, "n": k, "classes": r.classes, "equal_pairs": r.equal_pairs,
                     "rank_brackets": r.rank_brackets, "rank_expanded": r.rank_expanded,
                     "independent": r.independent})
    return REPORT, {"experiments": rows}


def _manifold_nullspace(n=(3, 4, 5, 6, 7, 8)):
    rows = []
    for k in _as_list(n):
        basis = manifold_nullspace(k)
        rows.append({"n": k, "manifold_classes": len(one_manifolds(k)), "dim": len(basis),
                     "basis": [b.to_json() for b in basis]})
    return REPORT, {"nullspaces": rows}


def _flag_nullspace_dims(n=(3, 4, 5)):
    rows = []
    ok = True
    expected = {3: 1, 4: 6}
    for k in _as_list(n):
        basis = flag_nullspace(2, k)
        classes = len(enumerate_graphs(2, k))
        ok &= len(basis) == classes - partition_count(k) and expected.get(k, len(basis)) == len(basis)
        rows.append({"n": k, "classes": classes, "dim": len(basis)})
    ok &= [str(x) for x in flag_nullspace(2, 3)[0].terms.values()] == ["1", "-3", "3", "-1"]
    return _verdict(ok), {"nullspaces": rows}


CATALOG: dict[str, Claim] = {c.id: c for c in [
    Claim("three-vertex-relation", "fA - 3fB + 3fC - fD = 0 on three vertices", _three_vertex_relation),
    Claim("optional-cycle-zero", "a 2-graph with an optional cycle has zero flag vector",
          _optional_cycle_zero, {"max_n": 6, "lengths": [3, 4, 5], "bases": 3, "seed": 0}),
    Claim("partition-rank", "flag vectors of 2-graphs on n vertices span p(n) dimensions",
          _partition_rank, {"n": [1, 2, 3, 4, 5]}),
    Claim("partition-rank-extended", "span dimension for n = 6 (reported)", _partition_rank_report,
          {"n": 6}, report_only=True),
    Claim("four-vertex-polytope", "the 11 flag vectors on four vertices are polytope vertices",
          _four_vertex_polytope),
    Claim("component-functional", "number of components of a 1-manifold is linear in f",
          _component_functional, {"n": list(range(3, 10))}),
    Claim("kernel-sym-products", "symmetric products with two (a - b) span the count-map kernel",
          _kernel_sym_products, {"n": [2, 3, 4, 5]}),
    Claim("abc-rule", "2-graph link quotient is 3-dimensional with coordinates (1, e, t)",
          _abc_rule, {"n": [4, 5]}),
    Claim("one-graph-independence", "1-graph flag and shelling vectors are independent",
          _one_graph_independence, {"n": list(range(1, 7))}),
    Claim("flag-nullspace", "nullspace dimension is #classes - p(n)", _flag_nullspace_dims,
          {"n": [3, 4, 5]}),
    Claim("distinguish-report", "do shelling vectors distinguish formal sums? (reported)",
          _distinguish_report, {"cases": [[1, 4], [2, 3], [2, 4], [2, 5], [3, 4], [3, 5]]},
          report_only=True),
    Claim("manifold-nullspace", "dimension of the manifold nullspace (reported)",
          _manifold_nullspace, {"n": [3, 4, 5, 6, 7, 8]}, report_only=True),
]}


def run_claim(claim_id: str, **params) -> ClaimReport:
    """Run one claim; unknown parameters are rejected."""
    if claim_id not in CATALOG:
        raise ValueError(f"unknown claim id {claim_id!r}")
    claim = CATALOG[claim_id]
    unknown = set(params) - set(claim.defaults)
    if unknown:
        raise ValueError(f"claim {claim_id!r} does not take {sorted(unknown)}")
    merged = {**claim.defaults, **params}
    start = time.perf_counter()
    try:
        status, witnesses = claim.check(**merged)
        detail = claim.summary
    except BudgetExceeded as exc:
        status, witnesses, detail = SKIPPED, {}, str(exc)
    if claim.report_only and status in (PASS, FAIL):
        status = REPORT
    return ClaimReport(claim_id, _jsonable(merged), status, _jsonable(witnesses),
                       time.perf_counter() - start, detail)


def run_all(budget: float | None = None, only: list[str] | None = None) -> list[ClaimReport]:
    """Run the catalog (or ``only`` those ids) in id order within ``budget`` seconds."""
    ids = sorted(CATALOG) if only is None else sorted(only)
    for claim_id in ids:
        if claim_id not in CATALOG:
            raise ValueError(f"unknown claim id {claim_id!r}")
    start = time.perf_counter()
    reports = []
    for claim_id in ids:
        if budget is not None and time.perf_counter() - start >= budget:
            claim = CATALOG[claim_id]
            reports.append(ClaimReport(claim_id, _jsonable(claim.defaults), SKIPPED,
                                       detail="time budget exhausted"))
            continue
        reports.append(run_claim(claim_id))
    return reports


def failed(reports: list[ClaimReport]) -> bool:
    return any(r.status == FAIL for r in reports)


def format_table(reports: list[ClaimReport]) -> str:
    width = max([len(r.claim) for r in reports] + [5])
    lines = [f"{'claim':<{width}}  status   runtime"]
    for r in reports:
        lines.append(f"{r.claim:<{width}}  {r.status:<7}  {r.runtime:7.3f}s")
    return "\n".join(lines)


def reports_json(reports: list[ClaimReport], timing: bool = True) -> str:
    return json.dumps([r.to_json(timing) for r in reports], indent=2, sort_keys=True)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return format_fraction(obj)
    if isinstance(obj, Hypergraph):
        return obj.to_json()
    return obj
