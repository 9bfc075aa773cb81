"""Exact flag vectors and shelling vectors of uniform hypergraphs."""

from .enumeration import enumerate_graphs, one_manifolds
from .flagvector import WordVector, flag_span_rank, flag_vector, quotient_basis
from .hypergraph import FormalSum, Hypergraph, canonical_form, cone, delete_vertex, link
from .limits import BudgetExceeded, InstanceTooLarge
from .shelling import ShellingSum, shelling_vector

__all__ = [
    "BudgetExceeded", "FormalSum", "Hypergraph", "InstanceTooLarge", "ShellingSum",
    "WordVector", "canonical_form", "clear_caches", "cone", "delete_vertex", "enumerate_graphs",
    "flag_span_rank", "flag_vector", "link", "one_manifolds", "quotient_basis",
    "shelling_vector",
]

__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop every memo table (canonical forms, families, flag and shelling vectors)."""
    from . import enumeration, flagvector, hypergraph, shelling
    for fn in (hypergraph._canonical, hypergraph._colex_tails, enumeration._enumerate,
               flagvector._class_flag, flagvector._generic_contribution_canonical,
               flagvector._quotient_basis, shelling._shelling):
        fn.cache_clear()
