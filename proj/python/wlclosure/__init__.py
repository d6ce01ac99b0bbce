"""Coherent closures via exact and Monte Carlo Weisfeiler-Leman refinement."""

from ._core import (
    CoherenceReport,
    ColorMatrix,
    InternalError,
    PairedResult,
    ParseError,
    RefinementOutcome,
    WlResult,
    __version__,
    check_coherent,
    classical_closure,
    classical_step,
    draw_substitution,
    error_bound,
    is_discrete,
    is_isomorphism,
    is_rainbow,
    is_refinement,
    is_same_partition,
    iteration_budget,
    make_fixture,
    multiply,
    numeric_product,
    paired_closure,
    permute_vertices,
    practical_miss_bound,
    probabilistic_closure,
    rainbow_refine,
    read_graph,
    refine_by,
    verify_coherent,
    write_graph,
)

__all__ = [name for name in dir() if not name.startswith("_")]
