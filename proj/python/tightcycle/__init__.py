"""Tight cycles in uniform hypergraphs."""

from ._core import (
    BudgetExceeded,
    ExtensionError,
    Hypergraph,
    InputError,
    PreconditionError,
    ResourceExhausted,
    admissible,
    aux_bipartite,
    brute_threshold,
    complete_partite,
    cycle_certificate,
    enumerate_cycles,
    find_cycle_through,
    format_cycles,
    h0,
    is_tight_cycle,
    max_tiling,
    parse_cycles,
    perfect_tiling,
    phi_star,
    tile_family,
    tiling_barrier,
    uncovered_vertices,
    verify_certificate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
