"""Invariant-set safety supervisor toolkit."""

from safesets._core import (
    Polytope,
    TraceSample,
    __version__,
    attenuate,
    box,
    char_poly_coeffs,
    classify,
    closed_loop,
    compute_max_invariant,
    euler_discretize,
    intersect,
    is_stable,
    is_subset,
    mat_mul,
    one_step_safe,
    place_poles,
    pre_set,
    read_poly,
    remove_redundancy,
    run_scenario_file,
    scale,
    trace_csv,
    vertices_2d,
    write_poly,
)

__all__ = [
    "Polytope",
    "TraceSample",
    "__version__",
    "attenuate",
    "box",
    "char_poly_coeffs",
    "classify",
    "closed_loop",
    "compute_max_invariant",
    "euler_discretize",
    "intersect",
    "is_stable",
    "is_subset",
    "mat_mul",
    "one_step_safe",
    "place_poles",
    "pre_set",
    "read_poly",
    "remove_redundancy",
    "run_scenario_file",
    "scale",
    "trace_csv",
    "vertices_2d",
    "write_poly",
]
