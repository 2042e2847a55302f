"""Random piecewise convex interval maps: transfer operators, induced maps,
invariant densities, and occupation-measure estimators."""

from ._rpcmlab import (
    System,
    check_conditions,
    eval_map,
    family_ids,
    fit_exponent,
    induced_density,
    induced_step,
    invert_left,
    invert_right,
    make_system,
    partition_sequences,
    predicted_cell_measure,
    run_orbit,
    sandwich_report,
    tail_index,
    x_sequence,
)

__all__ = [
    "System",
    "check_conditions",
    "eval_map",
    "family_ids",
    "fit_exponent",
    "induced_density",
    "induced_step",
    "invert_left",
    "invert_right",
    "make_system",
    "partition_sequences",
    "predicted_cell_measure",
    "run_orbit",
    "sandwich_report",
    "tail_index",
    "x_sequence",
]
