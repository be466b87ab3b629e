"""Sparse linear complementarity problems: find a sparse x >= 0 with
Mx + q >= 0 and x'(Mx + q) = 0."""

from ._sparse_lcp import (
    ExampleKind,
    LcpInstance,
    LemkeResult,
    LemkeStatus,
    MeritModel,
    SolveReport,
    SolverConfig,
    Termination,
    TuningReport,
    generate,
    is_success,
    lemke,
    lemke_seeded_s,
    merit_gradient,
    merit_value,
    nhtpt,
    phi_r,
    read_instance,
    solve,
    support_size,
    write_instance,
)

__all__ = [
    "ExampleKind",
    "LcpInstance",
    "LemkeResult",
    "LemkeStatus",
    "MeritModel",
    "SolveReport",
    "SolverConfig",
    "Termination",
    "TuningReport",
    "generate",
    "is_success",
    "lemke",
    "lemke_seeded_s",
    "merit_gradient",
    "merit_value",
    "nhtpt",
    "phi_r",
    "read_instance",
    "solve",
    "support_size",
    "write_instance",
]
