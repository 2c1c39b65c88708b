"""Lagrangian and Hamiltonian mechanics on jet bundles."""

from ._jetmech import (
    DomainError,
    Error,
    Hamiltonian,
    IndexOutOfRange,
    IntegrationAborted,
    InvalidArgument,
    Lagrangian,
    NoConvergence,
    ParseError,
    RankDeficient,
    ShapeError,
    SingularLagrangian,
    SpaceMismatch,
    apply_map,
    builtin_scenarios,
    canonical_structure,
    check_dfh,
    check_dl_tilde,
    equality_check,
    equivalence_report,
    run_cli,
    simulate,
    verify_structure_map,
)

__all__ = [
    "DomainError",
    "Error",
    "Hamiltonian",
    "IndexOutOfRange",
    "IntegrationAborted",
    "InvalidArgument",
    "Lagrangian",
    "NoConvergence",
    "ParseError",
    "RankDeficient",
    "ShapeError",
    "SingularLagrangian",
    "SpaceMismatch",
    "apply_map",
    "builtin_scenarios",
    "canonical_structure",
    "check_dfh",
    "check_dl_tilde",
    "equality_check",
    "equivalence_report",
    "run_cli",
    "simulate",
    "verify_structure_map",
]
