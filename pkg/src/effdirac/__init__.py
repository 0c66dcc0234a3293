"""Hydrogenic levels from a Dirac equation with effective, state-dependent
Coulomb couplings: Lamb shift and hyperfine splitting."""

from .constants import (
    BetheLogTable,
    PhysicalConstants,
    Quantity,
    ReferenceRecord,
    Settings,
    SourceTag,
    load_bethe_table,
    load_config,
    load_constants,
    load_reference_records,
    load_settings,
    textbook_bethe_table,
)
from .coupling import (
    IDENTITY,
    CouplingFactors,
    CouplingKind,
    LambdaFactor,
    LambdaKind,
    apply_binding_correction,
    apply_hyperfine_corrections,
    build_coupling,
    combine_couplings,
    coupling_for,
    lambda_hyperfine,
    lambda_lamb,
)
from .dirac import (
    RadialProblem,
    RadialSeries,
    evaluate_radial,
    indicial_exponent,
    nonlinear_factor,
    radial_series,
    series_norm,
    sommerfeld_binding,
    sommerfeld_energy,
)
from .eigensolver import (
    EnergyLevel,
    IterationResult,
    SolveReport,
    analytic_expansion,
    numeric_order_extraction,
    self_consistent_iterate,
    solve_effective,
)
from .errors import (
    ConfigError,
    DataError,
    DomainError,
    EffDiracError,
    IdempotencyError,
    MissingBetheEntry,
    NumericalError,
    SolveError,
    SupercriticalError,
    TerminationError,
)
from .observables import (
    ComparisonRow,
    LambOrder,
    SplittingKind,
    SplittingResult,
    combined_hyperfine_splitting,
    combined_level,
    compare,
    hyperfine_splitting,
    lamb_increment,
    lamb_shift,
)
from .states import QuantumState, make_state, parse_label, render_label

__version__ = "0.1.0"

__all__ = [
    "BetheLogTable",
    "PhysicalConstants",
    "Quantity",
    "ReferenceRecord",
    "Settings",
    "SourceTag",
    "load_bethe_table",
    "load_config",
    "load_constants",
    "load_reference_records",
    "load_settings",
    "textbook_bethe_table",
    "IDENTITY",
    "CouplingFactors",
    "CouplingKind",
    "LambdaFactor",
    "LambdaKind",
    "apply_binding_correction",
    "apply_hyperfine_corrections",
    "build_coupling",
    "combine_couplings",
    "coupling_for",
    "lambda_hyperfine",
    "lambda_lamb",
    "RadialProblem",
    "RadialSeries",
    "evaluate_radial",
    "indicial_exponent",
    "nonlinear_factor",
    "radial_series",
    "series_norm",
    "sommerfeld_binding",
    "sommerfeld_energy",
    "EnergyLevel",
    "IterationResult",
    "SolveReport",
    "analytic_expansion",
    "numeric_order_extraction",
    "self_consistent_iterate",
    "solve_effective",
    "ConfigError",
    "DataError",
    "DomainError",
    "EffDiracError",
    "IdempotencyError",
    "MissingBetheEntry",
    "NumericalError",
    "SolveError",
    "SupercriticalError",
    "TerminationError",
    "ComparisonRow",
    "LambOrder",
    "SplittingKind",
    "SplittingResult",
    "combined_hyperfine_splitting",
    "combined_level",
    "compare",
    "hyperfine_splitting",
    "lamb_increment",
    "lamb_shift",
    "QuantumState",
    "make_state",
    "parse_label",
    "render_label",
]
