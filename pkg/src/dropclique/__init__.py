"""Ramsey numbers for complete graphs with a dropped clique: bounds, chi-colorings and scans."""
from ._accel import backend
from .bounds import (
    BoundResult,
    TraceStep,
    base_case,
    best_bound,
    chi_based_bound,
    explicit_bound,
    polynomial_bound,
    recursive_bound,
    replay_trace,
    symmetric_bound,
)
from .chi import (
    ChiCertificate,
    ChiSearchReport,
    chi3_formula,
    chi_search,
    chi_upper,
    g_bound,
    is_chi,
    recognize_chi,
    recognize_chi_oracle,
)
from .coloring import (
    CompleteColoring,
    DroppedCliqueWitness,
    PatternList,
    PreconditionError,
    find_mono_dropped_clique,
    induced_coloring,
    matching_witness,
    verify_lower_bound,
)
from .conjecture import (
    ConjectureReport,
    IntervalResult,
    conjecture_scan,
    emit_f_table,
    f_value,
    interval_search,
    k_max,
)
from .seeds import SeedTable, SeedTableError

__version__ = "0.1.0"
