"""Ergodic optimization on Markov shifts with exact max-plus certificates."""

from __future__ import annotations

from .config import AnalysisConfig, load_config, parse_config
from .errors import Falsified, WeakKamError
from .maxplus import (
    CertificateReport,
    CriticalStructure,
    SubAction,
    WeightedBlockGraph,
    calibrated_subaction,
    check_certificate,
    critical_structure,
    defects,
    finite_horizon_bound,
    graph_from_edges,
    max_cycle_mean,
    minimal_subaction,
    weighted_graph,
)
from .measures import (
    InvariantMeasure,
    PeriodicOrbit,
    cycle_measure,
    integrate,
    maximizing_set,
    verify_maximizing,
)
from .pipeline import analyze, audit, render
from .potential import (
    CountableModel,
    HoelderModel,
    Potential,
    TailBound,
    VariationSummary,
    birkhoff_sum,
    summarize,
    validate_countable,
    variation,
)
from .shift import (
    BlockGraph,
    MarkovGraph,
    PrimitivityCertificate,
    compute_primitivity,
    lift_blocks,
    trim_essential,
    truncate,
)
from .truncation import (
    TruncationReport,
    compute_I_hat,
    level_graph,
    plateau_scan,
    support_bound_check,
)

__all__ = [
    "AnalysisConfig",
    "analyze",
    "audit",
    "birkhoff_sum",
    "BlockGraph",
    "calibrated_subaction",
    "CertificateReport",
    "check_certificate",
    "compute_I_hat",
    "compute_primitivity",
    "CountableModel",
    "critical_structure",
    "CriticalStructure",
    "cycle_measure",
    "defects",
    "Falsified",
    "finite_horizon_bound",
    "graph_from_edges",
    "HoelderModel",
    "integrate",
    "InvariantMeasure",
    "level_graph",
    "lift_blocks",
    "load_config",
    "MarkovGraph",
    "max_cycle_mean",
    "maximizing_set",
    "minimal_subaction",
    "parse_config",
    "PeriodicOrbit",
    "plateau_scan",
    "Potential",
    "PrimitivityCertificate",
    "render",
    "SubAction",
    "summarize",
    "support_bound_check",
    "TailBound",
    "trim_essential",
    "truncate",
    "TruncationReport",
    "validate_countable",
    "variation",
    "VariationSummary",
    "verify_maximizing",
    "WeakKamError",
    "weighted_graph",
    "WeightedBlockGraph",
]
