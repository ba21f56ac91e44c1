"""Solvers, synthesizers, and no-go audits for one-bit restaurant games.

A restaurant game asks a sender who knows today's closed restaurant to
steer a receiver, via a single bit (or qubit, or polygon-theory system),
so that the receiver never visits the closed restaurant and hits
prescribed visiting frequencies.  The package decides classical
feasibility exactly, synthesizes winning strategies over classical,
shared-randomness, qubit, and polygon resources, and audits the strict
variants where those resources provably separate.
"""

from .classical import (
    CorrelatedStrategy,
    DeterministicStrategy,
    FeasibilityReport,
    MixedStrategy,
    PartitionCertificate,
    extreme_game_strategy,
    mixed_feasibility,
    mixed_feasibility_report,
    mixed_strategy_from_certificate,
    strict_sr_protocol,
    synth_sr_strategy,
    visit_matrix_correlated,
    visit_matrix_deterministic,
    visit_matrix_mixed,
)
from .games import (
    GameSpec,
    Verdict,
    VisitMatrix,
    check_game,
    convex_mix,
    game_space_extreme_points,
    shannon_bits,
    strict_game,
    uniform_game,
)
from .hull import HullVerdict, hull_membership_oracle
from .nsbox import (
    CupGameOutcome,
    NsBox,
    classical_cup_bound,
    cup_game_success,
    pr_box,
)
from .polygon import (
    PolygonInfeasibilityResult,
    PolygonSearchResult,
    PolygonStrategy,
    PolygonTheory,
    strict_polygon_infeasibility,
    strict_polygon_search,
    synth_even_gon,
    synth_square_h3,
    visit_matrix_polygon,
)
from .quantum import (
    ErrorReport,
    FloorResult,
    Povm,
    QubitEffect,
    QubitStrategy,
    apply_noise,
    born_probability,
    error_functional,
    h3_angles_for_game,
    h3_gamma_from_angles,
    h3_locus_points,
    induced_decoding,
    montecarlo_classical_floor,
    noise_advantage_region,
    noise_boundary,
    simulate_orthogonal_encoding,
    simulate_projective_decoding,
    synth_h3_general,
    synth_h4_symmetric,
    synth_sic_strict,
    synth_uniform_odd,
    visit_matrix_qubit,
)
from .strict import (
    ADMISSIBLE_STRINGS,
    StrictOneBitResult,
    SymbolicAudit,
    compatibility_table,
    compatible,
    mutually_compatible_quads,
    strict_1bitsr_infeasibility,
    symbolic_audit,
)
from .worstcase import (
    WorstCaseBound,
    classical_worstcase_bound,
    classical_worstcase_strategy,
    quantum_worstcase_strategy,
    sr_worstcase_strategy,
    worst_case_success,
)

__version__ = "0.1.0"

__all__ = [
    "ADMISSIBLE_STRINGS",
    "CorrelatedStrategy",
    "CupGameOutcome",
    "DeterministicStrategy",
    "ErrorReport",
    "FeasibilityReport",
    "FloorResult",
    "GameSpec",
    "HullVerdict",
    "MixedStrategy",
    "NsBox",
    "PartitionCertificate",
    "PolygonInfeasibilityResult",
    "PolygonSearchResult",
    "PolygonStrategy",
    "PolygonTheory",
    "Povm",
    "QubitEffect",
    "QubitStrategy",
    "StrictOneBitResult",
    "SymbolicAudit",
    "Verdict",
    "VisitMatrix",
    "WorstCaseBound",
    "apply_noise",
    "born_probability",
    "check_game",
    "classical_cup_bound",
    "classical_worstcase_bound",
    "classical_worstcase_strategy",
    "compatibility_table",
    "compatible",
    "convex_mix",
    "cup_game_success",
    "error_functional",
    "extreme_game_strategy",
    "game_space_extreme_points",
    "h3_angles_for_game",
    "h3_gamma_from_angles",
    "h3_locus_points",
    "hull_membership_oracle",
    "induced_decoding",
    "mixed_feasibility",
    "mixed_feasibility_report",
    "mixed_strategy_from_certificate",
    "montecarlo_classical_floor",
    "mutually_compatible_quads",
    "noise_advantage_region",
    "noise_boundary",
    "pr_box",
    "quantum_worstcase_strategy",
    "shannon_bits",
    "simulate_orthogonal_encoding",
    "simulate_projective_decoding",
    "sr_worstcase_strategy",
    "strict_1bitsr_infeasibility",
    "strict_game",
    "strict_polygon_infeasibility",
    "strict_polygon_search",
    "strict_sr_protocol",
    "symbolic_audit",
    "synth_even_gon",
    "synth_h3_general",
    "synth_h4_symmetric",
    "synth_sic_strict",
    "synth_sr_strategy",
    "synth_square_h3",
    "synth_uniform_odd",
    "uniform_game",
    "visit_matrix_correlated",
    "visit_matrix_deterministic",
    "visit_matrix_mixed",
    "visit_matrix_polygon",
    "visit_matrix_qubit",
    "worst_case_success",
]
