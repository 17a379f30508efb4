"""Ground-state filtering with fast-forwarded Hamiltonian evolution.

Thin Python wrapper around the C++ core: filter construction, symmetric
phase-factor solving, exact pipeline simulation in the eigenbasis, and
query-cost estimation.
"""

from ._core import (
    CostEstimate,
    CounterRegister,
    FastForwardModel,
    FFRegime,
    FilterPolynomial,
    FourierFilter,
    InitialState,
    LevelState,
    Method,
    MultilevelPlan,
    PhaseConvention,
    PhaseFactorSet,
    QueryCost,
    QueryLedger,
    RunReport,
    SolverFailure,
    SpectralHamiltonian,
    Su2Response,
    TraceRow,
    build_cleanup_filter,
    build_heaviside_fourier,
    build_level_filter,
    build_two_band_filter,
    convert_phases,
    equally_spaced_spectrum,
    estimate,
    eval_filter,
    eval_fourier_filter,
    filter_from_phases,
    golden_phase_table,
    inject_oracle_error,
    level_schedule,
    method_name,
    prepare_multilevel,
    qetu_response,
    qsp_unitary,
    query_cost,
    regime_name,
    response_g,
    run_lcu,
    run_multilevel_coherent,
    run_multilevel_measured,
    run_standard_qsp,
    shift_spectrum,
    simulate_forced_pattern,
    solve_symmetric_phase_factors,
    trotter_steps,
)

__all__ = [
    "CostEstimate",
    "CounterRegister",
    "FastForwardModel",
    "FFRegime",
    "FilterPolynomial",
    "FourierFilter",
    "InitialState",
    "LevelState",
    "Method",
    "MultilevelPlan",
    "PhaseConvention",
    "PhaseFactorSet",
    "QueryCost",
    "QueryLedger",
    "RunReport",
    "SolverFailure",
    "SpectralHamiltonian",
    "Su2Response",
    "TraceRow",
    "build_cleanup_filter",
    "build_heaviside_fourier",
    "build_level_filter",
    "build_two_band_filter",
    "convert_phases",
    "equally_spaced_spectrum",
    "estimate",
    "eval_filter",
    "eval_fourier_filter",
    "filter_from_phases",
    "golden_phase_table",
    "inject_oracle_error",
    "level_schedule",
    "method_name",
    "prepare_multilevel",
    "qetu_response",
    "qsp_unitary",
    "query_cost",
    "regime_name",
    "response_g",
    "run_lcu",
    "run_multilevel_coherent",
    "run_multilevel_measured",
    "run_standard_qsp",
    "shift_spectrum",
    "simulate_forced_pattern",
    "solve_symmetric_phase_factors",
    "trotter_steps",
]

__version__ = "0.1.0"
