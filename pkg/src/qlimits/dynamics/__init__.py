"""Exact two-level search dynamics, schedules, and the full-space oracle."""

from .core import (
    ControlSchedule,
    EffectiveState,
    Observables,
    SearchSpace,
    Segment,
    Trace,
    TracePoint,
    effective_hamiltonian,
    eigenenergies,
    evolve,
    final_state,
    observables_at,
    segment_propagator,
)
from .schedules import (
    adiabatic_gap,
    adiabatic_schedule,
    adiabatic_total_time,
    ballistic_frequency,
    ballistic_schedule,
    first_peak_iterations,
    grover_pulsed_schedule,
    runtime_to_infidelity,
    schedule_infidelity,
    standard_grover_iterations,
)
from .reference import MAX_FULL_SPACE_BITS, full_space_reference
from .control import (
    analytic_rates,
    averaged_overlap,
    control_bandwidth,
    equator_state,
    measure_modulated_suppression,
    modulated_detuning_suppression,
    optimal_detuning,
)

__all__ = [
    "ControlSchedule",
    "EffectiveState",
    "MAX_FULL_SPACE_BITS",
    "Observables",
    "SearchSpace",
    "Segment",
    "Trace",
    "TracePoint",
    "adiabatic_gap",
    "adiabatic_schedule",
    "adiabatic_total_time",
    "analytic_rates",
    "averaged_overlap",
    "ballistic_frequency",
    "ballistic_schedule",
    "control_bandwidth",
    "effective_hamiltonian",
    "eigenenergies",
    "equator_state",
    "evolve",
    "final_state",
    "first_peak_iterations",
    "full_space_reference",
    "grover_pulsed_schedule",
    "measure_modulated_suppression",
    "modulated_detuning_suppression",
    "observables_at",
    "optimal_detuning",
    "runtime_to_infidelity",
    "schedule_infidelity",
    "segment_propagator",
    "standard_grover_iterations",
]
