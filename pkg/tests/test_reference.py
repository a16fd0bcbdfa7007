"""Full-Hilbert-space oracle: the two-level reduction must be exact."""

import numpy as np
import pytest

from qlimits.constants import HBAR
from qlimits.dynamics import (
    ControlSchedule,
    EffectiveState,
    SearchSpace,
    Segment,
    ballistic_schedule,
    evolve,
    full_space_reference,
)
from qlimits.errors import CapacityError, DomainError


def random_schedule(rng, segments=5):
    segs = tuple(
        Segment(float(d), float(wi), float(ws))
        for d, wi, ws in zip(
            rng.uniform(0.1, 1.0, segments),
            rng.uniform(0.0, 4.0, segments),
            rng.uniform(0.0, 4.0, segments),
        )
    )
    return ControlSchedule(segs)


def max_observable_gap(trace_a, trace_b):
    assert len(trace_a.points) == len(trace_b.points)
    gap = 0.0
    for p, q in zip(trace_a.points, trace_b.points):
        assert p.t == pytest.approx(q.t, rel=1e-12, abs=1e-15)
        gap = max(
            gap,
            abs(p.obs.p_s - q.obs.p_s),
            abs(p.obs.p_i - q.obs.p_i),
            abs(p.obs.a.real - q.obs.a.real),
            abs(p.obs.a.imag - q.obs.a.imag),
        )
    return gap


def test_zero_hamiltonian_uniform_probability():
    space = SearchSpace(4)
    schedule = ControlSchedule((Segment(2.0, 0.0, 0.0),))
    trace = full_space_reference(space, schedule, 0.25, solution_index=5)
    assert np.allclose(trace.p_s(), 1.0 / 16.0, atol=1e-15)


def test_ballistic_agrees_with_reduction():
    space = SearchSpace(8)
    schedule = ballistic_schedule(space, HBAR * 40.0)
    dt = schedule.total_duration / 50
    reduced = evolve(EffectiveState.initial(space), schedule, dt)
    full = full_space_reference(space, schedule, dt, solution_index=200)
    assert max_observable_gap(reduced, full) <= 1e-9


def test_solution_index_symmetry():
    space = SearchSpace(8)
    rng = np.random.default_rng(3)
    schedule = random_schedule(rng, 3)
    dt = schedule.total_duration / 20
    t_a = full_space_reference(space, schedule, dt, solution_index=0)
    t_b = full_space_reference(space, schedule, dt, solution_index=255)
    assert max_observable_gap(t_a, t_b) <= 1e-12


@pytest.mark.parametrize("n", [4, 8, 10])
def test_random_schedules_agree(n):
    space = SearchSpace(n)
    rng = np.random.default_rng(100 + n)
    worst = 0.0
    for trial in range(10):
        schedule = random_schedule(rng)
        dt = schedule.total_duration / 10
        reduced = evolve(EffectiveState.initial(space), schedule, dt)
        sol = int(rng.integers(0, space.dimension))
        full = full_space_reference(space, schedule, dt, solution_index=sol)
        worst = max(worst, max_observable_gap(reduced, full))
    assert worst <= 1e-9


def test_largest_supported_space():
    # n = 14 is the capacity limit: 16384 amplitudes, still exact
    space = SearchSpace(14)
    schedule = ControlSchedule((Segment(0.8, 2.0, 0.7),))
    full = full_space_reference(space, schedule, 0.4, solution_index=12345)
    reduced = evolve(EffectiveState.initial(space), schedule, 0.4)
    assert max_observable_gap(reduced, full) <= 1e-9


def test_capacity_guard():
    with pytest.raises(CapacityError):
        full_space_reference(
            SearchSpace(15), ControlSchedule((Segment(1.0, 1.0, 1.0),)), 0.5, 0
        )


def test_solution_index_validated():
    with pytest.raises(DomainError):
        full_space_reference(
            SearchSpace(4), ControlSchedule((Segment(1.0, 1.0, 1.0),)), 0.5, 16
        )
