import math

import numpy as np
import pytest

from qlimits.constants import HBAR
from qlimits.dynamics import (
    ControlSchedule,
    EffectiveState,
    SearchSpace,
    Segment,
    adiabatic_gap,
    adiabatic_schedule,
    adiabatic_total_time,
    ballistic_schedule,
    effective_hamiltonian,
    eigenenergies,
    evolve,
    final_state,
    first_peak_iterations,
    grover_pulsed_schedule,
    observables_at,
    schedule_infidelity,
    standard_grover_iterations,
)
from qlimits.errors import ConsistencyError, DomainError


def ballistic_oracle(n, omega, t):
    """Independent closed form: P_s = 2^-n + (1 - 2^-n) sin^2(omega t / 2^(n/2))."""
    p0 = 2.0 ** (-n)
    return p0 + (1.0 - p0) * np.sin(omega * t * 2.0 ** (-n / 2.0)) ** 2


class TestSearchSpace:
    def test_overlap_dimension_identity(self):
        for n in (1, 2, 17, 100, 511, 1024):
            space = SearchSpace(n)
            assert abs(2.0 * math.log2(space.overlap) + n) < 1e-9 * max(n, 1)

    def test_dimension_exact(self):
        assert SearchSpace(10).dimension == 1024
        assert SearchSpace(1024).dimension == 2**1024

    @pytest.mark.parametrize("bad", [0, -1, 1025, 2.5])
    def test_rejects_bad_n(self, bad):
        with pytest.raises(DomainError):
            SearchSpace(bad)


class TestEffectiveHamiltonian:
    def test_zero_frequencies_vanish(self):
        h = effective_hamiltonian(SearchSpace(1), 0.0, 0.0)
        assert np.all(h == 0.0)

    def test_equal_frequencies_eigenvalues(self):
        # omega (|i><i| + |s><s|) has eigenvalues omega (1 +- g); n=2 -> g=1/2
        omega = 1.7
        h = effective_hamiltonian(SearchSpace(2), omega, omega)
        evals = np.sort(np.linalg.eigvalsh(h))
        assert np.allclose(evals, [omega * 0.5, omega * 1.5], rtol=1e-12)

    def test_trace_is_frequency_sum(self):
        h = effective_hamiltonian(SearchSpace(8), 1.0, 0.0)
        assert abs(np.trace(h) - 1.0) < 1e-15

    def test_rejects_negative_frequency(self):
        with pytest.raises(DomainError):
            effective_hamiltonian(SearchSpace(4), -1.0, 0.0)


class TestEigenenergies:
    def test_zero_detuning_form(self):
        for n in (4, 9, 30):
            omega = 2.2
            e_plus, e_minus = eigenenergies(SearchSpace(n), omega, 0.0)
            g = 2.0 ** (-n / 2.0)
            assert e_plus == pytest.approx(HBAR * omega * (1 + g), rel=1e-14)
            assert e_minus == pytest.approx(HBAR * omega * (1 - g), rel=1e-14)

    def test_full_detuning_limit(self):
        e_plus, e_minus = eigenenergies(SearchSpace(400), 3.0, 3.0)
        assert e_plus == pytest.approx(2.0 * HBAR * 3.0, rel=1e-12)
        assert abs(e_minus) < 1e-45

    def test_matches_numeric_diagonalization(self):
        rng = np.random.default_rng(42)
        for _ in range(1000):
            n = int(rng.integers(1, 40))
            omega = float(rng.uniform(0.01, 10.0))
            delta = float(rng.uniform(-omega, omega))
            space = SearchSpace(n)
            h = effective_hamiltonian(space, omega + delta, omega - delta)
            evals = np.sort(np.linalg.eigvalsh(h))[::-1] * HBAR
            e_plus, e_minus = eigenenergies(space, omega, delta)
            assert abs(e_plus - evals[0]) <= 1e-12 * abs(evals[0])
            assert abs(e_minus - evals[1]) <= 1e-12 * max(abs(evals[1]), 1e-60)

    def test_rejects_detuning_beyond_mean(self):
        with pytest.raises(DomainError):
            eigenenergies(SearchSpace(10), 1.0, 1.5)


class TestEvolve:
    def test_zero_schedule_leaves_state(self):
        space = SearchSpace(6)
        trace = evolve(
            EffectiveState.initial(space),
            ControlSchedule((Segment(3.0, 0.0, 0.0),)),
            0.1,
        )
        ps = trace.p_s()
        assert np.allclose(ps, 2.0**-6, atol=1e-15)
        assert trace.final.obs.p_i == pytest.approx(1.0, abs=1e-15)

    def test_ballistic_matches_closed_form(self):
        space = SearchSpace(12)
        omega = 1000.0
        work = HBAR * omega * (1.0 + 2.0**-6)
        schedule = ballistic_schedule(space, work)
        trace = evolve(EffectiveState.initial(space), schedule, schedule.total_duration / 777)
        t = trace.times()
        assert np.max(np.abs(trace.p_s() - ballistic_oracle(12, omega, t))) <= 1e-9
        assert trace.final.obs.p_s >= 1.0 - 1e-9

    def test_norm_error_tiny_over_long_trace(self):
        space = SearchSpace(16)
        schedule = ballistic_schedule(space, HBAR * 100.0)
        trace = evolve(
            EffectiveState.initial(space), schedule, schedule.total_duration / 10001
        )
        assert len(trace.points) >= 10000
        assert max(p.norm_error for p in trace.points) <= 1e-9
        t = trace.times()
        assert np.all(np.diff(t) > 0.0)

    def test_coarse_sampling_keeps_boundaries_only(self):
        space = SearchSpace(4)
        schedule = ControlSchedule((Segment(0.3, 1.0, 0.0), Segment(0.2, 0.0, 1.0)))
        trace = evolve(EffectiveState.initial(space), schedule, 10.0)
        assert [p.t for p in trace.points] == pytest.approx([0.0, 0.3, 0.5])

    def test_samples_include_boundaries(self):
        space = SearchSpace(4)
        schedule = ControlSchedule(
            (Segment(0.31, 1.0, 0.2), Segment(0.53, 0.1, 0.9), Segment(0.16, 0.0, 0.0))
        )
        trace = evolve(EffectiveState.initial(space), schedule, 0.1)
        t = trace.times()
        for boundary in (0.0, 0.31, 0.84, 1.0):
            assert np.min(np.abs(t - boundary)) < 1e-12
        assert t[-1] == pytest.approx(1.0, rel=1e-12)

    def test_overlap_product_consistency(self):
        # |A|^2 = P_i * P_s for a pure state
        space = SearchSpace(5)
        schedule = ControlSchedule((Segment(2.0, 1.3, 0.8),))
        trace = evolve(EffectiveState.initial(space), schedule, 0.05)
        for p in trace.points:
            assert abs(p.obs.a) ** 2 <= p.obs.p_i * p.obs.p_s + 1e-12

    def test_envelope_bound(self):
        # P_s(t) - P_s(0) <= b * E_plus^2 t^2 / (hbar^2 2^n) along ballistic runs
        from qlimits.bounds import prefactor_b

        space = SearchSpace(10)
        schedule = ballistic_schedule(space, HBAR * 50.0)
        trace = evolve(EffectiveState.initial(space), schedule, schedule.total_duration / 400)
        b = prefactor_b(0.0, 10)
        p0 = trace.points[0].obs.p_s
        for p in trace.points:
            bound = b * (p.obs.e_plus / HBAR) ** 2 * p.t**2 / 2**10
            assert p.obs.p_s - p0 <= bound + 1e-12

    def test_eigenstates_have_zero_phase(self):
        space = SearchSpace(9)
        h = effective_hamiltonian(space, 1.4, 0.7)
        _, vecs = np.linalg.eigh(h)
        for k in range(2):
            state = EffectiveState(complex(vecs[0, k]), complex(vecs[1, k]), space)
            obs = observables_at(state, 1.4, 0.7)
            assert abs(math.sin(obs.alpha_ab)) <= 1e-9

    def test_norm_drift_raises(self):
        space = SearchSpace(3)
        bad = EffectiveState.__new__(EffectiveState)
        object.__setattr__(bad, "c1", 1.0 + 5e-8j)
        object.__setattr__(bad, "c2", 1e-4 + 0.0j)
        object.__setattr__(bad, "space", space)
        with pytest.raises(ConsistencyError):
            evolve(bad, ControlSchedule((Segment(1.0, 1.0, 1.0),)), 0.5)


class TestBallisticSchedule:
    def test_unit_substitution(self):
        # n=2, W = hbar * 1.5 -> omega = 1, t_F = pi
        space = SearchSpace(2)
        schedule = ballistic_schedule(space, HBAR * 1.5)
        seg = schedule.segments[0]
        assert seg.omega_i == pytest.approx(1.0, rel=1e-12)
        assert seg.omega_s == pytest.approx(1.0, rel=1e-12)
        assert schedule.total_duration == pytest.approx(math.pi, rel=1e-12)

    def test_deterministic_endpoint(self):
        space = SearchSpace(12)
        schedule = ballistic_schedule(space, HBAR * 2000.0)
        state = final_state(EffectiveState.initial(space), schedule)
        seg = schedule.segments[0]
        assert observables_at(state, seg.omega_i, seg.omega_s).p_s >= 1.0 - 1e-9

    def test_128_bit_nanosecond_budget(self):
        # t_F <= 1 ns iff W >= (pi/2) 2^64 hbar / 1e-9 ~ 3.06e-6 J
        space = SearchSpace(128)
        threshold = math.pi / 2.0 * (2.0**64 + 1.0) * HBAR / 1e-9
        assert threshold == pytest.approx(3.056e-6, rel=1e-3)
        schedule = ballistic_schedule(space, 6.5e-6)
        assert schedule.total_duration <= 1e-9
        schedule = ballistic_schedule(space, threshold * 0.99)
        assert schedule.total_duration > 1e-9


class TestGroverPulsed:
    def test_schedule_shape(self):
        space = SearchSpace(8)
        schedule = grover_pulsed_schedule(space, 2.0 * HBAR, math.pi, 3)
        assert len(schedule.segments) == 6
        first, second = schedule.segments[:2]
        assert (first.omega_i, first.omega_s) == (0.0, 2.0)
        assert (second.omega_i, second.omega_s) == (2.0, 0.0)
        assert first.duration == pytest.approx(math.pi / 2.0, rel=1e-12)

    def test_single_pulse_pair_small_spaces(self):
        # hand rotation: P_s after one pair is sin^2(3*asin(2^(-n/2))),
        # so n=2 lands exactly on the solution while n=1 stalls at 1/2
        for n, expected in ((1, 0.5), (2, 1.0)):
            space = SearchSpace(n)
            schedule = grover_pulsed_schedule(space, HBAR, math.pi, 1)
            state = final_state(EffectiveState.initial(space), schedule)
            p_s = observables_at(state, 0.0, 0.0).p_s
            assert p_s == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("n", [8, 10, 12])
    def test_standard_iterations_reach_target(self, n):
        space = SearchSpace(n)
        iters = standard_grover_iterations(space)
        assert iters == round(math.pi * 2.0 ** (n / 2.0) / 4.0)
        schedule = grover_pulsed_schedule(space, HBAR, math.pi, iters)
        state = final_state(EffectiveState.initial(space), schedule)
        p_s = observables_at(state, 0.0, 0.0).p_s
        # rotation-composition oracle: P_s = sin^2((2j+1) asin(2^(-n/2)))
        theta = math.asin(2.0 ** (-n / 2.0))
        assert p_s == pytest.approx(math.sin((2 * iters + 1) * theta) ** 2, abs=1e-12)
        assert p_s >= 1.0 - 2.0 ** (2 - n)

    def test_first_peak_reported_for_both_phases(self):
        space = SearchSpace(8)
        pairs_pi, p_pi = first_peak_iterations(space, HBAR, math.pi)
        pairs_half, p_half = first_peak_iterations(space, HBAR, math.pi / 2.0)
        # phase pi peaks within one pair of the canonical count
        assert abs(pairs_pi - standard_grover_iterations(space)) <= 1
        assert p_pi > 0.99
        # the slower pi/2 pulses need more pairs; record the measured count
        assert pairs_half > pairs_pi
        assert p_half > 0.99
        print(f"first-peak pairs: phase pi -> {pairs_pi}, phase pi/2 -> {pairs_half}")


class TestAdiabatic:
    def test_sweep_endpoints_and_segment_count(self):
        space = SearchSpace(6)
        schedule = adiabatic_schedule(space, 1.0, 0.1, kind="local")
        assert len(schedule.segments) >= 256
        first, last = schedule.segments[0], schedule.segments[-1]
        scale = 1.0 / HBAR
        assert first.omega_i > 0.9 * scale and first.omega_s < 0.1 * scale
        assert last.omega_s > 0.9 * scale and last.omega_i < 0.1 * scale

    def test_initial_state_is_top_eigenstate_at_c0(self):
        space = SearchSpace(8)
        h = effective_hamiltonian(space, 1.0, 0.0)
        evals, vecs = np.linalg.eigh(h)
        top = vecs[:, np.argmax(evals)]
        overlap = abs(top[0]) ** 2  # |<i|top>|^2
        assert overlap == pytest.approx(1.0, abs=1e-12)

    def test_local_beats_linear_at_equal_time(self):
        for n in (8, 10):
            space = SearchSpace(n)
            local = adiabatic_schedule(space, 1.0, 0.08, kind="local")
            linear = adiabatic_schedule(space, 1.0, 0.08, kind="linear")
            assert linear.total_duration == pytest.approx(local.total_duration, rel=1e-9)
            p_local = 1.0 - schedule_infidelity(space, local)
            p_linear = 1.0 - schedule_infidelity(space, linear)
            assert p_linear < p_local

    def test_gap_matches_eigen_splitting(self):
        # oracle: E_plus - E_minus of the interpolated Hamiltonian
        space = SearchSpace(10)
        energy = 2.5
        for c in (0.0, 0.2, 0.5, 0.77, 1.0):
            h = effective_hamiltonian(
                space, (1.0 - c) * energy / HBAR, c * energy / HBAR
            )
            evals = np.linalg.eigvalsh(h)
            oracle = (evals[1] - evals[0]) * HBAR
            assert adiabatic_gap(space, energy, c) == pytest.approx(oracle, rel=1e-12)

    def test_total_time_scales_as_sqrt_dimension(self):
        t6 = adiabatic_total_time(SearchSpace(6), 1.0, 0.1)
        t14 = adiabatic_total_time(SearchSpace(14), 1.0, 0.1)
        assert t14 / t6 == pytest.approx(2.0**4, rel=0.1)

    def test_rejects_bad_budget(self):
        with pytest.raises(DomainError):
            adiabatic_schedule(SearchSpace(6), 1.0, 1.5)


class TestScheduleOps:
    def test_truncated_preserves_prefix(self):
        schedule = ControlSchedule((Segment(1.0, 1.0, 0.0), Segment(1.0, 0.0, 1.0)))
        cut = schedule.truncated(1.5)
        assert len(cut.segments) == 2
        assert cut.total_duration == pytest.approx(1.5, rel=1e-12)
        assert cut.segments[1].duration == pytest.approx(0.5, rel=1e-12)

    def test_declared_duration_mismatch_raises(self):
        with pytest.raises(ConsistencyError):
            ControlSchedule((Segment(1.0, 1.0, 1.0),), declared_duration=2.0)

    def test_rejects_empty_and_nonpositive(self):
        with pytest.raises(DomainError):
            ControlSchedule(())
        with pytest.raises(DomainError):
            Segment(0.0, 1.0, 1.0)
