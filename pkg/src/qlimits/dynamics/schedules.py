"""Schedule constructors: ballistic, pulsed-oracle, and adiabatic sweeps.

All constructors return :class:`~qlimits.dynamics.core.ControlSchedule`
objects; the simulator itself never special-cases a protocol.
"""

from __future__ import annotations

import math

import numpy as np

from ..constants import HBAR
from ..errors import DomainError
from .core import ControlSchedule, EffectiveState, SearchSpace, Segment, segment_propagator


def ballistic_schedule(space: SearchSpace, work: float) -> ControlSchedule:
    """Free evolution under constant omega_i = omega_s = omega.

    The work budget W fixes the frequency through the upper eigenenergy,
    omega = W / (hbar (1 + 2^(-n/2))), and the state rotates from |i> onto
    |s> deterministically at t_F = pi*sqrt(2^n)/(2 omega).
    """
    omega = ballistic_frequency(space, work)
    t_final = math.pi / (2.0 * omega * space.overlap)  # pi*sqrt(2^n)/(2 omega)
    return ControlSchedule(
        (Segment(t_final, omega, omega),), declared_duration=t_final
    )


def ballistic_frequency(space: SearchSpace, work: float) -> float:
    """omega implied by a work budget for the ballistic protocol."""
    if not work > 0.0:
        raise DomainError("work must be > 0", work)
    return work / (HBAR * (1.0 + space.overlap))


def grover_pulsed_schedule(
    space: SearchSpace,
    pulse_energy: float,
    pulse_phase: float = math.pi,
    iterations: int = 1,
) -> ControlSchedule:
    """Alternating pulses (0, E/hbar) then (E/hbar, 0).

    Each pulse lasts hbar*phase/E, so it imprints exactly ``pulse_phase``
    on the projected state; a phase of pi makes each pulse a reflection and
    a pulse pair one amplitude-amplification iteration.
    """
    if not pulse_energy > 0.0:
        raise DomainError("pulse energy must be > 0", pulse_energy)
    if not 0.0 < pulse_phase <= 2.0 * math.pi:
        raise DomainError("pulse phase must lie in (0, 2*pi]", pulse_phase)
    if not (isinstance(iterations, int) and iterations >= 1):
        raise DomainError("iterations must be a positive integer", iterations)
    omega_pulse = pulse_energy / HBAR
    tau = pulse_phase / omega_pulse
    segs: list[Segment] = []
    for _ in range(iterations):
        segs.append(Segment(tau, 0.0, omega_pulse))
        segs.append(Segment(tau, omega_pulse, 0.0))
    return ControlSchedule(tuple(segs), declared_duration=2 * iterations * tau)


def standard_grover_iterations(space: SearchSpace) -> int:
    """round(pi * 2^(n/2) / 4), the canonical phase-pi iteration count."""
    return int(round(math.pi * 2.0 ** (space.n / 2.0) / 4.0))


def first_peak_iterations(
    space: SearchSpace,
    pulse_energy: float,
    pulse_phase: float,
    max_pairs: int | None = None,
) -> tuple[int, float]:
    """Pulse pairs until the per-pair success probability first decreases.

    Returns ``(pairs, p_s)`` at the first local maximum of P_s measured
    after each pulse pair.  Used to characterize non-reflection pulse
    phases, where no closed-form iteration count exists.
    """
    if max_pairs is None:
        max_pairs = int(math.ceil(4.0 * math.pi * 2.0 ** (space.n / 2.0))) + 2
    pair = grover_pulsed_schedule(space, pulse_energy, pulse_phase, 1)
    u_pair = segment_propagator(space, pair.segments[1]) @ segment_propagator(
        space, pair.segments[0]
    )
    g = space.overlap
    root = math.sqrt(1.0 - g * g)
    psi = np.array([1.0 + 0.0j, 0.0j])
    best_p = g * g
    best_j = 0
    for j in range(1, max_pairs + 1):
        psi = u_pair @ psi
        p_s = abs(g * psi[0] + root * psi[1]) ** 2
        if p_s < best_p:
            return best_j, best_p
        best_p, best_j = p_s, j
    return best_j, best_p


def adiabatic_gap(space: SearchSpace, energy_scale: float, c: float) -> float:
    """Spectral gap E*sqrt(1 - 4c(1-c)(1 - 1/2^n)) of the interpolated H."""
    gg = space.overlap ** 2
    return energy_scale * math.sqrt(1.0 - 4.0 * c * (1.0 - c) * (1.0 - gg))


def adiabatic_total_time(space: SearchSpace, energy_scale: float, error_budget: float) -> float:
    """Total sweep time of the locally paced schedule.

    Integrating dc/dt = eps * gap(c)^2 / (hbar E) from c=0 to 1 gives
    T = (hbar / (eps E)) * atan(sqrt(1-g^2)/g) / (g sqrt(1-g^2)),
    which scales as (pi/2) * 2^(n/2) * hbar/(eps E) for large n.
    """
    g = space.overlap
    root = math.sqrt(1.0 - g * g)
    return (HBAR / (error_budget * energy_scale)) * math.atan(root / g) / (g * root)


def _local_sweep_position(space: SearchSpace, energy_scale: float, error_budget: float, t: float) -> float:
    """Invert the locally paced c(t); tangent-shaped in time."""
    g = space.overlap
    root = math.sqrt(1.0 - g * g)
    theta0 = math.atan(root / g)
    rate = 2.0 * g * root * error_budget * energy_scale / HBAR
    theta = rate * t - theta0
    theta = min(max(theta, -theta0), theta0)
    return 0.5 * (1.0 + (g / root) * math.tan(theta))


def adiabatic_schedule(
    space: SearchSpace,
    energy_scale: float,
    error_budget: float,
    kind: str = "local",
    segments: int | None = None,
) -> ControlSchedule:
    """Discretized sweep (hbar*omega_i, hbar*omega_s) = ((1-c)E, cE), c: 0 -> 1.

    ``kind="local"`` paces c so that dc/dt is proportional to the squared
    gap (slow at the avoided crossing); ``kind="linear"`` sweeps c uniformly
    over the *same* total time, which is the natural like-for-like
    comparison.  Segments are equal-duration with c evaluated at the
    midpoint; the default count grows as 2^(n/2) so each segment sees only
    a small rotation of the instantaneous eigenbasis.
    """
    if not energy_scale > 0.0:
        raise DomainError("energy scale must be > 0", energy_scale)
    if not 0.0 < error_budget < 1.0:
        raise DomainError("error budget must lie in (0, 1)", error_budget)
    if kind not in ("local", "linear"):
        raise DomainError("kind must be 'local' or 'linear'", kind)
    if segments is None:
        segments = max(256, 16 * int(math.ceil(2.0 ** (space.n / 2.0))))
    if segments < 256:
        raise DomainError("at least 256 segments are required", segments)

    total = adiabatic_total_time(space, energy_scale, error_budget)
    h = total / segments
    segs: list[Segment] = []
    for j in range(segments):
        t_mid = (j + 0.5) * h
        if kind == "local":
            c = _local_sweep_position(space, energy_scale, error_budget, t_mid)
        else:
            c = t_mid / total
        omega_i = (1.0 - c) * energy_scale / HBAR
        omega_s = c * energy_scale / HBAR
        segs.append(Segment(h, omega_i, omega_s))
    return ControlSchedule(tuple(segs))


def schedule_infidelity(space: SearchSpace, schedule: ControlSchedule) -> float:
    """1 - P_s at the end of a schedule started from |i>."""
    from .core import final_state, observables_at

    st = final_state(EffectiveState.initial(space), schedule)
    last = schedule.segments[-1]
    return 1.0 - observables_at(st, last.omega_i, last.omega_s).p_s


def runtime_to_infidelity(
    space: SearchSpace,
    energy_scale: float,
    error_budget: float,
    target_infidelity: float,
    scale_range: tuple[float, float] = (0.125, 16.0),
    grid_points: int = 97,
) -> float:
    """Shortest stretched local-schedule runtime whose infidelity stays at
    or below ``target_infidelity`` for every slower runtime as well.

    The final infidelity of an adiabatic sweep oscillates under a decaying
    envelope as the sweep slows, so the scan uses the envelope (a reversed
    running maximum over a log-spaced grid of time-scale factors) to get a
    monotone, well-defined crossing.
    """
    base = adiabatic_schedule(space, energy_scale, error_budget, kind="local")
    factors = np.exp(
        np.linspace(math.log(scale_range[0]), math.log(scale_range[1]), grid_points)
    )
    infidelity = np.array(
        [schedule_infidelity(space, base.scaled(f)) for f in factors]
    )
    envelope = np.maximum.accumulate(infidelity[::-1])[::-1]
    below = np.nonzero(envelope <= target_infidelity)[0]
    if len(below) == 0:
        raise DomainError(
            "target infidelity not reached within the scanned range",
            (target_infidelity, float(envelope.min())),
        )
    k = int(below[0])
    t_total = base.total_duration
    if k == 0:
        return float(factors[0]) * t_total
    # log-linear interpolation between the bracketing grid points
    f_lo, f_hi = factors[k - 1], factors[k]
    e_lo, e_hi = envelope[k - 1], envelope[k]
    if e_lo <= target_infidelity or e_lo == e_hi:
        return float(f_hi) * t_total
    w = (math.log(e_lo) - math.log(target_infidelity)) / (
        math.log(e_lo) - math.log(max(e_hi, 1e-300))
    )
    w = min(max(w, 0.0), 1.0)
    return float(f_lo ** (1.0 - w) * f_hi ** w) * t_total
