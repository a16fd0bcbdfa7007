"""Exact dynamics of work-limited search in the two-dimensional subspace.

The search Hamiltonian

    H = hbar*omega_i |i><i| + hbar*omega_s |s><s|

couples only the uniform initial state |i> and the marked solution state
|s>, whose overlap is g = <i|s> = 2**(-n/2) for an n-bit search space.  A
state prepared in |i> therefore never leaves span{|i>, |s>}, and the whole
evolution reduces to a two-level problem.

We work in the orthonormal basis {|i>, |s_perp>} with

    |s> = g |i> + sqrt(1 - g^2) |s_perp>,

where the reduced Hamiltonian (divided by hbar, units rad/s) reads

    H/hbar = [[omega_i + omega_s g^2,        omega_s g sqrt(1-g^2)],
              [omega_s g sqrt(1-g^2),        omega_s (1 - g^2)   ]].

Within each constant segment of a schedule the propagator is the exact
2x2 matrix exponential, evaluated analytically through the Pauli
decomposition; there is no step-size error anywhere, so oracle comparisons
may demand 1e-9 agreement.

Conventions: omega = (omega_i + omega_s)/2 is the mean frequency and
delta_omega = (omega_i - omega_s)/2 the detuning.  The eigenvalues of
H/hbar are omega +- Omega with Omega = sqrt(delta_omega^2 +
(omega^2 - delta_omega^2)/2^n).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from ..constants import HBAR
from ..errors import ConsistencyError, DomainError

NORM_TOLERANCE = 1e-9

# n beyond which 2^-n falls under the smallest normal double and the
# initial success probability loses precision.
_SUBNORMAL_BITS = 1022


@dataclass(frozen=True)
class SearchSpace:
    """An n-bit search space: dimension 2^n, overlap g = 2^(-n/2)."""

    n: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and 1 <= self.n <= 1024):
            raise DomainError("key length n must be an integer in [1, 1024]", self.n)

    @property
    def dimension(self) -> int:
        return 2 ** self.n

    @property
    def overlap(self) -> float:
        """g = <i|s> = 2^(-n/2), computed in log2 space."""
        return 2.0 ** (-0.5 * self.n)

    @property
    def initial_success_probability(self) -> float:
        return 2.0 ** (-float(self.n))

    @property
    def p0_subnormal(self) -> bool:
        """True when 2^-n is subnormal and loses mantissa precision."""
        return self.n > _SUBNORMAL_BITS


@dataclass(frozen=True)
class EffectiveState:
    """Amplitudes on |i> and |s_perp>."""

    c1: complex
    c2: complex
    space: SearchSpace

    def __post_init__(self):
        norm = abs(self.c1) ** 2 + abs(self.c2) ** 2
        if abs(norm - 1.0) > 1e-6:
            raise DomainError("state amplitudes must be normalized", norm)

    @classmethod
    def initial(cls, space: SearchSpace) -> "EffectiveState":
        return cls(1.0 + 0.0j, 0.0 + 0.0j, space)

    @property
    def norm_error(self) -> float:
        return abs(math.sqrt(abs(self.c1) ** 2 + abs(self.c2) ** 2) - 1.0)

    def solution_amplitude(self) -> complex:
        """<s|psi> in the orthonormal basis."""
        g = self.space.overlap
        return g * self.c1 + math.sqrt(1.0 - g * g) * self.c2


@dataclass(frozen=True)
class Segment:
    """A constant-Hamiltonian interval of a control schedule."""

    duration: float       # s
    omega_i: float        # rad/s
    omega_s: float        # rad/s

    def __post_init__(self):
        if not (self.duration > 0.0 and math.isfinite(self.duration)):
            raise DomainError("segment duration must be finite and > 0", self.duration)
        for w in (self.omega_i, self.omega_s):
            if not (math.isfinite(w) and w >= 0.0):
                raise DomainError("segment frequencies must be finite and >= 0", w)

    @property
    def omega(self) -> float:
        return 0.5 * (self.omega_i + self.omega_s)

    @property
    def delta_omega(self) -> float:
        return 0.5 * (self.omega_i - self.omega_s)


@dataclass(frozen=True)
class ControlSchedule:
    """Piecewise-constant control: an ordered tuple of segments.

    ``declared_duration``, when given by a schedule constructor, must match
    the summed segment durations to 1e-12 relative.
    """

    segments: tuple[Segment, ...]
    declared_duration: float | None = None

    def __post_init__(self):
        if len(self.segments) == 0:
            raise DomainError("schedule must contain at least one segment", self)
        total = self.total_duration
        if self.declared_duration is not None:
            if abs(total - self.declared_duration) > 1e-12 * max(
                abs(self.declared_duration), 1e-300
            ):
                raise ConsistencyError(
                    "segment durations do not add up to the declared runtime",
                    (total, self.declared_duration),
                )

    @property
    def total_duration(self) -> float:
        return math.fsum(s.duration for s in self.segments)

    def scaled(self, factor: float) -> "ControlSchedule":
        """Uniformly stretch every segment duration by ``factor``."""
        if not factor > 0.0:
            raise DomainError("scale factor must be > 0", factor)
        return ControlSchedule(
            tuple(Segment(s.duration * factor, s.omega_i, s.omega_s) for s in self.segments)
        )

    def truncated(self, duration: float) -> "ControlSchedule":
        """The restriction of this schedule to [0, duration]."""
        if not 0.0 < duration <= self.total_duration * (1.0 + 1e-12):
            raise DomainError(
                "truncation time must lie within the schedule", duration
            )
        out: list[Segment] = []
        remaining = duration
        for seg in self.segments:
            if remaining >= seg.duration:
                out.append(seg)
                remaining -= seg.duration
            else:
                if remaining > 0.0:
                    out.append(Segment(remaining, seg.omega_i, seg.omega_s))
                remaining = 0.0
                break
        return ControlSchedule(tuple(out))


@dataclass(frozen=True)
class Observables:
    """Instantaneous observables of the reduced state."""

    p_s: float            # |<s|psi>|^2
    p_i: float            # |<i|psi>|^2
    a: complex            # <psi|s><i|psi>
    alpha_ab: float       # arg(a), rad
    e_plus: float         # upper eigenenergy, J
    e_minus: float        # lower eigenenergy, J


@dataclass(frozen=True)
class TracePoint:
    t: float
    omega_i: float
    omega_s: float
    obs: Observables
    norm_error: float


@dataclass(frozen=True)
class Trace:
    """Time series of observables along a schedule."""

    points: tuple[TracePoint, ...]
    space: SearchSpace
    p0_subnormal: bool = field(default=False)

    @property
    def final(self) -> TracePoint:
        return self.points[-1]

    def times(self) -> np.ndarray:
        return np.array([p.t for p in self.points])

    def p_s(self) -> np.ndarray:
        return np.array([p.obs.p_s for p in self.points])

    def p_i(self) -> np.ndarray:
        return np.array([p.obs.p_i for p in self.points])

    def a(self) -> np.ndarray:
        return np.array([p.obs.a for p in self.points])


def effective_hamiltonian(space: SearchSpace, omega_i: float, omega_s: float) -> np.ndarray:
    """H/hbar as a real symmetric 2x2 matrix in the {|i>, |s_perp>} basis."""
    for w in (omega_i, omega_s):
        if not (math.isfinite(w) and w >= 0.0):
            raise DomainError("frequencies must be finite and >= 0", w)
    g = space.overlap
    gg = g * g
    coupling = omega_s * g * math.sqrt(1.0 - gg)
    return np.array(
        [
            [omega_i + omega_s * gg, coupling],
            [coupling, omega_s * (1.0 - gg)],
        ]
    )


def eigenenergies(space: SearchSpace, omega: float, delta_omega: float) -> tuple[float, float]:
    """Closed-form eigenenergies (E_plus, E_minus) in joules.

    E_pm = hbar*omega +- hbar*sqrt(delta^2 + (omega^2 - delta^2)/2^n).
    """
    if abs(delta_omega) > omega:
        raise DomainError(
            "|delta_omega| must not exceed omega (negative frequencies)",
            (omega, delta_omega),
        )
    split = _rabi_frequency(space, omega, delta_omega)
    return (HBAR * (omega + split), HBAR * (omega - split))


def _rabi_frequency(space: SearchSpace, omega: float, delta_omega: float) -> float:
    gg = space.overlap ** 2
    radicand = delta_omega * delta_omega * (1.0 - gg) + omega * omega * gg
    return math.sqrt(radicand)


def _pauli_components(space: SearchSpace, seg: Segment) -> tuple[float, float, float]:
    """(mean, x, z) with H/hbar = mean*I + x*sigma_x + z*sigma_z."""
    g = space.overlap
    gg = g * g
    x = seg.omega_s * g * math.sqrt(1.0 - gg)
    z = seg.delta_omega + seg.omega_s * gg
    return seg.omega, x, z


def segment_propagator(space: SearchSpace, seg: Segment, duration: float | None = None) -> np.ndarray:
    """Exact unitary exp(-i (H/hbar) * duration) for one segment."""
    dt = seg.duration if duration is None else duration
    mean, x, z = _pauli_components(space, seg)
    rabi = math.hypot(x, z)
    phase = cmath.exp(-1j * mean * dt)
    cos_t = math.cos(rabi * dt)
    if rabi * dt < 1e-100:
        sin_over = dt
    else:
        sin_over = math.sin(rabi * dt) / rabi if rabi > 0.0 else dt
    return phase * np.array(
        [
            [cos_t - 1j * z * sin_over, -1j * x * sin_over],
            [-1j * x * sin_over, cos_t + 1j * z * sin_over],
        ]
    )


def observables_at(
    state: EffectiveState, omega_i: float, omega_s: float
) -> Observables:
    """Observables of ``state`` under the segment frequencies given."""
    s_amp = state.solution_amplitude()
    p_s = abs(s_amp) ** 2
    p_i = abs(state.c1) ** 2
    a = s_amp.conjugate() * state.c1
    omega = 0.5 * (omega_i + omega_s)
    delta = 0.5 * (omega_i - omega_s)
    e_plus, e_minus = eigenenergies(state.space, omega, delta)
    return Observables(
        p_s=p_s,
        p_i=p_i,
        a=a,
        alpha_ab=cmath.phase(a),
        e_plus=e_plus,
        e_minus=e_minus,
    )


def _segment_sample_offsets(t_start: float, duration: float, step: float) -> np.ndarray:
    """Offsets within a segment hit by the global step grid, plus the end."""
    t_end = t_start + duration
    first = math.ceil(t_start / step - 1e-9)
    last = math.floor(t_end / step + 1e-9)
    offsets = [m * step - t_start for m in range(first, last + 1)]
    offsets = [o for o in offsets if 1e-12 * max(duration, step) < o < duration * (1.0 - 1e-12)]
    offsets.append(duration)
    return np.asarray(offsets)


def evolve(state: EffectiveState, schedule: ControlSchedule, sample_step: float) -> Trace:
    """Integrate the state through a schedule, sampling observables.

    Within each constant segment the propagation is the exact 2x2 matrix
    exponential; samples fall on every multiple of ``sample_step`` plus all
    segment boundaries, ending exactly at the total duration.  A norm drift
    beyond 1e-9 raises :class:`ConsistencyError`.
    """
    if not sample_step > 0.0:
        raise DomainError("sample_step must be > 0", sample_step)
    space = state.space
    psi = np.array([state.c1, state.c2], dtype=complex)

    points: list[TracePoint] = []

    def emit(t: float, vec: np.ndarray, seg: Segment) -> None:
        norm = math.sqrt(float(abs(vec[0]) ** 2 + abs(vec[1]) ** 2))
        err = abs(norm - 1.0)
        if err > NORM_TOLERANCE:
            raise ConsistencyError(
                "propagator norm drift exceeded tolerance", (t, err)
            )
        st = EffectiveState(complex(vec[0]), complex(vec[1]), space)
        points.append(
            TracePoint(
                t=t,
                omega_i=seg.omega_i,
                omega_s=seg.omega_s,
                obs=observables_at(st, seg.omega_i, seg.omega_s),
                norm_error=err,
            )
        )

    emit(0.0, psi, schedule.segments[0])
    t_start = 0.0
    for seg in schedule.segments:
        mean, x, z = _pauli_components(space, seg)
        rabi = math.hypot(x, z)
        offsets = _segment_sample_offsets(t_start, seg.duration, sample_step)
        angles = rabi * offsets
        cos_t = np.cos(angles)
        if rabi > 0.0:
            sin_over = np.sin(angles) / rabi
        else:
            sin_over = offsets.copy()
        phases = np.exp(-1j * mean * offsets)
        c1 = phases * ((cos_t - 1j * z * sin_over) * psi[0] - 1j * x * sin_over * psi[1])
        c2 = phases * (-1j * x * sin_over * psi[0] + (cos_t + 1j * z * sin_over) * psi[1])
        for k, off in enumerate(offsets):
            emit(t_start + off, np.array([c1[k], c2[k]]), seg)
        psi = np.array([c1[-1], c2[-1]])
        t_start += seg.duration

    return Trace(points=tuple(points), space=space, p0_subnormal=space.p0_subnormal)


def final_state(state: EffectiveState, schedule: ControlSchedule) -> EffectiveState:
    """The state after the full schedule (no sampling; exact propagators)."""
    space = state.space
    psi = np.array([state.c1, state.c2], dtype=complex)
    for seg in schedule.segments:
        psi = segment_propagator(space, seg) @ psi
    norm = math.sqrt(float(abs(psi[0]) ** 2 + abs(psi[1]) ** 2))
    if abs(norm - 1.0) > NORM_TOLERANCE:
        raise ConsistencyError("propagator norm drift exceeded tolerance", norm)
    return EffectiveState(complex(psi[0]), complex(psi[1]), space)
