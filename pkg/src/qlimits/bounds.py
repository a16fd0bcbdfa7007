"""Closed-form work/time/probability bounds for exhaustive search.

Classical (irreversible) search:

    E_c >= 2^n P_s (k_B T ln2 + h/(4t)) + 2n k_B T ln2

The per-guess cost combines one Landauer reset with the Margolus-Levitin
energy for stepping through 2^n P_s orthogonal states at constant speed;
the 2n E_L term initializes the guess and test registers.  The
Margolus-Levitin share could in principle be recovered afterwards but must
be supplied up front, so it counts toward the budget unconditionally.

Quantum (reversible, work-limited) search:

    W t >= sqrt(2^n P_s - 1) hbar

For P_s <= 2^-n the radicand is non-positive and the bound is vacuous
(the initial superposition already succeeds that often); results then
carry W = 0 and an offset-regime flag.

Gate-clocked search adds the control-signal bandwidth of a periodically
driven oracle/diffusion pair and an optional error-correction Landauer
charge:

    W_G t >= (2n + K) E_L t + hbar (sqrt(P_s 2^n) - 1)(pi - 2^(1-n/2))

Ballistic search saturates the quantum bound up to O(2^-n/2):

    P_s(t) = 1/2^n + (1 - 1/2^n) sin^2(W t / ((sqrt(2^n)+1) hbar))

All solvers invert these forms for whichever field is unknown; quantities
with 2^n factors are handled in log2 space so n up to a few thousand bits
cannot overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._num import LN2, exp2, log2_add
from .constants import CONSTANTS_VERSION, H, HBAR, K_B
from .errors import DomainError, InfeasibleError

CLASSICAL_TAG = "classical-exhaustive-v1"
QUANTUM_TAG = "quantum-work-time-v1(vacuous-below-Ps=2^-n)"
GATE_TAG = "gate-clocked-v1"
BALLISTIC_TAG = "ballistic-rotation-v1"

_N_BRACKET = (1.0, 4096.0)
_BISECTION_REL_TOL = 1e-12

_UNITS = {"work": "J", "time": "s", "psuccess": "probability", "n": "bits"}


@dataclass(frozen=True)
class BoundQuery:
    """A (W, t, T, P_s, n) tuple with exactly one unknown.

    ``power`` may replace ``work``; the budget is then power * time, and
    solving for time accounts for the budget growing with t.
    """

    unknown: str
    n: float | None = None
    work: float | None = None
    time: float | None = None
    temperature: float | None = None
    success_probability: float | None = None
    power: float | None = None

    def __post_init__(self):
        if self.unknown not in _UNITS:
            raise DomainError(
                f"unknown must be one of {sorted(_UNITS)}", self.unknown
            )
        provided = {
            "work": self.work,
            "time": self.time,
            "psuccess": self.success_probability,
            "n": self.n,
        }
        if provided[self.unknown] is not None:
            raise DomainError(
                f"field {self.unknown!r} is the unknown and must be omitted",
                provided[self.unknown],
            )
        if self.work is not None and self.power is not None:
            raise DomainError("give either work or power, not both", self)
        for name, value in (
            ("n", self.n),
            ("work", self.work),
            ("time", self.time),
            ("power", self.power),
        ):
            if value is not None and not value > 0.0:
                raise DomainError(f"{name} must be > 0", value)
        if self.temperature is not None and self.temperature < 0.0:
            raise DomainError("temperature must be >= 0", self.temperature)
        if self.success_probability is not None and not (
            0.0 < self.success_probability <= 1.0
        ):
            raise DomainError(
                "success probability must lie in (0, 1]", self.success_probability
            )

    def budget(self) -> float:
        """The work budget, resolving the power form if used."""
        if self.work is not None:
            return self.work
        if self.power is not None and self.time is not None:
            return self.power * self.time
        raise DomainError("work (or power with time) is required", self)

    def as_dict(self) -> dict:
        out = {"unknown": self.unknown}
        for key, value in (
            ("n", self.n),
            ("work_J", self.work),
            ("time_s", self.time),
            ("temperature_K", self.temperature),
            ("p_success", self.success_probability),
            ("power_W", self.power),
        ):
            if value is not None:
                out[key] = value
        return out


@dataclass(frozen=True)
class BoundResult:
    value: float
    bound_kind: str
    formula_tag: str
    inputs: BoundQuery
    unit: str
    offset_regime: bool = False

    def as_dict(self) -> dict:
        return {
            "bound_kind": self.bound_kind,
            "formula_tag": self.formula_tag,
            "inputs": self.inputs.as_dict(),
            "value": self.value,
            "unit": self.unit,
            "offset_regime": self.offset_regime,
            "constants_version": CONSTANTS_VERSION,
        }


def landauer_energy(temperature: float) -> float:
    """k_B T ln2, the minimum work per irreversible bit reset."""
    if temperature < 0.0:
        raise DomainError("temperature must be >= 0", temperature)
    return K_B * temperature * LN2


def margolus_levitin_energy(orthogonalization_time: float) -> float:
    """h/(4 dt), the minimum mean energy to reach an orthogonal state."""
    if not orthogonalization_time > 0.0:
        raise DomainError("orthogonalization time must be > 0", orthogonalization_time)
    return H / (4.0 * orthogonalization_time)


def _classical_requirement_log2(
    n: float, time: float, temperature: float, p_success: float
) -> float:
    """log2 of the classical work requirement; -inf when it vanishes."""
    e_l = landauer_energy(temperature)
    per_guess = e_l + H / (4.0 * time)
    term_guess = (
        n + math.log2(p_success * per_guess) if p_success * per_guess > 0.0 else -math.inf
    )
    term_init = math.log2(2.0 * n * e_l) if e_l > 0.0 else -math.inf
    return log2_add(term_guess, term_init)


def classical_work_requirement(
    n: float, time: float, temperature: float, p_success: float
) -> float:
    """E_c = 2^n P_s (E_L + h/4t) + 2n E_L in joules (inf on overflow)."""
    return exp2(_classical_requirement_log2(n, time, temperature, p_success))


def classical_bound(query: BoundQuery) -> BoundResult:
    """Solve the classical search bound for the query's unknown."""
    if query.temperature is None:
        raise DomainError("classical bound requires a temperature", query)
    t_kelvin = query.temperature
    e_l = landauer_energy(t_kelvin)

    def result(value: float) -> BoundResult:
        return BoundResult(value, "classical", CLASSICAL_TAG, query, _UNITS[query.unknown])

    if query.unknown == "work":
        _require(query, "n", "time", "psuccess")
        return result(
            classical_work_requirement(
                query.n, query.time, t_kelvin, query.success_probability
            )
        )

    if query.unknown == "psuccess":
        _require(query, "n", "time")
        budget = query.budget()
        floor = 2.0 * query.n * e_l
        if budget <= floor:
            raise InfeasibleError(
                "budget does not clear the 2n*E_L initialization floor",
                floor,
                query,
            )
        per_guess = e_l + H / (4.0 * query.time)
        denom_log2 = query.n + math.log2(per_guess)
        return result((budget - floor) * exp2(-denom_log2))

    if query.unknown == "time":
        _require(query, "n", "psuccess")
        if query.power is not None:
            return result(_classical_time_from_power(query, e_l))
        budget = query.budget()
        guesses_log2 = query.n + math.log2(query.success_probability)
        landauer_part = exp2(guesses_log2 + math.log2(e_l)) if e_l > 0.0 else 0.0
        floor = 2.0 * query.n * e_l + landauer_part
        if budget <= floor:
            raise InfeasibleError(
                "budget does not clear the Landauer floor; no runtime helps",
                floor,
                query,
            )
        dynamic = exp2(guesses_log2 + math.log2(H / 4.0))
        return result(dynamic / (budget - floor))

    # unknown == "n": monotone bisection on the log-requirement
    _require(query, "time", "psuccess")
    budget_log2 = math.log2(query.budget())

    def excess(n: float) -> float:
        return (
            _classical_requirement_log2(
                n, query.time, t_kelvin, query.success_probability
            )
            - budget_log2
        )

    lo, hi = _N_BRACKET
    if excess(lo) >= 0.0:
        raise InfeasibleError(
            "budget is below the requirement already at n = 1",
            classical_work_requirement(
                lo, query.time, t_kelvin, query.success_probability
            ),
            query,
        )
    if excess(hi) <= 0.0:
        raise DomainError("budget exceeds the requirement at the n = 4096 bracket", query)
    return result(_bisect(excess, lo, hi))


def _classical_time_from_power(query: BoundQuery, e_l: float) -> float:
    """Solve P*t = requirement(t) for t (monotone crossing)."""
    def excess(t: float) -> float:
        return query.power * t - classical_work_requirement(
            query.n, t, query.temperature, query.success_probability
        )

    lo, hi = 1e-300, 1.0
    while excess(hi) <= 0.0:
        hi *= 2.0
        if hi > 1e300:
            raise InfeasibleError("power too low to ever meet the requirement",
                                  math.inf, query)
    return _bisect(excess, lo, hi)


def quantum_work_requirement(n: float, time: float, p_success: float) -> tuple[float, bool]:
    """(W, offset_flag): W = sqrt(2^n P_s - 1) hbar / t, 0 when vacuous."""
    log2_np = n + math.log2(p_success)
    if log2_np <= 0.0:
        return 0.0, True
    if log2_np > 120.0:
        root = exp2(0.5 * log2_np)
    else:
        root = math.sqrt(exp2(log2_np) - 1.0)
    return root * HBAR / time, False


def quantum_bound(query: BoundQuery) -> BoundResult:
    """Solve the quantum work-time bound for the query's unknown."""
    def result(value: float, offset: bool = False) -> BoundResult:
        tag = QUANTUM_TAG + ("+offset-vacuous" if offset else "")
        return BoundResult(
            value, "quantum", tag, query, _UNITS[query.unknown], offset_regime=offset
        )

    if query.unknown == "work":
        _require(query, "n", "time", "psuccess")
        value, offset = quantum_work_requirement(
            query.n, query.time, query.success_probability
        )
        return result(value, offset)

    if query.unknown == "time":
        _require(query, "n", "psuccess")
        log2_np = query.n + math.log2(query.success_probability)
        if log2_np <= 0.0:
            return result(0.0, True)
        root = (
            exp2(0.5 * log2_np)
            if log2_np > 120.0
            else math.sqrt(exp2(log2_np) - 1.0)
        )
        if query.power is not None:
            return result(math.sqrt(root * HBAR / query.power))
        _require(query, "work")
        return result(root * HBAR / query.work)

    if query.unknown == "psuccess":
        _require(query, "n", "time")
        x = query.budget() * query.time / HBAR
        return result((x * x + 1.0) * exp2(-float(query.n)))

    # unknown == "n": largest real n satisfying the bound
    _require(query, "time")
    if query.success_probability is None:
        raise DomainError("success probability is required", query)
    x = query.budget() * query.time / HBAR
    from ._num import log2_xsq_plus_1

    return result(log2_xsq_plus_1(math.log2(x)) - math.log2(query.success_probability))


def gate_bound(
    n: float,
    p_success: float,
    time: float,
    corrected_errors: int = 0,
    temperature: float = 0.0,
) -> float:
    """Work floor of a gate-clocked implementation, in joules.

    (2n + K) E_L + max(0, hbar (sqrt(P_s 2^n) - 1)(pi - 2^(1-n/2)) / t).
    """
    if not time > 0.0:
        raise DomainError("time must be > 0", time)
    if not 0.0 < p_success <= 1.0:
        raise DomainError("success probability must lie in (0, 1]", p_success)
    if corrected_errors < 0:
        raise DomainError("corrected error count must be >= 0", corrected_errors)
    e_l = landauer_energy(temperature)
    root = math.sqrt(exp2(n + math.log2(p_success))) if n + math.log2(p_success) > -1000 else 0.0
    dynamic = HBAR * (root - 1.0) * (math.pi - 2.0 ** (1.0 - n / 2.0)) / time
    return (2.0 * n + corrected_errors) * e_l + max(dynamic, 0.0)


def ballistic_deterministic_time(n: float, work: float) -> float:
    """t_F = (pi/2)(sqrt(2^n) + 1) hbar / W."""
    if not work > 0.0:
        raise DomainError("work must be > 0", work)
    return 0.5 * math.pi * (exp2(0.5 * n) + 1.0) * HBAR / work


def ballistic_success(n: float, work: float, time: float) -> float:
    """Success probability of ballistic search after ``time`` seconds.

    P_s(t) = 1/2^n + (1 - 1/2^n) sin^2(W t / ((sqrt(2^n) + 1) hbar)),
    valid for 0 <= t <= t_F.
    """
    if time < 0.0:
        raise DomainError("time must be >= 0", time)
    t_final = ballistic_deterministic_time(n, work)
    if time > t_final * (1.0 + 1e-12):
        raise DomainError(
            f"ballistic form is valid only up to t_F = {t_final!r} s", time
        )
    p0 = exp2(-float(n))
    angle = work * time / ((exp2(0.5 * n) + 1.0) * HBAR)
    return p0 + (1.0 - p0) * math.sin(angle) ** 2


def prefactor_b(k: float, n: float) -> float:
    """Short-time envelope prefactor (1+k) / (1 + sqrt(k^2 + 2^-n (1-k^2)))^2."""
    if not 0.0 <= k <= 1.0:
        raise DomainError("relative detuning k must lie in [0, 1]", k)
    gg = exp2(-float(n))
    root = math.sqrt(k * k + gg * (1.0 - k * k))
    return (1.0 + k) / (1.0 + root) ** 2


def optimal_k(n: float, bracket: tuple[float, float] = (0.0, 1e-2), tol: float = 1e-14) -> float:
    """argmax of the envelope prefactor via golden-section search.

    The maximum sits near 1/sqrt(3*2^n); the search is confined to the
    bracket where that holds for n >= 14 and clamps to the edge below.
    """
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = bracket
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = prefactor_b(c, n), prefactor_b(d, n)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = prefactor_b(c, n)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = prefactor_b(d, n)
    return 0.5 * (a + b)


def work_floor(spectrum: list[float], overlaps: list[complex], m: int) -> float:
    """Moment-based work floor hbar * (sum |a_j|^2 w_j^m)^(1/m).

    Conservation of the m-th energy moment forces any preparation to pay at
    least this much; as m grows it converges to hbar * w_M, the largest
    occupied eigenfrequency.  Evaluated in log space to survive large m.
    """
    if len(spectrum) != len(overlaps) or len(spectrum) == 0:
        raise DomainError("spectrum and overlaps must be equal-length, non-empty",
                          (len(spectrum), len(overlaps)))
    if not (isinstance(m, int) and m >= 2 and m % 2 == 0):
        raise DomainError("moment order m must be a positive even integer", m)
    weights = [abs(a) ** 2 for a in overlaps]
    total = math.fsum(weights)
    if total == 0.0:
        raise DomainError("all overlaps vanish", overlaps)
    if abs(total - 1.0) > 1e-9:
        raise DomainError("overlaps must be normalized", total)
    terms = []
    for w_j, wt in zip(spectrum, weights):
        if not math.isfinite(w_j):
            raise DomainError("spectrum must be finite", w_j)
        if wt > 0.0 and w_j != 0.0:
            terms.append(math.log(wt) + m * math.log(abs(w_j)))
    if not terms:
        return 0.0
    peak = max(terms)
    log_sum = peak + math.log(math.fsum(math.exp(t - peak) for t in terms))
    return HBAR * math.exp(log_sum / m)


def init_readout_work(n: float, temperature: float, mode: str = "generic") -> float:
    """Initialization plus readout floor: 2n E_L, or 4n E_L with known plaintext."""
    if mode not in ("generic", "knownPlaintext"):
        raise DomainError("mode must be 'generic' or 'knownPlaintext'", mode)
    factor = 2.0 if mode == "generic" else 4.0
    return factor * n * landauer_energy(temperature)


def battery_relative_uncertainty(
    n_dof: int, temperature: float, potential_energy: float = 0.0
) -> float:
    """Relative energy spread of a thermal-plus-potential energy store.

    Model: <E> = U + N k_B T / 2 and dE = sqrt(N/2) k_B T, so the ratio
    falls off as 1/sqrt(N) once U scales with N.
    """
    if not (isinstance(n_dof, int) and n_dof >= 1):
        raise DomainError("degree-of-freedom count must be a positive integer", n_dof)
    if not temperature > 0.0:
        raise DomainError("temperature must be > 0", temperature)
    if potential_energy < 0.0:
        raise DomainError("potential energy must be >= 0", potential_energy)
    kt = K_B * temperature
    mean = potential_energy + 0.5 * n_dof * kt
    spread = math.sqrt(0.5 * n_dof) * kt
    return spread / mean


def _require(query: BoundQuery, *fields: str) -> None:
    mapping = {
        "n": query.n,
        "time": query.time,
        "psuccess": query.success_probability,
        "work": query.work,
    }
    for f in fields:
        if f == "work":
            if query.work is None and query.power is None:
                raise DomainError("work (or power) is required", query)
        elif mapping[f] is None:
            raise DomainError(f"field {f!r} is required", query)


def _bisect(f, lo: float, hi: float) -> float:
    """Root of a monotone-increasing f on [lo, hi] to 1e-12 relative."""
    f_lo = f(lo)
    if f_lo == 0.0:
        return lo
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        if f(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= _BISECTION_REL_TOL * max(abs(lo), abs(hi)):
            break
    return 0.5 * (lo + hi)
