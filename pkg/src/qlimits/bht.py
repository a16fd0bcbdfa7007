"""Thermodynamic limits of hybrid collision search.

The hybrid attack on an n-bit-image function samples k inputs classically,
stores them, then amplitude-searches the remaining domain.  Charging one
Landauer reset per stored (input, output) bit, the Margolus-Levitin energy
for the classical sampling clock, and the quantum work-time bound for the
search phase -- with the sampling work reusable by the quantum phase --
gives, after optimizing the time split,

    W(k) = k (n+1) E_L + k h/(4 t_T) + sqrt(2^n P_s / k - 1) hbar / t_T

over the total wall-clock time t_T.  The closed-form sample count

    k* = 2^(n/3) P_s^(1/3) / ((n+1) E_L 4 t_T / hbar + 2 pi)^(2/3)

balances the linear and k^(-1/2) terms; plans clamp it to [1, 2^n P_s]
(at room temperature and tractable n it sits below 1, meaning a single
sample plus pure quantum search is already optimal).  Plugging k* back in
gives the budget-only form

    W* = 2^(n/3) P_s^(1/3) ((n+1) E_L 4 t_T / hbar + 2 pi)^(1/3) (5/4) hbar / t_T,

used for image-size inversion.  All 2^(n/3) factors are carried in log2
space, so image sizes beyond 600 bits are fine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._num import ceil_tol, exp2, log2_add
from .constants import CONSTANTS_VERSION, H, HBAR
from .errors import DomainError
from .bounds import landauer_energy

BHT_TAG = "bht-collision-v1"

# Externally tabulated image-size targets for the three named scenarios,
# kept for cross-checking only; the solver output is authoritative and a
# known systematic offset against these is reported by the test suite.
REFERENCE_IMAGE_BITS = {"datacenter": 415, "dyson": 788, "cosmic": 1077}

_N_BRACKET = (1.0, 4096.0)


@dataclass(frozen=True)
class BhtPlan:
    """A resolved collision-search plan."""

    image_bits: int
    samples: float            # continuous optimizer (clamped)
    samples_rounded: int
    quantum_time: float       # s
    total_time: float         # s
    work: float               # J (inf when past float range)
    log2_work: float
    log2_samples: float
    closed_form_work: float   # J, budget-only closed form (inf when huge)
    log2_closed_form_work: float
    clamped: bool

    def as_dict(self) -> dict:
        return {
            "n": self.image_bits,
            "k": self.samples,
            "k_rounded": self.samples_rounded,
            "log2_k": self.log2_samples,
            "t_s_s": self.quantum_time,
            "t_total_s": self.total_time,
            "work_J": self.work,
            "log2_work_J": self.log2_work,
            "closed_form_work_J": self.closed_form_work,
            "log2_closed_form_work_J": self.log2_closed_form_work,
            "clamped": self.clamped,
            "formula_tag": BHT_TAG,
            "constants_version": CONSTANTS_VERSION,
        }


def _radicand_log2(n: float, p_success: float, k: float) -> float:
    """log2(2^n P_s / k); the quantum search covers 2^n/k candidates."""
    return n + math.log2(p_success) - math.log2(k)


def _quantum_root(n: float, p_success: float, k: float) -> float:
    """sqrt(2^n P_s / k - 1); DomainError when negative."""
    r_log2 = _radicand_log2(n, p_success, k)
    if r_log2 < 0.0:
        raise DomainError(
            "sample count exceeds 2^n * P_s (negative radicand)", (n, k, p_success)
        )
    if r_log2 > 60.0:
        return exp2(0.5 * r_log2)
    return math.sqrt(exp2(r_log2) - 1.0)


def bht_work(n: float, k: float, t_total: float, temperature: float, p_success: float) -> float:
    """Work floor for a plan with k classical samples, in joules."""
    if not k >= 1.0:
        raise DomainError("sample count k must be >= 1", k)
    if not t_total > 0.0:
        raise DomainError("total time must be > 0", t_total)
    if not 0.0 < p_success <= 1.0:
        raise DomainError("success probability must lie in (0, 1]", p_success)
    e_l = landauer_energy(temperature)
    root = _quantum_root(n, p_success, k)
    return k * (n + 1.0) * e_l + k * H / (4.0 * t_total) + root * HBAR / t_total


def _log2_work_terms(n: float, log2_k: float, t_total: float, temperature: float,
                     p_success: float) -> float:
    """log2 of the three-term work expression, fully in log space."""
    e_l = landauer_energy(temperature)
    terms = []
    if e_l > 0.0:
        terms.append(log2_k + math.log2((n + 1.0) * e_l))
    terms.append(log2_k + math.log2(H / (4.0 * t_total)))
    r_log2 = n + math.log2(p_success) - log2_k
    if r_log2 < 0.0:
        raise DomainError("sample count exceeds 2^n * P_s", (n, log2_k))
    if r_log2 > 60.0:
        q_log2 = 0.5 * r_log2 + math.log2(HBAR / t_total)
    else:
        rad = exp2(r_log2) - 1.0
        q_log2 = 0.5 * math.log2(rad) + math.log2(HBAR / t_total) if rad > 0.0 else -math.inf
    total = terms[0]
    for t in terms[1:]:
        total = log2_add(total, t)
    return log2_add(total, q_log2)


def _closed_form_log2(n: float, t_total: float, temperature: float, p_success: float) -> tuple[float, float]:
    """(log2 k*, log2 W*) of the budget-only closed forms."""
    e_l = landauer_energy(temperature)
    x = (n + 1.0) * e_l * 4.0 * t_total / HBAR + 2.0 * math.pi
    log2_x = math.log2(x)
    base = (n + math.log2(p_success)) / 3.0
    log2_k = base - (2.0 / 3.0) * log2_x
    log2_w = base + log2_x / 3.0 + math.log2(1.25 * HBAR / t_total)
    return log2_k, log2_w


def optimal_quantum_time(n: float, k: float, t_total: float, p_success: float) -> float:
    """Time split giving both phases equal speed-limit work.

    t_s = t_T / (k * 2 pi / (4 sqrt(2^n P_s / k - 1)) + 1); the classical
    phase takes the rest.
    """
    root = _quantum_root(n, p_success, k)
    if root == 0.0:
        return 0.0
    return t_total / (k * 2.0 * math.pi / (4.0 * root) + 1.0)


def bht_optimal(n: float, t_total: float, temperature: float, p_success: float = 1.0) -> BhtPlan:
    """The optimal plan: sample count, time split, and work floor.

    The continuous optimizer is clamped to [1, 2^n P_s]; the reported work
    is the exact three-term expression at the rounded sample count, while
    the budget-only closed form is carried alongside for inversion.
    """
    if not t_total > 0.0:
        raise DomainError("total time must be > 0", t_total)
    if not temperature > 0.0:
        raise DomainError("temperature must be > 0", temperature)
    if not 0.0 < p_success <= 1.0:
        raise DomainError("success probability must lie in (0, 1]", p_success)
    if n + math.log2(p_success) < 0.0:
        raise DomainError(
            "2^n * P_s < 1: no sample count is admissible", (n, p_success)
        )
    log2_k_star, log2_w_star = _closed_form_log2(n, t_total, temperature, p_success)

    log2_k_max = n + math.log2(p_success)
    clamped = False
    log2_k = log2_k_star
    if log2_k < 0.0:
        log2_k, clamped = 0.0, True
    elif log2_k > log2_k_max:
        log2_k, clamped = log2_k_max, True

    k_cont = exp2(log2_k)
    if math.isfinite(k_cont) and k_cont < 2**53:
        lo = max(1, math.floor(k_cont))
        hi = max(1, math.ceil(k_cont))
        candidates = []
        for kk in {lo, hi}:
            if kk >= 1.0 and _radicand_log2(n, p_success, kk) >= 0.0:
                candidates.append((bht_work(n, kk, t_total, temperature, p_success), kk))
        work, k_round = min(candidates)
        log2_work = math.log2(work) if work > 0.0 else -math.inf
        t_s = optimal_quantum_time(n, k_round, t_total, p_success)
    else:
        k_round = -1  # beyond integer representation; report the continuous plan
        log2_work = _log2_work_terms(n, log2_k, t_total, temperature, p_success)
        work = exp2(log2_work)
        root_log2 = 0.5 * (n + math.log2(p_success) - log2_k)
        ratio_log2 = log2_k + math.log2(2.0 * math.pi / 4.0) - root_log2
        t_s = t_total / (exp2(ratio_log2) + 1.0)

    return BhtPlan(
        image_bits=int(n),
        samples=k_cont,
        samples_rounded=int(k_round),
        quantum_time=t_s,
        total_time=t_total,
        work=work,
        log2_work=log2_work,
        log2_samples=log2_k,
        closed_form_work=exp2(log2_w_star),
        log2_closed_form_work=log2_w_star,
        clamped=clamped,
    )


def bht_work_closed_form(n: float, t_total: float, temperature: float, p_success: float = 1.0) -> float:
    """Budget-only closed form W*(n), in joules (inf when past float range)."""
    _, log2_w = _closed_form_log2(n, t_total, temperature, p_success)
    return exp2(log2_w)


def bht_min_image_bits(
    work_budget: float, t_total: float, temperature: float, p_success: float = 1.0
) -> int:
    """Smallest integer image size whose closed-form work floor exceeds the budget."""
    if not work_budget > 0.0:
        raise DomainError("work budget must be > 0", work_budget)
    target = math.log2(work_budget)

    def excess(n: float) -> float:
        _, log2_w = _closed_form_log2(n, t_total, temperature, p_success)
        return log2_w - target

    lo, hi = _N_BRACKET
    if excess(lo) > 0.0:
        return 1
    if excess(hi) <= 0.0:
        raise DomainError("budget exceeds the bound at the n = 4096 bracket", work_budget)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if excess(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-12 * hi:
            break
    return ceil_tol(0.5 * (lo + hi))


def bht_sweep_minimum(
    n: float,
    t_total: float,
    temperature: float,
    p_success: float = 1.0,
    points: int = 10_000,
) -> tuple[float, float]:
    """Brute-force (k_min, W_min) over a log-spaced k grid with ternary refine.

    Independent check of the closed-form optimizer; the objective is
    strictly convex in log k, so ternary search converges on the grid cell
    containing the true minimum.
    """
    if n > 48:
        raise DomainError("sweep oracle limited to n <= 48", n)
    k_hi = exp2(n + math.log2(p_success))
    grid = np.exp(np.linspace(0.0, math.log(k_hi), points))
    works = np.array([bht_work(n, float(k), t_total, temperature, p_success) for k in grid])
    j = int(np.argmin(works))
    lo = math.log(grid[max(j - 1, 0)])
    hi = math.log(grid[min(j + 1, points - 1)])

    def f(u: float) -> float:
        return bht_work(n, math.exp(u), t_total, temperature, p_success)

    for _ in range(200):
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if f(m1) <= f(m2):
            hi = m2
        else:
            lo = m1
        if hi - lo < 1e-14:
            break
    u = 0.5 * (lo + hi)
    k_best = max(math.exp(u), 1.0)
    return k_best, bht_work(n, k_best, t_total, temperature, p_success)
