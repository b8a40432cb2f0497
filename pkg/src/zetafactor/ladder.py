"""A computable height map phi1 with exact inverse and substitution weight.

The map is defined implicitly through the accumulated critical-line integral
J(T) (module quad) and the mean-value main term

    M(x) = x log x + (2 gamma - 1 - log 2pi) x,

as the unique solution of

    M(phi1(T)) = J(T) - s T / log T,

on the increasing branch of M.  The optional depression shift s >= 0
defaults to zero; it exists to push phi1(T) below T on working ranges where
the oscillating remainder of J would lift it above, and is recorded in
reports whenever used.

Because M is a closed form, the map has a closed-form derivative

    phi1'(t) = (Z(t)^2 - s (log t - 1)/log^2 t) / (log phi1(t) + 2 gamma - log 2pi),

which makes the change-of-variables identity

    integral of f over [phi1(a), phi1(b)]
        = integral of f(phi1(t)) phi1'(t) over [a, b]

hold to quadrature accuracy.  That identity is what every downstream factor
construction consumes.  Reverse iteration of intervals under the inverse map
yields the tower of intervals on which exchange points live.

phi1 is nondecreasing because J is; it is strictly increasing except across
the isolated flat spots at the zeros of Z, where the inverse resolves ties
to the leftmost preimage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CacheRangeError, ImageRangeError, InvalidParameterError
from .quad import IntegralCache, j_at
from .special import zeta_half_sq

__all__ = [
    "EULER_GAMMA",
    "LadderModel",
    "IntervalTower",
    "mean_main_term",
    "phi1",
    "phi1_inverse",
    "ladder_weight",
    "reverse_iterates",
    "compose_k",
]

EULER_GAMMA = 0.5772156649015328606

# M(x) = x log x + C_MEAN x ; M'(x) = log x + C_SLOPE.
C_MEAN = 2.0 * EULER_GAMMA - 1.0 - math.log(2.0 * math.pi)
C_SLOPE = 2.0 * EULER_GAMMA - math.log(2.0 * math.pi)

# M is increasing for x > exp(-C_SLOPE) and reaches zero again at
# x = exp(1 - C_SLOPE) ~ 5.384; the solver works on that branch.
_X_BRANCH = math.exp(1.0 - C_SLOPE)


def mean_main_term(x):
    """M(x), the critical-line mean-value main term."""
    x = np.asarray(x, dtype=float)
    return x * np.log(x) + C_MEAN * x


def _mean_main_slope(x):
    return np.log(x) + C_SLOPE


@dataclass(frozen=True)
class LadderModel:
    """Immutable bundle of the integral cache, depression shift, and domain."""

    cache: IntegralCache
    shift: float = 0.0
    domain_min: float = 64.0

    def __post_init__(self):
        if self.shift < 0:
            raise InvalidParameterError("shift must be nonnegative", code="spec")
        if not (self.cache.t0 <= self.domain_min < self.cache.top):
            raise InvalidParameterError("domain_min outside cached range", code="spec")
        if self.domain_min <= 1.0 and self.shift > 0:
            raise InvalidParameterError("shift needs domain_min > 1", code="spec")

    @property
    def top(self) -> float:
        return self.cache.top

    def _check_domain(self, T: np.ndarray):
        if np.any(T < self.domain_min) or np.any(T > self.top):
            bad = float(T[(T < self.domain_min) | (T > self.top)][0])
            raise CacheRangeError(
                f"T = {bad!r} outside ladder domain [{self.domain_min}, {self.top}]"
            )

    def _target(self, T: np.ndarray) -> np.ndarray:
        y = j_at(self.cache, T)
        if self.shift != 0.0:
            y = y - self.shift * T / np.log(T)
        return np.asarray(y, dtype=float)


@dataclass(frozen=True)
class IntervalTower:
    """Reverse-iterated images of a base interval, level 0 = (L, U).

    ``ordering_violations`` lists levels r with L^r < L^(r-1); the map is not
    guaranteed to descend everywhere at shift 0, so violations are recorded
    rather than rejected.  ``roundtrip_residuals[r]`` is the forward error
    |phi1(L^r) - L^(r-1)| measured at build time.
    """

    base: tuple[float, float]
    levels: tuple[tuple[float, float], ...]
    ordering_violations: tuple[int, ...] = ()
    roundtrip_residuals: tuple[float, ...] = field(default=(), repr=False)

    def __post_init__(self):
        if self.levels[0] != self.base:
            raise InvalidParameterError("level 0 must equal the base interval", code="spec")
        if any(u <= 0 for _, u in self.levels):
            raise InvalidParameterError("tower widths must stay positive", code="spec")

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def interval(self, r: int) -> tuple[float, float]:
        lo, width = self.levels[r]
        return lo, lo + width


def phi1(model: LadderModel, T):
    """The height map: unique x on the increasing branch with M(x) = target(T).

    Newton iteration from above; M is convex there, so the iterates descend
    monotonically onto the root and are run to float64 convergence (well
    inside the 1e-11 relative contract).
    """
    arr = np.asarray(T, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr).astype(float)
    model._check_domain(arr)
    y = model._target(arr)
    # start above the root: M grows by ~64 log T over [T, T+64], which
    # dominates the oscillating part of J - M at desk heights
    x = np.maximum(arr + 64.0, 2.0 * _X_BRANCH)
    for _ in range(64):
        grow = mean_main_term(x) < y
        if not np.any(grow):
            break
        x[grow] *= 1.5
    for _ in range(80):
        f = mean_main_term(x) - y
        step = f / _mean_main_slope(x)
        x_new = np.maximum(x - step, _X_BRANCH)
        done = np.abs(x_new - x) <= 4.0 * np.finfo(float).eps * x_new
        x = x_new
        if np.all(done):
            break
    return float(x[0]) if scalar else x


def phi1_inverse(model: LadderModel, y: float) -> float:
    """Smallest T with phi1(T) = y, flat spots resolved leftward.

    Bisection on the nondecreasing target J(T) - s T/log T against M(y),
    bracketed within one checkpoint step, then polished by guarded secant
    steps.  Converges to a few ulp in T.
    """
    y = float(y)
    lo_dom, hi_dom = model.domain_min, model.top
    target = float(mean_main_term(y))
    t_lo_val = float(model._target(np.array([lo_dom]))[0])
    t_hi_val = float(model._target(np.array([hi_dom]))[0])
    if not (t_lo_val <= target <= t_hi_val):
        raise ImageRangeError(
            f"y = {y!r} outside the attainable image "
            f"[{phi1(model, lo_dom)!r}, {phi1(model, hi_dom)!r}]",
            lo=phi1(model, lo_dom),
            hi=phi1(model, hi_dom),
        )
    # narrow to one checkpoint panel via the stored prefix values
    cps = model.cache.checkpoints()
    jvals = model.cache.values
    if model.shift == 0.0:
        grid_vals = jvals
    else:
        with np.errstate(divide="ignore", invalid="ignore"):
            corr = np.where(cps > 1.0, model.shift * cps / np.log(cps), 0.0)
        grid_vals = jvals - corr
    k = int(np.searchsorted(grid_vals, target, side="left"))
    lo = max(lo_dom, float(cps[max(k - 1, 0)]))
    hi = min(hi_dom, float(cps[min(k, cps.size - 1)]))
    if hi <= lo:
        lo, hi = lo_dom, hi_dom

    def resid(T: float) -> float:
        return float(model._target(np.array([T]))[0]) - target

    # the panel located by searchsorted can miss under a nonzero shift; widen
    if resid(lo) > 0:
        lo = lo_dom
    if resid(hi) < 0:
        hi = hi_dom
    # bisection on the predicate resid >= 0 converges to the leftmost
    # crossing of a nondecreasing function
    for _ in range(90):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if resid(mid) >= 0:
            hi = mid
        else:
            lo = mid
        if hi - lo <= 4.0 * np.finfo(float).eps * max(abs(lo), 1.0):
            break
    return hi


def ladder_weight(model: LadderModel, t):
    """phi1'(t) in closed form; vanishes exactly where Z does (shift 0)."""
    arr = np.asarray(t, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr).astype(float)
    model._check_domain(arr)
    num = zeta_half_sq(arr, model.cache.policy)
    if model.shift != 0.0:
        lg = np.log(arr)
        num = num - model.shift * (lg - 1.0) / (lg * lg)
    den = np.log(phi1(model, arr)) + C_SLOPE
    out = num / den
    return float(out[0]) if scalar else out


def compose_k(model: LadderModel, t, k: int):
    """k-fold composition: (phi1^k(t), product of weights along the orbit).

    The weight product multiplies phi1'(phi1^j(t)) for j = 0..k-1, so the
    pair realizes the k-step change of variables in one pass.  k = 0 returns
    (t, 1).
    """
    if k < 0:
        raise InvalidParameterError("k must be nonnegative", code="spec")
    arr = np.asarray(t, dtype=float)
    scalar = arr.ndim == 0
    value = np.atleast_1d(arr).astype(float)
    weight = np.ones_like(value)
    for j in range(k):
        try:
            model._check_domain(value)
        except CacheRangeError as exc:
            raise CacheRangeError(f"iterate {j} escapes the ladder domain: {exc}") from exc
        num = zeta_half_sq(value, model.cache.policy)
        if model.shift != 0.0:
            lg = np.log(value)
            num = num - model.shift * (lg - 1.0) / (lg * lg)
        nxt = phi1(model, value)
        weight = weight * num / (np.log(nxt) + C_SLOPE)
        value = nxt
    if scalar:
        return float(value[0]), float(weight[0])
    return value, weight


def reverse_iterates(model: LadderModel, L: float, U: float, k: int) -> IntervalTower:
    """Interval tower: level r is the preimage of level r-1 under phi1."""
    if k < 0:
        raise InvalidParameterError("k must be nonnegative", code="spec")
    if not (U > 0):
        raise InvalidParameterError("U must be positive", code="width")
    levels = [(float(L), float(U))]
    violations = []
    residuals = [0.0]
    for r in range(1, k + 1):
        prev_lo, prev_w = levels[-1]
        try:
            lo = phi1_inverse(model, prev_lo)
            hi = phi1_inverse(model, prev_lo + prev_w)
        except (ImageRangeError, CacheRangeError) as exc:
            raise CacheRangeError(f"tower level {r} escapes the cached range: {exc}") from exc
        if hi <= lo:
            raise InvalidParameterError(f"tower level {r} collapsed to zero width", code="spec")
        levels.append((lo, hi - lo))
        residuals.append(abs(phi1(model, lo) - prev_lo))
        if lo < prev_lo:
            violations.append(r)
    return IntervalTower(
        base=levels[0],
        levels=tuple(levels),
        ordering_violations=tuple(violations),
        roundtrip_residuals=tuple(residuals),
    )
