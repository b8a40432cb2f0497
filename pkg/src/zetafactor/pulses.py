"""Generating pulse families, their class gates, and exact means.

Two families drive the factor constructions: the power pulse

    f(t) = (t - L)^Delta  on [L, L + U],  Delta > 0,  U in (0, a], a < 1,

and the additive pulse, a sum of power terms sharing one interval with
nonincreasing exponents.  Both vanish nowhere identically, are nonnegative,
and have closed-form means:

    mean of the power pulse     = U^Delta / (Delta + 1)
    mean of the additive pulse  = sum_l U^(Delta_l) / (Delta_l + 1).

Exponents in (-1, 0) are rejected even though they are integrable, because
the pulse would be unbounded at the left endpoint; Delta = 0 is rejected as
the trivial constant.  The width cap a < 1 keeps the pulses short against
every height of interest (the deterministic-signal reading of the family).

``c0_membership`` is a grid-based gate for the admissible class: continuous,
nonnegative, somewhere positive, on a short interval above a height floor.
The continuity clause is necessarily heuristic and is documented as such.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidParameterError

__all__ = [
    "T0_DEFAULT",
    "WIDTH_CAP_DEFAULT",
    "PowerPulse",
    "AdditivePulse",
    "PartitionSpec",
    "MembershipVerdict",
    "eval_power",
    "eval_additive",
    "exact_mean_power",
    "exact_mean_additive",
    "c0_membership",
]

T0_DEFAULT = 1000.0     # height floor for pulse intervals
WIDTH_CAP_DEFAULT = 0.99


def _check_delta(delta: float):
    if -1.0 < delta < 0.0:
        raise InvalidParameterError(
            f"exponent {delta} in (-1, 0) is rejected: integrable but unbounded "
            "at the left endpoint",
            code="delta-excluded",
        )
    if delta == 0.0:
        raise InvalidParameterError("exponent 0 gives the trivial constant pulse", code="delta-zero")
    if delta <= -1.0:
        raise InvalidParameterError(f"exponent {delta} is not integrable", code="delta-negative")


def _check_interval(L: float, U: float, a: float, t_min: float):
    if not (0.0 < a < 1.0):
        raise InvalidParameterError(f"width cap a = {a} must lie in (0, 1)", code="width")
    if not (0.0 < U <= a):
        raise InvalidParameterError(f"width U = {U} must lie in (0, {a}]", code="width")
    if not (L > t_min):
        raise InvalidParameterError(f"left endpoint L = {L} must exceed {t_min}", code="height")


@dataclass(frozen=True)
class PowerPulse:
    """(t - L)^delta on [L, L + U]."""

    L: float
    U: float
    delta: float
    a: float = WIDTH_CAP_DEFAULT
    t_min: float = T0_DEFAULT

    def __post_init__(self):
        _check_delta(self.delta)
        _check_interval(self.L, self.U, self.a, self.t_min)

    @property
    def support(self) -> tuple[float, float]:
        return self.L, self.L + self.U

    def __call__(self, t):
        return eval_power(self, t)

    def exact_mean(self) -> float:
        return exact_mean_power(self)


@dataclass(frozen=True)
class AdditivePulse:
    """sum_l (t - L)^(delta_l) on [L, L + U], exponents nonincreasing."""

    L: float
    U: float
    deltas: tuple[float, ...]
    a: float = WIDTH_CAP_DEFAULT
    t_min: float = T0_DEFAULT

    def __post_init__(self):
        object.__setattr__(self, "deltas", tuple(float(d) for d in self.deltas))
        if len(self.deltas) < 1:
            raise InvalidParameterError("need at least one exponent", code="deltas-order")
        for d in self.deltas:
            if d <= 0.0:
                raise InvalidParameterError(
                    f"additive exponents must be positive, got {d}", code="delta-excluded"
                    if -1.0 < d < 0.0 else ("delta-zero" if d == 0.0 else "delta-negative"),
                )
        if any(x < y for x, y in zip(self.deltas, self.deltas[1:])):
            raise InvalidParameterError("exponents must be nonincreasing", code="deltas-order")
        _check_interval(self.L, self.U, self.a, self.t_min)

    @property
    def n(self) -> int:
        return len(self.deltas)

    @property
    def support(self) -> tuple[float, float]:
        return self.L, self.L + self.U

    def __call__(self, t):
        return eval_additive(self, t)

    def exact_mean(self) -> float:
        return exact_mean_additive(self)


@dataclass(frozen=True)
class PartitionSpec:
    """A total exponent split into n >= 2 nonincreasing positive parts."""

    delta: float
    parts: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(float(p) for p in self.parts))
        if len(self.parts) < 2:
            raise InvalidParameterError(
                "a partition needs at least two parts (the total must exceed "
                "its largest part)",
                code="partition-size",
            )
        if any(p <= 0 for p in self.parts):
            raise InvalidParameterError("partition parts must be positive", code="partition-order")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise InvalidParameterError("partition parts must be nonincreasing", code="partition-order")
        if abs(sum(self.parts) - self.delta) > 1e-12:
            raise InvalidParameterError(
                f"parts sum to {sum(self.parts)!r}, stated total is {self.delta!r}",
                code="partition-sum",
            )

    @property
    def n(self) -> int:
        return len(self.parts)


def _eval_on_support(t, lo: float, hi: float):
    arr = np.asarray(t, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if np.any(arr < lo) or np.any(arr > hi):
        bad = float(arr[(arr < lo) | (arr > hi)][0])
        raise DomainError(f"t = {bad!r} outside the pulse support [{lo}, {hi}]")
    return arr, scalar


def eval_power(p: PowerPulse, t):
    """Pulse value at t in [L, L + U]; zero at the left endpoint."""
    arr, scalar = _eval_on_support(t, *p.support)
    out = (arr - p.L) ** p.delta
    return float(out[0]) if scalar else out


def eval_additive(p: AdditivePulse, t):
    arr, scalar = _eval_on_support(t, *p.support)
    x = arr - p.L
    out = np.zeros_like(x)
    for d in p.deltas:
        out += x ** d
    return float(out[0]) if scalar else out


def exact_mean_power(p: PowerPulse) -> float:
    """Closed-form interval mean U^Delta / (Delta + 1); strictly positive."""
    return p.U ** p.delta / (p.delta + 1.0)


def exact_mean_additive(p: AdditivePulse) -> float:
    return float(sum(p.U ** d / (d + 1.0) for d in p.deltas))


@dataclass(frozen=True)
class MembershipVerdict:
    """Outcome of the admissible-class gate; empty ``failed`` means member."""

    member: bool
    failed: tuple[str, ...]
    max_jump: float
    jump_ratio: float


def c0_membership(
    f,
    T: float,
    U: float,
    grid: int = 256,
    t_min: float = T0_DEFAULT,
    width_cap: float = WIDTH_CAP_DEFAULT,
) -> MembershipVerdict:
    """Grid-based check of the admissible-class clauses on [T, T + U].

    Clauses checked, each contributing a tag to ``failed``:
      nonnegative        f >= 0 at every sample
      somewhere-positive some sample has f > 0
      height             T must exceed the configured floor
      width              U <= min(width_cap, T / log^2 T), the short-interval
                         gate
      continuity         heuristic: the largest jump between adjacent samples
                         must shrink when the grid is refined twofold (or
                         already be negligible); steep continuous functions
                         near the grid resolution can be misclassified

    ``f`` must accept an ndarray of sample points.
    """
    if grid < 16:
        raise InvalidParameterError("grid must be >= 16", code="quad-spec")
    failed = []
    lo, hi = float(T), float(T + U)
    coarse = np.linspace(lo, hi, grid)
    fine = np.linspace(lo, hi, 2 * grid - 1)
    fc = np.asarray(f(coarse), dtype=float)
    ff = np.asarray(f(fine), dtype=float)
    scale = float(np.max(np.abs(ff))) if ff.size else 0.0

    if np.any(fc < 0) or np.any(ff < 0):
        failed.append("nonnegative")
    if not (np.any(fc > 0) or np.any(ff > 0)):
        failed.append("somewhere-positive")
    if not (T > t_min):
        failed.append("height")
    if not (0 < U <= min(width_cap, T / np.log(max(T, 2.0)) ** 2)):
        failed.append("width")

    jump_coarse = float(np.max(np.abs(np.diff(fc)))) if fc.size > 1 else 0.0
    jump_fine = float(np.max(np.abs(np.diff(ff)))) if ff.size > 1 else 0.0
    negligible = jump_fine <= 1e-9 * max(scale, 1e-300)
    shrinking = jump_fine <= 0.85 * jump_coarse + 1e-12 * scale
    if not (negligible or shrinking):
        failed.append("continuity")

    ratio = jump_fine / jump_coarse if jump_coarse > 0 else 0.0
    return MembershipVerdict(
        member=not failed, failed=tuple(failed), max_jump=jump_fine, jump_ratio=ratio
    )
