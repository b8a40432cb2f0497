"""Oscillation-aware quadrature and the checkpointed accumulator J(T).

Two layers live here.  ``integrate`` is a general adaptive panel integrator
(Gauss-Legendre per panel, split while the half-panel estimates disagree)
used for pulse means, chain factor integrals, and verification oracles.
``IntegralCache`` persists checkpoints of

    J(T) = integral of Z(t)^2 from 0 to T,

built with a fixed composite rule so a rebuild with the same inputs is
bit-identical.  ``j_at`` evaluates J between checkpoints by integrating a
short tail from the nearest lower checkpoint rather than interpolating, so
J stays monotone, which the height-map inversion in the ladder module
relies on.

Cache files are binary, little-endian: magic ``ZLJ1``, a u32 version, t0 and
step as f64, the checkpoint count as u64, a 32-byte policy digest, then the
J values as f64.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CacheFormatError,
    CacheRangeError,
    InvalidParameterError,
    NonFiniteSampleError,
)
from .special import DEFAULT_POLICY, EvalPolicy, zeta_half_sq

__all__ = [
    "QuadratureSpec",
    "QuadResult",
    "IntegralCache",
    "integrate",
    "build_cache",
    "j_at",
    "write_cache",
    "load_cache",
    "DEFAULT_QUAD_SPEC",
]

_MAGIC = b"ZLJ1"
_VERSION = 1
_HEADER = struct.Struct("<4sIddQ32s")

# Fixed composite rule for cache panels and j_at tails: 4 subpanels of
# Gauss-Legendre 12 per checkpoint step, i.e. 48 samples per height unit.
# The Z^2 oscillation near the top of the default range (2pi/ln t ~ 0.61 at
# t = 3e4) is then sampled ~29 times per period, against the 20 required.
_TAIL_SUBPANELS = 4
_GL12_X, _GL12_W = np.polynomial.legendre.leggauss(12)
_GL48_X, _GL48_W = np.polynomial.legendre.leggauss(48)
_MAX_ACTIVE_PANELS = 1 << 16


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and limits for the adaptive integrator."""

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 30
    min_panel_width: float = 1e-9

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise InvalidParameterError("tolerances must be positive", code="quad-spec")
        if self.max_subdivisions < 1:
            raise InvalidParameterError("max_subdivisions must be >= 1", code="quad-spec")
        if not (self.min_panel_width > 0):
            raise InvalidParameterError("min_panel_width must be positive", code="quad-spec")


DEFAULT_QUAD_SPEC = QuadratureSpec()


class QuadResult(float):
    """A float that also records whether the tolerance target was met."""

    converged: bool
    subdivisions: int

    def __new__(cls, value: float, converged: bool = True, subdivisions: int = 0):
        obj = super().__new__(cls, value)
        obj.converged = converged
        obj.subdivisions = subdivisions
        return obj


def _eval_vectorized(fn, x: np.ndarray) -> np.ndarray:
    vals = np.asarray(fn(x), dtype=float)
    if vals.shape != x.shape:
        vals = np.broadcast_to(vals, x.shape).astype(float)
    if not np.all(np.isfinite(vals)):
        bad = float(x[np.nonzero(~np.isfinite(vals))[0][0]])
        raise NonFiniteSampleError(f"integrand is not finite at t = {bad!r}", point=bad)
    return vals


def _gl_panels(fn, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Gauss-Legendre 48 estimates for a batch of panels, one fn call."""
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = mid[:, None] + half[:, None] * _GL48_X[None, :]
    vals = _eval_vectorized(fn, nodes.ravel()).reshape(nodes.shape)
    return (vals @ _GL48_W) * half


def integrate(fn, a: float, b: float, spec: QuadratureSpec = DEFAULT_QUAD_SPEC) -> QuadResult:
    """Adaptive estimate of the integral of fn over [a, b].

    ``fn`` must accept a float ndarray of sample points and return values of
    the same shape (plain scalar formulas broadcast fine).  Panels split
    while a panel's estimate disagrees with the sum over its halves by more
    than its share of the tolerance budget; panels that hit the subdivision
    or width limit are kept and the result is flagged unconverged.
    """
    a = float(a)
    b = float(b)
    if not (np.isfinite(a) and np.isfinite(b)):
        raise InvalidParameterError("integration endpoints must be finite", code="quad-spec")
    if a > b:
        raise InvalidParameterError(f"need a <= b, got [{a}, {b}]", code="quad-spec")
    if a == b:
        return QuadResult(0.0, converged=True, subdivisions=0)

    width = b - a
    scale = abs(float(_gl_panels(fn, np.array([a]), np.array([b]))[0]))
    budget = max(spec.abs_tol, spec.rel_tol * max(scale, spec.abs_tol))

    total = 0.0
    converged = True
    depth_used = 0
    lo = np.array([a])
    hi = np.array([b])
    parent = _gl_panels(fn, lo, hi)
    for depth in range(spec.max_subdivisions + 1):
        mid = 0.5 * (lo + hi)
        left = _gl_panels(fn, lo, mid)
        right = _gl_panels(fn, mid, hi)
        refined = left + right
        err = np.abs(refined - parent)
        ok = err <= budget * (hi - lo) / width
        at_limit = (depth == spec.max_subdivisions) | ((hi - lo) < 2.0 * spec.min_panel_width)
        if lo.size > _MAX_ACTIVE_PANELS:
            # runaway refinement; accept everything left and flag
            at_limit = np.ones_like(at_limit)
        accept = ok | at_limit
        if np.any(accept):
            total += float(np.sum(refined[accept]))
            depth_used = max(depth_used, depth)
            if np.any(at_limit & ~ok):
                converged = False
        keep = ~accept
        if not np.any(keep):
            break
        lo = np.concatenate([lo[keep], mid[keep]])
        hi = np.concatenate([mid[keep], hi[keep]])
        parent = np.concatenate([left[keep], right[keep]])
    return QuadResult(total, converged=converged, subdivisions=depth_used)


@dataclass(frozen=True)
class IntegralCache:
    """Checkpoints of J(T) at uniform spacing, plus the policy that built them."""

    t0: float
    step: float
    values: np.ndarray = field(repr=False)
    policy: EvalPolicy = DEFAULT_POLICY

    def __post_init__(self):
        if self.values.ndim != 1 or self.values.size < 2:
            raise InvalidParameterError("cache needs at least two checkpoints", code="quad-spec")
        if self.values[0] != 0.0 and self.t0 == 0.0:
            raise InvalidParameterError("J must vanish at T = 0", code="quad-spec")
        if np.any(np.diff(self.values) < 0):
            raise InvalidParameterError("J checkpoints must be nondecreasing", code="quad-spec")

    @property
    def top(self) -> float:
        return self.t0 + (self.values.size - 1) * self.step

    def checkpoints(self) -> np.ndarray:
        return self.t0 + self.step * np.arange(self.values.size)

    def policy_digest(self) -> bytes:
        return hashlib.sha256(self.policy.digest_payload().encode()).digest()

    def to_bytes(self) -> bytes:
        header = _HEADER.pack(
            _MAGIC, _VERSION, self.t0, self.step, self.values.size, self.policy_digest()
        )
        return header + self.values.astype("<f8").tobytes()

    def content_digest(self) -> str:
        """sha256 over the serialized form; equals the digest of a written file."""
        return hashlib.sha256(self.to_bytes()).hexdigest()


def _tail_nodes(lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Composite 4 x GL12 nodes and weights for tails [lo_i, hi_i]."""
    edges = np.linspace(0.0, 1.0, _TAIL_SUBPANELS + 1)
    starts = edges[:-1]
    width = (hi - lo) / _TAIL_SUBPANELS
    # offsets within [0, 1) for every (subpanel, node) pair
    offs = (starts[:, None] + 0.5 * (_GL12_X[None, :] + 1.0) / _TAIL_SUBPANELS).ravel()
    nodes = lo[:, None] + (hi - lo)[:, None] * offs[None, :]
    weights = np.tile(0.5 * _GL12_W, _TAIL_SUBPANELS)
    return nodes, weights[None, :] * width[:, None]


def _tail_integrals(lo: np.ndarray, hi: np.ndarray, policy: EvalPolicy) -> np.ndarray:
    nodes, weights = _tail_nodes(lo, hi)
    z2 = zeta_half_sq(nodes.ravel(), policy).reshape(nodes.shape)
    return np.sum(z2 * weights, axis=1)


def build_cache(
    T_max: float,
    step: float = 1.0,
    policy: EvalPolicy = DEFAULT_POLICY,
    spec: QuadratureSpec = DEFAULT_QUAD_SPEC,
) -> IntegralCache:
    """Accumulate J checkpoints on [0, T_max] at the given spacing.

    Uses the same fixed composite rule as the j_at tails on every panel, so
    rebuilding with identical arguments yields an identical cache.  ``spec``
    bounds the acceptable panel self-consistency: each panel is re-estimated
    at double resolution and a disagreement beyond the tolerances is an
    error (it would poison every later checkpoint).
    """
    if not (T_max > 0):
        raise InvalidParameterError("T_max must be positive", code="quad-spec")
    if not (step > 0):
        raise InvalidParameterError("step must be positive", code="quad-spec")
    count = int(np.floor(T_max / step)) + 1
    edges = step * np.arange(count)
    lo, hi = edges[:-1], edges[1:]
    increments = np.empty(count - 1)
    checks = np.empty(count - 1)
    block = 256
    for start in range(0, count - 1, block):
        sl = slice(start, min(start + block, count - 1))
        increments[sl] = _tail_integrals(lo[sl], hi[sl], policy)
        mids = 0.5 * (lo[sl] + hi[sl])
        checks[sl] = _tail_integrals(lo[sl], mids, policy) + _tail_integrals(mids, hi[sl], policy)
    drift = np.abs(increments - checks)
    tol = np.maximum(spec.abs_tol * 100.0, spec.rel_tol * np.abs(checks))
    if np.any(drift > tol):
        i = int(np.argmax(drift - tol))
        raise NonFiniteSampleError(
            f"panel [{lo[i]}, {hi[i]}] failed self-consistency: drift {drift[i]:.3e}",
            point=float(lo[i]),
        )
    values = np.concatenate([[0.0], np.cumsum(increments)])
    return IntegralCache(t0=0.0, step=step, values=values, policy=policy)


def j_at(cache: IntegralCache, T):
    """J(T) anywhere in the cached range: checkpoint plus integrated tail."""
    arr = np.asarray(T, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if np.any(arr < cache.t0) or np.any(arr > cache.top):
        bad = float(arr[(arr < cache.t0) | (arr > cache.top)][0])
        raise CacheRangeError(f"T = {bad!r} outside cached range [{cache.t0}, {cache.top}]")
    idx = np.floor((arr - cache.t0) / cache.step).astype(np.int64)
    idx = np.minimum(idx, cache.values.size - 1)
    base_t = cache.t0 + idx * cache.step
    out = cache.values[idx].copy()
    tail = arr > base_t
    if np.any(tail):
        out[tail] += _tail_integrals(base_t[tail], arr[tail], cache.policy)
    return float(out[0]) if scalar else out


def write_cache(cache: IntegralCache, path) -> str:
    """Serialize to the versioned binary format; returns the file's sha256."""
    payload = cache.to_bytes()
    with open(path, "wb") as fh:
        fh.write(payload)
    return hashlib.sha256(payload).hexdigest()


def load_cache(path, policy: EvalPolicy = DEFAULT_POLICY) -> IntegralCache:
    """Read a cache file; the supplied policy must match the stored digest."""
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < _HEADER.size:
        raise CacheFormatError("cache file truncated before header")
    magic, version, t0, step, count, digest = _HEADER.unpack_from(raw)
    if magic != _MAGIC:
        raise CacheFormatError(f"bad magic {magic!r}")
    if version != _VERSION:
        raise CacheFormatError(f"unsupported cache version {version}")
    expect = hashlib.sha256(policy.digest_payload().encode()).digest()
    if digest != expect:
        raise CacheFormatError("cache was built under a different evaluation policy")
    body = raw[_HEADER.size:]
    if len(body) != 8 * count:
        raise CacheFormatError(f"expected {count} checkpoints, payload holds {len(body) // 8}")
    values = np.frombuffer(body, dtype="<f8").astype(float)
    return IntegralCache(t0=t0, step=step, values=values, policy=policy)
