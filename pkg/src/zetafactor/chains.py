"""Exchange-point chains and the base factorization checks.

A chain attaches a pulse f on [L, L + U] to the interval tower of depth k:
on the level-k interval the two mean-value equations

    f(phi1^k(d)) W(d) = N / U^k      with  N = integral of f(phi1^k(t)) W(t)
    W(e)              = D / U^k      with  D = integral of W(t)

are solved for the smallest roots d and e (U^k is the level-k width).  The
ladder orbits of d and e are the exchange points:

    alpha_r = phi1^(k-r)(d),  r = 0..k      (alpha_0 lands inside [L, L+U])
    beta_r  = phi1^(k-r)(e),  r = 1..k

The weight W comes in two flavors:

* ``exact``  - the closed-form derivative product of the ladder, which makes
  N equal the pulse integral and D equal U to quadrature accuracy, so the
  factor identity below is forced and its residual isolates implementation
  error;

* ``paper``  - the plain normalized squares Z^2(x)/log x along the orbit,
  the form the factorization formula is printed with; its residual measures
  the asymptotic 1 + O(log log L / log L) factor instead.

Verified identity (power pulse):

    product over r of |zeta(1/2 + i alpha_r)|^2 / |zeta(1/2 + i beta_r)|^2
        ~ (1/(Delta+1)) (U / (alpha_0 - L))^Delta,

with the right side always the exact mean over the pulse value at alpha_0.
The beta chain never sees the pulse, so it is exponent-independent by
construction.  Reports carry the residual |lhs/rhs - 1| next to the
theoretical comparison band log log L / log L.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Literal, Union

import numpy as np

from .errors import BracketError, DivisionGuardError, InvalidParameterError
from .ladder import C_SLOPE, IntervalTower, LadderModel, phi1, reverse_iterates
from .pulses import AdditivePulse, PowerPulse, eval_additive, eval_power
from .quad import DEFAULT_QUAD_SPEC, QuadratureSpec, integrate
from .special import zeta_half_sq

__all__ = [
    "K0_DEFAULT",
    "BAND_MULTIPLIER_DEFAULT",
    "Mode",
    "FactorizationChain",
    "VerificationReport",
    "band_width",
    "mean_value_point",
    "build_chain",
    "lemma1_verify",
    "component_identity_verify",
    "lemma2_verify",
]

Mode = Literal["exact", "paper"]
Pulse = Union[PowerPulse, AdditivePulse]

K0_DEFAULT = 8                  # cap on chain depth
BAND_MULTIPLIER_DEFAULT = 10.0  # residual <= C * band is the report's verdict
_SCAN_GRID = 4096
_SCAN_GRID_MAX = 2 ** 20
_ZETA_SQ_FLOOR = 1e-300


def band_width(L: float) -> float:
    """The comparison band log log L / log L for the asymptotic residuals."""
    return math.log(math.log(L)) / math.log(L)


def _first_root_on_grid(xs: np.ndarray, diffs: np.ndarray, refine, tol: float):
    """Smallest root of a sampled function: bisect the first sign change.

    ``refine(x)`` re-evaluates the difference at a single point.  Returns
    None when the samples show no exact hit and no sign change.
    """
    hits = np.nonzero(diffs == 0.0)[0]
    first_hit = int(hits[0]) if hits.size else None
    sign_change = np.nonzero(diffs[:-1] * diffs[1:] < 0.0)[0]
    if sign_change.size == 0 or (first_hit is not None and first_hit <= sign_change[0]):
        return float(xs[first_hit]) if first_hit is not None else None
    i = int(sign_change[0])
    lo, hi = float(xs[i]), float(xs[i + 1])
    f_lo = float(diffs[i])
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break  # interval is at float resolution
        f_mid = float(refine(mid))
        if f_mid == 0.0:
            return mid
        if f_lo * f_mid < 0.0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)


def mean_value_point(
    g: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    target: float,
    grid: int = _SCAN_GRID,
    grid_max: int = _SCAN_GRID_MAX,
) -> float:
    """Smallest xi in (a, b) with g(xi) = target, to 1e-10 (b - a).

    Scans interior grid points for a sign change of g - target and bisects
    the first bracket.  Exact grid hits win outright, so a constant g equal
    to the target returns the smallest interior grid point.  If the scan
    finds no bracket the grid is doubled up to ``grid_max`` before giving
    up with the observed extrema.
    """
    if not (a < b):
        raise InvalidParameterError(f"need a < b, got [{a}, {b}]", code="quad-spec")
    target = float(target)
    tol = 1e-10 * (b - a)

    def refine(x: float) -> float:
        return float(np.asarray(g(np.array([x])), dtype=float)[0]) - target

    n = grid
    g_min = math.inf
    g_max = -math.inf
    while n <= grid_max:
        xs = np.linspace(a, b, n + 2)[1:-1]
        diffs = np.asarray(g(xs), dtype=float) - target
        g_min = min(g_min, float(diffs.min()) + target)
        g_max = max(g_max, float(diffs.max()) + target)
        root = _first_root_on_grid(xs, diffs, refine, tol)
        if root is not None:
            return root
        n *= 2
    raise BracketError(
        f"no bracket for target {target!r} on ({a}, {b}); "
        f"scanned range [{g_min!r}, {g_max!r}]",
        lo=g_min,
        hi=g_max,
    )


@dataclass(frozen=True)
class FactorizationChain:
    """Exchange points of one pulse at one depth, plus build diagnostics.

    ``alpha`` is indexed 0..k (alpha[0] = alpha_0 in the base interval);
    ``beta`` is indexed so beta[r-1] = beta_r for r = 1..k.  ``weight_ratio``
    is W(d)/W(e) for the weight mode the chain was built with, and the
    ``*_zeta_sq`` tuples carry |zeta|^2 at the chain points so reports never
    need the ladder again.
    """

    pulse: Pulse
    k: int
    mode: Mode
    tower: IntervalTower
    alpha: tuple[float, ...]
    beta: tuple[float, ...]
    d_point: float
    e_point: float
    weight_ratio: float
    n_integral: float
    d_integral: float
    alpha_zeta_sq: tuple[float, ...] = field(repr=False)
    beta_zeta_sq: tuple[float, ...] = field(repr=False)

    def __post_init__(self):
        if not (1 <= self.k <= K0_DEFAULT):
            raise InvalidParameterError(f"depth k = {self.k} outside [1, {K0_DEFAULT}]", code="spec")
        if len(self.alpha) != self.k + 1 or len(self.beta) != self.k:
            raise InvalidParameterError("chain length mismatch", code="spec")
        for r, (pt, kind) in enumerate(
            [(x, "alpha") for x in self.alpha] + [(x, "beta") for x in self.beta]
        ):
            level = r if r <= self.k else r - self.k  # beta_r sits at level r
            lo, hi = self.tower.interval(level)
            margin = 1e-12 * (hi - lo)
            if not (lo + margin < pt < hi - margin):
                raise InvalidParameterError(
                    f"{kind} point {pt!r} not strictly inside level {level} "
                    f"interval ({lo!r}, {hi!r})",
                    code="spec",
                )

    @property
    def zeta_product(self) -> float:
        """Product over r = 1..k of |zeta|^2(alpha_r) / |zeta|^2(beta_r)."""
        num = np.array(self.alpha_zeta_sq[1:])
        den = np.array(self.beta_zeta_sq)
        if np.any(den < _ZETA_SQ_FLOOR):
            raise DivisionGuardError("a beta factor fell below the safe denominator floor")
        return float(np.prod(num / den))

    @property
    def factor_product(self) -> float:
        """The product the chain's own mode verifies: exact weights or squares."""
        return self.weight_ratio if self.mode == "exact" else self.zeta_product


@dataclass(frozen=True)
class VerificationReport:
    """One identity check: lhs vs rhs with residual and comparison band."""

    identity: str
    mode: Mode
    lhs: float
    rhs: float
    residual: float
    theoretical_band: float
    band_multiplier: float
    within_band: bool
    ratio: float
    zeta_product: float
    weight_product: float
    params: dict

    def to_json_dict(self) -> dict:
        return {
            "identity": self.identity,
            "mode": self.mode,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
            "band": self.theoretical_band,
            "band_multiplier": self.band_multiplier,
            "within_band": self.within_band,
            "ratio": self.ratio,
            "zeta_product": self.zeta_product,
            "weight_product": self.weight_product,
            "params": dict(self.params),
        }


def _pulse_eval(pulse: Pulse, u: np.ndarray) -> np.ndarray:
    if isinstance(pulse, PowerPulse):
        return eval_power(pulse, u)
    return eval_additive(pulse, u)


def _chain_weights(model: LadderModel, t: np.ndarray, k: int, mode: Mode):
    """One ladder pass: (phi1^k(t), weight product along the orbit).

    exact mode multiplies the closed-form derivative phi1'(phi1^j(t));
    paper mode multiplies the normalized squares Z^2(x)/log x at the same
    orbit points.
    """
    value = np.array(t, dtype=float, copy=True)
    weight = np.ones_like(value)
    for _ in range(k):
        z2 = zeta_half_sq(value, model.cache.policy)
        if model.shift != 0.0 and mode == "exact":
            lg = np.log(value)
            z2 = z2 - model.shift * (lg - 1.0) / (lg * lg)
        if mode == "paper":
            weight = weight * z2 / np.log(value)
            value = phi1(model, value)
        else:
            nxt = phi1(model, value)
            weight = weight * z2 / (np.log(nxt) + C_SLOPE)
            value = nxt
    return value, weight


def build_chain(
    model: LadderModel,
    pulse: Pulse,
    k: int,
    mode: Mode = "paper",
    spec: QuadratureSpec = DEFAULT_QUAD_SPEC,
) -> FactorizationChain:
    """Construct the exchange points of ``pulse`` at depth ``k``.

    Smallest-root tie-break throughout, so two builds with equal inputs are
    identical; in particular the beta chain of two pulses sharing (L, U, k,
    mode) is the same float for float.
    """
    if mode not in ("exact", "paper"):
        raise InvalidParameterError(f"unknown mode {mode!r}", code="mode")
    if k < 1:
        raise InvalidParameterError("chains need depth k >= 1", code="spec")
    L, U = pulse.L, pulse.U
    tower = reverse_iterates(model, L, U, k)
    a_k, b_k = tower.interval(k)
    width_k = b_k - a_k

    def weight_fn(t: np.ndarray) -> np.ndarray:
        return _chain_weights(model, t, k, mode)[1]

    def integrand_fn(t: np.ndarray) -> np.ndarray:
        value, weight = _chain_weights(model, t, k, mode)
        # the k-fold image overshoots [L, L+U] by at most the inverse
        # tolerance; clamp before handing to the pulse
        return _pulse_eval(pulse, np.clip(value, L, L + U)) * weight

    n_integral = float(integrate(integrand_fn, a_k, b_k, spec))
    d_integral = float(integrate(weight_fn, a_k, b_k, spec))

    # one shared ladder pass feeds both root scans
    xs = np.linspace(a_k, b_k, _SCAN_GRID + 2)[1:-1]
    values, weights = _chain_weights(model, xs, k, mode)
    f_vals = _pulse_eval(pulse, np.clip(values, L, L + U)) * weights
    tol = 1e-10 * width_k
    target_d = n_integral / width_k
    target_e = d_integral / width_k
    d_point = _first_root_on_grid(
        xs, f_vals - target_d, lambda x: float(integrand_fn(np.array([x]))[0]) - target_d, tol
    )
    if d_point is None:
        d_point = mean_value_point(integrand_fn, a_k, b_k, target_d, grid=2 * _SCAN_GRID)
    e_point = _first_root_on_grid(
        xs, weights - target_e, lambda x: float(weight_fn(np.array([x]))[0]) - target_e, tol
    )
    if e_point is None:
        e_point = mean_value_point(weight_fn, a_k, b_k, target_e, grid=2 * _SCAN_GRID)

    def orbit(x: float) -> list[float]:
        pts = [x]
        for _ in range(k):
            pts.append(float(phi1(model, pts[-1])))
        return pts  # pts[j] = phi1^j(x); alpha_r = pts[k - r]

    alpha_orbit = orbit(d_point)
    beta_orbit = orbit(e_point)
    alpha = tuple(alpha_orbit[k - r] for r in range(k + 1))
    beta = tuple(beta_orbit[k - r] for r in range(1, k + 1))

    w_d = float(weight_fn(np.array([d_point]))[0])
    w_e = float(weight_fn(np.array([e_point]))[0])
    if w_e < _ZETA_SQ_FLOOR:
        raise DivisionGuardError("weight at the beta root is below the safe floor")

    policy = model.cache.policy
    return FactorizationChain(
        pulse=pulse,
        k=k,
        mode=mode,
        tower=tower,
        alpha=alpha,
        beta=beta,
        d_point=d_point,
        e_point=e_point,
        weight_ratio=w_d / w_e,
        n_integral=n_integral,
        d_integral=d_integral,
        alpha_zeta_sq=tuple(float(zeta_half_sq(x, policy)) for x in alpha),
        beta_zeta_sq=tuple(float(zeta_half_sq(x, policy)) for x in beta),
    )


def _make_report(
    identity: str,
    chain: FactorizationChain,
    lhs: float,
    rhs: float,
    band_multiplier: float,
    params: dict,
) -> VerificationReport:
    band = band_width(chain.pulse.L)
    ratio = lhs / rhs
    residual = abs(ratio - 1.0)
    return VerificationReport(
        identity=identity,
        mode=chain.mode,
        lhs=lhs,
        rhs=rhs,
        residual=residual,
        theoretical_band=band,
        band_multiplier=band_multiplier,
        within_band=residual <= band_multiplier * band,
        ratio=ratio,
        zeta_product=chain.zeta_product,
        weight_product=chain.weight_ratio,
        params=params,
    )


def _base_params(chain: FactorizationChain) -> dict:
    pulse = chain.pulse
    params = {
        "L": pulse.L,
        "U": pulse.U,
        "k": chain.k,
        "alpha0": chain.alpha[0],
        "tower_ordering_violations": list(chain.tower.ordering_violations),
    }
    if isinstance(pulse, PowerPulse):
        params["delta"] = pulse.delta
    else:
        params["deltas"] = list(pulse.deltas)
    return params


def lemma1_verify(
    chain: FactorizationChain,
    band_multiplier: float = BAND_MULTIPLIER_DEFAULT,
) -> VerificationReport:
    """Check the power-pulse factorization against mean(f) / f(alpha_0).

    In paper mode the lhs is the printed product of squared zeta moduli and
    the residual measures the asymptotic factor; in exact mode the lhs is
    the exact-weight product, which the construction forces to the rhs up to
    quadrature error (the zeta product is still carried in the report).
    """
    pulse = chain.pulse
    if not isinstance(pulse, PowerPulse):
        raise InvalidParameterError("this identity needs a power-pulse chain", code="spec")
    rhs = pulse.exact_mean() / eval_power(pulse, chain.alpha[0])
    return _make_report(
        "lemma1", chain, chain.factor_product, rhs, band_multiplier, _base_params(chain)
    )


def component_identity_verify(
    chain: FactorizationChain,
    band_multiplier: float = BAND_MULTIPLIER_DEFAULT,
) -> VerificationReport:
    """Same identity rearranged: (Delta+1)(alpha_0 - L)^Delta P vs U^Delta.

    The exponent on (alpha_0 - L) matches the pulse exponent; this is the
    per-component shape that decompositions consume.
    """
    pulse = chain.pulse
    if not isinstance(pulse, PowerPulse):
        raise InvalidParameterError("this identity needs a power-pulse chain", code="spec")
    lhs = (pulse.delta + 1.0) * (chain.alpha[0] - pulse.L) ** pulse.delta * chain.factor_product
    rhs = pulse.U ** pulse.delta
    return _make_report("component", chain, lhs, rhs, band_multiplier, _base_params(chain))


def lemma2_verify(
    chain: FactorizationChain,
    band_multiplier: float = BAND_MULTIPLIER_DEFAULT,
) -> VerificationReport:
    """Additive-pulse factorization: product vs mean(f) / f(alpha_0).

    With a single exponent this coincides with the power-pulse check, term
    for term.
    """
    pulse = chain.pulse
    if not isinstance(pulse, AdditivePulse):
        raise InvalidParameterError("this identity needs an additive-pulse chain", code="spec")
    rhs = pulse.exact_mean() / eval_additive(pulse, chain.alpha[0])
    return _make_report(
        "lemma2", chain, chain.factor_product, rhs, band_multiplier, _base_params(chain)
    )
