"""Decomposition of one oscillating-factor product into weighted others.

Given a partition Delta = Delta_1 + ... + Delta_n (nonincreasing, n >= 2),
the main chain at exponent Delta and depth k decomposes over the n basic
chains at exponents Delta_l and depths k_l, all sharing one interval
[L, L + U] and one ladder:

    main product ~ [1/(Delta+1) prod_l (Delta_l+1)]                (generating)
                 x [prod_l (alpha_0^l - L)^(Delta_l) / (alpha_0 - L)^Delta]
                                                                   (control)
                 x prod_l basic product_l                          (basic set)

The right side is assembled exactly as that three-way product, so a report's
``rhs`` is bit-consistent with its stored parts, and the residual is the
algebraic quotient of the constituent per-chain residuals.  The additive
companion replaces products of means by sums:

    tilde product ~ [sum_l (alpha_0^l - L)^(Delta_l) basic_l]
                    / [sum_l (alpha_tilde_0 - L)^(Delta_l)],

the form obtained by eliminating the per-term means between the additive
factorization and the per-component identity (the bare printed display
leaves the component index free, so the eliminated form is the one
implemented).

Extremal layouts (every depth 1; deep main over depth-1 basics; depth-1 main
over deep basics; everything deep) ship as presets.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import math
from dataclasses import dataclass, field
from typing import Optional

from .chains import (
    BAND_MULTIPLIER_DEFAULT,
    FactorizationChain,
    K0_DEFAULT,
    Mode,
    VerificationReport,
    band_width,
    build_chain,
    component_identity_verify,
    lemma1_verify,
    lemma2_verify,
)
from .errors import InvalidParameterError, ZetaFactorError
from .ladder import LadderModel
from .pulses import AdditivePulse, PartitionSpec, PowerPulse
from .quad import DEFAULT_QUAD_SPEC, QuadratureSpec

__all__ = [
    "DecompositionSpec",
    "DecompositionReport",
    "ExtremalPreset",
    "theorem1_decompose",
    "corollary_k1",
    "extremal_presets",
    "theorem2_verify",
]


@dataclass(frozen=True)
class DecompositionSpec:
    """Layout of one decomposition: partition, depths, interval, mode."""

    partition: PartitionSpec
    k: int
    k_list: tuple[int, ...]
    L: float
    U: float
    mode: Mode = "paper"
    k0: int = K0_DEFAULT

    def __post_init__(self):
        object.__setattr__(self, "k_list", tuple(int(x) for x in self.k_list))
        if self.mode not in ("exact", "paper"):
            raise InvalidParameterError(f"unknown mode {self.mode!r}", code="mode")
        if not (1 <= self.k <= self.k0):
            raise InvalidParameterError(f"k = {self.k} outside [1, {self.k0}]", code="spec")
        if len(self.k_list) != self.partition.n:
            raise InvalidParameterError(
                f"need one depth per part: {len(self.k_list)} depths for "
                f"{self.partition.n} parts",
                code="spec",
            )
        if any(not (1 <= kl <= self.k0) for kl in self.k_list):
            raise InvalidParameterError(f"every k_l must lie in [1, {self.k0}]", code="spec")

    def echo(self) -> dict:
        return {
            "L": self.L,
            "U": self.U,
            "delta": self.partition.delta,
            "partition": list(self.partition.parts),
            "k": self.k,
            "k_list": list(self.k_list),
        }


@dataclass(frozen=True)
class DecompositionReport:
    """Assembled decomposition check with its four-product breakdown.

    ``generating_factor`` and ``control_factor`` are None for the additive
    companion, whose right side is a quotient of sums instead.  ``chains``
    carries the underlying constructions for follow-up measurements and is
    not serialized.
    """

    identity: str
    mode: Mode
    main_system: float
    basic_systems: tuple[float, ...]
    generating_factor: Optional[float]
    control_factor: Optional[float]
    lhs: float
    rhs: float
    residual: float
    theoretical_band: float
    band_multiplier: float
    within_band: bool
    ratio: float
    components: tuple[VerificationReport, ...]
    params: dict
    cache_digest: str
    beta_sharing_max_dev: Optional[float] = None
    chains: Optional[tuple] = field(default=None, repr=False, compare=False)

    def report_key(self) -> str:
        """Content hash of (layout, cache digest, mode) for report filing."""
        blob = json.dumps(
            {"params": self.params, "cache": self.cache_digest, "mode": self.mode},
            sort_keys=True,
        ).encode()
        return hashlib.sha256(blob).hexdigest()

    def to_json_dict(self) -> dict:
        return {
            "identity": self.identity,
            "spec": dict(self.params),
            "mode": self.mode,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
            "band": self.theoretical_band,
            "band_multiplier": self.band_multiplier,
            "within_band": self.within_band,
            "ratio": self.ratio,
            "main_system": self.main_system,
            "basic_systems": list(self.basic_systems),
            "generating_factor": self.generating_factor,
            "control_factor": self.control_factor,
            "beta_sharing_max_dev": self.beta_sharing_max_dev,
            "components": [c.to_json_dict() for c in self.components],
            "cache_digest": self.cache_digest,
            "report_key": self.report_key(),
        }


def _finish(
    identity: str,
    mode: Mode,
    L: float,
    lhs: float,
    rhs: float,
    band_multiplier: float,
    **kwargs,
) -> DecompositionReport:
    band = band_width(L)
    ratio = lhs / rhs
    residual = abs(ratio - 1.0)
    return DecompositionReport(
        identity=identity,
        mode=mode,
        lhs=lhs,
        rhs=rhs,
        residual=residual,
        theoretical_band=band,
        band_multiplier=band_multiplier,
        within_band=residual <= band_multiplier * band,
        ratio=ratio,
        **kwargs,
    )


def theorem1_decompose(
    model: LadderModel,
    spec: DecompositionSpec,
    quad_spec: QuadratureSpec = DEFAULT_QUAD_SPEC,
    band_multiplier: float = BAND_MULTIPLIER_DEFAULT,
) -> DecompositionReport:
    """Decompose the main chain over the partition's basic chains.

    All chains share the model, interval, and quadrature settings.  Chain
    construction failures are re-raised naming the failing component.
    """
    part = spec.partition
    try:
        main_pulse = PowerPulse(spec.L, spec.U, part.delta)
        main_chain = build_chain(model, main_pulse, spec.k, spec.mode, quad_spec)
    except ZetaFactorError as exc:
        raise type(exc)(f"main chain (delta={part.delta}, k={spec.k}): {exc}") from exc
    basics: list[FactorizationChain] = []
    for l, (d_l, k_l) in enumerate(zip(part.parts, spec.k_list), start=1):
        try:
            basics.append(build_chain(model, PowerPulse(spec.L, spec.U, d_l), k_l, spec.mode, quad_spec))
        except ZetaFactorError as exc:
            raise type(exc)(f"basic chain {l} (delta={d_l}, k={k_l}): {exc}") from exc

    main_system = main_chain.factor_product
    basic_systems = tuple(c.factor_product for c in basics)
    generating = (1.0 / (part.delta + 1.0)) * math.prod(d + 1.0 for d in part.parts)
    control = math.prod(
        (c.alpha[0] - spec.L) ** c.pulse.delta for c in basics
    ) / (main_chain.alpha[0] - spec.L) ** part.delta
    rhs = generating * control * math.prod(basic_systems)
    components = (lemma1_verify(main_chain, band_multiplier),) + tuple(
        component_identity_verify(c, band_multiplier) for c in basics
    )
    return _finish(
        "theorem1",
        spec.mode,
        spec.L,
        main_system,
        rhs,
        band_multiplier,
        main_system=main_system,
        basic_systems=basic_systems,
        generating_factor=generating,
        control_factor=control,
        components=components,
        params=spec.echo(),
        cache_digest=model.cache.content_digest(),
        chains=(main_chain, *basics),
    )


def corollary_k1(
    model: LadderModel,
    partition: PartitionSpec,
    L: float,
    U: float,
    mode: Mode = "paper",
    quad_spec: QuadratureSpec = DEFAULT_QUAD_SPEC,
    band_multiplier: float = BAND_MULTIPLIER_DEFAULT,
) -> DecompositionReport:
    """The all-depths-one extremal case.

    At equal depth the beta construction is pulse-independent, so the main
    and basic chains should share a single beta point; the measured maximal
    deviation is reported rather than assumed.
    """
    spec = DecompositionSpec(
        partition=partition, k=1, k_list=(1,) * partition.n, L=L, U=U, mode=mode
    )
    report = theorem1_decompose(model, spec, quad_spec, band_multiplier)
    main, *basics = report.chains
    sharing = max(abs(c.beta[0] - main.beta[0]) for c in basics)
    return dataclasses.replace(report, identity="corollary", beta_sharing_max_dev=sharing)


@dataclass(frozen=True)
class ExtremalPreset:
    """A named depth layout: main depth k and one shared basic depth k_l."""

    name: str
    k: int
    k_basic: int

    def spec(
        self,
        partition: PartitionSpec,
        L: float,
        U: float,
        mode: Mode = "paper",
        k0: int = K0_DEFAULT,
    ) -> DecompositionSpec:
        return DecompositionSpec(
            partition=partition,
            k=self.k,
            k_list=(self.k_basic,) * partition.n,
            L=L,
            U=U,
            mode=mode,
            k0=k0,
        )


def extremal_presets(k0: int = 3) -> tuple[ExtremalPreset, ...]:
    """The four extremal depth layouts, parameterized by the depth cap."""
    if not (1 <= k0 <= K0_DEFAULT):
        raise InvalidParameterError(f"k0 must lie in [1, {K0_DEFAULT}]", code="spec")
    return (
        ExtremalPreset("all-depth-one", k=1, k_basic=1),
        ExtremalPreset("deep-main", k=k0, k_basic=1),
        ExtremalPreset("deep-basics", k=1, k_basic=k0),
        ExtremalPreset("uniform-deep", k=k0, k_basic=k0),
    )


def theorem2_verify(
    model: LadderModel,
    additive: AdditivePulse,
    k: int,
    k_list,
    mode: Mode = "paper",
    quad_spec: QuadratureSpec = DEFAULT_QUAD_SPEC,
    band_multiplier: float = BAND_MULTIPLIER_DEFAULT,
) -> DecompositionReport:
    """Additive companion: the sum-pulse chain against its per-term chains.

    The right side is the quotient of weighted sums described in the module
    docstring; with a single term it collapses to the ratio of two
    single-chain checks at the same exponent.
    """
    k_list = tuple(int(x) for x in k_list)
    if len(k_list) != additive.n:
        raise InvalidParameterError(
            f"need one depth per exponent: {len(k_list)} depths for {additive.n} exponents",
            code="spec",
        )
    if any(not (1 <= kl <= K0_DEFAULT) for kl in k_list):
        raise InvalidParameterError(f"every k_l must lie in [1, {K0_DEFAULT}]", code="spec")
    try:
        tilde_chain = build_chain(model, additive, k, mode, quad_spec)
    except ZetaFactorError as exc:
        raise type(exc)(f"additive chain (deltas={additive.deltas}, k={k}): {exc}") from exc
    basics: list[FactorizationChain] = []
    for l, (d_l, k_l) in enumerate(zip(additive.deltas, k_list), start=1):
        try:
            basics.append(
                build_chain(model, PowerPulse(additive.L, additive.U, d_l), k_l, mode, quad_spec)
            )
        except ZetaFactorError as exc:
            raise type(exc)(f"basic chain {l} (delta={d_l}, k={k_l}): {exc}") from exc

    L = additive.L
    lhs = tilde_chain.factor_product
    basic_systems = tuple(c.factor_product for c in basics)
    numerator = sum(
        (c.alpha[0] - L) ** d * p
        for c, d, p in zip(basics, additive.deltas, basic_systems)
    )
    denominator = sum((tilde_chain.alpha[0] - L) ** d for d in additive.deltas)
    rhs = numerator / denominator
    components = (lemma2_verify(tilde_chain, band_multiplier),) + tuple(
        component_identity_verify(c, band_multiplier) for c in basics
    )
    params = {
        "L": L,
        "U": additive.U,
        "deltas": list(additive.deltas),
        "k": k,
        "k_list": list(k_list),
    }
    return _finish(
        "theorem2",
        mode,
        L,
        lhs,
        rhs,
        band_multiplier,
        main_system=lhs,
        basic_systems=basic_systems,
        generating_factor=None,
        control_factor=None,
        components=components,
        params=params,
        cache_digest=model.cache.content_digest(),
        chains=(tilde_chain, *basics),
    )
