"""Batch front end: cache building, single verifications, parameter sweeps.

Subcommands:

  build-cache   accumulate and write an integral cache, printing its digest
  verify        run one identity check and print its JSON report
  sweep         run a grid of checks from a JSON config into a CSV
  presets       print the extremal depth layouts

The default cache path comes from the ZETAFACTOR_CACHE environment variable
when --cache is not given.  Exit codes: 0 on success (verification within
threshold), 1 on a failed verification or computation, 2 on invalid
parameters or a malformed invocation.

Sweep configs are JSON objects mirroring SweepConfig; see the README for the
key-by-key format.  Rows are emitted in lexicographic order of their
parameter columns regardless of parallelism, and each row can be reproduced
by a single ``verify`` call with the same parameters.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .chains import BAND_MULTIPLIER_DEFAULT, build_chain, lemma1_verify, lemma2_verify
from .decompose import (
    DecompositionSpec,
    corollary_k1,
    extremal_presets,
    theorem1_decompose,
    theorem2_verify,
)
from .errors import (
    CacheFormatError,
    InvalidParameterError,
    ZetaFactorError,
)
from .ladder import LadderModel
from .pulses import AdditivePulse, PartitionSpec, PowerPulse
from .quad import build_cache, load_cache, write_cache
from .special import EvalPolicy

__all__ = ["SweepConfig", "main"]

ENV_CACHE = "ZETAFACTOR_CACHE"
EXACT_TOL_CHAIN = 1e-6
EXACT_TOL_DECOMPOSE = 1e-5
CSV_COLUMNS = [
    "L", "U", "delta", "partition", "k", "k_list", "mode",
    "lhs", "rhs", "residual", "band", "status", "error",
]
VERIFY_TARGETS = ("lemma1", "lemma2", "theorem1", "theorem2", "corollary")


@dataclass(frozen=True)
class SweepConfig:
    """A verification grid: the Cartesian product of the listed parameters.

    ``partitions`` feeds both the decomposition partitions and the additive
    exponent lists; which lists participate depends on ``verify``.  Empty
    lists produce an empty sweep (header-only CSV).
    """

    verify: str
    L_values: tuple[float, ...] = ()
    U_values: tuple[float, ...] = ()
    delta_values: tuple[float, ...] = ()
    partitions: tuple[tuple[float, ...], ...] = ()
    k_values: tuple[int, ...] = ()
    k_list_values: tuple[tuple[int, ...], ...] = ()
    modes: tuple[str, ...] = ("paper",)
    parallelism: int = 1
    band_multiplier: float = BAND_MULTIPLIER_DEFAULT
    exact_tol: float | None = None
    shift: float = 0.0
    cache: str | None = None
    output: str | None = None

    def __post_init__(self):
        if self.verify not in VERIFY_TARGETS:
            raise InvalidParameterError(f"unknown verify target {self.verify!r}", code="spec")
        if self.parallelism < 1:
            raise InvalidParameterError("parallelism must be >= 1", code="spec")
        for m in self.modes:
            if m not in ("exact", "paper"):
                raise InvalidParameterError(f"unknown mode {m!r}", code="mode")

    @classmethod
    def from_dict(cls, raw: dict) -> "SweepConfig":
        known = {f.name for f in cls.__dataclass_fields__.values()}
        unknown = set(raw) - known
        if unknown:
            raise InvalidParameterError(f"unknown sweep keys: {sorted(unknown)}", code="spec")
        kw = dict(raw)
        for key in ("L_values", "U_values", "delta_values", "modes"):
            if key in kw:
                kw[key] = tuple(kw[key])
        if "partitions" in kw:
            kw["partitions"] = tuple(tuple(float(x) for x in p) for p in kw["partitions"])
        if "k_values" in kw:
            kw["k_values"] = tuple(int(x) for x in kw["k_values"])
        if "k_list_values" in kw:
            kw["k_list_values"] = tuple(tuple(int(x) for x in v) for v in kw["k_list_values"])
        return cls(**kw)


# One task per sweep row; kept as plain dicts so they pickle cheaply.
def _sweep_tasks(config: SweepConfig) -> list[dict]:
    tasks = []
    if config.verify == "lemma1":
        for L in config.L_values:
            for U in config.U_values:
                for delta in config.delta_values:
                    for k in config.k_values:
                        for mode in config.modes:
                            tasks.append(dict(target="lemma1", L=L, U=U, delta=delta, k=k, mode=mode))
    elif config.verify == "lemma2":
        for L in config.L_values:
            for U in config.U_values:
                for parts in config.partitions:
                    for k in config.k_values:
                        for mode in config.modes:
                            tasks.append(dict(target="lemma2", L=L, U=U, deltas=parts, k=k, mode=mode))
    elif config.verify in ("theorem1", "theorem2"):
        for L in config.L_values:
            for U in config.U_values:
                for parts in config.partitions:
                    for k in config.k_values:
                        for k_list in config.k_list_values:
                            for mode in config.modes:
                                tasks.append(dict(
                                    target=config.verify, L=L, U=U, partition=parts,
                                    k=k, k_list=k_list, mode=mode,
                                ))
    else:  # corollary
        for L in config.L_values:
            for U in config.U_values:
                for parts in config.partitions:
                    for mode in config.modes:
                        tasks.append(dict(target="corollary", L=L, U=U, partition=parts, mode=mode))
    return tasks


def _task_columns(task: dict) -> dict:
    parts = task.get("partition") or task.get("deltas") or ()
    if task["target"] == "lemma1":
        delta = task["delta"]
        partition = ""
    else:
        delta = sum(parts)
        partition = ",".join(repr(float(p)) for p in parts)
    if task["target"] == "corollary":
        k = 1
        k_list = ",".join("1" for _ in parts)
    else:
        k = task["k"]
        k_list = ",".join(str(int(x)) for x in task.get("k_list", ()))
    return {
        "L": repr(float(task["L"])),
        "U": repr(float(task["U"])),
        "delta": repr(float(delta)),
        "partition": partition,
        "k": str(k),
        "k_list": k_list,
        "mode": task["mode"],
    }


def _run_task(model: LadderModel, task: dict, band_multiplier: float, exact_tol: float | None):
    target = task["target"]
    mode = task["mode"]
    L, U = float(task["L"]), float(task["U"])
    if target == "lemma1":
        chain = build_chain(model, PowerPulse(L, U, float(task["delta"])), int(task["k"]), mode)
        report = lemma1_verify(chain, band_multiplier)
        tol = exact_tol if exact_tol is not None else EXACT_TOL_CHAIN
    elif target == "lemma2":
        chain = build_chain(model, AdditivePulse(L, U, tuple(task["deltas"])), int(task["k"]), mode)
        report = lemma2_verify(chain, band_multiplier)
        tol = exact_tol if exact_tol is not None else EXACT_TOL_CHAIN
    elif target == "theorem1":
        parts = tuple(task["partition"])
        spec = DecompositionSpec(
            partition=PartitionSpec(sum(parts), parts),
            k=int(task["k"]),
            k_list=tuple(task["k_list"]),
            L=L,
            U=U,
            mode=mode,
        )
        report = theorem1_decompose(model, spec, band_multiplier=band_multiplier)
        tol = exact_tol if exact_tol is not None else EXACT_TOL_DECOMPOSE
    elif target == "theorem2":
        parts = tuple(task["partition"])
        report = theorem2_verify(
            model, AdditivePulse(L, U, parts), int(task["k"]), tuple(task["k_list"]),
            mode, band_multiplier=band_multiplier,
        )
        tol = exact_tol if exact_tol is not None else EXACT_TOL_DECOMPOSE
    else:
        parts = tuple(task["partition"])
        report = corollary_k1(
            model, PartitionSpec(sum(parts), parts), L, U, mode, band_multiplier=band_multiplier
        )
        tol = exact_tol if exact_tol is not None else EXACT_TOL_DECOMPOSE
    passed = report.residual <= tol if mode == "exact" else report.within_band
    return report, passed


_WORKER_MODEL: LadderModel | None = None
_WORKER_ARGS: tuple | None = None


def _worker_init(cache_path: str, policy_fields: tuple, shift: float, band_mult: float, exact_tol):
    global _WORKER_MODEL, _WORKER_ARGS
    policy = EvalPolicy(*policy_fields)
    _WORKER_MODEL = LadderModel(load_cache(cache_path, policy), shift=shift)
    _WORKER_ARGS = (band_mult, exact_tol)


def _worker_row(task: dict) -> dict:
    columns = _task_columns(task)
    try:
        report, passed = _run_task(_WORKER_MODEL, task, *_WORKER_ARGS)
        columns.update(
            lhs=repr(report.lhs),
            rhs=repr(report.rhs),
            residual=repr(report.residual),
            band=repr(report.theoretical_band),
            status="ok" if passed else "fail",
            error="",
        )
    except ZetaFactorError as exc:
        columns.update(lhs="", rhs="", residual="", band="", status="error", error=str(exc))
    return columns


def run_sweep(config: SweepConfig, model: LadderModel, cache_path: str, out_path: str) -> int:
    """Execute a sweep and write the CSV; returns the number of failed rows.

    Rows are computed by a worker pool when parallelism > 1 but always
    written in the sorted task order, so the output bytes do not depend on
    the pool size.
    """
    tasks = _sweep_tasks(config)
    order = sorted(range(len(tasks)), key=lambda i: tuple(_task_columns(tasks[i]).values()))
    tasks = [tasks[i] for i in order]
    policy = model.cache.policy
    policy_fields = (policy.method_switch_height, policy.rs_correction_terms, policy.target_rel_error)
    if config.parallelism > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(
            max_workers=config.parallelism,
            initializer=_worker_init,
            initargs=(cache_path, policy_fields, config.shift, config.band_multiplier, config.exact_tol),
        ) as pool:
            rows = list(pool.map(_worker_row, tasks, chunksize=1))
    else:
        _worker_init(cache_path, policy_fields, config.shift, config.band_multiplier, config.exact_tol)
        rows = [_worker_row(t) for t in tasks]
    with open(out_path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return sum(1 for r in rows if r["status"] != "ok")


def _policy_from_args(args) -> EvalPolicy:
    return EvalPolicy(
        method_switch_height=args.switch_height,
        rs_correction_terms=args.rs_terms,
        target_rel_error=args.target_rel_error,
    )


def _resolve_cache(args) -> str:
    path = args.cache or os.environ.get(ENV_CACHE)
    if not path:
        raise InvalidParameterError(
            f"no cache given: pass --cache or set {ENV_CACHE}", code="spec"
        )
    if not os.path.exists(path):
        raise CacheFormatError(f"cache file not found: {path}")
    return path


def _load_model(args) -> tuple[LadderModel, str]:
    path = _resolve_cache(args)
    cache = load_cache(path, _policy_from_args(args))
    return LadderModel(cache, shift=args.shift), path


def cmd_build_cache(args) -> int:
    if args.t_max <= 0 or args.step <= 0:
        raise InvalidParameterError("t-max and step must be positive", code="quad-spec")
    cache = build_cache(args.t_max, args.step, _policy_from_args(args))
    digest = write_cache(cache, args.out)
    print(json.dumps({
        "path": args.out,
        "checkpoints": int(cache.values.size),
        "t_max": cache.top,
        "step": cache.step,
        "sha256": digest,
    }, sort_keys=True))
    return 0


def cmd_verify(args) -> int:
    model, _ = _load_model(args)
    task = dict(target=args.target, L=args.L, U=args.U, mode=args.mode)
    if args.target == "lemma1":
        task.update(delta=args.delta, k=args.k)
    elif args.target == "lemma2":
        task.update(deltas=tuple(args.deltas), k=args.k)
    elif args.target in ("theorem1", "theorem2"):
        task.update(partition=tuple(args.partition), k=args.k, k_list=tuple(args.k_list))
    else:
        task.update(partition=tuple(args.partition))
    report, passed = _run_task(model, task, args.band_mult, args.exact_tol)
    payload = report.to_json_dict()
    payload.setdefault("cache_digest", model.cache.content_digest())
    payload["passed"] = passed
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0 if passed else 1


def cmd_sweep(args) -> int:
    with open(args.config) as fh:
        raw = json.load(fh)
    overrides = dict(raw)
    if args.parallelism is not None:
        overrides["parallelism"] = args.parallelism
    if args.shift is not None:
        overrides["shift"] = args.shift
    config = SweepConfig.from_dict(overrides)
    args.cache = args.cache or config.cache
    args.shift = config.shift
    model, cache_path = _load_model(args)
    out_path = args.out or config.output
    if not out_path:
        raise InvalidParameterError("no output path: pass --out or set it in the config", code="spec")
    failures = run_sweep(config, model, cache_path, out_path)
    print(json.dumps({"rows_failed": failures, "output": out_path}, sort_keys=True))
    return 1 if failures else 0


def cmd_presets(args) -> int:
    presets = extremal_presets(args.k0)
    print(json.dumps(
        [{"name": p.name, "k": p.k, "k_basic": p.k_basic} for p in presets], indent=2
    ))
    return 0


def _float_list(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _add_policy_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--switch-height", type=float, default=200.0,
                        help="height below which the series evaluator is used")
    parser.add_argument("--rs-terms", type=int, default=3,
                        help="Riemann-Siegel correction terms (0..4)")
    parser.add_argument("--target-rel-error", type=float, default=1e-6,
                        help="certified relative accuracy of the policy")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zetafactor",
        description="Verification laboratory for critical-line factorization identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_cache = sub.add_parser("build-cache", help="build and write an integral cache")
    p_cache.add_argument("--t-max", type=float, required=True)
    p_cache.add_argument("--step", type=float, default=1.0)
    p_cache.add_argument("--out", required=True)
    _add_policy_flags(p_cache)
    p_cache.set_defaults(func=cmd_build_cache)

    p_verify = sub.add_parser("verify", help="run one identity check")
    p_verify.add_argument("target", choices=VERIFY_TARGETS)
    p_verify.add_argument("--cache", default=None, help=f"cache path (default: ${ENV_CACHE})")
    p_verify.add_argument("--L", type=float, required=True)
    p_verify.add_argument("--U", type=float, required=True)
    p_verify.add_argument("--delta", type=float, default=None, help="exponent (lemma1)")
    p_verify.add_argument("--deltas", type=_float_list, default=None,
                          help="comma-separated exponents (lemma2, theorem2)")
    p_verify.add_argument("--partition", type=_float_list, default=None,
                          help="comma-separated partition parts (theorem1, corollary)")
    p_verify.add_argument("--k", type=int, default=1)
    p_verify.add_argument("--k-list", type=_int_list, default=None)
    p_verify.add_argument("--mode", choices=("exact", "paper"), default="paper")
    p_verify.add_argument("--shift", type=float, default=0.0)
    p_verify.add_argument("--band-mult", type=float, default=BAND_MULTIPLIER_DEFAULT)
    p_verify.add_argument("--exact-tol", type=float, default=None,
                          help="pass threshold for exact mode (default 1e-6 chains, 1e-5 decompositions)")
    _add_policy_flags(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_sweep = sub.add_parser("sweep", help="run a JSON-configured grid into a CSV")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--out", default=None)
    p_sweep.add_argument("--cache", default=None)
    p_sweep.add_argument("--parallelism", type=int, default=None)
    p_sweep.add_argument("--shift", type=float, default=None)
    _add_policy_flags(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_presets = sub.add_parser("presets", help="print the extremal depth layouts")
    p_presets.add_argument("--k0", type=int, default=3)
    p_presets.set_defaults(func=cmd_presets)

    return parser


def _validate_verify_args(args):
    need = {
        "lemma1": ("delta",),
        "lemma2": ("deltas",),
        "theorem1": ("partition", "k_list"),
        "theorem2": ("deltas", "k_list"),
        "corollary": ("partition",),
    }[args.target]
    for name in need:
        if getattr(args, name) is None:
            raise InvalidParameterError(f"verify {args.target} requires --{name.replace('_', '-')}", code="spec")
    if args.target == "theorem2":
        args.partition = args.deltas


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "func", None) is cmd_verify:
            _validate_verify_args(args)
        return args.func(args)
    except (InvalidParameterError, CacheFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ZetaFactorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
