"""Scenario campaigns: configuration, Monte Carlo runs, and verification.

A scenario sweeps (delta, scheme) combinations under one power constraint,
accumulates empirical average CCDF curves per transmit antenna, writes one
CSV per curve kind plus a machine-readable summary, and reports sup gaps
against the matching closed forms.  Everything is deterministic given the
master seed: per-realization generators are derived from
(master_seed, realization index), so results do not depend on worker count
or accumulation order, and scheme comparisons share random draws.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from functools import lru_cache
from pathlib import Path

import numpy as np

from .channel import channel_to_csv, sample_channel, spatial_waterfilling, uniform_spatial
from .covariance import (
    ConstraintKind,
    InputCovariance,
    PowerConstraint,
    Scheme,
    scheme_covariance,
    spectrum_to_csv,
    transmit_power,
)
from .papr import (
    CcdfAccumulator,
    CcdfCurve,
    CurveKind,
    closed_form_ccdf_rx,
    closed_form_ccdf_tx,
    curves_to_csv,
    default_gamma_grid,
    sup_gap,
    theoretical_ccdf_integral,
)
from .pulse import PulseShape
from .synth import SymbolBlock, draw_colored_symbols, synthesize_waveform

__all__ = [
    "ConfigError",
    "InvariantBreach",
    "ScenarioConfig",
    "ComboResult",
    "ScenarioResult",
    "load_config",
    "run_scenario",
    "run_combo",
    "reproduce_figure",
    "verify",
    "VerifyCheck",
    "VerifyReport",
]

OUTPUT_DIR_ENV = "FTNPAPR_OUTPUT_DIR"

# Fraction of the effective power below which an antenna is considered
# unexcited and skipped (probability-zero for random channels).
_ANTENNA_POWER_FLOOR = 1e-12

_USER_SCHEMES = (
    Scheme.UNIFORM,
    Scheme.UNIFORM_FREQUENCY,
    Scheme.TIME_INVERSE,
    Scheme.OPTIMAL,
)


class ConfigError(ValueError):
    """Invalid scenario configuration; maps to exit code 2."""


class InvariantBreach(RuntimeError):
    """A numerical invariant failed during a run; maps to exit code 3."""


@dataclass
class ScenarioConfig:
    """Inputs of one campaign.

    n_symbols is rounded up to the next odd count internally (the symmetric
    frame indexing N = 2M+1 underlies the spectral constructions).
    """

    deltas: list[float] = field(default_factory=lambda: [0.5, 0.8, 1.0])
    beta: float = 0.3
    T: float = 0.01
    n_symbols: int = 2000
    k_tx: int = 1
    l_rx: int = 1
    schemes: list[str] = field(default_factory=lambda: ["uniform", "optimal"])
    constraint: PowerConstraint = field(default_factory=lambda: PowerConstraint.fixed_tx(1.0))
    realizations: int = 1000
    master_seed: int = 12345
    gamma_points: int = 200
    ccdf_floor: float = 1e-4
    gap_tolerance: float = 0.05
    output_dir: Path = Path("ftnpapr-out")
    span: int | None = None
    oversampling: int = 16
    workers: int = 1
    dump_spectra: bool = False
    dump_channels: bool = False
    name: str = "scenario"

    def __post_init__(self) -> None:
        self.output_dir = Path(self.output_dir)
        if not self.deltas:
            raise ConfigError("deltas: need at least one acceleration factor")
        for d in self.deltas:
            if not 0 < d <= 1:
                raise ConfigError(f"deltas: every value must lie in (0, 1], got {d}")
        if self.realizations < 1:
            raise ConfigError(f"realizations: must be >= 1, got {self.realizations}")
        if self.k_tx < 1 or self.l_rx < 1:
            raise ConfigError("k_tx/l_rx: antenna counts must be >= 1")
        if self.gamma_points < 2:
            raise ConfigError("gamma_points: need at least 2 thresholds")
        if not 0 < self.ccdf_floor < 1:
            raise ConfigError(f"ccdf_floor: must lie in (0, 1), got {self.ccdf_floor}")
        if self.workers < 1:
            raise ConfigError("workers: must be >= 1")
        seen = set()
        for s in self.schemes:
            try:
                sch = Scheme(s)
            except ValueError as exc:
                raise ConfigError(f"schemes: unknown scheme {s!r}") from exc
            if sch in seen:
                raise ConfigError(f"schemes: duplicate scheme {s!r}")
            seen.add(sch)
        for d in self.deltas:
            self.shape_for(d)  # validates span/regime pairing early

    @property
    def n_frame(self) -> int:
        """Odd frame length used internally."""
        return self.n_symbols if self.n_symbols % 2 == 1 else self.n_symbols + 1

    def shape_for(self, delta: float) -> PulseShape:
        try:
            shape = PulseShape(
                beta=self.beta,
                T=self.T,
                delta=delta,
                span=self.span,
                oversampling=self.oversampling,
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if self.n_frame - 1 <= 2 * shape.span:
            raise ConfigError(
                f"n_symbols = {self.n_symbols} leaves no interior at delta = {delta:g}: "
                f"need more than 2 * span = {2 * shape.span} symbols"
            )
        boundary = 1.0 / (1.0 + self.beta)
        for s in self.schemes:
            sch = Scheme(s)
            if sch is Scheme.OPTIMAL_MODERATE and delta < boundary:
                raise ConfigError(
                    f"scheme optimal_moderate requires delta >= 1/(1+beta) = {boundary:.6g}, "
                    f"got delta = {delta:g}"
                )
            if sch is Scheme.OPTIMAL_SMALL and delta >= boundary:
                raise ConfigError(
                    f"scheme optimal_small requires delta < 1/(1+beta) = {boundary:.6g}, "
                    f"got delta = {delta:g}"
                )
        return shape


def _constraint_from_mapping(data: dict) -> PowerConstraint:
    kind = data.get("kind", "fixed_tx_snr")
    sigma0 = float(data.get("sigma0_sq", 1.0))
    try:
        if ConstraintKind(kind) is ConstraintKind.FIXED_TX_SNR:
            return PowerConstraint.fixed_tx(float(data["P"]), sigma0)
        return PowerConstraint.fixed_rx(float(data["E"]), sigma0)
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"constraint: {exc}") from exc


def load_config(path: str | Path, overrides: dict | None = None) -> ScenarioConfig:
    """Parse a TOML scenario file; `overrides` (flag values) win over the file."""
    try:
        import tomllib  # Python >= 3.11
    except ModuleNotFoundError:  # pragma: no cover - depends on interpreter
        import tomli as tomllib

    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed config file {path}: {exc}") from exc

    data: dict = {}
    if "name" in raw:
        data["name"] = str(raw["name"])
    frame = raw.get("frame", {})
    for key in ("beta", "T"):
        if key in frame:
            data[key] = float(frame[key])
    if "delta" in frame:
        val = frame["delta"]
        data["deltas"] = [float(v) for v in (val if isinstance(val, list) else [val])]
    for key in ("n_symbols", "span", "oversampling"):
        if key in frame:
            data[key] = int(frame[key])
    mimo = raw.get("mimo", {})
    if "k_tx" in mimo:
        data["k_tx"] = int(mimo["k_tx"])
    if "l_rx" in mimo:
        data["l_rx"] = int(mimo["l_rx"])
    if "constraint" in raw:
        data["constraint"] = _constraint_from_mapping(raw["constraint"])
    run = raw.get("run", {})
    if "schemes" in run:
        data["schemes"] = [str(s) for s in run["schemes"]]
    for key, cast in (
        ("realizations", int),
        ("master_seed", int),
        ("gamma_points", int),
        ("workers", int),
        ("gap_tolerance", float),
        ("ccdf_floor", float),
        ("dump_spectra", bool),
        ("dump_channels", bool),
    ):
        if key in run:
            data[key] = cast(run[key])
    if "output_dir" in run:
        data["output_dir"] = Path(run["output_dir"])

    valid = {f.name for f in fields(ScenarioConfig)}
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key not in valid:
            raise ConfigError(f"unknown configuration field {key!r}")
        data[key] = value
    try:
        return ScenarioConfig(**data)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def realization_seed(master_seed: int, realization: int) -> np.random.SeedSequence:
    """Per-realization seed derived from (master seed, realization index) only.

    Keeping the scheme and delta out of the derivation gives common random
    numbers across combinations: scheme comparisons become paired, which
    shrinks the Monte Carlo noise of their differences.
    """
    return np.random.SeedSequence([master_seed, realization])


@lru_cache(maxsize=64)
def _combo_covariances(
    scheme: Scheme,
    shape: PulseShape,
    n: int,
    constraint: PowerConstraint,
) -> tuple[InputCovariance, InputCovariance]:
    """(unit-power template for symbol drawing, full-power covariance)."""
    unit = scheme_covariance(scheme, shape, n, PowerConstraint.fixed_tx(1.0, constraint.sigma0_sq))
    full = scheme_covariance(scheme, shape, n, constraint)
    return unit, full


@dataclass
class ComboResult:
    """Curves and diagnostics of one (delta, scheme) combination."""

    delta: float
    scheme: Scheme
    tag: str
    papr_acc: CcdfAccumulator
    power_acc: CcdfAccumulator
    antenna_papr: list[CcdfAccumulator]
    papr_curve: CcdfCurve
    power_curve: CcdfCurve
    theory_curve: CcdfCurve
    closed_form: CcdfCurve
    papr_gap: float
    power_gap: float
    trace_power_ratio: float
    meta: dict
    channel_dumps: list[tuple[int, str]] = field(default_factory=list)

    def antenna_curves(self) -> list[CcdfCurve]:
        return [
            acc.curve(CurveKind.EMPIRICAL_PAPR, {**self.meta, "antenna": k})
            for k, acc in enumerate(self.antenna_papr)
        ]


@dataclass
class ScenarioResult:
    config: ScenarioConfig
    combos: list[ComboResult]
    summary: dict
    output_dir: Path | None
    passed: bool


def _realization_counts(
    config: ScenarioConfig,
    scheme: Scheme,
    shape: PulseShape,
    r: int,
    papr_grid: np.ndarray,
    power_grid: np.ndarray,
) -> tuple[list[CcdfAccumulator], CcdfAccumulator, CcdfAccumulator, list[tuple[int, str]]]:
    """Per-antenna PAPR and pooled accumulators for one channel realization."""
    n = config.n_frame
    constraint = config.constraint
    unit_cov, _ = _combo_covariances(scheme, shape, n, constraint)
    p_eff = constraint.symbol_power(shape)
    rng = np.random.default_rng(realization_seed(config.master_seed, r))

    ch = sample_channel(config.k_tx, config.l_rx, rng, seed=r)
    if unit_cov.spatial_allocation == "waterfilling":
        profile = spatial_waterfilling(ch, p_eff, constraint.sigma0_sq)
    else:
        profile = uniform_spatial(config.k_tx, p_eff)

    active = np.flatnonzero(profile.mode_powers > _ANTENNA_POWER_FLOOR * p_eff)
    blocks = np.zeros((len(active), n), dtype=complex)
    for row, m in enumerate(active):
        blocks[row] = math.sqrt(profile.mode_powers[m]) * draw_colored_symbols(unit_cov, rng).a
    antenna_symbols = profile.precoder[:, active] @ blocks

    per_antenna = [CcdfAccumulator(papr_grid) for _ in range(config.k_tx)]
    papr_acc = CcdfAccumulator(papr_grid)
    power_acc = CcdfAccumulator(power_grid)
    channel_rows: list[tuple[int, str]] = []
    if config.dump_channels:
        channel_rows.append((r, channel_to_csv(ch)))

    for k in range(config.k_tx):
        p_k = float(profile.per_antenna[k])
        if p_k <= _ANTENNA_POWER_FLOOR * p_eff:
            continue
        frame = synthesize_waveform(
            SymbolBlock(a=antenna_symbols[k], cov=unit_cov), shape, nominal_power=p_k
        )
        power = np.abs(frame.interior) ** 2
        per_antenna[k].add_power_samples(power, reference=p_k)
        papr_acc.add_power_samples(power, reference=p_k)
        # spatial share normalization puts every antenna on the single-antenna
        # absolute power scale, where the closed forms live
        power_acc.add_power_samples(power, reference=p_k / p_eff)
    return per_antenna, papr_acc, power_acc, channel_rows


def _worker(args) -> tuple[list[CcdfAccumulator], CcdfAccumulator, CcdfAccumulator, list]:
    config, scheme, delta, r, papr_grid, power_grid = args
    shape = config.shape_for(delta)
    return _realization_counts(config, scheme, shape, r, papr_grid, power_grid)


def run_combo(config: ScenarioConfig, delta: float, scheme: Scheme | str) -> ComboResult:
    """Monte Carlo campaign for one (delta, scheme) combination."""
    scheme = Scheme(scheme)
    shape = config.shape_for(delta)
    n = config.n_frame
    constraint = config.constraint
    p_eff = constraint.symbol_power(shape)
    p_ref = constraint.reference_power(shape)
    tag = f"{scheme.value}|d={delta:g}|{constraint.label()}|K={config.k_tx}"

    papr_grid = default_gamma_grid(1.0, config.gamma_points, config.ccdf_floor)
    power_grid = default_gamma_grid(p_eff, config.gamma_points, config.ccdf_floor)

    per_antenna = [CcdfAccumulator(papr_grid) for _ in range(config.k_tx)]
    papr_acc = CcdfAccumulator(papr_grid)
    power_acc = CcdfAccumulator(power_grid)
    channel_dumps: list[tuple[int, str]] = []

    jobs = [
        (config, scheme, delta, r, papr_grid, power_grid)
        for r in range(config.realizations)
    ]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_worker, jobs, chunksize=8))
    else:
        results = [_worker(job) for job in jobs]
    for ant, pa, pw, dumps in results:
        for k in range(config.k_tx):
            per_antenna[k].merge(ant[k])
        papr_acc.merge(pa)
        power_acc.merge(pw)
        channel_dumps.extend(dumps)

    _, full_cov = _combo_covariances(scheme, shape, n, constraint)
    meta = {
        "delta": delta,
        "beta": config.beta,
        "T": config.T,
        "scheme": scheme.value,
        "constraint": constraint.label(),
        "K": config.k_tx,
        "L": config.l_rx,
        "realizations": config.realizations,
        "seed": config.master_seed,
        "p_ref": p_ref,
    }
    papr_curve = papr_acc.curve(CurveKind.EMPIRICAL_PAPR, {**meta, "p_ref": 1.0})
    power_curve = power_acc.curve(CurveKind.EMPIRICAL_POWER, meta)
    theory_curve = theoretical_ccdf_integral(full_cov, shape, power_grid, meta=meta)
    if constraint.kind is ConstraintKind.FIXED_TX_SNR:
        closed = closed_form_ccdf_tx(p_eff, power_grid, meta=meta)
    else:
        closed = closed_form_ccdf_rx(constraint.E, delta, config.T, power_grid, meta=meta)

    papr_unit_exp = closed_form_ccdf_tx(1.0, papr_grid, meta={**meta, "p_ref": 1.0})
    papr_gap = sup_gap(
        papr_curve, papr_unit_exp, min_level=1e-2, min_events=10, event_counts=papr_acc.counts
    )
    power_gap = sup_gap(
        power_curve, closed, min_level=1e-2, min_events=10, event_counts=power_acc.counts
    )
    trace_ratio = transmit_power(full_cov) / p_eff

    return ComboResult(
        delta=delta,
        scheme=scheme,
        tag=tag,
        papr_acc=papr_acc,
        power_acc=power_acc,
        antenna_papr=per_antenna,
        papr_curve=papr_curve,
        power_curve=power_curve,
        theory_curve=theory_curve,
        closed_form=closed,
        papr_gap=papr_gap,
        power_gap=power_gap,
        trace_power_ratio=trace_ratio,
        meta=meta,
        channel_dumps=channel_dumps,
    )


def _combo_filename(prefix: str, combo: ComboResult, kind: CurveKind) -> str:
    return (
        f"{prefix}_d{combo.delta:.3f}_{combo.scheme.value}_"
        f"{'tx' if 'tx' in combo.meta['constraint'] else 'rx'}_{kind.value}.csv"
    )


def run_scenario(config: ScenarioConfig, write_outputs: bool = True) -> ScenarioResult:
    """Run every (delta, scheme) combination and write CSVs plus a summary.

    Raises nothing on gap failures; the result records per-combo pass flags
    and the overall verdict (the CLI maps a failed verdict to exit code 3).
    Structural invariant violations (impossible curves) raise
    :class:`InvariantBreach`.
    """
    combos: list[ComboResult] = []
    rows = []
    for delta in config.deltas:
        for scheme in config.schemes:
            combo = run_combo(config, delta, scheme)
            if combo.papr_acc.total_samples == 0:
                raise InvariantBreach(f"{combo.tag}: no samples accumulated")
            if not 0.9 < combo.trace_power_ratio < 1.1:
                raise InvariantBreach(
                    f"{combo.tag}: transmit-power identity off by "
                    f"{abs(combo.trace_power_ratio - 1):.3f}"
                )
            combos.append(combo)
            rows.append(
                {
                    "delta": combo.delta,
                    "scheme": combo.scheme.value,
                    "papr_sup_gap": combo.papr_gap,
                    "power_sup_gap": combo.power_gap,
                    "trace_power_ratio": combo.trace_power_ratio,
                    "pass": bool(
                        combo.papr_gap <= config.gap_tolerance
                        and combo.power_gap <= config.gap_tolerance
                    ),
                }
            )

    passed = all(r["pass"] for r in rows)
    summary = {
        "name": config.name,
        "constraint": config.constraint.label(),
        "n_symbols": config.n_symbols,
        "n_frame": config.n_frame,
        "k_tx": config.k_tx,
        "l_rx": config.l_rx,
        "realizations": config.realizations,
        "master_seed": config.master_seed,
        "gap_tolerance": config.gap_tolerance,
        "combos": rows,
        "passed": passed,
    }

    out_dir: Path | None = None
    if write_outputs:
        out_dir = config.output_dir
        out_dir.mkdir(parents=True, exist_ok=True)
        for combo in combos:
            pairs = [
                (combo.papr_curve, CurveKind.EMPIRICAL_PAPR),
                (combo.power_curve, CurveKind.EMPIRICAL_POWER),
                (combo.theory_curve, CurveKind.THEORETICAL_INTEGRAL),
                (combo.closed_form, combo.closed_form.kind),
            ]
            for curve, kind in pairs:
                path = out_dir / _combo_filename(config.name, combo, kind)
                path.write_text(curves_to_csv([curve]))
            if config.dump_spectra:
                shape = config.shape_for(combo.delta)
                _, full_cov = _combo_covariances(
                    combo.scheme, shape, config.n_frame, config.constraint
                )
                spec_path = out_dir / f"{config.name}_d{combo.delta:.3f}_{combo.scheme.value}_spectrum.csv"
                spec_path.write_text(spectrum_to_csv(full_cov))
            for r, dump in combo.channel_dumps:
                (out_dir / f"{config.name}_d{combo.delta:.3f}_{combo.scheme.value}_channel{r:04d}.csv").write_text(dump)
        (out_dir / f"{config.name}_summary.json").write_text(json.dumps(summary, indent=2))

    return ScenarioResult(
        config=config, combos=combos, summary=summary, output_dir=out_dir, passed=passed
    )


_FIGURE_PROFILES = {
    "fig1": dict(
        deltas=[0.5, 0.8, 1.0],
        schemes=["uniform", "optimal"],
        k_tx=1,
        l_rx=1,
        constraint=PowerConstraint.fixed_tx(1.0),
        title="SISO accelerated signaling, fixed transmit power",
    ),
    "fig2": dict(
        deltas=[0.5, 0.8, 1.0],
        schemes=["uniform", "uniform_frequency", "time_inverse", "optimal"],
        constraint=PowerConstraint.fixed_tx(1.0),
        title="MIMO accelerated signaling, fixed transmit power",
    ),
    "fig3": dict(
        deltas=[0.25, 0.5, 1.0],
        schemes=["uniform", "uniform_frequency", "time_inverse", "optimal"],
        constraint=PowerConstraint.fixed_rx(0.01),
        title="MIMO accelerated signaling, fixed received SNR",
    ),
}


def reproduce_figure(
    fig_id: str,
    scale: str = "desk",
    output_dir: str | Path | None = None,
    **config_overrides,
) -> ScenarioResult:
    """Run one of the built-in scenario presets and render its SVG plot.

    fig1: SISO, fixed transmit power, uniform vs optimal over a delta sweep.
    fig2: MIMO (4x4 desk scale, 20x20 full), all four schemes.
    fig3: MIMO under fixed received SNR with closed-form overlays; curves
          separate by 3 dB per halving of delta.
    """
    if fig_id not in _FIGURE_PROFILES:
        raise ConfigError(f"unknown figure id {fig_id!r}; pick one of fig1, fig2, fig3")
    if scale not in ("desk", "full"):
        raise ConfigError(f"scale must be 'desk' or 'full', got {scale!r}")
    profile = dict(_FIGURE_PROFILES[fig_id])
    title = profile.pop("title")
    mimo = 4 if scale == "desk" else 20
    profile.setdefault("k_tx", mimo)
    profile.setdefault("l_rx", mimo)
    settings = dict(
        name=fig_id,
        realizations=200 if scale == "desk" else 1000,
        gap_tolerance=0.02 if fig_id != "fig3" else 0.03,
        **profile,
    )
    settings.update(config_overrides)
    if output_dir is not None:
        settings["output_dir"] = Path(output_dir)
    config = ScenarioConfig(**settings)
    result = run_scenario(config)

    from .svgplot import write_ccdf_svg

    curves = []
    for combo in result.combos:
        label = f"{combo.scheme.value} d={combo.delta:g}"
        if fig_id == "fig3":
            curves.append((label, combo.power_curve, "solid"))
        else:
            curves.append((label, combo.papr_curve, "solid"))
    seen_deltas = []
    for combo in result.combos:
        if combo.delta in seen_deltas:
            continue
        seen_deltas.append(combo.delta)
        if fig_id == "fig3":
            curves.append((f"theory d={combo.delta:g}", combo.closed_form, "dashed"))
        else:
            grid = result.combos[0].papr_curve.gammas
            curves.append(
                (
                    "exp(-gamma)",
                    closed_form_ccdf_tx(1.0, grid, meta={"p_ref": 1.0}),
                    "dashed",
                )
            )
            break
    svg_path = (result.output_dir or Path(".")) / f"{fig_id}.svg"
    write_ccdf_svg(svg_path, curves, title=title, floor=config.ccdf_floor)
    result.summary["svg"] = str(svg_path)
    if result.output_dir is not None:
        (result.output_dir / f"{fig_id}_summary.json").write_text(
            json.dumps(result.summary, indent=2)
        )
    return result


# --------------------------------------------------------------------------
# verification suites


@dataclass(frozen=True)
class VerifyCheck:
    name: str
    observed: float
    tolerance: float
    passed: bool

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}: observed {self.observed:.6g} (tolerance {self.tolerance:g})"


@dataclass
class VerifyReport:
    suite: str
    checks: list[VerifyCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks] + [
            f"{'PASS' if self.passed else 'FAIL'}  suite '{self.suite}'"
        ]


def _check(name: str, observed: float, tolerance: float, larger_ok: bool = False) -> VerifyCheck:
    passed = observed >= tolerance if larger_ok else observed <= tolerance
    return VerifyCheck(name=name, observed=float(observed), tolerance=float(tolerance), passed=passed)


def _verify_spectral(tol: dict) -> list[VerifyCheck]:
    from .gram import generating_function, szego_deviation

    checks = []
    for delta in (0.5, 0.8):
        shape = PulseShape(beta=0.3, T=0.01, delta=delta)
        mean_dev, sup_dev = szego_deviation(shape, 1001)
        checks.append(_check(f"szego mean deviation (delta={delta})", mean_dev, tol["szego_mean"]))
        checks.append(_check(f"szego sup deviation (delta={delta})", sup_dev, tol["szego_sup"]))
        mean_small, _ = szego_deviation(shape, 201)
        checks.append(
            _check(
                f"szego improvement N=201 -> N=1001 (delta={delta})",
                mean_small / max(mean_dev, 1e-300),
                1.0,
                larger_ok=True,
            )
        )
    shape = PulseShape(beta=0.3, T=0.01, delta=0.5)
    outside = float(
        np.max(np.abs(generating_function(shape, np.array([0.34, 0.4, 0.45, 0.49]))))
    )
    checks.append(_check("folded spectrum beyond support (delta=0.5)", outside, 1e-15))
    return checks


def _verify_power(tol: dict) -> list[VerifyCheck]:
    checks = []
    n = 2001
    for delta in (0.5, 0.8, 1.0):
        shape = PulseShape(beta=0.3, T=0.01, delta=delta)
        for scheme in _USER_SCHEMES:
            cov = scheme_covariance(scheme, shape, n, PowerConstraint.fixed_tx(1.0))
            checks.append(
                _check(
                    f"power identity {scheme.value} (delta={delta})",
                    abs(transmit_power(cov) - 1.0),
                    tol["power_band"],
                )
            )
    shape = PulseShape(beta=0.3, T=0.01, delta=0.8)
    rx = scheme_covariance(Scheme.OPTIMAL, shape, 501, PowerConstraint.fixed_rx(0.004))
    tx = scheme_covariance(
        Scheme.OPTIMAL, shape, 501, PowerConstraint.fixed_tx(0.004 / shape.symbol_interval)
    )
    checks.append(
        _check(
            "fixed-rx equals fixed-tx at P = E/(delta T)",
            float(np.max(np.abs(rx.diag_fft - tx.diag_fft))) / float(np.max(tx.diag_fft)),
            1e-12,
        )
    )
    return checks


def _verify_ccdf(tol: dict) -> list[VerifyCheck]:
    from .synth import dft_phase_vector

    checks = []
    shape = PulseShape(beta=0.3, T=0.01, delta=0.5)
    n = 2001
    worst_gap = 0.0
    worst_out = 0.0
    for q in range(16):
        tau = q * shape.symbol_interval / 16
        res = dft_phase_vector(shape, tau, n)
        peak = np.abs(res.closed_form).max()
        worst_gap = max(
            worst_gap, float(np.abs(res.direct - res.closed_form)[res.support].max() / peak)
        )
        total = float(np.sum(np.abs(res.direct) ** 2))
        worst_out = max(worst_out, float(np.sum(np.abs(res.direct[~res.support]) ** 2) / total))
    checks.append(_check("phase-vector DFT vs closed form (support)", worst_gap, tol["qtau_gap"]))
    checks.append(_check("phase-vector energy outside support", worst_out, tol["qtau_energy"]))

    constraint = PowerConstraint.fixed_tx(1.0)
    grid = default_gamma_grid(1.0, 120)
    cov = scheme_covariance(Scheme.OPTIMAL, shape, n, constraint)
    integral = theoretical_ccdf_integral(cov, shape, grid)
    closed = closed_form_ccdf_tx(1.0, grid)
    checks.append(
        _check(
            "integral CCDF vs exponential (small delta)",
            float(np.max(np.abs(integral.probs - closed.probs))),
            tol["integral_gap"],
        )
    )
    refine_worst = 0.0
    for delta in (0.5, 0.8):
        shape_d = PulseShape(beta=0.3, T=0.01, delta=delta)
        for scheme in (Scheme.UNIFORM, Scheme.OPTIMAL):
            cov_d = scheme_covariance(scheme, shape_d, n, constraint)
            c16 = theoretical_ccdf_integral(cov_d, shape_d, grid, phase_count=16)
            c32 = theoretical_ccdf_integral(cov_d, shape_d, grid, phase_count=32)
            refine_worst = max(refine_worst, float(np.max(np.abs(c16.probs - c32.probs))))
    checks.append(_check("phase refinement 16 -> 32", refine_worst, tol["refinement"]))

    e = 0.01
    rx1 = closed_form_ccdf_rx(e, 1.0, 0.01, grid)
    rx_half = closed_form_ccdf_rx(e, 0.5, 0.01, grid)
    shift_db = 10 * np.log10(rx_half.interp_gamma_at(0.1) / rx1.interp_gamma_at(0.1))
    checks.append(_check("rx halving shift vs 3.01 dB", abs(shift_db - 3.0103), tol["shift_db"]))
    tx_equiv = closed_form_ccdf_tx(1.0, grid)
    checks.append(
        _check(
            "rx at delta=1, E=PT reduces to tx",
            float(np.max(np.abs(rx1.probs - tx_equiv.probs))),
            1e-12,
        )
    )
    return checks


_DEFAULT_TOLERANCES = {
    "szego_mean": 0.01,
    "szego_sup": 0.03,
    "power_band": 0.02,
    "qtau_gap": 1e-3,
    "qtau_energy": 1e-6,
    "integral_gap": 1e-2,
    "refinement": 5e-3,
    "shift_db": 0.3,
}


def verify(suite: str = "all", tolerances: dict | None = None) -> VerifyReport:
    """Run the built-in property suites (spectral, power, ccdf, or all)."""
    tol = dict(_DEFAULT_TOLERANCES)
    tol.update(tolerances or {})
    suites = {
        "spectral": _verify_spectral,
        "power": _verify_power,
        "ccdf": _verify_ccdf,
    }
    if suite == "all":
        checks = []
        for fn in suites.values():
            checks.extend(fn(tol))
    elif suite in suites:
        checks = suites[suite](tol)
    else:
        raise ConfigError(f"unknown verification suite {suite!r}; pick spectral, power, ccdf, all")
    return VerifyReport(suite=suite, checks=checks)
