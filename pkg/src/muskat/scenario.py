"""Preset experiments, configuration files, and run artifacts.

A scenario is one batch experiment: it reads a RunConfig, evolves (or, for
LEMMA_VERIFY, only verifies), and leaves plain-text artifacts in the output
directory. Snapshot files are comma-delimited with 17 significant digits so
they round-trip bitwise; the manifest is INI-style text and is written even
when the run fails, with a status other than OK.
"""

from __future__ import annotations

import configparser
import time as _time
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from . import __version__
from .core import (
    UNIT_PREFACTOR_DENSITY_JUMP,
    PhysicalParams,
    SampledCurve,
    make_curve,
    make_grid,
    sample_preset,
)
from .diagnostics import norm_series, regime_timeline
from .integrator import (
    STATUS_OK,
    StepControl,
    Trajectory,
    detect_event_times,
    evolve_backward_regularized,
    evolve_forward,
)
from .spectral import filtered_derivative

SCENARIOS = ("BACKWARD_SEED", "FORWARD_RERUN", "CONJ_TURNOVER", "DELTA_TILT",
             "LEMMA_VERIFY")

STATUS_ERROR = "ERROR"

# CONJ_TURNOVER stops once the minimum slope is clearly past turnover.
TURNOVER_STOP_SLOPE = -0.02

_DEFAULT_T_FINAL = {
    "BACKWARD_SEED": -4.92e-2,
    "FORWARD_RERUN": 6e-2,
    "CONJ_TURNOVER": 0.3,
    "DELTA_TILT": 2e-3,
    "LEMMA_VERIFY": 0.0,
}

_SNAPSHOT_HEADER = "alpha, z1, z2, dz1, dz2"


@dataclass(frozen=True)
class RunConfig:
    """Validated scenario parameters; defaults reproduce the headline runs."""
    scenario: str = "BACKWARD_SEED"
    n: int = 2048
    density_jump: float = UNIT_PREFACTOR_DENSITY_JUMP
    mode: str = "fixed"
    dt: float = 4e-5
    rel_tol: float = 1e-8
    abs_tol: float = 1e-10
    eps: float = 1e-6
    t_final: float | None = None
    snapshot_every: float = 1e-3
    out_dir: str = "runs/out"
    input_snapshot: str | None = None
    delta: float = 0.1

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ValueError(f"scenario: unknown id {self.scenario!r}")
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise ValueError(f"n: expected an integer, got {self.n!r}")
        if self.n < 16 or self.n % 2:
            raise ValueError(f"n: need an even grid size >= 16, got {self.n}")
        for name in ("dt", "snapshot_every", "rel_tol", "abs_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name}: must be positive")
        if not (np.isfinite(self.density_jump) and self.density_jump != 0):
            raise ValueError("density_jump: must be finite and nonzero")
        if not self.eps >= 0:
            raise ValueError("eps: must be nonnegative")
        if self.mode not in ("fixed", "adaptive"):
            raise ValueError(f"mode: expected fixed or adaptive, got {self.mode!r}")
        if not 0 < self.delta < 1:
            raise ValueError(f"delta: need 0 < delta < 1, got {self.delta}")
        if self.t_final is not None and not np.isfinite(self.t_final):
            raise ValueError("t_final: must be finite")

    @property
    def resolved_t_final(self) -> float:
        if self.t_final is not None:
            return self.t_final
        return _DEFAULT_T_FINAL[self.scenario]

    def step_control(self) -> StepControl:
        return StepControl(mode=self.mode, dt=self.dt, rel_tol=self.rel_tol,
                           abs_tol=self.abs_tol)

    def physical_params(self) -> PhysicalParams:
        return PhysicalParams(density_jump=self.density_jump)


@dataclass
class RunManifest:
    """Outcome record of one scenario run; mirrored to manifest.txt."""
    scenario: str
    status: str
    config: RunConfig
    events: tuple[tuple[float, str], ...]
    outputs: dict[str, str]
    wall_time: float
    error: str | None = None
    trajectory: Trajectory | None = None  # in-memory only, not serialized

    def to_text(self) -> str:
        lines = [
            "[manifest]",
            f"scenario = {self.scenario}",
            f"status = {self.status}",
            f"wall_time_s = {self.wall_time:.3f}",
            f"package_version = {__version__}",
            f"numpy_version = {np.__version__}",
        ]
        if self.error is not None:
            lines.append(f"error = {self.error}")
        lines += ["", "[config]"]
        for f in fields(RunConfig):
            lines.append(f"{f.name} = {getattr(self.config, f.name)}")
        lines += ["", "[events]"]
        for i, (t, kind) in enumerate(self.events):
            lines.append(f"event_{i} = {t:.17g} {kind}")
        lines += ["", "[outputs]"]
        for name, rel in sorted(self.outputs.items()):
            lines.append(f"{name} = {rel}")
        return "\n".join(lines) + "\n"


_SCHEMA = {
    "run": {"scenario": str, "out_dir": str, "input_snapshot": str},
    "grid": {"n": int},
    "params": {"density_jump": float},
    "time": {"dt": float, "t_final": float, "snapshot_every": float,
             "mode": str, "rel_tol": float, "abs_tol": float},
    "smoothing": {"eps": float},
    "tilt": {"delta": float},
}


def load_config(path) -> RunConfig:
    """Parse an INI-style config; absent keys fall back to defaults."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"config file not found: {path}")
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except configparser.Error as exc:
        raise ValueError(f"cannot parse {path}: {exc}") from exc
    values = {}
    for section in parser.sections():
        if section not in _SCHEMA:
            raise ValueError(f"{path}: unknown section [{section}]")
        for key, raw in parser.items(section):
            if key not in _SCHEMA[section]:
                raise ValueError(f"{path}: unknown key {key!r} in [{section}]")
            caster = _SCHEMA[section][key]
            try:
                values[key] = caster(raw)
            except ValueError as exc:
                raise ValueError(
                    f"{path}: bad value for {key!r}: {raw!r}") from exc
    return RunConfig(**values)


def export_snapshot(curve: SampledCurve, path, time: float = 0.0) -> None:
    """Write one curve as delimited text: alpha, z1, z2, dz1, dz2.

    Values carry 17 significant digits, so a re-import reproduces alpha, z1,
    and z2 bitwise. The derivative columns are the filtered spectral
    derivatives and are informational; import ignores them.
    """
    path = Path(path)
    dz1 = 1.0 + filtered_derivative(curve.p1, 1)
    dz2 = filtered_derivative(curve.z2, 1)
    rows = [f"# time = {time:.17g}", _SNAPSHOT_HEADER]
    for cols in zip(curve.grid.nodes, curve.z1, curve.z2, dz1, dz2):
        rows.append(", ".join(f"{c:.17g}" for c in cols))
    try:
        path.write_text("\n".join(rows) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write snapshot {path}: {exc}") from exc


def import_snapshot(path) -> tuple[SampledCurve, float]:
    """Read a snapshot file back; returns the curve and its time stamp."""
    path = Path(path)
    try:
        raw = path.read_text()
    except OSError as exc:
        raise OSError(f"cannot read snapshot {path}: {exc}") from exc
    time = 0.0
    alphas, z1s, z2s = [], [], []
    saw_header = False
    for line in raw.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line[1:].split("=")[0].strip() == "time":
                time = float(line.split("=", 1)[1])
            continue
        if not saw_header:
            if [c.strip() for c in line.split(",")] != \
                    [c.strip() for c in _SNAPSHOT_HEADER.split(",")]:
                raise ValueError(f"{path}: unexpected header {line!r}")
            saw_header = True
            continue
        cols = [float(c) for c in line.split(",")]
        if len(cols) != 5:
            raise ValueError(f"{path}: expected 5 columns, got {len(cols)}")
        alphas.append(cols[0])
        z1s.append(cols[1])
        z2s.append(cols[2])
    if not saw_header or not alphas:
        raise ValueError(f"{path}: no snapshot rows found")
    grid = make_grid(len(alphas))
    if np.max(np.abs(np.array(alphas) - grid.nodes)) > 1e-12:
        raise ValueError(f"{path}: nodes are not the uniform grid on [-pi, pi)")
    p1 = np.array(z1s) - grid.nodes
    return make_curve(grid, p1, np.array(z2s)), time


def _write_norms(traj: Trajectory, path: Path) -> None:
    ns = norm_series(traj)
    rows = ["# columns: t, sup_f, sup_slope (nan when not a graph)"]
    for t, f, s in zip(ns.times, ns.sup_f, ns.sup_slope):
        rows.append(f"{t:.17g}, {f:.17g}, {s:.17g}")
    path.write_text("\n".join(rows) + "\n")


def _write_timeline(segments, events, path: Path) -> None:
    rows = ["# columns: t_start, t_end, regime"]
    for (a, b), reg in segments:
        rows.append(f"{a:.17g}, {b:.17g}, {reg}")
    rows.append("# events: t, kind")
    for t, kind in events:
        rows.append(f"# {t:.17g}, {kind}")
    path.write_text("\n".join(rows) + "\n")


def _min_slope_of(curve: SampledCurve) -> float:
    return float(np.min(1.0 + filtered_derivative(curve.p1, 1)))


def _analyze(traj: Trajectory, outdir: Path, outputs: dict[str, str],
             tag: str = "") -> tuple[tuple[float, str], ...]:
    """Write final snapshot, norms, and timeline; returns refined events."""
    suffix = f"_{tag}" if tag else ""
    final_name = f"final{suffix}.dat"
    export_snapshot(traj.final, outdir / final_name, time=traj.final_time)
    outputs[f"final{suffix}"] = final_name
    _write_norms(traj, outdir / f"norms{suffix}.dat")
    outputs[f"norms{suffix}"] = f"norms{suffix}.dat"
    events = tuple(detect_event_times(traj))
    segments = regime_timeline(traj, events=events)
    _write_timeline(segments, events, outdir / f"timeline{suffix}.txt")
    outputs[f"timeline{suffix}"] = f"timeline{suffix}.txt"
    return events


def run_scenario(config: RunConfig) -> RunManifest:
    """Execute one scenario and write its artifacts under config.out_dir.

    Numerical failures (arc-chord collapse, NaN) are recorded in the
    manifest status rather than raised; unexpected exceptions produce
    status ERROR with the message preserved. The manifest file is always
    written.
    """
    started = _time.perf_counter()
    outdir = Path(config.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    outputs: dict[str, str] = {}
    events: tuple[tuple[float, str], ...] = ()
    status = STATUS_OK
    error = None
    traj = None
    try:
        if config.scenario == "LEMMA_VERIFY":
            from .lemma import verification_report
            report = verification_report()
            (outdir / "lemma_report.txt").write_text(report)
            outputs["report"] = "lemma_report.txt"
        else:
            traj, events = _run_evolution(config, outdir, outputs)
            status = traj.status
            events = tuple(events) + tuple(traj.events)
    except Exception as exc:
        status = STATUS_ERROR
        error = f"{type(exc).__name__}: {exc}"
    manifest = RunManifest(
        scenario=config.scenario, status=status, config=config,
        events=events, outputs=outputs,
        wall_time=_time.perf_counter() - started, error=error,
        trajectory=traj)
    (outdir / "manifest.txt").write_text(manifest.to_text())
    return manifest


def _run_evolution(config: RunConfig, outdir: Path,
                   outputs: dict[str, str]):
    params = config.physical_params()
    t_final = config.resolved_t_final

    if config.scenario == "FORWARD_RERUN":
        if config.input_snapshot is None:
            raise ValueError(
                "input_snapshot: FORWARD_RERUN needs the exported terminal"
                " snapshot of a BACKWARD_SEED run")
        curve, t0 = import_snapshot(config.input_snapshot)
        export_snapshot(curve, outdir / "initial.dat", time=t0)
        outputs["initial"] = "initial.dat"
        if not t_final > t0:
            raise ValueError(f"t_final: need a value past {t0}, got {t_final}")
        traj = evolve_forward(curve, params, t_final, config.step_control(),
                              t0=t0, snapshot_every=config.snapshot_every)
        return traj, _analyze(traj, outdir, outputs)

    grid = make_grid(config.n)
    if config.scenario == "BACKWARD_SEED":
        if not t_final < 0:
            raise ValueError(f"t_final: backward run needs t_final < 0,"
                             f" got {t_final}")
        curve = sample_preset("SEED_T0", grid)
        export_snapshot(curve, outdir / "initial.dat", time=0.0)
        outputs["initial"] = "initial.dat"
        traj = evolve_backward_regularized(
            curve, params, t_final, dt=config.dt, eps=config.eps,
            snapshot_every=config.snapshot_every)
        return traj, _analyze(traj, outdir, outputs)

    if config.scenario == "CONJ_TURNOVER":
        if not t_final > 0:
            raise ValueError(f"t_final: forward run needs t_final > 0,"
                             f" got {t_final}")
        curve = sample_preset("CONJ_T0", grid)
        export_snapshot(curve, outdir / "initial.dat", time=0.0)
        outputs["initial"] = "initial.dat"
        stop = lambda t, c: _min_slope_of(c) < TURNOVER_STOP_SLOPE
        traj = evolve_forward(curve, params, t_final, config.step_control(),
                              snapshot_every=config.snapshot_every,
                              stop_when=stop)
        return traj, _analyze(traj, outdir, outputs)

    if config.scenario == "DELTA_TILT":
        if not t_final > 0:
            raise ValueError(f"t_final: tilt horizon must be positive,"
                             f" got {t_final}")
        curve = sample_preset("DELTA_TILT", grid, delta=config.delta)
        export_snapshot(curve, outdir / "initial.dat", time=0.0)
        outputs["initial"] = "initial.dat"
        fwd = evolve_forward(curve, params, t_final, config.step_control(),
                             snapshot_every=config.snapshot_every)
        ev_f = _analyze(fwd, outdir, outputs, tag="forward")
        bwd = evolve_backward_regularized(
            curve, params, -t_final, dt=config.dt, eps=config.eps,
            snapshot_every=config.snapshot_every)
        ev_b = _analyze(bwd, outdir, outputs, tag="backward")
        if bwd.status != STATUS_OK and fwd.status == STATUS_OK:
            fwd.status = bwd.status
        return fwd, ev_f + ev_b

    raise ValueError(f"scenario: no handler for {config.scenario!r}")
