"""Time stepping for the interface evolution.

A Dormand-Prince 5(4) pair drives both fixed-step and adaptive marching.
The propagated state is the fourth-order member; the fifth-order companion
only supplies the max-norm error estimate, so fixed-step convergence is
globally O(dt^4). The backward solver follows the regularized recipe:
march with -dt and re-threshold the spectra of p1 and z2 after every step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import PhysicalParams, SampledCurve
from .spectral import DEFAULT_FILTER, FilterSpec, filtered_derivative, threshold_smooth
from .velocity import ARC_CHORD_FLOOR, ArcChordError, periodic_rhs

_DP_A = np.array([
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1 / 5, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3 / 40, 9 / 40, 0.0, 0.0, 0.0, 0.0],
    [44 / 45, -56 / 15, 32 / 9, 0.0, 0.0, 0.0],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729, 0.0, 0.0],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656, 0.0],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
])
_DP_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784,
                   11 / 84, 0.0])
_DP_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640,
                   -92097 / 339200, 187 / 2100, 1 / 40])

STATUS_OK = "OK"
STATUS_ARC_CHORD = "ARC_CHORD_FAILURE"
STATUS_NAN = "NAN_ABORT"

EVENT_ENTER_STABLE = "ENTER_STABLE"
EVENT_ENTER_UNSTABLE = "ENTER_UNSTABLE"
EVENT_EARLY_STOP = "EARLY_STOP"


class NanEncountered(RuntimeError):
    """A step produced non-finite samples."""


@dataclass(frozen=True)
class StepControl:
    """Fixed or adaptive marching parameters."""
    mode: str = "fixed"
    dt: float = 4e-5
    rel_tol: float = 1e-8
    abs_tol: float = 1e-10
    safety: float = 0.9
    min_dt: float = 1e-12
    max_dt: float = 1e-2

    def __post_init__(self):
        if self.mode not in ("fixed", "adaptive"):
            raise ValueError(f"unknown stepping mode {self.mode!r}")
        if not (self.dt > 0 and np.isfinite(self.dt)):
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.mode == "adaptive":
            if self.rel_tol <= 0 or self.abs_tol <= 0:
                raise ValueError("adaptive tolerances must be positive")
            if not 0 < self.min_dt <= self.dt <= self.max_dt:
                raise ValueError("need min_dt <= dt <= max_dt, all positive")


@dataclass
class Trajectory:
    """Recorded states of one evolution run."""
    times: list[float]
    snapshots: list[SampledCurve]
    events: list[tuple[float, str]]
    params: PhysicalParams
    control: StepControl
    smoothing_eps: float | None = None
    status: str = STATUS_OK

    @property
    def final(self) -> SampledCurve:
        return self.snapshots[-1]

    @property
    def final_time(self) -> float:
        return self.times[-1]

    @property
    def direction(self) -> int:
        return -1 if self.times[-1] < self.times[0] else 1


def rk45_step(curve: SampledCurve, params: PhysicalParams, dt: float,
              filt: FilterSpec = DEFAULT_FILTER,
              floor: float = ARC_CHORD_FLOOR) -> tuple[SampledCurve, float]:
    """One Dormand-Prince step of size dt (dt = 0 is the identity).

    Returns the fourth-order update together with the embedded-pair
    max-norm error estimate.
    """
    if dt == 0.0:
        return curve.with_samples(curve.p1, curve.z2), 0.0
    y = np.stack((curve.p1, curve.z2))
    stages = np.empty((7,) + y.shape)
    for i in range(7):
        yi = y if i == 0 else y + dt * np.tensordot(_DP_A[i, :i], stages[:i],
                                                    axes=1)
        if not np.isfinite(yi).all():
            raise NanEncountered(f"non-finite state in stage {i}")
        vf = periodic_rhs(curve.with_samples(yi[0], yi[1]), params, filt,
                          floor)
        stages[i] = (vf.v1, vf.v2)
    y4 = y + dt * np.tensordot(_DP_B4, stages, axes=1)
    y5 = y + dt * np.tensordot(_DP_B5, stages, axes=1)
    if not np.isfinite(y4).all():
        raise NanEncountered("non-finite state after step")
    return curve.with_samples(y4[0], y4[1]), float(np.max(np.abs(y5 - y4)))


def _smoothed(curve: SampledCurve, eps: float) -> SampledCurve:
    return curve.with_samples(threshold_smooth(curve.p1, eps),
                              threshold_smooth(curve.z2, eps))


def _min_slope(curve: SampledCurve, filt: FilterSpec) -> float:
    return float(np.min(1.0 + filtered_derivative(curve.p1, 1, filt)))


def _march_fixed(traj: Trajectory, t_goal: float, dt_signed: float,
                 filt: FilterSpec, floor: float,
                 snapshot_every: float | None,
                 stop_when: Callable[[float, SampledCurve], bool] | None):
    """Advance traj in place with fixed steps until t_goal (plus remainder)."""
    sgn = 1.0 if dt_signed > 0 else -1.0
    t = traj.times[-1]
    cur = traj.snapshots[-1]
    last_rec = t
    tiny = 1e-12 * max(1.0, abs(t_goal), abs(t))
    while (t_goal - t) * sgn > tiny:
        h = dt_signed
        if (t_goal - (t + h)) * sgn < 0.0:
            h = t_goal - t
        try:
            cur, _ = rk45_step(cur, traj.params, h, filt, floor)
        except ArcChordError:
            traj.status = STATUS_ARC_CHORD
            traj.events.append((t, STATUS_ARC_CHORD))
            break
        except NanEncountered:
            traj.status = STATUS_NAN
            traj.events.append((t, STATUS_NAN))
            break
        if traj.smoothing_eps is not None:
            cur = _smoothed(cur, traj.smoothing_eps)
        t += h
        done = (t_goal - t) * sgn <= tiny
        due = snapshot_every is not None and (
            abs(t - last_rec) >= snapshot_every * (1.0 - 1e-9))
        if due or done:
            traj.times.append(t)
            traj.snapshots.append(cur)
            last_rec = t
        if stop_when is not None and stop_when(t, cur):
            if traj.times[-1] != t:
                traj.times.append(t)
                traj.snapshots.append(cur)
            traj.events.append((t, EVENT_EARLY_STOP))
            break
    if traj.times[-1] != t and traj.status == STATUS_OK:
        traj.times.append(t)
        traj.snapshots.append(cur)


def _march_adaptive(traj: Trajectory, t_goal: float, filt: FilterSpec,
                    floor: float, snapshot_every: float | None,
                    stop_when: Callable[[float, SampledCurve], bool] | None):
    ctl = traj.control
    t = traj.times[-1]
    cur = traj.snapshots[-1]
    last_rec = t
    dt = ctl.dt
    tiny = 1e-12 * max(1.0, abs(t_goal))
    while t_goal - t > tiny:
        h = min(dt, t_goal - t)
        try:
            cand, err = rk45_step(cur, traj.params, h, filt, floor)
        except ArcChordError:
            traj.status = STATUS_ARC_CHORD
            traj.events.append((t, STATUS_ARC_CHORD))
            break
        except NanEncountered:
            traj.status = STATUS_NAN
            traj.events.append((t, STATUS_NAN))
            break
        scale = ctl.abs_tol + ctl.rel_tol * max(
            float(np.max(np.abs(cur.p1))), float(np.max(np.abs(cur.z2))), 1.0)
        if err <= scale:
            cur = cand
            if traj.smoothing_eps is not None:
                cur = _smoothed(cur, traj.smoothing_eps)
            t += h
            done = t_goal - t <= tiny
            due = snapshot_every is not None and (
                t - last_rec >= snapshot_every * (1.0 - 1e-9))
            if due or done:
                traj.times.append(t)
                traj.snapshots.append(cur)
                last_rec = t
            if stop_when is not None and stop_when(t, cur):
                if traj.times[-1] != t:
                    traj.times.append(t)
                    traj.snapshots.append(cur)
                traj.events.append((t, EVENT_EARLY_STOP))
                break
        # local error of the propagated member is O(h^5)
        grow = ctl.safety * (scale / err) ** 0.2 if err > 0 else 5.0
        dt = float(np.clip(h * min(grow, 5.0), ctl.min_dt, ctl.max_dt))
        if err > scale and h <= ctl.min_dt * (1.0 + 1e-9):
            traj.status = STATUS_NAN
            traj.events.append((t, "STEP_UNDERFLOW"))
            break
    if traj.times[-1] != t and traj.status == STATUS_OK:
        traj.times.append(t)
        traj.snapshots.append(cur)


def evolve_forward(curve: SampledCurve, params: PhysicalParams, t_end: float,
                   control: StepControl | None = None, *, t0: float = 0.0,
                   snapshot_every: float | None = None,
                   stop_when: Callable[[float, SampledCurve], bool] | None = None,
                   filt: FilterSpec = DEFAULT_FILTER,
                   floor: float = ARC_CHORD_FLOOR) -> Trajectory:
    """March from t0 to t_end; arc-chord or NaN failures end the run early
    with the last valid state retained and the status field set."""
    control = control or StepControl()
    if not t_end > t0:
        raise ValueError(f"need t_end > t0, got {t_end} <= {t0}")
    traj = Trajectory(times=[float(t0)], snapshots=[curve], events=[],
                      params=params, control=control)
    if control.mode == "fixed":
        _march_fixed(traj, float(t_end), control.dt, filt, floor,
                     snapshot_every, stop_when)
    else:
        _march_adaptive(traj, float(t_end), filt, floor, snapshot_every,
                        stop_when)
    return traj


def evolve_backward_regularized(curve: SampledCurve, params: PhysicalParams,
                                t_final: float, *, dt: float = 4e-5,
                                eps: float = 1e-6,
                                snapshot_every: float | None = None,
                                filt: FilterSpec = DEFAULT_FILTER,
                                floor: float = ARC_CHORD_FLOOR) -> Trajectory:
    """March from t = 0 down to t_final < 0, re-thresholding after each step.

    The backward problem is ill posed; the spectral threshold eps is the
    regularization and the run is only meaningful while it stays stable.
    NaN or arc-chord failures stop the run with the last valid state kept.
    """
    if not t_final < 0.0:
        raise ValueError(f"need t_final < 0, got {t_final}")
    control = StepControl(mode="fixed", dt=float(dt))
    traj = Trajectory(times=[0.0], snapshots=[_smoothed(curve, eps)],
                      events=[], params=params, control=control,
                      smoothing_eps=float(eps))
    _march_fixed(traj, float(t_final), -control.dt, filt, floor,
                 snapshot_every, None)
    return traj


def detect_event_times(traj: Trajectory, tol: float = 1e-8,
                       filt: FilterSpec = DEFAULT_FILTER,
                       floor: float = ARC_CHORD_FLOOR
                       ) -> list[tuple[float, str]]:
    """Locate sign changes of min d_alpha z1 between stored snapshots.

    Each bracketing snapshot gap is re-integrated with the trajectory's own
    step (and smoothing, if any) until one step straddles the flip, then the
    crossing is bisected with partial steps from the pre-crossing state down
    to width tol. Gaps whose endpoints agree in sign are not searched, so a
    double flip between consecutive snapshots goes unreported.
    """
    if len(traj.snapshots) < 2:
        return []
    sgn = float(traj.direction)
    step = sgn * traj.control.dt
    eps = traj.smoothing_eps

    def advance(state: SampledCurve, h: float) -> SampledCurve:
        nxt, _ = rk45_step(state, traj.params, h, filt, floor)
        return _smoothed(nxt, eps) if eps is not None else nxt

    stable = [_min_slope(c, filt) > 0.0 for c in traj.snapshots]
    events: list[tuple[float, str]] = []
    for i in range(len(stable) - 1):
        if stable[i] == stable[i + 1]:
            continue
        kind = EVENT_ENTER_STABLE if stable[i + 1] else EVENT_ENTER_UNSTABLE
        t_a = traj.times[i]
        cur = traj.snapshots[i]
        s_a = stable[i]
        gap_end = traj.times[i + 1]
        try:
            while (gap_end - t_a) * sgn > 1e-15:
                h = step
                if (gap_end - (t_a + h)) * sgn < 0.0:
                    h = gap_end - t_a
                nxt = advance(cur, h)
                if (_min_slope(nxt, filt) > 0.0) != s_a:
                    lo, hi = t_a, t_a + h
                    while abs(hi - lo) > tol:
                        mid = 0.5 * (lo + hi)
                        probe = advance(cur, mid - t_a)
                        if (_min_slope(probe, filt) > 0.0) == s_a:
                            lo = mid
                        else:
                            hi = mid
                    events.append((0.5 * (lo + hi), kind))
                    break
                t_a += h
                cur = nxt
        except (ArcChordError, NanEncountered):
            # the gap cannot be re-integrated (run died nearby); leave the
            # crossing unrefined rather than fail the whole scan
            continue
    return events
