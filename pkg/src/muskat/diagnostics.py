"""Interface diagnostics: turning state, norm histories, regime timelines.

Everything here is read-only over curves and trajectories. Stability is
judged by m = min_alpha d_alpha z1 with a small tolerance band:

    STABLE     m > slope_tol
    CRITICAL   |m| <= slope_tol
    UNSTABLE   m < -slope_tol

so a curve whose graph property degenerates at isolated points (slope
touching zero) is reported as critical rather than flapping between the
other two regimes under roundoff.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .core import GRAPH_SLOPE_TOL, SampledCurve
from .integrator import Trajectory, detect_event_times
from .spectral import DEFAULT_FILTER, FilterSpec, TrigInterpolant, filtered_derivative

REGIME_STABLE = "STABLE"
REGIME_CRITICAL = "CRITICAL"
REGIME_UNSTABLE = "UNSTABLE"

SLOPE_TOL = 1e-10

NEAR_CRITICAL_BAND = 0.1

TANGENT_ROOT_TOL = 1e-8


@dataclass(frozen=True)
class TurningReport:
    """Turning state of a single curve."""
    min_slope: float
    argmin: float
    regime: str
    tangent_points: tuple[tuple[float, float, float], ...]
    slope_tol: float


@dataclass(frozen=True)
class NormSeries:
    """sup |f| and sup |f'| along a trajectory; slope is NaN off-graph."""
    times: np.ndarray
    sup_f: np.ndarray
    sup_slope: np.ndarray


def classify_slope(min_slope: float, slope_tol: float = SLOPE_TOL) -> str:
    if min_slope > slope_tol:
        return REGIME_STABLE
    if min_slope < -slope_tol:
        return REGIME_UNSTABLE
    return REGIME_CRITICAL


def _refine_minimum(alphas: np.ndarray, s: np.ndarray, i: int,
                    h: float) -> tuple[float, float]:
    """Parabola through the cyclic triple around node i; returns (alpha, s)."""
    n = len(s)
    sm, s0, sp = s[(i - 1) % n], s[i], s[(i + 1) % n]
    den = sm - 2.0 * s0 + sp
    if den <= 0.0:
        return float(alphas[i]), float(s0)
    off = 0.5 * (sm - sp) / den
    off = float(np.clip(off, -1.0, 1.0))
    val = s0 - 0.25 * (sm - sp) * off
    return float(alphas[i] + off * h), float(val)


def turning_report(curve: SampledCurve, slope_tol: float = SLOPE_TOL,
                   filt: FilterSpec = DEFAULT_FILTER) -> TurningReport:
    """Minimum slope, its refined location, regime, and vertical tangents.

    Tangent points are sign changes of d_alpha z1 along the period,
    polished on the band-limited interpolant to |slope| < 1e-8; nearby
    duplicates from a slope grazing zero at a node collapse to one point.
    """
    grid = curve.grid
    s = 1.0 + filtered_derivative(curve.p1, 1, filt)
    i_min = int(np.argmin(s))
    argmin, min_slope = _refine_minimum(grid.nodes, s, i_min, grid.spacing)

    p1_i = TrigInterpolant(curve.p1, filt)
    z2_i = TrigInterpolant(curve.z2, filt)
    slope = lambda a: 1.0 + p1_i(a, order=1)

    n = grid.n
    roots: list[float] = []
    for i in range(n):
        a, b = grid.nodes[i], grid.nodes[i] + grid.spacing
        sa, sb = s[i], s[(i + 1) % n]
        if (sa > 0.0) == (sb > 0.0):
            continue
        try:
            root = brentq(slope, a, b, xtol=1e-14)
        except ValueError:
            # interpolant and node values disagree in sign under roundoff
            continue
        if abs(slope(root)) < TANGENT_ROOT_TOL:
            roots.append(float(root))
    merged: list[float] = []
    for r in sorted(roots):
        if merged and r - merged[-1] < 0.25 * grid.spacing:
            merged[-1] = 0.5 * (merged[-1] + r)
        else:
            merged.append(r)
    points = tuple((r, r + float(p1_i(r)), float(z2_i(r))) for r in merged)
    return TurningReport(min_slope=min_slope, argmin=argmin,
                         regime=classify_slope(min_slope, slope_tol),
                         tangent_points=points, slope_tol=slope_tol)


def near_critical_minima(curve: SampledCurve,
                         band: float = NEAR_CRITICAL_BAND,
                         filt: FilterSpec = DEFAULT_FILTER
                         ) -> tuple[tuple[float, float], ...]:
    """Refined local minima of the slope with value within band of zero.

    These are the candidate turnover sites while the interface is still a
    graph; each entry is (alpha, slope).
    """
    grid = curve.grid
    s = 1.0 + filtered_derivative(curve.p1, 1, filt)
    n = grid.n
    out = []
    for i in range(n):
        if s[i] < s[(i - 1) % n] and s[i] <= s[(i + 1) % n]:
            alpha, val = _refine_minimum(grid.nodes, s, i, grid.spacing)
            if abs(val) <= band:
                out.append((alpha, val))
    return tuple(sorted(out))


def norm_series(traj: Trajectory,
                filt: FilterSpec = DEFAULT_FILTER) -> NormSeries:
    """sup |z2| and, while the curve is a graph, sup |dz2/dz1| per snapshot."""
    times = np.array(traj.times, dtype=float)
    sup_f = np.empty(len(times))
    sup_slope = np.empty(len(times))
    for i, c in enumerate(traj.snapshots):
        sup_f[i] = np.max(np.abs(c.z2))
        dz1 = 1.0 + filtered_derivative(c.p1, 1, filt)
        dz2 = filtered_derivative(c.z2, 1, filt)
        if np.min(dz1) > GRAPH_SLOPE_TOL:
            sup_slope[i] = np.max(np.abs(dz2 / dz1))
        else:
            sup_slope[i] = np.nan
    return NormSeries(times=times, sup_f=sup_f, sup_slope=sup_slope)


def regime_timeline(traj: Trajectory, slope_tol: float = SLOPE_TOL,
                    filt: FilterSpec = DEFAULT_FILTER,
                    events: tuple[tuple[float, str], ...] | None = None
                    ) -> tuple[tuple[tuple[float, float], str], ...]:
    """Partition of [t0, t_end] into constant-regime segments.

    Segment boundaries between stable and unstable snapshots are refined by
    detect_event_times (pass precomputed events to skip that work); other
    boundaries, and gaps without a located event, fall back to the midpoint
    of the enclosing snapshot gap. Intervals are in stored (possibly
    reversed) time order and tile the full run exactly.
    """
    times = traj.times
    if len(times) < 2:
        raise ValueError("timeline needs at least two snapshots")
    regs = [classify_slope(
        float(np.min(1.0 + filtered_derivative(c.p1, 1, filt))), slope_tol)
        for c in traj.snapshots]
    if events is None:
        events = tuple(detect_event_times(traj, filt=filt))
    sgn = float(traj.direction)

    segments: list[tuple[tuple[float, float], str]] = []
    seg_start = times[0]
    for i in range(1, len(regs)):
        if regs[i] == regs[i - 1]:
            continue
        lo, hi = times[i - 1], times[i]
        boundary = 0.5 * (lo + hi)
        for t_ev, _ in events:
            if (t_ev - lo) * sgn >= 0.0 and (hi - t_ev) * sgn >= 0.0:
                boundary = t_ev
                break
        segments.append(((seg_start, boundary), regs[i - 1]))
        seg_start = boundary
    segments.append(((seg_start, times[-1]), regs[-1]))
    return tuple(segments)
