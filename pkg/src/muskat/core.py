"""Grids, sampled interface curves and physical parameters.

Curves are stored as z(alpha) = (alpha + p1(alpha), z2(alpha)) with p1 and z2
periodic on [-pi, pi), so dz1/dalpha = 1 + dp1/dalpha and horizontal
differences between nodes stay well defined. The grid starts at -pi, which
places alpha = 0 on a node (index n/2); the presets below have their critical
point there.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace

import numpy as np

from .spectral import DEFAULT_FILTER, FilterSpec, filtered_derivative

#: density_jump value that makes the velocity prefactor (rho- - rho+)/(4 pi)
#: equal to one; the scenario defaults use it.
UNIT_PREFACTOR_DENSITY_JUMP = 4.0 * math.pi

# Slopes below this are treated as vanishing in the graph test; the seed
# curve's exact zero at alpha = 0 lands at +-1e-16 after the FFT round trip.
GRAPH_SLOPE_TOL = 1e-12


def _frozen_array(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid alpha_i = -pi + i*2*pi/n on [-pi, pi)."""

    n: int
    nodes: np.ndarray

    @property
    def spacing(self) -> float:
        return 2.0 * math.pi / self.n


def make_grid(n: int) -> Grid:
    """Build the n-node grid; n must be even and at least 4."""
    if not isinstance(n, (int, np.integer)):
        raise TypeError("grid size must be an integer")
    if n % 2 or n < 4:
        raise ValueError(f"grid size must be even and >= 4, got {n}")
    nodes = -math.pi + 2.0 * math.pi * np.arange(n) / n
    return Grid(n=int(n), nodes=_frozen_array(nodes))


@dataclass(frozen=True)
class SampledCurve:
    """Interface samples: z1 = nodes + p1, z2; p1 and z2 periodic."""

    grid: Grid
    p1: np.ndarray
    z2: np.ndarray

    def __post_init__(self):
        for name in ("p1", "z2"):
            arr = getattr(self, name)
            if arr.shape != (self.grid.n,):
                raise ValueError(f"{name} must have one sample per node")
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} contains non-finite samples")

    @property
    def z1(self) -> np.ndarray:
        return self.grid.nodes + self.p1

    def with_samples(self, p1, z2) -> "SampledCurve":
        return replace(self, p1=_frozen_array(p1), z2=_frozen_array(z2))


def make_curve(grid: Grid, p1, z2) -> SampledCurve:
    return SampledCurve(grid=grid, p1=_frozen_array(p1), z2=_frozen_array(z2))


@dataclass(frozen=True)
class PhysicalParams:
    """Density jump rho- - rho+ across the interface; gravity is rescaled
    to one and kept only so the Rayleigh-Taylor profile reads literally."""

    density_jump: float = UNIT_PREFACTOR_DENSITY_JUMP
    gravity: float = 1.0

    def __post_init__(self):
        if self.density_jump == 0:
            raise ValueError("density_jump must be nonzero")
        if self.gravity != 1.0:
            raise ValueError("gravity is fixed to 1 in this rescaling")

    @property
    def prefactor(self) -> float:
        """The velocity prefactor (rho- - rho+)/(4 pi)."""
        return self.density_jump / (4.0 * math.pi)


@dataclass(frozen=True)
class GraphView:
    """A curve re-read as a graph: f(x) sampled at strictly increasing x."""

    x: np.ndarray
    f: np.ndarray
    slope: np.ndarray

    def __post_init__(self):
        if not (self.x.shape == self.f.shape == self.slope.shape):
            raise ValueError("x, f and slope must share a shape")
        if np.any(np.diff(self.x) <= 0):
            raise ValueError("graph abscissae must be strictly increasing")


class NotAGraphError(ValueError):
    """Raised when dz1/dalpha fails to stay positive at every node."""

    def __init__(self, nodes: np.ndarray, alphas: np.ndarray):
        self.nodes = tuple(int(i) for i in nodes)
        self.alphas = tuple(float(a) for a in alphas)
        locs = ", ".join(f"{a:.6g}" for a in self.alphas[:8])
        more = "" if len(self.alphas) <= 8 else ", ..."
        super().__init__(
            f"curve is not a graph: dz1/dalpha <= 0 at alpha = {locs}{more}")


_PRESET_CALL = re.compile(r"^DELTA_TILT\(([^)]+)\)$", re.IGNORECASE)


def sample_preset(name: str, grid: Grid, delta: float | None = None) -> SampledCurve:
    """Sample one of the named initial conditions on the grid.

    SEED_T0        z1 = alpha - sin(alpha),
                   z2 = (3 sin(alpha) + 8 sin(2 alpha) + 3 sin(3 alpha))/4
    CONJ_T0        z1 = alpha - 0.96 sin(alpha), z2 = (2/3) sin(3 alpha)
    DELTA_TILT     z1 = alpha - (1-delta) sin(alpha), seed z2; delta through
                   the keyword or inline as "DELTA_TILT(0.1)"
    """
    a = grid.nodes
    key = name.strip().upper()
    call = _PRESET_CALL.match(name.strip())
    if call:
        key = "DELTA_TILT"
        if delta is not None:
            raise ValueError("delta given both inline and as a keyword")
        delta = float(call.group(1))
    if key in ("SEED_T0", "CONJ_T0") and delta is not None:
        raise ValueError(f"preset {key} takes no delta")
    if key == "SEED_T0":
        p1 = -np.sin(a)
        z2 = (3 * np.sin(a) + 8 * np.sin(2 * a) + 3 * np.sin(3 * a)) / 4
    elif key == "CONJ_T0":
        p1 = -0.96 * np.sin(a)
        z2 = (2.0 / 3.0) * np.sin(3 * a)
    elif key == "DELTA_TILT":
        if delta is None:
            raise ValueError("DELTA_TILT needs a delta value")
        if not 0.0 < float(delta) < 1.0:
            raise ValueError(f"DELTA_TILT needs 0 < delta < 1, got {delta}")
        p1 = -(1.0 - float(delta)) * np.sin(a)
        z2 = (3 * np.sin(a) + 8 * np.sin(2 * a) + 3 * np.sin(3 * a)) / 4
    else:
        raise ValueError(f"unknown preset {name!r}")
    return make_curve(grid, p1, z2)


def to_graph(curve: SampledCurve, filt: FilterSpec = DEFAULT_FILTER,
             tol: float = GRAPH_SLOPE_TOL) -> GraphView:
    """Reinterpret the curve as a graph f(x), or raise NotAGraphError.

    The slope test uses the filtered spectral derivative; nodes where
    dz1/dalpha <= tol are reported as offenders.
    """
    dz1 = 1.0 + filtered_derivative(curve.p1, 1, filt)
    bad = np.flatnonzero(dz1 <= tol)
    if bad.size:
        raise NotAGraphError(bad, curve.grid.nodes[bad])
    dz2 = filtered_derivative(curve.z2, 1, filt)
    return GraphView(x=_frozen_array(curve.z1), f=_frozen_array(curve.z2),
                     slope=_frozen_array(dz2 / dz1))
