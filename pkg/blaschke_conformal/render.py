#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Critical level curves of ``|B|`` on the disk and ``|p|`` on its lemniscate.

A modulus field is sampled on a rectangular grid (NaN outside the region of
interest), contours are extracted by marching squares and the sublevel bands
are shaded in grayscale, lightest below the smallest critical modulus.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import ndimage

from .algebra import ComplexPolynomial, poly_eval
from .blaschke import FiniteBlaschkeProduct, blaschke_eval
from .errors import InvalidInput
from .modeler import ConformalModel
from .svg import SvgDocument

logger = logging.getLogger(__name__)

Bounds = Tuple[float, float, float, float]

FIGURE_RESOLUTION = 512
ORACLE_RESOLUTION = 128
DISK_BOUNDS: Bounds = (-1.05, 1.05, -1.05, 1.05)
LIGHTEST_GRAY = 235
DARKEST_GRAY = 96

# corner bits: 1 = (0, 0), 2 = (0, 1), 4 = (1, 1), 8 = (1, 0) as (row, column) offsets
_CORNERS = ((0, 0), (0, 1), (1, 1), (1, 0))
# edges as corner index pairs: bottom, right, top, left
_EDGES = ((0, 1), (1, 2), (3, 2), (0, 3))


@dataclass(frozen=True, eq=False)
class ScalarField:
    """Samples ``values[iy, ix]`` of a real field at ``x = re_min + ix dx``, ``y = im_min + iy dy``."""

    bounds: Bounds
    nx: int
    ny: int
    values: np.ndarray

    def __post_init__(self):
        if self.nx < 16 or self.ny < 16:
            raise InvalidInput(f"field needs at least 16x16 samples, got {self.nx}x{self.ny}")
        if self.values.shape != (self.ny, self.nx):
            raise InvalidInput(f"values shape {self.values.shape} does not match {self.ny}x{self.nx}")
        re_min, re_max, im_min, im_max = self.bounds
        if not (re_min < re_max and im_min < im_max):
            raise InvalidInput(f"degenerate bounds {self.bounds}")

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.bounds[0], self.bounds[1], self.nx)

    @property
    def ys(self) -> np.ndarray:
        return np.linspace(self.bounds[2], self.bounds[3], self.ny)

    @property
    def dx(self) -> float:
        return (self.bounds[1] - self.bounds[0]) / (self.nx - 1)

    @property
    def dy(self) -> float:
        return (self.bounds[3] - self.bounds[2]) / (self.ny - 1)

    def points(self) -> np.ndarray:
        return self.xs[None, :] + 1j * self.ys[:, None]


@dataclass(frozen=True, eq=False)
class LevelCurveFigure:
    """A field with its critical levels, band shading and contour polylines."""

    field: ScalarField
    levels: Tuple[float, ...]
    band_styles: Tuple[str, ...]
    contours: Dict[float, List[np.ndarray]]
    title: str = ""

    def __post_init__(self):
        levels = np.asarray(self.levels)
        if levels.size == 0 or np.any(np.diff(levels) <= 0):
            raise InvalidInput(f"levels must be non-empty and strictly increasing, got {self.levels}")
        if levels[0] <= 0 or levels[-1] > 1:
            raise InvalidInput(f"levels must lie in (0, 1], got {self.levels}")


def sample_modulus(f: Callable[[np.ndarray], np.ndarray], bounds: Bounds, nx: int, ny: int,
                   domain_mask: Optional[Callable[[np.ndarray], np.ndarray]] = None) -> ScalarField:
    """``|f|`` on an ``nx`` by ``ny`` grid; NaN where ``domain_mask`` rejects.

    Args:
        f: Vectorised evaluator
        bounds: ``(re_min, re_max, im_min, im_max)``
        nx: Samples along the real axis
        ny: Samples along the imaginary axis
        domain_mask: Vectorised predicate; ``f`` is evaluated only where it holds

    Returns:
        ScalarField with the sampled moduli
    """
    if nx < 16 or ny < 16:
        raise InvalidInput(f"field needs at least 16x16 samples, got {nx}x{ny}")
    xs = np.linspace(bounds[0], bounds[1], nx)
    ys = np.linspace(bounds[2], bounds[3], ny)
    z = xs[None, :] + 1j * ys[:, None]
    values = np.full(z.shape, np.nan)
    inside = np.ones(z.shape, dtype=bool) if domain_mask is None else np.asarray(domain_mask(z), dtype=bool)
    values[inside] = np.abs(f(z[inside]))
    return ScalarField(tuple(float(b) for b in bounds), nx, ny, values)


def _crossing(field: ScalarField, level: float, a: Tuple[int, int], b: Tuple[int, int]) -> complex:
    va, vb = field.values[a], field.values[b]
    t = (level - va) / (vb - va)
    za = field.bounds[0] + a[1] * field.dx + 1j * (field.bounds[2] + a[0] * field.dy)
    zb = field.bounds[0] + b[1] * field.dx + 1j * (field.bounds[2] + b[0] * field.dy)
    return za + t * (zb - za)


def _edge_key(corner_a: Tuple[int, int], corner_b: Tuple[int, int]) -> Tuple[int, int, int, int]:
    return min(corner_a, corner_b) + max(corner_a, corner_b)


def _cell_segments(values: np.ndarray, level: float, iy: int, ix: int) -> List[Tuple[int, int]]:
    corner_values = [values[iy + dy, ix + dx] for dy, dx in _CORNERS]
    above = [v > level for v in corner_values]
    crossed = [k for k, (i, j) in enumerate(_EDGES) if above[i] != above[j]]
    if len(crossed) == 2:
        return [tuple(crossed)]
    # saddle: the centre average decides which diagonal pair is joined
    centre_above = sum(corner_values) / 4 > level
    if above[0] == centre_above:
        # corners 1 and 3 are isolated
        return [(0, 1), (2, 3)]
    return [(0, 3), (1, 2)]


def _join(segments: List[Tuple[tuple, tuple]], points: Dict[tuple, complex]) -> List[np.ndarray]:
    touching: Dict[tuple, List[int]] = {}
    for index, (a, b) in enumerate(segments):
        touching.setdefault(a, []).append(index)
        touching.setdefault(b, []).append(index)

    used = [False] * len(segments)
    polylines: List[np.ndarray] = []

    def walk(start_index: int, start_key: tuple) -> List[tuple]:
        keys = [start_key]
        index, key = start_index, start_key
        while True:
            used[index] = True
            a, b = segments[index]
            key = b if a == key else a
            keys.append(key)
            following = [k for k in touching[key] if not used[k]]
            if not following:
                return keys
            index = following[0]

    ends = sorted(key for key, owners in touching.items() if len(owners) == 1)
    for key in ends:
        owner = touching[key][0]
        if not used[owner]:
            polylines.append(np.array([points[k] for k in walk(owner, key)]))
    for index in range(len(segments)):
        if not used[index]:
            polylines.append(np.array([points[k] for k in walk(index, segments[index][0])]))
    return polylines


def extract_contours(field: ScalarField, level: float) -> List[np.ndarray]:
    """Marching-squares polylines of ``field == level``.

    Cells touching a NaN sample are skipped. A closed polyline repeats its
    first vertex at the end.

    Returns:
        List of complex vertex arrays
    """
    v = field.values
    quad = np.stack([v[:-1, :-1], v[:-1, 1:], v[1:, 1:], v[1:, :-1]])
    valid = np.all(np.isfinite(quad), axis=0)
    with np.errstate(invalid="ignore"):
        straddles = valid & (np.nanmin(quad, axis=0) <= level) & (np.nanmax(quad, axis=0) > level)

    segments: List[Tuple[tuple, tuple]] = []
    points: Dict[tuple, complex] = {}
    for iy, ix in zip(*np.nonzero(straddles)):
        iy, ix = int(iy), int(ix)
        corners = [(iy + dy, ix + dx) for dy, dx in _CORNERS]
        keys = []
        for edge in _EDGES:
            a, b = corners[edge[0]], corners[edge[1]]
            key = _edge_key(a, b)
            if key not in points and (v[a] > level) != (v[b] > level):
                points[key] = _crossing(field, level, a, b)
            keys.append(key)
        for first, second in _cell_segments(v, level, iy, ix):
            segments.append((keys[first], keys[second]))
    polylines = _join(segments, points)
    logger.debug("level %.6f: %d segments in %d polylines", level, len(segments), len(polylines))
    return polylines


def component_count(field: ScalarField, threshold: float) -> int:
    """Number of 4-connected components of ``{values < threshold}``; NaN is outside."""
    with np.errstate(invalid="ignore"):
        mask = np.isfinite(field.values) & (field.values < threshold)
    _, count = ndimage.label(mask)
    return int(count)


def bilinear_sample(field: ScalarField, points) -> np.ndarray:
    """Bilinear interpolation of the field at complex ``points``."""
    z = np.asarray(points, dtype=complex)
    u = (z.real - field.bounds[0]) / field.dx
    w = (z.imag - field.bounds[2]) / field.dy
    ix = np.clip(np.floor(u).astype(int), 0, field.nx - 2)
    iy = np.clip(np.floor(w).astype(int), 0, field.ny - 2)
    s, t = u - ix, w - iy
    v = field.values
    return ((1 - s) * (1 - t) * v[iy, ix] + s * (1 - t) * v[iy, ix + 1]
            + s * t * v[iy + 1, ix + 1] + (1 - s) * t * v[iy + 1, ix])


def critical_levels(critical_values: Sequence[complex], merge: float = 1e-9) -> Tuple[float, ...]:
    """Distinct critical moduli in ``(0, 1)``, sorted, followed by the outer level 1."""
    levels: List[float] = []
    for modulus in sorted(abs(k) for k in critical_values):
        if 0 < modulus < 1 and (not levels or modulus - levels[-1] > merge):
            levels.append(float(modulus))
    return tuple(levels) + (1.0,)


def band_styles(count: int) -> Tuple[str, ...]:
    """Gray fills, lightest first; depends only on the band count."""
    span = max(count - 1, 1)
    grays = [round(LIGHTEST_GRAY - (LIGHTEST_GRAY - DARKEST_GRAY) * i / span) for i in range(count)]
    return tuple(f"#{g:02x}{g:02x}{g:02x}" for g in grays)


def build_figure(field: ScalarField, levels: Sequence[float], title: str = "") -> LevelCurveFigure:
    finite = field.values[np.isfinite(field.values)]
    low, high = float(finite.min()), float(finite.max())
    contours = {float(t): (extract_contours(field, t) if low < t < high else []) for t in levels}
    return LevelCurveFigure(field, tuple(float(t) for t in levels), band_styles(len(levels)), contours, title)


def disk_mask(field_bounds: Bounds, n: int) -> Callable[[np.ndarray], np.ndarray]:
    """Points within two cells outside the unit circle, so the level-1 curve is resolved."""
    margin = 2 * (field_bounds[1] - field_bounds[0]) / (n - 1)
    return lambda z: np.abs(z) <= 1 + margin


def cauchy_bound_box(p: ComplexPolynomial, padding: float = 0.1) -> Bounds:
    """Square enclosing ``{|p| <= 1}``.

    Every root of ``p - w`` with ``|w| <= 1`` satisfies
    ``|z| <= 1 + max(|a_0| + 1, |a_1|, ..., |a_{n-1}|) / |a_n|``.
    """
    a = np.abs(p.array)
    lower = a[:-1].copy()
    lower[0] += 1
    half = (1 + padding) * (1 + float(lower.max()) / a[-1])
    return (-half, half, -half, half)


def figure_for_blaschke(B: FiniteBlaschkeProduct, m: ConformalModel, n: int = FIGURE_RESOLUTION) -> LevelCurveFigure:
    field = sample_modulus(lambda z: blaschke_eval(B, z), DISK_BOUNDS, n, n, disk_mask(DISK_BOUNDS, n))
    return build_figure(field, critical_levels(m.critical_values), "critical level curves of B")


def figure_for_polynomial(m: ConformalModel, n: int = FIGURE_RESOLUTION) -> LevelCurveFigure:
    field = sample_modulus(lambda z: poly_eval(m.p, z), cauchy_bound_box(m.p), n, n)
    return build_figure(field, critical_levels(m.critical_values), "critical level curves of p")


def _band_runs(mask: np.ndarray) -> List[Tuple[int, int, int]]:
    """``(row, start, stop)`` runs of consecutive True cells."""
    padded = np.zeros((mask.shape[0], mask.shape[1] + 2), dtype=np.int8)
    padded[:, 1:-1] = mask
    edges = np.diff(padded, axis=1)
    runs = []
    for row in range(mask.shape[0]):
        starts = np.nonzero(edges[row] == 1)[0]
        stops = np.nonzero(edges[row] == -1)[0]
        runs.extend((row, int(a), int(b)) for a, b in zip(starts, stops))
    return runs


def render_figure(fig: LevelCurveFigure, size_px: int) -> str:
    """Deterministic SVG of the shaded bands and level curves.

    Args:
        fig: Figure to draw
        size_px: Width of the image in pixels (at least 100)

    Returns:
        SVG 1.1 document text
    """
    if size_px < 100:
        raise InvalidInput(f"size_px must be at least 100, got {size_px}")
    field = fig.field
    re_min, re_max, im_min, im_max = field.bounds
    scale = size_px / (re_max - re_min)
    height = int(round((im_max - im_min) * scale))

    def to_px(z: complex) -> Tuple[float, float]:
        return (z.real - re_min) * scale, (im_max - z.imag) * scale

    doc = SvgDocument()
    doc.header(size_px, height)
    if fig.title:
        doc.title(fig.title)

    values = field.values
    lower = 0.0
    doc.group_start({"class": "bands", "stroke": "none"})
    for level, fill in zip(fig.levels, fig.band_styles):
        with np.errstate(invalid="ignore"):
            band = np.isfinite(values) & (values >= lower) & (values < level)
        doc.group_start({"fill": fill})
        for row, start, stop in _band_runs(band):
            x1, y1 = to_px(complex(re_min + (start - 0.5) * field.dx, im_min + (row + 0.5) * field.dy))
            x2, y2 = to_px(complex(re_min + (stop - 0.5) * field.dx, im_min + (row - 0.5) * field.dy))
            doc.filled_rectangle(x1, y1, x2, y2)
        doc.group_end()
        lower = level
    doc.group_end()

    for level in fig.levels:
        polylines = fig.contours.get(level, [])
        if not polylines:
            continue
        closed = [len(line) > 2 and line[0] == line[-1] for line in polylines]
        shapes = [[to_px(z) for z in (line[:-1] if c else line)] for line, c in zip(polylines, closed)]
        width = 2.0 if level == 1.0 else 1.0
        doc.polyline_path(shapes, closed, "#000000", width, f'data-level="{level!r}"')
    return doc.get_svg()


def figure_pair(B: FiniteBlaschkeProduct, m: ConformalModel, size_px: int = 800,
                resolution: int = FIGURE_RESOLUTION) -> Tuple[str, str]:
    """SVG of ``|B|`` on the disk and of ``|p|`` on the lemniscate, with shared shading."""
    left = figure_for_blaschke(B, m, resolution)
    right = figure_for_polynomial(m, resolution)
    return render_figure(left, size_px), render_figure(right, size_px)
