#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Branch tracking for the cubic fiber equation ``phi**3 + c phi + (d - B) = 0``.

Three algebraic solutions satisfy ``B = p o phi``; at most one is analytic on
the disk. The analytic one is realised by numerical continuation over a polar
grid: a radial pass from the seed at ``z = 0`` along every angle, then a sweep
around every ring. A seed is accepted only if every ring closes on itself and
the sweep agrees with the radial pass at every node.
"""

import cmath
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import TYPE_CHECKING, Callable, List, Optional, Sequence

import numpy as np

from .algebra import (
    CUBE_ROOTS_OF_UNITY,
    ComplexPolynomial,
    depressed_cubic_roots,
    principal_nth_root,
    principal_nth_root_many,
    solve_low_degree,
)
from .blaschke import FiniteBlaschkeProduct, blaschke_derivative_eval, blaschke_eval, critical_points_in_disk
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    AmbiguousFiber,
    BranchSelectionFailure,
    InvalidInput,
    StepCollapse,
    ZeroU,
)
from .geometry import polyline_self_intersections

if TYPE_CHECKING:
    from .modeler import DepressedCubic

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PolarGridSpec:
    """Polar sampling grid: Chebyshev-spaced radii times uniform angles."""

    n_radii: int = 64
    n_angles: int = 256
    r_max: float = 0.999

    def __post_init__(self):
        if self.n_radii < 1:
            raise InvalidInput(f"n_radii must be positive, got {self.n_radii}")
        if self.n_angles < 8:
            raise InvalidInput(f"n_angles must be at least 8, got {self.n_angles}")
        if not 0.0 < self.r_max < 1.0:
            raise InvalidInput(f"r_max must lie in (0, 1), got {self.r_max}")

    @property
    def radii(self) -> np.ndarray:
        # clustered towards r_max, last radius equals r_max
        i = np.arange(1, self.n_radii + 1)
        return self.r_max * np.sin(np.pi * i / (2 * self.n_radii))

    @property
    def angles(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.n_angles) / self.n_angles

    def nodes(self) -> np.ndarray:
        """Nominal grid nodes, shape ``(n_radii, n_angles)``."""
        return polar_points(self.radii[:, None], self.angles[None, :])


def polar_points(r, theta) -> np.ndarray:
    return r * np.exp(1j * np.asarray(theta))


def polar_nodes(spec: PolarGridSpec, avoid: Sequence[complex] = (),
                tolerances: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Node radii with nodes near ``avoid`` points pushed outward radially.

    Returns:
        Array of shape ``(n_radii, n_angles)`` of node radii
    """
    radii = np.repeat(spec.radii[:, None], spec.n_angles, axis=1)
    nodes = polar_points(radii, spec.angles[None, :])
    for point in avoid:
        close = np.abs(nodes - point) < tolerances.node_avoid_radius
        if np.any(close):
            logger.debug("jittering %d grid node(s) near %s", int(close.sum()), point)
            radii = np.where(close, radii + tolerances.node_jitter, radii)
    return radii


@dataclass(frozen=True, eq=False)
class BranchGrid:
    """Samples of one tracked branch of phi on a polar grid."""

    spec: PolarGridSpec
    values: np.ndarray
    seed_index: int
    seed_value: complex
    monodromy_ok: bool
    max_step_refinements: int
    closure_defect: float = 0.0
    consistency_defect: float = 0.0
    passing_seed_count: int = 0
    algebraic_branch_index: Optional[int] = None
    node_radii: Optional[np.ndarray] = None

    def node(self, i: int, j: int) -> complex:
        radii = self.spec.radii[i] if self.node_radii is None else self.node_radii[i, j]
        return complex(polar_points(radii, self.spec.angles[j]))

    def nodes(self) -> np.ndarray:
        radii = self.spec.radii[:, None] if self.node_radii is None else self.node_radii
        return polar_points(radii, self.spec.angles[None, :])


@dataclass(frozen=True)
class UVRadicals:
    """The radicals of the cubic formula at one point."""

    discriminant_sqrt: complex
    U: complex
    V: complex

    @property
    def phi(self) -> complex:
        return self.U + self.V


def fiber_roots(p: "DepressedCubic", w: complex) -> List[complex]:
    """The three solutions of ``z**3 + c z + (d - w) = 0``."""
    return solve_low_degree(ComplexPolynomial((p.d - w, p.c, 0.0, 1.0)))


def fiber_roots_many(p: "DepressedCubic", w) -> np.ndarray:
    """Batch form of :func:`fiber_roots`, shape ``w.shape + (3,)``."""
    return depressed_cubic_roots(p.c, p.d - np.asarray(w, dtype=complex))


def algebraic_phi(p: "DepressedCubic", w: complex, branch: int,
                  tolerances: Tolerances = DEFAULT_TOLERANCES) -> UVRadicals:
    """One of the three cubic-formula candidates ``U + V`` over ``w``.

    The square root is principal; ``U`` is the principal cube root rotated by
    ``branch`` and ``V = -c / (3 U)`` so that ``U V = -c/3`` holds exactly.

    Raises:
        InvalidInput: If ``c == 0`` or ``branch`` is not 0, 1 or 2
        ZeroU: If the U radicand vanishes
    """
    if p.c == 0:
        raise InvalidInput("algebraic_phi requires c != 0")
    if branch not in (0, 1, 2):
        raise InvalidInput(f"branch must be 0, 1 or 2, got {branch}")
    shifted = p.d - w
    disc = cmath.sqrt(shifted * shifted / 4 + p.c ** 3 / 27)
    radicand = -shifted / 2 + disc
    if abs(radicand) <= 1e-15 * (abs(shifted) + abs(disc)) or radicand == 0:
        raise ZeroU(f"U radicand vanishes at w={w}")
    U = principal_nth_root(radicand, 3) * complex(CUBE_ROOTS_OF_UNITY[branch])
    V = (-p.c / 3) / U
    coupling = abs(U * V + p.c / 3)
    if coupling > tolerances.coupling * (1 + abs(p.c)):
        logger.warning("algebraic_phi: coupling defect %.3e at w=%s", coupling, w)
    return UVRadicals(disc, U, V)


def algebraic_phi_many(p: "DepressedCubic", w) -> np.ndarray:
    """All three ``U + V`` candidates for every ``w``; NaN where U vanishes."""
    shifted = p.d - np.asarray(w, dtype=complex)
    disc = np.sqrt(shifted * shifted / 4 + p.c ** 3 / 27)
    radicand = -shifted / 2 + disc
    vanished = radicand == 0
    U = principal_nth_root_many(np.where(vanished, 1.0, radicand), 3)[..., None] * CUBE_ROOTS_OF_UNITY
    candidates = U + (-p.c / 3) / U
    candidates[vanished] = np.nan
    return candidates


def _min_separation(roots: np.ndarray) -> np.ndarray:
    return np.minimum(
        np.minimum(np.abs(roots[..., 0] - roots[..., 1]), np.abs(roots[..., 0] - roots[..., 2])),
        np.abs(roots[..., 1] - roots[..., 2]),
    )


class _Tracker:
    """Vectorised predictor-corrector continuation with step bisection.

    Each step predicts along the tangent ``phi' = B'(z) / p'(phi)`` and snaps
    to the fiber root nearest the prediction. The step is accepted when that
    correction is below a quarter of the fiber separation at both endpoints;
    otherwise it is halved. Near a critical point of ``B`` two fiber roots
    cross like an X, and only the tangent tells the arms apart.
    """

    def __init__(self, p: "DepressedCubic", B: FiniteBlaschkeProduct, tolerances: Tolerances,
                 to_z: Callable[[np.ndarray, np.ndarray], np.ndarray] = polar_points):
        self.p = p
        self.B = B
        self.tolerances = tolerances
        self.to_z = to_z
        self.max_depth = 0

    def _tangent(self, values: np.ndarray, z: np.ndarray) -> np.ndarray:
        slope = 3 * values * values + self.p.c
        flat = np.abs(slope) <= 1e-12 * (1 + abs(self.p.c))
        return np.where(flat, 0.0, blaschke_derivative_eval(self.B, z) / np.where(flat, 1.0, slope))

    def advance(self, values, a0, a1, b0, b1, depth: int = 0) -> np.ndarray:
        """Continue ``values`` from ``to_z(a0, b0)`` to ``to_z(a1, b1)``."""
        z0 = self.to_z(a0, b0)
        z1 = self.to_z(a1, b1)
        predicted = values + self._tangent(values, z0) * (z1 - z0)
        roots = fiber_roots_many(self.p, blaschke_eval(self.B, z1))
        dist = np.abs(roots - predicted[:, None])
        pick = np.argmin(dist, axis=1)
        rows = np.arange(values.size)
        result = roots[rows, pick]
        separation = np.minimum(
            _min_separation(fiber_roots_many(self.p, blaschke_eval(self.B, z0))),
            _min_separation(roots),
        )
        accepted = dist[rows, pick] < 0.25 * separation

        rejected = np.nonzero(~accepted)[0]
        if rejected.size:
            if depth >= self.tolerances.max_refinements:
                where = complex(z1[rejected[0]])
                raise StepCollapse(f"continuation step collapsed near z={where}", where)
            self.max_depth = max(self.max_depth, depth + 1)
            am = 0.5 * (a0[rejected] + a1[rejected])
            bm = 0.5 * (b0[rejected] + b1[rejected])
            half = self.advance(values[rejected], a0[rejected], am, b0[rejected], bm, depth + 1)
            result[rejected] = self.advance(half, am, a1[rejected], bm, b1[rejected], depth + 1)
        return result


def _cartesian(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x + 1j * y


def continue_fiber_root(p: "DepressedCubic", B: FiniteBlaschkeProduct, value: complex, z0: complex, z1: complex,
                        tolerances: Tolerances = DEFAULT_TOLERANCES) -> complex:
    """Continue the fiber root ``value`` over ``B(z0)`` along the segment to ``z1``.

    Raises:
        StepCollapse: When bisection bottoms out on the segment
    """
    z0, z1 = complex(z0), complex(z1)
    tracker = _Tracker(p, B, tolerances, _cartesian)
    result = tracker.advance(
        np.array([value], dtype=complex),
        np.array([z0.real]), np.array([z1.real]), np.array([z0.imag]), np.array([z1.imag]),
    )
    return complex(result[0])


def track_branch(p: "DepressedCubic", B: FiniteBlaschkeProduct, spec: PolarGridSpec, seed_index: int,
                 tolerances: Tolerances = DEFAULT_TOLERANCES) -> BranchGrid:
    """Continue the fiber root ``seed_index`` of ``B(0)`` over the whole grid.

    Args:
        p: Depressed cubic model
        B: Degree three Blaschke product
        spec: Grid layout
        seed_index: Index into ``fiber_roots(p, B(0))``
        tolerances: Closure and refinement limits

    Returns:
        BranchGrid holding the ring-sweep values

    Raises:
        StepCollapse: When bisection bottoms out on the path
    """
    if seed_index not in (0, 1, 2):
        raise InvalidInput(f"seed_index must be 0, 1 or 2, got {seed_index}")
    seed = fiber_roots(p, blaschke_eval(B, 0j))[seed_index]
    avoid = [z for z, _ in critical_points_in_disk(B, tolerances).points]
    node_r = polar_nodes(spec, avoid, tolerances)
    theta = spec.angles
    tracker = _Tracker(p, B, tolerances)

    radial = np.empty(node_r.shape, dtype=complex)
    current = np.full(spec.n_angles, seed, dtype=complex)
    previous_r = np.zeros(spec.n_angles)
    for i in range(spec.n_radii):
        current = tracker.advance(current, previous_r, node_r[i], theta, theta)
        radial[i] = current
        previous_r = node_r[i]

    # every ring starts from the radial pass at theta = 0 and runs to theta = 2 pi
    theta_closed = np.append(theta, 2 * np.pi)
    values = np.empty_like(radial)
    values[:, 0] = radial[:, 0]
    current = radial[:, 0].copy()
    for j in range(spec.n_angles):
        t0 = np.full(spec.n_radii, theta_closed[j])
        t1 = np.full(spec.n_radii, theta_closed[j + 1])
        current = tracker.advance(current, node_r[:, j], node_r[:, (j + 1) % spec.n_angles], t0, t1)
        if j + 1 < spec.n_angles:
            values[:, j + 1] = current

    closure = float(np.max(np.abs(current - values[:, 0])))
    consistency = float(np.max(np.abs(values - radial)))
    monodromy_ok = closure <= tolerances.ring_closure and consistency <= tolerances.ring_closure
    logger.debug(
        "seed %d: closure %.3e, consistency %.3e, refinements %d",
        seed_index, closure, consistency, tracker.max_depth,
    )
    return BranchGrid(
        spec=spec,
        values=values,
        seed_index=seed_index,
        seed_value=complex(seed),
        monodromy_ok=monodromy_ok,
        max_step_refinements=tracker.max_depth,
        closure_defect=closure,
        consistency_defect=consistency,
        node_radii=node_r,
    )


def grid_residual(grid: BranchGrid, p: "DepressedCubic", B: FiniteBlaschkeProduct) -> float:
    """``sup |B(z) - p(phi(z))|`` over the grid nodes."""
    values = grid.values
    return float(np.max(np.abs(blaschke_eval(B, grid.nodes()) - (values ** 3 + p.c * values + p.d))))


def _gate(grid: BranchGrid, p: "DepressedCubic", B: FiniteBlaschkeProduct, tolerances: Tolerances) -> bool:
    if not grid.monodromy_ok:
        logger.info("seed %d rejected: ring closure %.3e, consistency %.3e",
                    grid.seed_index, grid.closure_defect, grid.consistency_defect)
        return False
    residual = grid_residual(grid, p, B)
    if residual > tolerances.residual:
        logger.info("seed %d rejected: residual %.3e", grid.seed_index, residual)
        return False
    crossings = polyline_self_intersections(grid.values[-1])
    if crossings:
        logger.info("seed %d rejected: outer ring image crosses itself %d time(s)", grid.seed_index, len(crossings))
        return False
    return True


def _distinct_seed_indices(seeds: Sequence[complex], radius: float) -> List[int]:
    kept: List[int] = []
    for index, seed in enumerate(seeds):
        if all(abs(seed - seeds[k]) > radius for k in kept):
            kept.append(index)
    return kept


def select_analytic_branch(p: "DepressedCubic", B: FiniteBlaschkeProduct, spec: PolarGridSpec,
                           tolerances: Tolerances = DEFAULT_TOLERANCES, workers: int = 1) -> BranchGrid:
    """Track every distinct seed and return the unique one passing all gates.

    The gates are ring monodromy, the grid residual and a self-intersection
    check on the image of the outer ring.

    Args:
        p: Depressed cubic model
        B: Degree three Blaschke product with distinct critical points
        spec: Grid layout
        tolerances: Gate thresholds
        workers: Seeds tracked concurrently when greater than one

    Raises:
        BranchSelectionFailure: If no seed or more than one seed passes
    """
    seeds = fiber_roots(p, blaschke_eval(B, 0j))
    indices = _distinct_seed_indices(seeds, tolerances.cluster_radius)

    def attempt(index: int) -> Optional[BranchGrid]:
        try:
            return track_branch(p, B, spec, index, tolerances)
        except StepCollapse as err:
            logger.info("seed %d rejected: %s", index, err)
            return None

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            grids = list(executor.map(attempt, indices))
    else:
        grids = [attempt(index) for index in indices]

    passing = [grid for grid in grids if grid is not None and _gate(grid, p, B, tolerances)]
    if len(passing) != 1:
        raise BranchSelectionFailure(
            f"{len(passing)} of {len(indices)} continuation seeds passed every gate; expected exactly one"
        )
    chosen = passing[0]
    branches = np.unique(algebraic_branch_map(chosen, p, B))
    branch_index = int(branches[0]) if branches.size == 1 else -1
    logger.info("selected seed %d (%s), algebraic branch %d", chosen.seed_index, chosen.seed_value, branch_index)
    return replace(chosen, passing_seed_count=len(passing), algebraic_branch_index=branch_index)


def _interpolate(grid: BranchGrid, z: np.ndarray) -> np.ndarray:
    # bilinear in (r, theta); the centre row is the seed
    spec = grid.spec
    radii = np.concatenate(([0.0], spec.radii))
    rows = np.vstack((np.full((1, spec.n_angles), grid.seed_value), grid.values))
    r = np.abs(z)
    i = np.clip(np.searchsorted(radii, r, side="right") - 1, 0, spec.n_radii - 1)
    s = np.clip((r - radii[i]) / (radii[i + 1] - radii[i]), 0.0, 1.0)
    u = np.mod(np.angle(z), 2 * np.pi) / (2 * np.pi / spec.n_angles)
    j = np.floor(u).astype(int) % spec.n_angles
    t = u - np.floor(u)
    j2 = (j + 1) % spec.n_angles
    inner = (1 - t) * rows[i, j] + t * rows[i, j2]
    outer = (1 - t) * rows[i + 1, j] + t * rows[i + 1, j2]
    return (1 - s) * inner + s * outer


def phi_eval_many(grid: BranchGrid, p: "DepressedCubic", B: FiniteBlaschkeProduct, z,
                  tolerances: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Vectorised :func:`phi_eval`; returns an array shaped like ``z``."""
    z = np.asarray(z, dtype=complex)
    flat = z.ravel()
    guess = _interpolate(grid, flat)
    roots = fiber_roots_many(p, blaschke_eval(B, flat))
    dist = np.abs(roots - guess[:, None])
    order = np.argsort(dist, axis=1)
    rows = np.arange(flat.size)
    nearest = roots[rows, order[:, 0]]
    runner_up = roots[rows, order[:, 1]]
    ambiguous = (np.abs(nearest - runner_up) <= tolerances.ambiguity) & (dist[rows, order[:, 1]] <= tolerances.ambiguity)
    if np.any(ambiguous):
        where = complex(flat[np.nonzero(ambiguous)[0][0]])
        raise AmbiguousFiber(f"fiber roots indistinguishable at z={where}", where)

    # beside a critical point the interpolant can sit closer to the other arm
    separation = _min_separation(roots)
    doubtful = np.nonzero((dist[rows, order[:, 0]] >= 0.25 * separation) & (separation > tolerances.ambiguity))[0]
    if doubtful.size:
        logger.debug("phi_eval: continuing %d points from their nearest nodes", doubtful.size)
        nearest[doubtful] = _continue_from_nodes(grid, p, B, flat[doubtful], tolerances)
    return nearest.reshape(z.shape)


def _continue_from_nodes(grid: BranchGrid, p: "DepressedCubic", B: FiniteBlaschkeProduct, z: np.ndarray,
                         tolerances: Tolerances) -> np.ndarray:
    nodes = grid.nodes().ravel()
    start = np.array([np.argmin(np.abs(nodes - point)) for point in z])
    tracker = _Tracker(p, B, tolerances, _cartesian)
    try:
        return tracker.advance(grid.values.ravel()[start], nodes[start].real, z.real, nodes[start].imag, z.imag)
    except StepCollapse as err:
        raise AmbiguousFiber(f"fiber roots indistinguishable at z={err.where}", err.where) from err


def phi_eval(grid: BranchGrid, p: "DepressedCubic", B: FiniteBlaschkeProduct, z: complex,
             tolerances: Tolerances = DEFAULT_TOLERANCES) -> complex:
    """The fiber root over ``B(z)`` nearest to the interpolated branch.

    Raises:
        AmbiguousFiber: When two fiber roots coincide with the interpolant
    """
    return complex(phi_eval_many(grid, p, B, np.array([z]), tolerances)[0])


def algebraic_branch_map(grid: BranchGrid, p: "DepressedCubic", B: FiniteBlaschkeProduct) -> np.ndarray:
    """Index of the ``U + V`` candidate matching the tracked value at each node."""
    candidates = algebraic_phi_many(p, blaschke_eval(B, grid.nodes()))
    distance = np.abs(candidates - grid.values[..., None])
    return np.argmin(np.where(np.isnan(distance), np.inf, distance), axis=-1)


def cauchy_riemann_defect(grid: BranchGrid) -> np.ndarray:
    """Relative discrete ``d/dz-bar`` of the tracked values.

    Central differences in ``r`` (non-uniform) and ``theta`` (periodic);
    ``|d phi / d z-bar|`` is divided by ``|d_r phi| + |d_theta phi| / r``. The
    first and last rings use one-sided radial differences.
    """
    spec = grid.spec
    radii = spec.radii
    d_r = np.gradient(grid.values, radii, axis=0)
    step = 2 * np.pi / spec.n_angles
    d_theta = (np.roll(grid.values, -1, axis=1) - np.roll(grid.values, 1, axis=1)) / (2 * step)
    r = radii[:, None]
    d_zbar = 0.5 * np.exp(1j * spec.angles)[None, :] * (d_r + 1j * d_theta / r)
    scale = np.abs(d_r) + np.abs(d_theta) / r
    return np.abs(d_zbar) / np.where(scale > 0, scale, 1.0)
