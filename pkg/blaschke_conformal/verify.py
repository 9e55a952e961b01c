#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Numerical certification of a constructed conformal model.

Every gate is a pure function of the model; :func:`verify_model` runs them
all and aggregates a :class:`VerificationReport`. Pair sampling uses a
scrambled Halton sequence with a fixed seed, so a report is reproducible.
"""

import logging
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from scipy.stats import qmc

from .algebra import ComplexPolynomial, all_roots_oracle, poly_derivative, poly_eval, solve_low_degree
from .blaschke import FiniteBlaschkeProduct, blaschke_eval, critical_points_in_disk
from .config import DEFAULT_TOLERANCES, Tolerances
from .continuation import PolarGridSpec
from .errors import SelfIntersection, WrongCase
from .geometry import polyline_self_intersections, winding_number
from .modeler import CERTIFICATE_GRID, ConformalModel, ModelCase, TrackedBranch, model_residual

logger = logging.getLogger(__name__)

DEFAULT_PAIRS = 2000
DEFAULT_DELTA = 1e-3
# draws per accepted pair before giving up on the separation constraint
_MAX_DRAW_FACTOR = 8


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of every verification gate for one model."""

    residual_sup: float
    injectivity_min_separation: float
    image_containment_violations: int
    critical_value_defect: Optional[float]
    boundary_defect: float
    passed: bool
    boundary_self_intersections: int = 0
    winding_number: int = 1
    p_critical_value_max_modulus: float = 0.0
    uniqueness: Optional[bool] = None
    seed: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def residual_sup(B: FiniteBlaschkeProduct, m: ConformalModel, spec: PolarGridSpec = CERTIFICATE_GRID) -> float:
    """``sup |B(z) - p(phi_total(z))|`` over the grid nodes."""
    return model_residual(B, m, spec)


def sample_pairs(n_pairs: int, delta: float, seed: int = 0, r_max: float = CERTIFICATE_GRID.r_max) -> Tuple[np.ndarray, np.ndarray]:
    """Quasi-random pairs in the disk of radius ``r_max`` with ``|z - w| >= delta``.

    Each Halton point in four dimensions gives two area-uniform disk points.
    """
    if n_pairs < 1:
        raise ValueError(f"n_pairs must be positive, got {n_pairs}")
    sampler = qmc.Halton(d=4, scramble=True, seed=seed)
    zs: List[np.ndarray] = []
    ws: List[np.ndarray] = []
    found = 0
    for _ in range(_MAX_DRAW_FACTOR):
        u = sampler.random(n_pairs)
        z = r_max * np.sqrt(u[:, 0]) * np.exp(2j * np.pi * u[:, 1])
        w = r_max * np.sqrt(u[:, 2]) * np.exp(2j * np.pi * u[:, 3])
        keep = np.abs(z - w) >= delta
        zs.append(z[keep])
        ws.append(w[keep])
        found += int(keep.sum())
        if found >= n_pairs:
            break
    return np.concatenate(zs)[:n_pairs], np.concatenate(ws)[:n_pairs]


def pair_min_separation(m: ConformalModel, n_pairs: int = DEFAULT_PAIRS, delta: float = DEFAULT_DELTA,
                        seed: int = 0) -> float:
    z, w = sample_pairs(n_pairs, delta, seed)
    return float(np.min(np.abs(m.phi_total(z) - m.phi_total(w))))


def boundary_curve(m: ConformalModel, spec: PolarGridSpec = CERTIFICATE_GRID) -> Tuple[np.ndarray, np.ndarray]:
    """Parameters and image of ``phi_total`` on ``|z| = r_max`` at ``4 n_angles`` samples."""
    theta = 2 * np.pi * np.arange(4 * spec.n_angles) / (4 * spec.n_angles)
    return theta, m.phi_total(spec.r_max * np.exp(1j * theta))


def boundary_crossings(m: ConformalModel, spec: PolarGridSpec = CERTIFICATE_GRID) -> List[Tuple[float, float]]:
    """Boundary parameters of every pair of crossing segments of the boundary image."""
    theta, curve = boundary_curve(m, spec)
    return [(float(theta[i]), float(theta[j])) for i, j in polyline_self_intersections(curve)]


def injectivity_check(m: ConformalModel, n_pairs: int = DEFAULT_PAIRS, delta: float = DEFAULT_DELTA,
                      seed: int = 0, spec: PolarGridSpec = CERTIFICATE_GRID) -> float:
    """Sampled injectivity plus a Jordan-curve check of the boundary image.

    Args:
        m: Model to check
        n_pairs: Number of sampled pairs
        delta: Minimum distance between the points of a pair
        seed: Seed of the scrambled Halton sequence
        spec: Supplies ``r_max`` and the boundary sample count

    Returns:
        Minimum ``|phi(z) - phi(w)|`` over the sampled pairs

    Raises:
        SelfIntersection: If the boundary image crosses itself
    """
    separation = pair_min_separation(m, n_pairs, delta, seed)
    crossings = boundary_crossings(m, spec)
    if crossings:
        raise SelfIntersection(f"boundary image crosses itself {len(crossings)} time(s)", crossings)
    return separation


def image_containment(m: ConformalModel, spec: PolarGridSpec = CERTIFICATE_GRID) -> int:
    """Number of grid nodes where ``|p(phi_total(z))| >= 1``."""
    return int(np.count_nonzero(np.abs(m.evaluate(spec.nodes())) >= 1.0))


def polynomial_critical_points(p: ComplexPolynomial) -> List[complex]:
    """Roots of ``p'`` with multiplicity; an exact factor ``z**k`` contributes ``k`` zeros."""
    derivative = poly_derivative(p)
    coeffs = list(derivative.coeffs)
    zeros = 0
    while len(coeffs) > 1 and coeffs[0] == 0:
        coeffs.pop(0)
        zeros += 1
    rest = ComplexPolynomial(tuple(coeffs))
    if rest.degree < 1:
        return [0j] * zeros
    roots = solve_low_degree(rest) if rest.degree <= 4 else all_roots_oracle(rest)
    return [0j] * zeros + list(roots)


def _hausdorff(a: List[complex], b: List[complex]) -> float:
    distances = np.abs(np.asarray(a)[:, None] - np.asarray(b)[None, :])
    return float(max(distances.min(axis=1).max(), distances.min(axis=0).max()))


def critical_value_defect(m: ConformalModel, k1: complex, k2: complex) -> float:
    """Hausdorff distance between the critical values of ``p`` and ``{k1, k2}``.

    Raises:
        WrongCase: If the model is not a generic degree three model
    """
    if m.case is not ModelCase.DEGREE3_GENERIC:
        raise WrongCase(f"critical_value_defect applies to degree3_generic models, got {m.case.value}")
    values = [complex(poly_eval(m.p, z)) for z in polynomial_critical_points(m.p)]
    return _hausdorff(values, [complex(k1), complex(k2)])


def uniqueness_probe(B: FiniteBlaschkeProduct, m: ConformalModel,
                     tolerances: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """True iff the critical values of ``B`` differ and exactly one seed passed selection."""
    if m.case is not ModelCase.DEGREE3_GENERIC or not isinstance(m.phi, TrackedBranch):
        return False
    values = critical_points_in_disk(B, tolerances).values
    if len(values) != 2:
        return False
    k1, k2 = values
    distinct = abs(k1 - k2) > tolerances.degenerate_critical_values
    return bool(distinct and m.phi.grid.passing_seed_count == 1)


def boundary_defect(B: FiniteBlaschkeProduct, m: ConformalModel, spec: PolarGridSpec = CERTIFICATE_GRID) -> float:
    """``sup ||p(phi(z))| - |B(z)||`` on the outer ring of the grid."""
    ring = spec.nodes()[-1]
    return float(np.max(np.abs(np.abs(m.evaluate(ring)) - np.abs(blaschke_eval(B, ring)))))


def p_critical_value_max_modulus(m: ConformalModel) -> float:
    """Largest ``|p(zeta)|`` over critical points ``zeta`` of ``p`` (0 when there are none)."""
    return max((abs(poly_eval(m.p, z)) for z in polynomial_critical_points(m.p)), default=0.0)


def verify_model(B: FiniteBlaschkeProduct, m: ConformalModel, spec: PolarGridSpec = CERTIFICATE_GRID,
                 tolerances: Tolerances = DEFAULT_TOLERANCES, n_pairs: int = DEFAULT_PAIRS,
                 delta: float = DEFAULT_DELTA, seed: int = 0) -> VerificationReport:
    """Run every gate and aggregate the outcome.

    Args:
        B: The modeled Blaschke product
        m: Model under test
        spec: Verification grid
        tolerances: Gate thresholds
        n_pairs: Injectivity sample size
        delta: Minimum pair distance
        seed: Seed for pair sampling

    Returns:
        VerificationReport with ``passed`` set iff every gate holds
    """
    residual = residual_sup(B, m, spec)
    separation = pair_min_separation(m, n_pairs, delta, seed)
    crossings = boundary_crossings(m, spec)
    violations = image_containment(m, spec)
    boundary = boundary_defect(B, m, spec)
    max_critical = p_critical_value_max_modulus(m)
    _, curve = boundary_curve(m, spec)
    winding = winding_number(curve, m.phi_total(0j))

    cv_defect: Optional[float] = None
    unique: Optional[bool] = None
    if m.case is ModelCase.DEGREE3_GENERIC:
        k1, k2 = critical_points_in_disk(B, tolerances).values
        cv_defect = critical_value_defect(m, k1, k2)
        unique = uniqueness_probe(B, m, tolerances)

    gates = {
        "residual": residual <= tolerances.residual,
        "injectivity": separation > 0 and not crossings,
        "containment": violations == 0,
        "boundary": boundary <= tolerances.boundary,
        "critical_values_inside": max_critical < 1.0,
        "critical_value_match": cv_defect is None or cv_defect <= tolerances.critical_value,
        "uniqueness": unique is None or unique,
    }
    failed = [name for name, ok in gates.items() if not ok]
    if failed:
        logger.warning("verification failed gates: %s", ", ".join(failed))
    else:
        logger.info("verification passed, residual %.3e", residual)

    return VerificationReport(
        residual_sup=residual,
        injectivity_min_separation=separation,
        image_containment_violations=violations,
        critical_value_defect=cv_defect,
        boundary_defect=boundary,
        passed=not failed,
        boundary_self_intersections=len(crossings),
        winding_number=winding,
        p_critical_value_max_modulus=float(max_critical),
        uniqueness=unique,
        seed=seed,
    )
