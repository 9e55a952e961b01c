#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Complex polynomial and rational arithmetic plus low-degree root finding.

Polynomials are dense, lowest power first, and backed by
``numpy.polynomial.polynomial``. The closed-form solvers (quadratic formula,
Cardano, Ferrari) only provide seeds; every root is Newton-polished against
the input polynomial and nearly coincident roots are merged into clusters.
"""

import cmath
import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import DegreeOutOfRange, InvalidInput, NonConvergence, SolverFailure, ZeroInput

logger = logging.getLogger(__name__)

# primitive cube roots of unity, index = branch
CUBE_ROOTS_OF_UNITY = np.exp(2j * np.pi * np.arange(3) / 3)


@dataclass(frozen=True)
class ComplexPolynomial:
    """Dense complex polynomial, ``coeffs[j]`` multiplies ``z**j``."""

    coeffs: Tuple[complex, ...] = ()

    def __post_init__(self):
        values = [complex(c) for c in self.coeffs]
        if not all(cmath.isfinite(c) for c in values):
            raise InvalidInput(f"non-finite polynomial coefficient in {values}")
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, "coeffs", tuple(values))

    @classmethod
    def from_array(cls, values: Iterable[complex]) -> "ComplexPolynomial":
        return cls(tuple(complex(v) for v in values))

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=complex)

    @property
    def scale(self) -> float:
        """Largest coefficient modulus (0 for the zero polynomial)."""
        return max((abs(c) for c in self.coeffs), default=0.0)

    def trimmed(self, rel_tol: float = DEFAULT_TOLERANCES.degree_deficiency) -> "ComplexPolynomial":
        """Drop trailing coefficients that are rounding noise.

        Args:
            rel_tol: Coefficients with modulus <= rel_tol * max|coeff| are dropped from the top

        Returns:
            The trimmed polynomial
        """
        values = list(self.coeffs)
        threshold = rel_tol * self.scale
        while values and abs(values[-1]) <= threshold:
            values.pop()
        return ComplexPolynomial(tuple(values))

    def __call__(self, z):
        return poly_eval(self, z)


@dataclass(frozen=True)
class ComplexRational:
    """Quotient of two polynomials; no common-factor reduction is implied."""

    num: ComplexPolynomial
    den: ComplexPolynomial

    def __post_init__(self):
        if self.den.degree < 0:
            raise InvalidInput("rational function with zero denominator")

    def __call__(self, z):
        return poly_eval(self.num, z) / poly_eval(self.den, z)


def _scalar_or_array(value, z):
    if np.ndim(z) == 0:
        return complex(value)
    return np.asarray(value, dtype=complex)


def poly_eval(p: ComplexPolynomial, z):
    """Evaluate ``p`` at a point or an array of points (Horner scheme)."""
    if p.degree < 0:
        return _scalar_or_array(np.zeros_like(np.asarray(z, dtype=complex)), z)
    return _scalar_or_array(P.polyval(np.asarray(z, dtype=complex), p.array), z)


def poly_derivative(p: ComplexPolynomial) -> ComplexPolynomial:
    if p.degree < 1:
        return ComplexPolynomial()
    return ComplexPolynomial.from_array(P.polyder(p.array))


def poly_from_roots(roots: Sequence[complex], leading: complex = 1.0) -> ComplexPolynomial:
    """Expand ``leading * prod(z - r)``."""
    if len(roots) == 0:
        return ComplexPolynomial((complex(leading),))
    return ComplexPolynomial.from_array(P.polyfromroots(np.asarray(roots, dtype=complex)) * leading)


def poly_mul(p: ComplexPolynomial, q: ComplexPolynomial) -> ComplexPolynomial:
    if p.degree < 0 or q.degree < 0:
        return ComplexPolynomial()
    return ComplexPolynomial.from_array(P.polymul(p.array, q.array))


def poly_sub(p: ComplexPolynomial, q: ComplexPolynomial) -> ComplexPolynomial:
    if q.degree < 0:
        return p
    if p.degree < 0:
        return ComplexPolynomial.from_array(-q.array)
    return ComplexPolynomial.from_array(P.polysub(p.array, q.array))


def rational_derivative(r: ComplexRational) -> ComplexRational:
    """Quotient rule, ``(num' den - num den') / den**2``, without cancellation."""
    num = poly_sub(poly_mul(poly_derivative(r.num), r.den), poly_mul(r.num, poly_derivative(r.den)))
    return ComplexRational(num, poly_mul(r.den, r.den))


def principal_nth_root(w: complex, n: int) -> complex:
    """Principal n-th root, argument in (-pi/n, pi/n].

    Raises:
        ZeroInput: If ``w`` is zero
    """
    w = complex(w)
    if w == 0:
        raise ZeroInput("principal_nth_root of zero")
    if n < 1:
        raise InvalidInput(f"root order must be positive, got {n}")
    angle = cmath.phase(w)
    if w.imag == 0 and w.real < 0:
        angle = cmath.pi
    return cmath.rect(abs(w) ** (1.0 / n), angle / n)


def principal_nth_root_many(w: np.ndarray, n: int) -> np.ndarray:
    """Vectorised principal root; zero maps to zero."""
    w = np.asarray(w, dtype=complex)
    angle = np.where((w.imag == 0) & (w.real < 0), np.pi, np.angle(w))
    return np.abs(w) ** (1.0 / n) * np.exp(1j * angle / n)


def newton_polish(p: ComplexPolynomial, z0: complex, tolerances: Tolerances = DEFAULT_TOLERANCES) -> complex:
    """Refine a root estimate with Newton's method.

    Args:
        p: Polynomial whose root is sought
        z0: Seed, normally a closed-form root
        tolerances: Residual and step thresholds and the iteration cap

    Returns:
        The iterate with the smallest residual seen (``z0`` if no step helped)
    """
    dp = poly_derivative(p)
    target = tolerances.newton_residual * (1.0 + p.scale)
    z = best = complex(z0)
    best_residual = abs(poly_eval(p, z))
    for _ in range(tolerances.newton_max_steps):
        value = poly_eval(p, z)
        if abs(value) <= target:
            break
        slope = poly_eval(dp, z)
        if slope == 0:
            logger.debug("newton_polish: vanishing derivative at %s, no progress", z)
            break
        step = value / slope
        z = z - step
        residual = abs(poly_eval(p, z))
        if residual < best_residual:
            best, best_residual = z, residual
        if abs(step) < tolerances.newton_step:
            break
    return best


def _quadratic_roots(b: complex, c: complex) -> List[complex]:
    # z**2 + b z + c, sign of the radical chosen to avoid cancellation
    disc = cmath.sqrt(b * b - 4 * c)
    if (b.conjugate() * disc).real < 0:
        disc = -disc
    q = -(b + disc) / 2
    if q == 0:
        return [0j, 0j]
    return [q, c / q]


def _depressed_cubic_seeds(c: complex, e: complex) -> List[complex]:
    # Cardano for t**3 + c t + e
    if c == 0 and e == 0:
        return [0j, 0j, 0j]
    disc = cmath.sqrt(e * e / 4 + c ** 3 / 27)
    u3 = max(-e / 2 + disc, -e / 2 - disc, key=abs)
    u = principal_nth_root(u3, 3)
    return [complex(u * w - c / (3 * u * w)) for w in CUBE_ROOTS_OF_UNITY]


def _cubic_seeds(a2: complex, a1: complex, a0: complex) -> List[complex]:
    shift = a2 / 3
    c = a1 - a2 * a2 / 3
    e = 2 * a2 ** 3 / 27 - a2 * a1 / 3 + a0
    return [t - shift for t in _depressed_cubic_seeds(c, e)]


def _quartic_seeds(a3: complex, a2: complex, a1: complex, a0: complex) -> List[complex]:
    # Ferrari on the depressed quartic y**4 + P y**2 + Q y + R, z = y - a3/4
    shift = a3 / 4
    p2 = a2 - 3 * a3 * a3 / 8
    q1 = a1 - a3 * a2 / 2 + a3 ** 3 / 8
    r0 = a0 - a3 * a1 / 4 + a3 * a3 * a2 / 16 - 3 * a3 ** 4 / 256
    size = 1.0 + abs(p2) + abs(r0)
    if abs(q1) <= 1e-14 * size:
        ys = []
        for s in _quadratic_roots(p2, r0):
            root = cmath.sqrt(s)
            ys.extend([root, -root])
        return [y - shift for y in ys]
    m = max(_cubic_seeds(p2, p2 * p2 / 4 - r0, -q1 * q1 / 8), key=abs)
    if m == 0:
        return [-shift] * 4
    s = cmath.sqrt(2 * m)
    ys = _quadratic_roots(-s, p2 / 2 + m + q1 / (2 * s)) + _quadratic_roots(s, p2 / 2 + m - q1 / (2 * s))
    return [y - shift for y in ys]


def _closed_form_seeds(monic: np.ndarray) -> List[complex]:
    degree = len(monic) - 1
    a = [complex(v) for v in monic]
    if degree == 1:
        return [-a[0]]
    if degree == 2:
        return _quadratic_roots(a[1], a[0])
    if degree == 3:
        return _cubic_seeds(a[2], a[1], a[0])
    return _quartic_seeds(a[3], a[2], a[1], a[0])


def _nth_derivative(p: ComplexPolynomial, order: int) -> ComplexPolynomial:
    for _ in range(order):
        p = poly_derivative(p)
    return p


def _cluster(p: ComplexPolynomial, roots: List[complex], tolerances: Tolerances) -> List[complex]:
    clusters: List[List[complex]] = []
    for root in roots:
        for cluster in clusters:
            if any(abs(root - member) <= tolerances.cluster_radius for member in cluster):
                cluster.append(root)
                break
        else:
            clusters.append([root])

    result: List[complex] = []
    for cluster in clusters:
        size = len(cluster)
        if size == 1:
            result.append(cluster[0])
            continue
        # a root of multiplicity m is a simple root of the (m-1)-th derivative
        center = complex(np.mean(cluster))
        refined = newton_polish(_nth_derivative(p, size - 1), center, tolerances)
        if abs(refined - center) <= tolerances.cluster_radius:
            center = refined
        result.extend([center] * size)
    return result


def solve_low_degree(p: ComplexPolynomial, tolerances: Tolerances = DEFAULT_TOLERANCES) -> List[complex]:
    """All roots of a polynomial of degree 1 to 4, with multiplicity.

    Args:
        p: Polynomial of degree 1..4 with a non-negligible leading coefficient
        tolerances: Polishing and clustering thresholds

    Returns:
        ``degree`` roots; clustered roots appear as repeated identical values

    Raises:
        DegreeOutOfRange: For degree 0, degree >= 5, or a degree-deficient input
        SolverFailure: If a returned root has ``|p(r)|`` above
            ``root_residual * (1 + sum |a_k| |r|^k)``
    """
    if p.degree < 1 or p.degree > 4:
        raise DegreeOutOfRange(f"closed-form solver handles degree 1..4, got {p.degree}")
    array = p.array
    if abs(array[-1]) < tolerances.degree_deficiency * p.scale:
        raise DegreeOutOfRange(f"leading coefficient {array[-1]} is negligible; trim the polynomial first")

    monic = ComplexPolynomial.from_array(array / array[-1])
    seeds = _closed_form_seeds(monic.array)
    polished = [newton_polish(monic, seed, tolerances) for seed in seeds]
    roots = _cluster(monic, polished, tolerances)

    magnitudes = np.abs(array)
    for r in roots:
        residual = abs(poly_eval(p, r))
        bound = tolerances.root_residual * (1.0 + float(P.polyval(abs(r), magnitudes)))
        if residual > bound:
            raise SolverFailure(f"root {r} of {p.coeffs} has residual {residual:.3e} above {bound:.3e}")
    return roots


def group_roots(roots: Sequence[complex], radius: float = DEFAULT_TOLERANCES.cluster_radius) -> List[Tuple[complex, int]]:
    """Collapse a root list into ``(root, multiplicity)`` pairs."""
    groups: List[Tuple[complex, int]] = []
    for root in roots:
        for index, (value, count) in enumerate(groups):
            if abs(root - value) <= radius:
                groups[index] = (value, count + 1)
                break
        else:
            groups.append((complex(root), 1))
    return groups


def all_roots_oracle(p: ComplexPolynomial, max_iterations: Optional[int] = None) -> List[complex]:
    """Durand-Kerner simultaneous iteration for any degree.

    Independent cross-check for :func:`solve_low_degree`; not used by the
    modeling pipeline.

    Raises:
        DegreeOutOfRange: For constant polynomials
        NonConvergence: If the iteration cap is reached
    """
    if p.degree < 1:
        raise DegreeOutOfRange("all_roots_oracle needs degree >= 1")
    cap = DEFAULT_TOLERANCES.oracle_max_iterations if max_iterations is None else max_iterations
    monic = p.array / p.array[-1]
    n = p.degree
    radius = 1.0 + float(np.max(np.abs(monic[:-1])))
    z = 0.9 * radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + 0.25))
    magnitudes = np.abs(monic)
    for iteration in range(cap):
        diffs = z[:, None] - z[None, :]
        np.fill_diagonal(diffs, 1.0)
        delta = P.polyval(z, monic) / np.prod(diffs, axis=1)
        z = z - delta
        # converged once every step is tiny or every residual is at rounding level
        small_step = np.abs(delta) <= 1e-14 * (1.0 + np.abs(z))
        rounding = np.abs(P.polyval(z, monic)) <= 8 * np.finfo(float).eps * P.polyval(np.abs(z), magnitudes)
        if np.all(small_step | rounding):
            logger.debug("all_roots_oracle converged after %d iterations", iteration + 1)
            return [complex(v) for v in z]
    raise NonConvergence(f"Durand-Kerner did not converge in {cap} iterations")


def depressed_cubic_roots(c: complex, e, polish_steps: int = 3) -> np.ndarray:
    """Roots of ``z**3 + c z + e`` for every entry of ``e``.

    Args:
        c: Linear coefficient, shared by all cubics
        e: Constant terms, any shape
        polish_steps: Newton iterations applied element-wise

    Returns:
        Array of shape ``e.shape + (3,)``
    """
    e = np.asarray(e, dtype=complex)
    disc = np.sqrt(e * e / 4 + c ** 3 / 27)
    plus, minus = -e / 2 + disc, -e / 2 - disc
    u3 = np.where(np.abs(plus) >= np.abs(minus), plus, minus)
    degenerate = u3 == 0
    u = principal_nth_root_many(np.where(degenerate, 1.0, u3), 3)[..., None] * CUBE_ROOTS_OF_UNITY
    roots = u - c / (3 * u)
    roots[degenerate] = 0.0

    constant = e[..., None]
    for _ in range(polish_steps):
        value = roots ** 3 + c * roots + constant
        slope = 3 * roots ** 2 + c
        safe = slope != 0
        candidate = roots - np.where(safe, value / np.where(safe, slope, 1.0), 0.0)
        better = np.abs(candidate ** 3 + c * candidate + constant) < np.abs(value)
        roots = np.where(better, candidate, roots)
    return roots
