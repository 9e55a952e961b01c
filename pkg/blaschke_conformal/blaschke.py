#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Finite Blaschke products, their critical structure, and disk automorphisms.
"""

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .algebra import (
    ComplexPolynomial,
    ComplexRational,
    group_roots,
    poly_from_roots,
    poly_mul,
    principal_nth_root,
    rational_derivative,
    solve_low_degree,
)
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import InvalidInput, NotEquallySpaced, OutsideDisk, SolverFailure, UnsupportedInput

logger = logging.getLogger(__name__)

# candidate points for recovering the unimodular constant
REFERENCE_POINTS = (0j, 0.3 + 0j, 0.7j)
FALLBACK_POINTS = (-0.5 + 0j, -0.4 - 0.45j, 0.55 - 0.2j)


def _scalar_or_array(value, z):
    if np.ndim(z) == 0:
        return complex(value)
    return value


@dataclass(frozen=True)
class FiniteBlaschkeProduct:
    """``lam * prod((z - a) / (1 - conj(a) z))`` over the zeros ``a``."""

    lam: complex
    zeros: Tuple[complex, ...]

    def __post_init__(self):
        lam = complex(self.lam)
        zeros = tuple(complex(a) for a in self.zeros)
        if not np.isfinite(lam) or abs(abs(lam) - 1.0) > DEFAULT_TOLERANCES.unimodular:
            raise InvalidInput(f"lambda must be unimodular, got {lam}")
        if not zeros:
            raise InvalidInput("a Blaschke product needs at least one zero")
        for a in zeros:
            if not np.isfinite(a) or abs(a) >= 1.0 - DEFAULT_TOLERANCES.boundary_margin:
                raise OutsideDisk(f"zero {a} is not strictly inside the unit disk")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "zeros", zeros)

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def __call__(self, z):
        return blaschke_eval(self, z)


@dataclass(frozen=True)
class MobiusDisk:
    """Disk automorphism ``tau(z) = (e^{i theta} z + a) / (1 + conj(a) e^{i theta} z)``.

    ``tau(0) = a`` for every rotation angle ``theta``.
    """

    a: complex
    theta: float = 0.0

    def __post_init__(self):
        a = complex(self.a)
        if not abs(a) < 1.0:
            raise OutsideDisk(f"automorphism base point {a} is not inside the unit disk")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "theta", float(self.theta))

    @property
    def rotation(self) -> complex:
        return complex(np.exp(1j * self.theta))

    @property
    def is_identity(self) -> bool:
        return self.a == 0 and self.rotation == 1

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        rz = self.rotation * z
        return _scalar_or_array((rz + self.a) / (1 + self.a.conjugate() * rz), z)

    def inverse(self, w):
        w = np.asarray(w, dtype=complex)
        return _scalar_or_array((w - self.a) / (1 - self.a.conjugate() * w) / self.rotation, w)


@dataclass(frozen=True)
class CriticalData:
    """Critical points in the disk with multiplicities, and their images."""

    points: Tuple[Tuple[complex, int], ...]
    values: Tuple[complex, ...]

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.points)


@dataclass(frozen=True)
class EquallySpacedForm:
    """``lam * (z**n - base**n) / (1 - conj(base)**n z**n)``."""

    lam: complex
    base: complex
    n: int

    def __post_init__(self):
        lam, base = complex(self.lam), complex(self.base)
        if abs(abs(lam) - 1.0) > DEFAULT_TOLERANCES.unimodular:
            raise InvalidInput(f"lambda must be unimodular, got {lam}")
        if not abs(base) < 1.0:
            raise OutsideDisk(f"base {base} is not inside the unit disk")
        if int(self.n) < 1:
            raise InvalidInput(f"n must be positive, got {self.n}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "n", int(self.n))

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        zn, cn = z ** self.n, self.base ** self.n
        return _scalar_or_array(self.lam * (zn - cn) / (1 - cn.conjugate() * zn), z)


def blaschke_eval(B: FiniteBlaschkeProduct, z):
    """Evaluate ``B`` at a point or array of points with ``|z| <= 1 + 1e-9``."""
    z = np.asarray(z, dtype=complex)
    result = np.full(z.shape, B.lam, dtype=complex)
    for a in B.zeros:
        result = result * (z - a) / (1 - a.conjugate() * z)
    return _scalar_or_array(result, z)


def blaschke_derivative_eval(B: FiniteBlaschkeProduct, z):
    """``B'`` at a point or array of points, by the product rule over the factors."""
    z = np.asarray(z, dtype=complex)
    value = np.full(z.shape, B.lam, dtype=complex)
    slope = np.zeros(z.shape, dtype=complex)
    for a in B.zeros:
        den = 1 - a.conjugate() * z
        factor = (z - a) / den
        factor_slope = (1 - abs(a) ** 2) / (den * den)
        slope = slope * factor + value * factor_slope
        value = value * factor
    return _scalar_or_array(slope, z)


def as_rational(B: FiniteBlaschkeProduct) -> ComplexRational:
    """Expanded numerator ``lam * prod(z - a)`` over ``prod(1 - conj(a) z)``."""
    num = poly_from_roots(B.zeros, B.lam)
    den = ComplexPolynomial((1.0,))
    for a in B.zeros:
        den = poly_mul(den, ComplexPolynomial((1.0, -a.conjugate())))
    return ComplexRational(num, den)


def derivative_numerator(B: FiniteBlaschkeProduct, tolerances: Tolerances = DEFAULT_TOLERANCES) -> ComplexPolynomial:
    """Numerator of ``B'`` with the analytically cancelled top term removed."""
    return rational_derivative(as_rational(B)).num.trimmed(tolerances.degree_deficiency)


def critical_points_in_disk(B: FiniteBlaschkeProduct, tolerances: Tolerances = DEFAULT_TOLERANCES) -> CriticalData:
    """Critical points of ``B`` in the unit disk and their critical values.

    Args:
        B: Blaschke product of degree <= 3
        tolerances: Solver thresholds

    Returns:
        CriticalData with multiplicities summing to ``degree - 1``

    Raises:
        UnsupportedInput: For degree >= 4
        SolverFailure: If the count of roots inside the disk is not ``degree - 1``
    """
    if B.degree > 3:
        raise UnsupportedInput(f"critical points are extracted for degree <= 3 only, got {B.degree}")
    if B.degree == 1:
        return CriticalData((), ())

    numerator = derivative_numerator(B, tolerances)
    inside = [r for r in solve_low_degree(numerator, tolerances) if abs(r) < 1.0]
    if len(inside) != B.degree - 1:
        raise SolverFailure(
            f"found {len(inside)} critical points inside the disk, expected {B.degree - 1}"
        )
    points = tuple(group_roots(inside, tolerances.cluster_radius))
    values = tuple(blaschke_eval(B, z) for z, _ in points)
    logger.debug("critical points %s with values %s", points, values)
    return CriticalData(points, values)


def reflection_defect(B: FiniteBlaschkeProduct, tolerances: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Largest distance from ``1/conj(z)`` to the outside roots, over inside roots ``z != 0``."""
    roots = solve_low_degree(derivative_numerator(B, tolerances), tolerances)
    outside = [r for r in roots if abs(r) >= 1.0]
    defect = 0.0
    for r in roots:
        if abs(r) < 1.0 and abs(r) > 1e-6:
            mirror = 1.0 / r.conjugate()
            defect = max(defect, min((abs(mirror - s) for s in outside), default=float("inf")))
    return defect


def disk_automorphism(a: complex) -> MobiusDisk:
    """Automorphism with ``tau(0) = a`` and no rotation.

    Raises:
        OutsideDisk: If ``|a| >= 1``
    """
    return MobiusDisk(a, 0.0)


def _reference_point(zeros: Sequence[complex]) -> complex:
    def clearance(z):
        return min(abs(z - a) for a in zeros)

    ref = max(REFERENCE_POINTS, key=clearance)
    if clearance(ref) < 1e-6:
        ref = max(REFERENCE_POINTS + FALLBACK_POINTS, key=clearance)
    return ref


def precompose(B: FiniteBlaschkeProduct, tau: MobiusDisk) -> FiniteBlaschkeProduct:
    """Canonical form of ``B o tau``.

    The zeros are pulled back by ``tau^-1``; the unimodular constant is read
    off the composed map at the reference point farthest from those zeros.
    """
    if tau.is_identity:
        return B
    zeros = tuple(tau.inverse(a) for a in B.zeros)
    ref = _reference_point(zeros)
    factor = np.prod([(ref - b) / (1 - b.conjugate() * ref) for b in zeros])
    lam = blaschke_eval(B, tau(ref)) / factor
    return FiniteBlaschkeProduct(lam / abs(lam), zeros)


def canonicalize_equally_spaced(
    B: FiniteBlaschkeProduct, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> EquallySpacedForm:
    """Recognise zeros of the form ``base * (n-th roots of unity)``.

    Raises:
        NotEquallySpaced: When the n-th powers of the zeros disagree, or the
            zeros are not one copy of each rotated root
    """
    n = B.degree
    powers = [a ** n for a in B.zeros]
    spread = max(abs(w - powers[0]) for w in powers)
    if spread > tolerances.equally_spaced:
        raise NotEquallySpaced(f"n-th powers of the zeros differ by {spread:.3e}")
    # equal n-th powers also hold for repeated zeros; z**n - s must be the expansion
    middle = poly_from_roots(B.zeros).array[1:n]
    if middle.size and np.max(np.abs(middle)) > tolerances.equally_spaced:
        raise NotEquallySpaced("zeros share an n-th power but are not equally spaced")

    common = complex(np.mean(powers))
    base = principal_nth_root(common, n) if common != 0 else 0j
    ref = _reference_point(B.zeros)
    cn = base ** n
    shape = (ref ** n - cn) / (1 - cn.conjugate() * ref ** n)
    lam = blaschke_eval(B, ref) / shape
    return EquallySpacedForm(lam / abs(lam), base, n)


def from_equally_spaced(form: EquallySpacedForm) -> FiniteBlaschkeProduct:
    """The Blaschke product with zeros ``base * exp(2 pi i k / n)``."""
    zeros = form.base * np.exp(2j * np.pi * np.arange(form.n) / form.n)
    return FiniteBlaschkeProduct(form.lam, tuple(zeros))
