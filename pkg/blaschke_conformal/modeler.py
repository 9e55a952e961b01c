#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Polynomial conformal models ``B = p o phi`` on the unit disk.

Three constructions are glued together by precomposition with disk
automorphisms:

* degree one: ``p(z) = z`` and ``phi = B``;
* zeros equally spaced on a circle about the origin (any degree): closed form;
* generic degree three: a depressed cubic with the critical values of ``B``,
  and ``phi`` realised by branch continuation.

Degree two and degree three with a double critical point are moved to the
equally spaced case by an automorphism sending 0 to the critical point.
"""

import cmath
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from .algebra import (
    ComplexPolynomial,
    newton_polish,
    poly_derivative,
    poly_eval,
    principal_nth_root,
    principal_nth_root_many,
)
from .blaschke import (
    EquallySpacedForm,
    FiniteBlaschkeProduct,
    MobiusDisk,
    blaschke_eval,
    canonicalize_equally_spaced,
    critical_points_in_disk,
    derivative_numerator,
    disk_automorphism,
    from_equally_spaced,
    precompose,
)
from .config import DEFAULT_TOLERANCES, Tolerances
from .continuation import BranchGrid, PolarGridSpec, phi_eval_many, select_analytic_branch
from .errors import (
    CertificateFailure,
    DegenerateCriticalValues,
    NotEquallySpaced,
    UnsupportedInput,
    WrongDegree,
)

logger = logging.getLogger(__name__)

CERTIFICATE_GRID = PolarGridSpec(64, 256, 0.999)


class ModelCase(str, Enum):
    DEGREE1 = "degree1"
    EQUALLY_SPACED = "equally_spaced"
    DEGREE3_GENERIC = "degree3_generic"


@dataclass(frozen=True)
class DepressedCubic:
    """``p(z) = z**3 + c z + d``."""

    c: complex
    d: complex

    def __post_init__(self):
        object.__setattr__(self, "c", complex(self.c))
        object.__setattr__(self, "d", complex(self.d))

    @property
    def polynomial(self) -> ComplexPolynomial:
        return ComplexPolynomial((self.d, self.c, 0.0, 1.0))

    @property
    def critical_points(self) -> Tuple[complex, complex]:
        r = cmath.sqrt(-self.c / 3)
        return r, -r

    @property
    def critical_values(self) -> Tuple[complex, complex]:
        return tuple(complex(self(z)) for z in self.critical_points)

    def __call__(self, z):
        return z ** 3 + self.c * z + self.d


class PhiRepresentation(ABC):
    """A conformal map ``phi`` defined on the unit disk."""

    kind: str = ""

    @abstractmethod
    def evaluate(self, z: np.ndarray) -> np.ndarray:
        """Evaluate at an array of points in the disk."""

    def __call__(self, z):
        values = self.evaluate(np.asarray(z, dtype=complex))
        if np.ndim(z) == 0:
            return complex(values)
        return values


class IdentityOfB(PhiRepresentation):
    """``phi = B`` (degree one)."""

    kind = "identity_of_b"

    def __init__(self, B: FiniteBlaschkeProduct):
        self.B = B

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        return np.asarray(blaschke_eval(self.B, z), dtype=complex)


class ClosedFormEquallySpaced(PhiRepresentation):
    """``phi(z) = e^{i pi/n} z / (1 - conj(base)**n z**n)**(1/n)`` with the principal root."""

    kind = "closed_form_equally_spaced"

    def __init__(self, base: complex, n: int):
        self.base = complex(base)
        self.n = int(n)
        self.phase = cmath.exp(1j * cmath.pi / self.n)

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        radicand = 1 - self.base.conjugate() ** self.n * z ** self.n
        return self.phase * z / principal_nth_root_many(radicand, self.n)


class TrackedBranch(PhiRepresentation):
    """The continued analytic branch, re-solved point-wise on the fiber."""

    kind = "tracked_branch"

    def __init__(self, grid: BranchGrid, cubic: DepressedCubic, B: FiniteBlaschkeProduct,
                 tolerances: Tolerances = DEFAULT_TOLERANCES):
        self.grid = grid
        self.cubic = cubic
        self.B = B
        self.tolerances = tolerances

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        return phi_eval_many(self.grid, self.cubic, self.B, z, self.tolerances)


@dataclass(frozen=True, eq=False)
class ConformalModel:
    """A polynomial conformal model; ``B = p o phi_total`` on the disk."""

    case: ModelCase
    p: ComplexPolynomial
    phi: PhiRepresentation
    pre_automorphism: Optional[MobiusDisk] = None
    critical_values: Tuple[complex, ...] = ()
    residual_certificate: float = 0.0
    depressed: Optional[DepressedCubic] = None
    equally_spaced: Optional[EquallySpacedForm] = None
    critical_points: Tuple[Tuple[complex, int], ...] = field(default=())

    @property
    def degree(self) -> int:
        return self.p.degree

    def phi_total(self, z):
        """``phi o tau^-1`` when an automorphism was precomposed, else ``phi``."""
        if self.pre_automorphism is None:
            return self.phi(z)
        return self.phi(self.pre_automorphism.inverse(z))

    def evaluate(self, z):
        """``p(phi_total(z))``, which should reproduce ``B(z)``."""
        return poly_eval(self.p, self.phi_total(z))


def model_residual(B: FiniteBlaschkeProduct, model: ConformalModel, spec: PolarGridSpec = CERTIFICATE_GRID) -> float:
    """``sup |B - p o phi_total|`` over the nominal nodes of ``spec``."""
    nodes = spec.nodes()
    return float(np.max(np.abs(blaschke_eval(B, nodes) - model.evaluate(nodes))))


def _certify(B: FiniteBlaschkeProduct, model: ConformalModel, spec: PolarGridSpec,
             tolerances: Tolerances, bound: Optional[float] = None) -> ConformalModel:
    bound = tolerances.model_residual if bound is None else bound
    residual = model_residual(B, model, spec)
    if residual > bound:
        raise CertificateFailure(f"{model.case.value} model residual {residual:.3e} exceeds {bound:.1e}")
    logger.info("%s model certified, residual %.3e", model.case.value, residual)
    return replace(model, residual_certificate=residual)


def model_degree_one(B: FiniteBlaschkeProduct, spec: PolarGridSpec = CERTIFICATE_GRID,
                     tolerances: Tolerances = DEFAULT_TOLERANCES) -> ConformalModel:
    """``p(z) = z`` and ``phi = B``.

    Raises:
        WrongDegree: If ``B`` is not of degree one
    """
    if B.degree != 1:
        raise WrongDegree(f"model_degree_one needs degree 1, got {B.degree}")
    built = ConformalModel(ModelCase.DEGREE1, ComplexPolynomial((0.0, 1.0)), IdentityOfB(B))
    return _certify(B, built, spec, tolerances, tolerances.closed_form_residual)


def equally_spaced_polynomial(form: EquallySpacedForm) -> ComplexPolynomial:
    """``lam (|base|**(2n) - 1) z**n - lam base**n``."""
    n = form.n
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[0] = -form.lam * form.base ** n
    coeffs[n] = form.lam * (abs(form.base) ** (2 * n) - 1)
    return ComplexPolynomial.from_array(coeffs)


def model_equally_spaced(form: EquallySpacedForm, spec: PolarGridSpec = CERTIFICATE_GRID,
                         tolerances: Tolerances = DEFAULT_TOLERANCES) -> ConformalModel:
    """Closed-form model for ``lam (z**n - base**n) / (1 - conj(base)**n z**n)``.

    Args:
        form: Canonical equally spaced product
        spec: Grid for the residual certificate
        tolerances: Certified against ``closed_form_residual``

    Returns:
        ConformalModel of case ``equally_spaced``
    """
    p = equally_spaced_polynomial(form)
    values: Tuple[complex, ...] = ()
    points: Tuple[Tuple[complex, int], ...] = ()
    if form.n >= 2:
        values = (complex(-form.lam * form.base ** form.n),)
        points = ((0j, form.n - 1),)
    built = ConformalModel(
        case=ModelCase.EQUALLY_SPACED,
        p=p,
        phi=ClosedFormEquallySpaced(form.base, form.n),
        critical_values=values,
        equally_spaced=form,
        critical_points=points,
    )
    return _certify(from_equally_spaced(form), built, spec, tolerances, tolerances.closed_form_residual)


def equally_spaced_identity_defect(form: EquallySpacedForm, spec: PolarGridSpec = CERTIFICATE_GRID) -> float:
    """``sup |B(phi(z)) - p(z)|`` on the grid; ``p`` depends on ``z`` only through ``z**n``."""
    nodes = spec.nodes()
    phi = ClosedFormEquallySpaced(form.base, form.n)
    p = equally_spaced_polynomial(form)
    return float(np.max(np.abs(form(phi(nodes)) - poly_eval(p, nodes))))


def depressed_cubic_coeffs(k1: complex, k2: complex, tolerances: Tolerances = DEFAULT_TOLERANCES) -> DepressedCubic:
    """Depressed cubic whose critical values are ``k1`` and ``k2``.

    With ``r`` the principal cube root of ``(k2 - k1) / 4``, ``c = -3 r**2``
    and ``d = (k1 + k2) / 2``; then ``p(r) = k1`` and ``p(-r) = k2``.

    Raises:
        DegenerateCriticalValues: If ``k1`` and ``k2`` coincide
    """
    k1, k2 = complex(k1), complex(k2)
    if abs(k1 - k2) <= tolerances.degenerate_critical_values * (1 + abs(k1) + abs(k2)):
        raise DegenerateCriticalValues(f"critical values {k1} and {k2} coincide")
    r = principal_nth_root((k2 - k1) / 4, 3)
    return DepressedCubic(-3 * r * r, (k1 + k2) / 2)


def _model_via_automorphism(B: FiniteBlaschkeProduct, center: complex, spec: PolarGridSpec,
                            tolerances: Tolerances) -> ConformalModel:
    # B o tau has its only critical point at 0, so its zeros are equally spaced
    tau = disk_automorphism(center)
    form = canonicalize_equally_spaced(precompose(B, tau), tolerances)
    inner = model_equally_spaced(form, spec, tolerances)
    logger.info("precomposed with automorphism at %s; base %s, n %d", center, form.base, form.n)
    built = ConformalModel(
        case=ModelCase.EQUALLY_SPACED,
        p=inner.p,
        phi=inner.phi,
        pre_automorphism=tau,
        critical_values=inner.critical_values,
        equally_spaced=form,
        critical_points=((complex(center), B.degree - 1),),
    )
    return _certify(B, built, spec, tolerances)


def model_degree_three(B: FiniteBlaschkeProduct, spec: PolarGridSpec = CERTIFICATE_GRID,
                       tolerances: Tolerances = DEFAULT_TOLERANCES, workers: int = 1) -> ConformalModel:
    """Model a degree three product.

    A double critical point routes to the equally spaced construction;
    otherwise a depressed cubic with the critical values of ``B`` is built and
    the analytic branch of ``phi`` is selected by continuation.

    Raises:
        WrongDegree: If ``B`` is not of degree three
        SolverFailure: If critical-point extraction fails
        BranchSelectionFailure: If branch selection is not unique
        CertificateFailure: If the residual certificate exceeds the tolerance
    """
    if B.degree != 3:
        raise WrongDegree(f"model_degree_three needs degree 3, got {B.degree}")
    critical = critical_points_in_disk(B, tolerances)
    points = critical.points
    if len(points) == 1:
        logger.info("double critical point at %s", points[0][0])
        return _model_via_automorphism(B, points[0][0], spec, tolerances)

    (z1, _), (z2, _) = points
    k1, k2 = critical.values
    coincident = abs(k1 - k2) <= tolerances.degenerate_critical_values * (1 + abs(k1) + abs(k2))
    if abs(z1 - z2) <= tolerances.double_critical_point or coincident:
        # a double root of the derivative numerator is a simple root of its derivative
        center = newton_polish(poly_derivative(derivative_numerator(B, tolerances)), (z1 + z2) / 2, tolerances)
        logger.info("near-double critical point at %s (separation %.3e)", center, abs(z1 - z2))
        return _model_via_automorphism(B, center, spec, tolerances)

    cubic = depressed_cubic_coeffs(k1, k2, tolerances)
    logger.info("generic degree 3: k1=%s k2=%s c=%s d=%s", k1, k2, cubic.c, cubic.d)
    grid = select_analytic_branch(cubic, B, spec, tolerances, workers=workers)
    built = ConformalModel(
        case=ModelCase.DEGREE3_GENERIC,
        p=cubic.polynomial,
        phi=TrackedBranch(grid, cubic, B, tolerances),
        critical_values=(k1, k2),
        depressed=cubic,
        critical_points=points,
    )
    return _certify(B, built, spec, tolerances)


def model(B: FiniteBlaschkeProduct, spec: PolarGridSpec = CERTIFICATE_GRID,
          tolerances: Tolerances = DEFAULT_TOLERANCES, workers: int = 1) -> ConformalModel:
    """Build a polynomial conformal model of ``B``.

    Args:
        B: Finite Blaschke product
        spec: Continuation and certificate grid
        tolerances: Numerical thresholds
        workers: Continuation seeds tracked concurrently

    Returns:
        A certified ConformalModel with ``degree(p) == degree(B)``

    Raises:
        UnsupportedInput: Degree >= 4 without equally spaced zeros
    """
    if B.degree == 1:
        logger.info("dispatch: degree one")
        return model_degree_one(B, spec, tolerances)
    try:
        form = canonicalize_equally_spaced(B, tolerances)
    except NotEquallySpaced as err:
        if B.degree >= 4:
            raise UnsupportedInput(
                f"no construction for degree {B.degree} without equally spaced zeros"
            ) from err
    else:
        logger.info("dispatch: equally spaced zeros, n=%d", form.n)
        return _certify(B, model_equally_spaced(form, spec, tolerances), spec, tolerances)

    if B.degree == 2:
        (center, _), = critical_points_in_disk(B, tolerances).points
        logger.info("dispatch: degree two via automorphism")
        return _model_via_automorphism(B, center, spec, tolerances)
    logger.info("dispatch: degree three")
    return model_degree_three(B, spec, tolerances, workers)
