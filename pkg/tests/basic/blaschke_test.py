#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Tests for Blaschke product evaluation, critical points and disk automorphisms.
"""

import numpy as np
import pytest

from blaschke_conformal.algebra import all_roots_oracle
from blaschke_conformal.blaschke import (
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
    reflection_defect,
)
from blaschke_conformal.errors import NotEquallySpaced
from tests.utils.blaschke_factory import WORKED_CRITICAL_POINTS, random_blaschke, random_disk_points
from tests.utils.root_matching import match_distance


@pytest.mark.basic
def test_identity_product():
    """lambda = 1 with a single zero at 0 is the identity."""
    B = FiniteBlaschkeProduct(1.0, (0,))
    assert B(0.3 + 0.1j) == 0.3 + 0.1j, "B(z) = z expected"
    assert B.degree == 1, f"Wrong degree: {B.degree}"


@pytest.mark.basic
def test_zero_and_boundary_modulus(rng):
    """B vanishes at its zeros and is unimodular on the circle."""
    B = random_blaschke(rng, 3)
    for a in B.zeros:
        assert abs(B(a)) < 1e-15, f"B does not vanish at zero {a}"
    circle = np.exp(2j * np.pi * np.linspace(0, 1, 64, endpoint=False))
    assert np.allclose(np.abs(blaschke_eval(B, circle)), 1.0, atol=1e-13), "|B| != 1 on the unit circle"


@pytest.mark.basic
def test_critical_points_degree_one():
    """A degree one product has no critical points."""
    critical = critical_points_in_disk(FiniteBlaschkeProduct(1j, (0.5,)))
    assert critical.points == () and critical.values == (), f"Unexpected critical data: {critical}"


@pytest.mark.basic
def test_critical_points_of_z_cubed():
    """z**3 has a double critical point at 0 with value 0."""
    critical = critical_points_in_disk(FiniteBlaschkeProduct(1.0, (0, 0, 0)))
    assert len(critical.points) == 1, f"Expected one point, got {critical.points}"
    (z, m), = critical.points
    assert abs(z) < 1e-12 and m == 2, f"Wrong double point: {critical.points}"
    assert abs(critical.values[0]) < 1e-12, f"Wrong critical value: {critical.values}"


@pytest.mark.basic
def test_critical_multiplicities_sum_to_degree_minus_one(rng):
    """Multiplicities add up to degree - 1 for random products."""
    for degree in (2, 3):
        for _ in range(5):
            B = random_blaschke(rng, degree)
            critical = critical_points_in_disk(B)
            assert critical.total_multiplicity == degree - 1, f"Wrong count for {B}"
            assert all(abs(z) < 1 for z, _ in critical.points), "Critical point outside the disk"


@pytest.mark.basic
def test_worked_example_critical_points(worked_blaschke):
    """The worked example reproduces its reference critical points."""
    critical = critical_points_in_disk(worked_blaschke)
    points = [z for z, _ in critical.points]
    assert match_distance(points, WORKED_CRITICAL_POINTS) < 5e-4, f"Critical points {points} differ from the reference values"

    # Cross-check against the independent simultaneous iteration
    oracle = [r for r in all_roots_oracle(derivative_numerator(worked_blaschke)) if abs(r) < 1]
    assert match_distance(points, oracle) < 1e-10, f"Oracle disagrees: {oracle}"


@pytest.mark.basic
def test_outside_roots_are_reflections(rng):
    """Roots of the derivative numerator come in pairs z, 1/conj(z)."""
    B = random_blaschke(rng, 3, radius=0.8)
    assert reflection_defect(B) < 1e-8, "Outside critical points are not reflections"


@pytest.mark.basic
def test_mobius_disk_maps_zero_to_base_point():
    """tau(0) = a, tau^-1 inverts tau, and the circle maps to itself."""
    tau = MobiusDisk(0.3 - 0.4j, 1.1)
    assert abs(tau(0) - (0.3 - 0.4j)) < 1e-15, "tau(0) != a"
    z = np.array([0.2 + 0.1j, -0.5j, 0.7])
    assert np.allclose(tau.inverse(tau(z)), z, atol=1e-14), "inverse does not invert"
    circle = np.exp(1j * np.linspace(0, 6, 20))
    assert np.allclose(np.abs(tau(circle)), 1.0, atol=1e-14), "circle not mapped to circle"


@pytest.mark.basic
def test_precompose_matches_composition(rng):
    """precompose(B, tau) evaluates as B o tau."""
    B = random_blaschke(rng, 3)
    tau = MobiusDisk(complex(random_disk_points(rng, 1, 0.7)[0]), 0.4)
    composed = precompose(B, tau)
    z = random_disk_points(rng, 10, 0.95)
    assert np.allclose(composed(z), B(tau(z)), atol=1e-12), "precompose disagrees with B o tau"
    assert precompose(B, disk_automorphism(0)) is B, "The identity automorphism should return B"


@pytest.mark.basic
def test_canonicalize_rotated_roots_of_unity():
    """Zeros 0.6 * i^k give base 0.6 (up to an n-th root of unity) and n = 4."""
    zeros = tuple(0.6 * 1j ** k for k in range(4))
    form = canonicalize_equally_spaced(FiniteBlaschkeProduct(1j, zeros))
    assert form.n == 4, f"Wrong n: {form.n}"
    assert abs(form.base ** 4 - 0.6 ** 4) < 1e-12, f"Wrong base: {form.base}"
    z = np.array([0.1, 0.5j, -0.3 - 0.3j])
    B = FiniteBlaschkeProduct(1j, zeros)
    assert np.allclose(form(z), B(z), atol=1e-12), "Canonical form does not reproduce B"


@pytest.mark.basic
def test_equally_spaced_round_trip():
    """from_equally_spaced builds the product the form describes."""
    form = EquallySpacedForm(np.exp(0.7j), 0.5 * np.exp(0.2j), 3)
    B = from_equally_spaced(form)
    z = np.array([0.0, 0.4 + 0.4j, -0.9])
    assert np.allclose(B(z), form(z), atol=1e-13), "Product and form disagree"


@pytest.mark.basic
def test_repeated_zeros_are_not_equally_spaced():
    """Zeros {0.5, 0.5} share a square but are not +-0.5."""
    with pytest.raises(NotEquallySpaced):
        canonicalize_equally_spaced(FiniteBlaschkeProduct(1.0, (0.5, 0.5)))
