#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
End-to-end model construction and verification over random inputs.
"""

import numpy as np
import pytest

from blaschke_conformal.blaschke import EquallySpacedForm, critical_points_in_disk, from_equally_spaced
from blaschke_conformal.modeler import (
    ModelCase,
    equally_spaced_identity_defect,
    model,
)
from blaschke_conformal.verify import DEFAULT_PAIRS, critical_value_defect, verify_model
from tests.utils.blaschke_factory import (
    double_critical_cubic,
    random_blaschke,
    random_disk_points,
    random_unimodular,
)

GENERIC_SAMPLES = 20
FORMS_PER_N = 5


@pytest.mark.advanced
def test_random_generic_cubics(rng):
    """
    Degree three products with zeros uniform in |z| <= 0.9 are modeled and verified.

    Test steps:
    1. Draw 20 products without filtering the zeros
    2. Build each model and check the certificate and critical values
    3. Verify with the full pair sample and check branch uniqueness
    """
    for index in range(GENERIC_SAMPLES):
        # Draw the product
        B = random_blaschke(rng, 3, 0.9)

        # Build the model
        m = model(B)
        assert m.case is ModelCase.DEGREE3_GENERIC, f"Sample {index}: wrong case {m.case}"
        assert m.residual_certificate <= 1e-8, f"Sample {index}: residual {m.residual_certificate:.3e}"
        assert m.phi.grid.passing_seed_count == 1, f"Sample {index}: {m.phi.grid.passing_seed_count} seeds passed"

        k1, k2 = critical_points_in_disk(B).values
        assert critical_value_defect(m, k1, k2) <= 1e-10, f"Sample {index}: critical values of p differ from B's"

        # Verify test results
        report = verify_model(B, m, n_pairs=DEFAULT_PAIRS)
        assert report.passed, f"Sample {index}: verification failed: {report}"
        assert report.residual_sup <= 1e-8, f"Sample {index}: residual {report.residual_sup:.3e}"
        assert report.uniqueness is True, f"Sample {index}: branch is not unique"
        assert report.boundary_self_intersections == 0, f"Sample {index}: boundary crosses itself"
        assert report.image_containment_violations == 0, f"Sample {index}: p o phi left the disk"
        assert report.winding_number == 1, f"Sample {index}: boundary winds {report.winding_number} times"


@pytest.mark.advanced
@pytest.mark.parametrize("n", range(2, 9))
def test_equally_spaced_identity_for_every_n(rng, n):
    """B o phi = p within 1e-12 for five random (lambda, base) at each n = 2..8."""
    for sample in range(FORMS_PER_N):
        form = EquallySpacedForm(random_unimodular(rng), complex(random_disk_points(rng, 1, 0.8)[0]), n)
        defect = equally_spaced_identity_defect(form)
        assert defect <= 1e-12, f"B(phi) != p for n={n}, sample {sample}: {defect:.3e}"

        B = from_equally_spaced(form)
        m = model(B)
        assert m.case is ModelCase.EQUALLY_SPACED, f"Wrong case for n={n}: {m.case}"
        assert m.degree == n, f"Wrong degree for n={n}: {m.degree}"
        assert m.residual_certificate <= 1e-12, f"Residual {m.residual_certificate:.3e} for n={n}"
        if sample == 0:
            assert verify_model(B, m, n_pairs=DEFAULT_PAIRS).passed, f"Verification failed for n={n}"


@pytest.mark.advanced
def test_random_degree_two(rng):
    """Every degree two product is modeled through its critical point within 1e-9."""
    for index in range(10):
        B = random_blaschke(rng, 2)
        m = model(B)
        assert m.case is ModelCase.EQUALLY_SPACED, f"Sample {index}: wrong case {m.case}"
        assert m.pre_automorphism is not None, f"Sample {index}: expected an automorphism to the critical point"
        assert m.residual_certificate <= 1e-9, f"Sample {index}: residual {m.residual_certificate:.3e}"
        z = random_disk_points(rng, 20, 0.99)
        assert np.allclose(m.evaluate(z), B(z), atol=1e-9, rtol=0), f"Sample {index}: p o phi_total does not reproduce B"
        assert verify_model(B, m, n_pairs=DEFAULT_PAIRS).passed, f"Sample {index}: verification failed"


@pytest.mark.advanced
def test_double_critical_point_routes_to_closed_form(rng):
    """A cubic with a double critical point needs no continuation and meets 1e-9."""
    for index in range(5):
        B = double_critical_cubic(rng)
        m = model(B)
        assert m.case is ModelCase.EQUALLY_SPACED, f"Sample {index}: wrong case {m.case}"
        assert m.pre_automorphism is not None, f"Sample {index}: expected an automorphism to the critical point"
        assert m.critical_points[0][1] == 2, f"Sample {index}: expected a double point: {m.critical_points}"
        assert m.residual_certificate <= 1e-9, f"Sample {index}: residual {m.residual_certificate:.3e}"
        z = random_disk_points(rng, 20, 0.99)
        assert np.allclose(m.evaluate(z), B(z), atol=1e-9, rtol=0), f"Sample {index}: p o phi_total does not reproduce B"
        assert verify_model(B, m, n_pairs=DEFAULT_PAIRS).passed, f"Sample {index}: verification failed"


@pytest.mark.advanced
def test_worked_example_uniqueness(worked_blaschke, worked_model):
    """The worked example passes every gate including uniqueness."""
    report = verify_model(worked_blaschke, worked_model)
    assert report.passed, f"Verification failed: {report}"
    assert report.residual_sup <= 1e-8, f"Residual {report.residual_sup:.3e}"
    assert worked_model.phi.grid.passing_seed_count == 1, "Exactly one seed should pass"
    assert report.uniqueness is True, "Exactly one branch should be analytic"
    assert report.image_containment_violations == 0, "p o phi left the disk"
    assert report.p_critical_value_max_modulus < 1, "Critical values of p must lie in the disk"
