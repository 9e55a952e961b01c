#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Properties of random Blaschke products: modulus, critical points and equally spaced forms.
"""

import numpy as np
import pytest

from blaschke_conformal.algebra import all_roots_oracle
from blaschke_conformal.blaschke import (
    EquallySpacedForm,
    canonicalize_equally_spaced,
    critical_points_in_disk,
    derivative_numerator,
    from_equally_spaced,
)
from tests.utils.blaschke_factory import random_blaschke, random_disk_points, random_unimodular
from tests.utils.root_matching import match_distance


@pytest.mark.advanced
def test_unit_modulus_on_the_circle(rng):
    """|B| = 1 on |z| = 1 within 1e-10 and |B| < 1 inside, for 500 random products."""
    for index in range(500):
        B = random_blaschke(rng, int(rng.integers(1, 6)))
        circle = np.exp(2j * np.pi * rng.uniform(0, 1, 100))
        defect = np.max(np.abs(np.abs(B(circle)) - 1.0))
        assert defect <= 1e-10, f"Product {index}: |B| deviates from 1 by {defect:.3e} on the circle"

        inside = random_disk_points(rng, 20, 0.99)
        assert np.all(np.abs(B(inside)) < 1.0), f"Product {index}: |B| >= 1 inside the disk"


@pytest.mark.advanced
def test_critical_points_against_oracle(rng):
    """
    Critical points of 200 random degree two and three products.

    Test steps:
    1. Extract the critical points with the closed-form solver
    2. Check their total multiplicity is degree - 1
    3. Compare with the inside roots found by simultaneous iteration
    """
    for index in range(200):
        degree = 2 + index % 2
        B = random_blaschke(rng, degree)

        # Extract the critical points
        critical = critical_points_in_disk(B)
        assert critical.total_multiplicity == degree - 1, f"Product {index}: wrong count {critical.points}"

        # Compare with the oracle
        points = [z for z, m in critical.points for _ in range(m)]
        oracle = [r for r in all_roots_oracle(derivative_numerator(B)) if abs(r) < 1]
        assert match_distance(points, oracle) <= 1e-8, f"Product {index}: oracle found {oracle}, solver {points}"

        # Critical values are images of the critical points
        for (z, _), k in zip(critical.points, critical.values):
            assert abs(B(z) - k) < 1e-14, f"Product {index}: critical value is not B(z)"


@pytest.mark.advanced
@pytest.mark.parametrize("n", range(2, 7))
def test_canonical_form_ignores_base_rotation(rng, n):
    """Rotating base by an n-th root of unity describes the same product and canonicalizes back."""
    form = EquallySpacedForm(random_unimodular(rng), complex(random_disk_points(rng, 1, 0.85)[0]), n)
    z = random_disk_points(rng, 50, 0.99)
    for k in range(n):
        rotated = EquallySpacedForm(form.lam, form.base * np.exp(2j * np.pi * k / n), n)
        canonical = canonicalize_equally_spaced(from_equally_spaced(rotated))
        assert canonical.n == n, f"Wrong n: {canonical.n}"
        assert abs(canonical.base ** n - form.base ** n) <= 1e-10, f"k={k}: base**n changed to {canonical.base ** n}"
        rebuilt = from_equally_spaced(canonical)
        assert np.max(np.abs(rebuilt(z) - form(z))) <= 1e-10, f"k={k}: round trip changed the product"
