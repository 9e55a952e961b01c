#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Tests for polynomial arithmetic and the closed-form root solvers.
"""

import cmath

import numpy as np
import pytest

from blaschke_conformal.algebra import (
    ComplexPolynomial,
    all_roots_oracle,
    depressed_cubic_roots,
    group_roots,
    poly_derivative,
    poly_eval,
    poly_from_roots,
    principal_nth_root,
    rational_derivative,
    solve_low_degree,
    ComplexRational,
)
from tests.utils.root_matching import match_distance


@pytest.mark.basic
def test_principal_cube_root_of_negative_real():
    """The principal root of a negative real has argument pi/n."""
    root = principal_nth_root(-8, 3)
    assert abs(root - (1 + 1j * np.sqrt(3))) < 1e-14, f"Wrong principal cube root: {root}"


@pytest.mark.basic
def test_principal_square_root_of_i():
    """sqrt(i) = e^{i pi/4}."""
    root = principal_nth_root(1j, 2)
    assert abs(root - cmath.exp(1j * cmath.pi / 4)) < 1e-15, f"Wrong square root of i: {root}"


@pytest.mark.basic
def test_principal_root_inverts_power_in_its_sector(rng):
    """principal_nth_root(w**n, n) == w for w with argument strictly inside (-pi/n, pi/n)."""
    for n in range(1, 7):
        radius = rng.uniform(0.1, 2.0, 50)
        angle = rng.uniform(-0.999, 0.999, 50) * np.pi / n
        for w in radius * np.exp(1j * angle):
            root = principal_nth_root(w ** n, n)
            assert abs(root - w) <= 1e-12 * abs(w), f"n={n}: root of w**n is {root}, expected {w}"


@pytest.mark.basic
def test_poly_derivative_matches_central_difference(rng):
    """poly_derivative agrees with a central difference (h = 1e-6) to 1e-5 relative."""
    h = 1e-6
    for degree in range(1, 6):
        p = ComplexPolynomial(tuple(rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)))
        dp = poly_derivative(p)
        z = rng.uniform(-1, 1, 20) + 1j * rng.uniform(-1, 1, 20)
        exact = poly_eval(dp, z)
        numeric = (poly_eval(p, z + h) - poly_eval(p, z - h)) / (2 * h)
        error = np.max(np.abs(numeric - exact) / (1 + np.abs(exact)))
        assert error <= 1e-5, f"Degree {degree}: derivative off by {error:.3e}"


@pytest.mark.basic
def test_polynomial_trims_exact_zeros():
    """Exact trailing zeros do not count towards the degree."""
    p = ComplexPolynomial((1.0, 2.0, 0.0, 0.0))
    assert p.degree == 1, f"Wrong degree: {p.degree}"
    assert ComplexPolynomial(()).degree == -1, "Zero polynomial should have degree -1"


@pytest.mark.basic
def test_trimmed_drops_rounding_noise():
    """trimmed() removes a top coefficient that is pure rounding noise."""
    p = ComplexPolynomial((1.0, -2.0, 1.0, 3e-17))
    assert p.degree == 3, "Constructor must only strip exact zeros"
    assert p.trimmed().degree == 2, f"Noise coefficient survived: {p.trimmed().coeffs}"


@pytest.mark.basic
def test_poly_eval_scalar_and_array():
    """Evaluation works for scalars and arrays."""
    p = poly_from_roots([1.0, -1.0])
    assert poly_eval(p, 3.0) == 8.0, "z**2 - 1 at 3 should be 8"
    values = poly_eval(p, np.array([0.0, 1j]))
    assert np.allclose(values, [-1.0, -2.0]), f"Wrong array evaluation: {values}"


@pytest.mark.basic
def test_rational_derivative_quotient_rule():
    """(z / (1 - z/2))' = 1 / (1 - z/2)**2."""
    r = ComplexRational(ComplexPolynomial((0.0, 1.0)), ComplexPolynomial((1.0, -0.5)))
    d = rational_derivative(r)
    z = 0.3 + 0.2j
    assert abs(d(z) - 1 / (1 - z / 2) ** 2) < 1e-14, "Quotient rule result is wrong"


@pytest.mark.basic
def test_solve_quadratic():
    """z**2 - 1 has roots +1 and -1."""
    roots = solve_low_degree(ComplexPolynomial((-1.0, 0.0, 1.0)))
    assert match_distance(roots, [1.0, -1.0]) < 1e-15, f"Wrong roots: {roots}"


@pytest.mark.basic
def test_solve_cubic_triple_root():
    """(z - 1)**3 yields the root 1 three times."""
    roots = solve_low_degree(poly_from_roots([1.0, 1.0, 1.0]))
    assert len(roots) == 3, f"Expected three roots, got {roots}"
    assert all(abs(r - 1.0) < 1e-10 for r in roots), f"Triple root not recovered: {roots}"
    assert len(group_roots(roots)) == 1, "Triple root should form one cluster"


@pytest.mark.basic
def test_solve_biquadratic_quartic():
    """(z**2 - 1)(z**2 + 4) takes the biquadratic branch."""
    roots = solve_low_degree(ComplexPolynomial((-4.0, 0.0, 3.0, 0.0, 1.0)))
    assert match_distance(roots, [1, -1, 2j, -2j]) < 1e-13, f"Wrong quartic roots: {roots}"


@pytest.mark.basic
def test_solve_general_quartic():
    """A quartic with no symmetry is solved through the resolvent cubic."""
    expected = [1.0, 2.0, -0.5 + 0.3j, 0.1j]
    roots = solve_low_degree(poly_from_roots(expected, 2 - 1j))
    assert match_distance(roots, expected) < 1e-12, f"Wrong quartic roots: {roots}"


@pytest.mark.basic
def test_double_root_is_refined():
    """A double root is returned twice at full precision."""
    roots = solve_low_degree(poly_from_roots([0.3 + 0.4j, 0.3 + 0.4j, -0.7]))
    groups = group_roots(roots)
    assert len(groups) == 2, f"Expected two clusters, got {groups}"
    double = [z for z, m in groups if m == 2][0]
    assert abs(double - (0.3 + 0.4j)) < 1e-12, f"Double root not refined: {double}"


@pytest.mark.basic
def test_group_roots_counts_multiplicity():
    """Roots within the cluster radius are merged."""
    groups = group_roots([0.5, 0.5 + 1e-9, -0.5])
    assert groups == [(0.5 + 0j, 2), (-0.5 + 0j, 1)], f"Wrong grouping: {groups}"


@pytest.mark.basic
def test_all_roots_oracle_degree_five():
    """Durand-Kerner recovers the roots of a quintic."""
    expected = [0.5, -0.5, 1j, -1j, 1.5 + 0.5j]
    roots = all_roots_oracle(poly_from_roots(expected))
    assert match_distance(roots, expected) < 1e-10, f"Oracle roots wrong: {roots}"


@pytest.mark.basic
def test_depressed_cubic_roots_match_solver(rng):
    """The vectorised Cardano agrees with solve_low_degree element-wise."""
    c = complex(rng.normal(), rng.normal())
    e = rng.normal(size=6) + 1j * rng.normal(size=6)
    batch = depressed_cubic_roots(c, e)
    assert batch.shape == (6, 3), f"Wrong shape: {batch.shape}"
    for k in range(6):
        scalar = solve_low_degree(ComplexPolynomial((e[k], c, 0.0, 1.0)))
        assert match_distance(batch[k], scalar) < 1e-12, f"Batch roots differ at {k}"


@pytest.mark.basic
def test_derivative_of_constant_is_zero():
    """The derivative of a constant is the zero polynomial."""
    assert poly_derivative(ComplexPolynomial((3.0,))).degree == -1, "Derivative of a constant should vanish"
