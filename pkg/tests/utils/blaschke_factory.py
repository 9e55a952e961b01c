#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Reproducible constructors for Blaschke products used across the test suite.
"""

import numpy as np

from blaschke_conformal.blaschke import (
    EquallySpacedForm,
    FiniteBlaschkeProduct,
    MobiusDisk,
    from_equally_spaced,
    precompose,
)

# lambda = 1, zeros {0, 3/4, 1/4 + 7i/8}
WORKED_EXAMPLE_ZEROS = (0j, 0.75 + 0j, 0.25 + 0.875j)
WORKED_CRITICAL_POINTS = (0.2014 + 0.6494j, 0.4599 + 0.0103j)


def worked_example() -> FiniteBlaschkeProduct:
    return FiniteBlaschkeProduct(1.0, WORKED_EXAMPLE_ZEROS)


def random_disk_points(rng: np.random.Generator, count: int, radius: float = 0.9) -> np.ndarray:
    """Points uniformly distributed in the disk of the given radius."""
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, count))
    return r * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, count))


def random_unimodular(rng: np.random.Generator) -> complex:
    return complex(np.exp(2j * np.pi * rng.uniform()))


def random_blaschke(rng: np.random.Generator, degree: int, radius: float = 0.9) -> FiniteBlaschkeProduct:
    return FiniteBlaschkeProduct(random_unimodular(rng), tuple(random_disk_points(rng, degree, radius)))


def double_critical_cubic(rng: np.random.Generator) -> FiniteBlaschkeProduct:
    """A degree three product with a double critical point away from the origin."""
    base = complex(random_disk_points(rng, 1, 0.7)[0])
    form = EquallySpacedForm(random_unimodular(rng), base, 3)
    tau = MobiusDisk(complex(random_disk_points(rng, 1, 0.6)[0]), float(rng.uniform(0, 2 * np.pi)))
    return precompose(from_equally_spaced(form), tau)
