#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Central tolerance record.

Every threshold used by the solvers, the modeler, the continuation engine and
the verification suite is a field here, so a run can be reproduced from one
object.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances with their documented defaults."""

    # algebra
    root_residual: float = 1e-12
    newton_residual: float = 1e-13
    newton_step: float = 1e-15
    newton_max_steps: int = 50
    cluster_radius: float = 1e-7
    degree_deficiency: float = 1e-14
    oracle_max_iterations: int = 1000

    # blaschke
    unimodular: float = 1e-12
    boundary_margin: float = 1e-12
    equally_spaced: float = 1e-9

    # modeler
    double_critical_point: float = 1e-8
    degenerate_critical_values: float = 1e-10
    model_residual: float = 1e-8
    closed_form_residual: float = 1e-12

    # continuation
    coupling: float = 1e-9
    ring_closure: float = 1e-8
    max_refinements: int = 24
    node_avoid_radius: float = 1e-6
    node_jitter: float = 3e-6
    ambiguity: float = 1e-9

    # verify
    residual: float = 1e-8
    boundary: float = 1e-8
    critical_value: float = 1e-10


DEFAULT_TOLERANCES = Tolerances()
