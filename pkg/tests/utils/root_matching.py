#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Optimal matching of two root lists.
"""

from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment


def match_distance(found: Sequence[complex], expected: Sequence[complex]) -> float:
    """Largest pair distance under the assignment that minimises the total distance.

    Args:
        found: Computed roots
        expected: Reference roots, same count

    Returns:
        The worst matched distance
    """
    assert len(found) == len(expected), f"root counts differ: {len(found)} vs {len(expected)}"
    cost = np.abs(np.asarray(found)[:, None] - np.asarray(expected)[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())
