#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Plane-curve helpers shared by branch selection and verification.
"""

from typing import List, Tuple

import numpy as np

_BLOCK = 128


def _cross(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return (np.conj(u) * v).imag


def polyline_self_intersections(points, closed: bool = True) -> List[Tuple[int, int]]:
    """Pairs of non-adjacent segments that cross properly.

    Segment ``k`` joins ``points[k]`` to ``points[k + 1]`` (wrapping when
    ``closed``). Touching or collinear overlaps are not counted.

    Args:
        points: Complex vertices of the polyline
        closed: Whether the last vertex joins the first

    Returns:
        Sorted list of segment index pairs ``(i, j)`` with ``i < j``
    """
    p = np.asarray(points, dtype=complex).ravel()
    if closed:
        q = np.roll(p, -1)
    else:
        p, q = p[:-1], p[1:]
    n = p.size
    hits: List[Tuple[int, int]] = []
    columns = np.arange(n)
    for start in range(0, n, _BLOCK):
        rows = np.arange(start, min(start + _BLOCK, n))
        a, b = p[rows, None], q[rows, None]
        c, d = p[None, :], q[None, :]
        d1 = _cross(d - c, a - c)
        d2 = _cross(d - c, b - c)
        d3 = _cross(b - a, c - a)
        d4 = _cross(b - a, d - a)
        crossing = (d1 * d2 < 0) & (d3 * d4 < 0)
        # only j > i + 1; the closing segment is adjacent to segment 0
        crossing &= columns[None, :] > rows[:, None] + 1
        if closed:
            crossing &= ~((rows[:, None] == 0) & (columns[None, :] == n - 1))
        for i, j in zip(*np.nonzero(crossing)):
            hits.append((int(rows[i]), int(j)))
    return sorted(hits)


def winding_number(points, center: complex) -> int:
    """Winding number of the closed polyline around ``center``."""
    p = np.asarray(points, dtype=complex).ravel() - center
    turns = np.angle(np.roll(p, -1) / p).sum() / (2 * np.pi)
    return int(round(float(turns)))
