"""Random triangle generation for verification sweeps.

Sidelengths are log-uniform in [min_side, max_side]; candidates violating
the triangle inequality, the flatness cutoff, or the aspect bound
(circumradius / inradius) are rejected.
"""

from __future__ import annotations

import numpy as np

from . import core
from .core import TriangleData
from .errors import DegenerateTriangle


def random_triangle(rng: np.random.Generator,
                    min_side: float = 0.1,
                    max_side: float = 10.0,
                    max_aspect: float = 1e3) -> TriangleData:
    lo, hi = np.log(min_side), np.log(max_side)
    while True:
        a, b, c = np.exp(rng.uniform(lo, hi, 3))
        try:
            tri = core.triangle_from_sides(a, b, c)
        except DegenerateTriangle:
            continue
        if tri.R / tri.r <= max_aspect:
            return tri


def random_interior_perspector(rng: np.random.Generator,
                               floor: float = 0.05) -> np.ndarray:
    """Positive barycentric triple bounded away from the triangle's sides."""
    return rng.uniform(floor, 1.0, 3)
