"""Triangle-center registry (Kimberling indices) and the solution/reference
correspondence verifier.

Registry entries are barycentric functions of the sidelengths.  Provenance
notes distinguish entries with an independent defining-property test in the
suite from transcription-trusted ones, whose acceptance rests on homogeneity,
permutation equivariance and the correspondence check itself.

The full correspondence list ships as a data file (one "i k" pair per line);
pairs whose centers are not in the registry are reported data-only, never
silently dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import ccp_closed, core
from .core import TriangleData
from .errors import UnknownCenter

Array = np.ndarray

SQRT3 = math.sqrt(3.0)


def _heron(a, b, c):
    s = 0.5 * (a + b + c)
    return math.sqrt(s * (s - a) * (s - b) * (s - c))


def _sa(a, b, c):
    return 0.5 * (b * b + c * c - a * a)


def _cyclic(f):
    """Expand a first-coordinate rule into the full barycentric triple."""
    return lambda a, b, c: np.array([f(a, b, c), f(b, c, a), f(c, a, b)])


def _normalized(triple):
    return triple / triple.sum()


# --- individual formulas ---------------------------------------------------

_X1 = _cyclic(lambda a, b, c: a)
_X2 = _cyclic(lambda a, b, c: 1.0)
_X3 = _cyclic(lambda a, b, c: a * a * _sa(a, b, c))
_X4 = _cyclic(lambda a, b, c: _sa(b, c, a) * _sa(c, a, b))
_X6 = _cyclic(lambda a, b, c: a * a)
_X7 = _cyclic(lambda a, b, c: (0.5 * (a + b + c) - b) * (0.5 * (a + b + c) - c))


def _X15(a, b, c):
    S = 2.0 * _heron(a, b, c)
    return _cyclic(lambda x, y, z: x * x * (SQRT3 * _sa(x, y, z) + S))(a, b, c)


def _X16(a, b, c):
    S = 2.0 * _heron(a, b, c)
    return _cyclic(lambda x, y, z: x * x * (SQRT3 * _sa(x, y, z) - S))(a, b, c)


def _X20(a, b, c):
    # reflection of the orthocenter in the circumcenter
    return 2.0 * _normalized(_X3(a, b, c)) - _normalized(_X4(a, b, c))


def _soddy_pencil(mu):
    """Points [a + mu * area / (s-a) : ...] on the line through X1 and X7."""
    def f(a, b, c):
        area = _heron(a, b, c)
        s = 0.5 * (a + b + c)
        return np.array([a + mu * area / (s - a),
                         b + mu * area / (s - b),
                         c + mu * area / (s - c)])
    return f


_X175 = _soddy_pencil(-1.0)   # isoperimetric point (outer Soddy center)
_X176 = _soddy_pencil(+1.0)   # equal detour point (inner Soddy center)
_X481 = _soddy_pencil(-2.0)   # first Eppstein point
_X482 = _soddy_pencil(+2.0)   # second Eppstein point

_X187 = _cyclic(lambda a, b, c: a * a * (2 * a * a - b * b - c * c))


def _brocard_pencil(factor_s, factor_q):
    """Points [a^2 (S_A + t)] on the Brocard axis, t = factor_s*2*area + factor_q*(a^2+b^2+c^2)."""
    def f(a, b, c):
        t = factor_s * 2.0 * _heron(a, b, c) + factor_q * (a * a + b * b + c * c)
        return _cyclic(lambda x, y, z: x * x * (_sa(x, y, z) + t))(a, b, c)
    return f


_X371 = _brocard_pencil(+1.0, 0.0)    # Kenmotu (congruent squares) point
_X372 = _brocard_pencil(-1.0, 0.0)    # second Kenmotu point
_X1151 = _brocard_pencil(+0.5, 0.0)
_X1152 = _brocard_pencil(-0.5, 0.0)
_X3053 = _brocard_pencil(0.0, -0.25)  # = [a^2 (3a^2 - b^2 - c^2)] up to sign


def _X279(a, b, c):
    s = 0.5 * (a + b + c)
    u, v, w = s - a, s - b, s - c
    return np.array([(v * w) ** 2, (w * u) ** 2, (u * v) ** 2])


def _X390(a, b, c):
    # reflection of X1 in X7
    return 2.0 * _normalized(_X7(a, b, c)) - _normalized(_X1(a, b, c))


def _X511(a, b, c):
    # infinite point of the Brocard axis
    return _normalized(_X3(a, b, c)) - _normalized(_X6(a, b, c))


_X512 = _cyclic(lambda a, b, c: a * a * (b * b - c * c))
_X514 = _cyclic(lambda a, b, c: b - c)


def _X516(a, b, c):
    # infinite point of the Soddy line (through X1 and X7)
    return _normalized(_X7(a, b, c)) - _normalized(_X1(a, b, c))


def _X1323(a, b, c):
    # Fletcher point: Soddy line meets the Gergonne line (trilinear polar of X7)
    s = 0.5 * (a + b + c)
    soddy = np.cross(_X1(a, b, c), _X7(a, b, c))
    gergonne_line = np.array([s - a, s - b, s - c])
    return np.cross(soddy, gergonne_line)


def _X1350(a, b, c):
    # reflection of X3 in X6
    return 2.0 * _normalized(_X6(a, b, c)) - _normalized(_X3(a, b, c))


# --- registry ---------------------------------------------------------------

PROPERTY_TESTED = "property-tested"
CONSTRUCTED = "constructed"
TRANSCRIBED = "transcription-trusted"


@dataclass(frozen=True)
class CenterDef:
    index: int
    fn: object
    name: str
    provenance: str


_REGISTRY: dict[int, CenterDef] = {}


def _register(index, fn, name, provenance):
    _REGISTRY[index] = CenterDef(index=index, fn=fn, name=name, provenance=provenance)


_register(1, _X1, "incenter", PROPERTY_TESTED)
_register(2, _X2, "centroid", PROPERTY_TESTED)
_register(3, _X3, "circumcenter", PROPERTY_TESTED)
_register(4, _X4, "orthocenter", PROPERTY_TESTED)
_register(6, _X6, "symmedian point", PROPERTY_TESTED)
_register(7, _X7, "Gergonne point", PROPERTY_TESTED)
_register(15, _X15, "first isodynamic point", PROPERTY_TESTED)
_register(16, _X16, "second isodynamic point", PROPERTY_TESTED)
_register(20, _X20, "de Longchamps point", CONSTRUCTED)
_register(175, _X175, "isoperimetric point", PROPERTY_TESTED)
_register(176, _X176, "equal detour point", PROPERTY_TESTED)
_register(187, _X187, "Schoute center", PROPERTY_TESTED)
_register(279, _X279, "Gergonne-square point", TRANSCRIBED)
_register(371, _X371, "Kenmotu point", TRANSCRIBED)
_register(372, _X372, "second Kenmotu point", TRANSCRIBED)
_register(390, _X390, "X7-reflection of X1", CONSTRUCTED)
_register(481, _X481, "first Eppstein point", TRANSCRIBED)
_register(482, _X482, "second Eppstein point", TRANSCRIBED)
_register(511, _X511, "Brocard axis infinity", CONSTRUCTED)
_register(512, _X512, "Lemoine axis infinity", PROPERTY_TESTED)
_register(514, _X514, "Gergonne-line infinity", PROPERTY_TESTED)
_register(516, _X516, "Soddy line infinity", CONSTRUCTED)
_register(1151, _X1151, "Brocard-axis half-Kenmotu", TRANSCRIBED)
_register(1152, _X1152, "Brocard-axis half-Kenmotu mate", TRANSCRIBED)
_register(1323, _X1323, "Fletcher point", CONSTRUCTED)
_register(1350, _X1350, "X6-reflection of X3", CONSTRUCTED)
_register(3053, _X3053, "Brocard-axis quarter point", TRANSCRIBED)


def registry_indices() -> tuple[int, ...]:
    return tuple(sorted(_REGISTRY))


def center_definition(idx: int) -> CenterDef:
    if idx not in _REGISTRY:
        raise UnknownCenter(f"X{idx} is not in the registry")
    return _REGISTRY[idx]


def center(idx: int, tri) -> Array:
    """Barycentrics of center X_idx w.r.t. a TriangleData or 3x2 vertex array."""
    t = tri if isinstance(tri, TriangleData) else core.triangle_from_vertices(tri)
    return center_definition(idx).fn(t.a, t.b, t.c)


# --- correspondence data and verification ----------------------------------


def correspondence_pairs() -> list[tuple[int, int]]:
    """Solution/reference index pairs from the shipped data file."""
    text = resources.files("castillon.data").joinpath("correspondences.txt").read_text()
    pairs = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        i, k = line.split()
        pairs.append((int(i), int(k)))
    return pairs


VERIFIED = "verified"
DATA_ONLY = "data-only"


@dataclass(frozen=True)
class PairResult:
    solution_index: int
    reference_index: int
    status: str            # verified | data-only
    residual: float        # max angular residual over the three comparisons
    passed: bool


@dataclass(frozen=True)
class CorrespondenceReport:
    results: tuple[PairResult, ...]
    tolerance: float

    @property
    def verified(self) -> tuple[PairResult, ...]:
        return tuple(r for r in self.results if r.status == VERIFIED)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def max_residual(self) -> float:
        v = [r.residual for r in self.verified]
        return max(v) if v else 0.0


def verify_correspondences(t: TriangleData, tolerance: float = 1e-9) -> CorrespondenceReport:
    """For every pair [i, k] with both indices in the registry, check that
    X_i of either incircle solution coincides with X_k of the reference.

    Points at infinity are compared as directions (the angular residual is
    already direction-based).  Pairs with a missing index are reported with
    status data-only and always pass.
    """
    vm1, vm2 = ccp_closed.incircle_solutions(t)
    tri1 = core.triangle_from_vertices(vm1.cartesian(t))
    tri2 = core.triangle_from_vertices(vm2.cartesian(t))
    results = []
    for i, k in correspondence_pairs():
        if i not in _REGISTRY or k not in _REGISTRY:
            results.append(PairResult(i, k, DATA_ONLY, 0.0, True))
            continue
        p1 = core.convert_bary(center(i, tri1), tri1, t)
        p2 = core.convert_bary(center(i, tri2), tri2, t)
        ref = center(k, t)
        residual = max(
            core.sin_angle(p1, p2),
            core.sin_angle(p1, ref),
            core.sin_angle(p2, ref),
        )
        results.append(PairResult(i, k, VERIFIED, residual, residual <= tolerance))
    return CorrespondenceReport(results=tuple(results), tolerance=tolerance)
