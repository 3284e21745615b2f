"""Closed-form solutions of the inscribed-triangle problem on the incircle
and excircles, golden-ratio vertex matrices, and the substitution machinery
(cyclic relabeling, bicentric swap, exversion) that derives all 24 solution
vertices from a single one.

Vertex matrices are stored with per-row denominators cleared (each row is a
polynomial triple in the sidelengths), which keeps entries finite for
near-degenerate triangles; rows are homogeneous so the clearing factor is
immaterial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import core
from .core import TriangleData, VertexMatrix
from .errors import SeedMismatch

Array = np.ndarray

PHI = (1.0 + math.sqrt(5.0)) / 2.0


@dataclass(frozen=True)
class GoldenConstants:
    """The golden ratio and the squared golden coefficients appearing in the
    vertex matrices."""

    phi: float
    sq_phi: float        # phi^2        = phi + 1
    sq_phi_m1: float     # (phi - 1)^2  = 2 - phi
    sq_phi_m2: float     # (phi - 2)^2
    sq_2phi_m3: float    # (2 phi - 3)^2
    sq_phi_p1: float     # (phi + 1)^2
    sq_2phi_p1: float    # (2 phi + 1)^2
    sq_3phi_p2: float    # (3 phi + 2)^2


def golden_constants(phi: float = PHI) -> GoldenConstants:
    return GoldenConstants(
        phi=phi,
        sq_phi=phi * phi,
        sq_phi_m1=(phi - 1.0) ** 2,
        sq_phi_m2=(phi - 2.0) ** 2,
        sq_2phi_m3=(2.0 * phi - 3.0) ** 2,
        sq_phi_p1=(phi + 1.0) ** 2,
        sq_2phi_p1=(2.0 * phi + 1.0) ** 2,
        sq_3phi_p2=(3.0 * phi + 2.0) ** 2,
    )


# ---------------------------------------------------------------------------
# signed evaluation context


@dataclass(frozen=True)
class SignedSides:
    """Formal sidelength triple for evaluating closed-form expressions.

    Components may be negative: negating one side ("exversion") turns every
    incircle formula into the matching excircle formula.
    """

    a: float
    b: float
    c: float

    @classmethod
    def from_triangle(cls, tri: TriangleData) -> "SignedSides":
        return cls(tri.a, tri.b, tri.c)

    @property
    def s(self) -> float:
        return 0.5 * (self.a + self.b + self.c)

    @property
    def u(self) -> float:
        return self.s - self.a

    @property
    def v(self) -> float:
        return self.s - self.b

    @property
    def w(self) -> float:
        return self.s - self.c

    def exverted(self, vertex: str) -> "SignedSides":
        sides = {"a": self.a, "b": self.b, "c": self.c}
        key = vertex.lower()
        if key not in sides:
            raise ValueError(f"vertex must be A, B or C, got {vertex!r}")
        sides[key] = -sides[key]
        return SignedSides(sides["a"], sides["b"], sides["c"])

    def rotated(self) -> "SignedSides":
        return SignedSides(self.b, self.c, self.a)

    def swapped_bc(self) -> "SignedSides":
        return SignedSides(self.a, self.c, self.b)


def exversion(tri: TriangleData | SignedSides, vertex: str) -> SignedSides:
    """Evaluation context with the chosen sidelength negated (a -> -a for A)."""
    sd = SignedSides.from_triangle(tri) if isinstance(tri, TriangleData) else tri
    return sd.exverted(vertex)


# ---------------------------------------------------------------------------
# vertex matrices


def incircle_rows(sd: SignedSides, phi: float = PHI) -> tuple[Array, Array]:
    """Cleared vertex-matrix rows of both incircle solutions."""
    g = golden_constants(phi)
    u, v, w = sd.u, sd.v, sd.w
    vw, uw, uv = v * w, u * w, u * v
    t1 = np.array([
        [g.sq_phi * vw, uw, g.sq_phi_m1 * uv],
        [g.sq_phi_m2 * vw, uw, g.sq_phi_m1 * uv],
        [g.sq_phi_m2 * vw, g.sq_2phi_m3 * uw, g.sq_phi_m1 * uv],
    ])
    t2 = np.array([
        [vw, g.sq_phi * uw, g.sq_phi_p1 * uv],
        [g.sq_2phi_p1 * vw, g.sq_phi * uw, g.sq_phi_p1 * uv],
        [g.sq_2phi_p1 * vw, g.sq_3phi_p2 * uw, g.sq_phi_p1 * uv],
    ])
    return t1, t2


def a_excircle_rows(sd: SignedSides, phi: float = PHI) -> tuple[Array, Array]:
    """Cleared vertex-matrix rows of both A-excircle solutions."""
    g = golden_constants(phi)
    s = sd.s
    sb, sc = sd.v, sd.w          # s - b, s - c
    cs, bs = -sd.w, -sd.v        # c - s, b - s
    q2, r2 = g.sq_phi_m1, g.sq_phi_m2
    t1 = np.array([
        [cs * sb * q2, s * sb, sc * s * r2],
        [cs * sb * r2, s * sb * q2, s * sc],
        [bs * sc, s * sb * r2, sc * s * q2],
    ])
    t2 = np.array([
        [bs * sc * q2, sb * s * r2, s * sc],
        [cs * sb, sb * s * q2, s * sc * r2],
        [bs * sc * r2, s * sb, s * sc * q2],
    ])
    return t1, t2


def incircle_solutions(tri: TriangleData, phi: float = PHI) -> tuple[VertexMatrix, VertexMatrix]:
    """The two inscribed solution triangles on the incircle.

    Row order is fixed: rows are the B-, C- and A-labeled vertices (a row's
    label is the reference vertex its opposite side passes through); side
    row1-row2 passes through A, row2-row3 through B, row3-row1 through C.
    """
    t1, t2 = incircle_rows(SignedSides.from_triangle(tri), phi)
    return (
        VertexMatrix(rows=t1, label="T1", circle=core.INCIRCLE),
        VertexMatrix(rows=t2, label="T2", circle=core.INCIRCLE),
    )


def excircle_solutions(tri: TriangleData, which: str, phi: float = PHI) -> tuple[VertexMatrix, VertexMatrix]:
    """The two inscribed solution triangles on the chosen excircle.

    The B- and C-excircle matrices are cyclic relabelings of the A-excircle
    ones (evaluate at rotated sidelengths, rotate coordinates back).
    """
    sd = SignedSides.from_triangle(tri)
    which = which.upper()
    if which == "A":
        t1, t2 = a_excircle_rows(sd, phi)
    elif which == "B":
        t1, t2 = a_excircle_rows(sd.rotated(), phi)
        t1, t2 = np.roll(t1, 1, axis=1), np.roll(t2, 1, axis=1)
    elif which == "C":
        t1, t2 = a_excircle_rows(sd.rotated().rotated(), phi)
        t1, t2 = np.roll(t1, -1, axis=1), np.roll(t2, -1, axis=1)
    else:
        raise ValueError(f"which must be A, B or C, got {which!r}")
    tag = f"excircle-{which}"
    return (
        VertexMatrix(rows=t1, label="T1", circle=tag),
        VertexMatrix(rows=t2, label="T2", circle=tag),
    )


def solutions_for(tri: TriangleData, tag: str) -> tuple[VertexMatrix, VertexMatrix]:
    """Closed-form solutions for any circle tag."""
    if tag == core.INCIRCLE:
        return incircle_solutions(tri)
    return excircle_solutions(tri, tag[-1])


# ---------------------------------------------------------------------------
# shared symmedian point


def solution_symmedian(vm: VertexMatrix, tri: TriangleData) -> Array:
    """Symmedian point of a solution triangle, in reference barycentrics.

    Embeds the solution, forms its own symmedian (squared sidelengths as
    weights) and converts back.  For incircle solutions this lands on the
    reference point [1/(s-a) : 1/(s-b) : 1/(s-c)].
    """
    verts = vm.cartesian(tri)
    a2 = float(np.sum((verts[1] - verts[2]) ** 2))
    b2 = float(np.sum((verts[2] - verts[0]) ** 2))
    c2 = float(np.sum((verts[0] - verts[1]) ** 2))
    point = (a2 * verts[0] + b2 * verts[1] + c2 * verts[2]) / (a2 + b2 + c2)
    return core.cartesian_to_bary(point, tri)


def gergonne_rows(sd: SignedSides) -> Array:
    """Cleared coordinates of [1/u : 1/v : 1/w] on a signed context."""
    return np.array([sd.v * sd.w, sd.u * sd.w, sd.u * sd.v])


# ---------------------------------------------------------------------------
# twenty-three vertices from one


@dataclass(frozen=True)
class GeneratedVertex:
    circle: str
    label: str    # "T1" | "T2"
    row: int      # row index in the matching vertex matrix
    vertex: str   # "A" | "B" | "C": reference vertex the opposite side crosses
    coords: Array


def _cyc(formula):
    """Cyclic substitution a->b->c->a with the matching coordinate rotation."""
    return lambda sd: np.roll(formula(sd.rotated()), 1)


def _bic(formula):
    """Bicentric swap: b <-> c with coordinate positions 2 and 3 swapped."""
    return lambda sd: formula(sd.swapped_bc())[[0, 2, 1]]


def _exv(formula, vertex):
    return lambda sd: formula(sd.exverted(vertex))


def generator_seed(tri: TriangleData) -> Array:
    """The single vertex all others derive from: the A-labeled vertex of the
    second incircle solution (row 3 of its matrix)."""
    return incircle_rows(SignedSides.from_triangle(tri))[1][2]


# Row index holding the A-, B-, C-lettered vertex of each circle's matrices
# (a vertex's letter is the reference vertex its opposite side crosses).
# Determined once numerically from the side-incidence patterns and asserted
# for all triangles by the test suite.
_LETTER_ROW = {
    core.INCIRCLE: {"A": 2, "B": 0, "C": 1},
    core.EXCIRCLE_A: {"A": 0, "B": 1, "C": 2},
    core.EXCIRCLE_B: {"A": 2, "B": 0, "C": 1},
    core.EXCIRCLE_C: {"A": 1, "B": 2, "C": 0},
}


def twenty_three_from_one(seed, tri: TriangleData) -> list[GeneratedVertex]:
    """Derive all 24 solution vertices (4 circles x 2 solutions x 3 vertices)
    from the single seed vertex.

    The pipeline: a bicentric swap crosses to the other solution of the same
    circle; cyclic substitutions walk the vertex letter A -> B -> C within a
    solution; an exversion (applied last) moves from the incircle to an
    excircle, crossing solutions (T2 <-> T1) with the vertex letter kept.

    The seed must match `generator_seed(tri)` up to scale (1e-10 angular),
    otherwise SeedMismatch is raised.
    """
    seed = np.asarray(seed, dtype=float)
    sd = SignedSides.from_triangle(tri)
    base = lambda s: incircle_rows(s)[1][2]
    if core.sin_angle(seed, base(sd)) > 1e-10:
        raise SeedMismatch("seed is not the generator vertex of this triangle")

    out: list[GeneratedVertex] = []
    for swapped in (False, True):
        in_label = "T1" if swapped else "T2"
        exc_label = "T2" if swapped else "T1"
        formula = _bic(base) if swapped else base
        for k, letter in enumerate("ABC"):
            out.append(GeneratedVertex(
                core.INCIRCLE, in_label, _LETTER_ROW[core.INCIRCLE][letter],
                letter, formula(sd)))
            for exc in "ABC":
                tag = f"excircle-{exc}"
                out.append(GeneratedVertex(
                    tag, exc_label, _LETTER_ROW[tag][letter], letter,
                    _exv(formula, exc)(sd)))
            formula = _cyc(formula)
    return out
