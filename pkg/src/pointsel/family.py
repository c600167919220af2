"""Families of d+1 simplices: separation, inner tangents, tight/loose/crossed.

A family is *separated* when every colorful vertex tuple (one vertex per
member) has the same nonzero orientation; otherwise it is *crossed*.  For a
separated family each member ``i`` has a unique inner tangent: the hyperplane
touching every other member at one vertex with member ``i`` strictly on its
negative side.  The intersection of the open negative sides is a bounded
simplex exactly when the family is *tight*; otherwise it is *loose*.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from . import kernels
from .errors import (
    DegenerateSupport,
    DegenerateVertices,
    DimensionMismatch,
    NoTransversal,
    NotLoose,
    NotPinned,
    NotSeparated,
)
from .geometry import (
    OrientedHyperplane,
    Point,
    Simplex,
    centroid,
    format_rational,
    hyperplane_from_homs,
    point_in_simplex,
    solve_linear,
)
from .lp import linear_feasible


class FamilyClass(str, enum.Enum):
    CROSSED = "crossed"
    LOOSE = "loose"
    TIGHT = "tight"


class Family:
    """An ordered family of ``d+1`` simplices in R^d.

    Members may be points, (d-1)-simplices or d-simplices.  The expensive
    vertex scan is cached on the instance.
    """

    __slots__ = ("members", "ambient_dim", "_scan", "_tangents", "_delta")

    def __init__(self, members: Sequence, ambient_dim: int | None = None):
        ms = []
        for m in members:
            if isinstance(m, Simplex):
                ms.append(m)
            else:
                ms.append(Simplex(m, ambient_dim))
        if not ms:
            raise DimensionMismatch("empty family")
        d = ms[0].dim_ambient if ambient_dim is None else ambient_dim
        for m in ms:
            if m.dim_ambient != d:
                raise DimensionMismatch("members live in different dimensions")
        if len(ms) != d + 1:
            raise DimensionMismatch(f"a family in R^{d} has {d + 1} members, got {len(ms)}")
        self.members = tuple(ms)
        self.ambient_dim = d
        self._scan = None
        self._tangents = None
        self._delta = None

    @property
    def homs(self) -> list[list[tuple[int, ...]]]:
        return [[v.hom for v in m.vertices] for m in self.members]

    def vertices(self) -> list[Point]:
        return [v for m in self.members for v in m.vertices]

    def scan(self):
        if self._scan is None:
            self._scan = kernels.family_scan(self.homs)
        return self._scan

    def __repr__(self):
        return f"Family({list(self.members)!r})"


@dataclass(frozen=True)
class InnerTangent:
    """Inner tangent for member ``index``; ``contacts[j]`` is the touching vertex of member j."""

    index: int
    hyperplane: OrientedHyperplane
    contacts: dict


@dataclass(frozen=True)
class DeltaCell:
    """The open cell cut out by the negative sides of the inner tangents.

    ``kind`` is ``"bounded"`` (then ``simplex`` holds its d+1 vertices),
    ``"empty"`` or ``"unbounded"``.
    """

    kind: str
    simplex: Simplex | None
    tangents: tuple[OrientedHyperplane, ...]

    @property
    def bounded(self) -> bool:
        return self.kind == "bounded"

    def centroid(self) -> Point:
        if self.simplex is None:
            raise ValueError(f"{self.kind} cell has no centroid")
        return self.simplex.centroid()

    def contains(self, x: Point) -> bool:
        """Open membership in the intersection of the negative sides."""
        return all(h.side(x) < 0 for h in self.tangents)


def is_separated(F: Family) -> bool:
    """Constant nonzero orientation over all colorful vertex tuples.

    A zero orientation means ``d+1`` vertices share a hyperplane that meets
    every member, so such families count as not separated.
    """
    return F.scan()[0] != 0


def inner_tangents(F: Family) -> list[InnerTangent]:
    if F._tangents is not None:
        return F._tangents
    sign, candidates = F.scan()
    if sign == 0:
        raise NotSeparated("family is crossed; inner tangents are not unique")
    homs = F.homs
    k = len(F.members)
    out = []
    for i in range(k):
        found = candidates[i]
        if len(found) != 1:
            raise DegenerateVertices(
                f"expected exactly one inner tangent for member {i}, found {len(found)}"
            )
        others = [j for j in range(k) if j != i]
        choice = found[0]
        support = [homs[j][c] for j, c in zip(others, choice)]
        h = hyperplane_from_homs(support)
        # side(q) follows orient(support + [q]); make member i negative
        if h.side(F.members[i].vertices[0]) > 0:
            h = h.flipped()
        contacts = {j: F.members[j].vertices[c] for j, c in zip(others, choice)}
        out.append(InnerTangent(i, h, contacts))
    F._tangents = out
    return out


def inner_tangent(F: Family, i: int) -> OrientedHyperplane:
    """The unique inner tangent separating member ``i`` from the others."""
    return inner_tangents(F)[i].hyperplane


def tangent_candidates(F: Family) -> list[list[tuple[int, ...]]]:
    """All valid vertex assignments per member (uniqueness check helper)."""
    sign, candidates = F.scan()
    if sign == 0:
        raise NotSeparated("family is crossed")
    return candidates


def _intersection_point(hs: Sequence[OrientedHyperplane]) -> Point:
    x = solve_linear([h.normal for h in hs], [h.offset for h in hs])
    if x is None:
        raise DegenerateVertices("tangent hyperplanes are not in general position")
    return Point(x)


def _positive_dependence(normals: Sequence[Sequence[int]]) -> list[int]:
    # the (unique up to scale) linear dependence among d+1 vectors in R^d
    d = len(normals[0])
    mu = []
    for i in range(d + 1):
        rows = [list(a) for j, a in enumerate(normals) if j != i]
        mu.append((-1) ** i * kernels.det_value(rows))
    return mu


def delta_cell(F: Family, method: str = "dependence") -> DeltaCell:
    """Intersection of the open negative sides of the inner tangents.

    ``method="dependence"`` decides boundedness from the sign pattern of the
    linear dependence ``sum mu_i a_i = 0`` among the tangent normals and
    nonemptiness from ``sum mu_i b_i``; ``method="lp"`` asks whether the
    closed positive sides have a common point (then the negative cell is
    empty or unbounded) and otherwise reports the bounded simplex.  Both
    give the same answer; the test-suite checks this.
    """
    if method == "dependence" and F._delta is not None:
        return F._delta
    tangents = tuple(t.hyperplane for t in inner_tangents(F))
    d = F.ambient_dim
    if method == "lp":
        pos = [(h.normal, ">=", h.offset) for h in tangents]
        if linear_feasible(pos) is not None:
            neg = [(h.normal, "<", h.offset) for h in tangents]
            kind = "unbounded" if linear_feasible(neg) is not None else "empty"
            return DeltaCell(kind, None, tangents)
        kind = "bounded"
    elif method == "dependence":
        ints = [h.int_coeffs for h in tangents]
        mu = _positive_dependence([h[1:] for h in ints])
        if any(m == 0 for m in mu):
            raise DegenerateVertices("inner tangent normals are not in general position")
        if all(m > 0 for m in mu) or all(m < 0 for m in mu):
            s = sum(m * h[0] for m, h in zip(mu, ints))
            if mu[0] < 0:
                s = -s
            if s == 0:
                raise DegenerateVertices("inner tangents pass through a common point")
            kind = "bounded" if s > 0 else "empty"
        else:
            kind = "unbounded"
        if kind != "bounded":
            cell = DeltaCell(kind, None, tangents)
            F._delta = cell
            return cell
    else:
        raise ValueError(f"unknown method {method!r}")
    verts = [
        _intersection_point([h for j, h in enumerate(tangents) if j != k]) for k in range(d + 1)
    ]
    cell = DeltaCell("bounded", Simplex(verts, d), tangents)
    if method == "dependence":
        F._delta = cell
    return cell


def classify_family(F: Family) -> FamilyClass:
    if not is_separated(F):
        return FamilyClass.CROSSED
    if delta_cell(F).bounded:
        return FamilyClass.TIGHT
    return FamilyClass.LOOSE


# --- colorful core ---------------------------------------------------------


@dataclass(frozen=True)
class CoreDescription:
    """Closed polytope ``{x : a.x >= b for every halfspace}``."""

    halfspaces: tuple[OrientedHyperplane, ...]
    interior_nonempty: bool
    interior_point: Point | None

    def contains(self, x: Point, strict: bool = False) -> bool:
        if strict:
            return all(h.side(x) > 0 for h in self.halfspaces)
        return all(h.side(x) >= 0 for h in self.halfspaces)

    def to_json(self) -> dict:
        return {
            "halfspaces": [h.to_json() for h in self.halfspaces],
            "interior_nonempty": self.interior_nonempty,
            "interior_point": self.interior_point.to_json() if self.interior_point else None,
        }


def colorful_core_oracle(F: Family) -> CoreDescription:
    """Intersection of all closed colorful vertex simplices, as halfspaces.

    The facet of ``conv(v_1..v_{d+1})`` opposite ``v_j`` only depends on the
    other chosen vertices, and for a separated family every vertex of member
    ``j`` lies on the same side of it; one halfspace per (j, choice) covers
    all tuples.
    """
    if not is_separated(F):
        raise NotSeparated("the colorful core is only defined for separated families")
    homs = F.homs
    k = len(F.members)
    seen = {}
    for j in range(k):
        others = [i for i in range(k) if i != j]
        for choice in product(*(range(len(homs[i])) for i in others)):
            support = [homs[i][c] for i, c in zip(others, choice)]
            h = hyperplane_from_homs(support)
            if h.side(F.members[j].vertices[0]) < 0:
                h = h.flipped()
            seen.setdefault(h.int_coeffs, h)
    halfspaces = tuple(seen[key] for key in sorted(seen))
    w = linear_feasible([(h.normal, ">", h.offset) for h in halfspaces])
    return CoreDescription(halfspaces, w is not None, Point(w) if w is not None else None)


def halfspaces_contain(outer: Sequence[OrientedHyperplane], inner: Sequence[OrientedHyperplane]) -> bool:
    """Closed polytope of ``inner`` is inside the closed polytope of ``outer``.

    Each halfspace reads ``a.x >= b``.  Decided by one exact feasibility
    check per outer halfspace (inner system plus a strict violation).
    """
    base = [(h.normal, ">=", h.offset) for h in inner]
    for h in outer:
        if linear_feasible(base + [(h.normal, "<", h.offset)]) is not None:
            return False
    return True


def delta_closure_halfspaces(cell: DeltaCell) -> list[OrientedHyperplane]:
    """Closed negative sides of the tangents, written as ``a.x >= b``."""
    return [h.flipped() for h in cell.tangents]


# --- pinning ---------------------------------------------------------------


@dataclass(frozen=True)
class ColorfulWitness:
    """``x`` as a convex combination of one point ``points[i]`` from each member."""

    points: tuple[Point, ...]
    weights: tuple[Fraction, ...]

    def to_json(self) -> dict:
        return {
            "points": [p.to_json() for p in self.points],
            "weights": [format_rational(w) for w in self.weights],
        }


def in_convex_hull(x: Point, pts: Sequence[Point]) -> bool:
    """Closed convex hull membership by exact feasibility."""
    m = len(pts)
    cons = [([1 if j == i else 0 for j in range(m)], ">=", 0) for i in range(m)]
    cons.append(([1] * m, "=", 1))
    for r in range(x.dim):
        cons.append(([p.coords[r] for p in pts], "=", x.coords[r]))
    return linear_feasible(cons) is not None


def pinned_with_witness(F: Family, x: Point) -> ColorfulWitness | None:
    """Witness that ``x`` lies in the hull of the family's vertices, or None."""
    if x.dim != F.ambient_dim:
        raise DimensionMismatch("point and family dimensions differ")
    owner = []
    verts = []
    for i, m in enumerate(F.members):
        for v in m.vertices:
            owner.append(i)
            verts.append(v)
    nv = len(verts)
    cons = [([1 if j == i else 0 for j in range(nv)], ">=", 0) for i in range(nv)]
    cons.append(([1] * nv, "=", 1))
    for r in range(x.dim):
        cons.append(([v.coords[r] for v in verts], "=", x.coords[r]))
    lam = linear_feasible(cons)
    if lam is None:
        return None
    ys = []
    weights = []
    for i, m in enumerate(F.members):
        mass = sum((l for l, o in zip(lam, owner) if o == i), Fraction(0))
        if mass > 0:
            pt = [Fraction(0)] * x.dim
            for l, o, v in zip(lam, owner, verts):
                if o == i and l:
                    for r in range(x.dim):
                        pt[r] += l * v.coords[r]
            ys.append(Point(c / mass for c in pt))
        else:
            ys.append(m.vertices[0])
        weights.append(mass)
    # exact re-check: x is the weighted combination and lies in conv(ys)
    combo = [sum((w * y.coords[r] for w, y in zip(weights, ys)), Fraction(0)) for r in range(x.dim)]
    if tuple(combo) != x.coords or sum(weights) != 1:
        raise AssertionError("internal error: colorful witness does not reproduce x")
    witness = ColorfulWitness(tuple(ys), tuple(weights))
    if not witness_contains(witness, x):
        raise AssertionError("internal error: colorful witness fails containment")
    return witness


def witness_contains(w: ColorfulWitness, x: Point) -> bool:
    try:
        S = Simplex(w.points, x.dim)
    except DegenerateSupport:
        return in_convex_hull(x, w.points)
    return point_in_simplex(x, S, "closed")


def is_pinned(F: Family, x: Point) -> bool:
    return pinned_with_witness(F, x) is not None


# --- transversals ----------------------------------------------------------


def _meets_closure(h: OrientedHyperplane, m: Simplex) -> bool:
    sides = [h.side(v) for v in m.vertices]
    return min(sides) <= 0 <= max(sides)


@dataclass(frozen=True)
class Transversal:
    hyperplane: OrientedHyperplane
    support: tuple[Point, ...]


def transversal_through_vertices(F: Family, require_crossed: bool = True) -> Transversal | None:
    """Hyperplane through ``d`` vertices meeting the closure of every member.

    Exhaustive over all d-subsets of the union vertex set, in member order.
    When none exists the family is separated: raises NoTransversal, or
    returns None if ``require_crossed`` is False.
    """
    d = F.ambient_dim
    verts = F.vertices()
    for sub in combinations(verts, d):
        try:
            h = hyperplane_from_homs([v.hom for v in sub])
        except DegenerateSupport:
            continue
        if all(_meets_closure(h, m) for m in F.members):
            return Transversal(h, tuple(sub))
    if require_crossed:
        raise NoTransversal("no hyperplane through d vertices meets every member")
    return None


def crossing_hyperplane_through_point(F: Family, x: Point) -> OrientedHyperplane:
    """Hyperplane through a pinning point that meets at least ``d`` members of a loose family.

    Searched over (d-1)-subsets of vertices together with ``x``, then over
    d-subsets of vertices whose span happens to contain ``x``.
    """
    d = F.ambient_dim
    if d < 2:
        raise NotLoose("separated families on the line are always tight")
    if classify_family(F) != FamilyClass.LOOSE:
        raise NotLoose("family is not loose")
    if not is_pinned(F, x):
        raise NotPinned("point is not in the hull of the family")
    verts = F.vertices()

    def good(h):
        return sum(1 for m in F.members if _meets_closure(h, m)) >= d

    for sub in combinations(verts, d - 1):
        try:
            h = hyperplane_from_homs([v.hom for v in sub] + [x.hom])
        except DegenerateSupport:
            continue
        if good(h):
            return h
    for sub in combinations(verts, d):
        try:
            h = hyperplane_from_homs([v.hom for v in sub])
        except DegenerateSupport:
            continue
        if h.side(x) == 0 and good(h):
            return h
    raise NoTransversal("no crossing hyperplane through the point was found")


def family_to_json(F: Family) -> dict:
    return {
        "dimension": F.ambient_dim,
        "members": [m.to_json() for m in F.members],
    }
