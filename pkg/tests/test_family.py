import random
from fractions import Fraction as Fr
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_crossed_triple, random_in_hull, random_separated_family, sliver_triple
from pointsel.errors import DimensionMismatch, NotLoose, NotPinned, NotSeparated, NoTransversal
from pointsel.family import (
    Family,
    FamilyClass,
    classify_family,
    colorful_core_oracle,
    crossing_hyperplane_through_point,
    delta_cell,
    delta_closure_halfspaces,
    halfspaces_contain,
    inner_tangent,
    inner_tangents,
    is_separated,
    pinned_with_witness,
    tangent_candidates,
    transversal_through_vertices,
    witness_contains,
)
from pointsel.geometry import Point, Simplex, hyperplane_from_homs, is_generic, point_in_simplex
from pointsel.lp import linear_feasible

# generic small offsets so the union of vertices stays in general position
OFFSETS = [(Fr(1, 100), Fr(1, 300)), (Fr(-1, 250), Fr(1, 100)), (Fr(-1, 170), Fr(-1, 90))]


def tiny(cx, cy, k=0):
    # member k gets its own scale and shear so translated copies never line up
    s = Fr(3 + k * k, 3)
    return Simplex([Point([cx + s * a + Fr(k, 997) * b, cy + s * b]) for a, b in OFFSETS])


def corner_triple(far=4):
    return Family([tiny(0, 0), tiny(far, 0, 1), tiny(0, far, 2)])


def collinear_triple():
    return Family([tiny(0, 0), tiny(1, 0, 1), tiny(2, 0, 2)])


def interval(a, b):
    return Simplex([Point([a]), Point([b])])


def test_example_families_are_generic():
    for F in (corner_triple(), corner_triple(10), collinear_triple()):
        assert is_generic(F.vertices(), 2)


def test_is_separated_examples():
    assert is_separated(corner_triple())
    assert not is_separated(collinear_triple())
    assert is_separated(Family([interval(0, 1), interval(2, 3)]))


def test_family_shape_checks():
    with pytest.raises(DimensionMismatch):
        Family([tiny(0, 0), tiny(4, 0)])
    with pytest.raises(DimensionMismatch):
        Family([interval(0, 1), tiny(0, 0)], 1)


def test_inner_tangent_on_the_line():
    F = Family([interval(0, 1), interval(2, 3)])
    h0 = inner_tangent(F, 0)
    assert h0.contains(Point([2])) and h0.side(Point([Fr(1, 2)])) < 0
    h1 = inner_tangent(F, 1)
    assert h1.contains(Point([1])) and h1.side(Point([Fr(5, 2)])) < 0


def _brute_force_tangents(F, i):
    """Every vertex assignment for the members j != i, checked by exact sides."""
    others = [j for j in range(len(F.members)) if j != i]
    found = []
    for choice in product(*(F.members[j].vertices for j in others)):
        h = hyperplane_from_homs([v.hom for v in choice])
        sides_i = {h.side(v) for v in F.members[i].vertices}
        if len(sides_i) != 1 or 0 in sides_i:
            continue
        s = sides_i.pop()
        if all(h.side(v) in (0, -s) for j in others for v in F.members[j].vertices):
            found.append(h if s < 0 else h.flipped())
    return found


def test_inner_tangent_matches_brute_force():
    F = corner_triple()
    for i in range(3):
        (expected,) = _brute_force_tangents(F, i)
        assert inner_tangent(F, i) == expected
    # the tangent for the upper member touches one vertex of each lower one
    t = inner_tangents(F)[2]
    assert set(t.contacts) == {0, 1}
    assert all(t.hyperplane.contains(v) for v in t.contacts.values())
    assert all(t.hyperplane.side(v) < 0 for v in F.members[2].vertices)


def test_inner_tangent_refuses_crossed():
    with pytest.raises(NotSeparated):
        inner_tangent(collinear_triple(), 0)


def test_delta_cell_examples():
    cell = delta_cell(Family([interval(0, 1), interval(2, 3)]))
    assert cell.bounded and sorted(v.coords[0] for v in cell.simplex.vertices) == [1, 2]
    cell = delta_cell(corner_triple(10))
    assert cell.bounded
    # the cell hugs the big triangle (0,0),(10,0),(0,10)
    for v, c in zip(sorted(cell.simplex.vertices), [(0, 0), (0, 10), (10, 0)]):
        assert max(abs(a - b) for a, b in zip(v.coords, c)) < Fr(1, 10)
    F = sliver_triple(random.Random(4))
    assert delta_cell(F).kind in ("empty", "unbounded")
    assert not colorful_core_oracle(F).interior_nonempty


def test_classify_examples():
    assert classify_family(corner_triple(10)) is FamilyClass.TIGHT
    assert classify_family(collinear_triple()) is FamilyClass.CROSSED
    assert classify_family(sliver_triple(random.Random(0))) is FamilyClass.LOOSE


def test_core_examples():
    core = colorful_core_oracle(Family([interval(0, 1), interval(2, 3)]))
    assert core.interior_nonempty
    assert linear_feasible([(h.normal, ">=", h.offset) for h in core.halfspaces] + [([1], "<", 1)]) is None
    assert linear_feasible([(h.normal, ">=", h.offset) for h in core.halfspaces] + [([1], ">", 2)]) is None
    F = corner_triple()
    core = colorful_core_oracle(F)
    cl = delta_closure_halfspaces(delta_cell(F))
    assert core.interior_nonempty
    assert halfspaces_contain(cl, core.halfspaces) and halfspaces_contain(core.halfspaces, cl)
    with pytest.raises(NotSeparated):
        colorful_core_oracle(collinear_triple())


def test_pinned_examples():
    F = corner_triple()
    x = Point([Fr(4, 3), Fr(4, 3)])
    w = pinned_with_witness(F, x)
    assert w is not None and witness_contains(w, x)
    assert pinned_with_witness(F, Point([100, 100])) is None
    v = F.members[0].vertices[1]
    w = pinned_with_witness(F, v)
    assert w.points[0] == v and w.weights[0] == 1
    with pytest.raises(DimensionMismatch):
        pinned_with_witness(F, Point([1]))


def test_transversal_examples():
    F = collinear_triple()
    t = transversal_through_vertices(F)
    assert len(t.support) == 2
    assert all(t.hyperplane.contains(v) for v in t.support)
    owners = {i for v in t.support for i, m in enumerate(F.members) if v in m.vertices}
    assert len(owners) == 2
    with pytest.raises(NoTransversal):
        transversal_through_vertices(corner_triple())
    assert transversal_through_vertices(corner_triple(), require_crossed=False) is None
    t = transversal_through_vertices(Family([interval(0, 2), interval(1, 3)]))
    assert t.support[0].coords[0] in (1, 2)


def test_crossing_hyperplane_examples():
    F = sliver_triple(random.Random(2))
    x = random_in_hull(random.Random(0), F.vertices())
    h = crossing_hyperplane_through_point(F, x)
    assert h.contains(x)
    met = sum(1 for m in F.members if min(h.side(v) for v in m.vertices) <= 0 <= max(h.side(v) for v in m.vertices))
    assert met >= 2
    with pytest.raises(NotPinned):
        crossing_hyperplane_through_point(F, Point([10**7, 10**7]))
    with pytest.raises(NotLoose):
        crossing_hyperplane_through_point(Family([interval(0, 1), interval(2, 3)]), Point([Fr(3, 2)]))
    with pytest.raises(NotLoose):
        crossing_hyperplane_through_point(corner_triple(), Point([1, 1]))


# --- properties over random families ---------------------------------------

seeds = st.integers(0, 10**6)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_trichotomy(seed):
    F = random_separated_family(random.Random(seed))
    assert (classify_family(F) is FamilyClass.TIGHT) == colorful_core_oracle(F).interior_nonempty


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_delta_methods_agree(seed):
    F = random_separated_family(random.Random(seed))
    assert delta_cell(F, "dependence").kind == delta_cell(F, "lp").kind


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_tangent_uniqueness(seed):
    F = random_separated_family(random.Random(seed))
    cands = tangent_candidates(F)
    assert all(len(c) == 1 for c in cands)
    for i in range(3):
        assert _brute_force_tangents(F, i) == [inner_tangent(F, i)]


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_tangent_dichotomy(seed):
    F = random_separated_family(random.Random(seed))
    hs = delta_cell(F).tangents
    neg = linear_feasible([(h.normal, "<", h.offset) for h in hs])
    pos = linear_feasible([(h.normal, ">=", h.offset) for h in hs])
    bounded = delta_cell(F).bounded
    # exactly one of: a bounded nonempty negative cell, or a common closed positive point
    assert bounded != (pos is not None)
    if bounded:
        assert neg is not None


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_split_containment(seed):
    rng = random.Random(seed)
    F = random_separated_family(rng)
    if classify_family(F) is not FamilyClass.TIGHT:
        return
    cell = delta_cell(F)
    c = cell.centroid()
    for tup in product(*(m.vertices for m in F.members)):
        assert point_in_simplex(c, Simplex(tup), "closed")
    for i, m in enumerate(F.members):
        for j, h in enumerate(cell.tangents):
            if j != i:
                assert all(h.side(v) >= 0 for v in m.vertices)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_core_matches_continuous_samples(seed):
    # random interior points of the members span simplices that contain the core's interior point
    rng = random.Random(seed)
    F = random_separated_family(rng)
    core = colorful_core_oracle(F)
    if not core.interior_nonempty:
        return
    for _ in range(10):
        tup = [random_in_hull(rng, m.vertices) for m in F.members]
        assert point_in_simplex(core.interior_point, Simplex(tup), "closed")


@settings(max_examples=60, deadline=None)
@given(seeds, seeds)
def test_witness_soundness(seed, xseed):
    rng = random.Random(seed)
    F = random_separated_family(rng) if seed % 2 else random_crossed_triple(rng)
    xr = random.Random(xseed)
    x = random_in_hull(xr, F.vertices()) if xseed % 3 else Point([xr.randrange(-100, 1100), xr.randrange(-100, 1100)])
    w = pinned_with_witness(F, x)
    if w is not None:
        assert witness_contains(w, x)
        assert all(point_in_simplex(y, m, "closed") for y, m in zip(w.points, F.members))
    if xseed % 3:
        assert w is not None


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_point_member_never_loose(seed):
    rng = random.Random(seed)
    while True:
        F0 = random_separated_family(rng)
        p = Point(F0.members[0].vertices[0].coords)
        F = Family([Simplex([p], 2), F0.members[1], F0.members[2]], 2)
        if is_separated(F):
            break
    assert classify_family(F) is not FamilyClass.LOOSE


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_crossed_families_have_vertex_transversals(seed):
    F = random_crossed_triple(random.Random(seed))
    t = transversal_through_vertices(F)
    assert all(t.hyperplane.contains(v) for v in t.support)


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_trichotomy_3d(seed):
    F = random_separated_family(random.Random(seed), 3)
    assert (classify_family(F) is FamilyClass.TIGHT) == colorful_core_oracle(F).interior_nonempty
    assert delta_cell(F, "dependence").kind == delta_cell(F, "lp").kind


@settings(max_examples=30, deadline=None)
@given(st.integers(-20, 20), st.integers(1, 5), st.integers(1, 20), st.integers(1, 5))
def test_intervals_are_tight_or_crossed(a, la, gap, lb):
    F = Family([interval(a, a + la), interval(a + la + gap, a + la + gap + lb)])
    assert classify_family(F) is FamilyClass.TIGHT
    G = Family([interval(a, a + la + gap), interval(a + la, a + la + gap + lb)])
    assert classify_family(G) is FamilyClass.CROSSED
