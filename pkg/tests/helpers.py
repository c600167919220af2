"""Instance generators shared by the unit and acceptance tests."""

from __future__ import annotations

import random
from fractions import Fraction as Fr

from pointsel.family import Family, is_separated
from pointsel.geometry import Point, PointSet, Simplex, centroid


def random_pointset(n, d=2, seed=0, span=10**6):
    """Uniform integer points; generic when small enough to scan, almost surely otherwise."""
    rng = random.Random(seed)
    while True:
        P = PointSet.of([Point([rng.randrange(span) for _ in range(d)]) for _ in range(n)], d)
        if P.generic is not False:
            return P


def convex_position(n):
    # points on the parabola y = x^2 are in convex position and generic
    return PointSet.of([Point([i, i * i]) for i in range(n)])


def sliver(A, B, C, pull=Fr(1, 10), thick=Fr(1, 50)):
    """Thin triangle along edge AB, pulled back from the corners, bulging towards C."""
    a = A + (B - A).scale(pull)
    b = B + (A - B).scale(pull)
    m = centroid([a, b])
    apex = m + (C - m).scale(thick)
    return Simplex([a, b, apex])


def sliver_triple(rng, scale=1000):
    while True:
        A, B, C = (Point([rng.randrange(scale), rng.randrange(scale)]) for _ in range(3))
        try:
            pull = Fr(rng.randint(5, 20), 100)
            thick = Fr(rng.randint(1, 4), 100)
            F = Family([sliver(A, B, C, pull, thick), sliver(B, C, A, pull, thick), sliver(C, A, B, pull, thick)])
        except Exception:
            continue
        if is_separated(F):
            return F


def needle(rng, center, length, width, d):
    """Thin simplex stretched along a random direction through ``center``."""
    u = [rng.randint(-length, length) for _ in range(d)]
    vs = [Point([c + s * x + rng.randint(-width, width) for c, x in zip(center, u)]) for s in (-1, 1)]
    vs += [Point([c + rng.randint(-width, width) for c in center]) for _ in range(d - 1)]
    return Simplex(vs)


def needle_family(rng, d=3, length=300, width=10, spread=1000):
    """Separated family of needles; with these sizes roughly half are loose."""
    while True:
        try:
            F = Family([needle(rng, [rng.randrange(spread) for _ in range(d)], length, width, d) for _ in range(d + 1)])
        except Exception:
            continue
        if is_separated(F):
            return F


def small_simplex(rng, center, size, d):
    while True:
        vs = [Point([c + rng.randint(-size, size) for c in center]) for _ in range(d + 1)]
        try:
            return Simplex(vs)
        except Exception:
            continue


def random_family(rng, d=2, spread=1000, size=None):
    """d+1 random small simplices around random centers (separated or not)."""
    size = size if size is not None else rng.choice([5, 30, 120, 400])
    centers = [[rng.randrange(spread) for _ in range(d)] for _ in range(d + 1)]
    return Family([small_simplex(rng, c, size, d) for c in centers])


def random_separated_family(rng, d=2):
    """Separated family; slivers (typically loose) and small blobs (typically tight) mixed."""
    while True:
        if rng.random() < 0.4:
            return sliver_triple(rng) if d == 2 else needle_family(rng, d)
        F = random_family(rng, d)
        if is_separated(F):
            return F


def random_crossed_triple(rng):
    while True:
        F = random_family(rng, 2, spread=300, size=200)
        if not is_separated(F):
            return F


def sliver_rich(k, seed):
    """k well-separated sliver triples: 3k triangles with jointly generic vertices."""
    rng = random.Random(seed)
    while True:
        out = []
        for _ in range(k):
            ox, oy = rng.randrange(10**4), rng.randrange(10**4)
            A = Point([ox, oy])
            B = Point([ox + 120 + rng.randrange(5), oy + 10 + rng.randrange(5)])
            C = Point([ox + 50 + rng.randrange(5), oy + 110 + rng.randrange(5)])
            out += [sliver(A, B, C), sliver(B, C, A), sliver(C, A, B)]
        pts = PointSet.of([v for s in out for v in s.vertices])
        if pts.generic:
            return out


def far_apart_simplices(k, seed, d=2):
    """k small generic simplices scattered far apart."""
    rng = random.Random(seed)
    while True:
        out = [small_simplex(rng, [rng.randrange(10**6) for _ in range(d)], 50, d) for _ in range(k)]
        if PointSet.of([v for s in out for v in s.vertices]).generic:
            return out


def random_in_hull(rng, pts):
    ws = [rng.randint(1, 100) for _ in pts]
    tot = sum(ws)
    d = pts[0].dim
    return Point([sum(Fr(w, tot) * p.coords[k] for w, p in zip(ws, pts)) for k in range(d)])


def write_cli_inputs(root):
    """Write one small input set per CLI command; returns command -> argv."""
    import json
    from pathlib import Path

    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)

    def dump(name, obj):
        path = root / name
        path.write_text(json.dumps(obj))
        return str(path)

    P = random_pointset(10, seed=21, span=1000)
    pts = dump("points.json", P.to_json())
    big = dump("points40.json", random_pointset(40, seed=22).to_json())
    convex = dump("convex20.json", convex_position(20).to_json())
    edges = dump("edges.json", {"edges": [[0, 1, 2], [1, 3, 5], [2, 4, 9], [0, 5, 8], [3, 6, 7]]})
    rng = random.Random(23)
    colors = dump("colors.json", [random_pointset(4, seed=30 + i, span=1000).to_json() for i in range(3)])
    fam = sliver_triple(rng)
    family = dump("family.json", {"dimension": 2, "simplices": [s.to_json() for s in fam.members]})
    sliv = dump("slivers.json", {"dimension": 2, "simplices": [s.to_json() for s in sliver_rich(2, seed=3)]})
    halfspace = dump("halfspace.json", {"builtin": "halfspace", "d": 2})
    turan_classes = dump(
        "turan_classes.json",
        [
            {"dimension": 2, "points": [[f"{rng.randint(-20, 20)}/10", str(rng.randint(0, 1000))] for _ in range(12)]},
            random_pointset(12, seed=24, span=1000).to_json(),
        ],
    )
    return {
        "classify": ["classify", "--input", family],
        "partition": ["partition", "--input", big, "--r", "4", "--seed", "1"],
        "census": ["census", "--input", pts, "--edges", edges, "--r", "4", "--seed", "1"],
        "colored-census": ["colored-census", "--colors", colors, "--r", "2", "--seed", "1"],
        "select": ["select", "--input", pts, "--seed", "1", "--n0", "6", "--r", "4"],
        "oracle-depth": ["oracle-depth", "--input", pts],
        "colorful-depth": ["colorful-depth", "--colors", colors],
        "pinning": ["pinning", "--input", sliv, "--seed", "1"],
        "turan": ["turan", "--colors", turan_classes, "--relation", halfspace, "--eps", "1/10", "--seed", "1"],
        "same-type": ["same-type", "--input", convex, "--k", "4", "--seed", "1"],
        "halving": ["halving", "--input", pts],
        "ksets": ["ksets", "--input", pts, "--k", "3"],
    }
