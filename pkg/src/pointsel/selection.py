"""Point selection: exact depth oracles, the recursive selector, and pinning.

The open-simplex oracle never samples.  Depth is constant on every open
cell of the arrangement of facet hyperplanes, and each bounded cell has a
bounded edge (d=2) or a bounded 2-face with a bounded edge (d=3) on its
boundary.  A point inside such an edge, pushed off symbolically by
``e u_1 + e^2 u_2`` for every sign pattern, therefore visits every cell.
The symbolic points are evaluated lexicographically by the packed kernel and
only the winner is turned into a concrete rational point.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from . import kernels
from .errors import (
    DegenerateVertices,
    DimensionMismatch,
    EmptyColorClass,
    EmptyEdgeSet,
    IndexOutOfRange,
    UnsupportedDimension,
)
from .family import Family, FamilyClass, classify_family, delta_cell, pinned_with_witness
from .geometry import (
    Point,
    PointSet,
    Simplex,
    hyperplane_coeffs,
    is_generic,
    solve_linear,
)
from .partition import build_partition, part_sizes, tuple_census

ORACLE_DIMS = (2, 3)


@dataclass
class DepthResult:
    point: Point
    pierced_count: int
    pierced_indices: list | None = None
    mode: str = "open"

    def to_json(self) -> dict:
        return {
            "point": self.point.to_json(),
            "pierced_count": self.pierced_count,
            "pierced_indices": [list(t) if isinstance(t, tuple) else t for t in self.pierced_indices]
            if self.pierced_indices is not None
            else None,
            "mode": self.mode,
        }


# --- arrangement sampling ---------------------------------------------------


def _dyadic_below(q: Fraction) -> Fraction:
    """Largest power of two not exceeding ``q > 0``."""
    k = q.numerator.bit_length() - q.denominator.bit_length()
    p = Fraction(2) ** k
    while p > q:
        p /= 2
    while p * 2 <= q:
        p *= 2
    return p


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """A dyadic rational strictly inside ``(lo, hi)`` with the smallest denominator."""
    if not lo < hi:
        raise ValueError("empty interval")
    s = 1
    while True:
        m = math.floor(lo * s) + 1
        if Fraction(m, s) < hi:
            return Fraction(m, s)
        s *= 2


def _canonical(c: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for v in c:
        g = math.gcd(g, v)
    c = tuple(v // g for v in c)
    lead = next(v for v in c[1:] if v)
    return c if lead > 0 else tuple(-v for v in c)


def _integer_direction(u: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for v in u:
        den = den * Fraction(v).denominator // math.gcd(den, Fraction(v).denominator)
    w = [int(Fraction(v) * den) for v in u]
    g = 0
    for v in w:
        g = math.gcd(g, v)
    return tuple(v // g for v in w)


def _edge_samples_2d(lines):
    """Yield ``(point, normal)`` for one interior point of every bounded edge.

    ``lines`` are triples ``(c, a1, a2)`` for ``c + a1 x + a2 y = 0``.
    """
    for i, (c, a1, a2) in enumerate(lines):
        p0 = (Fraction(0), Fraction(-c, 1) / a2) if a2 != 0 else (Fraction(-c, 1) / a1, Fraction(0))
        u = (a2, -a1)
        ts = set()
        for j, (c2, b1, b2) in enumerate(lines):
            if j == i:
                continue
            den = b1 * u[0] + b2 * u[1]
            if den == 0:
                continue
            ts.add(-(c2 + b1 * p0[0] + b2 * p0[1]) / Fraction(den))
        ts = sorted(ts)
        for lo, hi in zip(ts, ts[1:]):
            t = simplest_between(lo, hi)
            yield (p0[0] + t * u[0], p0[1] + t * u[1]), (a1, a2)


def _trace_key(c, a, b):
    lead = a if a != 0 else b
    return (c / lead, a / lead, b / lead)


def _cell_candidates(hyperplanes: dict, d: int):
    """Yield ``(base point, [u_1, ...])`` symbolic samples covering every bounded cell.

    ``hyperplanes`` maps canonical integer coefficients to d spanning points.
    """
    hs = list(hyperplanes.items())
    if d == 2:
        lines = [h for h, _ in hs]
        for m, nrm in _edge_samples_2d(lines):
            yield Point(m), [tuple(nrm)]
        return
    for i, (h, (pa, pb, pc)) in enumerate(hs):
        e1 = [b - a for a, b in zip(pa.coords, pb.coords)]
        e2 = [c - a for a, c in zip(pa.coords, pc.coords)]
        traces = set()
        for j, (h2, _) in enumerate(hs):
            if j == i:
                continue
            n2 = h2[1:]
            a = sum(x * y for x, y in zip(n2, e1))
            b = sum(x * y for x, y in zip(n2, e2))
            if a == 0 and b == 0:
                continue
            c = h2[0] + sum(x * y for x, y in zip(n2, pa.coords))
            traces.add(_trace_key(Fraction(c), Fraction(a), Fraction(b)))
        normal = tuple(h[1:])
        for (s, t), (a, b) in _edge_samples_2d(sorted(traces)):
            m = Point([p + s * x + t * y for p, x, y in zip(pa.coords, e1, e2)])
            u = _integer_direction([a * x + b * y for x, y in zip(e1, e2)])
            yield m, [u, normal]


def realize(base: Point, dirs: Sequence[Sequence[int]], hyperplanes: Sequence[Sequence[int]]) -> Point:
    """A concrete point with the same sign vector as ``base + e u_1 + e^2 u_2 + ...``."""
    q = list(base.coords)
    for u in dirs:
        eps = None
        for h in hyperplanes:
            val = h[0] + sum(a * x for a, x in zip(h[1:], q))
            du = sum(a * x for a, x in zip(h[1:], u))
            if val != 0 and du != 0:
                bound = abs(val) / abs(du) / 2
                eps = bound if eps is None else min(eps, bound)
        eps = Fraction(1) if eps is None else _dyadic_below(eps)
        q = [x + eps * y for x, y in zip(q, u)]
    return Point(q)


def _check_edges(P: PointSet, E) -> list[tuple[int, ...]]:
    if not E:
        raise EmptyEdgeSet("edge set is empty")
    d, n = P.dim, len(P)
    out = []
    for e in E:
        e = tuple(int(i) for i in e)
        if len(e) != d + 1 or len(set(e)) != d + 1:
            raise IndexOutOfRange(f"edge {list(e)!r} is not a {d + 1}-subset")
        for i in e:
            if not 0 <= i < n:
                raise IndexOutOfRange(f"edge index {i} outside 0..{n - 1}")
        out.append(e)
    return out


def _packed(P: PointSet, edges):
    funcs = [Simplex([P[i] for i in e], P.dim).functionals for e in edges]
    return kernels.PackedSimplices(funcs)


def pierced_edges(P: PointSet, E, x: Point) -> list[int]:
    """Indices of edges whose open simplex contains ``x``."""
    edges = _check_edges(P, E)
    return list(_packed(P, edges).mask([x.hom]))


def brute_force_deepest(P: PointSet, E) -> DepthResult:
    """Exact maximum number of open simplices of ``E`` sharing a point."""
    d = P.dim
    if d not in ORACLE_DIMS:
        raise UnsupportedDimension(f"the depth oracle supports d in {ORACLE_DIMS}, got {d}")
    edges = _check_edges(P, E)
    packed = _packed(P, edges)
    # depth only changes across facet hyperplanes of the edges themselves
    hyperplanes: dict = {}
    for e in edges:
        for sub in combinations(e, d):
            pts = [P[i] for i in sub]
            key = _canonical(hyperplane_coeffs([p.hom for p in pts]))
            hyperplanes.setdefault(key, pts)

    best, best_q = -1, None
    for base, dirs in _cell_candidates(hyperplanes, d):
        bh = base.hom
        for signs in product((1, -1), repeat=len(dirs)):
            qv = [bh] + [(0,) + tuple(s * v for v in u) for s, u in zip(signs, dirs)]
            c = packed.count(qv)
            if c > best:
                best = c
                best_q = (base, [tuple(s * v for v in u) for s, u in zip(signs, dirs)])
    x = realize(best_q[0], best_q[1], list(hyperplanes))
    hit = list(packed.mask([x.hom]))
    if len(hit) != best:
        raise AssertionError("realized oracle point disagrees with its symbolic count")
    return DepthResult(x, best, hit, "open")


# --- colorful closed depth ----------------------------------------------------


def karasev_floor(sizes: Sequence[int]) -> int:
    """Guaranteed colorful depth ``ceil(prod |P_i| / (d+1)!)``."""
    return -(-math.prod(sizes) // math.factorial(len(sizes)))


def colorful_deepest(color_sets: Sequence[PointSet]) -> DepthResult:
    """Exact maximum number of closed colorful simplices sharing a point."""
    if not color_sets:
        raise EmptyColorClass("no color classes given")
    d = color_sets[0].dim
    if d not in ORACLE_DIMS:
        raise UnsupportedDimension(f"the depth oracle supports d in {ORACLE_DIMS}, got {d}")
    if len(color_sets) != d + 1:
        raise DimensionMismatch(f"need {d + 1} color classes in dimension {d}")
    for c in color_sets:
        if c.dim != d:
            raise DimensionMismatch("color classes live in different dimensions")
        if len(c) == 0:
            raise EmptyColorClass("a color class is empty")

    tuples = list(product(*[range(len(c)) for c in color_sets]))
    funcs = []
    for t in tuples:
        try:
            funcs.append(Simplex([color_sets[i][j] for i, j in enumerate(t)], d).functionals)
        except Exception as exc:
            raise DegenerateVertices("a colorful simplex is degenerate") from exc
    packed = kernels.PackedSimplices(funcs)

    hyperplanes = set()
    for colors in combinations(range(d + 1), d):
        for pts in product(*[color_sets[i].points for i in colors]):
            hyperplanes.add(_canonical(hyperplane_coeffs([p.hom for p in pts])))
    hyperplanes = sorted(hyperplanes)
    candidates = {p for c in color_sets for p in c.points}
    for hs in combinations(hyperplanes, d):
        sol = solve_linear([h[1:] for h in hs], [-h[0] for h in hs])
        if sol is not None:
            candidates.add(Point(sol))

    best, best_x = -1, None
    for x in sorted(candidates):
        c = packed.count([x.hom], closed=True)
        if c > best:
            best, best_x = c, x
    hit = [tuples[t] for t in packed.mask([best_x.hom], closed=True)]
    floor = karasev_floor([len(c) for c in color_sets])
    if best < floor:
        raise AssertionError(f"colorful depth {best} below the guaranteed {floor}")
    return DepthResult(best_x, best, hit, "closed")


# --- recursive selection ------------------------------------------------------


@dataclass
class TraceLevel:
    n: int
    edges: int
    r: int | None
    case: str
    census: dict | None = None
    family: list | None = None
    load: int = 0
    verified: bool | None = None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "edges": self.edges,
            "r": self.r,
            "case": self.case,
            "census": self.census,
            "family": self.family,
            "load": self.load,
            "verified": self.verified,
        }


@dataclass
class SelectionTrace:
    levels: list[TraceLevel] = field(default_factory=list)

    def to_json(self) -> list:
        return [lv.to_json() for lv in self.levels]


def default_alpha(d: int) -> int:
    return d**4 + d


def auto_r(n: int, m: int, d: int, alpha: int | None = None) -> int:
    """``ceil((m / C(n, d+1))^-alpha)`` capped at ``n``."""
    alpha = default_alpha(d) if alpha is None else alpha
    inv = Fraction(math.comb(n, d + 1), m)
    # the power explodes quickly; stop once it passes n
    val = Fraction(1)
    for _ in range(alpha):
        val *= inv
        if val >= n:
            return n
    return max(1, min(n, math.ceil(val)))


def _progress_r(n: int, r: int, d: int) -> int:
    # an ambient family covers at most d+1 parts, so d+2 parts force progress
    r = max(1, min(r, n))
    while r < n and len(part_sizes(n, r)) < d + 2:
        r += 1
    return r


def select_point(
    P: PointSet,
    E,
    r: int | None = None,
    n0: int | None = None,
    seed: int = 0,
    alpha: int | None = None,
) -> tuple[DepthResult, SelectionTrace]:
    """Select a point in many simplices of ``E`` by partition and recursion."""
    d = P.dim
    edges = _check_edges(P, E)
    if n0 is None:
        if d != 2:
            raise ValueError("the base threshold n0 must be given when d != 2")
        n0 = 10
    trace = SelectionTrace()
    idx = list(range(len(P)))
    cur = edges
    level = 0
    x = None
    while x is None:
        n = len(idx)
        sub = P.subset(idx)
        local = {g: i for i, g in enumerate(idx)}
        sub_edges = [tuple(local[g] for g in e) for e in cur]
        if n <= max(n0, d + 1) or n < d + 2:
            res = brute_force_deepest(sub, sub_edges)
            trace.levels.append(TraceLevel(n, len(cur), None, "OracleBase", load=res.pierced_count))
            x = res.point
            break
        rr = auto_r(n, len(cur), d, alpha) if r is None else r
        rr = _progress_r(n, rr, d)
        Pi = build_partition(sub, rr, seed + level)
        census = tuple_census(sub, sub_edges, Pi)
        if 2 * census.tight_ambient >= len(cur):
            K = census.heaviest_tight
            x = delta_cell(Pi.family(K)).centroid()
            assigned = [e for e, fam in zip(sub_edges, census.edge_family) if fam == K]
            ok = all(
                kernels.PackedSimplices([Simplex([sub[i] for i in e], d).functionals]).count([x.hom]) == 1
                for e in assigned
            )
            if not ok:
                raise AssertionError("a tight-family centroid misses an assigned edge")
            trace.levels.append(
                TraceLevel(n, len(cur), rr, "TightPigeonhole", census.to_json(), list(K), len(assigned), ok)
            )
            break
        loads = Counter(
            fam for fam, cls in zip(census.edge_family, census.edge_class) if cls != FamilyClass.TIGHT.value
        )
        fam = min(loads, key=lambda f: (-loads[f], f))
        keep = sorted(i for c in fam for i in Pi.parts[c].indices)
        if len(keep) >= n:
            raise AssertionError("recursion made no progress")
        keep_set = set(keep)
        trace.levels.append(
            TraceLevel(n, len(cur), rr, "RecurseAmbient", census.to_json(), list(fam), loads[fam])
        )
        cur = [
            tuple(idx[i] for i in e)
            for e, f, cls in zip(sub_edges, census.edge_family, census.edge_class)
            if f == fam and cls != FamilyClass.TIGHT.value and keep_set.issuperset(e)
        ]
        idx = [idx[i] for i in keep]
        level += 1
    hit = pierced_edges(P, edges, x)
    return DepthResult(x, len(hit), hit, "open"), trace


# --- pinning ------------------------------------------------------------------


@dataclass
class PinningResult:
    point: Point | None
    families: list[tuple[int, ...]]
    coloring: list[int] | None = None
    loose_tuples: int = 0
    block_sizes: list[int] | None = None
    eta: Fraction | None = None
    attempts: int = 0

    def to_json(self) -> dict:
        return {
            "point": self.point.to_json() if self.point is not None else None,
            "families": [list(f) for f in self.families],
            "coloring": self.coloring,
            "loose_tuples": self.loose_tuples,
            "block_sizes": self.block_sizes,
            "eta": str(self.eta) if self.eta is not None else None,
            "attempts": self.attempts,
        }


def encode_facet(s: Simplex) -> Point:
    """A (d-1)-simplex as one point of R^(d^2): its sorted vertices concatenated."""
    return Point([c for v in s.vertices for c in v.coords])


def _linf(p: Point, q: Point) -> Fraction:
    return max(abs(a - b) for a, b in zip(p.coords, q.coords))


def _shrink(facet: Simplex, eta: Fraction, rng: random.Random) -> Simplex:
    # pull every vertex towards the others by at most eta in max-norm
    vs = facet.vertices
    out = []
    for k, v in enumerate(vs):
        others = [w for j, w in enumerate(vs) if j != k]
        reach = sum((_linf(v, w) for w in others), Fraction(0))
        bmax = eta / reach
        betas = [bmax * Fraction(rng.randint(1, 1 << 10), 1 << 10) for _ in others]
        coords = [
            (1 - sum(betas)) * a + sum(b * w.coords[t] for b, w in zip(betas, others))
            for t, a in enumerate(v.coords)
        ]
        out.append(Point(coords))
    return Simplex(out, facet.dim_ambient)


def _interior_point(s: Simplex, rng: random.Random) -> Point:
    ws = [rng.randint(1, 1 << 8) for _ in s.vertices]
    tot = sum(ws)
    return Point(
        [sum(Fraction(w, tot) * v.coords[t] for w, v in zip(ws, s.vertices)) for t in range(s.dim_ambient)]
    )


def pinning_pipeline(
    simplices: Sequence[Simplex],
    seed: int = 0,
    max_colorings: int = 8,
    max_shrink_rounds: int = 30,
    eta_start: Fraction = Fraction(1, 1 << 10),
) -> PinningResult:
    """Find loose families of ``simplices`` pinned by one common point.

    Colors the simplices into d+1 classes, replaces each by its boundary
    facets shrunk slightly inwards, extracts a complete loose block with the
    k-partite Turan routine, and selects a deep colorful point among facet
    representatives.  Every reported family is re-verified exactly.
    """
    from .semialg import kpartite_turan, loose_relation

    sigma = list(simplices)
    if not sigma:
        raise EmptyEdgeSet("no simplices given")
    d = sigma[0].dim_ambient
    if len(sigma) < d + 1:
        raise ValueError(f"need at least {d + 1} simplices, got {len(sigma)}")
    rng = random.Random(seed)
    verts = [v for s in sigma for v in s.vertices]
    delta = min(_linf(p, q) for p, q in combinations(verts, 2))
    rel = loose_relation(d)
    result = PinningResult(None, [])
    for attempt in range(1, max_colorings + 1):
        result.attempts = attempt
        coloring = [rng.randrange(d + 1) for _ in sigma]
        classes = [[i for i, c in enumerate(coloring) if c == k] for k in range(d + 1)]
        if any(not c for c in classes):
            continue
        facets = [[(p, f) for p in cls for f in sigma[p].facets()] for cls in classes]
        ranges = [range(len(f)) for f in facets]
        loose0 = [
            t
            for t in product(*ranges)
            if classify_family(Family([facets[k][j][1] for k, j in enumerate(t)], d)) == FamilyClass.LOOSE
        ]
        if not loose0:
            continue

        eta = delta * eta_start
        shrunk = None
        for _ in range(max_shrink_rounds):
            cand = [[(p, _shrink(f, eta, rng)) for p, f in cls] for cls in facets]
            pts = [v for cls in cand for _, f in cls for v in f.vertices]
            if is_generic(pts, d) and all(
                classify_family(Family([cand[k][j][1] for k, j in enumerate(t)], d)) == FamilyClass.LOOSE
                for t in loose0
            ):
                shrunk = cand
                break
            eta /= 2
        if shrunk is None:
            continue

        encoded = [[encode_facet(f) for _, f in cls] for cls in shrunk]
        edges = sum(1 for t in product(*ranges) if rel.evaluate([encoded[k][j] for k, j in enumerate(t)]))
        total = math.prod(len(c) for c in encoded)
        block = kpartite_turan(encoded, rel, Fraction(edges, total), seed=seed + attempt)

        reps = None
        for _ in range(16):
            cand = [[_interior_point(shrunk[k][j][1], rng) for j in W] for k, W in enumerate(block.subsets)]
            if is_generic([p for c in cand for p in c], d):
                reps = cand
                break
        if reps is None:
            continue
        deep = colorful_deepest([PointSet.of(c, d, scan=False) for c in reps])
        x = deep.point
        found = []
        seen = set()
        for t in deep.pierced_indices:
            parents = tuple(shrunk[k][block.subsets[k][j]][0] for k, j in enumerate(t))
            if parents in seen:
                continue
            seen.add(parents)
            F = Family([sigma[p] for p in parents], d)
            if classify_family(F) == FamilyClass.LOOSE and pinned_with_witness(F, x) is not None:
                found.append(parents)
        result = PinningResult(
            x, found, coloring, edges, [len(W) for W in block.subsets], eta, attempt
        )
        if found:
            return result
    return result
