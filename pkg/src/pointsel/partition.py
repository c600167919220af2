"""Simplicial r-partitions and the censuses built on them.

Parts come from recursive median splits along rotating coordinate axes.
Every part gets a corner simplex around its inflated bounding box whose
vertices are jittered and snapped to a dyadic grid; containment of the
part's points in the open cell is re-verified on every build.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import ceil, comb
from typing import Sequence

from . import kernels
from .errors import (
    CliqueNotFound,
    DimensionMismatch,
    EmptyColorClass,
    IndexOutOfRange,
    InsufficientPoints,
    InvalidK,
    InvalidR,
)
from .family import Family, FamilyClass, classify_family, delta_cell, is_separated
from .geometry import (
    OrientedHyperplane,
    Point,
    PointSet,
    Simplex,
    orientation,
    point_in_simplex,
)
from .stats import fit_exponent

# relative inflation of a part's bounding box before the cell is built
INFLATE = Fraction(1, 100)
# the jitter grid has this many steps per jitter radius
JITTER_STEPS = 1 << 24
MAX_JITTER_ROUNDS = 40


@dataclass
class Part:
    indices: tuple[int, ...]
    cell: Simplex
    dummy: bool = False


@dataclass
class SimplicialPartition:
    parts: list[Part]
    source: PointSet
    r: int
    seed: int
    _memo: dict = field(default_factory=dict, repr=False)
    _cell_of: list | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return self.source.dim

    def nonempty(self) -> list[int]:
        return [i for i, p in enumerate(self.parts) if p.indices]

    def cell_of(self) -> list[int]:
        if self._cell_of is None:
            owner = [-1] * len(self.source)
            for i, p in enumerate(self.parts):
                for j in p.indices:
                    owner[j] = i
            self._cell_of = owner
        return self._cell_of

    def family(self, cells: Sequence[int]) -> Family:
        return Family([self.parts[c].cell for c in cells], self.dim)

    def classify(self, cells: Sequence[int]) -> FamilyClass:
        key = tuple(sorted(cells))
        cls = self._memo.get(key)
        if cls is None:
            cls = classify_family(self.family(key))
            self._memo[key] = cls
        return cls

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "seed": self.seed,
            "parts": [
                {"indices": list(p.indices), "cell": p.cell.to_json(), "dummy": p.dummy}
                for p in self.parts
            ],
        }


def part_sizes(n: int, r: int) -> list[int]:
    """Sizes of the nonempty parts: as equal as possible inside [m, 2m), m = ceil(n/r)."""
    m = -(-n // r)
    k = n // m
    q, rem = divmod(n, k)
    return [q + 1] * rem + [q] * (k - rem)


def _split(points, idx, sizes, depth, out):
    if len(sizes) == 1:
        out.append(tuple(sorted(idx)))
        return
    d = points[0].dim
    axis = depth % d
    half = len(sizes) // 2
    left = sum(sizes[:half])
    idx = sorted(idx, key=lambda i: (points[i].coords[axis], points[i].coords, i))
    _split(points, idx[:left], sizes[:half], depth + 1, out)
    _split(points, idx[left:], sizes[half:], depth + 1, out)


def _dyadic_floor(q: Fraction) -> Fraction:
    """Largest power of two not exceeding ``q`` (q > 0)."""
    e = q.numerator.bit_length() - q.denominator.bit_length()
    p = Fraction(2) ** e
    while p > q:
        p /= 2
    while p * 2 <= q:
        p *= 2
    return p


def _corner_simplex(lo, widths, pad):
    # corner simplex with right angle at lo - pad; it contains the padded box
    # in its open interior because sum (w_i + pad_i) / (d (w_i + 2 pad_i)) < 1
    d = len(lo)
    v0 = [lo[k] - pad[k] for k in range(d)]
    verts = [list(v0)]
    for k in range(d):
        v = list(v0)
        v[k] += d * (widths[k] + 2 * pad[k])
        verts.append(v)
    return verts


def _jitter(verts, radius, grid, rng):
    out = []
    for v in verts:
        out.append(
            Point(
                (((c + radius * Fraction(rng.randint(-JITTER_STEPS, JITTER_STEPS), JITTER_STEPS)) / grid).__floor__())
                * grid
                for c in v
            )
        )
    return out


def _contains_open(cell: Simplex, pts) -> bool:
    return all(point_in_simplex(p, cell, "open") for p in pts)


def _scale(points) -> Fraction:
    d = points[0].dim
    ext = max(max(p.coords[k] for p in points) - min(p.coords[k] for p in points) for k in range(d))
    return ext if ext > 0 else Fraction(1)


def _make_cell(pts, floor_pad, grid, rng):
    d = pts[0].dim
    lo = [min(p.coords[k] for p in pts) for k in range(d)]
    hi = [max(p.coords[k] for p in pts) for k in range(d)]
    widths = [h - l for h, l in zip(hi, lo)]
    pad = [max(w * INFLATE, floor_pad) for w in widths]
    base = _corner_simplex(lo, widths, pad)
    radius = min(pad) / 4
    for _ in range(MAX_JITTER_ROUNDS):
        verts = _jitter(base, radius, grid, rng)
        try:
            cell = Simplex(verts, d)
        except Exception:
            radius /= 2
            continue
        if _contains_open(cell, pts):
            return cell
        radius /= 2
    raise AssertionError("could not place a cell around a part")


def build_partition(P: PointSet, r: int, seed: int = 0) -> SimplicialPartition:
    """Simplicial r-partition of ``P`` (deterministic per seed).

    Nonempty parts have sizes in ``[ceil(n/r), 2 ceil(n/r))`` and every point
    lies in the open interior of its part's cell.  When the size window
    forces fewer than ``r`` nonempty parts, the rest are empty parts with
    tiny dummy cells placed far away on a moment curve, so no hyperplane can
    cross more than ``d`` of them.
    """
    n = len(P)
    if not isinstance(r, int) or r < 1 or r > n:
        raise InvalidR(f"r must satisfy 1 <= r <= n={n}, got {r!r}")
    pts = P.points
    d = P.dim
    rng = random.Random(seed)
    sizes = part_sizes(n, r)
    groups: list[tuple[int, ...]] = []
    _split(pts, list(range(n)), sizes, 0, groups)

    S = _scale(pts)
    floor_pad = _dyadic_floor(S / (64 * n))
    grid = _dyadic_floor(floor_pad / (4 * JITTER_STEPS))
    parts = []
    for g in groups:
        members = [pts[i] for i in g]
        pad = floor_pad
        if len(g) == 1:
            # singleton cells stay well away from every other point
            p = members[0]
            near = min(
                (max(abs(a - b) for a, b in zip(p.coords, q.coords)) for q in pts if q != p),
                default=S,
            )
            if near > 0:
                pad = min(pad, _dyadic_floor(near / 16))
            cell_grid = min(grid, _dyadic_floor(pad / (4 * JITTER_STEPS)))
        else:
            cell_grid = grid
        parts.append(Part(g, _make_cell(members, pad, cell_grid, rng)))

    # dummy cells on the moment curve t -> (t, t^2, ..., t^d) far outside
    hi = [max(p.coords[k] for p in pts) for k in range(d)]
    for j in range(r - len(groups)):
        t = j + 1
        size = S / 2 ** (j + 6)
        anchor = [hi[k] + 8 * S + S * Fraction(t) ** (k + 1) for k in range(d)]
        verts = _corner_simplex(anchor, [Fraction(0)] * d, [size] * d)
        g = _dyadic_floor(size / (4 * JITTER_STEPS))
        cell = Simplex(_jitter(verts, size / 8, g, rng), d)
        parts.append(Part((), cell, dummy=True))
    return SimplicialPartition(parts, P, r, seed)


def check_partition(Pi: SimplicialPartition) -> dict:
    """Exact re-check of the partition invariants; returns a report dict."""
    n = len(Pi.source)
    m = -(-n // Pi.r)
    seen = Counter()
    size_ok = True
    contain_ok = True
    for p in Pi.parts:
        seen.update(p.indices)
        if p.indices:
            if not (m <= len(p.indices) < 2 * m):
                size_ok = False
            if not _contains_open(p.cell, [Pi.source[i] for i in p.indices]):
                contain_ok = False
    cover_ok = len(Pi.parts) == Pi.r and set(seen) == set(range(n)) and all(
        c == 1 for c in seen.values()
    )
    return {"disjoint_cover": cover_ok, "size_window": size_ok, "interior_containment": contain_ok}


# --- crossing profile ------------------------------------------------------


@dataclass
class CrossingProfile:
    probes: int
    histogram: dict[int, int]
    maximum: int
    per_probe: list[int] = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {
            "probes": self.probes,
            "maximum": self.maximum,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }


def auto_probes(P: PointSet, count: int, seed: int) -> list[OrientedHyperplane]:
    """Half through random d-subsets of P, half uniformly random hyperplanes."""
    from .geometry import hyperplane_from_homs
    from .errors import DegenerateSupport

    rng = random.Random(seed)
    d = P.dim
    pts = P.points
    lo = [min(p.coords[k] for p in pts) for k in range(d)]
    hi = [max(p.coords[k] for p in pts) for k in range(d)]
    probes = []
    while len(probes) < count:
        if len(probes) % 2 == 0 and len(pts) >= d:
            sub = rng.sample(range(len(pts)), d)
            try:
                probes.append(hyperplane_from_homs([pts[i].hom for i in sub]))
            except DegenerateSupport:
                continue
        else:
            a = [rng.randint(-(1 << 16), 1 << 16) for _ in range(d)]
            if all(c == 0 for c in a):
                continue
            x = [lo[k] + (hi[k] - lo[k]) * Fraction(rng.randint(0, 1 << 16), 1 << 16) for k in range(d)]
            b = sum(ai * xi for ai, xi in zip(a, x))
            probes.append(OrientedHyperplane(tuple(Fraction(c) for c in a), b))
    return probes


def crossing_profile(
    Pi: SimplicialPartition,
    probes: Sequence[OrientedHyperplane] | None = None,
    count: int = 1000,
    seed: int = 0,
) -> CrossingProfile:
    """How many cells each probe hyperplane crosses (both strict sides occupied)."""
    if probes is None:
        probes = auto_probes(Pi.source, count, seed)
    for h in probes:
        if h.dim != Pi.dim:
            raise DimensionMismatch("probe dimension differs from the partition")
    packed = kernels.PackedCells([[v.hom for v in p.cell.vertices] for p in Pi.parts])
    per = [packed.crossed_count(h.int_coeffs) for h in probes]
    hist = Counter(per)
    return CrossingProfile(len(per), dict(hist), max(per) if per else 0, per)


def crossing_exponent(rs: Sequence[int], maxima: Sequence[int]) -> float:
    """Least-squares slope of log(max crossings) against log(r)."""
    return fit_exponent(rs, maxima)


# --- censuses --------------------------------------------------------------


@dataclass
class TupleCensus:
    r_nonempty: int
    crossed: int
    loose: int
    tight: int
    crowded: int = 0
    crossed_ambient: int = 0
    loose_ambient: int = 0
    tight_ambient: int = 0
    heaviest_tight: tuple[int, ...] | None = None
    heaviest_load: int = 0
    edge_class: list = field(default_factory=list, repr=False)
    edge_family: list = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {
            "r_nonempty": self.r_nonempty,
            "tuples": {"crossed": self.crossed, "loose": self.loose, "tight": self.tight},
            "edges": {
                "crowded": self.crowded,
                "crossed_ambient": self.crossed_ambient,
                "loose_ambient": self.loose_ambient,
                "tight_ambient": self.tight_ambient,
            },
            "heaviest_tight": list(self.heaviest_tight) if self.heaviest_tight else None,
            "heaviest_load": self.heaviest_load,
        }


def tuple_census(P: PointSet, E: Sequence[Sequence[int]] | None, Pi: SimplicialPartition) -> TupleCensus:
    """Classify every (d+1)-tuple of nonempty cells, then every edge by its ambient family."""
    d = P.dim
    cells = Pi.nonempty()
    counts = Counter()
    for fam in combinations(cells, d + 1):
        counts[Pi.classify(fam)] += 1
    census = TupleCensus(
        len(cells), counts[FamilyClass.CROSSED], counts[FamilyClass.LOOSE], counts[FamilyClass.TIGHT]
    )
    if not E:
        return census
    owner = Pi.cell_of()
    n = len(P)
    loads = Counter()
    for e in E:
        if len(e) != d + 1:
            raise IndexOutOfRange(f"edge {e!r} does not have {d + 1} vertices")
        for i in e:
            if not (0 <= i < n):
                raise IndexOutOfRange(f"edge index {i} outside 0..{n - 1}")
        amb = tuple(sorted({owner[i] for i in e}))
        census.edge_family.append(amb)
        if len(amb) < d + 1:
            census.crowded += 1
            census.edge_class.append("crowded")
            continue
        cls = Pi.classify(amb)
        census.edge_class.append(cls.value)
        if cls == FamilyClass.CROSSED:
            census.crossed_ambient += 1
        elif cls == FamilyClass.LOOSE:
            census.loose_ambient += 1
        else:
            census.tight_ambient += 1
            loads[amb] += 1
    if loads:
        best = min(loads, key=lambda f: (-loads[f], f))
        census.heaviest_tight = best
        census.heaviest_load = loads[best]
    return census


@dataclass
class ColoredCensus:
    crossed: int
    loose: int
    tight: int
    tight_blocks: list  # (part index per color, centroid of the delta cell)
    partitions: list

    def to_json(self) -> dict:
        return {
            "tuples": {"crossed": self.crossed, "loose": self.loose, "tight": self.tight},
            "tight_blocks": [
                {
                    "parts": list(parts),
                    "indices": [list(self.partitions[c].parts[j].indices) for c, j in enumerate(parts)],
                    "centroid": pt.to_json(),
                }
                for parts, pt in self.tight_blocks
            ],
        }


def colored_tuple_census(color_sets: Sequence[PointSet], r: int, seed: int = 0) -> ColoredCensus:
    """Partition each color class and classify every cross-product tuple of cells.

    Classes with fewer than ``r`` points are split into singleton parts with
    tiny cells.  A tight tuple is a block: every colorful point tuple drawn
    from its parts spans a simplex containing the tuple's delta cell.
    """
    if not color_sets:
        raise EmptyColorClass("no color classes given")
    d = color_sets[0].dim
    if len(color_sets) != d + 1:
        raise DimensionMismatch(f"need {d + 1} color classes in dimension {d}")
    for c in color_sets:
        if len(c) == 0:
            raise EmptyColorClass("a color class is empty")
        if c.dim != d:
            raise DimensionMismatch("color classes live in different dimensions")
    partitions = []
    for i, c in enumerate(color_sets):
        rr = min(r, len(c))
        partitions.append(build_partition(c, rr, seed * 1009 + i))
    counts = Counter()
    tight = []
    choices = [Pi.nonempty() for Pi in partitions]
    for tup in product(*choices):
        F = Family([partitions[c].parts[j].cell for c, j in enumerate(tup)], d)
        cls = classify_family(F)
        counts[cls] += 1
        if cls == FamilyClass.TIGHT:
            tight.append((tup, delta_cell(F).centroid()))
    return ColoredCensus(
        counts[FamilyClass.CROSSED], counts[FamilyClass.LOOSE], counts[FamilyClass.TIGHT], tight, partitions
    )


# --- same-type extraction --------------------------------------------------


@dataclass
class SameTypeResult:
    subsets: list[tuple[int, ...]]
    order_type: dict[tuple[int, ...], int]
    r: int
    parts: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "parts": list(self.parts),
            "subsets": [list(s) for s in self.subsets],
            "order_type": [[list(k), v] for k, v in sorted(self.order_type.items())],
        }


def _clique(vertices, k, d, edge):
    """First k-set of vertices all of whose (d+1)-subsets satisfy ``edge`` (backtracking)."""

    def extend(chosen, cands):
        if len(chosen) == k:
            return list(chosen)
        if len(chosen) + len(cands) < k:
            return None
        for pos, v in enumerate(cands):
            if len(chosen) + len(cands) - pos < k:
                return None
            new = chosen + [v]
            rest = []
            for u in cands[pos + 1:]:
                if len(new) < d:
                    rest.append(u)
                    continue
                if all(edge(tuple(sorted(s + (u,)))) for s in combinations(new, d)):
                    rest.append(u)
            res = extend(new, rest)
            if res is not None:
                return res
        return None

    return extend([], list(vertices))


def same_type_extract(
    P: PointSet, k: int, r_override: int | None = None, seed: int = 0, c: Fraction | int = 1
) -> SameTypeResult:
    """k parts of a partition such that every transversal tuple has one order type."""
    d = P.dim
    n = len(P)
    if k < d + 1:
        raise InvalidK(f"k must be at least d+1 = {d + 1}")
    if k > n:
        raise InsufficientPoints(f"k={k} exceeds n={n}")
    r = r_override if r_override is not None else ceil(Fraction(c) * k ** (d * d))
    r = max(min(r, n), 1)
    Pi = build_partition(P, r, seed)
    cells = Pi.nonempty()
    memo = {}

    def separated(tup):
        v = memo.get(tup)
        if v is None:
            v = is_separated(Pi.family(tup))
            memo[tup] = v
        return v

    degree = Counter()
    for tup in combinations(cells, d + 1):
        if separated(tup):
            for c_ in tup:
                degree[c_] += 1
    order = sorted(cells, key=lambda c_: (-degree[c_], c_))
    chosen = _clique(order, k, d, separated)
    if chosen is None:
        raise CliqueNotFound(f"no {k} mutually separated parts among r={r}; raise r")
    chosen = sorted(chosen)
    subsets = [Pi.parts[c_].indices for c_ in chosen]
    reps = [P.points[s[0]] for s in subsets]
    otype = {sub: orientation([reps[i] for i in sub]) for sub in combinations(range(k), d + 1)}
    return SameTypeResult(subsets, otype, r, tuple(chosen))
