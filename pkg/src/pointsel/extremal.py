"""Exact counts of halving simplices and k-sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cmp_to_key
from itertools import combinations

from . import kernels
from .errors import InvalidK, TooFewPoints
from .geometry import PointSet, hyperplane_coeffs
from .lp import linear_feasible


@dataclass
class HalvingReport:
    n: int
    d: int
    count: int
    subsets: list[tuple[int, ...]] = field(default_factory=list)
    sides: list[tuple[int, int]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "count": self.count,
            "subsets": [list(s) for s in self.subsets],
            "sides": [list(s) for s in self.sides],
        }

    def csv_rows(self):
        yield ("subset", "positive", "negative")
        for s, (p, q) in zip(self.subsets, self.sides):
            yield (" ".join(map(str, s)), p, q)


@dataclass
class KSetReport:
    n: int
    d: int
    k: int
    count: int
    subsets: list[tuple[int, ...]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "k": self.k,
            "count": self.count,
            "subsets": [list(s) for s in self.subsets],
        }

    def csv_rows(self):
        yield ("subset",)
        for s in self.subsets:
            yield (" ".join(map(str, s)),)


def halving_bound(n: int, d: int) -> int:
    return -(-(n - d) // 2)


def halving_count(P: PointSet) -> HalvingReport:
    """Every d-subset whose spanning hyperplane leaves at most ceil((n-d)/2) points per side."""
    n, d = len(P), P.dim
    if n < d:
        raise TooFewPoints(f"need at least d={d} points, got {n}")
    homs = [p.hom for p in P.points]
    bound = halving_bound(n, d)
    report = HalvingReport(n, d, 0)
    for sub in combinations(range(n), d):
        c = hyperplane_coeffs([homs[i] for i in sub])
        pos, neg, zero = kernels.side_counts((-c[0],) + tuple(c[1:]), homs)
        if zero != d:
            raise AssertionError(f"hyperplane of {sub} contains {zero} points; input is not generic")
        if pos <= bound and neg <= bound:
            report.subsets.append(sub)
            report.sides.append((pos, neg))
    report.count = len(report.subsets)
    return report


def _half(v) -> int:
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _angle_cmp(u, v) -> int:
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu - hv
    c = _cross(u, v)
    return -1 if c > 0 else (1 if c < 0 else 0)


def halving_pairs_sweep(P: PointSet) -> set[tuple[int, int]]:
    """Halving pairs in the plane by rotating a directed line around each point.

    Independent of :func:`halving_count`: it sorts directions by angle and
    maintains the strict left-side count with a moving pointer.
    """
    if P.dim != 2:
        raise ValueError("the sweep works in the plane only")
    n = len(P)
    pts = [p.coords for p in P.points]
    bound = halving_bound(n, 2)
    out = set()
    for i in range(n):
        others = [j for j in range(n) if j != i]
        vecs = {j: (pts[j][0] - pts[i][0], pts[j][1] - pts[i][1]) for j in others}
        order = sorted(others, key=cmp_to_key(lambda a, b: _angle_cmp(vecs[a], vecs[b])))
        m = len(order)
        ptr = 0
        for t in range(m):
            ptr = max(ptr, t + 1)
            while ptr < t + m and _cross(vecs[order[t]], vecs[order[ptr % m]]) > 0:
                ptr += 1
            left = ptr - t - 1
            right = m - 1 - left
            if left <= bound and right <= bound:
                j = order[t]
                out.add((min(i, j), max(i, j)))
    return out


def is_k_set(P: PointSet, subset) -> bool:
    """Is ``subset`` cut out by an open halfspace?  Decided by exact LP."""
    inside = set(subset)
    cons = []
    for i, p in enumerate(P.points):
        # variables (a_1..a_d, b): a.p - b > 0 inside, < 0 outside
        row = list(p.coords) + [-1]
        cons.append((row, ">" if i in inside else "<", 0))
    return linear_feasible(cons) is not None


def kset_count(P: PointSet, k: int) -> KSetReport:
    n, d = len(P), P.dim
    if not isinstance(k, int) or not 1 <= k <= n:
        raise InvalidK(f"k must lie in 1..{n}, got {k!r}")
    report = KSetReport(n, d, k, 0)
    for sub in combinations(range(n), k):
        if is_k_set(P, sub):
            report.subsets.append(sub)
    report.count = len(report.subsets)
    return report


def halving_table(sizes, make_points) -> list[tuple[int, int]]:
    """``(n, psi(n))`` rows for growth plots; ``make_points(n)`` supplies the sets."""
    return [(n, halving_count(make_points(n)).count) for n in sizes]


__all__ = [
    "HalvingReport",
    "KSetReport",
    "halving_bound",
    "halving_count",
    "halving_pairs_sweep",
    "is_k_set",
    "kset_count",
    "halving_table",
]
