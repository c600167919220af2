"""Exact rational points, hyperplanes and simplices.

Coordinates are :class:`fractions.Fraction` values; every predicate is
decided by integer sign computations on homogeneous coordinates (see
:mod:`pointsel.kernels`), so no floating point ever enters a decision.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, gcd, lcm
from typing import Iterable, Sequence

from . import kernels
from .errors import (
    DegenerateSupport,
    DimensionMismatch,
    ParseError,
    RetryExhausted,
    WitnessOnHyperplane,
)

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")

# Above this many (d+1)-subsets the exhaustive genericity scan is skipped and
# PointSet.generic is left as None ("not scanned").
GENERICITY_SCAN_BUDGET = 2_000_000


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (optional sign) into a reduced Fraction."""
    if not isinstance(text, str):
        raise ParseError(f"rational literal must be a string, got {text!r}")
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ParseError(f"malformed rational literal {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return parse_rational(v)
    raise TypeError(f"exact coordinate required, got {type(v).__name__}")


def _sign(v) -> int:
    return (v > 0) - (v < 0)


class Point:
    """An immutable point with rational coordinates.

    ``hom`` is the primitive homogeneous integer vector ``(w, w*x_1, ...)``
    with ``w > 0``, computed once and fed to the integer kernels.
    """

    __slots__ = ("coords", "_hom")

    def __init__(self, coords: Iterable):
        self.coords = tuple(as_fraction(c) for c in coords)
        if not self.coords:
            raise DimensionMismatch("a point needs at least one coordinate")
        self._hom = None

    @classmethod
    def from_hom(cls, hom: Sequence[int]) -> "Point":
        w = hom[0]
        if w <= 0:
            raise ValueError("homogeneous weight must be positive")
        return cls(Fraction(x, w) for x in hom[1:])

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def hom(self) -> tuple[int, ...]:
        h = self._hom
        if h is None:
            w = 1
            for c in self.coords:
                w = lcm(w, c.denominator)
            h = (w,) + tuple(c.numerator * (w // c.denominator) for c in self.coords)
            self._hom = h
        return h

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        if isinstance(other, Point):
            return self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __lt__(self, other: "Point"):
        return self.coords < other.coords

    def __add__(self, other: "Point") -> "Point":
        return Point(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "Point") -> "Point":
        return Point(a - b for a, b in zip(self.coords, other.coords))

    def scale(self, s) -> "Point":
        return Point(c * s for c in self.coords)

    def __repr__(self):
        return "Point(" + ", ".join(format_rational(c) for c in self.coords) + ")"

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coords]


def centroid(points: Sequence[Point]) -> Point:
    n = len(points)
    d = points[0].dim
    return Point(sum((p.coords[k] for p in points), Fraction(0)) / n for k in range(d))


def _check_dims(pts: Sequence[Point], d: int | None = None) -> int:
    if not pts:
        raise DimensionMismatch("empty point list")
    d0 = pts[0].dim if d is None else d
    for p in pts:
        if p.dim != d0:
            raise DimensionMismatch(f"mixed dimensions {p.dim} and {d0}")
    return d0


def orientation(pts: Sequence[Point]) -> int:
    """Sign of det [[1 ... 1], [p_1 ... p_{d+1}]] as -1, 0 or +1."""
    d = _check_dims(pts)
    if len(pts) != d + 1:
        raise DimensionMismatch(f"orientation needs {d + 1} points in dimension {d}, got {len(pts)}")
    return kernels.orient_sign([p.hom for p in pts])


def is_generic(points: Sequence[Point], d: int | None = None) -> bool:
    """Exhaustive scan: True iff every (d+1)-subset has nonzero orientation."""
    if not points:
        return True
    d = _check_dims(points, d)
    homs = [p.hom for p in points]
    if len(homs) <= d:
        return _affine_rank(points) == len(points) - 1
    orient = kernels.orient_sign
    return all(orient(list(sub)) != 0 for sub in combinations(homs, d + 1))


def hyperplane_coeffs(homs: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Integer ``c`` with ``c . h = 0`` for each of the ``d`` homogeneous points.

    The entries are the signed maximal minors of the ``d x (d+1)`` matrix, so
    ``c . q`` is the orientation determinant with ``q`` appended last.  All
    zero iff the points are affinely dependent.
    """
    d = len(homs)
    n = d + 1
    out = []
    for k in range(n):
        minor = [[row[j] for j in range(n) if j != k] for row in homs]
        out.append((-1) ** (k + d) * kernels.det_value(minor))
    return tuple(out)


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


@dataclass(frozen=True)
class OrientedHyperplane:
    """``{x : normal . x = offset}``; positive side ``normal . x > offset``."""

    normal: tuple[Fraction, ...]
    offset: Fraction
    _int: tuple[int, ...] = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "normal", tuple(as_fraction(a) for a in self.normal))
        object.__setattr__(self, "offset", as_fraction(self.offset))
        if all(a == 0 for a in self.normal):
            raise DegenerateSupport("zero normal vector")

    @classmethod
    def from_int_coeffs(cls, h: Sequence[int]) -> "OrientedHyperplane":
        """From ``(b, a_1, ..., a_d)`` meaning ``a . x = b``."""
        h = _primitive(h)
        hp = cls(tuple(Fraction(a) for a in h[1:]), Fraction(h[0]))
        object.__setattr__(hp, "_int", tuple(h))
        return hp

    @property
    def dim(self) -> int:
        return len(self.normal)

    @property
    def int_coeffs(self) -> tuple[int, ...]:
        """Primitive integer ``(b, a_1, ..., a_d)`` with the same sides."""
        h = self._int
        if h is None:
            den = self.offset.denominator
            for a in self.normal:
                den = lcm(den, a.denominator)
            h = _primitive(
                (int(self.offset * den),) + tuple(int(a * den) for a in self.normal)
            )
            object.__setattr__(self, "_int", h)
        return h

    def value(self, x: Point) -> Fraction:
        return sum((a * c for a, c in zip(self.normal, x.coords)), Fraction(0)) - self.offset

    def side(self, x: Point) -> int:
        if x.dim != self.dim:
            raise DimensionMismatch("point and hyperplane dimensions differ")
        return _sign(kernels.side_value(self.int_coeffs, x.hom))

    def flipped(self) -> "OrientedHyperplane":
        return OrientedHyperplane.from_int_coeffs(tuple(-c for c in self.int_coeffs))

    def contains(self, x: Point) -> bool:
        return self.side(x) == 0

    def to_json(self) -> dict:
        return {
            "normal": [format_rational(a) for a in self.normal],
            "offset": format_rational(self.offset),
        }


def hyperplane_from_homs(homs: Sequence[Sequence[int]]) -> OrientedHyperplane:
    """Hyperplane through ``d`` affinely independent homogeneous points.

    Oriented so that ``side(q) == orient(support + [q])``.
    """
    c = hyperplane_coeffs(homs)
    if all(x == 0 for x in c[1:]):
        raise DegenerateSupport("support points are affinely dependent")
    # c0*w + c.X = 0 on the hyperplane, i.e. c.x = -c0
    return OrientedHyperplane.from_int_coeffs((-c[0],) + tuple(c[1:]))


def hyperplane_through(support: Sequence[Point], witness: Point) -> OrientedHyperplane:
    """Hyperplane through ``d`` support points with ``witness`` on the positive side."""
    d = _check_dims(list(support) + [witness])
    if len(support) != d:
        raise DimensionMismatch(f"need {d} support points in dimension {d}")
    h = hyperplane_from_homs([p.hom for p in support])
    s = h.side(witness)
    if s == 0:
        raise WitnessOnHyperplane("witness lies on the spanned hyperplane")
    return h if s > 0 else h.flipped()


# --- exact linear algebra -------------------------------------------------


def solve_linear(A: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """Unique solution of ``A x = b`` over the rationals, else None.

    Returns None when the system is inconsistent or underdetermined.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    M = [[Fraction(v) for v in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    row = 0
    pivots = []
    for col in range(n):
        piv = next((i for i in range(row, m) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        pv = M[row][col]
        M[row] = [v / pv for v in M[row]]
        for i in range(m):
            if i != row and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * c for a, c in zip(M[i], M[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    for i in range(row, m):
        if M[i][n] != 0:
            return None
    if len(pivots) < n:
        return None
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = M[i][n]
    return tuple(x)


def _affine_rank(points: Sequence[Point]) -> int:
    if len(points) <= 1:
        return 0
    p0 = points[0]
    rows = [[a - b for a, b in zip(p.coords, p0.coords)] for p in points[1:]]
    rank = 0
    ncol = len(rows[0])
    for col in range(ncol):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][col] != 0:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * c for a, c in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def affine_rank(points: Sequence[Point]) -> int:
    return _affine_rank(points)


# --- simplices -------------------------------------------------------------


def simplex_functionals(homs: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Facet functionals of a full-dimensional simplex.

    For each vertex ``j`` returns an integer vector ``g`` vanishing on the
    opposite facet with ``g . hom(v_j) > 0``; a homogeneous point ``q`` lies in
    the open simplex iff every ``g . q > 0`` and in the closed one iff every
    ``g . q >= 0``.
    """
    out = []
    for j, pj in enumerate(homs):
        others = [h for i, h in enumerate(homs) if i != j]
        g = hyperplane_coeffs(others)
        s = sum(a * b for a, b in zip(g, pj))
        if s == 0:
            raise DegenerateSupport("simplex vertices are affinely dependent")
        if s < 0:
            g = tuple(-a for a in g)
        out.append(_primitive(g))
    return out


class Simplex:
    """A k-simplex (k <= d) in R^d with canonically (lexicographically) ordered vertices."""

    __slots__ = ("vertices", "dim_ambient", "_funcs")

    def __init__(self, vertices: Iterable[Point], dim_ambient: int | None = None, check: bool = True):
        vs = [v if isinstance(v, Point) else Point(v) for v in vertices]
        d = _check_dims(vs, dim_ambient)
        if len(vs) > d + 1:
            raise DimensionMismatch(f"a simplex in R^{d} has at most {d + 1} vertices")
        vs.sort()
        if check and _affine_rank(vs) != len(vs) - 1:
            raise DegenerateSupport("simplex vertices are affinely dependent")
        self.vertices = tuple(vs)
        self.dim_ambient = d
        self._funcs = None

    @property
    def k(self) -> int:
        return len(self.vertices) - 1

    @property
    def is_full(self) -> bool:
        return self.k == self.dim_ambient

    @property
    def homs(self) -> list[tuple[int, ...]]:
        return [v.hom for v in self.vertices]

    @property
    def functionals(self) -> list[tuple[int, ...]]:
        if self._funcs is None:
            if not self.is_full:
                raise DimensionMismatch("facet functionals need a full-dimensional simplex")
            self._funcs = simplex_functionals(self.homs)
        return self._funcs

    def centroid(self) -> Point:
        return centroid(self.vertices)

    def facets(self) -> list["Simplex"]:
        return [
            Simplex([v for i, v in enumerate(self.vertices) if i != j], self.dim_ambient, check=False)
            for j in range(len(self.vertices))
        ]

    def __eq__(self, other):
        if isinstance(other, Simplex):
            return self.vertices == other.vertices
        return NotImplemented

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"Simplex({list(self.vertices)!r})"

    def to_json(self) -> list[list[str]]:
        return [v.to_json() for v in self.vertices]


def point_in_simplex(x: Point, S: Simplex, mode: str = "open") -> bool:
    """Barycentric membership test; ``mode`` is ``"open"`` or ``"closed"``.

    Open means the relative interior: ``x`` in ``aff(S)`` with all
    barycentric coordinates positive.
    """
    if mode not in ("open", "closed"):
        raise ValueError(f"mode must be 'open' or 'closed', not {mode!r}")
    if x.dim != S.dim_ambient:
        raise DimensionMismatch("point and simplex dimensions differ")
    closed = mode == "closed"
    if S.is_full:
        q = x.hom
        for g in S.functionals:
            v = sum(a * b for a, b in zip(g, q))
            if v < 0 or (v == 0 and not closed):
                return False
        return True
    lam = barycentric(x, S.vertices)
    if lam is None:
        return False
    if closed:
        return all(l >= 0 for l in lam)
    return all(l > 0 for l in lam)


def barycentric(x: Point, vertices: Sequence[Point]) -> tuple[Fraction, ...] | None:
    """Affine coordinates of ``x`` w.r.t. independent ``vertices``; None if off the hull's span."""
    d = x.dim
    k = len(vertices)
    A = [[v.coords[r] for v in vertices] for r in range(d)] + [[Fraction(1)] * k]
    b = list(x.coords) + [Fraction(1)]
    return solve_linear(A, b)


# --- point sets ------------------------------------------------------------


@dataclass(frozen=True)
class PointSet:
    """A labelled list of points in R^d.

    ``generic`` is True/False after an exhaustive scan of all (d+1)-subsets,
    or None when the scan was skipped because it exceeds
    ``GENERICITY_SCAN_BUDGET`` subsets.
    """

    dim: int
    points: tuple[Point, ...]
    generic: bool | None = None
    labels: tuple[str, ...] | None = None

    @classmethod
    def of(cls, points: Iterable, dim: int | None = None, scan: bool = True, labels=None) -> "PointSet":
        pts = tuple(p if isinstance(p, Point) else Point(p) for p in points)
        if dim is None:
            if not pts:
                raise DimensionMismatch("cannot infer dimension of an empty point set")
            dim = pts[0].dim
        _check_dims(pts, dim) if pts else None
        generic = None
        if scan and comb(len(pts), dim + 1) <= GENERICITY_SCAN_BUDGET:
            generic = is_generic(pts, dim)
        return cls(dim, pts, generic, tuple(labels) if labels is not None else None)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def subset(self, indices: Sequence[int], scan: bool = False) -> "PointSet":
        pts = [self.points[i] for i in indices]
        generic = self.generic if self.generic else None
        if scan:
            return PointSet.of(pts, self.dim)
        return PointSet(self.dim, tuple(pts), generic)

    def to_json(self) -> dict:
        return {"dimension": self.dim, "points": [p.to_json() for p in self.points]}


PERTURB_DENOMINATOR = 1 << 16
PERTURB_ROUNDS = 32


def perturb_general_position(P: PointSet, seed: int, magnitude) -> PointSet:
    """Move every point by less than ``magnitude`` (max-norm) into general position.

    Offsets are ``magnitude * k / 2^16`` with ``|k| < 2^16`` drawn from a
    generator seeded by ``seed``; a failed genericity scan halves the
    magnitude and redraws, at most 32 rounds.
    """
    magnitude = as_fraction(magnitude)
    if magnitude <= 0:
        raise ValueError("magnitude must be positive")
    rng = random.Random(seed)
    D = PERTURB_DENOMINATOR
    mag = magnitude
    for _ in range(PERTURB_ROUNDS):
        moved = []
        for p in P.points:
            moved.append(
                Point(c + mag * Fraction(rng.randint(-(D - 1), D - 1), D) for c in p.coords)
            )
        if len(set(moved)) == len(moved) and is_generic(moved, P.dim):
            return PointSet(P.dim, tuple(moved), True, P.labels)
        mag /= 2
    raise RetryExhausted(f"no generic perturbation found in {PERTURB_ROUNDS} rounds")
