"""Semi-algebraic relations and Turan-type block extraction.

A relation over k vertex classes is a Boolean formula over sign atoms
``f_j <= 0`` of rational polynomials in the concatenated coordinates.  The
bipartite extractor splits left vertices into dyadic degree classes, packs
the neighborhoods of one class, covers each packing edge by a small family
of large subsets (built from the simplicial partition engine and checked on
every instance), and pigeonholes.  More classes are handled by flattening
classes 2..k into tuples and recursing.
"""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from itertools import product
from typing import Callable, Sequence

from .errors import (
    DegenerateVertices,
    DensityTooLow,
    DimensionMismatch,
    EmptyEdgeSet,
    GeometryError,
)
from .geometry import Point, PointSet, Simplex, format_rational, parse_rational
from .partition import build_partition
from .stats import fit_exponent


@dataclass(frozen=True)
class TuranConstants:
    """Every tunable constant of the extraction in one place."""

    class_divisor: int = 10  # degree classes start at eps*|V2|/class_divisor
    packing_divisor: int = 10  # packing distance is eps_i/packing_divisor
    mnet_singleton_threshold: Fraction = Fraction(10)  # below eps_i*|V2| use singletons
    mnet_size_factor: Fraction = Fraction(1, 100)  # keep parts of size >= this * eps_i*|V2|
    mnet_r: int = 16
    shatter_grid: int = 1000
    shatter_random: int = 1000

    def to_json(self) -> dict:
        return {k: (str(v) if isinstance(v, Fraction) else v) for k, v in asdict(self).items()}

    @classmethod
    def from_json(cls, data: dict) -> "TuranConstants":
        known = {f.name: f.type for f in fields(cls)}
        unknown = set(data) - set(known)
        if unknown:
            raise ValueError(f"unknown constants: {sorted(unknown)}")
        out = {}
        for k, v in data.items():
            default = getattr(cls, k)
            out[k] = parse_rational(str(v)) if isinstance(default, Fraction) else int(v)
        return cls(**out)


DEFAULT_CONSTANTS = TuranConstants()


# --- polynomials and relations -------------------------------------------------


class Polynomial:
    """Sparse multivariate polynomial with rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict):
        self.nvars = nvars
        clean = {}
        for exps, c in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps!r} for {nvars} variables")
            c = Fraction(c)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
        self.terms = {e: c for e, c in clean.items() if c}

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def evaluate(self, x: Sequence[Fraction]) -> Fraction:
        total = Fraction(0)
        for exps, c in self.terms.items():
            v = c
            for xi, e in zip(x, exps):
                if e:
                    v *= xi**e
            total += v
        return total

    def __eq__(self, other):
        return isinstance(other, Polynomial) and (self.nvars, self.terms) == (other.nvars, other.terms)

    def __repr__(self):
        return f"Polynomial({self.nvars}, {len(self.terms)} terms)"

    def to_json(self) -> dict:
        return {
            "monomials": [[list(e), format_rational(c)] for e, c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, nvars: int, data: dict) -> "Polynomial":
        return cls(nvars, {tuple(e): parse_rational(str(c)) for e, c in data["monomials"]})


def _atoms_in(node) -> set[int]:
    op = node["op"]
    if op == "atom":
        return {node["index"]}
    if op == "not":
        return _atoms_in(node["arg"])
    if op in ("and", "or"):
        out = set()
        for a in node["args"]:
            out |= _atoms_in(a)
        return out
    if op == "const":
        return set()
    raise ValueError(f"unknown formula node {op!r}")


def _eval_formula(node, atom: Callable[[int], bool]) -> bool:
    op = node["op"]
    if op == "atom":
        return atom(node["index"])
    if op == "not":
        return not _eval_formula(node["arg"], atom)
    if op == "and":
        return all(_eval_formula(a, atom) for a in node["args"])
    if op == "or":
        return any(_eval_formula(a, atom) for a in node["args"])
    return bool(node["value"])


@dataclass
class SemiAlgRelation:
    """Formula over atoms ``polys[j] <= 0`` on one point per block.

    ``extra`` is an optional exact predicate conjoined with the formula; it
    is not serialized, so relations using it are rebuilt from ``name``.
    """

    block_dims: tuple[int, ...]
    polys: tuple[Polynomial, ...]
    formula: dict
    degree: int
    name: str = ""
    extra: Callable | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        self.block_dims = tuple(int(k) for k in self.block_dims)
        self.polys = tuple(self.polys)
        nv = sum(self.block_dims)
        for p in self.polys:
            if p.nvars != nv:
                raise DimensionMismatch(f"polynomial over {p.nvars} variables, relation has {nv}")
            if p.degree > self.degree:
                raise ValueError(f"polynomial degree {p.degree} exceeds the bound {self.degree}")
        bad = [i for i in _atoms_in(self.formula) if not 0 <= i < len(self.polys)]
        if bad:
            raise ValueError(f"formula references missing atoms {bad}")

    @property
    def k(self) -> int:
        return len(self.block_dims)

    def evaluate(self, tup) -> bool:
        return eval_relation(self, tup)

    def to_json(self) -> dict:
        if self.name.startswith("builtin:"):
            kind, _, arg = self.name[len("builtin:"):].partition(":")
            return {"builtin": kind, "d": int(arg)}
        return {
            "block_dims": list(self.block_dims),
            "degree": self.degree,
            "polys": [p.to_json() for p in self.polys],
            "formula": self.formula,
        }

    @classmethod
    def from_json(cls, data: dict) -> "SemiAlgRelation":
        if "builtin" in data:
            kind, d = data["builtin"], int(data["d"])
            makers = {"loose": loose_relation, "halfspace": halfspace_relation}
            if kind not in makers:
                raise ValueError(f"unknown builtin relation {kind!r}")
            return makers[kind](d)
        dims = tuple(data["block_dims"])
        nv = sum(dims)
        polys = tuple(Polynomial.from_json(nv, p) for p in data["polys"])
        return cls(dims, polys, data["formula"], int(data["degree"]))


def _coords(p) -> tuple:
    if isinstance(p, Point):
        return p.coords
    return tuple(Fraction(c) for c in p)


def eval_relation(rel: SemiAlgRelation, tup: Sequence) -> bool:
    """Exact truth value of ``rel`` on one point per block."""
    if len(tup) != rel.k:
        raise DimensionMismatch(f"relation has {rel.k} blocks, got {len(tup)} points")
    x = []
    for p, k in zip(tup, rel.block_dims):
        c = _coords(p)
        if len(c) != k:
            raise DimensionMismatch(f"block expects dimension {k}, got {len(c)}")
        x.extend(c)
    cache: dict[int, bool] = {}

    def atom(i):
        if i not in cache:
            cache[i] = rel.polys[i].evaluate(x) <= 0
        return cache[i]

    val = _eval_formula(rel.formula, atom)
    if val and rel.extra is not None:
        val = bool(rel.extra(tup))
    return val


def constant_relation(block_dims: Sequence[int], value: bool) -> SemiAlgRelation:
    return SemiAlgRelation(tuple(block_dims), (), {"op": "const", "value": bool(value)}, 0)


def linear_relation(a: Sequence) -> SemiAlgRelation:
    """Two blocks in R^d related iff ``a.(v1 - v2) > 0``."""
    a = [Fraction(v) for v in a]
    d = len(a)
    terms = {}
    for k, c in enumerate(a):
        e = [0] * (2 * d)
        e[k] = 1
        terms[tuple(e)] = c
        e = [0] * (2 * d)
        e[d + k] = 1
        terms[tuple(e)] = -c
    poly = Polynomial(2 * d, terms)
    return SemiAlgRelation((d, d), (poly,), {"op": "not", "arg": {"op": "atom", "index": 0}}, 1)


def halfspace_relation(d: int) -> SemiAlgRelation:
    """``u`` in R^d and ``y`` in R^d related iff ``y_d <= u_1 y_1 + ... + u_{d-1} y_{d-1} + u_d``.

    The left vertex encodes a non-vertical halfspace, the right one a point.
    """
    if d < 1:
        raise ValueError("d must be positive")
    nv = 2 * d
    terms = {}

    def mono(*vs):
        e = [0] * nv
        for v in vs:
            e[v] += 1
        return tuple(e)

    terms[mono(d + d - 1)] = Fraction(1)
    for k in range(d - 1):
        terms[mono(k, d + k)] = Fraction(-1)
    terms[mono(d - 1)] = Fraction(-1)
    return SemiAlgRelation(
        (d, d), (Polynomial(nv, terms),), {"op": "atom", "index": 0}, 2, name=f"builtin:halfspace:{d}"
    )


def _orientation_polynomial(d: int, choice: Sequence[int]) -> Polynomial:
    # det of the (d+1)x(d+1) matrix whose column c is (1, vertex choice[c] of block c)
    nv = (d + 1) * d * d
    n = d + 1
    terms: dict = {}
    for perm in _permutations_with_sign(n):
        p, sign = perm
        e = [0] * nv
        for c in range(n):
            row = p[c]
            if row:
                e[c * d * d + choice[c] * d + (row - 1)] += 1
        key = tuple(e)
        terms[key] = terms.get(key, 0) + sign
    return Polynomial(nv, terms)


def _permutations_with_sign(n: int):
    from itertools import permutations

    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        yield p, (-1 if inv % 2 else 1)


def decode_facet(p, d: int) -> Simplex:
    """Inverse of the facet encoding: d vertices of R^d concatenated."""
    c = _coords(p)
    if len(c) != d * d:
        raise DimensionMismatch(f"a facet block has dimension {d * d}, got {len(c)}")
    verts = [Point(c[k * d : (k + 1) * d]) for k in range(d)]
    try:
        return Simplex(verts, d)
    except GeometryError as exc:
        raise DegenerateVertices("facet vertices are affinely dependent") from exc


def loose_relation(d: int) -> SemiAlgRelation:
    """Looseness of d+1 facets, each a block of d^2 coordinates.

    The atoms are the colorful orientation determinants; the formula asks
    for one common sign.  The existential part is decided exactly by
    rebuilding the facets and classifying the family.
    """
    if d < 2:
        raise ValueError("loose_relation needs d >= 2")
    from .family import Family, FamilyClass, classify_family

    choices = list(product(range(d), repeat=d + 1))
    polys = tuple(_orientation_polynomial(d, ch) for ch in choices)
    atoms = [{"op": "atom", "index": i} for i in range(len(polys))]
    formula = {
        "op": "or",
        "args": [
            {"op": "and", "args": atoms},
            {"op": "and", "args": [{"op": "not", "arg": a} for a in atoms]},
        ],
    }

    def loose(tup):
        F = Family([decode_facet(p, d) for p in tup], d)
        return classify_family(F) == FamilyClass.LOOSE

    return SemiAlgRelation(
        tuple([d * d] * (d + 1)), polys, formula, d, name=f"builtin:loose:{d}", extra=loose
    )


# --- shatter function ------------------------------------------------------------


@dataclass
class ShatterEstimate:
    m: int
    max_traces: int
    ladder: list[tuple[int, int]]
    exponent: float | None

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "max_traces": self.max_traces,
            "ladder": [list(t) for t in self.ladder],
            "exponent": self.exponent,
        }


def _left_samples(d1: int, ground: Sequence[Point], rng: random.Random, constants: TuranConstants):
    # a grid over a padded box, then random points whose coordinates mix a
    # unit-scale range, the padded ground range and raw ground coordinates
    d2 = ground[0].dim if ground else d1
    unit = [(Fraction(-2), Fraction(2))] * d1
    box = list(unit)
    values: list[list[Fraction]] = [[] for _ in range(d1)]
    if ground:
        for k in range(d1):
            axis = k if k < d2 else d2 - 1
            a = min(p.coords[axis] for p in ground)
            b = max(p.coords[axis] for p in ground)
            pad = (b - a) / 2 + 1
            box[k] = (a - pad, b + pad)
            values[k] = [p.coords[axis] for p in ground]
    grid_box = box if d1 == d2 else unit
    side = max(2, round(constants.shatter_grid ** (1 / d1)))
    out = []
    for idx in product(range(side), repeat=d1):
        out.append(
            Point([lo + (hi - lo) * Fraction(i, side - 1) for (lo, hi), i in zip(grid_box, idx)])
        )

    def draw(k):
        src = rng.randrange(3)
        if src == 2 and values[k]:
            return rng.choice(values[k])
        lo, hi = unit[k] if src == 0 else box[k]
        return lo + (hi - lo) * Fraction(rng.randrange(1 << 16), 1 << 16)

    for _ in range(constants.shatter_random):
        out.append(Point([draw(k) for k in range(d1)]))
    if d1 == d2:
        out.extend(ground)
    return out


def estimate_shatter(
    rel: SemiAlgRelation,
    ground: Sequence,
    m: int,
    trials: int = 20,
    seed: int = 0,
    ladder: Sequence[int] | None = None,
    constants: TuranConstants = DEFAULT_CONSTANTS,
) -> ShatterEstimate:
    """Lower bound for the shatter function of a two-block relation.

    Traces are taken on nested random prefixes, so the estimate is
    nondecreasing in m on a fixed ground set and seed.
    """
    if rel.k != 2:
        raise DimensionMismatch("shatter estimation needs a two-block relation")
    ground = [p if isinstance(p, Point) else Point(p) for p in ground]
    if not 1 <= m <= len(ground):
        raise ValueError(f"m must lie in 1..{len(ground)}")
    rng = random.Random(seed)
    left = _left_samples(rel.block_dims[0], ground, rng, constants)
    nbhd = [frozenset(j for j, y in enumerate(ground) if eval_relation(rel, (x, y))) for x in left]
    if ladder is None:
        ladder = sorted({max(1, m // 4), max(1, m // 2), m})
    ladder = sorted(set(ladder) | {m})
    perms = []
    for _ in range(trials):
        perm = list(range(len(ground)))
        rng.shuffle(perm)
        perms.append(perm)
    results = []
    for mm in ladder:
        best = 0
        for perm in perms:
            W = frozenset(perm[:mm])
            best = max(best, len({N & W for N in nbhd}))
        results.append((mm, best))
    exponent = fit_exponent([a for a, _ in results], [b for _, b in results]) if len(results) > 1 else None
    return ShatterEstimate(m, dict(results)[m], results, exponent)


# --- packings and Mnets ----------------------------------------------------------


def maximal_packing(ground, hyperedges: Sequence, delta) -> list[int]:
    """Greedy ``delta``-packing: indices of the kept hyperedges, in input order."""
    size = ground if isinstance(ground, int) else len(ground)
    delta = Fraction(delta)
    if not 0 < delta <= 1:
        raise ValueError("delta must lie in (0, 1]")
    limit = delta * size
    kept: list[int] = []
    sets = [frozenset(h) for h in hyperedges]
    for i, h in enumerate(sets):
        if all(len(h ^ sets[j]) > limit for j in kept):
            kept.append(i)
    return kept


def packing_is_maximal(ground, hyperedges: Sequence, kept: Sequence[int], delta) -> bool:
    size = ground if isinstance(ground, int) else len(ground)
    limit = Fraction(delta) * size
    sets = [frozenset(h) for h in hyperedges]
    return all(any(len(h ^ sets[j]) <= limit for j in kept) for h in sets)


@dataclass
class MnetResult:
    elements: list[tuple[frozenset, object]]
    cover_ok: bool
    retried: bool = False
    r: int | None = None


def build_mnet(
    rho,
    rel: SemiAlgRelation | None,
    eps_i,
    r: int,
    seed: int = 0,
    *,
    ground: Sequence,
    hyperedges: Sequence = (),
    constants: TuranConstants = DEFAULT_CONSTANTS,
) -> MnetResult:
    """Large subsets of ``rho`` such that every supplied hyperedge contains one.

    Parts of a simplicial partition of ``rho`` serve as candidates; the
    cover is checked against ``hyperedges`` and retried once at doubled r.
    """
    rho = sorted(rho)
    if not rho:
        raise EmptyEdgeSet("rho is empty")
    ground = [p if isinstance(p, Point) else Point(p) for p in ground]
    if rel is not None and ground and ground[0].dim != rel.block_dims[-1]:
        raise DimensionMismatch("ground points do not match the relation's right block")
    eps_i = Fraction(eps_i)
    hyper = [frozenset(h) for h in hyperedges]

    def covered(elements):
        return all(any(w <= h for w, _ in elements) for h in hyper)

    if eps_i * len(ground) < constants.mnet_singleton_threshold or len(rho) == 1:
        elements = [(frozenset([v]), None) for v in rho]
        return MnetResult(elements, covered(elements), False, None)
    pts = PointSet.of([ground[v] for v in rho], scan=False)
    floor = constants.mnet_size_factor * eps_i * len(ground)
    result = None
    for attempt in range(2):
        rr = max(1, min(len(rho), r * 2**attempt))
        Pi = build_partition(pts, rr, seed + attempt)
        elements = [
            (frozenset(rho[i] for i in part.indices), part.cell)
            for part in Pi.parts
            if part.indices and len(part.indices) >= floor
        ]
        result = MnetResult(elements, covered(elements), attempt > 0, rr)
        if result.cover_ok:
            break
    return result


# --- Turan blocks ------------------------------------------------------------------


@dataclass
class BipartiteInstance:
    V1: list
    V2: list
    relation: SemiAlgRelation


@dataclass
class TuranBlock:
    subsets: list[list[int]]
    complete: bool
    size_product: int
    region_note: str | None = None
    diagnostics: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "subsets": self.subsets,
            "complete": self.complete,
            "size_product": self.size_product,
            "region_note": self.region_note,
            "diagnostics": self.diagnostics,
        }


def _degree_class(deg: int, base: Fraction, top: int) -> int | None:
    if deg < base:
        return None
    i = 1
    while i < top and deg >= base * 2**i:
        i += 1
    return i


def _bipartite_core(n1, ground, adj, eps, rel, seed, constants, diag):
    n2 = len(ground)
    m = sum(len(a) for a in adj)
    if m < eps * n1 * n2:
        raise DensityTooLow(f"density {Fraction(m, n1 * n2)} below eps = {eps}")
    if m == 0:
        raise EmptyEdgeSet("the bipartite graph has no edges")
    eps_eff = eps if eps > 0 else Fraction(m, n1 * n2)
    top = max(1, math.ceil(math.log2(constants.class_divisor / eps_eff)))
    base = eps_eff * n2 / constants.class_divisor
    classes: dict[int, list[int]] = {i: [] for i in range(1, top + 1)}
    for v, a in enumerate(adj):
        i = _degree_class(len(a), base, top)
        if i is not None:
            classes[i].append(v)
    mass = sum(len(adj[v]) for vs in classes.values() for v in vs)
    if 2 * mass < m:
        raise AssertionError("dyadic classes miss more than half of the edges")
    i = max(
        (j for j in classes if classes[j]),
        key=lambda j: (Fraction(len(classes[j]) * 2**j, j * j), -j),
    )
    eps_i = Fraction(2 ** (i - 1)) * eps_eff / constants.class_divisor
    distinct = list(dict.fromkeys(adj[v] for v in classes[i]))
    delta = min(Fraction(1), eps_i / constants.packing_divisor)
    kept = maximal_packing(n2, distinct, delta)
    limit = delta * n2
    elements: list = []
    covers = []
    for t, k in enumerate(kept):
        rho = distinct[k]
        assigned = [s for s in distinct if len(s ^ rho) <= limit]
        res = build_mnet(
            rho, rel, eps_i, constants.mnet_r, seed + 7919 * t, ground=ground, hyperedges=assigned,
            constants=constants,
        )
        covers.append(res.cover_ok)
        elements.extend(res.elements)
    if not elements:
        elements = [(frozenset([v]), None) for v in distinct[kept[0]]]
    best = None
    for w in dict.fromkeys(w for w, _ in elements):
        hits = [v for v in range(n1) if w <= adj[v]]
        key = (len(hits), len(w))
        if best is None or key > best[0]:
            best = (key, hits, w)
    _, W1, omega = best
    # close the block: the common neighborhood, then everyone adjacent to all of it
    W2 = frozenset.intersection(*[adj[v] for v in W1])
    W1 = [v for v in range(n1) if W2 <= adj[v]]
    diag.setdefault("levels", []).append(
        {
            "class": i,
            "class_sizes": {str(j): len(vs) for j, vs in classes.items()},
            "eps_i": str(eps_i),
            "packing": len(kept),
            "mnet_elements": len(elements),
            "cover_ok": all(covers),
            "omega": len(omega),
            "mass": mass,
            "edges": m,
        }
    )
    return sorted(W1), sorted(W2)


def _adjacency(edges, n1, key):
    adj = [set() for _ in range(n1)]
    for e in edges:
        adj[e[0]].add(key(e))
    return [frozenset(a) for a in adj]


def _kpartite(classes, edges, eps, rel, seed, constants, diag):
    k = len(classes)
    n1 = len(classes[0])
    if k == 2:
        adj = _adjacency(edges, n1, lambda e: e[1])
        return list(_bipartite_core(n1, classes[1], adj, eps, rel, seed, constants, diag))
    tails = list(product(*[range(len(c)) for c in classes[1:]]))
    where = {t: i for i, t in enumerate(tails)}
    tail_pts = [Point([x for c, j in zip(classes[1:], t) for x in c[j].coords]) for t in tails]
    adj = _adjacency(edges, n1, lambda e: where[tuple(e[1:])])
    W1, W2 = _bipartite_core(n1, tail_pts, adj, eps, None, seed, constants, diag)
    sub = {tails[i] for i in W2}
    gamma = Fraction(len(sub), len(tails))
    diag.setdefault("residual_density", []).append(str(gamma))
    return [W1] + _kpartite(classes[1:], sub, gamma, rel, seed + 1, constants, diag)


def _as_points(cls):
    return [p if isinstance(p, Point) else Point(p) for p in cls]


def _verify(rel, classes, subsets) -> bool:
    return all(
        eval_relation(rel, [classes[k][j] for k, j in enumerate(t)]) for t in product(*subsets)
    )


def bipartite_turan(
    inst: BipartiteInstance,
    eps,
    seed: int = 0,
    constants: TuranConstants = DEFAULT_CONSTANTS,
) -> TuranBlock:
    """Subsets ``W1, W2`` with ``W1 x W2`` inside the relation's edge set."""
    return kpartite_turan([inst.V1, inst.V2], inst.relation, eps, seed=seed, constants=constants)


def kpartite_turan(
    classes: Sequence[Sequence],
    rel: SemiAlgRelation,
    eps,
    seed: int = 0,
    constants: TuranConstants = DEFAULT_CONSTANTS,
    edges: set | None = None,
) -> TuranBlock:
    """Subsets ``W_1..W_k`` whose full product satisfies ``rel``.

    ``edges`` may pass a precomputed edge set (index tuples); the returned
    block is re-verified by evaluating the relation on every tuple anyway.
    """
    classes = [_as_points(c) for c in classes]
    k = len(classes)
    if k < 2:
        raise ValueError("need at least two vertex classes")
    if k != rel.k:
        raise DimensionMismatch(f"relation has {rel.k} blocks, got {k} classes")
    for c, dim in zip(classes, rel.block_dims):
        if not c:
            raise EmptyEdgeSet("a vertex class is empty")
        if any(p.dim != dim for p in c):
            raise DimensionMismatch("class points do not match the block dimension")
    eps = Fraction(eps)
    if edges is None:
        edges = {
            t
            for t in product(*[range(len(c)) for c in classes])
            if eval_relation(rel, [classes[i][j] for i, j in enumerate(t)])
        }
    total = math.prod(len(c) for c in classes)
    if len(edges) < eps * total:
        raise DensityTooLow(f"density {Fraction(len(edges), total)} below eps = {eps}")
    diag: dict = {"density": str(Fraction(len(edges), total))}
    subsets = _kpartite(classes, set(edges), eps, rel, seed, constants, diag)
    complete = _verify(rel, classes, subsets)
    note = None
    if k == 2:
        note = "W2 is a common neighborhood; no region complexity bound is claimed"
    return TuranBlock(subsets, complete, math.prod(len(w) for w in subsets), note, diag)
