"""Acceptance suite: one test per criterion, each reporting a one-line summary.

Every test checks the library result against an independent route (LP
feasibility, exhaustive enumeration or direct predicate evaluation) at exact
rational precision.
"""

import json
import random
from fractions import Fraction as Fr
from itertools import combinations, product
from math import comb
from pathlib import Path

import pytest

from helpers import (
    convex_position,
    needle_family,
    random_crossed_triple,
    random_in_hull,
    random_pointset,
    random_separated_family,
    sliver_rich,
    sliver_triple,
    write_cli_inputs,
)
from pointsel.cli import COMMANDS, main
from pointsel.errors import DensityTooLow, NoTransversal
from pointsel.extremal import halving_count, halving_pairs_sweep, kset_count
from pointsel.family import (
    Family,
    FamilyClass,
    classify_family,
    colorful_core_oracle,
    crossing_hyperplane_through_point,
    delta_cell,
    delta_closure_halfspaces,
    halfspaces_contain,
    pinned_with_witness,
    transversal_through_vertices,
)
from pointsel.geometry import Point, PointSet, Simplex, point_in_simplex
from pointsel.partition import build_partition, check_partition, crossing_exponent, crossing_profile, tuple_census
from pointsel.selection import (
    brute_force_deepest,
    colorful_deepest,
    encode_facet,
    pinning_pipeline,
    select_point,
)
from pointsel.semialg import (
    constant_relation,
    eval_relation,
    halfspace_relation,
    kpartite_turan,
    loose_relation,
)
from pointsel.stats import fit_constant

GOLDEN = Path(__file__).parent / "golden"


def _meets(h, simplex):
    sides = [h.side(v) for v in simplex.vertices]
    return min(sides) <= 0 <= max(sides)


def _recount(P, E, x):
    d = P.dim
    return sum(1 for e in E if point_in_simplex(x, Simplex([P[i] for i in e], d), "open"))


@pytest.fixture(scope="module")
def separated_families():
    rng2, rng3 = random.Random(2024), random.Random(3024)
    return [random_separated_family(rng2, 2) for _ in range(1000)] + [
        random_separated_family(rng3, 3) for _ in range(200)
    ]


@pytest.fixture(scope="module")
def classified(separated_families):
    return [(F, classify_family(F)) for F in separated_families]


def test_criterion_01_trichotomy(classified, record_property):
    disagree = 0
    tally = {c: 0 for c in FamilyClass}
    for F, cls in classified:
        tally[cls] += 1
        core = colorful_core_oracle(F).interior_nonempty
        bounded = delta_cell(F, method="lp").kind == "bounded"
        disagree += not ((cls is FamilyClass.TIGHT) == core == bounded)
    record_property(
        "detail",
        f"{len(classified)} families (1000 d=2, 200 d=3): tight={tally[FamilyClass.TIGHT]} "
        f"loose={tally[FamilyClass.LOOSE]} crossed={tally[FamilyClass.CROSSED]}, disagreements={disagree}",
    )
    assert tally[FamilyClass.CROSSED] == 0
    assert tally[FamilyClass.TIGHT] > 0 and tally[FamilyClass.LOOSE] > 0
    assert disagree == 0


def test_criterion_02_core_equality(classified, record_property):
    tight = [F for F, cls in classified if cls is FamilyClass.TIGHT]
    failures = 0
    for F in tight:
        core = colorful_core_oracle(F).halfspaces
        cell = delta_cell(F)
        closure = delta_closure_halfspaces(cell)
        # the Delta vertices satisfy the core constraints, and the core lies in the closure
        vertices_in_core = all(h.side(v) >= 0 for v in cell.simplex.vertices for h in core)
        failures += not (vertices_in_core and halfspaces_contain(closure, core) and halfspaces_contain(core, closure))
    record_property("detail", f"{len(tight)} tight families, mutual containment failures={failures}")
    assert tight and failures == 0


def test_criterion_03_transversal(record_property):
    rng = random.Random(33)
    crossed_ok = 0
    for _ in range(500):
        F = random_crossed_triple(rng)
        t = transversal_through_vertices(F)
        # two distinct vertices of the union, possibly from one member
        crossed_ok += (
            len(set(t.support)) == 2
            and all(v in F.vertices() for v in t.support)
            and all(t.hyperplane.contains(v) for v in t.support)
            and all(_meets(t.hyperplane, m) for m in F.members)
        )
    refused = 0
    for _ in range(500):
        F = random_separated_family(rng, 2)
        try:
            transversal_through_vertices(F)
        except NoTransversal:
            refused += 1
    record_property("detail", f"crossed found {crossed_ok}/500, separated refused {refused}/500")
    assert crossed_ok == 500 and refused == 500


def test_criterion_04_crossing_through_pinned_point(record_property):
    rng = random.Random(44)
    instances = []
    while len(instances) < 200:
        d = 2 if len(instances) < 150 else 3
        F = sliver_triple(rng) if d == 2 else needle_family(rng, 3)
        if classify_family(F) is not FamilyClass.LOOSE:
            continue
        x = random_in_hull(rng, F.vertices())
        instances.append((F, x, d))
    good = 0
    for F, x, d in instances:
        assert pinned_with_witness(F, x) is not None
        h = crossing_hyperplane_through_point(F, x)
        good += h.contains(x) and sum(_meets(h, m) for m in F.members) >= d
    record_property("detail", f"{good}/200 hyperplanes through x crossing >= d members (150 d=2, 50 d=3)")
    assert good == 200


def test_criterion_05_karasev_floor(record_property):
    worst = None
    for seed in range(50):
        colors = [random_pointset(4, seed=5000 + 3 * seed + i, span=10**4) for i in range(3)]
        res = colorful_deepest(colors)
        pts = [p for c in colors for p in c.points]
        recount = sum(
            1
            for a, b, c in product(range(4), range(4, 8), range(8, 12))
            if point_in_simplex(res.point, Simplex([pts[a], pts[b], pts[c]]), "closed")
        )
        assert res.mode == "closed" and recount == res.pierced_count
        worst = recount if worst is None else min(worst, recount)
    record_property("detail", f"50 instances, minimum closed colorful depth {worst} (floor 11)")
    assert worst >= 11


def test_criterion_06_selection_soundness(record_property):
    case1 = 0
    for seed in range(30):
        P = random_pointset(12, seed=600 + seed)
        E = list(combinations(range(12), 3))
        if seed % 2:
            E = sorted(random.Random(seed).sample(E, len(E) // 2))
        res, trace = select_point(P, E, seed=seed)
        assert res.pierced_count == _recount(P, E, res.point)
        assert res.pierced_count <= brute_force_deepest(P, E).pierced_count
        last = trace.levels[-1]
        if last.case == "TightPigeonhole":
            case1 += 1
            assert last.verified and len(trace.levels) == 1
            # rebuild the partition and the edge assignment independently
            Pi = build_partition(P, last.r, seed)
            owner = Pi.cell_of()
            assigned = [e for e in E if tuple(sorted({owner[i] for i in e})) == tuple(last.family)]
            assert assigned and len(assigned) == last.load
            assert all(point_in_simplex(res.point, Simplex([P[i] for i in e]), "open") for e in assigned)
    record_property("detail", f"30 instances sound, {case1} ended in Case 1 with every assigned edge pierced")
    assert case1 > 0


def test_criterion_07_first_selection(record_property):
    cfg = json.loads((GOLDEN / "config.json").read_text())["first_selection"]
    c0 = Fr(cfg["c0"])
    threshold = c0 * comb(15, 3)
    worst = None
    for seed in range(1000, 1030):
        P = random_pointset(15, seed=seed)
        E = list(combinations(range(15), 3))
        depth = brute_force_deepest(P, E).pierced_count
        worst = depth if worst is None else min(worst, depth)
    record_property("detail", f"c0={c0}, threshold {float(threshold):.1f}, minimum depth over 30 fresh seeds {worst}")
    assert worst >= threshold


@pytest.mark.parametrize("n,r", [(256, 4), (1024, 16), (4096, 64)])
def test_criterion_08_partition_invariants(n, r, record_property):
    P = random_pointset(n, seed=n + r)
    Pi = build_partition(P, r, seed=1)
    checks = check_partition(Pi)
    # independent re-check with the plain membership predicate
    m = -(-n // r)
    owners = sorted(i for p in Pi.parts for i in p.indices)
    assert owners == list(range(n)) and len(Pi.parts) == r
    for p in Pi.parts:
        if p.indices:
            assert m <= len(p.indices) < 2 * m
            assert all(point_in_simplex(P[i], p.cell, "open") for i in p.indices)
    rng = random.Random(n)
    E = [tuple(sorted(rng.sample(range(n), 3))) for _ in range(2000)]
    c = tuple_census(P, E, Pi)
    tuples_ok = c.crossed + c.loose + c.tight == comb(c.r_nonempty, 3)
    edges_ok = c.crowded + c.crossed_ambient + c.loose_ambient + c.tight_ambient == len(E)
    record_property(
        "detail",
        f"(n={n}, r={r}): {', '.join(f'{k}={v}' for k, v in checks.items())}, "
        f"tuples {c.crossed}+{c.loose}+{c.tight}=C({c.r_nonempty},3) {tuples_ok}",
    )
    assert all(checks.values()) and tuples_ok and edges_ok


@pytest.fixture(scope="module")
def uniform_4096():
    return [random_pointset(4096, seed=900 + s) for s in range(5)]


def test_criterion_09_sparsification(uniform_4096, record_property):
    rows = []
    for P in uniform_4096:
        fr = {}
        for r in (16, 64):
            c = tuple_census(P, None, build_partition(P, r, seed=1))
            fr[r] = Fr(c.crossed + c.loose, comb(c.r_nonempty, 3))
        rows.append(fr)
    wins = sum(fr[64] <= fr[16] for fr in rows)
    record_property(
        "detail",
        f"{wins}/5 seeds decrease; r=16 vs r=64: " + ", ".join(f"{float(f[16]):.3f}>{float(f[64]):.3f}" for f in rows),
    )
    assert wins == 5


def test_criterion_10_crossing_profile(uniform_4096, record_property):
    P = uniform_4096[0]
    rs = [16, 64, 256]
    maxima = [crossing_profile(build_partition(P, r, seed=1), count=10**4, seed=7).maximum for r in rs]
    exponent = crossing_exponent(rs, maxima)
    record_property("detail", f"max crossings {dict(zip(rs, maxima))}, fitted exponent {exponent:.3f} (limit 0.75)")
    assert exponent <= 0.75


def _facets(s):
    return [Simplex([v for j, v in enumerate(s.vertices) if j != k], s.dim_ambient) for k in range(len(s.vertices))]


def _turan_matrix():
    """(label, classes, relation, eps, expect_full) over halfspace, loose and constant relations."""
    hs = halfspace_relation(2)
    out = []
    for seed in range(3):
        rng = random.Random(seed)
        V1 = [Point([Fr(rng.randint(-20, 20), 10), rng.randint(0, 1000)]) for _ in range(120)]
        V2 = list(random_pointset(120, seed=100 + seed, span=1000).points)
        for eps in (Fr(1, 10), Fr(3, 10), Fr(1)):
            out.append((f"halfspace seed {seed}", [V1, V2], hs, eps, False))
    # every u lies far above every y: the halfspace relation is complete
    rng = random.Random(9)
    V1 = [Point([Fr(rng.randint(-5, 5), 10), 10**6 + rng.randint(0, 9)]) for _ in range(20)]
    V2 = list(random_pointset(25, seed=9, span=1000).points)
    for eps in (Fr(1, 10), Fr(3, 10), Fr(1)):
        out.append(("halfspace complete", [V1, V2], hs, eps, True))
    classes3 = [list(random_pointset(n, seed=40 + n, span=1000).points) for n in (5, 6, 7)]
    out.append(("constant complete k=3", classes3, constant_relation((2, 2, 2), True), Fr(1), True))
    lr = loose_relation(2)
    for seed in range(3):
        S = sliver_rich(2, seed)
        classes = [[encode_facet(f) for f in _facets(S[i]) + _facets(S[i + 3])] for i in range(3)]
        for eps in (Fr(1, 10), Fr(3, 10), Fr(1)):
            out.append((f"loose seed {seed}", classes, lr, eps, False))
    return out


def test_criterion_11_turan_certificates(record_property, capsys):
    blocks, refused, table = 0, 0, []
    for label, classes, rel, eps, expect_full in _turan_matrix():
        try:
            block = kpartite_turan(classes, rel, eps, seed=1)
        except DensityTooLow:
            refused += 1
            assert not expect_full
            continue
        blocks += 1
        chosen = [[classes[i][j] for j in sub] for i, sub in enumerate(block.subsets)]
        assert block.complete and all(chosen)
        assert all(eval_relation(rel, t) for t in product(*chosen))
        if expect_full:
            assert block.subsets == [list(range(len(c))) for c in classes]
        if len(classes) == 2:
            scale = eps**3 * len(classes[0]) * len(classes[1])
            table.append((label, eps, block.size_product, scale))
    const = fit_constant([float(s) for *_, s in table], [p for _, _, p, _ in table])
    with capsys.disabled():
        print("\ndensity scaling: relation, eps, size product, size / (eps^3 |V1||V2|)")
        for label, eps, prod_, scale in table:
            print(f"  {label:22s} {str(eps):5s} {prod_:6d} {float(prod_ / scale):10.3f}")
        print(f"  fitted constant {const:.3f}")
    record_property(
        "detail", f"{blocks} blocks verified complete exhaustively, {refused} refused for density, constant {const:.3f}"
    )
    assert blocks > 0 and const > 0


@pytest.mark.parametrize("k", [2, 3])
def test_criterion_12_pinning(k, record_property):
    found = 0
    for seed in range(3):
        simplices = sliver_rich(k, seed)
        res = pinning_pipeline(simplices, seed=1)
        assert res.families
        for fam in res.families:
            F = Family([simplices[i] for i in fam])
            assert classify_family(F) is FamilyClass.LOOSE
            assert pinned_with_witness(F, res.point) is not None
        found += len(res.families)
    record_property("detail", f"r={3 * k}: 3/3 inputs pinned, {found} families all loose and pinned")


def test_criterion_13_extremal_counts(record_property):
    for n in range(3, 15):
        for seed in range(3):
            P = random_pointset(n, seed=1300 + 10 * n + seed, span=10**4)
            assert {tuple(s) for s in halving_count(P).subsets} == halving_pairs_sweep(P)
    for n in (4, 6, 8, 10):
        assert halving_count(convex_position(n)).count == n // 2
    for n in range(3, 10):
        P = random_pointset(n, seed=1400 + n, span=10**4)
        for k in range(1, n):
            assert kset_count(P, k).count == kset_count(P, n - k).count
    square = PointSet.of([Point(p) for p in [(0, 0), (4, 1), (5, 5), (1, 4)]])
    values = (kset_count(square, 1).count, kset_count(square, 2).count)
    record_property("detail", f"sweep agreement n=3..14, convex n/2, k-set symmetry, 4-point (k=1,k=2)={values}")
    assert values == (4, 4)


def test_criterion_14_determinism(tmp_path, record_property):
    cmds = write_cli_inputs(tmp_path / "in")
    assert set(cmds) == set(COMMANDS)
    for name, argv in cmds.items():
        payloads = []
        for run in range(2):
            out = tmp_path / f"{name}_{run}"
            assert main(argv + ["--out", str(out)]) == 0, name
            data = json.loads((out / f"{name}.json").read_text())
            data.pop("timestamp")
            payloads.append(data)
        assert payloads[0] == payloads[1], name
    record_property("detail", f"{len(cmds)} commands, identical payloads on repeat")
