"""Calibrate the first-selection constant c0 for d=2, n=15, E = all triples.

Runs the exact depth oracle on uniform, near-convex and clustered point sets
and prints the smallest observed ratio depth / C(15, 3).  The acceptance
threshold in tests/golden/config.json was frozen below this minimum.
"""

import math
import random
import sys
from fractions import Fraction
from itertools import combinations
from math import comb
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from helpers import random_pointset  # noqa: E402
from pointsel.geometry import Point, PointSet  # noqa: E402
from pointsel.selection import brute_force_deepest  # noqa: E402

N = 15


def instance(seed: int) -> PointSet:
    rng = random.Random(seed)
    kind = seed % 3
    while True:
        if kind == 0:
            return random_pointset(N, seed=seed, span=10**4)
        if kind == 1:
            # points near a circle, jittered
            pts = []
            for _ in range(N):
                t = rng.random() * 2 * math.pi
                pts.append(Point([int(5000 + 4000 * math.cos(t)) + rng.randint(-80, 80), int(5000 + 4000 * math.sin(t)) + rng.randint(-80, 80)]))
        else:
            centers = [(rng.randrange(10**4), rng.randrange(10**4)) for _ in range(3)]
            pts = [Point([cx + rng.randint(-300, 300), cy + rng.randint(-300, 300)]) for cx, cy in (rng.choice(centers) for _ in range(N))]
        P = PointSet.of(pts)
        if P.generic:
            return P
        seed += 1000


def main(count: int = 30) -> Fraction:
    E = list(combinations(range(N), 3))
    worst = None
    for seed in range(count):
        depth = brute_force_deepest(instance(seed), E).pierced_count
        ratio = Fraction(depth, comb(N, 3))
        worst = ratio if worst is None else min(worst, ratio)
        print(f"seed {seed:2d} kind {seed % 3} depth {depth} ratio {float(ratio):.4f}", flush=True)
    print(f"minimum ratio {worst} = {float(worst):.4f}")
    return worst


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 30)
