"""Time the compiled kernels against the pure-Python fallback.

Each workload runs on both backends with identical inputs; the script checks
that the results agree and prints the best-of-N wall time and the speedup.
A final end-to-end row runs the exact depth oracle under each backend in a
subprocess, since the backend is fixed at import.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from pointsel import _fallback
from pointsel.errors import DegenerateSupport
from pointsel.geometry import simplex_functionals

try:
    from pointsel import _kernels as compiled
except ImportError:
    sys.exit("the compiled extension is not built; run `pip install -e . --no-build-isolation`")


def homs(rng, n, d, span=10**6):
    return [(1, *[rng.randrange(span) for _ in range(d)]) for _ in range(n)]


def workloads(rng):
    pts = homs(rng, 3000, 2)
    triples = [pts[i : i + 3] for i in range(0, 2997)]
    funcs = []
    while len(funcs) < 400:
        try:
            funcs.append(simplex_functionals(homs(rng, 3, 2)))
        except DegenerateSupport:
            continue
    queries = [[q] for q in homs(rng, 50, 2)]
    cells = [homs(rng, 3, 2) for _ in range(256)]
    lines = [(rng.randrange(-(10**6), 10**6), rng.randrange(-100, 100), rng.randrange(-100, 100)) for _ in range(200)]
    families = [[homs(rng, 3, 2, 1000) for _ in range(3)] for _ in range(300)]

    def orient(impl):
        return [impl.orient_sign(t) for t in triples]

    def sides(impl):
        return [impl.side_counts(h, pts) for h in lines[:40]]

    def scan(impl):
        return [impl.family_scan(m) for m in families]

    def simplices(impl):
        packed = impl.PackedSimplices(funcs)
        return [packed.count(q, True) for q in queries]

    def crossings(impl):
        packed = impl.PackedCells(cells)
        return [packed.crossed_count(h) for h in lines]

    return {
        "orient_sign x2997": orient,
        "side_counts 40x3000": sides,
        "family_scan x300": scan,
        "PackedSimplices 400x50": simplices,
        "PackedCells 256x200": crossings,
    }


ORACLE_SNIPPET = """
import time, sys
sys.path.insert(0, {tests!r})
from itertools import combinations
from helpers import random_pointset
from pointsel.selection import brute_force_deepest
P = random_pointset(13, seed=3)
E = list(combinations(range(13), 3))
t = time.perf_counter()
r = brute_force_deepest(P, E)
print(time.perf_counter() - t, r.pierced_count)
"""


def oracle_time(pure):
    env = dict(os.environ)
    env.pop("POINTSEL_PURE", None)
    if pure:
        env["POINTSEL_PURE"] = "1"
    tests = os.path.join(os.path.dirname(os.path.abspath(__file__)), os.pardir, "tests")
    out = subprocess.run(
        [sys.executable, "-c", ORACLE_SNIPPET.format(tests=tests)], env=env, capture_output=True, text=True, check=True
    )
    seconds, count = out.stdout.split()
    return float(seconds), int(count)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = random.Random(0)
    print(f"{'workload':26s} {'fallback s':>11s} {'compiled s':>11s} {'speedup':>8s}")
    for name, fn in workloads(rng).items():
        if fn(compiled) != fn(_fallback):
            sys.exit(f"backends disagree on {name}")
        slow = min(timeit.repeat(lambda: fn(_fallback), number=1, repeat=args.repeat))
        fast = min(timeit.repeat(lambda: fn(compiled), number=1, repeat=args.repeat))
        print(f"{name:26s} {slow:11.4f} {fast:11.4f} {slow / fast:7.1f}x")

    slow, c1 = oracle_time(pure=True)
    fast, c2 = oracle_time(pure=False)
    if c1 != c2:
        sys.exit("backends disagree on the depth oracle")
    print(f"{'depth oracle n=13 (e2e)':26s} {slow:11.4f} {fast:11.4f} {slow / fast:7.1f}x")


if __name__ == "__main__":
    main()
