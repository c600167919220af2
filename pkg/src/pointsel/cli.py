"""Command-line front end: ``pointsel <command> [flags]``.

Every command writes one JSON report holding the exact inputs, the
configuration, library versions, the results and a ``timestamp`` field
(the only field that differs between identical runs).  Exit codes: 0 on
success, 1 on domain errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import sys
from datetime import datetime, timezone
from fractions import Fraction
from itertools import combinations
from pathlib import Path

from . import __version__, kernels
from .errors import DimensionError, GeometryError, ParseError
from .extremal import halving_count, kset_count
from .family import (
    Family,
    FamilyClass,
    classify_family,
    colorful_core_oracle,
    delta_cell,
    family_to_json,
    inner_tangents,
    transversal_through_vertices,
)
from .geometry import parse_rational
from .io import dumps, load_json, parse_colors, parse_edges, parse_pointset, parse_simplices
from .partition import (
    build_partition,
    check_partition,
    colored_tuple_census,
    crossing_profile,
    same_type_extract,
    tuple_census,
)
from .selection import brute_force_deepest, colorful_deepest, pinning_pipeline, select_point
from .semialg import DEFAULT_CONSTANTS, SemiAlgRelation, TuranConstants, kpartite_turan

RANDOMIZED = {"partition", "census", "colored-census", "select", "pinning", "turan", "same-type"}

CSV_HELP = """\
CSV schemas (--emit-csv):
  classify        class
  partition       crossings,probes            (crossing histogram)
  census          edge,class,family           (one row per edge)
  colored-census  parts,centroid              (one row per tight block)
  select          level,n,edges,r,case,load   (one row per trace level)
  oracle-depth    edge                        (pierced edges)
  colorful-depth  tuple                       (pierced colorful tuples)
  pinning         family                      (parent indices per family)
  turan           class,indices
  same-type       part,indices
  halving         subset,positive,negative
  ksets           subset
"""


class UsageError(Exception):
    pass


# --- helpers ---------------------------------------------------------------------


def _need(args, name: str):
    v = getattr(args, name)
    if v is None:
        raise UsageError(f"--{name.replace('_', '-')} is required for '{args.command}'")
    return v


def _pointset(args):
    P = parse_pointset(_need(args, "input"))
    if args.dimension is not None and P.dim != args.dimension:
        raise DimensionError(f"input has dimension {P.dim}, --dimension says {args.dimension}")
    return P


def _colors(args):
    cs = parse_colors(_need(args, "colors"))
    if args.dimension is not None and any(c.dim != args.dimension for c in cs):
        raise DimensionError(f"color classes do not all have dimension {args.dimension}")
    return cs


def _edges(args, P):
    if args.edges is None:
        return [tuple(e) for e in combinations(range(len(P)), P.dim + 1)], "all"
    return parse_edges(args.edges, len(P), P.dim), args.edges


def _eps(args):
    if args.eps is None:
        return None
    try:
        return parse_rational(args.eps)
    except ParseError as exc:
        raise UsageError(f"--eps: {exc}") from exc


def _rows_csv(rows) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


# --- commands --------------------------------------------------------------------


def cmd_classify(args):
    sims = parse_simplices(_need(args, "input"))
    d = sims[0].dim_ambient
    F = Family(sims, d)
    cls = classify_family(F)
    res = {"class": cls.value}
    if cls == FamilyClass.CROSSED:
        t = transversal_through_vertices(F, require_crossed=False)
        res["transversal"] = None if t is None else {
            "hyperplane": t.hyperplane.to_json(),
            "support": [p.to_json() for p in t.support],
        }
    else:
        res["inner_tangents"] = [
            {"index": t.index, "hyperplane": t.hyperplane.to_json()} for t in inner_tangents(F)
        ]
        cell = delta_cell(F)
        res["delta_cell"] = {
            "kind": cell.kind,
            "simplex": cell.simplex.to_json() if cell.simplex is not None else None,
        }
        res["core"] = colorful_core_oracle(F).to_json()
    return {"family": family_to_json(F)}, res, [("class",), (cls.value,)]


def cmd_partition(args):
    P = _pointset(args)
    r = _need(args, "r")
    Pi = build_partition(P, r, args.seed)
    prof = crossing_profile(Pi, count=1000, seed=args.seed)
    res = {"checks": check_partition(Pi), "partition": Pi.to_json(), "crossing_profile": prof.to_json()}
    rows = [("crossings", "probes")] + sorted(prof.histogram.items())
    return {"points": P.to_json(), "generic": P.generic}, res, rows


def cmd_census(args):
    P = _pointset(args)
    E, src = _edges(args, P)
    Pi = build_partition(P, _need(args, "r"), args.seed)
    census = tuple_census(P, E, Pi)
    rows = [("edge", "class", "family")] + [
        (" ".join(map(str, e)), c, " ".join(map(str, f)))
        for e, c, f in zip(E, census.edge_class, census.edge_family)
    ]
    return {"points": P.to_json(), "edges": src}, census.to_json(), rows


def cmd_colored_census(args):
    cs = _colors(args)
    census = colored_tuple_census(cs, _need(args, "r"), args.seed)
    out = census.to_json()
    rows = [("parts", "centroid")] + [
        (" ".join(map(str, b["parts"])), " ".join(b["centroid"])) for b in out["tight_blocks"]
    ]
    return {"colors": [c.to_json() for c in cs]}, out, rows


def cmd_select(args):
    P = _pointset(args)
    E, src = _edges(args, P)
    res, trace = select_point(P, E, r=args.r, n0=args.n0, seed=args.seed)
    rows = [("level", "n", "edges", "r", "case", "load")] + [
        (i, lv.n, lv.edges, lv.r if lv.r is not None else "", lv.case, lv.load)
        for i, lv in enumerate(trace.levels)
    ]
    return (
        {"points": P.to_json(), "edges": src},
        {"depth": res.to_json(), "trace": trace.to_json()},
        rows,
    )


def cmd_oracle_depth(args):
    P = _pointset(args)
    E, src = _edges(args, P)
    res = brute_force_deepest(P, E)
    rows = [("edge",)] + [(" ".join(map(str, E[i])),) for i in res.pierced_indices]
    return {"points": P.to_json(), "edges": src}, res.to_json(), rows


def cmd_colorful_depth(args):
    cs = _colors(args)
    res = colorful_deepest(cs)
    rows = [("tuple",)] + [(" ".join(map(str, t)),) for t in res.pierced_indices]
    return {"colors": [c.to_json() for c in cs]}, res.to_json(), rows


def cmd_pinning(args):
    sims = parse_simplices(_need(args, "input"))
    res = pinning_pipeline(sims, seed=args.seed)
    rows = [("family",)] + [(" ".join(map(str, f)),) for f in res.families]
    return {"simplices": [s.to_json() for s in sims]}, res.to_json(), rows


def _constants(args) -> TuranConstants:
    if args.constants is None:
        return DEFAULT_CONSTANTS
    data = load_json(args.constants)
    if not isinstance(data, dict):
        raise UsageError("--constants must hold a JSON object")
    try:
        return TuranConstants.from_json(data)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"--constants: {exc}") from exc


def cmd_turan(args):
    cs = _colors(args)
    rel_obj = load_json(_need(args, "relation"))
    try:
        rel = SemiAlgRelation.from_json(rel_obj)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"{args.relation}: malformed relation ({exc})") from exc
    eps = _eps(args)
    if eps is None:
        eps = Fraction(0)
    block = kpartite_turan([c.points for c in cs], rel, eps, seed=args.seed, constants=_constants(args))
    rows = [("class", "indices")] + [(i, " ".join(map(str, w))) for i, w in enumerate(block.subsets)]
    inputs = {"classes": [c.to_json() for c in cs], "relation": rel.to_json()}
    return inputs, block.to_json(), rows


def cmd_same_type(args):
    P = _pointset(args)
    res = same_type_extract(P, _need(args, "k"), r_override=args.r, seed=args.seed)
    rows = [("part", "indices")] + [(i, " ".join(map(str, s))) for i, s in enumerate(res.subsets)]
    return {"points": P.to_json()}, res.to_json(), rows


def cmd_halving(args):
    P = _pointset(args)
    rep = halving_count(P)
    return {"points": P.to_json(), "generic": P.generic}, rep.to_json(), list(rep.csv_rows())


def cmd_ksets(args):
    P = _pointset(args)
    rep = kset_count(P, _need(args, "k"))
    return {"points": P.to_json(), "generic": P.generic}, rep.to_json(), list(rep.csv_rows())


COMMANDS = {
    "classify": cmd_classify,
    "partition": cmd_partition,
    "census": cmd_census,
    "colored-census": cmd_colored_census,
    "select": cmd_select,
    "oracle-depth": cmd_oracle_depth,
    "colorful-depth": cmd_colorful_depth,
    "pinning": cmd_pinning,
    "turan": cmd_turan,
    "same-type": cmd_same_type,
    "halving": cmd_halving,
    "ksets": cmd_ksets,
}


# --- entry point -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="pointsel",
        description="Exact point selection, simplicial partitions and extremal counts.",
        epilog=CSV_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--input", help="point-set file ('sample' for the bundled 12 points), or simplices file")
    p.add_argument("--edges", help="edge file; default is every (d+1)-subset")
    p.add_argument("--colors", help="color-class file (list of point sets)")
    p.add_argument("--relation", help="relation file for 'turan'")
    p.add_argument("--dimension", type=int, help="expected dimension of the inputs")
    p.add_argument("--r", type=int, help="partition parameter")
    p.add_argument("--k", type=int, help="k for 'ksets' and 'same-type'")
    p.add_argument("--eps", help="density threshold as a rational string, e.g. 3/10")
    p.add_argument("--seed", type=int, help="seed (mandatory for randomized commands)")
    p.add_argument("--n0", type=int, help="base-case size for 'select'")
    p.add_argument("--threads", type=int, default=1, help="worker cap (computation is sequential)")
    p.add_argument("--out", help="directory for <command>.json (default: stdout)")
    p.add_argument("--emit-csv", action="store_true", help="also write <command>.csv next to the report")
    p.add_argument("--constants", help="JSON file overriding extraction constants")
    return p


def _config(args) -> dict:
    cfg = {}
    for key in ("input", "edges", "colors", "relation", "dimension", "r", "k", "eps", "seed", "n0",
                "threads", "constants"):
        v = getattr(args, key)
        if v is not None:
            cfg[key] = v
    return cfg


def run(args) -> int:
    if args.command in RANDOMIZED and args.seed is None:
        raise UsageError(f"--seed is mandatory for '{args.command}'")
    if args.threads is not None and args.threads < 1:
        raise UsageError("--threads must be positive")
    inputs, results, rows = COMMANDS[args.command](args)
    report = {
        "command": args.command,
        "config": _config(args),
        "inputs": inputs,
        "results": results,
        "versions": {
            "pointsel": __version__,
            "python": ".".join(map(str, sys.version_info[:3])),
            "kernel_backend": kernels.BACKEND,
        },
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    text = dumps(report)
    if args.out is None:
        sys.stdout.write(text)
        if args.emit_csv and rows:
            sys.stdout.write(_rows_csv(rows))
        return 0
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / f"{args.command}.json").write_text(text)
    if args.emit_csv and rows:
        (out / f"{args.command}.csv").write_text(_rows_csv(rows))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return run(args)
    except UsageError as exc:
        print(f"pointsel: usage error: {exc}", file=sys.stderr)
        return 2
    except (FileNotFoundError, IsADirectoryError) as exc:
        print(f"pointsel: {exc}", file=sys.stderr)
        return 2
    except GeometryError as exc:
        print(f"pointsel: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
