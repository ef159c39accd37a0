"""Command-line entry point.

Printed JSON holds only operation, inputs and results, so repeated runs are
byte-identical; timing and the cache-hit flag go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .ages import (AGE_NORMALIZATION, RepresentationError, age_table, default_rep,
                   load_rep, tuple_age_all_orders, tuple_age_flag)
from .cache import ResultCache, cache_key, default_cache_dir, dumps, to_jsonable
from .characters import CharacterError, artin_check, character_table, galois_orbits_of_rows, orthogonality
from .gcomplex import (GComplexError, QuotientMismatch, SubdividedModel, euler_consistency,
                       load_gcomplex, sector_table, total_inertia_homology)
from .groups import CapExceeded, GroupError, conjugacy_classes, load_group
from .simplicial import comparison_homology_map, nerve_homology
from .tuples import (Limits, count_commuting_tuples, fiber_product_check, gl_orbits,
                     hkr_rank, rational_classes, tuple_classes)
from .zoo import NAMES, parse_zoo, standard_zoo

EXIT_OK, EXIT_INVALID, EXIT_CAP = 0, 2, 3


class InvalidInput(ValueError):
    pass


@dataclass
class Report:
    operation: str
    inputs: dict
    results: object
    timing: float = 0.0
    cache_hit: bool = False
    meta: dict = field(default_factory=dict)

    def to_json(self):
        return {"operation": self.operation, "inputs": self.inputs, "results": self.results}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["operation"], obj["inputs"], obj["results"])


# ---- input resolution ------------------------------------------------------------

def resolve_group(args, required=True):
    if args.group and args.zoo:
        raise InvalidInput("give at most one of --group and --zoo")
    if args.group:
        return load_group(Path(args.group))
    if args.zoo:
        return parse_zoo(args.zoo)
    if required:
        raise InvalidInput("a group is required (--group FILE or --zoo NAME)")
    return None


def _complex(args):
    if not args.complex:
        raise InvalidInput("--complex FILE is required")
    X = load_gcomplex(args.complex, group=resolve_group(args, required=False))
    params = {"complex": {"vertices": X.vertex_count,
                          "maximal_simplices": [sorted(s) for s in X.maximal_simplices],
                          "generator_vertex_maps": X.generator_vertex_maps}}
    return X, params


def _rep(args, G):
    if args.rep:
        rho = load_rep(args.rep, group=G)
    else:
        if G is None:
            raise InvalidInput("--rep FILE or a group with a built-in representation is required")
        rho = default_rep(G)
    params = {"rep": rho.to_json()}
    return rho, params


def _need(value, flag):
    if value is None:
        raise InvalidInput(f"{flag} is required")
    return value


# ---- operations: each returns (group, params, compute) ------------------------------

def op_classes(args, limits):
    G = resolve_group(args)

    def run():
        return {"count": len(conjugacy_classes(G)),
                "classes": [{"representative": c.representative, "size": c.size,
                             "order": int(G.element_orders[c.representative]),
                             "centralizer_order": c.centralizer_order}
                            for c in conjugacy_classes(G)]}
    return G, {}, run


def op_tuples(args, limits):
    G = resolve_group(args)
    n = _need(args.n, "--n")

    def run():
        level = tuple_classes(G, n, args.p, limits)
        return {"count": count_commuting_tuples(G, n, args.p), "classes": len(level),
                "representatives": level.representatives(),
                "orbit_sizes": [c.orbit_size for c in level.classes]}
    return G, {"n": n, "p": args.p}, run


def op_hkr(args, limits):
    G = resolve_group(args)
    n, p = _need(args.n, "--n"), _need(args.p, "--p")
    return G, {"n": n, "p": p}, lambda: {"rank": hkr_rank(G, n, p, limits)}


def op_gl(args, limits):
    G = resolve_group(args)
    n, p = _need(args.n, "--n"), _need(args.p, "--p")

    def run():
        reps = tuple_classes(G, n, p, limits).representatives()
        orbits = gl_orbits(G, n, p, limits=limits)
        return {"count": len(orbits), "orbits": orbits, "representatives": reps}
    return G, {"n": n, "p": p}, run


def op_rational(args, limits):
    G = resolve_group(args)

    def run():
        classes = conjugacy_classes(G)
        orbits = rational_classes(G)
        return {"count": len(orbits),
                "orbits": [[classes[i].representative for i in o] for o in orbits]}
    return G, {}, run


def op_fiber(args, limits):
    G = resolve_group(args)
    n = _need(args.n, "--n")
    return G, {"n": n}, lambda: fiber_product_check(G, n)


def op_homology(args, limits):
    G = resolve_group(args)
    params = {"nerve": args.nerve, "p": args.p, "max_degree": args.max_degree,
              "ring": args.ring}

    def run():
        res = nerve_homology(G, args.nerve, args.p, args.max_degree, args.ring, limits)
        return {"ring": args.ring, "groups": res.to_json()}
    return G, params, run


def op_compare(args, limits):
    G = resolve_group(args)
    params = {"max_degree": args.max_degree, "ring": args.ring}
    return G, params, lambda: comparison_homology_map(G, args.max_degree, args.ring, limits)


def op_sectors(args, limits):
    X, params = _complex(args)
    n = _need(args.n, "--n")
    params["n"] = n
    return X.group, params, lambda: sector_table(X, n, limits).to_json()


def op_total(args, limits):
    X, params = _complex(args)
    params["max_degree"] = args.max_degree

    def run():
        res = total_inertia_homology(X, args.max_degree, limits)
        return {"ring": "Q", "groups": res.to_json()}
    return X.group, params, run


def op_euler(args, limits):
    X, params = _complex(args)
    return X.group, params, lambda: euler_consistency(X, SubdividedModel.of(X))


def op_chars(args, limits):
    G = resolve_group(args)

    def run():
        T = character_table(G)
        out = T.to_json()
        out["orthogonality"] = orthogonality(T)
        out["galois"] = galois_orbits_of_rows(T)
        return out
    return G, {}, run


def op_artin(args, limits):
    G = resolve_group(args)
    return G, {}, lambda: artin_check(G)


def op_ages(args, limits):
    rho, params = _rep(args, resolve_group(args, required=False))

    def run():
        return {"normalization": AGE_NORMALIZATION, "dimension": rho.dimension,
                "classes": age_table(rho)}
    return rho.group, params, run


def op_tuple_ages(args, limits):
    rho, params = _rep(args, resolve_group(args, required=False))
    n = _need(args.n, "--n")
    params.update({"n": n, "all_orders": args.all_orders})

    def run():
        rows = []
        invariant = True
        for cls in tuple_classes(rho.group, n, limits=limits).classes:
            t = cls.representative
            flag = tuple_age_flag(rho, t)
            row = {"representative": t, "total": flag["total"], "steps": flag["steps"],
                   "flag_dimensions": flag["flag_dimensions"]}
            if args.all_orders:
                alls = tuple_age_all_orders(rho, t)
                row["order_invariant"] = alls["order_invariant"]
                row["orders"] = alls["orders"]
                invariant &= alls["order_invariant"]
            rows.append(row)
        out = {"normalization": AGE_NORMALIZATION, "rows": rows}
        if args.all_orders:
            out["order_invariant"] = invariant
        return out
    return rho.group, params, run


OPS = {
    "classes": op_classes, "tuples": op_tuples, "hkr-rank": op_hkr,
    "gl-orbits": op_gl, "rational-classes": op_rational, "fiber-check": op_fiber,
    "nerve-homology": op_homology, "homology": op_homology,
    "compare-nerves": op_compare, "sectors": op_sectors, "total-homology": op_total,
    "euler-check": op_euler, "char-table": op_chars, "artin-check": op_artin,
    "ages": op_ages, "tuple-ages": op_tuple_ages,
}


# ---- parser -----------------------------------------------------------------------

def _common():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--group", help="group JSON file")
    g.add_argument("--zoo", help="zoo group, e.g. sym:4")
    g.add_argument("--format", choices=["json", "table"], default="json")
    g.add_argument("--cache-dir", help="cache directory (default $INERTIA_CACHE_DIR)")
    g.add_argument("--no-cache", action="store_true")
    g.add_argument("--threads", type=int, default=1)
    g.add_argument("--time-limit", type=float)
    g.add_argument("--tuple-cap", type=int, default=Limits().tuple_cap)
    g.add_argument("--write-baseline", metavar="FILE",
                   help="also record the results in a baseline fixture file")
    return p


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(prog="inertia",
                                     description="Inertia stacks of finite group actions.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    add("classes")
    for name in ("tuples", "hkr-rank", "gl-orbits"):
        s = add(name)
        s.add_argument("--n", type=int)
        s.add_argument("--p", type=int)
    add("rational-classes")
    add("fiber-check").add_argument("--n", type=int)
    for name in ("nerve-homology", "homology"):
        s = add(name)
        s.add_argument("--nerve", choices=["inertia", "full"], default="inertia")
        s.add_argument("--p", type=int)
        s.add_argument("--max-degree", type=int, default=4)
        s.add_argument("--ring", choices=["Z", "Q"], default="Z")
    s = add("compare-nerves")
    s.add_argument("--max-degree", type=int, default=2)
    s.add_argument("--ring", choices=["Z", "Q"], default="Q")
    s = add("sectors")
    s.add_argument("--complex")
    s.add_argument("--n", type=int, default=1)
    s = add("total-homology")
    s.add_argument("--complex")
    s.add_argument("--max-degree", type=int, default=2)
    add("euler-check").add_argument("--complex")
    add("char-table")
    add("artin-check")
    add("ages").add_argument("--rep")
    s = add("tuple-ages")
    s.add_argument("--rep")
    s.add_argument("--n", type=int)
    s.add_argument("--all-orders", action="store_true")
    s = add("zoo")
    s.add_argument("action", choices=["list", "emit"])
    s.add_argument("name", nargs="?")
    return parser


# ---- rendering ------------------------------------------------------------------------

def _cell(v):
    if isinstance(v, dict) and set(v) == {"num", "den"}:
        return str(v["num"]) if v["den"] == 1 else f"{v['num']}/{v['den']}"
    if isinstance(v, list):
        return "[" + ", ".join(_cell(x) for x in v) + "]"
    if isinstance(v, dict):
        return dumps(v)
    return str(v)


def render_table(report):
    lines = [f"# {report['operation']}  " +
             " ".join(f"{k}={_cell(v)}" for k, v in report["inputs"].items()
                      if k not in ("complex", "rep"))]

    def emit(key, value, indent=""):
        if isinstance(value, list) and value and all(isinstance(r, dict) for r in value):
            cols = list(value[0])
            lines.append(f"{indent}{key}:")
            lines.append(indent + "  " + "\t".join(cols))
            for r in value:
                lines.append(indent + "  " + "\t".join(_cell(r.get(c)) for c in cols))
        elif isinstance(value, dict) and not set(value) == {"num", "den"}:
            lines.append(f"{indent}{key}:")
            for k, v in value.items():
                emit(k, v, indent + "  ")
        else:
            lines.append(f"{indent}{key}: {_cell(value)}")

    res = report["results"]
    if isinstance(res, dict):
        for k, v in res.items():
            emit(k, v)
    else:
        emit("results", res)
    return "\n".join(lines)


def _write_baseline(path, report):
    path = Path(path)
    data = json.loads(path.read_text()) if path.exists() else {}
    key = report["operation"] + " " + json.dumps(report["inputs"], sort_keys=True,
                                                 separators=(",", ":"))
    data[key] = report["results"]
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(dict(sorted(data.items())), indent=1) + "\n")
    tmp.replace(path)


# ---- main -----------------------------------------------------------------------------

def _zoo_command(args):
    if args.action == "list":
        return {"names": NAMES, "standard": [G.name for G in standard_zoo()]}
    if not args.name:
        raise InvalidInput("zoo emit needs a NAME")
    return parse_zoo(args.name).serialize()


def execute(args):
    limits = Limits(tuple_cap=args.tuple_cap, time_limit=args.time_limit,
                    threads=max(1, args.threads))
    start = time.perf_counter()
    if args.command == "zoo":
        results = to_jsonable(_zoo_command(args))
        return Report("zoo", {"action": args.action, "name": args.name}, results,
                      time.perf_counter() - start)
    G, params, run = OPS[args.command](args, limits)
    operation = "nerve-homology" if args.command == "homology" else args.command
    inputs = {"group": G.name, **to_jsonable(params)}
    cache = None if args.no_cache else ResultCache(args.cache_dir or default_cache_dir())
    key = cache_key(G.serialize(), operation, inputs)
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return Report(operation, inputs, hit, time.perf_counter() - start, True)
    results = to_jsonable(run())
    if cache is not None:
        cache.put(key, results)
    return Report(operation, inputs, results, time.perf_counter() - start)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = execute(args)
    except CapExceeded as exc:
        partial = "" if exc.partial is None else f" (partial count {exc.partial})"
        print(f"error: cap or time limit exceeded: {exc}{partial}", file=sys.stderr)
        return EXIT_CAP
    except CharacterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP if "cap" in str(exc) else EXIT_INVALID
    except QuotientMismatch as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    except (InvalidInput, GroupError, GComplexError, RepresentationError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    out = report.to_json()
    if args.format == "json":
        print(dumps(out))
    else:
        print(render_table(out))
    if args.write_baseline:
        _write_baseline(args.write_baseline, out)
    print(f"timing: {report.timing:.3f}s cache_hit: {str(report.cache_hit).lower()}",
          file=sys.stderr)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
