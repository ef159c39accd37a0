"""Exploratory runs beyond the acceptance suite.

Three experiments, written as one exact JSON document:

* nerve homology of the inertia and full nerves over Z and Q for small zoo groups,
* the map on rational homology from the inertia nerve into the full nerve
  (nonabelian groups only),
* whether the flag age of commuting pairs depends on the order of the pair.

    python scripts/new_data.py [--max-order 24] [--max-degree 3] [--out new_data.json]
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass

from inertia.ages import builtin_reps, tuple_age_all_orders
from inertia.cache import to_jsonable
from inertia.simplicial import comparison_homology_map, nerve_homology
from inertia.tuples import Limits, tuple_classes
from inertia.zoo import standard_zoo


@dataclass
class Config:
    max_order: int = 24
    max_degree: int = 3
    compare_degree: int = 2
    compare_max_order: int = 12
    age_pairs_max_order: int = 48
    time_limit: float = 120.0
    out: str = "new_data.json"


def nerve_rows(cfg):
    rows = []
    for G in standard_zoo(cfg.max_order):
        limits = Limits(time_limit=cfg.time_limit)
        row = {"group": G.name, "order": G.order}
        for nerve in ("inertia", "full"):
            deg = cfg.max_degree if nerve == "inertia" else min(cfg.max_degree, 2)
            for ring in ("Z", "Q"):
                res = nerve_homology(G, nerve, None, deg, ring, limits)
                row[f"{nerve}_{ring}"] = res.to_json()
        rows.append(row)
    return rows


def comparison_rows(cfg):
    # for abelian G the two nerves coincide, so only nonabelian groups are run
    out = []
    for G in standard_zoo(cfg.compare_max_order):
        if G.is_abelian:
            continue
        res = comparison_homology_map(G, cfg.compare_degree, "Q")
        out.append({"group": G.name,
                    "iso_by_degree": [d["iso"] for d in res["degrees"]],
                    "dims": [(d["dim_inertia"], d["dim_full"]) for d in res["degrees"]]})
    return out


def age_order_rows(cfg):
    out = []
    for G in standard_zoo(cfg.age_pairs_max_order):
        for rho in builtin_reps(G):
            variant = []
            for cls in tuple_classes(G, 2).classes:
                r = tuple_age_all_orders(rho, cls.representative)
                if not r["order_invariant"]:
                    variant.append(r["orders"])
            out.append({"representation": rho.name, "pairs": len(tuple_classes(G, 2)),
                        "order_dependent": variant})
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    defaults = Config()
    for name, value in asdict(defaults).items():
        ap.add_argument("--" + name.replace("_", "-"), type=type(value), default=value)
    cfg = Config(**vars(ap.parse_args()))
    start = time.perf_counter()
    data = {"nerves": nerve_rows(cfg), "comparison": comparison_rows(cfg),
            "age_order": age_order_rows(cfg)}
    with open(cfg.out, "w") as fh:
        json.dump({"config": asdict(cfg), **to_jsonable(data)}, fh, indent=1)
    for row in data["nerves"]:
        tors = [g["torsion"] for g in row["inertia_Z"]]
        print(f"{row['group']:<36} inertia Q betti "
              f"{[g['betti'] for g in row['inertia_Q']]}  Z torsion {tors}")
    dependent = [r["representation"] for r in data["age_order"] if r["order_dependent"]]
    print(f"order-dependent pair ages: {dependent or 'none'}")
    print(f"wrote {cfg.out} in {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
