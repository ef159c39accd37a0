"""Run the brute-force oracles once and freeze their outputs as test fixtures.

    python scripts/freeze_oracles.py [--out tests/fixtures/derived.json]

The oracles live in tests/oracles.py and never call the optimised code.
"""

import argparse
import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

import oracles  # noqa: E402
from inertia.gcomplex import load_gcomplex  # noqa: E402
from inertia.zoo import parse_zoo, standard_zoo  # noqa: E402

COMPLEXES = ROOT / "src" / "inertia" / "data" / "complexes"
GL_CASES = [("cyclic:4", 1, 2), ("direct_product:cyclic:2+cyclic:2", 1, 2),
            ("cyclic:8", 1, 2), ("cyclic:9", 1, 3), ("cyclic:5", 1, 5),
            ("sym:3", 2, 2), ("sym:3", 1, 3), ("quaternion_generalized:3", 2, 2),
            ("dihedral:4", 2, 2), ("cyclic:9", 2, 3), ("alt:4", 2, 2)]
LOCAL_CASES = [("sym:3", 2, 2), ("sym:3", 2, 3), ("cyclic:2", 2, 2), ("alt:4", 2, 2),
               ("quaternion_generalized:3", 2, 2), ("sym:4", 1, 2), ("sym:4", 1, 3)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(ROOT / "tests" / "fixtures" / "derived.json"))
    args = ap.parse_args()
    out = {"tuple_classes": {}, "hom_z2": {}, "abelian_order_profile": {},
           "class_sizes": {}, "gl_orbits": [], "p_local": [], "diagonal_betti": {},
           "fixed_euler_pairs": {}}
    for G in standard_zoo(60):
        out["tuple_classes"][G.name] = [oracles.tuple_class_count(G, n) for n in range(4)]
    for G in standard_zoo(500):
        out["hom_z2"][G.name] = oracles.commuting_count(G, 2)
        out["class_sizes"][G.name] = oracles.conjugacy_class_sizes(G)
        prof = oracles.abelian_order_profile(G)
        out["abelian_order_profile"][G.name] = {str(k): v for k, v in sorted(prof.items())}
    for name, n, p in GL_CASES:
        out["gl_orbits"].append({"group": name, "n": n, "p": p,
                                 "orbits": oracles.gl_orbit_count(parse_zoo(name), n, p)})
    for name, n, p in LOCAL_CASES:
        G = parse_zoo(name)
        out["p_local"].append({"group": name, "n": n, "p": p,
                               "count": oracles.commuting_count(G, n, p),
                               "classes": oracles.tuple_class_count(G, n, p)})
    for f in sorted(COMPLEXES.glob("*.json")):
        X = load_gcomplex(f)
        out["diagonal_betti"][f.stem] = oracles.diagonal_betti(X, 2)
        p = oracles.pair_side_euler(X)
        out["fixed_euler_pairs"][f.stem] = [p.numerator, p.denominator]
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    Path(args.out).write_text(json.dumps(out, indent=1, sort_keys=True) + "\n")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
