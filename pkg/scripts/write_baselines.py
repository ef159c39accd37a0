"""Record regression baselines through the CLI's --write-baseline mode.

Each value is first recomputed by the brute-force oracle in tests/oracles.py;
the script refuses to write if the two disagree.

    python scripts/write_baselines.py [--out tests/fixtures/baselines.json]
"""

import argparse
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

import oracles  # noqa: E402
from inertia.cli import main as cli  # noqa: E402
from inertia.gcomplex import load_gcomplex, total_inertia_homology  # noqa: E402
from inertia.simplicial import nerve_homology  # noqa: E402
from inertia.zoo import parse_zoo  # noqa: E402

COMPLEX = ROOT / "src" / "inertia" / "data" / "complexes" / "triangle_s3.json"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(ROOT / "tests" / "fixtures" / "baselines.json"))
    out = ap.parse_args().out
    for name in ("sym:3", "quaternion_generalized:3"):
        G = parse_zoo(name)
        want = oracles.inertia_nerve_betti(G, 3)
        got = nerve_homology(G, "inertia", None, 3, "Q").betti()
        if want != got:
            sys.exit(f"{name}: oracle {want} != computed {got}; not writing")
        rc = cli(["nerve-homology", "--zoo", name, "--nerve", "inertia", "--max-degree", "3",
                  "--ring", "Q", "--no-cache", "--write-baseline", out])
        if rc:
            sys.exit(rc)
    X = load_gcomplex(COMPLEX)
    want = oracles.diagonal_betti(X, 2)
    got = total_inertia_homology(X, 2).betti()
    if want != got:
        sys.exit(f"triangle_s3: oracle {want} != computed {got}; not writing")
    rc = cli(["total-homology", "--complex", str(COMPLEX), "--max-degree", "2",
              "--no-cache", "--write-baseline", out])
    sys.exit(rc)


if __name__ == "__main__":
    main()
