"""Regenerate the seeded generic polynomials committed under tests/data/polys.

Each entry is ``name: (fan file, degree, seed)``; coefficients come from
``random_poly`` so the files are reproducible bit for bit.
"""
import argparse
from pathlib import Path

from toricnl.cox import CoxRing, random_poly
from toricnl.fan import load_fan

ROOT = Path(__file__).resolve().parent.parent / "tests" / "data"

CORPUS = {
    "generic_quartic_p3": ("p3.json", [4], 0),
    "generic_cubic_a_p5": ("p5.json", [3], 1),
    "generic_cubic_b_p5": ("p5.json", [3], 2),
    "generic_quadric_a_p3": ("p3.json", [2], 3),
    "generic_quadric_b_p3": ("p3.json", [2], 4),
    "generic_cubic_p2": ("p2.json", [3], 5),
    "generic_quintic_p4": ("p4.json", [5], 6),
    "generic_bidegree22_p1xp1": ("p1xp1.json", [2, 2], 7),
    "generic_quartic_p121": ("p121.json", [4], 8),
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=ROOT / "polys")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name, (fan_file, degree, seed) in sorted(CORPUS.items()):
        ring = CoxRing(load_fan(ROOT / "fans" / fan_file))
        f = random_poly(ring, ring.cl.make(degree), seed=seed)
        (args.out / f"{name}.txt").write_text(str(f) + "\n")
        print(f"{name}: {len(f.terms)} terms")


if __name__ == "__main__":
    main()
