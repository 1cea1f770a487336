"""Print primitive middle Hodge numbers for the polynomial corpus.

Each row is one index of one hypersurface or complete intersection from
tests/data/polys, computed from the Jacobian ring (through the Cayley ring for
intersections).  Quasi-smoothness is not certified here; use the CLI for that.
"""
import argparse
import json
from pathlib import Path

from toricnl.cox import CoxRing, parse_poly
from toricnl.fan import load_fan
from toricnl.hodge import excluded_indices, hypersurface_prim_hodge, intersection_prim_hodge

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"

# label: (fan file, polynomial files)
VARIETIES = {
    "Fermat plane cubic": ("p2.json", ["fermat3"]),
    "generic plane cubic": ("p2.json", ["generic_cubic_p2"]),
    "Fermat quartic K3": ("p3.json", ["fermat4"]),
    "generic quartic K3": ("p3.json", ["generic_quartic_p3"]),
    "quartic in P(1,2,1)": ("p121.json", ["generic_quartic_p121"]),
    "(2,2) curve in P1xP1": ("p1xp1.json", ["generic_bidegree22_p1xp1"]),
    "quintic threefold": ("p4.json", ["generic_quintic_p4"]),
    "(2,2) curve in P3": ("p3.json", ["generic_quadric_a_p3", "generic_quadric_b_p3"]),
    "(3,3) threefold in P5": ("p5.json", ["generic_cubic_a_p5", "generic_cubic_b_p5"]),
}


def rows(max_dim: int):
    for label, (fan_file, names) in VARIETIES.items():
        ring = CoxRing(load_fan(DATA / "fans" / fan_file))
        polys = [parse_poly((DATA / "polys" / f"{n}.txt").read_text(), ring) for n in names]
        d, s = ring.fan.dim, len(polys)
        for p in range(s, d + 1):
            if p in excluded_indices(d, s):
                continue
            if s == 1:
                target = (d + 1 - p) * polys[0].degree - ring.anticanonical()
                if ring.dim(target) > max_dim:
                    yield label, (p - 1, d - p), None
                    continue
                rep = hypersurface_prim_hodge(polys[0], p - 1, certify=False)
            else:
                rep = intersection_prim_hodge(polys, p, certify=False)
            yield label, rep.index_pair, rep.dimension


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-dim", type=int, default=800,
                    help="skip graded pieces with more monomials than this")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    table = [(label, pair, dim) for label, pair, dim in rows(args.max_dim)]
    if args.json:
        print(json.dumps([{"variety": l, "index": list(p), "dimension": d} for l, p, d in table], indent=2))
        return
    width = max(len(label) for label, _, _ in table)
    for label, (a, b), dim in table:
        shown = "skipped" if dim is None else str(dim)
        print(f"{label.ljust(width)}  h^{{{a},{b}}}_prim = {shown}")


if __name__ == "__main__":
    main()
