"""Deterministic corpus of rings, polynomials and ideals for property tests."""
from __future__ import annotations

import random
from pathlib import Path
from functools import lru_cache

from toricnl.cox import CoxRing, Poly
from toricnl.fan import hirzebruch, product_of_lines, projective_space, validate_fan, weighted_projective_plane
from toricnl.hodge import jacobian_ideal, singular_locus_ideal, toric_jacobian_ideal
from toricnl.ideals import GradedIdeal


@lru_cache(maxsize=None)
def rings() -> dict[str, CoxRing]:
    fake = validate_fan([(-1, -1), (2, -1), (-1, 2)], [(0, 1), (1, 2), (0, 2)], 2)
    return {
        "p2": CoxRing(projective_space(2)),
        "p3": CoxRing(projective_space(3)),
        "p121": CoxRing(weighted_projective_plane(1, 2)),
        "p1xp1": CoxRing(product_of_lines()),
        "f1": CoxRing(hirzebruch(1)),
        "fake_p2": CoxRing(fake),
    }


# (ring, degree) pairs that are ample enough to give curves/surfaces
DEGREES = {
    "p2": [[2], [3], [4]],
    "p3": [[2], [3], [4]],
    "p121": [[2], [4]],
    "p1xp1": [[1, 1], [2, 2], [2, 1]],
    "f1": [[2, 1], [3, 2]],
    "fake_p2": [([3], [0]), ([3], [1])],
}


def sparse_poly(ring: CoxRing, alpha, seed: int, density: float) -> Poly | None:
    rng = random.Random(seed)
    basis = ring.basis(alpha)
    terms = {m: rng.choice([-3, -2, -1, 1, 2, 3]) for m in basis if rng.random() < density}
    if not terms:
        return None
    return Poly(ring, terms, alpha)


def _alpha(ring, entry):
    if isinstance(entry, tuple):
        return ring.cl.make(*entry)
    return ring.cl.make(entry)


@lru_cache(maxsize=None)
def polys() -> list[tuple[str, Poly]]:
    out = []
    seed = 0
    for name in sorted(DEGREES):
        ring = rings()[name]
        for entry in DEGREES[name]:
            alpha = _alpha(ring, entry)
            for density in (0.35, 1.0):
                seed += 1
                f = sparse_poly(ring, alpha, seed, density)
                if f is not None:
                    out.append((f"{name}:{alpha}:{seed}", f))
    return out


@lru_cache(maxsize=None)
def ideals() -> list[tuple[str, GradedIdeal]]:
    """At least 50 ideals: Jacobian, singular-locus and toric-Jacobian ideals plus monomial ones."""
    out = []
    for label, f in polys():
        out.append((f"J({label})", jacobian_ideal(f)))
        out.append((f"Sing({label})", singular_locus_ideal([f])))
        out.append((f"J0({label})", GradedIdeal(f.ring, [f]) + toric_jacobian_ideal(f)))
    # ideals with a constant generator are not inside B; they have their own test
    out = [(label, i) for label, i in out if not i.has_unit()]
    for name, ring in sorted(rings().items()):
        for k in (2, 3):
            gens = [ring.monomial([k * int(i == j) for j in range(ring.nvars)]) for i in range(ring.nvars)]
            out.append((f"powers{k}({name})", GradedIdeal(ring, gens)))
            out.append((f"powers{k}-1({name})", GradedIdeal(ring, gens[1:])))
    return out


DATA = Path(__file__).parent / "data"


def _fan(name: str) -> str:
    return str(DATA / "fans" / f"{name}.json")


def _poly(name: str) -> str:
    return str(DATA / "polys" / f"{name}.txt")


def _ideal(name: str) -> str:
    return str(DATA / "ideals" / f"{name}.json")


# (label, argv, schema name, expected exit code); every subcommand appears
CLI_CASES = [
    ("fan-p2", ["fan", "check", "--fan", _fan("p2")], "fan_check", 0),
    ("fan-f1", ["fan", "check", "--fan", _fan("f1")], "fan_check", 0),
    ("fan-broken", ["fan", "check", "--fan", _fan("broken")], "error", 1),
    ("fan-nonprimitive", ["fan", "check", "--fan", _fan("nonprimitive")], "error", 1),
    ("cl-p2", ["classgroup", "--fan", _fan("p2")], "classgroup", 0),
    ("cl-p121", ["classgroup", "--fan", _fan("p121")], "classgroup", 0),
    ("cl-fake", ["classgroup", "--fan", _fan("fake_p2")], "classgroup", 0),
    ("basis-p121", ["basis", "--fan", _fan("p121"), "--degree", "2"], "basis", 0),
    ("basis-f1", ["basis", "--fan", _fan("f1"), "--degree", "2,1"], "basis", 0),
    ("oda-p3", ["oda", "--fan", _fan("p3"), "--pair", "1", "1"], "oda", 0),
    ("oda-p121", ["oda", "--fan", _fan("p121"), "--pair", "1", "1", "--no-enforce"], "oda", 2),
    ("oda-p121-enforced", ["oda", "--fan", _fan("p121"), "--pair", "1", "1"], "error", 1),
    ("qs-fermat4", ["quasismooth", "--fan", _fan("p3"), "--poly", _poly("fermat4")], "certificate", 0),
    ("qs-cone4", ["quasismooth", "--fan", _fan("p3"), "--poly", _poly("cone4")], "certificate", 2),
    ("qs-inconclusive", ["quasismooth", "--fan", _fan("p3"), "--poly", _poly("fermat4"), "--m-max", "1"],
     "certificate", 3),
    ("nd-fermat4", ["nondegenerate", "--fan", _fan("p3"), "--poly", _poly("fermat4")], "certificate", 0),
    ("nd-x0x1", ["nondegenerate", "--fan", _fan("p2"), "--poly", "x0*x1"], "certificate", 2),
    ("hodge-k3", ["hodge", "hypersurface", "--fan", _fan("p3"), "--poly", _poly("fermat4"), "--index", "1"],
     "hodge", 0),
    ("hodge-cubic", ["hodge", "hypersurface", "--fan", _fan("p2"), "--poly", _poly("fermat3"), "--index", "1"],
     "hodge", 0),
    ("hodge-22", ["hodge", "intersection", "--fan", _fan("p3"), "--poly", _poly("generic_quadric_a_p3"),
                  "--poly", _poly("generic_quadric_b_p3"), "--p", "3"], "hodge", 0),
    ("hodge-excluded", ["hodge", "intersection", "--fan", _fan("p3"), "--generic", "2", "--generic", "2",
                        "--p", "2"], "error", 1),
    ("gor-squares", ["gorenstein", "--fan", _fan("p2"), "--ideal", _ideal("squares_p2"), "--socle", "3"],
     "gorenstein", 0),
    ("gor-two-squares", ["gorenstein", "--fan", _fan("p2"), "--ideal", _ideal("two_squares_p2"),
                         "--socle", "2"], "gorenstein", 2),
    ("gor-fermat4", ["gorenstein", "--fan", _fan("p3"), "--ideal", _ideal("fermat4_toric_jacobian"),
                     "--socle", "12"], "gorenstein", 0),
    ("nl-p3", ["nl", "--fan", _fan("p3"), "--beta", "5", "--eta", "1", "--k", "1",
               "--oda-pair", "1", "1", "--deg-v", "1", "--delta", "1/16"], "nl", 0),
    ("step1", ["step1", "--a", "3", "--b", "2", "--k", "2"], "step1", 0),
    ("bounds", ["bounds", "--r", "4", "--k", "1", "--d", "2", "--m", "4"], "bounds", 0),
    ("bounds-degenerate", ["bounds", "--r", "2", "--k", "1"], "error", 1),
]
