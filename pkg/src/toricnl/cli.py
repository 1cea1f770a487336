"""Command-line entry point: ``toricnl <command> [options]``.

Exit codes: 0 verified/computed, 2 refuted or failed, 3 inconclusive,
1 usage or input error.  Reports go to stdout as canonical JSON (sorted keys)
or as a flat ``key  value`` table with the same content.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from . import asymptotics as nl
from .cox import CoxRing, format_monomial, multiplication_surjective, parse_poly, random_poly
from .errors import ParseError, ToricError
from .fan import load_fan, poincare_polynomial
from .grading import ClassGroup, DivisorClass, support_certificate
from .hodge import (
    hypersurface_prim_hodge,
    intersection_prim_hodge,
    jacobian_ideal,
    nondegeneracy_certificate,
    quasi_smooth_certificate,
)
from .ideals import GradedIdeal, verify_cox_gorenstein

EXIT_OK, EXIT_ERROR, EXIT_REFUTED, EXIT_INCONCLUSIVE = 0, 1, 2, 3

_STATUS_EXIT = {
    "Verified": EXIT_OK,
    "CoxGorenstein": EXIT_OK,
    "Surjective": EXIT_OK,
    "Refuted": EXIT_REFUTED,
    "ConditionsFailed": EXIT_REFUTED,
    "NotSurjective": EXIT_REFUTED,
    "Inconclusive": EXIT_INCONCLUSIVE,
    "EmptinessInconclusive": EXIT_INCONCLUSIVE,
}


@dataclass
class JobConfig:
    """Resolved options of one CLI invocation."""

    command: str
    fan_path: str | None = None
    poly_inputs: list[str] = field(default_factory=list)
    classes: dict[str, Any] = field(default_factory=dict)
    m_max: int = 20
    max_piece: int | None = 1000
    output_format: str = "json"
    seed: int = 0
    jobs: int = 1
    trace: bool = False

    def __post_init__(self):
        if self.m_max < 1:
            raise ValueError("--m-max must be >= 1")
        if self.jobs < 1:
            raise ValueError("--jobs must be >= 1")


class UsageError(ToricError):
    pass


# input helpers -----------------------------------------------------------------


def parse_class(text: str, cl: ClassGroup) -> DivisorClass:
    """``{"free": [..], "torsion": [..]}`` or a comma list of free coordinates
    (optionally in brackets)."""
    text = text.strip()
    if text.startswith("[") and text.endswith("]"):
        text = text[1:-1]
    if text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad class literal {text!r}: {exc}") from None
        return cl.make(data.get("free", []), data.get("torsion", []))
    try:
        free = [int(x) for x in text.split(",")]
    except ValueError:
        raise ParseError(f"bad class literal {text!r}") from None
    return cl.make(free)


def _read_text(source: str) -> str:
    if os.path.isfile(source):
        with open(source) as fh:
            return fh.read()
    return source


def read_polys(cfg: JobConfig, args, ring: CoxRing) -> list:
    polys = [parse_poly(_read_text(src), ring) for src in cfg.poly_inputs]
    for j, lit in enumerate(getattr(args, "generic", None) or []):
        polys.append(random_poly(ring, parse_class(lit, ring.cl), seed=cfg.seed + j))
    if not polys:
        raise UsageError("give at least one --poly or --generic")
    return polys


def read_ideal(source: str, ring: CoxRing) -> GradedIdeal:
    text = _read_text(source)
    try:
        items = json.loads(text)
    except json.JSONDecodeError:
        items = [line for line in text.splitlines() if line.strip()]
    if not isinstance(items, list) or not all(isinstance(s, str) for s in items):
        raise ParseError("an ideal is a JSON list of polynomial strings")
    return GradedIdeal(ring, [parse_poly(s, ring) for s in items])


def _point(text: str | None):
    if text is None:
        return None
    try:
        return [Fraction(x) for x in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad point {text!r}") from None


# output ------------------------------------------------------------------------


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def flatten(obj, prefix: str = "") -> list[tuple[str, Any]]:
    if isinstance(obj, dict):
        out = []
        for k in sorted(obj):
            out += flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
        return out
    if isinstance(obj, list):
        if all(not isinstance(x, (dict, list)) for x in obj):
            return [(prefix, json.dumps(obj, default=_jsonable))]
        out = []
        for i, x in enumerate(obj):
            out += flatten(x, f"{prefix}[{i}]")
        return out
    return [(prefix, json.dumps(obj, default=_jsonable))]


def render(report: dict, fmt: str) -> str:
    if fmt == "table":
        rows = flatten(report)
        width = max((len(k) for k, _ in rows), default=0)
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)
    return json.dumps(report, sort_keys=True, indent=2, default=_jsonable)


def _trace(cfg: JobConfig, label: str, payload) -> None:
    if cfg.trace:
        print(f"[trace] {label}: {json.dumps(payload, sort_keys=True, default=_jsonable)}",
              file=sys.stderr)


def _trace_piece(cfg: JobConfig, ideal: GradedIdeal, alpha: DivisorClass, label: str) -> None:
    if not cfg.trace:
        return
    ring = ideal.ring
    basis = [format_monomial(m, ring) for m in ring.basis(alpha)]
    ech = ideal.piece(alpha)
    _trace(cfg, f"{label} basis {alpha}", basis)
    _trace(cfg, f"{label} pivots {alpha}", ech.pivots)
    _trace(cfg, f"{label} rows {alpha}",
           [[[k, v] for k, v in sorted(ech.rows[p].items())] for p in ech.pivots])


# commands ------------------------------------------------------------------------


def _setup(cfg: JobConfig):
    if not cfg.fan_path:
        raise UsageError("--fan is required")
    fan = load_fan(cfg.fan_path)
    cl = ClassGroup(fan)
    return fan, cl, CoxRing(fan, cl)


def cmd_fan_check(cfg, args):
    fan = load_fan(cfg.fan_path)
    report = {"valid": True, "fan": fan.to_json(), "poincare_polynomial": poincare_polynomial(fan),
              "positive_relation": list(fan.positive_relation)}
    return report, EXIT_OK


def cmd_classgroup(cfg, args):
    fan, cl, _ = _setup(cfg)
    return cl.to_json(), EXIT_OK


def cmd_basis(cfg, args):
    fan, cl, ring = _setup(cfg)
    alpha = parse_class(args.degree, cl)
    basis = ring.basis(alpha)
    sc = None
    if basis:
        sc = support_certificate(alpha, fan, cl).to_json()
    report = {"degree": alpha.to_json(), "dimension": len(basis),
              "monomials": [format_monomial(m, ring) for m in basis],
              "exponents": [list(m) for m in basis], "support": sc}
    return report, EXIT_OK


def cmd_oda(cfg, args):
    fan, cl, ring = _setup(cfg)
    pairs = [(parse_class(a, cl), parse_class(b, cl)) for a, b in args.pair or []]
    if not pairs:
        raise UsageError("give at least one --pair A1 A2")
    certs = []
    for a1, a2 in pairs:
        s1, s2 = support_certificate(a1, fan, cl), support_certificate(a2, fan, cl)
        if not args.no_enforce:
            if not (s1.ample and s1.cartier):
                raise UsageError(f"alpha1 = {a1} is not ample Cartier (use --no-enforce)")
            if not (s2.nef and s2.cartier):
                raise UsageError(f"alpha2 = {a2} is not nef Cartier (use --no-enforce)")
        cert = multiplication_surjective(a1, a2, ring)
        _trace(cfg, f"basis {a1}", [format_monomial(m, ring) for m in ring.basis(a1)])
        _trace(cfg, f"basis {a2}", [format_monomial(m, ring) for m in ring.basis(a2)])
        out = cert.to_json()
        out["alpha1_support"] = {"ample": s1.ample, "nef": s1.nef, "cartier": s1.cartier}
        out["alpha2_support"] = {"ample": s2.ample, "nef": s2.nef, "cartier": s2.cartier}
        certs.append(out)
    verdict = "Surjective" if all(c["verdict"] == "Surjective" for c in certs) else "NotSurjective"
    return {"verdict": verdict, "certificates": certs}, _STATUS_EXIT[verdict]


def _certificate_command(cfg, args, build):
    fan, cl, ring = _setup(cfg)
    polys = read_polys(cfg, args, ring)
    cert = build(polys, _point(args.witness))
    report = cert.to_json()
    report["polynomials"] = [str(f) for f in polys]
    report["degrees"] = [f.degree.to_json() for f in polys]
    return report, _STATUS_EXIT[cert.status]


def cmd_quasismooth(cfg, args):
    return _certificate_command(
        cfg, args, lambda ps, w: quasi_smooth_certificate(ps, cfg.m_max, w, cfg.jobs, cfg.max_piece))


def cmd_nondegenerate(cfg, args):
    def build(ps, w):
        if len(ps) != 1:
            raise UsageError("nondegenerate takes exactly one polynomial")
        return nondegeneracy_certificate(ps[0], cfg.m_max, w, cfg.jobs, cfg.max_piece)
    return _certificate_command(cfg, args, build)


def cmd_hodge(cfg, args):
    fan, cl, ring = _setup(cfg)
    polys = read_polys(cfg, args, ring)
    certify = not args.no_certify
    if args.kind == "hypersurface":
        if len(polys) != 1:
            raise UsageError("hodge hypersurface takes exactly one polynomial")
        rep = hypersurface_prim_hodge(polys[0], args.index, cfg.m_max, certify, cfg.jobs,
                                      cfg.max_piece)
        _trace_piece(cfg, jacobian_ideal(polys[0]), rep.target_degree, "J(f)")
    else:
        rep = intersection_prim_hodge(polys, args.p, cfg.m_max, certify, cfg.jobs, cfg.max_piece)
    report = rep.to_json()
    report["polynomials"] = [str(f) for f in polys]
    return report, EXIT_OK


def cmd_gorenstein(cfg, args):
    fan, cl, ring = _setup(cfg)
    ideal = read_ideal(args.ideal, ring)
    n_class = parse_class(args.socle, cl)
    rep = verify_cox_gorenstein(ideal, n_class, cfg.m_max, cfg.jobs, cfg.max_piece)
    _trace_piece(cfg, ideal, n_class, "I")
    report = rep.to_json(ring)
    report["generators"] = ideal.to_json()
    return report, _STATUS_EXIT[rep.verdict]


def cmd_nl(cfg, args):
    fan, cl, ring = _setup(cfg)
    beta = parse_class(args.beta, cl)
    eta = parse_class(args.eta, cl)
    pairs = [(parse_class(a, cl), parse_class(b, cl)) for a, b in args.oda_pair or []]
    rep = nl.nl_hypothesis_report(fan, cl, beta, eta, args.k, pairs, ring, args.order)
    report = {"hypotheses": rep.to_json()}
    if args.deg_v is not None:
        if args.delta is None:
            raise UsageError("--deg-v needs --delta")
        if rep.m_beta is None:
            raise UsageError("the socle-degree comparison needs m_beta, which is undefined here")
        s3 = nl.step3_socle_bounds(args.k, args.deg_v, rep.m_beta, Fraction(args.delta), fan.nrays,
                                   eta, rep.beta0, args.d_param)
        report["step3"] = s3.to_json()
    return report, EXIT_OK


def cmd_step1(cfg, args):
    a = [int(x) for x in args.a.split(",") if x.strip()] if args.a else []
    value = nl.step1_coefficient(a, args.b, args.k)
    return {"a": a, "b": args.b, "k": args.k, "coefficient": value}, EXIT_OK


def cmd_bounds(cfg, args):
    report: dict[str, Any] = {"r": args.r, "k": args.k}
    report["delta_upper"] = nl.delta_upper(args.r, args.k)
    report["r_at_least_2k_plus_2"] = args.r >= 2 * (args.k + 1)
    if args.d is not None and args.m is not None:
        report["codim_bound"] = nl.codim_bound(args.d, args.m, args.k)
    return report, EXIT_OK


# parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--trace", action="store_true", help="dump bases and pivots to stderr")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--m-max", type=int, default=20, help="largest power tried per irrelevant monomial")
    common.add_argument("--max-piece", type=int, default=1000,
                        help="largest graded piece (monomials) used by emptiness searches; 0 = no limit")
    common.add_argument("--seed", type=int, default=0, help="seed for --generic polynomials")

    fan_opt = argparse.ArgumentParser(add_help=False)
    fan_opt.add_argument("--fan", required=True, help="fan JSON file")

    poly_opt = argparse.ArgumentParser(add_help=False)
    poly_opt.add_argument("--poly", action="append", default=[], help="polynomial file or literal (repeatable)")
    poly_opt.add_argument("--generic", action="append", default=[], metavar="DEG",
                          help="seeded pseudo-random polynomial of degree DEG (repeatable)")

    parser = argparse.ArgumentParser(prog="toricnl", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    fan_p = sub.add_parser("fan", help="fan validation")
    fan_sub = fan_p.add_subparsers(dest="fan_command", required=True)
    p = fan_sub.add_parser("check", parents=[common, fan_opt])
    p.set_defaults(func=cmd_fan_check)

    p = sub.add_parser("classgroup", parents=[common, fan_opt], help="class group and variable degrees")
    p.set_defaults(func=cmd_classgroup)

    p = sub.add_parser("basis", parents=[common, fan_opt], help="monomial basis of a graded piece")
    p.add_argument("--degree", required=True)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("oda", parents=[common, fan_opt], help="surjectivity of multiplication maps")
    p.add_argument("--pair", nargs=2, action="append", metavar=("A1", "A2"))
    p.add_argument("--no-enforce", action="store_true", help="skip the ample/nef Cartier check")
    p.set_defaults(func=cmd_oda)

    for name, func, text in (("quasismooth", cmd_quasismooth, "quasi-smoothness certificate"),
                             ("nondegenerate", cmd_nondegenerate, "nondegeneracy certificate")):
        p = sub.add_parser(name, parents=[common, fan_opt, poly_opt], help=text)
        p.add_argument("--witness", help="candidate point, comma separated")
        p.set_defaults(func=func)

    hodge = sub.add_parser("hodge", help="primitive Hodge numbers")
    hodge_sub = hodge.add_subparsers(dest="kind", required=True)
    p = hodge_sub.add_parser("hypersurface", parents=[common, fan_opt, poly_opt])
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--no-certify", action="store_true")
    p.set_defaults(func=cmd_hodge)
    p = hodge_sub.add_parser("intersection", parents=[common, fan_opt, poly_opt])
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--no-certify", action="store_true")
    p.set_defaults(func=cmd_hodge)

    p = sub.add_parser("gorenstein", parents=[common, fan_opt], help="Cox-Gorenstein verification")
    p.add_argument("--ideal", required=True, help="JSON list of polynomials (file or literal)")
    p.add_argument("--socle", required=True, help="socle degree N")
    p.set_defaults(func=cmd_gorenstein)

    p = sub.add_parser("nl", parents=[common, fan_opt], help="Noether-Lefschetz hypotheses and bounds")
    p.add_argument("--beta", required=True)
    p.add_argument("--eta", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--oda-pair", nargs=2, action="append", metavar=("A1", "A2"))
    p.add_argument("--order", choices=("effective", "nef"), default="effective",
                   help="reading of i*eta <= beta when computing m_beta")
    p.add_argument("--deg-v", type=int)
    p.add_argument("--delta")
    p.add_argument("--d-param", type=int)
    p.set_defaults(func=cmd_nl)

    p = sub.add_parser("step1", parents=[common], help="series coefficient of prod(1 + a_i t) / (1 + b t)")
    p.add_argument("--a", default="", help="comma separated degrees of the A_i")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_step1)

    p = sub.add_parser("bounds", parents=[common], help="delta threshold and codimension bound")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--m", type=int)
    p.set_defaults(func=cmd_bounds)
    return parser


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    fmt = args.format
    try:
        cfg = JobConfig(
            command=args.command,
            fan_path=getattr(args, "fan", None),
            poly_inputs=list(getattr(args, "poly", []) or []),
            m_max=args.m_max,
            max_piece=args.max_piece or None,
            output_format=fmt,
            seed=args.seed,
            jobs=args.jobs,
            trace=args.trace,
        )
        report, code = args.func(cfg, args)
    except (ToricError, ValueError, OSError) as exc:
        kind = exc.kind if isinstance(exc, ToricError) else type(exc).__name__
        report, code = {"error": {"kind": kind, "detail": str(exc)}}, EXIT_ERROR
    print(render(report, fmt), file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
