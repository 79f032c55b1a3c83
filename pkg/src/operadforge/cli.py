"""Command-line surface.

Exit codes: 0 success, 1 usage/parse/discipline error, 2 fuel exhaustion,
3 an indefinite verdict (Unknown, or an equality request involving Tr).

The default fuel is 10000 beta steps, overridable per call with --fuel or
globally with the OPERADFORGE_FUEL environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import acceptance, braids, comb, operad, terms
from .normalize import DEFAULT_FUEL, FuelExhausted, Verdict, lam_equal, normalize
from .terms import Discipline, DisciplineError, TermError


class CliError(Exception):
    def __init__(self, message: str, code: int = 1):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    fuel: int = DEFAULT_FUEL
    samples: int = 32
    seed: int = 0
    json: bool = False

    def __post_init__(self):
        if self.fuel < 1 or self.samples < 1:
            raise CliError("fuel and samples must be at least 1")


def _default_fuel() -> int:
    raw = os.environ.get("OPERADFORGE_FUEL")
    if raw is None:
        return DEFAULT_FUEL
    try:
        fuel = int(raw)
    except ValueError:
        raise CliError(f"OPERADFORGE_FUEL must be an integer, got {raw!r}")
    if fuel < 1:
        raise CliError("OPERADFORGE_FUEL must be positive")
    return fuel


_DISCIPLINES = {d.value: d for d in Discipline}


def _discipline(name: str) -> Discipline:
    try:
        return _DISCIPLINES[name.lower()]
    except KeyError:
        raise CliError(f"unknown discipline {name!r} (choose from {sorted(_DISCIPLINES)})")


def _signature(name: str) -> comb.Signature:
    try:
        return comb.SIGNATURES[name.lower().replace("_", "").replace("-", "")]
    except KeyError:
        raise CliError(f"unknown signature {name!r} (choose from {sorted(comb.SIGNATURES)})")


def _read_input(text: str) -> str:
    if text == "-":
        return sys.stdin.read()
    return text


_PRIM_OK = {
    Discipline.PLANAR: ("B", "I"),
    Discipline.LINEAR: ("B", "C", "I"),
    Discipline.BRAIDED: ("B", "C+", "C-", "I"),
    Discipline.CARTESIAN: ("B", "C", "I", "W", "K"),
}


def _parse_lambda(text: str, d: Discipline) -> terms.LTerm:
    """Parse a lambda term, resolving free identifiers that name combinator
    primitives of the discipline to their lambda images."""
    t = terms.parse(text)
    images = {
        name: comb.to_lambda(comb.Prim(name), d) for name in _PRIM_OK[d]
    }

    def resolve(u: terms.LTerm) -> terms.LTerm:
        if isinstance(u, terms.Const) and u.name in images:
            return images[u.name]
        if isinstance(u, terms.Lam):
            return terms.Lam(resolve(u.body))
        if isinstance(u, terms.App):
            return terms.App(resolve(u.fn), resolve(u.arg))
        if isinstance(u, terms.BraidNode):
            return terms.BraidNode(u.braid, resolve(u.body))
        return u

    return resolve(t)


def _verdict_exit(v: Verdict) -> int:
    if v is Verdict.FUEL_EXHAUSTED:
        return 2
    if v is Verdict.UNKNOWN:
        return 3
    return 0


# -- subcommands ------------------------------------------------------------------


def cmd_norm(args, cfg: RunConfig) -> int:
    d = _discipline(args.discipline)
    t = _parse_lambda(_read_input(args.term), d)
    check = terms.check_discipline(t, d)
    if not check.ok:
        raise CliError(f"discipline error: {check.message}")
    try:
        nf = normalize(t, d, fuel=cfg.fuel, check=False)
    except FuelExhausted as e:
        print(f"FuelExhausted: {e}", file=sys.stderr)
        return 2
    if args.tree:
        print("\n".join(terms.tree_lines(nf)))
    else:
        print(terms.pretty(nf))
    return 0


def cmd_eq(args, cfg: RunConfig) -> int:
    if (args.discipline is None) == (args.signature is None):
        raise CliError("eq needs exactly one of -d/--discipline or -s/--signature")
    if args.signature is not None:
        sig = _signature(args.signature)
        try:
            c1 = comb.parse_cterm(_read_input(args.lhs))
            c2 = comb.parse_cterm(_read_input(args.rhs))
            v = comb.comb_equal(c1, c2, sig, fuel=cfg.fuel)
        except comb.UnsupportedTrace as e:
            print(f"Unknown: {e}", file=sys.stderr)
            return 3
    else:
        d = _discipline(args.discipline)
        t1 = _parse_lambda(_read_input(args.lhs), d)
        t2 = _parse_lambda(_read_input(args.rhs), d)
        v = lam_equal(t1, t2, d, fuel=cfg.fuel)
    print(v)
    return _verdict_exit(v)


def _cterm_to_poly(t: comb.CTerm) -> comb.PolyExpr:
    import re

    if isinstance(t, comb.ConstRef) and re.fullmatch(r"x\d*", t.name):
        return comb.Id(int(t.name[1:]) if len(t.name) > 1 else 0)
    if isinstance(t, comb.CApp):
        return comb.AppP(_cterm_to_poly(t.fn), _cterm_to_poly(t.arg))
    if isinstance(t, comb.Bullet):
        return comb.Coef(t)
    return comb.Coef(t)


def cmd_abstract(args, cfg: RunConfig) -> int:
    sig = _signature(args.signature)
    poly = _cterm_to_poly(comb.parse_cterm(_read_input(args.poly)))
    out = comb.bracket_abstract(poly, sig)
    print(comb.format_cterm(out))
    if args.certify:
        v = comb.beta_check_abstraction(poly, sig, samples=min(cfg.samples, 8), seed=cfg.seed, fuel=cfg.fuel)
        print(f"certified: {v}", file=sys.stderr)
        return _verdict_exit(v)
    return 0


def cmd_arity(args, cfg: RunConfig) -> int:
    sig = _signature(args.signature)
    t = comb.parse_cterm(_read_input(args.term))
    found = operad.infer_arity(t, bound=args.bound, sig=sig, fuel=cfg.fuel)
    if found is None:
        print(f"no arity within bound {args.bound}")
        return 0
    print(f"{found[0]} -> {found[1]}")
    return 0


def cmd_member(args, cfg: RunConfig) -> int:
    sig = _signature(args.signature)
    t = comb.parse_cterm(_read_input(args.term))
    v = operad.in_internal_operad(t, args.arity, sig, fuel=cfg.fuel)
    print(v)
    return _verdict_exit(v)


def cmd_compose(args, cfg: RunConfig) -> int:
    sig = _signature(args.signature)
    g_term = comb.parse_cterm(args.g)
    n = len(args.fs)
    g = operad.operad_elem(g_term, n, sig, fuel=cfg.fuel)
    fs = []
    for src in args.fs:
        t = comb.parse_cterm(src)
        found = None
        for m in range(args.bound + 1):
            if operad.in_internal_operad(t, m, sig, fuel=cfg.fuel) is Verdict.EQUAL:
                found = m
                break
        if found is None:
            raise CliError(f"{src!r} is not an operad element within arity bound {args.bound}")
        fs.append(operad.OperadElem(t, found))
    out = operad.operad_compose(g, fs, sig, verify=args.verify, fuel=cfg.fuel)
    print(comb.format_cterm(out.elem))
    print(f"arity: {out.m} -> 1", file=sys.stderr)
    return 0


def cmd_braid(args, cfg: RunConfig) -> int:
    op = args.op
    if op == "eq":
        u, v = braids.parse_braid(args.args[0]), braids.parse_braid(args.args[1])
        equal = braids.braid_equal(u, v)
        print("Equal" if equal else "NotEqual")
        return 0
    if op == "trivial":
        print("true" if braids.braid_is_trivial(braids.parse_braid(args.args[0])) else "false")
        return 0
    if op == "cable":
        u = braids.parse_braid(args.args[0])
        widths = [int(x) for x in args.args[1:]]
        print(braids.format_braid(braids.cable(u, widths)))
        return 0
    if op == "perm":
        u = braids.parse_braid(args.args[0])
        print(" ".join(str(k) for k in braids.underlying_permutation(u).image))
        return 0
    if op == "sum":
        ws = [braids.parse_braid(a) for a in args.args]
        print(braids.format_braid(braids.direct_sum(ws)))
        return 0
    if op == "inverse":
        print(braids.format_braid(braids.braid_inverse(braids.parse_braid(args.args[0]))))
        return 0
    raise CliError(f"unknown braid operation {op!r}")


def cmd_axioms(args, cfg: RunConfig) -> int:
    sig = _signature(args.signature)
    reports = comb.axiom_suite(sig, samples=cfg.samples, seed=cfg.seed, fuel=cfg.fuel)
    if cfg.json:
        print(json.dumps([r.as_dict() for r in reports], indent=2))
    else:
        for r in reports:
            print(f"{r.status.upper():7s} {r.axiom}")
    if any(r.status == "unknown" for r in reports):
        return 3
    return 0 if all(r.status == "pass" for r in reports) else 1


def cmd_trace(args, cfg: RunConfig) -> int:
    sig = comb.Signature("BCpmI", trace_extension=True)
    if args.what == "trefoil":
        cert = operad.trefoil(sig)
    elif args.what == "eta":
        cert = operad.eta_eps(sig)[0]
    elif args.what == "eps":
        cert = operad.eta_eps(sig)[1]
    else:
        raise CliError(f"unknown trace expression {args.what!r}")
    print(comb.format_cterm(cert.elem))
    print(f"arity: {cert.m} -> {cert.n} (stated)", file=sys.stderr)
    return 0


def cmd_suite(args, cfg: RunConfig) -> int:
    results = acceptance.run_all(cfg.samples, cfg.seed, cfg.fuel, progress=not cfg.json)
    if cfg.json:
        print(json.dumps([r.as_dict() for r in sorted(results, key=lambda r: r.name)], indent=2))
    return 0 if all(r.ok for r in results) else 1


# -- argument parsing ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="operadforge",
        description="Symbolic workbench for combinatory algebras, lambda calculi, "
        "braid groups, and internal operads.",
    )
    p.add_argument("--fuel", type=int, default=None, help="beta-step budget (cartesian)")
    p.add_argument("--samples", type=int, default=32, help="samples per metavariable axiom")
    p.add_argument("--seed", type=int, default=0, help="sample seed")
    p.add_argument("--json", action="store_true", help="emit JSON reports")
    sub = p.add_subparsers(dest="command", required=True)

    norm = sub.add_parser("norm", help="normalize a lambda term")
    norm.add_argument("-d", "--discipline", required=True)
    norm.add_argument("--tree", action="store_true", help="print the term tree")
    norm.add_argument("term")
    norm.set_defaults(fn=cmd_norm)

    eq = sub.add_parser("eq", help="decide equality of two terms")
    eq.add_argument("-d", "--discipline")
    eq.add_argument("-s", "--signature")
    eq.add_argument("lhs")
    eq.add_argument("rhs")
    eq.set_defaults(fn=cmd_eq)

    ab = sub.add_parser("abstract", help="bracket abstraction of a polynomial")
    ab.add_argument("-s", "--signature", required=True)
    ab.add_argument("--certify", action="store_true")
    ab.add_argument("poly", help="polynomial with variables x0 x1 .. (x = x0)")
    ab.set_defaults(fn=cmd_abstract)

    ar = sub.add_parser("arity", help="least arity of a combinator expression")
    ar.add_argument("-s", "--signature", default="bciwk")
    ar.add_argument("--bound", type=int, default=4)
    ar.add_argument("term")
    ar.set_defaults(fn=cmd_arity)

    me = sub.add_parser("member", help="internal-operad membership at an arity")
    me.add_argument("-s", "--signature", required=True)
    me.add_argument("term")
    me.add_argument("arity", type=int)
    me.set_defaults(fn=cmd_member)

    co = sub.add_parser("compose", help="operadic multi-composition g(f1, .., fn)")
    co.add_argument("-s", "--signature", required=True)
    co.add_argument("--bound", type=int, default=4)
    co.add_argument("--verify", action="store_true")
    co.add_argument("g")
    co.add_argument("fs", nargs="+")
    co.set_defaults(fn=cmd_compose)

    br = sub.add_parser("braid", help="braid word operations")
    br.add_argument("op", choices=["eq", "cable", "perm", "sum", "trivial", "inverse"])
    br.add_argument("args", nargs="+")
    br.set_defaults(fn=cmd_braid)

    ax = sub.add_parser("axioms", help="run a signature's axiom suite")
    ax.add_argument("signature")
    ax.set_defaults(fn=cmd_axioms)

    tr = sub.add_parser("trace", help="print trace-combinator expressions")
    tr.add_argument("what", choices=["trefoil", "eta", "eps"])
    tr.set_defaults(fn=cmd_trace)

    su = sub.add_parser("suite", help="run the full acceptance battery")
    su.set_defaults(fn=cmd_suite)

    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            fuel=args.fuel if args.fuel is not None else _default_fuel(),
            samples=args.samples,
            seed=args.seed,
            json=args.json,
        )
        return args.fn(args, cfg)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except comb.UnsupportedTrace as e:
        print(f"Unknown: {e}", file=sys.stderr)
        return 3
    except FuelExhausted as e:
        print(f"FuelExhausted: {e}", file=sys.stderr)
        return 2
    except (TermError, DisciplineError, comb.CombError, braids.DimensionError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
