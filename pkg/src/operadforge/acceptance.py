"""The end-to-end acceptance battery.

Each criterion is a function returning a Result; `run_all` executes the lot
and prints one pass/fail line per criterion.  All checks are exact (symbolic
equality); the only tunables are the documented sample counts, seeds, and the
cartesian fuel bound.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass

from . import comb, operad, terms
from .braids import (
    BraidWord,
    braid_equal,
    braid_is_trivial,
    cable,
    parse_braid,
    underlying_permutation,
)
from .comb import (
    BCI,
    BCIWK,
    BCPMI,
    BIBULLET,
    Bullet,
    CApp,
    ConstRef,
    I,
    Prim,
    axiom_suite,
    capp,
    comb_equal,
    derive_classical_S,
    format_cterm,
    parse_cterm,
    sample_closed,
)
from .normalize import DEFAULT_FUEL, Verdict, lam_equal, normalize
from .terms import App, Const, Discipline, Lam, Var, parse, wires


@dataclass
class Result:
    name: str
    ok: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


# -- criterion 1: braid relations and the brute-force cross-check -------------------

_B3_RELATIONS = (
    ((1, 2, 1), (2, 1, 2)),
    ((2, 1, 2), (1, 2, 1)),
    ((-1, -2, -1), (-2, -1, -2)),
    ((-2, -1, -2), (-1, -2, -1)),
)


def _relator_search_trivial(word: tuple[int, ...], depth: int = 6, cap: int = 8) -> bool:
    """Breadth-first proof search for triviality in B3.

    Moves: cancel an adjacent inverse pair, insert one, or rewrite by a braid
    relation.  Exponent sum and the underlying permutation prune soundly.
    Independent of handle reduction.
    """
    if sum(1 if a > 0 else -1 for a in word) != 0:
        return False
    if not underlying_permutation(BraidWord(3, word)).is_identity():
        return False
    seen = {word}
    frontier = deque([(word, 0)])
    letters = (1, -1, 2, -2)
    while frontier:
        w, d = frontier.popleft()
        if not w:
            return True
        if d >= depth:
            continue
        nexts = []
        for i in range(len(w) - 1):
            if w[i] == -w[i + 1]:
                nexts.append(w[:i] + w[i + 2 :])
        for lhs, rhs in _B3_RELATIONS:
            for i in range(len(w) - len(lhs) + 1):
                if w[i : i + len(lhs)] == lhs:
                    nexts.append(w[:i] + rhs + w[i + len(lhs) :])
        if len(w) + 2 <= cap:
            for i in range(len(w) + 1):
                for a in letters:
                    nexts.append(w[:i] + (a, -a) + w[i:])
        for nw in nexts:
            if nw not in seen:
                seen.add(nw)
                frontier.append((nw, d + 1))
    return False


def criterion_1(samples: int, seed: int, fuel: int) -> Result:
    relations = [
        ("{4; 3 1}", "{4; 1 3}"),
        ("{4; 1 2 1}", "{4; 2 1 2}"),
        ("{4; 2 3 2}", "{4; 3 2 3}"),
    ]
    for lhs, rhs in relations:
        if not braid_equal(parse_braid(lhs), parse_braid(rhs)):
            return Result("braid relations", False, f"{lhs} != {rhs}")
    if braid_equal(parse_braid("{2; 1}"), parse_braid("{2; -1}")):
        return Result("braid relations", False, "sigma1 equals its inverse")

    letters = (1, -1, 2, -2)
    checked = 0
    for length in range(0, 5):
        for word in itertools.product(letters, repeat=length):
            exact = braid_is_trivial(BraidWord(3, word))
            brute = _relator_search_trivial(word)
            if exact != brute:
                return Result(
                    "braid relations", False, f"disagreement on {word}: exact={exact} brute={brute}"
                )
            checked += 1
    return Result("braid relations", True, f"B4 relations + {checked} exhaustive B3 words")


def criterion_2(samples: int, seed: int, fuel: int) -> Result:
    got = cable(parse_braid("{3; -2 1}"), [1, 2, 1])
    want = parse_braid("{4; -3 2 1}")
    ok = braid_equal(got, want)
    return Result("cabling", ok, f"cable example -> {got}")


# -- criteria 3-6: axiom suites ------------------------------------------------------

def _suite_criterion(name: str, sig: comb.Signature, samples: int, seed: int, fuel: int) -> Result:
    reports = axiom_suite(sig, samples=samples, seed=seed, fuel=fuel)
    bad = [r for r in reports if r.status != "pass"]
    if bad:
        first = bad[0]
        return Result(
            name,
            False,
            f"{first.axiom}: {first.status} (lhs {first.lhs_nf} vs rhs {first.rhs_nf}, "
            f"witness {first.witness_bindings})",
        )
    return Result(name, True, f"{len(reports)} rows pass")


def criterion_3(samples: int, seed: int, fuel: int) -> Result:
    return _suite_criterion("planar axiom suite", BIBULLET, samples, seed, fuel)


def criterion_4(samples: int, seed: int, fuel: int) -> Result:
    return _suite_criterion("linear axiom suite", BCI, samples, seed, fuel)


def criterion_5(samples: int, seed: int, fuel: int) -> Result:
    return _suite_criterion("braided axiom suite", BCPMI, samples, seed, fuel)


def criterion_6(samples: int, seed: int, fuel: int) -> Result:
    base = _suite_criterion("cartesian axiom suite", BCIWK, samples, seed, fuel)
    if not base.ok:
        return base
    S = derive_classical_S()
    rng = random.Random(seed)
    done = retries = 0
    while done < samples:
        a, b, c = (sample_closed(BCIWK, rng) for _ in range(3))
        v = comb_equal(capp(S, a, b, c), capp(a, c, CApp(b, c)), BCIWK, fuel=fuel)
        if v is Verdict.FUEL_EXHAUSTED and retries < 20 * samples:
            retries += 1  # the instantiation itself diverges; decides nothing
            continue
        if v is not Verdict.EQUAL:
            return Result(base.name, False, "derived duplicator misbehaves")
        if comb_equal(capp(Prim("K"), a, b), a, BCIWK, fuel=fuel) is not Verdict.EQUAL:
            return Result(base.name, False, "K a b != a")
        done += 1
    return Result(base.name, True, base.detail + f"; duplicator + K on {samples} samples")


# -- criterion 7: the arity table ----------------------------------------------------

def criterion_7(samples: int, seed: int, fuel: int) -> Result:
    expected = {
        "I": (0, 0),
        "B": (2, 1),
        "C": (2, 2),
        "K": (1, 0),
        "W": (1, 2),
    }
    for src, want in expected.items():
        got = operad.infer_arity(parse_cterm(src), bound=4, sig=BCIWK, fuel=fuel)
        if got != want:
            return Result("arity table", False, f"{src}: {got} != {want}")
    S = derive_classical_S()
    if operad.infer_arity(S, bound=4, sig=BCIWK, fuel=fuel) != (2, 2):
        return Result("arity table", False, "derived duplicator is not 2 -> 2")
    rng = random.Random(seed)
    for _ in range(5):
        p = sample_closed(BCIWK, rng)
        got = operad.infer_arity(Bullet(p), bound=4, sig=BCIWK, fuel=fuel)
        if got != (0, 1):
            return Result("arity table", False, f"{format_cterm(Bullet(p))}: {got} != (0, 1)")
    if operad.infer_arity(parse_cterm("C I"), bound=3, sig=BCIWK, fuel=fuel) is not None:
        return Result("arity table", False, "argument flip acquired an arity")
    return Result("arity table", True, "I B C S K W, 5 internalized samples, and the flip")


# -- criterion 8: the three-way arity equivalence --------------------------------------

_LB = terms.parse(r"\f x y. f (x y)")


def _compose_l(*ts):
    out = ts[-1]
    for t in reversed(ts[:-1]):
        out = terms.app(_LB, t, out)
    return out


def _bullet_l(t):
    return Lam(App(Var(0), terms.shift(t, 1)))


def _bpow_l(k: int):
    if k == 0:
        return terms.parse(r"\x. x")
    return _compose_l(*([_LB] * k))


def _head_form_arity_m1(nf, m: int) -> bool:
    """Witness check against the head form with one output.

    A term with that arity eta-contracts to an abstraction prefix whose first
    binder sits in head position, not free in the arguments, applied to at
    most one argument: exactly one argument with m+1 binders, or none with m
    binders (the final eta step consumed the lone argument)."""
    r = 0
    body = nf
    while isinstance(body, Lam):
        r += 1
        body = body.body
    if r == 0:
        return False
    args = []
    head = body
    while isinstance(head, App):
        args.append(head.arg)
        head = head.fn
    if not isinstance(head, Var) or head.index != r - 1:
        return False
    for a in args:
        if (r - 1) in terms.free_indices(a):
            return False
    if len(args) == 1:
        return m == r - 1
    if len(args) == 0:
        return m == r
    return False


def _gen_closed_planar(rng: random.Random, max_size: int) -> terms.LTerm:
    counter = itertools.count()

    def go(ctx: list[str], depth: int) -> str:
        if depth <= 0:
            if len(ctx) == 0:
                v = f"a{next(counter)}"
                return f"(\\{v}. {v})"
            return " ".join(ctx) if len(ctx) > 1 else ctx[0]
        roll = rng.random()
        if len(ctx) == 1 and roll < 0.3:
            return ctx[0]
        if roll < 0.55 or len(ctx) == 0:
            v = f"a{next(counter)}"
            return f"(\\{v}. {go(ctx + [v], depth - 1)})"
        k = rng.randint(0, len(ctx))
        return f"({go(ctx[:k], depth - 1)} {go(ctx[k:], depth - 1)})"

    while True:
        t = parse(go([], rng.randint(3, 6)))
        if t.size <= max_size and terms.check_discipline(t, Discipline.PLANAR).ok:
            return t


def criterion_8(samples: int, seed: int, fuel: int) -> Result:
    rng = random.Random(seed)
    count = 200
    for idx in range(count):
        M = _gen_closed_planar(rng, 25)
        nf = normalize(M, Discipline.PLANAR, check=False)
        for m in range(0, 4):
            c1 = _head_form_arity_m1(nf, m)
            lhs2 = _compose_l(_bullet_l(App(M, terms.parse(r"\x. x"))), _bpow_l(m))
            c2 = lam_equal(lhs2, M, Discipline.PLANAR) is Verdict.EQUAL
            lhs3 = _compose_l(_bullet_l(M), _bpow_l(m + 1))
            rhs3 = _compose_l(App(_LB, M), _LB)
            c3 = lam_equal(lhs3, rhs3, Discipline.PLANAR) is Verdict.EQUAL
            if not (c1 == c2 == c3):
                return Result(
                    "arity equivalence",
                    False,
                    f"term {terms.pretty(M)} at m={m}: head={c1} membership={c2} equation={c3}",
                )
    return Result("arity equivalence", True, f"{count} closed planar terms, m <= 3")


# -- criterion 9: operad laws -----------------------------------------------------------

def criterion_9(samples: int, seed: int, fuel: int) -> Result:
    sig = BIBULLET
    rng = random.Random(seed)
    for _ in range(samples):
        # unit laws
        k = rng.randint(0, 2)
        f = operad.sample_operad_elem(k, sig, rng, depth=1)
        viaid = operad.operad_compose(operad.ID_ELEM, [f], sig)
        if comb_equal(viaid.elem, f.elem, sig, fuel=fuel) is not Verdict.EQUAL:
            return Result("operad laws", False, "id(f) != f")
        ids = [operad.ID_ELEM] * f.m
        viaids = operad.operad_compose(f, ids, sig)
        if comb_equal(viaids.elem, f.elem, sig, fuel=fuel) is not Verdict.EQUAL:
            return Result("operad laws", False, "f(id, .., id) != f")

        # associativity: h(g1(f11..), g2(f21..)) = (h(g1, g2))(f11.., f21..)
        h = operad.sample_operad_elem(2, sig, rng, depth=1)
        gs = [operad.sample_operad_elem(rng.randint(0, 2), sig, rng, depth=1) for _ in range(2)]
        fss = [
            [operad.sample_operad_elem(rng.randint(0, 1), sig, rng, depth=1) for _ in range(g.m)]
            for g in gs
        ]
        lhs = operad.operad_compose(
            h, [operad.operad_compose(g, fs, sig) for g, fs in zip(gs, fss)], sig
        )
        rhs = operad.operad_compose(
            operad.operad_compose(h, gs, sig), fss[0] + fss[1], sig
        )
        if comb_equal(lhs.elem, rhs.elem, sig, fuel=fuel) is not Verdict.EQUAL:
            return Result("operad laws", False, "associativity failed")

        # closedness round trips
        m = rng.randint(1, 3)
        t = operad.sample_operad_elem(m, sig, rng, depth=1)
        clo = operad.closed_lambda(t, sig, verify=False)
        back = operad.operad_compose(operad.APP_ELEM, [clo, operad.ID_ELEM], sig)
        if comb_equal(back.elem, t.elem, sig, fuel=fuel) is not Verdict.EQUAL:
            return Result("operad laws", False, "lambda(t) o B != t")
        x = operad.sample_operad_elem(rng.randint(0, 2), sig, rng, depth=1)
        xB = operad.operad_compose(operad.APP_ELEM, [x, operad.ID_ELEM], sig)
        again = operad.closed_lambda(operad.OperadElem(xB.elem, x.m + 1), sig, verify=False)
        if comb_equal(again.elem, x.elem, sig, fuel=fuel) is not Verdict.EQUAL:
            return Result("operad laws", False, "lambda(x o B) != x")

        # exchange law for a checked arity
        m = rng.randint(0, 2)
        a = operad.sample_operad_elem(m, sig, rng, depth=1)  # arity m -> 1
        b = sample_closed(sig, rng, max_depth=1)
        lhs_e = comb.compose(comb.b_power_apply(m, b), a.elem)
        rhs_e = comb.compose(a.elem, comb.b_power_apply(1, b))
        if comb_equal(lhs_e, rhs_e, sig, fuel=fuel) is not Verdict.EQUAL:
            return Result("operad laws", False, "exchange law failed")
    return Result("operad laws", True, f"{samples} sampled instances")


# -- criterion 10: non-faithfulness -----------------------------------------------------

def criterion_10(samples: int, seed: int, fuel: int) -> Result:
    sig = BCPMI
    mp = parse_cterm("C+ o B")
    mm = parse_cterm("C- o B")
    if comb_equal(mp, mm, sig, fuel=fuel) is not Verdict.NOT_EQUAL:
        return Result("non-faithfulness", False, "the two braided exchanges compare equal")
    fp = operad.poly_hom_F(operad.operad_elem(mp, 2, sig))
    fm = operad.poly_hom_F(operad.operad_elem(mm, 2, sig))
    rng = random.Random(seed)
    for _ in range(samples):
        a1 = sample_closed(sig, rng, max_depth=2)
        a2 = sample_closed(sig, rng, max_depth=2)
        v1 = operad.evaluate(fp, [a1, a2], sig, fuel=fuel)
        v2 = operad.evaluate(fm, [a1, a2], sig, fuel=fuel)
        want = CApp(a2, a1)
        if not (v1 == want == v2):
            return Result(
                "non-faithfulness",
                False,
                f"evaluations differ: {format_cterm(v1)} vs {format_cterm(v2)}",
            )
    return Result("non-faithfulness", True, f"distinct elements, equal on {samples} pairs")


# -- criterion 11: equivariance -----------------------------------------------------------

def _words(k: int, maxlen: int) -> list[tuple[int, ...]]:
    letters = [i for i in range(-(k - 1), k) if i != 0]
    out: list[tuple[int, ...]] = [()]
    frontier: list[tuple[int, ...]] = [()]
    for _ in range(maxlen):
        frontier = [w + (a,) for w in frontier for a in letters]
        out += frontier
    return out


def criterion_11(samples: int, seed: int, fuel: int) -> Result:
    sig = BCPMI
    rng = random.Random(seed)
    pools = {
        m: [operad.sample_operad_elem(m, sig, rng, depth=1) for _ in range(8)]
        for m in range(0, 4)
    }
    total = 0
    for k in (1, 2, 3):
        for word in _words(k, 2):
            for js in itertools.product((0, 1, 2), repeat=k):
                for i in range(8):
                    f = pools[k][i]
                    gs = [pools[j][(i + off + 1) % 8] for off, j in enumerate(js)]
                    v = operad.check_equivariance(f, gs, BraidWord(k, word), sig, fuel=fuel)
                    total += 1
                    if v is not Verdict.EQUAL:
                        return Result(
                            "equivariance",
                            False,
                            f"k={k} word={word} widths={js} sample={i}: {v}",
                        )
    return Result("equivariance", True, f"{total} checks (all combinations x 8 samples)")


# -- criterion 12: trace syntax -------------------------------------------------------------

def criterion_12(samples: int, seed: int, fuel: int) -> Result:
    tref = operad.trefoil()
    eta, eps = operad.eta_eps()
    if format_cterm(tref.elem) != "Tr (Tr (C+ o C+ o C+))":
        return Result("trace syntax", False, f"trefoil prints {format_cterm(tref.elem)}")
    if (tref.m, tref.n) != (0, 0):
        return Result("trace syntax", False, "trefoil arity is not 0 -> 0")
    if format_cterm(eta.elem) != "Tr (Tr o B Tr o B C o C)" or (eta.m, eta.n) != (0, 2):
        return Result("trace syntax", False, "cup expression or arity wrong")
    if format_cterm(eps.elem) != "Tr (C o B C o B B o B)" or (eps.m, eps.n) != (2, 0):
        return Result("trace syntax", False, "cap expression or arity wrong")
    inner = operad.certify(parse_cterm("C+ o C+ o C+"), 2, 2, BCPMI, fuel=fuel)
    if not inner.checked:
        return Result("trace syntax", False, "closure input is not 2 -> 2")
    from .cli import main as cli_main

    code = cli_main(["eq", "-s", "bcpmi", "Tr (Tr (C+ o C+ o C+))", "I"])
    if code != 3:
        return Result("trace syntax", False, f"equality on Tr exited {code}, wanted 3")
    return Result("trace syntax", True, "exact prints, stated arities, equality refused")


CRITERIA = (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
    criterion_11,
    criterion_12,
)


def run_all(
    samples: int = 32,
    seed: int = 0,
    fuel: int = DEFAULT_FUEL,
    progress: bool = True,
) -> list[Result]:
    results = []
    for i, crit in enumerate(CRITERIA, start=1):
        res = crit(samples, seed, fuel)
        results.append(res)
        if progress:
            mark = "PASS" if res.ok else "FAIL"
            print(f"[{i:2d}] {mark} {res.name}: {res.detail}", flush=True)
    return results
