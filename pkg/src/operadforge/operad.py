"""Arities, the internal operad, group actions, and trace syntax.

An element a has arity m -> n when a* o B^{m+1} equals (B a) o B^n, where
B^k is the k-fold composition power of B (the identity when k = 0) and
composition chains associate to the right.  The internal operad at arity m
consists of the elements equal to (a I)* o B^m; its identity is I and its
binary application element is B.

Braid-group actions on operad elements encode the generator at index i as
the i-1 fold B-application of the exchange combinator (sign-matched in the
braided signature), composed onto the element letter by letter.  The free
choices in this encoding are pinned by the action laws and the equivariance
condition, which the test suite checks exhaustively on small sizes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .braids import BraidWord, braid_compose, cable, underlying_permutation
from .comb import (
    BCIWK,
    BCPMI,
    Bullet,
    CApp,
    CombError,
    CTerm,
    ConstRef,
    I,
    Prim,
    Signature,
    UnsupportedTrace,
    b_power_apply,
    b_power_element,
    capp,
    comb_equal,
    comb_normal_form,
    compose,
    contains_trace,
    format_cterm,
    from_lambda_applicative,
    parse_cterm,
    sample_closed,
    subst_consts,
)
from .normalize import DEFAULT_FUEL, Verdict

B = Prim("B")
TR = Prim("Tr")


class ArityError(CombError):
    pass


@dataclass(frozen=True)
class ArityCert:
    """An element paired with an arity statement.

    checked is True only when `has_arity` verified the statement; stated
    certificates (trace syntax) carry checked=False.
    """

    elem: CTerm
    m: int
    n: int
    checked: bool = False

    def __str__(self) -> str:
        mark = "" if self.checked else " (stated)"
        return f"{format_cterm(self.elem)} : {self.m} -> {self.n}{mark}"


@dataclass(frozen=True)
class OperadElem:
    """An element of the internal operad at a given input arity."""

    elem: CTerm
    m: int


# -- arity predicates ---------------------------------------------------------

def arity_lhs_rhs(a: CTerm, m: int, n: int) -> tuple[CTerm, CTerm]:
    lhs = compose(Bullet(a), b_power_element(m + 1))
    rhs = compose(CApp(B, a), b_power_element(n))
    return lhs, rhs


def has_arity(
    a: CTerm, m: int, n: int, sig: Signature, fuel: int = DEFAULT_FUEL
) -> Verdict:
    """Decide whether a is of arity m -> n in the signature's term model."""
    if contains_trace(a):
        raise UnsupportedTrace("arity checking does not cover Tr")
    lhs, rhs = arity_lhs_rhs(a, m, n)
    return comb_equal(lhs, rhs, sig, fuel=fuel)


def certify(a: CTerm, m: int, n: int, sig: Signature, fuel: int = DEFAULT_FUEL) -> ArityCert:
    v = has_arity(a, m, n, sig, fuel=fuel)
    if v is not Verdict.EQUAL:
        raise ArityError(f"{format_cterm(a)} is not of arity {m} -> {n} ({v})")
    return ArityCert(a, m, n, checked=True)


def infer_arity(
    a: CTerm, bound: int = 4, sig: Signature = BCIWK, fuel: int = DEFAULT_FUEL
) -> Optional[tuple[int, int]]:
    """Lexicographically least (m+n, m) arity within the bound, if any."""
    for total in range(0, 2 * bound + 1):
        for m in range(0, total + 1):
            n = total - m
            if m > bound or n > bound:
                continue
            if has_arity(a, m, n, sig, fuel=fuel) is Verdict.EQUAL:
                return (m, n)
    return None


def membership_lhs_rhs(a: CTerm, m: int) -> tuple[CTerm, CTerm]:
    return a, compose(Bullet(CApp(a, I)), b_power_element(m))


def in_internal_operad(
    a: CTerm, m: int, sig: Signature, fuel: int = DEFAULT_FUEL
) -> Verdict:
    """Membership in the internal operad at arity m: a = (a I)* o B^m."""
    lhs, rhs = membership_lhs_rhs(a, m)
    return comb_equal(lhs, rhs, sig, fuel=fuel)


def operad_elem(
    a: CTerm, m: int, sig: Signature, verify: bool = True, fuel: int = DEFAULT_FUEL
) -> OperadElem:
    if verify:
        v = in_internal_operad(a, m, sig, fuel=fuel)
        if v is not Verdict.EQUAL:
            raise ArityError(f"{format_cterm(a)} is not in the operad at arity {m} ({v})")
    return OperadElem(a, m)


# -- operad structure -----------------------------------------------------------

ID_ELEM = OperadElem(I, 1)
APP_ELEM = OperadElem(B, 2)


def operad_compose(
    g: OperadElem,
    fs: Sequence[OperadElem],
    sig: Signature,
    verify: bool = False,
    fuel: int = DEFAULT_FUEL,
) -> OperadElem:
    """Multi-composition g(f_1, .., f_n): the composite
    f1 o (B f2) o .. o (B^{n-1} fn) o g at arity k1 + .. + kn."""
    if len(fs) != g.m:
        raise ArityError(f"need {g.m} arguments, got {len(fs)}")
    parts = [b_power_apply(i, f.elem) for i, f in enumerate(fs)]
    elem = compose(*parts, g.elem) if parts else g.elem
    out = OperadElem(elem, sum(f.m for f in fs))
    if verify:
        v = in_internal_operad(out.elem, out.m, sig, fuel=fuel)
        if v is not Verdict.EQUAL:
            raise ArityError(f"composite left the operad ({v})")
    return out


def closed_lambda(
    t: OperadElem, sig: Signature, verify: bool = True, fuel: int = DEFAULT_FUEL
) -> OperadElem:
    """The closure of t in IA(m+1): the unique u in IA(m) with u o B = t."""
    if t.m < 1:
        raise ArityError("closure needs arity at least 1")
    if verify:
        v = in_internal_operad(t.elem, t.m, sig, fuel=fuel)
        if v is not Verdict.EQUAL:
            raise ArityError(f"not an operad element at arity {t.m} ({v})")
    elem = compose(Bullet(CApp(t.elem, I)), b_power_element(t.m - 1))
    return OperadElem(elem, t.m - 1)


def tensor(
    a: ArityCert, b: ArityCert, sig: Signature, fuel: int = DEFAULT_FUEL
) -> ArityCert:
    """Parallel composition: a : m->n and b : p->q give (m+p) -> (n+q),
    realized as a o (B^n b); equal to (B^m b) o a by the exchange law."""
    if not (a.checked and b.checked):
        raise ArityError("tensor requires checked certificates")
    elem = compose(a.elem, b_power_apply(a.n, b.elem))
    return certify(elem, a.m + b.m, a.n + b.n, sig, fuel=fuel)


# -- group actions ----------------------------------------------------------------

def _exchange_prim(sig: Signature, positive: bool) -> CTerm:
    if sig.tag == "BCpmI":
        return Prim("C+") if positive else Prim("C-")
    if sig.tag in ("BCI", "BCIWK"):
        return Prim("C")
    raise CombError(f"signature {sig.tag} has no exchange combinator")


def letter_element(letter: int, sig: Signature) -> CTerm:
    """The operad element realizing the braid generator at index |letter|."""
    return b_power_apply(abs(letter) - 1, _exchange_prim(sig, letter > 0))


def action_word(s: BraidWord, sig: Signature) -> CTerm:
    """Composite realizing the action of the whole word (I for the empty
    word).  Letters accumulate by pre-composition, so concatenation of words
    matches composition of actions."""
    out: CTerm = I
    for letter in s.letters:
        out = compose(letter_element(letter, sig), out)
    return out


def group_action(
    f: OperadElem, s: BraidWord, sig: Signature, fuel: int = DEFAULT_FUEL
) -> OperadElem:
    """The action f . s of a braid (or permutation) word on an operad element."""
    if s.strands != f.m:
        raise ArityError(f"word on {s.strands} strands cannot act at arity {f.m}")
    if not s.letters:
        return f
    return OperadElem(compose(action_word(s, sig), f.elem), f.m)


def check_equivariance(
    f: OperadElem,
    gs: Sequence[OperadElem],
    s: BraidWord,
    sig: Signature,
    fuel: int = DEFAULT_FUEL,
) -> Verdict:
    """The compatibility law between multi-composition and the group action:

        (f . s)(g_1, .., g_k)  =  (f(g_{s^-1(1)}, .., g_{s^-1(k)})) . s[j_1, .., j_k]

    with j_i the arity of g_i and strand i of s carrying g_i.
    """
    k = f.m
    if s.strands != k or len(gs) != k:
        raise ArityError("equivariance check needs matching sizes")
    widths = [g.m for g in gs]
    lhs = operad_compose(group_action(f, s, sig), list(gs), sig)
    # Our permutation image maps a strand's start position to its end
    # position, which is the inverse of the indexing the displayed law uses;
    # slot i of the inner composite therefore receives gs[perm(i)].
    perm = underlying_permutation(s)
    permuted = [gs[perm(i) - 1] for i in range(1, k + 1)]
    cabled = cable(s, widths)
    rhs = group_action(operad_compose(f, permuted, sig), cabled, sig, fuel=fuel)
    return comb_equal(lhs.elem, rhs.elem, sig, fuel=fuel)


# -- the hom to polynomials-as-functions -------------------------------------------

@dataclass(frozen=True)
class PolyEvaluator:
    """The polynomial function image of an operad element."""

    source: OperadElem

    @property
    def arity(self) -> int:
        return self.source.m


def poly_hom_F(f: OperadElem) -> PolyEvaluator:
    return PolyEvaluator(f)


def evaluate(
    pe: PolyEvaluator,
    args: Sequence[CTerm],
    sig: Signature,
    fuel: int = DEFAULT_FUEL,
) -> CTerm:
    """Value of the polynomial at closed arguments: f I a1 .. an, normalized.

    Operad elements evaluate to applicative combinations of their arguments;
    the normal form is computed with the arguments held abstract and the
    actual arguments substituted back at the end.
    """
    n = pe.arity
    if len(args) != n:
        raise ArityError(f"need {n} arguments, got {len(args)}")
    fresh = [ConstRef(f"_arg{i}") for i in range(n)]
    expr = capp(pe.source.elem, I, *fresh)
    nf = comb_normal_form(expr, sig, fuel=fuel)
    out = from_lambda_applicative(nf)
    return subst_consts(out, {f"_arg{i}": a for i, a in enumerate(args)})


# -- trace syntax ------------------------------------------------------------------

def _require_trace(sig: Signature) -> None:
    if not sig.trace_extension:
        raise UnsupportedTrace("the trace combinator needs the trace extension")


def trace_syntax(f: ArityCert, sig: Signature) -> ArityCert:
    """Close one wire: Tr f has arity m -> n when f has m+1 -> n+1.

    Construction and printing only; no equality involves Tr.
    """
    _require_trace(sig)
    if f.m < 1 or f.n < 1:
        raise ArityError("trace needs at least one input and one output wire")
    return ArityCert(CApp(TR, f.elem), f.m - 1, f.n - 1, checked=False)


def eta_eps(sig: Signature | None = None) -> tuple[ArityCert, ArityCert]:
    """The cup and cap built from the trace combinator, of arities 0 -> 2
    and 2 -> 0."""
    if sig is not None:
        _require_trace(sig)
    eta = parse_cterm("Tr (Tr o B Tr o B C o C)")
    eps = parse_cterm("Tr (C o B C o B B o B)")
    return ArityCert(eta, 0, 2, checked=False), ArityCert(eps, 2, 0, checked=False)


def trefoil(sig: Signature | None = None) -> ArityCert:
    """The closure of the cubed positive exchange: a 0 -> 0 expression."""
    if sig is not None:
        _require_trace(sig)
    inner = parse_cterm("C+ o C+ o C+")
    once = ArityCert(CApp(TR, inner), 1, 1, checked=False)
    return ArityCert(CApp(TR, once.elem), 0, 0, checked=False)


# -- samples -----------------------------------------------------------------------

def sample_operad_elem(
    m: int, sig: Signature, rng: random.Random, depth: int = 2
) -> OperadElem:
    """A pseudo-random member of the operad at arity m, built as a* o B^m."""
    a = sample_closed(sig, rng, max_depth=depth)
    return OperadElem(compose(Bullet(a), b_power_element(m)), m)
