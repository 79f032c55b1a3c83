"""Lambda terms over four usage disciplines, with braid-annotated exchange.

Terms use de Bruijn indices internally; named variables exist only at the
parse/print boundary.  Identifiers that are not bound in scope parse as
`Const` leaves (free constants).

Wire bookkeeping.  Every term presents its free-variable occurrences to the
context in a definite order, its *wire list*.  For a plain term this is the
left-to-right occurrence order; a braid node permutes it by the underlying
permutation of its word.  Strand k of a braid node is the k-th wire counted
from the *end* of the wire list (so the innermost-bound variable rides strand
1), and the body side of the node is the start of the stored word.  These
conventions make `\\f x y. [{3; 1}] (f y x)` the positively-braided exchange
combinator and make substitution under a braid a cabling of the word.

Disciplines:

* planar    -- every context variable used exactly once, in context order;
               no braid nodes.
* linear    -- exactly-once usage, any order; no braid nodes.
* braided   -- exactly-once usage where every exchange is an explicit braid
               node; an abstraction always binds the last wire of its body.
* cartesian -- no usage constraint; no braid nodes.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator, Optional

from .braids import BraidWord, braid_compose, braid_equal, braid_is_trivial, cable, permute_contents


class Discipline(enum.Enum):
    PLANAR = "planar"
    LINEAR = "linear"
    BRAIDED = "braided"
    CARTESIAN = "cartesian"

    @property
    def exactly_once(self) -> bool:
        return self is not Discipline.CARTESIAN


class TermError(ValueError):
    pass


class ParseError(TermError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class DisciplineError(TermError):
    pass


# -- term nodes ---------------------------------------------------------------
# Hand-rolled immutable nodes: hashes and sizes are precomputed at construction
# and wire lists cached, since normalization traverses terms heavily.

class LTerm:
    # max_free: one more than the largest free de Bruijn index (0 if closed);
    # has_braid / canon are traversal-pruning caches for the normalizer.
    __slots__ = ("_hash", "size", "_wires", "max_free", "has_braid", "canon")

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"<{pretty(self)}>"


class Var(LTerm):
    __slots__ = ("index",)

    def __init__(self, index: int):
        if index < 0:
            raise TermError("negative de Bruijn index")
        self.index = index
        self._hash = hash(("v", index))
        self.size = 1
        self._wires = (index,)
        self.max_free = index + 1
        self.has_braid = False
        self.canon = True

    def __eq__(self, other):
        return type(other) is Var and other.index == self.index


class Const(LTerm):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self._hash = hash(("c", name))
        self.size = 1
        self._wires = ()
        self.max_free = 0
        self.has_braid = False
        self.canon = True

    def __eq__(self, other):
        return type(other) is Const and other.name == self.name


class Lam(LTerm):
    __slots__ = ("body",)

    def __init__(self, body: LTerm):
        self.body = body
        self._hash = hash(("l", body._hash))
        self.size = 1 + body.size
        self._wires = None
        self.max_free = max(body.max_free - 1, 0)
        self.has_braid = body.has_braid
        self.canon = False

    def __eq__(self, other):
        return type(other) is Lam and other._hash == self._hash and other.body == self.body


class App(LTerm):
    __slots__ = ("fn", "arg")

    def __init__(self, fn: LTerm, arg: LTerm):
        self.fn = fn
        self.arg = arg
        self._hash = hash(("a", fn._hash, arg._hash))
        self.size = 1 + fn.size + arg.size
        self._wires = None
        self.max_free = max(fn.max_free, arg.max_free)
        self.has_braid = fn.has_braid or arg.has_braid
        self.canon = False

    def __eq__(self, other):
        return (
            type(other) is App
            and other._hash == self._hash
            and other.fn == self.fn
            and other.arg == self.arg
        )


class BraidNode(LTerm):
    __slots__ = ("braid", "body")

    def __init__(self, braid: BraidWord, body: LTerm):
        self.braid = braid
        self.body = body
        self._hash = hash(("b", braid, body._hash))
        self.size = 1 + body.size
        self._wires = None
        self.max_free = body.max_free
        self.has_braid = True
        self.canon = False

    def __eq__(self, other):
        return (
            type(other) is BraidNode
            and other._hash == self._hash
            and other.braid == self.braid
            and other.body == self.body
        )


def app(*ts: LTerm) -> LTerm:
    """Left-associated application chain."""
    head = ts[0]
    for t in ts[1:]:
        head = App(head, t)
    return head


def lams(n: int, body: LTerm) -> LTerm:
    for _ in range(n):
        body = Lam(body)
    return body


# -- wires --------------------------------------------------------------------

def wires(t: LTerm) -> tuple[int, ...]:
    """Free-variable occurrences of t in presented order (de Bruijn indices
    relative to t's root).  Braid nodes permute the order of their body's
    wires by the underlying permutation of the word."""
    cached = t._wires
    if cached is not None:
        return cached
    if isinstance(t, Lam):
        ws = tuple(k - 1 for k in wires(t.body) if k > 0)
    elif isinstance(t, App):
        ws = wires(t.fn) + wires(t.arg)
    elif isinstance(t, BraidNode):
        inner = wires(t.body)
        if t.braid.strands != len(inner):
            raise TermError(
                f"braid on {t.braid.strands} strands over body with {len(inner)} wires"
            )
        rev = list(reversed(inner))
        ws = tuple(reversed(permute_contents(t.braid, rev)))
    else:
        raise TermError(f"unknown node {t!r}")
    t._wires = ws
    return ws


def free_indices(t: LTerm) -> set[int]:
    if isinstance(t, Var):
        return {t.index}
    if isinstance(t, Const):
        return set()
    if isinstance(t, Lam):
        return {k - 1 for k in free_indices(t.body) if k > 0}
    if isinstance(t, App):
        return free_indices(t.fn) | free_indices(t.arg)
    if isinstance(t, BraidNode):
        return free_indices(t.body)
    raise TermError(f"unknown node {t!r}")


# -- contexts -----------------------------------------------------------------

@dataclass(frozen=True)
class Context:
    """Ordered variable context; the last name binds innermost."""

    names: tuple[str, ...] = ()

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise TermError(f"context names not distinct: {self.names}")

    def __len__(self) -> int:
        return len(self.names)


def bind_context(t: LTerm, ctx: Context) -> LTerm:
    """Reinterpret constants named in ctx as context variables.

    Position i in ctx (0-based) becomes de Bruijn index len(ctx)-1-i at the
    root, matching a judgment whose last context entry binds innermost.
    """
    n = len(ctx)
    pos = {name: i for i, name in enumerate(ctx.names)}

    def go(u: LTerm, depth: int) -> LTerm:
        if isinstance(u, Const):
            i = pos.get(u.name)
            return u if i is None else Var(depth + (n - 1 - i))
        if isinstance(u, Var):
            return u
        if isinstance(u, Lam):
            return Lam(go(u.body, depth + 1))
        if isinstance(u, App):
            return App(go(u.fn, depth), go(u.arg, depth))
        if isinstance(u, BraidNode):
            return BraidNode(u.braid, go(u.body, depth))
        raise TermError(f"unknown node {u!r}")

    return go(t, 0)


# -- shifting and substitution ------------------------------------------------

def shift(t: LTerm, by: int, cutoff: int = 0) -> LTerm:
    if by == 0 or t.max_free <= cutoff:
        return t
    if isinstance(t, Var):
        return Var(t.index + by) if t.index >= cutoff else t
    if isinstance(t, Const):
        return t
    if isinstance(t, Lam):
        return Lam(shift(t.body, by, cutoff + 1))
    if isinstance(t, App):
        return App(shift(t.fn, by, cutoff), shift(t.arg, by, cutoff))
    if isinstance(t, BraidNode):
        return BraidNode(t.braid, shift(t.body, by, cutoff))
    raise TermError(f"unknown node {t!r}")


def subst(t: LTerm, level: int, arg: LTerm) -> LTerm:
    """Substitute arg for Var(level) in t (arg already lifted to t's depth).

    Under a braid node the strand carrying the substituted variable is
    replaced by as many parallel strands as arg has wires (width 0 deletes
    it), by cabling the word.
    """
    if t.max_free <= level:
        return t
    if isinstance(t, Var):
        return arg if t.index == level else t
    if isinstance(t, Const):
        return t
    if isinstance(t, Lam):
        return Lam(subst(t.body, level + 1, shift(arg, 1)))
    if isinstance(t, App):
        return App(subst(t.fn, level, arg), subst(t.arg, level, arg))
    if isinstance(t, BraidNode):
        outer = wires(t)
        if level not in outer:
            return BraidNode(t.braid, subst(t.body, level, arg))
        if outer.count(level) != 1:
            raise DisciplineError("duplicated wire under a braid node")
        pos = outer.index(level)
        strand = len(outer) - pos
        widths = [1] * len(outer)
        widths[strand - 1] = len(wires(arg))
        return BraidNode(cable(t.braid, widths), subst(t.body, level, arg))
    raise TermError(f"unknown node {t!r}")


def beta_step_at(fn: Lam, arg: LTerm) -> LTerm:
    """Contract the redex (\\x.body) arg."""
    return shift(subst(fn.body, 0, shift(arg, 1)), -1)


# -- discipline checking ------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    ok: bool
    message: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def _fail(msg: str) -> CheckResult:
    return CheckResult(False, msg)


def check_discipline(t: LTerm, d: Discipline, ctx: Context = Context()) -> CheckResult:
    """Well-formedness of t under discipline d in the given context."""
    t = bind_context(t, ctx)
    n = len(ctx)

    braids_allowed = d is Discipline.BRAIDED
    try:
        result = _check(t, d, braids_allowed)
    except TermError as e:
        return _fail(str(e))
    if not result.ok:
        return result

    if d is Discipline.CARTESIAN:
        bad = [k for k in free_indices(t) if k >= n]
        if bad:
            return _fail(f"unbound index {max(bad)} for context of size {n}")
        return CheckResult(True)

    ws = wires(t)
    if d is Discipline.LINEAR:
        if sorted(ws) != list(range(n)):
            return _fail(f"context variables not used exactly once: wires {list(ws)}")
    else:  # planar / braided: wire order must equal context order
        if list(ws) != list(range(n - 1, -1, -1)):
            return _fail(f"wires {list(ws)} do not match context order")
    return CheckResult(True)


def _check(t: LTerm, d: Discipline, braids_allowed: bool) -> CheckResult:
    if isinstance(t, (Var, Const)):
        return CheckResult(True)
    if isinstance(t, App):
        r = _check(t.fn, d, braids_allowed)
        if not r.ok:
            return r
        return _check(t.arg, d, braids_allowed)
    if isinstance(t, BraidNode):
        if not braids_allowed:
            return _fail(f"braid node not allowed in {d.value} discipline")
        inner = wires(t.body)
        if t.braid.strands != len(inner):
            return _fail(
                f"braid on {t.braid.strands} strands over body with {len(inner)} wires"
            )
        return _check(t.body, d, braids_allowed)
    if isinstance(t, Lam):
        if d is Discipline.CARTESIAN:
            return _check(t.body, d, braids_allowed)
        ws = wires(t.body)
        uses = ws.count(0)
        if uses != 1:
            return _fail(f"bound variable used {uses} times under its binder")
        if d in (Discipline.PLANAR, Discipline.BRAIDED) and ws[-1] != 0:
            if d is Discipline.PLANAR:
                return _fail("bound variable is not the last use in its body")
            return _fail("abstraction does not bind the last wire (missing braid?)")
        return _check(t.body, d, braids_allowed)
    raise TermError(f"unknown node {t!r}")


def free_vars(t: LTerm, ctx: Context | None = None) -> list:
    """Wire order of t's free variables.

    With a context: constants named in ctx count as context variables and the
    result lists their names.  Without: the de Bruijn indices of free Vars.
    """
    if ctx is not None:
        bound = bind_context(t, ctx)
        n = len(ctx)
        return [ctx.names[n - 1 - k] for k in wires(bound)]
    return list(wires(t))


# -- alpha equality -----------------------------------------------------------

def fuse_braids(t: LTerm) -> LTerm:
    """Drop trivial braid nodes and fuse adjacent ones (inner word first)."""
    if isinstance(t, (Var, Const)):
        return t
    if isinstance(t, Lam):
        return Lam(fuse_braids(t.body))
    if isinstance(t, App):
        return App(fuse_braids(t.fn), fuse_braids(t.arg))
    if isinstance(t, BraidNode):
        body = fuse_braids(t.body)
        word = t.braid
        while isinstance(body, BraidNode):
            word = braid_compose(body.braid, word)
            body = body.body
        if braid_is_trivial(word):
            return body
        return BraidNode(word, body)
    raise TermError(f"unknown node {t!r}")


def alpha_eq(t1: LTerm, t2: LTerm) -> bool:
    """Structural equality of de Bruijn representations; braid words are
    compared as group elements (trivial braids are transparent)."""
    return _alpha(fuse_braids(t1), fuse_braids(t2))


def _alpha(a: LTerm, b: LTerm) -> bool:
    if isinstance(a, Var):
        return isinstance(b, Var) and a.index == b.index
    if isinstance(a, Const):
        return isinstance(b, Const) and a.name == b.name
    if isinstance(a, Lam):
        return isinstance(b, Lam) and _alpha(a.body, b.body)
    if isinstance(a, App):
        return isinstance(b, App) and _alpha(a.fn, b.fn) and _alpha(a.arg, b.arg)
    if isinstance(a, BraidNode):
        return (
            isinstance(b, BraidNode)
            and a.braid.strands == b.braid.strands
            and braid_equal(a.braid, b.braid)
            and _alpha(a.body, b.body)
        )
    raise TermError(f"unknown node {a!r}")


# -- concrete syntax ----------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<lam>\\)|(?P<dot>\.)|(?P<lpar>\()|(?P<rpar>\))"
    r"|(?P<lbrk>\[)|(?P<rbrk>\])|(?P<lbrc>\{)|(?P<rbrc>\})|(?P<semi>;)"
    r"|(?P<int>-?\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_'+-]*))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> Optional[tuple[str, str, int]]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.i += 1
        return tok

    def expect(self, kind: str) -> tuple[str, str, int]:
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1]!r}", tok[2])
        return tok

    def parse_term(self, env: list[str]) -> LTerm:
        tok = self.peek()
        if tok is not None and tok[0] == "lam":
            self.next()
            names: list[str] = []
            while True:
                t2 = self.peek()
                if t2 is not None and t2[0] == "ident":
                    names.append(self.next()[1])
                elif t2 is not None and t2[0] == "dot":
                    self.next()
                    break
                else:
                    raise ParseError(
                        "expected binder name or '.'",
                        t2[2] if t2 else len(self.text),
                    )
            if not names:
                raise ParseError("abstraction with no binders", tok[2])
            body = self.parse_term(env + names)
            return lams(len(names), body)
        return self.parse_app(env)

    def parse_app(self, env: list[str]) -> LTerm:
        head = self.parse_atom(env)
        while True:
            nxt = self.parse_atom(env, optional=True)
            if nxt is None:
                return head
            head = App(head, nxt)

    def parse_atom(self, env: list[str], optional: bool = False) -> Optional[LTerm]:
        tok = self.peek()
        if tok is None:
            if optional:
                return None
            raise ParseError("unexpected end of input", len(self.text))
        kind, val, pos = tok
        if kind == "ident":
            self.next()
            if val in env:
                return Var(env[::-1].index(val))
            return Const(val)
        if kind == "lpar":
            self.next()
            t = self.parse_term(env)
            self.expect("rpar")
            return t
        if kind == "lbrk":
            self.next()
            word = self.parse_braid_literal()
            self.expect("rbrk")
            body = self.parse_atom(env)
            return BraidNode(word, body)
        if optional:
            return None
        raise ParseError(f"unexpected token {val!r}", pos)

    def parse_braid_literal(self) -> BraidWord:
        self.expect("lbrc")
        n_tok = self.expect("int")
        n = int(n_tok[1])
        self.expect("semi")
        letters = []
        while True:
            tok = self.peek()
            if tok is not None and tok[0] == "int":
                letters.append(int(self.next()[1]))
            else:
                break
        self.expect("rbrc")
        try:
            return BraidWord(n, tuple(letters))
        except ValueError as e:
            raise ParseError(str(e), n_tok[2]) from None


def parse(text: str) -> LTerm:
    """Parse the term grammar; unbound identifiers become constants."""
    p = _Parser(text)
    t = p.parse_term([])
    if p.peek() is not None:
        raise ParseError(f"trailing input {p.peek()[1]!r}", p.peek()[2])
    return t


_NAME_POOL = "xyzwvuts"


def _fresh_name(depth: int, taken: set[str]) -> str:
    if depth < len(_NAME_POOL) and _NAME_POOL[depth] not in taken:
        return _NAME_POOL[depth]
    k = 0
    while f"x{k}" in taken:
        k += 1
    return f"x{k}"


def pretty(t: LTerm) -> str:
    """Printable concrete syntax; parse(pretty(t)) == t for well-formed t."""
    consts: set[str] = set()

    def collect(u: LTerm):
        if isinstance(u, Const):
            consts.add(u.name)
        elif isinstance(u, Lam):
            collect(u.body)
        elif isinstance(u, App):
            collect(u.fn)
            collect(u.arg)
        elif isinstance(u, BraidNode):
            collect(u.body)

    collect(t)

    def go(u: LTerm, env: list[str]) -> str:
        if isinstance(u, Lam):
            names: list[str] = []
            body: LTerm = u
            while isinstance(body, Lam):
                name = _fresh_name(len(env) + len(names), consts | set(env) | set(names))
                names.append(name)
                body = body.body
            return f"\\{' '.join(names)}. {go(body, env + names)}"
        return go_app(u, env)

    def go_app(u: LTerm, env: list[str]) -> str:
        if isinstance(u, App):
            return f"{go_app(u.fn, env)} {go_atom(u.arg, env)}"
        return go_atom(u, env)

    def go_atom(u: LTerm, env: list[str]) -> str:
        if isinstance(u, Var):
            if u.index >= len(env):
                return f"_free{u.index - len(env)}"
            return env[len(env) - 1 - u.index]
        if isinstance(u, Const):
            return u.name
        if isinstance(u, BraidNode):
            return f"[{u.braid}] {go_atom(u.body, env)}"
        return f"({go(u, env)})"

    return go(t, [])


def tree_lines(t: LTerm, env: Optional[list[str]] = None, prefix: str = "") -> Iterator[str]:
    """Indented tree rendering (used by the CLI's --tree flag)."""
    env = env or []
    if isinstance(t, Var):
        name = env[len(env) - 1 - t.index] if t.index < len(env) else f"_free{t.index - len(env)}"
        yield f"{prefix}var {name}"
    elif isinstance(t, Const):
        yield f"{prefix}const {t.name}"
    elif isinstance(t, Lam):
        name = _fresh_name(len(env), set(env))
        yield f"{prefix}lam {name}"
        yield from tree_lines(t.body, env + [name], prefix + "  ")
    elif isinstance(t, App):
        yield f"{prefix}app"
        yield from tree_lines(t.fn, env, prefix + "  ")
        yield from tree_lines(t.arg, env, prefix + "  ")
    elif isinstance(t, BraidNode):
        yield f"{prefix}braid {t.braid}"
        yield from tree_lines(t.body, env, prefix + "  ")
