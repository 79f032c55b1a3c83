"""An axiom-level rewriting oracle, independent of the normalizer.

Treats each row of the braided axiom table as a bidirectional rewrite rule
(metavariables match arbitrary subterms) and searches breadth-first, up to a
depth bound, for a path between two expressions.  Used to cross-check Equal
verdicts of the normalization route on small instances.
"""

from collections import deque
from itertools import islice

from operadforge.comb import (
    BRAIDED_AXIOMS,
    Bullet,
    CApp,
    ConstRef,
    CTerm,
    parse_cterm,
)

_META = ("a", "b", "c")


def _match(pattern: CTerm, term: CTerm, env: dict) -> dict | None:
    if isinstance(pattern, ConstRef) and pattern.name in _META:
        bound = env.get(pattern.name)
        if bound is None:
            out = dict(env)
            out[pattern.name] = term
            return out
        return env if bound == term else None
    if isinstance(pattern, CApp) and isinstance(term, CApp):
        env2 = _match(pattern.fn, term.fn, env)
        if env2 is None:
            return None
        return _match(pattern.arg, term.arg, env2)
    if isinstance(pattern, Bullet) and isinstance(term, Bullet):
        return _match(pattern.arg, term.arg, env)
    return env if pattern == term else None


def _instantiate(pattern: CTerm, env: dict) -> CTerm:
    if isinstance(pattern, ConstRef) and pattern.name in _META:
        return env[pattern.name]
    if isinstance(pattern, CApp):
        return CApp(_instantiate(pattern.fn, env), _instantiate(pattern.arg, env))
    if isinstance(pattern, Bullet):
        return Bullet(_instantiate(pattern.arg, env))
    return pattern


def _rules():
    rules = []
    for ax in BRAIDED_AXIOMS:
        for lhs_src, rhs_src in ax.variants:
            lhs, rhs = parse_cterm(lhs_src), parse_cterm(rhs_src)
            rules.append((lhs, rhs))
            rules.append((rhs, lhs))
    return rules


_RULES = _rules()


def _rewrites(term: CTerm):
    for lhs, rhs in _RULES:
        env = _match(lhs, term, {})
        if env is not None:
            try:
                yield _instantiate(rhs, env)
            except KeyError:
                pass  # rule introduces a metavariable the left side lacks
    if isinstance(term, CApp):
        for fn2 in _rewrites(term.fn):
            yield CApp(fn2, term.arg)
        for arg2 in _rewrites(term.arg):
            yield CApp(term.fn, arg2)
    if isinstance(term, Bullet):
        for arg2 in _rewrites(term.arg):
            yield Bullet(arg2)


def provably_equal(lhs: CTerm, rhs: CTerm, depth: int = 5, width: int = 4000) -> bool:
    """Bidirectional BFS: can the axiom rules join lhs and rhs within depth?"""
    if lhs == rhs:
        return True
    seen_l, seen_r = {lhs}, {rhs}
    frontier_l, frontier_r = deque([(lhs, 0)]), deque([(rhs, 0)])
    for _ in range(depth):
        for frontier, seen, other in (
            (frontier_l, seen_l, seen_r),
            (frontier_r, seen_r, seen_l),
        ):
            next_items = []
            while frontier:
                t, d = frontier.popleft()
                for t2 in islice(_rewrites(t), width):
                    if t2 in other:
                        return True
                    if t2 not in seen and len(seen) < width:
                        seen.add(t2)
                        next_items.append((t2, d + 1))
            frontier.extend(next_items)
    return False
