"""Exact computation in Artin braid groups and symmetric groups.

A braid word on n strands is stored as a sequence of nonzero integers: the
letter i (with 1 <= |i| <= n-1) is the elementary crossing of the strands at
positions |i| and |i|+1, positive for one crossing sense, negative for its
inverse.  Letters apply in storage order: `compose(u, v)` means "u, then v".

Width vectors for `cable` index the strand blocks at the *end* of the word
(the last-letter side); width 0 deletes a strand.

Word equality is decided by handle reduction: a terminating rewriting
procedure that sends a word to a form with no handles.  A reduced word is
empty iff the braid is trivial, and contains its lowest generator index with
a single sign otherwise, which also yields an exact test for membership in
the subgroup generated by the higher-index crossings (`is_clean_below`).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Strand or width counts do not line up."""


@dataclass(frozen=True)
class Permutation:
    """One-line permutation of {1..n}: image[k-1] is where k ends up."""

    size: int
    image: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.image) != list(range(1, self.size + 1)):
            raise ValueError(f"not a permutation of 1..{self.size}: {self.image}")

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(n, tuple(range(1, n + 1)))

    def is_identity(self) -> bool:
        return all(self.image[k] == k + 1 for k in range(self.size))

    def __call__(self, k: int) -> int:
        return self.image[k - 1]

    def inverse(self) -> "Permutation":
        img = [0] * self.size
        for k in range(1, self.size + 1):
            img[self.image[k - 1] - 1] = k
        return Permutation(self.size, tuple(img))

    def then(self, other: "Permutation") -> "Permutation":
        """Composite "self, then other"."""
        if self.size != other.size:
            raise DimensionError("permutation size mismatch")
        return Permutation(self.size, tuple(other(self(k)) for k in range(1, self.size + 1)))

    def block_sum(self, other: "Permutation") -> "Permutation":
        shifted = tuple(v + self.size for v in other.image)
        return Permutation(self.size + other.size, self.image + shifted)


@dataclass(frozen=True)
class BraidWord:
    """Element of the braid group on `strands` strands, as a generator word."""

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 0:
            raise ValueError("strand count must be non-negative")
        for a in self.letters:
            if a == 0 or not 1 <= abs(a) <= self.strands - 1:
                raise ValueError(f"letter {a} out of range for {self.strands} strands")

    def __str__(self) -> str:
        return format_braid(self)

    def __len__(self) -> int:
        return len(self.letters)


def trivial(n: int) -> BraidWord:
    return BraidWord(n, ())


def generator(n: int, i: int) -> BraidWord:
    return BraidWord(n, (i,))


def braid_compose(u: BraidWord, v: BraidWord) -> BraidWord:
    """Concatenation in diagram order: u first, then v."""
    if u.strands != v.strands:
        raise DimensionError(f"strand mismatch: {u.strands} vs {v.strands}")
    return BraidWord(u.strands, u.letters + v.letters)


def braid_inverse(u: BraidWord) -> BraidWord:
    return BraidWord(u.strands, tuple(-a for a in reversed(u.letters)))


def exponent_sum(u: BraidWord) -> int:
    """Image in the abelianization; an invariant of the braid."""
    return sum(1 if a > 0 else -1 for a in u.letters)


def underlying_permutation(u: BraidWord) -> Permutation:
    """Forget crossing signs: each letter becomes an adjacent transposition."""
    contents = list(range(1, u.strands + 1))
    for a in u.letters:
        i = abs(a)
        contents[i - 1], contents[i] = contents[i], contents[i - 1]
    image = [0] * u.strands
    for pos, strand in enumerate(contents, start=1):
        image[strand - 1] = pos
    return Permutation(u.strands, tuple(image))


def permute_contents(u: BraidWord, items: Sequence) -> list:
    """Push a list riding on the strands through the diagram of u."""
    if len(items) != u.strands:
        raise DimensionError("item count must equal strand count")
    contents = list(items)
    for a in u.letters:
        i = abs(a)
        contents[i - 1], contents[i] = contents[i], contents[i - 1]
    return contents


# -- handle reduction ---------------------------------------------------------

def _free_reduce(word: list[int]) -> list[int]:
    out: list[int] = []
    for a in word:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return out


def _find_handle(word: list[int]) -> tuple[int, int] | None:
    """Leftmost-closing handle: positions (s, t) with word[s] = -word[t],
    equal index, and nothing of index <= that index strictly between."""
    last_seen: dict[int, int] = {}
    for t, a in enumerate(word):
        i = abs(a)
        s = last_seen.get(i)
        if s is not None and word[s] == -a:
            if all(abs(word[k]) > i for k in range(s + 1, t)):
                return s, t
        last_seen[i] = t
    return None


def handle_reduce(u: BraidWord) -> BraidWord:
    """Fully handle-reduced word representing the same braid."""
    word = _free_reduce(list(u.letters))
    while True:
        h = _find_handle(word)
        if h is None:
            return BraidWord(u.strands, tuple(word))
        s, t = h
        i, e = abs(word[s]), (1 if word[s] > 0 else -1)
        mid: list[int] = []
        for a in word[s + 1 : t]:
            if abs(a) == i + 1:
                mid += [-(i + 1) * e, i * (1 if a > 0 else -1), (i + 1) * e]
            else:
                mid.append(a)
        word = _free_reduce(word[:s] + mid + word[t + 1 :])


def braid_is_trivial(u: BraidWord) -> bool:
    """Exact triviality test: fast rejects, then handle reduction."""
    if not u.letters:
        return True
    if exponent_sum(u) != 0:
        return False
    if not underlying_permutation(u).is_identity():
        return False
    return len(handle_reduce(u).letters) == 0


def braid_equal(u: BraidWord, v: BraidWord) -> bool:
    if u.strands != v.strands:
        raise DimensionError(f"strand mismatch: {u.strands} vs {v.strands}")
    return braid_is_trivial(braid_compose(u, braid_inverse(v)))


def is_clean_below(u: BraidWord, i: int = 1) -> BraidWord | None:
    """If u lies in the subgroup generated by crossings of index > i-1 ...

    Concretely: decide whether u is representable without any letter of index
    < i+0, i.e. whether strand block 1..i-1 stays uncrossed.  With the default
    i=1 this asks whether strand 1 never crosses anything.  Returns a reduced
    witness word avoiding index i-1... (indexes < i), or None.

    Only i=1 is needed by callers; a reduced word is free of index-1 letters
    exactly when the braid lies in the subgroup generated by the others.
    """
    reduced = handle_reduce(u)
    if all(abs(a) > i for a in reduced.letters):
        return reduced
    return None


def remove_strand_one(u: BraidWord) -> BraidWord | None:
    """Delete strand 1 when it is unentangled; None when it is not."""
    clean = is_clean_below(u, 1)
    if clean is None:
        return None
    return BraidWord(u.strands - 1, tuple((abs(a) - 1) * (1 if a > 0 else -1) for a in clean.letters))


# -- cabling and block sums ---------------------------------------------------

def _positive_block_crossing(p: int, q: int, offset: int) -> list[int]:
    """Positive crossing of a p-wide block (lower) with a q-wide block (upper),
    strands offset+1..offset+p+q; emits p*q positive letters."""
    word: list[int] = []
    for row in range(q):
        word += [offset + p + row - j for j in range(p)]
    return word


def cable(u: BraidWord, widths: Sequence[int]) -> BraidWord:
    """Replace each strand by a parallel block of the given width.

    `widths[k-1]` is the width of the block at position k on the end side of
    the word; width 0 deletes the strand.
    """
    if len(widths) != u.strands:
        raise DimensionError(f"need {u.strands} widths, got {len(widths)}")
    if any(w < 0 for w in widths):
        raise ValueError("widths must be non-negative")
    w = list(widths)
    out: list[int] = []
    for a in reversed(u.letters):
        i = abs(a)
        left = list(w)
        left[i - 1], left[i] = w[i], w[i - 1]
        p, q = left[i - 1], left[i]
        offset = sum(left[: i - 1])
        if a > 0:
            cross = _positive_block_crossing(p, q, offset)
        else:
            cross = [-x for x in reversed(_positive_block_crossing(q, p, offset))]
        out = cross + out
        w = left
    return BraidWord(sum(widths), tuple(out))


def direct_sum(ts: Iterable[BraidWord]) -> BraidWord:
    """Side-by-side block sum, shifting letters past earlier summands."""
    letters: list[int] = []
    total = 0
    for t in ts:
        letters += [(abs(a) + total) * (1 if a > 0 else -1) for a in t.letters]
        total += t.strands
    return BraidWord(total, tuple(letters))


def shift_strands(u: BraidWord, by: int) -> BraidWord:
    """u acting on strands by+1 .. by+u.strands inside a larger group."""
    return direct_sum([trivial(by), u])


# -- text syntax --------------------------------------------------------------

_BRAID_RE = re.compile(r"^\s*\{\s*(\d+)\s*;((?:\s*-?\d+)*)\s*\}\s*$")


def parse_braid(text: str) -> BraidWord:
    """Parse the literal syntax `{n; i1 i2 ...}` (letters optional)."""
    m = _BRAID_RE.match(text)
    if not m:
        raise ValueError(f"malformed braid literal: {text!r}")
    n = int(m.group(1))
    letters = tuple(int(tok) for tok in m.group(2).split())
    return BraidWord(n, letters)


def format_braid(u: BraidWord) -> str:
    if not u.letters:
        return f"{{{u.strands};}}"
    return f"{{{u.strands}; {' '.join(str(a) for a in u.letters)}}}"
