import random

import pytest
from hypothesis import strategies as st

from operadforge.braids import BraidWord


def braid_words(max_strands: int = 5, max_len: int = 8):
    """Hypothesis strategy for small braid words."""

    def build(n: int):
        if n <= 1:
            return st.just(BraidWord(n, ()))
        letters = st.integers(min_value=1, max_value=n - 1).flatmap(
            lambda i: st.sampled_from([i, -i])
        )
        return st.lists(letters, max_size=max_len).map(lambda ls: BraidWord(n, tuple(ls)))

    return st.integers(min_value=0, max_value=max_strands).flatmap(build)


def paired_braid_words(max_strands: int = 5, max_len: int = 6):
    """Two words on the same strand count."""

    def build(n: int):
        if n <= 1:
            return st.tuples(st.just(BraidWord(n, ())), st.just(BraidWord(n, ())))
        letters = st.integers(min_value=1, max_value=n - 1).flatmap(
            lambda i: st.sampled_from([i, -i])
        )
        word = st.lists(letters, max_size=max_len).map(lambda ls: BraidWord(n, tuple(ls)))
        return st.tuples(word, word)

    return st.integers(min_value=2, max_value=max_strands).flatmap(build)


@pytest.fixture
def rng():
    return random.Random(0)
