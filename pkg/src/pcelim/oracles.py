"""Slow, independent reference implementations used to cross-check the fast
routines.  None of these share code with the normal-form machinery: they work
on plain letter sequences and explore rewriting graphs directly."""

from __future__ import annotations

from collections import deque
from itertools import product
from typing import Sequence

from .alphabet import IndependenceAlphabet


def commutation_class(alpha: IndependenceAlphabet, word: Sequence[str]) -> frozenset[tuple[str, ...]]:
    """All words reachable from ``word`` by swapping adjacent commuting letters."""
    start = tuple(word)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for i in range(len(w) - 1):
            if w[i] != w[i + 1] and alpha.commute(w[i], w[i + 1]):
                v = w[:i] + (w[i + 1], w[i]) + w[i + 2:]
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
    return frozenset(seen)


def lex_least(alpha: IndependenceAlphabet, word: Sequence[str]) -> tuple[str, ...]:
    """Lexicographically least member of the commutation class (letter order of alpha)."""
    return min(commutation_class(alpha, word), key=lambda w: [alpha.index(a) for a in w])


def all_words(letters: Sequence[str], n: int):
    for k in range(n + 1):
        yield from product(letters, repeat=k)


class RewritingOracle:
    """Group reduction by brute force over the rewriting graph on traces.

    Moves are: pick any representative word of the class and delete an
    adjacent pair ``x x'``.  ``terminals(w)`` is the set of classes reachable
    from w that admit no further move; confluence means it is a singleton.
    """

    def __init__(self, doubled: IndependenceAlphabet, bar):
        self.alpha = doubled
        self.bar = bar
        self._memo = {}

    def _key(self, word):
        return lex_least(self.alpha, word)

    def successors(self, word) -> set:
        out = set()
        for w in commutation_class(self.alpha, word):
            for i in range(len(w) - 1):
                if w[i + 1] == self.bar(w[i]):
                    out.add(self._key(w[:i] + w[i + 2:]))
        return out

    def terminals(self, word) -> frozenset:
        key = self._key(word)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        nxt = self.successors(key)
        if not nxt:
            res = frozenset([key])
        else:
            res = frozenset().union(*(self.terminals(v) for v in nxt))
        self._memo[key] = res
        return res


def piling(base: IndependenceAlphabet, word: Sequence[tuple[str, int]]):
    """Word problem in the right-angled Artin group of ``base`` by piling.

    ``word`` is a sequence of (letter, +1/-1).  Each letter owns a pile; a
    letter pushes itself on its own pile and a 0 marker on the piles of the
    letters it does not commute with, or pops them all when its inverse sits
    on top.  Two words are equal in the group iff their piles agree, and the
    number of nonzero entries is the reduced length.
    """
    n = len(base)
    piles = [[] for _ in range(n)]
    for a, e in word:
        i = base.index(a)
        blockers = [j for j in range(n) if j != i and not base.commute(base.letters[j], a)]
        if piles[i] and piles[i][-1] == -e:
            piles[i].pop()
            for j in blockers:
                piles[j].pop()
        else:
            piles[i].append(e)
            for j in blockers:
                piles[j].append(0)
    return tuple(tuple(p) for p in piles)


def piling_length(piles) -> int:
    return sum(1 for p in piles for x in p if x)
