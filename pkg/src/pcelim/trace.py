"""Traces: elements of the free partially commutative monoid M(A, theta).

A trace is stored as the lexicographically least word of its commutation
class, encoded as a tuple of letter indices of its alphabet.  The low-level
helpers working on such index tuples (``*_codes``) are what the heavier
enumeration routines elsewhere in the package use directly.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Sequence

from .alphabet import AlphabetError, IndependenceAlphabet


# -- index-tuple primitives ----------------------------------------------------

def append_code(nf: tuple, x: int, dep: Sequence[int]) -> tuple:
    """Normal form of ``nf . x`` where ``nf`` is already a normal form.

    The greedy lex-least linearisation keeps the order of ``nf`` and emits x
    at the first step where it is available and smaller than the next letter.
    """
    dx = dep[x]
    p = len(nf)
    while p and not (dx >> nf[p - 1]) & 1:
        p -= 1
    n = len(nf)
    while p < n and nf[p] < x:
        p += 1
    return nf[:p] + (x,) + nf[p:]


def is_last_letter(nf: tuple, x: int, dep: Sequence[int]) -> bool:
    """True iff ``nf + (x,)`` is itself a normal form.

    Prefixes of normal forms are normal forms, so extending every normal
    form by exactly these letters enumerates each trace once.
    """
    dx = dep[x]
    for y in reversed(nf):
        if (dx >> y) & 1:
            return True
        if y > x:
            return False
    return True


def normal_codes(word: Iterable[int], dep: Sequence[int]) -> tuple:
    nf = ()
    for x in word:
        nf = append_code(nf, x, dep)
    return nf


def concat_codes(u: tuple, v: tuple, dep: Sequence[int]) -> tuple:
    for x in v:
        u = append_code(u, x, dep)
    return u


def initial_mask(nf: tuple, dep: Sequence[int]) -> int:
    blocked = 0
    ia = 0
    for x in nf:
        if not (blocked >> x) & 1:
            ia |= 1 << x
        blocked |= dep[x]
    return ia


def terminal_mask(nf: tuple, dep: Sequence[int]) -> int:
    blocked = 0
    ta = 0
    for x in reversed(nf):
        if not (blocked >> x) & 1:
            ta |= 1 << x
        blocked |= dep[x]
    return ta


def left_divide_codes(x: int, nf: tuple, dep: Sequence[int]):
    blocked = 0
    for i, y in enumerate(nf):
        if y == x:
            if (blocked >> x) & 1:
                return None
            return normal_codes(nf[:i] + nf[i + 1:], dep)
        blocked |= dep[y]
    return None


def right_divide_codes(nf: tuple, x: int, dep: Sequence[int]):
    blocked = 0
    for i in range(len(nf) - 1, -1, -1):
        y = nf[i]
        if y == x:
            if (blocked >> x) & 1:
                return None
            return normal_codes(nf[:i] + nf[i + 1:], dep)
        blocked |= dep[y]
    return None


def left_quotient_codes(u: tuple, t: tuple, dep: Sequence[int]):
    """``w`` with ``t = u . w``, or None when u is not a left divisor of t."""
    for x in u:
        t = left_divide_codes(x, t, dep)
        if t is None:
            return None
    return t


def mask_letters(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


# -- Trace ---------------------------------------------------------------------

class Trace:
    """An element of M(A, theta) in lexicographic normal form.

    Build traces with :func:`normalize` (or :meth:`Trace.parse`); the
    constructor trusts that ``codes`` is already normal.
    """

    __slots__ = ("alphabet", "codes", "_hash")

    def __init__(self, alphabet: IndependenceAlphabet, codes: tuple):
        self.alphabet = alphabet
        self.codes = codes
        self._hash = hash(codes)

    @classmethod
    def empty(cls, alphabet: IndependenceAlphabet) -> Trace:
        return cls(alphabet, ())

    @classmethod
    def parse(cls, alphabet: IndependenceAlphabet, text: str) -> Trace:
        return normalize(alphabet, parse_word(alphabet, text))

    @property
    def word(self) -> tuple[str, ...]:
        letters = self.alphabet.letters
        return tuple(letters[i] for i in self.codes)

    def __len__(self):
        return len(self.codes)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if not isinstance(other, Trace):
            return NotImplemented
        return self.codes == other.codes and (
            self.alphabet is other.alphabet or self.alphabet == other.alphabet)

    def sort_key(self):
        return (len(self.codes), self.codes)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __mul__(self, other):
        if not isinstance(other, Trace):
            return NotImplemented
        return concat(self, other)

    def __str__(self):
        if not self.codes:
            return "1"
        w = self.word
        sep = "" if all(len(a) == 1 for a in self.alphabet.letters) else " "
        return sep.join(w)

    def label(self) -> str:
        """Space-free text, used when traces become letters of a derived alphabet."""
        return str(self).replace(" ", ".")

    def __repr__(self):
        return f"Trace({str(self)!r})"

    def alph(self) -> frozenset[str]:
        letters = self.alphabet.letters
        return frozenset(letters[i] for i in set(self.codes))

    def alph_mask(self) -> int:
        m = 0
        for x in self.codes:
            m |= 1 << x
        return m

    def is_empty(self) -> bool:
        return not self.codes


def _check_same(t: Trace, u: Trace):
    if t.alphabet is not u.alphabet and t.alphabet != u.alphabet:
        raise AlphabetError("alphabet mismatch between traces")


def parse_word(alpha: IndependenceAlphabet, text: str) -> tuple[str, ...]:
    """Split trace text into letters.

    Tokens are whitespace separated; a token that is not itself a letter is
    split by longest match.  A lone ``1`` denotes the empty trace.
    """
    text = text.strip()
    if text == "1" and "1" not in alpha:
        return ()
    longest = max((len(a) for a in alpha.letters), default=1)
    out = []
    for tok in text.split():
        if tok in alpha:
            out.append(tok)
            continue
        i = 0
        while i < len(tok):
            for k in range(min(longest, len(tok) - i), 0, -1):
                if tok[i:i + k] in alpha:
                    out.append(tok[i:i + k])
                    i += k
                    break
            else:
                raise AlphabetError(f"unknown letter in {tok!r}")
    return tuple(out)


def _codes_of(alpha: IndependenceAlphabet, w) -> list[int]:
    if isinstance(w, str):
        w = parse_word(alpha, w)
    return [alpha.index(a) for a in w]


def normalize(alpha: IndependenceAlphabet, w) -> Trace:
    """The trace of the word ``w`` (a letter sequence, or trace text)."""
    return Trace(alpha, normal_codes(_codes_of(alpha, w), alpha._dep))


def concat(t: Trace, u: Trace) -> Trace:
    _check_same(t, u)
    return Trace(t.alphabet, concat_codes(t.codes, u.codes, t.alphabet._dep))


def product(alpha: IndependenceAlphabet, traces: Iterable[Trace]) -> Trace:
    codes = ()
    dep = alpha._dep
    for t in traces:
        _check_same(t, Trace(alpha, ()))
        codes = concat_codes(codes, t.codes, dep)
    return Trace(alpha, codes)


def equivalent(alpha: IndependenceAlphabet, u, v) -> bool:
    """Decide ``u ==_theta v`` by projections, independently of normal forms.

    Two words are congruent iff they have the same letter counts and the same
    projection onto every pair of non-commuting letters.
    """
    u = [alpha.letters[i] for i in _codes_of(alpha, u)]
    v = [alpha.letters[i] for i in _codes_of(alpha, v)]
    if Counter(u) != Counter(v):
        return False
    present = sorted(set(u), key=alpha.index)
    for i, a in enumerate(present):
        for b in present[i + 1:]:
            if alpha.commute(a, b):
                continue
            if [x for x in u if x in (a, b)] != [x for x in v if x in (a, b)]:
                return False
    return True


def initial_alphabet(t: Trace) -> frozenset[str]:
    letters = t.alphabet.letters
    return frozenset(letters[i] for i in mask_letters(initial_mask(t.codes, t.alphabet._dep)))


def terminal_alphabet(t: Trace) -> frozenset[str]:
    letters = t.alphabet.letters
    return frozenset(letters[i] for i in mask_letters(terminal_mask(t.codes, t.alphabet._dep)))


def left_divide(a: str, t: Trace) -> Trace | None:
    if a not in t.alphabet:
        return None
    r = left_divide_codes(t.alphabet.index(a), t.codes, t.alphabet._dep)
    return None if r is None else Trace(t.alphabet, r)


def right_divide(t: Trace, a: str) -> Trace | None:
    if a not in t.alphabet:
        return None
    r = right_divide_codes(t.codes, t.alphabet.index(a), t.alphabet._dep)
    return None if r is None else Trace(t.alphabet, r)


def left_quotient(u: Trace, t: Trace) -> Trace | None:
    """The trace w with ``t = u . w``, if u left-divides t."""
    _check_same(u, t)
    r = left_quotient_codes(u.codes, t.codes, t.alphabet._dep)
    return None if r is None else Trace(t.alphabet, r)


def left_divisors(t: Trace) -> list[Trace]:
    """All left divisors of t (1 and t included), sorted by (length, lex)."""
    dep = t.alphabet._dep
    seen = {(): t.codes}
    frontier = [()]
    while frontier:
        nxt = []
        for u in frontier:
            rest = seen[u]
            for x in mask_letters(initial_mask(rest, dep)):
                v = append_code(u, x, dep)
                if v not in seen:
                    seen[v] = left_divide_codes(x, rest, dep)
                    nxt.append(v)
        frontier = nxt
    return [Trace(t.alphabet, c) for c in sorted(seen, key=lambda c: (len(c), c))]


def enumerate_codes(alpha: IndependenceAlphabet, n: int) -> list[list[tuple]]:
    """Normal forms grouped by length 0..n, each group sorted."""
    dep = alpha._dep
    levels = [[()]]
    for _ in range(n):
        nxt = [t + (x,) for t in levels[-1] for x in range(len(alpha)) if is_last_letter(t, x, dep)]
        levels.append(sorted(nxt))
    return levels


def enumerate_traces(alpha: IndependenceAlphabet, n: int) -> list[Trace]:
    if n < 0:
        raise ValueError("length bound must be nonnegative")
    return [Trace(alpha, c) for lvl in enumerate_codes(alpha, n) for c in lvl]


def levi_factor(w: Trace, t: Trace, w2: Trace, t2: Trace):
    """Levi's lemma: from ``w t = w2 t2`` get (p, q, r, s) with

    w = p s, t = r q, w2 = p r, t2 = s q, and r, s made of commuting letters.
    """
    for x in (t, w2, t2):
        _check_same(w, x)
    alpha = w.alphabet
    dep = alpha._dep
    if concat_codes(w.codes, t.codes, dep) != concat_codes(w2.codes, t2.codes, dep):
        raise ValueError("levi_factor needs w.t == w2.t2")

    def rec(w, t, w2, t2):
        if not w:
            return (), t2, w2, ()
        a = mask_letters(initial_mask(w, dep))[0]
        w_rest = left_divide_codes(a, w, dep)
        w2_rest = left_divide_codes(a, w2, dep)
        if w2_rest is not None:
            p, q, r, s = rec(w_rest, t, w2_rest, t2)
            return normal_codes((a,) + p, dep), q, r, s
        t2_rest = left_divide_codes(a, t2, dep)
        p, q, r, s = rec(w_rest, t, w2, t2_rest)
        return p, q, r, normal_codes((a,) + s, dep)

    p, q, r, s = rec(w.codes, t.codes, w2.codes, t2.codes)
    return tuple(Trace(alpha, c) for c in (p, q, r, s))
