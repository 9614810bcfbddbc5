"""Independence alphabets (A, theta) and derived alphabets of traces."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import TYPE_CHECKING, Iterable

if TYPE_CHECKING:
    from .trace import Trace


class AlphabetError(ValueError):
    pass


def _valid_letter(s: str) -> bool:
    return bool(s) and s.isprintable() and not any(ch.isspace() or ch in "'\"" for ch in s)


def _pair(a, b) -> frozenset:
    return frozenset((a, b))


@dataclass(frozen=True)
class IndependenceAlphabet:
    """A finite ordered letter set with a symmetric, loop-free commutation graph.

    ``letters`` fixes the total order used by every normal form in the package.
    ``theta`` holds unordered pairs ``{a, b}`` of letters that commute.
    """

    letters: tuple[str, ...]
    theta: frozenset[frozenset[str]] = frozenset()
    _index: dict = field(init=False, repr=False, compare=False)
    _dep: tuple = field(init=False, repr=False, compare=False)
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if len(set(letters)) != len(letters):
            raise AlphabetError(f"duplicate letter in {letters}")
        theta = frozenset(frozenset(p) for p in self.theta)
        object.__setattr__(self, "theta", theta)
        index = {a: i for i, a in enumerate(letters)}
        for p in theta:
            if len(p) != 2:
                raise AlphabetError(f"loop edge {sorted(p)} (theta must be antireflexive)")
            for a in p:
                if a not in index:
                    raise AlphabetError(f"edge names unknown letter {a!r}")
        # dep[i]: bitmask of letters that do NOT commute with letter i (i included)
        full = (1 << len(letters)) - 1
        dep = [full] * len(letters)
        for p in theta:
            i, j = (index[a] for a in p)
            dep[i] &= ~(1 << j)
            dep[j] &= ~(1 << i)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_dep", tuple(dep))
        object.__setattr__(self, "_hash", hash((letters, theta)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, IndependenceAlphabet):
            return NotImplemented
        return self.letters == other.letters and self.theta == other.theta

    def __len__(self):
        return len(self.letters)

    def __contains__(self, letter):
        return letter in self._index

    def index(self, letter: str) -> int:
        try:
            return self._index[letter]
        except KeyError:
            raise AlphabetError(f"unknown letter {letter!r}") from None

    def commute(self, a: str, b: str) -> bool:
        return _pair(a, b) in self.theta

    def check_subset(self, letters: Iterable[str]) -> frozenset[str]:
        out = frozenset(letters)
        for a in out:
            self.index(a)
        return out

    def sort_letters(self, letters: Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(letters, key=self.index))

    @classmethod
    def from_edges(cls, letters, edges=()) -> IndependenceAlphabet:
        """Convenience constructor: ``from_edges("abc", ["ab"])``."""
        return cls(tuple(letters), frozenset(frozenset(e) for e in edges))

    def __str__(self):
        edges = sorted((self.sort_letters(p) for p in self.theta),
                       key=lambda p: (self.index(p[0]), self.index(p[1])))
        lines = ["letters " + " ".join(self.letters)]
        lines += [f"edge {a} {b}" for a, b in edges]
        return "\n".join(lines)


def parse_alphabet(text: str) -> IndependenceAlphabet:
    """Parse the line-oriented alphabet format.

    ::

        # comment
        letters a b c d
        edge a b
        edge b c
    """
    letters = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if letters is None:
            if head != "letters" or not rest:
                raise AlphabetError(f"line {lineno}: expected 'letters <l1> <l2> ...'")
            for a in rest:
                if not _valid_letter(a):
                    raise AlphabetError(f"line {lineno}: invalid letter {a!r}")
            if len(set(rest)) != len(rest):
                raise AlphabetError(f"line {lineno}: duplicate letter")
            letters = tuple(rest)
        elif head == "edge":
            if len(rest) != 2:
                raise AlphabetError(f"line {lineno}: edge needs exactly two letters")
            a, b = rest
            for x in (a, b):
                if x not in letters:
                    raise AlphabetError(f"line {lineno}: edge names unknown letter {x!r}")
            if a == b:
                raise AlphabetError(f"line {lineno}: loop edge {a} {a}")
            edges.append(_pair(a, b))
        elif head == "letters":
            raise AlphabetError(f"line {lineno}: second 'letters' line")
        else:
            raise AlphabetError(f"line {lineno}: malformed line {raw!r}")
    if letters is None:
        raise AlphabetError("missing 'letters' line")
    return IndependenceAlphabet(letters, frozenset(edges))


def dependence_graph(alpha: IndependenceAlphabet) -> frozenset[frozenset[str]]:
    return frozenset(_pair(a, b) for a, b in combinations(alpha.letters, 2)
                     if _pair(a, b) not in alpha.theta)


def restrict(alpha: IndependenceAlphabet, B: Iterable[str]) -> IndependenceAlphabet:
    B = alpha.check_subset(B)
    letters = tuple(a for a in alpha.letters if a in B)
    return IndependenceAlphabet(letters, frozenset(p for p in alpha.theta if p <= B))


def independent_cliques(alpha: IndependenceAlphabet) -> list[tuple[str, ...]]:
    """All pairwise-commuting letter subsets (the empty one included).

    Sorted by size, then lexicographically in letter order.
    """
    n = len(alpha)
    dep = alpha._dep
    out = []

    def extend(clique, allowed, start):
        out.append(clique)
        for j in range(start, n):
            if allowed >> j & 1:
                extend(clique + (j,), allowed & ~dep[j], j + 1)

    extend((), (1 << n) - 1, 0)
    out.sort(key=lambda c: (len(c), c))
    return [tuple(alpha.letters[i] for i in c) for c in out]


@dataclass(frozen=True)
class DerivedAlphabet:
    """A set X of nonempty traces with the induced commutation theta_X.

    ``(x1, x2)`` commute iff every letter of x1 commutes with every letter of x2
    in the base alphabet. ``complete`` records whether ``generators`` is the
    whole set or only its part up to some length bound.  The relation is
    derived from letter masks on demand.
    """

    base: IndependenceAlphabet
    generators: tuple[Trace, ...]
    complete: bool = True

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __contains__(self, t):
        return t in self._position

    @cached_property
    def _position(self) -> dict:
        return {g: i for i, g in enumerate(self.generators)}

    @cached_property
    def _commuting(self) -> tuple[int, ...]:
        # per generator: letters commuting with all of its letters
        full = (1 << len(self.base)) - 1
        out = []
        for g in self.generators:
            c = full
            for x in set(g.codes):
                c &= ~self.base._dep[x]
            out.append(c)
        return tuple(out)

    def dependence_masks(self) -> tuple[int, ...]:
        """Bit i of entry j is set iff generators i and j do not commute (j's own bit included)."""
        by_mask = {}
        for i, g in enumerate(self.generators):
            m = g.alph_mask()
            by_mask[m] = by_mask.get(m, 0) | 1 << i
        out = []
        for c in self._commuting:
            d = 0
            for m, bits in by_mask.items():
                if m & ~c:
                    d |= bits
            out.append(d)
        return tuple(out)

    @cached_property
    def relation(self) -> frozenset[frozenset[Trace]]:
        gens = self.generators
        dep = self.dependence_masks()
        return frozenset(_pair(gens[i], gens[j]) for i in range(len(gens))
                         for j in range(i + 1, len(gens)) if not dep[i] >> j & 1)

    def related(self, x, y) -> bool:
        i, j = self._position[x], self._position[y]
        return i != j and x.alph_mask() & ~self._commuting[j] == 0

    def labels(self) -> tuple[str, ...]:
        labs = tuple(g.label() for g in self.generators)
        if len(set(labs)) != len(labs):
            labs = tuple(f"x{i}" for i in range(len(labs)))
        return labs

    def as_alphabet(self) -> IndependenceAlphabet:
        """The generators as abstract letters (labelled by their text)."""
        labs = self.labels()
        pos = {g: lab for g, lab in zip(self.generators, labs)}
        theta = frozenset(frozenset(pos[g] for g in p) for p in self.relation)
        return IndependenceAlphabet(labs, theta)

    def edges(self) -> list[tuple[Trace, Trace]]:
        gens = self.generators
        dep = self.dependence_masks()
        return [(gens[i], gens[j]) for i in range(len(gens))
                for j in range(i + 1, len(gens)) if not dep[i] >> j & 1]

    def max_length(self) -> int:
        return max((len(g) for g in self.generators), default=0)


def derived_independence(alpha: IndependenceAlphabet, X: Iterable[Trace],
                         complete: bool = True) -> DerivedAlphabet:
    X = set(X)
    for x in X:
        if x.alphabet is not alpha and x.alphabet != alpha:
            raise AlphabetError("trace belongs to another alphabet")
        if len(x) == 0:
            raise AlphabetError("empty trace cannot be a generator")
    gens = tuple(sorted(X, key=lambda t: t.sort_key()))
    return DerivedAlphabet(alpha, gens, complete)
