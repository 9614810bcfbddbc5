"""Free partially commutative groups F(A, theta) via reduced traces over the
doubled alphabet, and the group form of elimination (H_Z, rho_Z(B))."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .alphabet import AlphabetError, IndependenceAlphabet, derived_independence
from .elimination import beta_codes, is_tfsa
from .trace import Trace, concat_codes, normal_codes, parse_word

INVERSE_MARK = "'"


@dataclass(frozen=True)
class DoubledAlphabet:
    """A u A-bar; the letter of index 2k is the k-th base letter and 2k+1 its
    inverse (written with a trailing apostrophe), so bar(i) = i ^ 1."""

    base: IndependenceAlphabet
    alphabet: IndependenceAlphabet

    def bar(self, letter: str) -> str:
        return self.alphabet.letters[self.alphabet.index(letter) ^ 1]

    def base_letter(self, letter: str) -> str:
        return self.base.letters[self.alphabet.index(letter) >> 1]

    def word(self, text) -> tuple[str, ...]:
        if isinstance(text, str):
            return parse_word(self.alphabet, text)
        return tuple(text)

    def trace(self, text) -> Trace:
        idx = self.alphabet.index
        return Trace(self.alphabet, normal_codes([idx(a) for a in self.word(text)], self.alphabet._dep))

    def doubled_subset(self, B: Iterable[str]) -> frozenset[str]:
        B = self.base.check_subset(B)
        return frozenset(B) | frozenset(b + INVERSE_MARK for b in B)


def extend_alphabet(alpha: IndependenceAlphabet) -> DoubledAlphabet:
    letters = []
    for a in alpha.letters:
        letters += [a, a + INVERSE_MARK]
    theta = set()
    for p in alpha.theta:
        a, b = tuple(p)
        for x in (a, a + INVERSE_MARK):
            for y in (b, b + INVERSE_MARK):
                theta.add(frozenset((x, y)))
    return DoubledAlphabet(alpha, IndependenceAlphabet(tuple(letters), frozenset(theta)))


def _cancellable(codes: tuple, dep) -> tuple[int, int] | None:
    # least i, then least j: codes[j] = bar(codes[i]) and everything strictly
    # between commutes with codes[i]
    for i, x in enumerate(codes):
        for j in range(i + 1, len(codes)):
            y = codes[j]
            if y == x ^ 1:
                return i, j
            if (dep[x] >> y) & 1:
                break
    return None


def reduce_codes(codes: tuple, dep) -> tuple:
    while True:
        hit = _cancellable(codes, dep)
        if hit is None:
            return codes
        i, j = hit
        codes = normal_codes(codes[:i] + codes[i + 1:j] + codes[j + 1:], dep)


def is_reduced(t: Trace) -> bool:
    return _cancellable(t.codes, t.alphabet._dep) is None


def _as_trace(D: DoubledAlphabet, g) -> Trace:
    if isinstance(g, Trace):
        if g.alphabet != D.alphabet:
            raise AlphabetError("trace is not over the doubled alphabet")
        return g
    return D.trace(g)


def reduce_trace(D: DoubledAlphabet, t) -> Trace:
    """The reduced trace of a group element: cancel x ... x-bar pairs whose
    in-between letters all commute with x, until none is left."""
    t = _as_trace(D, t)
    return Trace(D.alphabet, reduce_codes(t.codes, D.alphabet._dep))


def group_equal(D: DoubledAlphabet, u, v) -> bool:
    return reduce_trace(D, u) == reduce_trace(D, v)


def group_mul(D: DoubledAlphabet, u, v) -> Trace:
    u, v = _as_trace(D, u), _as_trace(D, v)
    dep = D.alphabet._dep
    return Trace(D.alphabet, reduce_codes(concat_codes(u.codes, v.codes, dep), dep))


def group_inverse(D: DoubledAlphabet, u) -> Trace:
    u = _as_trace(D, u)
    dep = D.alphabet._dep
    return Trace(D.alphabet, reduce_codes(normal_codes([x ^ 1 for x in reversed(u.codes)], dep), dep))


def retract(D: DoubledAlphabet, g, B: Iterable[str]) -> Trace:
    """Image under the morphism sending every letter outside B to 1."""
    g = _as_trace(D, g)
    keep = {D.alphabet.index(x) for x in D.doubled_subset(B)}
    dep = D.alphabet._dep
    return Trace(D.alphabet, reduce_codes(normal_codes([x for x in g.codes if x in keep], dep), dep))


def semidirect_split(D: DoubledAlphabet, g, B: Iterable[str]) -> tuple[Trace, Trace]:
    """g = b_part . h_part with b_part in F(B, theta_B) and h_part in H_Z."""
    b_part = retract(D, g, B)
    h_part = group_mul(D, group_inverse(D, b_part), g)
    return b_part, h_part


def rho_generators(D: DoubledAlphabet, B: Iterable[str], maxlen: int) -> list[tuple[Trace, Trace]]:
    """Pairs (z w, w^-1 z w) for z outside B and z w a reduced beta generator over B~."""
    B = D.base.check_subset(B)
    if len(B) == len(D.base):
        raise AlphabetError("B = A leaves nothing to eliminate into (empty Z)")
    A2 = D.alphabet
    dep = A2._dep
    bmask = 0
    for x in D.doubled_subset(B):
        bmask |= 1 << A2.index(x)
    gens, _ = beta_codes(A2, bmask, maxlen)
    out = []
    for z, codes in gens:
        if z & 1 or _cancellable(codes, dep) is not None:
            continue
        w = codes[1:]  # canonical word starts with its only initial letter z
        conj = normal_codes([x ^ 1 for x in reversed(w)] + [z] + list(w), dep)
        out.append((Trace(A2, codes), Trace(A2, reduce_codes(conj, dep))))
    return out


def _commute(D, s: Trace, t: Trace) -> bool:
    return group_mul(D, s, t) == group_mul(D, t, s)


def commutation_closure(D: DoubledAlphabet, B: Iterable[str], maxlen: int) -> frozenset[frozenset[Trace]]:
    """Pairs of rho generators (named by their beta trace) whose conjugates commute."""
    gens = rho_generators(D, B, maxlen)
    rel = set()
    for i, (s, cs) in enumerate(gens):
        for t, ct in gens[i + 1:]:
            if _commute(D, cs, ct):
                rel.add(frozenset((s, t)))
    return frozenset(rel)


def beta_relation(D: DoubledAlphabet, B: Iterable[str], maxlen: int) -> frozenset[frozenset[Trace]]:
    """theta~ restricted to the reduced beta generators (letter-wise commutation)."""
    gens = [s for s, _ in rho_generators(D, B, maxlen)]
    return derived_independence(D.alphabet, gens).relation


def alpha_injectivity_witness(D: DoubledAlphabet, B: Iterable[str], maxlen: int):
    """For non-TFSA B, two beta generators r1 c, r2 c that do not commute as
    traces although their conjugates commute in the group; None for TFSA B.

    In the TFSA case the commutations among conjugates are checked to be
    exactly the letter-wise ones at this bound.
    """
    B = D.base.check_subset(B)
    verdict = is_tfsa(D.base, B)
    if verdict:
        if commutation_closure(D, B, maxlen) != beta_relation(D, B, maxlen):
            raise AssertionError("extra commutations among rho generators of a TFSA")
        return None
    # chordless path z1 - c1 - ... - cm - z2; split at c = c1
    z1, c, *rest, z2 = verdict.witness
    r1c = D.trace([z1, c])
    r2c = D.trace([z2] + list(reversed(rest)) + [c])
    if max(len(r1c), len(r2c)) > maxlen:
        raise ValueError(f"witness needs generators of length {max(len(r1c), len(r2c))} > {maxlen}")
    return r1c, r2c


def conjugate(D: DoubledAlphabet, g: Trace) -> Trace:
    """w^-1 z w for a generator g = z w (z its first letter)."""
    z, w = g.codes[0], g.codes[1:]
    dep = D.alphabet._dep
    return Trace(D.alphabet, reduce_codes(normal_codes([x ^ 1 for x in reversed(w)] + [z] + list(w), dep), dep))
