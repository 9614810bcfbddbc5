"""The free partially commutative Lie algebra L_K(A, theta) inside K<A, theta>:
brackets, tau-generators, bracketings along elimination plans, bases, and
rank-based dimension checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .alphabet import AlphabetError, IndependenceAlphabet, restrict
from .elimination import beta_codes, is_tfsa
from .factorization import ElimPlan, EliminationError
from .series import TracePolynomial
from .trace import Trace, normal_codes, parse_word


def lie_bracket(p: TracePolynomial, q: TracePolynomial) -> TracePolynomial:
    return p.mul(q) - q.mul(p)


def left_normed(polys: Sequence[TracePolynomial]) -> TracePolynomial:
    """[[...[p1, p2], ...], pn]"""
    if not polys:
        raise ValueError("empty bracket")
    acc = polys[0]
    for p in polys[1:]:
        acc = lie_bracket(acc, p)
    return acc


def left_normed_bracket(alpha: IndependenceAlphabet, word) -> TracePolynomial:
    if isinstance(word, str):
        word = parse_word(alpha, word)
    if not word:
        raise ValueError("left-normed bracket of the empty word")
    return left_normed([TracePolynomial.letter(alpha, a) for a in word])


# -- exact rank ----------------------------------------------------------------

def _integral(terms: dict) -> dict:
    den = 1
    for c in terms.values():
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    return {k: int(c * den) for k, c in terms.items() if c}


class Echelon:
    """Row echelon form over Z by fraction-free elimination.

    Rows are sparse dicts; a pivot row's pivot is its least key.
    """

    def __init__(self):
        self.pivots = {}

    def reduce(self, row: dict) -> dict:
        v = _integral(row)
        while v:
            k = min(v)
            r = self.pivots.get(k)
            if r is None:
                break
            a, b = r[k], v[k]
            out = {}
            for key, c in v.items():
                out[key] = c * a
            for key, c in r.items():
                out[key] = out.get(key, 0) - c * b
            v = {key: c for key, c in out.items() if c}
            g = 0
            for c in v.values():
                g = gcd(g, c)
            if g > 1:
                v = {key: c // g for key, c in v.items()}
        return v

    def add(self, row: dict) -> bool:
        v = self.reduce(row)
        if not v:
            return False
        self.pivots[min(v)] = v
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rank(polys: Iterable[TracePolynomial]) -> int:
    e = Echelon()
    for p in polys:
        e.add(p.terms)
    return e.rank


def independent(polys: Iterable[TracePolynomial]) -> list[TracePolynomial]:
    """The members of ``polys`` that enlarge the span, in order."""
    e = Echelon()
    return [p for p in polys if e.add(p.terms)]


# -- dimensions ----------------------------------------------------------------

def graded_lie_basis(alpha: IndependenceAlphabet, n: int) -> list[list[TracePolynomial]]:
    """Bases of the homogeneous components L_1..L_n, from left-normed brackets.

    L_m is spanned by [p, a] for p in L_{m-1} and a letter, so brackets are
    only formed against a basis of the previous degree.
    """
    letters = [TracePolynomial.letter(alpha, a) for a in alpha.letters]
    out = [independent(letters)] if n >= 1 else []
    for _ in range(2, n + 1):
        out.append(independent(lie_bracket(p, a) for p in out[-1] for a in letters))
    return out


def lie_dimension_oracle(alpha: IndependenceAlphabet, m: int) -> int:
    """dim of the degree-m part of L_K(A, theta), by exact rank."""
    if m < 1:
        raise ValueError("degree must be >= 1")
    return len(graded_lie_basis(alpha, m)[m - 1])


# -- elimination in the Lie algebra ----------------------------------------------

def tau_generators(alpha: IndependenceAlphabet, B: Iterable[str], maxlen: int) -> list[tuple[Trace, TracePolynomial]]:
    """[...[z, b1], ..., bn] for each beta generator z b1 ... bn (canonical word, z first)."""
    B = alpha.check_subset(B)
    if len(B) == len(alpha):
        raise AlphabetError("B = A leaves nothing to eliminate into (empty Z)")
    bmask = 0
    for b in B:
        bmask |= 1 << alpha.index(b)
    gens, _ = beta_codes(alpha, bmask, maxlen)
    out = []
    for _, codes in gens:
        t = Trace(alpha, codes)
        out.append((t, left_normed_bracket(alpha, t.word)))
    return out


def _embed(p: TracePolynomial, alpha: IndependenceAlphabet) -> TracePolynomial:
    sub = p.alphabet
    remap = [alpha.index(a) for a in sub.letters]
    dep = alpha._dep
    terms = {}
    for k, c in p.terms.items():
        key = normal_codes([remap[i] for i in k], dep)
        terms[key] = terms.get(key, 0) + c
    return TracePolynomial._raw(alpha, terms)


@dataclass(frozen=True)
class SplitReport:
    holds: bool
    # per degree: (dim L_m(A), dim L_m(B), rank J_m, rank of L_m(B) + J_m)
    dims: tuple[tuple[int, int, int, int], ...]

    def __bool__(self):
        return self.holds


def lazard_split_check(alpha: IndependenceAlphabet, B: Iterable[str], n: int) -> SplitReport:
    """L(A) = L(B) (+) J degree by degree, J the subalgebra generated by tau_Z(B)."""
    B = alpha.check_subset(B)
    LA = graded_lie_basis(alpha, n)
    if B:
        LB = [[_embed(p, alpha) for p in layer] for layer in graded_lie_basis(restrict(alpha, B), n)]
    else:
        LB = [[] for _ in range(n)]
    taus = [] if len(B) == len(alpha) else [p for _, p in tau_generators(alpha, B, n)]
    tau_by_deg = [[p for p in taus if p.degree() == m] for m in range(n + 1)]
    J = [[]]
    for m in range(1, n + 1):
        span = list(tau_by_deg[m])
        for d in range(1, m):
            span += [lie_bracket(j, t) for j in J[m - d] for t in tau_by_deg[d]]
        J.append(independent(p for p in span if p))
    dims = []
    holds = True
    for m in range(1, n + 1):
        dA, dB, dJ = len(LA[m - 1]), len(LB[m - 1]), len(J[m])
        both = rank(LB[m - 1] + J[m])
        dims.append((dA, dB, dJ, both))
        holds &= dA == dB + dJ == both
    return SplitReport(holds, tuple(dims))


def nonfree_identity(alpha: IndependenceAlphabet, z: str, z2: str, path: Sequence[str]):
    """Both sides of [z, [..[z2, bn]..., b1]] = [[..[z2, bn]..., b2], [z, b1]]

    for a chordless dependence path z - b1 - ... - bn - z2 with z, z2 commuting.
    """
    P = lambda a: TracePolynomial.letter(alpha, a)
    bs = list(path)
    inner = left_normed([P(z2)] + [P(b) for b in reversed(bs)])
    lhs = lie_bracket(P(z), inner)
    head = left_normed([P(z2)] + [P(b) for b in reversed(bs[1:])])
    rhs = lie_bracket(head, lie_bracket(P(z), P(bs[0])))
    return lhs, rhs


def tfsa_obstruction(alpha: IndependenceAlphabet, B: Iterable[str]):
    """For non-TFSA B: (lhs, rhs) of the bracket identity along the witness path."""
    v = is_tfsa(alpha, B)
    if v:
        return None
    z, *bs, z2 = v.witness
    return nonfree_identity(alpha, z, z2, bs)


# -- bracketing along a plan -----------------------------------------------------

def bracketing_table(plan: ElimPlan) -> dict[Trace, TracePolynomial]:
    """Pi on every generator the plan produces (letters map to themselves)."""
    alpha = plan.base
    table = {}
    for a in alpha.letters:
        t = Trace(alpha, (alpha.index(a),))
        table[t] = TracePolynomial.of(t)
    for step in plan.steps:
        for g, spelling in step.spelling:
            if g not in table:
                table[g] = left_normed([table[y] for y in spelling])
    return table


def bracketing_map(plan: ElimPlan, g: Trace) -> TracePolynomial:
    table = bracketing_table(plan)
    try:
        return table[g]
    except KeyError:
        raise EliminationError(f"{g} is not a generator of the plan within length {plan.maxlen}") from None


def lyndon_words(k: int, max_weight: int, weights: Sequence[int]) -> list[tuple[int, ...]]:
    """Lyndon words over 0..k-1 with total weight <= max_weight (Duval's generation)."""
    out = []
    if k == 0:
        return out
    max_len = max_weight // min(weights)
    w = [-1]
    while w:
        w[-1] += 1
        word = tuple(w)
        if sum(weights[i] for i in word) <= max_weight:
            out.append(word)
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
    return out


def _standard_split(word):
    # longest proper suffix that is a Lyndon word
    for i in range(1, len(word)):
        suf = word[i:]
        if all(suf < suf[j:] for j in range(1, len(suf))):
            return word[:i], suf
    raise ValueError("not a Lyndon word of length >= 2")


def _free_level_basis(gens, table, n, dep):
    """Standard Lyndon bracketings over pairwise dependent generators."""
    gens = [g for g in gens if len(g) <= n]
    cache = {}

    def std(word):
        if word not in cache:
            if len(word) == 1:
                cache[word] = table[gens[word[0]]]
            else:
                u, v = _standard_split(word)
                cache[word] = lie_bracket(std(u), std(v))
        return cache[word]

    out = []
    for word in lyndon_words(len(gens), n, [len(g) for g in gens]):
        codes = ()
        for i in word:
            codes = normal_codes(codes + gens[i].codes, dep)
        out.append((Trace(gens[0].alphabet, codes), std(word)))
    return out


def lie_basis(alpha: IndependenceAlphabet, plan: ElimPlan, n: int) -> list[tuple[Trace, TracePolynomial]]:
    """Basis elements of degree <= n: Pi of every eliminated generator, plus
    standard Lyndon bracketings over free levels (the residual one, and any
    step that eliminates pairwise dependent generators together)."""
    if plan.base != alpha:
        raise AlphabetError("plan built over another alphabet")
    if n > plan.maxlen:
        raise EliminationError(f"plan only complete up to length {plan.maxlen}")
    table = bracketing_table(plan)
    dep = alpha._dep
    out = []
    for step in plan.steps:
        edges = step.left.edges()
        k = len(step.eliminated)
        if not edges:
            out += _free_level_basis(step.eliminated, table, n, dep)
        elif len(edges) == k * (k - 1) // 2:
            out += [(g, table[g]) for g in step.eliminated if len(g) <= n]
        else:
            raise EliminationError(
                f"step {{{', '.join(map(str, step.eliminated))}}} is neither free nor commutative; "
                "split it into smaller steps")
    for x, y in plan.residual.edges():
        if len(x) + len(y) <= n:
            raise EliminationError(
                f"residual generators {x} and {y} commute; plan incomplete at degree {n}")
    out += _free_level_basis(plan.residual.generators, table, n, dep)
    out.sort(key=lambda gp: gp[0].sort_key())
    return out
