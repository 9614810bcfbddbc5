"""Elimination of a subalphabet: bisections M(A) = M(B) . <beta_Z(B)> and the
TFSA criterion in its three equivalent forms."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .alphabet import AlphabetError, DerivedAlphabet, IndependenceAlphabet, derived_independence
from .trace import (
    Trace,
    append_code,
    concat_codes,
    initial_mask,
    is_last_letter,
    left_divide_codes,
    normal_codes,
)


@dataclass(frozen=True)
class TfsaVerdict:
    is_tfsa: bool
    witness: tuple[str, ...] | None = None

    def __bool__(self):
        return self.is_tfsa

    def __str__(self):
        if self.is_tfsa:
            return "TFSA"
        return "NOT TFSA\nwitness: " + " - ".join(self.witness)


@dataclass(frozen=True)
class CodeCheck:
    """Outcome of a bounded unique-factorization scan.

    ``witness`` is ``(t, f1, f2)``: a trace and two distinct factorizations of
    it, each a tuple of generators (modulo commutation of independent ones).
    """
    is_code: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.is_code


@dataclass(frozen=True)
class ConditionCheck:
    """``witness`` is ``(z1, w1, z2, w2, w2p, w1p)`` with z1 w1 z2 w2 = z2 w2p z1 w1p."""
    holds: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.holds


def _mask(alpha: IndependenceAlphabet, letters: Iterable[str]) -> int:
    m = 0
    for a in letters:
        m |= 1 << alpha.index(a)
    return m


def _full(alpha) -> int:
    return (1 << len(alpha)) - 1


def factor_bisection(t: Trace, B: Iterable[str], side: str = "left") -> tuple[Trace, Trace]:
    """Split t against M(B): left gives t = w.m with IA(m) outside B,
    right gives t = m.w with TA(m) outside B; w is a trace over B."""
    alpha = t.alphabet
    bmask = _mask(alpha, B)
    dep = alpha._dep
    word = t.codes if side == "left" else tuple(reversed(t.codes))
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    # a position joins w iff its letter is in B and nothing dependent before it stayed out
    blocked = 0
    w, m = [], []
    for x in word:
        if (bmask >> x) & 1 and not (blocked >> x) & 1:
            w.append(x)
        else:
            m.append(x)
            blocked |= dep[x]
    if side == "right":
        w.reverse()
        m.reverse()
    return Trace(alpha, normal_codes(w, dep)), Trace(alpha, normal_codes(m, dep))


def beta_codes(alpha: IndependenceAlphabet, bmask: int, maxlen: int,
               weights: Sequence[int] | None = None):
    """Enumerate beta_Z(B) as normal-form index tuples of total weight <= maxlen.

    Returns ``(gens, complete)``; ``gens`` is a list of ``(z, codes)``.
    Generators are built by right extension with B letters, which reaches all
    of them since beta_Z(B) is closed under removing a final B letter.
    """
    dep = alpha._dep
    n = len(alpha)
    wt = weights or [1] * n
    zs = [z for z in range(n) if not (bmask >> z) & 1]
    bs = [b for b in range(n) if (bmask >> b) & 1]
    gens = []
    complete = True
    frontier = []
    for z in zs:
        if wt[z] <= maxlen:
            frontier.append((z, (z,), wt[z]))
        else:
            complete = False
    seen = set()
    while frontier:
        nxt = []
        for z, g, w in frontier:
            gens.append((z, g))
            for b in bs:
                h = append_code(g, b, dep)
                if h in seen or initial_mask(h, dep) != 1 << z:
                    continue
                if w + wt[b] > maxlen:
                    complete = False
                    continue
                seen.add(h)
                nxt.append((z, h, w + wt[b]))
        frontier = nxt
    gens.sort(key=lambda zg: (sum(wt[x] for x in zg[1]), zg[1]))
    return gens, complete


def beta_generators(alpha: IndependenceAlphabet, B: Iterable[str], maxlen: int) -> DerivedAlphabet:
    """beta_Z(B) = {z w : z in Z, w over B, IA(z w) = {z}}, up to length maxlen."""
    B = alpha.check_subset(B)
    if len(B) == len(alpha):
        raise AlphabetError("B = A leaves nothing to eliminate into (empty Z)")
    if maxlen < 1:
        raise ValueError("maxlen must be >= 1")
    gens, complete = beta_codes(alpha, _mask(alpha, B), maxlen)
    return derived_independence(alpha, [Trace(alpha, g) for _, g in gens], complete)


def _dependence_path(alpha, bmask, z, z2):
    """Lex-least shortest dependence path z -> z2 with interior in B, or None."""
    dep = alpha._dep
    parent = {z: None}
    queue = deque([z])
    while queue:
        u = queue.popleft()
        for v in range(len(alpha)):
            if v == u or not (dep[u] >> v) & 1 or v in parent:
                continue
            if v == z2:
                path = [v, u]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return tuple(reversed(path))
            if (bmask >> v) & 1:
                parent[v] = u
                queue.append(v)
    return None


def is_tfsa(alpha: IndependenceAlphabet, B: Iterable[str]) -> TfsaVerdict:
    """B is transitively factorizing iff no two commuting letters outside B are
    joined by a dependence path whose inner letters all lie in B."""
    bmask = _mask(alpha, alpha.check_subset(B))
    zs = [z for z in range(len(alpha)) if not (bmask >> z) & 1]
    best = None
    for i, z in enumerate(zs):
        for z2 in zs[i + 1:]:
            if (alpha._dep[z] >> z2) & 1:
                continue
            path = _dependence_path(alpha, bmask, z, z2)
            if path is not None and (best is None or (len(path), path) < (len(best), best)):
                best = path
    if best is None:
        return TfsaVerdict(True)
    return TfsaVerdict(False, tuple(alpha.letters[i] for i in best))


def b_closure(alpha: IndependenceAlphabet, B: Iterable[str], z: str) -> frozenset[str]:
    """Letters of B reachable from z by a dependence path with inner letters in B."""
    B = alpha.check_subset(B)
    if z in B:
        raise AlphabetError(f"{z!r} lies in B")
    zi = alpha.index(z)
    bmask = _mask(alpha, B)
    dep = alpha._dep
    seen = 0
    stack = [zi]
    while stack:
        u = stack.pop()
        for v in range(len(alpha)):
            if v != u and (dep[u] >> v) & 1 and (bmask >> v) & 1 and not (seen >> v) & 1:
                seen |= 1 << v
                stack.append(v)
    return frozenset(alpha.letters[i] for i in range(len(alpha)) if (seen >> i) & 1)


def tfsa_by_closure(alpha: IndependenceAlphabet, B: Iterable[str]) -> bool:
    """Second route to the TFSA test: for commuting z, z' outside B,
    ({z} u B_z) x ({z'} u B_z') must lie in theta."""
    B = alpha.check_subset(B)
    Z = [a for a in alpha.letters if a not in B]
    closure = {z: b_closure(alpha, B, z) | {z} for z in Z}
    for i, z in enumerate(Z):
        for z2 in Z[i + 1:]:
            if not alpha.commute(z, z2):
                continue
            if any(not alpha.commute(x, y) for x in closure[z] for y in closure[z2]):
                return False
    return True


def bounded_code_check(alpha: IndependenceAlphabet, X: DerivedAlphabet, maxlen: int) -> CodeCheck:
    """Check unique factorization over X (modulo theta_X) for traces of length <= maxlen."""
    if X.base != alpha:
        raise AlphabetError("derived alphabet over another base")
    sub = X
    if X.max_length() > maxlen:
        sub = derived_independence(alpha, [g for g in X.generators if len(g) <= maxlen])
    dX = sub.dependence_masks()
    dep = alpha._dep
    lengths = [len(g) for g in sub.generators]
    layers = [dict() for _ in range(maxlen + 1)]
    layers[0][()] = ()
    owner = {(): ()}
    clash = []
    for L in range(maxlen + 1):
        # layer L is final once every shorter layer is expanded, so a clash
        # of length <= L is already the least one
        if any(len(c[0]) <= L for c in clash):
            break
        for xt, img in layers[L].items():
            for j, g in enumerate(sub.generators):
                L2 = L + lengths[j]
                if L2 > maxlen:
                    break  # generators are sorted by length
                if not is_last_letter(xt, j, dX):
                    continue
                nxt = xt + (j,)
                im2 = concat_codes(img, g.codes, dep)
                layers[L2][nxt] = im2
                prev = owner.setdefault(im2, nxt)
                if prev != nxt:
                    clash.append((im2, min(prev, nxt), max(prev, nxt)))
    if not clash:
        return CodeCheck(True)
    im, f1, f2 = min(clash, key=lambda c: ((len(c[0]), c[0]), c[1], c[2]))
    gs = sub.generators
    return CodeCheck(False, (Trace(alpha, im), tuple(gs[i] for i in f1), tuple(gs[i] for i in f2)))


def condition_ii_check(alpha: IndependenceAlphabet, B: Iterable[str], maxlen: int) -> ConditionCheck:
    """Scan z1 w1 . z2 w2 = z2 w2' . z1 w1'  =>  w1 = w1', w2 = w2'
    over beta generators of length <= maxlen (w's are traces over B)."""
    B = alpha.check_subset(B)
    if len(B) == len(alpha):
        return ConditionCheck(True)
    dep = alpha._dep
    full = _full(alpha)
    gens, _ = beta_codes(alpha, _mask(alpha, B), maxlen)
    by_z = {}
    for z, g in gens:
        by_z.setdefault(z, []).append(g)
    commuting = [full & ~dep[z] for z in range(len(alpha))]

    def alph(g):
        m = 0
        for x in g:
            m |= 1 << x
        return m

    best = None
    zs = sorted(by_z)
    for z1 in zs:
        for z2 in zs:
            if z1 == z2 or (dep[z1] >> z2) & 1:
                continue
            # z2 must slide to the front of z1 w1 . z2 w2, so alph(z1 w1) commutes with z2
            left = {}
            for g1 in by_z[z1]:
                if alph(g1) & ~commuting[z2]:
                    continue
                for g2 in by_z[z2]:
                    left.setdefault(concat_codes(g1, g2, dep), []).append((g1, g2))
            for h2 in by_z[z2]:
                if alph(h2) & ~commuting[z1]:
                    continue
                for h1 in by_z[z1]:
                    key = concat_codes(h2, h1, dep)
                    for g1, g2 in left.get(key, ()):
                        if g1 != h1 or g2 != h2:
                            cand = ((len(key), key), z1, z2, g1, g2, h2, h1)
                            if best is None or cand < best:
                                best = cand
    if best is None:
        return ConditionCheck(True)
    _, z1, z2, g1, g2, h2, h1 = best

    def rest(z, g):
        return Trace(alpha, left_divide_codes(z, g, dep))

    letters = alpha.letters
    return ConditionCheck(False, (letters[z1], rest(z1, g1), letters[z2], rest(z2, g2),
                                  rest(z2, h2), rest(z1, h1)))
