"""Ordered factorizations of M(A, theta) built from transitive bisections.

Levels are stored left to right in product order, so the plan
``c;acc;b;d;ac;a`` on a-b-c-d yields c* . (acc)* . b* . d* . (ac)* . a* . M.
Every level except a residual one is exact; generated sets that are
infinite are enumerated up to the plan's length bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .alphabet import AlphabetError, DerivedAlphabet, IndependenceAlphabet, derived_independence
from .elimination import TfsaVerdict, beta_codes, is_tfsa
from .trace import (
    Trace,
    concat_codes,
    enumerate_codes,
    initial_mask,
    left_divisors,
    left_quotient_codes,
    normalize,
)


class EliminationError(ValueError):
    """Raised when a step is not a transitive bisection; carries the verdict."""

    def __init__(self, message, verdict: TfsaVerdict | None = None):
        super().__init__(message)
        self.verdict = verdict


@dataclass(frozen=True)
class ElimStep:
    level: DerivedAlphabet
    eliminated: tuple[Trace, ...]
    verdict: TfsaVerdict
    left: DerivedAlphabet
    right: DerivedAlphabet
    # each right generator with its spelling y1 v1 ... vk over ``level``
    spelling: tuple[tuple[Trace, tuple[Trace, ...]], ...]

    def spell(self, g: Trace) -> tuple[Trace, ...]:
        return dict(self.spelling)[g]


@dataclass(frozen=True)
class ElimPlan:
    base: IndependenceAlphabet
    maxlen: int
    steps: tuple[ElimStep, ...]

    @property
    def residual(self) -> DerivedAlphabet:
        if self.steps:
            return self.steps[-1].right
        return base_level(self.base)


@dataclass(frozen=True)
class Factorization:
    """Submonoid generating sets in product order.

    ``bound`` is the length up to which every level is known to be complete
    (None when all levels are exact).
    """
    levels: tuple[DerivedAlphabet, ...]
    provenance: ElimPlan | None = field(default=None, compare=False)
    bound: int | None = None

    @property
    def base(self) -> IndependenceAlphabet:
        return self.levels[0].base

    def __len__(self):
        return len(self.levels)

    def content(self) -> list[Trace]:
        return [g for lvl in self.levels for g in lvl.generators]

    def __str__(self):
        parts = []
        for lvl in self.levels:
            gens = ", ".join(str(g) for g in lvl.generators)
            tail = "" if lvl.complete else ", ..."
            parts.append("{" + gens + tail + "}")
        return " . ".join(parts)


@dataclass(frozen=True)
class FactorizationCheck:
    ok: bool
    counterexample: tuple[Trace, int] | None = None

    def __bool__(self):
        return self.ok


def base_level(alpha: IndependenceAlphabet) -> DerivedAlphabet:
    return derived_independence(alpha, [normalize(alpha, [a]) for a in alpha.letters])


def _check_generators(level: DerivedAlphabet, T: Iterable[Trace]) -> tuple[Trace, ...]:
    T = tuple(sorted(set(T), key=Trace.sort_key))
    for t in T:
        if t not in level:
            raise EliminationError(f"{t} is not a generator of the current level")
    if not T:
        raise EliminationError("nothing to eliminate")
    if len(T) == len(level):
        raise EliminationError("cannot eliminate every generator of a level")
    return T


def _eliminate(level: DerivedAlphabet, T, maxlen: int) -> ElimStep:
    T = _check_generators(level, T)
    alpha = level.base
    abstract = level.as_alphabet()
    gens = level.generators
    idx = {g: i for i, g in enumerate(gens)}
    verdict = is_tfsa(abstract, [abstract.letters[idx[t]] for t in T])
    if not verdict:
        raise EliminationError(
            f"{{{', '.join(map(str, T))}}} is not transitively factorizing at this level; "
            f"witness {' - '.join(verdict.witness)}", verdict)
    tmask = 0
    for t in T:
        tmask |= 1 << idx[t]
    weights = [len(g) for g in gens]
    found, complete = beta_codes(abstract, tmask, maxlen, weights)
    dep = alpha._dep
    spelling = {}
    for _, codes in found:
        image = ()
        for i in codes:
            image = concat_codes(image, gens[i].codes, dep)
        g = Trace(alpha, image)
        if g in spelling:
            raise EliminationError(f"two spellings of {g}: the level is not a code")
        spelling[g] = tuple(gens[i] for i in codes)
    right = derived_independence(alpha, spelling, complete and level.complete)
    left = derived_independence(alpha, T)
    return ElimStep(level, T, verdict, left, right,
                    tuple((g, spelling[g]) for g in right.generators))


def eliminate_step(level: DerivedAlphabet, T: Iterable[Trace], maxlen: int):
    """Eliminate the generators T from a level.

    Returns ``(left, right, verdict)``: the level restricted to T, the
    complement beta_{level-T}(T) expanded in the base alphabet up to maxlen,
    and the TFSA verdict of T inside the level.  Raises EliminationError
    (with the negative verdict attached) when T is not a TFSA of the level.
    """
    step = _eliminate(level, T, maxlen)
    return step.left, step.right, step.verdict


def parse_plan(alpha: IndependenceAlphabet, text: str) -> list[list[Trace]]:
    """``"c;acc;b"`` -> one generator per step; ``"a,c;b"`` eliminates a and c together."""
    steps = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            raise EliminationError(f"empty step in plan {text!r}")
        steps.append([normalize(alpha, w) for w in chunk.split(",")])
    return steps


def build_plan(alpha: IndependenceAlphabet, plan, maxlen: int) -> ElimPlan:
    """Run a sequence of eliminations; ``plan`` is plan text or a list of generator lists."""
    if isinstance(plan, str):
        plan = parse_plan(alpha, plan) if plan.strip() else []
    level = base_level(alpha)
    steps = []
    for T in plan:
        T = [normalize(alpha, t) if isinstance(t, str) else t for t in T]
        step = _eliminate(level, T, maxlen)
        steps.append(step)
        level = step.right
    return ElimPlan(alpha, maxlen, tuple(steps))


def plan_factorization(plan: ElimPlan) -> Factorization:
    levels = tuple(step.left for step in plan.steps) + (plan.residual,)
    return Factorization(levels, plan, plan.maxlen)


# -- membership in generated submonoids ----------------------------------------

class _Submonoid:
    """Membership in <Y> by memoised left division; for a code the first
    spelling found is the spelling."""

    def __init__(self, Y: DerivedAlphabet):
        self.alpha = Y.base
        self.dep = Y.base._dep
        self.by_first = {}
        for g in Y.generators:
            self.by_first.setdefault(g.codes[0], []).append(g.codes)
        self.spell = lru_cache(maxsize=None)(self._spell)

    def _spell(self, t: tuple):
        if not t:
            return ()
        dep = self.dep
        ia = initial_mask(t, dep)
        for first, gs in self.by_first.items():
            if not (ia >> first) & 1:
                continue
            for g in gs:
                if len(g) > len(t):
                    continue
                rest = left_quotient_codes(g, t, dep)
                if rest is None:
                    continue
                tail = self.spell(rest)
                if tail is not None:
                    return (g,) + tail
        return None

    def __contains__(self, t: tuple) -> bool:
        return self.spell(t) is not None


def spell_over(Y: DerivedAlphabet, t: Trace) -> tuple[Trace, ...] | None:
    """A factorization of t over the generators of Y, or None if t is not in <Y>."""
    sp = _Submonoid(Y).spell(t.codes)
    return None if sp is None else tuple(Trace(Y.base, g) for g in sp)


def compose(F: Factorization, F2: Factorization, k: int) -> Factorization:
    """Replace level k of F by the levels of F2 (a factorization of <level k>)."""
    if not 0 <= k < len(F.levels):
        raise IndexError(f"level index {k} out of range")
    if F2.base != F.base:
        raise AlphabetError("factorizations over different alphabets")
    target = _Submonoid(F.levels[k])
    for g in F2.content():
        if g.codes not in target:
            raise EliminationError(f"{g} is not expressible over level {k}")
    levels = F.levels[:k] + F2.levels + F.levels[k + 1:]
    bounds = [b for b in (F.bound, F2.bound) if b is not None]
    return Factorization(levels, None, min(bounds) if bounds else None)


def restrict_to(F: Factorization, X: DerivedAlphabet) -> Factorization | None:
    """Keep the levels contained in <X>; None if no level survives."""
    sub = _Submonoid(X)
    kept = tuple(lvl for lvl in F.levels if all(g.codes in sub for g in lvl.generators))
    if not kept:
        return None
    return Factorization(kept, None, F.bound)


def is_cut(F: Factorization, i: int, B: Iterable[str], bound: int | None = None) -> bool:
    """Level i is cut by the bisection (M(B), <beta_Z(B)>) when it meets both sides.

    <Y> meets M(B) nontrivially iff some generator is spelled over B, and
    meets <beta_Z(B)> = {t : IA(t) outside B} iff some generator has IA
    outside B (IA of a product contains IA of its first factor).
    """
    alpha = F.base
    B = alpha.check_subset(B)
    bmask = 0
    for b in B:
        bmask |= 1 << alpha.index(b)
    gens = [g for g in F.levels[i].generators if bound is None or len(g) <= bound]
    left = any(g.alph_mask() & ~bmask == 0 for g in gens)
    right = any(initial_mask(g.codes, alpha._dep) & bmask == 0 for g in gens)
    return left and right


def _check_bound(F: Factorization, n: int):
    if F.bound is not None and n > F.bound:
        raise EliminationError(f"levels are only complete up to length {F.bound}")


def decompose(F: Factorization, t: Trace, maxlen: int | None = None) -> list[tuple[int, Trace]]:
    """The decomposition t = m_1 ... m_k with m_j in <level i_j>, i_1 < ... < i_k.

    Each stage takes the longest left factor of the remainder inside the current
    level's submonoid that still lets the rest decompose over later levels.
    """
    if maxlen is None:
        maxlen = len(t)
    if len(t) > maxlen:
        raise ValueError("trace longer than the decomposition bound")
    _check_bound(F, maxlen)
    subs = [_Submonoid(lvl) for lvl in F.levels]
    dep = F.base._dep
    alpha = F.base

    @lru_cache(maxsize=None)
    def rec(codes, k):
        if not codes:
            return ()
        divisors = [d.codes for d in left_divisors(Trace(alpha, codes))][1:]
        divisors.sort(key=lambda c: (-len(c), c))
        for j in range(k, len(subs)):
            for u in divisors:
                if u in subs[j]:
                    rest = rec(left_quotient_codes(u, codes, dep), j + 1)
                    if rest is not None:
                        return ((j, u),) + rest
        return None

    out = rec(t.codes, 0)
    if out is None:
        raise EliminationError(f"{t} has no decomposition within the bound")
    return [(j, Trace(alpha, u)) for j, u in out]


def count_decompositions(F: Factorization, ts: Sequence[Trace]) -> list[int]:
    """Exhaustive count of decreasing decompositions for each trace."""
    subs = [_Submonoid(lvl) for lvl in F.levels]
    alpha = F.base
    dep = alpha._dep
    divisor_cache = {}

    def divisors(codes):
        if codes not in divisor_cache:
            divisor_cache[codes] = [d.codes for d in left_divisors(Trace(alpha, codes))][1:]
        return divisor_cache[codes]

    @lru_cache(maxsize=None)
    def count(codes, k):
        total = 1 if not codes else 0
        for j in range(k, len(subs)):
            for u in divisors(codes):
                if u in subs[j]:
                    total += count(left_quotient_codes(u, codes, dep), j + 1)
        return total

    return [count(t.codes, 0) for t in ts]


def verify_factorization(F: Factorization, n: int) -> FactorizationCheck:
    """Every nonempty trace of length <= n must have exactly one decomposition."""
    _check_bound(F, n)
    alpha = F.base
    ts = [Trace(alpha, c) for lvl in enumerate_codes(alpha, n)[1:] for c in lvl]
    for t, c in zip(ts, count_decompositions(F, ts)):
        if c != 1:
            return FactorizationCheck(False, (t, c))
    return FactorizationCheck(True)
