"""Trace polynomials K<A, theta> over the rationals, Moebius polynomial,
truncated characteristic series and graded Lie dimensions."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

from .alphabet import AlphabetError, DerivedAlphabet, IndependenceAlphabet, independent_cliques
from .trace import Trace, append_code, concat_codes, enumerate_codes


def _coeff(c):
    if isinstance(c, bool) or not isinstance(c, Rational):
        raise TypeError(f"coefficients must be exact rationals, got {c!r}")
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class TracePolynomial:
    """Finite linear combination of traces with exact rational coefficients.

    Internally a dict from normal-form index tuples to coefficients, with
    zero terms never stored.
    """

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: IndependenceAlphabet, terms: Mapping | None = None):
        self.alphabet = alphabet
        self.terms = {}
        if terms:
            for k, c in terms.items():
                if isinstance(k, Trace):
                    if k.alphabet != alphabet:
                        raise AlphabetError("term from another alphabet")
                    k = k.codes
                c = _coeff(c)
                if c:
                    self.terms[k] = self.terms.get(k, 0) + c
                    if not self.terms[k]:
                        del self.terms[k]

    @classmethod
    def _raw(cls, alphabet, terms):
        p = cls.__new__(cls)
        p.alphabet = alphabet
        p.terms = {k: c for k, c in terms.items() if c}
        return p

    @classmethod
    def one(cls, alphabet):
        return cls._raw(alphabet, {(): 1})

    @classmethod
    def zero(cls, alphabet):
        return cls._raw(alphabet, {})

    @classmethod
    def of(cls, t: Trace, c=1):
        return cls(t.alphabet, {t: c})

    @classmethod
    def letter(cls, alphabet, a: str):
        return cls._raw(alphabet, {(alphabet.index(a),): 1})

    def _check(self, other):
        if self.alphabet is not other.alphabet and self.alphabet != other.alphabet:
            raise AlphabetError("alphabet mismatch between polynomials")

    def _lift(self, other):
        if isinstance(other, TracePolynomial):
            self._check(other)
            return other
        if isinstance(other, Trace):
            return TracePolynomial.of(other)
        if isinstance(other, Rational):
            return TracePolynomial._raw(self.alphabet, {(): _coeff(other)})
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return TracePolynomial._raw(self.alphabet, out)

    __radd__ = __add__

    def __neg__(self):
        return TracePolynomial._raw(self.alphabet, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> TracePolynomial:
        c = _coeff(c)
        return TracePolynomial._raw(self.alphabet, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Rational) and not isinstance(other, bool):
            return self.scale(other)
        return self.mul(other)

    def __rmul__(self, other):
        if isinstance(other, Rational) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def mul(self, other, max_degree: int | None = None) -> TracePolynomial:
        other = self._lift(other)
        dep = self.alphabet._dep
        out = {}
        for u, cu in self.terms.items():
            for v, cv in other.terms.items():
                if max_degree is not None and len(u) + len(v) > max_degree:
                    continue
                w = concat_codes(u, v, dep)
                out[w] = out.get(w, 0) + cu * cv
        return TracePolynomial._raw(self.alphabet, out)

    def __eq__(self, other):
        if isinstance(other, TracePolynomial):
            return self.alphabet == other.alphabet and self.terms == other.terms
        if isinstance(other, Rational):
            return self.terms == ({(): other} if other else {})
        return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coefficient(self, t: Trace):
        return self.terms.get(t.codes, 0)

    def items(self) -> list[tuple[Trace, Rational]]:
        return [(Trace(self.alphabet, k), self.terms[k])
                for k in sorted(self.terms, key=lambda k: (len(k), k))]

    def support(self) -> list[Trace]:
        return [t for t, _ in self.items()]

    def degree(self) -> int:
        return max((len(k) for k in self.terms), default=-1)

    def homogeneous(self, m: int) -> TracePolynomial:
        return TracePolynomial._raw(self.alphabet, {k: c for k, c in self.terms.items() if len(k) == m})

    def truncate(self, n: int) -> TracePolynomial:
        return TracePolynomial._raw(self.alphabet, {k: c for k, c in self.terms.items() if len(k) <= n})

    def constant(self):
        return self.terms.get((), 0)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for t, c in self.items():
            mono = str(t)
            neg = c < 0
            a = -c if neg else c
            if t.is_empty():
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"TracePolynomial({str(self)!r})"


def polynomial_from_cliques(alpha: IndependenceAlphabet, cliques: Iterable[Iterable[Trace]]) -> TracePolynomial:
    dep = alpha._dep
    terms = {}
    for clique in cliques:
        codes = ()
        size = 0
        for t in clique:
            codes = concat_codes(codes, t.codes, dep)
            size += 1
        terms[codes] = terms.get(codes, 0) + (-1) ** size
    return TracePolynomial._raw(alpha, terms)


def mobius_polynomial(alpha: IndependenceAlphabet) -> TracePolynomial:
    """Sum over commuting cliques C of (-1)^|C| times the product of C."""
    dep = alpha._dep
    terms = {}
    for clique in independent_cliques(alpha):
        codes = ()
        for a in clique:
            codes = append_code(codes, alpha.index(a), dep)
        terms[codes] = (-1) ** len(clique)
    return TracePolynomial._raw(alpha, terms)


def derived_mobius_polynomial(X: DerivedAlphabet, max_degree: int | None = None) -> TracePolynomial:
    """The Moebius polynomial of (X, theta_X), expanded in the base alphabet.

    Cliques whose expanded length exceeds ``max_degree`` are dropped.
    """
    alpha = X.base
    dep = alpha._dep
    gens = list(X.generators)
    nbrs = [set() for _ in gens]
    pos = {g: i for i, g in enumerate(gens)}
    for p in X.relation:
        i, j = (pos[g] for g in p)
        nbrs[i].add(j)
        nbrs[j].add(i)
    terms = {}

    def extend(codes, size, length, allowed, start):
        terms[codes] = terms.get(codes, 0) + (-1) ** size
        for j in range(start, len(gens)):
            if j in allowed:
                g = gens[j]
                if max_degree is not None and length + len(g) > max_degree:
                    continue
                extend(concat_codes(codes, g.codes, dep), size + 1, length + len(g),
                       allowed & nbrs[j], j + 1)

    extend((), 0, 0, set(range(len(gens))), 0)
    return TracePolynomial._raw(alpha, terms)


def invert(p: TracePolynomial, n: int) -> TracePolynomial:
    """Degree-<= n truncation of 1/p; p must have constant term 1.

    Solved degree by degree from S.p = 1, i.e. S_m = -sum_{j>=1} S_{m-j} p_j,
    so every product is a right multiplication (cheap appends).
    """
    if p.constant() != 1:
        raise ValueError("series inversion needs constant term 1")
    alpha = p.alphabet
    dep = alpha._dep
    by_deg = {}
    for k, c in p.terms.items():
        if k:
            by_deg.setdefault(len(k), []).append((k, c))
    S = [{(): 1}]
    for m in range(1, n + 1):
        out = {}
        for j, terms in by_deg.items():
            if j > m:
                continue
            for u, cu in S[m - j].items():
                for v, cv in terms:
                    w = u
                    for x in v:
                        w = append_code(w, x, dep)
                    out[w] = out.get(w, 0) - cu * cv
        S.append({k: c for k, c in out.items() if c})
    merged = {}
    for layer in S:
        merged.update(layer)
    return TracePolynomial._raw(alpha, merged)


def characteristic_series(alpha: IndependenceAlphabet, n: int) -> TracePolynomial:
    """Sum of all traces of length <= n, obtained by inverting the Moebius polynomial."""
    if n < 0:
        raise ValueError("degree bound must be nonnegative")
    return invert(mobius_polynomial(alpha), n)


def length_counts(alpha: IndependenceAlphabet, n: int) -> list[int]:
    """Number of traces of each length 0..n, by enumeration."""
    return [len(level) for level in enumerate_codes(alpha, n)]


def clique_length_polynomial(alpha: IndependenceAlphabet) -> list[int]:
    """Coefficients of sum_C (-1)^|C| t^|C| (commutative image of the Moebius polynomial)."""
    coeffs = [0] * (len(alpha) + 1)
    for c in independent_cliques(alpha):
        coeffs[len(c)] += (-1) ** len(c)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def witt_dimensions(alpha: IndependenceAlphabet, n: int) -> list[int]:
    """Graded dimensions d_1..d_n of the free partially commutative Lie algebra.

    From 1/p(t) = prod_m (1 - t^m)^(-d_m): the power sums s_k of the
    reciprocal roots of p satisfy sum_{m | k} m d_m = s_k, and
    -p'(t)/p(t) = sum_k s_k t^(k-1).
    """
    if n < 1:
        raise ValueError("degree bound must be >= 1")
    p = [Fraction(c) for c in clique_length_polynomial(alpha)]
    p += [Fraction(0)] * (n + 1)
    dp = [(k + 1) * p[k + 1] for k in range(n)]  # p'
    # q = -p'/p as a power series, q_k for k < n
    q = []
    for k in range(n):
        acc = -dp[k]
        for j in range(1, k + 1):
            acc -= p[j] * q[k - j]
        q.append(acc)  # p[0] == 1
    s = [None] + q  # s[k] = q[k-1]
    d = [None]
    for k in range(1, n + 1):
        acc = s[k] - sum(m * d[m] for m in range(1, k) if k % m == 0)
        dk = acc / k
        if dk.denominator != 1 or dk < 0:
            raise ArithmeticError(f"non-integral or negative Lie dimension {dk} at degree {k}")
        d.append(int(dk))
    return d[1:]
