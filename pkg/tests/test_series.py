from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pcelim import (
    TracePolynomial,
    characteristic_series,
    invert,
    mobius_polynomial,
    normalize,
    witt_dimensions,
)
from pcelim.lie import lie_dimension_oracle
from pcelim.series import derived_mobius_polynomial, length_counts
from pcelim.elimination import beta_generators
from strategies import alphabet_and_subset, alphabets, make, words


def poly(alpha, text):
    """'1 - a + 2*ab' style input, for readable expectations."""
    out = TracePolynomial.zero(alpha)
    for term in text.replace("- ", "+ -").split("+"):
        term = term.strip()
        coeff, _, word = term.rpartition("*") if "*" in term else ("", "", term)
        sign = -1 if word.startswith("-") else 1
        word = word.lstrip("-").strip()
        c = sign * (int(coeff) if coeff else 1)
        out = out + TracePolynomial.of(normalize(alpha, word), c)
    return out


def test_mobius_examples(abc_star, p4):
    assert str(mobius_polynomial(make("ab"))) == "1 - a - b"
    assert str(mobius_polynomial(abc_star)) == "1 - a - b - c + ab"
    assert str(mobius_polynomial(p4)) == "1 - a - b - c - d + ab + bc + cd"


def test_characteristic_series_examples(p3, p4):
    assert characteristic_series(p4, 0) == TracePolynomial.one(p4)
    S = characteristic_series(p3, 2)
    assert [sum(1 for t, _ in S.items() if len(t) == k) for k in range(3)] == [1, 3, 7]
    assert all(c == 1 for _, c in S.items())
    S = characteristic_series(p4, 3)
    assert [sum(1 for t, _ in S.items() if len(t) == k) for k in range(4)] == [1, 4, 13, 40]


def test_witt_examples(p4):
    assert witt_dimensions(p4, 3) == [4, 3, 8]
    assert witt_dimensions(make("ab"), 5) == [2, 1, 2, 3, 6]
    assert witt_dimensions(make("abc", ["ab", "ac", "bc"]), 4) == [3, 0, 0, 0]
    with pytest.raises(ValueError):
        witt_dimensions(p4, 0)


def test_printing_and_coefficients(p3):
    p = TracePolynomial.of(normalize(p3, "ca"), 2) - TracePolynomial.of(normalize(p3, "ac"))
    p = p + TracePolynomial.of(normalize(p3, "b"), Fraction(1, 2))
    assert str(p) == "1/2*b - ac + 2*ca"
    assert str(TracePolynomial.zero(p3)) == "0"
    with pytest.raises(TypeError):
        TracePolynomial.of(normalize(p3, "a"), 0.5)


def test_no_zero_terms(p3):
    a = TracePolynomial.letter(p3, "a")
    assert len(a - a) == 0
    assert not (a - a)


def test_invert_requires_unit_constant(p3):
    with pytest.raises(ValueError):
        invert(TracePolynomial.letter(p3, "a"), 3)


def test_poly_helper(abc_star):
    assert poly(abc_star, "1 - a - b - c + ab") == mobius_polynomial(abc_star)


@settings(deadline=None)
@given(alphabets(max_letters=4), st.integers(0, 6))
def test_mobius_times_series_is_one(alpha, n):
    S = characteristic_series(alpha, n)
    prod = mobius_polynomial(alpha) * S
    assert prod.truncate(n) == TracePolynomial.one(alpha)
    assert all(len(t) > n for t, _ in (prod - TracePolynomial.one(alpha)).items())


@settings(deadline=None)
@given(alphabets(max_letters=4), st.integers(0, 6))
def test_series_counts_match_enumeration(alpha, n):
    S = characteristic_series(alpha, n)
    counts = [0] * (n + 1)
    for t, c in S.items():
        assert c == 1
        counts[len(t)] += 1
    assert counts == length_counts(alpha, n)


@settings(deadline=None, max_examples=40)
@given(alphabets(max_letters=4))
def test_witt_matches_rank_oracle(alpha):
    assert witt_dimensions(alpha, 5) == [lie_dimension_oracle(alpha, m) for m in range(1, 6)]


@given(alphabets(max_letters=3), st.data())
def test_ring_laws(alpha, data):
    def draw():
        terms = data.draw(st.lists(st.tuples(words(alpha, 3), st.integers(-3, 3)), max_size=4))
        p = TracePolynomial.zero(alpha)
        for w, c in terms:
            p = p + TracePolynomial.of(normalize(alpha, w), c)
        return p
    p, q, r = draw(), draw(), draw()
    one = TracePolynomial.one(alpha)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p + q) * r == p * r + q * r
    assert one * p == p == p * one


@settings(deadline=None, max_examples=40)
@given(alphabet_and_subset(max_letters=4))
def test_series_product_across_a_bisection(ab):
    """char(M(B)) x char(<beta>) = char(M(A)) termwise when B is TFSA."""
    from pcelim import is_tfsa, restrict
    from pcelim.lie import _embed

    alpha, B = ab
    if not is_tfsa(alpha, B):
        return
    n = 5
    X = beta_generators(alpha, B, n)
    right = invert(derived_mobius_polynomial(X, n), n)
    left = _embed(characteristic_series(restrict(alpha, B), n), alpha) if B else TracePolynomial.one(alpha)
    assert left.mul(right, n) == characteristic_series(alpha, n)
