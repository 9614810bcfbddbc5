import pytest
from hypothesis import given, settings, strategies as st

from pcelim import (
    AlphabetError,
    b_closure,
    beta_generators,
    bounded_code_check,
    concat,
    condition_ii_check,
    derived_independence,
    factor_bisection,
    initial_alphabet,
    is_tfsa,
    normalize,
    restrict,
    tfsa_by_closure,
)
from pcelim.factorization import spell_over
from pcelim.trace import enumerate_traces, left_divisors, left_quotient
from pcelim.verify import tri_equivalence
from strategies import alphabet_and_subset, alphabet_and_word, make


def names(X):
    return {str(g) for g in X.generators}


def traces(alpha, *ws):
    return [normalize(alpha, w) for w in ws]


def test_factor_bisection_examples(p3):
    n = lambda w: normalize(p3, w)
    assert factor_bisection(n("cab"), {"c"}) == (n("c"), n("ab"))
    assert factor_bisection(n("acb"), {"c"}) == (n(""), n("acb"))
    assert factor_bisection(n("cc"), {"c"}) == (n("cc"), n(""))
    assert factor_bisection(n("acb"), {"c"}, side="right") == (n("c"), n("ab"))
    with pytest.raises(ValueError):
        factor_bisection(n("a"), {"c"}, side="middle")


def test_beta_examples(p3, abc_star, p4):
    assert names(beta_generators(p3, {"c"}, 3)) == {"a", "b", "ac", "acc"}
    assert names(beta_generators(abc_star, {"c"}, 2)) == {"a", "b", "ac", "bc"}
    assert names(beta_generators(p4, {"c"}, 3)) == {"a", "b", "d", "ac", "acc"}
    X = beta_generators(p3, {"c"}, 3)
    assert not X.complete
    assert beta_generators(make("abc"), {"a", "b"}, 1).generators == tuple(traces(make("abc"), "c"))
    assert beta_generators(p3, set(), 4).complete


def test_beta_errors(p3):
    with pytest.raises(AlphabetError):
        beta_generators(p3, {"a", "b", "c"}, 3)
    with pytest.raises(AlphabetError):
        beta_generators(p3, {"q"}, 3)
    with pytest.raises(ValueError):
        beta_generators(p3, {"c"}, 0)


def test_is_tfsa_examples(abc_star, p3, p4):
    v = is_tfsa(abc_star, {"c"})
    assert not v and v.witness == ("a", "c", "b")
    assert str(v) == "NOT TFSA\nwitness: a - c - b"
    assert is_tfsa(p3, {"c"})
    assert is_tfsa(p4, {"c"})
    assert is_tfsa(p4, set()) and is_tfsa(p4, p4.letters)
    assert str(is_tfsa(p3, {"c"})) == "TFSA"


def test_b_closure_examples(p3, p4):
    assert b_closure(p3, {"c"}, "a") == {"c"}
    assert b_closure(p3, {"c"}, "b") == frozenset()
    assert b_closure(p4, set(), "a") == frozenset()
    assert b_closure(p4, {"b", "d"}, "a") == {"b", "d"}  # a - d - b
    with pytest.raises(AlphabetError):
        b_closure(p3, {"c"}, "c")


def test_code_check_examples(abc_star):
    n = lambda w: normalize(abc_star, w)
    X = derived_independence(abc_star, traces(abc_star, "c", "cb", "ca"))
    assert bounded_code_check(abc_star, X, 6)
    X = derived_independence(abc_star, traces(abc_star, "b", "a", "ca", "cb"))
    chk = bounded_code_check(abc_star, X, 6)
    assert not chk
    assert chk.witness == (n("cab"), (n("ca"), n("b")), (n("cb"), n("a")))
    chk = bounded_code_check(abc_star, beta_generators(abc_star, {"c"}, 2), 6)
    assert chk.witness == (n("abc"), (n("a"), n("bc")), (n("b"), n("ac")))


def test_code_check_alphabet_mismatch(p3, abc_star):
    with pytest.raises(AlphabetError):
        bounded_code_check(p3, beta_generators(abc_star, {"c"}, 2), 4)


def test_condition_ii_examples(abc_star, p3):
    n = lambda w: normalize(abc_star, w)
    chk = condition_ii_check(abc_star, {"c"}, 4)
    assert not chk
    assert chk.witness == ("a", n(""), "b", n("c"), n(""), n("c"))
    assert condition_ii_check(p3, {"c"}, 5)
    # Z = {a, b} totally non-commutative
    assert condition_ii_check(make("abc", ["bc"]), {"c"}, 6)


def test_tfsa_by_closure_examples(abc_star, p3):
    assert not tfsa_by_closure(abc_star, {"c"})
    assert tfsa_by_closure(p3, {"c"})


@settings(deadline=None, max_examples=60)
@given(alphabet_and_subset(max_letters=5, proper=False))
def test_three_forms_agree(ab):
    alpha, B = ab
    verdict, code, cond, closure = tri_equivalence(alpha, B, 6, 5)
    assert bool(verdict) == code == cond == closure


@settings(deadline=None, max_examples=60)
@given(alphabet_and_subset(max_letters=5))
def test_tfsa_witness_is_a_path(ab):
    alpha, B = ab
    v = is_tfsa(alpha, B)
    if v:
        return
    z, *inner, z2 = v.witness
    assert z not in B and z2 not in B and alpha.commute(z, z2)
    assert all(b in B for b in inner)
    for x, y in zip(v.witness, v.witness[1:]):
        assert not alpha.commute(x, y)


@settings(deadline=None)
@given(alphabet_and_word(max_size=6), st.data())
def test_factor_bisection_laws(aw, data):
    alpha, w = aw
    t = normalize(alpha, w)
    B = data.draw(st.sets(st.sampled_from(alpha.letters)))
    w_, m = factor_bisection(t, B)
    assert concat(w_, m) == t
    assert w_.alph() <= B
    assert not (initial_alphabet(m) & B)
    # w is the largest left divisor over B
    for d in left_divisors(t):
        if d.alph() <= B:
            assert left_quotient(d, w_) is not None
    r, m2 = factor_bisection(t, B, side="right")
    assert concat(m2, r) == t and r.alph() <= B


@settings(deadline=None, max_examples=40)
@given(alphabet_and_subset(max_letters=4))
def test_beta_submonoid_is_initial_outside_b(ab):
    """<beta> holds exactly the traces whose initial letters avoid B."""
    alpha, B = ab
    n = 6
    X = beta_generators(alpha, B, n)
    for t in enumerate_traces(alpha, n):
        inside = spell_over(X, t) is not None
        assert inside == (not initial_alphabet(t) & B)


@settings(deadline=None, max_examples=40)
@given(alphabet_and_subset(max_letters=5))
def test_beta_generators_shape(ab):
    alpha, B = ab
    X = beta_generators(alpha, B, 4)
    Z = set(alpha.letters) - B
    for g in X.generators:
        (z,) = initial_alphabet(g)
        assert z in Z
        assert g.alph() - {z} <= B
        assert g.word.count(z) == 1
    # each single letter of Z is a generator
    assert {str(normalize(alpha, [z])) for z in Z} <= names(X)


@settings(deadline=None, max_examples=40)
@given(alphabet_and_subset(max_letters=5))
def test_tfsa_survives_deleting_an_outside_letter(ab):
    alpha, B = ab
    # B is TFSA in A  =>  B is TFSA in any restriction containing it
    if is_tfsa(alpha, B):
        for a in alpha.letters:
            if a not in B:
                sub = restrict(alpha, set(alpha.letters) - {a})
                assert is_tfsa(sub, B)
