import pytest
from hypothesis import given, settings, strategies as st

from pcelim import (
    AlphabetError,
    alpha_injectivity_witness,
    commutation_closure,
    extend_alphabet,
    group_equal,
    group_inverse,
    group_mul,
    initial_alphabet,
    is_tfsa,
    reduce_trace,
    rho_generators,
    semidirect_split,
)
from pcelim.group import beta_relation, is_reduced, retract
from pcelim.oracles import RewritingOracle, piling, piling_length
from pcelim.trace import enumerate_traces
from strategies import alphabet_and_subset, alphabets, make


def group_words(D, max_size=6):
    return st.lists(st.sampled_from(D.alphabet.letters), max_size=max_size)


def signed(D, word):
    return [(D.base_letter(x), -1 if x.endswith("'") else 1) for x in word]


def text(t):
    return " ".join(t.word) if len(t) else "1"


def test_extend_alphabet_examples():
    D = extend_alphabet(make("ab", ["ab"]))
    assert D.alphabet.letters == ("a", "a'", "b", "b'")
    assert D.alphabet.theta == {frozenset(p) for p in
                                (("a", "b"), ("a", "b'"), ("a'", "b"), ("a'", "b'"))}
    assert not D.alphabet.commute("a", "a'")
    assert extend_alphabet(make("ab")).alphabet.theta == frozenset()
    assert D.bar("a") == "a'" and D.bar("b'") == "b"


def test_reduce_examples(p3):
    ab = extend_alphabet(make("ab", ["ab"]))
    assert text(reduce_trace(ab, "a a'")) == "1"
    assert text(reduce_trace(ab, "a b a'")) == "b"
    D = extend_alphabet(p3)
    assert text(reduce_trace(D, "c' a c")) == "c' a c"
    assert is_reduced(D.trace("c' a c"))


def test_group_equal_examples(p3):
    ab = extend_alphabet(make("ab", ["ab"]))
    assert group_equal(ab, "a a'", "")
    assert group_equal(ab, "a b", "b a")
    assert not group_equal(extend_alphabet(make("ab")), "a b", "b a")
    D = extend_alphabet(p3)
    assert group_equal(D, "c' a c b", "b c' a c")
    with pytest.raises(AlphabetError):
        group_equal(D, "q", "")


def test_mul_and_inverse_examples(p3):
    D = extend_alphabet(make("ab"))
    assert text(group_inverse(D, "a b")) == "b' a'"
    assert text(group_mul(D, "a", "a'")) == "1"
    P = extend_alphabet(p3)
    assert group_inverse(P, "c' a c") == P.trace("c' a' c")


def test_rho_examples(p3, abc_star):
    D = extend_alphabet(p3)
    rho = {text(g): text(c) for g, c in rho_generators(D, {"c"}, 2)}
    assert rho == {"a": "a", "b": "b", "a c": "c' a c", "a c'": "c a c'"}
    assert {text(g) for g, _ in rho_generators(D, {"c"}, 1)} == {"a", "b"}
    S = extend_alphabet(abc_star)
    rho = {text(g): text(c) for g, c in rho_generators(S, {"c"}, 2)}
    assert rho["b c"] == "c' b c"
    with pytest.raises(AlphabetError):
        rho_generators(D, {"a", "b", "c"}, 2)


def test_split_examples(p3):
    D = extend_alphabet(p3)
    assert semidirect_split(D, "c c'", {"c"}) == (D.trace(""), D.trace(""))
    assert semidirect_split(D, "c c", {"c"}) == (D.trace("c c"), D.trace(""))
    assert semidirect_split(D, "c a", {"c"}) == (D.trace("c"), D.trace("a"))
    assert semidirect_split(D, "a c", {"c"}) == (D.trace("c"), D.trace("c' a c"))


def test_closure_examples(p3):
    D = extend_alphabet(p3)
    rel = commutation_closure(D, {"c"}, 2)
    named = {frozenset(text(t) for t in p) for p in rel}
    assert frozenset(("a c", "b")) in named
    assert named == {frozenset(p) for p in (("a", "b"), ("a c", "b"), ("a c'", "b"))}
    xy = extend_alphabet(make("xyc", ["xy"]))
    rel = {frozenset(text(t) for t in p) for p in commutation_closure(xy, {"c"}, 2)}
    assert frozenset(("x c", "y c")) in rel
    assert frozenset(("x c", "y c")) not in {frozenset(text(t) for t in p)
                                              for p in beta_relation(xy, {"c"}, 2)}


def test_injectivity_witness_examples(p3):
    xy = extend_alphabet(make("xyc", ["xy"]))
    r1, r2 = alpha_injectivity_witness(xy, {"c"}, 2)
    assert (text(r1), text(r2)) == ("x c", "y c")
    assert alpha_injectivity_witness(extend_alphabet(p3), {"c"}, 4) is None
    # Z totally non-commutative
    assert alpha_injectivity_witness(extend_alphabet(make("abc", ["bc"])), {"c"}, 4) is None
    with pytest.raises(ValueError):
        alpha_injectivity_witness(xy, {"c"}, 1)


@settings(deadline=None, max_examples=60)
@given(alphabets(max_letters=3), st.data())
def test_reduction_is_confluent(alpha, data):
    D = extend_alphabet(alpha)
    w = data.draw(group_words(D))
    oracle = RewritingOracle(D.alphabet, D.bar)
    (terminal,) = oracle.terminals(w)
    assert D.trace(terminal) == reduce_trace(D, w)


@settings(deadline=None)
@given(alphabets(max_letters=4), st.data())
def test_reduction_matches_piling(alpha, data):
    D = extend_alphabet(alpha)
    u, v = data.draw(group_words(D, 8)), data.draw(group_words(D, 8))
    r = reduce_trace(D, u)
    assert is_reduced(r)
    assert len(r) == piling_length(piling(alpha, signed(D, u)))
    assert group_equal(D, u, v) == (piling(alpha, signed(D, u)) == piling(alpha, signed(D, v)))


@settings(deadline=None)
@given(alphabets(max_letters=4), st.data())
def test_group_laws(alpha, data):
    D = extend_alphabet(alpha)
    u, v, w = (data.draw(group_words(D, 5)) for _ in range(3))
    assert group_mul(D, group_mul(D, u, v), w) == group_mul(D, u, group_mul(D, v, w))
    assert len(group_mul(D, u, group_inverse(D, u))) == 0
    assert group_inverse(D, group_mul(D, u, v)) == group_mul(D, group_inverse(D, v), group_inverse(D, u))


@settings(deadline=None)
@given(alphabet_and_subset(max_letters=4), st.data())
def test_split_contract(ab, data):
    alpha, B = ab
    D = extend_alphabet(alpha)
    g1, g2 = data.draw(group_words(D)), data.draw(group_words(D))
    b, h = semidirect_split(D, g1, B)
    assert group_mul(D, b, h) == reduce_trace(D, g1)
    assert {D.base_letter(x) for x in b.word} <= B
    assert len(retract(D, h, B)) == 0
    b2, _ = semidirect_split(D, g2, B)
    b12, _ = semidirect_split(D, group_mul(D, g1, g2), B)
    assert b12 == group_mul(D, b, b2)


@settings(deadline=None, max_examples=40)
@given(alphabet_and_subset(max_letters=3), st.data())
def test_conjugate_lemma(ab, data):
    """reduce(w-bar z w) has length 2|w| + 1 iff IA(z w) = {z}, for w reduced over B~."""
    alpha, B = ab
    D = extend_alphabet(alpha)
    z = data.draw(st.sampled_from(sorted(set(alpha.letters) - B)))
    z = data.draw(st.sampled_from([z, D.bar(z)]))
    Bt = sorted(D.doubled_subset(B))
    w = reduce_trace(D, data.draw(st.lists(st.sampled_from(Bt), max_size=4)) if Bt else [])
    zw = D.trace([z] + list(w.word))
    conj = reduce_trace(D, list(group_inverse(D, w).word) + [z] + list(w.word))
    assert (len(conj) == 2 * len(w) + 1) == (initial_alphabet(zw) == {z})


@settings(deadline=None, max_examples=30)
@given(alphabet_and_subset(max_letters=4))
def test_rho_commutations_match_tfsa(ab):
    alpha, B = ab
    D = extend_alphabet(alpha)
    closure = commutation_closure(D, B, 3)
    letterwise = beta_relation(D, B, 3)
    assert letterwise <= closure
    if is_tfsa(alpha, B):
        assert closure == letterwise
        assert alpha_injectivity_witness(D, B, 3) is None
    else:
        witness = alpha_injectivity_witness(D, B, 6)
        r1, r2 = witness
        conj = dict(rho_generators(D, B, 6))
        assert group_mul(D, conj[r1], conj[r2]) == group_mul(D, conj[r2], conj[r1])
        assert frozenset((r1, r2)) not in beta_relation(D, B, 6)


@pytest.mark.parametrize("letters,edges,B", [
    ("abc", ["ab", "bc"], "c"),
    ("abc", ["ab"], "c"),
    ("abc", [], "bc"),
])
def test_rho_generates_small_kernel_elements(letters, edges, B):
    """Every element of H_Z of reduced length <= 4 is a product of at most
    four rho conjugates or their inverses (surjectivity at this bound)."""
    D = extend_alphabet(make(letters, edges))
    B = set(B)
    gens = [c for _, c in rho_generators(D, B, 3)]
    gens += [group_inverse(D, c) for c in gens]
    reached = {D.trace("")}
    frontier = set(reached)
    for _ in range(4):
        frontier = {t for s in frontier for g in gens
                    for t in [group_mul(D, s, g)] if len(t) <= 8} - reached
        reached |= frontier
    kernel = [t for t in enumerate_traces(D.alphabet, 4)
              if is_reduced(t) and len(retract(D, t, B)) == 0]
    assert kernel and all(t in reached for t in kernel)
