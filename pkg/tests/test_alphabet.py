from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from pcelim import (
    AlphabetError,
    dependence_graph,
    derived_independence,
    independent_cliques,
    normalize,
    parse_alphabet,
    restrict,
)
from strategies import alphabets, make


def pairs(*ps):
    return {frozenset(p) for p in ps}


def test_parse_example():
    alpha = parse_alphabet("letters a b c\nedge a b")
    assert alpha.letters == ("a", "b", "c")
    assert alpha.theta == pairs("ab")


def test_parse_comments_and_blank_lines():
    text = "# a path\n\nletters x y z   # three letters\nedge x y\n  edge y z\n"
    alpha = parse_alphabet(text)
    assert alpha.letters == ("x", "y", "z")
    assert alpha.theta == pairs("xy", "yz")


def test_parse_free_monoid():
    assert parse_alphabet("letters a b").theta == frozenset()


def test_multichar_letters():
    alpha = parse_alphabet("letters x1 x2 y\nedge x1 y")
    assert alpha.commute("x1", "y") and not alpha.commute("x1", "x2")


@pytest.mark.parametrize("text", [
    "letters a\nedge a a",
    "letters a a",
    "letters a b\nedge a c",
    "letters a b\nedge a",
    "letters a b\nletters c",
    "edge a b\nletters a b",
    "letters a b\nfoo a b",
    "letters a' b",
    "",
])
def test_parse_errors(text):
    with pytest.raises(AlphabetError):
        parse_alphabet(text)


def test_str_round_trip(p4):
    assert parse_alphabet(str(p4)) == p4


def test_constructor_validation():
    with pytest.raises(AlphabetError):
        make("ab", ["ac"])
    with pytest.raises(AlphabetError):
        make("aa")


def test_dependence_graph_examples(p3, abc_star):
    assert dependence_graph(p3) == pairs("ac")
    assert dependence_graph(make("ab")) == pairs("ab")
    assert dependence_graph(abc_star) == pairs("ac", "bc")


def test_restrict_examples(p4, p3):
    sub = restrict(p4, {"a", "c"})
    assert sub.letters == ("a", "c") and sub.theta == frozenset()
    assert restrict(p4, p4.letters) == p4
    assert restrict(p3, {"a", "b"}).theta == pairs("ab")
    with pytest.raises(AlphabetError):
        restrict(p3, {"q"})


def test_derived_independence_examples(p3, p4):
    X = derived_independence(p3, [normalize(p3, w) for w in ("b", "a", "ac", "acc")])
    assert [str(g) for g in X.generators] == ["a", "b", "ac", "acc"]
    assert {frozenset(map(str, e)) for e in X.edges()} == pairs(("b", "a"), ("b", "ac"), ("b", "acc"))
    Y = derived_independence(p4, [normalize(p4, w) for w in ("b", "d", "a", "ac")])
    assert {frozenset(map(str, e)) for e in Y.edges()} == pairs(("b", "a"), ("b", "ac"))
    with pytest.raises(AlphabetError):
        derived_independence(p3, [normalize(p3, "")])


def test_derived_as_alphabet(p3):
    X = derived_independence(p3, [normalize(p3, w) for w in ("a", "b", "ac")])
    abstract = X.as_alphabet()
    assert abstract.letters == ("a", "b", "ac")
    assert abstract.theta == pairs(("a", "b"), ("b", "ac"))


def test_cliques_examples(p4):
    assert independent_cliques(p4) == [(), ("a",), ("b",), ("c",), ("d",), ("a", "b"), ("b", "c"), ("c", "d")]
    assert independent_cliques(make("abc")) == [(), ("a",), ("b",), ("c",)]
    assert len(independent_cliques(make("abc", ["ab", "ac", "bc"]))) == 8


@given(alphabets(max_letters=6))
def test_pairs_partitioned(alpha):
    dep = dependence_graph(alpha)
    for a, b in combinations(alpha.letters, 2):
        p = frozenset((a, b))
        assert (p in dep) != (p in alpha.theta)


@given(alphabets(max_letters=6), st.data())
def test_restrict_composes(alpha, data):
    B = data.draw(st.sets(st.sampled_from(alpha.letters)))
    C = data.draw(st.sets(st.sampled_from(sorted(B)))) if B else set()
    assert restrict(restrict(alpha, B), C) == restrict(alpha, C)


@given(alphabets(max_letters=6), st.data())
def test_single_letters_derive_restriction(alpha, data):
    B = data.draw(st.sets(st.sampled_from(alpha.letters), min_size=1))
    X = derived_independence(alpha, [normalize(alpha, [b]) for b in B])
    sub = restrict(alpha, B)
    assert {frozenset(str(t) for t in p) for p in X.relation} == set(sub.theta)


@given(alphabets(max_letters=6))
def test_cliques_closed_downward(alpha):
    cliques = {frozenset(c) for c in independent_cliques(alpha)}
    for c in cliques:
        for a, b in combinations(sorted(c), 2):
            assert alpha.commute(a, b)
        for x in c:
            assert c - {x} in cliques
