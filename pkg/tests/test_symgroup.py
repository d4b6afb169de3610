from itertools import product

from hypothesis import given, strategies as st

from nilhecke.symgroup import (
    all_permutations, canonical_reduced_word, compose, distinct_rearrangements,
    evaluate_word, identity, inverse, is_length_additive, length, longest_element,
    reduced_words, simple_reflection, weak_prefix_geq, wf_enumeration,
)


def perms(max_n=5):
    return st.integers(1, max_n).flatmap(lambda n: st.permutations(list(range(1, n + 1))).map(tuple))


def test_length_examples():
    assert length(identity(4)) == 0
    assert length((2, 1)) == 1
    assert length((3, 2, 1)) == 3


def test_longest_examples():
    assert longest_element(1) == (1,)
    assert longest_element(2) == (2, 1)
    assert longest_element(3) == (3, 2, 1)


def test_reduced_word_examples():
    assert canonical_reduced_word(identity(3)) == ()
    assert canonical_reduced_word((3, 2, 1)) == (1, 2, 1)
    assert canonical_reduced_word((1, 3, 2)) == (2,)
    assert min(reduced_words((3, 2, 1))) == (1, 2, 1)


def test_length_additive_examples():
    s1, s2 = simple_reflection(3, 1), simple_reflection(3, 2)
    assert is_length_additive(s1, s2)
    assert not is_length_additive(s1, s1)
    assert not is_length_additive(longest_element(3), s1)


def test_prefix_examples():
    s1, s2 = simple_reflection(3, 1), simple_reflection(3, 2)
    w = evaluate_word(3, (1, 2))
    assert weak_prefix_geq(identity(3), w)
    assert weak_prefix_geq(w, w)
    assert reduced_words(w) == {(1, 2)}
    assert not weak_prefix_geq(s2, w)
    assert weak_prefix_geq(s1, w)


def test_prefix_matches_word_enumeration():
    for n in range(1, 5):
        for u, w in product(all_permutations(n), repeat=2):
            brute = any(evaluate_word(n, word[:k]) == u
                        for word in reduced_words(w) for k in range(len(word) + 1))
            assert weak_prefix_geq(u, w) == brute


def test_prefix_is_partial_order():
    for n in range(1, 5):
        ps = all_permutations(n)
        for u in ps:
            assert weak_prefix_geq(u, u)
        for u, w in product(ps, repeat=2):
            if u != w and weak_prefix_geq(u, w):
                assert not weak_prefix_geq(w, u)
        for u, v, w in product(ps, repeat=3):
            if weak_prefix_geq(u, v) and weak_prefix_geq(v, w):
                assert weak_prefix_geq(u, w)


def test_wf_enumeration():
    assert wf_enumeration(2) == (identity(2), (2, 1))
    e3 = wf_enumeration(3)
    assert e3[0] == identity(3) and {length(w) for w in e3[1:3]} == {1}
    for n in range(1, 5):
        e = wf_enumeration(n)
        assert sorted(e) == sorted(all_permutations(n))
        for i, wi in enumerate(e):
            for j, wj in enumerate(e):
                if wi != wj and weak_prefix_geq(inverse(wj), inverse(wi)):
                    # a prefix of w_i^{-1} is listed earlier
                    assert j < i


def test_rearrangements():
    assert distinct_rearrangements((1, 1)) == [(1, 1)]
    assert distinct_rearrangements((1, 0)) == [(0, 1), (1, 0)]
    assert len(distinct_rearrangements((2, 1, 0))) == 6


@given(perms(), st.data())
def test_subadditivity(w, data):
    u = tuple(data.draw(st.permutations(list(range(1, len(w) + 1)))))
    lw = length(compose(u, w))
    assert lw <= length(u) + length(w)
    assert (lw == length(u) + length(w)) == is_length_additive(u, w)


@given(perms())
def test_reduced_word_length(w):
    word = canonical_reduced_word(w)
    assert len(word) == length(w)
    assert evaluate_word(len(w), word) == w
    assert compose(w, inverse(w)) == identity(len(w))
