"""
Symmetric group combinatorics in one-line notation.

A permutation of ``{1, ..., n}`` is a tuple whose entry at position ``i - 1``
is ``w(i)``.  Products are composition of functions, ``(u * w)(i) = u(w(i))``,
so ``s_i`` acting on the right swaps positions and on the left swaps values.

The prefix order follows the convention used for the idempotent construction:
``u >= w`` ("u precedes w") when some reduced word of ``w`` starts with a
reduced word of ``u``.  The identity is therefore the *largest* element.

>>> length((3, 2, 1))
3
>>> canonical_reduced_word((3, 2, 1))
(1, 2, 1)
>>> [p for p in wf_enumeration(3)][:3]
[(1, 2, 3), (1, 3, 2), (2, 1, 3)]
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import NewType

__all__ = [
    "Permutation", "ReducedWord",
    "identity", "simple_reflection", "compose", "inverse", "length",
    "longest_element", "all_permutations", "canonical_reduced_word",
    "evaluate_word", "reduced_words", "is_length_additive",
    "weak_prefix_geq", "wf_enumeration", "distinct_rearrangements",
    "permute_exponents", "embed",
]

Permutation = NewType("Permutation", tuple)
ReducedWord = NewType("ReducedWord", tuple)


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def simple_reflection(n: int, i: int) -> Permutation:
    if not 1 <= i < n:
        raise ValueError(f"s_{i} is not a generator of Sym_{n}")
    w = list(range(1, n + 1))
    w[i - 1], w[i] = w[i], w[i - 1]
    return Permutation(tuple(w))


def compose(u: Permutation, w: Permutation) -> Permutation:
    if len(u) != len(w):
        raise ValueError("permutations of different degrees")
    return Permutation(tuple(u[x - 1] for x in w))


def inverse(w: Permutation) -> Permutation:
    out = [0] * len(w)
    for i, x in enumerate(w, 1):
        out[x - 1] = i
    return Permutation(tuple(out))


def length(w: Permutation) -> int:
    """Number of inversions."""
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def longest_element(n: int) -> Permutation:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return Permutation(tuple(range(n, 0, -1)))


@lru_cache(maxsize=None)
def all_permutations(n: int) -> tuple[Permutation, ...]:
    return tuple(Permutation(p) for p in permutations(range(1, n + 1)))


@lru_cache(maxsize=None)
def canonical_reduced_word(w: Permutation) -> ReducedWord:
    """Lexicographically smallest reduced word: peel off the smallest left descent."""
    w = tuple(w)
    pos = {x: i for i, x in enumerate(w)}
    letters = []
    while True:
        for r in range(1, len(w)):
            # r is a left descent iff r+1 appears before r in one-line notation
            if pos[r] > pos[r + 1]:
                letters.append(r)
                pos[r], pos[r + 1] = pos[r + 1], pos[r]
                break
        else:
            return ReducedWord(tuple(letters))


def evaluate_word(n: int, word) -> Permutation:
    w = list(range(1, n + 1))
    for r in word:
        # right multiplication by s_r swaps positions
        w[r - 1], w[r] = w[r], w[r - 1]
    return Permutation(tuple(w))


@lru_cache(maxsize=None)
def reduced_words(w: Permutation) -> frozenset[ReducedWord]:
    """All reduced words of ``w`` (exponential; for small-n oracles)."""
    w = tuple(w)
    if all(x == i for i, x in enumerate(w, 1)):
        return frozenset({ReducedWord(())})
    out = set()
    for r in range(1, len(w)):
        if w[r - 1] > w[r]:  # right descent
            v = list(w)
            v[r - 1], v[r] = v[r], v[r - 1]
            out.update(ReducedWord(word + (r,)) for word in reduced_words(Permutation(tuple(v))))
    return frozenset(out)


def is_length_additive(u: Permutation, w: Permutation) -> bool:
    return length(compose(u, w)) == length(u) + length(w)


def weak_prefix_geq(u: Permutation, w: Permutation) -> bool:
    """True iff ``u`` is the value of a prefix of some reduced word of ``w``."""
    return length(compose(inverse(u), w)) == length(w) - length(u)


@lru_cache(maxsize=None)
def wf_enumeration(n: int) -> tuple[Permutation, ...]:
    """
    The fixed listing ``w_1 = 1, w_2, ..., w_{n!}`` used by the matrix units.

    Sorted by length, ties broken by the one-line notation of the inverse.
    A strict prefix is strictly shorter, so ``w_i^{-1} > w_j^{-1}`` forces
    ``i < j``.
    """
    return tuple(sorted(all_permutations(n), key=lambda w: (length(w), inverse(w))))


def distinct_rearrangements(e) -> list[tuple[int, ...]]:
    """All distinct tuples obtained by permuting the entries of ``e``, sorted."""
    return sorted(set(permutations(tuple(e))))


def permute_exponents(w: Permutation, a: tuple[int, ...]) -> tuple[int, ...]:
    """Exponent vector of ``w(y^a)``: the exponent of ``y_i`` moves to ``y_{w(i)}``."""
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[w[i] - 1] = x
    return tuple(out)


def embed(w: Permutation, n: int) -> Permutation:
    """Image of ``w`` under ``Sym_m -> Sym_n`` fixing ``m+1, ..., n``."""
    return Permutation(tuple(w) + tuple(range(len(w) + 1, n + 1)))
