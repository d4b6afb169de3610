"""
The (affine) nilHecke algebra on generators ``psi_1..psi_{n-1}, y_1..y_n``.

Elements are kept in the normal form ``sum c * psi_w y^a`` with the
permutation on the left and the polynomial on the right.  Moving a
polynomial ``f`` past ``psi_r`` uses

    f psi_r = psi_r s_r(f) + (f - s_r f) / (y_{r+1} - y_r),

which on generators is ``y_r psi_r = psi_r y_{r+1} - 1`` and
``y_{r+1} psi_r = psi_r y_r + 1``.  Products of ``psi``'s are ``psi_{uw}``
when lengths add and zero otherwise.

>>> n = 2
>>> psi(n, 1) * psi(n, 1)
0
>>> y(n, 2) * psi(n, 1)
1 + psi[2, 1] y^(1, 0)
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .exactlinalg import to_fraction
from .symgroup import (
    Permutation, canonical_reduced_word, compose, identity, inverse, length,
    simple_reflection,
)

__all__ = [
    "Term", "AffineElement", "psi", "y", "one", "zero", "psi_w", "monomial",
    "mul_affine", "star", "degree_split", "term_degree", "push_polynomial",
]

Term = tuple  # (Permutation, exponent tuple)


def term_degree(w: Permutation, a: tuple[int, ...]) -> int:
    return 2 * sum(a) - 2 * length(w)


class AffineElement:
    """A finitely supported combination of ``psi_w y^a``; treat as immutable."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Term, object] | Iterable = ()):
        self.n = n
        clean: dict[Term, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (w, a), c in items:
            w, a = Permutation(tuple(w)), tuple(a)
            if len(w) != n or len(a) != n:
                raise ValueError(f"term {(w, a)} does not have rank {n}")
            c = clean.get((w, a), 0) + to_fraction(c)
            if c:
                clean[(w, a)] = c
            else:
                clean.pop((w, a), None)
        self.terms = clean

    @classmethod
    def _trusted(cls, n: int, terms: dict) -> "AffineElement":
        obj = cls.__new__(cls)
        obj.n = n
        obj.terms = {k: v for k, v in terms.items() if v}
        return obj

    def _check(self, other: "AffineElement"):
        if self.n != other.n:
            raise ValueError(f"rank mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, AffineElement):
            other = one(self.n) * other
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return AffineElement._trusted(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return AffineElement._trusted(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, AffineElement):
            return mul_affine(self, other)
        c = to_fraction(other)
        return AffineElement._trusted(self.n, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, other):
        c = to_fraction(other)
        return AffineElement._trusted(self.n, {k: c * v for k, v in self.terms.items()})

    def __pow__(self, k: int):
        out = one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, AffineElement):
            return self.n == other.n and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (w, a), c in sorted(self.terms.items()):
            mon = []
            if w != identity(self.n):
                mon.append(f"psi{list(w)}")
            if any(a):
                mon.append(f"y^{a}")
            body = " ".join(mon)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


def zero(n: int) -> AffineElement:
    return AffineElement._trusted(n, {})


def one(n: int) -> AffineElement:
    return AffineElement._trusted(n, {(identity(n), (0,) * n): Fraction(1)})


def psi(n: int, r: int) -> AffineElement:
    if not 1 <= r < n:
        raise IndexError(f"psi_{r} is not a generator for n={n}")
    return AffineElement._trusted(n, {(simple_reflection(n, r), (0,) * n): Fraction(1)})


def psi_w(w: Permutation) -> AffineElement:
    n = len(w)
    return AffineElement._trusted(n, {(Permutation(tuple(w)), (0,) * n): Fraction(1)})


def y(n: int, s: int) -> AffineElement:
    if not 1 <= s <= n:
        raise IndexError(f"y_{s} is not a generator for n={n}")
    a = [0] * n
    a[s - 1] = 1
    return AffineElement._trusted(n, {(identity(n), tuple(a)): Fraction(1)})


def monomial(a, w: Permutation | None = None) -> AffineElement:
    """``psi_w y^a`` (``w`` defaults to the identity)."""
    a = tuple(a)
    n = len(a)
    w = identity(n) if w is None else Permutation(tuple(w))
    return AffineElement._trusted(n, {(w, a): Fraction(1)})


def _divided_difference(a: tuple[int, ...], r: int) -> list[tuple[tuple[int, ...], int]]:
    """``(y^a - s_r y^a) / (y_{r+1} - y_r)`` as (exponents, coefficient) pairs."""
    p, q = a[r - 1], a[r]
    if p == q:
        return []
    sign, lo, gap = (-1, q, p - q) if p > q else (1, p, q - p)
    out = []
    for i in range(gap):
        b = list(a)
        b[r - 1] = lo + i
        b[r] = lo + gap - 1 - i
        out.append((tuple(b), sign))
    return out


@lru_cache(maxsize=None)
def push_polynomial(a: tuple[int, ...], v: Permutation) -> tuple:
    """
    Straighten ``y^a psi_v`` into ``sum c * psi_u y^b``.

    Returns a tuple of ``((u, b), c)`` pairs with integer coefficients.
    """
    n = len(a)
    terms: dict = {(identity(n), a): 1}
    for r in canonical_reduced_word(v):
        nxt: dict = defaultdict(int)
        for (u, b), c in terms.items():
            if u[r - 1] < u[r]:
                ub = list(u)
                ub[r - 1], ub[r] = ub[r], ub[r - 1]
                sb = list(b)
                sb[r - 1], sb[r] = sb[r], sb[r - 1]
                nxt[(Permutation(tuple(ub)), tuple(sb))] += c
            for e, s in _divided_difference(b, r):
                nxt[(u, e)] += c * s
        terms = {k: c for k, c in nxt.items() if c}
    return tuple(terms.items())


@lru_cache(maxsize=None)
def _psi_product(u: Permutation, w: Permutation):
    uw = compose(u, w)
    return uw if length(uw) == length(u) + length(w) else None


def mul_affine(x: AffineElement, z: AffineElement) -> AffineElement:
    x._check(z)
    out: dict = defaultdict(Fraction)
    for (w, a), c1 in x.terms.items():
        for (v, b), c2 in z.terms.items():
            c = c1 * c2
            for (u, e), k in push_polynomial(a, v):
                wu = _psi_product(w, u)
                if wu is None:
                    continue
                out[(wu, tuple(i + j for i, j in zip(e, b)))] += c * k
    return AffineElement._trusted(x.n, out)


def star(x: AffineElement) -> AffineElement:
    """The anti-involution fixing every generator: ``psi_w y^a -> y^a psi_{w^-1}``."""
    out = zero(x.n)
    for (w, a), c in x.terms.items():
        out = out + c * mul_affine(monomial(a), psi_w(inverse(w)))
    return out


def degree_split(x: AffineElement) -> dict[int, AffineElement]:
    parts: dict[int, dict] = defaultdict(dict)
    for (w, a), c in x.terms.items():
        parts[term_degree(w, a)][(w, a)] = c
    return {d: AffineElement._trusted(x.n, t) for d, t in sorted(parts.items())}


def to_json(x: AffineElement) -> dict:
    return {
        "n": x.n,
        "terms": [
            {"perm": list(w), "exps": list(a), "coeff": str(c)}
            for (w, a), c in sorted(x.terms.items())
        ],
    }


def from_json(data: Mapping) -> AffineElement:
    n = int(data["n"])
    return AffineElement(n, [((tuple(t["perm"]), tuple(t["exps"])), Fraction(str(t["coeff"])))
                             for t in data.get("terms", [])])
