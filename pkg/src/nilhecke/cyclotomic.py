"""
The cyclotomic quotient ``H(ell, n)`` of the nilHecke algebra by ``y_1^ell``.

Elements are written in the monomial basis ``psi_w y^a`` with
``0 <= a_i <= ell - i``.  Reduction of an arbitrary polynomial part repeatedly
rewrites the leftmost out-of-bounds power ``y_m^{ell-m+1}`` using the
vanishing of the complete homogeneous polynomial
``h_{ell-m+1}(y_1, ..., y_m)``.

Multiplication inside a context goes through the left regular
representation: integer matrices for ``y_s`` (and the monomials ``y^a``) plus
index maps for ``psi_w``.  :meth:`CycContext.mul_via_affine` is the slow
reference path (straighten in the affine algebra, then reduce).

>>> ctx = CycContext(2, 2)
>>> ctx.dimension
4
>>> ctx.reduce(affine.y(2, 2))
-y^(1, 0)
"""

from __future__ import annotations

import threading
from collections import defaultdict
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import comb, factorial, lcm
from typing import Iterable, Mapping

import numpy as np

from . import affine
from .affine import AffineElement, push_polynomial
from .exactlinalg import EchelonBasis, to_fraction
from .symgroup import (
    Permutation, compose, identity, length, longest_element, wf_enumeration,
)

__all__ = [
    "CycContext", "CycElement", "ContextMismatch", "compositions",
    "get_context", "complete_homogeneous",
]

_INT64_SAFE = 2 ** 62


class ContextMismatch(ValueError):
    pass


def compositions(total: int, parts: int):
    """All tuples of ``parts`` nonnegative integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def complete_homogeneous(n: int, degree: int, s: int) -> AffineElement:
    """``h_degree(y_1, ..., y_s)`` as an affine element of rank ``n``."""
    terms = {}
    for c in compositions(degree, s):
        terms[(identity(n), tuple(c) + (0,) * (n - s))] = 1
    return AffineElement(n, terms)


class CycContext:
    """
    Everything attached to one algebra ``H(ell, n)``: the monomial basis, the
    reduction memo and the multiplication engine.

    Contexts with ``ell < n`` are allowed and describe the zero algebra.
    """

    def __init__(self, ell: int, n: int):
        if ell < 1 or n < 0:
            raise ValueError(f"need ell >= 1 and n >= 0, got ell={ell}, n={n}")
        self.ell = ell
        self.n = n
        self._memo: dict[tuple, dict] = {}
        self._lock = threading.Lock()
        self.perms = wf_enumeration(n)
        if ell >= n:
            self.exps = tuple(product(*[range(ell - i + 1) for i in range(1, n + 1)]))
        else:
            self.exps = ()
        self.basis: tuple[tuple[Permutation, tuple], ...] = tuple(
            (w, a) for w in self.perms for a in self.exps)
        self.index = {b: i for i, b in enumerate(self.basis)}
        self.degrees = tuple(2 * sum(a) - 2 * length(w) for w, a in self.basis)

    def __repr__(self):
        return f"CycContext(ell={self.ell}, n={self.n})"

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def expected_dimension(self) -> int:
        return comb(self.ell, self.n) * factorial(self.n) ** 2

    @property
    def is_zero(self) -> bool:
        return self.ell < self.n

    # -- reduction --------------------------------------------------------

    def reduce_exponents(self, a: tuple[int, ...]) -> dict[tuple, int]:
        """``y^a`` rewritten in bounded monomials, as ``{exponents: coefficient}``."""
        a = tuple(a)
        if self.is_zero:
            return {}
        hit = self._memo.get(a)
        if hit is not None:
            return hit
        ell = self.ell
        m = next((i for i in range(1, self.n + 1) if a[i - 1] > ell - i), None)
        if m is None:
            out = {a: 1}
        elif m == 1:
            out = {}
        else:
            k = ell - m + 1
            base = list(a)
            base[m - 1] -= k
            acc: dict = defaultdict(int)
            for lvec in compositions(k, m):
                if lvec[-1] == k:
                    continue
                b = tuple(x + (lvec[i] if i < m else 0) for i, x in enumerate(base))
                for e, c in self.reduce_exponents(b).items():
                    acc[e] -= c
            out = {e: c for e, c in acc.items() if c}
        with self._lock:
            self._memo.setdefault(a, out)
        return out

    def reduce(self, x: AffineElement) -> "CycElement":
        if x.n != self.n:
            raise ContextMismatch(f"rank {x.n} element in a rank {self.n} context")
        out: dict = defaultdict(Fraction)
        for (w, a), c in x.terms.items():
            for e, k in self.reduce_exponents(a).items():
                out[self.index[(w, e)]] += c * k
        return CycElement(self, out)

    def lift(self, x: "CycElement") -> AffineElement:
        return AffineElement._trusted(self.n, {self.basis[i]: c for i, c in x.coeffs.items()})

    # -- constructors -----------------------------------------------------

    def element(self, terms: Mapping | Iterable = ()) -> "CycElement":
        """Element from ``{(perm, exps): coeff}``; out-of-bound exponents are reduced."""
        return self.reduce(AffineElement(self.n, terms))

    def zero(self) -> "CycElement":
        return CycElement(self, {})

    def one(self) -> "CycElement":
        return self.reduce(affine.one(self.n))

    def psi(self, r: int) -> "CycElement":
        return self.reduce(affine.psi(self.n, r))

    def y(self, s: int) -> "CycElement":
        return self.reduce(affine.y(self.n, s))

    def psi_w(self, w: Permutation) -> "CycElement":
        return self.reduce(affine.psi_w(w))

    def monomial(self, a, w: Permutation | None = None) -> "CycElement":
        return self.reduce(affine.monomial(a, w))

    def basis_element(self, i: int) -> "CycElement":
        return CycElement(self, {i: Fraction(1)})

    def generators(self) -> list["CycElement"]:
        return [self.psi(r) for r in range(1, self.n)] + [self.y(s) for s in range(1, self.n + 1)]

    def from_vector(self, v) -> "CycElement":
        return CycElement(self, {i: c for i, c in enumerate(v) if c})

    # -- multiplication engine --------------------------------------------

    @cached_property
    def _y_matrices(self) -> list[np.ndarray]:
        d = self.dimension
        mats = []
        for s in range(1, self.n + 1):
            es = tuple(1 if i == s - 1 else 0 for i in range(self.n))
            m = np.zeros((d, d), dtype=object)
            for j, (v, b) in enumerate(self.basis):
                for (u, e), c in push_polynomial(es, v):
                    for f, k in self.reduce_exponents(tuple(p + q for p, q in zip(e, b))).items():
                        m[self.index[(u, f)], j] += c * k
            mats.append(m)
        return mats

    @cached_property
    def _monomial_matrices(self) -> dict[tuple, np.ndarray]:
        d = self.dimension
        out: dict[tuple, np.ndarray] = {}
        for a in self.exps:  # lexicographic, so a - e_s is always ready
            s = next((i for i, x in enumerate(a) if x), None)
            if s is None:
                out[a] = np.identity(d, dtype=object) if d else np.zeros((0, 0), dtype=object)
                continue
            prev = list(a)
            prev[s] -= 1
            ym, pm = self._y_matrices[s], out[tuple(prev)]
            # exact int64 product when no entry can exceed the bound
            if int(np.abs(ym).sum(axis=1).max()) * int(np.abs(pm).max()) < _INT64_SAFE:
                out[a] = ym.astype(np.int64).dot(pm.astype(np.int64)).astype(object)
            else:
                out[a] = ym.dot(pm)
        return out

    @cached_property
    def _engine(self):
        mats = self._monomial_matrices
        biggest = max((int(np.abs(m).max()) for m in mats.values() if m.size), default=0)
        small = biggest < 2 ** 31
        fast = {a: m.astype(np.int64) for a, m in mats.items()} if small else None
        psi_maps = {}
        for w in self.perms:
            src, dst = [], []
            for j, (v, b) in enumerate(self.basis):
                wv = compose(w, v)
                if length(wv) == length(w) + length(v):
                    src.append(j)
                    dst.append(self.index[(wv, b)])
            psi_maps[w] = (np.array(src, dtype=np.int64), np.array(dst, dtype=np.int64))
        return biggest, fast, psi_maps

    def mul_int(self, xv: np.ndarray, zv: np.ndarray) -> np.ndarray:
        """Product of two integer coordinate vectors (object or int64 arrays)."""
        biggest, fast, psi_maps = self._engine
        d = self.dimension
        xnorm = int(np.abs(xv).sum()) if d else 0
        znorm = int(np.abs(zv).sum()) if d else 0
        use_fast = fast is not None and biggest * xnorm * znorm < _INT64_SAFE
        if use_fast:
            z = zv.astype(np.int64)
            out = np.zeros(d, dtype=np.int64)
            mats = fast
        else:
            z = zv.astype(object)
            out = np.zeros(d, dtype=object)
            mats = self._monomial_matrices
        ne = len(self.exps)
        nz = np.nonzero(xv)[0]
        by_exp: dict[int, list[int]] = defaultdict(list)
        for i in nz:
            by_exp[int(i) % ne].append(int(i))
        for ai, idxs in by_exp.items():
            v = mats[self.exps[ai]].dot(z)
            for i in idxs:
                src, dst = psi_maps[self.basis[i][0]]
                coef = int(xv[i]) if use_fast else xv[i]
                out[dst] += coef * v[src]
        return out

    def mul(self, x: "CycElement", z: "CycElement") -> "CycElement":
        if x.ctx is not self or z.ctx is not self:
            raise ContextMismatch("elements from different contexts")
        if not x.coeffs or not z.coeffs:
            return self.zero()
        xv, dx = x.int_vector()
        zv, dz = z.int_vector()
        out = self.mul_int(xv, zv)
        den = dx * dz
        return CycElement(self, {int(i): Fraction(int(out[i]), den) for i in np.nonzero(out)[0]})

    def mul_via_affine(self, x: "CycElement", z: "CycElement") -> "CycElement":
        """Reference product: straighten the lifts, then reduce."""
        return self.reduce(affine.mul_affine(self.lift(x), self.lift(z)))

    # -- ideals -----------------------------------------------------------

    @cached_property
    def _left_y_ideal(self) -> EchelonBasis:
        basis = EchelonBasis(self.dimension)
        for m in self._y_matrices:
            for j in range(self.dimension):
                col = {i: Fraction(int(m[i, j])) for i in np.nonzero(m[:, j])[0]}
                basis.add(col)
        return basis

    @cached_property
    def _right_y_ideal(self) -> EchelonBasis:
        basis = EchelonBasis(self.dimension)
        for s in range(1, self.n + 1):
            ys = self.y(s)
            for j in range(self.dimension):
                basis.add(dict((self.basis_element(j) * ys).coeffs))
        return basis

    def in_left_y_ideal(self, x: "CycElement") -> bool:
        """Membership in ``sum_i y_i H``."""
        return self._left_y_ideal.contains(dict(x.coeffs))

    def in_right_y_ideal(self, x: "CycElement") -> bool:
        """Membership in ``sum_i H y_i``."""
        return self._right_y_ideal.contains(dict(x.coeffs))

    # -- misc -------------------------------------------------------------

    def longest(self) -> Permutation:
        return longest_element(self.n)

    def basis_by_degree(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = defaultdict(list)
        for i, deg in enumerate(self.degrees):
            out[deg].append(i)
        return dict(sorted(out.items()))

    def embedding_index(self, sub: "CycContext") -> list[int]:
        """Index in this context of each basis element of ``H(ell, n-k)``."""
        pad = self.n - sub.n
        out = []
        for w, a in sub.basis:
            out.append(self.index[(Permutation(tuple(w) + tuple(range(sub.n + 1, self.n + 1))),
                                   tuple(a) + (0,) * pad)])
        return out

    def embed(self, x: "CycElement") -> "CycElement":
        """Image of an element of ``H(ell, m)`` (``m <= n``) under the same-name map."""
        idx = self.embedding_index(x.ctx)
        return CycElement(self, {idx[i]: c for i, c in x.coeffs.items()})


_CONTEXTS: dict[tuple[int, int], CycContext] = {}
_CONTEXTS_LOCK = threading.Lock()


def get_context(ell: int, n: int) -> CycContext:
    """Shared context per ``(ell, n)``."""
    with _CONTEXTS_LOCK:
        ctx = _CONTEXTS.get((ell, n))
        if ctx is None:
            ctx = _CONTEXTS[(ell, n)] = CycContext(ell, n)
        return ctx


class CycElement:
    """Element of ``H(ell, n)``: ``{basis index: Fraction}``; treat as immutable."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: CycContext, coeffs: Mapping[int, object]):
        self.ctx = ctx
        self.coeffs = {i: to_fraction(c) for i, c in coeffs.items() if c}

    def _same(self, other: "CycElement"):
        if other.ctx is not self.ctx:
            if (other.ctx.ell, other.ctx.n) != (self.ctx.ell, self.ctx.n):
                raise ContextMismatch(f"{self.ctx} vs {other.ctx}")

    def __add__(self, other):
        if not isinstance(other, CycElement):
            other = self.ctx.one() * other
        self._same(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return CycElement(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return CycElement(self.ctx, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, CycElement):
            self._same(other)
            return self.ctx.mul(self, other if other.ctx is self.ctx else CycElement(self.ctx, other.coeffs))
        c = to_fraction(other)
        return CycElement(self.ctx, {k: c * v for k, v in self.coeffs.items()})

    def __rmul__(self, other):
        c = to_fraction(other)
        return CycElement(self.ctx, {k: c * v for k, v in self.coeffs.items()})

    def __pow__(self, k: int):
        out = self.ctx.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, CycElement):
            return (self.ctx.ell, self.ctx.n) == (other.ctx.ell, other.ctx.n) and self.coeffs == other.coeffs
        if other == 0:
            return not self.coeffs
        if isinstance(other, (int, Fraction)):
            return self == self.ctx.one() * other
        return NotImplemented

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return repr(self.ctx.lift(self))

    def terms(self) -> dict:
        return {self.ctx.basis[i]: c for i, c in sorted(self.coeffs.items())}

    def coords(self) -> list[Fraction]:
        out = [Fraction(0)] * self.ctx.dimension
        for i, c in self.coeffs.items():
            out[i] = c
        return out

    def int_vector(self) -> tuple[np.ndarray, int]:
        """``(v, den)`` with integer ``v`` and ``self == v / den``."""
        den = lcm(*(c.denominator for c in self.coeffs.values())) if self.coeffs else 1
        v = np.zeros(self.ctx.dimension, dtype=object)
        for i, c in self.coeffs.items():
            v[i] = c.numerator * (den // c.denominator)
        return v, den

    def degree_split(self) -> dict[int, "CycElement"]:
        parts: dict[int, dict] = defaultdict(dict)
        for i, c in self.coeffs.items():
            parts[self.ctx.degrees[i]][i] = c
        return {d: CycElement(self.ctx, t) for d, t in sorted(parts.items())}

    def degree(self) -> int | None:
        """The degree when nonzero and homogeneous, else None."""
        degs = {self.ctx.degrees[i] for i in self.coeffs}
        return degs.pop() if len(degs) == 1 else None

    def star(self) -> "CycElement":
        return self.ctx.reduce(affine.star(self.ctx.lift(self)))

    def to_json(self) -> dict:
        data = affine.to_json(self.ctx.lift(self))
        return {"ell": self.ctx.ell, **data}


def from_json(data: Mapping, ctx: CycContext | None = None) -> CycElement:
    x = affine.from_json(data)
    if ctx is None:
        ctx = get_context(int(data["ell"]), x.n)
    elif "ell" in data and int(data["ell"]) != ctx.ell:
        raise ContextMismatch(f"element for ell={data['ell']} in {ctx}")
    return ctx.reduce(x)
