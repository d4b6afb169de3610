"""
Graded cellular structure of ``H(ell, n)``.

The cell data is indexed by the ``n``-subsets ``theta = (k_1 < ... < k_n)`` of
``{1..ell}`` (one-column multipartitions).  ``lam > mu`` when
``theta(lam) <= theta(mu)`` entrywise and they differ; so ``lam_max`` has
``theta = (1..n)`` and ``lam_min`` has ``theta = (ell-n+1..ell)``.  The
cellular basis is ``psi_{w^-1} y_lam psi_u``.  This dominance order is only
partial; the cell filtration uses the fixed linear extension returned by
:func:`p0_enumerate` (``lam`` is above ``mu`` when it is listed later).

>>> from .cyclotomic import get_context
>>> p0_enumerate(get_context(3, 2))
[(2, 3), (1, 3), (1, 2)]
>>> graded_dim_D0(get_context(2, 2))
q^-1 + q
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Mapping

from .cyclotomic import CycContext, CycElement
from .exactlinalg import LinAlgError, NotUnique, inverse
from .symgroup import (
    Permutation, all_permutations, identity, inverse as perm_inverse, length,
    wf_enumeration,
)

__all__ = [
    "Theta", "CellIndex", "LaurentPoly", "SingularBasis", "CellularStructure",
    "p0_enumerate", "dominates", "lam_max", "lam_min", "y_lambda", "y_lambda_exps",
    "cell_degree", "cell_element", "cellular", "cellular_coords", "truncate_above",
    "tableau_degree", "tableaux", "graded_dim_D0", "graded_dim_P0",
    "graded_decomp", "graded_cartan", "specht_gram",
]

Theta = tuple  # strictly increasing tuple of levels


class SingularBasis(LinAlgError):
    """The cell elements failed to form a basis."""


@dataclass(frozen=True, order=True)
class CellIndex:
    lam: Theta
    w: Permutation
    u: Permutation


class LaurentPoly(dict):
    """Integer Laurent polynomial in ``q`` stored as ``{exponent: coefficient}``."""

    def __init__(self, data: Mapping[int, int] | None = None):
        super().__init__()
        for e, c in (data or {}).items():
            if c:
                self[int(e)] = self.get(int(e), 0) + c
                if not self[int(e)]:
                    del self[int(e)]

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "LaurentPoly":
        return cls({e: c})

    def __add__(self, other):
        out = dict(self)
        for e, c in other.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self.items()})
        out: dict = {}
        for e1, c1 in self.items():
            for e2, c2 in other.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self.items()})

    def at_one(self) -> int:
        return sum(self.values())

    def __repr__(self):
        if not self:
            return "0"
        parts = []
        for e in sorted(self):
            c = self[e]
            mon = "1" if e == 0 else ("q" if e == 1 else f"q^{e}")
            if e == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append("-" + mon)
            else:
                parts.append(f"{c}*{mon}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {str(e): c for e, c in sorted(self.items())}


# -- P_0 combinatorics -------------------------------------------------------

def _check(ctx: CycContext):
    if ctx.is_zero:
        raise ValueError(f"{ctx} is the zero algebra (ell < n)")


def p0_enumerate(ctx: CycContext) -> list[Theta]:
    """All ``theta``, ascending: ``lam_min`` first, ``lam_max`` last.

    A linear extension of the dominance order: larger ``sum(theta)`` comes
    first, ties broken lexicographically.
    """
    _check(ctx)
    thetas = combinations(range(1, ctx.ell + 1), ctx.n)
    return sorted(thetas, key=lambda t: (-sum(t), t))


def dominates(lam: Theta, mu: Theta) -> bool:
    """``lam > mu`` in the (partial) dominance order."""
    return lam != mu and all(a <= b for a, b in zip(lam, mu))


def lam_max(ctx: CycContext) -> Theta:
    return tuple(range(1, ctx.n + 1))


def lam_min(ctx: CycContext) -> Theta:
    return tuple(range(ctx.ell - ctx.n + 1, ctx.ell + 1))


def _validate_theta(ctx: CycContext, lam) -> Theta:
    lam = tuple(int(k) for k in lam)
    if len(lam) != ctx.n or any(a >= b for a, b in zip(lam, lam[1:])) or \
            (lam and (lam[0] < 1 or lam[-1] > ctx.ell)):
        raise ValueError(f"{lam} is not an increasing {ctx.n}-tuple in [1, {ctx.ell}]")
    return lam


def y_lambda_exps(ctx: CycContext, lam: Theta) -> tuple[int, ...]:
    return tuple(ctx.ell - k for k in _validate_theta(ctx, lam))


def y_lambda(ctx: CycContext, lam: Theta) -> CycElement:
    return ctx.monomial(y_lambda_exps(ctx, lam))


def cell_degree(ctx: CycContext, idx: CellIndex) -> int:
    return 2 * ctx.ell * ctx.n - 2 * sum(idx.lam) - 2 * length(idx.w) - 2 * length(idx.u)


def cell_element(ctx: CycContext, idx: CellIndex) -> CycElement:
    """``psi_{w^-1} y_lam psi_u``."""
    return cellular(ctx).element(idx)


# -- tableaux and graded dimensions ------------------------------------------

def tableaux(lam: Theta) -> list[dict[int, int]]:
    """Every bijection ``{k_1..k_n} -> {1..n}``."""
    n = len(lam)
    return [dict(zip(lam, p)) for p in all_permutations(n)]


def tableau_degree(ell: int, lam: Theta, t: Mapping[int, int]) -> int:
    """
    >>> tableau_degree(2, (1, 2), {1: 1, 2: 2})
    1
    >>> tableau_degree(2, (1, 2), {1: 2, 2: 1})
    -1
    """
    members = set(lam)
    if set(t) != members or sorted(t.values()) != list(range(1, len(lam) + 1)):
        raise ValueError("not a tableau of this shape")
    total = 0
    for k in lam:
        for j in range(k + 1, ell + 1):
            if j not in members or t[j] > t[k]:
                total += 1
            else:
                total -= 1
    return total


def graded_dim_D0(ctx: CycContext) -> LaurentPoly:
    _check(ctx)
    lm = lam_min(ctx)
    out = LaurentPoly()
    for t in tableaux(lm):
        out = out + LaurentPoly.monomial(tableau_degree(ctx.ell, lm, t))
    return out


def graded_dim_P0(ctx: CycContext) -> LaurentPoly:
    _check(ctx)
    n, ell = ctx.n, ctx.ell
    d0 = graded_dim_D0(ctx)
    out = LaurentPoly()
    for k in combinations(range(1, ell + 1), n):
        out = out + d0.shift(2 * n * ell - n * (n - 1) - 2 * sum(k))
    return out


def graded_decomp(ctx: CycContext, mu: Theta) -> LaurentPoly:
    """Graded multiplicity ``[S^mu : D_0]``."""
    mu = _validate_theta(ctx, mu)
    n = ctx.n
    return LaurentPoly.monomial(n * ctx.ell - n * (n - 1) // 2 - sum(mu))


def graded_cartan(ctx: CycContext) -> LaurentPoly:
    _check(ctx)
    n, ell = ctx.n, ctx.ell
    out = LaurentPoly()
    for k in combinations(range(1, ell + 1), n):
        out = out + LaurentPoly.monomial(2 * n * ell - n * (n - 1) - 2 * sum(k))
    return out


# -- the cellular basis ------------------------------------------------------

class CellularStructure:
    """Cell elements of one context and the change of basis to monomials."""

    def __init__(self, ctx: CycContext):
        _check(ctx)
        self.ctx = ctx
        self.order = p0_enumerate(ctx)
        self.rank = {lam: i for i, lam in enumerate(self.order)}
        perms = wf_enumeration(ctx.n)
        self.indices = tuple(CellIndex(lam, w, u) for lam in self.order for w in perms for u in perms)
        self.position = {idx: i for i, idx in enumerate(self.indices)}
        self._lock = threading.Lock()

    @cached_property
    def elements(self) -> tuple[CycElement, ...]:
        ctx = self.ctx
        psi = {w: ctx.psi_w(w) for w in wf_enumeration(ctx.n)}
        out = []
        for lam in self.order:
            ylam = y_lambda(ctx, lam)
            right = {u: ylam * psi[u] for u in psi}
            for w in psi:
                left = psi[perm_inverse(w)]
                for u in psi:
                    out.append(left * right[u])
        return tuple(out)

    def element(self, idx: CellIndex) -> CycElement:
        return self.elements[self.position[idx]]

    @cached_property
    def _blocks(self):
        """Per degree: (cell positions, monomial positions, inverse matrix)."""
        ctx = self.ctx
        by_deg: dict[int, list[int]] = {}
        for i, idx in enumerate(self.indices):
            by_deg.setdefault(cell_degree(ctx, idx), []).append(i)
        mono = ctx.basis_by_degree()
        if sorted(by_deg) != sorted(mono) or any(len(by_deg[d]) != len(mono[d]) for d in mono):
            raise SingularBasis("graded dimensions of cellular and monomial bases differ")
        blocks = {}
        for d, cells in by_deg.items():
            cols = mono[d]
            colpos = {c: j for j, c in enumerate(cols)}
            # rows: cell elements expressed in the monomials of this degree
            mat = [[Fraction(0)] * len(cols) for _ in cells]
            for r, i in enumerate(cells):
                x = self.elements[i]
                for k, c in x.coeffs.items():
                    if k not in colpos:
                        raise SingularBasis(f"cell {self.indices[i]} is not homogeneous of degree {d}")
                    mat[r][colpos[k]] = c
            try:
                inv = inverse(mat)
            except NotUnique as exc:
                raise SingularBasis(f"cell elements of degree {d} are dependent") from exc
            blocks[d] = (cells, cols, inv)
        return blocks

    def coords(self, x: CycElement) -> dict[CellIndex, Fraction]:
        """Coordinates of ``x`` in the cellular basis."""
        if x.ctx is not self.ctx and (x.ctx.ell, x.ctx.n) != (self.ctx.ell, self.ctx.n):
            raise ValueError("element from another context")
        out = {}
        blocks = self._blocks
        degrees = self.ctx.degrees
        parts: dict[int, dict[int, Fraction]] = {}
        for k, c in x.coeffs.items():
            parts.setdefault(degrees[k], {})[k] = c
        for d, part in parts.items():
            cells, cols, inv = blocks[d]
            v = [part.get(c, 0) for c in cols]
            # x = v . M^{-1} . (rows of cells): row vector times inverse
            for r, i in enumerate(cells):
                s = sum((v[j] * inv[j][r] for j in range(len(cols)) if v[j]), Fraction(0))
                if s:
                    out[self.indices[i]] = s
        return out

    def from_coords(self, coords: Mapping[CellIndex, object]) -> CycElement:
        out = self.ctx.zero()
        for idx, c in coords.items():
            out = out + self.element(idx) * c
        return out

    def above(self, lam: Theta, mu: Theta) -> bool:
        """``lam`` is listed after ``mu``."""
        return self.rank[tuple(lam)] > self.rank[tuple(mu)]

    def truncate_above(self, x: CycElement, mu: Theta) -> CycElement:
        return self.from_coords({i: c for i, c in self.coords(x).items() if self.above(i.lam, mu)})

    def is_two_sided_ideal(self, mu: Theta, partial: bool = False) -> bool:
        """Check that the span of cells above ``mu`` is closed under the generators.

        With ``partial`` the dominance order is used instead of the listing.
        """
        above = dominates if partial else self.above
        gens = self.ctx.generators()
        for i, idx in enumerate(self.indices):
            if not above(idx.lam, mu):
                continue
            x = self.elements[i]
            for g in gens:
                for prod in (g * x, x * g):
                    if any(not above(j.lam, mu) for j in self.coords(prod)):
                        return False
        return True


_STRUCTS: dict[tuple[int, int], CellularStructure] = {}
_STRUCTS_LOCK = threading.Lock()


def cellular(ctx: CycContext) -> CellularStructure:
    key = (ctx.ell, ctx.n)
    with _STRUCTS_LOCK:
        s = _STRUCTS.get(key)
        if s is None or s.ctx is not ctx:
            s = _STRUCTS[key] = CellularStructure(ctx)
        return s


def cellular_coords(x: CycElement) -> dict[CellIndex, Fraction]:
    return cellular(x.ctx).coords(x)


def truncate_above(x: CycElement, mu: Theta) -> CycElement:
    return cellular(x.ctx).truncate_above(x, tuple(mu))


def specht_gram(ctx: CycContext) -> list[list[Fraction]]:
    """Gram matrix of the ``lam_min`` Specht module, rows and columns in wf order."""
    _check(ctx)
    lm = lam_min(ctx)
    ymin = y_lambda(ctx, lm)
    cs = cellular(ctx)
    one = identity(ctx.n)
    key = CellIndex(lm, one, one)
    perms = wf_enumeration(ctx.n)
    left = {w: ymin * ctx.psi_w(w) for w in perms}
    right = {u: ctx.psi_w(perm_inverse(u)) * ymin for u in perms}
    return [[cs.coords(left[w] * right[u]).get(key, Fraction(0)) for u in perms] for w in perms]
