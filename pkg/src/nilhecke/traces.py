"""
Symmetrizing forms on ``H(ell, n)``.

* :func:`Tr` reads cellular coordinates at ``lam_max``;
* :func:`TrHat` goes through the matrix-algebra isomorphism and the form on
  the center;
* :func:`TrSVV` composes the one-step maps ``eps_hat_n : H(ell, n) ->
  H(ell, n-1)`` down to the ground field.

The one-step map needs ``H(ell, n-1) (x)_{H(ell, n-2)} H(ell, n-1)``; it is
materialized as an explicit quotient of the tensor square by the relations
``a g (x) b - a (x) g b`` with ``g`` running over generators of the smaller
algebra.

>>> from .cyclotomic import get_context
>>> ctx = get_context(3, 2)
>>> Tr(Z0(ctx)), TrSVV(Z0(ctx))
(Fraction(1, 1), Fraction(1, 1))
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .cellular import Theta, cellular, lam_max, p0_enumerate
from .centeridem import (
    CenterElement, _center, center_coords, f_units, z_degree,
)
from .cyclotomic import CycContext, CycElement, get_context
from .exactlinalg import (
    EchelonBasis, NoSolution, NotUnique, SparseRow, inverse as mat_inverse,
)
from .symgroup import compose, inverse, longest_element

__all__ = [
    "ComplementMissing", "NonvanishingFailure", "TensorSpace", "TensorElement",
    "d_lambda", "tr_Z", "zhat", "Tr", "TrHat", "Z0", "lambda0", "tensor_space",
    "decompose_pos", "ztilde_neg", "eps_hat", "eps_hat_matrix", "TrSVV",
    "svv_functional", "Tr_functional",
]


class ComplementMissing(LookupError):
    pass


class NonvanishingFailure(ArithmeticError):
    pass


def d_lambda(ctx: CycContext) -> int:
    return 2 * ctx.ell * ctx.n - 2 * ctx.n ** 2


# -- the form on the center ---------------------------------------------------

def tr_Z(z: CenterElement) -> Fraction:
    return Fraction(z.coords.get(lam_max(z.ctx), 0))


def zhat(ctx: CycContext, lam: Theta) -> CenterElement:
    """First ``z_nu`` of complementary degree with ``tr(z_lam z_nu) != 0``."""
    lam = tuple(lam)
    want = d_lambda(ctx) - z_degree(ctx, lam)
    cands = [nu for nu in p0_enumerate(ctx) if z_degree(ctx, nu) == want]
    if not cands:
        raise ComplementMissing(f"no z of degree {want}")
    zs = _center(ctx).z
    for nu in cands:
        if tr_Z(center_coords(zs[lam] * zs[nu])):
            return CenterElement(ctx, {nu: Fraction(1)})
    raise NonvanishingFailure(f"tr(z_{lam} z_nu) = 0 for every nu of degree {want}")


# -- the cellular form --------------------------------------------------------

def Tr_functional(ctx: CycContext) -> list[Fraction]:
    """``Tr`` as a row vector on the monomial basis."""
    return _tr_row(ctx)


_ROWS: dict = {}
_ROWS_LOCK = threading.Lock()


def _cached(key, build):
    with _ROWS_LOCK:
        hit = _ROWS.get(key)
    if hit is not None and hit[0] is key[1]:
        return hit[1]
    val = build()
    with _ROWS_LOCK:
        _ROWS[key] = (key[1], val)
    return val


def _tr_row(ctx: CycContext) -> list[Fraction]:
    def build():
        cs = cellular(ctx)
        lm = lam_max(ctx)
        w0 = longest_element(ctx.n)
        row = [Fraction(0)] * ctx.dimension
        for i in range(ctx.dimension):
            coords = cs.coords(ctx.basis_element(i))
            row[i] = sum((c for idx, c in coords.items()
                          if idx.lam == lm and compose(idx.w, inverse(idx.u)) == w0), Fraction(0))
        return row
    return _cached(("tr", ctx), build)


def Tr(x: CycElement) -> Fraction:
    cs = cellular(x.ctx)
    lm = lam_max(x.ctx)
    w0 = longest_element(x.ctx.n)
    return sum((c for idx, c in cs.coords(x).items()
                if idx.lam == lm and compose(idx.w, inverse(idx.u)) == w0), Fraction(0))


def TrHat(x: CycElement) -> Fraction:
    """Sum over ``i`` of ``tr(z_ii)`` where ``x = sum f_ij z_ij``."""
    ctx = x.ctx
    fam = f_units(ctx)
    spans = fam._diag_z_spans
    order = _center(ctx).order
    top = order.index(lam_max(ctx))
    total = Fraction(0)
    for i in range(fam.size):
        target = fam[(i, i)] * x * fam[(i, i)]
        if not target:
            continue
        coeffs = spans[i].coefficients(dict(target.coeffs))
        if coeffs is None:
            raise NoSolution(f"f[{i},{i}] x f[{i},{i}] is not in f[{i},{i}]Z")
        total += coeffs.get(top, 0)
    return total


# -- the SVV recursion --------------------------------------------------------

def lambda0(ell: int, n: int) -> int:
    return ell - 2 * (n - 1)


def Z0(ctx: CycContext) -> CycElement:
    """``psi_{w_0} y_1^{ell-1} ... y_n^{ell-n}``."""
    exps = tuple(ctx.ell - i for i in range(1, ctx.n + 1))
    return ctx.monomial(exps, longest_element(ctx.n))


@dataclass(frozen=True)
class TensorElement:
    """Coordinates over the quotient basis of a :class:`TensorSpace`."""

    space: "TensorSpace" = field(repr=False, compare=False)
    coords: dict

    def __bool__(self):
        return bool(self.coords)


class TensorSpace:
    """``H(ell, n-1) (x)_{H(ell, n-2)} H(ell, n-1)`` with the maps into ``H(ell, n)``.

    Raw coordinates are pairs ``(p, q)`` of monomial basis indices flattened
    to ``p * d + q``.  The quotient basis is the set of non-pivot columns of
    the relation space.
    """

    def __init__(self, ell: int, n: int):
        if n < 1:
            raise ValueError("need n >= 1")
        self.ell, self.n = ell, n
        self.top = get_context(ell, n)
        self.sub = get_context(ell, n - 1)
        self.d = self.sub.dimension
        self._relations = self._build_relations(self._generators())
        # for n = 1 there is no psi_{n-1}, so the tensor part is zero
        self.free = [c for c in range(self.d * self.d) if c not in self._relations.pivots] if n >= 2 else []
        self.position = {c: i for i, c in enumerate(self.free)}

    @property
    def dimension(self) -> int:
        return len(self.free)

    def _generators(self) -> list[CycElement]:
        if self.n < 2:
            return []
        small = get_context(self.ell, self.n - 2)
        return [self.sub.embed(g) for g in small.generators()]

    def _raw(self, a: CycElement, b: CycElement) -> SparseRow:
        out: SparseRow = {}
        for p, c1 in a.coeffs.items():
            for q, c2 in b.coeffs.items():
                out[p * self.d + q] = out.get(p * self.d + q, 0) + c1 * c2
        return out

    def _relation(self, p: int, q: int, g: CycElement) -> SparseRow:
        a, b = self.sub.basis_element(p), self.sub.basis_element(q)
        row = self._raw(a * g, b)
        for k, v in self._raw(a, g * b).items():
            row[k] = row.get(k, 0) - v
        return row

    def _build_relations(self, gens) -> EchelonBasis:
        eb = EchelonBasis(self.d * self.d)
        for g in gens:
            for p in range(self.d):
                for q in range(self.d):
                    eb.add(self._relation(p, q, g))
        return eb

    def rank_stable(self) -> bool:
        """Adding relations for products of two generators leaves the quotient unchanged."""
        gens = self._generators()
        pairs = [g * h for g in gens for h in gens]
        for g in pairs:
            for p in range(self.d):
                for q in range(self.d):
                    if not self._relations.contains(self._relation(p, q, g)):
                        return False
        return True

    def project(self, raw: SparseRow) -> TensorElement:
        res = self._relations.residue(raw)
        return TensorElement(self, {self.position[c]: v for c, v in res.items()})

    def pure(self, a: CycElement, b: CycElement) -> TensorElement:
        return self.project(self._raw(a, b))

    def _pair(self, i: int) -> tuple[CycElement, CycElement]:
        p, q = divmod(self.free[i], self.d)
        return self.sub.basis_element(p), self.sub.basis_element(q)

    @cached_property
    def mu_psi_columns(self) -> list[CycElement]:
        """Images ``a psi_{n-1} b`` of the quotient basis."""
        if self.n < 2:
            return []
        psi = self.top.psi(self.n - 1)
        return [self.top.embed(a) * psi * self.top.embed(b) for a, b in map(self._pair, range(self.dimension))]

    def mu_y_columns(self, k: int) -> list[CycElement]:
        """Images ``a y_{n-1}^k b`` (in ``H(ell, n-1)``) of the quotient basis."""
        yk = self.sub.y(self.n - 1) ** k
        return [a * yk * b for a, b in map(self._pair, range(self.dimension))]

    def _apply(self, cols: list[CycElement], t: TensorElement, ctx: CycContext) -> CycElement:
        out = ctx.zero()
        for i, c in t.coords.items():
            out = out + cols[i] * c
        return out

    def mu_psi(self, t: TensorElement) -> CycElement:
        return self._apply(self.mu_psi_columns, t, self.top)

    def mu_y_pow(self, t: TensorElement, k: int) -> CycElement:
        return self._apply(self.mu_y_columns(k), t, self.sub)

    def well_defined(self) -> bool:
        """Both multiplication maps kill every relation."""
        gens = self._generators()
        if not gens or self.n < 2:
            return True
        psi = self.top.psi(self.n - 1)
        y = self.sub.y(self.n - 1)
        for g in gens:
            gt = self.top.embed(g)
            if psi * gt != gt * psi or y * g != g * y:
                return False
        return True

    # -- the one-step map as a matrix ------------------------------------

    @cached_property
    def _stack(self):
        """Columns of the joint linear system (see eps_hat)."""
        top, sub = self.top, self.sub
        lam0 = lambda0(self.ell, self.n)
        rows_top = top.dimension
        cols: list[SparseRow] = []
        if lam0 > 0:
            for x in self.mu_psi_columns:
                cols.append(dict(x.coeffs))
            yn = top.y(self.n) if self.n else None
            for k in range(lam0):
                ynk = yn ** k
                for j in range(sub.dimension):
                    cols.append(dict((top.embed(sub.basis_element(j)) * ynk).coeffs))
            nrows = rows_top
        else:
            ys = [self.mu_y_columns(k) for k in range(-lam0)]
            for i, x in enumerate(self.mu_psi_columns):
                col = dict(x.coeffs)
                for k, block in enumerate(ys):
                    for r, v in block[i].coeffs.items():
                        col[rows_top + k * sub.dimension + r] = v
                cols.append(col)
            nrows = rows_top + (-lam0) * sub.dimension
        return lam0, nrows, cols

    def _solve_columns(self) -> EchelonBasis:
        lam0, nrows, cols = self._stack
        eb = EchelonBasis(nrows, track=True)
        for c in cols:
            if not eb.add(c):
                raise NotUnique(f"decomposition is not unique at (ell, n) = ({self.ell}, {self.n})")
        return eb

    def _labels(self) -> tuple[list[int], list[int]]:
        """A degree label per row and per column; the stacked system is block diagonal in it."""
        lam0, nrows, cols = self._stack
        sd = self.sub.degrees
        col_labels = [sd[p] + sd[q] - 2 for p, q in (divmod(c, self.d) for c in self.free)]
        row_labels = list(self.top.degrees)
        if lam0 > 0:
            col_labels += [sd[j] + 2 * k for k in range(lam0) for j in range(self.sub.dimension)]
        else:
            row_labels += [sd[r] - 2 - 2 * k for k in range(-lam0) for r in range(self.sub.dimension)]
        return row_labels, col_labels

    @cached_property
    def solver(self) -> list[list[Fraction]]:
        """Inverse of the square stacked system; rows index unknowns."""
        lam0, nrows, cols = self._stack
        if len(cols) != nrows:
            self._solve_columns()  # raises NotUnique if dependent
            raise NoSolution(f"stacked system is {nrows} x {len(cols)}: some targets have no solution")
        row_labels, col_labels = self._labels()
        inv = [[Fraction(0)] * nrows for _ in range(nrows)]
        for label in sorted(set(row_labels) | set(col_labels)):
            rs = [r for r, x in enumerate(row_labels) if x == label]
            cs = [j for j, x in enumerate(col_labels) if x == label]
            if len(rs) != len(cs):
                self._solve_columns()
                raise NoSolution(f"degree block {label} is {len(rs)} x {len(cs)}")
            pos = {r: i for i, r in enumerate(rs)}
            block = [[Fraction(0)] * len(cs) for _ in rs]
            for jj, j in enumerate(cs):
                for r, v in cols[j].items():
                    if r not in pos:
                        raise ValueError(f"column {j} is not homogeneous")
                    block[pos[r]][jj] = v
            try:
                binv = mat_inverse(block)
            except NotUnique as exc:
                raise NotUnique(f"decomposition is not unique at (ell, n) = ({self.ell}, {self.n})") from exc
            for jj, j in enumerate(cs):
                for ii, r in enumerate(rs):
                    inv[j][r] = binv[jj][ii]
        return inv

    def solve(self, z: CycElement) -> list[Fraction]:
        """Unknown vector: tensor coordinates, then (if ``lam0 > 0``) ``p_0, p_1, ...``."""
        inv = self.solver
        v = z.coeffs
        return [sum((row[k] * c for k, c in v.items()), Fraction(0)) for row in inv]

    @cached_property
    def eps_matrix(self) -> list[list[Fraction]]:
        """``eps_hat_n`` as a ``dim H(n-1) x dim H(n)`` matrix."""
        lam0, nrows, _ = self._stack
        inv = self.solver
        q, ds = self.dimension, self.sub.dimension
        if lam0 > 0:
            start = q + (lam0 - 1) * ds
            return [list(inv[start + r]) for r in range(ds)]
        # compose mu_{y^{-lam0}} with the tensor part of the solution
        cols = self.mu_y_columns(-lam0)
        out = [[Fraction(0)] * self.top.dimension for _ in range(ds)]
        for i, x in enumerate(cols):
            for r, v in x.coeffs.items():
                row = inv[i][: self.top.dimension]
                target = out[r]
                for k, a in enumerate(row):
                    if a:
                        target[k] += v * a
        return out


_SPACES: dict = {}
_SPACES_LOCK = threading.Lock()


def tensor_space(ell: int, n: int) -> TensorSpace:
    with _SPACES_LOCK:
        sp = _SPACES.get((ell, n))
    if sp is None or sp.top is not get_context(ell, n):
        sp = TensorSpace(ell, n)
        with _SPACES_LOCK:
            _SPACES[(ell, n)] = sp
    return sp


def decompose_pos(z: CycElement) -> tuple[TensorElement, list[CycElement]]:
    """``z = mu_psi(t) + sum_k p_k y_n^k`` for ``lam0 > 0`` (``t`` only when ``lam0 = 0``)."""
    ctx = z.ctx
    lam0 = lambda0(ctx.ell, ctx.n)
    if lam0 < 0:
        raise ValueError(f"lambda_0 = {lam0} < 0; use ztilde_neg")
    sp = tensor_space(ctx.ell, ctx.n)
    if lam0 == 0:
        return ztilde_neg(z), []
    sol = sp.solve(z)
    q, ds = sp.dimension, sp.sub.dimension
    t = TensorElement(sp, {i: c for i, c in enumerate(sol[:q]) if c})
    ps = [sp.sub.from_vector(sol[q + k * ds: q + (k + 1) * ds]) for k in range(lam0)]
    return t, ps


def ztilde_neg(z: CycElement) -> TensorElement:
    """The ``t`` with ``mu_psi(t) = z`` and ``mu_{y^k}(t) = 0`` for ``0 <= k < -lam0``."""
    ctx = z.ctx
    lam0 = lambda0(ctx.ell, ctx.n)
    if lam0 > 0:
        raise ValueError(f"lambda_0 = {lam0} > 0; use decompose_pos")
    sp = tensor_space(ctx.ell, ctx.n)
    sol = sp.solve(z)
    return TensorElement(sp, {i: c for i, c in enumerate(sol) if c})


def eps_hat_matrix(ell: int, n: int) -> list[list[Fraction]]:
    return tensor_space(ell, n).eps_matrix


def eps_hat(z: CycElement) -> CycElement:
    """``eps_hat_n(z)`` in ``H(ell, n-1)``."""
    sp = tensor_space(z.ctx.ell, z.ctx.n)
    m = sp.eps_matrix
    return sp.sub.from_vector([sum((row[k] * c for k, c in z.coeffs.items()), Fraction(0)) for row in m])


def svv_functional(ctx: CycContext) -> list[Fraction]:
    """``eps_1 o ... o eps_n`` as a row vector on the monomial basis."""
    def build():
        row = [Fraction(1)]  # the identity functional on H(ell, 0) = K
        for m in range(1, ctx.n + 1):
            mat = eps_hat_matrix(ctx.ell, m)
            width = len(mat[0]) if mat else get_context(ctx.ell, m).dimension
            row = [sum((row[r] * mat[r][k] for r in range(len(row)) if row[r]), Fraction(0))
                   for k in range(width)]
        return row
    return _cached(("svv", ctx), build)


def TrSVV(x: CycElement) -> Fraction:
    row = svv_functional(x.ctx)
    return sum((row[k] * c for k, c in x.coeffs.items()), Fraction(0))
