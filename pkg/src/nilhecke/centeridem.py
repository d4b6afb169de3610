"""
Center, idempotents and the matrix-algebra structure of ``H(ell, n)``.

The center has basis ``z_mu`` (monomial symmetric polynomials with exponent
tuple ``e_i = ell - k_i - (n - i)``).  The matrix units ``f_{w_i, w_j}`` are
built inductively from the sandwich elements ``F'``; together they give
``H(ell, n) = M_{n!}(Z)``.

>>> from .cyclotomic import get_context
>>> ctx = get_context(3, 2)
>>> z_mu(ctx, (1, 3))
y^(0, 1) + y^(1, 0)
>>> f_units(ctx).verify()
True
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping

from .cellular import (
    CellIndex, LaurentPoly, Theta, cellular, lam_min, p0_enumerate, y_lambda,
)
from .cyclotomic import ContextMismatch, CycContext, CycElement
from .exactlinalg import EchelonBasis, NoSolution, NotUnique, kernel_basis
from .symgroup import (
    Permutation, compose, distinct_rearrangements, identity, inverse, longest_element,
    wf_enumeration,
)

__all__ = [
    "VerificationFailure", "NotFound", "CenterElement", "MatrixUnitFamily",
    "z_mu", "z_exponents", "z_degree", "center_basis", "center_coords",
    "centralizer_oracle", "center_degree_multiplicities", "staircase", "b_mu",
    "F_ell_eq_n", "F_prime", "f_units", "c_mu", "eta", "eta_inverse", "sign_w0",
    "graded_span_dimension", "f11_H", "f11_H_f11", "free_module_basis",
    "is_free_module_basis",
]


class VerificationFailure(AssertionError):
    pass


class NotFound(ArithmeticError):
    pass


def sign_w0(n: int) -> int:
    return -1 if (n * (n - 1) // 2) % 2 else 1


def staircase(ctx: CycContext) -> CycElement:
    """``y_1^{n-1} y_2^{n-2} ... y_{n-1}``."""
    return ctx.monomial(tuple(ctx.n - i for i in range(1, ctx.n + 1)))


# -- the center --------------------------------------------------------------

def z_exponents(ctx: CycContext, mu: Theta) -> tuple[int, ...]:
    n = ctx.n
    return tuple(ctx.ell - k - (n - i) for i, k in enumerate(mu, 1))


def z_degree(ctx: CycContext, mu: Theta) -> int:
    return 2 * sum(z_exponents(ctx, mu))


def z_mu(ctx: CycContext, mu: Theta) -> CycElement:
    terms = {(identity(ctx.n), e): 1 for e in distinct_rearrangements(z_exponents(ctx, mu))}
    return ctx.element(terms)


@dataclass(frozen=True)
class CenterElement:
    """A central element stored by its coordinates in the ``z_mu`` basis."""

    ctx: CycContext = field(repr=False, compare=False)
    coords: Mapping[Theta, Fraction]

    @property
    def element(self) -> CycElement:
        out = self.ctx.zero()
        for mu, c in self.coords.items():
            out = out + _center(self.ctx).z[mu] * c
        return out

    def __mul__(self, other: "CenterElement") -> "CenterElement":
        return center_coords(self.element * other.element)

    def __eq__(self, other):
        if not isinstance(other, CenterElement):
            return NotImplemented
        return {k: v for k, v in self.coords.items() if v} == {k: v for k, v in other.coords.items() if v}

    def __hash__(self):
        return hash(tuple(sorted((k, v) for k, v in self.coords.items() if v)))


class _Center:
    def __init__(self, ctx: CycContext):
        self.ctx = ctx
        self.order = p0_enumerate(ctx)
        self.z = {mu: z_mu(ctx, mu) for mu in self.order}
        self.span = EchelonBasis(ctx.dimension, track=True)
        for mu in self.order:
            if not self.span.add(dict(self.z[mu].coeffs)):
                raise VerificationFailure(f"z_{mu} is dependent on the earlier z's")


_CENTERS: dict = {}
_LOCK = threading.Lock()


def _center(ctx: CycContext) -> _Center:
    with _LOCK:
        c = _CENTERS.get((ctx.ell, ctx.n))
        if c is None or c.ctx is not ctx:
            c = _CENTERS[(ctx.ell, ctx.n)] = _Center(ctx)
        return c


def center_basis(ctx: CycContext) -> list[CenterElement]:
    return [CenterElement(ctx, {mu: Fraction(1)}) for mu in p0_enumerate(ctx)]


def center_coords(x: CycElement) -> CenterElement:
    """Coordinates of a central element; raises NoSolution otherwise."""
    c = _center(x.ctx)
    coeffs = c.span.coefficients(dict(x.coeffs))
    if coeffs is None:
        raise NoSolution("element is not in the span of the z_mu")
    return CenterElement(x.ctx, {c.order[i]: v for i, v in sorted(coeffs.items())})


def center_degree_multiplicities(ctx: CycContext) -> dict[int, int]:
    """How many ``z_mu`` sit in each degree."""
    out: dict[int, int] = {}
    for mu in p0_enumerate(ctx):
        d = z_degree(ctx, mu)
        out[d] = out.get(d, 0) + 1
    return dict(sorted(out.items()))


def centralizer_oracle(ctx: CycContext) -> tuple[int, list[CycElement]]:
    """Brute-force ``{x : xg = gx for every generator g}``, one degree at a time."""
    gens = ctx.generators()
    basis = []
    for d, idxs in ctx.basis_by_degree().items():
        # column j of the stacked commutator matrix is [b_j, g] for all g
        cols = []
        for i in idxs:
            b = ctx.basis_element(i)
            col: dict[int, Fraction] = {}
            for gi, g in enumerate(gens):
                comm = b * g - g * b
                for k, v in comm.coeffs.items():
                    col[gi * ctx.dimension + k] = v
            cols.append(col)
        rows: dict[int, list] = {}
        for j, col in enumerate(cols):
            for k, v in col.items():
                rows.setdefault(k, [Fraction(0)] * len(idxs))[j] = v
        for v in kernel_basis(list(rows.values()), ncols=len(idxs)):
            basis.append(CycElement(ctx, {idxs[j]: c for j, c in enumerate(v) if c}))
    return len(basis), basis


# -- idempotents -------------------------------------------------------------

def b_mu(ctx: CycContext, mu: Theta) -> CycElement:
    w0 = ctx.psi_w(longest_element(ctx.n))
    return w0 * y_lambda(ctx, mu) * w0 * staircase(ctx)


def F_ell_eq_n(ctx: CycContext, z1: Permutation, z2: Permutation) -> CycElement:
    """``(-1)^{n(n-1)/2}`` times the ``lam_min`` cell element at ``(w_0 z1, z2)``."""
    if ctx.ell != ctx.n:
        raise ContextMismatch(f"F family needs ell == n, got {ctx}")
    idx = CellIndex(lam_min(ctx), compose(longest_element(ctx.n), z1), Permutation(tuple(z2)))
    return cellular(ctx).element(idx) * sign_w0(ctx.n)


def F_prime(ctx: CycContext, z1: Permutation, z2: Permutation) -> CycElement:
    return _fprime_parts(ctx)(z1, z2)


def _fprime_parts(ctx: CycContext):
    # the middle factor Y psi_{w0} Y is shared by every F'
    w0 = longest_element(ctx.n)
    stair = staircase(ctx)
    middle = stair * ctx.psi_w(w0) * stair

    def build(z1, z2):
        left = ctx.psi_w(inverse(compose(w0, z1)))
        return left * middle * ctx.psi_w(z2)
    return build


class MatrixUnitFamily:
    """The family ``f_{w_i, w_j}`` over the fixed listing of ``Sym_n``."""

    def __init__(self, ctx: CycContext):
        self.ctx = ctx
        self.perms = wf_enumeration(ctx.n)
        m = len(self.perms)
        build = _fprime_parts(ctx)
        self.fprime = {(i, j): build(self.perms[i], self.perms[j]) for i in range(m) for j in range(m)}
        self.units: dict[tuple[int, int], CycElement] = {}
        acc = ctx.zero()  # sum of f_kk for k < i
        for i in range(m):
            for j in range(m):
                fp = self.fprime[(i, j)]
                self.units[(i, j)] = fp - acc * fp if i else fp
            acc = acc + self.units[(i, i)]

    @property
    def size(self) -> int:
        return len(self.perms)

    def __getitem__(self, key: tuple[int, int]) -> CycElement:
        """Zero-based ``(i, j)``."""
        return self.units[key]

    def failures(self) -> list[str]:
        ctx, m = self.ctx, self.size
        bad = []
        total = ctx.zero()
        for i in range(m):
            total = total + self.units[(i, i)]
        if total != ctx.one():
            bad.append("sum of diagonal units is not 1")
        zero = ctx.zero()
        for (i, j), a in self.units.items():
            for k in range(m):
                for l in range(m):
                    expect = self.units[(i, l)] if j == k else zero
                    if a * self.units[(k, l)] != expect:
                        bad.append(f"f[{i},{j}] f[{k},{l}]")
        return bad

    def verify(self) -> bool:
        return not self.failures()

    def check(self):
        bad = self.failures()
        if bad:
            raise VerificationFailure(f"{len(bad)} matrix-unit relations fail, first: {bad[0]}")

    @cached_property
    def _diag_z_spans(self) -> list[EchelonBasis]:
        order = _center(self.ctx).order
        z = _center(self.ctx).z
        spans = []
        for j in range(self.size):
            eb = EchelonBasis(self.ctx.dimension, track=True)
            for mu in order:
                if not eb.add(dict((self.units[(j, j)] * z[mu]).coeffs)):
                    raise NotUnique(f"Z does not act faithfully on f[{j},{j}]H")
            spans.append(eb)
        return spans


_FAMILIES: dict = {}


def f_units(ctx: CycContext) -> MatrixUnitFamily:
    with _LOCK:
        fam = _FAMILIES.get((ctx.ell, ctx.n))
        if fam is not None and fam.ctx is ctx:
            return fam
    fam = MatrixUnitFamily(ctx)
    with _LOCK:
        return _FAMILIES.setdefault((ctx.ell, ctx.n), fam)


def c_mu(ctx: CycContext, mu: Theta) -> Fraction:
    """The scalar with ``y_mu = c Y z_mu`` modulo cells above ``mu`` (``Y`` the staircase)."""
    cs = cellular(ctx)
    one = identity(ctx.n)
    key = CellIndex(tuple(mu), one, one)
    ym = y_lambda(ctx, mu)
    rhs = staircase(ctx) * z_mu(ctx, mu)
    a = cs.coords(ym).get(key, Fraction(0))
    b = cs.coords(rhs).get(key, Fraction(0))
    if not b or not a:
        raise NotFound(f"no nonzero scalar for {mu}")
    c = a / b
    rest = cs.coords(ym - rhs * c)
    if any(not cs.above(idx.lam, mu) for idx in rest):
        raise NotFound(f"y_mu - c Y z_mu is not above {mu} for any c")
    return c


def eta(ctx: CycContext, matrix: Mapping[tuple[int, int], CenterElement]) -> CycElement:
    """``sum f_{ij} z_{ij}`` (zero-based indices into the fixed listing)."""
    fam = f_units(ctx)
    out = ctx.zero()
    for (i, j), z in matrix.items():
        if z.coords:
            out = out + fam[(i, j)] * z.element
    return out


def eta_inverse(x: CycElement) -> dict[tuple[int, int], CenterElement]:
    """The ``z_{ij}`` with ``x = sum f_{ij} z_{ij}``, from ``f_{ji} x f_{jj} = f_{jj} z_{ij}``."""
    ctx = x.ctx
    fam = f_units(ctx)
    spans = fam._diag_z_spans
    order = _center(ctx).order
    out = {}
    for i in range(fam.size):
        for j in range(fam.size):
            target = fam[(j, i)] * x * fam[(j, j)]
            if not target:
                continue
            coeffs = spans[j].coefficients(dict(target.coeffs))
            if coeffs is None:
                raise NoSolution(f"f[{j},{i}] x f[{j},{j}] is not in f[{j},{j}]Z")
            out[(i, j)] = CenterElement(ctx, {order[k]: v for k, v in sorted(coeffs.items())})
    return out


# -- graded dimensions of the projective ---------------------------------------

def graded_span_dimension(elements) -> "LaurentPoly":
    """``dim_q`` of the span of ``elements`` (split into homogeneous parts)."""
    spans: dict[int, EchelonBasis] = {}
    for x in elements:
        for d, part in x.degree_split().items():
            eb = spans.setdefault(d, EchelonBasis(x.ctx.dimension))
            eb.add(dict(part.coeffs))
    return LaurentPoly({d: len(eb) for d, eb in spans.items()})


def f11_H(ctx: CycContext) -> list[CycElement]:
    f11 = f_units(ctx)[(0, 0)]
    return [f11 * ctx.basis_element(i) for i in range(ctx.dimension)]


def f11_H_f11(ctx: CycContext) -> list[CycElement]:
    f11 = f_units(ctx)[(0, 0)]
    return [x * f11 for x in f11_H(ctx)]


def free_module_basis(ctx: CycContext) -> list[CycElement]:
    """``f_11 z_mu psi_w`` over all ``mu`` and ``w``."""
    f11 = f_units(ctx)[(0, 0)]
    zs = _center(ctx).z
    return [f11 * zs[mu] * ctx.psi_w(w) for mu in p0_enumerate(ctx) for w in wf_enumeration(ctx.n)]


def is_free_module_basis(ctx: CycContext) -> bool:
    """The ``f_11 z_mu psi_w`` are independent and span ``f_11 H``."""
    eb = EchelonBasis(ctx.dimension)
    for x in free_module_basis(ctx):
        if not eb.add(dict(x.coeffs)):
            return False
    return all(eb.contains(dict(x.coeffs)) for x in f11_H(ctx))
