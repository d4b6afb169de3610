"""
Verification suites: one function per family of statements, each returning a
list of failure descriptions (empty means the statement holds).

The CLI ``verify`` command and the acceptance tests both run these.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable

from . import affine
from .cellular import (
    SingularBasis, cellular, graded_cartan, graded_dim_D0, graded_dim_P0, lam_max,
    p0_enumerate, specht_gram,
)
from .centeridem import (
    F_ell_eq_n, NotFound, c_mu, center_degree_multiplicities, centralizer_oracle,
    eta, eta_inverse, f11_H, f11_H_f11, f_units, graded_span_dimension, is_free_module_basis,
    sign_w0, staircase, z_mu,
)
from .cyclotomic import CycContext, complete_homogeneous, get_context
from .exactlinalg import EchelonBasis, LinAlgError, rank
from .symgroup import (
    all_permutations, compose, inverse, is_length_additive, longest_element, wf_enumeration,
)
from .traces import (
    TrHat, Tr_functional, TrSVV, Z0, eps_hat, lambda0, svv_functional, tensor_space,
)

__all__ = ["Suite", "SUITES", "GRID", "N1", "ELL_EQ_N", "run_suite", "random_affine"]

GRID = [(2, 2), (3, 2), (4, 2), (3, 3), (4, 3)]
N1 = [(2, 1), (3, 1)]
ELL_EQ_N = [(2, 2), (3, 3)]


@dataclass
class Suite:
    name: str
    statement: str
    check: Callable[[CycContext], list[str]]
    contexts: list[tuple[int, int]] = field(default_factory=lambda: GRID + N1)
    info: Callable[[CycContext], dict] | None = None


def random_affine(ctx: CycContext, rng: random.Random, max_terms: int = 4):
    n = ctx.n
    perms = all_permutations(n)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        w = rng.choice(perms)
        a = tuple(rng.randint(0, ctx.ell + 1) for _ in range(n))
        terms[(w, a)] = rng.randint(-3, 3)
    return affine.AffineElement(n, terms)


# -- individual suites ---------------------------------------------------------

def check_basis(ctx):
    bad = []
    if ctx.dimension != comb(ctx.ell, ctx.n) * factorial(ctx.n) ** 2:
        bad.append(f"basis has {ctx.dimension} elements")
    try:
        cellular(ctx)._blocks
    except SingularBasis as exc:
        bad.append(f"change of basis singular: {exc}")
    return bad


def check_rewriting(ctx, samples: int = 500, seed: int = 0):
    bad = []
    n, ell = ctx.n, ctx.ell
    for s in range(1, n + 1):
        if ctx.reduce(complete_homogeneous(n, ell - s + 1, s)):
            bad.append(f"h_{ell - s + 1}(y_1..y_{s}) does not vanish")
    for m in range(2, n + 1):
        a = [0] * n
        for i in range(1, m):
            a[i - 1] = ell - i
        a[m - 1] = ell - m + 1
        if ctx.reduce(affine.monomial(a)):
            bad.append(f"staircase {tuple(a)} does not vanish")
    rng = random.Random(seed)
    for _ in range(samples):
        x = ctx.reduce(random_affine(ctx, rng))
        if ctx.reduce(ctx.lift(x)) != x:
            bad.append("reduce is not idempotent")
            break
    return bad


def check_commutator(ctx):
    x = ctx.psi_w(longest_element(ctx.n)) * staircase(ctx) - sign_w0(ctx.n)
    bad = []
    if not ctx.in_left_y_ideal(x):
        bad.append("not in sum y_i H")
    if not ctx.in_right_y_ideal(x):
        bad.append("not in sum H y_i")
    return bad


def check_specht(ctx):
    bad = []
    gram = specht_gram(ctx)
    perms = wf_enumeration(ctx.n)
    w0 = longest_element(ctx.n)
    for i, w in enumerate(perms):
        for j, u in enumerate(perms):
            hit = compose(w, inverse(u)) == w0 and is_length_additive(w, inverse(u))
            want = sign_w0(ctx.n) if hit else 0
            if gram[i][j] != want:
                bad.append(f"gram[{w},{u}] = {gram[i][j]}, expected {want}")
    if rank(gram) != len(perms):
        bad.append("gram matrix is singular")
    if graded_dim_D0(ctx).at_one() != factorial(ctx.n):
        bad.append("dim D_0 != n!")
    return bad


def check_graded(ctx):
    bad = []
    n, ell = ctx.n, ctx.ell
    if graded_dim_D0(ctx).at_one() != factorial(n):
        bad.append("dim D_0 != n!")
    if graded_dim_P0(ctx).at_one() != comb(ell, n) * factorial(n):
        bad.append("dim P_0 != C(ell, n) n!")
    if graded_span_dimension(f11_H_f11(ctx)) != graded_cartan(ctx):
        bad.append("dim_q f11 H f11 differs from the graded Cartan number")
    if graded_span_dimension(f11_H(ctx)).shift(n * (n - 1) // 2) != graded_dim_P0(ctx):
        bad.append("dim_q f11 H shifted by n(n-1)/2 differs from dim_q P_0")
    return bad


def graded_info(ctx):
    return {"shift": ctx.n * (ctx.n - 1) // 2,
            "dim_q_f11H": repr(graded_span_dimension(f11_H(ctx))),
            "dim_q_P0": repr(graded_dim_P0(ctx))}


def check_F_family(ctx):
    perms = wf_enumeration(ctx.n)
    F = {(a, b): F_ell_eq_n(ctx, a, b) for a in perms for b in perms}
    bad = []
    total = ctx.zero()
    for a in perms:
        total = total + F[(a, a)]
    if total != ctx.one():
        bad.append("sum F_ww != 1")
    for (a, b), x in F.items():
        for (c, d), y in F.items():
            want = F[(a, d)] if b == c else ctx.zero()
            if x * y != want:
                bad.append(f"F[{a},{b}] F[{c},{d}]")
    return bad


def check_matrix_units(ctx):
    bad = f_units(ctx).failures()
    if ctx.ell == ctx.n:
        bad += check_F_family(ctx)
    return bad


def check_center(ctx):
    bad = []
    gens = ctx.generators()
    zs = [z_mu(ctx, mu) for mu in p0_enumerate(ctx)]
    for mu, z in zip(p0_enumerate(ctx), zs):
        if any(z * g != g * z for g in gens):
            bad.append(f"z_{mu} is not central")
    dim, cent = centralizer_oracle(ctx)
    if dim != comb(ctx.ell, ctx.n):
        bad.append(f"centralizer has dimension {dim}")
    a, b = EchelonBasis(ctx.dimension), EchelonBasis(ctx.dimension)
    for z in zs:
        a.add(dict(z.coeffs))
    for x in cent:
        b.add(dict(x.coeffs))
    if not all(a.contains(dict(x.coeffs)) for x in cent) or not all(b.contains(dict(z.coeffs)) for z in zs):
        bad.append("centralizer and span of z_mu differ")
    mult = center_degree_multiplicities(ctx)
    for d, k in mult.items():
        if k != 1:
            bad.append(f"{k} of the z_mu have degree {d}")
    return bad


def check_matrix_iso(ctx, round_trip: bool | None = None):
    bad = []
    if round_trip is None:
        round_trip = (ctx.ell, ctx.n) in {(3, 2), (3, 3)}
    if round_trip:
        for i in range(ctx.dimension):
            x = ctx.basis_element(i)
            try:
                if eta(ctx, eta_inverse(x)) != x:
                    bad.append(f"round trip fails on {ctx.basis[i]}")
            except LinAlgError as exc:
                bad.append(f"eta_inverse fails on {ctx.basis[i]}: {exc}")
    if not is_free_module_basis(ctx):
        bad.append("f11 z_mu psi_w is not a basis of f11 H")
    for mu in p0_enumerate(ctx):
        try:
            if not c_mu(ctx, mu):
                bad.append(f"c_{mu} = 0")
        except NotFound as exc:
            bad.append(str(exc))
    return bad


def _form_value(row, x):
    return sum((row[k] * c for k, c in x.coeffs.items()), Fraction(0))


def check_forms(ctx, symmetry: bool | None = None):
    bad = []
    tr = Tr_functional(ctx)
    basis = [ctx.basis_element(i) for i in range(ctx.dimension)]
    if symmetry is None:
        symmetry = (ctx.ell, ctx.n) in {(2, 2), (3, 2), (3, 3)}
    if symmetry:
        asym = 0
        gram = []
        for a in basis:
            row = []
            for b in basis:
                ab = _form_value(tr, a * b)
                if ab != _form_value(tr, b * a):
                    asym += 1
                row.append(ab)
            gram.append(row)
        if asym:
            bad.append(f"Tr(ab) != Tr(ba) for {asym} ordered basis pairs")
        r = rank(gram)
        if r != ctx.dimension:
            bad.append(f"Tr Gram matrix has rank {r} < {ctx.dimension}")
    k = c_mu(ctx, lam_max(ctx)) * sign_w0(ctx.n)
    off = sum(1 for i, b in enumerate(basis) if TrHat(b) != k * tr[i])
    if off:
        bad.append(f"TrHat != {k} Tr on {off} basis elements")
    return bad


def check_svv(ctx, full: bool | None = None):
    bad = []
    ell, n = ctx.ell, ctx.n
    try:
        for m in range(1, n + 1):
            tensor_space(ell, m).solver
            if m >= 2 and not tensor_space(ell, m).rank_stable():
                bad.append(f"tensor quotient at n={m} is not rank-stable")
    except LinAlgError as exc:
        return [f"decomposition solve failed: {exc}"]
    z = Z0(ctx)
    if eps_hat(z) != Z0(get_context(ell, n - 1)):
        bad.append(f"eps_hat(Z_0) != Z_0 at lambda_0 = {lambda0(ell, n)}")
    if TrSVV(z) != 1:
        bad.append(f"TrSVV(Z_0) = {TrSVV(z)}")
    if full is None:
        full = (ell, n) in {(2, 2), (3, 2), (3, 3)}
    if full:
        tr, sv = Tr_functional(ctx), svv_functional(ctx)
        off = sum(1 for a, b in zip(tr, sv) if a != b)
        if off:
            bad.append(f"TrSVV != Tr on {off} basis elements")
    return bad


SUITES: dict[str, Suite] = {s.name: s for s in [
    Suite("basis", "monomial basis has C(ell,n)(n!)^2 elements; cellular basis is a basis", check_basis),
    Suite("rewriting", "complete homogeneous and staircase vanishing; reduce is idempotent", check_rewriting),
    Suite("commutator", "psi_w0 y_1^(n-1)...y_(n-1) - (-1)^(n(n-1)/2) lies in sum y_i H and sum H y_i", check_commutator,
          [c for c in GRID if c[1] in (2, 3)]),
    Suite("specht", "Gram matrix of the lam_min Specht module is antidiagonal and invertible; dim D_0 = n!", check_specht),
    Suite("graded", "graded dimensions of D_0, P_0 and the graded Cartan number", check_graded, info=graded_info),
    Suite("matrix-units", "F (ell = n) and f are complete families of matrix units", check_matrix_units),
    Suite("center", "z_mu form a basis of the center with one z_mu per degree", check_center),
    Suite("matrix-iso", "H is isomorphic to M_n!(Z); P_0 is free over Z; c_mu exists", check_matrix_iso),
    Suite("forms", "Tr is symmetric and nondegenerate; TrHat = c_max (-1)^(n(n-1)/2) Tr", check_forms),
    Suite("svv", "unique SVV decompositions; eps_hat(Z_0,n) = Z_0,n-1; TrSVV(Z_0) = 1; TrSVV = Tr", check_svv),
]}


def run_suite(name: str, ell: int, n: int) -> dict:
    suite = SUITES[name]
    ctx = get_context(ell, n)
    failures = suite.check(ctx)
    report = {"suite": name, "statement": suite.statement, "ell": ell, "n": n,
              "ok": not failures, "failures": failures}
    if suite.info is not None:
        report["info"] = suite.info(ctx)
    return report
