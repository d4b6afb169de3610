from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, strategies as st

from nilhecke.cellular import (
    CellIndex, LaurentPoly, cell_degree, cell_element, cellular, cellular_coords, dominates,
    graded_cartan, graded_decomp, graded_dim_D0, graded_dim_P0, lam_max, lam_min, p0_enumerate,
    specht_gram, tableau_degree, tableaux, truncate_above, y_lambda,
)
from nilhecke.checks import GRID
from nilhecke.cyclotomic import get_context
from nilhecke.symgroup import identity, longest_element, wf_enumeration

ALL = GRID + [(2, 1), (3, 1)]


def test_p0_examples():
    assert p0_enumerate(get_context(2, 2)) == [(1, 2)]
    assert p0_enumerate(get_context(3, 2)) == [(2, 3), (1, 3), (1, 2)]
    c = get_context(4, 3)
    assert lam_max(c) == (1, 2, 3) and lam_min(c) == (2, 3, 4)


def test_order_and_listing():
    for ell, n in ALL:
        order = p0_enumerate(get_context(ell, n))
        for i, lam in enumerate(order):
            for j, mu in enumerate(order):
                if dominates(lam, mu):
                    assert i > j
    assert not dominates((1, 4), (2, 3)) and not dominates((2, 3), (1, 4))


def test_y_lambda_examples():
    c = get_context(3, 2)
    assert y_lambda(c, (1, 3)) == c.monomial((2, 0))
    for ell, n in ALL:
        ctx = get_context(ell, n)
        assert y_lambda(ctx, lam_min(ctx)) == ctx.monomial(tuple(n - i for i in range(1, n + 1)))
        assert y_lambda(ctx, lam_max(ctx)) == ctx.monomial(tuple(ell - i for i in range(1, n + 1)))


def test_cell_element_examples():
    c22 = get_context(2, 2)
    one2 = identity(2)
    assert cell_element(c22, CellIndex(lam_min(c22), one2, one2)) == c22.y(1)
    c32 = get_context(3, 2)
    idx = CellIndex(lam_max(c32), longest_element(2), one2)
    assert cell_element(c32, idx) == c32.psi(1) * c32.monomial((2, 1))


@pytest.mark.parametrize("ell,n", ALL)
def test_cell_degrees_and_star(ell, n):
    ctx = get_context(ell, n)
    cs = cellular(ctx)
    for idx in cs.indices:
        x = cs.element(idx)
        assert x.degree() == cell_degree(ctx, idx)
        assert x.star() == cs.element(CellIndex(idx.lam, idx.u, idx.w))


@pytest.mark.parametrize("ell,n", ALL)
def test_graded_dimension_of_algebra(ell, n):
    ctx = get_context(ell, n)
    cells = LaurentPoly()
    for idx in cellular(ctx).indices:
        cells = cells + LaurentPoly.monomial(cell_degree(ctx, idx))
    mono = LaurentPoly()
    for d in ctx.degrees:
        mono = mono + LaurentPoly.monomial(d)
    assert cells == mono


def test_change_of_basis_against_sympy():
    ctx = get_context(3, 2)
    cs = cellular(ctx)
    m = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in cs.elements[i].coords()]
                      for i in range(ctx.dimension)])
    assert m.det() != 0
    x = ctx.psi(1) * ctx.y(2) + ctx.y(1) * 3 - 1
    v = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in x.coords()]])
    sol = v * m.inv()
    coords = cellular_coords(x)
    for i, idx in enumerate(cs.indices):
        assert sol[i] == coords.get(idx, 0)


@pytest.mark.parametrize("ell,n", ALL)
def test_coordinates_round_trip(ell, n):
    ctx = get_context(ell, n)
    cs = cellular(ctx)
    for idx in cs.indices:
        assert cellular_coords(cs.element(idx)) == {idx: 1}
    assert cellular_coords(ctx.zero()) == {}
    assert cs.from_coords(cellular_coords(ctx.one())) == ctx.one()


@pytest.mark.parametrize("ell,n", GRID)
def test_filtration_is_ideal(ell, n):
    ctx = get_context(ell, n)
    cs = cellular(ctx)
    for mu in p0_enumerate(ctx):
        assert cs.is_two_sided_ideal(mu)
        assert cs.is_two_sided_ideal(mu, partial=True)


def test_truncate_examples():
    for ell, n in GRID:
        ctx = get_context(ell, n)
        x = ctx.one() + ctx.y(1)
        assert not truncate_above(x, lam_max(ctx))
        lm = lam_min(ctx)
        w = wf_enumeration(n)[-1]
        assert not truncate_above(cell_element(ctx, CellIndex(lm, w, identity(n))), lm)


@given(st.sampled_from(GRID), st.data())
def test_truncate_is_ideal_projection(ell_n, data):
    ctx = get_context(*ell_n)
    order = p0_enumerate(ctx)
    mu = data.draw(st.sampled_from(order))
    i, j, k = (data.draw(st.integers(0, ctx.dimension - 1)) for _ in range(3))
    x = truncate_above(ctx.basis_element(k), mu)
    prod = ctx.basis_element(i) * x * ctx.basis_element(j)
    assert truncate_above(prod, mu) == prod


def test_tableau_degree_examples():
    assert tableau_degree(2, (1, 2), {1: 1, 2: 2}) == 1
    assert tableau_degree(2, (1, 2), {1: 2, 2: 1}) == -1
    for ell in range(1, 6):
        for k in range(1, ell + 1):
            assert tableau_degree(ell, (k,), {k: 1}) == ell - k
    with pytest.raises(ValueError):
        tableau_degree(3, (1, 2), {1: 1, 3: 2})


def test_graded_dims_examples():
    assert graded_dim_D0(get_context(2, 2)) == LaurentPoly({1: 1, -1: 1})
    assert repr(graded_dim_D0(get_context(2, 2))) == "q^-1 + q"
    for ell, n in ALL:
        ctx = get_context(ell, n)
        assert graded_dim_D0(ctx).at_one() == len(tableaux(lam_min(ctx)))
        assert graded_cartan(ctx).at_one() == len(p0_enumerate(ctx))
        assert graded_dim_P0(ctx).at_one() == len(p0_enumerate(ctx)) * graded_dim_D0(ctx).at_one()


@pytest.mark.parametrize("ell,n", ALL)
def test_graded_decomposition_numbers(ell, n):
    ctx = get_context(ell, n)
    cartan, p0 = LaurentPoly(), LaurentPoly()
    for mu in p0_enumerate(ctx):
        d = graded_decomp(ctx, mu)
        assert len(d) == 1
        cartan = cartan + d * d
        # P_0 has a Specht filtration with graded multiplicities d, and S^mu = D_0 shifted by d
        p0 = p0 + d * d * graded_dim_D0(ctx)
    assert cartan == graded_cartan(ctx)
    assert p0 == graded_dim_P0(ctx)


def test_gram_examples():
    assert specht_gram(get_context(2, 2)) == [[0, -1], [-1, 0]]
    assert specht_gram(get_context(3, 2)) == [[0, -1], [-1, 0]]
    assert specht_gram(get_context(3, 1)) == [[1]]


def test_gram_direct_products():
    # entries read off the lam_min coefficient of y psi_w psi_{u^-1} y directly
    ctx = get_context(3, 3)
    g = specht_gram(ctx)
    lm = lam_min(ctx)
    ymin = y_lambda(ctx, lm)
    cs = cellular(ctx)
    perms = wf_enumeration(3)
    for (i, w), (j, u) in product(enumerate(perms), repeat=2):
        x = ymin * ctx.psi_w(w) * ctx.psi_w(tuple(u.index(k) + 1 for k in range(1, 4))) * ymin
        coeff = {idx: c for idx, c in cs.coords(x).items() if idx.lam == lm}
        assert set(coeff) <= {CellIndex(lm, identity(3), identity(3))}
        assert g[i][j] == coeff.get(CellIndex(lm, identity(3), identity(3)), Fraction(0))
