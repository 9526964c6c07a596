import itertools
from fractions import Fraction

import pytest

from forge import fixtures as fx
from forge.bialg import Cobracket, cyb, is_quasitriangular, project_pJ
from forge.double import build_double, verify_manin
from forge.liealg import direct_product
from forge.polyuble import (J_map, J_maps, build_polyuble, double_uble_r, dual_bracket_rn, identifications,
                            mix_n, perm_map, phi_mk, phi_mk_verified, power_lie, r_angle, r_eps_tau, r_n,
                            r_power, step_by_step_identity, t_element, t_mixed_twist_report, uble_mixed_1,
                            xi_eta_forms, zetaj_matches_dual)
from forge.tensorspace import (LinearMap, Tensor, block_tuple, direct_sum_embed, dual, power, pushforward,
                               sym_skew_split, transpose21, wedge)

R = fx.standard_r(fx.SL2)
G = R.algebra
DBL = build_double(R.cobracket)
FIX = {"sl2": R, "axb": fx.axb_r(), "gl2": fx.standard_r(fx.GL2), "ab2": fx.abelian_r(2)}


def blocks(V, n, js, A):
    """(A placed at block pair js) on V^n."""
    S = power(V, n)
    return direct_sum_embed(A, js, S)


# -- splittings -----------------------------------------------------------------

def test_polyuble_n1_is_double():
    spl = build_polyuble(DBL, 1)
    assert spl.ambient.dim == 6 and spl.manin_ok()
    assert spl.g_n.rows == DBL.g_sub.rows and spl.g_n_star.rows == DBL.gstar_sub.rows


def test_polyuble_n2_diagonal():
    spl = build_polyuble(DBL, 2)
    assert spl.ambient.dim == 12 and spl.g_n.dim == 6 and spl.manin_ok()
    diag = [[c for _ in range(2) for c in Tensor.basis(DBL.space, i).coords()] for i in range(6)]
    from forge.tensorspace import Subspace
    assert spl.g_n == Subspace.span(spl.ambient.space, diag)


def test_polyuble_n3_axb_dims():
    spl = build_polyuble(build_double(fx.axb_r().cobracket), 3)
    assert (spl.g_n.dim, spl.g_n_star.dim, spl.ambient.dim) == (6, 6, 12) and spl.manin_ok()


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_polyuble_lagrangian_sl2(N):
    assert build_polyuble(DBL, N).manin_ok()


# -- t_{n+1} --------------------------------------------------------------------

def test_t2_abelian_structure():
    d = build_double(Cobracket.zero(fx.abelian(2)))
    t2 = t_element(d, 2)
    assert len(t2.skew_components()) == 2
    S = t2.space
    for (a, b) in t2.skew_components():
        assert (a < 4) != (b < 4)


def test_t2_formula():
    t2 = t_element(DBL, 2)
    S = power(DBL.space, 2)
    want = Tensor.zero(S, 2)
    for i in range(3):
        want = want + wedge(Tensor.basis(S, 3 + i), Tensor.basis(S, 6 + i))
    assert t2 == want


@pytest.mark.parametrize("n", [1, 2])
def test_t_mixed_under_all_identifications(n):
    rep = t_mixed_twist_report(DBL, n)
    assert len(rep) == 4 and all(rep.values())


def test_uble_mixed_1():
    assert uble_mixed_1(DBL, 2)


@pytest.mark.parametrize("n", [1, 2])
def test_double_uble_r(n):
    assert double_uble_r(DBL, n + 1)


def test_identifications_are_named_maps():
    ids = identifications(DBL, 1)
    assert [i.name for i in ids] == ["g_(2n+2)", "g*_(2n)", "g_(2n+1)", "g*_(2n+1)"]


# -- r^(n) ----------------------------------------------------------------------

def test_r1_is_r():
    assert r_n(R, 1).entries == R.tensor.entries


def test_r2_sl2_explicit():
    h, e, f = (G.e(i) for i in range(3))
    S = power(G.space, 2)
    one = lambda v: direct_sum_embed(v, 1, S)
    two = lambda v: direct_sum_embed(v, 2, S)
    want = direct_sum_embed(R.tensor, 1, S) + direct_sum_embed(-transpose21(R.tensor), 2, S) \
        - (wedge(one(h), two(h)) / 4 + wedge(one(e), two(f)))
    assert r_n(R, 2) == want


@pytest.mark.parametrize("name", sorted(FIX))
@pytest.mark.parametrize("n", [2, 3, 4])
def test_cyb_rn_all_fixtures(name, n):
    rm = FIX[name]
    assert cyb(power_lie(rm.algebra, n), r_n(rm, n)).is_zero()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_rn_symmetric_part_alternates(n):
    _, s = sym_skew_split(r_n(R, n))
    S = power(G.space, n)
    assert s == block_tuple([R.s * (-1) ** j for j in range(n)], S)


def test_mix_blocks_skew():
    P = r_power(R, 3)
    for j, k in itertools.combinations(range(1, 4), 2):
        assert P.block(j, k).is_skew()
    assert P.tensor == P.alt - P.mix


# -- eq-zetaj ---------------------------------------------------------------------

def test_zetaj_n1_is_xi_eta():
    gs = dual(G.space)
    gd, _ = __import__("forge.bialg", fromlist=["dual_bialgebra"]).dual_bialgebra(R.cobracket)
    for a, b in itertools.product(range(3), repeat=2):
        xi, eta = Tensor.basis(gs, a), Tensor.basis(gs, b)
        z = dual_bracket_rn(R, 1, [xi], [eta])[0]
        f1, f2 = xi_eta_forms(R, xi, eta)
        assert z == f1 == f2


def test_zetaj_n2_cross_terms_only():
    gs = dual(G.space)
    zero = Tensor.zero(gs, 1)
    for a, b in itertools.product(range(3), repeat=2):
        xi, eta = Tensor.basis(gs, a), Tensor.basis(gs, b)
        z1, z2 = dual_bracket_rn(R, 2, [xi, zero], [zero, eta])
        assert z1 == -G.coad(R.r_plus(eta))(xi)
        assert z2 == G.coad(R.r_minus(xi))(eta)
        assert all(z.is_zero() for z in dual_bracket_rn(R, 2, [xi, eta], [xi, eta]))


@pytest.mark.parametrize("name", ["sl2", "axb", "gl2"])
def test_zetaj_two_oracles(name):
    for n in (1, 2, 3):
        assert zetaj_matches_dual(FIX[name], n)


# -- phi_{m,k} --------------------------------------------------------------------

def test_phi_identity_and_example():
    assert phi_mk(R, 3, 2, 3) == LinearMap.identity(power(G.space, 3))
    phi = phi_mk(R, 2, 1, 3)
    x = Tensor.vector(power(G.space, 2), [1, 2, 3, 4, 5, 6])
    assert phi(x).coords() == [1, 2, 3, 1, 2, 3, 4, 5, 6]
    assert phi_mk_verified(R, 2, 1, 3)
    with pytest.raises(IndexError):
        phi_mk(R, 3, 1, 2)


@pytest.mark.parametrize("name", ["axb", "gl2"])
def test_phi_other_fixtures(name):
    rm = FIX[name]
    assert all(phi_mk_verified(rm, m, k, 3) for m in range(1, 4) for k in range(1, m + 1))


# -- r_(eps, tau) -----------------------------------------------------------------

def test_r_eps_tau_recovers_rn():
    assert r_eps_tau(R, (1, -1, 1), (1, 2, 3), 3) == r_n(R, 3)
    assert r_eps_tau(R, (1, 1, 1), (1, 2, 3), 3) != r_n(R, 3)
    with pytest.raises(ValueError):
        r_eps_tau(R, (1, 0, 1), (1, 2, 3), 3)


def test_phi_tau_fixes_mix_lambda():
    M = mix_n(R.Lambda, 3)
    for tau in itertools.permutations((1, 2, 3)):
        assert pushforward(perm_map(G.space, tau), M) == M


def test_p_J_of_r3():
    p = project_pJ(r_n(R, 3), [1, 3])
    want = r_eps_tau(R, (1, 1), (1, 2), 2)
    assert p.entries == want.entries


@pytest.mark.parametrize("n", [2, 3, 4])
def test_projections_quasitriangular(n):
    rn = r_n(R, n)
    for size in range(1, n + 1):
        for J in itertools.combinations(range(1, n + 1), size):
            p = project_pJ(rn, list(J))
            assert is_quasitriangular(power_lie(G, size), Tensor((power(G.space, size),) * 2, p.entries))


# -- J maps, p_2n -----------------------------------------------------------------

def test_J2_sl2_vs_axb():
    j = J_maps(DBL, R, 2)
    assert j.hom_ok and j.invertible and j.factorizable
    rx = fx.axb_r()
    jx = J_maps(build_double(rx.cobracket), rx, 2)
    assert jx.hom_ok and not jx.invertible and not jx.factorizable


def test_J1_identity_on_g():
    J = J_map(DBL, R, 1)
    for i in range(3):
        assert J(Tensor.basis(power(DBL.space, 1), i)).coords() == G.e(i).coords()


# -- r^<n+1> ----------------------------------------------------------------------

def test_r_angle_n1():
    S = power(G.space, 2)
    want = direct_sum_embed(R.tensor, 1, S) + direct_sum_embed(-R.tensor, 2, S)
    assert r_angle(R, 2).entries == want.entries


@pytest.mark.parametrize("n1", [2, 3, 4])
def test_r_angle_cyb_and_symmetric_part(n1):
    T = r_angle(R, n1)
    assert cyb(power_lie(G, n1), T).is_zero()
    _, s = sym_skew_split(T)
    n = n1 - 1
    signs = [(-1) ** j for j in range(n)] + [(-1) if n % 2 else 1]
    assert s.entries == block_tuple([R.s * c for c in signs], power(G.space, n1)).entries


# -- step-by-step block decomposition ------------------------------------------------

@pytest.mark.parametrize("n", [2, 3, 4])
def test_step_by_step_identity(n):
    for j in range(1, n):
        assert step_by_step_identity(R, n, j)
        assert step_by_step_identity(FIX["axb"], n, j)
