import pytest

from forge import fixtures as fx
from forge.bialg import Cobracket, check_twist, cyb, k_r_subspace
from forge.double import (CobracketMismatch, NotSubBialgebra, build_double, p_plus_minus, q_map,
                          sub_double_quotient, verify_manin)
from forge.liealg import check_form_invariance, check_jacobi, is_isotropic
from forge.tensorspace import Subspace, Tensor, pushforward, sym_skew_split, transpose21, wedge
from forge.verify import random_skew

import random

R = fx.standard_r(fx.SL2)
G = R.algebra
h, e, f = (G.e(i) for i in range(3))
FIXTURES = {"sl2": R, "sl3": fx.standard_r(fx.SL3), "gl2": fx.standard_r(fx.GL2),
            "axb": fx.axb_r(), "ab2": fx.abelian_r(2)}


@pytest.fixture(scope="module")
def doubles():
    return {k: build_double(rm.cobracket) for k, rm in FIXTURES.items()}


def test_abelian_double():
    A = fx.abelian(2)
    d = build_double(Cobracket.zero(A))
    assert d.total.dim == 4 and not d.total.structure.entries
    assert d.r_d == Tensor((d.space, d.space), {(0, 2): 1, (1, 3): 1})


def test_sl2_and_axb_double(doubles):
    d = doubles["sl2"]
    assert d.total.dim == 6 and cyb(d.total, d.r_d).is_zero()
    dx = doubles["axb"]
    assert dx.total.dim == 4 and check_jacobi(dx.total) == []


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_double_invariants(doubles, name):
    d = doubles[name]
    assert check_jacobi(d.total) == [] and check_form_invariance(d.total) == []
    assert verify_manin(d.total, d.g_sub, d.gstar_sub)
    assert is_isotropic(d.total, d.g_sub) and is_isotropic(d.total, d.gstar_sub)
    assert d.restriction_signs_ok()
    Lam, _ = sym_skew_split(d.r_d)
    assert Lam == d.Lambda


def test_verify_manin_negative_and_twisted(doubles):
    d = doubles["sl2"]
    assert not verify_manin(d.total, d.g_sub, d.g_sub)
    rng = random.Random(11)
    for _ in range(200):
        t = random_skew(G, rng)
        if not t.is_zero() and check_twist(R.cobracket, t):
            break
    else:
        pytest.fail("no twist sampled")
    assert verify_manin(d.total, d.g_sub, k_r_subspace(d, t))


def test_p_plus_minus_sl2(doubles):
    d = doubles["sl2"]
    pm = p_plus_minus(d, R)
    assert pm.homs_ok and pm.tensors_ok
    assert pushforward(pm.p_plus, d.r_d) == R.tensor
    assert pushforward(pm.p_minus, d.r_d) == -transpose21(R.tensor)


def test_p_plus_minus_abelian(doubles):
    d = doubles["ab2"]
    pm = p_plus_minus(d, FIXTURES["ab2"])
    assert pm.p_plus == pm.p_minus
    assert [list(row) for row in pm.p_plus.matrix] == [[1, 0, 0, 0], [0, 1, 0, 0]]


def test_p_plus_minus_mismatch(doubles):
    with pytest.raises(CobracketMismatch):
        p_plus_minus(doubles["sl2"], Tensor.zero(G.space, 2))


def test_q_map_examples():
    qm = q_map(R)
    assert qm.double_f.total.dim == 4 and qm.hom_ok and qm.r_ok
    qa = q_map(fx.abelian_r(2))
    assert qa.double_f.total.dim == 0 and qa.r_ok
    qx = q_map(fx.axb_r())
    X = fx.axb()
    assert pushforward(qx.q, qx.double_f.r_d) == wedge(X.e(0), X.e(1))


def test_sub_double_quotient(doubles):
    d = doubles["sl2"]
    b = Subspace.span(G.space, [h.coords(), e.coords()])
    sq = sub_double_quotient(d, b)
    assert sq.source.dim == 5 and sq.target.total.dim == 4
    assert sq.surjective and sq.hom_ok and sq.bialg_ok
    full = sub_double_quotient(d, Subspace.whole(G.space))
    assert full.target.total.dim == 6 and full.surjective and full.hom_ok and full.bialg_ok
    zero = sub_double_quotient(d, Subspace.zero(G.space))
    assert zero.target.total.dim == 0 and zero.surjective


def test_not_sub_bialgebra(doubles):
    d = doubles["sl2"]
    with pytest.raises(NotSubBialgebra):
        sub_double_quotient(d, Subspace.span(G.space, [e.coords()]))
