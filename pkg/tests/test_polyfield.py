import itertools

import pytest
from hypothesis import given, settings, strategies as st

from forge import fixtures as fx
from forge.bialg import Cobracket, check_twist, dual_bialgebra
from forge.polyfield import (ChartMismatch, LieAction, NotAnAction, NotTwist, PolyField,
                             apply_action, chart, commutator, fusion, fusion_associative,
                             fusion_square, image_vanishes, is_poisson, mixed_product_2, mixed_product_n,
                             poisson_action_violations, poisson_from_quasi, poisson_from_r,
                             quasi_correspond, replicate, schouten_field, step_by_step, tau_fusion, twist_space)
from forge.polyuble import r_n
from forge.tensorspace import Tensor, wedge

R = fx.standard_r(fx.SL2)
G = R.algebra
MOB = fx.mobius_action(1)
C2 = chart("z1", "z2")
z1, z2 = C2.gens


def mob_pi(act=MOB):
    return poisson_from_r(act, R)


# -- fields -------------------------------------------------------------------------

def test_bracket_with_translation():
    pi = fx.flag_bivector(fx.SL2, 2)
    assert schouten_field(PolyField.vector(C2, [1, 1]), pi) == PolyField(C2, 2, {(0, 1): z1 - z2})


def test_commutator_example():
    X = PolyField.vector(C2, [z1, 0])
    Y = PolyField.vector(C2, [z2 ** 2, z1])
    assert commutator(X, Y) == PolyField.vector(C2, [-z2 ** 2, z1])
    assert schouten_field(X, Y) == commutator(X, Y)


def test_chart_mismatch():
    with pytest.raises(ChartMismatch):
        PolyField.partial(C2, 0) + PolyField.partial(chart("w"), 0)


polys = st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(-3, 3)), max_size=3).map(
    lambda ts: sum((c * z1 ** a * z2 ** b for a, b, c in ts), C2.ring(0)))
C3 = chart("u", "v", "w")
polys3 = st.lists(st.tuples(st.integers(0, 1), st.integers(0, 1), st.integers(0, 1), st.integers(-2, 2)),
                  max_size=2).map(lambda ts: sum((c * C3.gens[0] ** a * C3.gens[1] ** b * C3.gens[2] ** d
                                                  for a, b, d, c in ts), C3.ring(0)))


def fields3(k):
    idx = list(itertools.combinations(range(3), k))
    return st.lists(polys3, min_size=len(idx), max_size=len(idx)).map(
        lambda fs: PolyField(C3, k, dict(zip(idx, fs))))


@given(polys, polys, polys, polys)
def test_commutator_oracle(a, b, c, d):
    X, Y = PolyField.vector(C2, [a, b]), PolyField.vector(C2, [c, d])
    assert schouten_field(X, Y) == commutator(X, Y)
    for f in (z1, z2 ** 2, z1 * z2):
        assert commutator(X, Y)(f) == X(Y(f)) - Y(X(f))


@settings(max_examples=40)
@given(st.integers(1, 2), st.integers(1, 2), st.data())
def test_field_graded_antisymmetry(a, b, data):
    A, B = data.draw(fields3(a)), data.draw(fields3(b))
    assert schouten_field(A, B) == schouten_field(B, A) * (-(-1) ** ((a - 1) * (b - 1)))


@settings(max_examples=30)
@given(st.data())
def test_field_leibniz(data):
    X, B, Cc = data.draw(fields3(1)), data.draw(fields3(1)), data.draw(fields3(1))
    lhs = schouten_field(X, B.wedge(Cc))
    assert lhs == schouten_field(X, B).wedge(Cc) + B.wedge(schouten_field(X, Cc))


# -- actions ------------------------------------------------------------------------

def test_mobius_fields():
    C = MOB.chart
    z = C.gens[0]
    h, e, f = MOB.fields
    assert e == PolyField.partial(C, 0)
    assert h == PolyField.vector(C, [2 * z]) and f == PolyField.vector(C, [-z ** 2])
    assert MOB.violations() == []
    assert image_vanishes(MOB, R.s) and apply_action(MOB, R.Lambda).is_zero()


def test_anti_homomorphism_sign():
    h, e, f = MOB.fields
    assert schouten_field(h, e) == -MOB(G.bracket(G.e(0), G.e(1)))
    with pytest.raises(NotAnAction):
        MOB.with_side("right")


def test_left_right_flip():
    pi = mob_pi()
    rho = -MOB
    assert rho.side == "right" and rho.violations() == []
    # (pi, lambda) left for delta  <=>  (-pi, -lambda) right for delta  <=>  (pi, -lambda) right for -delta
    assert poisson_action_violations(rho, -pi, R.cobracket) == []
    assert poisson_action_violations(rho, pi, -R.cobracket) == []


def test_stabilizers():
    assert fx.stabilizer(MOB, [0]).rows == ((1, 0, 0), (0, 0, 1))
    assert fx.stabilizer(MOB, [1]).rows == ((1, 0, 2), (0, 1, 1))


def test_not_poisson_action_detected():
    bad = PolyField.partial(C2, 0).wedge(PolyField.partial(C2, 1))
    lam = fx.mobius_action(2)
    assert poisson_action_violations(lam, bad, Cobracket.zero(lam.algebra))


# -- flag bivectors ------------------------------------------------------------------

def test_flag_bivector_n2():
    pi = fx.flag_bivector(fx.SL2, 2)
    assert pi == PolyField(pi.chart, 2, {(0, 1): z1 * z2 - z2 ** 2}) and is_poisson(pi)


def test_flag_bivector_n3_pairs():
    pi = fx.flag_bivector(fx.SL2, 3)
    g = pi.chart.gens
    want = {(j, k): g[j] * g[k] - g[k] ** 2 for j, k in itertools.combinations(range(3), 2)}
    assert pi == PolyField(pi.chart, 2, want) and is_poisson(pi)


# -- mixed products -------------------------------------------------------------------

def test_mixed_product_2_translations():
    A = fx.abelian(2)
    cb = Cobracket.zero(A)
    As, cbs = dual_bialgebra(cb)
    W, Y = chart("w1", "w2"), chart("y1", "y2")
    rho = LieAction(As, W, [PolyField.partial(W, i) for i in range(2)], "right")
    lam = LieAction(A, Y, [PolyField.partial(Y, i) for i in range(2)], "left")
    mp = mixed_product_2(PolyField.zero(W, 2), rho, PolyField.zero(Y, 2), lam, delta_g=cb, delta_h=cbs)
    assert mp.ok
    P = mp.chart
    assert mp.pi == -(PolyField.partial(P, 0).wedge(PolyField.partial(P, 2))
                      + PolyField.partial(P, 1).wedge(PolyField.partial(P, 3)))


def test_mixed_product_2_side_check():
    with pytest.raises(ValueError):
        mixed_product_2(mob_pi(), MOB, mob_pi(), MOB, delta_g=R.cobracket)


@pytest.mark.parametrize("n", [2, 3])
def test_mixed_product_n_sl2(n):
    acts = fx.factor_actions(n)
    pis = [poisson_from_r(a, R) for a in acts]
    res = mixed_product_n(pis, acts, R)
    assert res.ok and res.equals_minus_rn
    assert res.pi == -apply_action(res.action, r_n(R, n))


def test_mixed_product_n_axb():
    r = fx.axb_r()
    acts = replicate(fx.axb_coadjoint_action(), 2)
    pis = [poisson_from_r(a, r) for a in acts]
    assert mixed_product_n(pis, acts, r).ok


def test_fusion_and_associativity():
    acts = fx.factor_actions(3)
    pis = [poisson_from_r(a, R) for a in acts]
    fu = fusion(pis, acts, R)
    assert fu.space(R).pi == fu.pi
    assert fusion_associative(pis, acts, R)
    assert fusion(pis[:1], acts[:1], R).pi == pis[0]


@pytest.mark.parametrize("n", [2, 3])
def test_step_by_step_fields(n):
    acts = fx.factor_actions(n)
    pis = [poisson_from_r(a, R) for a in acts]
    assert all(step_by_step(pis, acts, R, j) for j in range(1, n))


def test_tau_fusion_is_poisson():
    acts = fx.factor_actions(3)
    pis = [poisson_from_r(a, R) for a in acts]
    base = fusion(pis, acts, R).pi
    for tau in itertools.permutations((1, 2, 3)):
        fu = tau_fusion(pis, acts, R, tau)
        assert is_poisson(fu.pi)
        if tau == (1, 2, 3):
            assert fu.pi == base


# -- quasi-Poisson ---------------------------------------------------------------------

def test_quasi_roundtrip():
    pi = mob_pi()
    Q = quasi_correspond(pi, MOB, R)
    assert poisson_from_quasi(Q, MOB, R) == pi


@pytest.mark.parametrize("n", [1, 2, 3])
def test_fusion_square_sl2(n):
    acts = fx.factor_actions(n)
    pis = [poisson_from_r(a, R) for a in acts]
    rep = fusion_square(pis, acts, R)
    assert rep.commutes and rep.tensor_identity


def test_fusion_square_axb():
    r = fx.axb_r()
    acts = replicate(fx.axb_coadjoint_action(), 2)
    pis = [poisson_from_r(a, r) for a in acts]
    rep = fusion_square(pis, acts, r)
    assert rep.commutes and rep.tensor_identity


# -- twists ------------------------------------------------------------------------------

def test_twist_space():
    pi = mob_pi()
    assert twist_space(pi, MOB, Tensor.zero(G.space, 2), R.cobracket) == pi
    h, e, f = (G.e(i) for i in range(3))
    t = wedge(h, e)
    assert check_twist(R.cobracket, t)
    new = twist_space(pi, MOB, t, R.cobracket)
    assert new == pi + apply_action(MOB, t)
    with pytest.raises(NotTwist):
        twist_space(pi, MOB, wedge(h, e) + wedge(e, f) * 7, R.cobracket)
