from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from forge.fixtures import sl2, standard_r
from forge.fixtures import SL2
from forge.tensorspace import (LinearMap, OrderMismatch, Space, SpaceMismatch, Subspace, Tensor, direct_sum,
                               direct_sum_embed, dual, evaluate, extended_pairing, from_skew_components,
                               pushforward, q, sharp, sym_skew_split, transpose21, wedge)

V3 = Space("V", ("a", "b", "c"))
half = Fraction(1, 2)

rat = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def vectors(V, k):
    return st.lists(st.lists(rat, min_size=V.dim, max_size=V.dim), min_size=k, max_size=k) \
        .map(lambda rows: [Tensor.vector(V, r) for r in rows])


def tensors2(V):
    return st.lists(rat, min_size=V.dim ** 2, max_size=V.dim ** 2).map(
        lambda xs: Tensor((V, V), {(i // V.dim, i % V.dim): x for i, x in enumerate(xs)}))


def square_maps(V):
    return st.lists(rat, min_size=V.dim ** 2, max_size=V.dim ** 2).map(
        lambda xs: LinearMap(V, V, [xs[i * V.dim:(i + 1) * V.dim] for i in range(V.dim)]))


def e(V, lab):
    return Tensor.basis(V, V.index(lab))


# -- examples -----------------------------------------------------------------

def test_wedge_examples():
    a, b = e(V3, "a"), e(V3, "b")
    assert wedge(a) == a
    assert wedge(a, a).is_zero()
    assert wedge(a, b) == a.otimes(b) - b.otimes(a)


def test_wedge_space_mismatch():
    W = Space("W", ("p",))
    with pytest.raises(SpaceMismatch):
        wedge(e(V3, "a"), e(W, "p"))


def test_transpose21_examples():
    g = sl2()
    r = standard_r(SL2).tensor
    h, E, f = (g.e(i) for i in range(3))
    assert transpose21(r) == h.otimes(h) / 4 + E.otimes(f)
    x, y = e(V3, "a"), e(V3, "b")
    assert transpose21(x.otimes(y) - y.otimes(x)) == y.otimes(x) - x.otimes(y)
    with pytest.raises(OrderMismatch):
        transpose21(x)


def test_split_sl2():
    g = sl2()
    h, E, f = (g.e(i) for i in range(3))
    Lam, s = sym_skew_split(standard_r(SL2).tensor)
    assert Lam == (f.otimes(E) - E.otimes(f)) / 2
    assert s == h.otimes(h) / 4 + (E.otimes(f) + f.otimes(E)) / 2


def test_sharp_examples():
    x, y = e(V3, "a"), e(V3, "b")
    S = sharp(wedge(x, y))
    Vs = dual(V3)
    assert S(Tensor.basis(Vs, 0)) == y
    assert S(Tensor.basis(Vs, 1)) == -x
    assert sharp(Tensor.zero(V3, 2)).rank() == 0
    g = sl2()
    img = sharp(standard_r(SL2).tensor).image()
    assert img == Subspace.span(g.space, [g.e(0).coords(), g.e(1).coords()])


def test_extended_pairing_examples():
    V2 = Space("U", ("u1", "u2"))
    D = dual(V2)
    assert extended_pairing(wedge(e(V2, "u1"), e(V2, "u2")), wedge(Tensor.basis(D, 0), Tensor.basis(D, 1))) == 1
    assert extended_pairing(wedge(e(V2, "u1"), e(V2, "u2")), wedge(Tensor.basis(D, 0), Tensor.basis(D, 0))) == 0
    g = sl2()
    Gs = dual(g.space)
    hs, es = Tensor.basis(Gs, 0), Tensor.basis(Gs, 1)
    assert extended_pairing(wedge(g.e(0), g.e(1)) / 2, wedge(hs, es)) == half


def test_direct_sum_embed_examples():
    g = sl2()
    r = standard_r(SL2).tensor
    S = direct_sum([g.space, g.space])
    emb = direct_sum_embed(r, 1, S)
    assert all(i < 3 and j < 3 for i, j in emb.entries)
    assert direct_sum_embed(Tensor.zero(g.space, 2), 2, [g.space] * 3).is_zero()
    with pytest.raises(IndexError):
        direct_sum_embed(r, 3, S)


def test_pushforward_trivial():
    A = wedge(e(V3, "a"), e(V3, "c"))
    assert pushforward(LinearMap.identity(V3), A) == A
    assert pushforward(LinearMap.zero(V3, V3), A).is_zero()


def test_q_parsing():
    assert q("3/6") == half and q(2) == 2 and q("-1") == -1
    with pytest.raises(ZeroDivisionError):
        q("1/0")
    with pytest.raises(TypeError):
        q(0.5)


# -- properties ---------------------------------------------------------------

@given(vectors(V3, 3), st.integers(0, 2), st.integers(0, 2))
def test_wedge_alternating(vs, i, j):
    if i == j:
        return
    ws = list(vs)
    ws[i], ws[j] = ws[j], ws[i]
    assert wedge(*ws) == -wedge(*vs)


@given(vectors(V3, 3), rat)
def test_wedge_multilinear(vs, c):
    u, v, w = vs
    assert wedge(u * c + w, v) == wedge(u, v) * c + wedge(w, v)


@given(tensors2(V3))
def test_sharp_duality(r):
    Lam, s = sym_skew_split(r)
    assert sharp(Lam).dual() == -sharp(Lam)
    assert sharp(s).dual() == sharp(s)


@given(tensors2(V3))
def test_lam_sharp_formula(r):
    Lam, _ = sym_skew_split(r)
    D = dual(V3)
    S = sharp(Lam)
    for i in range(3):
        for j in range(3):
            xi, eta = Tensor.basis(D, i), Tensor.basis(D, j)
            lhs = sum(a * b for a, b in zip(S(xi).coords(), eta.coords()))
            assert lhs == extended_pairing(Lam, wedge(xi, eta))


@given(tensors2(V3))
def test_transpose_involution_and_split(r):
    assert transpose21(transpose21(r)) == r
    Lam, s = sym_skew_split(r)
    assert transpose21(Lam) == -Lam and transpose21(s) == s and Lam + s == r


@given(square_maps(V3), square_maps(V3), tensors2(V3))
def test_pushforward_functorial(s, t, A):
    assert pushforward(s @ t, A) == pushforward(s, pushforward(t, A))


@given(st.dictionaries(st.sampled_from([(0, 1), (0, 2), (1, 2)]), rat))
def test_skew_components_roundtrip(comps):
    T = from_skew_components(V3, 2, comps)
    assert T.is_skew()
    assert T.skew_components() == {k: v for k, v in comps.items() if v}


@given(vectors(V3, 2))
def test_dual_basis_wedge_pairs_to_one(vs):
    D = dual(V3)
    u, v = vs
    A = wedge(u, v)
    for i in range(3):
        for j in range(3):
            val = evaluate(A, [Tensor.basis(D, i), Tensor.basis(D, j)])
            assert val == extended_pairing(A, wedge(Tensor.basis(D, i), Tensor.basis(D, j)))
