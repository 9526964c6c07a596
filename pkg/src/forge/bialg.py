"""Cobrackets, r-matrices, CYB, r_+-/f_+-, twists and mixed twists."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .liealg import LieAlgebra, check_jacobi, direct_product, is_ideal, schouten
from .tensorspace import (ONE, ZERO, LinearMap, NotSkew, OrderMismatch, Space, Subspace,
                          Tensor, det, direct_sum, direct_sum_embed, dual, evaluate,
                          extended_pairing, inverse, pushforward, sharp, sym_skew_split,
                          transpose21, wedge_product, block_projection, _same)


class NotCoboundarySkew(ValueError):
    pass


class NotLieCobracket(ValueError):
    pass


class NotCocycle(ValueError):
    pass


class NotQuasitriangular(ValueError):
    pass


class NotTwist(ValueError):
    pass


class NotDirectSum(ValueError):
    pass


class DoubleNotBuilt(ValueError):
    pass


class Cobracket:
    """delta: g -> wedge^2 g, stored as delta(e_i) for each basis vector."""

    def __init__(self, algebra: LieAlgebra, values: Sequence[Tensor], check: bool = True):
        self.algebra = algebra
        self.values = tuple(values)
        if len(self.values) != algebra.dim:
            raise ValueError("one cobracket value per basis vector")
        V = algebra.space
        for v in self.values:
            if v.order != 2 or not all(_same(W, V) for W in v.spaces):
                raise OrderMismatch("cobracket values must be order-2 on g")
        if check:
            for i, v in enumerate(self.values):
                if not v.is_skew():
                    raise NotSkew(f"delta({algebra.labels[i]}) is not skew")
            if check_jacobi(_dual_algebra(self, check=False)):
                raise NotLieCobracket("delta^* fails Jacobi on g^*")
            viol = check_cocycle(self)
            if viol:
                raise NotCocycle(f"cocycle condition fails on {algebra.label_triple(viol[0])}")

    @classmethod
    def zero(cls, g: LieAlgebra):
        return cls(g, [Tensor.zero(g.space, 2)] * g.dim)

    def __call__(self, x: Tensor) -> Tensor:
        out = Tensor.zero(self.algebra.space, 2)
        for (i,), c in x.entries.items():
            out = out + self.values[i] * c
        return out

    def on_wedge2(self, t: Tensor) -> Tensor:
        """delta(x ^ y) = delta(x) ^ y - x ^ delta(y), extended linearly."""
        g = self.algebra
        out = Tensor.zero(g.space, 3)
        for (a, b), c in t.skew_components().items():
            ea, eb = g.e(a), g.e(b)
            out = out + (wedge_product(self.values[a], eb) - wedge_product(ea, self.values[b])) * c
        return out

    def __eq__(self, other):
        if not isinstance(other, Cobracket):
            return NotImplemented
        return _same(self.algebra.space, other.algebra.space) and self.values == other.values

    __hash__ = None

    def __neg__(self):
        return Cobracket(self.algebra, [-v for v in self.values], check=False)


def check_cocycle(cb: Cobracket) -> list:
    """Basis pairs violating delta[x,y] = ad_x delta(y) - ad_y delta(x)."""
    g = cb.algebra
    bad = []
    for i, j in itertools.combinations(range(g.dim), 2):
        x, y = g.e(i), g.e(j)
        lhs = cb(g.bracket(x, y))
        rhs = g.ad_tensor(x, cb.values[j]) - g.ad_tensor(y, cb.values[i])
        if lhs != rhs:
            bad.append((i, j))
    return bad


def _dual_algebra(cb: Cobracket, check: bool = True) -> LieAlgebra:
    g = cb.algebra
    Vs = dual(g.space)
    ent = {}
    for k, v in enumerate(cb.values):
        for (a, b), c in v.entries.items():
            ent[(a, b, k)] = c
    return LieAlgebra(Vs, Tensor((Vs,) * 3, ent), check=check)


def dual_bialgebra(cb: Cobracket):
    """(g^*, [,] = delta^*, delta_{g^*} = dual of the bracket of g)."""
    try:
        gs = _dual_algebra(cb)
    except ValueError as exc:
        raise NotLieCobracket(str(exc)) from exc
    g = cb.algebra
    Vs = gs.space
    vals = [dict() for _ in range(g.dim)]
    for (i, j, k), c in g.structure.entries.items():
        vals[k][(i, j)] = c
    dvals = [Tensor((Vs, Vs), v) for v in vals]
    return gs, Cobracket(gs, dvals, check=False)


def cobracket_from_r(g: LieAlgebra, r: Tensor, check: bool = True) -> Cobracket:
    """delta_r(x) = ad_x r."""
    vals = []
    for i in range(g.dim):
        v = g.ad_tensor(g.e(i), r)
        if not v.is_skew():
            raise NotCoboundarySkew(f"ad_{g.labels[i]} r is not skew")
        vals.append(v)
    return Cobracket(g, vals, check=check)


def cyb(g: LieAlgebra, r: Tensor) -> Tensor:
    """[r12, r13] + [r12, r23] + [r13, r23]."""
    V = g.space
    items = list(r.entries.items())
    out = {}
    T = g.table

    def add(key, v):
        out[key] = out.get(key, ZERO) + v

    for (a, b), u in items:
        for (c, d), w in items:
            uw = u * w
            for k, x in T.get((a, c), ()):
                add((k, b, d), uw * x)
            for k, x in T.get((b, c), ()):
                add((a, k, d), uw * x)
            for k, x in T.get((b, d), ()):
                add((a, c, k), uw * x)
    return Tensor._raw((V, V, V), out)


def is_ad_invariant(g: LieAlgebra, A: Tensor) -> bool:
    return all(g.ad_tensor(g.e(i), A).is_zero() for i in range(g.dim))


def is_quasitriangular(g: LieAlgebra, r: Tensor) -> bool:
    _, s = sym_skew_split(r)
    return is_ad_invariant(g, s) and cyb(g, r).is_zero()


def is_factorizable(g: LieAlgebra, r: Tensor) -> bool:
    _, s = sym_skew_split(r)
    return is_quasitriangular(g, r) and sharp(s).rank() == g.dim


class RMatrix:
    """r in g (x) g with its derived data, computed eagerly."""

    def __init__(self, algebra: LieAlgebra, tensor: Tensor):
        self.algebra = algebra
        self.tensor = tensor
        self.Lambda, self.s = sym_skew_split(tensor)
        self.r21 = transpose21(tensor)
        self.r_plus = sharp(tensor)
        self.r_minus = -sharp(self.r21)
        self.f_plus = self.r_plus.image()
        self.f_minus = self.r_minus.image()
        self.quasitriangular = is_quasitriangular(algebra, tensor)
        self.factorizable = self.quasitriangular and sharp(self.s).rank() == algebra.dim

    @property
    def cobracket(self) -> Cobracket:
        return cobracket_from_r(self.algebra, self.tensor)

    def require_quasitriangular(self):
        if not self.quasitriangular:
            raise NotQuasitriangular("r is not a quasitriangular r-matrix")

    def __repr__(self):
        return f"RMatrix({self.tensor!r})"


# --------------------------------------------------------------------------
# Drinfeld's criterion


def k_r_subspace(dbl, r: Tensor) -> Subspace:
    """k_r = {-r^#(xi) + xi} inside d = g + g^*."""
    if dbl is None:
        raise DoubleNotBuilt("k_r needs the double")
    g = dbl.g
    R = sharp(r)
    m = g.dim
    vs = []
    for a in range(m):
        col = R.column(a)
        vs.append([-c for c in col] + [ONE if b == a else ZERO for b in range(m)])
    return Subspace.span(dbl.total.space, vs)


def drinfeld_criterion(dbl, r: Tensor):
    """(r is an r-matrix for delta_g, r is quasitriangular) read off k_r."""
    d = dbl.total
    K = k_r_subspace(dbl, r)
    kb = K.basis()
    r_matrix = all(K.contains(d.bracket(d.e(i), y)) for i in range(dbl.g.dim) for y in kb)
    return r_matrix, r_matrix and is_ideal(d, K)


# --------------------------------------------------------------------------
# f_+- and the pairing between them


@dataclass
class FPairing:
    rm: RMatrix
    xi_minus: list      # preimages: r_-(xi_minus[i]) is the i-th basis vector of f_-
    eta_plus: list      # preimages: r_+(eta_plus[j]) is the j-th basis vector of f_+
    matrix: list        # <f_- basis_i, f_+ basis_j>
    nondegenerate: bool
    dual_pair_ok: bool
    expansion_ok: bool


def _preimages(M: LinearMap, U: Subspace) -> list:
    """For each RREF basis vector u of U = Im M, some xi with M(xi) = u."""
    n = M.domain.dim
    cols = [M.column(i) for i in range(n)]
    # pick independent columns, then solve in their span
    chosen, rows = [], []
    from .tensorspace import rank as _rank
    for i, c in enumerate(cols):
        if _rank(rows + [c], M.codomain.dim) > len(rows):
            rows.append(c)
            chosen.append(i)
    B = [[rows[k][p] for k in range(len(chosen))] for p in U.pivots]
    Binv = inverse(B) if B else []
    out = []
    for t, row in enumerate(U.rows):
        rhs = [row[p] for p in U.pivots]
        coef = [sum((Binv[a][b] * rhs[b] for b in range(len(rhs))), ZERO) for a in range(len(chosen))]
        xi = [ZERO] * n
        for a, i in enumerate(chosen):
            xi[i] = coef[a]
        v = Tensor.vector(M.domain, xi)
        assert M(v) == Tensor.vector(M.codomain, row)
        out.append(v)
    return out


def f_pm_pairing(g: LieAlgebra, r: Tensor) -> FPairing:
    """<r_- xi, r_+ eta> = -<xi, r_+ eta>, plus the dual-pair and expansion checks."""
    rm = RMatrix(g, r)
    rm.require_quasitriangular()
    cb = rm.cobracket
    xs = _preimages(rm.r_minus, rm.f_minus)
    es = _preimages(rm.r_plus, rm.f_plus)
    M = [[-evaluate(rm.r_plus(eta), [xi]) for eta in es] for xi in xs]
    M2 = [[evaluate(rm.r_minus(xi), [eta]) for eta in es] for xi in xs]
    consistent = M == M2
    nondeg = len(xs) == len(es) and det(M) != 0
    # dual pair: (f_-, delta|) and (f_+, -delta|)
    gstar = dual(g.space)
    ok = consistent and nondeg
    n = g.dim
    basis_star = [Tensor.basis(gstar, i) for i in range(n)]
    if ok:
        for x1, x2 in itertools.combinations(range(n), 2):
            a, b = basis_star[x1], basis_star[x2]
            xm, ym = rm.r_minus(a), rm.r_minus(b)
            w = wedge_product(a, b)
            for e in basis_star:
                xp = rm.r_plus(e)
                if extended_pairing(cb(xp), w) != -evaluate(g.bracket(xm, ym), [e]):
                    ok = False
        for a in basis_star:
            xm = rm.r_minus(a)
            for e1, e2 in itertools.combinations(basis_star, 2):
                lhs = extended_pairing(cb(xm), wedge_product(e1, e2))
                rhs = -evaluate(g.bracket(rm.r_plus(e1), rm.r_plus(e2)), [a])
                if lhs != rhs:
                    ok = False
    return FPairing(rm, xs, es, M, nondeg, ok, fpm_expansion(rm))


def fpm_expansion(rm: RMatrix) -> bool:
    """r = sum_{i<=l} x_i (x) r_+(xi_i) for a basis extending one of f_-."""
    g = rm.algebra
    n = g.dim
    fm = [list(row) for row in rm.f_minus.rows]
    basis = list(fm)
    from .tensorspace import rank as _rank
    for i in range(n):
        e = [ONE if j == i else ZERO for j in range(n)]
        if _rank(basis + [e], n) > len(basis):
            basis.append(e)
    # dual basis: columns of the inverse transpose
    Binv = inverse([[basis[c][rr] for c in range(n)] for rr in range(n)]) if n else []
    gstar = dual(g.space)
    total = Tensor.zero(g.space, 2)
    for i in range(len(fm)):
        xi = Tensor.vector(gstar, Binv[i])
        total = total + Tensor.vector(g.space, basis[i]).otimes(rm.r_plus(xi))
    return total == rm.tensor


# --------------------------------------------------------------------------
# twists


def check_twist(cb: Cobracket, t: Tensor) -> bool:
    """delta(t) + 1/2 [t, t] = 0."""
    if not t.is_skew():
        raise NotSkew("twisting elements are skew")
    if t.is_zero():
        return True
    g = cb.algebra
    return (cb.on_wedge2(t) + schouten(g, t, t) / 2).is_zero()


@dataclass
class TwistElement:
    cobracket: Cobracket
    tensor: Tensor

    def __post_init__(self):
        if not check_twist(self.cobracket, self.tensor):
            raise NotTwist("delta(t) + [t,t]/2 != 0")


def twist_cobracket(cb: Cobracket, t) -> Cobracket:
    """delta_t(x) = delta(x) + [t, x]; the form delta(x) - [x, t] is asserted equal."""
    if isinstance(t, TwistElement):
        t = t.tensor
    elif not check_twist(cb, t):
        raise NotTwist("delta(t) + [t,t]/2 != 0")
    g = cb.algebra
    vals = []
    for i in range(g.dim):
        x = g.e(i)
        v1 = cb.values[i] + schouten(g, t, x)
        v2 = cb.values[i] - schouten(g, x, t)
        assert v1 == v2
        vals.append(v1)
    return Cobracket(g, vals)


def project_pJ(t: Tensor, J: Sequence[int], S: Space | None = None) -> Tensor:
    """p_J: g_1+...+g_n -> direct sum of the g_j, j in J (1-based)."""
    S = S or t.space
    if not S.summands:
        raise NotDirectSum(f"{S} is not a registered direct sum")
    target = direct_sum([S.summands[j - 1] for j in J])
    rows = []
    offs = S.offsets()
    for j in J:
        V = S.summands[j - 1]
        for i in range(V.dim):
            rows.append([ONE if c == offs[j - 1] + i else ZERO for c in range(S.dim)])
    return pushforward(LinearMap(S, target, rows), t)


def projection_pJ(S: Space, J: Sequence[int]) -> LinearMap:
    target = direct_sum([S.summands[j - 1] for j in J])
    offs = S.offsets()
    rows = []
    for j in J:
        for i in range(S.summands[j - 1].dim):
            rows.append([ONE if c == offs[j - 1] + i else ZERO for c in range(S.dim)])
    return LinearMap(S, target, rows)


def is_mixed(t: Tensor) -> bool:
    """Every diagonal block p_j(t) vanishes."""
    S = t.space
    if not S.summands:
        raise NotDirectSum(f"{S} is not a registered direct sum")
    offs = list(S.offsets()) + [S.dim]
    block = [0] * S.dim
    for j in range(len(S.summands)):
        for i in range(offs[j], offs[j + 1]):
            block[i] = j
    return all(len({block[i] for i in key}) > 1 for key in t.entries)


def is_mixed_twist(t: Tensor, cb: Cobracket | None = None) -> bool:
    """Mixed, and (when a cobracket on the direct sum is supplied) twisting."""
    if not is_mixed(t):
        return False
    return True if cb is None else check_twist(cb, t)


def product_cobracket(cbs: Sequence[Cobracket], signs: Sequence[int] | None = None,
                      algebra: LieAlgebra | None = None) -> Cobracket:
    """(sign_1 delta_1, ..., sign_n delta_n) on g_1 + ... + g_n."""
    G = algebra or direct_product([cb.algebra for cb in cbs])
    S = G.space
    vals = []
    for j, cb in enumerate(cbs, start=1):
        sg = 1 if signs is None else signs[j - 1]
        for v in cb.values:
            vals.append(direct_sum_embed(v, j, S) * sg)
    return Cobracket(G, vals, check=False)
