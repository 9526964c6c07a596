"""Drinfeld doubles, Manin triples, r_d, p_+-, q and sub-quotient doubles."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .bialg import (Cobracket, NotQuasitriangular, RMatrix, cobracket_from_r, dual_bialgebra,
                    _preimages)
from .liealg import LieAlgebra, is_isotropic, sub_algebra, subalgebra_closure_check
from .tensorspace import (ONE, ZERO, LinearMap, Space, Subspace, Tensor, block_embedding,
                          direct_sum, dual, inverse, pushforward, rank, transpose21, wedge,
                          _same)


class ConventionViolation(AssertionError):
    pass


class CobracketMismatch(ValueError):
    pass


class NotSubBialgebra(ValueError):
    pass


class DoubleAlgebra:
    """d = g + g^* (basis: g, then the dual basis) with <x+xi, y+eta> = <x,eta> + <xi,y>."""

    def __init__(self, cb: Cobracket):
        g = cb.algebra
        self.bialgebra = cb
        self.g = g
        self.gstar, self.gstar_cb = dual_bialgebra(cb)
        m = g.dim
        D = direct_sum([g.space, dual(g.space)])
        ent = {}

        def add(i, j, k, c):
            if c:
                ent[(i, j, k)] = ent.get((i, j, k), ZERO) + c

        for (i, j, k), c in g.structure.entries.items():
            add(i, j, k, c)
        cstar = {}
        for k, v in enumerate(cb.values):
            for (a, b), c in v.entries.items():
                cstar[(a, b, k)] = c
                add(m + a, m + b, m + k, c)
        # [e_i, xi_a] = ad*_{e_i} xi_a - ad*_{xi_a} e_i
        for i in range(m):
            for a in range(m):
                for j in range(m):
                    c1 = g.structure[(j, i, a)]
                    add(i, m + a, m + j, c1)
                    add(m + a, i, m + j, -c1)
                    c2 = cstar.get((j, a, i), ZERO)
                    add(i, m + a, j, -c2)
                    add(m + a, i, j, c2)
        form = {}
        for i in range(m):
            form[(i, m + i)] = ONE
            form[(m + i, i)] = ONE
        try:
            self.total = LieAlgebra(D, Tensor((D, D, D), ent), Tensor((D, D), form))
        except ValueError as exc:
            raise ConventionViolation(f"double bracket: {exc}") from exc
        self.incl_g = block_embedding(D, 1)
        self.incl_gstar = block_embedding(D, 2)
        self.r_d = Tensor((D, D), {(i, m + i): ONE for i in range(m)})
        self.Lambda = Tensor.zero(D, 2)
        for i in range(m):
            self.Lambda = self.Lambda + wedge(self.total.e(i), self.total.e(m + i)) / 2
        self.cobracket = cobracket_from_r(self.total, self.r_d)
        if not self.restriction_signs_ok():
            raise ConventionViolation("delta_d|g != delta_g or delta_d|g* != -delta_g*")

    @property
    def space(self) -> Space:
        return self.total.space

    @property
    def g_sub(self) -> Subspace:
        return self.incl_g.image()

    @property
    def gstar_sub(self) -> Subspace:
        return self.incl_gstar.image()

    def restriction_signs_ok(self) -> bool:
        m = self.g.dim
        for i in range(m):
            if self.cobracket.values[i] != pushforward(self.incl_g, self.bialgebra.values[i]):
                return False
            if self.cobracket.values[m + i] != -pushforward(self.incl_gstar, self.gstar_cb.values[i]):
                return False
        return True

    def rmatrix(self) -> RMatrix:
        return RMatrix(self.total, self.r_d)

    def __repr__(self):
        return f"DoubleAlgebra(dim {self.total.dim})"


def build_double(cb: Cobracket) -> DoubleAlgebra:
    return DoubleAlgebra(cb)


def verify_manin(d: LieAlgebra, a: Subspace, b: Subspace) -> bool:
    """a, b Lagrangian subalgebras with a + b = d."""
    n = d.dim
    if a.dim + b.dim != n or (a + b).dim != n:
        return False
    for U in (a, b):
        if 2 * U.dim != n or not is_isotropic(d, U) or not subalgebra_closure_check(d, U):
            return False
    return rank([list(r) for r in d.form_flat().matrix], n) == n


def _check_hom(src: LieAlgebra, tgt: LieAlgebra, phi: LinearMap, basis=None) -> bool:
    bs = basis if basis is not None else [src.e(i) for i in range(src.dim)]
    for x, y in itertools.combinations(bs, 2):
        if phi(src.bracket(x, y)) != tgt.bracket(phi(x), phi(y)):
            return False
    return True


def _check_bialg_hom(src_cb: Cobracket, tgt_cb: Cobracket, phi: LinearMap, basis=None) -> bool:
    src = src_cb.algebra
    bs = basis if basis is not None else [src.e(i) for i in range(src.dim)]
    return all(pushforward(phi, src_cb(x)) == tgt_cb(phi(x)) for x in bs)


@dataclass
class PPlusMinus:
    p_plus: LinearMap
    p_minus: LinearMap
    homs_ok: bool
    tensors_ok: bool


def p_plus_minus(dbl: DoubleAlgebra, r) -> PPlusMinus:
    """p_+-(x + xi) = x + r_+-(xi)."""
    rm = r if isinstance(r, RMatrix) else RMatrix(dbl.g, r)
    if cobracket_from_r(dbl.g, rm.tensor, check=False) != dbl.bialgebra:
        raise CobracketMismatch("delta_r differs from the double's cobracket")
    if not rm.quasitriangular:
        raise NotQuasitriangular("p_+- needs a quasitriangular r")
    m = dbl.g.dim
    g = dbl.g
    maps = []
    for R in (rm.r_plus, rm.r_minus):
        cols = [g.e(i) for i in range(m)] + [R(Tensor.basis(R.domain, a)) for a in range(m)]
        maps.append(LinearMap.from_columns(dbl.space, g.space, cols))
    pp, pm = maps
    homs = _check_hom(dbl.total, g, pp) and _check_hom(dbl.total, g, pm)
    tens = pushforward(pp, dbl.r_d) == rm.tensor and pushforward(pm, dbl.r_d) == -rm.r21
    return PPlusMinus(pp, pm, homs, tens)


def restrict_cobracket(cb: Cobracket, U: Subspace, name: str | None = None) -> Cobracket:
    """(U, delta|_U) in the RREF basis of U; raises if delta(U) is not in wedge^2 U."""
    g = cb.algebra
    if not subalgebra_closure_check(g, U):
        raise NotSubBialgebra("not a subalgebra")
    A = sub_algebra(g, U, name)
    P = LinearMap(g.space, A.space, [[ONE if c == p else ZERO for c in range(g.dim)]
                                     for p in U.pivots])
    vals = []
    for x in U.basis():
        v = cb(x)
        if not U.contains_tensor(v):
            raise NotSubBialgebra("delta(U) not inside wedge^2 U")
        vals.append(pushforward(P, v))
    return Cobracket(A, vals)


@dataclass
class QMap:
    double_f: DoubleAlgebra
    q: LinearMap
    hom_ok: bool
    r_ok: bool


def q_map(r: RMatrix) -> QMap:
    """q: d_{f_-} -> g, (x_-, x_+) -> x_- + x_+, with f_-^* identified with f_+."""
    r.require_quasitriangular()
    g = r.algebra
    n = g.dim
    fm = r.f_minus
    cb_f = restrict_cobracket(r.cobracket, fm, name="f-")
    dbl_f = build_double(cb_f)
    # extend the f_- basis to a basis of g and take the dual basis
    basis = [list(row) for row in fm.rows]
    for i in range(n):
        e = [ONE if j == i else ZERO for j in range(n)]
        if rank(basis + [e], n) > len(basis):
            basis.append(e)
    Binv = inverse([[basis[c][rr] for c in range(n)] for rr in range(n)]) if n else []
    gstar = dual(g.space)
    cols = [Tensor.vector(g.space, b) for b in fm.rows]
    cols += [r.r_plus(Tensor.vector(gstar, Binv[i])) for i in range(fm.dim)]
    q = LinearMap.from_columns(dbl_f.space, g.space, cols)
    return QMap(dbl_f, q, _check_hom(dbl_f.total, g, q), pushforward(q, dbl_f.r_d) == r.tensor)


@dataclass
class SubQuotient:
    source: Subspace
    target: DoubleAlgebra
    phi: LinearMap
    surjective: bool
    hom_ok: bool
    bialg_ok: bool


def sub_double_quotient(dbl: DoubleAlgebra, p: Subspace) -> SubQuotient:
    """x + xi -> x + xi|_p from p + g^* onto the double of (p, delta|_p)."""
    g = dbl.g
    m = g.dim
    cb_p = restrict_cobracket(dbl.bialgebra, p, name="p")
    dp = build_double(cb_p)
    k = p.dim
    rows = []
    for piv in p.pivots:
        rows.append([ONE if c == piv else ZERO for c in range(2 * m)])
    for row in p.rows:
        rows.append([ZERO] * m + list(row))
    phi = LinearMap(dbl.space, dp.space, rows)
    src = Subspace.span(dbl.space, [list(r) + [ZERO] * m for r in p.rows] +
                        [[ZERO] * m + [ONE if b == a else ZERO for b in range(m)] for a in range(m)])
    bs = src.basis()
    surj = rank([phi(v).coords() for v in bs], 2 * k) == 2 * k if k else True
    d = dbl.total
    hom = all(phi(d.bracket(x, y)) == dp.total.bracket(phi(x), phi(y))
              for x, y in itertools.combinations(bs, 2))
    bial = all(src.contains_tensor(dbl.cobracket(x)) and
               pushforward(phi, dbl.cobracket(x)) == dp.cobracket(phi(x)) for x in bs)
    return SubQuotient(src, dp, phi, surj, hom, bial)
