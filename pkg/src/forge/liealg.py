"""Lie algebras by structure constants, ad/ad*, and the algebraic Schouten bracket."""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Mapping, Sequence

from .tensorspace import (ONE, ZERO, LinearMap, NotSkew, Space, SpaceMismatch, Subspace,
                          Tensor, annihilator, direct_sum, dual, from_skew_components, q,
                          sharp, sort_sign, _same)


class JacobiFailure(ValueError):
    pass


class FormNotInvariant(ValueError):
    pass


class LieAlgebra:
    """[e_i, e_j] = sum_k c(i, j, k) e_k, with an optional invariant symmetric form."""

    def __init__(self, space: Space, structure: Tensor, form: Tensor | None = None,
                 check: bool = True):
        if structure.spaces and any(not _same(V, space) for V in structure.spaces):
            raise SpaceMismatch("structure tensor not on the algebra's space")
        self.space = space
        self.structure = structure
        self.form = form
        table = {}
        for (i, j, k), c in structure.entries.items():
            table.setdefault((i, j), []).append((k, c))
        self.table = {key: tuple(v) for key, v in table.items()}
        if check:
            bad = [key for key, v in structure.entries.items()
                   if structure[(key[1], key[0], key[2])] != -v]
            if bad:
                raise JacobiFailure(f"structure constants not antisymmetric at {bad[0]}")
            viol = check_jacobi(self)
            if viol:
                raise JacobiFailure(f"Jacobi fails on {self.label_triple(viol[0])}")
            if form is not None:
                if not form.is_symmetric():
                    raise FormNotInvariant("form is not symmetric")
                viol = check_form_invariance(self)
                if viol:
                    raise FormNotInvariant(f"form not ad-invariant on {self.label_triple(viol[0])}")

    @classmethod
    def unchecked(cls, space, structure, form=None):
        return cls(space, structure, form, check=False)

    @classmethod
    def from_brackets(cls, name: str, labels: Sequence[str], brackets: Mapping,
                      form: Mapping | None = None, check: bool = True):
        """brackets: {(a, b): {c: coeff}} by label, a<->b filled by antisymmetry."""
        V = Space(name, tuple(labels))
        ent = {}
        for (a, b), rhs in brackets.items():
            i, j = V.index(a), V.index(b)
            for c, v in rhs.items():
                k = V.index(c)
                ent[(i, j, k)] = q(v)
                ent[(j, i, k)] = -q(v)
        F = None
        if form is not None:
            fe = {}
            for (a, b), v in form.items():
                fe[(V.index(a), V.index(b))] = q(v)
                fe[(V.index(b), V.index(a))] = q(v)
            F = Tensor((V, V), fe)
        return cls(V, Tensor((V, V, V), ent), F, check=check)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def labels(self):
        return self.space.labels

    def label_triple(self, t):
        return tuple(self.labels[i] for i in t)

    def e(self, i) -> Tensor:
        if isinstance(i, str):
            i = self.space.index(i)
        return Tensor.basis(self.space, i)

    def vec(self, coords) -> Tensor:
        return Tensor.vector(self.space, coords)

    def bracket_basis(self, i: int, j: int) -> dict:
        return dict(self.table.get((i, j), ()))

    def bracket(self, x: Tensor, y: Tensor) -> Tensor:
        for v in (x, y):
            if v.order != 1 or not _same(v.spaces[0], self.space):
                raise SpaceMismatch("bracket arguments must be vectors of the algebra")
        out = {}
        for (i,), a in x.entries.items():
            for (j,), b in y.entries.items():
                for k, c in self.table.get((i, j), ()):
                    out[(k,)] = out.get((k,), ZERO) + a * b * c
        return Tensor._raw((self.space,), out)

    def ad(self, x: Tensor) -> LinearMap:
        cols = [self.bracket(x, self.e(j)) for j in range(self.dim)]
        return LinearMap.from_columns(self.space, self.space, cols)

    def coad(self, x: Tensor) -> LinearMap:
        """ad*_x on g*: <ad*_x xi, y> = <xi, [y, x]>, i.e. -(ad_x)^T."""
        return -(self.ad(x).dual())

    def ad_tensor(self, x: Tensor, A: Tensor) -> Tensor:
        """ad_x acting on every slot of A (derivation)."""
        xs = list(x.entries.items())
        out = {}
        for key, v in A.entries.items():
            for s, b in enumerate(key):
                for (i,), a in xs:
                    for k, c in self.table.get((i, b), ()):
                        nk = key[:s] + (k,) + key[s + 1:]
                        out[nk] = out.get(nk, ZERO) + v * a * c
        return Tensor._raw(A.spaces, out)

    def pair(self, x: Tensor, y: Tensor) -> Fraction:
        if self.form is None:
            raise ValueError("algebra carries no form")
        total = ZERO
        for (i,), a in x.entries.items():
            for (j,), b in y.entries.items():
                total += a * b * self.form[(i, j)]
        return total

    def form_flat(self) -> LinearMap:
        """x -> <x, .> as a map g -> g*."""
        M = [[self.form[(i, j)] for j in range(self.dim)] for i in range(self.dim)]
        return LinearMap(self.space, dual(self.space), M)

    def __repr__(self):
        return f"LieAlgebra({self.space.name}, dim={self.dim})"


def bracket(g: LieAlgebra, x: Tensor, y: Tensor) -> Tensor:
    return g.bracket(x, y)


def ad_action(g: LieAlgebra, x: Tensor) -> LinearMap:
    return g.ad(x)


def coad_action(g: LieAlgebra, x: Tensor) -> LinearMap:
    return g.coad(x)


def check_jacobi(g: LieAlgebra) -> list:
    """Basis triples (i<j<k) violating the Jacobi identity."""
    bad = []
    n = g.dim
    for i, j, k in itertools.combinations(range(n), 3):
        acc = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for m, u in g.table.get((a, b), ()):
                for p, w in g.table.get((m, c), ()):
                    acc[p] = acc.get(p, ZERO) + u * w
        if any(acc.values()):
            bad.append((i, j, k))
    return bad


def check_form_invariance(g: LieAlgebra) -> list:
    bad = []
    B = g.form
    for i, j, k in itertools.product(range(g.dim), repeat=3):
        s = sum((c * B[(m, k)] for m, c in g.table.get((i, j), ())), ZERO) + \
            sum((c * B[(j, m)] for m, c in g.table.get((i, k), ())), ZERO)
        if s:
            bad.append((i, j, k))
    return bad


def direct_product(algebras: Sequence[LieAlgebra], form_signs: Sequence[int] | None = None,
                   check: bool = False) -> LieAlgebra:
    """g_1 + ... + g_n with componentwise bracket and form sum_j sign_j <,>_j."""
    S = direct_sum([g.space for g in algebras])
    ent, fe = {}, {}
    for g, off, sign in zip(algebras, S.offsets(), form_signs or [None] * len(algebras)):
        for (i, j, k), c in g.structure.entries.items():
            ent[(i + off, j + off, k + off)] = c
        if sign is not None and g.form is not None:
            for (i, j), c in g.form.entries.items():
                fe[(i + off, j + off)] = sign * c
    F = Tensor((S, S), fe) if form_signs is not None else None
    return LieAlgebra(S, Tensor((S, S, S), ent), F, check=check)


# --------------------------------------------------------------------------
# algebraic Schouten bracket on wedge g


def _wedge_basis_bracket(g: LieAlgebra, I: tuple, J: tuple, out: dict, coeff: Fraction):
    """Accumulate coeff * [e_I, e_J] in compact (increasing index) form."""
    for p, i in enumerate(I):
        Ir = I[:p] + I[p + 1:]
        for qq, j in enumerate(J):
            Jr = J[:qq] + J[qq + 1:]
            sgn = -1 if (p + qq) % 2 else 1
            for k, c in g.table.get((i, j), ()):
                ss = sort_sign((k,) + Ir + Jr)
                if ss is None:
                    continue
                key, s2 = ss
                out[key] = out.get(key, ZERO) + coeff * c * sgn * s2


def schouten(g: LieAlgebra, A: Tensor, B: Tensor) -> Tensor:
    """[A, B] for skew A in wedge^a g, B in wedge^b g.

    On decomposables: [x_1..x_a, y_1..y_b] = sum (-1)^(i+j) [x_i, y_j] ^ (rest).
    """
    for T in (A, B):
        if T.order and not T.is_skew():
            raise NotSkew("schouten needs skew inputs")
        if T.order == 0:
            raise ValueError("schouten on g has no order-0 part")
    a, b = A.order, B.order
    out = {}
    ca, cb = A.skew_components(), B.skew_components()
    for I, u in ca.items():
        for J, w in cb.items():
            _wedge_basis_bracket(g, I, J, out, u * w)
    return from_skew_components(g.space, a + b - 1, out)


# --------------------------------------------------------------------------
# subspaces


def subalgebra_closure_check(g: LieAlgebra, U: Subspace) -> bool:
    bs = U.basis()
    return all(U.contains(g.bracket(x, y)) for x, y in itertools.combinations(bs, 2))


def is_ideal(g: LieAlgebra, U: Subspace) -> bool:
    bs = U.basis()
    return all(U.contains(g.bracket(g.e(i), y)) for i in range(g.dim) for y in bs)


def is_coisotropic(c: Subspace, s: Tensor) -> bool:
    """s^#(c^0) inside c."""
    S = sharp(s)
    return all(c.contains(S(xi)) for xi in annihilator(c).basis())


def is_isotropic(g: LieAlgebra, U: Subspace) -> bool:
    bs = U.basis()
    return all(not g.pair(x, y) for x in bs for y in bs)


def sub_algebra(g: LieAlgebra, U: Subspace, name: str | None = None) -> LieAlgebra:
    """U as a Lie algebra in its RREF basis."""
    V = Space(name or f"{g.space.name}|{U.dim}", tuple(f"u{i}" for i in range(U.dim)))
    bs = U.basis()
    ent = {}
    for i, x in enumerate(bs):
        for j, y in enumerate(bs):
            if i == j:
                continue
            for k, c in enumerate(U.coords(g.bracket(x, y))):
                if c:
                    ent[(i, j, k)] = c
    return LieAlgebra(V, Tensor((V, V, V), ent))


__all__ = [
    "LieAlgebra", "JacobiFailure", "FormNotInvariant", "bracket", "ad_action", "coad_action",
    "check_jacobi", "check_form_invariance", "direct_product", "schouten",
    "subalgebra_closure_check", "is_ideal", "is_coisotropic", "is_isotropic", "sub_algebra",
    "annihilator", "Subspace",
]
