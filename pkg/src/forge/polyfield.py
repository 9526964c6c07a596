"""Polynomial multivector fields on affine charts and Poisson actions on them.

A k-vector field is stored as {I: f_I} over strictly increasing index tuples I,
meaning sum_I f_I d_{i_1} ^ ... ^ d_{i_k} (wedge without 1/k!).  Coefficients are
sympy PolyElements over QQ.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from sympy.polys.domains import QQ
from sympy.polys.rings import ring

from .bialg import (Cobracket, NotTwist, RMatrix, TwistElement, check_twist, cyb, dual_bialgebra,
                    product_cobracket, twist_cobracket)
from .double import restrict_cobracket
from .liealg import LieAlgebra, direct_product, sub_algebra
from .tensorspace import (ONE, ZERO, LinearMap, NotSkew, Subspace, Tensor, block_tuple,
                          direct_sum_embed, dual, inverse, power, pushforward, q, rank,
                          sort_sign, wedge, _same)


class ChartMismatch(ValueError):
    pass


class NotAnAction(ValueError):
    pass


class NotSkewForStorage(ValueError):
    pass


class SymmetricPartActs(ValueError):
    pass


class NotPoissonAction(ValueError):
    pass


class NotPoisson(ValueError):
    pass


class NotQuasiPoisson(ValueError):
    pass


@lru_cache(maxsize=None)
def _ring(names: tuple):
    R, *gens = ring(",".join(names), QQ)
    return R, tuple(gens)


def _qq(c) -> object:
    c = q(c)
    return QQ(c.numerator, c.denominator)


@dataclass(frozen=True)
class Chart:
    variables: tuple

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"repeated chart variable in {self.variables}")
        if not self.variables:
            raise ValueError("a chart needs at least one variable")

    @property
    def dim(self) -> int:
        return len(self.variables)

    @property
    def ring(self):
        return _ring(self.variables)[0]

    @property
    def gens(self) -> tuple:
        return _ring(self.variables)[1]

    def var(self, i):
        if isinstance(i, str):
            i = self.variables.index(i)
        return self.gens[i]

    def const(self, c):
        return self.ring(_qq(c))

    def poly(self, terms: Mapping):
        """{exponent tuple: coefficient} -> polynomial."""
        return self.ring.from_dict({tuple(e): _qq(c) for e, c in terms.items() if q(c)})


def chart(*names: str) -> Chart:
    return Chart(tuple(names))


def product_chart(charts: Sequence[Chart]) -> Chart:
    names = [v for C in charts for v in C.variables]
    if len(set(names)) == len(names):
        return Chart(tuple(names))
    return Chart(tuple(f"{v}_{j}" for j, C in enumerate(charts, start=1) for v in C.variables))


def lift_poly(p, src: Chart, tgt: Chart, offset: int):
    """Re-express p on tgt, src variable i becoming tgt variable offset + i."""
    n = tgt.dim
    out = {}
    for mon, c in p.terms():
        e = [0] * n
        e[offset:offset + len(mon)] = mon
        out[tuple(e)] = c
    return tgt.ring.from_dict(out)


def restrict_poly(p, src: Chart, tgt: Chart, offset: int):
    """Inverse of lift_poly; None when p depends on variables outside the block."""
    out = {}
    for mon, c in p.terms():
        if any(mon[:offset]) or any(mon[offset + tgt.dim:]):
            return None
        out[tuple(mon[offset:offset + tgt.dim])] = c
    return tgt.ring.from_dict(out)


class PolyField:
    """A polynomial k-vector field on a chart."""

    __slots__ = ("chart", "degree", "comps")

    def __init__(self, chart: Chart, degree: int, comps: Mapping | None = None):
        self.chart = chart
        self.degree = degree
        clean = {}
        for I, f in (comps or {}).items():
            I = tuple(I)
            if len(I) != degree or any(a >= b for a, b in zip(I, I[1:])):
                raise ValueError(f"index {I} not strictly increasing of length {degree}")
            if not hasattr(f, "ring"):
                f = chart.ring(_qq(f))
            if f:
                clean[I] = f
        self.comps = clean

    @classmethod
    def zero(cls, C: Chart, k: int):
        return cls(C, k, {})

    @classmethod
    def function(cls, C: Chart, f):
        return cls(C, 0, {(): f})

    @classmethod
    def partial(cls, C: Chart, i, coeff=None):
        if isinstance(i, str):
            i = C.variables.index(i)
        return cls(C, 1, {(i,): C.ring(1) if coeff is None else coeff})

    @classmethod
    def vector(cls, C: Chart, coeffs: Sequence):
        return cls(C, 1, {(i,): f for i, f in enumerate(coeffs)})

    @classmethod
    def from_full(cls, C: Chart, k: int, full: Mapping):
        """From a full k-tensor {index tuple: poly}; raises if it is not skew."""
        comps = {}
        for key, f in full.items():
            ss = sort_sign(key)
            if ss is None:
                if f:
                    raise NotSkewForStorage(f"non-zero diagonal entry at {key}")
                continue
            srt, sg = ss
            g = full.get(srt, C.ring(0))
            if f != (g if sg > 0 else -g):
                raise NotSkewForStorage(f"image not skew at {key}")
            comps[srt] = g
        return cls(C, k, comps)

    def function_value(self):
        if self.degree:
            raise ValueError("not a function")
        return self.comps.get((), self.chart.ring(0))

    def _check(self, other):
        if not isinstance(other, PolyField):
            raise TypeError("PolyField expected")
        if self.chart != other.chart:
            raise ChartMismatch(f"{self.chart.variables} vs {other.chart.variables}")
        return other

    def __add__(self, other):
        self._check(other)
        if other.degree != self.degree:
            raise ValueError("adding fields of different degree")
        out = dict(self.comps)
        R0 = self.chart.ring(0)
        for I, f in other.comps.items():
            out[I] = out.get(I, R0) + f
        return PolyField(self.chart, self.degree, out)

    def __neg__(self):
        return PolyField(self.chart, self.degree, {I: -f for I, f in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        """Scalar (rational) or function multiple."""
        if isinstance(c, (int, Fraction, str)):
            c = _qq(c)
        return PolyField(self.chart, self.degree, {I: f * c for I, f in self.comps.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / q(c))

    def __eq__(self, other):
        if not isinstance(other, PolyField):
            return NotImplemented
        return (self.chart == other.chart and self.degree == other.degree
                and self.comps == other.comps)

    def __hash__(self):
        return hash((self.chart, self.degree, tuple(sorted(self.comps))))

    def is_zero(self) -> bool:
        return not self.comps

    def __call__(self, f):
        """X(f) for a vector field X."""
        if self.degree != 1:
            raise ValueError("only vector fields act on functions")
        out = self.chart.ring(0)
        for (i,), a in self.comps.items():
            out += a * f.diff(self.chart.gens[i])
        return out

    def wedge(self, other):
        self._check(other)
        out = {}
        R0 = self.chart.ring(0)
        for I, f in self.comps.items():
            for J, g in other.comps.items():
                ss = sort_sign(I + J)
                if ss is None:
                    continue
                K, sg = ss
                out[K] = out.get(K, R0) + (f * g if sg > 0 else -(f * g))
        return PolyField(self.chart, self.degree + other.degree, out)

    __xor__ = wedge

    def full(self) -> dict:
        """Full skew tensor {index tuple: poly}."""
        from .tensorspace import perm_sign
        out = {}
        for I, f in self.comps.items():
            for p in itertools.permutations(range(self.degree)):
                out[tuple(I[i] for i in p)] = f if perm_sign(p) > 0 else -f
        return out

    def evaluate_forms(self, covectors: Sequence) -> object:
        """pi(alpha_1, ..., alpha_k) for 1-forms given as lists of polynomial coefficients."""
        out = self.chart.ring(0)
        for key, f in self.full().items():
            term = f
            for a, i in zip(covectors, key):
                term = term * a[i]
            out += term
        return out

    def degree_profile(self) -> int:
        return max((f.total_degree() if hasattr(f, "total_degree") else 0
                    for f in self.comps.values()), default=0)

    def __repr__(self):
        if not self.comps:
            return f"0 (degree {self.degree})"
        parts = []
        for I in sorted(self.comps):
            d = "^".join(f"d{self.chart.variables[i]}" for i in I)
            parts.append(f"({self.comps[I]})" + (f"*{d}" if d else ""))
        return " + ".join(parts)


def lift_field(A: PolyField, tgt: Chart, offset: int) -> PolyField:
    return PolyField(tgt, A.degree, {tuple(i + offset for i in I): lift_poly(f, A.chart, tgt, offset)
                                     for I, f in A.comps.items()})


def restrict_field(A: PolyField, tgt: Chart, offset: int):
    """Projection to a block of variables; None when not well defined on the block."""
    out = {}
    for I, f in A.comps.items():
        inside = all(offset <= i < offset + tgt.dim for i in I)
        if not inside:
            continue
        g = restrict_poly(f, A.chart, tgt, offset)
        if g is None:
            return None
        out[tuple(i - offset for i in I)] = g
    return PolyField(tgt, A.degree, out)


def project_blocks(A: PolyField, charts: Sequence[Chart], keep: Sequence[int]):
    """Projection of A on the product of charts to the factors in keep (1-based).

    Components touching a discarded factor are dropped; the result is None when a
    kept component depends on a discarded variable.
    """
    offs, acc = [], 0
    for C in charts:
        offs.append(acc)
        acc += C.dim
    tgt = product_chart([charts[j - 1] for j in keep])
    remap, pos = {}, 0
    for j in keep:
        for i in range(charts[j - 1].dim):
            remap[offs[j - 1] + i] = pos
            pos += 1
    out = {}
    for I, f in A.comps.items():
        if not all(i in remap for i in I):
            continue
        terms = {}
        for mon, c in f.terms():
            if any(e for v, e in enumerate(mon) if v not in remap and e):
                return None
            e = [0] * tgt.dim
            for v, ee in enumerate(mon):
                if v in remap:
                    e[remap[v]] = ee
            terms[tuple(e)] = c
        ss = sort_sign(tuple(remap[i] for i in I))
        K, sg = ss
        g = tgt.ring.from_dict(terms)
        out[K] = g if sg > 0 else -g
    return PolyField(tgt, A.degree, out)


# --------------------------------------------------------------------------
# Schouten bracket


def _remove(I, p):
    return I[:p] + I[p + 1:]


def _acc(out, R, idx, coeff):
    ss = sort_sign(idx)
    if ss is None or not coeff:
        return
    K, sg = ss
    out[K] = out.get(K, R(0)) + (coeff if sg > 0 else -coeff)


def schouten_field(A: PolyField, B: PolyField) -> PolyField:
    """Schouten bracket, fixed on decomposables by
    [X_1..X_a, Y_1..Y_b] = sum (-1)^(i+j) [X_i, Y_j] ^ X_1..^X_i..X_a ^ Y_1..^Y_j..Y_b
    and [X_1..X_a, f] = sum (-1)^(a-i) X_i(f) X_1..^X_i..X_a.
    """
    A._check(B)
    C = A.chart
    R, gens = C.ring, C.gens
    a, b = A.degree, B.degree
    out = {}
    if a == 0 and b == 0:
        return PolyField(C, 0, {})
    if b == 0:
        g = B.function_value()
        for I, f in A.comps.items():
            for p, i in enumerate(I):
                c = f * g.diff(gens[i])
                _acc(out, R, _remove(I, p), c if (a - 1 - p) % 2 == 0 else -c)
        return PolyField(C, a - 1, out)
    if a == 0:
        sgn = 1 if (b - 1) % 2 else -1       # [f, B] = -(-1)^(b-1) [B, f]
        return schouten_field(B, A) * sgn
    for I, f in A.comps.items():
        for J, g in B.comps.items():
            J0 = J[1:]
            for p, i in enumerate(I):
                dg = g.diff(gens[i])
                if dg:
                    c = f * dg
                    _acc(out, R, (J[0],) + _remove(I, p) + J0, c if p % 2 == 0 else -c)
            I0 = I[1:]
            for qq, j in enumerate(J):
                df = f.diff(gens[j])
                if df:
                    c = -(g * df)
                    _acc(out, R, (I[0],) + I0 + _remove(J, qq), c if qq % 2 == 0 else -c)
    return PolyField(C, a + b - 1, out)


def commutator(X: PolyField, Y: PolyField) -> PolyField:
    """[X, Y](f) = X(Y f) - Y(X f), computed componentwise."""
    X._check(Y)
    if X.degree != 1 or Y.degree != 1:
        raise ValueError("vector fields expected")
    C = X.chart
    return PolyField.vector(C, [X(Y.comps.get((i,), C.ring(0))) - Y(X.comps.get((i,), C.ring(0)))
                                for i in range(C.dim)])


# --------------------------------------------------------------------------
# Lie algebra actions


class LieAction:
    """x -> lambda(x), a vector field per basis vector.

    left: [lambda(x), lambda(y)] = lambda([y, x]) (anti-homomorphism);
    right: [rho(x), rho(y)] = rho([x, y]).
    """

    def __init__(self, algebra: LieAlgebra, chart: Chart, fields: Sequence[PolyField],
                 side: str = "left", check: bool = True, note: str = ""):
        if side not in ("left", "right"):
            raise ValueError(f"side must be left or right, got {side!r}")
        if len(fields) != algebra.dim:
            raise ValueError("one field per basis vector expected")
        for X in fields:
            if X.degree != 1 or X.chart != chart:
                raise ChartMismatch("action fields must be vector fields on the chart")
        self.algebra = algebra
        self.chart = chart
        self.fields = tuple(fields)
        self.side = side
        self.note = note
        if check:
            bad = self.violations()
            if bad:
                i, j = bad[0]
                raise NotAnAction(f"{side} action fails on ({algebra.labels[i]}, {algebra.labels[j]})")

    def violations(self) -> list:
        g = self.algebra
        bad = []
        for i, j in itertools.combinations(range(g.dim), 2):
            lhs = schouten_field(self.fields[i], self.fields[j])
            br = g.bracket(g.e(i), g.e(j))
            rhs = self(br)
            if self.side == "left":
                rhs = -rhs
            if lhs != rhs:
                bad.append((i, j))
        return bad

    def __call__(self, x: Tensor) -> PolyField:
        if x.order != 1 or not _same(x.spaces[0], self.algebra.space):
            raise ValueError("vector of the acting algebra expected")
        out = PolyField.zero(self.chart, 1)
        for (i,), c in x.entries.items():
            out = out + self.fields[i] * c
        return out

    def apply(self, A: Tensor) -> PolyField:
        return apply_action(self, A)

    def __neg__(self):
        return LieAction(self.algebra, self.chart, [-X for X in self.fields],
                         "right" if self.side == "left" else "left", check=False, note=self.note)

    def with_side(self, side: str, check: bool = True):
        return LieAction(self.algebra, self.chart, self.fields, side, check=check, note=self.note)

    def compose(self, phi: LinearMap, algebra: LieAlgebra, side: str | None = None, check=True):
        """lambda o phi for a Lie algebra map phi: algebra -> self.algebra."""
        fields = [self(phi(algebra.e(i))) for i in range(algebra.dim)]
        return LieAction(algebra, self.chart, fields, side or self.side, check=check)

    def restrict(self, U: Subspace, name: str | None = None):
        """Restriction to a subalgebra, in its RREF basis."""
        A = sub_algebra(self.algebra, U, name)
        return LieAction(A, self.chart, [self(x) for x in U.basis()], self.side)

    def __repr__(self):
        return f"LieAction({self.side}, {self.algebra.space.name} on {self.chart.variables})"


def _image_full(act: LieAction, A: Tensor) -> dict:
    C = act.chart
    R0 = C.ring(0)
    out = {}
    for key, c in A.entries.items():
        cq = _qq(c)
        parts = [list(act.fields[i].comps.items()) for i in key]
        for combo in itertools.product(*parts):
            idx = tuple(I[0] for I, _ in combo)
            term = C.ring(cq)
            for _, f in combo:
                term = term * f
            out[idx] = out.get(idx, R0) + term
    return {k: v for k, v in out.items() if v}


def apply_action(act: LieAction, A: Tensor) -> PolyField:
    """sigma(x_1 (x) ... (x) x_k) = sigma(x_1) (x) ... (x) sigma(x_k), stored as a k-vector field.

    Skew input takes the compact route; other input is expanded and must have a
    skew image (NotSkewForStorage otherwise).
    """
    if A.order and any(not _same(V, act.algebra.space) for V in A.spaces):
        raise ValueError("tensor not on the acting algebra")
    C = act.chart
    if A.order == 0:
        return PolyField.function(C, C.const(A.value()))
    if A.order == 1:
        return act(A)
    if A.is_skew():
        out = PolyField.zero(C, A.order)
        for I, c in A.skew_components().items():
            term = act.fields[I[0]]
            for i in I[1:]:
                term = term.wedge(act.fields[i])
            out = out + term * c
        return out
    return PolyField.from_full(C, A.order, _image_full(act, A))


def image_vanishes(act: LieAction, A: Tensor) -> bool:
    """sigma(A) = 0 as a full tensor field (used for symmetric parts)."""
    return not _image_full(act, A)


def poisson_action_violations(act: LieAction, pi: PolyField, cb: Cobracket) -> list:
    """Basis labels x with [sigma(x), pi] != sigma(delta(x))."""
    g = act.algebra
    if cb.algebra.dim != g.dim:
        raise ValueError("cobracket on a different algebra")
    bad = []
    for i in range(g.dim):
        lhs = schouten_field(act.fields[i], pi)
        rhs = apply_action(act, cb.values[i]) if not cb.values[i].is_zero() else \
            PolyField.zero(act.chart, 2)
        if lhs != rhs:
            bad.append(g.labels[i])
    return bad


def is_poisson(pi: PolyField) -> bool:
    return schouten_field(pi, pi).is_zero()


def require_poisson_space(pi: PolyField, act: LieAction, cb: Cobracket):
    if not is_poisson(pi):
        raise NotPoisson("[pi, pi] != 0")
    bad = poisson_action_violations(act, pi, cb)
    if bad:
        raise NotPoissonAction(f"[sigma(x), pi] != sigma(delta x) for x = {bad[0]}")


@dataclass
class PoissonSpace:
    """(Y, pi, sigma) with sigma a Poisson action of (g, delta) on the given side."""
    pi: PolyField
    action: LieAction
    cobracket: Cobracket

    def __post_init__(self):
        require_poisson_space(self.pi, self.action, self.cobracket)

    @property
    def chart(self) -> Chart:
        return self.pi.chart


# --------------------------------------------------------------------------
# products of actions


def _offsets(charts):
    offs, acc = [], 0
    for C in charts:
        offs.append(acc)
        acc += C.dim
    return offs


def product_action(acts: Sequence[LieAction], chart: Chart | None = None,
                   algebra: LieAlgebra | None = None) -> LieAction:
    """(sigma_1, ..., sigma_n) of g_1 + ... + g_n on Y_1 x ... x Y_n."""
    sides = {a.side for a in acts}
    if len(sides) != 1:
        raise ValueError("mixed sides in a product action")
    charts = [a.chart for a in acts]
    P = chart or product_chart(charts)
    G = algebra or direct_product([a.algebra for a in acts])
    fields = []
    for a, off in zip(acts, _offsets(charts)):
        fields += [lift_field(X, P, off) for X in a.fields]
    return LieAction(G, P, fields, sides.pop(), check=False)


def replicate(act: LieAction, n: int) -> list:
    """n copies of act on renamed charts (z -> z1, z2, ... or v -> v_1, v_2, ...)."""
    base = act.chart
    out = []
    for j in range(1, n + 1):
        names = tuple(f"{v}{j}" if base.dim == 1 else f"{v}_{j}" for v in base.variables)
        Cj = Chart(names)
        fields = [PolyField(Cj, 1, {I: Cj.ring.from_dict(dict(f.terms())) for I, f in X.comps.items()})
                  for X in act.fields]
        out.append(LieAction(act.algebra, Cj, fields, act.side, check=False, note=act.note))
    return out


def diagonal_action(acts: Sequence[LieAction], chart: Chart | None = None) -> LieAction:
    """x -> (sigma_1(x), ..., sigma_n(x))."""
    g = acts[0].algebra
    charts = [a.chart for a in acts]
    P = chart or product_chart(charts)
    fields = []
    for i in range(g.dim):
        X = PolyField.zero(P, 1)
        for a, off in zip(acts, _offsets(charts)):
            X = X + lift_field(a.fields[i], P, off)
        fields.append(X)
    return LieAction(g, P, fields, acts[0].side, check=False)


def product_field(pis: Sequence[PolyField], chart: Chart | None = None) -> PolyField:
    charts = [p.chart for p in pis]
    P = chart or product_chart(charts)
    out = PolyField.zero(P, pis[0].degree)
    for p, off in zip(pis, _offsets(charts)):
        out = out + lift_field(p, P, off)
    return out


# --------------------------------------------------------------------------
# Poisson structures from r-matrices


def poisson_from_r(act: LieAction, r: RMatrix) -> PolyField:
    """-lambda(r) for a left action with lambda(s) = 0."""
    if act.side != "left":
        raise ValueError("poisson_from_r takes a left action")
    r.require_quasitriangular()
    if not image_vanishes(act, r.s):
        raise SymmetricPartActs("lambda(s) != 0: some stabilizer is not coisotropic")
    pi = -apply_action(act, r.Lambda)
    require_poisson_space(pi, act, r.cobracket)
    return pi


# --------------------------------------------------------------------------
# two-fold mixed products


def dual_pairs(g: LieAlgebra, h: LieAlgebra, pairing: Sequence[Sequence] | None = None) -> list:
    """[(xi_i, x_i)] with x_i the basis of g and xi_i in h dual to it.

    pairing[i][a] = <x_i, zeta_a> for the basis zeta_a of h (identity by default).
    """
    m = g.dim
    if pairing is None:
        return [(h.e(i), g.e(i)) for i in range(m)]
    P = [[q(c) for c in row] for row in pairing]
    Pi = inverse(P)
    # xi_i = sum_a C[i][a] zeta_a with sum_a P[j][a] C[i][a] = delta_ij, so C = Pi^T
    return [(h.vec([Pi[a][i] for a in range(m)]), g.e(i)) for i in range(m)]


@dataclass
class MixedProduct2:
    pi: PolyField
    chart: Chart
    rho0: LieAction
    d_prime: LieAlgebra
    d_prime_cobracket: Cobracket
    jacobi: bool
    rho0_poisson: bool
    projections_ok: bool
    cross_ok: bool

    @property
    def ok(self) -> bool:
        return self.jacobi and self.rho0_poisson and self.projections_ok and self.cross_ok


def _hat(act: LieAction, point_chart: Chart, off: int, var: int, P: Chart):
    """Components <d z_var, sigma(e_i)>, lifted to P."""
    return [lift_poly(act.fields[i].comps.get((var,), act.chart.ring(0)), act.chart, P, off)
            for i in range(act.algebra.dim)]


def mixed_product_2(piX: PolyField, rho: LieAction, piY: PolyField, lam: LieAction, *,
                    delta_g: Cobracket, delta_h: Cobracket | None = None,
                    pairing=None, verify: bool = True) -> MixedProduct2:
    """(piX, piY) - sum_i (rho(xi_i), 0) ^ (0, lambda(x_i)).

    rho is a right Poisson action of h = g^* (or of any h paired with g through
    `pairing`), lam a left Poisson action of (g, delta_g).
    """
    if rho.side != "right" or lam.side != "left":
        raise ValueError("rho must be a right action, lambda a left action")
    g, h = lam.algebra, rho.algebra
    if delta_h is None:
        gs, delta_h = dual_bialgebra(delta_g)
    if verify:
        require_poisson_space(piX, rho, delta_h)
        require_poisson_space(piY, lam, delta_g)
    P = product_chart([piX.chart, piY.chart])
    oY = piX.chart.dim
    pairs = dual_pairs(g, h, pairing)
    pi = lift_field(piX, P, 0) + lift_field(piY, P, oY)
    for xi, x in pairs:
        pi = pi - lift_field(rho(xi), P, 0).wedge(lift_field(lam(x), P, oY))
    # right action rho_0(xi, x) = (rho(xi), 0) + (0, -lambda(x)) of d' = h + g
    dp = direct_product([h, g])
    fields = [lift_field(X, P, 0) for X in rho.fields] + [-lift_field(X, P, oY) for X in lam.fields]
    rho0 = LieAction(dp, P, fields, "right", check=verify)
    S = dp.space
    t = Tensor.zero(S, 2)
    for xi, x in pairs:
        t = t + wedge(direct_sum_embed(xi, 1, S), direct_sum_embed(x, 2, S))
    d_prod = product_cobracket([delta_h, -delta_g], algebra=dp)
    d_cb = twist_cobracket(d_prod, -t)
    if not verify:
        return MixedProduct2(pi, P, rho0, dp, d_cb, True, True, True, True)
    jac = is_poisson(pi)
    r0 = not poisson_action_violations(rho0, pi, d_cb)
    pX = project_blocks(pi, [piX.chart, piY.chart], [1])
    pY = project_blocks(pi, [piX.chart, piY.chart], [2])
    proj = pX == piX and pY == piY
    # pi(dz_a, dw_b) = -<rho_hat(dz_a), lambda_hat(dw_b)>
    cross = True
    full = pi.full()
    R0 = P.ring(0)
    for a in range(piX.chart.dim):
        ra = [lift_poly(rho(xi).comps.get((a,), piX.chart.ring(0)), piX.chart, P, 0)
              for xi, _ in pairs]
        for b in range(piY.chart.dim):
            lb = [lift_poly(lam(x).comps.get((b,), piY.chart.ring(0)), piY.chart, P, oY)
                  for _, x in pairs]
            val = -sum((u * v for u, v in zip(ra, lb)), R0)
            if full.get((a, oY + b), R0) != val:
                cross = False
    return MixedProduct2(pi, P, rho0, dp, d_cb, jac, r0, proj, cross)


# --------------------------------------------------------------------------
# n-fold mixed products


@dataclass
class MixedProductN:
    pi: PolyField
    action: LieAction
    diag: LieAction
    charts: tuple
    jacobi: bool
    action_ok: bool
    diag_ok: bool
    pairs_ok: bool
    equals_minus_rn: bool | None

    @property
    def ok(self) -> bool:
        return (self.jacobi and self.action_ok and self.diag_ok and self.pairs_ok
                and self.equals_minus_rn is not False)


def _rn_cobracket(r: RMatrix, n: int) -> Cobracket:
    from .polyuble import r_power
    return r_power(r, n).rmatrix.cobracket


def mixed_bivector(pis: Sequence[PolyField], acts: Sequence[LieAction], r: RMatrix,
                   mix: Tensor | None = None) -> tuple:
    """(pi_1, ..., pi_n) + lambda(Mix^n(r)) and the product action of g^n."""
    from .polyuble import mix_n, power_lie
    n = len(pis)
    charts = [p.chart for p in pis]
    for p, a in zip(pis, acts):
        if p.chart != a.chart:
            raise ChartMismatch("field and action on different charts")
    lam = product_action(acts, algebra=power_lie(r.algebra, n))
    M = mix_n(r.tensor, n) if mix is None else mix
    pi = product_field(pis) + apply_action(lam, M)
    return pi, lam


def mixed_product_n(pis: Sequence[PolyField], acts: Sequence[LieAction], r: RMatrix,
                    verify: bool = True) -> MixedProductN:
    """Quasitriangular form: (pi_1, ..., pi_n) + lambda(Mix^n(r))."""
    n = len(pis)
    charts = tuple(p.chart for p in pis)
    pi, lam = mixed_bivector(pis, acts, r)
    diag = diagonal_action(acts, chart=pi.chart)
    if not verify:
        return MixedProductN(pi, lam, diag, charts, True, True, True, True, None)
    for p, a in zip(pis, acts):
        require_poisson_space(p, a, r.cobracket)
    jac = is_poisson(pi)
    act_ok = not poisson_action_violations(lam, pi, _rn_cobracket(r, n))
    diag_ok = not poisson_action_violations(diag, pi, r.cobracket)
    pairs_ok = True
    for j, k in itertools.combinations(range(1, n + 1), 2):
        pjk = project_blocks(pi, charts, [j, k])
        two, _ = mixed_bivector([pis[j - 1], pis[k - 1]], [acts[j - 1], acts[k - 1]], r)
        if pjk is None or pjk != two:
            pairs_ok = False
    eq = None
    if all(p == -apply_action(a, r.tensor) if image_vanishes(a, r.s) else False
           for p, a in zip(pis, acts)):
        from .polyuble import r_n
        eq = pi == -apply_action(lam, r_n(r, n))
    return MixedProductN(pi, lam, diag, charts, jac, act_ok, diag_ok, pairs_ok, eq)


def mixed_product_double(pis: Sequence[PolyField], sigmas: Sequence[LieAction], dbl,
                         verify: bool = True) -> PolyField:
    """Double-action form: (pi_j) - sum_{j<k} sum_i rho_j(xi_i)_j ^ lambda_k(x_i)_k,
    rho_j = -sigma_j|g*, lambda_k = sigma_k|g, for left (d, delta_d)-Poisson spaces."""
    from .polyuble import power_lie, r_n
    n = len(pis)
    charts = [p.chart for p in pis]
    m = dbl.g.dim
    if verify:
        for p, s in zip(pis, sigmas):
            require_poisson_space(p, s, dbl.cobracket)
    P = product_chart(charts)
    offs = _offsets(charts)
    pi = product_field(pis, P)
    for j, k in itertools.combinations(range(n), 2):
        for i in range(m):
            rho_j = -sigmas[j].fields[m + i]
            lam_k = sigmas[k].fields[i]
            pi = pi - lift_field(rho_j, P, offs[j]).wedge(lift_field(lam_k, P, offs[k]))
    if verify:
        sigma = product_action(sigmas, P, power_lie(dbl.total, n))
        if not is_poisson(pi):
            raise NotPoisson("[pi, pi] != 0 for the polyuble mixed product")
        cb = RMatrix(sigma.algebra, r_n(dbl.rmatrix(), n)).cobracket
        bad = poisson_action_violations(sigma, pi, cb)
        if bad:
            raise NotPoissonAction(f"sigma not Poisson for delta_(d^n) at {bad[0]}")
    return pi


# --------------------------------------------------------------------------
# fusion


@dataclass
class Fusion:
    pi: PolyField
    diag: LieAction

    def space(self, r: RMatrix) -> PoissonSpace:
        return PoissonSpace(self.pi, self.diag, r.cobracket)


def fusion(pis: Sequence[PolyField], acts: Sequence[LieAction], r: RMatrix,
           verify: bool = True) -> Fusion:
    """Fusion product: (pi_Y, lambda_diag)."""
    if len(pis) == 1:
        return Fusion(pis[0], acts[0])
    res = mixed_product_n(pis, acts, r, verify=verify)
    if verify and not res.ok:
        raise NotPoisson("fusion product failed its Poisson checks")
    return Fusion(res.pi, res.diag)


def fusion_associative(pis: Sequence[PolyField], acts: Sequence[LieAction], r: RMatrix) -> bool:
    """((Y1 Y2) Y3) = (Y1 (Y2 Y3)) = (Y1 Y2 Y3) for three factors."""
    if len(pis) != 3:
        raise ValueError("three factors expected")
    whole = fusion(pis, acts, r, verify=False)
    left = fusion(pis[:2], acts[:2], r, verify=False)
    L = fusion([left.pi, pis[2]], [left.diag, acts[2]], r, verify=False)
    right = fusion(pis[1:], acts[1:], r, verify=False)
    Rr = fusion([pis[0], right.pi], [acts[0], right.diag], r, verify=False)
    return L.pi == whole.pi and Rr.pi == whole.pi and L.diag.fields == whole.diag.fields


def step_by_step(pis: Sequence[PolyField], acts: Sequence[LieAction], r: RMatrix, j: int) -> bool:
    """pi_Y = pi_(j) x_(-lambda_(j)|f_+, lambda_[j]|f_-) pi_[j] via mixed_product_2."""
    n = len(pis)
    if not 1 <= j < n:
        raise ValueError("1 <= j < n required")
    r.require_quasitriangular()
    whole = fusion(pis, acts, r, verify=False)
    first = fusion(pis[:j], acts[:j], r, verify=False)
    last = fusion(pis[j:], acts[j:], r, verify=False)
    fm, fp = r.f_minus, r.f_plus
    cb_m = restrict_cobracket(r.cobracket, fm, name="f-")
    cb_p = -restrict_cobracket(r.cobracket, fp, name="f+")
    lam = last.diag.restrict(fm, "f-")
    rho = (-first.diag).restrict(fp, "f+")
    lam = LieAction(cb_m.algebra, lam.chart, lam.fields, "left")
    rho = LieAction(cb_p.algebra, rho.chart, rho.fields, "right")
    # x_i: RREF basis of f_-; extend to g, take the dual basis, r_+(xi_i) lie in f_+
    g = r.algebra
    basis = [list(row) for row in fm.rows]
    for i in range(g.dim):
        e = [ONE if c == i else ZERO for c in range(g.dim)]
        if rank(basis + [e], g.dim) > len(basis):
            basis.append(e)
    Binv = inverse([[basis[c][rr] for c in range(g.dim)] for rr in range(g.dim)])
    ws = [fp.coords(r.r_plus(Tensor.vector(dual(g.space), Binv[i]))) for i in range(fm.dim)]
    # pairing[i][a] = <x_i, zeta_a>: invert zeta_a = sum_i K[a][i] w_i
    W = [[ws[i][a] for i in range(fm.dim)] for a in range(fp.dim)]   # w_i = sum_a W[a][i] zeta_a
    K = inverse(W)                                                     # zeta_a = sum_i K[i][a] w_i
    pairing = [[K[i][a] for a in range(fp.dim)] for i in range(fm.dim)]
    mp = mixed_product_2(first.pi, rho, last.pi, lam, delta_g=cb_m, delta_h=cb_p,
                         pairing=pairing, verify=True)
    return mp.ok and mp.pi == whole.pi


def tau_fusion(pis: Sequence[PolyField], acts: Sequence[LieAction], r: RMatrix,
               tau: Sequence[int]) -> Fusion:
    """(pi_1, ..., pi_n) + lambda(phi_tau(Mix^n(r))) with the diagonal action."""
    from .polyuble import mix_n, perm_map
    n = len(pis)
    V = r.algebra.space
    M = mix_n(r.Lambda, n) + pushforward(perm_map(V, tau), mix_n(r.s, n))
    pi, lam = mixed_bivector(pis, acts, r, mix=M)
    diag = diagonal_action(acts, chart=pi.chart)
    require_poisson_space(pi, diag, r.cobracket)
    return Fusion(pi, diag)


# --------------------------------------------------------------------------
# quasi-Poisson correspondence


def phi_s(r: RMatrix) -> Tensor:
    """phi_s = -2 CYB(s)."""
    return cyb(r.algebra, r.s) * (-2)


def quasi_correspond(pi: PolyField, act: LieAction, r: RMatrix) -> PolyField:
    """Q = pi + lambda(Lambda); checks [Q, Q] = lambda(phi_s) and g-invariance."""
    require_poisson_space(pi, act, r.cobracket)
    Q = pi + apply_action(act, r.Lambda)
    check_quasi_poisson(Q, act, r)
    return Q


def check_quasi_poisson(Q: PolyField, act: LieAction, r: RMatrix):
    phi = phi_s(r)
    rhs = apply_action(act, phi) if not phi.is_zero() else PolyField.zero(act.chart, 3)
    if schouten_field(Q, Q) != rhs:
        raise NotQuasiPoisson("[Q, Q] != lambda(phi_s)")
    for i, X in enumerate(act.fields):
        if not schouten_field(X, Q).is_zero():
            raise NotQuasiPoisson(f"Q not invariant under {act.algebra.labels[i]}")


def poisson_from_quasi(Q: PolyField, act: LieAction, r: RMatrix) -> PolyField:
    """pi = Q - lambda(Lambda), the inverse direction."""
    check_quasi_poisson(Q, act, r)
    pi = Q - apply_action(act, r.Lambda)
    require_poisson_space(pi, act, r.cobracket)
    return pi


@dataclass
class SquareReport:
    n: int
    q_res: PolyField
    q_fus: PolyField
    commutes: bool
    tensor_identity: bool


def fusion_square(pis: Sequence[PolyField], acts: Sequence[LieAction], r: RMatrix) -> SquareReport:
    """Res then correspond vs correspond then Fus, on the fusion product of the inputs."""
    from .polyuble import diagonal_lambda_identity, mix_n, power_lie
    n = len(pis)
    if n == 1:
        Q = pis[0] + apply_action(acts[0], r.Lambda)
        return SquareReport(1, Q, Q, True, True)
    fu = fusion(pis, acts, r)
    lam = product_action(acts, fu.pi.chart, power_lie(r.algebra, n))
    q_res = fu.pi + apply_action(fu.diag, r.Lambda)
    S = lam.algebra.space
    LL = block_tuple([r.Lambda] * n, S)
    q_top = fu.pi + apply_action(lam, LL) - apply_action(lam, mix_n(r.tensor, n))
    q_fus = q_top + apply_action(lam, mix_n(r.s, n))
    return SquareReport(n, q_res, q_fus, q_res == q_fus, diagonal_lambda_identity(r, n))


# --------------------------------------------------------------------------
# twists of Poisson spaces


def twist_space(pi: PolyField, act: LieAction, t, cb: Cobracket) -> PolyField:
    """pi + lambda(t) for a left action, pi - rho(t) for a right one."""
    T = t.tensor if isinstance(t, TwistElement) else t
    if not check_twist(cb, T):
        raise NotTwist("delta(t) + [t,t]/2 != 0")
    require_poisson_space(pi, act, cb)
    img = apply_action(act, T) if not T.is_zero() else PolyField.zero(act.chart, 2)
    new = pi + img if act.side == "left" else pi - img
    require_poisson_space(new, act, twist_cobracket(cb, T))
    return new


__all__ = [
    "Chart", "chart", "product_chart", "PolyField", "LieAction", "schouten_field", "commutator",
    "apply_action", "image_vanishes", "poisson_from_r", "mixed_product_2", "mixed_product_n",
    "mixed_product_double", "fusion", "fusion_associative", "step_by_step", "tau_fusion",
    "quasi_correspond", "poisson_from_quasi", "fusion_square", "twist_space", "PoissonSpace",
    "product_action", "diagonal_action", "replicate", "product_field", "project_blocks", "lift_field",
    "ChartMismatch", "NotAnAction", "NotSkewForStorage", "SymmetricPartActs", "NotPoissonAction",
    "NotPoisson", "NotQuasiPoisson", "poisson_action_violations", "is_poisson", "phi_s",
]
