"""Canonical fixtures: abelian, ax+b, sl_2, sl_3 (and gl_N) with trace forms.

Chevalley conventions: E_alpha = E_ij (i<j), E_-alpha = E_ji, so that
<E_alpha, E_-alpha> = tr(E_ij E_ji) = 1 under the trace form.  This fixes the
root-vector signs; rescalings E_alpha -> c E_alpha, E_-alpha -> E_-alpha / c
would leave r_st unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .bialg import RMatrix
from .liealg import LieAlgebra
from .tensorspace import ONE, ZERO, Space, Subspace, Tensor, inverse, q


class DegenerateCartanForm(ValueError):
    pass


def _E(N, i, j):
    M = [[ZERO] * N for _ in range(N)]
    M[i][j] = ONE
    return M


def _mm(A, B):
    N = len(A)
    return [[sum((A[i][k] * B[k][j] for k in range(N)), ZERO) for j in range(N)] for i in range(N)]


@dataclass(frozen=True)
class RootDatum:
    """Type A data realized by N x N matrices (sl_N, or gl_N when full=True)."""
    N: int
    full: bool = False

    @property
    def rank(self) -> int:
        return self.N if self.full else self.N - 1

    @property
    def simple_roots(self) -> tuple:
        return tuple((i, i + 1) for i in range(self.N - 1))

    @property
    def positive_roots(self) -> tuple:
        return tuple((i, j) for i in range(self.N) for j in range(i + 1, self.N))

    @property
    def cartan_matrix(self) -> tuple:
        n = self.N - 1
        return tuple(tuple(2 if a == b else (-1 if abs(a - b) == 1 else 0) for b in range(n))
                     for a in range(n))

    @property
    def cartan_labels(self) -> tuple:
        if self.N == 2 and not self.full:
            return ("h",)
        if self.full:
            return tuple(f"H{i + 1}" for i in range(self.N))
        return tuple(f"h{i + 1}" for i in range(self.N - 1))

    def root_label(self, i, j) -> str:
        if self.N == 2:
            return "e" if i < j else "f"
        return f"E{i + 1}{j + 1}"

    @property
    def labels(self) -> tuple:
        pos = [self.root_label(i, j) for i, j in self.positive_roots]
        neg = [self.root_label(j, i) for i, j in self.positive_roots]
        return self.cartan_labels + tuple(pos) + tuple(neg)

    def matrices(self) -> list:
        N = self.N
        out = []
        if self.full:
            out += [_E(N, i, i) for i in range(N)]
        else:
            for i in range(N - 1):
                M = _E(N, i, i)
                M[i + 1][i + 1] = -ONE
                out.append(M)
        out += [_E(N, i, j) for i, j in self.positive_roots]
        out += [_E(N, j, i) for i, j in self.positive_roots]
        return out

    def coords(self, M) -> list:
        N = self.N
        c = []
        if self.full:
            c += [M[i][i] for i in range(N)]
        else:
            acc = ZERO
            for i in range(N - 1):
                acc += M[i][i]
                c.append(acc)
        c += [M[i][j] for i, j in self.positive_roots]
        c += [M[j][i] for i, j in self.positive_roots]
        return c

    @property
    def name(self) -> str:
        return f"{'gl' if self.full else 'sl'}{self.N}"

    def form_values(self) -> dict:
        mats = self.matrices()
        out = {}
        for a, A in enumerate(mats):
            for b, B in enumerate(mats):
                t = sum((_mm(A, B)[i][i] for i in range(self.N)), ZERO)
                if t:
                    out[(a, b)] = t
        return out


@lru_cache(maxsize=None)
def algebra_from_datum(datum: RootDatum) -> LieAlgebra:
    mats = datum.matrices()
    V = Space(datum.name, datum.labels)
    ent = {}
    for a, A in enumerate(mats):
        for b, B in enumerate(mats):
            AB, BA = _mm(A, B), _mm(B, A)
            C = [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(AB, BA)]
            for k, c in enumerate(datum.coords(C)):
                if c:
                    ent[(a, b, k)] = c
    return LieAlgebra(V, Tensor((V, V, V), ent), Tensor((V, V), datum.form_values()))


def cartan_indices(datum: RootDatum) -> range:
    return range(datum.rank)


def standard_r_tensor(datum: RootDatum) -> Tensor:
    """1/2 (inverse form on h) + sum_{alpha>0} E_-alpha (x) E_alpha."""
    g = algebra_from_datum(datum)
    h = list(cartan_indices(datum))
    G = [[g.form[(a, b)] for b in h] for a in h]
    from .tensorspace import det
    if det(G) == 0:
        raise DegenerateCartanForm(datum.name)
    Gi = inverse(G)
    ent = {}
    for a in h:
        for b in h:
            if Gi[a][b]:
                ent[(a, b)] = Gi[a][b] / 2
    npos = len(datum.positive_roots)
    for t in range(npos):
        ip = datum.rank + t
        ineg = datum.rank + npos + t
        ent[(ineg, ip)] = ent.get((ineg, ip), ZERO) + ONE
    return Tensor((g.space, g.space), ent)


def standard_r(datum: RootDatum) -> RMatrix:
    return RMatrix(algebra_from_datum(datum), standard_r_tensor(datum))


def borel(datum: RootDatum, sign: int = 1) -> Subspace:
    g = algebra_from_datum(datum)
    npos = len(datum.positive_roots)
    idx = list(cartan_indices(datum))
    start = datum.rank if sign > 0 else datum.rank + npos
    idx += list(range(start, start + npos))
    return Subspace.span(g.space, [g.e(i) for i in idx])


# --------------------------------------------------------------------------
# small algebras


SL2 = RootDatum(2)
SL3 = RootDatum(3)
GL2 = RootDatum(2, full=True)


def sl2() -> LieAlgebra:
    return algebra_from_datum(SL2)


def sl3() -> LieAlgebra:
    return algebra_from_datum(SL3)


def gl2() -> LieAlgebra:
    return algebra_from_datum(GL2)


@lru_cache(maxsize=None)
def abelian(n: int = 2) -> LieAlgebra:
    labels = [f"a{i + 1}" for i in range(n)]
    form = {(l, l): 1 for l in labels}
    return LieAlgebra.from_brackets(f"ab{n}", labels, {}, form)


@lru_cache(maxsize=None)
def axb() -> LieAlgebra:
    return LieAlgebra.from_brackets("axb", ["x", "y"], {("x", "y"): {"y": 1}})


def axb_r() -> RMatrix:
    g = axb()
    return RMatrix(g, Tensor.from_labels(g.space, [(1, "x", "y"), (-1, "y", "x")]))


def abelian_r(n: int = 2) -> RMatrix:
    g = abelian(n)
    return RMatrix(g, Tensor.zero(g.space, 2))


def broken_sl2() -> LieAlgebra:
    """sl_2 with c(h, e, .) altered; Jacobi fails on (h, e, f)."""
    return LieAlgebra.from_brackets("sl2bad", ["h", "e", "f"],
                                    {("h", "e"): {"e": 3}, ("h", "f"): {"f": -2}, ("e", "f"): {"h": 1}},
                                    check=False)


# --------------------------------------------------------------------------
# actions on charts

FLAG_SL3 = False   # sl_3 flag charts grow quickly; opt in explicitly


def _pmat_mul(A, B, zero):
    N = len(A)
    return [[sum((A[i][k] * B[k][j] for k in range(N)), zero) for j in range(N)] for i in range(N)]


def flag_action(datum: RootDatum, prefix: str = "z"):
    """Left action of sl_N on the big cell N_+ B_-/B_- of the flag variety.

    lambda(X)(n) = n P_{n_+}(n^-1 X n), the derivative of n -> exp(tX) n mod B_-.
    Chart variables are the above-diagonal entries of n.
    """
    from .polyfield import Chart, LieAction, PolyField
    if datum.full:
        raise ValueError("flag charts are built for sl_N")
    N = datum.N
    pos = datum.positive_roots
    names = (f"{prefix}",) if N == 2 else tuple(f"{prefix}{i + 1}{j + 1}" for i, j in pos)
    C = Chart(names)
    R = C.ring
    zero, one = R(0), R(1)
    n = [[one if i == j else zero for j in range(N)] for i in range(N)]
    for v, (i, j) in enumerate(pos):
        n[i][j] = C.gens[v]
    # n = 1 + u with u nilpotent: n^-1 = sum (-u)^k
    u = [[n[i][j] - (one if i == j else zero) for j in range(N)] for i in range(N)]
    ninv = [[one if i == j else zero for j in range(N)] for i in range(N)]
    term = [row[:] for row in ninv]
    for _ in range(N - 1):
        term = _pmat_mul(term, [[-x for x in row] for row in u], zero)
        ninv = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(ninv, term)]
    g = algebra_from_datum(datum)
    fields = []
    for M in datum.matrices():
        X = [[R(x) for x in row] for row in M]
        A = _pmat_mul(_pmat_mul(ninv, X, zero), n, zero)
        a = [[A[i][j] if i < j else zero for j in range(N)] for i in range(N)]
        V = _pmat_mul(n, a, zero)
        fields.append(PolyField.vector(C, [V[i][j] for i, j in pos]))
    return LieAction(g, C, fields, "left",
                     note="derivative at t=0 of the flow n -> exp(tX) n mod B_-")


def mobius_action(n: int = 1, datum: RootDatum = SL2):
    """sl_2 on (P^1 chart)^n: lambda(e) = d, lambda(h) = 2z d, lambda(f) = -z^2 d per factor.

    For n > 1 this is the product action of g^n on the chart z1, ..., zn.
    """
    from .polyfield import Chart, LieAction, PolyField, product_action
    from .polyuble import power_lie
    if datum != SL2:
        raise ValueError("the Moebius action is defined for sl_2")
    C = Chart(("z",))
    z = C.gens[0]
    g = sl2()
    fields = {"h": 2 * z, "e": C.ring(1), "f": -z ** 2}
    one = LieAction(g, C, [PolyField.vector(C, [fields[l]]) for l in g.labels], "left",
                    note="Moebius flows z -> z + t, e^(2t) z, z / (1 + t z)")
    if n == 1:
        return one
    return product_action(factor_actions(n), algebra=power_lie(g, n))


def factor_actions(n: int, datum: RootDatum = SL2) -> list:
    """Per-factor copies of the chart action on charts z1, ..., zn (or prefixed sl_N charts)."""
    from .polyfield import replicate
    if datum == SL2:
        base = mobius_action(1)
    else:
        if not FLAG_SL3 and datum.N > 2:
            raise RuntimeError("sl_N flag charts are disabled; set fixtures.FLAG_SL3 = True")
        base = flag_action(datum)
    return replicate(base, n)


def flag_bivector(datum: RootDatum = SL2, n: int = 2):
    """-lambda(r_st^(n)) on the product of n flag charts (Poisson checks run inside)."""
    from .polyfield import poisson_from_r, product_action
    from .polyuble import power_lie, r_power
    r = standard_r(datum)
    acts = factor_actions(n, datum)
    lam = product_action(acts, algebra=power_lie(r.algebra, n))
    return poisson_from_r(lam, r_power(r, n).rmatrix)


def axb_coadjoint_action():
    """ax+b on a 2-variable chart: lambda(x) = -z2 d2, lambda(y) = z2 d1."""
    from .polyfield import Chart, LieAction, PolyField
    C = Chart(("w1", "w2"))
    w1, w2 = C.gens
    g = axb()
    return LieAction(g, C, [PolyField.vector(C, [C.ring(0), -w2]), PolyField.vector(C, [w2, C.ring(0)])],
                     "left", note="linear action, anti-homomorphism checked")


def stabilizer(act, point) -> Subspace:
    """Stabilizer subalgebra {x : lambda(x)(point) = 0} at a rational point."""
    from .tensorspace import nullspace
    vals = [_qq_point(X, point) for X in act.fields]
    rows = [[vals[i][v] for i in range(act.algebra.dim)] for v in range(act.chart.dim)]
    ker = nullspace(rows, act.algebra.dim)
    return Subspace.span(act.algebra.space, ker)


def _qq_point(X, point):
    pt = [q(c) for c in point]
    out = []
    for v in range(X.chart.dim):
        f = X.comps.get((v,))
        if f is None:
            out.append(ZERO)
            continue
        acc = ZERO
        for mon, c in f.terms():
            term = Fraction(int(c.numerator), int(c.denominator))
            for e, p in zip(mon, pt):
                term *= p ** e
            acc += term
        out.append(acc)
    return out


# --------------------------------------------------------------------------
# manifest export


def _sl_manifest(datum: RootDatum, with_action: bool):
    from .manifest import Manifest, ActionSpec
    g = algebra_from_datum(datum)
    m = Manifest(name=datum.name)
    m.algebras[datum.name] = g
    m.r_matrices["r_st"] = (datum.name, standard_r_tensor(datum))
    if with_action:
        act = mobius_action(1) if datum == SL2 else flag_action(datum)
        m.actions["chart"] = _action_spec("chart", datum.name, act)
    return m


def _action_spec(name, algebra, act):
    from .manifest import ActionSpec
    fields = {}
    for lab, X in zip(act.algebra.labels, act.fields):
        comps = {}
        for I, f in sorted(X.comps.items()):
            comps[act.chart.variables[I[0]]] = [
                (tuple(mon), Fraction(int(c.numerator), int(c.denominator))) for mon, c in sorted(f.terms())]
        if comps:
            fields[lab] = comps
    return ActionSpec(name, algebra, act.chart.variables, act.side, fields)


def fixture_manifest(name: str):
    """Manifest for a named fixture: sl2, sl3, gl2, abelian, axb, sl2-corrupted."""
    from .manifest import Manifest
    if name == "sl2":
        m = _sl_manifest(SL2, True)
        m.checks = {"factors": [2, 3]}
        return m
    if name == "sl3":
        m = _sl_manifest(SL3, True)
        m.checks = {"factors": [2], "n_max": {"cybe": 3, "rn": 2, "polyuble": 1}}
        return m
    if name == "gl2":
        m = _sl_manifest(GL2, False)
        m.checks = {"n_max": {"cybe": 3, "rn": 2, "polyuble": 1}}
        return m
    if name == "abelian":
        g = abelian(2)
        m = Manifest(name="ab2")
        m.algebras["ab2"] = g
        m.r_matrices["r0"] = ("ab2", Tensor.zero(g.space, 2))
        return m
    if name == "axb":
        g = axb()
        m = Manifest(name="axb")
        m.algebras["axb"] = g
        m.r_matrices["r"] = ("axb", axb_r().tensor)
        m.actions["coadjoint"] = _action_spec("coadjoint", "axb", axb_coadjoint_action())
        m.checks = {"factors": [2]}
        return m
    if name == "sl2-corrupted":
        m = Manifest(name="sl2-corrupted")
        m.algebras["sl2"] = broken_sl2()
        m.r_matrices["r_st"] = ("sl2", Tensor.from_labels(broken_sl2().space,
                                                           [(Fraction(1, 4), "h", "h"), (1, "f", "e")]))
        return m
    raise KeyError(f"unknown fixture {name!r}")


FIXTURE_NAMES = ("sl2", "sl3", "gl2", "abelian", "axb", "sl2-corrupted")
