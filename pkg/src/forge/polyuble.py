"""Polyubles g_(n) in d^n, t_{n+1}, and the quasitriangular r-matrices r^(n)."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .bialg import (Cobracket, NotQuasitriangular, RMatrix, cobracket_from_r, cyb, dual_bialgebra,
                    is_quasitriangular, product_cobracket, projection_pJ, is_mixed, check_twist)
from .double import CobracketMismatch, DoubleAlgebra, _check_bialg_hom, _check_hom, verify_manin
from .liealg import LieAlgebra, direct_product
from .tensorspace import (ONE, ZERO, LinearMap, Space, Subspace, Tensor, block_embedding,
                          block_tuple, direct_sum, direct_sum_embed, dual, inverse, power,
                          pushforward, sym_skew_split, transpose21, wedge, _same)


# --------------------------------------------------------------------------
# polyuble splittings


def _diag_vectors(dbl: DoubleAlgebra, S: Space, slots: Sequence[int], which: str) -> list:
    """Vectors of S: for each basis vector a of the block (d, g or g^*), a copied into slots."""
    m = dbl.g.dim
    idx = {"d": range(2 * m), "g": range(m), "gs": range(m, 2 * m)}[which]
    offs = S.offsets()
    out = []
    for i in idx:
        v = [ZERO] * S.dim
        for j in slots:
            v[offs[j - 1] + i] = ONE
        out.append(v)
    return out


def g_blocks(n: int):
    """Block patterns (diag pairs, single g slot, single g* slot) of g_(n) and g*_(n)."""
    if n % 2:
        k = (n + 1) // 2
        gn = [("d", (2 * i + 1, 2 * i + 2)) for i in range(k - 1)] + [("g", (n,))]
        gns = [("gs", (1,))] + [("d", (2 * i + 2, 2 * i + 3)) for i in range(k - 1)]
    else:
        k = n // 2
        gn = [("d", (2 * i + 1, 2 * i + 2)) for i in range(k)]
        gns = [("gs", (1,))] + [("d", (2 * i + 2, 2 * i + 3)) for i in range(k - 1)] + [("g", (n,))]
    return gn, gns


@dataclass
class PolyubleSplitting:
    n: int
    dbl: DoubleAlgebra
    ambient: LieAlgebra
    g_n: Subspace
    g_n_star: Subspace
    basis: list          # a basis of g_(n) (d^n vectors)
    dual_basis: list     # the dual basis of g*_(n) under <,>_{d^n}

    def r_matrix(self) -> Tensor:
        """r_{d^n} = sum a_i (x) alpha_i for the splitting d^n = g_(n) + g*_(n)."""
        out = Tensor.zero(self.ambient.space, 2)
        for a, al in zip(self.basis, self.dual_basis):
            out = out + a.otimes(al)
        return out

    def cobracket(self) -> Cobracket:
        return cobracket_from_r(self.ambient, self.r_matrix(), check=False)

    def manin_ok(self) -> bool:
        return verify_manin(self.ambient, self.g_n, self.g_n_star)


def power_algebra(dbl: DoubleAlgebra, n: int) -> LieAlgebra:
    """d^n with <,>_{d^n} = sum_j (-1)^(j+1) <a_j, a_j'>_d."""
    return direct_product([dbl.total] * n, [(-1) ** j for j in range(n)])


def build_polyuble(dbl: DoubleAlgebra, n: int) -> PolyubleSplitting:
    if n < 1:
        raise ValueError("n >= 1")
    A = power_algebra(dbl, n)
    S = A.space
    gn, gns = g_blocks(n)
    vs = [v for which, slots in gn for v in _diag_vectors(dbl, S, slots, which)]
    ws = [v for which, slots in gns for v in _diag_vectors(dbl, S, slots, which)]
    G, Gs = Subspace.span(S, vs), Subspace.span(S, ws)
    basis = [Tensor.vector(S, v) for v in vs]
    cand = [Tensor.vector(S, w) for w in ws]
    gram = [[A.pair(a, b) for b in cand] for a in basis]
    gi = inverse(gram)
    # alpha_i = sum_j gi[j][i] cand_j gives <a_k, alpha_i> = delta_ki
    dual_basis = []
    for i in range(len(basis)):
        t = Tensor.zero(S, 1)
        for j, c in enumerate(cand):
            if gi[j][i]:
                t = t + c * gi[j][i]
        dual_basis.append(t)
    return PolyubleSplitting(n, dbl, A, G, Gs, basis, dual_basis)


def t_element(dbl: DoubleAlgebra, n_plus_1: int) -> Tensor:
    """t_{n+1} = sum_{j<k} sum_i (xi_i)_j ^ (x_i)_k in d^{n+1}."""
    m = dbl.g.dim
    S = power(dbl.space, n_plus_1)
    offs = S.offsets()
    out = Tensor.zero(S, 2)
    for j, k in itertools.combinations(range(n_plus_1), 2):
        for i in range(m):
            out = out + wedge(Tensor.basis(S, offs[j] + m + i), Tensor.basis(S, offs[k] + i))
    return out


def alt_power(A: Tensor, n: int) -> Tensor:
    """(A, -A^21, A, -A^21, ...) on V^n."""
    blocks = [A if j % 2 == 0 else -transpose21(A) for j in range(n)]
    return block_tuple(blocks, power(A.space, n))


# --------------------------------------------------------------------------
# identifications of eq-iden-ggg


@dataclass
class Identification:
    """A block subalgebra of a polyuble read as a direct product (eq-iden-ggg).

    pattern lists (kind, slots) blocks of g_(N) or g*_(N); block p of the
    pattern also sits in slot p of d^{n+1}, which is where t_{n+1} lives.
    """
    name: str
    N: int
    side: str                  # "g" for g_(N), "gs" for g*_(N)
    pattern: list
    algebra: LieAlgebra        # direct product of d, g, g^* factors
    embed: LinearMap           # algebra -> d^{n+1}
    read: LinearMap            # d^N -> algebra, inverse of the block-diagonal inclusion
    cobracket: Cobracket       # direct-product cobracket delta'
    sign: int                  # the mixed twisting element is sign * t_{n+1}

    def transport(self, T: Tensor) -> Tensor:
        """Pull back a tensor lying in the image of embed."""
        P = LinearMap(self.embed.codomain, self.embed.domain,
                      [list(col) for col in zip(*self.embed.matrix)])
        out = pushforward(P, T)
        if pushforward(self.embed, out) != T:
            raise ValueError(f"tensor does not lie in the image of {self.name}")
        return out


def _identification(dbl: DoubleAlgebra, n: int, name: str, N: int, side: str) -> Identification:
    m = dbl.g.dim
    md = dbl.space.dim
    pattern = g_blocks(N)[0 if side == "g" else 1]
    parts = {"d": (dbl.total, 0, dbl.cobracket), "g": (dbl.g, 0, dbl.bialgebra),
             "gs": (dbl.gstar, m, dbl.gstar_cb)}
    A = direct_product([parts[k][0] for k, _ in pattern])
    S = A.space
    Sd = power(dbl.space, n + 1)
    SN = power(dbl.space, N)
    emb_cols, read_rows = [], []
    for p, (kind, slots) in enumerate(pattern):
        alg, off, _ = parts[kind]
        for i in range(alg.dim):
            v = [ZERO] * Sd.dim
            v[p * md + off + i] = ONE
            emb_cols.append(v)
            read_rows.append([ONE if c == (slots[0] - 1) * md + off + i else ZERO
                              for c in range(SN.dim)])
    signs = [1 if side == "g" or kind == "gs" else -1 for kind, _ in pattern]
    cb = product_cobracket([parts[k][2] for k, _ in pattern], signs, algebra=A)
    return Identification(name, N, side, pattern, A, LinearMap.from_columns(S, Sd, emb_cols),
                          LinearMap(SN, S, read_rows), cb, 1 if side == "g" else -1)


def identifications(dbl: DoubleAlgebra, n: int) -> list:
    """g_(2n+2) = d^{n+1}, g*_(2n) = g* + d^{n-1} + g, g_(2n+1) = d^n + g, g*_(2n+1) = g* + d^n."""
    return [_identification(dbl, n, "g_(2n+2)", 2 * n + 2, "g"),
            _identification(dbl, n, "g*_(2n)", 2 * n, "gs"),
            _identification(dbl, n, "g_(2n+1)", 2 * n + 1, "g"),
            _identification(dbl, n, "g*_(2n+1)", 2 * n + 1, "gs")]


def t_mixed_twist_report(dbl: DoubleAlgebra, n: int) -> dict:
    """For each identification: the transported sign * t_{n+1} is mixed and twisting."""
    t = t_element(dbl, n + 1)
    rep = {}
    for ident in identifications(dbl, n):
        tt = ident.transport(t) * ident.sign
        rep[ident.name] = is_mixed(tt) and check_twist(ident.cobracket, tt)
    return rep


def uble_mixed_twist(dbl: DoubleAlgebra, ident: Identification) -> bool:
    """The twist of delta' by sign * t_{n+1} is the polyuble cobracket, read through ident.

    On g*_(N) the splitting cobracket is -delta_{r_{d^N}} restricted.
    """
    from .bialg import twist_cobracket
    spl = build_polyuble(dbl, ident.N)
    sub = spl.g_n if ident.side == "g" else spl.g_n_star
    rd = spl.r_matrix()
    big = spl.ambient
    sgn = 1 if ident.side == "g" else -1
    t = ident.transport(t_element(dbl, (ident.embed.codomain.dim // dbl.space.dim))) * ident.sign
    tw = twist_cobracket(ident.cobracket, t)
    R = ident.read
    bs = sub.basis()
    for a in bs:
        if pushforward(R, big.ad_tensor(a, rd)) * sgn != tw(R(a)):
            return False
    return all(R(big.bracket(a, b)) == ident.algebra.bracket(R(a), R(b))
               for a, b in itertools.combinations(bs, 2))


def uble_mixed_1(dbl: DoubleAlgebra, n_plus_1: int) -> bool:
    return uble_mixed_twist(dbl, identifications(dbl, n_plus_1 - 1)[0])


def double_uble_r(dbl: DoubleAlgebra, n_plus_1: int) -> bool:
    """r_{d^{n+1}} = Alt^{n+1}(r_d) - t_{n+1}."""
    spl = build_polyuble(dbl, n_plus_1)
    lhs = spl.r_matrix()
    rhs = alt_power(dbl.r_d, n_plus_1) - t_element(dbl, n_plus_1)
    return lhs == rhs


# --------------------------------------------------------------------------
# r^(n)


def power_lie(g: LieAlgebra, n: int) -> LieAlgebra:
    return direct_product([g] * n)


def alt_n(r: Tensor, n: int) -> Tensor:
    return alt_power(r, n)


def mix_block(r: Tensor, n: int, j: int, k: int) -> Tensor:
    """Mix^n(r)_{j,k} = sum_i (y_i)_j ^ (x_i)_k for r = sum x_i (x) y_i."""
    V = r.space
    S = power(V, n)
    oj, ok = S.offsets()[j - 1], S.offsets()[k - 1]
    out = {}
    for (a, b), c in r.entries.items():
        for key, s in (((oj + b, ok + a), 1), ((ok + a, oj + b), -1)):
            out[key] = out.get(key, ZERO) + s * c
    return Tensor((S, S), out)


def mix_n(r: Tensor, n: int) -> Tensor:
    S = power(r.space, n)
    out = Tensor.zero(S, 2)
    for j, k in itertools.combinations(range(1, n + 1), 2):
        out = out + mix_block(r, n, j, k)
    return out


@dataclass
class RPower:
    n: int
    base: RMatrix
    algebra: LieAlgebra
    tensor: Tensor
    alt: Tensor
    mix: Tensor

    def block(self, j, k) -> Tensor:
        return mix_block(self.base.tensor, self.n, j, k)

    @property
    def rmatrix(self) -> RMatrix:
        return RMatrix(self.algebra, self.tensor)


def r_power(r: RMatrix, n: int) -> RPower:
    r.require_quasitriangular()
    A, M = alt_n(r.tensor, n), mix_n(r.tensor, n)
    return RPower(n, r, power_lie(r.algebra, n), A - M, A, M)


def r_n(r: RMatrix, n: int) -> Tensor:
    return r_power(r, n).tensor


def mix_sharp(r: RMatrix, n: int, j: int, k: int) -> LinearMap:
    """Mix_{jk}^#(xi) = (-r_+(xi_k))_j + (-r_-(xi_j))_k, built blockwise."""
    g = r.algebra
    S = power(g.space, n)
    Ss = dual(S)
    cols = []
    m = g.dim
    for blk in range(1, n + 1):
        for a in range(m):
            xi = Tensor.basis(dual(g.space), a)
            v = Tensor.zero(S, 1)
            if blk == k:
                v = v + direct_sum_embed(-r.r_plus(xi), j, S)
            if blk == j:
                v = v + direct_sum_embed(-r.r_minus(xi), k, S)
            cols.append(v)
    return LinearMap.from_columns(Ss, S, cols)


def dual_bracket_rn(r: RMatrix, n: int, xis: Sequence[Tensor], etas: Sequence[Tensor]) -> list:
    """zeta_j = [xi_j, eta_j] + ad*_{r_-(xi_<j) + r_+(xi_>j)} eta_j - (xi <-> eta)."""
    g = r.algebra
    gs, _ = dual_bialgebra(r.cobracket)
    V = g.space
    out = []
    for j in range(n):
        z = gs.bracket(xis[j], etas[j])
        for a, b in ((xis, etas), (etas, xis)):
            x = Tensor.zero(V, 1)
            for i in range(j):
                x = x + r.r_minus(a[i])
            for i in range(j + 1, n):
                x = x + r.r_plus(a[i])
            term = g.coad(x)(b[j])
            z = z + term if a is xis else z - term
        out.append(z)
    return out


def xi_eta_forms(r: RMatrix, xi: Tensor, eta: Tensor):
    """The two ad*-expressions for [xi, eta] in g^*."""
    g = r.algebra
    f1 = g.coad(r.r_minus(xi))(eta) - g.coad(r.r_plus(eta))(xi)
    f2 = g.coad(r.r_plus(xi))(eta) - g.coad(r.r_minus(eta))(xi)
    return f1, f2


def zetaj_matches_dual(r: RMatrix, n: int) -> bool:
    """eq-zetaj against the bracket of the dual of (g^n, delta_{r^(n)}), all basis pairs."""
    P = r_power(r, n)
    cb = cobracket_from_r(P.algebra, P.tensor)
    gns, _ = dual_bialgebra(cb)
    S = P.algebra.space
    m = r.algebra.dim
    gs = dual(r.algebra.space)
    for a, b in itertools.combinations(range(n * m), 2):
        xis = [Tensor.zero(gs, 1) for _ in range(n)]
        etas = [Tensor.zero(gs, 1) for _ in range(n)]
        xis[a // m] = Tensor.basis(gs, a % m)
        etas[b // m] = Tensor.basis(gs, b % m)
        z = dual_bracket_rn(r, n, xis, etas)
        ref = gns.bracket(Tensor.basis(dual(S), a), Tensor.basis(dual(S), b)).coords()
        got = [c for zj in z for c in zj.coords()]
        if ref != got:
            return False
    return True


def phi_mk(r: RMatrix, m: int, k: int, n: int) -> LinearMap:
    """g^m -> g^n repeating slot k (n - m + 1) times."""
    if not 1 <= k <= m <= n:
        raise IndexError("need 1 <= k <= m <= n")
    g = r.algebra
    d = g.dim
    Sm, Sn = power(g.space, m), power(g.space, n)
    src = list(range(1, k)) + [k] * (n - m + 1) + list(range(k + 1, m + 1))
    rows = []
    for slot in src:
        for i in range(d):
            rows.append([ONE if c == (slot - 1) * d + i else ZERO for c in range(Sm.dim)])
    return LinearMap(Sm, Sn, rows)


def phi_mk_verified(r: RMatrix, m: int, k: int, n: int) -> bool:
    phi = phi_mk(r, m, k, n)
    Pm, Pn = r_power(r, m), r_power(r, n)
    cbm = cobracket_from_r(Pm.algebra, Pm.tensor, check=False)
    cbn = cobracket_from_r(Pn.algebra, Pn.tensor, check=False)
    return _check_hom(Pm.algebra, Pn.algebra, phi) and _check_bialg_hom(cbm, cbn, phi)


def diag_map(V: Space, n: int) -> LinearMap:
    rows = []
    for _ in range(n):
        for i in range(V.dim):
            rows.append([ONE if c == i else ZERO for c in range(V.dim)])
    return LinearMap(V, power(V, n), rows)


def diagonal_lambda_identity(r: RMatrix, n: int) -> bool:
    """(diag)_n(Lambda) = (Lambda, ..., Lambda) - Mix^n(Lambda)."""
    L = r.Lambda
    lhs = pushforward(diag_map(r.algebra.space, n), L)
    rhs = block_tuple([L] * n, power(L.space, n)) - mix_n(L, n)
    return lhs == rhs


def perm_map(V: Space, tau: Sequence[int]) -> LinearMap:
    """phi_tau(x)_i = x_{tau^-1(i)}; tau[i-1] = tau(i), 1-based values."""
    n = len(tau)
    if sorted(tau) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation: {tau}")
    inv = [0] * n
    for i, t in enumerate(tau, start=1):
        inv[t - 1] = i
    d = V.dim
    S = power(V, n)
    rows = []
    for i in range(1, n + 1):
        src = inv[i - 1]
        for a in range(d):
            rows.append([ONE if c == (src - 1) * d + a else ZERO for c in range(S.dim)])
    return LinearMap(S, S, rows)


def r_eps_tau(r: RMatrix, eps: Sequence[int], tau: Sequence[int], n: int) -> Tensor:
    """(eps_i s) + (Lambda, ..., Lambda) - Mix^n(Lambda) - phi_tau(Mix^n(s))."""
    if len(eps) != n or any(e not in (1, -1) for e in eps):
        raise ValueError(f"invalid sign vector {eps}")
    if len(tau) != n:
        raise ValueError("tau has wrong length")
    L, s = r.Lambda, r.s
    S = power(r.algebra.space, n)
    out = block_tuple([s * e for e in eps], S) + block_tuple([L] * n, S) - mix_n(L, n)
    return out - pushforward(perm_map(r.algebra.space, tau), mix_n(s, n))


def r_angle(r: RMatrix, n_plus_1: int) -> Tensor:
    """r^<n+1> = (r^(n), 0) + (0, -r) for odd n, (r^(n), 0) + (0, r^21) for even n."""
    r.require_quasitriangular()
    n = n_plus_1 - 1
    rn = r_n(r, n)
    last = -r.tensor if n % 2 else r.r21
    S = direct_sum([rn.space, r.algebra.space])
    T = power(r.algebra.space, n_plus_1)
    # flatten (g^n) + g to g^(n+1)
    out = direct_sum_embed(rn, 1, S) + direct_sum_embed(last, 2, S)
    return Tensor((T, T), out.entries)


# --------------------------------------------------------------------------
# J maps


def J_map(dbl: DoubleAlgebra, r: RMatrix, N: int) -> LinearMap:
    """J_N: d^N -> g^N, correct on g_(N).

    J_2n(a_1,a_1,...,a_n,a_n) = (p+a_1..p+a_n, p-a_n..p-a_1)
    J_{2n-1}(a_1,a_1,...,a_{n-1},a_{n-1},x) = (p+a_1..p+a_{n-1}, x, p-a_{n-1}..p-a_1)
    """
    from .double import p_plus_minus
    if cobracket_from_r(dbl.g, r.tensor, check=False) != dbl.bialgebra:
        raise CobracketMismatch("delta_r differs from the double's cobracket")
    pm = p_plus_minus(dbl, r)
    m, md = dbl.g.dim, dbl.space.dim
    S = power(dbl.space, N)
    T = power(dbl.g.space, N)
    M = [[ZERO] * S.dim for _ in range(T.dim)]

    def put(target_slot, src_slot, P):
        for i in range(m):
            for c in range(md):
                M[(target_slot - 1) * m + i][(src_slot - 1) * md + c] = P.matrix[i][c]

    if N % 2 == 0:
        n = N // 2
        for i in range(1, n + 1):
            put(i, 2 * i - 1, pm.p_plus)
            put(N + 1 - i, 2 * i - 1, pm.p_minus)
    else:
        n = (N + 1) // 2
        for i in range(1, n):
            put(i, 2 * i - 1, pm.p_plus)
            put(N + 1 - i, 2 * i - 1, pm.p_minus)
        for i in range(m):
            M[(n - 1) * m + i][(N - 1) * md + i] = ONE
    return LinearMap(S, T, M)


@dataclass
class JReport:
    N: int
    hom_ok: bool
    invertible: bool
    factorizable: bool


def J_maps(dbl: DoubleAlgebra, r: RMatrix, N: int) -> JReport:
    spl = build_polyuble(dbl, N)
    J = J_map(dbl, r, N)
    P = r_power(r, N)
    cb_big = spl.cobracket()
    cbn = cobracket_from_r(P.algebra, P.tensor, check=False)
    bs = spl.basis
    hom = True
    for a, b in itertools.combinations(bs, 2):
        if J(spl.ambient.bracket(a, b)) != P.algebra.bracket(J(a), J(b)):
            hom = False
    for a in bs:
        if pushforward(J, cb_big(a)) != cbn(J(a)):
            hom = False
    from .tensorspace import rank
    rk = rank([J(a).coords() for a in bs], P.algebra.dim)
    return JReport(N, hom, rk == P.algebra.dim, r.factorizable)


def p_2n_identity(dbl: DoubleAlgebra, r: RMatrix, n: int) -> bool:
    """p_2n(r_d^(n)) = r^(2n), p_2n(a) = (p+a_1..p+a_n, p-a_n..p-a_1)."""
    from .double import p_plus_minus
    pm = p_plus_minus(dbl, r)
    rd = RMatrix(dbl.total, dbl.r_d)
    m, md = dbl.g.dim, dbl.space.dim
    S, T = power(dbl.space, n), power(dbl.g.space, 2 * n)
    M = [[ZERO] * S.dim for _ in range(T.dim)]
    for i in range(1, n + 1):
        for a in range(m):
            for c in range(md):
                M[(i - 1) * m + a][(i - 1) * md + c] = pm.p_plus.matrix[a][c]
                M[(2 * n - i) * m + a][(i - 1) * md + c] = pm.p_minus.matrix[a][c]
    p2n = LinearMap(S, T, M)
    return pushforward(p2n, r_n(rd, n)) == r_n(r, 2 * n)


def step_by_step_identity(r: RMatrix, n: int, j: int) -> bool:
    """Mix^n(r) = (Mix^j, 0) + (0, Mix^{n-j}) + sum_i (r_+xi_i x j, 0) ^ (0, x_i x (n-j))."""
    g = r.algebra
    S = power(g.space, n)
    Sj, Snj = power(g.space, j), power(g.space, n - j)
    emb_j = LinearMap(Sj, S, [[ONE if (rr == c) else ZERO for c in range(Sj.dim)] for rr in range(S.dim)])
    off = Sj.dim
    emb_r = LinearMap(Snj, S, [[ONE if (rr == c + off) else ZERO for c in range(Snj.dim)]
                               for rr in range(S.dim)])
    total = Tensor.zero(S, 2)
    if j > 1:
        total = total + pushforward(emb_j, mix_n(r.tensor, j))
    if n - j > 1:
        total = total + pushforward(emb_r, mix_n(r.tensor, n - j))
    # cross term from r = sum_{i<=l} x_i (x) r_+(xi_i)
    from .bialg import _preimages
    fm = r.f_minus
    basis = [list(row) for row in fm.rows]
    from .tensorspace import rank
    nd = g.dim
    for i in range(nd):
        e = [ONE if c == i else ZERO for c in range(nd)]
        if rank(basis + [e], nd) > len(basis):
            basis.append(e)
    Bi = inverse([[basis[c][rr] for c in range(nd)] for rr in range(nd)]) if nd else []
    for i in range(fm.dim):
        yp = r.r_plus(Tensor.vector(dual(g.space), Bi[i]))
        x = Tensor.vector(g.space, basis[i])
        lv = Tensor.vector(S, yp.coords() * j + [ZERO] * Snj.dim)
        rv = Tensor.vector(S, [ZERO] * Sj.dim + x.coords() * (n - j))
        total = total + wedge(lv, rv)
    return total == mix_n(r.tensor, n)
