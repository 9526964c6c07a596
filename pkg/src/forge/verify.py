"""Identity suites run against a manifest; every result carries its anchor."""
from __future__ import annotations

import itertools
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable

from .bialg import (Cobracket, RMatrix, check_cocycle, check_twist, cobracket_from_r, cyb,
                    drinfeld_criterion, f_pm_pairing, is_ad_invariant, twist_cobracket,
                    _dual_algebra)
from .double import build_double, p_plus_minus, q_map, verify_manin
from .liealg import check_form_invariance, check_jacobi, schouten
from .manifest import Manifest
from .tensorspace import Tensor, from_skew_components

SUITES = ("jacobi", "cocycle", "cybe", "double", "polyuble", "rn", "twist", "fields", "fusion")

PROFILES = {
    "small": {"cybe": 2, "rn": 2, "phi": 3, "polyuble": 1, "twist_samples": 20, "factors": [2]},
    "full": {"cybe": 4, "rn": 3, "phi": 4, "polyuble": 2, "twist_samples": 100, "factors": [2, 3]},
}


@dataclass
class Result:
    suite: str
    anchor: str
    identity: str
    status: str          # PASS | FAIL | SKIP
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        d = f"  ({self.detail})" if self.detail else ""
        return f"{self.status:4s} [{self.anchor}] {self.suite}: {self.identity}{d}"


@dataclass
class Report:
    manifest: str
    profile: str
    results: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.status != "FAIL" for r in self.results)

    def counts(self) -> dict:
        c = {"PASS": 0, "FAIL": 0, "SKIP": 0}
        for r in self.results:
            c[r.status] += 1
        return c

    def to_doc(self) -> dict:
        return {"manifest": self.manifest, "profile": self.profile, "ok": self.ok,
                "counts": self.counts(),
                "results": [{k: v for k, v in asdict(r).items() if k != "seconds"}
                            for r in self.results]}


@dataclass
class Check:
    suite: str
    anchor: str
    identity: str
    fn: Callable


def threads() -> int:
    """Worker cap from FORGE_THREADS (default 1); garbage is an input error."""
    raw = os.environ.get("FORGE_THREADS", "1").strip() or "1"
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"FORGE_THREADS: expected a positive integer, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"FORGE_THREADS: expected a positive integer, got {raw!r}")
    return n


class Context:
    """Lazily built objects shared by the checks of one algebra/r-matrix pair."""

    def __init__(self, m: Manifest, r_name: str):
        self.m = m
        self.r_name = r_name
        alg, self.r_tensor = m.r_matrices[r_name]
        self.g = m.algebras[alg]
        self.alg_name = alg

    @cached_property
    def r(self) -> RMatrix:
        return RMatrix(self.g, self.r_tensor)

    @cached_property
    def dbl(self):
        return build_double(self.r.cobracket)

    @cached_property
    def action(self):
        for name, spec in sorted(self.m.actions.items()):
            if spec.algebra == self.alg_name and spec.side == "left":
                return self.m.lie_action(name)
        return None


def context(m: Manifest, r_name: str) -> Context:
    cache = m.__dict__.setdefault("_contexts", {})
    if r_name not in cache:
        cache[r_name] = Context(m, r_name)
    return cache[r_name]


def _n_max(m: Manifest, profile: str, key: str, default=None) -> int:
    base = PROFILES[profile].get(key, default)
    over = m.checks.get("n_max", {}).get(key)
    return min(base, over) if over is not None else base


def _bool(ok, detail_fail="", detail_ok=""):
    return (bool(ok), detail_ok if ok else detail_fail)


# --------------------------------------------------------------------------
# suites


def suite_jacobi(m: Manifest, profile: str):
    for name, g in sorted(m.algebras.items()):
        def jac(g=g):
            bad = check_jacobi(g)
            anti = [k for k, v in g.structure.entries.items() if g.structure[(k[1], k[0], k[2])] != -v]
            if anti:
                return False, f"not antisymmetric at {g.label_triple(anti[0])}"
            return _bool(not bad, "Jacobi fails on (" + ", ".join(g.label_triple(bad[0])) + ")" if bad else "")
        yield Check("jacobi", "subsec-Lie-bialgebras", f"Jacobi identity on {name}", jac)
        if g.form is not None:
            def inv(g=g):
                bad = check_form_invariance(g)
                return _bool(not bad, "form invariance fails on (" + ", ".join(g.label_triple(bad[0])) + ")" if bad else "")
            yield Check("jacobi", "eq-r-st-0", f"ad-invariance of the form on {name}", inv)


def _cocycle_checks(suite, anchor, label, cb_fn):
    def skew():
        cb = cb_fn()
        return all(v.is_skew() for v in cb.values), ""

    def dual_jacobi():
        cb = cb_fn()
        bad = check_jacobi(_dual_algebra(cb, check=False))
        return _bool(not bad, f"dual Jacobi fails on {bad[0]}" if bad else "")

    def cocycle():
        cb = cb_fn()
        bad = check_cocycle(cb)
        return _bool(not bad, "cocycle fails on (" + ", ".join(cb.algebra.label_triple(bad[0])) + ")" if bad else "")
    yield Check(suite, anchor, f"{label}: values skew", skew)
    yield Check(suite, "subsec-Lie-bialgebras", f"{label}: dual bracket satisfies Jacobi", dual_jacobi)
    yield Check(suite, "eq-cocycle-def", f"{label}: 1-cocycle", cocycle)


def suite_cocycle(m: Manifest, profile: str):
    for name, (alg, vals) in sorted(m.cobrackets.items()):
        g = m.algebras[alg]
        yield from _cocycle_checks("cocycle", "eq-cocycle-def", f"delta {name} on {alg}",
                                   lambda g=g, vals=vals: Cobracket(g, vals, check=False))
    for rn in sorted(m.r_matrices):
        ctx = context(m, rn)
        yield from _cocycle_checks("cocycle", "eq-delta-r", f"delta_r for {rn} on {ctx.alg_name}",
                                   lambda ctx=ctx: cobracket_from_r(ctx.g, ctx.r_tensor, check=False))


def suite_cybe(m: Manifest, profile: str):
    from .polyuble import r_n
    for rname in sorted(m.r_matrices):
        ctx = context(m, rname)
        tag = f"{rname} on {ctx.alg_name}"
        yield Check("cybe", "de-quasi-r", f"symmetric part of {tag} ad-invariant",
                    lambda ctx=ctx: (is_ad_invariant(ctx.g, ctx.r.s), ""))
        yield Check("cybe", "eq-CYB-r", f"CYB({tag}) = 0",
                    lambda ctx=ctx: _bool(cyb(ctx.g, ctx.r_tensor).is_zero(), "non-zero CYB"))
        nmax = _n_max(m, profile, "cybe")
        if ctx.g.dim > 3:
            nmax = min(nmax, 3)
        for n in range(2, nmax + 1):
            def chk(ctx=ctx, n=n):
                from .polyuble import power_lie
                return _bool(cyb(power_lie(ctx.g, n), r_n(ctx.r, n)).is_zero(), "non-zero CYB")
            yield Check("cybe", "eq-r-n-def", f"CYB(r^({n})) = 0 for {tag}", chk)
        yield Check("cybe", "de-r-on-d", f"CYB(r_d) = 0 on the double of {tag}",
                    lambda ctx=ctx: _bool(cyb(ctx.dbl.total, ctx.dbl.r_d).is_zero(), "non-zero CYB"))
        for n in range(2, min(3, nmax) + 1):
            def chk_d(ctx=ctx, n=n):
                from .polyuble import power_lie
                rd = ctx.dbl.rmatrix()
                return _bool(cyb(power_lie(ctx.dbl.total, n), r_n(rd, n)).is_zero(), "non-zero CYB")
            yield Check("cybe", "re-rd-n", f"CYB(r_d^({n})) = 0 for {tag}", chk_d)


def suite_double(m: Manifest, profile: str):
    for rname in sorted(m.r_matrices):
        ctx = context(m, rname)
        tag = f"{rname} on {ctx.alg_name}"

        def jac(ctx=ctx):
            bad = check_jacobi(ctx.dbl.total)
            return _bool(not bad, f"fails on {bad[:1]}")

        def inv(ctx=ctx):
            bad = check_form_invariance(ctx.dbl.total)
            return _bool(not bad, f"fails on {bad[:1]}")

        def manin(ctx=ctx):
            return _bool(verify_manin(ctx.dbl.total, ctx.dbl.g_sub, ctx.dbl.gstar_sub), "not Lagrangian")

        def signs(ctx=ctx):
            return _bool(ctx.dbl.restriction_signs_ok(), "restriction mismatch")

        def ppm(ctx=ctx):
            pm = p_plus_minus(ctx.dbl, ctx.r)
            return _bool(pm.homs_ok and pm.tensors_ok,
                         f"homs {pm.homs_ok}, tensors {pm.tensors_ok}")

        def qmap(ctx=ctx):
            qm = q_map(ctx.r)
            return _bool(qm.hom_ok and qm.r_ok, f"hom {qm.hom_ok}, r {qm.r_ok}")

        def drin(ctx=ctx):
            _, quasi = drinfeld_criterion(ctx.dbl, ctx.r_tensor)
            return _bool(quasi, "k_r not Lagrangian subalgebra")

        def fpm(ctx=ctx):
            fp = f_pm_pairing(ctx.g, ctx.r_tensor)
            return _bool(fp.nondegenerate and fp.dual_pair_ok and fp.expansion_ok,
                         f"nondegenerate {fp.nondegenerate}, dual pair {fp.dual_pair_ok}")
        yield Check("double", "eq-bra-d", f"Jacobi on the double of {tag}", jac)
        yield Check("double", "eq-pairing-dd", f"ad-invariance of <,>_d for {tag}", inv)
        yield Check("double", "de-lag-splitting", f"d = g + g* Manin triple for {tag}", manin)
        yield Check("double", "eq-delta-d-g-g", f"delta_d|g = delta_g, delta_d|g* = -delta_g* for {tag}", signs)
        yield Check("double", "le-drinfi-r-0", f"Drinfeld criterion for {tag}", drin)
        yield Check("double", "eq-r-ppm", f"p_+(r_d) = r, p_-(r_d) = -r^21 for {tag}", ppm)
        yield Check("double", "le-lpm-dual", f"f_- and f_+ in duality for {tag}", fpm)
        yield Check("double", "le-rr-quasi", f"q(r_(d_f-)) = r for {tag}", qmap)


def suite_polyuble(m: Manifest, profile: str):
    from .polyuble import (build_polyuble, double_uble_r, identifications, t_mixed_twist_report,
                           uble_mixed_twist)
    for rname in sorted(m.r_matrices):
        ctx = context(m, rname)
        tag = f"{rname} on {ctx.alg_name}"
        nmax = _n_max(m, profile, "polyuble")
        for N in range(1, nmax + 2):
            yield Check("polyuble", "de-uble", f"g_({N}) + g*_({N}) Lagrangian splitting for {tag}",
                        lambda ctx=ctx, N=N: _bool(build_polyuble(ctx.dbl, N).manin_ok(), "not Lagrangian"))
        for n in range(1, nmax + 1):
            def tn(ctx=ctx, n=n):
                rep = t_mixed_twist_report(ctx.dbl, n)
                bad = [k for k, v in rep.items() if not v]
                return _bool(not bad, f"fails under {bad}")
            yield Check("polyuble", "eq-t-n", f"t_{n + 1} mixed twisting element, n={n}, {tag}", tn)
            yield Check("polyuble", "le-double-uble-r",
                        f"r_(d^{n + 1}) = Alt^{n + 1}(r_d) - t_{n + 1} for {tag}",
                        lambda ctx=ctx, n=n: _bool(double_uble_r(ctx.dbl, n + 1), "tensor mismatch"))

            def um(ctx=ctx, n=n):
                bad = [i.name for i in identifications(ctx.dbl, n) if not uble_mixed_twist(ctx.dbl, i)]
                return _bool(not bad, f"fails under {bad}")
            yield Check("polyuble", "le-uble-mixed-2", f"polyuble cobrackets are mixed twists, n={n}, {tag}", um)


def suite_rn(m: Manifest, profile: str):
    from .polyuble import (J_maps, diagonal_lambda_identity, p_2n_identity, phi_mk_verified,
                           power_lie, r_angle, r_eps_tau, zetaj_matches_dual)
    from .bialg import is_quasitriangular
    for rname in sorted(m.r_matrices):
        ctx = context(m, rname)
        tag = f"{rname} on {ctx.alg_name}"
        nmax = _n_max(m, profile, "rn")
        small = ctx.g.dim <= 3
        for n in range(1, nmax + 1):
            yield Check("rn", "eq-zetaj", f"zeta_j formula = dual bracket of (g^{n}, delta_r^({n})), {tag}",
                        lambda ctx=ctx, n=n: _bool(zetaj_matches_dual(ctx.r, n), "mismatch"))
        nphi = _n_max(m, profile, "phi") if small else min(nmax, 3)
        for n in range(1, nphi + 1):
            def phis(ctx=ctx, n=n):
                bad = [(mm, k) for mm in range(1, n + 1) for k in range(1, mm + 1)
                       if not phi_mk_verified(ctx.r, mm, k, n)]
                return _bool(not bad, f"fails for (m,k) = {bad[:1]}")
            yield Check("rn", "eq-phi-mk", f"phi_(m,k) bialgebra homs into g^{n}, {tag}", phis)
        for N in range(2, min(nmax, 3) + 2):
            def jn(ctx=ctx, N=N):
                rep = J_maps(ctx.dbl, ctx.r, N)
                ok = rep.hom_ok and rep.invertible == rep.factorizable
                return _bool(ok, f"hom {rep.hom_ok}, invertible {rep.invertible}",
                             f"invertible {rep.invertible}, factorizable {rep.factorizable}")
            yield Check("rn", "pr-uble-mixed-power", f"J_{N} bialgebra hom, iso when factorizable, {tag}", jn)
        for n in range(1, min(nmax, 2) + 1):
            yield Check("rn", "le-dn-g2n", f"p_{2 * n}(r_d^({n})) = r^({2 * n}) for {tag}",
                        lambda ctx=ctx, n=n: _bool(p_2n_identity(ctx.dbl, ctx.r, n), "mismatch"))
        for n in range(2, _n_max(m, profile, "phi") + 1):
            yield Check("rn", "eq-diagonal-Lam", f"diag(Lambda) = (Lambda,...) - Mix^{n}(Lambda), {tag}",
                        lambda ctx=ctx, n=n: _bool(diagonal_lambda_identity(ctx.r, n), "mismatch"))
        for n in range(2, min(nmax, 3) + 1):
            def eps(ctx=ctx, n=n):
                G = power_lie(ctx.g, n)
                bad = []
                for signs in itertools.product((1, -1), repeat=n):
                    for tau in itertools.permutations(range(1, n + 1)):
                        if not is_quasitriangular(G, r_eps_tau(ctx.r, signs, tau, n)):
                            bad.append((signs, tau))
                return _bool(not bad, f"fails for {bad[:1]}")
            yield Check("rn", "eq-r-ep-tau-n", f"r_(eps,tau) quasitriangular on g^{n}, {tag}", eps)
        for n1 in range(2, min(nmax, 3) + 1):
            yield Check("rn", "eq-r-modify", f"CYB(r^<{n1}>) = 0 for {tag}",
                        lambda ctx=ctx, n1=n1: _bool(cyb(power_lie(ctx.g, n1), r_angle(ctx.r, n1)).is_zero(),
                                                     "non-zero CYB"))


def random_skew(g, rng: random.Random) -> Tensor:
    comps = {}
    for I in itertools.combinations(range(g.dim), 2):
        comps[I] = Fraction(rng.randint(-2, 2), rng.choice((1, 2)))
    return from_skew_components(g.space, 2, comps)


def suite_twist(m: Manifest, profile: str):
    samples = m.checks.get("twist_samples", PROFILES[profile]["twist_samples"])
    seed = m.checks.get("seed", 0)
    for rname in sorted(m.r_matrices):
        ctx = context(m, rname)
        tag = f"{rname} on {ctx.alg_name}"

        def ltr(ctx=ctx):
            rng = random.Random(seed)
            cb = ctx.r.cobracket
            bad, hits = [], 0
            for k in range(samples):
                t = random_skew(ctx.g, rng)
                tw = check_twist(cb, t)
                hits += tw
                if tw != cyb(ctx.g, ctx.r_tensor - t).is_zero():
                    bad.append(k)
            return _bool(not bad, f"disagree on samples {bad[:3]}",
                         f"{samples} samples, {hits} twisting")
        yield Check("twist", "le-t-r", f"t twisting iff r - t satisfies CYB, {tag}", ltr)

        def g1g1(ctx=ctx):
            rng = random.Random(seed + 1)
            cb = ctx.r.cobracket
            for _ in range(max(samples, 1)):
                t = random_skew(ctx.g, rng)
                if check_twist(cb, t):
                    tw = twist_cobracket(cb, t)          # asserts both forms of eq-g1g1 agree
                    return _bool(tw == cobracket_from_r(ctx.g, ctx.r_tensor - t, check=False),
                                 "delta_t != delta_(r-t)")
            return True, "zero twist only"
        yield Check("twist", "eq-g1g1", f"delta + [t, .] = delta_(r-t), {tag}", g1g1)


def _factor_list(m: Manifest, profile: str) -> list:
    base = PROFILES[profile]["factors"]
    over = m.checks.get("factors")
    return [n for n in base if over is None or n in over] or base[:1]


def suite_fields(m: Manifest, profile: str):
    from .polyfield import (apply_action, image_vanishes, poisson_action_violations, product_action,
                            project_blocks, replicate, is_poisson)
    from .polyuble import power_lie, r_power
    for rname in sorted(m.r_matrices):
        ctx = context(m, rname)
        tag = f"{rname} on {ctx.alg_name}"
        if ctx.action is None:
            yield Check("fields", "pr-admi-Poi-r", f"no chart action for {tag}", None)
            continue
        yield Check("fields", "le-admi-r-equi", f"lambda(s) = 0 on the chart, {tag}",
                    lambda ctx=ctx: _bool(image_vanishes(ctx.action, ctx.r.s), "symmetric part acts"))
        for n in _factor_list(m, profile):
            state = {}

            def setup(ctx=ctx, n=n, state=state):
                if "pi" not in state:
                    acts = replicate(ctx.action, n)
                    lam = product_action(acts, algebra=power_lie(ctx.g, n))
                    P = r_power(ctx.r, n)
                    state.update(acts=acts, lam=lam, P=P, pi=-apply_action(lam, P.tensor))
                return state

            def jac(setup=setup):
                return _bool(is_poisson(setup()["pi"]), "[pi, pi] != 0")

            def pact(setup=setup):
                s = setup()
                bad = poisson_action_violations(s["lam"], s["pi"], s["P"].rmatrix.cobracket)
                return _bool(not bad, f"fails for {bad[:1]}", f"{s['lam'].algebra.dim} basis vectors")

            def proj(setup=setup, ctx=ctx, n=n):
                s = setup()
                charts = [a.chart for a in s["acts"]]
                P2 = r_power(ctx.r, 2)
                for j, k in itertools.combinations(range(1, n + 1), 2):
                    pjk = project_blocks(s["pi"], charts, [j, k])
                    two = -apply_action(product_action([s["acts"][j - 1], s["acts"][k - 1]],
                                                       algebra=power_lie(ctx.g, 2)), P2.tensor)
                    if pjk is None:
                        return False, f"projection to ({j},{k}) not well defined"
                    if pjk != two:
                        return False, f"projection to ({j},{k}) differs"
                return True, ""
            yield Check("fields", "th-piY-Mix-r", f"[pi, pi] = 0 for pi = -lambda(r^({n})), {tag}", jac)
            yield Check("fields", "de-Poisson-space", f"[lambda(x), pi] = lambda(delta x) on g^{n}, {tag}", pact)
            if n > 2:
                yield Check("fields", "pr-n-mixed-product", f"pair projections of the {n}-fold product, {tag}", proj)
            if n == 2:
                def show(setup=setup):
                    s = setup()
                    return True, repr(s["pi"])
                yield Check("fields", "de-mixed-general", f"two-fold bivector -lambda(r^(2)), {tag}", show)


def suite_fusion(m: Manifest, profile: str):
    from .polyfield import (apply_action, fusion_associative, fusion_square, poisson_from_quasi,
                            quasi_correspond, replicate, step_by_step, tau_fusion, fusion, twist_space)
    for rname in sorted(m.r_matrices):
        ctx = context(m, rname)
        tag = f"{rname} on {ctx.alg_name}"
        if ctx.action is None:
            yield Check("fusion", "de-mixed-product-r", f"no chart action for {tag}", None)
            continue
        three = 3 in _factor_list(m, profile)
        n = 3 if three else 2
        state = {}

        def setup(ctx=ctx, n=n, state=state):
            if "pis" not in state:
                acts = replicate(ctx.action, n)
                pis = [-apply_action(a, ctx.r.Lambda) for a in acts]
                state.update(acts=acts, pis=pis)
            return state["pis"], state["acts"]
        if three:
            yield Check("fusion", "re-step-by-step", f"fusion associativity on 3 factors, {tag}",
                        lambda ctx=ctx, setup=setup: _bool(fusion_associative(*setup(), ctx.r), "orders differ"))

        def sbs(ctx=ctx, setup=setup, n=n):
            pis, acts = setup()
            bad = [j for j in range(1, n) if not step_by_step(pis, acts, ctx.r, j)]
            return _bool(not bad, f"fails at j = {bad}")
        yield Check("fusion", "re-step-by-step", f"pi_Y as successive 2-fold mixed products, {tag}", sbs)

        def quasi(ctx=ctx, setup=setup):
            pis, acts = setup()
            fu = fusion(pis, acts, ctx.r)
            Q = quasi_correspond(fu.pi, fu.diag, ctx.r)
            return _bool(poisson_from_quasi(Q, fu.diag, ctx.r) == fu.pi, "round trip differs")
        yield Check("fusion", "le-quasi-twisting", f"[Q,Q] = lambda(phi_s), Q invariant, round trip, {tag}", quasi)

        def square(ctx=ctx, setup=setup):
            pis, acts = setup()
            rep = fusion_square(pis[:2], acts[:2], ctx.r)
            return _bool(rep.commutes and rep.tensor_identity, "square does not commute")
        yield Check("fusion", "pr-functors-commute", f"Res/Fus square on 2 factors, {tag}", square)

        def tau(ctx=ctx, setup=setup):
            from .polyuble import mix_n, perm_map
            from .tensorspace import pushforward
            from .polyfield import product_action
            from .polyuble import power_lie
            pis, acts = setup()
            base = fusion(pis[:2], acts[:2], ctx.r).pi
            tf = tau_fusion(pis[:2], acts[:2], ctx.r, (2, 1)).pi
            lam = product_action(acts[:2], algebra=power_lie(ctx.g, 2))
            Ms = mix_n(ctx.r.s, 2)
            diff = pushforward(perm_map(ctx.g.space, (2, 1)), Ms) - Ms
            return _bool(tf - base == apply_action(lam, diff), "pi^tau - pi mismatch")
        yield Check("fusion", "re-fusion-order", f"tau-fusion for tau = (1 2), {tag}", tau)

        def tw(ctx=ctx, setup=setup):
            rng = random.Random(7)
            act = setup()[1][0]
            pi = setup()[0][0]
            for _ in range(200):
                t = random_skew(ctx.g, rng)
                if not t.is_zero() and check_twist(ctx.r.cobracket, t):
                    new = twist_space(pi, act, t, ctx.r.cobracket)
                    want = -apply_action(act, RMatrix(ctx.g, ctx.r_tensor - t).Lambda)
                    return _bool(new == want, "pi + lambda(t) != -lambda(r - t)")
            return True, "no non-zero twist sampled"
        yield Check("fusion", "le-twisting", f"twisting -lambda(r) by t gives -lambda(r - t), {tag}", tw)


# every label a report line may carry
ANCHORS = frozenset({
    "subsec-Lie-bialgebras", "eq-r-st-0", "eq-delta-r", "eq-cocycle-def", "de-quasi-r", "eq-CYB-r",
    "eq-r-n-def", "de-r-on-d", "re-rd-n", "eq-bra-d", "eq-pairing-dd", "de-lag-splitting",
    "eq-delta-d-g-g", "le-drinfi-r-0", "eq-r-ppm", "le-lpm-dual", "le-rr-quasi", "de-uble", "eq-t-n",
    "le-double-uble-r", "le-uble-mixed-2", "th-uble-r", "eq-zetaj", "eq-phi-mk", "pr-uble-mixed-power",
    "le-dn-g2n", "eq-diagonal-Lam", "eq-r-ep-tau-n", "eq-r-modify", "le-t-r", "eq-g1g1",
    "pr-admi-Poi-r", "le-admi-r-equi", "th-piY-Mix-r", "de-Poisson-space", "pr-n-mixed-product",
    "de-mixed-general", "de-mixed-product-r", "re-step-by-step", "le-quasi-twisting",
    "pr-functors-commute", "re-fusion-order", "le-twisting",
})


SUITE_FUNCS = {
    "jacobi": suite_jacobi, "cocycle": suite_cocycle, "cybe": suite_cybe, "double": suite_double,
    "polyuble": suite_polyuble, "rn": suite_rn, "twist": suite_twist, "fields": suite_fields,
    "fusion": suite_fusion,
}


SUITE_ANCHORS = {
    "jacobi": "subsec-Lie-bialgebras", "cocycle": "eq-cocycle-def", "cybe": "eq-CYB-r",
    "double": "eq-bra-d", "polyuble": "de-uble", "rn": "th-uble-r", "twist": "le-t-r",
    "fields": "pr-admi-Poi-r", "fusion": "de-mixed-product-r",
}


def _run(check: Check) -> Result:
    if check.fn is None:
        return Result(check.suite, check.anchor, check.identity, "SKIP")
    t0 = time.perf_counter()
    try:
        ok, detail = check.fn()
        status = "PASS" if ok else "FAIL"
    except Exception as exc:      # a failed precondition is a failed identity
        status, detail = "FAIL", f"{type(exc).__name__}: {exc}"
    return Result(check.suite, check.anchor, check.identity, status, detail,
                  time.perf_counter() - t0)


def run(m: Manifest, suites=("all",), profile: str = "full", source: str = "") -> Report:
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    wanted = list(SUITES) if "all" in suites else list(suites)
    for s in wanted:
        if s not in SUITE_FUNCS:
            raise ValueError(f"unknown suite {s!r}")
    broken = any(check_jacobi(g) for g in m.algebras.values())
    checks = []
    if broken:
        checks = list(suite_jacobi(m, profile))
        checks += [Check(s, SUITE_ANCHORS[s], "skipped: an algebra fails Jacobi", None)
                   for s in wanted if s != "jacobi"]
    else:
        for s in wanted:
            checks += list(SUITE_FUNCS[s](m, profile))
    report = Report(source, profile)
    n = threads()
    if n == 1:
        report.results = [_run(c) for c in checks]
    else:
        with ThreadPoolExecutor(max_workers=n) as ex:
            report.results = list(ex.map(_run, checks))
    return report
