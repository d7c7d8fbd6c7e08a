"""Hilbert-additivity and round-trip checks for a hypersurface pair.

Every check returns a CheckResult; nothing here raises on a failed identity."""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import modules as md
from . import pipeline as pl
from .groebner import FreeModule
from .poly import Poly, PolyRing


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def to_json(self):
        return {"check": self.name, "ok": self.ok, "detail": self.detail}


def _same_hilbert(A, B, window):
    ha, hb = A.hilbert(window), B.hilbert(window)
    return ha.polynomial == hb.polynomial and ha.table == hb.table


def restricted_kernel(pair: pl.CIPair) -> md.PresentedModule:
    """T_{X∩Y,P^N} ⊗ O_X before killing torsion."""
    K = pl.ambient_kernel(pair)
    M = md.image_module(K.gens, K.free, (), False)
    return md.restrict(M, pair.ideal_X(), integral=True)


def check_pair(pair: pl.CIPair, window=(-2, 5)) -> list:
    out = []
    net = pl.net_log_tangent(pair)
    tor = pl.tor_defect(pair)
    hp_net, hp_tor = net.hilbert_polynomial(), tor.hilbert_polynomial()
    reduced = pl.is_reduced_section(pair)

    if reduced:
        refl = pl.reflexive_log_tangent(pair, check_reduced=False)
        hp_refl = refl.hilbert_polynomial()
        ok = hp_refl == hp_net + hp_tor
        t0 = max(refl.hilbert(window).agreement, net.hilbert(window).agreement, tor.hilbert(window).agreement)
        hf_ok = all(refl.hf(t) == net.hf(t) + tor.hf(t) for t in range(max(t0, window[0]), window[1] + 1))
        out.append(CheckResult("tor-sequence", ok and hf_ok,
                               f"HP(refl) = {hp_refl}, HP(net) + HP(Tor1) = {hp_net + hp_tor}, HF from t = {t0}"))
        dd = md.double_dual(refl)
        out.append(CheckResult("double-dual-idempotent", _same_hilbert(dd, refl, window), str(dd.hilbert_polynomial())))

    if pair.r == 1 and pair.s == 1:
        rd = pl.residue_cokernel(pair)
        ok = all(rd.T_X.hf(t) - net.hf(t) == rd.N_XY.hf(t) for t in range(window[0], window[1] + 1))
        out.append(CheckResult("residue-sequence", ok,
                               f"HP(T_X) - HP(net) = {rd.T_X.hilbert_polynomial() - hp_net}, HP(N) = {rd.N_XY.hilbert_polynomial()}"))
        ok = rd.N_XY.hilbert_polynomial() - hp_tor == rd.J_D.hilbert_polynomial()
        out.append(CheckResult("jacobian-cokernel", ok,
                               f"HP(N) - HP(Tor1) = {rd.N_XY.hilbert_polynomial() - hp_tor}, HP(J_D(D)) = {rd.J_D.hilbert_polynomial()}"))
        if reduced:
            ok = rd.T_log.hilbert_polynomial() == hp_refl
            out.append(CheckResult("log-tangent-models", ok,
                                   f"residue model {rd.T_log.hilbert_polynomial()} vs hull {hp_refl}"))
            ok = rd.T_X.hilbert_polynomial() - rd.T_log.hilbert_polynomial() == rd.J_D.hilbert_polynomial()
            out.append(CheckResult("log-residue-sequence", ok, ""))

    M = restricted_kernel(pair)
    tf = md.torsion_free_quotient(M)
    tors = md.torsion_submodule(M)
    ok = md.torsion_submodule(tf).is_zero() and tf.hilbert_polynomial() == hp_net
    out.append(CheckResult("torsion-free-quotient", ok, f"HP(tf) = {tf.hilbert_polynomial()}"))
    # the torsion of K ⊗ O_X is the image of Tor_2(B, O_X)
    hp_tor2 = md.tor(pl.ambient_cokernel(pair), pair.ideal_X(), 2).hilbert_polynomial()
    ok = M.hilbert_polynomial() == tf.hilbert_polynomial() + tors.hilbert_polynomial() \
        and tors.hilbert_polynomial() == hp_tor2
    out.append(CheckResult("torsion-sequence", ok,
                           f"HP(tors) = {tors.hilbert_polynomial()}, HP(Tor2) = {hp_tor2}"))

    tab = md.sheaf_cohomology(net, range(pair.dim_X + 1), range(window[0], window[1] + 1))
    ok = all(sum((-1) ** i * tab.values[(i, t)] for i in range(pair.dim_X + 1)) == hp_net(t)
             for t in range(window[0], window[1] + 1))
    out.append(CheckResult("euler-characteristic", ok, ""))

    out.extend(generator_independence(pair, window))
    return out


def generator_independence(pair: pl.CIPair, window=(-2, 5), scales=(3, -2)) -> list:
    lx = [scales[0]] * pair.r
    ly = [scales[1]] * pair.s
    other = pair.scaled(lx, ly)
    out = []
    a, b = pl.net_log_tangent(pair), pl.net_log_tangent(other)
    out.append(CheckResult("scaling-net", _same_hilbert(a, b, window), ""))
    if pl.is_reduced_section(pair):
        ra, rb = md.double_dual(a), md.double_dual(b)
        out.append(CheckResult("scaling-reflexive", _same_hilbert(ra, rb, window), ""))
    if pair.r > 1 or pair.s > 1:
        perm = pl.CIPair(pair.ring, tuple(reversed(pair.X)), tuple(reversed(pair.Y)))
        c = pl.net_log_tangent(perm)
        out.append(CheckResult("permutation-net", _same_hilbert(a, c, window), ""))
    if pair.r == 1 and pair.s == 1 and pair.X[0].degree() == 3 and pair.ring.nvars == 4:
        s1 = pl.section_singularities(pair.X[0], pair.Y[0])
        s2 = pl.section_singularities(other.X[0], other.Y[0])
        ok = s1.multiplicities == s2.multiplicities and s1.label == s2.label
        out.append(CheckResult("scaling-section", ok, s1.label))
    return out


def linear_reduction(F_text, G_text, n, N) -> CheckResult:
    """Inputs in x0..xn: P^n versus P^N with the extra coordinates cut out on X."""
    from .poly import standard_ring

    Rn = standard_ring(n + 1)
    RN = standard_ring(N + 1)
    small = pl.CIPair.parse(Rn, [F_text], [G_text])
    extra = [f"x{i}" for i in range(n + 1, N + 1)]
    big = pl.CIPair.parse(RN, [F_text] + extra, [G_text])
    a, b = pl.net_log_tangent(small), pl.net_log_tangent(big)
    ha, hb = a.hilbert((-2, 5)), b.hilbert((-2, 5))
    return CheckResult("linear-reduction", ha.polynomial == hb.polynomial and ha.table == hb.table,
                       f"{ha.polynomial} vs {hb.polynomial}")


# ------------------------------------------------------------------ random pairs

def random_form(ring: PolyRing, d: int, rng: random.Random, height=3, density=0.6) -> Poly:
    f = ring.zero()
    for e in ring.monomials_of_degree(d):
        if rng.random() < density:
            c = rng.randint(-height, height)
            if c:
                f = f + ring.monomial(e, c)
    return f


def random_pair(ring: PolyRing, d: int, rng: random.Random, attempts=100) -> pl.CIPair:
    """A valid (F, H) pair with F smooth of degree d and D reduced."""
    for _ in range(attempts):
        F = random_form(ring, d, rng)
        H = random_form(ring, 1, rng, height=2, density=0.8)
        if F.is_zero() or H.is_zero():
            continue
        pair = pl.CIPair(ring, (F,), (H,))
        try:
            pair.validate()
        except pl.PairError:
            continue
        if pl.is_reduced_section(pair):
            return pair
    raise pl.PairError("random", "no valid pair found")


def free_of(ring, twists, ideal=()):
    return md.free_module(FreeModule.from_twists(ring, twists), ideal, True)
