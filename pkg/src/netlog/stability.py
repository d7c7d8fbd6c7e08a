"""Stability certificates on the quadric, restriction evidence on cubics and
small numerical characterizations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import modules as md
from . import curves as cv
from .groebner import FreeModule
from .hilbert import HilbertPolynomial
from .linalg import solve
from .modules import PresentedModule
from .poly import Poly, PolyRing


class StabilityError(ValueError):
    pass


# ------------------------------------------------------------------ line bundles on Q

QUADRIC = "x0*x3 - x1*x2"


def quadric_equation(ring: PolyRing) -> Poly:
    return ring.parse(QUADRIC)


def line_bundle_on_quadric(ring: PolyRing, a: int, b: int) -> PresentedModule:
    """A module with sheaf O_Q(a, b).

    O(a,b) = I_{A0}^{b-a}(b) for a <= b and I_{B0}^{a-b}(a) otherwise, where
    A0 = V(x2, x3) has class (1,0) and B0 = V(x1, x3) has class (0,1)."""
    x = ring.gens
    Q = quadric_equation(ring)
    if a <= b:
        k, tw, base = b - a, b, (x[2], x[3])
    else:
        k, tw, base = a - b, a, (x[1], x[3])
    gens = _ideal_power(ring, base, k)
    G = FreeModule(ring, (0,))
    M = md.image_module([(g,) for g in gens], G, (Q,), True, name=f"O({a},{b})")
    return M.twist(tw)


def _ideal_power(ring, base, k):
    out = [ring.one()]
    for _ in range(k):
        nxt = {}
        for f in out:
            for g in base:
                h = f * g
                nxt[str(h)] = h
        out = list(nxt.values())
    return out


def quadric_line_hp(a, b) -> HilbertPolynomial:
    """chi(O_Q(a,b)(t)) = (t + a + 1)(t + b + 1)."""
    return HilbertPolynomial((Fraction((a + 1) * (b + 1)), Fraction(a + b + 2), Fraction(1)))


# ------------------------------------------------------------------ Gieseker scan

MANDATORY = "a <= 1, b <= 1, a + b >= 0"


def _mandatory_cells():
    return [(a, b) for a in range(-1, 2) for b in range(-1, 2) if a + b >= 0]


@dataclass
class CellRecord:
    a: int
    b: int
    h0: int
    min_Z: int | None = None
    Z_prime: int | None = None
    P_F: HilbertPolynomial | None = None
    outcome: str = "no-section"
    section: list | None = None

    def to_json(self):
        return {
            "class": [self.a, self.b],
            "h0": self.h0,
            "min_Z": self.min_Z,
            "Z_prime": self.Z_prime,
            "P_F": str(self.P_F) if self.P_F is not None else None,
            "outcome": self.outcome,
            "section": self.section,
        }


@dataclass
class StabilityVerdict:
    polarization: str
    window: tuple
    cells: list
    verdict: str
    witness: CellRecord | None = None
    P_E: HilbertPolynomial | None = None
    notes: list = field(default_factory=list)

    def to_json(self):
        return {
            "polarization": self.polarization,
            "window": list(self.window),
            "P_E": str(self.P_E) if self.P_E is not None else None,
            "verdict": self.verdict,
            "witness": self.witness.to_json() if self.witness else None,
            "cells": [c.to_json() for c in self.cells if c.h0 > 0],
            "cells_examined": len(self.cells),
            "notes": list(self.notes),
        }

    def cell(self, a, b):
        for c in self.cells:
            if (c.a, c.b) == (a, b):
                return c
        return None


def _lex_less(p: HilbertPolynomial, q: HilbertPolynomial) -> bool:
    """p(t) < q(t) for t >> 0."""
    d = p - q
    if d.is_zero():
        return False
    return d.leading_coefficient() < 0


def gieseker_scan_quadric(E: PresentedModule, window=(-3, 3), c1=(1, 1), c2=None) -> StabilityVerdict:
    """Scan line subsheaves O(a,b) ⊗ I_Z of a rank-2 sheaf E on Q.

    For each class, h0(E** ⊗ O(-a,-b)) detects a sub line bundle of E**; its
    saturation in E is O(a,b) ⊗ I_Z with |Z| >= 1 unless the section already
    lands in E.  The reduced Hilbert polynomial of the subsheaf is compared
    with chi(E(t))/2."""
    ring = E.ring
    hp = E.hilbert_polynomial()
    if hp.coefficient(2) != 2:
        raise StabilityError("the scan expects a rank-2 sheaf on the quadric")
    P_E = hp.scale(Fraction(1, 2))
    if c2 is None:
        # chi(E(t)) = 2 chi(O(t)) + (c1·H) t + (c1^2 - c1 K)/2 - c2 with K = -2H
        c1H = int(hp.coefficient(1)) - 4
        const = hp.coefficient(0) - 2
        c1sq = 2 * c1[0] * c1[1]
        c2 = Fraction(c1sq + 2 * c1H, 2) - const
        c2 = int(c2)
    refl = md.double_dual(E)
    gamma = md.gamma_star(E) if E.embedding is not None else refl
    lo, hi = window
    cells = []
    witness = None
    notes = []
    failing = []
    for a in range(lo, hi + 1):
        for b in range(lo, hi + 1):
            L = line_bundle_on_quadric(ring, a, b)
            h0, basis = md.hom_degree(L, refl, 0)
            rec = CellRecord(a, b, h0)
            if h0:
                inside, _ = md.hom_degree(L, gamma, 0)
                rec.min_Z = 0 if inside else 1
                rec.Z_prime = c2 - (a * (c1[1] - b) + b * (c1[0] - a)) - rec.min_Z
                rec.P_F = quadric_line_hp(a, b) - HilbertPolynomial((Fraction(rec.min_Z),))
                rec.section = [[str(p) for p in v] for v in basis[0]]
                if rec.Z_prime < 0:
                    # the section vanishes along a curve; its saturation is another class
                    rec.outcome = "not-saturated"
                elif _lex_less(rec.P_F, P_E):
                    rec.outcome = "pass"
                else:
                    rec.outcome = "fail"
                    failing.append(rec)
            cells.append(rec)
    if failing:
        witness = max(failing, key=lambda r: (r.a, r.b))
    mandatory = set(_mandatory_cells())
    inconsistent = any(c.outcome == "not-saturated" and (c.a, c.b) in mandatory for c in cells)
    covered = all(lo <= a <= hi and lo <= b <= hi for a, b in _mandatory_cells())
    if witness is not None:
        verdict = "destabilized"
    elif not covered:
        verdict = "inconclusive"
        notes.append(f"window does not cover the mandatory region {MANDATORY}")
    elif inconsistent:
        verdict = "inconclusive"
        notes.append("a mandatory class has a section vanishing along a curve")
    else:
        verdict = "stable-certified-on-window"
        notes.append("certificate covers the scanned classes only")
    return StabilityVerdict("O_Q(1)", (lo, hi), cells, verdict, witness, P_E, notes)


def verify_witness(E: PresentedModule, rec: CellRecord) -> bool:
    """Recompute the section's image and both Hilbert polynomials from scratch."""
    ring = E.ring
    refl = md.double_dual(E)
    L = line_bundle_on_quadric(ring, rec.a, rec.b)
    _, basis = md.hom_degree(L, refl, 0)
    if not basis:
        return False
    vecs = basis[0]
    img = md.subquotient(vecs, list(refl.relations), refl.target, refl.ideal, True)
    if img.is_zero():
        return False
    if img.hilbert_polynomial() != quadric_line_hp(rec.a, rec.b):
        return False
    P_E = E.hilbert_polynomial().scale(Fraction(1, 2))
    P_F = quadric_line_hp(rec.a, rec.b) - HilbertPolynomial((Fraction(rec.min_Z),))
    return P_F == rec.P_F and (not _lex_less(P_F, P_E)) == (rec.outcome == "fail")


# ------------------------------------------------------------------ cubic evidence

def mu_evidence_cubic(E: PresentedModule, lines, divisor=()):
    """Splitting types of a rank-2 reflexive E along lines.

    A line is flagged when one summand has degree >= 2, which would put a
    positive-degree sub line bundle through it; h0(E) > 0 is flagged globally."""
    records = []
    for L in lines:
        st = cv.restrict_split(E, L)
        in_D = L.lies_on(divisor) if divisor else None
        flag = bool(st.degrees) and st.degrees[0] >= 2
        records.append(cv.SplitRecord(L.name, st, in_D, flag))
    h0 = md.h0(E, 0)
    return {"lines": records, "h0": h0, "global_flag": h0 > 0}


# ------------------------------------------------------------------ wedge formula

def _binom(n, k):
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def wedge_h0_formula(N: int, d: int, p: int, m: int) -> int:
    if not 1 <= p < N - 1:
        raise StabilityError(f"p = {p} outside 1 <= p < N - 1 = {N - 1}, where the intermediate h^1 vanish")
    total = 0
    for k in range(p + 1):
        sign = -1 if (p - k) % 2 else 1
        total += sign * comb(N, k) * (_binom(N + k * (d - 1) + m, N) - _binom(N + k * (d - 1) - d + m, N))
    return total


# ------------------------------------------------------------------ characterization test

@dataclass
class CharacterResult:
    value: bool
    h0_E1: int
    globally_generated: bool
    c2: object

    def to_json(self):
        return {"value": self.value, "h0_E(1)": self.h0_E1,
                "globally_generated": self.globally_generated, "c2": md._num(self.c2)}


def log_character_test(E: PresentedModule, surface: md.SurfaceData) -> CharacterResult:
    """Rank 2, c1 = 0, c2 = 9 on a cubic surface: is h0(E(1)) = 3 with E(1)
    globally generated?  c1^2 = 0 is assumed for the Chern bookkeeping."""
    rep = md.chern_report(E.hilbert_polynomial(), surface, c1_sq=0)
    if rep.rank != 2 or rep.c1_dot_H != 0 or rep.c2 != 9:
        raise StabilityError(f"needs rank 2, c1·H = 0, c2 = 9; got rank {rep.rank}, "
                             f"c1·H = {rep.c1_dot_H}, c2 = {rep.c2}")
    if E.embedding is None:
        E = md.double_dual(E)
    G = md.gamma_star(E)
    h01 = G.hf(1)
    emb = G.embedding
    deg1 = [v for v in emb.columns if emb.target.vector_degree(v) == 1]
    if deg1:
        U = md.image_module(deg1, emb.target, G.ideal, True)
        gg = U.hilbert_polynomial() == G.hilbert_polynomial()
    else:
        gg = False
    return CharacterResult(h01 == 3 and gg, h01, gg, rep.c2)


def twisted_line_sum(ring: PolyRing, F: Poly, line, k=3) -> PresentedModule:
    """O(kℓ) ⊕ O(-kℓ) on V(F) for a line ℓ given by two linear forms."""
    gens = _ideal_power(ring, tuple(line), k)
    neg = md.image_module([(g,) for g in gens], FreeModule(ring, (0,)), (F,), True, name=f"O(-{k}l)")
    pos = md.hom_dual(neg)
    return md.direct_sum(pos, neg, name=f"O({k}l)+O(-{k}l)")


# ------------------------------------------------------------------ recovering cubics

@dataclass
class Recovery:
    cubic: Poly | None
    family_dim: int = 0

    def to_json(self):
        return {"cubic": str(self.cubic) if self.cubic is not None else None, "family_dim": self.family_dim}


def recover_cubic_from_gradient(Q0: Poly, Q1: Poly, Q2: Poly) -> Recovery:
    """Solve ∂F/∂x_i = Q_i (i = 0, 1, 2) for a cubic F in four variables."""
    ring = Q0.ring
    cubics = ring.monomials_of_degree(3)
    quads = ring.monomials_of_degree(2)
    rows, rhs = [], []
    for i, Qi in enumerate((Q0, Q1, Q2)):
        if not Qi.is_zero() and (not Qi.is_homogeneous() or Qi.degree() != 2):
            raise StabilityError("inputs must be quadrics")
        for q in quads:
            row = {}
            for j, c in enumerate(cubics):
                if c[i] and tuple(c[l] - (l == i) for l in range(ring.nvars)) == q:
                    row[j] = ring.field(c[i])
            rows.append(row)
            rhs.append(Qi.coeff(q))
    res = solve(rows, rhs, range(len(cubics)))
    if res is None:
        return Recovery(None, 0)
    sol, kernel = res
    F = ring.zero()
    for j, c in sol.items():
        F = F + ring.monomial(cubics[j], c)
    return Recovery(F, len(kernel))


def gradient_triple(F: Poly):
    return tuple(F.derivative(i) for i in range(3))


def in_family(F: Poly, rec: Recovery) -> bool:
    """F - rec.cubic is a cubic in x3 alone (the kernel of the truncated gradient)."""
    if rec.cubic is None:
        return False
    diff = F - rec.cubic
    return all(e[0] == e[1] == e[2] == 0 for e in diff.terms)
