"""Brute-force cross-checks of the Gröbner engine against Macaulay-matrix ranks.

Everything here is independent of the Buchberger code path except for the
object under test; the oracle side only uses :mod:`netlog.linalg`."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import linalg
from .groebner import FreeModule, GradedMap, SubmoduleBasis, groebner, kernel_of_map
from .hilbert import module_numerator, series_coefficient
from .poly import PolyRing, standard_ring


@dataclass
class OracleCase:
    label: str
    nvars: int
    degrees: tuple
    gens: list
    quotient: tuple = ()
    mismatches: list = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self):
        return not self.mismatches


def random_form(ring: PolyRing, d: int, rng: random.Random, terms=3, height=3):
    f = ring.zero()
    if d < 0:
        return f
    mons = ring.monomials_of_degree(d)
    for e in rng.sample(mons, min(terms, len(mons))):
        c = rng.randint(-height, height)
        if c:
            f = f + ring.monomial(e, c)
    return f


def random_vector(ring, degrees, d, rng, terms=2):
    return tuple(random_form(ring, d - g, rng, terms) if d - g >= 0 else ring.zero() for g in degrees)


def _gb_quotient_dims(G: SubmoduleBasis, D):
    num = module_numerator(G.lead_monomials(), G.free.degrees, G.ring.nvars)
    return [series_coefficient(num, G.ring.nvars, d) for d in range(D + 1)]


def _key_row(v):
    row = {}
    for pos, p in enumerate(v):
        for e, c in p.terms.items():
            row[(pos, e)] = c
    return row


def check_submodule(case: OracleCase, rng: random.Random, D=8, probes=3):
    """Quotient dimensions and membership of a submodule, degree by degree."""
    ring = standard_ring(case.nvars)
    F = FreeModule(ring, case.degrees)
    G = groebner(SubmoduleBasis(F, case.gens, case.quotient), degree_cap=D, truncate=True)
    gb_dims = _gb_quotient_dims(G, D)
    for d in range(D + 1):
        rows = linalg.macaulay_rows(case.gens, case.degrees, d, case.quotient, case.nvars)
        ech = linalg._forward(rows)
        brute = linalg.free_dimension(case.degrees, d, case.nvars) - len(ech)
        case.checked += 1
        if brute != gb_dims[d]:
            case.mismatches.append(f"dim in degree {d}: gb {gb_dims[d]} vs brute {brute}")
        # members: random combinations of generators; probes: random vectors
        members = []
        for _ in range(probes):
            acc = F.zero_vector()
            for g in case.gens:
                gd = F.vector_degree(g)
                if gd is None or gd > d:
                    continue
                c = random_form(ring, d - gd, rng, 2)
                acc = tuple(a + c * p for a, p in zip(acc, g))
            members.append(acc)
        for v in members + [random_vector(ring, case.degrees, d, rng) for _ in range(probes)]:
            if all(p.is_zero() for p in v):
                continue
            want = linalg.in_span(ech, _key_row(v))
            got = G.contains(v)
            case.checked += 1
            if want != got:
                case.mismatches.append(f"membership in degree {d}: gb {got} vs brute {want}")
    return case


def check_kernel(case: OracleCase, target_degrees, D=8):
    """Kernel of the map whose columns are ``case.gens`` (in a free module with
    basis degrees ``target_degrees``), degree by degree up to D."""
    ring = standard_ring(case.nvars)
    tgt = FreeModule(ring, tuple(target_degrees))
    src_deg = tuple(tgt.vector_degree(c) for c in case.gens)
    src = FreeModule(ring, src_deg)
    phi = GradedMap.from_columns(src, tgt, case.gens)
    K = kernel_of_map(phi, case.quotient, degree_cap=D, truncate=True)
    for v in K.gens:
        img = phi.apply(v)
        if case.quotient:
            Iq = groebner(SubmoduleBasis(tgt, [], case.quotient))
            bad = not Iq.contains(img)
        else:
            bad = any(not p.is_zero() for p in img)
        if bad:
            case.mismatches.append("kernel generator does not map to zero")
    KG = groebner(SubmoduleBasis(src, K.gens, case.quotient), degree_cap=D, truncate=True)
    q = _gb_quotient_dims(KG, D)
    for d in range(D + 1):
        free_d = linalg.free_dimension(src_deg, d, case.nvars)
        if case.quotient:
            # over S/I the kernel is (K + I F) / I F
            free_d -= linalg.submodule_dimension([], src_deg, d, case.quotient, case.nvars)
        got = free_d - q[d]
        brute = linalg.kernel_dimension(case.gens, src_deg, tgt.degrees, d, case.nvars, case.quotient)
        case.checked += 1
        if got != brute:
            case.mismatches.append(f"kernel dim in degree {d}: gb {got} vs brute {brute}")
    return case


def random_case(index: int, rng: random.Random) -> tuple:
    """Alternate between ideals, submodules, kernels and quotient-ring kernels."""
    nvars = rng.randint(2, 4)
    ring = standard_ring(nvars)
    kind = index % 4
    if kind == 0:
        gens = [(random_form(ring, rng.randint(1, 4), rng),) for _ in range(rng.randint(1, 4))]
        return "ideal", OracleCase(f"ideal-{index}", nvars, (0,), [g for g in gens if not g[0].is_zero()])
    if kind == 1:
        degrees = tuple(rng.randint(0, 1) for _ in range(2))
        gens = []
        for _ in range(rng.randint(1, 3)):
            d = max(degrees) + rng.randint(0, 3)
            v = random_vector(ring, degrees, d, rng)
            if any(not p.is_zero() for p in v):
                gens.append(v)
        return "submodule", OracleCase(f"submodule-{index}", nvars, degrees, gens)
    target = (0,) if kind == 2 else (0, 0)
    cols = []
    for _ in range(rng.randint(2, 4)):
        v = random_vector(ring, target, rng.randint(1, 3), rng)
        if any(not p.is_zero() for p in v):
            cols.append(v)
    quotient = ()
    if kind == 3 and rng.random() < 0.5:
        quotient = (random_form(ring, 2, rng, 3),)
        if quotient[0].is_zero():
            quotient = ()
    return ("kernel", target), OracleCase(f"kernel-{index}", nvars, target, cols, quotient)


def run_cases(n=50, seed=0, D=8):
    rng = random.Random(seed)
    out = []
    i = 0
    while len(out) < n:
        kind, case = random_case(i, rng)
        i += 1
        if not case.gens:
            continue
        if isinstance(kind, tuple):
            check_kernel(case, kind[1], D)
        else:
            check_submodule(case, rng, D)
        out.append(case)
    return out
