"""Presented graded modules over S or S/I and the homological toolbox.

A :class:`PresentedModule` is coker(F1 -> F0) over S/I, stored as the
target free module F0 and a list of relation columns.  Modules that were
built as images inside a free module keep that embedding around; it is
what makes the torsion-free quotient and the module of twisted global
sections cheap to get at.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import groebner as gb
from .field import FieldSpec
from .groebner import FreeModule, GradedMap, SubmoduleBasis
from .hilbert import HilbertPolynomial, hilbert_data, module_numerator, series_coefficient
from .linalg import monomials, rank
from .poly import Poly, PolyRing


class ModuleError(ValueError):
    pass


class NotIntegral(ModuleError):
    """Torsion/dual constructions were asked for over a ring not declared a domain."""


def _nonzero(v):
    return any(not p.is_zero() for p in v)


@dataclass(eq=False)
class PresentedModule:
    ring: PolyRing
    ideal: tuple
    target: FreeModule
    relations: tuple
    integral: bool = False
    embedding: GradedMap | None = None
    name: str = ""
    _gb: object = field(default=None, repr=False)

    def __post_init__(self):
        self.ideal = tuple(f for f in self.ideal if not f.is_zero())
        self.relations = tuple(tuple(c) for c in self.relations if _nonzero(c))
        for c in self.relations:
            self.target.vector_degree(c)

    # ---------------------------------------------------------- basics
    @property
    def rank_F0(self):
        return self.target.rank

    def relation_basis(self) -> SubmoduleBasis:
        if self._gb is None:
            self._gb = gb.groebner(SubmoduleBasis(self.target, self.relations, self.ideal))
        return self._gb

    def presentation(self) -> GradedMap:
        degs = tuple(self.target.vector_degree(c) for c in self.relations)
        return GradedMap.from_columns(FreeModule(self.ring, degs), self.target, self.relations)

    def numerator(self):
        G = self.relation_basis()
        return module_numerator(G.lead_monomials(), self.target.degrees, self.ring.nvars)

    def hilbert(self, window=(0, 8)):
        return hilbert_data(self.numerator(), self.ring.nvars, window)

    def hilbert_polynomial(self) -> HilbertPolynomial:
        return self.hilbert((0, 0)).polynomial

    def hf(self, t) -> int:
        return series_coefficient(self.numerator(), self.ring.nvars, t)

    def is_zero(self) -> bool:
        return not self.numerator()

    def twist(self, k: int) -> "PresentedModule":
        """M(k)."""
        emb = None
        if self.embedding is not None:
            e = self.embedding
            emb = GradedMap(e.source.shift(k), e.target.shift(k), e.rows)
        return PresentedModule(self.ring, self.ideal, self.target.shift(k), self.relations,
                               self.integral, emb, self.name)

    def with_ideal(self, ideal, integral=None) -> "PresentedModule":
        return PresentedModule(self.ring, tuple(ideal), self.target, self.relations,
                               self.integral if integral is None else integral, None, self.name)

    # ---------------------------------------------------------- serialization
    def to_json(self):
        out = {
            "ring": self.ring.to_json(),
            "ideal": [str(f) for f in self.ideal],
            "degrees": list(self.target.degrees),
            "relations": [[str(p) for p in c] for c in self.relations],
            "integral": self.integral,
            "name": self.name,
        }
        if self.embedding is not None:
            out["embedding"] = {
                "target_degrees": list(self.embedding.target.degrees),
                "rows": [[str(p) for p in r] for r in self.embedding.rows],
            }
        return out

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data):
        ring = PolyRing.from_json(data["ring"])
        F0 = FreeModule(ring, tuple(data["degrees"]))
        rels = [tuple(ring.parse(s) for s in c) for c in data["relations"]]
        emb = None
        if "embedding" in data:
            G = FreeModule(ring, tuple(data["embedding"]["target_degrees"]))
            rows = [[ring.parse(s) for s in r] for r in data["embedding"]["rows"]]
            emb = GradedMap(F0, G, rows)
        return cls(ring, tuple(ring.parse(s) for s in data["ideal"]), F0, rels,
                   bool(data.get("integral", False)), emb, data.get("name", ""))


# -------------------------------------------------------------- constructors

def free_module(F: FreeModule, ideal=(), integral=False, name="") -> PresentedModule:
    emb = GradedMap.from_columns(F, F, [F.basis_vector(k) for k in range(F.rank)])
    return PresentedModule(F.ring, tuple(ideal), F, (), integral, emb, name)


def cokernel(phi: GradedMap, ideal=(), integral=False, name="") -> PresentedModule:
    phi.check_degrees()
    return PresentedModule(phi.ring, tuple(ideal), phi.target, tuple(phi.columns), integral, None, name)


def _vector_degrees(vectors, F: FreeModule):
    return tuple(F.vector_degree(v) for v in vectors)


def image_module(gens, G: FreeModule, ideal=(), integral=False, name="") -> PresentedModule:
    """The submodule of G/I·G generated by ``gens`` as a presented module."""
    gens = [tuple(g) for g in gens if _nonzero(g)]
    ideal = tuple(ideal)
    if ideal:
        base = gb.groebner(SubmoduleBasis(G, (), ideal))
        gens = [g for g in gens if not base.contains(g)]
    if gens:
        # keep a minimal generating set
        gens = list(gb.groebner(SubmoduleBasis(G, gens, ideal)).minimal_gens())
    F0 = FreeModule(G.ring, _vector_degrees(gens, G))
    psi = GradedMap.from_columns(F0, G, gens)
    rel = gb.kernel_of_map(psi, ideal).gens if gens else ()
    M = PresentedModule(G.ring, ideal, F0, rel, integral, psi, name)
    return M


def subquotient(gens, rels, G: FreeModule, ideal=(), integral=False, name="") -> PresentedModule:
    """(span(gens) + span(rels) + I·G) / (span(rels) + I·G)."""
    gens = [tuple(g) for g in gens if _nonzero(g)]
    rels = [tuple(r) for r in rels if _nonzero(r)]
    if not gens:
        return PresentedModule(G.ring, tuple(ideal), FreeModule(G.ring, ()), (), integral)
    F0 = FreeModule(G.ring, _vector_degrees(gens, G))
    if not rels:
        return image_module(gens, G, ideal, integral, name)
    Fr = FreeModule(G.ring, _vector_degrees(rels, G))
    phi = GradedMap.from_columns(F0 + Fr, G, gens + rels)
    K = gb.kernel_of_map(phi, ideal)
    n = F0.rank
    rel = [v[:n] for v in K.gens]
    return prune(PresentedModule(G.ring, tuple(ideal), F0, rel, integral, None, name))


def direct_sum(M: PresentedModule, N: PresentedModule, name="") -> PresentedModule:
    """M ⊕ N over the same ring and ideal; embeddings are combined block-diagonally."""
    if M.ring != N.ring or tuple(M.ideal) != tuple(N.ideal):
        raise ModuleError("direct sum needs a common ambient ring")
    ring = M.ring
    m, n = M.target.rank, N.target.rank
    z = ring.zero()
    rels = [tuple(c) + (z,) * n for c in M.relations] + [(z,) * m + tuple(c) for c in N.relations]
    emb = None
    if M.embedding is not None and N.embedding is not None:
        a, b = M.embedding, N.embedding
        cols = [tuple(c) + (z,) * b.target.rank for c in a.columns]
        cols += [(z,) * a.target.rank + tuple(c) for c in b.columns]
        emb = GradedMap.from_columns(M.target + N.target, a.target + b.target, cols)
    return PresentedModule(ring, M.ideal, M.target + N.target, rels, M.integral and N.integral, emb,
                           name or f"{M.name}+{N.name}")


class Subquotient:
    """(top + bottom)/bottom inside G/I·G, kept as two Gröbner bases.

    Hilbert data needs no syzygies: HF(top/bottom) = HF(G/bottom) - HF(G/top).
    A presentation is built only on request."""

    def __init__(self, gens, rels, G: FreeModule, ideal=(), integral=False, name=""):
        self.gens = [tuple(g) for g in gens if _nonzero(g)]
        self.rels = [tuple(r) for r in rels if _nonzero(r)]
        self.G = G
        self.ring = G.ring
        self.ideal = tuple(ideal)
        self.integral = integral
        self.name = name
        self._presented = None
        self._num = None

    def numerator(self):
        if self._num is None:
            top = gb.groebner(SubmoduleBasis(self.G, self.gens + self.rels, self.ideal))
            bot = gb.groebner(SubmoduleBasis(self.G, self.rels, self.ideal))
            n = self.ring.nvars
            a = module_numerator(bot.lead_monomials(), self.G.degrees, n)
            b = module_numerator(top.lead_monomials(), self.G.degrees, n)
            num = dict(a)
            for k, v in b.items():
                num[k] = num.get(k, 0) - v
            self._num = {k: v for k, v in num.items() if v}
        return self._num

    def hilbert(self, window=(0, 8)):
        return hilbert_data(self.numerator(), self.ring.nvars, window)

    def hilbert_polynomial(self):
        return self.hilbert((0, 0)).polynomial

    def hf(self, t):
        return series_coefficient(self.numerator(), self.ring.nvars, t)

    def is_zero(self):
        return not self.numerator()

    def presented(self) -> PresentedModule:
        if self._presented is None:
            self._presented = subquotient(self.gens, self.rels, self.G, self.ideal, self.integral, self.name)
        return self._presented


# -------------------------------------------------------------- pruning

def prune(M: PresentedModule) -> PresentedModule:
    """Minimal presentation: drop generators killed by a relation with a unit
    entry, then keep a minimal set of relations modulo the ideal."""
    F0 = M.target
    rels = [list(c) for c in M.relations]
    keep = list(range(F0.rank))
    emb_cols = None
    if M.embedding is not None:
        emb_cols = [list(c) for c in M.embedding.columns]
    ring = M.ring
    changed = True
    while changed:
        changed = False
        for j, col in enumerate(rels):
            piv = None
            for i in range(len(keep)):
                p = col[i]
                if not p.is_zero() and p.is_constant():
                    piv = i
                    break
            if piv is None:
                continue
            c = col[piv].constant_value()
            new = []
            for l, other in enumerate(rels):
                if l == j:
                    continue
                a = other[piv]
                if not a.is_zero():
                    f = a * (1 / c)
                    other = [o - f * x for o, x in zip(other, col)]
                new.append(other[:piv] + other[piv + 1:])
            rels = [r for r in new if any(not p.is_zero() for p in r)]
            del keep[piv]
            if emb_cols is not None:
                del emb_cols[piv]
            changed = True
            break
    F = FreeModule(ring, tuple(F0.degrees[i] for i in keep))
    rels = [tuple(r) for r in rels]
    if rels:
        rels = list(gb.groebner(SubmoduleBasis(F, rels, M.ideal)).minimal_gens())
    emb = None
    if emb_cols is not None:
        emb = GradedMap.from_columns(F, M.embedding.target, emb_cols)
    return PresentedModule(ring, M.ideal, F, rels, M.integral, emb, M.name)


# -------------------------------------------------------------- restriction / tensor

def restrict(M: PresentedModule, ideal, integral=False) -> PresentedModule:
    """M ⊗ S/I: same presentation, larger ambient ideal."""
    new = tuple(M.ideal) + tuple(f for f in ideal if not f.is_zero())
    return PresentedModule(M.ring, new, M.target, M.relations, integral, None, M.name)


def tensor(M: PresentedModule, N: PresentedModule) -> PresentedModule:
    """M ⊗_R N for modules over the same ring R."""
    if M.ring != N.ring:
        raise ModuleError("tensor product needs modules over one ring")
    ring = M.ring
    a, b = M.target.rank, N.target.rank
    degs = tuple(x + y for x in M.target.degrees for y in N.target.degrees)
    F = FreeModule(ring, degs)
    zero = ring.zero()
    rels = []
    for c in M.relations:
        for j in range(b):
            v = [zero] * (a * b)
            for i in range(a):
                v[i * b + j] = c[i]
            rels.append(tuple(v))
    for c in N.relations:
        for i in range(a):
            v = [zero] * (a * b)
            for j in range(b):
                v[i * b + j] = c[j]
            rels.append(tuple(v))
    ideal = tuple(M.ideal) + tuple(f for f in N.ideal if f not in M.ideal)
    return PresentedModule(ring, ideal, F, rels, M.integral and N.integral)


# -------------------------------------------------------------- resolutions

def as_S_module(M: PresentedModule) -> PresentedModule:
    """Forget the quotient ring: add I·e_k to the relations."""
    rels = list(M.relations)
    zero = M.ring.zero()
    for k in range(M.target.rank):
        for f in M.ideal:
            v = [zero] * M.target.rank
            v[k] = f
            rels.append(tuple(v))
    return PresentedModule(M.ring, (), M.target, rels, False, None, M.name)


def free_resolution(M: PresentedModule, max_length=None, degree_cap=None):
    """Minimal free resolution over the ambient ring of M (over S when M has
    no ideal).  Returns the list of differentials d_1, d_2, ... with
    d_i : F_i -> F_{i-1}; F_0 is ``differentials[0].target``.

    Over S/I the resolution is infinite, so ``max_length`` must be given."""
    M = prune(M)
    if M.ideal and max_length is None:
        raise ModuleError("resolutions over a quotient ring need max_length")
    if max_length is None:
        max_length = M.ring.nvars + 1
    diffs = []
    F = M.target
    cols = list(M.relations)
    for _ in range(max_length):
        if not cols:
            break
        src = FreeModule(M.ring, _vector_degrees(cols, F))
        d = GradedMap.from_columns(src, F, cols)
        diffs.append(d)
        K = gb.kernel_of_map(d, M.ideal, degree_cap)
        if not K.gens:
            break
        cols = list(gb.groebner(SubmoduleBasis(src, K.gens, M.ideal)).minimal_gens())
        F = src
    else:
        if cols:
            raise gb.CapExceeded("free resolution exceeded the requested length")
    return diffs, M.target


def betti_table(diffs, F0):
    """{(i, j): beta_ij}: number of degree-j generators of F_i."""
    out = {}
    for d in F0.degrees:
        out[(0, d)] = out.get((0, d), 0) + 1
    for i, d in enumerate(diffs, start=1):
        for deg in d.source.degrees:
            out[(i, deg)] = out.get((i, deg), 0) + 1
    return out


def _homology_dims(d_in: GradedMap | None, d_out: GradedMap | None, F: FreeModule, ideal, degrees):
    """dims of ker(d_out)/im(d_in) at F, degree by degree.  Either map may be None."""
    nv = F.ring.nvars
    if d_out is not None and not d_out.is_zero():
        K = gb.kernel_of_map(d_out, ideal)
        kgens = K.gens
    else:
        kgens = [F.basis_vector(k) for k in range(F.rank)]
    im_gens = list(d_in.columns) if d_in is not None else []
    Gk = gb.groebner(SubmoduleBasis(F, kgens, ideal))
    Gi = gb.groebner(SubmoduleBasis(F, im_gens, ideal))
    nk = module_numerator(Gk.lead_monomials(), F.degrees, nv)
    ni = module_numerator(Gi.lead_monomials(), F.degrees, nv)
    # dim(sub)_e = dim(F/I F)_e ... differences of quotients cancel the free part
    return {e: series_coefficient(ni, nv, e) - series_coefficient(nk, nv, e) for e in degrees}, (ni, nk)


def tor(M: PresentedModule, I, i: int):
    """Tor_i^S(M, S/I) as a presented module over S/I (M over S)."""
    if M.ideal:
        raise ModuleError("tor expects a module over the polynomial ring")
    I = tuple(I)
    if i == 0:
        return restrict(M, I)
    diffs, F0 = free_resolution(M)
    if i > len(diffs):
        return PresentedModule(M.ring, I, FreeModule(M.ring, ()), ())
    d_out = diffs[i - 1]
    d_in = diffs[i] if i < len(diffs) else None
    F = d_out.source
    K = gb.kernel_of_map(d_out, I)
    rels = list(d_in.columns) if d_in is not None else []
    return subquotient(K.gens, rels, F, I, name=f"Tor_{i}")


def ext_dims(M: PresentedModule, j: int, degrees, resolution=None):
    """dim Ext^j_S(M, S)_e for e in degrees (M regarded as an S-module)."""
    if resolution is None:
        resolution = free_resolution(as_S_module(M))
    diffs, F0 = resolution
    frees = [F0] + [d.source for d in diffs]
    if j > len(diffs):
        return {e: 0 for e in degrees}
    Fj = frees[j].dual()
    # complex:  F_{j-1}^* --d_j^T--> F_j^* --d_{j+1}^T--> F_{j+1}^*
    d_in = diffs[j - 1].transpose() if j >= 1 else None
    d_out = diffs[j].transpose() if j < len(diffs) else None
    dims, _ = _homology_dims(d_in, d_out, Fj, (), degrees)
    return dims


# -------------------------------------------------------------- cohomology

@dataclass
class CohomologyTable:
    values: dict            # (i, t) -> h^i
    dim: int                # dimension of the ambient projective space

    def to_json(self):
        return {f"h{i}({t})": v for (i, t), v in sorted(self.values.items())}


def sheaf_cohomology(M: PresentedModule, i_list, t_list, resolution=None) -> CohomologyTable:
    """h^i(M~(t)) on P^N, N = nvars - 1, by graded local duality:
    h^i(F(t)) = dim Ext^{N-i}_S(M, S)_{-t-N-1} for i >= 1 and
    h^0(F(t)) = HF_M(t) - dim Ext^{N+1}(...)_{-t-N-1} + dim Ext^N(...)_{-t-N-1}."""
    N = M.ring.nvars - 1
    if resolution is None:
        resolution = free_resolution(as_S_module(M))
    degs = [-t - N - 1 for t in t_list]
    cache = {}

    def ext(j):
        if j not in cache:
            cache[j] = ext_dims(M, j, degs, resolution) if 0 <= j <= N + 1 else {e: 0 for e in degs}
        return cache[j]

    vals = {}
    for i in i_list:
        for t in t_list:
            e = -t - N - 1
            if i == 0:
                vals[(0, t)] = M.hf(t) - ext(N + 1)[e] + ext(N)[e]
            elif 1 <= i <= N:
                vals[(i, t)] = ext(N - i)[e]
            else:
                vals[(i, t)] = 0
    return CohomologyTable(vals, N)


def h0(M: PresentedModule, t: int, resolution=None) -> int:
    return sheaf_cohomology(M, [0], [t], resolution).values[(0, t)]


def local_cohomology_defect(M: PresentedModule, t_list, resolution=None):
    """(dim H^0_m(M)_t, dim H^1_m(M)_t): by local duality these are the Ext^{N+1}
    and Ext^N dimensions in degree -t-N-1."""
    N = M.ring.nvars - 1
    if resolution is None:
        resolution = free_resolution(as_S_module(M))
    degs = [-t - N - 1 for t in t_list]
    e1 = ext_dims(M, N + 1, degs, resolution)
    e0 = ext_dims(M, N, degs, resolution)
    return {t: (e1[-t - N - 1], e0[-t - N - 1]) for t in t_list}


def gamma_star(M: PresentedModule, degree_cap=None) -> PresentedModule:
    """Module of twisted global sections of M~ for a module embedded in a free
    module over a ring of depth >= 2 (S, or S/I with I a complete intersection
    of dimension >= 2): the saturation of the image inside the free module."""
    if M.embedding is None:
        raise ModuleError("gamma_star needs a module embedded in a free module")
    emb = M.embedding
    G = emb.target
    U = SubmoduleBasis(G, emb.columns, M.ideal)
    sat = gb.saturate(U, M.ring.gens, degree_cap)
    return image_module(sat.basis_vectors(), G, M.ideal, M.integral, name=f"Gamma*({M.name})")


# -------------------------------------------------------------- duals and torsion

def _require_domain(M):
    if M.ideal and not M.integral:
        raise NotIntegral(
            "dual/torsion constructions need an integral ambient ring; "
            "declare the quotient ideal prime (integral=True) after checking it"
        )


def _dual_data(M: PresentedModule):
    """Generators psi: G -> F0^* of Hom(M, R) = ker(phi^T)."""
    F0s = M.target.dual()
    ring = M.ring
    if M.relations:
        phiT = M.presentation().transpose()
        K = gb.kernel_of_map(phiT, M.ideal)
        gens = K.gens
    else:
        gens = [F0s.basis_vector(k) for k in range(F0s.rank)]
    if M.ideal:
        base = gb.groebner(SubmoduleBasis(F0s, (), M.ideal))
        gens = [g for g in gens if not base.contains(g)]
    if gens:
        gens = list(gb.groebner(SubmoduleBasis(F0s, gens, M.ideal)).minimal_gens())
    Gsrc = FreeModule(ring, _vector_degrees(gens, F0s))
    return GradedMap.from_columns(Gsrc, F0s, gens)


def hom_dual(M: PresentedModule) -> PresentedModule:
    """Hom_R(M, R) as the submodule ker(phi^T) of F0^*."""
    _require_domain(M)
    psi = _dual_data(M)
    if psi.source.rank == 0:
        return PresentedModule(M.ring, M.ideal, FreeModule(M.ring, ()), (), M.integral, None, f"{M.name}*")
    return image_module(psi.columns, psi.target, M.ideal, M.integral, name=f"{M.name}*")


def double_dual(M: PresentedModule) -> PresentedModule:
    return hom_dual(hom_dual(M))


def natural_map_to_double_dual(M: PresentedModule) -> GradedMap:
    """F0 -> G^*, the transpose of the generators psi: G -> F0^* of M^*;
    it induces M -> M**."""
    _require_domain(M)
    psi = _dual_data(M)
    return psi.transpose()


def torsion_free_quotient(M: PresentedModule) -> PresentedModule:
    """Image of M in M**, i.e. M modulo its torsion submodule."""
    if M.embedding is not None:
        return M
    T = natural_map_to_double_dual(M)
    if T.target.rank == 0:
        return PresentedModule(M.ring, M.ideal, FreeModule(M.ring, ()), (), M.integral)
    return image_module(T.columns, T.target, M.ideal, M.integral, name=f"tf({M.name})")


def torsion_submodule(M: PresentedModule) -> PresentedModule:
    """ker(M -> M**) as a subquotient of F0."""
    _require_domain(M)
    T = natural_map_to_double_dual(M)
    if T.target.rank == 0:
        kgens = [M.target.basis_vector(k) for k in range(M.target.rank)]
    else:
        kgens = gb.kernel_of_map(T, M.ideal).gens
    return subquotient(kgens, list(M.relations), M.target, M.ideal, M.integral, name=f"tors({M.name})")


# -------------------------------------------------------------- local freeness

def _det(mat):
    n = len(mat)
    if n == 1:
        return mat[0][0]
    if n == 2:
        return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    total = None
    for j in range(n):
        if mat[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else mat[0][0] - mat[0][0]


def fitting_minors(M: PresentedModule, k: int, rng=None):
    """Iterator over the k x k minors of the presentation matrix (random order)."""
    phi = M.presentation()
    rows = list(range(phi.target.rank))
    cols = list(range(phi.source.rank))
    combos = [(r, c) for r in itertools.combinations(rows, k) for c in itertools.combinations(cols, k)]
    (rng or random.Random(0)).shuffle(combos)
    for r, c in combos:
        mat = [[phi.rows[i][j] for j in c] for i in r]
        d = _det(mat)
        if not d.is_zero():
            yield d


@dataclass
class LocalFreeness:
    locally_free: bool
    singular_ideal: tuple = ()
    singular_hp: HilbertPolynomial | None = None

    def to_json(self):
        return {
            "locally_free": self.locally_free,
            "singular_support_ideal": [str(f) for f in self.singular_ideal],
            "singular_support_hilbert_polynomial": str(self.singular_hp) if self.singular_hp is not None else None,
        }


def is_locally_free(M: PresentedModule, expected_rank: int, batch=25) -> LocalFreeness:
    """Fitting-ideal test: M~ is locally free of rank r on V(I) iff the ideal
    I + Fitt_r (the (n-r)-minors of a presentation with n generators)
    defines the empty set, i.e. has zero Hilbert polynomial."""
    M = prune(M)
    n = M.target.rank
    k = n - expected_rank
    ring = M.ring
    if k < 0:
        raise ModuleError("expected rank exceeds the number of generators")
    if k == 0:
        if M.relations and not M.is_zero():
            J = list(M.ideal)
            # zero-th Fitting ideal is (0): no point has rank n unless there are no relations
            return _not_free(ring, J)
        return LocalFreeness(True)
    if not M.relations or k > M.presentation().source.rank:
        return _not_free(ring, list(M.ideal))
    J = list(M.ideal)
    count = 0
    for d in fitting_minors(M, k):
        J.append(d)
        count += 1
        if count % batch == 0 and _hp_of_ideal(ring, J).is_zero():
            return LocalFreeness(True)
    hp = _hp_of_ideal(ring, J)
    if hp.is_zero():
        return LocalFreeness(True)
    Gs = gb.saturate(gb.ideal(ring, J), ring.gens)
    sat = tuple(v[0] for v in Gs.basis_vectors())
    return LocalFreeness(False, sat, hp)


def _not_free(ring, J):
    hp = _hp_of_ideal(ring, J) if J else HilbertPolynomial((1,))
    return LocalFreeness(False, tuple(J), hp)


def _hp_of_ideal(ring, J) -> HilbertPolynomial:
    G = gb.ideal(ring, J)
    num = module_numerator(G.lead_monomials(), (0,), ring.nvars)
    return hilbert_data(num, ring.nvars, (0, 0)).polynomial


def ideal_hilbert(ring, J, window=(0, 8)):
    G = gb.ideal(ring, J)
    num = module_numerator(G.lead_monomials(), (0,), ring.nvars)
    return hilbert_data(num, ring.nvars, window)


# -------------------------------------------------------------- Hom in one degree

def _standard_basis(G: SubmoduleBasis, F: FreeModule, d: int):
    """Standard monomials (pos, exponent) of F/G in degree d."""
    leads = G.lead_monomials() if G is not None else [[] for _ in range(F.rank)]
    out = []
    for pos, g in enumerate(F.degrees):
        for a in monomials(F.ring.nvars, d - g):
            if not any(all(x <= y for x, y in zip(m, a)) for m in leads[pos]):
                out.append((pos, a))
    return out


def hom_degree(M: PresentedModule, N: PresentedModule, e: int = 0):
    """Hom_R(M, N)_e by linear algebra.  Returns (dimension, basis), each basis
    element a list of vectors in N's free module (the images of M's generators).

    When N has depth >= 2 (e.g. N = Gamma_*), this is the space of sheaf maps
    M~ -> N~(e)."""
    if M.ring != N.ring:
        raise ModuleError("modules over different rings")
    ring = M.ring
    GN = N.relation_basis()
    FN = N.target
    P0 = M.target
    unknowns = []
    for i, di in enumerate(P0.degrees):
        for b in _standard_basis(GN, FN, di + e):
            unknowns.append((i, b))
    col_index = {u: n for n, u in enumerate(unknowns)}
    rows_by_col = {}
    equations = {}
    for k, col in enumerate(M.relations):
        dk = P0.vector_degree(col)
        for (i, (pos, a)) in unknowns:
            coef = col[i]
            if coef.is_zero():
                continue
            v = [ring.zero()] * FN.rank
            v[pos] = coef.mul_monomial(a)
            nf = GN.normal_form(v)
            for p2, poly in enumerate(nf):
                for ex, c in poly.terms.items():
                    key = (k, p2, ex)
                    equations.setdefault(key, {})
                    equations[key][col_index[(i, (pos, a))]] = equations[key].get(col_index[(i, (pos, a))], 0) + c
        del dk
    from .linalg import nullspace

    rows = [{j: c for j, c in r.items() if c} for r in equations.values()]
    ns = nullspace(rows, range(len(unknowns)))
    basis = []
    for x in ns:
        imgs = [[ring.zero()] * FN.rank for _ in range(P0.rank)]
        for j, c in x.items():
            i, (pos, a) = unknowns[j]
            imgs[i][pos] = imgs[i][pos] + ring.monomial(a, c)
        basis.append([tuple(v) for v in imgs])
    del rows_by_col
    return len(ns), basis


# -------------------------------------------------------------- Chern data

@dataclass
class SheafReport:
    rank: int
    hilbert: object
    c1_dot_H: int
    c2: object
    c1_sq_minus_2c2: object = None
    h_table: dict = field(default_factory=dict)
    locally_free: object = None
    expected_moduli_dim: object = None

    def to_json(self):
        return {
            "rank": self.rank,
            "hilbert": self.hilbert.to_json() if hasattr(self.hilbert, "to_json") else str(self.hilbert),
            "c1_dot_H": self.c1_dot_H,
            "c2": _num(self.c2),
            "c1_sq_minus_2c2": _num(self.c1_sq_minus_2c2),
            "h_table": {k: v for k, v in sorted(self.h_table.items())},
            "locally_free": self.locally_free,
            "expected_moduli_dim": _num(self.expected_moduli_dim),
        }


def _num(x):
    if x is None:
        return None
    x = Fraction(x)
    return int(x) if x.denominator == 1 else str(x)


@dataclass(frozen=True)
class SurfaceData:
    """Numerical data of a smooth surface X ⊂ P^N with hyperplane class H:
    the Hilbert polynomial chi(O_X(t)) and the canonical class K_X = k·H
    (so K·H = k·deg X).  For a degree-d surface in P^3, k = d - 4."""

    hp: HilbertPolynomial
    k: int

    @property
    def degree(self):
        return self.hp.coefficient(2) * 2

    @property
    def chi_O(self):
        return self.hp(0)


class ChernInconsistency(ModuleError):
    pass


def chern_report(hp: HilbertPolynomial, surface: SurfaceData, c1_sq=None, hilbert=None,
                 h_table=None, locally_free=None) -> SheafReport:
    """Read rank, c1·H and c2 off chi(E(t)) by Riemann–Roch on a surface:
    chi(E(t)) = r chi(O_X(t)) + (c1·H) t + (c1^2 - c1·K)/2 - c2,  K = k H."""
    if hp.degree > 2:
        raise ChernInconsistency("Hilbert polynomial of degree > 2 on a surface")
    lead = hp.coefficient(2)
    base = surface.hp.coefficient(2)
    r = lead / base
    if r.denominator != 1:
        raise ChernInconsistency(
            f"leading coefficient {lead} is not a multiple of deg(X)/2 = {base}"
        )
    r = int(r)
    rest = hp - surface.hp.scale(r)
    c1H = rest.coefficient(1)
    if c1H.denominator != 1:
        raise ChernInconsistency("c1·H is not an integer")
    const = rest.coefficient(0)
    c1K = surface.k * c1H
    combo = 2 * const + c1K  # = c1^2 - 2 c2
    c2 = None
    if c1_sq is not None:
        c2 = (Fraction(c1_sq) - c1K) / 2 - const
    moduli = None
    if r == 2 and c1H == 0 and c2 is not None and c1_sq == 0:
        moduli = 4 * c2 - 3 * surface.chi_O
    return SheafReport(r, hilbert if hilbert is not None else hp, int(c1H), c2, combo,
                       h_table or {}, locally_free, moduli)
