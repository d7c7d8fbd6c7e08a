"""From a complete intersection pair (X, Y) to its net logarithmic tangent module.

X = V(F_1..F_r) is a smooth complete intersection in P^N and Y = V(G_1..G_s).
The Jacobian map xi: O(1)^{N+1} -> ⊕ O(f_i) ⊕ ⊕ O(g_j) has rows ∇F_i, ∇G_j.
Its kernel over S is restricted to X and replaced by its image in
O_X(1)^{N+1}; that image is the torsion-free quotient in the definition,
since the kernel of the restriction map is exactly the torsion part.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import groebner as gb
from . import modules as md
from .field import as_fraction
from .groebner import FreeModule, GradedMap, SubmoduleBasis
from .hilbert import HilbertPolynomial
from .poly import Poly, PolyRing
from .zerodim import SupportPoint, degree_of, saturated_ideal, support_points


class PairError(ValueError):
    """An input pair failed one of the named validity checks."""

    def __init__(self, check, message):
        self.check = check
        super().__init__(f"[{check}] {message}")


@dataclass(frozen=True)
class CIPair:
    ring: PolyRing
    X: tuple
    Y: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "X", tuple(self.X))
        object.__setattr__(self, "Y", tuple(self.Y))

    @classmethod
    def parse(cls, ring, X, Y=()):
        return cls(ring, tuple(ring.parse(f) for f in X), tuple(ring.parse(g) for g in Y))

    @property
    def N(self):
        return self.ring.nvars - 1

    @property
    def r(self):
        return len(self.X)

    @property
    def s(self):
        return len(self.Y)

    @property
    def dim_X(self):
        return self.N - self.r

    def ideal_X(self):
        return tuple(self.X)

    def validate(self):
        """Run the named checks; returns self for chaining."""
        if self.r == 0:
            raise PairError("nonempty-X", "X must be cut out by at least one equation")
        for f in self.X + self.Y:
            if f.is_zero() or not f.is_homogeneous() or f.degree() < 1:
                raise PairError("homogeneous", f"{f} is not a nonconstant form")
        if self.dim_X < 1:
            raise PairError("dimension", "X must have positive dimension")
        # smoothness: the maximal minors of the Jacobian of the F's vanish nowhere on X
        jac = [[f.derivative(i) for i in range(self.ring.nvars)] for f in self.X]
        minors = _maximal_minors(jac)
        hp = md._hp_of_ideal(self.ring, list(self.X) + minors)
        if not hp.is_zero():
            raise PairError("X-smooth", f"X is singular (singular locus has Hilbert polynomial {hp})")
        hpX = md._hp_of_ideal(self.ring, list(self.X))
        if hpX.degree != self.dim_X:
            raise PairError("X-complete-intersection", "X does not have the expected dimension")
        if self.Y:
            hpD = md._hp_of_ideal(self.ring, list(self.X) + list(self.Y))
            want = self.N - self.r - self.s
            got = hpD.degree if not hpD.is_zero() else -1
            if got != want:
                raise PairError("XY-complete-intersection",
                                f"X∩Y has dimension {got}, expected {want}")
        return self

    def scaled(self, lx, ly):
        return CIPair(self.ring, tuple(f * c for f, c in zip(self.X, lx)), tuple(g * c for g, c in zip(self.Y, ly)))

    def to_json(self):
        return {"ring": self.ring.to_json(), "X": [str(f) for f in self.X], "Y": [str(g) for g in self.Y]}


def _maximal_minors(mat):
    import itertools

    r = len(mat)
    n = len(mat[0])
    out = []
    for cols in itertools.combinations(range(n), r):
        d = md._det([[row[c] for c in cols] for row in mat])
        if not d.is_zero():
            out.append(d)
    return out


# ------------------------------------------------------------------ maps

def jacobian_map(pair: CIPair) -> GradedMap:
    ring = pair.ring
    n = ring.nvars
    src = FreeModule.from_twists(ring, (1,) * n)
    eqs = list(pair.X) + list(pair.Y)
    tgt = FreeModule.from_twists(ring, tuple(f.degree() for f in eqs))
    rows = [[f.derivative(i) for i in range(n)] for f in eqs]
    return GradedMap(src, tgt, rows)


def ambient_kernel(pair: CIPair) -> SubmoduleBasis:
    """Generators of T_{X∩Y,P^N} = ker(xi) over S."""
    return gb.kernel_of_map(jacobian_map(pair))


def coordinate_ring_integral(pair: CIPair) -> bool:
    # a smooth complete intersection of positive dimension is connected, hence integral
    return pair.dim_X >= 1


def net_log_tangent(pair: CIPair) -> md.PresentedModule:
    """T_X(Y;P^N) as the image of ker(xi) in O_X(1)^{N+1}."""
    K = ambient_kernel(pair)
    src = K.free
    return md.image_module(K.gens, src, pair.ideal_X(), coordinate_ring_integral(pair), name="T_X(Y)")


def ambient_cokernel(pair: CIPair) -> md.PresentedModule:
    """B_{X∩Y} = coker(xi) over S."""
    return md.cokernel(jacobian_map(pair), name="B")


def tor_defect(pair: CIPair) -> md.PresentedModule:
    """Tor_1^S(B_{X∩Y}, O_X)."""
    return md.tor(ambient_cokernel(pair), pair.ideal_X(), 1)


def is_reduced_section(pair: CIPair) -> bool:
    """D = X∩Y is a complete intersection, hence Cohen–Macaulay, so it is
    reduced iff its singular locus has smaller dimension."""
    eqs = list(pair.X) + list(pair.Y)
    jac = [[f.derivative(i) for i in range(pair.ring.nvars)] for f in eqs]
    sing = eqs + _maximal_minors(jac)
    hp = md._hp_of_ideal(pair.ring, sing)
    dimD = pair.N - pair.r - pair.s
    dim_sing = hp.degree if not hp.is_zero() else -1
    return dim_sing < dimD


class NonReducedSection(PairError):
    pass


def reflexive_log_tangent(pair: CIPair, check_reduced=True) -> md.PresentedModule:
    """T_X(-log D) as the reflexive hull of the net module (D reduced)."""
    if check_reduced and not is_reduced_section(pair):
        raise NonReducedSection("D-reduced", "the reflexive-hull identity needs D = X∩Y reduced and effective")
    M = md.double_dual(net_log_tangent(pair))
    M.name = "T_X(-log D)"
    return M


def log_c1_multiple(pair: CIPair) -> int:
    """c1(T_X(-log D)) = m·H with m = N + 1 - Σ deg F_i - Σ deg G_j."""
    return pair.N + 1 - sum(f.degree() for f in pair.X) - sum(g.degree() for g in pair.Y)


def surface_data(pair: CIPair) -> md.SurfaceData:
    if pair.dim_X != 2:
        raise PairError("surface", "Chern data is read off on surfaces only")
    hp = md._hp_of_ideal(pair.ring, list(pair.X))
    k = sum(f.degree() for f in pair.X) - pair.N - 1
    return md.SurfaceData(hp, k)


def sheaf_report(pair: CIPair, M: md.PresentedModule, window=(-2, 4), h_range=None, rank=None) -> md.SheafReport:
    sd = surface_data(pair)
    hd = M.hilbert(window)
    m = log_c1_multiple(pair)
    c1_sq = m * m * int(sd.degree)
    rep = md.chern_report(hd.polynomial, sd, c1_sq=c1_sq, hilbert=hd)
    if h_range is not None:
        tab = md.sheaf_cohomology(M, range(pair.dim_X + 1), h_range)
        rep.h_table = {f"h{i}({t})": v for (i, t), v in tab.values.items()}
    rep.locally_free = md.is_locally_free(M, rep.rank).locally_free
    return rep


# ------------------------------------------------------------------ residue pieces

def _euler(ring):
    return tuple(ring.gens)


def tangent_module(pair: CIPair):
    """T_X for a hypersurface: ker(∇F: O_X(1)^{N+1} -> O_X(d)) modulo the Euler vector."""
    if pair.r != 1:
        raise PairError("hypersurface", "T_X is built here for hypersurfaces only")
    ring = pair.ring
    F = pair.X[0]
    src = FreeModule.from_twists(ring, (1,) * ring.nvars)
    grad = GradedMap(src, FreeModule.from_twists(ring, (F.degree(),)), [[F.derivative(i) for i in range(ring.nvars)]])
    K = gb.kernel_of_map(grad, (F,))
    M = md.Subquotient(K.gens, [_euler(ring)], src, (F,), True, name="T_X")
    return M, K


def log_tangent_by_residue(pair: CIPair):
    """Second model of T_X(-log D): fields v with ∇F·v = 0 on X and ∇G·v ∈ (G),
    modulo the Euler field.  Returns (module, generating vectors)."""
    ring = pair.ring
    F = pair.X[0]
    G = pair.Y[0]
    xi = jacobian_map(pair)
    src = xi.source + FreeModule(ring, (0,))
    rows = [list(xi.rows[0]) + [ring.zero()], list(xi.rows[1]) + [-G]]
    K = gb.kernel_of_map(GradedMap(src, xi.target, rows), (F,))
    gens = [v[:-1] for v in K.gens]
    return md.Subquotient(gens, [_euler(ring)], xi.source, (F,), True, name="T_X(-log D)'"), gens


@dataclass
class ResidueData:
    """Subquotients of O_X(1)^{N+1}; call .presented() for a presentation."""

    T_X: md.Subquotient
    N_XY: md.Subquotient
    J_D: md.Subquotient
    T_log: md.Subquotient


def residue_cokernel(pair: CIPair) -> ResidueData:
    """N_{X,Y} = coker(T_X(Y;P^N) -> T_X) and J_D(D) = coker(T_X(-log D) -> T_X)."""
    if pair.r != 1 or pair.s != 1:
        raise PairError("hypersurface-pair", "the residue cokernel is built for r = s = 1")
    ring = pair.ring
    F = pair.X[0]
    TX, KF = tangent_module(pair)
    net = ambient_kernel(pair)
    src = FreeModule.from_twists(ring, (1,) * ring.nvars)
    N = md.Subquotient(KF.gens, [_euler(ring)] + list(net.gens), src, (F,), True, name="N_{X,Y}")
    Tlog, gens = log_tangent_by_residue(pair)
    J = md.Subquotient(KF.gens, [_euler(ring)] + list(gens), src, (F,), True, name="J_D(D)")
    return ResidueData(TX, N, J, Tlog)


# ------------------------------------------------------------------ sections by hyperplanes

MILNOR_TABLE = {
    (): "smooth",
    (1,): "a",
    (2,): "b",
    (1, 1): "c1",
    (3,): "c2",
    (1, 1, 1): "d1",
    (4,): "d2",
}


@dataclass
class SectionSingularity:
    points: list
    multiplicities: tuple
    label: str
    R0_length: int
    R_length: int
    rational: bool = True
    coordinates: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "points": [p.to_json() for p in self.points],
            "multiplicities": list(self.multiplicities),
            "label": self.label,
            "R0_length": self.R0_length,
            "R_length": self.R_length,
            "rational_support": self.rational,
        }


@dataclass(frozen=True)
class LinearChange:
    """Coordinates y with y_N = H(x); x_j is solved from H, the others are kept."""

    ring: PolyRing
    H: Poly
    j: int

    @classmethod
    def for_form(cls, H: Poly):
        if not H.is_homogeneous() or H.degree() != 1:
            raise PairError("linear-form", f"{H} is not a linear form")
        ring = H.ring
        coeffs = [H.coeff(_unit(ring.nvars, i)) for i in range(ring.nvars)]
        j = max(i for i, c in enumerate(coeffs) if c != 0)
        return cls(ring, H, j)

    def coeffs(self):
        return [self.H.coeff(_unit(self.ring.nvars, i)) for i in range(self.ring.nvars)]

    def others(self):
        return [i for i in range(self.ring.nvars) if i != self.j]

    def x_images(self):
        """x_i as linear forms in y (same ring, variable names reused)."""
        n = self.ring.nvars
        a = self.coeffs()
        ys = self.ring.gens
        imgs = [None] * n
        for k, i in enumerate(self.others()):
            imgs[i] = ys[k]
        rest = ys[n - 1]
        for k, i in enumerate(self.others()):
            rest = rest - ys[k] * a[i]
        imgs[self.j] = rest * (1 / a[self.j])
        return imgs

    def pull(self, f: Poly) -> Poly:
        return f.substitute(self.x_images())

    def point_to_x(self, y):
        n = self.ring.nvars
        a = [as_fraction(c) for c in self.coeffs()]
        x = [Fraction(0)] * n
        for k, i in enumerate(self.others()):
            x[i] = Fraction(y[k])
        s = Fraction(y[n - 1]) - sum(a[i] * x[i] for i in self.others())
        x[self.j] = s / a[self.j]
        return tuple(x)


def _unit(n, i):
    return tuple(1 if k == i else 0 for k in range(n))


def section_singularities(F: Poly, H: Poly, seed=0) -> SectionSingularity:
    """Singular points of the plane section V(F) ∩ V(H) with their Milnor numbers.

    After a linear change making H the last coordinate, R_0 is cut out by the
    partials of F in the other coordinates and R = R_0 ∩ V(F)."""
    ring = F.ring
    ch = LinearChange.for_form(H)
    Fy = ch.pull(F)
    n = ring.nvars
    parts = [Fy.derivative(i) for i in range(n - 1)]
    pair = CIPair(ring, (F,), (H,))
    if not is_reduced_section(pair):
        raise NonReducedSection("D-reduced", "the hyperplane section is not reduced")
    G0 = saturated_ideal(ring, parts)
    R0_len, _ = degree_of(ring, G0)
    R_ideal = parts + [Fy]
    GR = saturated_ideal(ring, R_ideal)
    R_len, _ = degree_of(ring, GR)
    pts = support_points(ring, R_ideal, seed=seed) if R_len else []
    mults = []
    rational = True
    out_pts = []
    for p in pts:
        if p.coords is None:
            rational = False
            mults += [p.multiplicity] * p.orbit_size
            out_pts.append(p)
        else:
            mults.append(p.multiplicity)
            out_pts.append(SupportPoint(_projective(ch.point_to_x(p.coords)), p.multiplicity))
    mults = tuple(sorted(mults, reverse=True))
    label = "unclassified"
    if F.degree() == 3 and n == 4:
        label = MILNOR_TABLE.get(tuple(sorted(mults)), "unclassified")
    return SectionSingularity(out_pts, mults, label, R0_len, R_len, rational)


def singular_locus_points(pair: CIPair, seed=0):
    """Support of Sing(D) for D = X∩Y, from the Jacobian minors of all equations."""
    eqs = list(pair.X) + list(pair.Y)
    jac = [[f.derivative(i) for i in range(pair.ring.nvars)] for f in eqs]
    return support_points(pair.ring, eqs + _maximal_minors(jac), seed=seed)


def non_free_points(M: md.PresentedModule, rank: int, seed=0):
    lf = md.is_locally_free(M, rank)
    if lf.locally_free:
        return []
    return support_points(M.ring, list(lf.singular_ideal), seed=seed)


def _point_set(pts):
    return sorted((tuple(str(c) for c in p.coords) if p.coords is not None else (p.minpoly,)) for p in pts)


def singular_supports_agree(pair: CIPair, seed=0) -> bool:
    """Sing(net module) and Sing(D) have the same support."""
    net = net_log_tangent(pair)
    return _point_set(non_free_points(net, pair.dim_X, seed)) == _point_set(singular_locus_points(pair, seed))


def _projective(x):
    first = next(v for v in x if v != 0)
    return tuple(Fraction(v) / first for v in x)


def tangent_plane(F: Poly, p) -> Poly:
    """Σ ∂F/∂x_i(p) x_i with coprime integer coefficients."""
    ring = F.ring
    if F.evaluate(p) != 0:
        raise PairError("on-X", f"the point {tuple(str(c) for c in p)} is not on V(F)")
    grad = [F.derivative(i).evaluate(p) for i in range(ring.nvars)]
    if all(g == 0 for g in grad):
        raise PairError("smooth-point", "V(F) is singular at the point")
    out = ring.zero()
    for g, x in zip(grad, ring.gens):
        out = out + x * g
    return out.content_free()


def proportional(f: Poly, g: Poly) -> bool:
    if f.is_zero() or g.is_zero():
        return f.is_zero() and g.is_zero()
    return f * g.lead_coeff() == g * f.lead_coeff()


def integer_point(q):
    q = [Fraction(c) for c in q]
    den = 1
    for c in q:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in q]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return tuple(v // g for v in ints) if g else tuple(ints)


# ------------------------------------------------------------------ one-shot analysis

def analyze_pair(pair: CIPair, window=(-2, 4), h_range=(-1, 2), with_reflexive=True):
    """Everything a report needs for a surface/hyperplane pair."""
    pair.validate()
    net = net_log_tangent(pair)
    rep = sheaf_report(pair, net, window, range(h_range[0], h_range[1] + 1))
    out = {"net": {"module": net, "report": rep}}
    lf = md.is_locally_free(net, rep.rank)
    out["net"]["singular_support"] = lf
    if with_reflexive and is_reduced_section(pair):
        refl = reflexive_log_tangent(pair, check_reduced=False)
        out["reflexive"] = {"module": refl, "report": sheaf_report(pair, refl, window)}
        out["defect"] = refl.hilbert_polynomial() - net.hilbert_polynomial()
    return out


def hilbert_poly(M) -> HilbertPolynomial:
    return M.hilbert_polynomial()


def smooth_completion(g: Poly, seed=0, attempts=200, height=2):
    """A quadric q with small integer coefficients making V(g + x_N·q) smooth."""
    import random

    ring = g.ring
    rng = random.Random(seed)
    last = ring.gens[-1]
    quads = ring.monomials_of_degree(2)
    for _ in range(attempts):
        q = ring.zero()
        for e in quads:
            c = rng.randint(-height, height)
            if c:
                q = q + ring.monomial(e, c)
        F = g + last * q
        try:
            CIPair(ring, (F,), ()).validate()
        except PairError:
            continue
        return q
    raise PairError("X-smooth", "no smoothing quadric found")
