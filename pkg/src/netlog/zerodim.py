"""Points and local multiplicities of zero-dimensional projective schemes.

For a saturated ideal J with constant Hilbert polynomial δ, pick t in the
stable range, a linear form L that is a nonzerodivisor on S/J, and look
at the commuting operators T_i = (L·)^{-1}(x_i·) on (S/J)_t.  Their joint
eigenvalues are the ratios x_i(q)/L(q) over the support points q, and the
generalized eigenspaces have the local lengths as dimensions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

from . import groebner as gb
from .field import as_fraction
from .hilbert import hilbert_data, module_numerator
from .linalg import mat_inverse, mat_mul, monomials, nullspace, rank
from .poly import Poly


class ZeroDimError(ValueError):
    pass


@dataclass
class SupportPoint:
    coords: tuple | None       # projective coordinates over Q, or None for an irrational orbit
    multiplicity: int          # local length at each point of the orbit
    orbit_size: int = 1
    minpoly: str = ""          # defining factor for an irrational orbit

    def to_json(self):
        return {
            "point": [str(c) for c in self.coords] if self.coords is not None else None,
            "multiplicity": self.multiplicity,
            "orbit_size": self.orbit_size,
            "minpoly": self.minpoly,
        }


def saturated_ideal(ring, J):
    return gb.saturate(gb.ideal(ring, J), ring.gens)


def degree_of(ring, G) -> int:
    """Constant Hilbert polynomial of S/G (the length of the scheme)."""
    num = module_numerator(G.lead_monomials(), (0,), ring.nvars)
    hd = hilbert_data(num, ring.nvars, (0, 0))
    hp = hd.polynomial
    if hp.degree > 0:
        raise ZeroDimError(f"scheme is not zero-dimensional (Hilbert polynomial {hp})")
    return int(hp.coefficient(0)), hd.agreement


def _quotient_basis(G, ring, t):
    leads = G.lead_monomials()[0]
    return [a for a in monomials(ring.nvars, t) if not any(all(x <= y for x, y in zip(m, a)) for m in leads)]


def _mult_matrix(G, ring, basis_t, basis_t1, var_poly):
    idx = {a: i for i, a in enumerate(basis_t1)}
    cols = []
    for a in basis_t:
        v = G.normal_form((var_poly.mul_monomial(a),))[0]
        col = [mpq(0)] * len(basis_t1)
        for e, c in v.terms.items():
            col[idx[e]] = c
        cols.append(col)
    # matrix acting on column vectors
    return [[cols[j][i] for j in range(len(cols))] for i in range(len(basis_t1))]


def _charpoly_factors(T):
    import sympy

    M = sympy.Matrix([[sympy.Rational(int(x.numerator), int(x.denominator)) for x in row] for row in T])
    lam = sympy.Symbol("lam")
    cp = M.charpoly(lam).as_expr()
    _, factors = sympy.factor_list(cp, lam, domain="QQ")
    out = []
    for f, e in factors:
        P = sympy.Poly(f, lam)
        coeffs = [mpq(int(sympy.Rational(c).p), int(sympy.Rational(c).q)) for c in P.all_coeffs()]
        lc = coeffs[0]
        out.append(([c / lc for c in coeffs], e, str(f).replace("**", "^")))
    return out


def _poly_of_matrix(coeffs, T):
    """p(T) for p given high-degree first."""
    n = len(T)
    R = [[mpq(0)] * n for _ in range(n)]
    for c in coeffs:
        R = mat_mul(R, T)
        for i in range(n):
            R[i][i] += c
    return R


def _mat_pow(A, k):
    n = len(A)
    R = [[mpq(int(i == j)) for j in range(n)] for i in range(n)]
    for _ in range(k):
        R = mat_mul(R, A)
    return R


def _kernel_basis(A, n):
    rows = [{j: v for j, v in enumerate(r) if v} for r in A]
    ns = nullspace(rows, range(n))
    return [[x.get(j, mpq(0)) for j in range(n)] for x in ns]


def _restrict(T, B):
    """Matrix of T on the invariant subspace spanned by the columns of B."""
    n = len(T)
    k = len(B)
    # pick k independent coordinates
    rows = []
    chosen = []
    for i in range(n):
        cand = chosen + [i]
        sub = [[B[c][r] for c in range(k)] for r in cand]
        if rank([{j: v for j, v in enumerate(r) if v} for r in sub]) == len(cand):
            chosen = cand
        if len(chosen) == k:
            break
    P = [[B[c][r] for c in range(k)] for r in chosen]
    Pinv = mat_inverse(P)
    TB = [[sum(T[i][l] * B[c][l] for l in range(n)) for c in range(k)] for i in range(n)]
    TBsel = [TB[r] for r in chosen]
    return mat_mul(Pinv, TBsel)


def _trace(A):
    return sum(A[i][i] for i in range(len(A)))


def support_points(ring, J, seed=0, attempts=20):
    """Support points of the zero-dimensional scheme V(J) ⊂ P^N with local lengths."""
    if not ring.field.is_rational:
        raise ZeroDimError("point finding is implemented over Q only")
    G = saturated_ideal(ring, J)
    delta, agree = degree_of(ring, G)
    if delta == 0:
        return []
    t = max(agree, 1)
    while len(_quotient_basis(G, ring, t)) != delta:
        t += 1
    bt = _quotient_basis(G, ring, t)
    bt1 = _quotient_basis(G, ring, t + 1)
    Ms = [_mult_matrix(G, ring, bt, bt1, x) for x in ring.gens]
    rng = random.Random(seed)
    for _ in range(attempts):
        lc = [rng.randint(-5, 5) for _ in range(ring.nvars)]
        ML = [[sum(lc[i] * Ms[i][r][c] for i in range(ring.nvars)) for c in range(delta)] for r in range(delta)]
        try:
            MLinv = mat_inverse(ML)
        except ZeroDivisionError:
            continue
        Ts = [mat_mul(MLinv, M) for M in Ms]
        cc = [rng.randint(-7, 7) for _ in range(ring.nvars)]
        T = [[sum(cc[i] * Ts[i][r][c] for i in range(ring.nvars)) for c in range(delta)] for r in range(delta)]
        pts = _split(T, Ts, delta, lc)
        if pts is not None:
            assert sum(p.multiplicity * p.orbit_size for p in pts) == delta
            return pts
    raise ZeroDimError("could not find a separating linear form")


def _split(T, Ts, delta, lc):
    out = []
    for coeffs, e, text in _charpoly_factors(T):
        k = len(coeffs) - 1
        A = _mat_pow(_poly_of_matrix(coeffs, T), e)
        V = _kernel_basis(A, delta)
        dim = len(V)
        if k == 1:
            vals = []
            for Ti in Ts:
                C = _restrict(Ti, V)
                mu = _trace(C) / dim
                # one point only if every T_i has a single eigenvalue on V
                N = [[C[r][c] - (mu if r == c else 0) for c in range(dim)] for r in range(dim)]
                if any(any(x for x in row) for row in _mat_pow(N, dim)):
                    return None
                vals.append(mu)
            s = sum(l * v for l, v in zip(lc, vals))
            if s != 1:
                return None
            out.append(SupportPoint(normalize_point(vals), dim))
        else:
            if dim % k:
                return None
            out.append(SupportPoint(None, dim // k, k, text))
    return out


def normalize_point(vals):
    vals = [as_fraction(v) for v in vals]
    first = next(v for v in vals if v != 0)
    return tuple(v / first for v in vals)


def point_ideal(ring, q):
    """Linear generators of the ideal of a rational point."""
    q = [as_fraction(c) if not isinstance(c, int) else Fraction(c) for c in q]
    j = next(i for i, c in enumerate(q) if c != 0)
    xs = ring.gens
    return [xs[i] * q[j] - xs[j] * q[i] for i in range(ring.nvars) if i != j]


def local_length(ring, J, q):
    """deg V(J) - deg V(J : m_q^∞): the length of the scheme at q."""
    G = saturated_ideal(ring, J)
    total, _ = degree_of(ring, G)
    H = gb.saturate(G, point_ideal(ring, q))
    rest, _ = degree_of(ring, H)
    return total - rest


def vanishes_at(f: Poly, q) -> bool:
    return f.evaluate(q) == 0
