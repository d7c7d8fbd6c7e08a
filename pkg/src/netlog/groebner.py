"""Homogeneous Buchberger engine for submodules of graded free modules.

Terms of a module vector are stored under integer keys

    (-position, degree, -e_n, ..., -e_0)

so that plain tuple comparison realises position-over-term (lower position
index wins) refined by degree reverse lexicographic order, and multiplying
by a monomial is elementwise addition of keys.  Everything here assumes
homogeneous input, which lets us run Buchberger degree by degree: in the
homogeneous case the sugar of a pair is its degree.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field

from .poly import Poly, PolyRing


class CapExceeded(RuntimeError):
    """A Gröbner loop wanted to go past the configured degree cap."""


class NotHomogeneous(ValueError):
    pass


class NotGroebner(ValueError):
    pass


def default_degree_cap() -> int:
    return int(os.environ.get("NETLOG_GB_DEGREE_CAP", "40"))


# ---------------------------------------------------------------- free modules

@dataclass(frozen=True)
class FreeModule:
    """Graded free module  ⊕_k R(-degrees[k]).

    ``degrees`` are the degrees of the basis vectors.  The sheaf-style twist
    vector is their negation: a module generator of degree -1 is a copy of
    O(1).
    """

    ring: PolyRing
    degrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))

    @classmethod
    def from_twists(cls, ring, twists):
        return cls(ring, tuple(-int(a) for a in twists))

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def twists(self):
        return tuple(-d for d in self.degrees)

    def dual(self) -> "FreeModule":
        return FreeModule(self.ring, tuple(-d for d in self.degrees))

    def shift(self, k: int) -> "FreeModule":
        """M(k): every basis degree drops by k."""
        return FreeModule(self.ring, tuple(d - k for d in self.degrees))

    def __add__(self, other: "FreeModule") -> "FreeModule":
        assert self.ring == other.ring
        return FreeModule(self.ring, self.degrees + other.degrees)

    def zero_vector(self):
        return tuple(self.ring.zero() for _ in self.degrees)

    def basis_vector(self, k):
        return tuple(self.ring.one() if i == k else self.ring.zero() for i in range(self.rank))

    def vector_degree(self, v):
        """Degree of a homogeneous vector, or None for the zero vector."""
        deg = None
        for p, d in zip(v, self.degrees):
            if p.is_zero():
                continue
            if not p.is_homogeneous():
                raise NotHomogeneous(f"inhomogeneous entry {p}")
            dd = p.degree() + d
            if deg is None:
                deg = dd
            elif deg != dd:
                raise NotHomogeneous("vector entries of different degrees")
        return deg

    def to_json(self):
        return {"degrees": list(self.degrees)}


@dataclass(frozen=True)
class GradedMap:
    """Matrix of forms between free modules.  ``rows[i][j]`` maps basis j of the
    source into position i of the target and has degree
    source.degrees[j] - target.degrees[i] (when nonzero)."""

    source: FreeModule
    target: FreeModule
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.target.rank or any(len(r) != self.source.rank for r in rows):
            raise ValueError("matrix shape does not match source/target ranks")

    @classmethod
    def from_columns(cls, source, target, cols):
        cols = [tuple(c) for c in cols]
        rows = tuple(tuple(c[i] for c in cols) for i in range(target.rank))
        return cls(source, target, rows)

    @property
    def ring(self):
        return self.target.ring

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    @property
    def columns(self):
        return [self.column(j) for j in range(self.source.rank)]

    def check_degrees(self):
        for i, r in enumerate(self.rows):
            for j, p in enumerate(r):
                if p.is_zero():
                    continue
                want = self.source.degrees[j] - self.target.degrees[i]
                if not p.is_homogeneous() or p.degree() != want:
                    raise NotHomogeneous(
                        f"entry ({i},{j}) = {p} should be a form of degree {want}"
                    )
        return True

    def apply(self, v):
        out = []
        for r in self.rows:
            acc = self.ring.zero()
            for p, c in zip(r, v):
                if not p.is_zero() and not c.is_zero():
                    acc = acc + p * c
            out.append(acc)
        return tuple(out)

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self ∘ other."""
        return GradedMap.from_columns(other.source, self.target, [self.apply(c) for c in other.columns])

    def transpose(self) -> "GradedMap":
        """Dual map target* -> source*."""
        rows = tuple(tuple(self.rows[i][j] for i in range(self.target.rank)) for j in range(self.source.rank))
        return GradedMap(self.target.dual(), self.source.dual(), rows)

    def substitute(self, images, ring, scale=1) -> "GradedMap":
        src = FreeModule(ring, tuple(d * scale for d in self.source.degrees))
        tgt = FreeModule(ring, tuple(d * scale for d in self.target.degrees))
        rows = tuple(tuple(p.substitute(images) for p in r) for r in self.rows)
        return GradedMap(src, tgt, rows)

    def is_zero(self):
        return all(p.is_zero() for r in self.rows for p in r)

    def __str__(self):
        return "\n".join("[" + ", ".join(str(p) for p in r) + "]" for r in self.rows)


# ------------------------------------------------------------- key encoding

def _exp_key(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


def to_vec(polys) -> dict:
    out = {}
    for pos, p in enumerate(polys):
        for e, c in p.terms.items():
            out[(-pos, sum(e)) + tuple(-x for x in reversed(e))] = c
    return out


def key_exponent(k):
    return tuple(-x for x in reversed(k[2:]))


def from_vec(v: dict, ring: PolyRing, rank: int):
    parts = [dict() for _ in range(rank)]
    for k, c in v.items():
        parts[-k[0]][key_exponent(k)] = c
    return tuple(Poly(ring, t) for t in parts)


def _divides(a, b):
    """Does the key a divide the key b (same position assumed)?"""
    for x, y in zip(a[2:], b[2:]):
        if x < y:
            return False
    return True


def _lcm(a, b):
    tail = tuple(x if x < y else y for x, y in zip(a[2:], b[2:]))
    return (a[0], -sum(tail)) + tail


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _coprime(a, b):
    for x, y in zip(a[2:], b[2:]):
        if x and y:
            return False
    return True


class _Element:
    __slots__ = ("terms", "lead", "deg", "single", "tag")

    def __init__(self, vec: dict, deg, tag=None):
        lead = max(vec)
        c = vec[lead]
        if c != 1:
            inv = 1 / c
            vec = {k: v * inv for k, v in vec.items()}
        items = sorted(vec.items(), reverse=True)
        self.terms = items
        self.lead = lead
        self.deg = deg
        self.single = all(k[0] == lead[0] for k, _ in items)
        self.tag = tag


class _Reducer:
    """Lead-term index of a growing basis, bucketed by position."""

    def __init__(self):
        self.elems = []
        self.by_pos = {}

    def add(self, el):
        self.elems.append(el)
        self.by_pos.setdefault(el.lead[0], []).append(len(self.elems) - 1)

    def find(self, key):
        for idx in self.by_pos.get(key[0], ()):
            if _divides(self.elems[idx].lead, key):
                return idx
        return None

    def reduce(self, vec: dict, full=True, record=None):
        """Normal form of vec.  If ``record`` is a list, quotients
        (element index, monomial shift key, coefficient) are appended."""
        v = dict(vec)
        out = {}
        while v:
            t = max(v)
            c = v.pop(t)
            idx = self.find(t)
            if idx is None:
                if not full:
                    v[t] = c
                    v.update(out)
                    return v
                out[t] = c
                continue
            el = self.elems[idx]
            shift = _sub(t, el.lead)
            if record is not None:
                record.append((idx, shift, c))
            for k, gc in el.terms[1:]:
                nk = _add(k, shift)
                nv = v.get(nk, 0) - c * gc
                if nv:
                    v[nk] = nv
                else:
                    v.pop(nk, None)
        return out


def _spoly(a: _Element, b: _Element, L):
    sa = _sub(L, a.lead)
    sb = _sub(L, b.lead)
    v = {}
    for k, c in a.terms[1:]:
        nk = _add(k, sa)
        v[nk] = v.get(nk, 0) + c
    for k, c in b.terms[1:]:
        nk = _add(k, sb)
        nv = v.get(nk, 0) - c
        if nv:
            v[nk] = nv
        else:
            v.pop(nk, None)
    return {k: c for k, c in v.items() if c}


def _vec_degree(v, degrees):
    k = next(iter(v))
    return k[1] + degrees[-k[0]]


def _check_homogeneous(v, degrees):
    d = None
    for k in v:
        dd = k[1] + degrees[-k[0]]
        if d is None:
            d = dd
        elif dd != d:
            raise NotHomogeneous("inhomogeneous generator")
    return d


@dataclass
class _GBResult:
    elems: list
    complete_to: object  # None = complete, else highest degree processed
    minimal: list        # indices (into the input list) of non-redundant generators


def buchberger(gens, degrees, relations=(), degree_cap=None, truncate=False):
    """Degree-by-degree Buchberger for homogeneous module vectors.

    ``gens`` and ``relations`` are key-dicts; relation vectors (e.g. I·e_k
    for quotient rings) are processed before ordinary generators in each
    degree so that the ``minimal`` list reports which ordinary generators
    are needed modulo the relations.
    """
    if degree_cap is None and not truncate:
        degree_cap = default_degree_cap()
    pending = {}
    for kind, seq in ((0, relations), (2, gens)):
        for i, g in enumerate(seq):
            g = {k: c for k, c in g.items() if c}
            if not g:
                continue
            d = _check_homogeneous(g, degrees)
            pending.setdefault(d, []).append((kind, i, g))
    red = _Reducer()
    active = []  # indices of elements whose leads are minimal
    pairs = {}   # degree -> list of (i, j, lcm)
    minimal = []
    complete_to = None
    while pending or pairs:
        d = min(list(pending) + list(pairs))
        if degree_cap is not None and d > degree_cap:
            if truncate:
                complete_to = degree_cap
                break
            raise CapExceeded(f"Gröbner basis computation exceeded degree cap {degree_cap}")
        todo = []
        for i, j, L in pairs.pop(d, []):
            todo.append((1, None, (i, j, L)))
        todo.sort(key=lambda t: t[2][2], reverse=False)
        items = pending.pop(d, [])
        items.sort(key=lambda t: t[0])
        ordered = [t for t in items if t[0] == 0] + todo + [t for t in items if t[0] == 2]
        for kind, tag, payload in ordered:
            if kind == 1:
                i, j, L = payload
                vec = _spoly(red.elems[i], red.elems[j], L)
            else:
                vec = payload
            if not vec:
                continue
            h = red.reduce(vec)
            if not h:
                continue
            if kind == 2:
                minimal.append(tag)
            el = _Element(h, d, tag=(kind, tag))
            red.add(el)
            new = len(red.elems) - 1
            _update_pairs(red, active, pairs, new, degrees)
    return _GBResult(red.elems, complete_to, minimal), red


def _update_pairs(red, active, pairs, new, degrees):
    """Gebauer–Möller update for a new basis element."""
    h = red.elems[new]
    cand = []
    for g in active:
        ge = red.elems[g]
        if ge.lead[0] != h.lead[0]:
            continue
        L = _lcm(ge.lead, h.lead)
        cop = ge.single and h.single and _coprime(ge.lead, h.lead)
        cand.append((g, L, cop))
    # chain criterion among the new pairs (Gebauer–Möller)
    kept = []
    for idx, (g, L, cop) in enumerate(cand):
        if cop:
            kept.append((g, L, cop))
            continue
        others = cand[idx + 1:] + kept
        if any(_divides(L2, L) for _, L2, _ in others):
            continue
        kept.append((g, L, cop))
    keep = [t for t in kept if not t[2]]
    # prune old pairs whose lcm is divisible by lead(h) strictly
    for d in list(pairs):
        lst = []
        for i, j, L in pairs[d]:
            if L[0] == h.lead[0] and _divides(h.lead, L):
                Li = _lcm(red.elems[i].lead, h.lead)
                Lj = _lcm(red.elems[j].lead, h.lead)
                if Li != L and Lj != L:
                    continue
            lst.append((i, j, L))
        if lst:
            pairs[d] = lst
        else:
            del pairs[d]
    for g, L, cop in keep:
        deg = L[1] + degrees[-L[0]]
        pairs.setdefault(deg, []).append((g, new, L))
    active[:] = [g for g in active if not (red.elems[g].lead[0] == h.lead[0] and _divides(h.lead, red.elems[g].lead))]
    active.append(new)


# ------------------------------------------------------------ public objects

def _ideal_relations(quotient, free: FreeModule):
    rel = []
    for k in range(free.rank):
        for f in quotient:
            v = [free.ring.zero()] * free.rank
            v[k] = f
            rel.append(to_vec(v))
    return rel


@dataclass(eq=False)
class SubmoduleBasis:
    """Generators of a submodule of ``free``, optionally over S/(quotient).

    After :func:`groebner` the object also carries the internal basis.
    """

    free: FreeModule
    gens: tuple
    quotient: tuple = ()
    is_groebner: bool = False
    complete_to: object = None
    _red: object = dc_field(default=None, repr=False)
    _minimal: object = dc_field(default=None, repr=False)

    def __post_init__(self):
        self.gens = tuple(tuple(g) for g in self.gens)
        self.quotient = tuple(self.quotient)
        for g in self.gens:
            if len(g) != self.free.rank:
                raise ValueError("generator length does not match the free module rank")

    @property
    def ring(self):
        return self.free.ring

    def nonzero_gens(self):
        return tuple(g for g in self.gens if any(not p.is_zero() for p in g))

    def basis_vectors(self):
        """The Gröbner elements (as Poly vectors), excluding pure quotient relations
        only if they came from the quotient ideal."""
        self._need_gb()
        return [from_vec(dict(e.terms), self.ring, self.free.rank) for e in self._red.elems]

    def lead_keys(self):
        self._need_gb()
        return [e.lead for e in self._red.elems]

    def _need_gb(self):
        if self._red is None:
            raise NotGroebner("call groebner() first")

    def normal_form(self, v):
        self._need_gb()
        return from_vec(self._red.reduce(to_vec(v)), self.ring, self.free.rank)

    def contains(self, v) -> bool:
        self._need_gb()
        if self.complete_to is not None:
            d = self.free.vector_degree(v)
            if d is not None and d > self.complete_to:
                raise CapExceeded("membership query above the truncation degree")
        return not self._red.reduce(to_vec(v))

    def lead_monomials(self):
        """Per position, the exponent vectors of the lead terms (a monomial module)."""
        self._need_gb()
        out = [[] for _ in range(self.free.rank)]
        for e in self._red.elems:
            out[-e.lead[0]].append(key_exponent(e.lead))
        return out

    def minimal_gens(self):
        """Non-redundant subset of the generators (modulo the quotient ideal)."""
        self._need_gb()
        return tuple(self.gens[i] for i in sorted(self._minimal))

    def is_zero(self):
        if not self.nonzero_gens():
            return True
        G = groebner(self)
        return all(not G._red.reduce(to_vec(g)) for g in [])  if False else all(
            not _ideal_reduce(self, g) for g in self.nonzero_gens())

    def to_json(self):
        return {
            "degrees": list(self.free.degrees),
            "gens": [[str(p) for p in g] for g in self.gens],
            "quotient": [str(f) for f in self.quotient],
        }


def groebner(sub: SubmoduleBasis, degree_cap=None, truncate=False) -> SubmoduleBasis:
    """Gröbner basis of a homogeneous submodule, over S or S/(quotient)."""
    if sub._red is not None and (sub.complete_to is None or truncate):
        return sub
    gens = [to_vec(g) for g in sub.gens]
    rel = _ideal_relations(sub.quotient, sub.free)
    res, red = buchberger(gens, sub.free.degrees, rel, degree_cap=degree_cap, truncate=truncate)
    out = SubmoduleBasis(sub.free, sub.gens, sub.quotient, True, res.complete_to)
    out._red = red
    out._minimal = res.minimal
    return out


def submodule(free, gens, quotient=(), **kw) -> SubmoduleBasis:
    return groebner(SubmoduleBasis(free, gens, quotient), **kw)


def ideal(ring, polys, quotient=(), **kw) -> SubmoduleBasis:
    F = FreeModule(ring, (0,))
    return submodule(F, [(p,) for p in polys], quotient, **kw)


def kernel_of_map(phi: GradedMap, quotient=(), degree_cap=None, truncate=False) -> SubmoduleBasis:
    """Generators of ker(phi) in phi.source, over S/(quotient) when given.

    Computed from a position-over-term basis of the graph vectors
    (phi(e_j), e_j) with the target block first.  With ``truncate`` the
    generators are only complete through degree ``degree_cap``."""
    phi.check_degrees()
    src, tgt = phi.source, phi.target
    m, n = tgt.rank, src.rank
    big = FreeModule(phi.ring, tgt.degrees + src.degrees)
    zero = phi.ring.zero()
    gens = []
    for j in range(n):
        col = phi.column(j)
        e = [zero] * n
        e[j] = phi.ring.one()
        gens.append(to_vec(list(col) + e))
    rel = []
    for k in range(m):
        for f in quotient:
            v = [zero] * (m + n)
            v[k] = f
            rel.append(to_vec(v))
    res, red = buchberger(gens, big.degrees, rel, degree_cap=degree_cap, truncate=truncate)
    kers = []
    for el in red.elems:
        if -el.lead[0] >= m:
            v = from_vec(dict(el.terms), phi.ring, m + n)
            kers.append(v[m:])
    return SubmoduleBasis(src, _drop_zero(kers), quotient, complete_to=res.complete_to)


def _drop_zero(vs):
    return [v for v in vs if any(not p.is_zero() for p in v)]


def colon(sub: SubmoduleBasis, f: Poly, degree_cap=None) -> SubmoduleBasis:
    """{v : f v ∈ sub}."""
    if f.is_zero():
        raise ValueError("colon by the zero polynomial")
    F = sub.free
    r = F.rank
    ring = F.ring
    df = f.degree()
    zero = ring.zero()
    # map  F(-df) ⊕ G  ->  F, (v, w) -> f v + gens·w ; kernel projected to the first block
    big = FreeModule(ring, F.degrees + tuple(d + df for d in F.degrees))
    gens = []
    for k in range(r):
        v = [zero] * (2 * r)
        v[k] = f
        v[r + k] = ring.one()
        gens.append(to_vec(v))
    rel = []
    for g in sub.gens:
        if any(not p.is_zero() for p in g):
            rel.append(to_vec(list(g) + [zero] * r))
    for k in range(r):
        for q in sub.quotient:
            v = [zero] * (2 * r)
            v[k] = q
            rel.append(to_vec(v))
    _, red = buchberger(gens, big.degrees, rel, degree_cap=degree_cap)
    out = []
    for el in red.elems:
        if -el.lead[0] >= r:
            v = from_vec(dict(el.terms), ring, 2 * r)
            out.append(v[r:])
    # the kernel lives in F shifted by df; as vectors of F they are the colon elements
    return SubmoduleBasis(F, _drop_zero(out), sub.quotient)


def same_submodule(a: SubmoduleBasis, b: SubmoduleBasis) -> bool:
    a = groebner(a)
    b = groebner(b)
    return all(a.contains(g) for g in b.gens) and all(b.contains(g) for g in a.gens)


def saturate_by_poly(sub: SubmoduleBasis, g: Poly, degree_cap=None) -> SubmoduleBasis:
    cur = groebner(sub, degree_cap=degree_cap)
    while True:
        nxt = groebner(colon(cur, g, degree_cap), degree_cap=degree_cap)
        if all(cur.contains(v) for v in nxt.gens):
            return cur
        cur = nxt


def intersect(a: SubmoduleBasis, b: SubmoduleBasis, degree_cap=None) -> SubmoduleBasis:
    F = a.free
    r = F.rank
    ring = F.ring
    zero = ring.zero()
    big = FreeModule(ring, F.degrees + F.degrees)
    gens = [to_vec(list(g) + list(g)) for g in a.nonzero_gens()]
    gens += [to_vec(list(g) + [zero] * r) for g in b.nonzero_gens()]
    rel = []
    for k in range(r):
        for q in a.quotient:
            v = [zero] * (2 * r)
            v[k] = q
            rel.append(to_vec(v))
    _, red = buchberger(gens, big.degrees, rel, degree_cap=degree_cap)
    out = []
    for el in red.elems:
        if -el.lead[0] >= r:
            out.append(from_vec(dict(el.terms), ring, 2 * r)[r:])
    return SubmoduleBasis(F, _drop_zero(out), a.quotient)


def saturate(sub: SubmoduleBasis, J, degree_cap=None) -> SubmoduleBasis:
    """sub : J^∞ for an ideal J given by a list of polynomials.

    The saturation by J equals the intersection of the saturations by its
    generators; each of those is an iterated colon that stops once two
    consecutive steps agree."""
    J = [g for g in J if not g.is_zero()]
    if not J:
        raise ValueError("saturation by the zero ideal")
    if any(g.is_constant() for g in J):
        return groebner(sub, degree_cap=degree_cap)
    result = None
    for g in J:
        s = saturate_by_poly(sub, g, degree_cap)
        result = s if result is None else groebner(intersect(result, s, degree_cap), degree_cap=degree_cap)
    return result


def irrelevant_ideal(ring):
    return ring.gens


def syzygies(G: SubmoduleBasis) -> SubmoduleBasis:
    """Schreyer syzygies of a Gröbner basis.

    The basis is the internal one of ``G`` (quotient relations included);
    the returned vectors live in the free module whose basis vectors are
    these elements, with their degrees."""
    if G._red is None or not G.is_groebner:
        raise NotGroebner("syzygies need a Gröbner basis as input")
    red = G._red
    elems = red.elems
    degs = tuple(e.deg for e in elems)
    ring = G.ring
    m = len(elems)
    Fs = FreeModule(ring, degs)
    out = []
    for i in range(m):
        for j in range(i + 1, m):
            a, b = elems[i], elems[j]
            if a.lead[0] != b.lead[0]:
                continue
            L = _lcm(a.lead, b.lead)
            rec = []
            rest = red.reduce(_spoly(a, b, L), full=True, record=rec)
            if rest:
                raise NotGroebner("an S-pair does not reduce to zero; input is not a Gröbner basis")
            coeffs = [dict() for _ in range(m)]
            ea = key_exponent(_sub(L, a.lead))
            eb = key_exponent(_sub(L, b.lead))
            coeffs[i][ea] = coeffs[i].get(ea, 0) + 1
            coeffs[j][eb] = coeffs[j].get(eb, 0) - 1
            for idx, shift, c in rec:
                e = key_exponent(shift)
                coeffs[idx][e] = coeffs[idx].get(e, 0) - c
            vec = tuple(Poly(ring, t) for t in coeffs)
            if any(not p.is_zero() for p in vec):
                out.append(vec)
    return SubmoduleBasis(Fs, out)


def gb_elements(G: SubmoduleBasis):
    """Gröbner elements as Poly vectors together with their degrees."""
    G._need_gb()
    return [(from_vec(dict(e.terms), G.ring, G.free.rank), e.deg) for e in G._red.elems]


def is_groebner_basis(G: SubmoduleBasis) -> bool:
    """Buchberger criterion spot check: all S-pairs reduce to zero."""
    G._need_gb()
    red = G._red
    els = red.elems
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            if els[i].lead[0] != els[j].lead[0]:
                continue
            if red.reduce(_spoly(els[i], els[j], _lcm(els[i].lead, els[j].lead))):
                return False
    return True
