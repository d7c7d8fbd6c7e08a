"""Restriction of presented modules to rational curves and splitting types on P^1."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from . import modules as md
from .field import QQ, FieldSpec, cyclotomic3
from .groebner import FreeModule
from .modules import PresentedModule
from .poly import Poly, PolyRing


class CurveError(ValueError):
    pass


def line_ring(field: FieldSpec = QQ) -> PolyRing:
    return PolyRing(("s", "t"), field)


@dataclass
class RationalCurve:
    name: str
    params: tuple
    in_D: bool | None = None
    curve_class: str = ""

    def __post_init__(self):
        self.params = tuple(self.params)
        degs = {p.degree() for p in self.params if not p.is_zero()}
        if len(degs) != 1 or any(not p.is_homogeneous() for p in self.params):
            raise CurveError(f"{self.name}: parametrization must be forms of one common degree")
        ring = self.ring
        hp = md._hp_of_ideal(ring, [p for p in self.params if not p.is_zero()])
        if not hp.is_zero():
            raise CurveError(f"{self.name}: parametrizing forms have a common zero")

    @property
    def ring(self) -> PolyRing:
        return self.params[0].ring

    @property
    def degree(self) -> int:
        return next(p.degree() for p in self.params if not p.is_zero())

    @classmethod
    def parse(cls, name, forms, field: FieldSpec = QQ, **kw):
        ring = line_ring(field)
        return cls(name, tuple(ring.parse(f) for f in forms), **kw)

    def pull(self, f: Poly) -> Poly:
        return f.substitute(self.params)

    def lies_on(self, polys) -> bool:
        return all(self.pull(f).is_zero() for f in polys)

    def to_json(self):
        return {
            "name": self.name,
            "field": self.ring.field.to_json(),
            "params": [str(p) for p in self.params],
            "in_D": self.in_D,
            "class": self.curve_class,
        }

    @classmethod
    def from_json(cls, data):
        fld = FieldSpec.from_json(data["field"]) if "field" in data else QQ
        return cls.parse(data["name"], data["params"], fld, in_D=data.get("in_D"), curve_class=data.get("class", ""))


@dataclass(frozen=True)
class SplittingType:
    degrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(sorted(self.degrees, reverse=True)))

    @property
    def rank(self):
        return len(self.degrees)

    @property
    def total(self):
        return sum(self.degrees)

    def __str__(self):
        return "(" + ", ".join(str(a) for a in self.degrees) + ")"

    def to_json(self):
        return list(self.degrees)


def pullback(M: PresentedModule, C: RationalCurve, check=True) -> PresentedModule:
    """Substitute the parametrization into a presentation of M."""
    if check and not C.lies_on(M.ideal):
        raise CurveError(f"curve {C.name} does not lie on the support variety")
    T = C.ring
    e = C.degree
    F0 = FreeModule(T, tuple(d * e for d in M.target.degrees))
    rels = [tuple(C.pull(p) for p in col) for col in M.relations]
    return PresentedModule(T, (), F0, rels, True, None, f"{M.name}|{C.name}")


def splitting_type(Mc: PresentedModule) -> SplittingType:
    """Degrees of the line bundles in (Mc~ / torsion) on P^1.

    The double dual over k[s,t] is reflexive, hence graded free, and its sheaf
    is the torsion-free part of Mc~."""
    if Mc.ring.nvars != 2:
        raise CurveError("splitting types are read off over k[s,t]")
    if Mc.target.rank == 0:
        return SplittingType(())
    D = md.prune(md.double_dual(Mc))
    if D.relations:
        raise CurveError("double dual over k[s,t] is not free")
    return SplittingType(tuple(-d for d in D.target.degrees))


def restrict_split(M: PresentedModule, C: RationalCurve) -> SplittingType:
    return splitting_type(pullback(M, C))


def degree_from_hilbert(Mc: PresentedModule, rank: int) -> int:
    """deg of the torsion-free part from Hilbert data: chi(E|C(t)) = r(t+1) + deg + len(torsion)."""
    hp = Mc.hilbert_polynomial()
    tors = md.torsion_submodule(Mc).hilbert_polynomial() if Mc.relations else None
    tl = int(tors.coefficient(0)) if tors is not None else 0
    return int(hp(0)) - rank - tl


# ------------------------------------------------------------------ quadric bookkeeping

def quadric_rulings(field: FieldSpec = QQ, a=(1, 1), b=(1, 1)):
    """Rulings of V(x0x3 - x1x2): A = [a0 s: a0 t: a1 s: a1 t], B = [b0 s: b1 s: b0 t: b1 t].

    A has class (1,0) and B class (0,1); O(a,b)|_A = O(b), O(a,b)|_B = O(a)."""
    T = line_ring(field)
    s, t = T.gens
    A = RationalCurve(f"A[{a[0]}:{a[1]}]", (s * a[0], t * a[0], s * a[1], t * a[1]), curve_class="(1,0)")
    B = RationalCurve(f"B[{b[0]}:{b[1]}]", (s * b[0], s * b[1], t * b[0], t * b[1]), curve_class="(0,1)")
    return A, B


def bidegree_c1(M: PresentedModule, a=(1, 1), b=(1, 1)):
    """(a, b) with c1 = O(a, b): a from a B-ruling, b from an A-ruling.

    The default rulings avoid [1:0:0:0]."""
    A, B = quadric_rulings(M.ring.field, a, b)
    return restrict_split(M, B).total, restrict_split(M, A).total


# ------------------------------------------------------------------ catalog

def load_catalog(path=None):
    """Named curves from a JSON catalog (the bundled one by default)."""
    if path is None:
        text = resources.files("netlog.examples").joinpath("curves.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    try:
        data = json.loads(text)
        out = {}
        for entry in data["curves"]:
            C = RationalCurve.from_json(entry)
            out[C.name] = C
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as err:
        raise CurveError(f"bad curve catalog: {err}") from err
    return out


def fermat_lines_over_Q():
    T = line_ring()
    s, t = T.gens
    return [
        RationalCurve("L01_23", (s, -s, t, -t)),
        RationalCurve("L02_13", (s, t, -s, -t)),
        RationalCurve("L03_12", (s, t, -t, -s)),
    ]


def fermat_line_omega():
    K = cyclotomic3()
    T = line_ring(K)
    s, t = T.gens
    w = K.gen()
    return RationalCurve("Lw01_23", (s, s * (-w), t, -t))


@dataclass
class SplitRecord:
    curve: str
    splitting: SplittingType
    in_D: bool | None = None
    flag: bool = False
    extra: dict = field(default_factory=dict)

    def to_json(self):
        out = {"curve": self.curve, "splitting": self.splitting.to_json(), "in_D": self.in_D, "flag": self.flag}
        out.update(self.extra)
        return out


def contained_in(C: RationalCurve, polys) -> bool:
    return C.lies_on(polys)
