"""Exact coefficient fields: the rationals and simple extensions Q[a]/(m(a))."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq


class FieldError(ArithmeticError):
    pass


class ReducibleMinpolyError(FieldError):
    """Raised when inversion exposes a nontrivial factor of the minimal polynomial."""

    def __init__(self, factor):
        self.factor = factor
        super().__init__(f"minimal polynomial is reducible: found factor {_upoly_str(factor)}")


def _q(x) -> mpq:
    if isinstance(x, mpq):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(Fraction(x.strip()).numerator, Fraction(x.strip()).denominator)
    return mpq(x)


# --- univariate polynomials over Q as coefficient lists, low degree first ---

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _upoly_divmod(a, b):
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    q = [mpq(0)] * max(len(a) - len(b) + 1, 1)
    lb = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lb
        k = len(a) - len(b)
        q[k] = c
        for i, bi in enumerate(b):
            a[i + k] -= c * bi
        a = _trim(a)
    return _trim(q), a


def _upoly_mul(a, b):
    if not a or not b:
        return []
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim(out)


def _upoly_sub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _upoly_str(p, var="a"):
    p = _trim(p)
    if not p:
        return "0"
    parts = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mon:
            cs = "" if c == 1 else ("-" if c == -1 else f"{c}*")
        else:
            cs = f"{c}"
        parts.append(f"{cs}{mon}")
    return " + ".join(parts).replace("+ -", "- ")


def _upoly_ext_gcd(a, b):
    """Return (g, s) with g = gcd(a, b) monic and s*a = g mod b."""
    r0, r1 = _trim(a), _trim(b)
    s0, s1 = [mpq(1)], []
    while r1:
        q, r = _upoly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _upoly_sub(s0, _upoly_mul(q, s1))
    lc = r0[-1]
    return [c / lc for c in r0], [c / lc for c in s0]


@dataclass(frozen=True)
class FieldSpec:
    """A coefficient field.

    ``kind`` is ``"rationals"`` or ``"simple-extension"``; for an extension,
    ``minpoly`` lists the rational coefficients of the monic minimal
    polynomial from the constant term up, and ``generator`` is the name the
    polynomial parser and printer use for the adjoined root.
    """

    kind: str = "rationals"
    minpoly: tuple = ()
    generator: str = "w"

    def __post_init__(self):
        if self.kind not in ("rationals", "simple-extension"):
            raise FieldError(f"unknown field kind {self.kind!r}")
        if self.kind == "simple-extension":
            mp = tuple(Fraction(c) for c in self.minpoly)
            if len(mp) < 2 or mp[-1] != 1:
                raise FieldError("minimal polynomial must be monic and non-constant")
            object.__setattr__(self, "minpoly", mp)

    @property
    def degree(self) -> int:
        return 1 if self.kind == "rationals" else len(self.minpoly) - 1

    @property
    def is_rational(self) -> bool:
        return self.kind == "rationals"

    def check_irreducible(self):
        """Exact irreducibility check of the minimal polynomial over Q."""
        if self.is_rational:
            return
        import sympy

        a = sympy.Symbol("a")
        m = sum(sympy.Rational(c.numerator, c.denominator) * a**i for i, c in enumerate(self.minpoly))
        _, factors = sympy.factor_list(m, a, domain="QQ")
        if len(factors) > 1 or factors[0][1] > 1:
            f = sympy.Poly(factors[0][0], a).monic().all_coeffs()[::-1]
            raise ReducibleMinpolyError([_q(Fraction(int(c.p), int(c.q))) for c in f])

    # -- element construction --
    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def __call__(self, x):
        if self.is_rational:
            if isinstance(x, ExtElement):
                raise FieldError("cannot coerce an extension element into Q")
            return _q(x)
        if isinstance(x, ExtElement):
            if x.field != self:
                raise FieldError("element belongs to a different extension")
            return x
        return ExtElement(self, (_q(x),) + (mpq(0),) * (self.degree - 1))

    def gen(self):
        if self.is_rational:
            raise FieldError("Q has no adjoined generator")
        coords = [mpq(0)] * self.degree
        coords[1 % self.degree] = mpq(1)
        if self.degree == 1:
            coords = [-_q(self.minpoly[0])]
        return ExtElement(self, tuple(coords))

    def to_json(self):
        if self.is_rational:
            return {"kind": "rationals"}
        return {
            "kind": "simple-extension",
            "minpoly": [str(c) for c in self.minpoly],
            "generator": self.generator,
        }

    @classmethod
    def from_json(cls, data):
        if data is None or data == "QQ" or data.get("kind", "rationals") == "rationals":
            return QQ
        return cls("simple-extension", tuple(Fraction(c) for c in data["minpoly"]), data.get("generator", "w"))


QQ = FieldSpec()


def cyclotomic3(generator="w") -> FieldSpec:
    """Q(w) with w^2 + w + 1 = 0."""
    return FieldSpec("simple-extension", (1, 1, 1), generator)


class ExtElement:
    """Element of Q[a]/(m(a)) stored as its reduced coordinate vector."""

    __slots__ = ("field", "c")

    def __init__(self, field: FieldSpec, coords):
        self.field = field
        n = field.degree
        c = [_q(x) for x in coords]
        if len(c) > n:
            _, c = _upoly_divmod(c, [_q(m) for m in field.minpoly])
        c = list(c) + [mpq(0)] * (n - len(c))
        self.c = tuple(c)

    def _coerce(self, other):
        if isinstance(other, ExtElement):
            return other
        return self.field(other)

    def __add__(self, other):
        o = self._coerce(other)
        return ExtElement(self.field, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return ExtElement(self.field, [-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        prod = _upoly_mul(list(self.c), list(o.c))
        return ExtElement(self.field, prod if prod else [0])

    __rmul__ = __mul__

    def inverse(self):
        if not any(self.c):
            raise ZeroDivisionError("inverse of zero in extension field")
        m = [_q(x) for x in self.field.minpoly]
        g, s = _upoly_ext_gcd(_trim(list(self.c)), m)
        if len(g) > 1:
            raise ReducibleMinpolyError(g)
        return ExtElement(self.field, s if s else [0])

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, ExtElement):
            return self.field == other.field and self.c == other.c
        try:
            return self.c == self.field(other).c
        except (FieldError, TypeError, ValueError):
            return False

    def __hash__(self):
        if not any(self.c[1:]):
            return hash(self.c[0])
        return hash(self.c)

    def __bool__(self):
        return any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def __repr__(self):
        return f"ExtElement({self})"

    def __str__(self):
        return _upoly_str(list(self.c), self.field.generator)


def field_invert(a, spec: FieldSpec = QQ):
    """Exact multiplicative inverse of a nonzero field element."""
    a = spec(a)
    if spec.is_rational:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a
    return a.inverse()


def scalar_str(c, field: FieldSpec) -> str:
    if field.is_rational or (isinstance(c, ExtElement) and c.is_rational()):
        v = c.c[0] if isinstance(c, ExtElement) else c
        return str(v)
    return f"({c})"


def is_unit_scalar(c) -> bool:
    return c == 1


def as_fraction(x) -> Fraction:
    """Rational field element (mpq, int, Fraction) as a Fraction."""
    if isinstance(x, ExtElement):
        if not x.is_rational():
            raise FieldError("irrational element has no Fraction value")
        x = x.c[0]
    if isinstance(x, Fraction):
        return x
    return Fraction(int(x.numerator), int(x.denominator))
