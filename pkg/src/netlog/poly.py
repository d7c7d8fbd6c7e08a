"""Sparse multivariate polynomials over an exact field, graded by total degree."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

from .field import QQ, ExtElement, FieldSpec, scalar_str


class PolyError(ValueError):
    pass


def grevlex_key(exp):
    """Sort key: larger key = larger monomial in degree reverse lexicographic order."""
    return (sum(exp),) + tuple(-e for e in reversed(exp))


@dataclass(frozen=True)
class PolyRing:
    variables: tuple
    field: FieldSpec = QQ

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not self.variables:
            raise PolyError("a polynomial ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise PolyError("duplicate variable names")
        if not self.field.is_rational and self.field.generator in self.variables:
            raise PolyError("field generator name clashes with a variable")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @cached_property
    def _zero_exp(self):
        return (0,) * self.nvars

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = self.field(c)
        return Poly(self, {self._zero_exp: c} if c != 0 else {})

    def gen(self, i: int) -> "Poly":
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field(1)})

    @property
    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def index(self, name: str) -> int:
        return self.variables.index(name)

    def monomial(self, exp, c=1) -> "Poly":
        return Poly(self, {tuple(exp): self.field(c)})

    def monomials_of_degree(self, d: int):
        """All exponent vectors of total degree d, grevlex-descending."""
        if d < 0:
            return []
        out = list(_compositions(d, self.nvars))
        out.sort(key=grevlex_key, reverse=True)
        return out

    def with_field(self, field: FieldSpec) -> "PolyRing":
        return PolyRing(self.variables, field)

    def parse(self, text) -> "Poly":
        if isinstance(text, Poly):
            return text
        if isinstance(text, (int,)):
            return self.const(text)
        return _Parser(self, str(text)).parse()

    def to_json(self):
        return {"variables": list(self.variables), "field": self.field.to_json()}

    @classmethod
    def from_json(cls, data):
        return cls(tuple(data["variables"]), FieldSpec.from_json(data.get("field")))


def _compositions(d, n):
    if n == 1:
        yield (d,)
        return
    for i in range(d, -1, -1):
        for rest in _compositions(d - i, n - 1):
            yield (i,) + rest


class Poly:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c != 0}
        self._hash = None

    # -- basic queries --
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def lead_exp(self):
        return max(self.terms, key=grevlex_key)

    def lead_coeff(self):
        return self.terms[self.lead_exp()]

    def coeff(self, exp):
        return self.terms.get(tuple(exp), self.ring.field(0))

    def constant_value(self):
        if not self.is_constant():
            raise PolyError("not a constant polynomial")
        return self.terms.get(self.ring._zero_exp, self.ring.field(0))

    def variables_used(self):
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return used

    # -- arithmetic --
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise PolyError("polynomials from different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        o = self._coerce(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.ring.field(other)
            return Poly(self.ring, {e: c * v for e, v in self.terms.items()})
        o = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise PolyError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "Poly":
        return self * c

    def mul_monomial(self, exp, c=1) -> "Poly":
        c = self.ring.field(c)
        return Poly(self.ring, {tuple(a + b for a, b in zip(e, exp)): c * v for e, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self == self.ring.const(other)
        except (TypeError, ValueError, ArithmeticError):
            return False

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- calculus and substitution --
    def derivative(self, i: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return Poly(self.ring, out)

    def evaluate(self, point):
        field = self.ring.field
        pt = [field(v) for v in point]
        total = field(0)
        for e, c in self.terms.items():
            term = c
            for v, k in zip(pt, e):
                if k:
                    term = term * v**k
            total = total + term
        return total

    def substitute(self, images) -> "Poly":
        """Ring map x_i -> images[i]; all images must share one target ring."""
        if len(images) != self.ring.nvars:
            raise PolyError("need one image per variable")
        target = images[0].ring
        degs = {g.degree() for g in images if not g.is_zero()}
        if any(not g.is_homogeneous() for g in images) or len(degs) > 1:
            raise PolyError("substitution images must be homogeneous of a common degree")
        cache = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] ** k
            return cache[key]

        out = target.zero()
        for e, c in self.terms.items():
            term = target.const(_lift_scalar(c, target.field))
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
                    if term.is_zero():
                        break
            out = out + term
        return out

    def with_field(self, field: FieldSpec) -> "Poly":
        ring = self.ring.with_field(field)
        return Poly(ring, {e: _lift_scalar(c, field) for e, c in self.terms.items()})

    def content_free(self) -> "Poly":
        """Rational multiple with coprime integer coefficients and positive lead coefficient."""
        if self.is_zero() or not self.ring.field.is_rational:
            return self
        from math import gcd, lcm

        coeffs = [c for _, c in self.sorted_terms()]
        den = 1
        for c in coeffs:
            den = lcm(den, int(c.denominator))
        nums = [int(c * den) for c in coeffs]
        g = 0
        for n in nums:
            g = gcd(g, n)
        s = 1 if nums[0] > 0 else -1
        return self * (self.ring.field(den) / (g * s))

    # -- printing --
    def __str__(self):
        if not self.terms:
            return "0"
        field = self.ring.field
        pieces = []
        for e, c in self.sorted_terms():
            mon = "*".join(
                (v if k == 1 else f"{v}^{k}") for v, k in zip(self.ring.variables, e) if k
            )
            neg = False
            if field.is_rational or (isinstance(c, ExtElement) and c.is_rational()):
                val = c.c[0] if isinstance(c, ExtElement) else c
                if val < 0:
                    neg, val = True, -val
                cs = str(val)
                if mon and cs == "1":
                    cs = ""
            else:
                cs = scalar_str(c, field)
            body = f"{cs}*{mon}" if (cs and mon) else (cs or mon)
            pieces.append(("-" if neg else "+", body))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Poly({self})"


def _lift_scalar(c, field: FieldSpec):
    if isinstance(c, ExtElement):
        if field.is_rational:
            if not c.is_rational():
                raise PolyError("cannot move an irrational coefficient into Q")
            return c.c[0]
        return field(c) if c.field == field else field(c.c[0]) if c.is_rational() else _bad(c)
    return field(c)


def _bad(c):
    raise PolyError(f"coefficient {c} lies in a different extension")


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\^|\*\*)|(.))")


class _Parser:
    """Recursive-descent parser for the printed polynomial syntax."""

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.toks = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                raise PolyError(f"cannot tokenize {text!r} at {pos}")
            num, name, powop, other = m.groups()
            if num is not None:
                self.toks.append(("num", num, m.start(1)))
            elif name is not None:
                self.toks.append(("name", name, m.start(2)))
            elif powop is not None:
                self.toks.append(("^", "^", m.start(3)))
            elif other is not None and other.strip():
                self.toks.append((other, other, m.start(4)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind=None):
        if self.i >= len(self.toks):
            raise PolyError(f"unexpected end of input in {self.text!r}")
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise PolyError(f"expected {kind!r} at position {tok[2]} in {self.text!r}, got {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self) -> Poly:
        if not self.toks:
            raise PolyError("empty polynomial string")
        out = self.expr()
        if self.i != len(self.toks):
            tok = self.toks[self.i]
            raise PolyError(f"unexpected {tok[1]!r} at position {tok[2]} in {self.text!r}")
        return out

    def expr(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        out = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self):
        out = self.factor()
        while self.peek() in ("*", "/", "(", "name", "num"):
            if self.peek() == "/":
                self.take()
                d = self.factor()
                if not d.is_constant() or d.is_zero():
                    raise PolyError("can only divide by a nonzero constant")
                out = out * (1 / d.constant_value())
                continue
            if self.peek() == "*":
                self.take()
            out = out * self.factor()
        return out

    def factor(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            k = int(self.take("num")[1])
            base = base**k
        return base

    def atom(self):
        kind = self.peek()
        if kind == "num":
            from fractions import Fraction

            return self.ring.const(Fraction(self.take()[1]))
        if kind == "name":
            name = self.take()[1]
            if name in self.ring.variables:
                return self.ring.gen(self.ring.index(name))
            f = self.ring.field
            if not f.is_rational and name == f.generator:
                return self.ring.const(f.gen())
            raise PolyError(f"unknown symbol {name!r} in {self.text!r}")
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "-":
            self.take()
            return -self.factor()
        tok = self.toks[self.i] if self.i < len(self.toks) else (None, "<end>", len(self.text))
        raise PolyError(f"unexpected {tok[1]!r} at position {tok[2]} in {self.text!r}")


def standard_ring(nvars: int, prefix: str = "x", field: FieldSpec = QQ) -> PolyRing:
    return PolyRing(tuple(f"{prefix}{i}" for i in range(nvars)), field)


def partial_derivative(f: Poly, i: int) -> Poly:
    return f.derivative(i)


def substitute(f: Poly, images) -> Poly:
    return f.substitute(images)


def gradient(f: Poly):
    return [f.derivative(i) for i in range(f.ring.nvars)]
