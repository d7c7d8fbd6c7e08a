"""Hilbert series of monomial modules, Hilbert polynomials and Hilbert data."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb


# --------------------------------------------------- monomial ideals

def _minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(sorted(out))


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _padd(a, b, sign=1, shift=0):
    n = max(len(a), len(b) + shift)
    out = list(a) + [0] * (n - len(a))
    for i, y in enumerate(b):
        out[i + shift] += sign * y
    return out


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


@lru_cache(maxsize=20000)
def _numerator(gens):
    """K-polynomial of S/I for a minimal tuple of monomial generators:
    HS(S/I) = N(T) / (1 - T)^n."""
    if not gens:
        return (1,)
    if any(sum(g) == 0 for g in gens):
        return (0,)
    # base case: pairwise coprime generators
    support = [frozenset(i for i, x in enumerate(g) if x) for g in gens]
    coprime = True
    seen = set()
    for s in support:
        if seen & s:
            coprime = False
            break
        seen |= s
    if coprime:
        out = [1]
        for g in gens:
            d = sum(g)
            out = _pmul(out, [1] + [0] * (d - 1) + [-1])
        return tuple(_trim(out))
    # pivot on the most frequent variable, at its smallest positive exponent
    n = len(gens[0])
    counts = [sum(1 for g in gens if g[i]) for i in range(n)]
    i = max(range(n), key=lambda k: counts[k])
    e = min(g[i] for g in gens if g[i])
    p = tuple(e if k == i else 0 for k in range(n))
    # N(I) = N(I + (p)) + T^e N(I : p)
    plus = _minimalize(gens + (p,))
    colon = _minimalize(tuple(tuple(max(a - b, 0) for a, b in zip(g, p)) for g in gens))
    out = _padd(list(_numerator(plus)), list(_numerator(colon)), 1, e)
    return tuple(_trim(out))


def ideal_numerator(gens, nvars):
    gens = [tuple(g) for g in gens]
    if not gens:
        return (1,)
    return _numerator(_minimalize(tuple(gens)))


def module_numerator(lead_monomials, degrees, nvars):
    """K-polynomial of F / M for a monomial submodule given per position;
    may carry negative degree shifts, so returned as {power: coeff}."""
    out = {}
    for pos, gens in enumerate(lead_monomials):
        num = ideal_numerator(gens, nvars)
        for k, c in enumerate(num):
            if c:
                out[k + degrees[pos]] = out.get(k + degrees[pos], 0) + c
    return {k: c for k, c in out.items() if c}


# ----------------------------------------------------- polynomials in t

@dataclass(frozen=True)
class HilbertPolynomial:
    """Polynomial in t with rational coefficients, low degree first."""

    coeffs: tuple

    def __post_init__(self):
        c = [Fraction(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_binomial_sum(cls, terms):
        """sum of c * binom(t + a, n) for (c, a, n) in terms."""
        total = [Fraction(0)]
        for c, a, n in terms:
            # binom(t + a, n) = prod_{i=0}^{n-1} (t + a - i) / n!
            p = [Fraction(1)]
            for i in range(n):
                p = _pmul_f(p, [Fraction(a - i), Fraction(1)])
            fact = 1
            for i in range(2, n + 1):
                fact *= i
            p = [x * c / fact for x in p]
            total = _padd_f(total, p)
        return cls(tuple(total))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, t):
        v = Fraction(0)
        for c in reversed(self.coeffs):
            v = v * t + c
        return v

    def __add__(self, other):
        return HilbertPolynomial(tuple(_padd_f(list(self.coeffs), list(_hp(other).coeffs))))

    def __sub__(self, other):
        return self + _hp(other).scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        return HilbertPolynomial(tuple(x * c for x in self.coeffs))

    def shift(self, k):
        """t -> t + k."""
        out = [Fraction(0)]
        for c in reversed(self.coeffs):
            out = _pmul_f(out, [Fraction(k), Fraction(1)])
            out = _padd_f(out, [c])
        return HilbertPolynomial(tuple(out))

    def __eq__(self, other):
        try:
            return self.coeffs == _hp(other).coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def leading_coefficient(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coefficient(self, k):
        return self.coeffs[k] if k < len(self.coeffs) else Fraction(0)

    def is_zero(self):
        return not self.coeffs

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mon = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            a = abs(c)
            cs = "" if (a == 1 and mon) else str(a)
            body = f"{cs}{mon}" if not (cs and mon and a.denominator != 1) else f"({cs}){mon}"
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out

    __repr__ = __str__

    def to_json(self):
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data):
        return cls(tuple(Fraction(c) for c in data))


def _hp(x):
    if isinstance(x, HilbertPolynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return HilbertPolynomial((Fraction(x),))
    if isinstance(x, (list, tuple)):
        return HilbertPolynomial(tuple(x))
    raise TypeError(f"cannot compare with {type(x).__name__}")


def _pmul_f(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _padd_f(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def binomial_poly(a, n):
    """t -> binom(t + a, n) as a polynomial."""
    return HilbertPolynomial.from_binomial_sum([(1, a, n)])


# -------------------------------------------------- series -> data

def series_to_polynomial(numer: dict, nvars: int) -> HilbertPolynomial:
    """HP of  sum_k numer[k] T^k / (1-T)^nvars ."""
    if nvars == 0:
        return HilbertPolynomial(())
    return HilbertPolynomial.from_binomial_sum(
        [(c, nvars - 1 - k, nvars - 1) for k, c in numer.items()]
    )


def series_coefficient(numer: dict, nvars: int, t: int) -> int:
    total = 0
    for k, c in numer.items():
        m = t - k
        if m >= 0:
            total += c * comb(m + nvars - 1, nvars - 1)
    return total


def agreement_index(numer: dict, nvars: int) -> int:
    """First degree from which the Hilbert function equals the polynomial.
    Beyond max(k) - nvars + 1 the two provably coincide; scan back from there."""
    if not numer:
        return -(10**9)
    hp = series_to_polynomial(numer, nvars)
    top = max(numer) - nvars + 1
    lo = min(numer)
    t = top
    while t - 1 >= lo - nvars - 1 and series_coefficient(numer, nvars, t - 1) == hp(t - 1):
        t -= 1
    return t


@dataclass
class HilbertData:
    window: tuple
    table: dict
    polynomial: HilbertPolynomial
    agreement: int
    warning: str = ""
    numerator: dict = field(default_factory=dict, repr=False)
    nvars: int = 0

    def value(self, t):
        return series_coefficient(self.numerator, self.nvars, t)

    def to_json(self):
        return {
            "window": list(self.window),
            "function": {str(t): v for t, v in sorted(self.table.items())},
            "polynomial": str(self.polynomial),
            "polynomial_coefficients": self.polynomial.to_json(),
            "agreement_index": self.agreement,
            "warning": self.warning,
        }


def hilbert_data(numer: dict, nvars: int, window=(0, 8)) -> HilbertData:
    lo, hi = window
    table = {t: series_coefficient(numer, nvars, t) for t in range(lo, hi + 1)}
    hp = series_to_polynomial(numer, nvars)
    idx = agreement_index(numer, nvars)
    warn = ""
    if idx > hi:
        warn = f"agreement index {idx} lies beyond the tabulated window"
    return HilbertData((lo, hi), table, hp, idx, warn, dict(numer), nvars)
