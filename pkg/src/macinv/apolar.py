"""Polynomials with exact coefficients and the contraction action.

A monomial is a tuple of nonnegative exponents, one per variable; variable
``x{k}`` is position ``k-1``. The same :class:`Poly` type stands for
operators in R and for elements of the inverse-system ring P; ``contract``
lets an operator act on a polynomial as a constant-coefficient differential
operator, ``contract(x1**2, x1**4) == 12*x1**2``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb

MAX_VARS = 13

Monomial = tuple  # tuple[int, ...]


def mono_degree(m: Monomial) -> int:
    return sum(m)


def grlex_key(m: Monomial):
    """Sort key; larger key means larger in graded-lex with x1 > x2 > ..."""
    return (sum(m), m)


def monomials_of_degree(nvars: int, d: int) -> list[Monomial]:
    """All degree-d monomials in ``nvars`` variables, grlex descending."""
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def monomials_up_to(nvars: int, d: int) -> list[Monomial]:
    out = []
    for k in range(d, -1, -1):
        out.extend(monomials_of_degree(nvars, k))
    return out


def dim_R(nvars: int, d: int) -> int:
    """Number of degree-d monomials in ``nvars`` variables."""
    if d < 0:
        return 0
    if nvars == 0:
        return int(d == 0)
    return comb(nvars + d - 1, d)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def divisors(m: Monomial):
    """Every monomial dividing ``m`` (including 1 and ``m``)."""
    out = [()]
    for e in m:
        out = [p + (k,) for p in out for k in range(e + 1)]
    return out


@lru_cache(maxsize=None)
def _contract_coeff(a: Monomial, b: Monomial) -> int:
    c = 1
    for x, y in zip(a, b):
        for k in range(y - x + 1, y + 1):
            c *= k
    return c


def contract_monomial(a: Monomial, b: Monomial):
    """(c, x^(b-a)) with c = prod b_i!/(b_i-a_i)!, or None if a does not divide b."""
    if not divides(a, b):
        return None
    return _contract_coeff(a, b), tuple(y - x for x, y in zip(a, b))


class Poly:
    """Sparse polynomial: a map from monomials to nonzero Fractions."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, terms=None, nvars: int | None = None):
        clean = {}
        if terms:
            for m, c in dict(terms).items():
                m = tuple(m)
                if nvars is None:
                    nvars = len(m)
                if len(m) != nvars or any(e < 0 for e in m):
                    raise ValueError(f"bad exponent vector {m} for {nvars} variables")
                c = Fraction(c)
                if c:
                    clean[m] = clean.get(m, 0) + c
                    if not clean[m]:
                        del clean[m]
        if nvars is None:
            raise ValueError("nvars is required for the zero polynomial")
        self.nvars = nvars
        self.terms = clean
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def monomial(cls, exps, coeff=1) -> "Poly":
        return cls({tuple(exps): coeff}, len(exps))

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        """The variable x_{i+1} (0-based index)."""
        e = [0] * nvars
        e[i] = 1
        return cls.monomial(e)

    @classmethod
    def const(cls, c, nvars: int) -> "Poly":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def parse(cls, text: str, nvars: int | None = None) -> "Poly":
        return parse_poly(text, nvars)

    # basic queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self) -> int:
        if not self.terms:
            raise ValueError("the zero polynomial has no degree")
        return max(sum(m) for m in self.terms)

    @property
    def order(self) -> int:
        if not self.terms:
            raise ValueError("the zero polynomial has no order")
        return min(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly({m: c for m, c in self.terms.items() if sum(m) == d}, self.nvars)

    def coeff(self, m: Monomial) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def support(self) -> list[Monomial]:
        return sorted(self.terms, key=grlex_key, reverse=True)

    def sorted_terms(self):
        return [(m, self.terms[m]) for m in sorted(self.terms, key=grlex_key, reverse=True)]

    def lift(self, nvars: int) -> "Poly":
        """View the polynomial in ``nvars >= self.nvars`` variables."""
        if nvars < self.nvars:
            if any(any(m[nvars:]) for m in self.terms):
                raise ValueError("polynomial uses variables beyond the target count")
            return Poly({m[:nvars]: c for m, c in self.terms.items()}, nvars)
        pad = (0,) * (nvars - self.nvars)
        return Poly({m + pad: c for m, c in self.terms.items()}, nvars)

    # arithmetic ---------------------------------------------------------
    def _same(self, other):
        if self.nvars != other.nvars:
            raise ValueError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other):
        if isinstance(other, Poly):
            self._same(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly({m: c * other for m, c in self.terms.items()}, self.nvars)
        if not isinstance(other, Poly):
            return NotImplemented
        self._same(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Poly.const(1, self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.nvars)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Poly({format_poly(self)!r}, nvars={self.nvars})"

    def __str__(self):
        return format_poly(self)

    # vectors ------------------------------------------------------------
    def to_vector(self, index: dict) -> list[Fraction]:
        v = [Fraction(0)] * len(index)
        for m, c in self.terms.items():
            v[index[m]] = c
        return v

    @classmethod
    def from_vector(cls, vec, frame, nvars: int) -> "Poly":
        return cls({m: c for m, c in zip(frame, vec) if c}, nvars)


def variables(nvars: int) -> list[Poly]:
    return [Poly.var(i, nvars) for i in range(nvars)]


def contract(op: Poly, g: Poly) -> Poly:
    """op(d/dx1, ..., d/dxr) applied to g."""
    if op.nvars != g.nvars:
        raise ValueError(f"variable-count mismatch: {op.nvars} vs {g.nvars}")
    out: dict = {}
    for a, ca in op.terms.items():
        for b, cb in g.terms.items():
            r = contract_monomial(a, b)
            if r is not None:
                k, m = r
                out[m] = out.get(m, 0) + ca * cb * k
    return Poly(out, g.nvars)


def pairing(f: Poly, g: Poly) -> Fraction:
    """Constant term of ``contract(f, g)``; <x^a, x^a> = a!."""
    if f.nvars != g.nvars:
        raise ValueError(f"variable-count mismatch: {f.nvars} vs {g.nvars}")
    total = Fraction(0)
    for a, ca in f.terms.items():
        cb = g.terms.get(a)
        if cb is not None:
            total += ca * cb * _contract_coeff(a, a)
    return total


def top_form(f: Poly, s: int) -> Poly:
    """The degree-s homogeneous part of ``f``; requires ``deg f == s``."""
    if f.is_zero() or f.degree != s:
        raise ValueError(f"polynomial does not have degree {s}")
    return f.homogeneous_part(s)


# --- text grammar --------------------------------------------------------

class ParseError(ValueError):
    def __init__(self, msg: str, offset: int):
        super().__init__(f"{msg} at byte {offset}")
        self.offset = offset


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>x(?P<idx>\d+))|(?P<op>[-+*/^])|(?P<bad>\S))")


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        if m.end() == pos:
            break
        start = m.start(m.lastgroup)
        boff = len(text[:start].encode())
        if m.group("bad") is not None:
            if m.group("bad").isalpha():
                raise ParseError(f"unknown variable {m.group('bad')!r}", boff)
            raise ParseError(f"unexpected character {m.group('bad')!r}", boff)
        if m.group("num") is not None:
            out.append(("num", int(m.group("num")), boff))
        elif m.group("var") is not None:
            out.append(("var", int(m.group("idx")), boff))
        else:
            out.append(("op", m.group("op"), boff))
        pos = m.end()
    out.append(("end", None, len(text.encode())))
    return out


def parse_poly(text: str, nvars: int | None = None) -> Poly:
    """Parse e.g. ``"x1^4 + x1^2*x2^2 - 1/2*x3^2"``.

    ``*`` between factors may be omitted. Without ``nvars`` the variable
    count is the largest index used (at least 1).
    """
    toks = _tokens(text)
    pos = 0

    def peek():
        return toks[pos]

    def take(kind, val=None):
        nonlocal pos
        t = toks[pos]
        if t[0] != kind or (val is not None and t[1] != val):
            what = "end of input" if t[0] == "end" else repr(t[1])
            raise ParseError(f"expected {val or kind}, found {what}", t[2])
        pos += 1
        return t

    terms = []  # (coeff, {var: exp})
    sign = 1
    if peek()[0] == "op" and peek()[1] in "+-":
        sign = -1 if take("op")[1] == "-" else 1
    while True:
        coeff = Fraction(sign)
        got_any = False
        if peek()[0] == "num":
            num = take("num")[1]
            den = 1
            if peek()[0] == "op" and peek()[1] == "/":
                take("op", "/")
                t = take("num")
                if t[1] == 0:
                    raise ParseError("zero denominator", t[2])
                den = t[1]
            coeff *= Fraction(num, den)
            got_any = True
            if peek()[0] == "op" and peek()[1] == "*":
                take("op", "*")
                if peek()[0] != "var":
                    raise ParseError("expected variable after '*'", peek()[2])
        exps: dict = {}
        while peek()[0] == "var":
            _, idx, off = take("var")
            if idx < 1:
                raise ParseError(f"unknown variable x{idx}", off)
            if idx > MAX_VARS:
                raise ParseError(f"variable index {idx} exceeds {MAX_VARS}", off)
            e = 1
            if peek()[0] == "op" and peek()[1] == "^":
                take("op", "^")
                e = take("num")[1]
            exps[idx] = exps.get(idx, 0) + e
            got_any = True
            if peek()[0] == "op" and peek()[1] == "*":
                take("op", "*")
                if peek()[0] != "var":
                    raise ParseError("expected variable after '*'", peek()[2])
        if not got_any:
            t = peek()
            what = "end of input" if t[0] == "end" else repr(t[1])
            raise ParseError(f"expected a term, found {what}", t[2])
        terms.append((coeff, exps))
        t = peek()
        if t[0] == "end":
            break
        if t[0] == "op" and t[1] in "+-":
            take("op")
            sign = -1 if t[1] == "-" else 1
            continue
        raise ParseError(f"unexpected {t[1]!r}", t[2])

    used = max((i for _, ex in terms for i in ex), default=1)
    if nvars is None:
        nvars = used
    elif used > nvars:
        raise ParseError(f"variable x{used} exceeds the {nvars} declared variables", 0)
    out: dict = {}
    for c, ex in terms:
        m = [0] * nvars
        for i, e in ex.items():
            m[i - 1] = e
        m = tuple(m)
        out[m] = out.get(m, 0) + c
    return Poly(out, nvars)


def format_monomial(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts) if parts else "1"


def format_poly(p: Poly) -> str:
    """Canonical text: terms in descending graded-lex order."""
    if p.is_zero():
        return "0"
    out = []
    for k, (m, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        mono = format_monomial(m)
        if mono == "1":
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)
