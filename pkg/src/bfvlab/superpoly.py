"""Free graded-commutative polynomials with exact rational coefficients.

A ``GeneratorTable`` fixes an ordered list of named generators with integer
degrees.  Odd generators square to zero.  A ``SuperPoly`` stores a dict from
exponent tuples (one entry per generator, in table order) to ``Fraction``;
a monomial always means the product of its generators in table order.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

_NAME = re.compile(r"[a-z]+[0-9]+")


class Generator(NamedTuple):
    name: str
    degree: int


class ParseError(ValueError):
    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.message = message
        self.column = column


class GeneratorTable:
    def __init__(self, generators: Iterable[Generator]):
        self.generators = tuple(Generator(*g) for g in generators)
        self.names = tuple(g.name for g in self.generators)
        self.degrees = tuple(g.degree for g in self.generators)
        self.index = {}
        for k, name in enumerate(self.names):
            if not _NAME.fullmatch(name):
                raise ValueError(f"bad generator name {name!r}")
            if name in self.index:
                raise ValueError(f"duplicate generator {name!r}")
            self.index[name] = k
        self.odd = tuple(k for k, d in enumerate(self.degrees) if d % 2)
        self.is_odd = tuple(d % 2 == 1 for d in self.degrees)
        self.size = len(self.names)
        self.unit = (0,) * self.size

    def __repr__(self):
        return f"GeneratorTable({', '.join(self.names)})"

    def idx(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise ValueError(f"unknown generator {name!r}") from None

    def mono_degree(self, mono) -> int:
        return sum(e * d for e, d in zip(mono, self.degrees) if e)

    def mono_mul(self, m1, m2):
        """Return (sign, product) or None when an odd generator repeats."""
        # sign counts pairs (i in m1, j in m2) of odd generators with i > j
        inversions = 0
        seen = 0
        for k in self.odd:
            a, b = m1[k], m2[k]
            if a and b:
                return None
            if a:
                inversions += seen
            elif b:
                seen += 1
        return (-1 if inversions % 2 else 1), tuple(a + b for a, b in zip(m1, m2))


class SuperPoly:
    __slots__ = ("table", "terms")

    def __init__(self, table: GeneratorTable, terms: Mapping | None = None):
        self.table = table
        clean = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    clean[mono] = Fraction(c)
        self.terms = clean

    # construction -----------------------------------------------------------
    @classmethod
    def const(cls, table, value) -> "SuperPoly":
        return cls(table, {table.unit: Fraction(value)} if value else None)

    @classmethod
    def gen(cls, table, name: str, power: int = 1) -> "SuperPoly":
        k = table.idx(name)
        if power > 1 and table.is_odd[k]:
            return cls(table)
        mono = [0] * table.size
        mono[k] = power
        return cls(table, {tuple(mono): Fraction(1)})

    @classmethod
    def _raw(cls, table, terms) -> "SuperPoly":
        p = cls.__new__(cls)
        p.table = table
        p.terms = terms
        return p

    def zero(self) -> "SuperPoly":
        return SuperPoly._raw(self.table, {})

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, SuperPoly):
            if other.table is not self.table:
                raise ValueError("polynomials over different generator tables")
            return other
        if isinstance(other, (int, Fraction)):
            return SuperPoly.const(self.table, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for mono, c in other.terms.items():
            v = out.get(mono, 0) + c
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return SuperPoly._raw(self.table, out)

    __radd__ = __add__

    def __neg__(self):
        return SuperPoly._raw(self.table, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "SuperPoly":
        c = Fraction(c)
        if not c:
            return self.zero()
        return SuperPoly._raw(self.table, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        out = SuperPoly.const(self.table, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SuperPoly.const(self.table, other)
        if not isinstance(other, SuperPoly):
            return NotImplemented
        return self.table is other.table and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"SuperPoly({serialize(self)})"

    def __str__(self):
        return serialize(self)

    # inspection -------------------------------------------------------------
    def degrees(self) -> set[int]:
        return {self.table.mono_degree(m) for m in self.terms}

    def degree(self) -> int:
        """Degree of a homogeneous polynomial (0 for the zero polynomial)."""
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError(f"inhomogeneous polynomial, degrees {sorted(ds)}")
        return ds.pop() if ds else 0

    def homogeneous_parts(self) -> dict[int, "SuperPoly"]:
        parts: dict[int, dict] = {}
        for m, c in self.terms.items():
            parts.setdefault(self.table.mono_degree(m), {})[m] = c
        return {d: SuperPoly._raw(self.table, t) for d, t in parts.items()}

    def used(self) -> set[int]:
        """Indices of generators occurring in some term."""
        out = set()
        for m in self.terms:
            out.update(k for k, e in enumerate(m) if e)
        return out

    def filter(self, keep) -> "SuperPoly":
        return SuperPoly._raw(self.table, {m: c for m, c in self.terms.items() if keep(m)})

    def coefficient(self, mono) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    # calculus ---------------------------------------------------------------
    def partial(self, name: str) -> "SuperPoly":
        return partial(name, self)

    def rpartial(self, name: str) -> "SuperPoly":
        return rpartial(name, self)

    def set_to_zero(self, names: Iterable[str]) -> "SuperPoly":
        return set_to_zero(names, self)

    def substitute(self, images: Mapping[str, "SuperPoly"]) -> "SuperPoly":
        return substitute(self, images)


def _check_same(a: SuperPoly, b: SuperPoly):
    if a.table is not b.table:
        raise ValueError("polynomials over different generator tables")


def multiply(a: SuperPoly, b: SuperPoly) -> SuperPoly:
    _check_same(a, b)
    table = a.table
    out: dict = {}
    mul = table.mono_mul
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            r = mul(m1, m2)
            if r is None:
                continue
            sign, m = r
            v = out.get(m, 0) + (c1 * c2 if sign > 0 else -c1 * c2)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return SuperPoly._raw(table, out)


def mono_lderiv(table: GeneratorTable, k: int, mono):
    """Left derivative of a monomial: (coefficient, monomial) or None."""
    e = mono[k]
    if not e:
        return None
    new = mono[:k] + (e - 1,) + mono[k + 1:]
    if table.is_odd[k]:
        before = sum(1 for j in table.odd if j < k and mono[j])
        return (-1 if before % 2 else 1), new
    return e, new


def mono_rderiv(table: GeneratorTable, k: int, mono):
    """Right derivative of a monomial: (coefficient, monomial) or None."""
    e = mono[k]
    if not e:
        return None
    new = mono[:k] + (e - 1,) + mono[k + 1:]
    if table.is_odd[k]:
        after = sum(1 for j in table.odd if j > k and mono[j])
        return (-1 if after % 2 else 1), new
    return e, new


def _deriv(p: SuperPoly, k: int, fn) -> SuperPoly:
    out: dict = {}
    for mono, c in p.terms.items():
        r = fn(p.table, k, mono)
        if r is None:
            continue
        f, m = r
        out[m] = out.get(m, 0) + f * c
    return SuperPoly(p.table, out)


def partial(name: str, p: SuperPoly) -> SuperPoly:
    """Left graded derivative d/d(name)."""
    return _deriv(p, p.table.idx(name), mono_lderiv)


def rpartial(name: str, p: SuperPoly) -> SuperPoly:
    """Right graded derivative, acting from the right."""
    return _deriv(p, p.table.idx(name), mono_rderiv)


def set_to_zero(names: Iterable[str], p: SuperPoly) -> SuperPoly:
    ks = [p.table.idx(n) for n in names]
    return p.filter(lambda m: not any(m[k] for k in ks))


def substitute(p: SuperPoly, images: Mapping[str, SuperPoly]) -> SuperPoly:
    """Algebra morphism sending the named generators to the given images.

    Images must have the parity of the generator they replace; generators not
    mentioned are fixed.
    """
    table = p.table
    subs = {}
    for name, img in images.items():
        k = table.idx(name)
        if img and any((d - table.degrees[k]) % 2 for d in img.degrees()):
            raise ValueError(f"image of {name} has the wrong parity")
        subs[k] = img
    if not subs:
        return p
    powers: dict = {}

    def power(k, e):
        key = (k, e)
        if key not in powers:
            powers[key] = subs[k] ** e
        return powers[key]

    out = SuperPoly(table)
    for mono, c in p.terms.items():
        # walk generators in table order so the product respects the normal order
        term = SuperPoly.const(table, c)
        run = [0] * table.size
        for k, e in enumerate(mono):
            if not e:
                continue
            if k in subs:
                if any(run):
                    term = term * SuperPoly(table, {tuple(run): 1})
                    run = [0] * table.size
                term = term * power(k, e)
            else:
                run[k] = e
            if not term:
                break
        if term and any(run):
            term = term * SuperPoly(table, {tuple(run): 1})
        out = out + term
    return out


# text form ------------------------------------------------------------------

def _sort_key(mono):
    return (sum(mono), tuple(-e for e in mono))


def serialize(p: SuperPoly) -> str:
    """Canonical text: terms by (total degree, lexicographic monomial).

    A unit coefficient in front of a nonempty monomial is omitted.
    """
    if not p.terms:
        return "0"
    names = p.table.names
    parts = []
    for mono in sorted(p.terms, key=_sort_key):
        c = p.terms[mono]
        factors = []
        for k, e in enumerate(mono):
            if e == 1:
                factors.append(names[k])
            elif e > 1:
                factors.append(f"{names[k]}^{e}")
        mag = abs(c)
        coeff = f"{mag.numerator}" if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
        if factors and mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([coeff] + factors)
        neg = c < 0
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[a-z]+[0-9]+)|(?P<op>[-+*/^]))")


def parse(text: str, table: GeneratorTable) -> SuperPoly:
    """Inverse of ``serialize``; also accepts explicit unit coefficients."""
    tokens = []
    pos = 0
    stripped_end = len(text.rstrip())
    while pos < stripped_end:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos + 1)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    if not tokens:
        raise ParseError("empty polynomial", 1)
    tokens.append(("end", "", stripped_end + 1))
    i = 0

    def peek():
        return tokens[i]

    def take(kind=None, value=None):
        nonlocal i
        tok = tokens[i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            raise ParseError(f"expected {want}, found {tok[1] or 'end of input'!r}", tok[2])
        i += 1
        return tok

    def factor():
        _, name, col = take("name")
        if name not in table.index:
            raise ParseError(f"unknown generator {name!r}", col)
        power = 1
        if peek()[1] == "^":
            take("op", "^")
            _, num, ncol = take("num")
            power = int(num)
            if power < 1:
                raise ParseError("exponent must be positive", ncol)
        return SuperPoly.gen(table, name, power)

    def term():
        coeff = Fraction(1)
        parts = []
        if peek()[0] == "num":
            _, num, _ = take("num")
            coeff = Fraction(int(num))
            if peek()[1] == "/":
                take("op", "/")
                _, den, dcol = take("num")
                if int(den) == 0:
                    raise ParseError("zero denominator", dcol)
                coeff /= int(den)
            if peek()[1] == "*":
                take("op", "*")
                parts.append(factor())
        else:
            parts.append(factor())
        while peek()[1] == "*":
            take("op", "*")
            parts.append(factor())
        out = SuperPoly.const(table, coeff)
        for f in parts:
            out = out * f
        return out

    total = SuperPoly(table)
    sign = 1
    if peek()[1] == "-":
        take("op", "-")
        sign = -1
    while True:
        t = term()
        total = total + (t if sign > 0 else -t)
        kind, val, col = peek()
        if kind == "end":
            break
        if val not in "+-" or kind != "op":
            raise ParseError(f"unexpected {val!r}", col)
        take()
        sign = 1 if val == "+" else -1
    return total
