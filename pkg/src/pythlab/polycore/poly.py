"""Sparse multivariate polynomials with exact rational coefficients.

Monomials are exponent tuples in the fixed variable order (x, y, z).  A
``Poly`` is an immutable map from exponent tuple to nonzero ``Fraction``.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence, Tuple, Union

Mono = Tuple[int, ...]
Scalar = Union[int, Fraction]

VAR_NAMES = ("x", "y", "z")


def as_rat(value) -> Fraction:
    """Coerce ints, Fractions and decimal/fraction strings to ``Fraction``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, (int, Rational, str)):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


def mono_order_key(mono: Mono) -> tuple:
    """Graded lexicographic key (larger key = larger monomial)."""
    return (sum(mono), mono)


class Poly:
    __slots__ = ("_terms", "_nvars", "_hash")

    def __init__(self, terms: Mapping[Mono, Scalar] | Iterable[tuple[Mono, Scalar]] | None = None,
                 nvars: int = 2):
        if nvars not in (1, 2, 3):
            raise ValueError(f"unsupported variable count {nvars}")
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        acc: dict[Mono, Fraction] = {}
        for mono, coef in items:
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars:
                raise ValueError(f"exponent vector {mono} does not match {nvars} variables")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            c = as_rat(coef)
            if c:
                acc[mono] = acc.get(mono, Fraction(0)) + c
        self._terms = {m: c for m, c in acc.items() if c}
        self._nvars = nvars
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "Poly":
        p = object.__new__(cls)
        p._terms = terms
        p._nvars = nvars
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Scalar, nvars: int = 2) -> "Poly":
        c = as_rat(c)
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def var(cls, index: int, nvars: int = 2) -> "Poly":
        e = [0] * nvars
        e[index] = 1
        return cls._raw({tuple(e): Fraction(1)}, nvars)

    @classmethod
    def monomial(cls, mono: Sequence[int], coef: Scalar = 1) -> "Poly":
        return cls({tuple(mono): coef}, len(mono))

    @classmethod
    def zero(cls, nvars: int = 2) -> "Poly":
        return cls._raw({}, nvars)

    # -- basic accessors ------------------------------------------------
    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> Mapping[Mono, Fraction]:
        return MappingProxyType(self._terms)

    def __iter__(self) -> Iterator[tuple[Mono, Fraction]]:
        return iter(self.sorted_terms())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, mono: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def degree_in(self, index: int) -> int:
        return max((m[index] for m in self._terms), default=-1)

    @property
    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    @property
    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self._nvars, Fraction(0))

    def sorted_terms(self) -> list[tuple[Mono, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: mono_order_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Mono, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms.items(), key=lambda t: mono_order_key(t[0]))

    def support(self) -> list[Mono]:
        return [m for m, _ in self.sorted_terms()]

    def uses_var(self, index: int) -> bool:
        return any(m[index] for m in self._terms)

    # -- embedding -----------------------------------------------------
    def lift(self, nvars: int) -> "Poly":
        if nvars == self._nvars:
            return self
        if nvars < self._nvars:
            if any(any(m[nvars:]) for m in self._terms):
                raise ValueError("cannot drop a variable the polynomial depends on")
            return Poly._raw({m[:nvars]: c for m, c in self._terms.items()}, nvars)
        pad = (0,) * (nvars - self._nvars)
        return Poly._raw({m + pad: c for m, c in self._terms.items()}, nvars)

    def _coerce(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            if other._nvars == self._nvars:
                return other
            if other._nvars < self._nvars:
                return other.lift(self._nvars)
            return None
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly.const(other, self._nvars)
        return None

    def _align(self, other) -> tuple["Poly", "Poly"]:
        o = self._coerce(other)
        if o is None:
            if isinstance(other, Poly):
                return self.lift(other._nvars), other
            raise TypeError(f"cannot combine Poly with {type(other).__name__}")
        return self, o

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other) -> "Poly":
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        out = dict(a._terms)
        for m, c in b._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly._raw(out, a._nvars)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self._terms.items()}, self._nvars)

    def __sub__(self, other) -> "Poly":
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def scale(self, c: Scalar) -> "Poly":
        c = as_rat(c)
        if not c:
            return Poly.zero(self._nvars)
        return Poly._raw({m: v * c for m, v in self._terms.items()}, self._nvars)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        out: dict[Mono, Fraction] = {}
        for m1, c1 in a._terms.items():
            for m2, c2 in b._terms.items():
                m = tuple(i + j for i, j in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Poly._raw({m: c for m, c in out.items() if c}, a._nvars)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Poly":
        if isinstance(other, Poly):
            if not other.is_constant or other.is_zero:
                raise ZeroDivisionError("division only by nonzero constants")
            other = other.constant_term
        c = as_rat(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self.scale(1 / c)

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.const(1, self._nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison / hashing ------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            if other._nvars != self._nvars:
                try:
                    a, b = self._align(other)
                except (TypeError, ValueError):
                    return False
                return a._terms == b._terms
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == Poly.const(other, self._nvars)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            trimmed = frozenset((m[:2] if len(m) == 3 and m[2] == 0 else m, c)
                                for m, c in self._terms.items())
            self._hash = hash(trimmed)
        return self._hash

    # -- evaluation ----------------------------------------------------
    def __call__(self, *point) -> Fraction:
        return self.evaluate(point)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self._nvars:
            raise ValueError(f"expected {self._nvars} coordinates, got {len(point)}")
        pt = [as_rat(v) for v in point]
        total = Fraction(0)
        for m, c in self._terms.items():
            t = c
            for v, e in zip(pt, m):
                if e:
                    t *= v ** e
            total += t
        return total

    def evaluate_float(self, point: Sequence[float]) -> float:
        total = 0.0
        for m, c in self._terms.items():
            t = float(c)
            for v, e in zip(point, m):
                if e:
                    t *= v ** e
            total += t
        return total

    def derivative(self, index: int) -> "Poly":
        out = {}
        for m, c in self._terms.items():
            e = m[index]
            if e:
                mm = list(m)
                mm[index] = e - 1
                out[tuple(mm)] = c * e
        return Poly._raw(out, self._nvars)

    def swap_xy(self) -> "Poly":
        return Poly._raw({(m[1], m[0]) + m[2:]: c for m, c in self._terms.items()}, self._nvars)

    def primitive_integer(self) -> tuple[Fraction, "Poly"]:
        """Return ``(c, p)`` with ``self == c * p`` and ``p`` integral with unit content."""
        from math import gcd, lcm

        if not self._terms:
            return Fraction(1), self
        den = 1
        for c in self._terms.values():
            den = lcm(den, c.denominator)
        g = 0
        for c in self._terms.values():
            g = gcd(g, c.numerator * (den // c.denominator))
        scale = Fraction(g, den)
        return scale, self.scale(1 / scale)

    # -- display ----------------------------------------------------------
    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"

    def to_json(self) -> list[dict]:
        return [{"exps": list(m), "num": str(c.numerator), "den": str(c.denominator)}
                for m, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: list[dict], nvars: int | None = None) -> "Poly":
        if not isinstance(data, list):
            raise ValueError("polynomial JSON must be a list of terms")
        if nvars is None:
            nvars = len(data[0]["exps"]) if data else 2
        terms = []
        for t in data:
            den = int(t.get("den", "1"))
            if den <= 0:
                raise ValueError("denominator must be positive")
            terms.append((tuple(t["exps"]), Fraction(int(t["num"]), den)))
        return cls(terms, nvars)


def format_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_mono(mono: Mono, names: Sequence[str] = VAR_NAMES) -> str:
    parts = []
    for name, e in zip(names, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: Poly, names: Sequence[str] = VAR_NAMES) -> str:
    if p.is_zero:
        return "0"
    pieces = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        body = format_mono(m, names)
        if not body:
            text = format_coef(a)
        elif a == 1:
            text = body
        else:
            text = f"{format_coef(a)}*{body}"
        if i == 0:
            pieces.append(text if sign == "+" else f"-{text}")
        else:
            pieces.append(f" {sign} {text}")
    return "".join(pieces)


X = Poly.var(0)
Y = Poly.var(1)
ONE = Poly.const(1)
