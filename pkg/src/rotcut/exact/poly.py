"""Dense univariate polynomials over the rationals."""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]

_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?")


def as_rational(x: Union[int, str, Fraction]) -> Fraction:
    """Coerce an int, ``"p/q"`` string or Fraction into a normalized Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        if not _RATIONAL.fullmatch(x.strip()):
            raise ValueError(f"expected an exact rational 'p/q', got {x!r}")
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def sgn(x) -> int:
    """Sign of a Fraction/int, or of any value exposing ``sign()``."""
    if isinstance(x, (int, Fraction)):
        return (x > 0) - (x < 0)
    return x.sign()


class Poly:
    """Immutable polynomial, coefficients lowest degree first.

    The zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls((c,))

    @classmethod
    def linear_root(cls, r: Fraction) -> "Poly":
        """The monic polynomial ``x - r``."""
        return cls((-r, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(f"{c}" if i == 0 else f"{c}*x^{i}" if i > 1 else f"{c}*x")
        return "Poly(" + " + ".join(terms) + ")"

    # arithmetic

    @staticmethod
    def _lift(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return NotImplemented

    def __add__(self, other) -> "Poly":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv_lead = 1 / other.lead
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] * inv_lead
            if c == 0:
                continue
            quot[i - dq] = c
            for j, b in enumerate(other.coeffs):
                rem[i - dq + j] -= c * b
        return Poly(quot), Poly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    # evaluation and transforms

    def __call__(self, x):
        """Horner evaluation; works for any ring value mixing with Fractions."""
        if not self.coeffs:
            return Fraction(0)
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        return self * (1 / self.lead)

    def primitive(self) -> "Poly":
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        if not self.coeffs:
            return self
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Poly([Fraction(v, g) for v in ints])

    def shift(self, a: Fraction) -> "Poly":
        """Return p(x + a) (Taylor shift)."""
        cs = list(self.coeffs)
        n = len(cs)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                cs[j] += a * cs[j + 1]
        return Poly(cs)

    def scale(self, h: Fraction) -> "Poly":
        """Return p(h * x)."""
        out, f = [], Fraction(1)
        for c in self.coeffs:
            out.append(c * f)
            f *= h
        return Poly(out)

    def reversed_to(self, d: int) -> "Poly":
        """Return x^d p(1/x) for d >= degree."""
        cs = list(self.coeffs) + [Fraction(0)] * (d + 1 - len(self.coeffs))
        return Poly(cs[::-1])

    def sign_variations(self) -> int:
        prev, count = 0, 0
        for c in self.coeffs:
            s = (c > 0) - (c < 0)
            if s == 0:
                continue
            if prev and s != prev:
                count += 1
            prev = s
        return count

    def cauchy_bound(self) -> Fraction:
        """Every real root lies strictly inside (-B, B)."""
        lead = abs(self.lead)
        return 1 + max((abs(c) / lead for c in self.coeffs[:-1]), default=Fraction(0))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both are zero)."""
    while b.coeffs:
        a, b = b, a % b
    return a.monic()


def sqf_part(p: Poly) -> Poly:
    """Square-free part, primitive integer normalization."""
    if p.degree <= 0:
        return p.primitive()
    g = poly_gcd(p, p.derivative())
    return (p // g).primitive() if g.degree > 0 else p.primitive()


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, p.derivative()]
    while seq[-1].coeffs:
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def _variations_at(seq: Sequence[Poly], x) -> int:
    signs = []
    for q in seq:
        if x == "+inf":
            s = sgn(q.lead)
        elif x == "-inf":
            s = sgn(q.lead) * (-1 if q.degree % 2 else 1)
        else:
            s = sgn(q(x))
        if s:
            signs.append(s)
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def sturm_count(p: Poly, lo=None, hi=None) -> int:
    """Number of distinct real roots in the half-open interval (lo, hi].

    ``None`` bounds stand for -inf / +inf.
    """
    seq = sturm_sequence(sqf_part(p))
    a = _variations_at(seq, "-inf" if lo is None else lo)
    b = _variations_at(seq, "+inf" if hi is None else hi)
    return a - b
