"""Real algebraic numbers, infinitesimal perturbations and exact sign evaluation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, isqrt
from typing import Optional, Union

from .fields import Eps, QuadSurd, _surd_sign
from .poly import Poly, as_rational, format_rational, poly_gcd, sgn, sqf_part


def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def _descartes(p: Poly, a: Fraction, b: Fraction) -> int:
    """Descartes bound for the number of roots of p in the open interval (a, b)."""
    d = p.degree
    q = p.shift(a).scale(b - a)
    return q.reversed_to(d).shift(Fraction(1)).sign_variations()


class AlgebraicReal:
    """A real root of ``poly`` isolated by the open interval (lo, hi).

    ``poly`` is square-free with integer coefficients. A rational value is held
    as ``x - r`` with the degenerate interval ``lo == hi == r``.
    Instances are immutable; a private cache of the tightest known enclosure
    is kept for speed.
    """

    __slots__ = ("poly", "lo", "hi", "_quad", "_enc")

    def __init__(self, poly: Poly, lo, hi):
        lo, hi = as_rational(lo), as_rational(hi)
        poly = poly.primitive()
        if lo > hi:
            raise ValueError("empty isolating interval")
        if lo == hi:
            if poly(lo) != 0:
                raise ValueError("degenerate interval must hold an exact root")
            poly = Poly.linear_root(lo).primitive()
        elif poly(lo) == 0 or poly(hi) == 0:
            raise ValueError("isolating interval endpoints must not be roots")
        self._quad = None
        if poly.degree == 2 and lo != hi:
            c, b, a = (int(v) for v in poly.coeffs)
            disc = b * b - 4 * a * c
            if _is_square(disc):
                r = isqrt(disc)
                for root in (Fraction(-b - r, 2 * a), Fraction(-b + r, 2 * a)):
                    if lo < root < hi:
                        lo = hi = root
                        poly = Poly.linear_root(root).primitive()
                        break
                else:
                    raise ValueError("interval holds no root")
            else:
                self._quad = self._quad_form(a, b, disc, lo, hi)
        self.poly, self.lo, self.hi = poly, lo, hi
        self._enc = (lo, hi)

    @staticmethod
    def _quad_form(a: int, b: int, disc: int, lo: Fraction, hi: Fraction):
        # alpha = r + s*sqrt(disc); decide which of the two roots is in (lo, hi)
        r = Fraction(-b, 2 * a)
        half = Fraction(1, 2 * abs(a))
        if hi <= r:
            larger = False
        elif lo >= r:
            larger = True
        else:
            # straddles r: the larger root is inside iff it lies below hi
            larger = disc < ((hi - r) / half) ** 2
        return r, (half if larger else -half), disc

    @classmethod
    def from_rational(cls, r) -> "AlgebraicReal":
        r = as_rational(r)
        return cls(Poly.linear_root(r), r, r)

    @property
    def is_rational(self) -> bool:
        return self.lo == self.hi

    @property
    def rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("not a rational number")
        return self.lo

    @property
    def degree(self) -> int:
        return self.poly.degree

    def field_value(self):
        """This number as a Fraction or QuadSurd (exact arithmetic element)."""
        if self.is_rational:
            return self.lo
        if self._quad is None:
            raise NotImplementedError(
                "field arithmetic is only available for algebraic degree <= 2"
            )
        r, s, d = self._quad
        return QuadSurd(r, s, d)

    def enclosure(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        """Rational (lo, hi) containing the value with hi - lo <= 2**-bits."""
        if self.is_rational:
            return self.lo, self.lo
        width = Fraction(1, 1 << bits)
        lo, hi = self._enc
        if hi - lo <= width:
            return lo, hi
        if self._quad is not None:
            r, s, d = self._quad
            k = bits + 2 + max(abs(s.numerator).bit_length() - s.denominator.bit_length(), 0)
            t = isqrt(d << (2 * k))
            a = r + s * Fraction(t, 1 << k)
            b = r + s * Fraction(t + 1, 1 << k)
            lo, hi = (a, b) if a < b else (b, a)
        else:
            p = self.poly
            slo = sgn(p(lo))
            while hi - lo > width:
                mid = (lo + hi) / 2
                sm = sgn(p(mid))
                if sm == 0:
                    lo = hi = mid
                    break
                if sm == slo:
                    lo = mid
                else:
                    hi = mid
        self._enc = (lo, hi)
        return lo, hi

    def __float__(self) -> float:
        lo, hi = self.enclosure(64)
        return float((lo + hi) / 2)

    def key(self):
        """Hashable identity; canonical (equal iff same number) for degree <= 2."""
        if self.is_rational:
            return self.lo
        if self._quad is not None:
            return ("quad", self.poly.coeffs, self._quad[1] > 0)
        return ("poly", self.poly.coeffs, self.lo, self.hi)

    def __eq__(self, other) -> bool:
        if not isinstance(other, (int, Fraction, AlgebraicReal)):
            return NotImplemented
        return compare(self, other) == 0

    __hash__ = None  # exact equality is not hash-consistent across representations

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0

    def __repr__(self) -> str:
        if self.is_rational:
            return f"AlgebraicReal({self.lo})"
        return f"AlgebraicReal(root of {self.poly} in ({self.lo}, {self.hi}) ~ {float(self):.12g})"

    def to_json(self) -> dict:
        return {
            "poly": [format_rational(c) for c in self.poly.coeffs],
            "lo": format_rational(self.lo),
            "hi": format_rational(self.hi),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "AlgebraicReal":
        return cls(Poly(as_rational(c) for c in obj["poly"]), obj["lo"], obj["hi"])


@dataclass(frozen=True, eq=False)
class Perturbed:
    """base + eps*delta for a positive infinitesimal delta, eps in {-1, 0, 1}.

    Ordered lexicographically on (base, eps). The base may be rational or an
    AlgebraicReal.
    """

    base: Union[Fraction, AlgebraicReal]
    eps: int

    def __post_init__(self):
        if self.eps not in (-1, 0, 1):
            raise ValueError("eps must be -1, 0 or +1")
        if isinstance(self.base, int):
            object.__setattr__(self, "base", Fraction(self.base))

    def __eq__(self, other):
        try:
            return compare(self, other) == 0
        except TypeError:
            return NotImplemented

    __hash__ = None

    def __lt__(self, other):
        return compare(self, other) < 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __ge__(self, other):
        return compare(self, other) >= 0


def PerturbedRational(base, eps: int) -> Perturbed:
    """Perturbation of a rational base value."""
    return Perturbed(as_rational(base), eps)


@dataclass(frozen=True)
class Infinity:
    sign: int

    def __repr__(self) -> str:
        return "POS_INF" if self.sign > 0 else "NEG_INF"

    def __lt__(self, other):
        return compare(self, other) < 0

    def __gt__(self, other):
        return compare(self, other) > 0


NEG_INF = Infinity(-1)
POS_INF = Infinity(1)

Exact = Union[Fraction, AlgebraicReal, Perturbed, Infinity]


def isolate_roots(p: Poly, interval: Optional[tuple] = None) -> list[AlgebraicReal]:
    """All distinct real roots of ``p`` in ascending order.

    ``interval`` optionally restricts to the open interval (lo, hi); either
    bound may be None (or an Infinity) for an unbounded side.
    """
    if p.is_zero():
        raise ValueError("cannot isolate the roots of the zero polynomial")
    q = sqf_part(p)
    roots: list[AlgebraicReal] = []
    if q.degree == 1:
        roots.append(AlgebraicReal.from_rational(-q.coeffs[0] / q.coeffs[1]))
    elif q.degree == 2 and _is_square(int(q.coeffs[1] ** 2 - 4 * q.coeffs[0] * q.coeffs[2])):
        c, b, a = (int(v) for v in q.coeffs)
        r = isqrt(b * b - 4 * a * c)
        for v in sorted({Fraction(-b - r, 2 * a), Fraction(-b + r, 2 * a)}):
            roots.append(AlgebraicReal.from_rational(v))
    elif q.degree == 2:
        roots = _quadratic_roots(q)
    elif q.degree > 2:
        roots = _vca(q)
    if interval is not None:
        lo, hi = interval
        roots = [
            r for r in roots
            if (lo is None or compare(lo, r) < 0) and (hi is None or compare(r, hi) < 0)
        ]
    return roots


def _quadratic_roots(q: Poly) -> list[AlgebraicReal]:
    """Roots r -+ sqrt(disc)/(2a) of a quadratic with non-square discriminant."""
    c, b, a = (int(v) for v in q.coeffs)
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    t = isqrt(disc)  # t < sqrt(disc) < t + 1 and t >= 1
    r, h = Fraction(-b, 2 * a), Fraction(1, 2 * abs(a))
    out = []
    for s in (-h, h):
        lo, hi = sorted((r + s * t, r + s * (t + 1)))
        x = AlgebraicReal.__new__(AlgebraicReal)
        x.poly, x.lo, x.hi = q.primitive(), lo, hi
        x._quad, x._enc = (r, s, disc), (lo, hi)
        out.append(x)
    return out


def _vca(q: Poly) -> list[AlgebraicReal]:
    """Vincent-Collins-Akritas bisection on a square-free polynomial."""
    bound = q.cauchy_bound()
    out: list[AlgebraicReal] = []
    stack = [(-bound, bound)]
    while stack:
        a, b = stack.pop()
        v = _descartes(q, a, b)
        if v == 0:
            continue
        if v == 1:
            out.append(AlgebraicReal(q, a, b))
            continue
        mid = (a + b) / 2
        if q(mid) != 0:
            stack += [(a, mid), (mid, b)]
            continue
        out.append(AlgebraicReal.from_rational(mid))
        h = (b - a) / 4
        while _descartes(q, mid - h, mid + h) != 1 or q(mid - h) == 0 or q(mid + h) == 0:
            h /= 2
        stack += [(a, mid - h), (mid + h, b)]
    out.sort(key=lambda r: r.lo)
    return out


def sign_at(p: Poly, x) -> int:
    """Exact sign of p(x) for rational, algebraic, perturbed or infinite x."""
    if p.is_zero():
        return 0
    if isinstance(x, (int, Fraction)):
        return sgn(p(x))
    if isinstance(x, AlgebraicReal):
        return _sign_at_algebraic(p, x)
    if isinstance(x, Perturbed):
        if x.eps == 0:
            return sign_at(p, x.base)
        q, k = p, 0
        while not q.is_zero():
            s = sign_at(q, x.base)
            if s:
                return s * (x.eps ** k)
            q, k = q.derivative(), k + 1
        raise AssertionError("nonzero polynomial with all derivatives vanishing")
    if isinstance(x, Infinity):
        s = sgn(p.lead)
        return s if x.sign > 0 or p.degree % 2 == 0 else -s
    raise TypeError(f"unsupported evaluation point {x!r}")


def _sign_at_algebraic(p: Poly, x: AlgebraicReal) -> int:
    if x.is_rational:
        return sgn(p(x.lo))
    if x._quad is not None:
        return sgn(p(x.field_value()))
    lo, hi = x._enc
    if lo == hi:
        return sgn(p(lo))
    g = poly_gcd(p, x.poly)
    # g divides the defining polynomial, so it has at most one root in (lo, hi)
    if g.degree > 0 and sgn(g(lo)) * sgn(g(hi)) < 0:
        return 0
    bits = 8
    while True:
        lo, hi = x.enclosure(bits)
        if lo == hi:
            return sgn(p(lo))
        if _descartes(p, lo, hi) == 0:
            return sgn(p((lo + hi) / 2))
        bits *= 2


def _cmp_rational_alg(r: Fraction, a: AlgebraicReal) -> int:
    """compare(r, a)."""
    if a.is_rational:
        return sgn(r - a.lo)
    lo, hi = a._enc
    if r <= lo:
        return -1
    if r >= hi:
        return 1
    if a._quad is not None:
        q0, s, d = a._quad
        return -_surd_sign(q0 - r, s, d)
    return -sign_at(Poly((-r, 1)), a)


def _same_root(a: AlgebraicReal, b: AlgebraicReal) -> bool:
    """Exact equality test via the gcd of the defining polynomials."""
    if a._quad is not None and b._quad is not None:
        # both defining polynomials are minimal
        return a.poly == b.poly and (a._quad[1] > 0) == (b._quad[1] > 0)
    g = poly_gcd(a.poly, b.poly)
    if g.degree <= 0 or sign_at(g, a) != 0 or sign_at(g, b) != 0:
        return False
    bits = 8
    while True:
        alo, ahi = a.enclosure(bits)
        blo, bhi = b.enclosure(bits)
        if ahi < blo or bhi < alo:
            return False
        lo, hi = min(alo, blo), max(ahi, bhi)
        if lo == hi:
            return True
        if g(lo) != 0 and g(hi) != 0 and _descartes(g, lo, hi) == 1:
            return True
        bits *= 2


def _cmp_alg(a: AlgebraicReal, b: AlgebraicReal) -> int:
    if a.is_rational:
        return _cmp_rational_alg(a.lo, b)
    if b.is_rational:
        return -_cmp_rational_alg(b.lo, a)
    if a._enc[1] <= b._enc[0]:
        return -1
    if b._enc[1] <= a._enc[0]:
        return 1
    if _same_root(a, b):
        return 0
    bits = 32
    while True:
        alo, ahi = a.enclosure(bits)
        blo, bhi = b.enclosure(bits)
        if ahi < blo:
            return -1
        if bhi < alo:
            return 1
        bits *= 2


def _base_cmp(a, b) -> int:
    """Compare two finite plain values (Fraction/int/AlgebraicReal)."""
    if isinstance(a, int):
        a = Fraction(a)
    if isinstance(b, int):
        b = Fraction(b)
    if isinstance(a, Fraction):
        if isinstance(b, Fraction):
            return sgn(a - b)
        return _cmp_rational_alg(a, b)
    if isinstance(b, Fraction):
        return -_cmp_rational_alg(b, a)
    return _cmp_alg(a, b)


def compare(a: Exact, b: Exact) -> int:
    """Total order on rationals, algebraic reals, perturbed values and +-inf."""
    if isinstance(a, Infinity) or isinstance(b, Infinity):
        sa = a.sign if isinstance(a, Infinity) else 0
        sb = b.sign if isinstance(b, Infinity) else 0
        return sgn(sa - sb)
    ea = a.eps if isinstance(a, Perturbed) else 0
    eb = b.eps if isinstance(b, Perturbed) else 0
    a = a.base if isinstance(a, Perturbed) else a
    b = b.base if isinstance(b, Perturbed) else b
    if not isinstance(a, (int, Fraction, AlgebraicReal)) or not isinstance(
        b, (int, Fraction, AlgebraicReal)
    ):
        raise TypeError(f"cannot compare {a!r} and {b!r}")
    c = _base_cmp(a, b)
    return c if c else sgn(ea - eb)


def _bounds(x, bits: int):
    if isinstance(x, Perturbed):
        x = x.base
    if isinstance(x, Infinity):
        return None
    if isinstance(x, AlgebraicReal):
        return x.enclosure(bits)
    x = as_rational(x)
    return x, x


def simplest_between(x: Fraction, y: Fraction) -> Fraction:
    """The rational with the smallest denominator in the open interval (x, y)."""
    if not x < y:
        raise ValueError("empty interval")
    lo_int, hi_int = floor(x) + 1, ceil(y) - 1
    if lo_int <= hi_int:
        if lo_int <= 0 <= hi_int:
            return Fraction(0)
        return Fraction(lo_int if lo_int > 0 else hi_int)
    fl = floor(x)
    lo, hi = x - fl, y - fl  # 0 <= lo < hi <= 1
    if lo == 0:
        return fl + Fraction(1, floor(1 / hi) + 1)
    return fl + 1 / simplest_between(1 / hi, 1 / lo)


def rational_between(a: Exact, b: Exact) -> Fraction:
    """A simple rational q with a < q < b (a < b required)."""
    if compare(a, b) >= 0:
        raise ValueError("rational_between needs a < b")
    base_a = a.base if isinstance(a, Perturbed) else a
    base_b = b.base if isinstance(b, Perturbed) else b
    finite = not isinstance(base_a, Infinity) and not isinstance(base_b, Infinity)
    if finite and compare(base_a, base_b) == 0:
        # only (m - delta, m + delta) around a rational m holds a rational
        q = base_a
        if isinstance(q, AlgebraicReal):
            q = q.rational if q.is_rational else None
        if q is not None and compare(a, q) < 0 < compare(b, q):
            return as_rational(q)
        raise ValueError("no rational lies strictly between these values")
    bits = 4
    while True:
        ba, bb = _bounds(a, bits), _bounds(b, bits)
        if ba is None and bb is None:
            return Fraction(0)
        if ba is None:
            return Fraction(floor(bb[0]) - 1)
        if bb is None:
            return Fraction(floor(ba[1]) + 1)
        if ba[1] < bb[0]:
            return simplest_between(ba[1], bb[0])
        bits *= 2


def field_value(x):
    """Exact arithmetic element realizing a finite slope value.

    Fraction -> Fraction, AlgebraicReal -> Fraction/QuadSurd,
    Perturbed -> Eps over the base's field.
    """
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, AlgebraicReal):
        return x.field_value()
    if isinstance(x, Perturbed):
        base = field_value(x.base)
        if x.eps == 0:
            return base
        return Eps((base, x.eps))
    raise TypeError(f"no field value for {x!r}")
