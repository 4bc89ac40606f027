"""Ordered-field element types used to evaluate geometry at non-rational slopes.

Every type here supports ``+ - * /``, exact comparisons with each other and
with ints/Fractions, and ``sign()``. Geometry code is written against that
small surface so that it runs unchanged over:

* ``Fraction``          -- rational slopes,
* ``QuadSurd``          -- a + b*sqrt(d), i.e. a slope that is a quadratic irrational,
* ``Eps``               -- a rational function of a positive infinitesimal, i.e. a
                           slope "just before/after" a base value.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm

from .poly import sgn


def _surd_sign(p: Fraction, q: Fraction, d: int) -> int:
    """Exact sign of p + q*sqrt(d), d > 0 not a perfect square."""
    sp, sq = sgn(p), sgn(q)
    if sq == 0:
        return sp
    if sp == 0 or sp == sq:
        return sq
    return sp if p * p > q * q * d else sq


def _isign(p: int, q: int, d: int) -> int:
    """Exact sign of p + q*sqrt(d) for integers, d > 0 not a perfect square."""
    if q == 0:
        return (p > 0) - (p < 0)
    sq = 1 if q > 0 else -1
    if p == 0 or (p > 0) == (q > 0):
        return sq
    return (1 if p > 0 else -1) if p * p > q * q * d else sq


class QuadSurd:
    """Element (p + q*sqrt(d)) / r of the real quadratic field Q(sqrt(d)).

    Stored as coprime integers with r > 0; ``a`` and ``b`` give the rational
    coordinates a + b*sqrt(d).
    """

    __slots__ = ("p", "q", "r", "d")

    def __init__(self, a, b, d: int):
        a, b = Fraction(a), Fraction(b)
        r = lcm(a.denominator, b.denominator)
        self._set(a.numerator * (r // a.denominator), b.numerator * (r // b.denominator), r, d)

    def _set(self, p: int, q: int, r: int, d: int) -> None:
        if r < 0:
            p, q, r = -p, -q, -r
        g = gcd(p, q, r)
        if g > 1:
            p, q, r = p // g, q // g, r // g
        self.p, self.q, self.r, self.d = p, q, r, d

    @classmethod
    def _raw(cls, p: int, q: int, r: int, d: int) -> "QuadSurd":
        x = cls.__new__(cls)
        x._set(p, q, r, d)
        return x

    @property
    def a(self) -> Fraction:
        return Fraction(self.p, self.r)

    @property
    def b(self) -> Fraction:
        return Fraction(self.q, self.r)

    def _coerce(self, other):
        if isinstance(other, QuadSurd):
            if other.d != self.d:
                raise ValueError("mixing elements of different quadratic fields")
            return other
        if isinstance(other, int):
            return QuadSurd._raw(other, 0, 1, self.d)
        if isinstance(other, Fraction):
            return QuadSurd._raw(other.numerator, 0, other.denominator, self.d)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadSurd._raw(self.p * o.r + o.p * self.r, self.q * o.r + o.q * self.r,
                             self.r * o.r, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd._raw(-self.p, -self.q, self.r, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadSurd._raw(self.p * o.r - o.p * self.r, self.q * o.r - o.q * self.r,
                             self.r * o.r, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadSurd._raw(self.p * o.p + self.q * o.q * self.d, self.p * o.q + self.q * o.p,
                             self.r * o.r, self.d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadSurd":
        # r / (p + q sqrt d) = r (p - q sqrt d) / (p^2 - q^2 d)
        norm = self.p * self.p - self.q * self.q * self.d
        if norm == 0:
            raise ZeroDivisionError("QuadSurd division by zero")
        return QuadSurd._raw(self.r * self.p, -self.r * self.q, norm, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def sign(self) -> int:
        return _isign(self.p, self.q, self.d)

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _isign(self.p * o.r - o.p * self.r, self.q * o.r - o.q * self.r, self.d)

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (QuadSurd, int, Fraction)) else None
        if o is None:
            return NotImplemented
        return self.p == o.p and self.q == o.q and self.r == o.r

    def __hash__(self):
        return hash(Fraction(self.p, self.r)) if self.q == 0 else hash((self.p, self.q, self.r, self.d))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __float__(self) -> float:
        # 64 extra bits keep float conversion accurate for huge d
        k = 64
        root = Fraction(isqrt(self.d << (2 * k)), 1 << k)
        return float(self.a + self.b * root)

    def __repr__(self) -> str:
        return f"QuadSurd({self.a} + {self.b}*sqrt({self.d}))"


def _strip(cs: list) -> list:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _pmul(a, b) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _strip(out)


def _padd(a, b) -> list:
    if len(a) < len(b):
        a, b = b, a
    return _strip([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])


def _pneg(a) -> list:
    return [-x for x in a]


def _integral(num: list, den: list) -> tuple[list, list]:
    """Scale a rational num/den pair to coprime integer coefficient lists."""
    scale = lcm(*(c.denominator for c in num + den if type(c) is Fraction))
    num = [int(c * scale) for c in num]
    den = [int(c * scale) for c in den]
    g = gcd(*num, *den)
    if g != 1:
        num = [c // g for c in num]
        den = [c // g for c in den]
    return num, den


def _low_sign(cs) -> int:
    for c in cs:
        s = sgn(c)
        if s:
            return s
    return 0


class Eps:
    """num(delta)/den(delta) for a positive infinitesimal delta.

    Coefficients (lowest power first) live in any ordered field above.
    The sign is read off the lowest-order nonzero terms, which is the sign the
    function takes for all sufficiently small delta > 0.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1,)):
        num = _strip(list(num))
        den = _strip(list(den))
        if not den:
            raise ZeroDivisionError("Eps with zero denominator")
        if not num:
            self.num, self.den = (), (1,)
            return
        while num[0] == 0 and den[0] == 0:
            num, den = num[1:], den[1:]
        if all(type(c) is int or type(c) is Fraction for c in num + den):
            num, den = _integral(num, den)
        self.num, self.den = tuple(num), tuple(den)

    @staticmethod
    def _lift(other):
        if isinstance(other, Eps):
            return other
        if isinstance(other, Fraction):
            return Eps((other.numerator,), (other.denominator,))
        if isinstance(other, (int, QuadSurd)):
            return Eps((other,))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return Eps(_padd(self.num, o.num), self.den)
        return Eps(
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)), _pmul(self.den, o.den)
        )

    __radd__ = __add__

    def __neg__(self):
        return Eps(_pneg(self.num), self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Eps(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("Eps division by zero")
        return Eps(_pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def sign(self) -> int:
        return _low_sign(self.num) * _low_sign(self.den)

    def _cmp(self, other) -> int:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return (self - o).sign()

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return not _padd(_pmul(self.num, o.den), _pneg(_pmul(o.num, self.den)))

    def __hash__(self):
        # only constants can be equal to plain scalars
        if len(self.num) <= 1 and len(self.den) == 1:
            c = self.num[0] / self.den[0] if self.num else 0
            return hash(c)
        return hash("Eps")

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def standard_part(self):
        """Finite limit as delta -> 0+, or None if the value is infinite."""
        n0 = next((i for i, c in enumerate(self.num) if c != 0), None)
        if n0 is None:
            return 0
        d0 = next(i for i, c in enumerate(self.den) if c != 0)
        if n0 < d0:
            return None
        if n0 > d0:
            return 0
        return self.num[n0] / self.den[d0]

    def __float__(self) -> float:
        st = self.standard_part()
        if st is None:
            return float("inf") * self.sign()
        return float(st)

    def __repr__(self) -> str:
        return f"Eps({list(self.num)} / {list(self.den)})"
