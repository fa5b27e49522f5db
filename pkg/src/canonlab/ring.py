"""Exact arithmetic in a totally ramified p-adic field K = Q_p(pi), pi^e = p.

Elements are polynomials in pi of degree < e with rational coefficients,
reduced modulo pi^e - p.  Everything is exact: coefficients are
`fractions.Fraction`, the valuation is normalized so that ord(p) = 1, so
ord(pi) = 1/e and the value group is (1/e)*Z.  The zero element has
valuation INF.

The valuation of a reduced element can be read off termwise: the fractional
parts of ord_p(c_i) + i/e are pairwise distinct for 0 <= i < e, so the
minimum over the monomials c_i * pi^i is attained exactly once and there is
no cancellation between distinct pi-powers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DomainError, InputError, StructureError

INF = float("inf")
Val = Union[Fraction, float]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def ordp(q: Union[int, Fraction], p: int) -> Val:
    """p-adic valuation of a rational number; INF for zero."""
    q = Fraction(q)
    if q == 0:
        return INF
    v = 0
    n = q.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = q.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return Fraction(v)


@dataclass(frozen=True)
class LocalFieldElem:
    """An element sum_i coeffs[i] * pi^i of K = Q(pi), pi^e = p, deg < e."""

    p: int
    e: int
    coeffs: tuple

    def __post_init__(self):
        if not is_prime(self.p):
            raise StructureError(f"p = {self.p} is not prime")
        if self.e < 1:
            raise StructureError(f"ramification index must be >= 1, got {self.e}")
        cs = tuple(Fraction(c) for c in self.coeffs)
        if len(cs) != self.e:
            raise StructureError(
                f"expected {self.e} coefficients, got {len(cs)}"
            )
        object.__setattr__(self, "coeffs", cs)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, p: int, e: int) -> "LocalFieldElem":
        return cls(p, e, (Fraction(0),) * e)

    @classmethod
    def one(cls, p: int, e: int) -> "LocalFieldElem":
        return cls.from_rational(1, p, e)

    @classmethod
    def from_rational(cls, q, p: int, e: int) -> "LocalFieldElem":
        cs = [Fraction(0)] * e
        cs[0] = Fraction(q)
        return cls(p, e, tuple(cs))

    @classmethod
    def pi(cls, p: int, e: int) -> "LocalFieldElem":
        """The uniformizer; equals p itself when e = 1."""
        return cls.pi_pow(p, e, 1)

    @classmethod
    def pi_pow(cls, p: int, e: int, k: int) -> "LocalFieldElem":
        """pi^k, reduced; k may be negative (pi^-1 = pi^(e-1)/p)."""
        q, r = divmod(k, e)
        cs = [Fraction(0)] * e
        cs[r] = Fraction(p) ** q
        return cls(p, e, tuple(cs))

    # -- structure helpers --------------------------------------------

    def _check_same(self, other: "LocalFieldElem") -> None:
        if (self.p, self.e) != (other.p, other.e):
            raise StructureError(
                f"mismatched base fields: (p={self.p}, e={self.e}) vs "
                f"(p={other.p}, e={other.e})"
            )

    def _coerce(self, other):
        if isinstance(other, LocalFieldElem):
            self._check_same(other)
            return other
        if isinstance(other, (int, Fraction)):
            return LocalFieldElem.from_rational(other, self.p, self.e)
        return None

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return LocalFieldElem(
            self.p, self.e, tuple(a + b for a, b in zip(self.coeffs, o.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        return LocalFieldElem(self.p, self.e, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        e = self.e
        conv = [Fraction(0)] * (2 * e - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                if b == 0:
                    continue
                conv[i + j] += a * b
        # reduce pi^k = p * pi^(k-e) for k >= e
        for k in range(2 * e - 2, e - 1, -1):
            if conv[k] != 0:
                conv[k - e] += self.p * conv[k]
                conv[k] = Fraction(0)
        return LocalFieldElem(self.p, self.e, tuple(conv[:e]))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = LocalFieldElem.one(self.p, self.e)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def div_by_p(self) -> "LocalFieldElem":
        """Exact division by p; the result may have negative valuation."""
        inv = Fraction(1, self.p)
        return LocalFieldElem(self.p, self.e, tuple(c * inv for c in self.coeffs))

    def inverse(self) -> "LocalFieldElem":
        """Multiplicative inverse, via the extended Euclidean algorithm in
        Q[x] modulo x^e - p (irreducible by Eisenstein)."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.e == 1:
            return LocalFieldElem(self.p, 1, (1 / self.coeffs[0],))
        modulus = [Fraction(0)] * (self.e + 1)
        modulus[0] = Fraction(-self.p)
        modulus[self.e] = Fraction(1)
        r0, r1 = modulus, _ptrim(list(self.coeffs))
        t0, t1 = [], [Fraction(1)]
        while r1:
            q, rem = _pdivmod(r0, r1)
            r0, r1 = r1, rem
            t0, t1 = t1, _psub(t0, _pmul(q, t1))
        # r0 is a nonzero constant gcd since the modulus is irreducible
        if len(r0) != 1:
            raise StructureError("inverse failed; modulus not coprime")
        scale = 1 / r0[0]
        cs = [c * scale for c in t0] + [Fraction(0)] * self.e
        return LocalFieldElem(self.p, self.e, tuple(cs[: self.e]))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    # -- valuation and residue -----------------------------------------

    def ord(self) -> Val:
        """Exact valuation in (1/e)*Z, normalized so ord(p) = 1; INF at 0."""
        best = INF
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            v = ordp(c, self.p) + Fraction(i, self.e)
            if v < best:
                best = v
        return best

    def residue(self) -> int:
        """Image in the residue field F_p (the ring is totally ramified)."""
        if self.ord() < 0:
            raise DomainError("residue of an element with negative valuation")
        c0 = self.coeffs[0]
        return c0.numerator * pow(c0.denominator, -1, self.p) % self.p

    def __str__(self) -> str:
        return format_elem(self)


# -- polynomial helpers over Q (coefficient lists, low degree first) ----


def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _psub(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _ptrim(out)


def _pmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c == 0:
            continue
        for j, d in enumerate(b):
            out[i + j] += c * d
    return _ptrim(out)


def _pdivmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] / b[-1]
        q[k] = f
        for i, c in enumerate(b):
            a[k + i] -= f * c
        _ptrim(a)
    return _ptrim(q), a


# -- text form -----------------------------------------------------------

_PI_RE = re.compile(r"^pi(?:\^(\d+))?$")
_RAT_RE = re.compile(r"^\d+(?:/\d+)?$")


def parse_elem(text: str, p: int, e: int) -> LocalFieldElem:
    """Parse a polynomial string in "pi", e.g. "1/2*pi + 3" or "-pi^2"."""
    s = text.replace(" ", "")
    if not s:
        raise InputError("empty element string")
    coeffs = [Fraction(0)] * e
    extra = LocalFieldElem.zero(p, e)
    for raw in s.replace("-", "+-").split("+"):
        if not raw:
            continue
        term = raw
        sign = 1
        while term and term[0] == "-":
            sign = -sign
            term = term[1:]
        if not term:
            raise InputError(f"cannot parse element term {raw!r} in {text!r}")
        rat = Fraction(1)
        power = 0
        if term[0].isdigit():
            head, _, tail = term.partition("*")
            if not _RAT_RE.match(head):
                raise InputError(f"cannot parse element term {raw!r} in {text!r}")
            rat = Fraction(head)
            term = tail
        if term:
            m = _PI_RE.match(term)
            if not m:
                raise InputError(f"cannot parse element term {raw!r} in {text!r}")
            power = int(m.group(1)) if m.group(1) else 1
        if power < e:
            coeffs[power] += sign * rat
        else:
            extra = extra + (sign * rat) * LocalFieldElem.pi_pow(p, e, power)
    return LocalFieldElem(p, e, tuple(coeffs)) + extra


def format_elem(x: LocalFieldElem) -> str:
    """Canonical text form; parse_elem(format_elem(x)) == x exactly."""
    parts = []
    for i, c in enumerate(x.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            var = "pi" if i == 1 else f"pi^{i}"
            body = var if mag == 1 else f"{mag}*{var}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    sign0, body0 = parts[0]
    out = ("-" if sign0 == "-" else "") + body0
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
