"""Truncated p-typical Witt vectors over the ramified valuation-ring model.

Ring operations go through ghost coordinates: w_n(x) = sum_{j<=n} p^j
x_j^(p^(n-j)) is an injective ring homomorphism on vectors over a
torsion-free ring, so sums, products, negation and Frobenius are computed
on ghosts and transported back, dividing by powers of p exactly.  The
transported components lie in the valuation ring by classical integrality
theorems; this is asserted on every transport and a violation raises
GhostIntegralityError (a library bug, never bad input).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import GhostIntegralityError, StructureError
from .ring import LocalFieldElem


@dataclass(frozen=True)
class WittVec:
    """A length-L Witt vector with components in the valuation ring."""

    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if len(comps) < 1:
            raise StructureError("Witt vectors must have length >= 1")
        p, e = comps[0].p, comps[0].e
        for c in comps:
            if not isinstance(c, LocalFieldElem):
                raise StructureError("components must be LocalFieldElem")
            if (c.p, c.e) != (p, e):
                raise StructureError("components over mismatched base fields")
            if c.ord() < 0:
                raise StructureError(
                    f"component {c} lies outside the valuation ring"
                )
        object.__setattr__(self, "components", comps)

    # -- basics ---------------------------------------------------------

    @property
    def p(self) -> int:
        return self.components[0].p

    @property
    def e(self) -> int:
        return self.components[0].e

    @property
    def length(self) -> int:
        return len(self.components)

    def _check_same(self, other: "WittVec") -> None:
        if (self.p, self.e, self.length) != (other.p, other.e, other.length):
            raise StructureError("Witt vectors with mismatched parameters")

    @classmethod
    def zeros(cls, p: int, e: int, length: int) -> "WittVec":
        z = LocalFieldElem.zero(p, e)
        return cls((z,) * length)

    @classmethod
    def teichmuller(cls, c: LocalFieldElem, length: int) -> "WittVec":
        """[c] = (c, 0, ..., 0)."""
        z = LocalFieldElem.zero(c.p, c.e)
        return cls((c,) + (z,) * (length - 1))

    @classmethod
    def one(cls, p: int, e: int, length: int) -> "WittVec":
        return cls.teichmuller(LocalFieldElem.one(p, e), length)

    def zero_extend(self, length: int) -> "WittVec":
        """Pad with zero components up to the given length."""
        if length < self.length:
            raise ValueError("zero_extend cannot shorten; use truncate")
        z = LocalFieldElem.zero(self.p, self.e)
        return WittVec(self.components + (z,) * (length - self.length))

    def truncate(self, length: int) -> "WittVec":
        if not 1 <= length <= self.length:
            raise ValueError(f"cannot truncate length {self.length} to {length}")
        return WittVec(self.components[:length])

    # -- ghost coordinates ------------------------------------------------

    def ghost(self, n: int) -> LocalFieldElem:
        """w_n(x) = x_0^(p^n) + p x_1^(p^(n-1)) + ... + p^n x_n."""
        if not 0 <= n < self.length:
            raise IndexError(f"ghost index {n} out of range for length {self.length}")
        p = self.p
        acc = LocalFieldElem.zero(p, self.e)
        for j in range(n + 1):
            acc = acc + (p ** j) * self.components[j] ** (p ** (n - j))
        return acc

    def ghosts(self) -> tuple:
        """All ghost components (w_0, ..., w_(L-1)), sharing power chains."""
        p, L = self.p, self.length
        powtab = []
        for j, c in enumerate(self.components):
            chain = [c]
            for _ in range(L - 1 - j):
                chain.append(chain[-1] ** p)
            powtab.append(chain)
        out = []
        for n in range(L):
            acc = LocalFieldElem.zero(p, self.e)
            for j in range(n + 1):
                acc = acc + (p ** j) * powtab[j][n - j]
            out.append(acc)
        return tuple(out)

    @classmethod
    def from_ghosts(cls, ghosts: Sequence[LocalFieldElem]) -> "WittVec":
        """Recover the unique Witt vector with the given ghost components,
        solving w_n = sum p^j x_j^(p^(n-j)) triangularly (exact division)."""
        if not ghosts:
            raise StructureError("need at least one ghost component")
        p, e = ghosts[0].p, ghosts[0].e
        comps = []
        for n, gh in enumerate(ghosts):
            acc = gh
            for j in range(n):
                acc = acc - (p ** j) * comps[j] ** (p ** (n - j))
            x = acc * Fraction(1, p ** n)
            if x.ord() < 0:
                raise GhostIntegralityError(
                    f"ghost transport produced component {x} with negative "
                    f"valuation at level {n}"
                )
            comps.append(x)
        return cls(tuple(comps))

    # -- ring structure -----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, WittVec):
            return NotImplemented
        self._check_same(other)
        return WittVec.from_ghosts(
            [a + b for a, b in zip(self.ghosts(), other.ghosts())]
        )

    def __neg__(self):
        return WittVec.from_ghosts([-a for a in self.ghosts()])

    def __sub__(self, other):
        if not isinstance(other, WittVec):
            return NotImplemented
        self._check_same(other)
        return WittVec.from_ghosts(
            [a - b for a, b in zip(self.ghosts(), other.ghosts())]
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return WittVec.from_ghosts([other * a for a in self.ghosts()])
        if not isinstance(other, WittVec):
            return NotImplemented
        self._check_same(other)
        return WittVec.from_ghosts(
            [a * b for a, b in zip(self.ghosts(), other.ghosts())]
        )

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    # -- Frobenius and Verschiebung -------------------------------------------

    def frobenius(self) -> "WittVec":
        """The unique y of length L-1 with w_n(y) = w_(n+1)(x)."""
        if self.length < 2:
            raise ValueError("frobenius needs length >= 2")
        return WittVec.from_ghosts(self.ghosts()[1:])

    def verschiebung(self) -> "WittVec":
        """Shift components right, dropping the last to keep length L."""
        z = LocalFieldElem.zero(self.p, self.e)
        return WittVec((z,) + self.components[:-1])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def witt_add(x: WittVec, y: WittVec) -> WittVec:
    return x + y


def witt_mul(x: WittVec, y: WittVec) -> WittVec:
    return x * y
