"""Display data for p-divisible formal groups: structure matrices over the
Witt vectors, validity checks, Hasse invariant, and upper-triangular
normalization of the tangent block over the residue field.

A display of dimension g and height h is stored as an h x h matrix M of
Witt vectors whose determinant is a unit in W(R); the first g basis
vectors span the tangent part.  The Hasse invariant is
min(ord(det(w_0(A))), 1) where A is the upper-left g x g block.

The nilpotence condition that singles out connected groups is not checked
here; it is a caller obligation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional

from . import _linalg
from .errors import ExtensionRequiredError, InputError, StructureError
from .ring import INF, LocalFieldElem, Val, format_elem, parse_elem
from .witt import WittVec


@dataclass(frozen=True)
class DisplayData:
    g: int
    h: int
    M: tuple

    def __post_init__(self):
        if self.g < 1:
            raise StructureError(f"dimension must be >= 1, got {self.g}")
        if self.h < self.g:
            raise StructureError(f"height {self.h} smaller than dimension {self.g}")
        M = tuple(tuple(row) for row in self.M)
        if len(M) != self.h or any(len(row) != self.h for row in M):
            raise StructureError(f"structure matrix must be {self.h}x{self.h}")
        first = M[0][0]
        if not isinstance(first, WittVec):
            raise StructureError("matrix entries must be WittVec")
        p, e, L = first.p, first.e, first.length
        for row in M:
            for x in row:
                if (x.p, x.e, x.length) != (p, e, L):
                    raise StructureError("matrix entries with mismatched parameters")
        object.__setattr__(self, "M", M)
        d = _linalg.det(self.ghost_matrix(0))
        if d.ord() != 0:
            raise StructureError(
                f"det(M) is not a unit in W(R): ord(w_0(det M)) = {d.ord()}"
            )

    @property
    def p(self) -> int:
        return self.M[0][0].p

    @property
    def e(self) -> int:
        return self.M[0][0].e

    @property
    def L(self) -> int:
        return self.M[0][0].length

    def ghost_matrix(self, n: int):
        """Entrywise ghost component w_n(M), an h x h matrix over K."""
        if not 0 <= n < self.L:
            raise IndexError(f"ghost level {n} out of range for length {self.L}")
        return [[x.ghost(n) for x in row] for row in self.M]

    def with_length(self, length: int) -> "DisplayData":
        """Adjust the stored Witt length: zero-extend (the finite-support
        reading of the matrix) or truncate."""
        if length == self.L:
            return self
        if length > self.L:
            adjust = lambda x: x.zero_extend(length)
        else:
            adjust = lambda x: x.truncate(length)
        return DisplayData(
            self.g,
            self.h,
            tuple(tuple(adjust(x) for x in row) for row in self.M),
        )

    def tangent_block_w0(self):
        """w_0 of the upper-left g x g block."""
        g0 = self.ghost_matrix(0)
        return [row[: self.g] for row in g0[: self.g]]


@dataclass(frozen=True)
class HasseValue:
    """min(ord(det w_0(A)), 1), plus the diagonal valuations U_i when the
    tangent block is upper triangular mod p (then sum U_i = H if H < 1)."""

    value: Fraction
    diagonal: Optional[tuple]


def is_triangular_mod_p(D: DisplayData) -> bool:
    """True when w_0 of the tangent block is upper triangular modulo pR,
    i.e. every entry below the diagonal has ord >= 1."""
    a0 = D.tangent_block_w0()
    return all(
        a0[i][j].ord() >= 1 for i in range(D.g) for j in range(i)
    )


def hasse_invariant(D: DisplayData) -> HasseValue:
    a0 = D.tangent_block_w0()
    v = _linalg.det(a0).ord()
    value = Fraction(1) if v >= 1 else v
    diagonal = None
    if is_triangular_mod_p(D):
        diagonal = tuple(a0[i][i].ord() for i in range(D.g))
    return HasseValue(value=value, diagonal=diagonal)


# -- upper-triangular normalization ---------------------------------------


def _find_eigenvector(block, p: int):
    """Brute-force search for v in F_p^b (first nonzero coordinate 1) with
    block . v = lambda . v modulo pR; returns v as a tuple of ints or None.

    The entries of `block` are w_0 values in the valuation ring; the
    residue field is F_p, so candidate vectors range over p^b choices."""
    b = len(block)
    for v in product(range(p), repeat=b):
        if all(c == 0 for c in v):
            continue
        k = next(i for i, c in enumerate(v) if c != 0)
        if v[k] != 1:
            continue  # normalize away scalar multiples
        u = []
        for i in range(b):
            acc = None
            for j in range(b):
                if v[j] == 0:
                    continue
                term = v[j] * block[i][j]
                acc = term if acc is None else acc + term
            u.append(acc if acc is not None else block[0][0] - block[0][0])
        lam = u[k]
        ok = True
        for i in range(b):
            diff = u[i] - v[i] * lam
            if diff.ord() < 1:
                ok = False
                break
        if ok:
            return v
    return None


def _complete_to_basis(v):
    """Columns [v, e_i (i != k)] where k is the first nonzero index of v;
    an integer matrix of determinant +-1."""
    b = len(v)
    k = next(i for i, c in enumerate(v) if c != 0)
    cols = [list(v)] + [[1 if r == i else 0 for r in range(b)] for i in range(b) if i != k]
    return [[cols[c][r] for c in range(b)] for r in range(b)]


def base_change_tangent(D: DisplayData, S) -> "DisplayData":
    """Replace the tangent basis e by e.S for an integer matrix S (g x g,
    invertible mod p), transporting the structure matrix by ghost levels:
    w_n(M') = w_n(S)^-1 w_n(M) w_(n+1)(S) with Teichmueller-lifted S."""
    g, h, p = D.g, D.h, D.p
    if len(S) != g or any(len(row) != g for row in S):
        raise StructureError("base change matrix must be g x g")
    dS = _linalg.det([[Fraction(x) for x in row] for row in S])
    if dS == 0 or dS.numerator % p == 0:
        raise StructureError("base change matrix is not invertible mod p")

    def s_embed(power: int):
        """w_power of the Teichmueller lift of diag-extended S, over Q."""
        out = [[Fraction(1 if i == j else 0) for j in range(h)] for i in range(h)]
        q = p ** power
        for i in range(g):
            for j in range(g):
                out[i][j] = Fraction(S[i][j]) ** q
        return out

    levels = []
    for n in range(D.L):
        Sn_inv = _linalg.mat_inv_frac(s_embed(n))
        Sn1 = s_embed(n + 1)
        lift = lambda q: LocalFieldElem.from_rational(q, p, D.e)
        A = [[lift(x) for x in row] for row in Sn_inv]
        B = D.ghost_matrix(n)
        C = [[lift(x) for x in row] for row in Sn1]
        levels.append(_linalg.mat_mul(_linalg.mat_mul(A, B), C))
    M_new = tuple(
        tuple(
            WittVec.from_ghosts([levels[n][i][j] for n in range(D.L)])
            for j in range(h)
        )
        for i in range(h)
    )
    return DisplayData(g, h, M_new)


def triangularize(D: DisplayData) -> DisplayData:
    """Return a display whose tangent block is upper triangular mod pR.

    Searches for eigenvectors of the p-linear residue map over F_p^g and
    walks down the flag; returns the input unchanged when it already has
    the property.  Raises ExtensionRequiredError when no eigenvector
    exists over F_p (a finite extension of K would be needed)."""
    if D.g == 1 or is_triangular_mod_p(D):
        return D
    cur = D
    g = D.g
    for k in range(g - 1):
        a0 = cur.tangent_block_w0()
        block = [row[k:] for row in a0[k:]]
        if all(block[i][0].ord() >= 1 for i in range(1, len(block))):
            continue  # this column already normalized
        v = _find_eigenvector(block, D.p)
        if v is None:
            raise ExtensionRequiredError(
                "no eigenvector over F_p for the residue map; a finite "
                "extension of the base field would be required"
            )
        B = _complete_to_basis(v)
        S = [[1 if i == j else 0 for j in range(g)] for i in range(g)]
        for i in range(len(v)):
            for j in range(len(v)):
                S[k + i][k + j] = B[i][j]
        cur = base_change_tangent(cur, S)
    if not is_triangular_mod_p(cur):
        raise ExtensionRequiredError(
            "triangularization did not reach an upper-triangular tangent "
            "block; a finite extension of the base field would be required"
        )
    return cur


# -- JSON form --------------------------------------------------------------


def to_json_dict(D: DisplayData) -> dict:
    return {
        "p": D.p,
        "e": D.e,
        "g": D.g,
        "h": D.h,
        "L": D.L,
        "M": [
            [[format_elem(c) for c in x.components] for x in row] for row in D.M
        ],
    }


def from_json_dict(data: dict) -> DisplayData:
    for key in ("p", "e", "g", "h", "L", "M"):
        if key not in data:
            raise InputError(f"display JSON missing key {key!r}")
    p, e, g, h, L = (data[k] for k in ("p", "e", "g", "h", "L"))
    for name, val in (("p", p), ("e", e), ("g", g), ("h", h), ("L", L)):
        if not isinstance(val, int):
            raise InputError(f"display JSON field {name!r} must be an integer")
    M = data["M"]
    if not isinstance(M, list) or len(M) != h:
        raise InputError(f"display JSON field 'M' must be a {h}x{h} array")
    rows = []
    for i, row in enumerate(M):
        if not isinstance(row, list) or len(row) != h:
            raise InputError(f"display JSON row M[{i}] must have {h} entries")
        out_row = []
        for j, comps in enumerate(row):
            if not isinstance(comps, list) or not 1 <= len(comps) <= L:
                raise InputError(
                    f"display JSON entry M[{i}][{j}] must be a list of at "
                    f"most L={L} element strings"
                )
            try:
                elems = [parse_elem(s, p, e) for s in comps]
            except InputError as exc:
                raise InputError(f"display JSON entry M[{i}][{j}]: {exc}") from exc
            vec = WittVec(tuple(elems)).zero_extend(L)
            out_row.append(vec)
        rows.append(tuple(out_row))
    try:
        return DisplayData(g, h, tuple(rows))
    except StructureError as exc:
        raise StructureError(f"invalid display: {exc}") from exc


def loads(text: str) -> DisplayData:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"display JSON parse error at line {exc.lineno}: {exc.msg}")
    return from_json_dict(data)


def load_file(path) -> DisplayData:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read display file {path}: {exc}")
    return loads(text)


def dumps(D: DisplayData) -> str:
    return json.dumps(to_json_dict(D), sort_keys=True, indent=2)
