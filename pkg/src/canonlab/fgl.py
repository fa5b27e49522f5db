"""Formal group law recovery from the logarithm: truncated multivariate
series, compositional inversion, the [p^n] series, and the structural
shape check on [p].

Series are sparse maps monomial -> coefficient with a total-degree cutoff
D; constant terms never occur (all series here vanish at the origin).
The logarithm input is extremely sparse (pure p-power monomials only),
the group law fills in moderately.  Inversion is a plain degree-by-degree
triangular solve; at desk scale (D <= ~30, g <= 3) simplicity wins over
anything clever.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InternalCheckError, StructureError
from .fglog import LogTable
from .ring import LocalFieldElem, format_elem


@dataclass(frozen=True)
class TruncatedSeries:
    nvars: int
    cutoff: int
    p: int
    e: int
    coeffs: Mapping  # tuple exponent -> LocalFieldElem, degrees in [1, cutoff]

    def __post_init__(self):
        clean = {}
        for mono, c in self.coeffs.items():
            d = sum(mono)
            if len(mono) != self.nvars:
                raise StructureError(f"monomial {mono} has wrong arity")
            if d == 0 and not c.is_zero():
                raise StructureError("series must vanish at the origin")
            if c.is_zero() or d == 0 or d > self.cutoff:
                continue
            clean[tuple(int(k) for k in mono)] = c
        object.__setattr__(self, "coeffs", clean)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int, cutoff: int, p: int, e: int) -> "TruncatedSeries":
        return cls(nvars, cutoff, p, e, {})

    @classmethod
    def variable(cls, i: int, nvars: int, cutoff: int, p: int, e: int):
        mono = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, cutoff, p, e, {mono: LocalFieldElem.one(p, e)})

    # -- helpers -----------------------------------------------------------

    def _zero_elem(self) -> LocalFieldElem:
        return LocalFieldElem.zero(self.p, self.e)

    def _like(self, coeffs) -> "TruncatedSeries":
        return TruncatedSeries(self.nvars, self.cutoff, self.p, self.e, coeffs)

    def _check_same(self, other: "TruncatedSeries") -> None:
        if (self.nvars, self.cutoff, self.p, self.e) != (
            other.nvars,
            other.cutoff,
            other.p,
            other.e,
        ):
            raise StructureError("series with mismatched parameters")

    def coefficient(self, mono) -> LocalFieldElem:
        return self.coeffs.get(tuple(mono), self._zero_elem())

    def is_zero(self) -> bool:
        return not self.coeffs

    def homogeneous(self, d: int) -> "TruncatedSeries":
        return self._like({m: c for m, c in self.coeffs.items() if sum(m) == d})

    def min_degree(self) -> int:
        return min((sum(m) for m in self.coeffs), default=self.cutoff + 1)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_same(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, self._zero_elem()) + c
        return self._like(out)

    def __neg__(self):
        return self._like({m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def scale(self, s) -> "TruncatedSeries":
        """Multiply by a scalar (LocalFieldElem, Fraction, or int)."""
        return self._like({m: c * s for m, c in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_same(other)
        out = {}
        z = self._zero_elem()
        for m1, c1 in self.coeffs.items():
            d1 = sum(m1)
            for m2, c2 in other.coeffs.items():
                if d1 + sum(m2) > self.cutoff:
                    continue
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, z) + c1 * c2
        return self._like(out)

    def compose(self, args: Sequence["TruncatedSeries"]) -> "TruncatedSeries":
        """Substitute args[i] for variable i; args share nvars and cutoff."""
        if len(args) != self.nvars:
            raise StructureError(f"compose needs {self.nvars} arguments")
        tgt = args[0]
        for a in args[1:]:
            tgt._check_same(a)
        if (tgt.p, tgt.e, tgt.cutoff) != (self.p, self.e, self.cutoff):
            raise StructureError("composition target parameters mismatch")
        out = TruncatedSeries.zero(tgt.nvars, tgt.cutoff, self.p, self.e)
        one = None
        powers = {}

        def power(i: int, k: int) -> "TruncatedSeries":
            if k == 1:
                return args[i]
            key = (i, k)
            if key not in powers:
                powers[key] = power(i, k - 1) * args[i]
            return powers[key]

        for mono, c in self.coeffs.items():
            if sum(mono) > tgt.cutoff:
                continue
            term = None
            for i, k in enumerate(mono):
                if k == 0:
                    continue
                pw = power(i, k)
                term = pw if term is None else term * pw
            assert term is not None
            out = out + term.scale(c)
        return out

    def substitute_zero(self, kill) -> "TruncatedSeries":
        """Set the variables with indices in `kill` to zero."""
        kill = set(kill)
        return self._like(
            {
                m: c
                for m, c in self.coeffs.items()
                if all(m[i] == 0 for i in kill)
            }
        )

    def rename(self, perm) -> "TruncatedSeries":
        """Relabel variables: new index perm[i] receives old variable i."""
        out = {}
        for m, c in self.coeffs.items():
            new = [0] * self.nvars
            for i, k in enumerate(m):
                new[perm[i]] += k
            out[tuple(new)] = c
        return self._like(out)

    def extend_vars(self, nvars: int, offset: int = 0) -> "TruncatedSeries":
        """View the series inside a larger variable block at `offset`."""
        if offset + self.nvars > nvars:
            raise StructureError("variable block does not fit")
        out = {}
        for m, c in self.coeffs.items():
            new = (0,) * offset + m + (0,) * (nvars - offset - self.nvars)
            out[new] = c
        return TruncatedSeries(nvars, self.cutoff, self.p, self.e, out)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for mono in sorted(self.coeffs):
            c = self.coeffs[mono]
            vars_part = "*".join(
                f"X{i + 1}" + (f"^{k}" if k > 1 else "")
                for i, k in enumerate(mono)
                if k > 0
            )
            parts.append(f"({format_elem(c)})*{vars_part}")
        return " + ".join(parts)


def variables(nvars: int, cutoff: int, p: int, e: int):
    return tuple(
        TruncatedSeries.variable(i, nvars, cutoff, p, e) for i in range(nvars)
    )


# -- the logarithm as a series tuple -----------------------------------------


def log_series(T: LogTable, D: int):
    """log_i = sum_j sum_n a_(n,ij) X_j^(p^n), truncated at total degree D."""
    p, g = T.p, T.g
    need = 0
    while p ** (need + 1) <= D:
        need += 1
    if need > T.n_max:
        raise ValueError(
            f"degree {D} needs coefficient level {need} > n_max = {T.n_max}"
        )
    out = []
    for i in range(g):
        coeffs = {}
        for n in range(T.n_max + 1):
            if p ** n > D:
                break
            for j in range(g):
                c = T.coeff(n, i, j)
                if c.is_zero():
                    continue
                mono = tuple(p ** n if t == j else 0 for t in range(g))
                coeffs[mono] = coeffs.get(mono, LocalFieldElem.zero(p, T.e)) + c
        out.append(TruncatedSeries(g, D, p, T.e, coeffs))
    return tuple(out)


def _assert_identity_linear(series) -> None:
    g = len(series)
    for i, f in enumerate(series):
        for j in range(g):
            mono = tuple(1 if t == j else 0 for t in range(g))
            c = f.coefficient(mono)
            want_one = i == j
            if want_one and not (c - LocalFieldElem.one(f.p, f.e)).is_zero():
                raise ValueError("series tuple does not have identity linear part")
            if not want_one and not c.is_zero():
                raise ValueError("series tuple does not have identity linear part")


def exp_series(log_s, D: int):
    """Compositional inverse of a series tuple with identity linear part.

    Solved degree by degree: if E agrees with the inverse below degree d,
    the degree-d part of E(log) - X is exactly the correction to subtract.
    The defining identity E(log(X)) = X is re-verified at the end."""
    g = len(log_s)
    for f in log_s:
        if f.cutoff != D:
            raise ValueError("log series cutoff must equal D")
    _assert_identity_linear(log_s)
    p, e = log_s[0].p, log_s[0].e
    E = list(variables(g, D, p, e))
    X = variables(g, D, p, e)
    for d in range(2, D + 1):
        for i in range(g):
            delta = E[i].compose(log_s) - X[i]
            low = delta.min_degree()
            if low < d:
                raise InternalCheckError(
                    f"inversion out of order at degree {d}: residual {low}"
                )
            E[i] = E[i] - delta.homogeneous(d)
    for i in range(g):
        if not (E[i].compose(log_s) - X[i]).is_zero():
            raise InternalCheckError("exp . log != id after inversion")
    return tuple(E)


def group_law(T: LogTable, D: int):
    """F(X, Y) = exp(log(X) + log(Y)) in 2g variables, truncated at D.

    Asserts the unit axiom, F = X + Y mod degree 2, commutativity, and
    associativity mod degree D exactly."""
    g, p, e = T.g, T.p, T.e
    logs = log_series(T, D)
    exps = exp_series(logs, D)
    sum_logs = tuple(
        logs[i].extend_vars(2 * g, 0) + logs[i].extend_vars(2 * g, g)
        for i in range(g)
    )
    F = tuple(exps[i].compose(sum_logs) for i in range(g))

    X2 = variables(2 * g, D, p, e)
    for i in range(g):
        # unit axiom and the linear part
        if F[i].substitute_zero(range(g, 2 * g)) != X2[i]:
            raise InternalCheckError("group law fails F(X, 0) = X")
        lin = F[i].homogeneous(1)
        want = {
            tuple(1 if t == i else 0 for t in range(2 * g)): LocalFieldElem.one(p, e),
            tuple(1 if t == g + i else 0 for t in range(2 * g)): LocalFieldElem.one(p, e),
        }
        if lin.coeffs != want:
            raise InternalCheckError("group law linear part is not X + Y")
        # commutativity
        swap = list(range(g, 2 * g)) + list(range(g))
        if F[i].rename(swap) != F[i]:
            raise InternalCheckError("group law is not commutative")
    # associativity in 3g variables
    X3 = variables(3 * g, D, p, e)
    F_xy = tuple(f.extend_vars(3 * g, 0) for f in F)   # F(X, Y)
    F_yz = tuple(f.extend_vars(3 * g, g) for f in F)   # F(Y, Z)
    left = tuple(
        F[i].compose(tuple(F_xy) + tuple(X3[2 * g + t] for t in range(g)))
        for i in range(g)
    )
    right = tuple(
        F[i].compose(tuple(X3[t] for t in range(g)) + tuple(F_yz))
        for i in range(g)
    )
    for i in range(g):
        if left[i] != right[i]:
            raise InternalCheckError("group law is not associative")
    return F


def p_power_series(T: LogTable, n: int, D: int):
    """[p^n](X) = exp(p^n log(X)) truncated at D; n = 1 also runs the
    structural shape check against the stored tangent lift."""
    if n < 0:
        raise ValueError("n must be >= 0")
    g = T.g
    logs = log_series(T, D)
    exps = exp_series(logs, D)
    scaled = tuple(f.scale(T.p ** n) for f in logs)
    S = tuple(exps[i].compose(scaled) for i in range(g))
    if n == 1:
        report = shape_check(S, T.w0_tangent)
        if not report.passed:
            raise InternalCheckError(
                f"[p] series failed its shape check: {report.failures()}"
            )
    return S


# -- shape of [p] ---------------------------------------------------------------


@dataclass(frozen=True)
class ShapeClause:
    name: str
    ok: bool
    witnesses: tuple


@dataclass(frozen=True)
class ShapeReport:
    p: int
    clauses: tuple

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.clauses)

    def failures(self) -> str:
        return "; ".join(
            f"{c.name}: {list(c.witnesses)[:3]}" for c in self.clauses if not c.ok
        )

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "passed": self.passed,
            "clauses": [
                {"name": c.name, "ok": c.ok, "witnesses": [str(w) for w in c.witnesses]}
                for c in self.clauses
            ],
        }


def shape_check(S, dv_lift) -> ShapeReport:
    """Check the multiply-by-p series against its expected window shape:

    (a) no monomials of total degree in [2, p-1];
    (b) the degree-p block is congruent mod p to the tangent lift acting
        on pure p-th powers (other degree-p monomials vanish mod p);
    (c) every coefficient of total degree strictly between p and p^2 has
        ord >= 1;
    plus the degree lattice: all monomial degrees are 1 mod (p - 1)."""
    g = len(S)
    p = S[0].p
    D = S[0].cutoff
    if D < p * p:
        raise ValueError(f"shape check needs cutoff >= p^2 = {p * p}, got {D}")
    wa, wb, wc, wz = [], [], [], []
    for i, f in enumerate(S):
        for mono, c in f.coeffs.items():
            d = sum(mono)
            if 2 <= d <= p - 1:
                wa.append((i + 1, mono))
            if d == p and not _is_pure_power(mono):
                if not c.ord() >= 1:
                    wb.append((i + 1, mono, c.ord()))
            if p < d < p * p and not c.ord() >= 1:
                wc.append((i + 1, mono, c.ord()))
            if p > 2 and d % (p - 1) != 1 % (p - 1):
                wz.append((i + 1, mono))
        for j in range(g):
            mono = tuple(p if t == j else 0 for t in range(g))
            diff = S[i].coefficient(mono) - dv_lift[i][j]
            if not diff.ord() >= 1:
                wb.append((i + 1, mono, diff.ord()))
    clauses = (
        ShapeClause("no_degrees_2_to_p_minus_1", not wa, tuple(wa)),
        ShapeClause("degree_p_block_matches_tangent_mod_p", not wb, tuple(wb)),
        ShapeClause("between_p_and_p2_divisible_by_p", not wc, tuple(wc)),
        ShapeClause("degrees_are_1_mod_p_minus_1", not wz, tuple(wz)),
    )
    return ShapeReport(p=p, clauses=clauses)


def _is_pure_power(mono) -> bool:
    return sum(1 for k in mono if k > 0) == 1
