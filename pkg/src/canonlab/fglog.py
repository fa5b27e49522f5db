"""Logarithm coefficient matrices of a display, their valuation table, and
the executable valuation-pattern checks.

The g x h coefficient matrices a_n of the logarithm are produced by the
recursion

    a_0     = [ I_g | 0 ],
    a_(n+1) = a_n . w_n(M) . phat^-1,

where phat is the diagonal matrix diag(p, ..., p, 1, ..., 1) with g
entries equal to p.  Right multiplication by phat^-1 divides the first g
columns by p, which is exact here.  The valuation table u_(n,ij) =
ord(a_(n,ij)) is stored alongside the coefficients so that the piecewise
linear layers never need to touch coefficients.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .display import DisplayData, hasse_invariant, is_triangular_mod_p
from .errors import InternalCheckError, StructureError
from .ring import INF, LocalFieldElem, Val, format_elem, parse_elem


@dataclass(frozen=True)
class LogTable:
    """Coefficient matrices a_0..a_(n_max) with bookkeeping.

    Ni[i] is the largest n with (p^n - 1)/(p - 1) * U_i < 1 (INF when
    U_i = 0); at and below that depth the diagonal valuations follow the
    exact closed form, beyond it only the lower bound 1 - n survives."""

    g: int
    h: int
    p: int
    e: int
    n_max: int
    mats: tuple          # (n_max+1) x g x h of LocalFieldElem
    uvals: tuple         # parallel table of exact valuations (INF allowed)
    U: tuple             # diagonal tangent valuations U_1..U_g
    H: Fraction          # Hasse invariant
    Ni: tuple            # per-index depth thresholds
    w0_tangent: tuple    # w_0 of the tangent block, used as the dV lift

    def u(self, n: int, i: int, j: int) -> Val:
        return self.uvals[n][i][j]

    def coeff(self, n: int, i: int, j: int) -> LocalFieldElem:
        return self.mats[n][i][j]


def _depth_threshold(U_i, p: int) -> Union[int, float]:
    if U_i == 0:
        return INF
    n = 0
    while Fraction(p ** (n + 1) - 1, p - 1) * U_i < 1:
        n += 1
    return n


def compute_log(D: DisplayData, n_max: int) -> LogTable:
    """Run the coefficient recursion up to a_(n_max).

    Requires n_max + 1 <= L (level n consumes ghost level n - 1, plus one
    spare level so truncations of M reproduce the same table), and a
    tangent block that is upper triangular mod p unless g = 1."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if n_max + 1 > D.L:
        raise ValueError(
            f"n_max = {n_max} too large for Witt length L = {D.L}; "
            f"need L >= n_max + 1"
        )
    if D.g > 1 and not is_triangular_mod_p(D):
        raise StructureError(
            "tangent block is not upper triangular mod p; triangularize first"
        )
    hv = hasse_invariant(D)
    assert hv.diagonal is not None
    g, h, p = D.g, D.h, D.p
    one = LocalFieldElem.one(p, D.e)
    zero = LocalFieldElem.zero(p, D.e)
    a = [[one if i == j else zero for j in range(h)] for i in range(g)]
    mats = [a]
    inv_p = Fraction(1, p)
    for n in range(n_max):
        wn = D.ghost_matrix(n)
        nxt = []
        for i in range(g):
            row = []
            for j in range(h):
                acc = zero
                for t in range(h):
                    acc = acc + a[i][t] * wn[t][j]
                if j < g:
                    acc = acc * inv_p
                row.append(acc)
            nxt.append(row)
        a = nxt
        mats.append(a)
    uvals = []
    for n, mat in enumerate(mats):
        level = []
        for i in range(g):
            row = []
            for j in range(h):
                v = mat[i][j].ord()
                if v < -n:
                    raise InternalCheckError(
                        f"u_({n},{i + 1},{j + 1}) = {v} < {-n}; convergence "
                        f"bound violated"
                    )
                row.append(v)
            level.append(tuple(row))
        uvals.append(tuple(level))
    U = hv.diagonal
    return LogTable(
        g=g,
        h=h,
        p=p,
        e=D.e,
        n_max=n_max,
        mats=tuple(tuple(tuple(row) for row in mat) for mat in mats),
        uvals=tuple(uvals),
        U=U,
        H=hv.value,
        Ni=tuple(_depth_threshold(u, p) for u in U),
        w0_tangent=tuple(tuple(row) for row in D.tangent_block_w0()),
    )


# -- valuation-pattern checks -------------------------------------------------


@dataclass(frozen=True)
class ClauseCheck:
    name: str
    ok: bool
    witnesses: tuple  # tuples (n, i, j, found, required)


@dataclass(frozen=True)
class HypothesesReport:
    level: int
    H: Fraction
    bound: Fraction
    bound_ok: bool
    clauses: tuple

    @property
    def passed(self) -> bool:
        return self.bound_ok and all(c.ok for c in self.clauses)

    def to_json_dict(self) -> dict:
        return {
            "level": self.level,
            "H": _val_str(self.H),
            "bound": _val_str(self.bound),
            "bound_ok": self.bound_ok,
            "passed": self.passed,
            "clauses": [
                {
                    "name": c.name,
                    "ok": c.ok,
                    "witnesses": [
                        {
                            "n": w[0],
                            "i": w[1],
                            "j": w[2],
                            "found": _val_str(w[3]),
                            "required": w[4],
                        }
                        for w in c.witnesses
                    ],
                }
                for c in self.clauses
            ],
        }


def report_from_json_dict(data: dict) -> HypothesesReport:
    clauses = tuple(
        ClauseCheck(
            name=c["name"],
            ok=c["ok"],
            witnesses=tuple(
                (w["n"], w["i"], w["j"], _val_parse(w["found"]), w["required"])
                for w in c["witnesses"]
            ),
        )
        for c in data["clauses"]
    )
    return HypothesesReport(
        level=data["level"],
        H=Fraction(data["H"]),
        bound=Fraction(data["bound"]),
        bound_ok=data["bound_ok"],
        clauses=clauses,
    )


def check_hypotheses(T: LogTable, N: int) -> HypothesesReport:
    """Verify the valuation pattern of the table at certification level N.

    Checks, for all stored n <= n_max (indices 1-based in witnesses):
      (i)   u_(0,ii) = 0 and u_(0,ij) = INF off the diagonal;
      (ii)  u_(n,ii) = (p^n - 1)/(p - 1) * U_i - n for 1 <= n <= Ni;
      (iii) u_(n,ii) >= 1 - n for n > Ni;
      (iv)  u_(n,ij) >= -n always, and >= 1 - n when i > j.

    When H >= (p - 1)/p^N the report states the bound failure and skips
    the clause checks.  Failures are report entries, never exceptions."""
    if N < 1:
        raise ValueError("level must be >= 1")
    p, g, h = T.p, T.g, T.h
    bound = Fraction(p - 1, p ** N)
    if not T.H < bound:
        return HypothesesReport(level=N, H=T.H, bound=bound, bound_ok=False, clauses=())

    w1, w2, w3, w4 = [], [], [], []
    for i in range(g):
        if T.u(0, i, i) != 0:
            w1.append((0, i + 1, i + 1, T.u(0, i, i), "= 0"))
        for j in range(g):
            if j != i and T.u(0, i, j) != INF:
                w1.append((0, i + 1, j + 1, T.u(0, i, j), "= +inf"))
    for i in range(g):
        Ui, Ni = T.U[i], T.Ni[i]
        for n in range(1, T.n_max + 1):
            u = T.u(n, i, i)
            if n <= Ni:
                want = Fraction(p ** n - 1, p - 1) * Ui - n
                if u != want:
                    w2.append((n, i + 1, i + 1, u, f"= {want}"))
            else:
                if not u >= 1 - n:
                    w3.append((n, i + 1, i + 1, u, f">= {1 - n}"))
    for n in range(T.n_max + 1):
        for i in range(g):
            for j in range(h):
                u = T.u(n, i, j)
                if not u >= -n:
                    w4.append((n, i + 1, j + 1, u, f">= {-n}"))
                if j < g and i > j and not u >= 1 - n:
                    w4.append((n, i + 1, j + 1, u, f">= {1 - n}"))
    clauses = (
        ClauseCheck("i", not w1, tuple(w1)),
        ClauseCheck("ii", not w2, tuple(w2)),
        ClauseCheck("iii", not w3, tuple(w3)),
        ClauseCheck("iv", not w4, tuple(w4)),
    )
    return HypothesesReport(level=N, H=T.H, bound=bound, bound_ok=True, clauses=clauses)


# -- serialization ------------------------------------------------------------


def _val_str(v) -> str:
    return "inf" if v == INF else str(Fraction(v))


def _val_parse(s: str):
    return INF if s == "inf" else Fraction(s)


def table_tsv(T: LogTable) -> str:
    """TSV of (n, i, j, u_(n,ij)), 1-based indices."""
    lines = ["n\ti\tj\tu"]
    for n in range(T.n_max + 1):
        for i in range(T.g):
            for j in range(T.h):
                lines.append(f"{n}\t{i + 1}\t{j + 1}\t{_val_str(T.u(n, i, j))}")
    return "\n".join(lines) + "\n"


def table_json_dict(T: LogTable) -> dict:
    return {
        "g": T.g,
        "h": T.h,
        "p": T.p,
        "e": T.e,
        "n_max": T.n_max,
        "H": _val_str(T.H),
        "U": [_val_str(u) for u in T.U],
        "Ni": [_val_str(n) for n in T.Ni],
        "mats": [
            [[format_elem(c) for c in row] for row in mat] for mat in T.mats
        ],
        "uvals": [
            [[_val_str(u) for u in row] for row in level] for level in T.uvals
        ],
        "w0_tangent": [[format_elem(c) for c in row] for row in T.w0_tangent],
    }


def table_from_json_dict(data: dict) -> LogTable:
    p, e = data["p"], data["e"]
    parse = lambda s: parse_elem(s, p, e)
    Ni = tuple(
        INF if s == "inf" else int(Fraction(s)) for s in data["Ni"]
    )
    return LogTable(
        g=data["g"],
        h=data["h"],
        p=p,
        e=e,
        n_max=data["n_max"],
        mats=tuple(
            tuple(tuple(parse(c) for c in row) for row in mat)
            for mat in data["mats"]
        ),
        uvals=tuple(
            tuple(tuple(_val_parse(u) for u in row) for row in level)
            for level in data["uvals"]
        ),
        U=tuple(Fraction(s) for s in data["U"]),
        H=Fraction(data["H"]),
        Ni=Ni,
        w0_tangent=tuple(
            tuple(parse(c) for c in row) for row in data["w0_tangent"]
        ),
    )


def table_dumps(T: LogTable) -> str:
    return json.dumps(table_json_dict(T), sort_keys=True, indent=2)
