"""The canonical-subgroup certifier.

certify() runs the whole pipeline on a display: triangularize, Hasse
invariant, the strict bound H < (p-1)/p^N, the logarithm table with a
two-level guard band, the valuation-pattern checks, per-shell root counts
from one-dimensional Newton polygons at the deformation endpoint, the
torsion-structure inequality chains, and (for g <= 2) the exhaustive grid
scan.  A failed bound yields a certificate with exists = False and no
further stages; a failed theorem-check raises InternalCheckError.

Everything in a certificate is an exact rational; serialized rationals
are "num/den" strings and certificates are byte-identical across runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .display import DisplayData, hasse_invariant, triangularize
from .errors import InternalCheckError
from .fglog import (
    HypothesesReport,
    LogTable,
    check_hypotheses,
    compute_log,
    report_from_json_dict,
)
from .tropical import (
    ScanSummary,
    WindowScan,
    deep_cells_bounded,
    diag_points,
    grid_scan,
    h_cells,
    newton_polygon,
    roots_in_radius,
)


def r_n(p: int, n: int) -> Fraction:
    """Shell valuation 1/(p^n (p-1))."""
    return Fraction(1, p ** n * (p - 1))


def r_prime_n(p: int, n: int, H: Fraction) -> Fraction:
    """Certified radius exponent 1/(p^(n-1)(p-1)) - H/(p-1)."""
    return Fraction(1, p ** (n - 1) * (p - 1)) - Fraction(H) / (p - 1)


def count_roots(T: LogTable, n: int) -> int:
    """Points of the p-power torsion with all coordinates of valuation
    > r_n, counted at the diagonal deformation endpoint: the product over
    coordinates of (nonzero roots of valuation >= r'_n) + 1.  The result
    is asserted to be exactly p^(n g); n = 0 counts the origin alone."""
    if n == 0:
        return 1
    if not 1 <= n <= T.n_max:
        raise ValueError(f"shell index {n} outside stored range")
    p, g = T.p, T.g
    rp = r_prime_n(p, n, T.H)
    total = 1
    for i in range(g):
        np_ = newton_polygon(diag_points(T, i))
        total *= roots_in_radius(np_, rp) + 1
    if total != p ** (n * g):
        raise InternalCheckError(
            f"shell {n} root count {total} != p^(ng) = {p ** (n * g)}"
        )
    return total


# -- torsion structure ------------------------------------------------------------


@dataclass(frozen=True)
class ChainStep:
    n: int
    r_n: Fraction
    p_times: Fraction       # p * r_n
    one_plus: Fraction      # 1 + r_n
    target: Fraction        # r_(n-1)
    ok: bool


@dataclass(frozen=True)
class SeparationCheck:
    level: int              # shell m: points of size in (r_m, r_1]
    bound: Fraction         # (p-1)/p^m
    bound_ok: bool
    size_bound: str         # the triangular tangent-lift estimate used
    ineq_coeff: tuple       # (H + (p-1) s_max, 1): p-multiples stay above
    ineq_deep: tuple        # (p(p-1) s_min, bound): degree >= p^2 stays above
    certified: bool


@dataclass(frozen=True)
class StructureReport:
    level: int
    order: int
    shape: str
    chain: tuple
    separations: tuple
    certified: bool

    def to_json_dict(self) -> dict:
        return {
            "level": self.level,
            "order": self.order,
            "shape": self.shape,
            "certified": self.certified,
            "chain": [
                {
                    "n": c.n,
                    "r_n": str(c.r_n),
                    "p_times": str(c.p_times),
                    "one_plus": str(c.one_plus),
                    "target": str(c.target),
                    "ok": c.ok,
                }
                for c in self.chain
            ],
            "separations": [
                {
                    "level": s.level,
                    "bound": str(s.bound),
                    "bound_ok": s.bound_ok,
                    "size_bound": s.size_bound,
                    "ineq_coeff": [str(s.ineq_coeff[0]), str(s.ineq_coeff[1])],
                    "ineq_deep": [str(s.ineq_deep[0]), str(s.ineq_deep[1])],
                    "certified": s.certified,
                }
                for s in self.separations
            ],
        }


def structure_report_from_json_dict(data: dict) -> StructureReport:
    return StructureReport(
        level=data["level"],
        order=data["order"],
        shape=data["shape"],
        certified=data["certified"],
        chain=tuple(
            ChainStep(
                n=c["n"],
                r_n=Fraction(c["r_n"]),
                p_times=Fraction(c["p_times"]),
                one_plus=Fraction(c["one_plus"]),
                target=Fraction(c["target"]),
                ok=c["ok"],
            )
            for c in data["chain"]
        ),
        separations=tuple(
            SeparationCheck(
                level=s["level"],
                bound=Fraction(s["bound"]),
                bound_ok=s["bound_ok"],
                size_bound=s["size_bound"],
                ineq_coeff=(Fraction(s["ineq_coeff"][0]), Fraction(s["ineq_coeff"][1])),
                ineq_deep=(Fraction(s["ineq_deep"][0]), Fraction(s["ineq_deep"][1])),
                certified=s["certified"],
            )
            for s in data["separations"]
        ),
    )


def structure_certificate(T: LogTable, N: int) -> StructureReport:
    """Valuation-only verification that the p^(Ng) points of smallest size
    form a group of shape (Z/p^N Z)^g.

    (a) killed-by-p^N chain: a point of size s > r_n maps under [p] to
        size > min(p r_n, 1 + r_n) >= r_(n-1); after N steps the size
        exceeds r_0 = 1/(p-1), which only the origin satisfies.
    (b) p-torsion shell separation: for s in (r_m, r_1] with m >= 2 and
        H < (p-1)/p^m, the triangular tangent lift gives
        size([p] x) <= H + p s, which stays strictly below both the
        p-multiple terms (H + (p-1) s < 1) and the degree >= p^2 terms
        (p(p-1) s > (p-1)/p^m > H), hence [p] x != 0.

    Order p^(Ng) + (a) + (b) force g cyclic factors of order exactly p^N.
    A level m where the bound in (b) fails is marked not certified."""
    if N < 1:
        raise ValueError("level must be >= 1")
    p, g = T.p, T.g
    H = Fraction(T.H)
    chain = []
    for n in range(N, 0, -1):
        rn = r_n(p, n)
        target = r_n(p, n - 1)
        ok = min(p * rn, 1 + rn) >= target
        chain.append(
            ChainStep(n=n, r_n=rn, p_times=p * rn, one_plus=1 + rn, target=target, ok=ok)
        )
    separations = []
    s_max = r_n(p, 1)
    for m in range(2, N + 1):
        bound_m = Fraction(p - 1, p ** m)
        bound_ok = H < bound_m
        s_min = r_n(p, m)
        coeff = (H + (p - 1) * s_max, Fraction(1))
        deep = (p * (p - 1) * s_min, bound_m)
        certified = bound_ok and coeff[0] < coeff[1] and deep[0] > deep[1] > H
        separations.append(
            SeparationCheck(
                level=m,
                bound=bound_m,
                bound_ok=bound_ok,
                size_bound="size([p]x) <= H + p*size(x) via the triangular tangent lift",
                ineq_coeff=coeff,
                ineq_deep=deep,
                certified=certified,
            )
        )
    certified = all(c.ok for c in chain) and all(s.certified for s in separations)
    return StructureReport(
        level=N,
        order=p ** (N * g),
        shape=f"(Z/{p}^{N})^{g}",
        chain=tuple(chain),
        separations=tuple(separations),
        certified=certified,
    )


# -- certificates -----------------------------------------------------------------


@dataclass(frozen=True)
class ShellData:
    n: int
    r_n: Fraction
    r_prime_n: Fraction
    count: int


@dataclass(frozen=True)
class KatzNote:
    """Experimental report of the tighter elliptic-curve-style bound
    p^2/(p^N (p+1)); never asserts existence, only what would change."""

    bound: Fraction
    satisfied: bool


@dataclass(frozen=True)
class Certificate:
    level: int
    p: int
    e: int
    g: int
    h: int
    hasse: Fraction
    bound: Fraction
    exists: bool
    radius_exponent: Optional[Fraction]
    diagonal: tuple
    shells: tuple
    cells: tuple            # (n, i, coordinate) for the distinguished cells
    hypotheses: Optional[HypothesesReport]
    structure: Optional[StructureReport]
    scan: Optional[ScanSummary]
    katz: Optional[KatzNote]
    decline_reason: Optional[str]

    def to_json_dict(self) -> dict:
        out = {
            "level": self.level,
            "p": self.p,
            "e": self.e,
            "g": self.g,
            "h": self.h,
            "hasse": str(self.hasse),
            "bound": str(self.bound),
            "exists": self.exists,
            "radius_exponent": None
            if self.radius_exponent is None
            else str(self.radius_exponent),
            "diagonal": [str(u) for u in self.diagonal],
            "shells": [
                {
                    "n": s.n,
                    "r_n": str(s.r_n),
                    "r_prime_n": str(s.r_prime_n),
                    "count": s.count,
                }
                for s in self.shells
            ],
            "cells": [
                {"n": n, "i": i, "coordinate": str(c)} for (n, i, c) in self.cells
            ],
            "hypotheses": None
            if self.hypotheses is None
            else self.hypotheses.to_json_dict(),
            "structure": None
            if self.structure is None
            else self.structure.to_json_dict(),
            "scan": None if self.scan is None else self.scan.to_json_dict(),
            "katz": None
            if self.katz is None
            else {"bound": str(self.katz.bound), "satisfied": self.katz.satisfied},
            "decline_reason": self.decline_reason,
        }
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2)

    def to_text(self) -> str:
        return render_text(self.to_json_dict())


def certificate_from_json_dict(data: dict) -> Certificate:
    scan = None
    if data["scan"] is not None:
        s = data["scan"]
        scan = ScanSummary(
            level=s["level"],
            max_den=s["max_den"],
            primary=_window_from_json(s["primary"]),
            upper=_window_from_json(s["upper"]),
        )
    return Certificate(
        level=data["level"],
        p=data["p"],
        e=data["e"],
        g=data["g"],
        h=data["h"],
        hasse=Fraction(data["hasse"]),
        bound=Fraction(data["bound"]),
        exists=data["exists"],
        radius_exponent=None
        if data["radius_exponent"] is None
        else Fraction(data["radius_exponent"]),
        diagonal=tuple(Fraction(u) for u in data["diagonal"]),
        shells=tuple(
            ShellData(
                n=s["n"],
                r_n=Fraction(s["r_n"]),
                r_prime_n=Fraction(s["r_prime_n"]),
                count=s["count"],
            )
            for s in data["shells"]
        ),
        cells=tuple(
            (c["n"], c["i"], Fraction(c["coordinate"])) for c in data["cells"]
        ),
        hypotheses=None
        if data["hypotheses"] is None
        else report_from_json_dict(data["hypotheses"]),
        structure=None
        if data["structure"] is None
        else structure_report_from_json_dict(data["structure"]),
        scan=scan,
        katz=None
        if data["katz"] is None
        else KatzNote(
            bound=Fraction(data["katz"]["bound"]),
            satisfied=data["katz"]["satisfied"],
        ),
        decline_reason=data["decline_reason"],
    )


def _window_from_json(d: dict) -> WindowScan:
    return WindowScan(
        lo=Fraction(d["lo"]),
        hi=Fraction(d["hi"]),
        max_den=d["max_den"],
        points=d["points"],
        joint=tuple(tuple(Fraction(c) for c in w) for w in d["joint"]),
        violations=tuple(d["violations"]),
    )


def certify(
    D: DisplayData,
    N: int,
    grid_den: Optional[int] = None,
    scan: bool = True,
    jobs: int = 1,
) -> Certificate:
    """Certify existence, radius and structure of the level-N canonical
    subgroup of the group presented by the display."""
    if N < 1:
        raise ValueError("level must be >= 1")
    Dt = triangularize(D)
    hv = hasse_invariant(Dt)
    p = D.p
    bound = Fraction(p - 1, p ** N)
    katz = KatzNote(
        bound=Fraction(p * p, p ** N * (p + 1)), satisfied=hv.value < Fraction(p * p, p ** N * (p + 1))
    )
    if not hv.value < bound:
        return Certificate(
            level=N, p=p, e=D.e, g=D.g, h=D.h,
            hasse=hv.value, bound=bound, exists=False, radius_exponent=None,
            diagonal=hv.diagonal or (), shells=(), cells=(),
            hypotheses=None, structure=None, scan=None, katz=katz,
            decline_reason=(
                f"H = {hv.value} does not satisfy the strict bound "
                f"H < (p-1)/p^N = {bound}; near the boundary the smallest "
                f"p-power torsion need not form a free Z/p^N-module, so "
                f"existence is declined rather than guessed"
            ),
        )
    n_max = N + 2
    T = compute_log(Dt.with_length(max(Dt.L, n_max + 1)), n_max)
    hyp = check_hypotheses(T, N)
    if not hyp.passed:
        raise InternalCheckError(
            "valuation-pattern check failed on a display within the bound; "
            "this is a library bug"
        )
    if not deep_cells_bounded(T, N):
        raise InternalCheckError("a deep diagonal cell re-enters the certified radius")
    cells = tuple((c.n, c.i, c.coordinate) for c in h_cells(T, N))
    shells = []
    for n in range(1, N + 1):
        rn, rpn = r_n(p, n), r_prime_n(p, n, T.H)
        if not rpn > rn:
            raise InternalCheckError(f"shell {n}: r'_n = {rpn} <= r_n = {rn}")
        shells.append(ShellData(n=n, r_n=rn, r_prime_n=rpn, count=count_roots(T, n)))
    structure = structure_certificate(T, N)
    if not structure.certified:
        raise InternalCheckError(
            "structure inequalities failed under the main bound; library bug"
        )
    summary = None
    if scan and D.g <= 2:
        summary = grid_scan(T, N, max_den=grid_den, jobs=jobs)
        if not summary.ok:
            raise InternalCheckError(
                f"grid scan found a floor violation: {summary.primary.violations} "
                f"{summary.upper.violations}"
            )
    return Certificate(
        level=N, p=p, e=D.e, g=D.g, h=D.h,
        hasse=T.H, bound=bound, exists=True,
        radius_exponent=r_prime_n(p, N, T.H),
        diagonal=T.U, shells=tuple(shells), cells=cells,
        hypotheses=hyp, structure=structure, scan=summary, katz=katz,
        decline_reason=None,
    )


# -- plain-text rendering -----------------------------------------------------------


def render_text(obj, indent: int = 0) -> str:
    """Human-readable rendering that mirrors the JSON content exactly."""
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for key in sorted(obj):
            val = obj[key]
            if isinstance(val, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.append(render_text(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(val)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if not obj:
            return f"{pad}(none)"
        lines = []
        for val in obj:
            if isinstance(val, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(render_text(val, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(val)}")
        return "\n".join(lines)
    return f"{pad}{_scalar(obj)}"


def _scalar(val) -> str:
    if val is None:
        return "null"
    if isinstance(val, bool):
        return "true" if val else "false"
    return str(val)
