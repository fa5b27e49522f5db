"""Height graphs, initial sets, tropicalization and Newton-complex cells,
one-dimensional Newton polygons with root counting, the distinguished
axis cells of a logarithm table, and the pointwise/grid properness checks.

All comparisons are exact rational comparisons; ties in argmin sets are
kept exactly, with no epsilons anywhere.  Full piecewise-linear cell
enumeration is provided for up to two variables (segments and rays in the
plane); higher dimensions go through the pointwise certifier plus the
closed forms for the axis cells, which is all the certification pipeline
needs.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ._linalg import extreme_points, in_convex_hull, rank_frac, solve_frac
from .errors import InternalCheckError
from .fglog import LogTable, check_hypotheses
from .ring import INF


# -- height graphs -------------------------------------------------------------


@dataclass(frozen=True)
class HeightGraph:
    """Finite set of (exponent vector, coefficient valuation) pairs."""

    nvars: int
    entries: tuple  # sorted tuple of (exponent tuple, Fraction u)
    tags: Optional[dict] = None  # exponent -> (n, j) for p-power shaped series

    def __post_init__(self):
        seen = {}
        for nu, u in self.entries:
            nu = tuple(int(k) for k in nu)
            if len(nu) != self.nvars or any(k < 0 for k in nu):
                raise ValueError(f"bad exponent vector {nu}")
            if u == INF:
                raise ValueError("height graphs store finite valuations only")
            if nu in seen:
                raise ValueError(f"duplicate exponent vector {nu}")
            seen[nu] = Fraction(u)
        object.__setattr__(
            self, "entries", tuple(sorted((nu, u) for nu, u in seen.items()))
        )

    def as_dict(self) -> dict:
        return dict(self.entries)


def height_graph(nvars: int, items, tags=None) -> HeightGraph:
    return HeightGraph(nvars=nvars, entries=tuple(items), tags=tags)


def from_log_table(T: LogTable, i: int) -> HeightGraph:
    """Height graph of the i-th logarithm coordinate (0-based), exponents
    p^n e_j, restricted to the stored levels and finite entries."""
    p, g = T.p, T.g
    items = []
    tags = {}
    for n in range(T.n_max + 1):
        for j in range(g):
            u = T.u(n, i, j)
            if u == INF:
                continue
            nu = tuple(p ** n if t == j else 0 for t in range(g))
            items.append((nu, u))
            tags[nu] = (n, j)
    return HeightGraph(nvars=g, entries=tuple(items), tags=tags)


# -- initial sets and cells -----------------------------------------------------


def _value(entry, w):
    nu, u = entry
    return u + sum(Fraction(c) * k for c, k in zip(w, nu))


def inn_set(f: HeightGraph, w) -> tuple:
    """Exact argmin set of u_nu + <w, nu> over the height graph."""
    if not f.entries:
        raise ValueError("empty height graph")
    w = tuple(Fraction(c) for c in w)
    if len(w) != f.nvars:
        raise ValueError("weight vector arity mismatch")
    if any(c <= 0 for c in w):
        raise ValueError("weights must be componentwise positive")
    vals = [(_value(entry, w), entry) for entry in f.entries]
    best = min(v for v, _ in vals)
    return tuple(entry for v, entry in vals if v == best)


def is_trop_point(f: HeightGraph, w) -> bool:
    return len(inn_set(f, w)) >= 2


@dataclass(frozen=True)
class Chamber:
    """A non-tropical point's designation: the single dominating monomial."""

    entry: tuple


@dataclass(frozen=True)
class TropCell:
    """A tropicalization cell, described by the defining initial set: the
    equalities <w, nu_a> + u_a = <w, nu_b> + u_b across the set and the
    inequalities <= against every other entry."""

    inn: tuple
    samples: tuple
    dim: Optional[int] = None
    geometry: Optional[tuple] = None
    # geometry: ("point", base) | ("segment", lo, hi) | ("ray", base, dir)


@dataclass(frozen=True)
class NewtonCell:
    """Dual cell: the convex hull of the projected initial set."""

    inn: tuple
    vertices: tuple


def cell_of(f: HeightGraph, w):
    S = inn_set(f, w)
    if len(S) < 2:
        return Chamber(entry=S[0])
    return TropCell(inn=S, samples=(tuple(Fraction(c) for c in w),))


def cell_contains(f: HeightGraph, cell: TropCell, w) -> bool:
    """Closed-cell membership: the initial set at w contains the cell's."""
    return set(cell.inn) <= set(inn_set(f, w))


def dual_cell(f: HeightGraph, w) -> NewtonCell:
    S = inn_set(f, w)
    pts = [nu for nu, _ in S]
    return NewtonCell(inn=S, vertices=tuple(sorted(extreme_points(pts))))


def pw_from_cw_consistent(f: HeightGraph, w) -> bool:
    """The initial set equals the height graph intersected with the convex
    hull of its own lifted vertex set (in R^(g+1))."""
    S = inn_set(f, w)
    cw = dual_cell(f, w)
    vset = set(cw.vertices)
    lifted = [nu + (u,) for nu, u in f.entries if nu in vset]
    inn = set(S)
    for nu, u in f.entries:
        inside = in_convex_hull(nu + (u,), lifted)
        if inside != ((nu, u) in inn):
            return False
    return True


def affine_dim(points) -> int:
    pts = [tuple(Fraction(c) for c in p) for p in points]
    if len(pts) <= 1:
        return 0
    base = pts[0]
    diffs = [[a - b for a, b in zip(q, base)] for q in pts[1:]]
    return rank_frac(diffs)


def spans_orthogonal(points_a, points_b) -> bool:
    """Difference vectors of the two point sets are pairwise orthogonal."""
    if len(points_a) <= 1 or len(points_b) <= 1:
        return True
    base_a, base_b = points_a[0], points_b[0]
    for qa in points_a[1:]:
        da = [Fraction(x) - Fraction(y) for x, y in zip(qa, base_a)]
        for qb in points_b[1:]:
            db = [Fraction(x) - Fraction(y) for x, y in zip(qb, base_b)]
            if sum(a * b for a, b in zip(da, db)) != 0:
                return False
    return True


def epsilon(i: int, j: int) -> int:
    """Order indicator: 1 when i > j, else 0 (1-based or 0-based alike)."""
    return 1 if i > j else 0


# -- exhaustive cell enumeration in <= 2 variables --------------------------------


def enumerate_cells(f: HeightGraph) -> tuple:
    """All tropicalization cells of a finite height graph in <= 2 variables,
    over the positive orthant.  Each realizable initial set S with a
    relative-interior witness yields one cell, with exact geometry."""
    if f.nvars > 2:
        raise ValueError("cell enumeration is implemented for <= 2 variables")
    entries = list(f.entries)
    cells = []
    seen = set()
    from itertools import combinations

    for size in range(2, len(entries) + 1):
        for sub in combinations(entries, size):
            got = _realize_cell(f, sub)
            if got is None:
                continue
            key = tuple(sorted(sub))
            if key in seen:
                continue
            seen.add(key)
            cells.append(got)
    return tuple(cells)


def _realize_cell(f: HeightGraph, sub) -> Optional[TropCell]:
    """Find the cell whose initial set is exactly `sub`, if any."""
    (nu0, u0) = sub[0]
    rows = [[Fraction(a - b) for a, b in zip(nu, nu0)] for nu, _ in sub[1:]]
    rhs = [Fraction(u0) - Fraction(u) for _, u in sub[1:]]
    g = f.nvars
    x = solve_frac(rows, rhs) if rows else None
    if rows and x is None:
        return None
    rank = rank_frac(rows) if rows else 0
    if rank == g:
        w = tuple(x)
        if any(c <= 0 for c in w):
            return None
        if set(inn_set(f, w)) != set(sub):
            return None
        return TropCell(inn=tuple(sub), samples=(w,), dim=0, geometry=("point", w))
    if rank == g - 1 and g == 2:
        base = tuple(x)
        r0 = next(r for r in rows if any(c != 0 for c in r))
        direction = (-r0[1], r0[0])  # kernel of the equality rows
        feasible, t_lo, t_hi = _strict_interval(f, sub, base, direction)
        if not feasible:
            return None
        if t_lo is None and t_hi is not None:
            # flip so the unbounded side is t -> +inf
            direction = tuple(-d for d in direction)
            t_lo, t_hi = -t_hi, None
        if t_lo is None:
            return None  # a full line cannot occur inside the positive orthant
        if t_hi is not None and not t_lo < t_hi:
            return None
        mid = t_lo + 1 if t_hi is None else (t_lo + t_hi) / 2
        w = tuple(b + mid * d for b, d in zip(base, direction))
        if any(c <= 0 for c in w) or set(inn_set(f, w)) != set(sub):
            return None
        if t_hi is None:
            geom = ("ray", _at(base, direction, t_lo), direction)
        else:
            geom = ("segment", _at(base, direction, t_lo), _at(base, direction, t_hi))
        return TropCell(inn=tuple(sub), samples=(w,), dim=1, geometry=geom)
    return None


def _at(base, direction, t):
    return tuple(b + t * d for b, d in zip(base, direction))


def _strict_interval(f: HeightGraph, sub, base, direction):
    """Open t-range on the line base + t*dir where sub's common value stays
    strictly below every other entry and the point stays positive.
    Returns (feasible, lo, hi) with None meaning unbounded on that side."""
    subset = set(sub)
    nu0, u0 = sub[0]
    lo, hi = None, None
    feasible = True

    def tighten(a, b):
        # strict constraint a*t > b
        nonlocal lo, hi, feasible
        if a == 0:
            if b >= 0:
                feasible = False
            return
        t = Fraction(b, a)
        if a > 0:
            if lo is None or t > lo:
                lo = t
        else:
            if hi is None or t < hi:
                hi = t

    # positivity: base_i + t d_i > 0, i.e. d_i * t > -base_i
    for bi, di in zip(base, direction):
        tighten(Fraction(di), -Fraction(bi))
    # dominance: (vs - v0_slope) t > v0_base - vb for every other entry
    v0_base = Fraction(u0) + sum(Fraction(b) * k for b, k in zip(base, nu0))
    v0_slope = sum(Fraction(d) * k for d, k in zip(direction, nu0))
    for nu, u in f.entries:
        if (nu, u) in subset:
            continue
        vb = Fraction(u) + sum(Fraction(b) * k for b, k in zip(base, nu))
        vs = sum(Fraction(d) * k for d, k in zip(direction, nu))
        tighten(vs - v0_slope, v0_base - vb)
    return feasible, lo, hi


# -- one-dimensional Newton polygons ---------------------------------------------


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of integer-abscissa points with rational heights;
    slopes strictly increase from left to right."""

    vertices: tuple  # ((x, y), ...) with x strictly increasing

    @property
    def segments(self) -> tuple:
        out = []
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            out.append((Fraction(y1 - y0, x1 - x0), x1 - x0))
        return tuple(out)


def newton_polygon(points) -> NewtonPolygon:
    """Exact lower hull of (x, y) points with distinct integer x >= 1."""
    pts = sorted((int(x), Fraction(y)) for x, y in points)
    if not pts:
        raise ValueError("need at least one point")
    if len({x for x, _ in pts}) != len(pts):
        raise ValueError("duplicate abscissas")
    if pts[0][0] < 1:
        raise ValueError("abscissas must be >= 1")
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            # drop the middle point when it lies on or above the new chord
            if (y1 - y0) * (pt[0] - x0) >= (pt[1] - y0) * (x1 - x0):
                hull.pop()
            else:
                break
        hull.append(pt)
    return NewtonPolygon(vertices=tuple(hull))


def roots_in_radius(np_: NewtonPolygon, r) -> int:
    """Number of nonzero roots of valuation >= r: the total horizontal
    length of hull segments of slope <= -r.  The root at zero is counted
    separately by the caller."""
    r = Fraction(r)
    return sum(length for slope, length in np_.segments if slope <= -r)


def polygon_tsv(np_: NewtonPolygon) -> str:
    lines = ["kind\ta\tb"]
    for x, y in np_.vertices:
        lines.append(f"vertex\t{x}\t{y}")
    for slope, length in np_.segments:
        lines.append(f"segment\t{slope}\t{length}")
    return "\n".join(lines) + "\n"


# -- distinguished axis cells of a logarithm table --------------------------------


def diag_points(T: LogTable, i: int) -> tuple:
    """Height-graph points (p^m, u_(m,ii)) of the i-th diagonal series."""
    return tuple(
        (T.p ** m, T.u(m, i, i))
        for m in range(T.n_max + 1)
        if T.u(m, i, i) != INF
    )


@dataclass(frozen=True)
class HCell:
    n: int
    i: int  # 1-based coordinate index
    coordinate: Fraction


def h_cells(T: LogTable, N: int) -> tuple:
    """The distinguished cells of each coordinate tropicalization for
    1 <= n <= N: verify that the segment from p^(n-1) e_i to p^n e_i is a
    Newton-complex cell (its chord lies strictly below every other stored
    diagonal point) and return the dual hyperplane coordinate

        x_i = 1/(p^(n-1)(p-1)) - U_i/(p-1).
    """
    report = check_hypotheses(T, N)
    if not report.passed:
        raise ValueError("valuation-pattern check must pass before h_cells")
    p = T.p
    out = []
    for i in range(T.g):
        pts = dict(diag_points(T, i))
        for n in range(1, N + 1):
            x0, x1 = p ** (n - 1), p ** n
            u0, u1 = pts[x0], pts[x1]
            for xm, um in pts.items():
                if xm in (x0, x1):
                    continue
                chord = u0 + Fraction(xm - x0, x1 - x0) * (u1 - u0)
                if not um > chord:
                    raise InternalCheckError(
                        f"axis segment (p^{n - 1}, p^{n}) of coordinate "
                        f"{i + 1} is not a cell: point x={xm} not above chord"
                    )
            coord = Fraction(u0 - u1, x0 * (p - 1))
            closed = Fraction(1, p ** (n - 1) * (p - 1)) - T.U[i] / (p - 1)
            if coord != closed:
                raise InternalCheckError(
                    f"cell coordinate {coord} differs from closed form {closed}"
                )
            out.append(HCell(n=n, i=i + 1, coordinate=coord))
    return tuple(out)


def in_h_cell(T: LogTable, i: int, n: int, w) -> bool:
    """Whether w lies on the dual cell of the (n, i) axis segment (0-based i)."""
    f = from_log_table(T, i)
    S = set(nu for nu, _ in inn_set(f, w))
    lo = tuple(T.p ** (n - 1) if t == i else 0 for t in range(T.g))
    hi = tuple(T.p ** n if t == i else 0 for t in range(T.g))
    return lo in S and hi in S


def deep_cells_bounded(T: LogTable, N: int) -> bool:
    """Re-verify on stored data that every diagonal hull segment beyond the
    first N has slope >= -1/(p^N(p-1)), so no deeper cell re-enters the
    certified radius."""
    p = T.p
    r_N = Fraction(1, p ** N * (p - 1))
    for i in range(T.g):
        np_ = newton_polygon(diag_points(T, i))
        for k, (slope, _) in enumerate(np_.segments):
            if k >= N and slope < -r_N:
                return False
    return True


# -- pointwise properness -----------------------------------------------------------


@dataclass(frozen=True)
class PropernessVerdict:
    w: tuple
    joint: bool
    vacuous: bool
    floor: Fraction
    coords_ok: Optional[bool]
    diag_witnesses: tuple  # (i, j, lhs, rhs) for coordinates off the axis cells
    violations: tuple

    @property
    def ok(self) -> bool:
        return self.vacuous or (bool(self.coords_ok) and not self.violations)


def properness_check(T: LogTable, N: int, w) -> PropernessVerdict:
    """Pointwise check of the radius floor at an exact rational w.

    Requires all components > r = 1/(p^N(p-1)).  If w lies in the joint
    tropicalization of all g coordinate series, every component must be
    >= r' = 1/(p^(N-1)(p-1)) - H/(p-1); for every coordinate i whose w is
    on no axis cell, some j != i realizes the off-diagonal gap

        w_i - w_j >= eps(i, j)/p^N - U_i/(p-1).
    """
    p, g = T.p, T.g
    w = tuple(Fraction(c) for c in w)
    r = Fraction(1, p ** N * (p - 1))
    if any(c <= r for c in w):
        raise ValueError(f"all components must exceed r = {r}")
    r_prime = Fraction(1, p ** (N - 1) * (p - 1)) - T.H / (p - 1)
    graphs = [from_log_table(T, i) for i in range(g)]
    inns = [inn_set(f, w) for f in graphs]
    if any(len(S) < 2 for S in inns):
        return PropernessVerdict(
            w=w, joint=False, vacuous=True, floor=r_prime, coords_ok=None,
            diag_witnesses=(), violations=(),
        )
    violations = []
    coords_ok = all(c >= r_prime for c in w)
    if not coords_ok:
        violations.append(("coordinate_below_floor", w, r_prime))
    witnesses = []
    for i in range(g):
        if any(in_h_cell(T, i, n, w) for n in range(1, N + 1)):
            continue
        # off any axis cell, every other index in the initial set realizes
        # the gap inequality
        others = sorted(
            {
                next(t for t, k in enumerate(nu) if k > 0)
                for nu, _ in inns[i]
            }
            - {i}
        )
        if not others:
            violations.append(("no_offdiagonal_witness", i + 1))
            continue
        for j in others:
            lhs = w[i] - w[j]
            rhs = Fraction(epsilon(i, j), p ** N) - T.U[i] / (p - 1)
            witnesses.append((i + 1, j + 1, lhs, rhs))
            if not lhs >= rhs:
                violations.append(("offdiagonal_gap_failed", (i + 1, j + 1, lhs, rhs)))
    return PropernessVerdict(
        w=w, joint=True, vacuous=False, floor=r_prime, coords_ok=coords_ok,
        diag_witnesses=tuple(witnesses), violations=tuple(violations),
    )


# -- exhaustive grid scan ------------------------------------------------------------


@dataclass(frozen=True)
class WindowScan:
    lo: Fraction           # open lower bound per coordinate
    hi: Fraction           # closed upper bound per coordinate
    max_den: int
    points: int
    joint: tuple           # joint tropicalization points found
    violations: tuple

    def to_json_dict(self) -> dict:
        return {
            "lo": str(self.lo),
            "hi": str(self.hi),
            "max_den": self.max_den,
            "points": self.points,
            "joint": [[str(c) for c in w] for w in self.joint],
            "violations": [str(v) for v in self.violations],
        }


@dataclass(frozen=True)
class ScanSummary:
    level: int
    max_den: int
    primary: WindowScan
    upper: WindowScan

    @property
    def ok(self) -> bool:
        return not self.primary.violations and not self.upper.violations

    def to_json_dict(self) -> dict:
        return {
            "level": self.level,
            "max_den": self.max_den,
            "ok": self.ok,
            "primary": self.primary.to_json_dict(),
            "upper": self.upper.to_json_dict(),
        }


def rationals_in(lo: Fraction, hi: Fraction, max_den: int) -> tuple:
    """All rationals with denominator <= max_den in the interval (lo, hi]."""
    vals = set()
    for b in range(1, max_den + 1):
        a = int(lo * b) + 1
        while Fraction(a, b) <= hi:
            if Fraction(a, b) > lo:
                vals.add(Fraction(a, b))
            a += 1
    return tuple(sorted(vals))


def _axis_tables(T: LogTable, values):
    """For each (series i, axis j, value v): the exact minimum of
    u + p^m v over the stored axis entries and its multiplicity."""
    p, g = T.p, T.g
    tables = [[{} for _ in range(g)] for _ in range(g)]
    for i in range(g):
        for j in range(g):
            ent = [
                (p ** m, T.u(m, i, j))
                for m in range(T.n_max + 1)
                if T.u(m, i, j) != INF
            ]
            tab = tables[i][j]
            for v in values:
                best, count = None, 0
                for x, u in ent:
                    val = u + x * v
                    if best is None or val < best:
                        best, count = val, 1
                    elif val == best:
                        count += 1
                tab[v] = (best, count)
    return tables


def _scan_window(T, N, lo, hi, max_den, floor_check):
    p, g = T.p, T.g
    values = rationals_in(lo, hi, max_den)
    tables = _axis_tables(T, values)
    r_prime = Fraction(1, p ** (N - 1) * (p - 1)) - T.H / (p - 1)
    joint, violations = [], []
    if g == 1:
        grid = [(v,) for v in values]
    else:
        grid = [(v1, v2) for v1 in values for v2 in values]
    for w in grid:
        is_joint = True
        for i in range(g):
            best, count = None, 0
            for j in range(g):
                pair = tables[i][j].get(w[j])
                if pair is None or pair[0] is None:
                    continue
                val, cnt = pair
                if best is None or val < best:
                    best, count = val, cnt
                elif val == best:
                    count += cnt
            if count < 2:
                is_joint = False
                break
        if not is_joint:
            continue
        joint.append(w)
        if floor_check and any(c < r_prime for c in w):
            violations.append(("coordinate_below_floor", w, r_prime))
        if not floor_check:
            violations.append(("joint_point_above_ordinary_bound", w))
    return WindowScan(
        lo=lo, hi=hi, max_den=max_den, points=len(grid),
        joint=tuple(sorted(joint)), violations=tuple(violations),
    )


def grid_scan(T: LogTable, N: int, max_den: Optional[int] = None, jobs: int = 1) -> ScanSummary:
    """Exhaustive scan over exact rational points with bounded denominator.

    Primary window (r_N, 1/(p-1)]^g: every joint tropicalization point
    must have all coordinates >= r'_N.  Upper window (1/(p-1), 2/(p-1)]^g:
    there must be no joint point at all.  Implemented for g <= 2."""
    p, g = T.p, T.g
    if g > 2:
        raise ValueError("grid scan is implemented for g <= 2")
    if max_den is None:
        max_den = 2 * p * p * (p - 1)
    r_N = Fraction(1, p ** N * (p - 1))
    edge = Fraction(1, p - 1)
    if jobs > 1 and g == 2:
        primary = _scan_window_parallel(T, N, r_N, edge, max_den, True, jobs)
        upper = _scan_window_parallel(T, N, edge, 2 * edge, max_den, False, jobs)
    else:
        primary = _scan_window(T, N, r_N, edge, max_den, True)
        upper = _scan_window(T, N, edge, 2 * edge, max_den, False)
    return ScanSummary(level=N, max_den=max_den, primary=primary, upper=upper)


def _scan_chunk(args):
    T, N, lo, hi, max_den, floor_check, chunk = args
    p, g = T.p, T.g
    values = rationals_in(lo, hi, max_den)
    tables = _axis_tables(T, values)
    r_prime = Fraction(1, p ** (N - 1) * (p - 1)) - T.H / (p - 1)
    joint, violations = [], []
    for v1 in chunk:
        for v2 in values:
            w = (v1, v2)
            is_joint = True
            for i in range(g):
                best, count = None, 0
                for j in range(g):
                    val, cnt = tables[i][j][w[j]]
                    if val is None:
                        continue
                    if best is None or val < best:
                        best, count = val, cnt
                    elif val == best:
                        count += cnt
                if count < 2:
                    is_joint = False
                    break
            if not is_joint:
                continue
            joint.append(w)
            if floor_check and any(c < r_prime for c in w):
                violations.append(("coordinate_below_floor", w, r_prime))
            if not floor_check:
                violations.append(("joint_point_above_ordinary_bound", w))
    return joint, violations, len(chunk) * len(values)


def _scan_window_parallel(T, N, lo, hi, max_den, floor_check, jobs):
    values = rationals_in(lo, hi, max_den)
    chunks = [values[k::jobs] for k in range(jobs)]
    args = [(T, N, lo, hi, max_den, floor_check, c) for c in chunks if c]
    joint, violations, points = [], [], 0
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        for j, v, n in pool.map(_scan_chunk, args):
            joint.extend(j)
            violations.extend(v)
            points += n
    return WindowScan(
        lo=lo, hi=hi, max_den=max_den, points=points,
        joint=tuple(sorted(joint)), violations=tuple(violations),
    )


# -- SVG rendering (visual aid only; geometry stays exact elsewhere) -----------------


def _fx(x) -> str:
    return f"{float(x):.2f}"


def newton_polygon_svg(points, np_: NewtonPolygon, width: int = 480, height: int = 360) -> str:
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    xs = [x for x, _ in pts]
    ys = [y for _, y in pts]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 == x0:
        x1 = x0 + 1
    if y1 == y0:
        y1 = y0 + 1
    pad = 30

    def sx(x):
        return pad + (Fraction(x) - x0) / (x1 - x0) * (width - 2 * pad)

    def sy(y):
        return height - pad - (Fraction(y) - y0) / (y1 - y0) * (height - 2 * pad)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">'
    ]
    path = " ".join(
        f"{'M' if k == 0 else 'L'} {_fx(sx(x))} {_fx(sy(y))}"
        for k, (x, y) in enumerate(np_.vertices)
    )
    parts.append(f'<path d="{path}" fill="none" stroke="black" stroke-width="2"/>')
    for x, y in pts:
        parts.append(
            f'<circle cx="{_fx(sx(x))}" cy="{_fx(sy(y))}" r="4" fill="steelblue"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


def trop_plane_svg(cells, window, width: int = 480, height: int = 480) -> str:
    """Render 1-dimensional cells (segments/rays) and vertices in a window
    ((xlo, xhi), (ylo, yhi)) of the positive quadrant."""
    (xlo, xhi), (ylo, yhi) = window
    pad = 30

    def sx(x):
        return pad + (Fraction(x) - xlo) / (xhi - xlo) * (width - 2 * pad)

    def sy(y):
        return height - pad - (Fraction(y) - ylo) / (yhi - ylo) * (height - 2 * pad)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">'
    ]
    for cell in cells:
        geom = cell.geometry
        if geom is None:
            continue
        if geom[0] == "point":
            x, y = geom[1]
            parts.append(
                f'<circle cx="{_fx(sx(x))}" cy="{_fx(sy(y))}" r="4" fill="firebrick"/>'
            )
        elif geom[0] == "segment":
            (xa, ya), (xb, yb) = geom[1], geom[2]
            parts.append(
                f'<line x1="{_fx(sx(xa))}" y1="{_fx(sy(ya))}" x2="{_fx(sx(xb))}" '
                f'y2="{_fx(sy(yb))}" stroke="black" stroke-width="2"/>'
            )
        elif geom[0] == "ray":
            (xa, ya), (dx, dy) = geom[1], geom[2]
            # clip the ray to the window by a generous parameter
            tmax = Fraction(0)
            for d, lo_c, hi_c, a in ((dx, xlo, xhi, xa), (dy, ylo, yhi, ya)):
                if d != 0:
                    t = (Fraction(hi_c) - Fraction(a)) / d if d > 0 else (Fraction(lo_c) - Fraction(a)) / d
                    tmax = max(tmax, t)
            xb, yb = Fraction(xa) + tmax * dx, Fraction(ya) + tmax * dy
            parts.append(
                f'<line x1="{_fx(sx(xa))}" y1="{_fx(sy(ya))}" x2="{_fx(sx(xb))}" '
                f'y2="{_fx(sy(yb))}" stroke="black" stroke-width="2"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts)
