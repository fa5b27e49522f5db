"""Small exact linear-algebra helpers.

Generic routines are duck-typed over any exact field element supporting
+, -, *, / and truthiness (Fraction and LocalFieldElem both qualify);
the Fraction-only routines are used where coordinates are rational.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = A[i][0] * B[0][j]
            for t in range(1, k):
                acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(row)
    return out


def det(A):
    """Determinant by expansion along the first row (matrices are tiny)."""
    n = len(A)
    if n == 1:
        return A[0][0]
    acc = None
    for j in range(n):
        if not A[0][j]:
            continue
        minor = [[A[i][t] for t in range(n) if t != j] for i in range(1, n)]
        term = A[0][j] * det(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    if acc is None:
        z = A[0][0] - A[0][0]
        return z
    return acc


def mat_inv_frac(A):
    """Inverse of a square matrix with Fraction entries (Gauss-Jordan)."""
    n = len(A)
    M = [[Fraction(A[i][j]) for j in range(n)] for i in range(n)]
    I = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        I[col], I[piv] = I[piv], I[col]
        f = M[col][col]
        M[col] = [x / f for x in M[col]]
        I[col] = [x / f for x in I[col]]
        for r in range(n):
            if r == col or M[r][col] == 0:
                continue
            f = M[r][col]
            M[r] = [a - f * b for a, b in zip(M[r], M[col])]
            I[r] = [a - f * b for a, b in zip(I[r], I[col])]
    return I


def rank_frac(rows) -> int:
    """Rank of a list of rational vectors."""
    M = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    col = 0
    ncols = len(M[0]) if M else 0
    while rank < len(M) and col < ncols:
        piv = next((r for r in range(rank, len(M)) if M[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        M[rank], M[piv] = M[piv], M[rank]
        f = M[rank][col]
        M[rank] = [x / f for x in M[rank]]
        for r in range(len(M)):
            if r != rank and M[r][col] != 0:
                g = M[r][col]
                M[r] = [a - g * b for a, b in zip(M[r], M[rank])]
        rank += 1
        col += 1
    return rank


def solve_frac(A, b):
    """One exact solution of A x = b over Q, or None if inconsistent.

    Free variables are set to zero.  A is m x n (lists of Fractions)."""
    m = len(A)
    n = len(A[0]) if m else 0
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(b[i])] for i in range(m)]
    pivots = []
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, m) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        f = M[row][col]
        M[row] = [x / f for x in M[row]]
        for r in range(m):
            if r != row and M[r][col] != 0:
                g = M[r][col]
                M[r] = [a - g * b2 for a, b2 in zip(M[r], M[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    for r in range(row, m):
        if M[r][n] != 0:
            return None
    x = [Fraction(0)] * n
    for r, col in enumerate(pivots):
        x[col] = M[r][n]
    return x


def in_convex_hull(q, pts) -> bool:
    """Exact membership of q in conv(pts), coordinates rational.

    By Caratheodory it suffices to look for convex combinations supported
    on at most dim+1 of the points."""
    pts = list(pts)
    if not pts:
        return False
    d = len(q)
    target = [Fraction(c) for c in q] + [Fraction(1)]
    for size in range(1, min(len(pts), d + 1) + 1):
        for sub in combinations(pts, size):
            A = [[Fraction(sub[j][i]) for j in range(size)] for i in range(d)]
            A.append([Fraction(1)] * size)
            lam = solve_frac(A, target)
            if lam is not None and all(v >= 0 for v in lam):
                # confirm (solve_frac zeroes free vars, so recheck exactly)
                ok = all(
                    sum(lam[j] * Fraction(sub[j][i]) for j in range(size)) == target[i]
                    for i in range(d)
                )
                if ok and sum(lam) == 1:
                    return True
    return False


def extreme_points(pts):
    """The vertices of conv(pts): points not in the hull of the others."""
    pts = list(dict.fromkeys(tuple(p) for p in pts))
    out = []
    for q in pts:
        others = [p for p in pts if p != q]
        if not others or not in_convex_hull(q, others):
            out.append(q)
    return out
