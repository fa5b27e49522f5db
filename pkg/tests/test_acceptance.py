"""Acceptance suite: one test per criterion, each printing a PASS line with
its elapsed time.  Every tolerance is exact equality of rationals or
integers; the stated runtime ceilings are asserted too."""

import json
import random
import time
from fractions import Fraction

import pytest

from canonlab import display as dsp
from canonlab.canon import certify, count_roots, r_prime_n
from canonlab.fgl import group_law, log_series, p_power_series, shape_check
from canonlab.fglog import check_hypotheses, compute_log
from canonlab.ring import INF, LocalFieldElem
from canonlab.sampling import random_triangular_display, seed_from_env, sweep_parameters
from canonlab.tropical import grid_scan, h_cells
from canonlab.witt import WittVec

from conftest import GALLERY, blockdiag_display, coupled_display, gm_display, pi_display


def _report(name, t0, limit, detail=""):
    dt = time.time() - t0
    print(f"criterion {name}: PASS ({dt:.2f}s{', ' + detail if detail else ''})")
    assert dt < limit, f"{name} exceeded the {limit}s budget"


def _sweep_displays():
    """The 50 randomized triangular displays shared by criteria 4, 5, 7."""
    rng = random.Random(seed_from_env())
    out = []
    for p, e, g, h, N in sweep_parameters(rng, 50):
        out.append((random_triangular_display(rng, p, e, g, h, N, L=N + 3), N))
    return out


def test_criterion_1_gm_logarithm():
    t0 = time.time()
    for p in (2, 3, 5):
        T = compute_log(gm_display(p).with_length(11), 10)
        for n in range(11):
            assert T.u(n, 0, 0) == -n
    _report("1 (multiplicative-group logarithm)", t0, 1.0)


def test_criterion_2_group_law_integrality():
    t0 = time.time()
    for p in (2, 3):
        T = compute_log(gm_display(p).with_length(5), 4)
        F = group_law(T, 12)  # unit, commutativity, associativity asserted inside
        assert all(c.ord() >= 0 for f in F for c in f.coeffs.values())
    _report("2 (group-law integrality and axioms)", t0, 10.0)


def test_criterion_3_shape_of_p():
    t0 = time.time()
    for D, p in ((gm_display(2), 2), (gm_display(3), 3), (pi_display(3), 3)):
        T = compute_log(D.with_length(4), 3)
        S = p_power_series(T, 1, p * p)
        rep = shape_check(S, T.w0_tangent)
        assert rep.passed, rep.failures()
    _report("3 (multiply-by-p shape window)", t0, 30.0)


def test_criterion_4_hypotheses_sweep():
    t0 = time.time()
    displays = _sweep_displays()
    assert len(displays) == 50
    for D, N in displays:
        T = compute_log(D, N + 2)
        rep = check_hypotheses(T, N)
        assert rep.passed, (D.p, D.e, D.g, D.h, N)
    _report("4 (valuation pattern on 50 random displays)", t0, 60.0)


def test_criterion_5_cell_locations():
    t0 = time.time()
    for D, N in _sweep_displays():
        T = compute_log(D, N + 2)
        p = D.p
        for cell in h_cells(T, N):
            want = Fraction(1, p ** (cell.n - 1) * (p - 1)) - T.U[cell.i - 1] / (p - 1)
            assert cell.coordinate == want
    _report("5 (distinguished cells and dual coordinates)", t0, 120.0)


def test_criterion_6_properness_grid():
    t0 = time.time()
    cases = [
        (blockdiag_display(3), "blockdiag p=3"),
        (coupled_display(3), "coupled p=3, H=1/2"),
        (coupled_display(2, ramified=False), "coupled p=2, H=0"),
    ]
    for D, label in cases:
        tc = time.time()
        T = compute_log(D.with_length(4), 3)
        summary = grid_scan(T, 1)  # default denominator 2 p^2 (p-1)
        assert summary.primary.violations == (), label
        assert summary.upper.joint == (), label
        assert time.time() - tc < 120.0, label
    _report("6 (properness grid scan, g = 2)", t0, 360.0)


def test_criterion_7_root_counts():
    t0 = time.time()
    for D, N in _sweep_displays():
        T = compute_log(D, N + 2)
        for n in range(1, N + 1):
            assert count_roots(T, n) == D.p ** (n * D.g)
    B = dsp.load_file(GALLERY / "blockdiag_g2_p3.json")
    TB = compute_log(B.with_length(4), 3)
    assert count_roots(TB, 1) == 9
    _report("7 (shell root counts)", t0, 120.0)


def test_criterion_8_end_to_end_certificates():
    t0 = time.time()
    a = certify(dsp.load_file(GALLERY / "height2_pi_p3.json"), 1)
    assert a.exists
    assert a.hasse == Fraction(1, 2)
    assert a.radius_exponent == Fraction(1, 4)
    assert a.shells[0].count == 3

    b = certify(dsp.load_file(GALLERY / "height2_pi_p2.json"), 1)
    assert not b.exists
    assert b.hasse == Fraction(1, 2) == b.bound

    c = certify(dsp.load_file(GALLERY / "gm_p3.json"), 3)
    assert c.exists
    assert c.radius_exponent == Fraction(1, 3 ** 2 * 2)
    assert c.shells[-1].count == 27
    _report("8 (end-to-end certificates)", t0, 60.0)


def test_criterion_9_witt_identity_suite():
    t0 = time.time()
    rng = random.Random(seed_from_env() + 9)
    cases = 0
    for _ in range(250):
        p = rng.choice([2, 3])
        e = rng.choice([1, 2])
        L = rng.randint(2, 5)
        comps = []
        for _ in range(L):
            cs = [Fraction(rng.randint(-3, 3)) for _ in range(e)]
            comps.append(LocalFieldElem(p, e, tuple(cs)))
        x = WittVec(tuple(comps))
        # ghost shift under Frobenius
        y = x.frobenius()
        for n in range(L - 1):
            assert y.ghost(n) == x.ghost(n + 1)
        cases += 1
        # Verschiebung ghost rule
        v = x.verschiebung()
        assert v.ghost(0).is_zero()
        for n in range(1, L):
            assert v.ghost(n) == p * x.ghost(n - 1)
        cases += 1
        # F(V(x)) = p x
        assert v.frobenius() == (p * x).truncate(L - 1)
        cases += 1
        # ghost transport round trip
        assert WittVec.from_ghosts(x.ghosts()) == x
        cases += 1
    assert cases == 1000
    _report("9 (Witt identity suite, 1000 cases)", t0, 30.0)
