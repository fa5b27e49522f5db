from fractions import Fraction

import pytest

from canonlab import tropical as trop
from canonlab.errors import InternalCheckError
from canonlab.fglog import compute_log
from canonlab.ring import INF

from conftest import blockdiag_display, coupled_display, gm_display, pi_display


def three_term_graph(p):
    """X + p^-1 X^p + p^-1 Y^p."""
    return trop.height_graph(
        2,
        [((1, 0), Fraction(0)), ((p, 0), Fraction(-1)), ((0, p), Fraction(-1))],
    )


def five_term_graph(p):
    """X + p^-1 X^p + p^-1 Y^p + p^-2 X^(p^2) + 2 p^-2 Y^(p^2) (p odd)."""
    return trop.height_graph(
        2,
        [
            ((1, 0), Fraction(0)),
            ((p, 0), Fraction(-1)),
            ((0, p), Fraction(-1)),
            ((p * p, 0), Fraction(-2)),
            ((0, p * p), Fraction(-2)),
        ],
    )


# -- initial sets -------------------------------------------------------------------


def test_inn_on_diagonal_ray_interior():
    p = 3
    f = three_term_graph(p)
    w = (Fraction(1, 4), Fraction(1, 4))  # inside the diagonal ray
    got = {nu for nu, _ in trop.inn_set(f, w)}
    assert got == {(p, 0), (0, p)}


def test_inn_at_meeting_point_is_everything():
    p = 3
    f = three_term_graph(p)
    w = (Fraction(1, p - 1), Fraction(1, p - 1))
    assert set(trop.inn_set(f, w)) == set(f.entries)


def test_inn_deep_chamber_singleton():
    f = three_term_graph(3)
    got = trop.inn_set(f, (Fraction(2), Fraction(2)))
    assert [nu for nu, _ in got] == [(1, 0)]
    assert not trop.is_trop_point(f, (Fraction(2), Fraction(2)))
    cell = trop.cell_of(f, (Fraction(2), Fraction(2)))
    assert isinstance(cell, trop.Chamber)


def test_inn_requires_positive_weights():
    f = three_term_graph(3)
    with pytest.raises(ValueError):
        trop.inn_set(f, (Fraction(0), Fraction(1)))


# -- cells, duals, enumeration ---------------------------------------------------------


def test_three_rays_meet():
    p = 3
    f = three_term_graph(p)
    cells = trop.enumerate_cells(f)
    dims = sorted(c.dim for c in cells)
    assert dims == [0, 1, 1, 1]
    vertex = next(c for c in cells if c.dim == 0)
    assert vertex.geometry == (
        "point",
        (Fraction(1, p - 1), Fraction(1, p - 1)),
    )


def test_trop2_distinguished_cell_line():
    p = 3
    f = five_term_graph(p)
    cells = trop.enumerate_cells(f)
    target = {(p, 0), (p * p, 0)}
    cell = next(c for c in cells if {nu for nu, _ in c.inn} == target)
    assert cell.samples[0][0] == Fraction(1, p * (p - 1))


def test_duality_orthogonal_and_complementary():
    for f in (three_term_graph(3), five_term_graph(3)):
        for cell in trop.enumerate_cells(f):
            w = cell.samples[0]
            dual = trop.dual_cell(f, w)
            pts = [nu for nu, _ in dual.inn]
            assert trop.affine_dim(pts) + cell.dim == 2
            if cell.dim == 1:
                a, b = cell.geometry[1], (
                    cell.geometry[2]
                    if cell.geometry[0] == "segment"
                    else tuple(
                        x + d for x, d in zip(cell.geometry[1], cell.geometry[2])
                    )
                )
                assert trop.spans_orthogonal([a, b], pts)


def test_pw_from_cw_consistency():
    for f in (three_term_graph(3), five_term_graph(3)):
        for cell in trop.enumerate_cells(f):
            assert trop.pw_from_cw_consistent(f, cell.samples[0])


def test_cell_contains_samples():
    f = five_term_graph(3)
    for cell in trop.enumerate_cells(f):
        assert trop.cell_contains(f, cell, cell.samples[0])


def test_duplicate_exponents_rejected():
    with pytest.raises(ValueError):
        trop.height_graph(1, [((1,), Fraction(0)), ((1,), Fraction(1))])


# -- Newton polygons ---------------------------------------------------------------


def test_cube_minus_one_polygon():
    # (1+X)^3 - 1 = 3X + 3X^2 + X^3 over p = 3
    pts = [(1, Fraction(1)), (2, Fraction(1)), (3, Fraction(0))]
    np_ = trop.newton_polygon(pts)
    assert np_.vertices == ((1, Fraction(1)), (3, Fraction(0)))
    assert np_.segments == ((Fraction(-1, 2), 2),)
    assert trop.roots_in_radius(np_, Fraction(1, 2)) == 2
    assert trop.roots_in_radius(np_, Fraction(2, 3)) == 0


def test_gm_polygon_slopes_and_lengths():
    p = 3
    T = compute_log(gm_display(p).with_length(5), 4)
    np_ = trop.newton_polygon(trop.diag_points(T, 0))
    for n, (slope, length) in enumerate(np_.segments, start=1):
        assert slope == Fraction(-1, p ** (n - 1) * (p - 1))
        assert length == p ** n - p ** (n - 1)


def test_single_point_polygon():
    np_ = trop.newton_polygon([(1, Fraction(0))])
    assert np_.segments == ()
    assert trop.roots_in_radius(np_, Fraction(1, 10)) == 0


def test_polygon_rejects_duplicates_and_empty():
    with pytest.raises(ValueError):
        trop.newton_polygon([])
    with pytest.raises(ValueError):
        trop.newton_polygon([(1, Fraction(0)), (1, Fraction(1))])


def test_polygon_collinear_middle_dropped():
    pts = [(1, Fraction(0)), (2, Fraction(-1)), (3, Fraction(-2))]
    np_ = trop.newton_polygon(pts)
    assert np_.vertices == ((1, Fraction(0)), (3, Fraction(-2)))


# -- distinguished cells -----------------------------------------------------------------


def test_h_cells_gm():
    p = 3
    T = compute_log(gm_display(p).with_length(5), 4)
    cells = trop.h_cells(T, 2)
    assert cells[0] == trop.HCell(n=1, i=1, coordinate=Fraction(1, p - 1))
    assert cells[1].coordinate == Fraction(1, p * (p - 1))


def test_h_cells_pi_display():
    T = compute_log(pi_display(3).with_length(4), 3)
    (cell,) = trop.h_cells(T, 1)
    assert cell.coordinate == Fraction(1, 2) - Fraction(1, 4)


def test_h_cells_requires_hypotheses():
    T = compute_log(pi_display(2).with_length(4), 3)  # boundary case
    with pytest.raises(ValueError):
        trop.h_cells(T, 1)


def test_deep_cells_bounded():
    T = compute_log(pi_display(3).with_length(4), 3)
    assert trop.deep_cells_bounded(T, 1)
    TG = compute_log(gm_display(2).with_length(6), 5)
    assert trop.deep_cells_bounded(TG, 3)


# -- pointwise properness -----------------------------------------------------------------


def test_properness_g1_on_cell_and_vacuous():
    T = compute_log(pi_display(3).with_length(4), 3)
    v = trop.properness_check(T, 1, (Fraction(1, 4),))
    assert v.joint and v.ok and v.coords_ok
    deep = trop.properness_check(T, 1, (Fraction(1),))
    assert deep.vacuous and deep.ok


def test_properness_rejects_small_components():
    T = compute_log(pi_display(3).with_length(4), 3)
    with pytest.raises(ValueError):
        trop.properness_check(T, 1, (Fraction(1, 7),))


def test_properness_blockdiag_grid_points():
    T = compute_log(blockdiag_display(3).with_length(4), 3)
    # the only joint point above r_1 = 1/6 is the (1/2, 1/2) crossing
    v = trop.properness_check(T, 1, (Fraction(1, 2), Fraction(1, 2)))
    assert v.joint and v.coords_ok and v.ok
    off = trop.properness_check(T, 1, (Fraction(1, 2), Fraction(1, 4)))
    assert off.vacuous and off.ok


def test_properness_coupled_display():
    T = compute_log(coupled_display(3).with_length(4), 3)
    for w in ((Fraction(1, 4), Fraction(1, 2)), (Fraction(1, 2), Fraction(1, 2))):
        v = trop.properness_check(T, 1, w)
        assert v.joint and v.ok
        for (_, _, lhs, rhs) in v.diag_witnesses:
            assert lhs >= rhs


def test_epsilon_indicator():
    assert trop.epsilon(2, 1) == 1
    assert trop.epsilon(1, 2) == 0
    assert trop.epsilon(1, 1) == 0


# -- grid scan -----------------------------------------------------------------------------


def test_grid_scan_coupled():
    T = compute_log(coupled_display(3).with_length(4), 3)
    summary = trop.grid_scan(T, 1)
    assert summary.ok
    assert summary.max_den == 2 * 9 * 2
    assert (Fraction(1, 4), Fraction(1, 2)) in summary.primary.joint
    assert summary.upper.joint == ()


def test_grid_scan_g1():
    T = compute_log(pi_display(3).with_length(4), 3)
    summary = trop.grid_scan(T, 1)
    assert summary.ok
    assert summary.primary.joint == ((Fraction(1, 4),),)


def test_grid_scan_parallel_matches():
    T = compute_log(coupled_display(3).with_length(4), 3)
    a = trop.grid_scan(T, 1, max_den=12)
    b = trop.grid_scan(T, 1, max_den=12, jobs=2)
    assert a.primary.joint == b.primary.joint
    assert a.upper.joint == b.upper.joint


def test_rationals_in():
    vals = trop.rationals_in(Fraction(1, 3), Fraction(1, 2), 4)
    assert vals == (Fraction(1, 2),)
    vals = trop.rationals_in(Fraction(1, 6), Fraction(1, 2), 6)
    assert Fraction(1, 4) in vals and Fraction(1, 6) not in vals


# -- exports -------------------------------------------------------------------------------


def test_polygon_tsv():
    pts = [(1, Fraction(1)), (3, Fraction(0))]
    text = trop.polygon_tsv(trop.newton_polygon(pts))
    assert "vertex\t1\t1" in text
    assert "segment\t-1/2\t2" in text


def test_svg_smoke():
    T = compute_log(gm_display(3).with_length(4), 3)
    pts = trop.diag_points(T, 0)
    svg = trop.newton_polygon_svg(pts, trop.newton_polygon(pts))
    assert svg.startswith("<svg") and svg.endswith("</svg>")
    f = five_term_graph(3)
    cells = trop.enumerate_cells(f)
    svg2 = trop.trop_plane_svg(
        cells, ((Fraction(0), Fraction(1)), (Fraction(0), Fraction(1)))
    )
    assert "<line" in svg2 or "<circle" in svg2
