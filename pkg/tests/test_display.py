from fractions import Fraction

import pytest

from canonlab import display as dsp
from canonlab.errors import ExtensionRequiredError, InputError, StructureError
from canonlab.ring import LocalFieldElem
from canonlab.witt import WittVec

from conftest import blockdiag_display, coupled_display, gm_display, pi_display, teich, teich_pi


def swap_display(p=2):
    """g = 2, h = 4 whose tangent residue matrix swaps the coordinates."""
    rows = [
        [teich(0, p), teich(1, p), teich(1, p), teich(0, p)],
        [teich(1, p), teich(0, p), teich(0, p), teich(1, p)],
        [teich(1, p), teich(0, p), teich(0, p), teich(0, p)],
        [teich(0, p), teich(1, p), teich(0, p), teich(0, p)],
    ]
    return dsp.DisplayData(2, 4, tuple(tuple(r) for r in rows))


def companion_display(p=2):
    """Tangent residues [[0,1],[1,1]]: no eigenvector over F_2."""
    rows = [
        [teich(0, p), teich(1, p), teich(1, p), teich(0, p)],
        [teich(1, p), teich(1, p), teich(0, p), teich(1, p)],
        [teich(1, p), teich(0, p), teich(0, p), teich(0, p)],
        [teich(0, p), teich(1, p), teich(0, p), teich(0, p)],
    ]
    return dsp.DisplayData(2, 4, tuple(tuple(r) for r in rows))


# -- ghost matrices ----------------------------------------------------------------


def test_gm_ghost_matrix_all_ones():
    D = gm_display(3).with_length(4)
    one = LocalFieldElem.one(3, 1)
    for n in range(4):
        assert D.ghost_matrix(n) == [[one]]


def test_ghost0_of_teichmuller_entries():
    D = pi_display(3)
    g0 = D.ghost_matrix(0)
    assert g0[0][0] == LocalFieldElem.pi(3, 2)
    assert g0[1][1].is_zero()


def test_ghost1_of_pi_display():
    D = pi_display(3).with_length(2)
    g1 = D.ghost_matrix(1)
    assert g1[0][0] == LocalFieldElem.pi(3, 2) ** 3
    assert g1[0][1] == LocalFieldElem.one(3, 2)
    assert g1[1][1].is_zero()


# -- constructor invariants -----------------------------------------------------------


def test_rejects_non_unit_determinant():
    with pytest.raises(StructureError):
        dsp.DisplayData(1, 1, ((teich_pi(3, 2),),))


def test_rejects_bad_shapes():
    with pytest.raises(StructureError):
        dsp.DisplayData(2, 1, ((teich(1, 3),),))
    with pytest.raises(StructureError):
        dsp.DisplayData(1, 1, ((teich(1, 3), teich(1, 3)),))


# -- Hasse invariant -----------------------------------------------------------------


def test_hasse_gm_is_zero():
    hv = dsp.hasse_invariant(gm_display(5))
    assert hv.value == 0
    assert hv.diagonal == (Fraction(0),)


def test_hasse_pi_display():
    hv = dsp.hasse_invariant(pi_display(3))
    assert hv.value == Fraction(1, 2)
    assert hv.diagonal == (Fraction(1, 2),)


def test_hasse_capped_at_one():
    p = 3
    nine = teich(9, p, 2)
    D = dsp.DisplayData(
        1, 2, ((nine, teich(1, p, 2)), (teich(1, p, 2), teich(0, p, 2)))
    )
    assert dsp.hasse_invariant(D).value == 1


def test_hasse_diagonal_sums_to_h():
    hv = dsp.hasse_invariant(coupled_display(3))
    assert hv.value == Fraction(1, 2)
    assert sum(hv.diagonal) == hv.value


# -- triangularization ---------------------------------------------------------------


def test_triangularize_idempotent_on_triangular():
    D = pi_display(3)
    assert dsp.triangularize(D) is D
    C = coupled_display(3)
    assert dsp.triangularize(C) is C


def test_triangularize_dimension_one_trivial():
    D = gm_display(2)
    assert dsp.triangularize(D) is D


def test_triangularize_swap_example():
    D = swap_display(2)
    assert not dsp.is_triangular_mod_p(D)
    Dt = dsp.triangularize(D)
    assert dsp.is_triangular_mod_p(Dt)
    a0 = Dt.tangent_block_w0()
    for i in range(2):
        for j in range(i):
            assert a0[i][j].residue() == 0


def test_triangularize_preserves_hasse():
    D = swap_display(2)
    before = dsp.hasse_invariant(D).value
    after = dsp.hasse_invariant(dsp.triangularize(D)).value
    assert before == after


def test_triangularize_extension_required():
    with pytest.raises(ExtensionRequiredError):
        dsp.triangularize(companion_display(2))


def test_base_change_preserves_hasse_and_unit(rng):
    base = coupled_display(3)
    for _ in range(10):
        while True:
            S = [[rng.randint(0, 2) for _ in range(2)] for _ in range(2)]
            det = S[0][0] * S[1][1] - S[0][1] * S[1][0]
            if det % 3 != 0:
                break
        moved = dsp.base_change_tangent(base.with_length(3), S)
        assert dsp.hasse_invariant(moved).value == Fraction(1, 2)
        back = dsp.triangularize(moved)
        assert dsp.is_triangular_mod_p(back)
        assert dsp.hasse_invariant(back).value == Fraction(1, 2)


# -- JSON round trip ------------------------------------------------------------------


def test_json_roundtrip(gallery_path):
    for name in ("gm_p3.json", "height2_pi_p3.json", "blockdiag_g2_p3.json"):
        D = dsp.load_file(gallery_path / name)
        assert dsp.loads(dsp.dumps(D)) == D


def test_json_missing_key():
    with pytest.raises(InputError):
        dsp.loads('{"p": 3, "e": 1}')


def test_json_syntax_error_has_line():
    with pytest.raises(InputError) as exc:
        dsp.loads('{"p": 3,\n  broken')
    assert "line 2" in str(exc.value)


def test_json_bad_element_string():
    with pytest.raises(InputError):
        dsp.loads(
            '{"p": 3, "e": 1, "g": 1, "h": 1, "L": 1, "M": [[["frog"]]]}'
        )


def test_json_non_unit_det_rejected():
    with pytest.raises(StructureError):
        dsp.loads(
            '{"p": 3, "e": 2, "g": 1, "h": 1, "L": 1, "M": [[["pi"]]]}'
        )
