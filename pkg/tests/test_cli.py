import json

import pytest

from canonlab import display as dsp
from canonlab.canon import certificate_from_json_dict, certify
from canonlab.cli import main
from canonlab.fglog import table_from_json_dict

from conftest import GALLERY


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_hasse_gm(capsys):
    rc, out, _ = run(capsys, "hasse", str(GALLERY / "gm_p3.json"))
    assert rc == 0
    assert out.splitlines()[0] == "H = 0"


def test_hasse_pi_display(capsys):
    rc, out, _ = run(capsys, "hasse", str(GALLERY / "height2_pi_p3.json"))
    assert rc == 0
    assert "H = 1/2" in out
    assert "U_1 = 1/2" in out


def test_hasse_rejects_non_unit(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(
        '{"p": 3, "e": 2, "g": 1, "h": 1, "L": 1, "M": [[["pi"]]]}'
    )
    rc, _, err = run(capsys, "hasse", str(bad))
    assert rc == 1
    assert "unit" in err


def test_missing_file(capsys):
    rc, _, err = run(capsys, "hasse", "/no/such/file.json")
    assert rc == 1


def test_bad_flag(capsys):
    rc, _, err = run(capsys, "certify", str(GALLERY / "gm_p3.json"),
                     "--format", "yaml")
    assert rc == 1


def test_no_subcommand(capsys):
    assert main([]) == 1


def test_witt_add_example(capsys):
    rc, out, _ = run(capsys, "witt", "add [1] [1]", "--p", "2", "--length", "2")
    assert rc == 0
    assert out.strip() == "(2, -1)"


def test_witt_ghost_and_frob(capsys):
    rc, out, _ = run(capsys, "witt", "ghost 1 (0,1)", "--p", "2")
    assert rc == 0
    assert out.strip() == "2"
    rc, out, _ = run(capsys, "witt", "frob (0,1,0)", "--p", "2", "--length", "3")
    assert out.strip() == "(2, -1)"


def test_witt_bad_expression(capsys):
    rc, _, err = run(capsys, "witt", "frobnicate [1]", "--p", "2")
    assert rc == 1


def test_certify_gm_level2(capsys):
    rc, out, _ = run(capsys, "certify", str(GALLERY / "gm_p3.json"),
                     "--level", "2")
    assert rc == 0
    data = json.loads(out)
    assert data["exists"] is True
    cert = certify(dsp.load_file(GALLERY / "gm_p3.json"), 2)
    assert certificate_from_json_dict(data) == cert


def test_certify_boundary_decline_exit2(capsys):
    rc, out, _ = run(capsys, "certify", str(GALLERY / "height2_pi_p2.json"),
                     "--level", "1")
    assert rc == 2
    assert json.loads(out)["exists"] is False


def test_certify_extension_required_exit2(tmp_path, capsys):
    bad = tmp_path / "companion.json"
    bad.write_text(json.dumps({
        "p": 2, "e": 1, "g": 2, "h": 4, "L": 1,
        "M": [
            [["0"], ["1"], ["1"], ["0"]],
            [["1"], ["1"], ["0"], ["1"]],
            [["1"], ["0"], ["0"], ["0"]],
            [["0"], ["1"], ["0"], ["0"]],
        ],
    }))
    rc, _, err = run(capsys, "certify", str(bad), "--level", "1")
    assert rc == 2
    assert "extension" in err


def test_certify_text_format(capsys):
    rc, out, _ = run(capsys, "certify", str(GALLERY / "height2_pi_p3.json"),
                     "--level", "1", "--format", "text")
    assert rc == 0
    assert "exists: true" in out
    assert "radius_exponent: 1/4" in out


def test_certify_seed_stamped(capsys, monkeypatch):
    monkeypatch.setenv("CANONLAB_SEED", "999")
    rc, out, _ = run(capsys, "certify", str(GALLERY / "gm_p2.json"),
                     "--level", "1")
    assert json.loads(out)["seed"] == "999"


def test_log_json_roundtrip(capsys):
    rc, out, _ = run(capsys, "log", str(GALLERY / "height2_pi_p3.json"),
                     "--nmax", "3")
    assert rc == 0
    T = table_from_json_dict(json.loads(out))
    assert T.n_max == 3
    assert str(T.H) == "1/2"


def test_log_tsv(capsys):
    rc, out, _ = run(capsys, "log", str(GALLERY / "gm_p2.json"),
                     "--nmax", "2", "--format", "tsv")
    assert rc == 0
    assert out.splitlines()[0] == "n\ti\tj\tu"


def test_hyp_pass_and_decline(capsys):
    rc, out, _ = run(capsys, "hyp", str(GALLERY / "height2_pi_p3.json"),
                     "--level", "1")
    assert rc == 0
    assert json.loads(out)["passed"] is True
    rc, out, _ = run(capsys, "hyp", str(GALLERY / "height2_pi_p2.json"),
                     "--level", "1")
    assert rc == 2
    assert json.loads(out)["bound_ok"] is False


def test_trop_json(capsys):
    rc, out, _ = run(capsys, "trop", str(GALLERY / "height2_pi_p3.json"),
                     "--level", "1")
    assert rc == 0
    data = json.loads(out)
    assert data["cells"] == [{"n": 1, "i": 1, "coordinate": "1/4"}]
    assert data["deep_cells_bounded"] is True
    assert data["scan"]["ok"] is True


def test_trop_svg_g1(capsys):
    rc, out, _ = run(capsys, "trop", str(GALLERY / "gm_p3.json"),
                     "--level", "1", "--format", "svg")
    assert rc == 0
    assert out.startswith("<svg")


def test_trop_svg_g2(capsys):
    rc, out, _ = run(capsys, "trop", str(GALLERY / "blockdiag_g2_p3.json"),
                     "--level", "1", "--format", "svg")
    assert rc == 0
    assert "<line" in out


def test_fgl_subcommand(capsys):
    rc, out, _ = run(capsys, "fgl", str(GALLERY / "gm_p3.json"),
                     "--degree", "9")
    assert rc == 0
    data = json.loads(out)
    assert data["integral"] is True
    assert data["shape"]["passed"] is True
