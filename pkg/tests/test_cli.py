import json

import pytest

from semisep import cli, core


def run_cli(capsys, *argv):
    code = cli.run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def z4_file(tmp_path):
    path = tmp_path / "z4.tbl"
    core.save_table(core.cyclic_group(4), path)
    return str(path)


@pytest.fixture
def bad_table_file(tmp_path):
    path = tmp_path / "bad.tbl"
    path.write_text("2\n1 0\n0 0\n")
    return str(path)


def test_validate_good(capsys, z4_file):
    code, out, _ = run_cli(capsys, "validate", z4_file)
    assert code == 0
    assert out.strip() == "ASSOCIATIVE"


def test_validate_violation(capsys, bad_table_file):
    code, out, _ = run_cli(capsys, "validate", bad_table_file)
    assert code == 0
    assert out.startswith("VIOLATION")


def test_validate_structured(capsys, z4_file):
    code, out, _ = run_cli(capsys, "--format", "structured", "validate", z4_file)
    assert code == 0
    payload = json.loads(out)
    assert payload["result"] == "associative"
    assert payload["order"] == 4


def test_green_output(capsys, z4_file):
    code, out, _ = run_cli(capsys, "green", z4_file)
    assert code == 0
    assert "h-classes: {0 1 2 3}" in out
    assert "schutzenberger-orders: 4" in out


def test_schutz_output(capsys, z4_file):
    code, out, _ = run_cli(capsys, "schutz", z4_file, "0")
    assert code == 0
    assert "()" in out  # identity permutation present


def test_congruences_z4(capsys, z4_file):
    code, out, _ = run_cli(capsys, "congruences", z4_file)
    assert code == 0
    assert out.splitlines()[0] == "count: 3"


def test_separate_z4(capsys, z4_file):
    code, out, _ = run_cli(capsys, "separate", z4_file, "2", "0")
    assert code == 0
    assert out.startswith("index 4")


def test_separate_precondition(capsys, z4_file):
    code, _, err = run_cli(capsys, "separate", z4_file, "0", "0")
    assert code == 1
    assert "error" in err


def test_classify_symbolic(capsys):
    code, out, _ = run_cli(capsys, "classify", "z")
    assert code == 0
    assert "weakly-separable: false" in out
    assert "residually-finite: true" in out
    code, out, _ = run_cli(capsys, "classify", "n")
    assert code == 0
    assert "completely-separable: true" in out


def test_classify_table(capsys, z4_file):
    code, out, _ = run_cli(capsys, "classify", z4_file)
    assert code == 0
    assert "completely-separable: true" in out


def test_kl_z(capsys):
    code, out, _ = run_cli(capsys, "kl", "z", "--element", "0", "--gens", "1,-1")
    assert code == 0
    assert "k_s: 2" in out
    assert "m_s: 1" in out
    assert "strongly-separable-at-s: false" in out


def test_kl_n(capsys):
    code, out, _ = run_cli(capsys, "kl", "n", "--element", "1", "--gens", "1")
    assert code == 0
    assert "k_s: 0" in out and "m_s: 0" in out
    assert "strongly-separable-at-s: true" in out


def test_kl_nxz(capsys):
    code, out, _ = run_cli(
        capsys, "kl", "nxz", "--element", "1:0", "--gens", "1:0,0:1,0:-1"
    )
    assert code == 0
    assert "m_s: 1" in out and "k_s: 2" in out


def test_kl_table(capsys, z4_file):
    code, out, _ = run_cli(capsys, "kl", z4_file, "--element", "1", "--gens", "1")
    assert code == 0
    assert "k_s: 1" in out and "m_s: 1" in out


def test_kl_presentation(capsys, tmp_path):
    pres = tmp_path / "mono.pres"
    pres.write_text("gens 1\nrel 3 = 5\n")
    code, out, _ = run_cli(capsys, "kl", str(pres), "--element", "0", "--gens", "0")
    assert code == 0
    assert "k_s:" in out


def test_abelian_classify(capsys):
    code, out, _ = run_cli(capsys, "abelian", "classify", "sum", "Z")
    assert code == 0
    assert "weakly-separable: false" in out
    code, out, _ = run_cli(capsys, "abelian", "classify", "prod", "Z/2*omega")
    assert "strongly-separable: true" in out and "completely-separable: false" in out


def test_abelian_bad_descriptor(capsys):
    code, _, err = run_cli(capsys, "abelian", "classify", "sum", "Q")
    assert code == 2
    assert "format error" in err


def test_gallery_list(capsys):
    code, out, _ = run_cli(capsys, "gallery", "list")
    assert code == 0
    assert "construction(z3,z3,id)" in out
    assert "squarefree(3)" in out


def test_gallery_build_round_trip(capsys, tmp_path):
    out_path = tmp_path / "c33.tbl"
    code, out, _ = run_cli(
        capsys, "-o", str(out_path), "gallery", "build", "construction", "--t", "z3", "--g", "z3"
    )
    assert code == 0
    loaded = core.load_table(out_path)
    assert loaded.order == 7
    assert core.validate_associativity(loaded.table) is None


def test_gallery_build_rees(capsys, tmp_path):
    out_path = tmp_path / "rees.tbl"
    code, _, _ = run_cli(
        capsys,
        "-o",
        str(out_path),
        "gallery",
        "build",
        "reesmatrix",
        "--g",
        "z2",
        "--p",
        "e,0;e,e",
    )
    assert code == 0
    assert core.load_table(out_path).order == 9


def test_gallery_build_squarefree_stdout(capsys):
    code, out, _ = run_cli(capsys, "gallery", "build", "squarefree", "--n", "2")
    assert code == 0
    assert out.splitlines()[0] == "10"


def test_gallery_replay_sqfree(capsys, tmp_path):
    colors = tmp_path / "colors.txt"
    colors.write_text("red\nred\n")
    code, out, _ = run_cli(capsys, "gallery", "replay", "sqfree", "--colors", str(colors))
    assert code == 0
    assert "conclusion" in out
    colors.write_text("red\nblue\n")
    code, out, _ = run_cli(capsys, "gallery", "replay", "sqfree", "--colors", str(colors))
    assert out.strip() == "NOCOLLISION"


def test_gallery_replay_eg62(capsys, tmp_path):
    colors = tmp_path / "colors.txt"
    colors.write_text("x\nx\n")
    code, out, _ = run_cli(capsys, "gallery", "replay", "eg62", "--colors", str(colors))
    assert code == 0
    assert "b1" in out


def test_gallery_nxz(capsys):
    code, out, _ = run_cli(capsys, "gallery", "nxz", "--gens", "1:1", "--x", "2:0")
    assert code == 0
    assert "modulus: 4" in out
    assert "SEPARATED" in out


def test_gallery_zcyclic(capsys):
    code, out, _ = run_cli(capsys, "gallery", "zcyclic", "--nmax", "5")
    assert code == 0
    assert "n=5 steps=4 contained=true" in out


def test_gallery_unitcheck(capsys, z4_file):
    code, out, _ = run_cli(capsys, "gallery", "unitcheck", z4_file)
    assert code == 0
    assert out.strip() == "UNITS-TWO-SIDED"


def test_exit_codes(capsys, tmp_path):
    missing = str(tmp_path / "missing.tbl")
    code, _, _ = run_cli(capsys, "validate", missing)
    assert code == 2
    big = tmp_path / "big.tbl"
    core.save_table(core.cyclic_group(13), big)
    code, _, err = run_cli(capsys, "congruences", str(big))
    assert code == 3  # order 13 exceeds the enumeration cap
    assert "resource" in err


def test_structured_and_text_agree(capsys, z4_file):
    code, text_out, _ = run_cli(capsys, "kl", z4_file, "--element", "1", "--gens", "1")
    code2, json_out, _ = run_cli(
        capsys, "--format", "structured", "kl", z4_file, "--element", "1", "--gens", "1"
    )
    payload = json.loads(json_out)
    assert f"k_s: {payload['k_s']}" in text_out
    assert f"m_s: {payload['m_s']}" in text_out


def test_output_is_deterministic(capsys, z4_file):
    _, out1, _ = run_cli(capsys, "green", z4_file)
    _, out2, _ = run_cli(capsys, "green", z4_file)
    assert out1 == out2
