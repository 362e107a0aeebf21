import subprocess
import sys

import numpy as np
import pytest

from subplanck import cli, grid_io


def run(*args):
    return cli.main([str(a) for a in args])


def test_wigner_csv_and_summary(tmp_path, capsys):
    out = tmp_path / "w.csv"
    assert run("wigner", "--n", 1, "--a", 5, "--resolution", 200, "--output", out) == 0
    text = capsys.readouterr().out
    assert "integral" in text and "min" in text and "max" in text
    g = grid_io.read_csv(out)
    assert g.kind == "wigner" and g.nx == 200 and g.meta.a == 5.0
    assert g.integral() == pytest.approx(1.0, abs=1e-3)


def test_wigner_center_pgm(tmp_path):
    out = tmp_path / "c.pgm"
    assert run("wigner", "--n", 2, "--mode", "center", "--resolution", 16, "--format", "pgm", "--output", out) == 0
    assert grid_io.read_pgm(out).shape == (16, 16)


def test_default_row_count(tmp_path):
    out = tmp_path / "w.csv"
    assert run("wigner", "--n", 1, "--a", 5, "--output", out) == 0
    rows = [ln for ln in out.read_text().splitlines() if not ln.startswith("#")]
    assert len(rows) == 160000


def test_overlap_mask_and_compare(tmp_path, capsys):
    out = tmp_path / "m.csv"
    assert run("overlap", "--n", 1, "--a", 5, "--mask", "--resolution", 50, "--compare", "--output", out) == 0
    text = capsys.readouterr().out
    assert "max |exact - approx|" in text
    g = grid_io.read_csv(out)
    assert g.kind == "gamma_zero_mask"
    assert set(np.unique(g.values)) <= {0.0, 1.0}


def test_stdout_csv(capsys):
    assert run("overlap", "--n", 1, "--resolution", 3, "--output", "-") == 0
    cap = capsys.readouterr()
    assert cap.out.startswith("# kind n a")
    assert "integral" in cap.err


def test_sensitivity_table_and_rows(capsys, tmp_path):
    assert run("sensitivity", "--n", 1, "--a", 5, "--steps", 16, "--rows", "--figure", tmp_path / "s.png") == 0
    text = capsys.readouterr().out
    assert "a*delta_min     1.110720734" in text
    assert sum(1 for ln in text.splitlines() if ln.startswith("1 5.0 ")) == 16
    assert (tmp_path / "s.png").stat().st_size > 0


def test_isotropy(capsys):
    assert run("isotropy", "--n", 2, "--steps", 16) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "# n a metric" and len(lines) == 3


def test_separation_warning(capsys):
    assert run("sensitivity", "--n", 3, "--a", 6, "--steps", 8) == 0
    assert "warning" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["wigner", "--resolution", "1"],
    ["overlap", "--cutoff", "2"],
    ["sensitivity", "--epsilon", "0"],
    ["wigner", "--mode", "approx"],
    ["wigner", "--window", "1", "0", "0", "1"],
    ["frobnicate"],
    [],
])
def test_usage_errors(argv, capsys):
    assert cli.main(argv) == 2


def test_io_error_exit_1(tmp_path, capsys):
    assert run("overlap", "--resolution", 4, "--output", tmp_path / "no" / "x.csv") == 1
    assert "no" in capsys.readouterr().err


def test_config_file(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("# figure settings\nn = 2\nresolution = 12\noutput = %s\n" % (tmp_path / "c.csv"))
    assert run("overlap", "--config", conf, "--resolution", 10) == 0
    g = grid_io.read_csv(tmp_path / "c.csv")
    assert g.meta.n == 2 and g.nx == 10  # explicit flag wins
    conf.write_text("colour = red\n")
    assert run("overlap", "--config", conf) == 2


def test_state_file(tmp_path):
    sf = tmp_path / "cat.txt"
    sf.write_text("# cat\n3 0 1 0\n3 180 1 0\n")
    out = tmp_path / "w.csv"
    assert run("wigner", "--state-file", sf, "--a", 3, "--resolution", 150, "--output", out) == 0
    assert grid_io.read_csv(out).integral() == pytest.approx(1.0, abs=1e-3)
    assert run("wigner", "--state-file", tmp_path / "nope.txt") == 1


def test_validate_quick(capsys):
    assert run("validate", "--quick", "--n", 1, "--a", 5) == 0
    text = capsys.readouterr().out
    assert "fock gamma n=1 a=5" in text and "quadrature" not in text
    assert "jacobi-anger" in text


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "subplanck", "--help"], capture_output=True, text=True)
    assert res.returncode == 0 and "validate" in res.stdout
