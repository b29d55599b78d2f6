"""End-to-end checks of the gabor-lab command line.

Everything runs in-process through gaborlab.cli.main so pytest can capture
stdout and we skip interpreter startup.  Exit codes follow the contract:
0 success, 1 usage/configuration problems, 2 a numeric identity check failed.
"""

import json

import pytest

from gaborlab.cli import main
from gaborlab.report import validate_report


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# density
# ---------------------------------------------------------------------------

def test_density_writes_expected_artifacts(tmp_path, capsys):
    out = tmp_path / "d"
    rc = main(["density", "--L", "48", "--lattice", "4x6", "--out", str(out)])
    assert rc == 0

    table = out / "density.csv"
    report = out / "density_report.json"
    assert table.is_file()
    assert report.is_file()
    # every artifact carries a .meta.json sidecar with the timestamp, so the
    # data files themselves stay byte-stable
    assert (out / "density.meta.json").is_file()
    assert (out / "density_report.meta.json").is_file()

    header = table.read_text().splitlines()[0]
    assert header == "N,D_minus,D_plus"

    rep = read_json(report)
    validate_report(rep)
    assert rep["kind"] == "density"
    assert rep["config"]["L"] == 48

    lines = capsys.readouterr().out.splitlines()
    assert any(line.lstrip().startswith("N=") for line in lines)


def test_density_meta_sidecar_holds_timestamp(tmp_path):
    out = tmp_path / "d"
    assert main(["density", "--L", "32", "--lattice", "4x4", "--out", str(out)]) == 0
    meta = read_json(out / "density.meta.json")
    assert "created_at" in meta
    # timestamps live only in the sidecar
    assert "created_at" not in (out / "density.csv").read_text()


def test_density_output_is_deterministic(tmp_path):
    out1 = tmp_path / "run1"
    out2 = tmp_path / "run2"
    args = ["density", "--L", "48", "--lattice", "4x6", "--jitter", "0.5",
            "--seed", "7"]
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    assert (out1 / "density.csv").read_bytes() == (out2 / "density.csv").read_bytes()
    # the reports echo the configuration, which includes the out dir itself;
    # everything else must agree exactly
    rep1 = read_json(out1 / "density_report.json")
    rep2 = read_json(out2 / "density_report.json")
    assert rep1["config"].pop("out") != rep2["config"].pop("out")
    assert rep1 == rep2


def test_density_json_format(tmp_path):
    out = tmp_path / "d"
    rc = main(["density", "--L", "32", "--lattice", "4x4", "--format", "json",
               "--out", str(out)])
    assert rc == 0
    payload = read_json(out / "density.json")
    assert payload["kind"] == "density"
    assert payload["payload"]["columns"] == ["N", "D_minus", "D_plus"]
    rows = payload["payload"]["rows"]
    assert rows and all(len(r) == 3 for r in rows)
    # integer lattice: D- == D+ == L/(ab) = 2 at every commensurate N
    for _, dminus, dplus in rows:
        assert dminus <= dplus


def test_density_plot_svg_is_deterministic(tmp_path):
    out1 = tmp_path / "p1"
    out2 = tmp_path / "p2"
    args = ["density", "--L", "32", "--lattice", "4x4", "--plot"]
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    svg1 = out1 / "density_bounds.svg"
    svg2 = out2 / "density_bounds.svg"
    assert svg1.is_file() and svg2.is_file()
    assert svg1.read_bytes() == svg2.read_bytes()


# ---------------------------------------------------------------------------
# framebounds
# ---------------------------------------------------------------------------

def test_framebounds_gaussian_lattice(tmp_path, capsys):
    out = tmp_path / "fb"
    rc = main(["framebounds", "--L", "48", "--lattice", "4x6", "--out", str(out)])
    assert rc == 0
    rep = read_json(out / "framebounds.json")
    validate_report(rep)
    assert rep["kind"] == "framebounds"
    assert 0 < rep["A"] <= rep["B"]
    assert rep["n_points"] == 48 * 48 // (4 * 6)
    assert all(c["ok"] for c in rep["checks"])

    text = capsys.readouterr().out
    assert "A = " in text and "B = " in text
    assert "[ok]" in text and "FAIL" not in text


def test_framebounds_reports_nonframe_without_failing(tmp_path, capsys):
    # box of width 8 on the 16x16 lattice leaves rows of the torus uncovered:
    # A collapses to 0.  That is a faithful result, not a failed identity,
    # so the exit code stays 0 and the report simply says A = 0.
    out = tmp_path / "gap"
    rc = main(["framebounds", "--L", "64", "--window", "box", "--width", "8",
               "--lattice", "16x16", "--out", str(out)])
    assert rc == 0
    rep = read_json(out / "framebounds.json")
    assert rep["A"] == pytest.approx(0.0, abs=1e-12)
    # no duals exist, so the dual-side fields stay null
    assert rep["measure_minus"] is None
    assert rep["reciprocity_residual"] is None
    assert "A = 0" in capsys.readouterr().out


def test_framebounds_plot_artifacts(tmp_path):
    out = tmp_path / "fb"
    rc = main(["framebounds", "--L", "32", "--lattice", "4x4", "--plot",
               "--out", str(out)])
    assert rc == 0
    for name in ("window_stft.svg", "window_stft_log.svg", "window_stft.csv"):
        assert (out / name).is_file(), name


# ---------------------------------------------------------------------------
# dual / localize / measure / excess
# ---------------------------------------------------------------------------

def test_dual_artifacts_and_residual(tmp_path, capsys):
    out = tmp_path / "du"
    rc = main(["dual", "--L", "32", "--lattice", "4x4", "--out", str(out)])
    assert rc == 0
    assert (out / "duals.csv").read_text().splitlines()[0] == "lam_index,n,re,im"
    assert (out / "dual_points.csv").read_text().splitlines()[0] == "x,omega"
    rep = read_json(out / "dual_report.json")
    validate_report(rep)
    assert all(c["ok"] for c in rep["checks"])
    assert "max dual residual" in capsys.readouterr().out


def test_localize_artifacts(tmp_path, capsys):
    out = tmp_path / "loc"
    rc = main(["localize", "--L", "32", "--lattice", "4x4",
               "--window", "gaussian", "--out", str(out)])
    assert rc == 0
    for name in ("column_decay.csv", "row_decay.csv", "envelope.csv",
                 "hap_errors.csv", "localize_report.json"):
        assert (out / name).is_file(), name
    assert (out / "column_decay.csv").read_text().splitlines()[0] == "N,eps"
    assert (out / "envelope.csv").read_text().splitlines()[0] == "dx,domega,value"
    rep = read_json(out / "localize_report.json")
    validate_report(rep)
    assert all(c["ok"] for c in rep["checks"])
    assert "0 failed" in capsys.readouterr().out


def test_measure_profile_and_report(tmp_path, capsys):
    out = tmp_path / "me"
    rc = main(["measure", "--L", "32", "--lattice", "4x4", "--out", str(out)])
    assert rc == 0
    header = (out / "measure_profile.csv").read_text().splitlines()[0]
    assert header == "N,center_x,center_w,avg"
    rep = read_json(out / "measure_report.json")
    validate_report(rep)
    assert all(c["ok"] for c in rep["checks"])
    # reciprocity residuals are printed per box size
    assert "r1=" in capsys.readouterr().out


def test_excess_percell_keeps_frame(tmp_path, capsys):
    out = tmp_path / "ex"
    rc = main(["excess", "--L", "32", "--lattice", "4x4", "--strategy",
               "percell", "--cell", "8x8", "--out", str(out)])
    assert rc == 0
    survivors = (out / "survivor_points.csv").read_text().splitlines()
    removed = (out / "removed_points.csv").read_text().splitlines()
    assert survivors[0] == "x,omega" and removed[0] == "x,omega"
    # 4x4 grid of 8x8 cells -> one removal each
    assert len(removed) - 1 == 16
    assert len(survivors) - 1 == 64 - 16
    rep = read_json(out / "excess_report.json")
    validate_report(rep)
    assert rep["payload"]["still_frame"] is True
    assert "removed" in capsys.readouterr().out


# ---------------------------------------------------------------------------
# counterexample / suite
# ---------------------------------------------------------------------------

def test_counterexample_writes_named_report(tmp_path, capsys):
    out = tmp_path / "ce"
    rc = main(["counterexample", "no_hap", "--size", "12", "--out", str(out)])
    assert rc == 0
    rep = read_json(out / "counterexample_no_hap.json")
    validate_report(rep)
    assert rep["payload"]["construction"] == "no_hap"
    assert rep["checks"] and all(c["ok"] for c in rep["checks"])
    text = capsys.readouterr().out
    assert "[ok]" in text and "FAIL" not in text


def test_counterexample_rejects_unknown_name(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["counterexample", "nope", "--out", str(tmp_path)])
    assert exc.value.code == 1


def test_suite_single_green_criterion(tmp_path, capsys):
    out = tmp_path / "s1"
    rc = main(["suite", "--only", "1", "--out", str(out)])
    assert rc == 0
    rep = read_json(out / "suite_report.json")
    validate_report(rep)
    assert "1/1 criteria passed" in capsys.readouterr().out


def test_suite_propagates_criterion_failure(tmp_path, capsys):
    # criterion 5 is the documented red: the perturbed-basis lower bound is
    # exactly (1 - 5**-0.5)**2 for every size, outside the wished-for window.
    # The suite must report that honestly with exit code 2.
    out = tmp_path / "s5"
    rc = main(["suite", "--only", "5", "--out", str(out)])
    assert rc == 2
    text = capsys.readouterr().out
    assert "[FAIL] criterion 5" in text
    assert "0/1 criteria passed" in text


# ---------------------------------------------------------------------------
# usage errors and config handling
# ---------------------------------------------------------------------------

def test_no_subcommand_returns_usage_error(capsys):
    assert main([]) == 1
    assert "usage" in (capsys.readouterr().err + capsys.readouterr().out).lower()


def test_nondividing_lattice_exits_1(tmp_path, capsys):
    rc = main(["density", "--L", "144", "--lattice", "4x5",
               "--out", str(tmp_path)])
    assert rc == 1
    assert "does not divide" in capsys.readouterr().err


def test_malformed_lattice_string_exits_1(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["density", "--L", "32", "--lattice", "4x", "--out", str(tmp_path)])
    assert exc.value.code == 1


def test_config_file_supplies_defaults(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("L = 64\nlattice = 4x8\n")
    out = tmp_path / "d"
    rc = main(["density", "--config", str(cfg), "--out", str(out)])
    assert rc == 0
    rep = read_json(out / "density_report.json")
    assert rep["config"]["L"] == 64
    assert rep["config"]["lattice"] == [4, 8]


def test_config_flag_is_overridden_by_cli(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("L = 64\nlattice = 4x8\n")
    out = tmp_path / "d"
    rc = main(["density", "--config", str(cfg), "--L", "32",
               "--lattice", "4x4", "--out", str(out)])
    assert rc == 0
    rep = read_json(out / "density_report.json")
    assert rep["config"]["L"] == 32


def test_unknown_config_key_exits_1(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("no_such_key = 3\n")
    rc = main(["density", "--L", "32", "--lattice", "4x4",
               "--config", str(cfg), "--out", str(tmp_path / "d")])
    assert rc == 1
    assert "unknown option" in capsys.readouterr().err
