"""Console-script surface: exit codes, file contracts, replay."""

import csv
import json
import math

import pytest

from prsm.cli import main


def _read_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _read_csv(path):
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def test_seq_pass(tmp_path, capsys):
    rc = main(["seq", "--poly", "x^5+x^2+1", "--out", str(tmp_path)])
    assert rc == 0
    assert (tmp_path / "sequence.txt").read_text().strip() == (
        "1111100011011101010000100101100"
    )
    report = _read_json(tmp_path / "checks.json")
    assert report["n"] == 31 and report["all_passed"]
    assert set(report["results"]) == {
        "balance",
        "runs",
        "autocorrelation",
        "shift-add",
        "window",
        "serial",
        "complexity",
    }
    assert report["results"]["complexity"]["linear_complexity"] == 5
    assert report["description_length"] == 9
    out = capsys.readouterr().out
    assert "balance: pass" in out


def test_seq_subset_of_checks(tmp_path):
    rc = main(["seq", "--poly", "x^3+x+1", "--checks", "balance,serial", "--out", str(tmp_path)])
    assert rc == 0
    report = _read_json(tmp_path / "checks.json")
    assert set(report["results"]) == {"balance", "serial"}


def test_seq_non_primitive_exits_2(tmp_path, capsys):
    rc = main(["seq", "--poly", "x^4+x^2+1", "--out", str(tmp_path)])
    assert rc == 2
    assert "not primitive" in capsys.readouterr().err


def test_seq_bad_inputs_exit_2(tmp_path):
    assert main(["seq", "--poly", "x^3+oops", "--out", str(tmp_path)]) == 2
    assert main(["seq", "--poly", "x^3+x+1", "--seed", "10", "--out", str(tmp_path)]) == 2
    assert main(["seq", "--poly", "x^3+x+1", "--checks", "novelty", "--out", str(tmp_path)]) == 2


def test_spectrum_pseudo_full_ensemble(tmp_path):
    rc = main(
        [
            "spectrum",
            "--family",
            "pseudo",
            "--m",
            "5",
            "--shifts",
            "all",
            "--signs",
            "both",
            "--out",
            str(tmp_path),
        ]
    )
    assert rc == 0
    header, rows = _read_csv(tmp_path / "spectrum.csv")
    assert header == ["eigenvalue"]
    assert len(rows) == 62 * 31
    values = [float(r[0]) for r in rows]
    assert values == sorted(values)

    header, hrows = _read_csv(tmp_path / "histogram.csv")
    assert header == ["bin_lo", "bin_hi", "count", "density"]
    assert sum(int(r[2]) for r in hrows) == 62 * 31

    summary = _read_json(tmp_path / "summary.json")
    assert summary["members"] == 62 and summary["n"] == 31
    assert "semicircle" in summary["ks"]
    assert summary["moments"][1]["r"] == 2
    assert abs(summary["moments"][1]["mean"] - 0.25) < 1e-12
    assert not summary["divergent_support"]

    manifest = _read_json(tmp_path / "manifest.json")
    assert manifest["command"] == "spectrum"
    assert manifest["config"]["poly"] == "x^5+x^2+1"


def test_spectrum_svg_output(tmp_path):
    rc = main(
        ["spectrum", "--family", "pseudo", "--m", "4", "--format", "svg", "--out", str(tmp_path)]
    )
    assert rc == 0
    text = (tmp_path / "density.svg").read_text()
    assert text.startswith("<svg") and text.rstrip().endswith("</svg>")


def test_spectrum_paley_clusters(tmp_path):
    rc = main(["spectrum", "--family", "paley", "--q", "13", "--out", str(tmp_path)])
    assert rc == 0
    summary = _read_json(tmp_path / "summary.json")
    assert summary["clusters"] == 3
    assert "semicircle" not in summary["ks"]


def test_spectrum_squared_family_uses_mp(tmp_path):
    rc = main(
        ["spectrum", "--family", "squared-pseudo", "--m", "5", "--out", str(tmp_path)]
    )
    assert rc == 0
    summary = _read_json(tmp_path / "summary.json")
    assert "mp_1" in summary["ks"]
    assert summary["moments"][0]["reference"] == 1.0


def test_spectrum_tridiag_divergent_flag(tmp_path):
    rc = main(
        [
            "spectrum",
            "--family",
            "tridiag",
            "--n",
            "300",
            "--samples",
            "2",
            "--variant",
            "iid-chisq",
            "--out",
            str(tmp_path),
        ]
    )
    assert rc == 0
    assert _read_json(tmp_path / "summary.json")["divergent_support"]


def test_spectrum_flag_validation(tmp_path):
    assert main(["spectrum", "--family", "pseudo", "--out", str(tmp_path)]) == 2
    assert (
        main(["spectrum", "--family", "pseudo", "--m", "4", "--poly", "x^4+x+1", "--out", str(tmp_path)])
        == 2
    )
    assert main(["spectrum", "--family", "wigner", "--out", str(tmp_path)]) == 2
    assert main(["spectrum", "--family", "paley", "--out", str(tmp_path)]) == 2
    assert (
        main(["spectrum", "--family", "pseudo", "--m", "4", "--shifts", "99", "--out", str(tmp_path)])
        == 2
    )


def test_spectrum_replay_is_byte_identical(tmp_path):
    first = tmp_path / "first"
    second = tmp_path / "second"
    args = [
        "spectrum",
        "--family",
        "wigner",
        "--n",
        "48",
        "--samples",
        "3",
        "--rng",
        "11",
    ]
    assert main(args + ["--out", str(first)]) == 0
    assert main(["from-manifest", str(first / "manifest.json"), "--out", str(second)]) == 0
    for name in ("manifest.json", "spectrum.csv", "histogram.csv", "summary.json"):
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_spectrum_sampled_shifts_deterministic(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    args = ["spectrum", "--family", "pseudo", "--m", "6", "--shifts", "10", "--rng", "3"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert (a / "spectrum.csv").read_bytes() == (b / "spectrum.csv").read_bytes()


def test_ensemble_sweep(tmp_path):
    rc = main(
        [
            "ensemble",
            "--family",
            "pseudo",
            "--m",
            "5..7",
            "--orders",
            "2,3,4",
            "--shifts",
            "all",
            "--out",
            str(tmp_path),
        ]
    )
    assert rc == 0
    header, rows = _read_csv(tmp_path / "moments.csv")
    assert header == ["m", "n", "r", "mean", "std", "reference", "delta"]
    assert len(rows) == 3 * 3
    by_key = {(int(r[0]), int(r[2])): r for r in rows}
    assert float(by_key[(5, 2)][3]) == pytest.approx(0.25, abs=1e-12)
    assert float(by_key[(6, 3)][3]) == 0.0  # signed pairing
    summary = _read_json(tmp_path / "summary.json")
    assert summary["sizes"] == [31, 63, 127]
    assert "4" in summary["std_slopes"]


def test_verify_codes_suite(tmp_path, capsys):
    rc = main(["verify", "--suite", "codes", "--m", "3..4", "--out", str(tmp_path)])
    assert rc == 0
    report = _read_json(tmp_path / "verify.json")
    assert report["passed"] and report["failed"] == 0
    assert report["suites"]["codes"]["checked"] >= 9
    assert "palindromic dimension = 1" in capsys.readouterr().out


def test_verify_axioms_suite(tmp_path):
    rc = main(
        ["verify", "--suite", "axioms", "--m", "2..5", "--seeds", "2", "--out", str(tmp_path)]
    )
    assert rc == 0
    report = _read_json(tmp_path / "verify.json")
    assert report["suites"]["axioms"]["checked"] == 2 * (1 + 2 + 2 + 6)


def test_verify_solvers_suite(tmp_path):
    rc = main(
        [
            "verify",
            "--suite",
            "solvers",
            "--n",
            "63",
            "--samples",
            "6",
            "--out",
            str(tmp_path),
        ]
    )
    assert rc == 0
    report = _read_json(tmp_path / "verify.json")
    assert report["suites"]["solvers"]["failed"] == 0


def test_verify_rejects_even_solver_size(tmp_path):
    assert main(["verify", "--suite", "solvers", "--n", "64", "--out", str(tmp_path)]) == 2


def test_threads_flag_does_not_change_output(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    args = ["spectrum", "--family", "pseudo", "--m", "6", "--solver", "cosine"]
    assert main(args + ["--threads", "1", "--out", str(a)]) == 0
    assert main(args + ["--threads", "4", "--out", str(b)]) == 0
    assert (a / "spectrum.csv").read_bytes() == (b / "spectrum.csv").read_bytes()


def test_out_dir_env_default(tmp_path, monkeypatch):
    monkeypatch.setenv("PRSM_OUT", str(tmp_path / "envout"))
    assert main(["seq", "--poly", "x^3+x+1"]) == 0
    assert (tmp_path / "envout" / "checks.json").exists()


def test_solver_override_matches_default(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    base = ["spectrum", "--family", "pseudo", "--m", "4", "--shifts", "all"]
    assert main(base + ["--out", str(a)]) == 0
    assert main(base + ["--solver", "dense", "--out", str(b)]) == 0
    _, rows_a = _read_csv(a / "spectrum.csv")
    _, rows_b = _read_csv(b / "spectrum.csv")
    worst = max(
        abs(float(x[0]) - float(y[0])) for x, y in zip(rows_a, rows_b)
    )
    assert worst < 1e-10
