import json
from pathlib import Path

import numpy as np
import pytest

from hawkdove.cli import build_parser, main

from .conftest import FIXTURES

TAXONOMY = Path("src/hawkdove/data/reference_taxonomy.json").resolve()

SUBCOMMANDS = [
    ["classify"],
    ["report"],
    ["diff"],
    ["series"],
    ["retrieve"],
    ["compile-grammar"],
    ["econ"],
    ["econ", "logit"],
    ["econ", "granger"],
]


@pytest.mark.parametrize("cmd", SUBCOMMANDS, ids=lambda c: "-".join(c))
def test_every_subcommand_has_help(cmd, capsys):
    with pytest.raises(SystemExit) as err:
        main(cmd + ["--help"])
    assert err.value.code == 0
    assert "usage" in capsys.readouterr().out


def test_missing_taxonomy_exits_one(tmp_path, capsys):
    with pytest.raises(SystemExit) as err:
        main(
            [
                "classify",
                "--taxonomy",
                str(tmp_path / "missing.json"),
                "--corpus",
                str(FIXTURES / "corpus20.jsonl"),
                "--out",
                str(tmp_path / "out"),
            ]
        )
    assert err.value.code != 0
    assert "missing.json" in str(err.value)


def _classify(tmp_path, out_name="out", jobs=None):
    out = tmp_path / out_name
    argv = [
        "classify",
        "--taxonomy",
        str(TAXONOMY),
        "--corpus",
        str(FIXTURES / "corpus20.jsonl"),
        "--out",
        str(out),
        "--backend",
        "mock",
        "--mock-script",
        str(FIXTURES / "mock_script.json"),
    ]
    if jobs:
        argv += ["--jobs", str(jobs)]
    assert main(argv) == 0
    return out


def test_classify_writes_results_and_manifest(tmp_path):
    out = _classify(tmp_path)
    results = sorted(p.name for p in out.glob("*.result.json"))
    assert results == [
        "mins-2024-08.result.json",
        "stmt-2024-08.result.json",
        "stmt-2024-09.result.json",
    ]
    manifest = json.loads((out / "manifest.json").read_text(encoding="utf-8"))
    assert manifest["taxonomy_version"] == "2025.1"
    assert manifest["backend_id"] == "mock"
    doc_ids = [d["doc_id"] for d in manifest["documents"]]
    assert doc_ids == ["stmt-2024-08", "mins-2024-08", "stmt-2024-09"]
    assert len(set(doc_ids)) == len(doc_ids)
    assert all(d["status"] == "ok" for d in manifest["documents"])


def test_classify_rerun_is_byte_identical(tmp_path):
    out1 = _classify(tmp_path, "out1")
    out2 = _classify(tmp_path, "out2", jobs=8)
    for name in ("stmt-2024-08", "mins-2024-08", "stmt-2024-09"):
        a = (out1 / f"{name}.result.json").read_bytes()
        b = (out2 / f"{name}.result.json").read_bytes()
        assert a == b


def test_report_command(tmp_path):
    out = _classify(tmp_path)
    code = main(
        [
            "report",
            "--result",
            str(out / "stmt-2024-08.result.json"),
            "--out",
            str(tmp_path / "reports"),
            "--script",
            "none",
        ]
    )
    assert code == 0
    html = (tmp_path / "reports" / "stmt-2024-08.report.html").read_text(encoding="utf-8")
    assert "<!DOCTYPE html>" in html
    assert "http://" not in html.replace("http://www.w3.org", "")


def test_diff_identical_files_has_empty_new_points(tmp_path, capsys):
    out = _classify(tmp_path)
    result_file = str(out / "stmt-2024-09.result.json")
    code = main(["diff", "--new", result_file, "--old", result_file, "--stance", "hawkish"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["new_points"] == []
    assert all(m["sim"] == pytest.approx(1.0) for m in payload["similar"])


def test_series_window_fixture(tmp_path, capsys):
    csv_in = tmp_path / "series.csv"
    csv_in.write_text(
        "date,doc_id,doc_type,score\n"
        "2024-01-01,a,statement,1.0\n"
        "2024-02-01,b,statement,2.0\n"
        "2024-03-01,c,statement,3.0\n"
        "2024-04-01,d,statement,4.0\n",
        encoding="utf-8",
    )
    assert main(["series", str(csv_in), "--window", "3"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    scores = [float(line.split(",")[3]) for line in lines[1:]]
    assert scores == [1.0, 1.5, 2.0, 3.0]


def test_series_from_results_dir(tmp_path, capsys):
    out = _classify(tmp_path)
    assert main(["series", str(out), "--scheme", "five"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "date,doc_id,doc_type,score"
    assert len(lines) == 4  # three documents
    assert lines[1].startswith("2024-08-06,stmt-2024-08,statement,")


def test_retrieve_outputs_ranking(capsys):
    code = main(
        ["retrieve", "--taxonomy", str(TAXONOMY), "Underlying inflation remains above the target band."]
    )
    assert code == 0
    ranking = json.loads(capsys.readouterr().out)
    assert ranking[0]["rank"] == 1
    mnemonics = [e["mnemonic"] for e in ranking]
    assert "CORE-INFLATION" in mnemonics


def test_compile_grammar_subcommand(capsys):
    code = main(["compile-grammar", "--taxonomy", str(TAXONOMY), "--topic", "CORE-INFLATION"])
    assert code == 0
    text = capsys.readouterr().out
    assert text.startswith('root ::= "Q: Is inflation described as a risk')


def test_compile_grammar_unknown_topic():
    with pytest.raises(SystemExit) as err:
        main(["compile-grammar", "--taxonomy", str(TAXONOMY), "--topic", "NOPE-NOPE"])
    assert "NOPE-NOPE" in str(err.value)


def _write_series_csv(path, dates_scores, doc_type="minutes"):
    lines = ["date,doc_id,doc_type,score"]
    for i, (d, s) in enumerate(dates_scores):
        lines.append(f"{d},doc{i},{doc_type},{s}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def test_econ_granger_subcommand(tmp_path, capsys):
    rng = np.random.default_rng(1)
    n = 200
    x = rng.normal(size=n)
    y = np.concatenate(([0.0], 0.9 * x[:-1])) + 0.1 * rng.normal(size=n)
    dates = [f"2020-{m:02d}-01" for m in range(1, 13)] * 20
    dates = sorted(dates)[:n]
    xf, yf = tmp_path / "x.csv", tmp_path / "y.csv"
    _write_series_csv(xf, list(zip(dates, x)))
    _write_series_csv(yf, list(zip(dates, y)))
    assert main(["econ", "granger", "--x", str(xf), "--y", str(yf), "--lags", "2"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["p_value"] < 0.01


def test_econ_logit_subcommand(tmp_path, capsys):
    rng = np.random.default_rng(2)
    dates = []
    scores = []
    for i in range(40):
        month = i % 12 + 1
        year = 2018 + i // 12
        dates.append(f"{year}-{month:02d}-10")
        scores.append(float(rng.normal()))
    series_file = tmp_path / "mins.csv"
    _write_series_csv(series_file, list(zip(dates, scores)))
    outcome_lines = ["date,outcome"]
    for i in range(2, 40):
        month = i % 12 + 1
        year = 2018 + i // 12
        # outcome loosely follows the prior score's sign, with noise so the
        # categories are not perfectly separable
        signal = scores[i - 1] + rng.normal(scale=1.5)
        outcome = 1 if signal > 0.3 else (-1 if signal < -0.3 else 0)
        outcome_lines.append(f"{year}-{month:02d}-15,{outcome}")
    outcomes_file = tmp_path / "outcomes.csv"
    outcomes_file.write_text("\n".join(outcome_lines) + "\n", encoding="utf-8")
    code = main(
        ["econ", "logit", "--outcomes", str(outcomes_file), "--series", f"mins={series_file}", "--json"]
    )
    assert code == 0
    fit = json.loads(capsys.readouterr().out)
    assert fit["model"] == "ordered_logit"
    assert "hds_mins_lag1" in fit["coefficients"]
    assert fit["levels"] == [-1, 0, 1]


def test_seed_precedence(tmp_path):
    from hawkdove.cli import _engine_config

    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"backend": "mock", "seed": 42}), encoding="utf-8")
    parser = build_parser()
    base = ["classify", "--taxonomy", "t", "--corpus", "c", "--out", "o", "--config", str(cfg)]
    assert _engine_config(parser.parse_args(base)).seed == 42
    assert _engine_config(parser.parse_args(["--seed", "7"] + base)).seed == 7


def test_parser_rejects_unknown_backend():
    parser = build_parser()
    with pytest.raises(SystemExit):
        parser.parse_args(["classify", "--taxonomy", "t", "--corpus", "c", "--out", "o", "--backend", "quantum"])
