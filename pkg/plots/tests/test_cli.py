import json

import pytest

from sepplots.cli import main

TRIAL_HEADER = ("profile,algorithm,n,k,m,theta,trial,seed,stage,"
                "sin_error,recall,refine_T,operator,wall_ms,status")


def _small_csv(tmp_path):
    lines = [TRIAL_HEADER]
    for m in (50, 100):
        for trial in (0, 1, 2):
            err = 0.5 - 0.001 * m - 0.01 * trial
            lines.append(f"flat,sep,30,3,{m},3,{trial},1,pre,{err:.9g},1,0,,0,ok")
    path = tmp_path / "rows.csv"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(path)


def test_renders_and_dumps(tmp_path, capsys):
    csv = _small_csv(tmp_path)
    out = tmp_path / "fig.png"
    dump = tmp_path / "data.json"
    code = main(["--csv", csv, "--figure", "error-vs-m",
                 "--out", str(out), "--dump-data", str(dump)])
    assert code == 0
    assert (tmp_path / "fig_flat_pre.png").exists()
    payload = json.loads(dump.read_text())
    assert payload[0]["x"] == [50.0, 100.0]
    captured = capsys.readouterr()
    assert "wrote" in captured.err
    assert captured.out == ""


def test_recall_figure(tmp_path):
    csv = _small_csv(tmp_path)
    out = tmp_path / "recall.png"
    assert main(["--csv", csv, "--figure", "recall-vs-m", "--out", str(out)]) == 0
    assert (tmp_path / "recall_flat_pre.png").exists()


def test_missing_file_exits_one(tmp_path, capsys):
    code = main(["--csv", str(tmp_path / "none.csv"), "--figure", "error-vs-m",
                 "--out", str(tmp_path / "x.png")])
    assert code == 1
    assert "error" in capsys.readouterr().err


def test_unknown_flag_exits_one(tmp_path, capsys):
    assert main(["--csv", "a.csv", "--figure", "error-vs-m",
                 "--out", "x.png", "--wat"]) == 1
    assert "error" in capsys.readouterr().err


def test_header_only_reports_no_data(tmp_path, capsys):
    path = tmp_path / "empty.csv"
    path.write_text(TRIAL_HEADER + "\n", encoding="utf-8")
    code = main(["--csv", str(path), "--figure", "error-vs-m",
                 "--out", str(tmp_path / "x.png")])
    assert code == 1
    assert "no data rows" in capsys.readouterr().err


def test_logy_flag_accepted(tmp_path):
    csv = _small_csv(tmp_path)
    assert main(["--csv", csv, "--figure", "error-vs-m",
                 "--out", str(tmp_path / "log.png"), "--logy"]) == 0
