import json
from fractions import Fraction

import pytest

from vrsdr_score.report import (
    ScoreReport,
    compute_avg,
    emit_report,
    format_percent,
    load_report_json,
    render_csv,
    render_json,
    render_table,
)

TABLE_ROW = {
    ("sr", "wer", "easy"): 0.019,
    ("sv", "error", "easy"): 0.132,
    ("sl", "miss_rate", "easy"): 0.008,
    ("si", "error", "easy"): 0.010,
    ("si", "error", "hard"): 0.211,
    ("vrsdr", "sa_wer", "hard"): 0.471,
    ("vrsdr", "ier", "hard"): 0.285,
}


def row_reports():
    return [ScoreReport(t, m, v, s, 1) for (t, m, s), v in TABLE_ROW.items()]


@pytest.mark.parametrize(
    "value,text",
    [(0.471, "47.1"), (Fraction(1, 3), "33.33"), (0, "0.0"), (1, "100.0"), (0.0139, "1.39"), (0.5685, "56.85")],
)
def test_format_percent(value, text):
    assert format_percent(value) == text


def test_table_has_metric_rows_and_avg_line():
    text = render_table(row_reports())
    assert "47.1" in text and "28.5" in text
    assert "AVG" in text
    assert compute_avg(row_reports()) == pytest.approx(16.23, abs=0.01)


def test_avg_omitted_when_a_column_is_missing():
    reports = row_reports()[:-1]
    assert compute_avg(reports) is None
    assert "AVG" not in render_table(reports)


def test_json_is_deterministic_and_round_trips():
    reports = [
        ScoreReport("vrsdr", "sa_wer", Fraction(8, 17), "hard", 2, 8, 17, [{"sample_id": "b"}, {"sample_id": "a"}]),
        ScoreReport("sr", "wer", Fraction(1, 3), "easy", 1, 1, 3),
    ]
    a = render_json(reports, {"collar_ms": 0})
    b = render_json(list(reversed(reports)), {"collar_ms": 0})
    assert a == b
    loaded = load_report_json(a)
    assert loaded[0].value == Fraction(1, 3) and loaded[1].value == Fraction(8, 17)
    assert render_table(loaded) == render_table(reports)
    assert render_json(loaded, {"collar_ms": 0}) == a


def test_json_with_empty_details():
    doc = json.loads(render_json([ScoreReport("sv", "error", 0, "easy", 0, 0, 0)]))
    assert doc["reports"][0]["details"] == []
    assert doc["avg"] is None
    assert doc["schema"] == "vrsdr-score-report" and doc["version"] == 1


def test_load_rejects_other_documents():
    with pytest.raises(ValueError):
        load_report_json('{"schema": "x", "version": 1, "reports": []}')


def test_csv_one_row_per_task_and_subset():
    reports = [
        ScoreReport("vrsdr", "sa_wer", Fraction(1, 2), "hard", 3),
        ScoreReport("vrsdr", "ier", Fraction(1, 4), "hard", 3),
        ScoreReport("sr", "wer", None, "easy", 0),
    ]
    lines = render_csv(reports).splitlines()
    assert lines[0] == "task,subset,count,wer,sa_wer,ier"
    assert lines[1] == "sr,easy,0,,,"
    assert lines[2] == "vrsdr,hard,3,,0.5,0.25"


def test_emit_report(tmp_path, capsys):
    out = tmp_path / "r.json"
    text = emit_report(row_reports(), "json", out)
    assert out.read_text() == text
    emit_report(row_reports(), "table", "-")
    assert "AVG" in capsys.readouterr().out
    with pytest.raises(ValueError):
        emit_report(row_reports(), "xml")
    with pytest.raises(ValueError):
        emit_report([], "table")
