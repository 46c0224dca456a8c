import io
import json
import xml.etree.ElementTree as ET

import pytest

from conftest import ANNOTATED, fixture_path, load
from tieml import parse
from tieml.cli import main
from tieml.convert import from_json

SAMPLES = [str(fixture_path(n)) for n in ANNOTATED[:6]]
CYCLIC = """<TimeML><TEXT><EVENT eid="e1">a</EVENT><EVENT eid="e2">b</EVENT></TEXT>
<TLINK lid="l1" relType="BEFORE" eventID="e1" relatedToEvent="e2"/>
<TLINK lid="l2" relType="BEFORE" eventID="e2" relatedToEvent="e1"/></TimeML>"""


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_validate_samples_clean(capsys):
    status, out, err = run(capsys, "validate", *SAMPLES)
    assert status == 0
    assert "Error" not in out
    assert "6 file(s): 0 error(s)" in err


def test_validate_incoherent(capsys):
    path = str(fixture_path("incoherent_future"))
    status, out, _ = run(capsys, "validate", path)
    assert status == 1
    assert f"{path}:1:1:1 TENSE_TRIPLE_MISMATCH Error" in out


def test_validate_missing_file(capsys, tmp_path):
    status, out, _ = run(capsys, "validate", str(tmp_path / "nope.xml"))
    assert status == 2
    assert "cannot read" in out


def test_validate_missing_beats_content_error(capsys, tmp_path):
    status, _, _ = run(capsys, "validate", str(fixture_path("incoherent_future")),
                       str(tmp_path / "nope.xml"))
    assert status == 2


def test_validate_parse_failure_has_location(capsys, tmp_path):
    bad = tmp_path / "bad.xml"
    bad.write_text("<s>\n  <c eventid='x'>a</c>\n</s>")
    status, out, _ = run(capsys, "validate", str(bad))
    assert status == 1
    assert f"{bad}:2:" in out and "Bad attribute value" in out


def test_validate_json(capsys):
    status, out, _ = run(capsys, "validate", "--format", "json",
                         str(fixture_path("incoherent_future")), str(fixture_path("inverted_slots")))
    assert status == 1
    reports = json.loads(out)
    assert [r["status"] for r in reports] == [1, 0]
    assert reports[0]["diagnostics"][0]["code"] == "TENSE_TRIPLE_MISMATCH"


def test_validate_jobs_keeps_order(capsys):
    paths = SAMPLES * 3
    _, serial, _ = run(capsys, "validate", "--format", "json", *paths)
    _, parallel, _ = run(capsys, "validate", "--format", "json", "--jobs", "4", *paths)
    assert serial == parallel


def test_lenient_flag_and_env(capsys, tmp_path, monkeypatch):
    f = tmp_path / "extra.xml"
    f.write_text('<s><c eventid="1" colour="red">x</c></s>')
    assert run(capsys, "validate", str(f))[0] == 1
    status, out, _ = run(capsys, "validate", "--lenient", str(f))
    assert status == 0 and "warning: Unknown attribute" in out
    monkeypatch.setenv("TIEML_LENIENT", "1")
    assert run(capsys, "validate", str(f))[0] == 0


def test_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(fixture_path("simple_past").read_text(encoding="utf-8")))
    assert run(capsys, "validate", "-")[0] == 0


def test_timeline_overlap_tiers(capsys):
    status, out, _ = run(capsys, "timeline", str(fixture_path("overlap")))
    assert status == 0
    assert "E: 1 2\nT: 1 1" in out
    assert "inversion" not in out


def test_timeline_inversion_warning(capsys):
    status, out, _ = run(capsys, "timeline", str(fixture_path("inverted_slots")))
    assert status == 0
    assert "E: 1 2\nT: 2 1" in out
    assert "warning: 1 inversion(s)" in out


def test_timeline_json(capsys):
    _, out, _ = run(capsys, "timeline", "--format", "json", str(fixture_path("inverted_slots")))
    (doc,) = json.loads(out)["documents"]
    assert doc["slots"] == [{"slot": 1, "events": [2]}, {"slot": 2, "events": [1]}]
    assert doc["inversions"] == 1 and doc["monotone"] is False


def test_timeline_without_slots(capsys):
    status, out, _ = run(capsys, "timeline", str(fixture_path("simple_past")))
    assert status == 0
    assert "no timeline" in out


def test_timeline_refuses_invalid(capsys):
    status, _, err = run(capsys, "timeline", str(fixture_path("incoherent_future")))
    assert status == 1
    assert "TENSE_TRIPLE_MISMATCH" in err


def test_convert_to_timeml(capsys, tmp_path):
    out = tmp_path / "fig6.tml"
    status, _, _ = run(capsys, "convert", str(fixture_path("inverted_slots")), "--to", "timeml", "--out", str(out))
    assert status == 0
    links = ET.parse(out).getroot().findall("TLINK")
    assert [(l.get("relType"), l.get("eventID"), l.get("relatedToEvent")) for l in links] == [
        ("BEFORE", "e2", "e1")]
    assert "losses" in json.loads((tmp_path / "fig6.tml.loss.json").read_text())


def test_convert_json_round_trip(capsys, tmp_path):
    js = tmp_path / "fig3.json"
    back = tmp_path / "fig3.xml"
    assert run(capsys, "convert", str(fixture_path("simple_past")), "--to", "json", "-o", str(js))[0] == 0
    assert from_json(js.read_text()) == load("simple_past")
    assert run(capsys, "convert", str(js), "--from", "json", "--to", "tieml", "-o", str(back))[0] == 0
    assert parse(back.read_text(encoding="utf-8")) == load("simple_past")


def test_convert_conll_to_stdout(capsys):
    status, out, _ = run(capsys, "convert", str(fixture_path("event_ids")), "--to", "conll")
    assert status == 0
    rows = [r for r in out.split("\n") if r]
    assert out.endswith("\n\n") and out.count("\n\n") == 2
    assert len(rows) == 3 and all(r.count("\t") == 12 for r in rows)


def test_convert_cyclic_timeml(capsys, tmp_path):
    src = tmp_path / "cyc.tml"
    src.write_text(CYCLIC)
    status, _, err = run(capsys, "convert", str(src), "--from", "timeml", "--to", "tieml")
    assert status == 1
    assert "e1 -> e2 -> e1" in err or "e2 -> e1 -> e2" in err


def test_convert_timeml_import_sidecar(capsys, tmp_path):
    src = tmp_path / "in.tml"
    src.write_text(CYCLIC.replace('relType="BEFORE" eventID="e2"', 'relType="INCLUDES" eventID="e2"')
                   .replace('relType="BEFORE"', 'relType="SIMULTANEOUS"'))
    out, report = tmp_path / "out.xml", tmp_path / "loss.json"
    status, _, _ = run(capsys, "convert", str(src), "--from", "timeml", "--to", "tieml",
                       "-o", str(out), "--loss-report", str(report))
    assert status == 0
    assert [e["kind"] for e in json.loads(report.read_text())["losses"]] == ["inclusion-collapsed"]


def test_convert_errors(capsys, tmp_path):
    assert run(capsys, "convert", str(tmp_path / "missing"), "--to", "json")[0] == 2
    assert run(capsys, "convert", str(fixture_path("incoherent_future")), "--to", "timeml")[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text('{"documents": [{"id": "d", "sentences": []}]}')
    status, _, err = run(capsys, "convert", str(bad), "--from", "json", "--to", "tieml")
    assert status == 1 and "sentences" in err


def test_convert_unsupported_pair(capsys):
    with pytest.raises(SystemExit) as info:
        main(["convert", str(fixture_path("inverted_slots")), "--from", "timeml", "--to", "timeml"])
    assert info.value.code == 2


def _count_elements(paths):
    clauses = events = 0
    for p in paths:
        # samples are bare <s> sequences, so wrap them in one root
        root = ET.fromstring(f"<r>{open(p, encoding='utf-8').read()}</r>")
        for c in root.iter("c"):
            clauses += 1
            events += c.get("eventid") is not None
    return clauses, events


def test_stats_samples(capsys):
    status, out, _ = run(capsys, "stats", "--format", "json", *SAMPLES)
    assert status == 0
    stats = json.loads(out)
    assert (stats["clauses"], stats["events"]) == _count_elements(SAMPLES) == (9, 5)
    assert sum(stats["tenses"].values()) == stats["tensed_clauses"]
    assert sum(stats["categories"].values()) == stats["triple_clauses"]


def test_stats_empty(capsys, tmp_path):
    f = tmp_path / "empty.xml"
    f.write_text("<tieml/>")
    _, out, _ = run(capsys, "stats", "--format", "json", str(f))
    stats = json.loads(out)
    assert all(v == 0 for k, v in stats.items() if not isinstance(v, dict))
    assert stats["tenses"] == {} and stats["categories"] == {}


def test_stats_inverted_fraction(capsys):
    _, out, _ = run(capsys, "stats", "--format", "json", str(fixture_path("inverted_slots")))
    assert json.loads(out)["inverted_fraction"] == 1.0


def test_stats_table_and_parse_failure(capsys, tmp_path):
    status, out, _ = run(capsys, "stats", *SAMPLES)
    assert status == 0 and "clauses" in out
    bad = tmp_path / "bad.xml"
    bad.write_text("<s><c>")
    assert run(capsys, "stats", str(bad))[0] == 1
