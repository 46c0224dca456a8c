import itertools
import json

import pytest

from conftest import ANNOTATED, load
from tieml import (
    Clause, Corpus, Document, Sentence, Severity,
    check_event_ids, check_tense_consistency, check_timeslots, parse, validate,
)
from tieml.validator import CODES, diagnostics_to_json


def doc(*clauses, sentences=None):
    if sentences is None:
        sentences = [clauses]
    return Corpus([Document("d", [Sentence(list(s)) for s in sentences])])


def codes(diagnostics):
    return [d.code for d in diagnostics]


@pytest.mark.parametrize("name", [n for n in ANNOTATED if n not in ("hebrew", "arabic")])
def test_samples_are_clean(name):
    assert validate(load(name)) == []


@pytest.mark.parametrize("name", ["hebrew", "arabic"])
def test_semitic_samples_at_most_info(name):
    assert all(d.severity is Severity.INFO for d in validate(load(name)))


def test_incoherent_future():
    found = validate(load("incoherent_future"))
    assert codes(found) == ["TENSE_TRIPLE_MISMATCH"]
    assert found[0].severity is Severity.ERROR


def test_duplicate_event_id():
    found = validate(doc(Clause("a", event_id=1), Clause("b", event_id=1)))
    assert codes(found) == ["DUP_EVENT_ID"]
    assert found[0].location == (0, 0, 1)


def test_event_ids_scope_is_document():
    corpus = Corpus([
        Document("a", [Sentence([Clause("x", event_id=1)])]),
        Document("b", [Sentence([Clause("y", event_id=1)])]),
    ])
    assert validate(corpus) == []


def test_event_ids_continue_across_sentences():
    corpus = doc(sentences=[[Clause("a", event_id=1)], [Clause("b", event_id=1)]])
    assert codes(check_event_ids(corpus)) == ["DUP_EVENT_ID"]


@pytest.mark.parametrize("ids, expected", [
    ((1, 2, 3), []),
    ((1, 3), ["EVENT_GAP"]),
    ((2, 1), ["EVENT_ORDER"]),
    ((3, 4), ["EVENT_GAP"]),
    ((1, 4, 2), ["EVENT_ORDER", "EVENT_GAP"]),
])
def test_event_id_checks(ids, expected):
    found = check_event_ids(doc(*[Clause(str(i), event_id=i) for i in ids]))
    assert sorted(codes(found)) == sorted(expected)


def test_event_gap_severity():
    (d,) = check_event_ids(doc(Clause("a", event_id=1), Clause("b", event_id=3)))
    assert d.severity is Severity.INFO
    assert d.location == (0, 0, 1)


@pytest.mark.parametrize("clauses, expected", [
    ([Clause("a", event_id=1, time_slot=2), Clause("b", event_id=2, time_slot=1)], []),
    ([Clause("a", event_id=1, time_slot=1), Clause("b", event_id=2, time_slot=3)], ["TIMESLOT_GAP"]),
    ([Clause("a", event_id=1, time_slot=1), Clause("b", event_id=2)], ["TIMESLOT_PARTIAL"]),
    ([Clause("a", time_slot=1)], ["SLOT_NO_EVENT"]),
    ([Clause("a", event_id=1), Clause("b", event_id=2)], []),
])
def test_timeslot_checks(clauses, expected):
    assert codes(check_timeslots(doc(*clauses))) == expected


def test_inverted_slots_clean():
    assert check_timeslots(load("inverted_slots")) == []


def test_timeslot_severities():
    assert CODES["SLOT_NO_EVENT"] is Severity.ERROR
    assert CODES["TIMESLOT_GAP"] is Severity.INFO
    assert CODES["TIMESLOT_PARTIAL"] is Severity.WARNING


def test_partial_triple():
    found = validate(doc(Clause("a", e=-1, r=-1)))
    assert codes(found) == ["ERS_PARTIAL"]
    assert found[0].severity is Severity.ERROR


@pytest.mark.parametrize("clause, expected", [
    (Clause("x", tense="PAST", perfect=True, e=-2, r=-1, s=0), []),
    (Clause("x", tense="FUT", e=1, r=-1, s=0), ["TENSE_TRIPLE_MISMATCH"]),
    (Clause("x", tense="sp", e=1, r=1, s=2), []),
    (Clause("x", tense="PAST"), []),
    (Clause("x", e=1, r=-1, s=0), []),
    (Clause("x", tense="past", e=-1, r=-1, s=0), []),
    (Clause("x", tense="PAST", perfect=True, e=-1, r=-1, s=0), ["PERFECT_MISMATCH"]),
    (Clause("x", tense="PAST", perfect=False, e=-2, r=-1, s=0), ["PERFECT_MISMATCH"]),
    (Clause("x", tense="PRES", perfect=True, e=1, r=1, s=0),
     ["TENSE_TRIPLE_MISMATCH", "PERFECT_MISMATCH"]),
])
def test_check_tense_consistency(clause, expected):
    assert codes(check_tense_consistency(clause)) == expected


def test_perfect_mismatch_is_warning():
    (d,) = check_tense_consistency(Clause("x", tense="PAST", perfect=True, e=-1, r=-1, s=0))
    assert d.severity is Severity.WARNING


def test_tense_table_brute_force():
    """Mismatch flagged iff the label's R/S order disagrees with the triple's."""
    wanted = {"PAST": lambda r, s: r < s, "PRES": lambda r, s: r == s, "FUT": lambda r, s: r > s}
    for label, (e, r, s) in itertools.product(wanted, itertools.product(range(-2, 3), repeat=3)):
        found = check_tense_consistency(Clause("x", tense=label, e=e, r=r, s=s))
        flagged = "TENSE_TRIPLE_MISMATCH" in codes(found)
        assert flagged == (not wanted[label](r, s)), (label, e, r, s)
        assert all(d.code == "TENSE_TRIPLE_MISMATCH" for d in found)


def test_validate_ordering_and_determinism():
    corpus = doc(
        Clause("a", event_id=2, time_slot=1),
        Clause("b", event_id=2, tense="FUT", e=1, r=-1, s=0),
        Clause("c", time_slot=4, e=0),
    )
    first = validate(corpus)
    assert first == validate(corpus)
    assert [d.location for d in first] == sorted(d.location for d in first)


def test_output_formats():
    (d,) = validate(load("incoherent_future"))
    line = d.format_line("f.xml")
    assert line.startswith("f.xml:1:1:1 TENSE_TRIPLE_MISMATCH Error ")
    (obj,) = json.loads(diagnostics_to_json([d], "f.xml"))
    assert obj["code"] == "TENSE_TRIPLE_MISMATCH" and obj["file"] == "f.xml"
    assert (obj["document"], obj["sentence"], obj["clause"]) == (1, 1, 1)


def test_unknown_code_rejected():
    from tieml.validator import Diagnostic
    with pytest.raises(ValueError):
        Diagnostic("NOPE", Severity.INFO, (0, 0, 0), "")
