"""Structural and semantic diagnostics over a parsed corpus.

Diagnostic codes (closed set):

==========================  ========  ==============================================
code                        severity  meaning
==========================  ========  ==============================================
DUP_EVENT_ID                Error     an event id repeats inside one document
EVENT_ORDER                 Warning   event ids do not increase in presentation order
EVENT_GAP                   Info      integers missing from 1..max event id
SLOT_NO_EVENT               Error     a clause has a timeslot but no event id
TIMESLOT_GAP                Info      integers missing from 1..max timeslot
TIMESLOT_PARTIAL            Warning   an event clause lacks a timeslot others have
ERS_PARTIAL                 Error     only some of E, R, S are annotated
TENSE_TRIPLE_MISMATCH       Error     tense label contradicts the E/R/S reference order
PERFECT_MISMATCH            Warning   perfect flag disagrees with an anterior triple
==========================  ========  ==============================================

Locations are 0-based ``(document, sentence, clause)`` indices.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Iterable

from .model import Clause, Corpus, Document
from .reichenbach import EventRelation, ReferenceRelation, classify_tense


class Severity(enum.Enum):
    ERROR = "Error"
    WARNING = "Warning"
    INFO = "Info"


CODES = {
    "DUP_EVENT_ID": Severity.ERROR,
    "EVENT_ORDER": Severity.WARNING,
    "EVENT_GAP": Severity.INFO,
    "SLOT_NO_EVENT": Severity.ERROR,
    "TIMESLOT_GAP": Severity.INFO,
    "TIMESLOT_PARTIAL": Severity.WARNING,
    "ERS_PARTIAL": Severity.ERROR,
    "TENSE_TRIPLE_MISMATCH": Severity.ERROR,
    "PERFECT_MISMATCH": Severity.WARNING,
}

TENSE_REFERENCE = {
    "PAST": ReferenceRelation.PAST,
    "PRES": ReferenceRelation.PRESENT,
    "FUT": ReferenceRelation.FUTURE,
}


@dataclass(frozen=True)
class Diagnostic:
    code: str
    severity: Severity
    location: tuple[int, int, int]
    message: str

    def __post_init__(self):
        if self.code not in CODES:
            raise ValueError(f"unknown diagnostic code {self.code!r}")

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def format_line(self, filename: str = "-") -> str:
        d, s, c = (i + 1 for i in self.location)
        return f"{filename}:{d}:{s}:{c} {self.code} {self.severity.value} {self.message}"

    def to_dict(self, filename: str | None = None) -> dict:
        d, s, c = (i + 1 for i in self.location)
        out = {"code": self.code, "severity": self.severity.value,
               "document": d, "sentence": s, "clause": c, "message": self.message}
        if filename is not None:
            out = {"file": filename, **out}
        return out


def _diag(code: str, location, message: str) -> Diagnostic:
    return Diagnostic(code, CODES[code], tuple(location), message)


def check_tense_consistency(clause: Clause, location=(0, 0, 0)) -> list[Diagnostic]:
    """Compare a closed-set tense label (and perfect flag) with the E/R/S triple.

    Clauses without a closed label or without a complete triple are exempt.
    """
    if clause.tense is None or clause.tense.closed is None:
        return []
    triple = clause.triple
    if triple is None:
        return []
    label = clause.tense.closed
    category = classify_tense(triple)
    found = []
    expected = TENSE_REFERENCE[label]
    if category.reference_relation is not expected:
        found.append(_diag(
            "TENSE_TRIPLE_MISMATCH", location,
            f"tense={label} requires R {_ORDER_WORD[expected]} S, but "
            f"E={triple.e} R={triple.r} S={triple.s} is {category}",
        ))
    anterior = category.event_relation is EventRelation.ANTERIOR
    if clause.perfect is True and not anterior:
        found.append(_diag(
            "PERFECT_MISMATCH", location,
            f"perfect=TRUE but E={triple.e} does not precede R={triple.r}",
        ))
    elif clause.perfect is False and anterior:
        found.append(_diag(
            "PERFECT_MISMATCH", location,
            f"perfect=FALSE but E={triple.e} precedes R={triple.r}",
        ))
    return found


_ORDER_WORD = {
    ReferenceRelation.PAST: "before",
    ReferenceRelation.PRESENT: "equal to",
    ReferenceRelation.FUTURE: "after",
}


def _missing_runs(values: Iterable[int]) -> list[tuple[int, int]]:
    """Maximal runs (lo, hi) absent from 1..max; hi + 1 is always present."""
    present = sorted(set(values))
    runs = []
    expected = 1
    for v in present:
        if v > expected:
            runs.append((expected, v - 1))
        expected = v + 1
    return runs


def _gap_text(lo: int, hi: int) -> str:
    return str(lo) if lo == hi else f"{lo}..{hi}"


def _check_document_events(di: int, document: Document) -> list[Diagnostic]:
    found = []
    seen: dict[int, tuple] = {}
    highest = 0
    for si, ci, clause in document.located_clauses():
        eid = clause.event_id
        if eid is None:
            continue
        loc = (di, si, ci)
        if eid in seen:
            d0, s0, c0 = (i + 1 for i in seen[eid])
            found.append(_diag("DUP_EVENT_ID", loc,
                               f"eventid={eid} already used at {d0}:{s0}:{c0}"))
            continue
        seen[eid] = loc
        if eid < highest:
            found.append(_diag("EVENT_ORDER", loc,
                               f"eventid={eid} follows eventid={highest} in presentation order"))
        highest = max(highest, eid)
    for lo, hi in _missing_runs(seen):
        after = hi + 1
        found.append(_diag("EVENT_GAP", seen[after],
                           f"eventid {_gap_text(lo, hi)} missing before eventid={after}"))
    return found


def check_event_ids(c: Corpus) -> list[Diagnostic]:
    found = []
    for di, document in enumerate(c.documents):
        found.extend(_check_document_events(di, document))
    return _ordered(found)


def _check_document_slots(di: int, document: Document) -> list[Diagnostic]:
    found = []
    slot_at: dict[int, tuple] = {}
    event_clauses = []
    for si, ci, clause in document.located_clauses():
        loc = (di, si, ci)
        if clause.time_slot is not None:
            slot_at.setdefault(clause.time_slot, loc)
            if clause.event_id is None:
                found.append(_diag("SLOT_NO_EVENT", loc,
                                   f"timeslot={clause.time_slot} on a clause without eventid"))
        if clause.event_id is not None:
            event_clauses.append((loc, clause))
    for lo, hi in _missing_runs(slot_at):
        after = hi + 1
        found.append(_diag("TIMESLOT_GAP", slot_at[after],
                           f"timeslot {_gap_text(lo, hi)} unused below timeslot={after}"))
    slotted = [loc for loc, clause in event_clauses if clause.time_slot is not None]
    if slotted and len(slotted) < len(event_clauses):
        for loc, clause in event_clauses:
            if clause.time_slot is None:
                found.append(_diag("TIMESLOT_PARTIAL", loc,
                                   f"eventid={clause.event_id} has no timeslot while "
                                   f"{len(slotted)} other event(s) do"))
    return found


def check_timeslots(c: Corpus) -> list[Diagnostic]:
    found = []
    for di, document in enumerate(c.documents):
        found.extend(_check_document_slots(di, document))
    return _ordered(found)


def _code_rank(code: str) -> int:
    return list(CODES).index(code)


def _ordered(found: list[Diagnostic]) -> list[Diagnostic]:
    return sorted(found, key=lambda d: (d.location, _code_rank(d.code)))


def validate_document(di: int, document: Document) -> list[Diagnostic]:
    found = _check_document_events(di, document)
    found.extend(_check_document_slots(di, document))
    for si, ci, clause in document.located_clauses():
        loc = (di, si, ci)
        if clause.has_partial_triple:
            given = ", ".join(n for n in "ERS" if getattr(clause, n.lower()) is not None)
            found.append(_diag("ERS_PARTIAL", loc,
                               f"only {given} annotated; E, R and S must appear together"))
        found.extend(check_tense_consistency(clause, loc))
    return _ordered(found)


def validate(c: Corpus) -> list[Diagnostic]:
    """All findings for a corpus, ordered by location then code."""
    found = []
    for di, document in enumerate(c.documents):
        found.extend(validate_document(di, document))
    return found


def has_errors(diagnostics: Iterable[Diagnostic]) -> bool:
    return any(d.is_error for d in diagnostics)


def diagnostics_to_json(diagnostics: Iterable[Diagnostic], filename: str | None = None) -> str:
    return json.dumps([d.to_dict(filename) for d in diagnostics], ensure_ascii=False)
