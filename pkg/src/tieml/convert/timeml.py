"""Interchange with a TimeML subset (EVENT, TIMEX3, TLINK).

Export is complete for ordering but under-specified: TimeML has no slot for
the Reichenbach triple, and no SIGNAL elements are produced. Import is lossy:
TLINK relations are reduced to "before" and "same slot", and every reduction
that drops a distinction is written to a :class:`LossReport`.

Accepted relation names (case-insensitive, ``-`` or space may replace ``_``)
are the members of :class:`TimeMLRelation` plus the aliases in
``RELATION_ALIASES``.
"""

from __future__ import annotations

import enum
import graphlib
import json
import logging
import xml.etree.ElementTree as ET
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Union

from ..model import Clause, Corpus, Document, Sentence
from ..timeline import build_timeline
from ..validator import has_errors, validate
from ..xmlio import DEFAULT_DOC_ID, normalize_space

log = logging.getLogger(__name__)


class TimeMLRelation(enum.Enum):
    BEFORE = "BEFORE"
    AFTER = "AFTER"
    IBEFORE = "IBEFORE"
    IAFTER = "IAFTER"
    INCLUDES = "INCLUDES"
    IS_INCLUDED = "IS_INCLUDED"
    DURING = "DURING"
    DURING_INV = "DURING_INV"
    SIMULTANEOUS = "SIMULTANEOUS"
    IDENTITY = "IDENTITY"
    BEGINS = "BEGINS"
    BEGUN_BY = "BEGUN_BY"
    ENDS = "ENDS"
    ENDED_BY = "ENDED_BY"


RELATION_ALIASES = {
    "INCLUDED": TimeMLRelation.IS_INCLUDED,
    "INCLUDED_BY": TimeMLRelation.IS_INCLUDED,
    "IS_INCLUDED_BY": TimeMLRelation.IS_INCLUDED,
    "SIMULTANEOUS_WITH": TimeMLRelation.SIMULTANEOUS,
    "IMMEDIATELY_BEFORE": TimeMLRelation.IBEFORE,
    "IMMEDIATELY_AFTER": TimeMLRelation.IAFTER,
}

R = TimeMLRelation
# source precedes target; the flag marks a dropped "immediately"
_ORDERING = {R.BEFORE: (False, False), R.AFTER: (True, False),
             R.IBEFORE: (False, True), R.IAFTER: (True, True)}
_INCLUSION = {R.INCLUDES, R.IS_INCLUDED, R.DURING, R.DURING_INV}
_BOUNDARY = {R.BEGINS, R.BEGUN_BY, R.ENDS, R.ENDED_BY}

_TENSE_OUT = {"PAST": "PAST", "PRES": "PRESENT", "FUT": "FUTURE"}
_TENSE_IN = {"PAST": "PAST", "PRESENT": "PRES", "PRES": "PRES", "FUTURE": "FUT", "FUT": "FUT"}
_ASPECT_IN = {
    "NONE": (False, False),
    "PROGRESSIVE": (False, True),
    "PERFECTIVE": (True, False),
    "PERFECTIVE_PROGRESSIVE": (True, True),
}


def relation_from_name(name: str) -> Optional[TimeMLRelation]:
    key = name.strip().upper().replace("-", "_").replace(" ", "_")
    try:
        return TimeMLRelation(key)
    except ValueError:
        return RELATION_ALIASES.get(key)


class ConversionError(ValueError):
    pass


class CycleError(ConversionError):
    def __init__(self, cycle: list[str]):
        super().__init__("cyclic before-order: " + " -> ".join(cycle))
        self.cycle = cycle


class TimeMLFormatError(ConversionError):
    pass


@dataclass(frozen=True)
class TimeMLEvent:
    eid: str
    text: str = ""
    tense: Optional[str] = None
    aspect: Optional[str] = None


@dataclass(frozen=True)
class Timex:
    tid: str
    text: str = ""
    value: Optional[str] = None


@dataclass(frozen=True)
class TLink:
    lid: str
    source: str
    target: str
    relation: Union[TimeMLRelation, str]

    def __post_init__(self):
        if isinstance(self.relation, str):
            known = relation_from_name(self.relation)
            if known is not None:
                object.__setattr__(self, "relation", known)

    @property
    def relation_name(self) -> str:
        rel = self.relation
        return rel.value if isinstance(rel, TimeMLRelation) else rel


@dataclass(frozen=True)
class TimeMLDoc:
    """A TimeML document reduced to the parts that map onto TIE-ML.

    ``signals`` holds SIGNAL ids and ``other_links`` ``(lid, tag)`` pairs for
    SLINK/ALINK elements; both are carried only so that import can report them.
    """

    events: tuple[TimeMLEvent, ...] = ()
    timexes: tuple[Timex, ...] = ()
    tlinks: tuple[TLink, ...] = ()
    docid: Optional[str] = None
    signals: tuple[str, ...] = ()
    other_links: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        for name in ("events", "timexes", "tlinks", "signals", "other_links"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        ids = [e.eid for e in self.events] + [t.tid for t in self.timexes]
        dupes = sorted(i for i, n in Counter(ids).items() if n > 1)
        if dupes:
            raise TimeMLFormatError(f"duplicate EVENT/TIMEX3 ids: {', '.join(dupes)}")
        known = set(ids)
        for link in self.tlinks:
            for end in (link.source, link.target):
                if end not in known:
                    raise TimeMLFormatError(f"TLINK {link.lid} refers to unknown id {end!r}")

    def event_ids(self) -> set:
        return {e.eid for e in self.events}


@dataclass(frozen=True)
class LossEntry:
    kind: str
    item: str
    detail: str


@dataclass
class LossReport:
    entries: list[LossEntry] = field(default_factory=list)

    def add(self, kind: str, item: str, detail: str) -> None:
        self.entries.append(LossEntry(kind, item, detail))

    def items(self, kind: Optional[str] = None) -> list[str]:
        return [e.item for e in self.entries if kind is None or e.kind == kind]

    def __len__(self):
        return len(self.entries)

    def __bool__(self):
        return bool(self.entries)

    def to_dict(self) -> dict:
        return {"losses": [vars(e) for e in self.entries]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)


# -- export ------------------------------------------------------------------

def _single_document(c: Corpus) -> Optional[Document]:
    if len(c.documents) > 1:
        raise ConversionError(
            f"TimeML holds one document; corpus has {len(c.documents)} "
            "(convert each document separately)")
    return c.documents[0] if c.documents else None


def _aspect(clause: Clause) -> Optional[str]:
    if clause.perfect is None and clause.progressive is None:
        return None
    perfect, progressive = bool(clause.perfect), bool(clause.progressive)
    if perfect and progressive:
        return "PERFECTIVE_PROGRESSIVE"
    if perfect:
        return "PERFECTIVE"
    return "PROGRESSIVE" if progressive else "NONE"


def to_timeml(c: Corpus) -> TimeMLDoc:
    """Map a single-document corpus to TimeML.

    Slot groups become SIMULTANEOUS links (one per unordered pair inside a
    group) and BEFORE links between every pair drawn from consecutive groups.
    Each reference string becomes a TIMEX3 that includes its event.
    """
    diagnostics = validate(c)
    if has_errors(diagnostics):
        first = next(d for d in diagnostics if d.is_error)
        raise ConversionError(f"corpus has validation errors, first: {first.format_line()}")
    document = _single_document(c)
    if document is None:
        return TimeMLDoc()

    events, timexes, links = [], [], []

    def link(source, target, relation):
        links.append(TLink(f"l{len(links) + 1}", source, target, relation))

    anchors = []
    for clause in document.clauses():
        if clause.event_id is None:
            continue
        eid = f"e{clause.event_id}"
        tense = clause.tense.closed if clause.tense is not None else None
        events.append(TimeMLEvent(eid, clause.text, _TENSE_OUT.get(tense), _aspect(clause)))
        if clause.reference is not None:
            tid = f"t{len(timexes) + 1}"
            timexes.append(Timex(tid, clause.reference))
            anchors.append((eid, tid))

    timeline = build_timeline(document)
    groups = [sorted(g, key=timeline.presentation.index) for g in timeline.temporal_order()]
    for gi, group in enumerate(groups):
        for i, a in enumerate(group):
            for b in group[i + 1:]:
                link(f"e{a}", f"e{b}", R.SIMULTANEOUS)
        if gi + 1 < len(groups):
            for a in group:
                for b in groups[gi + 1]:
                    link(f"e{a}", f"e{b}", R.BEFORE)
    for eid, tid in anchors:
        link(eid, tid, R.IS_INCLUDED)
    return TimeMLDoc(tuple(events), tuple(timexes), tuple(links), docid=document.id)


def timeml_export_losses(c: Corpus) -> LossReport:
    """What :func:`to_timeml` leaves under-specified for this corpus."""
    report = LossReport()
    report.add("signal", "*", "no SIGNAL elements are produced; TIE-ML does not mark function words")
    document = _single_document(c)
    if document is None:
        return report
    for si, ci, clause in document.located_clauses():
        where = f"{si + 1}:{ci + 1}"
        if clause.event_id is None:
            report.add("non-event-clause", where, "clause without eventid is not exported")
            continue
        eid = f"e{clause.event_id}"
        if clause.tense is not None and clause.tense.closed is None:
            report.add("tense", eid, f"language-specific tense {clause.tense.raw!r} has no TimeML value")
        if clause.e is not None or clause.r is not None or clause.s is not None:
            report.add("reichenbach", eid, f"E={clause.e} R={clause.r} S={clause.s} not representable")
        if clause.time_slot is None:
            report.add("unordered-event", eid, "event has no timeslot; no TLINK produced")
    return report


# -- import ------------------------------------------------------------------

class _Groups:
    def __init__(self, keys):
        self.parent = {k: k for k in keys}

    def find(self, k):
        while self.parent[k] != k:
            self.parent[k] = self.parent[self.parent[k]]
            k = self.parent[k]
        return k

    def union(self, a, b, order):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        # the root is the member that comes first in document order
        if order[rb] < order[ra]:
            ra, rb = rb, ra
        self.parent[rb] = ra


def _members(groups: _Groups, root) -> str:
    return "=".join(k for k in groups.parent if groups.find(k) == root)


def _link_event_timex(link, event_ids, report, anchors):
    rel = link.relation
    if link.source in event_ids:
        eid, tid = link.source, link.target
        anchoring = rel in (R.IS_INCLUDED, R.DURING)
    else:
        eid, tid = link.target, link.source
        anchoring = rel in (R.INCLUDES, R.DURING_INV)
    if eid in anchors:
        report.add("extra-anchor", link.lid,
                   f"{eid} already anchored to {anchors[eid]}; {tid} dropped")
        return
    anchors[eid] = tid
    if not anchoring:
        report.add("anchor-relation", link.lid,
                   f"{link.relation_name} between {eid} and {tid} reduced to a reference anchor")


def from_timeml(d: TimeMLDoc) -> tuple[Corpus, LossReport]:
    """Map TimeML to a single-document corpus.

    Events become clauses numbered 1..n in document order. Slots come from
    longest-path layering of the BEFORE order after merging events joined by
    same-slot relations. Raises :class:`CycleError` when the order is cyclic.
    """
    report = LossReport()
    for sid in d.signals:
        report.add("signal", sid, "SIGNAL dropped")
    for lid, tag in d.other_links:
        report.add("link-type", lid, f"{tag} has no TIE-ML equivalent")

    event_ids = d.event_ids()
    timex_by_id = {t.tid: t for t in d.timexes}
    order = {e.eid: i for i, e in enumerate(d.events)}
    groups = _Groups(order)
    before: list[tuple[str, str]] = []
    linked = set()
    anchors: dict[str, str] = {}
    used_timexes = set()

    for link in d.tlinks:
        src_event, tgt_event = link.source in event_ids, link.target in event_ids
        if not src_event and not tgt_event:
            used_timexes.update((link.source, link.target))
            report.add("timex-link", link.lid,
                       f"{link.relation_name} between {link.source} and {link.target}")
            continue
        rel = link.relation
        if not isinstance(rel, TimeMLRelation):
            log.warning("TLINK %s: unknown relation %r treated as unordered", link.lid, rel)
            report.add("unknown-relation", link.lid, f"unknown relation {rel!r}; link ignored")
            continue
        if src_event != tgt_event:
            _link_event_timex(link, event_ids, report, anchors)
            used_timexes.add(link.target if src_event else link.source)
            continue
        linked.update((link.source, link.target))
        if rel in _ORDERING:
            reverse, immediate = _ORDERING[rel]
            a, b = (link.target, link.source) if reverse else (link.source, link.target)
            before.append((a, b))
            if immediate:
                report.add("immediacy-collapsed", link.lid,
                           f"{rel.value} {link.source} {link.target} kept as plain order")
        else:
            groups.union(link.source, link.target, order)
            if rel in _INCLUSION:
                report.add("inclusion-collapsed", link.lid,
                           f"{link.source} {rel.value} {link.target} mapped to a shared slot")
            elif rel in _BOUNDARY:
                report.add("boundary-collapsed", link.lid,
                           f"{link.source} {rel.value} {link.target} mapped to a shared slot")
            elif rel is R.IDENTITY:
                report.add("identity-collapsed", link.lid,
                           f"{link.source} IDENTITY {link.target} mapped to a shared slot")

    for timex in d.timexes:
        if timex.tid not in used_timexes:
            report.add("unanchored-timex", timex.tid, f"TIMEX3 {timex.text!r} is not linked to an event")
        elif timex.value is not None:
            report.add("timex-value", timex.tid, f"value {timex.value!r} dropped; text kept")

    slots = _layer(d, groups, order, before, linked, report)

    clauses = []
    for n, event in enumerate(d.events, 1):
        tense = None
        if event.tense is not None:
            key = event.tense.strip().upper()
            if key in _TENSE_IN:
                tense = _TENSE_IN[key]
            elif key != "NONE":
                report.add("tense", event.eid, f"tense {event.tense!r} has no TIE-ML label")
        perfect = progressive = None
        if event.aspect is not None:
            key = event.aspect.strip().upper()
            if key in _ASPECT_IN:
                perfect, progressive = _ASPECT_IN[key]
            else:
                report.add("aspect", event.eid, f"aspect {event.aspect!r} has no TIE-ML flags")
        anchor = anchors.get(event.eid)
        clauses.append(Clause(
            normalize_space(event.text), event_id=n, time_slot=slots.get(event.eid),
            tense=tense, perfect=perfect, progressive=progressive,
            reference=timex_by_id[anchor].text if anchor else None,
        ))
    if not clauses:
        return Corpus(()), report
    document = Document(d.docid or DEFAULT_DOC_ID, (Sentence(tuple(clauses)),))
    return Corpus((document,)), report


def _layer(d, groups, order, before, linked, report) -> dict[str, int]:
    roots = sorted({groups.find(e) for e in linked}, key=order.get)
    preds: dict[str, set] = {r: set() for r in roots}
    for a, b in before:
        preds[groups.find(b)].add(groups.find(a))
    sorter = graphlib.TopologicalSorter()
    for r in roots:
        sorter.add(r, *sorted(preds[r], key=order.get))
    try:
        topo = list(sorter.static_order())
    except graphlib.CycleError as exc:
        cycle = [_members(groups, r) for r in exc.args[1]]
        raise CycleError(cycle) from None

    slot_of_group: dict[str, int] = {}
    for r in topo:
        slot_of_group[r] = 1 + max((slot_of_group[p] for p in preds[r]), default=0)

    # pairs whose relative order in the output was not stated in the input
    bit = {r: 1 << i for i, r in enumerate(topo)}
    ancestors = {}
    for r in topo:
        mask = 0
        for p in preds[r]:
            mask |= bit[p] | ancestors[p]
        ancestors[r] = mask
    invented = 0
    for i, g in enumerate(topo):
        for h in topo[i + 1:]:
            if not (ancestors[h] & bit[g] or ancestors[g] & bit[h]):
                invented += 1
    if invented:
        report.add("order-linearized", "*",
                   f"{invented} pair(s) of event groups had no stated order; "
                   "layering placed them in shared or ordered slots")
    return {e: slot_of_group[groups.find(e)] for e in linked}


# -- XML ---------------------------------------------------------------------

def timeml_to_xml(d: TimeMLDoc) -> str:
    root = ET.Element("TimeML")
    if d.docid is not None:
        ET.SubElement(root, "DOCID").text = d.docid
    text = ET.SubElement(root, "TEXT")
    anchored = {}
    for link in d.tlinks:
        if link.target in {t.tid for t in d.timexes}:
            anchored.setdefault(link.source, []).append(link.target)
    timex_by_id = {t.tid: t for t in d.timexes}
    placed = set()

    def put_timex(tid):
        timex = timex_by_id[tid]
        attrs = {"tid": timex.tid}
        if timex.value is not None:
            attrs["value"] = timex.value
        el = ET.SubElement(text, "TIMEX3", attrs)
        el.text = timex.text
        placed.add(tid)

    for event in d.events:
        attrs = {"eid": event.eid}
        if event.tense is not None:
            attrs["tense"] = event.tense
        if event.aspect is not None:
            attrs["aspect"] = event.aspect
        el = ET.SubElement(text, "EVENT", attrs)
        el.text = event.text
        for tid in anchored.get(event.eid, ()):
            if tid not in placed:
                put_timex(tid)
    for timex in d.timexes:
        if timex.tid not in placed:
            put_timex(timex.tid)

    timex_ids = set(timex_by_id)
    for link in d.tlinks:
        attrs = {"lid": link.lid, "relType": link.relation_name}
        attrs["timeID" if link.source in timex_ids else "eventID"] = link.source
        attrs["relatedToTime" if link.target in timex_ids else "relatedToEvent"] = link.target
        ET.SubElement(root, "TLINK", attrs)
    ET.indent(root, space="", level=0)
    body = ET.tostring(root, encoding="unicode")
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + body + "\n"


def timeml_from_xml(source: str) -> TimeMLDoc:
    """Read TimeML XML.

    Tense and aspect are taken from EVENT or, failing that, from the first
    MAKEINSTANCE of the event; ``eventInstanceID``/``relatedToEventInstance``
    are resolved through MAKEINSTANCE.
    """
    try:
        root = ET.fromstring(source.encode("utf-8"))
    except ET.ParseError as exc:
        line, column = exc.position
        raise TimeMLFormatError(f"{line}:{column + 1}: malformed TimeML XML") from None

    instances = {}
    for mi in root.iter("MAKEINSTANCE"):
        instances[mi.get("eiid")] = mi
    instance_tense = {}
    for mi in instances.values():
        instance_tense.setdefault(mi.get("eventID"), mi)

    events, timexes, signals, links, other = [], [], [], [], []
    for el in root.iter():
        if el.tag == "EVENT":
            eid = el.get("eid")
            if not eid:
                raise TimeMLFormatError("EVENT without eid")
            mi = instance_tense.get(eid)
            tense = el.get("tense") or (mi.get("tense") if mi is not None else None)
            aspect = el.get("aspect") or (mi.get("aspect") if mi is not None else None)
            events.append(TimeMLEvent(eid, normalize_space("".join(el.itertext())), tense, aspect))
        elif el.tag == "TIMEX3":
            tid = el.get("tid")
            if not tid:
                raise TimeMLFormatError("TIMEX3 without tid")
            timexes.append(Timex(tid, normalize_space("".join(el.itertext())), el.get("value")))
        elif el.tag == "SIGNAL":
            signals.append(el.get("sid", "?"))
        elif el.tag in ("SLINK", "ALINK"):
            other.append((el.get("lid", "?"), el.tag))
        elif el.tag == "TLINK":
            links.append(el)

    def endpoint(el, event_attr, instance_attr, time_attr):
        if el.get(event_attr):
            return el.get(event_attr)
        if el.get(instance_attr):
            mi = instances.get(el.get(instance_attr))
            if mi is None:
                raise TimeMLFormatError(f"TLINK {el.get('lid')}: unknown instance {el.get(instance_attr)!r}")
            return mi.get("eventID")
        if el.get(time_attr):
            return el.get(time_attr)
        raise TimeMLFormatError(f"TLINK {el.get('lid')}: missing {event_attr}/{time_attr}")

    tlinks = []
    for el in links:
        source = endpoint(el, "eventID", "eventInstanceID", "timeID")
        target = endpoint(el, "relatedToEvent", "relatedToEventInstance", "relatedToTime")
        tlinks.append(TLink(el.get("lid", f"l{len(tlinks) + 1}"), source, target, el.get("relType", "")))

    docid_el = root.find("DOCID")
    docid = docid_el.text.strip() if docid_el is not None and docid_el.text else None
    return TimeMLDoc(tuple(events), tuple(timexes), tuple(tlinks), docid=docid,
                     signals=tuple(signals), other_links=tuple(other))
