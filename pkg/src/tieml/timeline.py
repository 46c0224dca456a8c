"""Event timelines reconstructed from timeslot annotations.

A timeline has two tiers: the presentation tier (event ids in textual order)
and the slot tier (which events share each timeslot). Slot values are ordinal;
gaps between them carry no duration.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .model import Document


class TimelineError(ValueError):
    pass


@dataclass(frozen=True)
class Timeline:
    slots: tuple[tuple[int, frozenset], ...]
    presentation: tuple[int, ...]

    def slot_of(self, event_id: int) -> Optional[int]:
        for slot, events in self.slots:
            if event_id in events:
                return slot
        return None

    def slot_map(self) -> dict[int, int]:
        return {e: slot for slot, events in self.slots for e in events}

    def temporal_order(self) -> list[frozenset]:
        """Event groups from earliest to latest slot."""
        return [events for _, events in self.slots]

    def annotated_slots(self) -> list[int]:
        """Slots of the slotted events, in presentation order."""
        slot = self.slot_map()
        return [slot[e] for e in self.presentation if e in slot]

    def to_dict(self) -> dict:
        return {
            "slots": [{"slot": s, "events": sorted(ev)} for s, ev in self.slots],
            "presentation": list(self.presentation),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_tiers(self) -> str:
        """Two aligned rows: event ids (E) over their timeslots (T)."""
        slot = self.slot_map()
        events = [str(e) for e in self.presentation]
        slots = [str(slot[e]) if e in slot else "_" for e in self.presentation]
        widths = [max(len(a), len(b)) for a, b in zip(events, slots)]
        row_e = " ".join(v.ljust(w) for v, w in zip(events, widths)).rstrip()
        row_t = " ".join(v.ljust(w) for v, w in zip(slots, widths)).rstrip()
        return f"E: {row_e}".rstrip() + "\n" + f"T: {row_t}".rstrip()


def build_timeline(d: Document) -> Timeline:
    presentation = []
    groups: dict[int, set] = {}
    seen = set()
    for clause in d.clauses():
        eid = clause.event_id
        if eid is None:
            continue
        if eid in seen:
            raise TimelineError(f"document {d.id!r}: duplicate eventid={eid}")
        seen.add(eid)
        presentation.append(eid)
        if clause.time_slot is not None:
            groups.setdefault(clause.time_slot, set()).add(eid)
    slots = tuple((s, frozenset(groups[s])) for s in sorted(groups))
    return Timeline(slots, tuple(presentation))


def overlapping_events(t: Timeline, slot: int) -> frozenset:
    for s, events in t.slots:
        if s == slot:
            return events
    return frozenset()


def _sort_count(values: list) -> tuple[list, int]:
    if len(values) < 2:
        return values, 0
    mid = len(values) // 2
    left, a = _sort_count(values[:mid])
    right, b = _sort_count(values[mid:])
    merged = []
    total = a + b
    i = j = 0
    while i < len(left) and j < len(right):
        if right[j] < left[i]:
            # right[j] is smaller than every remaining left value
            total += len(left) - i
            merged.append(right[j])
            j += 1
        else:
            merged.append(left[i])
            i += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    return merged, total


def count_inversions(values) -> int:
    """Number of index pairs i < j with values[i] > values[j]; ties excluded."""
    return _sort_count(list(values))[1]


def inversion_count(t: Timeline) -> int:
    return count_inversions(t.annotated_slots())


def is_monotone(t: Timeline) -> bool:
    return inversion_count(t) == 0
