"""Independent pairwise-order oracle for TimeML round trips."""

import itertools


def pairwise_relations(slot_by_event: dict) -> dict:
    """Map each unordered event pair to 'before', 'after' or 'simultaneous'."""
    out = {}
    for a, b in itertools.combinations(sorted(slot_by_event), 2):
        sa, sb = slot_by_event[a], slot_by_event[b]
        out[(a, b)] = "before" if sa < sb else "after" if sa > sb else "simultaneous"
    return out


def slots_by_position(document) -> dict:
    """Slot of every event keyed by its 1-based position among event clauses."""
    events = [c for c in document.clauses() if c.event_id is not None]
    return {i: c.time_slot for i, c in enumerate(events, 1) if c.time_slot is not None}
