"""Reichenbach tense algebra over integer (E, R, S) triples.

Each of event time, reference time and speech time is an integer in
``[-2, 2]``. Only the pairwise order of the three values decides the tense
category; the sign convention (negative = past of speech time) is a redundant
encoding that canonical triples honour.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

MIN_VALUE = -2
MAX_VALUE = 2


class TripleRangeError(ValueError):
    """A triple component lies outside ``[MIN_VALUE, MAX_VALUE]``."""


class ReferenceRelation(enum.Enum):
    """Order of reference time relative to speech time."""

    PAST = "Past"
    PRESENT = "Present"
    FUTURE = "Future"


class EventRelation(enum.Enum):
    """Order of event time relative to reference time."""

    ANTERIOR = "Anterior"
    SIMPLE = "Simple"
    POSTERIOR = "Posterior"


def _check_component(name: str, value: object) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TripleRangeError(f"{name} must be an integer, got {value!r}")
    if not MIN_VALUE <= value <= MAX_VALUE:
        raise TripleRangeError(
            f"{name}={value} outside [{MIN_VALUE}, {MAX_VALUE}]"
        )


@dataclass(frozen=True)
class ReichenbachTriple:
    e: int
    r: int
    s: int

    def __post_init__(self) -> None:
        for name in ("e", "r", "s"):
            _check_component(name.upper(), getattr(self, name))

    def __iter__(self):
        return iter((self.e, self.r, self.s))

    def shifted(self, k: int) -> ReichenbachTriple:
        return ReichenbachTriple(self.e + k, self.r + k, self.s + k)


@dataclass(frozen=True)
class TenseCategory:
    reference_relation: ReferenceRelation
    event_relation: EventRelation

    def __str__(self) -> str:
        return f"{self.event_relation.value} {self.reference_relation.value}"


ALL_CATEGORIES: tuple[TenseCategory, ...] = tuple(
    TenseCategory(ref, ev) for ref in ReferenceRelation for ev in EventRelation
)

_LABELS = {
    (ReferenceRelation.PAST, EventRelation.ANTERIOR): "Pluperfect",
    (ReferenceRelation.PAST, EventRelation.SIMPLE): "Simple Past",
    (ReferenceRelation.PAST, EventRelation.POSTERIOR): "Posterior Past",
    (ReferenceRelation.PRESENT, EventRelation.ANTERIOR): "Present Perfect",
    (ReferenceRelation.PRESENT, EventRelation.SIMPLE): "Simple Present",
    (ReferenceRelation.PRESENT, EventRelation.POSTERIOR): "Posterior Present",
    (ReferenceRelation.FUTURE, EventRelation.ANTERIOR): "Future Perfect",
    (ReferenceRelation.FUTURE, EventRelation.SIMPLE): "Simple Future",
    (ReferenceRelation.FUTURE, EventRelation.POSTERIOR): "Posterior Future",
}

_REF_OFFSET = {
    ReferenceRelation.PAST: -1,
    ReferenceRelation.PRESENT: 0,
    ReferenceRelation.FUTURE: 1,
}
_EVENT_OFFSET = {
    EventRelation.ANTERIOR: -1,
    EventRelation.SIMPLE: 0,
    EventRelation.POSTERIOR: 1,
}


def _as_triple(t) -> ReichenbachTriple:
    if isinstance(t, ReichenbachTriple):
        return t
    e, r, s = t
    return ReichenbachTriple(e, r, s)


def classify_tense(t) -> TenseCategory:
    """Classify a triple (or any ``(e, r, s)`` sequence) into its category.

    Raises :class:`TripleRangeError` for out-of-range components.
    """
    t = _as_triple(t)
    if t.r < t.s:
        ref = ReferenceRelation.PAST
    elif t.r == t.s:
        ref = ReferenceRelation.PRESENT
    else:
        ref = ReferenceRelation.FUTURE
    if t.e < t.r:
        ev = EventRelation.ANTERIOR
    elif t.e == t.r:
        ev = EventRelation.SIMPLE
    else:
        ev = EventRelation.POSTERIOR
    return TenseCategory(ref, ev)


def traditional_label(c: TenseCategory) -> str:
    return _LABELS[(c.reference_relation, c.event_relation)]


def canonical_triple(c: TenseCategory) -> ReichenbachTriple:
    """Representative triple of a category: ``s = 0`` and unit steps.

    Reference time sits one step from speech time in the direction of the
    reference relation; event time sits one step from reference time in the
    direction of the event relation, so ``(Past, Anterior)`` is ``(-2, -1, 0)``
    and ``(Past, Posterior)`` is ``(0, -1, 0)``.
    """
    r = _REF_OFFSET[c.reference_relation]
    return ReichenbachTriple(r + _EVENT_OFFSET[c.event_relation], r, 0)


def normalize_triple(t) -> ReichenbachTriple:
    return canonical_triple(classify_tense(t))
