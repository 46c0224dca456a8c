"""Tools for TIE-ML annotated corpora: parsing, validation, timelines, conversion."""

from .model import Clause, Corpus, Document, ModelError, Sentence, TenseLabel, effective_flags
from .reichenbach import (
    EventRelation,
    ReferenceRelation,
    ReichenbachTriple,
    TenseCategory,
    TripleRangeError,
    canonical_triple,
    classify_tense,
    normalize_triple,
    traditional_label,
)
from .timeline import Timeline, TimelineError, build_timeline, inversion_count, is_monotone, overlapping_events
from .validator import Diagnostic, Severity, check_event_ids, check_tense_consistency, check_timeslots, validate
from .xmlio import ParseError, ParseErrorKind, parse, serialize

__version__ = "0.1.0"

__all__ = [
    "Clause", "Corpus", "Document", "ModelError", "Sentence", "TenseLabel", "effective_flags",
    "EventRelation", "ReferenceRelation", "ReichenbachTriple", "TenseCategory", "TripleRangeError",
    "canonical_triple", "classify_tense", "normalize_triple", "traditional_label",
    "Timeline", "TimelineError", "build_timeline", "inversion_count", "is_monotone",
    "overlapping_events",
    "Diagnostic", "Severity", "check_event_ids", "check_tense_consistency", "check_timeslots",
    "validate",
    "ParseError", "ParseErrorKind", "parse", "serialize",
]
