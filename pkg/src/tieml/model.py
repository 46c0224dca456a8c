"""Immutable in-memory representation of a TIE-ML corpus.

A corpus holds documents, a document holds sentences, a sentence holds
clauses. Clause order inside a document is the presentation order of its
events. Every type validates its fields at construction time, so an instance
that exists is always in range.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from .reichenbach import ReichenbachTriple, TripleRangeError, _check_component

CLOSED_TENSES = ("PAST", "PRES", "FUT")


class ModelError(ValueError):
    """Raised when a model object is built with invalid field values."""


class TenseLabel:
    """A clause tense: one of PAST/PRES/FUT, or an opaque language code.

    Closed-set labels compare case-insensitively. The raw spelling is kept so
    that serialization reproduces the input byte for byte.
    """

    __slots__ = ("raw",)

    def __init__(self, raw: str):
        if not isinstance(raw, str) or raw == "":
            raise ModelError(f"tense must be a non-empty string, got {raw!r}")
        object.__setattr__(self, "raw", raw)

    def __setattr__(self, name, value):
        raise AttributeError("TenseLabel is immutable")

    @property
    def closed(self) -> Optional[str]:
        """Upper-cased closed-set value, or ``None`` for opaque codes."""
        upper = self.raw.upper()
        return upper if upper in CLOSED_TENSES else None

    @property
    def is_opaque(self) -> bool:
        return self.closed is None

    def _key(self):
        closed = self.closed
        return ("closed", closed) if closed else ("opaque", self.raw)

    def __eq__(self, other):
        if isinstance(other, str):
            other = TenseLabel(other) if other else None
        if not isinstance(other, TenseLabel):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"TenseLabel({self.raw!r})"

    def __str__(self):
        return self.raw


def _check_positive(name: str, value) -> None:
    if value is None:
        return
    if isinstance(value, bool) or not isinstance(value, int):
        raise ModelError(f"{name} must be an integer, got {value!r}")
    if value < 1:
        raise ModelError(f"{name} must be >= 1, got {value}")


def _check_flag(name: str, value) -> None:
    if value is not None and not isinstance(value, bool):
        raise ModelError(f"{name} must be a boolean or None, got {value!r}")


@dataclass(frozen=True)
class Clause:
    """One ``<c>`` element.

    ``e``, ``r`` and ``s`` are stored individually so that a partially
    annotated triple survives parsing and can be reported by the validator;
    :attr:`triple` is only set when all three are present.
    """

    text: str = ""
    event_id: Optional[int] = None
    time_slot: Optional[int] = None
    tense: Optional[TenseLabel] = None
    perfect: Optional[bool] = None
    progressive: Optional[bool] = None
    e: Optional[int] = None
    r: Optional[int] = None
    s: Optional[int] = None
    reference: Optional[str] = None

    def __post_init__(self):
        if not isinstance(self.text, str):
            raise ModelError(f"text must be a string, got {self.text!r}")
        _check_positive("event_id", self.event_id)
        _check_positive("time_slot", self.time_slot)
        if isinstance(self.tense, str):
            object.__setattr__(self, "tense", TenseLabel(self.tense))
        elif self.tense is not None and not isinstance(self.tense, TenseLabel):
            raise ModelError(f"tense must be a TenseLabel, got {self.tense!r}")
        _check_flag("perfect", self.perfect)
        _check_flag("progressive", self.progressive)
        for name in ("e", "r", "s"):
            value = getattr(self, name)
            if value is not None:
                try:
                    _check_component(name.upper(), value)
                except TripleRangeError as exc:
                    raise ModelError(str(exc)) from None
        if self.reference is not None and not isinstance(self.reference, str):
            raise ModelError(f"reference must be a string, got {self.reference!r}")

    @classmethod
    def with_triple(cls, text: str, triple: ReichenbachTriple, **kwargs) -> Clause:
        return cls(text, e=triple.e, r=triple.r, s=triple.s, **kwargs)

    @property
    def triple(self) -> Optional[ReichenbachTriple]:
        if self.e is None or self.r is None or self.s is None:
            return None
        return ReichenbachTriple(self.e, self.r, self.s)

    @property
    def has_partial_triple(self) -> bool:
        present = sum(v is not None for v in (self.e, self.r, self.s))
        return 0 < present < 3


@dataclass(frozen=True)
class Sentence:
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        clauses = tuple(self.clauses)
        if not clauses:
            raise ModelError("a sentence needs at least one clause")
        if not all(isinstance(c, Clause) for c in clauses):
            raise ModelError("sentence clauses must be Clause instances")
        object.__setattr__(self, "clauses", clauses)


@dataclass(frozen=True)
class Document:
    id: str
    sentences: tuple[Sentence, ...]

    def __post_init__(self):
        if not isinstance(self.id, str):
            raise ModelError(f"document id must be a string, got {self.id!r}")
        sentences = tuple(self.sentences)
        if not sentences:
            raise ModelError(f"document {self.id!r} has no sentences")
        if not all(isinstance(s, Sentence) for s in sentences):
            raise ModelError("document sentences must be Sentence instances")
        object.__setattr__(self, "sentences", sentences)

    def clauses(self) -> Iterator[Clause]:
        """Clauses in presentation order."""
        for sentence in self.sentences:
            yield from sentence.clauses

    def located_clauses(self) -> Iterator[tuple[int, int, Clause]]:
        for si, sentence in enumerate(self.sentences):
            for ci, clause in enumerate(sentence.clauses):
                yield si, ci, clause


@dataclass(frozen=True)
class Corpus:
    documents: tuple[Document, ...] = field(default_factory=tuple)

    def __post_init__(self):
        documents = tuple(self.documents)
        if not all(isinstance(d, Document) for d in documents):
            raise ModelError("corpus documents must be Document instances")
        object.__setattr__(self, "documents", documents)

    def __len__(self):
        return len(self.documents)


def effective_flags(clause: Clause) -> tuple[bool, bool]:
    """(perfect, progressive) with absent attributes read as false."""
    return bool(clause.perfect), bool(clause.progressive)
