"""Parsing and serialization of the TIE-ML XML surface format.

Accepted input is either a bare sequence of ``<s>`` elements (as annotators
usually write them) or a single ``<tieml>`` root holding ``<s>`` elements or
``<doc id="...">`` elements. The writer always emits a ``<tieml>`` root with
``<doc>`` children so that document ids survive a round trip.
"""

from __future__ import annotations

import enum
import re
from typing import Optional
from xml.parsers import expat
from xml.sax.saxutils import escape, quoteattr

from .model import Clause, Corpus, Document, Sentence
from .reichenbach import MAX_VALUE, MIN_VALUE

DEFAULT_DOC_ID = "d1"

# Attribute order on output; also the complete <c> vocabulary.
CLAUSE_ATTRIBUTES = (
    "eventid", "timeslot", "tense", "perfect", "progressive", "E", "R", "S", "reference",
)

_WRAPPER = "__tieml_input__"
_XML_DECL = re.compile(r"^\ufeff?\s*<\?xml[^>]*\?>")
_XML_SPACE = re.compile(r"[ \t\r\n]+")
_INT = re.compile(r"^[+-]?[0-9]+$")


class ParseErrorKind(enum.Enum):
    MALFORMED_XML = "Malformed XML"
    UNKNOWN_ATTRIBUTE = "Unknown attribute"
    BAD_ATTRIBUTE_VALUE = "Bad attribute value"
    STRUCTURE_VIOLATION = "Structure violation"


class ParseError(ValueError):
    """A located failure to read TIE-ML input. ``line``/``column`` are 1-based."""

    def __init__(self, kind: ParseErrorKind, line: int, column: int, detail: str):
        super().__init__(f"{line}:{column}: {kind.value}: {detail}")
        self.kind = kind
        self.line = line
        self.column = column
        self.detail = detail


def normalize_space(text: str) -> str:
    return _XML_SPACE.sub(" ", text).strip(" ")


class _Reader:
    def __init__(self, source: str, lenient: bool, preserve_whitespace: bool,
                 doc_id: str, warnings: Optional[list]):
        self.lenient = lenient
        self.preserve_whitespace = preserve_whitespace
        self.doc_id = doc_id
        self.warnings = warnings

        decl = _XML_DECL.match(source)
        if decl:
            # blank the declaration in place so offsets stay valid
            blank = re.sub(r"[^\n]", " ", decl.group(0))
            source = blank + source[decl.end():]
        self.prefix = f"<{_WRAPPER}>"
        self.data = (self.prefix + source + f"</{_WRAPPER}>").encode("utf-8")

        self.stack: list[str] = []
        self.documents: list[Document] = []
        self.sentences: list[Sentence] = []
        self.clauses: list[Clause] = []
        self.pending: Optional[dict] = None
        self.text_parts: list[str] = []
        self.current_doc_id: Optional[str] = None
        # what the current container holds: "s" or "doc"
        self.child_kind: dict[int, str] = {}
        self.start_index = 0

    def location(self, byte_index: int) -> tuple[int, int]:
        byte_index = max(0, min(byte_index, len(self.data)))
        line = self.data.count(b"\n", 0, byte_index) + 1
        line_start = self.data.rfind(b"\n", 0, byte_index) + 1
        column = len(self.data[line_start:byte_index].decode("utf-8", "replace")) + 1
        if line == 1:
            column -= len(self.prefix)
        return line, max(column, 1)

    def fail(self, kind: ParseErrorKind, detail: str, byte_index: Optional[int] = None):
        if byte_index is None:
            byte_index = self.parser.CurrentByteIndex
        line, column = self.location(byte_index)
        raise ParseError(kind, line, column, detail)

    def unknown_attribute(self, element: str, name: str):
        detail = f"<{element}> does not take attribute {name!r}"
        if not self.lenient:
            self.fail(ParseErrorKind.UNKNOWN_ATTRIBUTE, detail)
        if self.warnings is not None:
            line, column = self.location(self.parser.CurrentByteIndex)
            self.warnings.append(
                ParseError(ParseErrorKind.UNKNOWN_ATTRIBUTE, line, column, detail))

    def run(self) -> Corpus:
        parser = expat.ParserCreate("utf-8")
        parser.buffer_text = True
        parser.StartElementHandler = self.start
        parser.EndElementHandler = self.end
        parser.CharacterDataHandler = self.chars
        self.parser = parser
        try:
            parser.Parse(self.data, True)
        except expat.ExpatError as exc:
            self.fail(ParseErrorKind.MALFORMED_XML,
                      expat.ErrorString(exc.code), parser.ErrorByteIndex)
        return Corpus(tuple(self.documents))

    # -- handlers ---------------------------------------------------------

    def _claim_container(self, kind: str):
        depth = len(self.stack)
        seen = self.child_kind.setdefault(depth, kind)
        if seen != kind:
            self.fail(ParseErrorKind.STRUCTURE_VIOLATION,
                      "<s>, <doc> and <tieml> elements cannot be mixed at the same level")

    def start(self, name: str, attrs: dict):
        parent = self.stack[-1] if self.stack else None
        if name == _WRAPPER and parent is None:
            pass
        elif name == "tieml":
            if parent != _WRAPPER or self.child_kind.get(1):
                self.fail(ParseErrorKind.STRUCTURE_VIOLATION,
                          "<tieml> must be the single root element")
            self.child_kind[1] = "tieml"
            for key in attrs:
                self.unknown_attribute("tieml", key)
        elif name == "doc":
            if parent != "tieml":
                self.fail(ParseErrorKind.STRUCTURE_VIOLATION, "<doc> must be a child of <tieml>")
            self._claim_container("doc")
            for key in attrs:
                if key != "id":
                    self.unknown_attribute("doc", key)
            if "id" not in attrs:
                self.fail(ParseErrorKind.STRUCTURE_VIOLATION, "<doc> requires an id attribute")
            self.current_doc_id = attrs["id"]
        elif name == "s":
            if parent not in (_WRAPPER, "tieml", "doc"):
                self.fail(ParseErrorKind.STRUCTURE_VIOLATION,
                          f"<s> cannot appear inside <{parent}>")
            self._claim_container("s")
            for key in attrs:
                self.unknown_attribute("s", key)
            self.clauses = []
        elif name == "c":
            if parent != "s":
                where = "nested in <c>" if parent == "c" else "outside <s>"
                self.fail(ParseErrorKind.STRUCTURE_VIOLATION, f"<c> {where}")
            self.pending = self.clause_fields(attrs)
            self.text_parts = []
        else:
            self.fail(ParseErrorKind.STRUCTURE_VIOLATION, f"unknown element <{name}>")
        if name == "s":
            self.start_index = self.parser.CurrentByteIndex
        self.stack.append(name)

    def end(self, name: str):
        self.stack.pop()
        if name == "c":
            raw = "".join(self.text_parts)
            text = raw if self.preserve_whitespace else normalize_space(raw)
            self.clauses.append(Clause(text, **self.pending))
            self.pending = None
        elif name == "s":
            if not self.clauses:
                self.fail(ParseErrorKind.STRUCTURE_VIOLATION,
                          "<s> contains no <c> element", self.start_index)
            self.sentences.append(Sentence(tuple(self.clauses)))
            self.clauses = []
        elif name == "doc":
            if not self.sentences:
                self.fail(ParseErrorKind.STRUCTURE_VIOLATION,
                          f"<doc id={self.current_doc_id!r}> contains no <s> element")
            self.documents.append(Document(self.current_doc_id, tuple(self.sentences)))
            self.sentences = []
        elif name in ("tieml", _WRAPPER):
            if self.sentences:
                self.documents.append(Document(self.doc_id, tuple(self.sentences)))
                self.sentences = []

    def chars(self, data: str):
        if self.stack and self.stack[-1] == "c":
            self.text_parts.append(data)

    # -- attributes -------------------------------------------------------

    def bad_value(self, name: str, value: str, expected: str):
        self.fail(ParseErrorKind.BAD_ATTRIBUTE_VALUE,
                  f"{name}={value!r}: expected {expected}")

    def int_value(self, name: str, value: str, lo: Optional[int], hi: Optional[int]) -> int:
        stripped = value.strip()
        if not _INT.match(stripped):
            self.bad_value(name, value, "an integer")
        number = int(stripped)
        if lo is not None and number < lo:
            self.bad_value(name, value, f"an integer >= {lo}" if hi is None
                           else f"an integer in [{lo}, {hi}]")
        if hi is not None and number > hi:
            self.bad_value(name, value, f"an integer in [{lo}, {hi}]")
        return number

    def bool_value(self, name: str, value: str) -> bool:
        upper = value.strip().upper()
        if upper == "TRUE":
            return True
        if upper == "FALSE":
            return False
        self.bad_value(name, value, '"TRUE" or "FALSE"')

    def clause_fields(self, attrs: dict) -> dict:
        fields = {}
        for key, value in attrs.items():
            if key == "eventid":
                fields["event_id"] = self.int_value(key, value, 1, None)
            elif key == "timeslot":
                fields["time_slot"] = self.int_value(key, value, 1, None)
            elif key == "tense":
                if value == "":
                    self.bad_value(key, value, "a non-empty tense label")
                fields["tense"] = value
            elif key in ("perfect", "progressive"):
                fields[key] = self.bool_value(key, value)
            elif key in ("E", "R", "S"):
                fields[key.lower()] = self.int_value(key, value, MIN_VALUE, MAX_VALUE)
            elif key == "reference":
                fields["reference"] = value
            else:
                self.unknown_attribute("c", key)
        return fields


def parse(source: str, *, lenient: bool = False, preserve_whitespace: bool = False,
          doc_id: str = DEFAULT_DOC_ID, warnings: Optional[list] = None) -> Corpus:
    """Parse TIE-ML XML text into a :class:`Corpus`.

    Raises :class:`ParseError` on the first problem found. With ``lenient``,
    unknown attributes are dropped instead and, when ``warnings`` is a list,
    recorded in it as :class:`ParseError` instances. Clause text has XML
    whitespace runs collapsed and is trimmed unless ``preserve_whitespace``.
    Sentences not wrapped in ``<doc>`` form one document named ``doc_id``.
    """
    return _Reader(source, lenient, preserve_whitespace, doc_id, warnings).run()


def _text(value: str) -> str:
    return escape(value, {"\r": "&#13;"})


def _attributes(clause: Clause) -> str:
    values = {
        "eventid": clause.event_id,
        "timeslot": clause.time_slot,
        "tense": clause.tense.raw if clause.tense is not None else None,
        "perfect": clause.perfect,
        "progressive": clause.progressive,
        "E": clause.e,
        "R": clause.r,
        "S": clause.s,
        "reference": clause.reference,
    }
    parts = []
    for name in CLAUSE_ATTRIBUTES:
        value = values[name]
        if value is None:
            continue
        if isinstance(value, bool):
            value = "TRUE" if value else "FALSE"
        parts.append(f" {name}={quoteattr(str(value))}")
    return "".join(parts)


def serialize(corpus: Corpus) -> str:
    lines = ['<?xml version="1.0" encoding="UTF-8"?>', "<tieml>"]
    for document in corpus.documents:
        lines.append(f"  <doc id={quoteattr(document.id)}>")
        for sentence in document.sentences:
            lines.append("    <s>")
            for clause in sentence.clauses:
                lines.append(f"      <c{_attributes(clause)}>{_text(clause.text)}</c>")
            lines.append("    </s>")
        lines.append("  </doc>")
    lines.append("</tieml>")
    return "\n".join(lines) + "\n"
