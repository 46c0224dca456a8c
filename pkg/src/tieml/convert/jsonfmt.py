"""Lossless JSON mapping of a corpus.

Layout: ``{"documents": [{"id", "sentences": [{"clauses": [clause, ...]}]}]}``
where every clause object carries the keys eventid, timeslot, tense, perfect,
progressive, E, R, S, reference (``null`` when absent) and text. The schema
ships as ``tieml/schemas/corpus.schema.json``.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import fastjsonschema

from ..model import Clause, Corpus, Document, Sentence


class JsonFormatError(ValueError):
    """Malformed or schema-violating JSON; ``path`` is a JSONPath-like string."""

    def __init__(self, path: str, detail: str):
        super().__init__(f"{path}: {detail}")
        self.path = path
        self.detail = detail


@lru_cache(maxsize=None)
def corpus_schema() -> dict:
    text = resources.files("tieml.schemas").joinpath("corpus.schema.json").read_text("utf-8")
    return json.loads(text)


@lru_cache(maxsize=None)
def _validator():
    # compiled once; interpreting the schema per call is ~20x slower
    return fastjsonschema.compile(corpus_schema())


def _json_path(data, parts) -> str:
    """Render a validator path; list positions become ``[i]``."""
    out = "$"
    node = data
    for part in parts:
        if isinstance(node, list):
            index = int(part)
            out += f"[{index}]"
            node = node[index] if index < len(node) else None
        else:
            out += f".{part}"
            node = node.get(part) if isinstance(node, dict) else None
    return out


def clause_to_dict(clause: Clause) -> dict:
    return {
        "eventid": clause.event_id,
        "timeslot": clause.time_slot,
        "tense": clause.tense.raw if clause.tense is not None else None,
        "perfect": clause.perfect,
        "progressive": clause.progressive,
        "E": clause.e,
        "R": clause.r,
        "S": clause.s,
        "reference": clause.reference,
        "text": clause.text,
    }


def corpus_to_dict(c: Corpus) -> dict:
    return {
        "documents": [
            {
                "id": d.id,
                "sentences": [
                    {"clauses": [clause_to_dict(cl) for cl in s.clauses]}
                    for s in d.sentences
                ],
            }
            for d in c.documents
        ]
    }


def to_json(c: Corpus, indent: int | None = None) -> str:
    separators = (",", ":") if indent is None else (",", ": ")
    return json.dumps(corpus_to_dict(c), ensure_ascii=False, indent=indent,
                      separators=separators)


def _int(value):
    return None if value is None else int(value)


def corpus_from_dict(data) -> Corpus:
    try:
        _validator()(data)
    except fastjsonschema.JsonSchemaValueException as exc:
        path = exc.path[1:]  # drop the leading "data"
        detail = exc.message.removeprefix(exc.name).strip() or exc.message
        raise JsonFormatError(_json_path(data, path), detail) from None
    documents = []
    for d in data["documents"]:
        sentences = []
        for s in d["sentences"]:
            clauses = [
                Clause(
                    cl["text"],
                    event_id=_int(cl.get("eventid")),
                    time_slot=_int(cl.get("timeslot")),
                    tense=cl.get("tense"),
                    perfect=cl.get("perfect"),
                    progressive=cl.get("progressive"),
                    e=_int(cl.get("E")),
                    r=_int(cl.get("R")),
                    s=_int(cl.get("S")),
                    reference=cl.get("reference"),
                )
                for cl in s["clauses"]
            ]
            sentences.append(Sentence(tuple(clauses)))
        documents.append(Document(d["id"], tuple(sentences)))
    return Corpus(tuple(documents))


def from_json(text: str) -> Corpus:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise JsonFormatError("$", f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return corpus_from_dict(data)
