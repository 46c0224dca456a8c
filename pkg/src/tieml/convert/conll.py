"""CoNLL-style TSV: one tab-separated row per clause, blank line after each sentence.

Columns: DOC SENT CLAUSE EVENTID TIMESLOT TENSE PERFECT PROGRESSIVE E R S
REFERENCE TEXT. SENT and CLAUSE are 1-based. Absent values are written as
``_``. A present string value that is empty, equals ``_`` or starts with a
backslash is prefixed with one backslash, which keeps every value distinct
from the placeholder. Rows are separated by LF only.
"""

from __future__ import annotations

from ..model import Clause, Corpus, Document, ModelError, Sentence

COLUMNS = (
    "DOC", "SENT", "CLAUSE", "EVENTID", "TIMESLOT", "TENSE", "PERFECT",
    "PROGRESSIVE", "E", "R", "S", "REFERENCE", "TEXT",
)
ABSENT = "_"


class ConllFormatError(ValueError):
    def __init__(self, line: int, detail: str):
        super().__init__(f"line {line}: {detail}")
        self.line = line
        self.detail = detail


def _enc(value) -> str:
    if value is None:
        return ABSENT
    if isinstance(value, bool):
        return "TRUE" if value else "FALSE"
    value = str(value)
    if value in ("", ABSENT) or value.startswith("\\"):
        return "\\" + value
    return value


def _dec(cell: str):
    if cell == ABSENT:
        return None
    if cell.startswith("\\"):
        return cell[1:]
    return cell


def to_conll(c: Corpus) -> str:
    rows = []
    for d in c.documents:
        for si, sentence in enumerate(d.sentences, 1):
            for ci, cl in enumerate(sentence.clauses, 1):
                cells = [
                    _enc(d.id), str(si), str(ci), _enc(cl.event_id), _enc(cl.time_slot),
                    _enc(cl.tense.raw if cl.tense is not None else None),
                    _enc(cl.perfect), _enc(cl.progressive),
                    _enc(cl.e), _enc(cl.r), _enc(cl.s), _enc(cl.reference),
                    # text is never absent, so "_" needs no escape there
                    cl.text,
                ]
                bad = next((c for c in cells if "\t" in c or "\n" in c), None)
                if bad is not None:
                    raise ValueError(f"value contains a tab or newline: {bad!r}")
                rows.append("\t".join(cells))
            rows.append("")
    return "".join(row + "\n" for row in rows)


def _int_cell(lineno: int, name: str, cell: str):
    value = _dec(cell)
    if value is None:
        return None
    try:
        return int(value)
    except ValueError:
        raise ConllFormatError(lineno, f"{name} must be an integer or '_', got {cell!r}") from None


def _bool_cell(lineno: int, name: str, cell: str):
    if cell == ABSENT:
        return None
    if cell.upper() in ("TRUE", "FALSE"):
        return cell.upper() == "TRUE"
    raise ConllFormatError(lineno, f"{name} must be TRUE, FALSE or '_', got {cell!r}")


def from_conll(text: str) -> Corpus:
    documents = []
    doc_id = None
    sentences: list[Sentence] = []
    clauses: list[Clause] = []
    sent_no = None

    def close_sentence():
        nonlocal clauses
        if clauses:
            sentences.append(Sentence(tuple(clauses)))
            clauses = []

    def close_document():
        nonlocal sentences
        close_sentence()
        if sentences:
            documents.append(Document(doc_id, tuple(sentences)))
            sentences = []

    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    for lineno, line in enumerate(lines, 1):
        if line == "":
            close_sentence()
            continue
        cells = line.split("\t")
        if len(cells) != len(COLUMNS):
            raise ConllFormatError(lineno, f"expected {len(COLUMNS)} columns, found {len(cells)}")
        row_doc = _dec(cells[0])
        if row_doc is None:
            raise ConllFormatError(lineno, "DOC must not be '_'")
        try:
            si, ci = int(cells[1]), int(cells[2])
        except ValueError:
            raise ConllFormatError(lineno, "SENT and CLAUSE must be integers") from None
        if not clauses:
            # first row of a sentence: new document on id change or SENT reset
            if doc_id is None or row_doc != doc_id or si == 1:
                close_document()
                doc_id = row_doc
                expected_sent = 1
            else:
                expected_sent = sent_no + 1
            if si != expected_sent:
                raise ConllFormatError(lineno, f"SENT is {si}, expected {expected_sent}")
            sent_no = si
        elif row_doc != doc_id or si != sent_no:
            raise ConllFormatError(lineno, "missing blank line before a new sentence")
        if ci != len(clauses) + 1:
            raise ConllFormatError(lineno, f"CLAUSE is {ci}, expected {len(clauses) + 1}")
        try:
            clause = Clause(
                cells[12],
                event_id=_int_cell(lineno, "EVENTID", cells[3]),
                time_slot=_int_cell(lineno, "TIMESLOT", cells[4]),
                tense=_dec(cells[5]),
                perfect=_bool_cell(lineno, "PERFECT", cells[6]),
                progressive=_bool_cell(lineno, "PROGRESSIVE", cells[7]),
                e=_int_cell(lineno, "E", cells[8]),
                r=_int_cell(lineno, "R", cells[9]),
                s=_int_cell(lineno, "S", cells[10]),
                reference=_dec(cells[11]),
            )
        except ModelError as exc:
            raise ConllFormatError(lineno, str(exc)) from None
        clauses.append(clause)
    close_document()
    return Corpus(tuple(documents))
