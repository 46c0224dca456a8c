"""Aggregate corpus statistics."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .model import Corpus
from .reichenbach import classify_tense, traditional_label
from .timeline import build_timeline, inversion_count


@dataclass
class CorpusStats:
    documents: int = 0
    sentences: int = 0
    clauses: int = 0
    events: int = 0
    tensed_clauses: int = 0
    triple_clauses: int = 0
    tenses: Counter = field(default_factory=Counter)
    categories: Counter = field(default_factory=Counter)
    inverted_documents: int = 0
    inversions: int = 0

    @property
    def inverted_fraction(self) -> float:
        return self.inverted_documents / self.documents if self.documents else 0.0

    @property
    def mean_inversions(self) -> float:
        return self.inversions / self.documents if self.documents else 0.0

    def add(self, corpus: Corpus) -> CorpusStats:
        for document in corpus.documents:
            self.documents += 1
            self.sentences += len(document.sentences)
            for clause in document.clauses():
                self.clauses += 1
                if clause.event_id is not None:
                    self.events += 1
                if clause.tense is not None:
                    self.tensed_clauses += 1
                    self.tenses[clause.tense.closed or clause.tense.raw] += 1
                if clause.triple is not None:
                    self.triple_clauses += 1
                    self.categories[traditional_label(classify_tense(clause.triple))] += 1
            try:
                n = inversion_count(build_timeline(document))
            except ValueError:
                # duplicate event ids: no well-defined timeline
                n = 0
            self.inversions += n
            self.inverted_documents += n > 0
        return self

    def to_dict(self) -> dict:
        return {
            "documents": self.documents,
            "sentences": self.sentences,
            "clauses": self.clauses,
            "events": self.events,
            "tensed_clauses": self.tensed_clauses,
            "triple_clauses": self.triple_clauses,
            "tenses": dict(sorted(self.tenses.items())),
            "categories": dict(sorted(self.categories.items())),
            "inverted_fraction": self.inverted_fraction,
            "mean_inversions": self.mean_inversions,
        }

    def to_table(self) -> str:
        rows = [
            ("documents", self.documents),
            ("sentences", self.sentences),
            ("clauses", self.clauses),
            ("annotated events", self.events),
            ("tensed clauses", self.tensed_clauses),
            ("clauses with E/R/S", self.triple_clauses),
        ]
        rows += [(f"tense {k}", v) for k, v in sorted(self.tenses.items())]
        rows += [(f"category {k}", v) for k, v in sorted(self.categories.items())]
        rows += [
            ("documents with inversions", f"{self.inverted_fraction:.3f}"),
            ("mean inversions/document", f"{self.mean_inversions:.3f}"),
        ]
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def corpus_stats(*corpora: Corpus) -> CorpusStats:
    stats = CorpusStats()
    for corpus in corpora:
        stats.add(corpus)
    return stats
