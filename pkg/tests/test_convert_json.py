import json
import random

import pytest
from hypothesis import given, settings

from conftest import load
from corpus_gen import corpora, random_corpus
from tieml import Corpus
from tieml.convert import JsonFormatError, from_json, to_json
from tieml.convert.jsonfmt import corpus_schema


def test_simple_past_fields():
    corpus = load("simple_past")
    data = json.loads(to_json(corpus))
    clause = data["documents"][0]["sentences"][0]["clauses"][0]
    assert (clause["E"], clause["R"], clause["S"]) == (-1, -1, 0)
    assert clause["eventid"] is None
    assert from_json(to_json(corpus)) == corpus


def test_empty_corpus():
    assert to_json(Corpus()) == '{"documents":[]}'
    assert from_json('{"documents":[]}') == Corpus()


def test_rtl_kept_unescaped():
    text = to_json(load("arabic"))
    assert "التقى أحمد بصديقه" in text


@pytest.mark.parametrize("payload, path", [
    ({"documents": [{"id": "a", "sentences": [{"clauses": [{"text": "x", "E": 5}]}]}]},
     "$.documents[0].sentences[0].clauses[0].E"),
    ({"documents": [{"id": "a", "sentences": [{"clauses": [{"text": "x", "eventid": 0}]}]}]},
     "$.documents[0].sentences[0].clauses[0].eventid"),
    ({"documents": [{"id": "a", "sentences": [{"clauses": [{"text": "x", "perfect": "TRUE"}]}]}]},
     "$.documents[0].sentences[0].clauses[0].perfect"),
    ({"documents": [{"id": "a", "sentences": [{"clauses": [{"txt": "x"}]}]}]},
     "$.documents[0].sentences[0].clauses[0]"),
    ({"documents": [{"id": "a", "sentences": []}]}, "$.documents[0].sentences"),
    ({"docs": []}, "$"),
])
def test_schema_violations_report_path(payload, path):
    with pytest.raises(JsonFormatError) as info:
        from_json(json.dumps(payload))
    assert info.value.path == path


def test_malformed_json():
    with pytest.raises(JsonFormatError) as info:
        from_json("{")
    assert info.value.path == "$"


def test_boolean_is_not_integer():
    bad = {"documents": [{"id": "a", "sentences": [{"clauses": [{"text": "x", "E": True}]}]}]}
    with pytest.raises(JsonFormatError):
        from_json(json.dumps(bad))


def test_schema_is_loadable():
    assert corpus_schema()["title"] == "TIE-ML corpus"


@settings(max_examples=100, deadline=None)
@given(corpora())
def test_round_trip_property(corpus):
    assert from_json(to_json(corpus)) == corpus


def test_round_trip_random():
    rng = random.Random(3)
    for _ in range(50):
        corpus = random_corpus(rng)
        assert from_json(to_json(corpus, indent=2)) == corpus
