"""Shared fixtures: a small deterministic lexicon and corpora."""

import pytest

from claimforge.lexedit import Lexicon
from claimforge.searchenv import Corpus


@pytest.fixture(scope="session")
def lexicon() -> Lexicon:
    """Hand-built lexicon used by most unit tests."""
    lex = Lexicon()
    for word in ("earth", "cat", "dog", "home", "fox", "wolf"):
        lex.add_pos(word, "NOUN")
    for word, tag in (("is", "VERB"), ("ran", "VERB"), ("run", "VERB"), ("runs", "VERB")):
        lex.add_pos(word, tag)
    for word in ("flat", "level", "big"):
        lex.add_pos(word, "ADJ")
    lex.add_pos("quickly", "ADV")
    for word in ("the", "a", "he", "it"):
        lex.add_pos(word, "STOP")
    lex.add_synonyms("flat", ["level", "even"])
    lex.add_synonyms("earth", ["world", "globe"])
    lex.add_synonyms("cat", ["feline"])
    lex.add_synonyms("quickly", ["rapidly"])
    lex.add_verb_form("ran", "run")
    lex.add_verb_form("runs", "run")
    lex.add_verb_form("is", "be")
    return lex


@pytest.fixture()
def tiny_corpus() -> Corpus:
    docs = {
        "d1": "cat sat",
        "d2": "dog sat",
        "d3": "cat cat",
    }
    return Corpus(docs=docs, relevance={"c1": {"d1", "d3"}})


@pytest.fixture(scope="session")
def the_the_cat_corpus() -> Corpus:
    """Corpus where 'the the cat' improves strictly under two removals.

    Verified by hand against the Okapi oracle: AP@50 goes 1/3 -> 1/2 -> 1.
    """
    docs = {
        "rel": "cat",
        "c2": "cat dog",
        "c3": "cat bird owl",
        "t1": "the wolf",
        "t2": "the fox fox fox fox",
    }
    return Corpus(docs=docs, relevance={"ttc": {"rel"}})
