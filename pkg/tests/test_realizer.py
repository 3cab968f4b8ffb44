"""Surface realization: morphology tables, agreement, articles, punctuation."""
from __future__ import annotations

import json

import pytest

from conftest import load_fixture
from morphdata import ARTICLE_CASES, PLURAL_CASES, REGULAR_VERBS, VERB_CASES
from ontogen import (
    Features,
    SchemaError,
    generate,
    indefinite_article,
    inflect_verb,
    parse_morphology,
    parse_tmr,
    pluralize,
    pronoun_form,
)


def test_the_tables_cover_at_least_fifty_forms():
    assert len(VERB_CASES) + len(PLURAL_CASES) >= 50
    assert len(ARTICLE_CASES) == 20


@pytest.mark.parametrize("lemma,feature_kwargs,expected", VERB_CASES,
                         ids=[f"{l}-{e}" for l, _, e in VERB_CASES])
def test_verb_inflection(morph, lemma, feature_kwargs, expected):
    assert inflect_verb(morph, lemma, Features(**feature_kwargs)) == expected


@pytest.mark.parametrize("noun,expected", PLURAL_CASES, ids=[n for n, _ in PLURAL_CASES])
def test_noun_plurals(morph, noun, expected):
    assert pluralize(morph, noun) == expected


@pytest.mark.parametrize("word,expected", ARTICLE_CASES, ids=[w for w, _ in ARTICLE_CASES])
def test_indefinite_article(morph, word, expected):
    assert indefinite_article(morph, word) == expected


def _deinflect_past(morph, form: str) -> set[str]:
    """Every bounded inverse of the regular past rules that re-inflects back.
    The mapping is not injective ("pulled" covers both "pul" and "pull"), so
    the inverse is a set."""
    guesses = {form[:-2], form[:-1]}
    if form.endswith("ied"):
        guesses.add(form[:-3] + "y")
    if len(form) >= 5 and form[-3] == form[-4] and form[-3] not in "aeiou":
        guesses.add(form[:-3])
    past = Features(tense="past")
    return {g for g in guesses if g and inflect_verb(morph, g, past) == form}


@pytest.mark.parametrize("lemma", REGULAR_VERBS)
def test_regular_past_round_trips(morph, lemma):
    form = inflect_verb(morph, lemma, Features(tense="past"))
    assert form != lemma
    inverses = _deinflect_past(morph, form)
    assert lemma in inverses
    assert len(inverses) <= 3


def test_pronoun_case_forms(morph):
    assert pronoun_form(morph, "i", "subjective") == "I"
    assert pronoun_form(morph, "i", "objective") == "me"
    assert pronoun_form(morph, "he", "objective") == "him"
    assert pronoun_form(morph, "they", "objective") == "them"
    assert pronoun_form(morph, "you", "objective") == "you"
    assert pronoun_form(morph, "it", "subjective") == "it"
    # unknown lemmas pass through untouched
    assert pronoun_form(morph, "tom", "objective") == "tom"


def test_morphology_document_needs_its_schema_tag():
    with pytest.raises(SchemaError):
        parse_morphology({"irregular-verbs": {}})


# --- agreement in full sentences --------------------------------------------

def _tmr(frames, **extra):
    return parse_tmr(json.dumps({"schema": "ontogen-tmr/1", "frames": frames, **extra}))


def test_present_tense_agrees_with_subject_number(kb):
    plural = _tmr({"WALK-1": {"AGENT": "HUMAN-104"},
                   "HUMAN-104": {"CARDINALITY": 2}})
    # plural cardinality keeps the name off; the description pluralizes
    sentences = [s.sentence for s in generate(plural, kb).sentences]
    assert any(s.endswith("walk.") for s in sentences)

    singular = _tmr({"WALK-1": {"AGENT": "HUMAN-104"}, "HUMAN-104": {}})
    assert generate(singular, kb).sentences[0].sentence == "Tom walks."


def test_past_passive_agrees_with_promoted_subject(kb):
    plural = _tmr({"FASTEN-1": {"THEME": "PICTURE-1", "DESTINATION": "WALL-1",
                                "TIME": "before-reference"},
                   "PICTURE-1": {"THEME-OF": ["FASTEN-1"], "CARDINALITY": 3},
                   "WALL-1": {"DESTINATION-OF": ["FASTEN-1"]}})
    sentences = [s.sentence for s in generate(plural, kb).sentences]
    assert "Paintings were secured to the wall." in sentences
    assert "Some paintings were secured to the wall." in sentences


def test_article_picks_an_before_vowel_initial_nouns(kb):
    tmr = _tmr({"FASTEN-1": {"AGENT": "HUMAN-104", "THEME": "ANCHOR-5",
                             "DESTINATION": "WALL-1", "TIME": "before-reference"},
                "HUMAN-104": {"AGENT-OF": ["FASTEN-1"]},
                "ANCHOR-5": {"THEME-OF": ["FASTEN-1"]},
                "WALL-1": {"DESTINATION-OF": ["FASTEN-1"]}})
    assert generate(tmr, kb).sentences[0].sentence == "Tom secured an anchor to the wall."


def test_synonym_variants_differ_in_exactly_one_position(kb):
    report = generate(load_fixture("fasten_painting"), kb)
    family = sorted(s.sentence for s in report.sentences
                    if "fix-v2" in s.signature and "painting-n1" in s.signature)
    expected = {f"Tom {verb} a painting to the wall."
                for verb in ("fixed", "attached", "fastened", "secured")}
    assert set(family) == expected
    split = [s.split() for s in family]
    for words in split[1:]:
        assert len(words) == len(split[0])
        assert sum(a != b for a, b in zip(words, split[0])) == 1


def test_fixed_commas_attach_to_the_previous_word(kb):
    report = generate(load_fixture("request_blunt"), kb)
    assert report.sentences[0].sentence == "Make dinner, dammit!"


def test_sentences_are_capitalized_and_terminated(kb):
    for name in ("fasten_painting", "moor_ship", "request_polite", "walk_intransitive"):
        for scored in generate(load_fixture(name), kb).sentences:
            text = scored.sentence
            first_alpha = next(c for c in text if c.isalpha())
            assert first_alpha == first_alpha.upper()
            assert text[-1] in ".?!"
            assert "  " not in text
