"""Ranking: frequency lookup, repetition, tie breaks, deduplication."""
from __future__ import annotations

from dataclasses import replace

import pytest

from conftest import load_fixture
from ontogen import (
    FrequencyTable,
    SchemaError,
    build_solution,
    generate,
    parse_frequency,
    rank,
    realize,
    repetition_count,
    run_lexical_selection,
)


def _solutions(name, kb, config, morph):
    tmr = load_fixture(name)
    result = run_lexical_selection(tmr, kb, config)
    solutions = [build_solution(cs, tmr, kb, result.units) for cs in result.sets]
    for sol in solutions:
        sol.sentence = realize(sol, morph)
    return tmr, solutions


# --- frequency table ----------------------------------------------------------

def test_lookup_prefers_lemma_then_sense_then_default():
    table = FrequencyTable(values={"fix": 0.9, "fix-v2": 0.4}, default=0.2)
    assert table.lookup("fix", "fix-v2") == 0.9
    assert table.lookup("attach", "fix-v2") == 0.4
    assert table.lookup("attach", "attach-v9") == 0.2


def test_frequency_document_validation():
    with pytest.raises(SchemaError):
        parse_frequency({"values": {}})
    with pytest.raises(SchemaError):
        parse_frequency({"schema": "ontogen-freq/1", "values": {"fix": 1.5}})
    with pytest.raises(SchemaError):
        parse_frequency({"schema": "ontogen-freq/1", "values": {"fix": True}})
    with pytest.raises(SchemaError):
        parse_frequency({"schema": "ontogen-freq/1", "values": {}, "default": -0.1})
    table = parse_frequency({"schema": "ontogen-freq/1", "values": {"fix": 1}})
    assert table.lookup("fix", "x") == 1.0


# --- repetition ------------------------------------------------------------------

def test_repetition_counts_whole_word_mentions_only(kb, config, morph):
    _, solutions = _solutions("walk_named_agent", kb, config, morph)
    johnny = next(s for s in solutions if "Johnny" in (s.sentence or ""))
    assert repetition_count(johnny, ()) == 0
    assert repetition_count(johnny, ("Johnny jumped.",)) == 1
    assert repetition_count(johnny, ("Johnny met Johnny's twin.",)) == 2
    # substrings of other words never count
    assert repetition_count(johnny, ("Johnnyson ran.",)) == 0


def test_pronoun_sentences_never_accrue_repetition(kb, config, morph):
    _, solutions = _solutions("walk_named_agent", kb, config, morph)
    for sol in solutions:
        if "Johnny" not in (sol.sentence or ""):
            assert repetition_count(sol, ("Johnny walked.",) * 3) == 0


# --- scoring terms -----------------------------------------------------------------

def test_terms_sum_to_total_and_name_every_contribution(kb, freq, config):
    report = generate(load_fixture("moor_ship"), kb)
    top = report.sentences[0]
    assert top.sentence == "They moored the ship."
    names = [name for name, _ in top.terms]
    assert names == ["pipeline", "frequency", "repetition", "length"]
    by_name = dict(top.terms)
    assert by_name["pipeline"] == 52.0
    assert by_name["frequency"] == pytest.approx(2.75)
    assert by_name["repetition"] == 0.0
    assert by_name["length"] == 0.0
    assert top.total == pytest.approx(sum(by_name.values()))


def test_history_penalty_reranks_a_repeated_name(kb):
    tmr = load_fixture("walk_named_agent")
    quiet = generate(tmr, kb, context=("HUMAN-77",))
    assert quiet.sentences[0].sentence == "He walked."
    with_history = generate(load_fixture("walk_named_agent"), kb,
                            context=("HUMAN-77",),
                            history=("Johnny jumped off the stairs.",))
    sentences = [s.sentence for s in with_history.sentences]
    assert sentences.index("He walked.") < sentences.index("Johnny walked.")
    named = next(s for s in with_history.sentences if s.sentence == "Johnny walked.")
    assert dict(named.terms)["repetition"] == -10.0


# --- ordering -----------------------------------------------------------------------

def test_ranks_are_contiguous_and_order_is_total_then_text(kb):
    report = generate(load_fixture("fasten_painting"), kb)
    assert [s.rank for s in report.sentences] == list(range(1, len(report.sentences) + 1))
    keys = [(-s.total, s.sentence) for s in report.sentences]
    assert keys == sorted(keys)


def test_equal_totals_break_ties_alphabetically(kb):
    report = generate(load_fixture("fasten_painting"), kb)
    by_text = {s.sentence: s for s in report.sentences}
    painting = by_text["Tom secured a painting to the wall."]
    picture = by_text["Tom secured a picture to the wall."]
    assert painting.total == picture.total
    assert painting.rank < picture.rank


def test_length_tie_break_prefers_shorter_sentences(kb, freq, morph, config):
    tmr, solutions = _solutions("fasten_painting", kb, config, morph)
    stretched = replace(config, length_tie_break=0.5)
    report = rank(solutions, tmr, freq, stretched)
    texts = [s.sentence for s in report]
    # "picture" is a letter shorter than "painting", so it now wins the tie
    assert texts.index("Tom secured a picture to the wall.") \
        < texts.index("Tom secured a painting to the wall.")
    lengths = {s.sentence: dict(s.terms)["length"] for s in report}
    assert lengths["Tom secured a picture to the wall."] == -0.5 * len(
        "Tom secured a picture to the wall.")


def test_duplicate_sentences_keep_only_the_best_row(kb, freq, morph, config):
    tmr, solutions = _solutions("moor_ship", kb, config, morph)
    report = rank(solutions + solutions, tmr, freq, config)
    texts = [s.sentence for s in report]
    assert len(texts) == len(set(texts))
    assert report[0].sentence == "They moored the ship."


def test_unrealized_solutions_are_skipped(kb, freq, morph, config):
    tmr, solutions = _solutions("moor_ship", kb, config, morph)
    solutions[0].sentence = None
    report = rank(solutions, tmr, freq, config)
    assert all(s.sentence for s in report)
