"""Surface realization: constituent trees to English sentences.

Inflection is table-first (irregular verbs, irregular plurals, the pronoun
paradigm, the paradigm of "be"), with regular rules as the fallback. The
tree is linearized depth-first; tokens opening with a comma or apostrophe
attach to the word on their left.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import SchemaError
from .solution import CandidateSolution, Constituent, Features

SCHEMA_MORPH = "ontogen-morph/1"

_VOWELS = "aeiou"
_SIBILANT_ENDINGS = ("s", "x", "z", "ch", "sh")
_TERMINAL = {"declarative": ".", "interrogative": "?", "imperative": "!"}
_MODALS = frozenset({"will", "would", "can", "could", "shall", "should",
                     "may", "might", "must"})


@dataclass(frozen=True)
class MorphTables:
    irregular_verbs: dict[str, dict[str, str]]
    irregular_plurals: dict[str, str]
    pronouns: dict[str, dict[str, str]]
    be_forms: dict[str, dict[str, str]]
    an_before: frozenset[str]
    a_before: frozenset[str]


def parse_morphology(doc: dict, source: str = "<morphology>") -> MorphTables:
    if not isinstance(doc, dict):
        raise SchemaError("morphology document must be an object", source)
    if doc.get("schema") != SCHEMA_MORPH:
        raise SchemaError(f"expected schema {SCHEMA_MORPH!r}, got {doc.get('schema')!r}",
                          source)
    verbs = doc.get("irregular-verbs", {})
    plurals = doc.get("irregular-plurals", {})
    pronouns = doc.get("pronouns", {})
    be_forms = doc.get("be", {})
    for name, table in (("irregular-verbs", verbs), ("irregular-plurals", plurals),
                        ("pronouns", pronouns), ("be", be_forms)):
        if not isinstance(table, dict):
            raise SchemaError(f"{name} must be an object", source)
    for lemma, forms in verbs.items():
        if not isinstance(forms, dict) or "past" not in forms:
            raise SchemaError(f"irregular verb {lemma!r} needs at least a past form",
                              source)
    return MorphTables(
        irregular_verbs=verbs,
        irregular_plurals=plurals,
        pronouns=pronouns,
        be_forms=be_forms,
        an_before=frozenset(doc.get("an-before", ())),
        a_before=frozenset(doc.get("a-before", ())),
    )


def load_morphology(path: str | Path) -> MorphTables:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as err:
        raise SchemaError(f"not valid JSON: {err}", str(path)) from err
    return parse_morphology(doc, source=str(path))


def bundled_morphology() -> MorphTables:
    return load_morphology(Path(__file__).parent / "data" / "morphology.json")


# ---------------------------------------------------------------------------
# inflection

def _doubles_final(lemma: str) -> bool:
    # one-syllable consonant-vowel-consonant stems double: stop -> stopped
    if len(lemma) < 3:
        return False
    a, b, c = lemma[-3], lemma[-2], lemma[-1]
    if a in _VOWELS or b not in _VOWELS or c in _VOWELS or c in "wxy":
        return False
    return len(re.findall(f"[{_VOWELS}]+", lemma)) == 1


def _regular_past(lemma: str) -> str:
    if lemma.endswith("e"):
        return lemma + "d"
    if lemma.endswith("y") and len(lemma) > 1 and lemma[-2] not in _VOWELS:
        return lemma[:-1] + "ied"
    if _doubles_final(lemma):
        return lemma + lemma[-1] + "ed"
    return lemma + "ed"


def _regular_third(lemma: str) -> str:
    if lemma.endswith(_SIBILANT_ENDINGS) or lemma.endswith("o"):
        return lemma + "es"
    if lemma.endswith("y") and len(lemma) > 1 and lemma[-2] not in _VOWELS:
        return lemma[:-1] + "ies"
    return lemma + "s"


def _regular_plural(noun: str) -> str:
    if noun.endswith(_SIBILANT_ENDINGS) or noun.endswith("o"):
        return noun + "es"
    if noun.endswith("y") and len(noun) > 1 and noun[-2] not in _VOWELS:
        return noun[:-1] + "ies"
    if noun.endswith("f"):
        return noun[:-1] + "ves"
    if noun.endswith("fe"):
        return noun[:-2] + "ves"
    return noun + "s"


def _be_form(tables: MorphTables, features: Features) -> str:
    tense = features.tense or "present"
    if tense == "future":
        return "will be"
    person = features.person or 3
    number = features.number or "singular"
    table = tables.be_forms.get(tense, {})
    return table.get(f"{person}-{number}", "is" if tense == "present" else "was")


def inflect_verb(tables: MorphTables, lemma: str, features: Features) -> str:
    """The finite or requested non-finite form of a verb lemma."""
    if features.verb_form == "base" or lemma in _MODALS:
        return lemma
    if lemma == "be":
        if features.verb_form == "participle":
            return tables.be_forms.get("participle", "been")
        return _be_form(tables, features)
    irregular = tables.irregular_verbs.get(lemma, {})
    if features.verb_form == "participle":
        return irregular.get("participle", irregular.get("past", _regular_past(lemma)))
    tense = features.tense or "present"
    if tense == "past":
        return irregular.get("past", _regular_past(lemma))
    if tense == "future":
        return "will " + lemma
    if (features.person or 3) == 3 and (features.number or "singular") == "singular":
        return irregular.get("third", _regular_third(lemma))
    return lemma


def pluralize(tables: MorphTables, noun: str) -> str:
    return tables.irregular_plurals.get(noun, _regular_plural(noun))


def pronoun_form(tables: MorphTables, lemma: str, case: str | None) -> str:
    paradigm = tables.pronouns.get(lemma.lower())
    if paradigm is None:
        return lemma
    return paradigm.get(case or "subjective", lemma)


def indefinite_article(tables: MorphTables, next_word: str) -> str:
    """"a" or "an" for the word that follows, exception lists first."""
    lowered = next_word.lower()
    if lowered in tables.an_before:
        return "an"
    if lowered in tables.a_before:
        return "a"
    return "an" if lowered[:1] in _VOWELS else "a"


# ---------------------------------------------------------------------------
# linearization

def _leaf_token(tables: MorphTables, leaf: Constituent) -> str:
    lemma = leaf.lemma or ""
    if leaf.pronoun:
        return pronoun_form(tables, lemma, leaf.features.case)
    if leaf.function in ("main-verb", "auxiliary"):
        return inflect_verb(tables, lemma, leaf.features)
    if leaf.function == "noun-head" and not leaf.proper:
        if leaf.features.number == "plural":
            return pluralize(tables, lemma)
    return lemma


def _tokens(tables: MorphTables, node: Constituent) -> list[str]:
    if node.is_leaf:
        token = _leaf_token(tables, node)
        return [token] if token else []
    out: list[str] = []
    for child in node.children:
        out.extend(_tokens(tables, child))
    return out


def _resolve_articles(tables: MorphTables, tokens: list[str]) -> list[str]:
    out = []
    for index, token in enumerate(tokens):
        if token == "a" and index + 1 < len(tokens):
            head = tokens[index + 1].split()[0] if tokens[index + 1] else ""
            token = indefinite_article(tables, head) if head else token
        out.append(token)
    return out


def _join(tokens: list[str]) -> str:
    text = ""
    for token in tokens:
        if not text:
            text = token
        elif token.startswith(",") or token.startswith("'"):
            text += token
        else:
            text += " " + token
    return text


def _capitalize(text: str) -> str:
    for index, char in enumerate(text):
        if char.isalpha():
            return text[:index] + char.upper() + text[index + 1:]
    return text


def realize(solution: CandidateSolution, tables: MorphTables) -> str:
    """The finished sentence; also stored on the solution."""
    tokens = _tokens(tables, solution.root)
    tokens = _resolve_articles(tables, tokens)
    text = _capitalize(_join(tokens))
    text += _TERMINAL.get(solution.mood, ".")
    solution.sentence = text
    return text
