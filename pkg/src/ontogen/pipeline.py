"""Lexical selection: from a meaning representation to scored candidate sets.

Six stages run in a fixed order: extract candidate senses per frame,
manage referring expressions, aggregate the cartesian product into
candidate sets, prune semantically (with an additive score ledger),
prune syntactically, and expand synonyms. Every score delta and every
exclusion is recorded, so a set's score is fully explained by its ledger.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .config import GenerationConfig
from .errors import AllSetsPruned, NoRealizableSense
from .knowledge import (
    ANYTHING,
    Constraint,
    FacetedConstraint,
    KnowledgeBase,
    LexSense,
    MatchDegree,
    RangeConstraint,
    SemFrame,
    SynNode,
    VarBinding,
    match_degree,
)
from .tmr import CASE_ROLES, RESERVED_SLOTS, ConceptRef, InstanceRef, Tmr, TmrFrame

DETERMINERS = ("indefinite", "definite", "some", "bare", "none")


@dataclass(frozen=True)
class ReferenceDecoration:
    """How a nominal should be realized: article choice or a pronoun form."""

    determiner: str = "none"
    pronoun_form: str | None = None
    modifiers: tuple[tuple[str, object], ...] = ()

    def __post_init__(self):
        if self.determiner not in DETERMINERS:
            raise ValueError(f"bad determiner {self.determiner!r}")
        if self.pronoun_form is not None and self.determiner != "none":
            raise ValueError("a pronoun form excludes a determiner")


@dataclass(frozen=True)
class LedgerEntry:
    rule: str
    delta: float
    note: str = ""


@dataclass(frozen=True)
class CandidateSense:
    """One sense option for one unit, with any reference decoration applied."""

    sense: LexSense
    frame_id: str
    unit_key: str
    decoration: ReferenceDecoration | None = None
    lemma_override: str | None = None
    proper: bool = False
    ledger: tuple[LedgerEntry, ...] = ()

    @property
    def lemma(self) -> str:
        return self.lemma_override or self.sense.headword

    @property
    def is_pronoun(self) -> bool:
        if self.sense.reference is not None:
            return True
        return self.decoration is not None and self.decoration.pronoun_form is not None

    def describe(self) -> str:
        text = self.sense.id
        if self.lemma_override:
            text += f"({self.lemma_override})"
        if self.decoration:
            if self.decoration.pronoun_form:
                text += f"[{self.decoration.pronoun_form}]"
            elif self.decoration.determiner != "none":
                text += f"[{self.decoration.determiner}]"
        return text


@dataclass
class Unit:
    """One thing to express: a TMR frame, or one property slot of a frame."""

    key: str
    frame_id: str
    kind: str = "frame"  # frame | modifier
    prop: str | None = None
    value: object | None = None
    candidates: list[CandidateSense] = field(default_factory=list)


@dataclass
class CandidateSet:
    """One chosen sense per unit plus the merged explanation ledger."""

    choices: dict[str, CandidateSense]
    ledger: list[tuple[str, LedgerEntry]] = field(default_factory=list)
    voice: str = "active"

    @property
    def score(self) -> float:
        return sum(entry.delta for _, entry in self.ledger)

    def signature(self) -> str:
        return " ".join(f"{key}={choice.describe()}" for key, choice in self.choices.items())

    def add(self, unit_key: str, rule: str, delta: float, note: str = "") -> None:
        self.ledger.append((unit_key, LedgerEntry(rule=rule, delta=delta, note=note)))

    def clone(self) -> CandidateSet:
        copy = CandidateSet(choices=dict(self.choices), ledger=list(self.ledger),
                            voice=self.voice)
        return copy


@dataclass(frozen=True)
class TraceRecord:
    stage: str
    set_signature: str
    subject: str
    rule: str
    note: str = ""


@dataclass
class SelectionResult:
    sets: list[CandidateSet]
    units: list[Unit]
    trace: list[TraceRecord]
    messages: list[str]
    counts: dict[str, int]


# ---------------------------------------------------------------------------
# stage 1: extract candidate senses

def extract_candidates(tmr: Tmr, kb: KnowledgeBase) -> list[Unit]:
    """Per frame, every sense headed by its concept (or nearest lexicalized
    ancestor), plus modifier units for lexicalizable property slots."""
    units: list[Unit] = []
    for frame in tmr.frames:
        concept = frame.concept
        senses = kb.lexicon.senses_by_head_concept(concept)
        note = ""
        if not senses:
            for ancestor in kb.ontology.ancestors(concept):
                if ancestor == concept:
                    continue
                senses = kb.lexicon.senses_by_head_concept(ancestor)
                if senses:
                    note = f"no sense heads {concept}; using ancestor {ancestor}"
                    break
        if not senses:
            raise NoRealizableSense(frame.instance_id, concept)
        unit = Unit(key=frame.instance_id, frame_id=frame.instance_id)
        for sense in senses:
            ledger = (LedgerEntry("ancestor-fallback", 0.0, note),) if note else ()
            unit.candidates.append(CandidateSense(sense=sense, frame_id=frame.instance_id,
                                                  unit_key=unit.key, ledger=ledger))
        units.append(unit)
        units.extend(_modifier_units(frame, kb))
    return units


def _modifier_units(frame: TmrFrame, kb: KnowledgeBase) -> list[Unit]:
    out = []
    for prop in sorted(frame.slots):
        if prop in RESERVED_SLOTS or prop in CASE_ROLES or prop.endswith("-OF"):
            continue
        value = frame.get(prop)
        if isinstance(value, InstanceRef):
            continue
        query = value.name if isinstance(value, ConceptRef) else value
        senses = kb.lexicon.senses_for_property(kb.ontology, prop, query)
        if not senses:
            continue
        key = f"{frame.instance_id}/{prop}"
        unit = Unit(key=key, frame_id=frame.instance_id, kind="modifier",
                    prop=prop, value=query)
        unit.candidates = [CandidateSense(sense=s, frame_id=frame.instance_id, unit_key=key)
                           for s in senses]
        out.append(unit)
    return out


# ---------------------------------------------------------------------------
# stage 2: manage referring expressions

def _is_a_safe(kb: KnowledgeBase, concept: str, ancestor: str) -> bool:
    onto = kb.ontology
    return onto.exists(concept) and onto.exists(ancestor) and onto.is_a(concept, ancestor)


def _participant(tmr: Tmr, frame: TmrFrame, participant_id: str | None) -> bool:
    if participant_id is None:
        return False
    return frame.instance_id == participant_id or frame.coref == participant_id


def _frame_name(frame: TmrFrame, tmr: Tmr, kb: KnowledgeBase) -> str | None:
    name = frame.get("HAS-NAME")
    if isinstance(name, str):
        return name
    for candidate in (frame.instance_id, frame.coref):
        if candidate:
            name = kb.memory.name_of(candidate)
            if name:
                return name
    return None


def _frame_gender(frame: TmrFrame, kb: KnowledgeBase) -> str | None:
    gender = frame.get("GENDER")
    if isinstance(gender, str):
        return gender
    for candidate in (frame.instance_id, frame.coref):
        if candidate:
            gender = kb.memory.gender_of(candidate)
            if gender:
                return gender
    return None


def _pronoun_candidates(unit: Unit, person: int, number: str, gender: str | None,
                        bonus: float) -> list[CandidateSense]:
    out = []
    for cand in unit.candidates:
        ref = cand.sense.reference
        if ref is None or ref.person != person or ref.number != number:
            continue
        if ref.gender is not None and ref.gender != gender:
            continue
        ledger = cand.ledger
        if bonus:
            ledger = ledger + (LedgerEntry("reference-pronoun", bonus,
                                           "pronoun preferred for a known referent"),)
        out.append(replace(cand, decoration=ReferenceDecoration(), ledger=ledger))
    return out


def _described(cand: CandidateSense, determiner: str,
               modifiers: tuple[tuple[str, object], ...]) -> CandidateSense:
    return replace(cand, decoration=ReferenceDecoration(determiner=determiner,
                                                        modifiers=modifiers))


def _name_candidate(unit: Unit, name: str, concept: str) -> CandidateSense:
    sense = LexSense(
        id=f"{name.lower()}-pn1",
        headword=name,
        pos="n",
        syn_struc=(SynNode(category="n", var=0),),
        sem_struc=SemFrame(head=concept, slots={}),
        definition=f"proper name of a remembered {concept}",
    )
    return CandidateSense(sense=sense, frame_id=unit.frame_id, unit_key=unit.key,
                          decoration=ReferenceDecoration(), proper=True)


def manage_reference(units: list[Unit], tmr: Tmr, kb: KnowledgeBase,
                     config: GenerationConfig, context: tuple[str, ...] = ()) -> list[Unit]:
    """Prune person/number/gender-incompatible senses and decorate the rest
    with article or pronoun instructions."""
    mods_by_frame: dict[str, list[Unit]] = {}
    for unit in units:
        if unit.kind == "modifier":
            mods_by_frame.setdefault(unit.frame_id, []).append(unit)

    out: list[Unit] = []
    for unit in units:
        if unit.kind != "frame":
            out.append(unit)
            continue
        frame = tmr.by_id[unit.frame_id]
        concept = frame.concept
        modifiers = tuple((m.prop, m.value) for m in mods_by_frame.get(unit.frame_id, ()))
        number = "plural" if frame.plural else "singular"
        in_context = frame.instance_id in context or (frame.coref in context
                                                      if frame.coref else False)
        known = (kb.memory.knows(frame.instance_id) or frame.coref is not None
                 or in_context)

        if _is_a_safe(kb, concept, "EVENT"):
            out.append(unit)
            continue

        if _participant(tmr, frame, tmr.speaker_id) or _participant(tmr, frame, tmr.hearer_id):
            person = 1 if _participant(tmr, frame, tmr.speaker_id) else 2
            chosen = _pronoun_candidates(unit, person, number, _frame_gender(frame, kb), 0.0)
            if chosen:
                unit.candidates = chosen
                out.append(unit)
                continue
            # degenerate lexicon without the pronoun: fall through to description

        if _is_a_safe(kb, concept, "HUMAN"):
            name = _frame_name(frame, tmr, kb)
            gender = _frame_gender(frame, kb)
            chosen: list[CandidateSense] = []
            if name:
                chosen.append(_name_candidate(unit, name, concept))
                if in_context:
                    chosen.extend(_pronoun_candidates(unit, 3, number, gender,
                                                      config.pronoun_bonus))
            elif known:
                chosen.extend(_pronoun_candidates(unit, 3, number, gender,
                                                  config.pronoun_bonus))
                chosen.extend(_described(c, "definite", modifiers)
                              for c in unit.candidates if c.sense.reference is None)
            else:
                determiner = "indefinite" if number == "singular" else "some"
                chosen.extend(_described(c, determiner, modifiers)
                              for c in unit.candidates if c.sense.reference is None)
            unit.candidates = chosen
            out.append(unit)
            continue

        # non-human objects
        plain = [c for c in unit.candidates if c.sense.reference is None]
        chosen = []
        if known:
            chosen.extend(_described(c, "definite", modifiers) for c in plain)
            if frame.coref is not None and plain:
                # pronominalization needs an explicit coreference link; base
                # the clone on a sense that asserts nothing beyond its head,
                # so the pronoun is not hostage to another sense's content
                base = next((c for c in plain
                             if all(isinstance(v, VarBinding)
                                    for v in c.sense.sem_struc.slots.values())),
                            plain[0])
                pron = "they" if number == "plural" else "it"
                ledger = base.ledger + (LedgerEntry(
                    "reference-pronoun", config.pronoun_bonus,
                    "pronoun preferred for a known referent"),)
                chosen.append(replace(base,
                                      decoration=ReferenceDecoration(pronoun_form=pron,
                                                                     modifiers=modifiers),
                                      ledger=ledger))
        elif number == "plural":
            for c in plain:
                chosen.append(_described(c, "some", modifiers))
                chosen.append(_described(c, "bare", modifiers))
        else:
            chosen.extend(_described(c, "indefinite", modifiers) for c in plain)
        unit.candidates = chosen or plain
        out.append(unit)
    return out


# ---------------------------------------------------------------------------
# stage 3: aggregate into candidate sets

def aggregate_sets(units: list[Unit], config: GenerationConfig) -> tuple[list[CandidateSet], list[str]]:
    """Cartesian product, one candidate per unit, truncated at the cap."""
    messages: list[str] = []
    total = 1
    for unit in units:
        total *= max(len(unit.candidates), 1)
    if total > config.set_cap:
        messages.append(f"candidate product {total} exceeds cap {config.set_cap}; truncated")

    sets: list[CandidateSet] = []
    indexes = [0] * len(units)
    while True:
        choices = {}
        for unit, idx in zip(units, indexes):
            if unit.candidates:
                choices[unit.key] = unit.candidates[idx]
        cs = CandidateSet(choices=choices)
        for key, choice in choices.items():
            for entry in choice.ledger:
                cs.ledger.append((key, entry))
        sets.append(cs)
        if len(sets) >= config.set_cap:
            break
        pos = len(units) - 1
        while pos >= 0:
            if not units[pos].candidates:
                pos -= 1
                continue
            indexes[pos] += 1
            if indexes[pos] < len(units[pos].candidates):
                break
            indexes[pos] = 0
            pos -= 1
        if pos < 0:
            break
    return sets, messages


# ---------------------------------------------------------------------------
# stage 4: semantic pruning and scoring

def _constraint_text(constraint: Constraint) -> str:
    from .knowledge import ConceptConstraint, LiteralConstraint
    if isinstance(constraint, ConceptConstraint):
        return constraint.concept
    if isinstance(constraint, LiteralConstraint):
        return "|".join(constraint.values)
    if isinstance(constraint, RangeConstraint):
        return f"[{constraint.low}, {constraint.high}]"
    return "anything"


def _filler_concept(value) -> str | None:
    if isinstance(value, InstanceRef):
        from .tmr import concept_of
        return concept_of(value.id)
    if isinstance(value, ConceptRef):
        return value.name
    return None


_DEGREE_RULES = {
    MatchDegree.EXACT: ("slot-exact", "exact_bonus"),
    MatchDegree.NARROW: ("slot-narrow", "narrow_bonus"),
    MatchDegree.DEFAULT: ("slot-default", "default_bonus"),
}


def _score_binding(cs: CandidateSet, choice: CandidateSense, frame: TmrFrame,
                   prop: str, binding: VarBinding, kb: KnowledgeBase,
                   config: GenerationConfig) -> str | None:
    filler = frame.get(prop)
    if filler is None:
        return None
    concept = _filler_concept(filler)
    if concept is None:
        return None
    base = kb.ontology.constraint_on(choice.sense.sem_struc.head, prop)
    degree = match_degree(kb.ontology, concept, base, binding.override)
    if degree is MatchDegree.NONE:
        effective = binding.override.effective_sem if binding.override and binding.override.sem \
            else base.effective_sem
        return f"{prop} {concept} violates {_constraint_text(effective)}"
    hit = _DEGREE_RULES.get(degree)
    if hit:
        rule, attr = hit
        cs.add(choice.unit_key, rule, getattr(config, attr),
               f"{prop} {concept} matches at degree {degree.name.lower()}")
    return None


def _score_feature(cs: CandidateSet, choice: CandidateSense, prop: str,
                   declared: float, actual, config: GenerationConfig) -> str | None:
    if not isinstance(actual, (int, float)):
        return None
    dist = abs(float(actual) - declared)
    if dist > config.feature_tolerance + 1e-9:
        return f"{prop} {declared:g} is too far from the specified {float(actual):g}"
    bonus = int(round((1.0 - dist / config.feature_tolerance) * config.feature_bonus))
    if bonus:
        cs.add(choice.unit_key, "feature-match", bonus,
               f"{prop} {declared:g} within tolerance of {float(actual):g}")
    return None


def _score_assertion(cs: CandidateSet, choice: CandidateSense, frame: TmrFrame,
                     prop: str, constraint: Constraint, kb: KnowledgeBase,
                     config: GenerationConfig) -> str | None:
    value = frame.get(prop)
    if value is None:
        return f"asserts {prop} {_constraint_text(constraint)}, absent from the meaning"
    filler = _filler_concept(value)
    if filler is None:
        filler = value
    if kb.ontology.satisfies(filler, constraint):
        cs.add(choice.unit_key, "content-match", config.exact_bonus,
               f"asserted {prop} {_constraint_text(constraint)} is present in the meaning")
        return None
    return f"asserts {prop} {_constraint_text(constraint)} but the meaning has {filler}"


def _score_modifier(cs: CandidateSet, choice: CandidateSense, value,
                    config: GenerationConfig) -> str | None:
    slot = choice.sense.sem_struc.slots.get(cs_prop := choice.unit_key.split("/", 1)[1])
    if isinstance(slot, float) and isinstance(value, (int, float)):
        dist = abs(float(value) - slot)
    elif isinstance(slot, RangeConstraint) and isinstance(value, (int, float)):
        v = float(value)
        dist = 0.0 if slot.low <= v <= slot.high else min(abs(v - slot.low), abs(v - slot.high))
    else:
        dist = 0.0
    if dist > config.feature_tolerance + 1e-9:
        return f"{cs_prop} value {value} is outside the sense's range"
    bonus = int(round((1.0 - dist / config.feature_tolerance) * config.feature_bonus))
    if bonus:
        cs.add(choice.unit_key, "feature-match", bonus,
               f"{cs_prop} {value} fits the modifier")
    return None


def _uncovered_slots(cs: CandidateSet, units_by_frame: dict[str, list[Unit]],
                     tmr: Tmr, config: GenerationConfig) -> None:
    for frame in tmr.frames:
        choice = cs.choices.get(frame.instance_id)
        if choice is None:
            continue
        mentioned = set(choice.sense.sem_struc.slots)
        for unit in units_by_frame.get(frame.instance_id, ()):
            if unit.kind == "modifier" and unit.key in cs.choices:
                mentioned.add(unit.prop)
        for prop in frame.slots:
            if prop in RESERVED_SLOTS or prop.endswith("-OF") or prop in mentioned:
                continue
            cs.add(frame.instance_id, "uncovered-slot", -config.uncovered_penalty,
                   f"{prop} is not expressed by {choice.sense.id}")


def prune_semantic(sets: list[CandidateSet], units: list[Unit], tmr: Tmr,
                   kb: KnowledgeBase, config: GenerationConfig,
                   trace: list[TraceRecord]) -> list[CandidateSet]:
    """Kill sets whose senses assert content the meaning lacks or contradicts;
    bonus exact/narrow/default matches and in-tolerance feature values."""
    units_by_frame: dict[str, list[Unit]] = {}
    for unit in units:
        units_by_frame.setdefault(unit.frame_id, []).append(unit)

    survivors: list[CandidateSet] = []
    for cs in sets:
        failure: tuple[str, str, str] | None = None
        for key, choice in cs.choices.items():
            unit_kind_mod = "/" in key
            if unit_kind_mod:
                value = next(u.value for u in units if u.key == key)
                reason = _score_modifier(cs, choice, value, config)
                if reason:
                    failure = (f"{key}/{choice.sense.id}", "feature-mismatch", reason)
                    break
                continue
            frame = tmr.by_id[choice.frame_id]
            kind = "argument-mismatch" if choice.sense.is_argument_taking else "content-mismatch"
            for prop, slot in choice.sense.sem_struc.slots.items():
                if isinstance(slot, VarBinding):
                    reason = _score_binding(cs, choice, frame, prop, slot, kb, config)
                    rule = kind
                elif isinstance(slot, float):
                    reason = _score_feature(cs, choice, prop, slot, frame.get(prop), config)
                    rule = "feature-mismatch"
                else:
                    reason = _score_assertion(cs, choice, frame, prop, slot, kb, config)
                    rule = kind
                if reason:
                    failure = (f"{choice.frame_id}/{choice.sense.id}", rule, reason)
                    break
            if failure:
                break
        if failure:
            subject, rule, reason = failure
            trace.append(TraceRecord(stage="semantic", set_signature=cs.signature(),
                                     subject=subject, rule=rule, note=reason))
            continue
        _uncovered_slots(cs, units_by_frame, tmr, config)
        survivors.append(cs)
    if not survivors:
        raise AllSetsPruned("every candidate set was excluded on semantic grounds",
                            trace=trace)
    return survivors


# ---------------------------------------------------------------------------
# stage 5: syntactic pruning

_SPEAKER_ROOTS = {"i", "me", "myself"}
_HEARER_ROOTS = {"you", "yourself"}


def _participant_ok(sense: LexSense, node: SynNode, bound_frame: TmrFrame, tmr: Tmr) -> bool:
    word = sense.root_choice(node)
    if word is None:
        return True
    lowered = word.lower()
    if lowered in _SPEAKER_ROOTS:
        return _participant(tmr, bound_frame, tmr.speaker_id)
    if lowered in _HEARER_ROOTS:
        return _participant(tmr, bound_frame, tmr.hearer_id)
    return True


def _check_syntax(cs: CandidateSet, choice: CandidateSense, tmr: Tmr,
                  frame_has_mods: dict[str, bool]) -> tuple[str, str] | None:
    """Return (rule, reason) when this choice cannot stand, else None."""
    sense = choice.sense
    frame = tmr.by_id[choice.frame_id]

    if choice.is_pronoun and frame_has_mods.get(choice.frame_id):
        ref = sense.reference
        if ref is None or ref.person == 3:
            return ("pronoun-with-modifiers",
                    "a modified referent cannot be realized as a pronoun")

    if not sense.is_argument_taking:
        return None

    bound = sense.bound_roles
    transitive = any(n.category == "directobject" for n in sense.syn_struc)
    for node in sense.syn_struc:
        if node.var == 0 or node.var in sense.sem_struc.null_sem:
            continue
        prop = bound.get(node.var)
        if prop is None:
            if node.roots or node.optional:
                continue
            return ("unfillable", f"{node.category} $var{node.var} has no meaning to express")
        filler = frame.get(prop)
        if filler is None:
            if node.optional:
                continue
            if prop == "AGENT" and node.category == "subj" and transitive \
                    and frame.get("THEME") is not None:
                cs.voice = "passive"
                continue
            return ("unfillable",
                    f"{node.category} $var{node.var} needs {prop}, absent from the meaning")
        if isinstance(filler, InstanceRef) and node.roots:
            target = tmr.frame(filler.id)
            if target is not None and not _participant_ok(sense, node, target, tmr):
                return ("participant-mismatch",
                        f"fixed word {sense.root_choice(node)!r} does not fit {filler.id}")
    if frame.get("THEME") is not None and "THEME" not in sense.sem_struc.slots:
        return ("unhosted-theme",
                f"the meaning has a THEME that {sense.id} cannot host")
    return None


def prune_syntactic(sets: list[CandidateSet], units: list[Unit], tmr: Tmr,
                    kb: KnowledgeBase, config: GenerationConfig,
                    trace: list[TraceRecord]) -> list[CandidateSet]:
    """Kill sets in which an obligatory syntactic slot cannot be filled, a
    supplied argument cannot be hosted, or a modified referent is pronominal."""
    frame_has_mods = {u.frame_id: True for u in units if u.kind == "modifier"}
    survivors = []
    for cs in sets:
        failure = None
        for key, choice in cs.choices.items():
            if "/" in key:
                continue
            failure = _check_syntax(cs, choice, tmr, frame_has_mods)
            if failure:
                rule, reason = failure
                trace.append(TraceRecord(stage="syntactic", set_signature=cs.signature(),
                                         subject=f"{choice.frame_id}/{choice.sense.id}",
                                         rule=rule, note=reason))
                break
        if not failure:
            survivors.append(cs)
    if not survivors:
        raise AllSetsPruned("every candidate set was excluded on syntactic grounds",
                            trace=trace)
    return survivors


# ---------------------------------------------------------------------------
# stage 6: synonym expansion

def expand_synonyms(sets: list[CandidateSet]) -> list[CandidateSet]:
    """For every synonym of every chosen sense, clone the set with the head
    lemma replaced; clones inherit the full ledger."""
    out: list[CandidateSet] = []
    for cs in sets:
        out.append(cs)
        for key in cs.choices:
            choice = cs.choices[key]
            for synonym in choice.sense.synonyms:
                clone = cs.clone()
                clone.choices[key] = replace(choice, lemma_override=synonym)
                out.append(clone)
    return out


# ---------------------------------------------------------------------------
# orchestration

def run_lexical_selection(tmr: Tmr, kb: KnowledgeBase, config: GenerationConfig,
                          context: tuple[str, ...] = ()) -> SelectionResult:
    """All six stages in order, with the full trace retained."""
    trace: list[TraceRecord] = []
    if not tmr.frames:
        raise AllSetsPruned("the meaning representation has no frames", trace=trace)
    units = extract_candidates(tmr, kb)
    units = manage_reference(units, tmr, kb, config, context)
    empty = [u.key for u in units if not u.candidates]
    if empty:
        raise AllSetsPruned(f"no referring expression fits: {', '.join(empty)}", trace=trace)
    sets, messages = aggregate_sets(units, config)
    counts = {
        "units": len(units),
        "candidates": sum(len(u.candidates) for u in units),
        "sets": len(sets),
    }
    sets = prune_semantic(sets, units, tmr, kb, config, trace)
    counts["after-semantic"] = len(sets)
    sets = prune_syntactic(sets, units, tmr, kb, config, trace)
    counts["after-syntactic"] = len(sets)
    sets = expand_synonyms(sets)
    counts["after-synonyms"] = len(sets)
    return SelectionResult(sets=sets, units=units, trace=trace,
                           messages=messages, counts=counts)
