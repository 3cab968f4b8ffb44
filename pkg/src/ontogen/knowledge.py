"""Static knowledge: the ontology, the lexicon, and episodic memory.

All three stores load from versioned JSON files (schema "ontogen-kb/1")
and are treated as immutable once loaded. The ontology is an acyclic
IS-A graph whose concepts carry faceted property constraints; the
lexicon maps senses to paired syntactic and semantic structures; the
episodic memory holds remembered instances (names, genders, event
participations) that reference management consults.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field
from enum import IntEnum
from pathlib import Path

from .errors import KbValidationError, SchemaError

log = logging.getLogger("ontogen.knowledge")

SCHEMA_KB = "ontogen-kb/1"

SYN_CATEGORIES = ("subj", "v", "directobject", "n", "pp", "prep", "aux", "adv", "adj", "det")
FUNCTION_CATEGORIES = ("prep", "aux")
MODIFIER_POS = ("adj", "adv")

CONCEPT_RE = re.compile(r"[A-Z][A-Z0-9]*(?:-[A-Z0-9]+)*")
# Trailing "-<digits>" is reserved for instance ids; concept names never end that way.
INSTANCE_RE = re.compile(r"([A-Z][A-Z0-9]*(?:-[A-Z0-9]+)*)-([0-9]+)")


# ---------------------------------------------------------------------------
# constraints

@dataclass(frozen=True)
class ConceptConstraint:
    """Filler must be the named concept or one of its IS-A descendants."""

    concept: str


@dataclass(frozen=True)
class LiteralConstraint:
    """Filler must be one of a closed set of literal symbols."""

    values: tuple[str, ...]


@dataclass(frozen=True)
class RangeConstraint:
    """Filler must be a scalar within [low, high] (bounds within [0, 1])."""

    low: float
    high: float


@dataclass(frozen=True)
class AnythingConstraint:
    """Matches any filler; stands in for an absent constraint."""


ANYTHING = AnythingConstraint()

Constraint = ConceptConstraint | LiteralConstraint | RangeConstraint | AnythingConstraint


@dataclass(frozen=True)
class FacetedConstraint:
    """A property constraint split into a hard sem facet and a typical default facet."""

    sem: Constraint | None = None
    default: Constraint | None = None

    @property
    def effective_sem(self) -> Constraint:
        return self.sem if self.sem is not None else ANYTHING


class MatchDegree(IntEnum):
    """How well a filler satisfies a constraint; total order none < sem < default < narrow < exact."""

    NONE = 0
    SEM = 1
    DEFAULT = 2
    NARROW = 3
    EXACT = 4


def parse_constraint(raw, where: str) -> Constraint:
    """Read one constraint from its JSON form."""
    if isinstance(raw, str):
        if CONCEPT_RE.fullmatch(raw):
            return ConceptConstraint(raw)
        return LiteralConstraint((raw,))
    if isinstance(raw, dict):
        if "concept" in raw:
            return ConceptConstraint(str(raw["concept"]))
        if "any-of" in raw:
            vals = tuple(str(v) for v in raw["any-of"])
            if not vals:
                raise KbValidationError(f"{where}: empty any-of constraint")
            return LiteralConstraint(vals)
        if "range" in raw:
            lo, hi = raw["range"]
            lo, hi = float(lo), float(hi)
            if not (0.0 <= lo <= hi <= 1.0):
                raise KbValidationError(f"{where}: range bounds must satisfy 0 <= low <= high <= 1")
            return RangeConstraint(lo, hi)
    raise KbValidationError(f"{where}: unrecognized constraint {raw!r}")


def _faceted(raw, where: str) -> FacetedConstraint:
    if not isinstance(raw, dict) or not (set(raw) <= {"sem", "default"}):
        raise KbValidationError(f"{where}: expected an object with sem/default facets, got {raw!r}")
    sem = parse_constraint(raw["sem"], where) if "sem" in raw else None
    default = parse_constraint(raw["default"], where) if "default" in raw else None
    return FacetedConstraint(sem=sem, default=default)


# ---------------------------------------------------------------------------
# ontology

@dataclass
class Concept:
    name: str
    parents: tuple[str, ...]
    slots: dict[str, FacetedConstraint] = field(default_factory=dict)


class Ontology:
    """Acyclic IS-A graph of concepts with inheritable faceted constraints."""

    def __init__(self, concepts: dict[str, Concept]):
        self.concepts = concepts

    def exists(self, name: str) -> bool:
        return name in self.concepts

    def _require(self, name: str) -> Concept:
        try:
            return self.concepts[name]
        except KeyError:
            raise KbValidationError(f"unknown concept {name}") from None

    def ancestors(self, name: str):
        """Yield name and every IS-A ancestor, nearest first (breadth-first)."""
        seen = {name}
        queue = [name]
        while queue:
            current = queue.pop(0)
            yield current
            for parent in self._require(current).parents:
                if parent not in seen:
                    seen.add(parent)
                    queue.append(parent)

    def is_a(self, child: str, ancestor: str) -> bool:
        self._require(ancestor)
        return any(c == ancestor for c in self.ancestors(child))

    def constraint_on(self, concept: str, prop: str) -> FacetedConstraint:
        """Nearest declared constraint walking up IS-A; absent means anything."""
        for name in self.ancestors(concept):
            got = self.concepts[name].slots.get(prop)
            if got is not None:
                return got
        return FacetedConstraint(sem=ANYTHING)

    def satisfies(self, filler, constraint: Constraint) -> bool:
        """Whether a filler value (concept name, literal, or scalar) meets one constraint."""
        if isinstance(constraint, AnythingConstraint):
            return True
        if isinstance(constraint, ConceptConstraint):
            return isinstance(filler, str) and self.exists(filler) and self.is_a(filler, constraint.concept)
        if isinstance(constraint, LiteralConstraint):
            return isinstance(filler, str) and filler in constraint.values
        if isinstance(constraint, RangeConstraint):
            return isinstance(filler, (int, float)) and constraint.low <= float(filler) <= constraint.high
        return False


def _as_faceted(needed) -> FacetedConstraint:
    if needed is None:
        return FacetedConstraint(sem=ANYTHING)
    if isinstance(needed, FacetedConstraint):
        return needed
    return FacetedConstraint(sem=needed)


def _strictly_tighter(onto: Ontology, inner: Constraint, outer: Constraint) -> bool:
    if isinstance(outer, AnythingConstraint):
        return not isinstance(inner, AnythingConstraint)
    if isinstance(inner, ConceptConstraint) and isinstance(outer, ConceptConstraint):
        return inner.concept != outer.concept and onto.is_a(inner.concept, outer.concept)
    if isinstance(inner, LiteralConstraint) and isinstance(outer, LiteralConstraint):
        return set(inner.values) < set(outer.values)
    if isinstance(inner, RangeConstraint) and isinstance(outer, RangeConstraint):
        return (inner.low, -inner.high) > (outer.low, -outer.high)
    return False


def match_degree(onto: Ontology, filler, needed, override=None) -> MatchDegree:
    """Grade a filler against a faceted constraint, honoring a lexical override.

    Returns NONE when the filler violates the effective sem facet, EXACT when
    it equals the most specific constraining value, NARROW when it satisfies an
    override strictly tighter than the ontological sem, DEFAULT when it also
    satisfies the default facet, and SEM otherwise.
    """
    base = _as_faceted(needed)
    over = _as_faceted(override) if override is not None else None

    effective = over.effective_sem if over is not None and over.sem is not None else base.effective_sem
    if not onto.satisfies(filler, effective):
        return MatchDegree.NONE

    if isinstance(effective, ConceptConstraint) and filler == effective.concept:
        return MatchDegree.EXACT
    if isinstance(effective, LiteralConstraint) and len(effective.values) == 1 and filler == effective.values[0]:
        return MatchDegree.EXACT

    if over is not None and over.sem is not None and _strictly_tighter(onto, over.sem, base.effective_sem):
        return MatchDegree.NARROW

    if base.default is not None and onto.satisfies(filler, base.default):
        return MatchDegree.DEFAULT
    return MatchDegree.SEM


# ---------------------------------------------------------------------------
# lexicon

@dataclass(frozen=True)
class SynNode:
    """One syntactic slot: category, its $var index, fixed-word roots, optionality."""

    category: str
    var: int
    roots: tuple[str, ...] | None = None
    optional: bool = False


@dataclass(frozen=True)
class VarBinding:
    """A sem-struc slot filled by the realization of a syn-struc variable."""

    var: int
    override: FacetedConstraint | None = None


SlotValue = VarBinding | Constraint | float


@dataclass(frozen=True)
class PronounRef:
    """Referent features of a pronoun sense: person, number, optional gender."""

    person: int
    number: str
    gender: str | None = None


@dataclass(frozen=True)
class SemFrame:
    head: str
    slots: dict[str, SlotValue]
    null_sem: tuple[int, ...] = ()


@dataclass(frozen=True)
class LexSense:
    """One lexical sense: a headword with paired syn-struc and sem-struc."""

    id: str
    headword: str
    pos: str
    syn_struc: tuple[SynNode, ...]
    sem_struc: SemFrame
    definition: str = ""
    example: str = ""
    synonyms: tuple[str, ...] = ()
    example_bindings: tuple[tuple[str, int], ...] = ()
    # present only on pronoun senses (I/you/he/she/they)
    reference: PronounRef | None = None

    @property
    def is_argument_taking(self) -> bool:
        """Whether any sem-struc slot binds a syn-struc variable."""
        return any(isinstance(v, VarBinding) for v in self.sem_struc.slots.values())

    @property
    def bound_roles(self) -> dict[int, str]:
        """var index -> property name for every variable binding."""
        return {v.var: prop for prop, v in self.sem_struc.slots.items() if isinstance(v, VarBinding)}

    def node_for(self, var: int) -> SynNode | None:
        for node in self.syn_struc:
            if node.var == var:
                return node
        return None

    def binding_word(self, var: int) -> str | None:
        """The example-bindings word recorded for a variable, if any."""
        for word, idx in self.example_bindings:
            if idx == var:
                return word
        return None

    def root_choice(self, node: SynNode) -> str | None:
        """Pick the surface word for a fixed-root node.

        The example-bindings word wins when it is one of the listed
        alternatives; otherwise the first listed root is used.
        """
        if not node.roots:
            return None
        bound = self.binding_word(node.var)
        if bound is not None and bound in node.roots:
            return bound
        return node.roots[0]


class Lexicon:
    """Sense store indexed by head concept and by headword."""

    def __init__(self, senses: dict[str, LexSense]):
        self.senses = senses
        self.by_head: dict[str, list[str]] = {}
        self.by_headword: dict[str, list[str]] = {}
        for sid in sorted(senses):
            sense = senses[sid]
            self.by_head.setdefault(sense.sem_struc.head, []).append(sid)
            self.by_headword.setdefault(sense.headword, []).append(sid)

    def __len__(self) -> int:
        return len(self.senses)

    def sense(self, sid: str) -> LexSense:
        return self.senses[sid]

    def senses_by_head_concept(self, concept: str) -> list[LexSense]:
        """All senses whose sem-struc head is exactly this concept, by sense id."""
        return [self.senses[sid] for sid in self.by_head.get(concept, [])]

    def senses_for_property(self, onto: Ontology, prop: str, value) -> list[LexSense]:
        """Modifier senses (adj/adv) whose sem-struc covers property=value."""
        out = []
        for sid in sorted(self.senses):
            sense = self.senses[sid]
            if sense.pos not in MODIFIER_POS:
                continue
            slot = sense.sem_struc.slots.get(prop)
            if slot is None or isinstance(slot, VarBinding):
                continue
            if isinstance(slot, float):
                ok = isinstance(value, (int, float)) and abs(float(value) - slot) < 1e-9
            else:
                ok = onto.satisfies(value, slot)
            if ok:
                out.append(sense)
        return out


# ---------------------------------------------------------------------------
# episodic memory

class EpisodicMemory:
    """Remembered instances: identification attributes and event participation."""

    def __init__(self, instances: dict[str, dict]):
        self.instances = instances

    def __len__(self) -> int:
        return len(self.instances)

    def knows(self, instance_id: str) -> bool:
        return instance_id in self.instances

    def get(self, instance_id: str, prop: str, default=None):
        return self.instances.get(instance_id, {}).get(prop, default)

    def name_of(self, instance_id: str) -> str | None:
        return self.get(instance_id, "HAS-NAME")

    def gender_of(self, instance_id: str) -> str | None:
        return self.get(instance_id, "GENDER")


# ---------------------------------------------------------------------------
# loading

@dataclass
class KnowledgeBase:
    ontology: Ontology
    lexicon: Lexicon
    memory: EpisodicMemory
    warnings: list[str] = field(default_factory=list)


def _load_json(path: str | Path, kind: str) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read file: {exc}", source=str(path)) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno}: {exc.msg}", source=str(path)) from None
    if not isinstance(data, dict):
        raise SchemaError("top level must be an object", source=str(path))
    if data.get("schema") != SCHEMA_KB:
        raise SchemaError(f'expected schema "{SCHEMA_KB}", got {data.get("schema")!r}', source=str(path))
    if data.get("kind") != kind:
        raise SchemaError(f'expected kind "{kind}", got {data.get("kind")!r}', source=str(path))
    return data


def _parse_ontology(data: dict, source: str) -> Ontology:
    raw = data.get("concepts")
    if not isinstance(raw, dict) or not raw:
        raise KbValidationError("no concepts", source=source)
    concepts: dict[str, Concept] = {}
    for name, body in raw.items():
        if not CONCEPT_RE.fullmatch(name) or INSTANCE_RE.fullmatch(name):
            raise KbValidationError(f"bad concept name {name!r}", source=source)
        parents = tuple(body.get("parents", ()))
        slots = {}
        for prop, rawc in body.get("slots", {}).items():
            slots[prop] = _faceted(rawc, f"{name}.{prop}")
        concepts[name] = Concept(name=name, parents=parents, slots=slots)
    return Ontology(concepts)


def _validate_ontology(onto: Ontology, source: str, warnings: list[str]) -> None:
    # parents exist, graph acyclic
    for concept in onto.concepts.values():
        for parent in concept.parents:
            if parent not in onto.concepts:
                raise KbValidationError(f"{concept.name}: unknown parent {parent}", source=source)

    WHITE, GRAY, BLACK = 0, 1, 2
    state = dict.fromkeys(onto.concepts, WHITE)

    def visit(start: str):
        stack = [(start, iter(onto.concepts[start].parents))]
        state[start] = GRAY
        path = [start]
        while stack:
            name, parents = stack[-1]
            advanced = False
            for parent in parents:
                if state[parent] == GRAY:
                    cycle = " -> ".join(path + [parent])
                    raise KbValidationError(f"IS-A cycle: {cycle}", source=source)
                if state[parent] == WHITE:
                    state[parent] = GRAY
                    stack.append((parent, iter(onto.concepts[parent].parents)))
                    path.append(parent)
                    advanced = True
                    break
            if not advanced:
                state[name] = BLACK
                stack.pop()
                path.pop()

    for name in onto.concepts:
        if state[name] == WHITE:
            visit(name)

    # constraint references resolve; default facets narrow sem facets
    for concept in onto.concepts.values():
        for prop, faceted in concept.slots.items():
            for facet in (faceted.sem, faceted.default):
                if isinstance(facet, ConceptConstraint) and facet.concept not in onto.concepts:
                    raise KbValidationError(
                        f"{concept.name}.{prop}: constraint names unknown concept {facet.concept}",
                        source=source)
            if faceted.sem is not None and faceted.default is not None:
                if isinstance(faceted.default, ConceptConstraint):
                    ok = onto.satisfies(faceted.default.concept, faceted.sem)
                elif isinstance(faceted.default, LiteralConstraint):
                    ok = all(onto.satisfies(v, faceted.sem) for v in faceted.default.values)
                elif isinstance(faceted.default, RangeConstraint):
                    ok = onto.satisfies(faceted.default.low, faceted.sem) and \
                        onto.satisfies(faceted.default.high, faceted.sem)
                else:
                    ok = True
                if not ok:
                    msg = f"{concept.name}.{prop}: default facet does not narrow the sem facet"
                    warnings.append(msg)
                    log.warning("%s: %s", source, msg)


def _parse_slot_value(raw, where: str) -> SlotValue:
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        value = float(raw)
        if not 0.0 <= value <= 1.0:
            raise KbValidationError(f"{where}: scalar slot values must lie in [0, 1]")
        return value
    if isinstance(raw, dict) and "var" in raw:
        override = None
        facets = {k: raw[k] for k in ("sem", "default") if k in raw}
        if facets:
            override = _faceted(facets, where)
        return VarBinding(var=int(raw["var"]), override=override)
    return parse_constraint(raw, where)


def _parse_lexicon(data: dict, source: str) -> Lexicon:
    raw = data.get("senses")
    if not isinstance(raw, list):
        raise KbValidationError("senses must be a list", source=source)
    senses: dict[str, LexSense] = {}
    for body in raw:
        sid = body.get("id")
        if not sid:
            raise KbValidationError("sense without id", source=source)
        if sid in senses:
            raise KbValidationError(f"duplicate sense id {sid}", source=source)
        nodes = []
        for n in body.get("syn-struc", ()):
            cat = n.get("cat")
            if cat not in SYN_CATEGORIES:
                raise KbValidationError(f"{sid}: unknown syn-struc category {cat!r}", source=source)
            roots = tuple(str(r) for r in n["root"]) if "root" in n else None
            nodes.append(SynNode(category=cat, var=int(n["var"]), roots=roots,
                                 optional=bool(n.get("opt", False))))
        sem_raw = body.get("sem-struc", {})
        slots = {}
        for prop, rawv in sem_raw.get("slots", {}).items():
            slots[prop] = _parse_slot_value(rawv, f"{sid}.{prop}")
        sem = SemFrame(head=sem_raw.get("head", ""), slots=slots,
                       null_sem=tuple(int(v) for v in sem_raw.get("null-sem", ())))
        bindings = tuple((str(w), int(i)) for w, i in body.get("example-bindings", ()))
        reference = None
        if "reference" in body:
            r = body["reference"]
            person, number = int(r.get("person", 0)), str(r.get("number", ""))
            if person not in (1, 2, 3) or number not in ("singular", "plural"):
                raise KbValidationError(f"{sid}: reference needs person 1-3 and singular/plural",
                                        source=source)
            gender = r.get("gender")
            if gender not in (None, "male", "female"):
                raise KbValidationError(f"{sid}: reference gender must be male or female",
                                        source=source)
            reference = PronounRef(person=person, number=number, gender=gender)
        senses[sid] = LexSense(
            id=sid,
            headword=str(body.get("headword", "")),
            pos=str(body.get("pos", "")),
            definition=str(body.get("def", "")),
            example=str(body.get("ex", "")),
            synonyms=tuple(str(s) for s in body.get("synonyms", ())),
            syn_struc=tuple(nodes),
            sem_struc=sem,
            example_bindings=bindings,
            reference=reference,
        )
    return Lexicon(senses)


def _validate_lexicon(lex: Lexicon, onto: Ontology, source: str) -> None:
    for sid, sense in lex.senses.items():
        heads = [n for n in sense.syn_struc if n.var == 0]
        if len(heads) != 1:
            raise KbValidationError(f"{sid}: expected exactly one $var0 head node, found {len(heads)}",
                                    source=source)
        declared = {n.var for n in sense.syn_struc}
        for prop, value in sense.sem_struc.slots.items():
            if isinstance(value, VarBinding) and value.var not in declared:
                raise KbValidationError(
                    f"{sid}: sem-struc slot {prop} references $var{value.var} with no syn-struc node",
                    source=source)
        for var in sense.sem_struc.null_sem:
            if var not in declared:
                raise KbValidationError(
                    f"{sid}: null-sem references $var{var} with no syn-struc node", source=source)
        bound = {v.var for v in sense.sem_struc.slots.values() if isinstance(v, VarBinding)}
        overlap = bound & set(sense.sem_struc.null_sem)
        if overlap:
            raise KbValidationError(
                f"{sid}: null-sem variables fill case-role slots: {sorted(overlap)}", source=source)
        for node in sense.syn_struc:
            if node.category in FUNCTION_CATEGORIES and not node.roots:
                raise KbValidationError(
                    f"{sid}: {node.category} node $var{node.var} lacks a root word", source=source)
        if not onto.exists(sense.sem_struc.head):
            raise KbValidationError(
                f"{sid}: sem-struc head names unknown concept {sense.sem_struc.head}", source=source)
        for prop, value in sense.sem_struc.slots.items():
            constraints = []
            if isinstance(value, VarBinding) and value.override is not None:
                constraints.extend(c for c in (value.override.sem, value.override.default) if c)
            elif isinstance(value, ConceptConstraint):
                constraints.append(value)
            for c in constraints:
                if isinstance(c, ConceptConstraint) and not onto.exists(c.concept):
                    raise KbValidationError(
                        f"{sid}.{prop}: constraint names unknown concept {c.concept}", source=source)


def _parse_memory(data: dict, onto: Ontology, source: str) -> EpisodicMemory:
    raw = data.get("instances", {})
    if not isinstance(raw, dict):
        raise KbValidationError("instances must be an object", source=source)
    for iid in raw:
        m = INSTANCE_RE.fullmatch(iid)
        if not m:
            raise KbValidationError(f"bad instance id {iid!r}", source=source)
        if not onto.exists(m.group(1)):
            raise KbValidationError(f"{iid}: concept prefix {m.group(1)} is not in the ontology",
                                    source=source)
    return EpisodicMemory(raw)


def load_knowledge_base(ontology_path, lexicon_path, memory_path) -> KnowledgeBase:
    """Load and cross-validate the three knowledge files."""
    warnings: list[str] = []
    onto = _parse_ontology(_load_json(ontology_path, "ontology"), str(ontology_path))
    _validate_ontology(onto, str(ontology_path), warnings)
    lex = _parse_lexicon(_load_json(lexicon_path, "lexicon"), str(lexicon_path))
    _validate_lexicon(lex, onto, str(lexicon_path))
    memory = _parse_memory(_load_json(memory_path, "memory"), onto, str(memory_path))
    return KnowledgeBase(ontology=onto, lexicon=lex, memory=memory, warnings=warnings)
