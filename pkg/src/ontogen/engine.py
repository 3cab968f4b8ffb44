"""End-to-end generation: selection, building, realization, ranking."""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import GenerationConfig
from .knowledge import KnowledgeBase
from .pipeline import SelectionResult, TraceRecord, run_lexical_selection
from .realizer import MorphTables, bundled_morphology, realize
from .selector import FrequencyTable, ScoredSentence, bundled_frequency, rank
from .solution import CandidateSolution, build_solution
from .tmr import Tmr


@dataclass
class RunReport:
    sentences: list[ScoredSentence]
    counts: dict[str, int]
    trace: list[TraceRecord]
    solutions: list[CandidateSolution]
    selection: SelectionResult
    messages: list[str] = field(default_factory=list)


def generate(tmr: Tmr, kb: KnowledgeBase, config: GenerationConfig | None = None,
             freq: FrequencyTable | None = None, morph: MorphTables | None = None,
             context: tuple[str, ...] = (), history: tuple[str, ...] = ()) -> RunReport:
    """Every surviving candidate set realized and ranked, with the trace
    explaining both scores and exclusions."""
    config = config or GenerationConfig()
    freq = freq or bundled_frequency()
    morph = morph or bundled_morphology()

    selection = run_lexical_selection(tmr, kb, config, context)
    solutions = []
    for cs in selection.sets:
        solution = build_solution(cs, tmr, kb, selection.units)
        realize(solution, morph)
        solutions.append(solution)
    sentences = rank(solutions, tmr, freq, config, history)
    counts = dict(selection.counts)
    counts["sentences"] = len(sentences)
    return RunReport(sentences=sentences, counts=counts, trace=selection.trace,
                     solutions=solutions, selection=selection,
                     messages=list(selection.messages))
