"""Golden-corpus running and the shared recommend+render payload.

The CLI and the HTTP service both emit the structures built here, which is
what makes their outputs byte-identical after canonicalization.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

from .engine import recommend
from .jsonio import (
    GoldenRecommendation,
    compare_with_golden,
    golden_from_json,
    recommend_response,
)
from .model import Scenario
from .templates import (
    MissingFactError,
    MissingTemplateError,
    TemplateRegistry,
    builtin_registry,
    render,
)
from .xasformat import CorpusError, load_corpus_dir


def builtin_corpus_dir() -> Path:
    return Path(str(resources.files("arexplain").joinpath("data/corpus")))


def recommend_payload(s: Scenario, registry: Optional[TemplateRegistry] = None) -> dict:
    """Recommendation plus best-effort rendering as one JSON-ready object.

    Rendering failures (missing template or fact while exploring scenarios
    beyond the shipped corpus) are reported in ``render_error`` instead of
    discarding the recommendation.
    """
    registry = registry if registry is not None else builtin_registry()
    rec = recommend(s, registry)
    try:
        rendered = render(s, rec.detail, rec.paradigm, registry)
        error = None
    except (MissingTemplateError, MissingFactError) as exc:
        rendered = None
        error = str(exc)
    payload = recommend_response(s, rec, rendered)
    payload["render_error"] = error
    return payload


@dataclass(frozen=True)
class ScenarioResult:
    id: str
    passed: Optional[bool]  # None = no golden to compare against
    mismatches: tuple[dict, ...] = ()

    def to_json(self) -> dict:
        return {"id": self.id, "passed": self.passed, "mismatches": list(self.mismatches)}


@dataclass(frozen=True)
class CorpusReport:
    results: tuple[ScenarioResult, ...]

    @property
    def compared(self) -> int:
        return sum(1 for r in self.results if r.passed is not None)

    @property
    def passed(self) -> int:
        return sum(1 for r in self.results if r.passed)

    @property
    def all_passed(self) -> bool:
        return all(r.passed is not False for r in self.results)

    def to_json(self) -> dict:
        return {
            "results": [r.to_json() for r in self.results],
            "totals": {"scenarios": len(self.results), "compared": self.compared,
                       "passed": self.passed},
        }


def run_corpus(
    pairs: list[tuple[Scenario, Optional[dict]]],
    registry: Optional[TemplateRegistry] = None,
) -> tuple[CorpusReport, list[CorpusError]]:
    """Recommend every scenario and field-compare against its golden."""
    registry = registry if registry is not None else builtin_registry()
    results = []
    errors: list[CorpusError] = []
    for scenario, golden_raw in pairs:
        if golden_raw is None:
            results.append(ScenarioResult(scenario.id, None))
            continue
        golden, golden_errors = golden_from_json(golden_raw)
        if golden is None:
            for msg in golden_errors:
                errors.append(CorpusError(f"{scenario.id}.golden.json", msg))
            continue
        mismatches = compare_with_golden(recommend(scenario, registry), golden)
        results.append(ScenarioResult(scenario.id, not mismatches, tuple(mismatches)))
    return CorpusReport(tuple(results)), errors


def run_corpus_dir(
    path: str | Path,
    registry: Optional[TemplateRegistry] = None,
) -> tuple[Optional[CorpusReport], list[CorpusError]]:
    pairs, errors = load_corpus_dir(path)
    if errors:
        return None, errors
    report, golden_errors = run_corpus(pairs, registry)
    if golden_errors:
        return None, golden_errors
    return report, []
