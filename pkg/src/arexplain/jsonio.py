"""Canonical JSON forms shared by the CLI, the HTTP API, and golden files.

One rule everywhere: sets serialize as canonically ordered arrays, objects
are dumped with sorted keys and two-space indentation, so equal values are
byte-identical regardless of construction order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Optional

from .engine import (
    DeliveryMode,
    DesignRecommendation,
    Pattern,
    RecommendationDiff,
    TextFormat,
    decision_surface,
)
from .model import (
    AILiteracy,
    AIOutputDescriptor,
    ConfidenceBand,
    ContentType,
    ContentTypeSet,
    ContextualInfo,
    LoadLevel,
    Modality,
    Scenario,
    SystemGoal,
    UserGoal,
    UserProfile,
    UserState,
)
from .templates import RenderedExplanation

_CONTENT_TOKENS = {ct.value: ct for ct in ContentType}
_PATTERN_TOKENS = {p.value: p for p in Pattern}
_DELIVERY_TOKENS = {d.value: d for d in DeliveryMode}
_MODALITY_TOKENS = {m.value: m for m in Modality}
_LOAD_TOKENS = {l.value: l for l in LoadLevel}
_LITERACY_TOKENS = {l.value: l for l in AILiteracy}
_BAND_TOKENS = {b.value: b for b in ConfidenceBand}
_SYSTEM_GOAL_TOKENS = {g.value: g for g in SystemGoal}
_USER_GOAL_TOKENS = {g.value: g for g in UserGoal}


def canonical_json(obj: object) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# scenarios

def scenario_to_json(s: Scenario) -> dict:
    return {
        "id": s.id,
        "user_state": {
            "activity": s.user_state.activity,
            "cognitive_load": s.user_state.cognitive_load.value,
            "time_urgency": s.user_state.time_urgency.value,
            "surprised": s.user_state.surprised,
            "confused": s.user_state.confused,
            "hands_busy": s.user_state.hands_busy,
        },
        "context": {
            "location": s.context.location,
            "time_of_day": s.context.time_of_day,
            "environment": sorted(s.context.environment),
            "visual_load": s.context.visual_load.value,
            "audio_load": s.context.audio_load.value,
        },
        "system_goals": [g.value for g in SystemGoal if g in s.system_goals],
        "user_goals": [g.value for g in UserGoal if g in s.user_goals],
        "profile": {
            "ai_literacy": s.profile.ai_literacy.value,
            "familiar_with_outcome": s.profile.familiar_with_outcome,
            "preferences": dict(sorted(s.profile.preferences.items())),
        },
        "ai_output": {
            "modality": s.ai_output.modality.value,
            "description": s.ai_output.description,
            "confidence": (s.ai_output.confidence.value
                           if isinstance(s.ai_output.confidence, ConfidenceBand)
                           else s.ai_output.confidence),
            "anchors": sorted(s.ai_output.anchors),
        },
        "facts": dict(sorted(s.facts.items())),
    }


class _Reader:
    """Collects path-qualified errors while pulling typed fields."""

    def __init__(self) -> None:
        self.errors: list[str] = []

    def fail(self, path: str, message: str) -> None:
        self.errors.append(f"{path}: {message}")

    def obj(self, parent: Mapping, path: str, key: str, required: bool = True) -> dict:
        v = parent.get(key)
        if v is None:
            if required:
                self.fail(f"{path}.{key}", "missing object")
            return {}
        if not isinstance(v, dict):
            self.fail(f"{path}.{key}", "expected an object")
            return {}
        return v

    def text(self, parent: Mapping, path: str, key: str, default: str = "",
             required: bool = True) -> str:
        v = parent.get(key)
        if v is None:
            if required:
                self.fail(f"{path}.{key}", "missing string")
            return default
        if not isinstance(v, str):
            self.fail(f"{path}.{key}", "expected a string")
            return default
        return v

    def flag(self, parent: Mapping, path: str, key: str, default: bool) -> bool:
        v = parent.get(key)
        if v is None:
            return default
        if not isinstance(v, bool):
            self.fail(f"{path}.{key}", "expected a boolean")
            return default
        return v

    def enum(self, parent: Mapping, path: str, key: str, tokens: dict, default,
             required: bool = True):
        v = parent.get(key)
        legal = "{" + ", ".join(sorted(tokens)) + "}"
        if v is None:
            if required:
                self.fail(f"{path}.{key}", f"missing value, expected one of {legal}")
            return default
        if not isinstance(v, str) or v not in tokens:
            self.fail(f"{path}.{key}", f"expected one of {legal}")
            return default
        return tokens[v]

    def labels(self, parent: Mapping, path: str, key: str, required: bool = True) -> frozenset[str]:
        v = parent.get(key)
        if v is None:
            if required:
                self.fail(f"{path}.{key}", "missing list")
            return frozenset()
        if not isinstance(v, list) or not all(isinstance(x, str) for x in v):
            self.fail(f"{path}.{key}", "expected a list of strings")
            return frozenset()
        return frozenset(x.casefold().strip() for x in v)

    def goal_set(self, parent: Mapping, path: str, key: str, tokens: dict) -> frozenset:
        v = parent.get(key)
        legal = "{" + ", ".join(sorted(tokens)) + "}"
        if v is None:
            self.fail(f"{path}.{key}", "missing list")
            return frozenset()
        if not isinstance(v, list):
            self.fail(f"{path}.{key}", "expected a list")
            return frozenset()
        out = set()
        for item in v:
            if not isinstance(item, str) or item not in tokens:
                self.fail(f"{path}.{key}", f"goal {item!r} is not one of {legal}")
                continue
            out.add(tokens[item])
        return frozenset(out)

    def text_map(self, parent: Mapping, path: str, key: str) -> dict[str, str]:
        v = parent.get(key)
        if v is None:
            return {}
        if not isinstance(v, dict) or not all(
                isinstance(k, str) and isinstance(x, str) for k, x in v.items()):
            self.fail(f"{path}.{key}", "expected an object of string values")
            return {}
        return dict(v)


def scenario_from_json(obj: object) -> tuple[Optional[Scenario], list[str]]:
    """Build a Scenario from its JSON form, reporting every fault."""
    r = _Reader()
    if not isinstance(obj, dict):
        return None, ["$: expected a scenario object"]

    user_state = r.obj(obj, "$", "user_state")
    context = r.obj(obj, "$", "context")
    profile = r.obj(obj, "$", "profile")
    ai_output = r.obj(obj, "$", "ai_output")

    confidence = ai_output.get("confidence")
    if isinstance(confidence, bool) or confidence is None:
        r.fail("$.ai_output.confidence", "expected a fraction in [0,1] or a band token")
        conf = ConfidenceBand.HIGH
    elif isinstance(confidence, (int, float)):
        conf = float(confidence)
    elif isinstance(confidence, str) and confidence in _BAND_TOKENS:
        conf = _BAND_TOKENS[confidence]
    else:
        r.fail("$.ai_output.confidence", "expected a fraction in [0,1] or a band token")
        conf = ConfidenceBand.HIGH

    scenario = Scenario(
        id=r.text(obj, "$", "id"),
        user_state=UserState(
            activity=r.text(user_state, "$.user_state", "activity"),
            cognitive_load=r.enum(user_state, "$.user_state", "cognitive_load",
                                  _LOAD_TOKENS, LoadLevel.LOW),
            time_urgency=r.enum(user_state, "$.user_state", "time_urgency",
                                _LOAD_TOKENS, LoadLevel.LOW, required=False),
            surprised=r.flag(user_state, "$.user_state", "surprised", False),
            confused=r.flag(user_state, "$.user_state", "confused", False),
            hands_busy=r.flag(user_state, "$.user_state", "hands_busy", False),
        ),
        context=ContextualInfo(
            location=r.text(context, "$.context", "location"),
            time_of_day=r.text(context, "$.context", "time_of_day"),
            environment=r.labels(context, "$.context", "environment"),
            visual_load=r.enum(context, "$.context", "visual_load",
                               _LOAD_TOKENS, LoadLevel.LOW, required=False),
            audio_load=r.enum(context, "$.context", "audio_load",
                              _LOAD_TOKENS, LoadLevel.LOW, required=False),
        ),
        system_goals=r.goal_set(obj, "$", "system_goals", _SYSTEM_GOAL_TOKENS),
        user_goals=r.goal_set(obj, "$", "user_goals", _USER_GOAL_TOKENS),
        profile=UserProfile(
            ai_literacy=r.enum(profile, "$.profile", "ai_literacy",
                               _LITERACY_TOKENS, AILiteracy.LOW),
            familiar_with_outcome=r.flag(profile, "$.profile", "familiar_with_outcome", True),
            preferences=r.text_map(profile, "$.profile", "preferences"),
        ),
        ai_output=AIOutputDescriptor(
            modality=r.enum(ai_output, "$.ai_output", "modality",
                            _MODALITY_TOKENS, Modality.VISUAL),
            description=r.text(ai_output, "$.ai_output", "description"),
            confidence=conf,
            anchors=r.labels(ai_output, "$.ai_output", "anchors", required=False),
        ),
        facts=r.text_map(obj, "$", "facts"),
    )
    if r.errors:
        return None, r.errors
    from .model import validate_scenario

    violations = validate_scenario(scenario)
    if violations:
        return None, violations
    return scenario, []


# ---------------------------------------------------------------------------
# recommendations

def recommendation_to_json(rec: DesignRecommendation) -> dict:
    return {
        "availability": rec.availability,
        "delivery": {
            "mode": rec.delivery.mode.value,
            "trigger_modality": rec.delivery.trigger_modality.value,
        },
        "content": rec.content.tokens(),
        "detail": {
            "concise": rec.detail.concise.tokens(),
            "detailed": rec.detail.detailed.tokens(),
            "expansion_affordance": rec.detail.expansion_affordance,
        },
        "explanation_modality": rec.explanation_modality.value,
        "paradigm": {
            "applicable": rec.paradigm.applicable,
            "format": rec.paradigm.format.value,
            "fragment_patterns": {
                ct.value: p.value
                for ct, p in sorted(rec.paradigm.fragment_patterns.items(),
                                    key=lambda kv: kv[0].rank)
            },
        },
        "confirmation_required": rec.confirmation_required,
        "rationale": [
            {"guideline": e.guideline, "decision_field": e.decision_field, "reason": e.reason}
            for e in rec.rationale
        ],
    }


def rendered_to_json(rendered: RenderedExplanation) -> dict:
    return {
        "concise_text": rendered.concise_text,
        "sections": [
            {
                "content_type": sec.content_type.value,
                "text": sec.text,
                "graphic": (None if sec.graphic is None else {
                    "asset_id": sec.graphic.asset_id,
                    "complexity": sec.graphic.complexity.value,
                }),
                "pattern": sec.pattern.value,
            }
            for sec in rendered.detailed_sections
        ],
    }


def recommend_response(s: Scenario, rec: DesignRecommendation,
                       rendered: Optional[RenderedExplanation]) -> dict:
    return {
        "scenario_id": s.id,
        "recommendation": recommendation_to_json(rec),
        "rendered": None if rendered is None else rendered_to_json(rendered),
    }


# ---------------------------------------------------------------------------
# goldens

@dataclass(frozen=True)
class GoldenRecommendation:
    """The documented design outcome a fixture must reproduce."""

    delivery_mode: DeliveryMode
    content: ContentTypeSet
    concise: ContentTypeSet
    explanation_modality: Modality
    patterns: Mapping[ContentType, Pattern]
    confirmation_required: bool


def golden_from_recommendation(rec: DesignRecommendation) -> GoldenRecommendation:
    return GoldenRecommendation(
        delivery_mode=rec.delivery.mode,
        content=rec.content,
        concise=rec.detail.concise,
        explanation_modality=rec.explanation_modality,
        patterns=dict(rec.paradigm.fragment_patterns),
        confirmation_required=rec.confirmation_required,
    )


def golden_to_json(g: GoldenRecommendation) -> dict:
    return {
        "delivery_mode": g.delivery_mode.value,
        "content": g.content.tokens(),
        "concise": g.concise.tokens(),
        "explanation_modality": g.explanation_modality.value,
        "patterns": {ct.value: p.value for ct, p in sorted(
            g.patterns.items(), key=lambda kv: kv[0].rank)},
        "confirmation_required": g.confirmation_required,
    }


def golden_from_json(obj: object) -> tuple[Optional[GoldenRecommendation], list[str]]:
    r = _Reader()
    if not isinstance(obj, dict):
        return None, ["$: expected a golden object"]
    mode = r.enum(obj, "$", "delivery_mode", _DELIVERY_TOKENS, DeliveryMode.MANUAL_TRIGGER)
    modality = r.enum(obj, "$", "explanation_modality", _MODALITY_TOKENS, Modality.VISUAL)
    confirmation = r.flag(obj, "$", "confirmation_required", False)

    def content_set(key: str) -> ContentTypeSet:
        v = obj.get(key)
        if not isinstance(v, list):
            r.fail(f"$.{key}", "expected a list of content types")
            return ContentTypeSet()
        out = set()
        for item in v:
            if not isinstance(item, str) or item not in _CONTENT_TOKENS:
                r.fail(f"$.{key}", f"unknown content type {item!r}")
                continue
            out.add(_CONTENT_TOKENS[item])
        return ContentTypeSet(out)

    content = content_set("content")
    concise = content_set("concise")
    raw_patterns = obj.get("patterns")
    patterns: dict[ContentType, Pattern] = {}
    if not isinstance(raw_patterns, dict):
        r.fail("$.patterns", "expected an object")
    else:
        for key, value in raw_patterns.items():
            if key not in _CONTENT_TOKENS:
                r.fail("$.patterns", f"unknown content type {key!r}")
                continue
            if value not in _PATTERN_TOKENS:
                r.fail("$.patterns", f"unknown pattern {value!r}")
                continue
            patterns[_CONTENT_TOKENS[key]] = _PATTERN_TOKENS[value]
    if r.errors:
        return None, r.errors
    return GoldenRecommendation(mode, content, concise, modality, patterns, confirmation), []


def compare_with_golden(rec: DesignRecommendation,
                        golden: GoldenRecommendation) -> list[dict]:
    """Field-level mismatches between a computed recommendation and a golden."""
    actual = golden_from_recommendation(rec)
    mismatches = []
    for field_name in ("delivery_mode", "content", "concise",
                       "explanation_modality", "patterns", "confirmation_required"):
        a = getattr(actual, field_name)
        e = getattr(golden, field_name)
        if field_name == "patterns":
            a = {ct.value: p.value for ct, p in a.items()}
            e = {ct.value: p.value for ct, p in e.items()}
        elif field_name in ("content", "concise"):
            a = a.tokens()
            e = e.tokens()
        elif field_name != "confirmation_required":
            a = a.value
            e = e.value
        if a != e:
            mismatches.append({"field": field_name, "expected": e, "actual": a})
    return mismatches


# ---------------------------------------------------------------------------
# diffs and schema

def diff_to_json(diff: RecommendationDiff) -> dict:
    return {
        "identical": diff.identical,
        "fields": [
            {"field": f.field, "a": f.a, "b": f.b, "attribution": list(f.attribution)}
            for f in diff.fields
        ],
    }


def schema_json() -> dict:
    """Machine-readable enum lists so UIs never hardcode variants."""
    return {
        "content_types": [ct.value for ct in ContentType],
        "system_goals": [g.value for g in SystemGoal],
        "user_goals": [g.value for g in UserGoal],
        "load_levels": [l.value for l in LoadLevel],
        "modalities": [m.value for m in Modality],
        "explanation_modalities": [Modality.VISUAL.value, Modality.AUDIO.value],
        "ai_literacy": [l.value for l in AILiteracy],
        "confidence_bands": [b.value for b in ConfidenceBand],
        "delivery_modes": [d.value for d in DeliveryMode],
        "patterns": [p.value for p in Pattern],
        "formats": [f.value for f in TextFormat],
        "diff_factors": ["user_state", "context", "system_goals",
                         "user_goals", "profile", "ai_output"],
    }
