"""Decision rules that turn a scenario into a complete design recommendation.

Each rule is a pure function returning its decision plus rationale entries;
:func:`recommend` composes them deterministically. The content-type decision
table is a fixed constant exposed by :func:`canonical_table` so tests can
probe individual rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Mapping, Optional

from .model import (
    AILiteracy,
    ConfidenceBand,
    ContentType,
    ContentTypeSet,
    LoadLevel,
    Modality,
    Scenario,
    SystemGoal,
    UserGoal,
)
from .templates import TemplateRegistry, builtin_registry


class DeliveryMode(Enum):
    MANUAL_TRIGGER = "manual_trigger"
    AUTO_TRIGGER = "auto_trigger"


class Pattern(Enum):
    IMPLICIT = "implicit"
    EXPLICIT = "explicit"


class TextFormat(Enum):
    TEXT_ONLY = "text_only"
    TEXT_WITH_GRAPHICS = "text_with_graphics"


@dataclass(frozen=True)
class Delivery:
    mode: DeliveryMode
    trigger_modality: Modality

    def __post_init__(self) -> None:
        if self.trigger_modality is Modality.HAPTIC:
            raise ValueError("trigger affordances are visual or audio")


@dataclass(frozen=True)
class DecisionTable:
    system_goal_rows: Mapping[SystemGoal, ContentTypeSet]
    user_goal_rows: Mapping[UserGoal, ContentTypeSet]
    literacy_rows: Mapping[AILiteracy, ContentTypeSet]


@dataclass(frozen=True)
class DetailPlan:
    concise: ContentTypeSet
    detailed: ContentTypeSet
    expansion_affordance: bool = True

    def __post_init__(self) -> None:
        if not self.concise <= self.detailed:
            raise ValueError("concise must be a subset of detailed")
        if ContentType.WHY_WHY_NOT not in self.concise:
            raise ValueError("concise must contain why_why_not")
        if not self.expansion_affordance:
            raise ValueError("the expansion affordance is always offered")


@dataclass(frozen=True)
class Paradigm:
    format: TextFormat
    fragment_patterns: Mapping[ContentType, Pattern]
    applicable: bool = True


@dataclass(frozen=True)
class RationaleEntry:
    guideline: str  # G1..G8 or CB (confidence-band policy)
    decision_field: str
    reason: str

    def __post_init__(self) -> None:
        if not self.reason:
            raise ValueError("reason must be nonempty")


@dataclass(frozen=True)
class DesignRecommendation:
    delivery: Delivery
    content: ContentTypeSet
    detail: DetailPlan
    explanation_modality: Modality
    paradigm: Paradigm
    confirmation_required: bool
    rationale: tuple[RationaleEntry, ...] = field(default_factory=tuple)
    availability: str = "available"


class EmptySelectionError(Exception):
    """The three factors admit no common content type.

    Unreachable with the canonical table (every row contains why_why_not);
    raised so table edits that break the invariant fail loudly instead of
    silently recommending nothing.
    """


def _cts(*types: ContentType) -> ContentTypeSet:
    return ContentTypeSet(types)


_CANONICAL_TABLE = DecisionTable(
    system_goal_rows={
        SystemGoal.INTENT_DISCOVERY: _cts(
            ContentType.INPUT_OUTPUT, ContentType.WHY_WHY_NOT, ContentType.EXAMPLE),
        SystemGoal.INTENT_ASSISTANCE: _cts(
            ContentType.INPUT_OUTPUT, ContentType.WHY_WHY_NOT, ContentType.HOW_TO),
        SystemGoal.ERROR_MANAGEMENT: _cts(
            ContentType.INPUT_OUTPUT, ContentType.WHY_WHY_NOT, ContentType.HOW,
            ContentType.CERTAINTY, ContentType.HOW_TO),
        SystemGoal.TRUST_BUILDING: _cts(
            ContentType.INPUT_OUTPUT, ContentType.WHY_WHY_NOT, ContentType.HOW,
            ContentType.CERTAINTY),
    },
    user_goal_rows={
        UserGoal.RESOLVE_CONFUSION_SURPRISE: _cts(
            ContentType.INPUT_OUTPUT, ContentType.WHY_WHY_NOT, ContentType.HOW,
            ContentType.CERTAINTY, ContentType.HOW_TO),
        UserGoal.PRIVACY_AWARENESS: _cts(
            ContentType.INPUT_OUTPUT, ContentType.WHY_WHY_NOT, ContentType.HOW),
        UserGoal.RELIABILITY: _cts(
            ContentType.INPUT_OUTPUT, ContentType.WHY_WHY_NOT, ContentType.CERTAINTY),
        UserGoal.INFORMATIVENESS: ContentTypeSet.all(),
    },
    literacy_rows={
        AILiteracy.LOW: _cts(
            ContentType.INPUT_OUTPUT, ContentType.WHY_WHY_NOT, ContentType.HOW,
            ContentType.CERTAINTY),
        AILiteracy.HIGH: ContentTypeSet.all(),
    },
)


def canonical_table() -> DecisionTable:
    """The fixed goal/literacy -> admissible-content-type table."""
    return _CANONICAL_TABLE


# Context priorities merged with Why into the concise (default) view.
_PRIORITY_MAP: dict[object, ContentTypeSet] = {
    SystemGoal.ERROR_MANAGEMENT: _cts(ContentType.CERTAINTY, ContentType.HOW_TO),
    SystemGoal.TRUST_BUILDING: _cts(ContentType.HOW),
    UserGoal.PRIVACY_AWARENESS: _cts(ContentType.HOW),
    UserGoal.RESOLVE_CONFUSION_SURPRISE: _cts(ContentType.HOW_TO),
}


def confidence_band(s: Scenario) -> tuple[ConfidenceBand, bool]:
    """Resolve the output confidence to a band; Low mandates confirmation.

    Declared bands pass through; numeric confidence maps with
    Low < 0.5 <= Medium < 0.9 <= High.
    """
    c = s.ai_output.confidence
    if isinstance(c, ConfidenceBand):
        band = c
    elif c >= 0.9:
        band = ConfidenceBand.HIGH
    elif c >= 0.5:
        band = ConfidenceBand.MEDIUM
    else:
        band = ConfidenceBand.LOW
    return band, band is ConfidenceBand.LOW


def _capacity_ok(s: Scenario) -> bool:
    return (s.user_state.cognitive_load is not LoadLevel.HIGH
            and s.user_state.time_urgency is not LoadLevel.HIGH)


def _need_reasons(s: Scenario) -> list[str]:
    band, _ = confidence_band(s)
    reasons = []
    if s.user_state.surprised:
        reasons.append("user surprised")
    if s.user_state.confused:
        reasons.append("user confused")
    if not s.profile.familiar_with_outcome:
        reasons.append("outcome unfamiliar")
    if band is not ConfidenceBand.HIGH:
        reasons.append("model uncertain")
    return reasons


def decide_delivery(s: Scenario) -> tuple[Delivery, list[RationaleEntry]]:
    """Auto-trigger only when the user has capacity and an explanation need."""
    capacity = _capacity_ok(s)
    needs = _need_reasons(s)
    if capacity and needs:
        mode = DeliveryMode.AUTO_TRIGGER
        reason = ", ".join(needs) + ", capacity ok"
    elif not capacity:
        limits = []
        if s.user_state.cognitive_load is LoadLevel.HIGH:
            limits.append("cognitive load high")
        if s.user_state.time_urgency is LoadLevel.HIGH:
            limits.append("time urgency high")
        mode = DeliveryMode.MANUAL_TRIGGER
        reason = "capacity limited (" + ", ".join(limits) + ")"
    else:
        mode = DeliveryMode.MANUAL_TRIGGER
        reason = "no explanation need (user familiar and model confident)"
    explanation = decide_modality(s)[0]
    if s.user_state.hands_busy or explanation is Modality.AUDIO:
        trigger = Modality.AUDIO
        trigger_reason = ("audio trigger affordance (hands busy)"
                          if s.user_state.hands_busy
                          else "audio trigger affordance matches audio explanation")
    else:
        trigger = Modality.VISUAL
        trigger_reason = "visual trigger affordance matches visual explanation"
    entries = [
        RationaleEntry("G2", "delivery.mode", reason),
        RationaleEntry("G2", "delivery.trigger_modality", trigger_reason),
    ]
    return Delivery(mode, trigger), entries


def select_content(s: Scenario, table: DecisionTable) -> tuple[ContentTypeSet, list[RationaleEntry]]:
    """Union rows within each goal factor, intersect across the three factors."""
    system_union = ContentTypeSet()
    for goal in s.system_goals:
        system_union = system_union | table.system_goal_rows[goal]
    user_union = ContentTypeSet()
    for goal in s.user_goals:
        user_union = user_union | table.user_goal_rows[goal]
    literacy_row = table.literacy_rows[s.profile.ai_literacy]
    selected = system_union & user_union & literacy_row
    if not selected:
        raise EmptySelectionError(
            "no content type is admitted by all three factors; "
            "the decision table violates the why-everywhere invariant")
    sys_names = ", ".join(g.value for g in SystemGoal if g in s.system_goals)
    user_names = ", ".join(g.value for g in UserGoal if g in s.user_goals)
    reason = (f"intersection of system goals ({sys_names}), user goals ({user_names}), "
              f"and {s.profile.ai_literacy.value}-literacy row")
    return selected, [RationaleEntry("G3", "content", reason)]


def plan_detail(content: ContentTypeSet, s: Scenario) -> tuple[DetailPlan, list[RationaleEntry]]:
    """Why-led concise view plus the full selection behind an expand affordance."""
    if ContentType.WHY_WHY_NOT not in content:
        raise ValueError("content must contain why_why_not")
    priority = ContentTypeSet()
    for goal in list(SystemGoal) + list(UserGoal):
        if goal in s.system_goals or goal in s.user_goals:
            extra = _PRIORITY_MAP.get(goal)
            if extra:
                priority = priority | extra
    concise = (_cts(ContentType.WHY_WHY_NOT) | priority) & content
    plan = DetailPlan(concise=concise, detailed=content)
    merged = priority & content
    if merged:
        reason = "why prioritized; goal context merges " + ", ".join(ct.value for ct in merged)
    else:
        reason = "why prioritized"
    entries = [
        RationaleEntry("G4", "detail.concise", reason),
        RationaleEntry("G5", "detail.expansion",
                       "detailed view of every selected type available on request"),
    ]
    return plan, entries


def decide_modality(s: Scenario) -> tuple[Modality, list[RationaleEntry]]:
    """Match the AI output's modality, switching channels under load."""
    base = s.ai_output.modality
    if base is Modality.HAPTIC:
        result = Modality.AUDIO
        reason = "haptic output mapped to audio explanation"
        if s.context.audio_load is LoadLevel.HIGH:
            result = Modality.VISUAL
            reason = "haptic output mapped to audio, then audio load high so visual"
    elif base is Modality.VISUAL:
        if s.context.visual_load is LoadLevel.HIGH:
            result = Modality.AUDIO
            reason = "visual load high, switched to audio"
        else:
            result = Modality.VISUAL
            reason = "matches visual AI output"
    else:
        if s.context.audio_load is LoadLevel.HIGH:
            result = Modality.VISUAL
            reason = "audio load high, switched to visual"
        else:
            result = Modality.AUDIO
            reason = "matches audio AI output"
    return result, [RationaleEntry("G6", "explanation_modality", reason)]


def decide_paradigm(
    plan: DetailPlan,
    s: Scenario,
    registry: TemplateRegistry,
) -> tuple[Paradigm, list[RationaleEntry]]:
    """Visual-only format/pattern choices driven by template declarations.

    A fragment is implicit only when its template anchor resolves against
    the scene (environment labels plus output anchors). For an audio
    explanation the paradigm is a text-only, all-explicit sentinel marked
    not applicable.
    """
    modality = decide_modality(s)[0]
    if modality is not Modality.VISUAL:
        patterns = {ct: Pattern.EXPLICIT for ct in plan.detailed}
        sentinel = Paradigm(TextFormat.TEXT_ONLY, patterns, applicable=False)
        entries = [
            RationaleEntry("G7", "paradigm.format", "not applicable for audio explanations"),
            RationaleEntry("G8", "paradigm.patterns", "not applicable for audio explanations"),
        ]
        return sentinel, entries

    domain = s.facts.get("domain", "")
    scene = {a.casefold() for a in s.context.environment} | {
        a.casefold() for a in s.ai_output.anchors}
    patterns: dict[ContentType, Pattern] = {}
    implicit = []
    for ct in plan.detailed:
        template = registry.lookup(ct, domain)
        anchor = template.anchor if template else None
        if anchor and anchor.casefold() in scene:
            patterns[ct] = Pattern.IMPLICIT
            implicit.append(f"{ct.value}@{anchor}")
        else:
            patterns[ct] = Pattern.EXPLICIT

    graphics = []
    for ct in plan.detailed:
        template = registry.lookup(ct, domain)
        if template and template.graphic:
            graphics.append(template.graphic.asset_id)
    fmt = TextFormat.TEXT_WITH_GRAPHICS if graphics else TextFormat.TEXT_ONLY

    fmt_reason = ("plan templates declare graphics: " + ", ".join(graphics)
                  if graphics else "no graphic assets declared in plan")
    pat_reason = ("anchors resolved in scene: " + ", ".join(implicit)
                  if implicit else "no template anchors resolve to scene objects")
    entries = [
        RationaleEntry("G7", "paradigm.format", fmt_reason),
        RationaleEntry("G8", "paradigm.patterns", pat_reason),
    ]
    return Paradigm(fmt, patterns), entries


def recommend(s: Scenario, registry: Optional[TemplateRegistry] = None) -> DesignRecommendation:
    """Compose the full recommendation with its rationale trace."""
    registry = registry if registry is not None else builtin_registry()
    band, confirm = confidence_band(s)
    delivery, g2 = decide_delivery(s)
    content, g3 = select_content(s, canonical_table())
    plan, g45 = plan_detail(content, s)
    modality, g6 = decide_modality(s)
    paradigm, g78 = decide_paradigm(plan, s, registry)

    cb_reason = (f"declared {band.value} band" if isinstance(s.ai_output.confidence, ConfidenceBand)
                 else f"confidence {s.ai_output.confidence:g} maps to {band.value} band")
    if confirm:
        cb_reason += "; low band requires user confirmation before output"
    rationale = (
        RationaleEntry("G1", "availability", "explanations prepared and accessible for every outcome"),
        g2[0],
        g2[1],
        RationaleEntry("CB", "confirmation_required", cb_reason),
        g3[0],
        g45[0],
        g45[1],
        g6[0],
        g78[0],
        g78[1],
    )
    return DesignRecommendation(
        delivery=delivery,
        content=plan.detailed,
        detail=plan,
        explanation_modality=modality,
        paradigm=paradigm,
        confirmation_required=confirm,
        rationale=rationale,
    )


# ---------------------------------------------------------------------------
# what-if analysis

_FACTORS = ("user_state", "context", "system_goals", "user_goals", "profile", "ai_output")


def decision_surface(rec: DesignRecommendation) -> dict[str, object]:
    """The comparable decision fields of a recommendation (rationale excluded)."""
    return {
        "delivery_mode": rec.delivery.mode.value,
        "trigger_modality": rec.delivery.trigger_modality.value,
        "content": rec.content.tokens(),
        "concise": rec.detail.concise.tokens(),
        "explanation_modality": rec.explanation_modality.value,
        "format": rec.paradigm.format.value,
        "patterns": {ct.value: p.value for ct, p in sorted(
            rec.paradigm.fragment_patterns.items(), key=lambda kv: kv[0].rank)},
        "confirmation_required": rec.confirmation_required,
    }


@dataclass(frozen=True)
class FieldDiff:
    field: str
    a: object
    b: object
    attribution: tuple[str, ...]


@dataclass(frozen=True)
class RecommendationDiff:
    identical: bool
    fields: tuple[FieldDiff, ...]


def whatif_diff(a: Scenario, b: Scenario,
                registry: Optional[TemplateRegistry] = None) -> RecommendationDiff:
    """Diff the recommendations for two scenarios with factor attribution.

    For each differing decision field, attribution lists the factors whose
    single substitution (that factor of ``a`` replaced by ``b``'s) alone
    moves the field to ``b``'s value.
    """
    registry = registry if registry is not None else builtin_registry()
    surface_a = decision_surface(recommend(a, registry))
    surface_b = decision_surface(recommend(b, registry))
    differing = [k for k in surface_a if surface_a[k] != surface_b[k]]
    if not differing:
        return RecommendationDiff(True, ())

    substituted: dict[str, dict[str, object]] = {}
    for factor in _FACTORS:
        if getattr(a, factor) == getattr(b, factor):
            continue
        hybrid = replace(a, **{factor: getattr(b, factor)})
        substituted[factor] = decision_surface(recommend(hybrid, registry))

    fields = []
    for key in differing:
        blame = tuple(f for f in _FACTORS
                      if f in substituted and substituted[f][key] == surface_b[key])
        fields.append(FieldDiff(key, surface_a[key], surface_b[key], blame))
    return RecommendationDiff(False, tuple(fields))
