"""Domain enumerations and value records shared by every other module.

Everything here is an immutable value object: construction freezes the data
and :func:`validate_scenario` reports problems instead of raising, so a
scenario can be inspected, diffed, and serialized regardless of validity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Mapping, Union


class ContentType(Enum):
    """The seven explanation content categories, in canonical order."""

    INPUT_OUTPUT = "input_output"
    WHY_WHY_NOT = "why_why_not"
    HOW = "how"
    CERTAINTY = "certainty"
    EXAMPLE = "example"
    WHAT_IF = "what_if"
    HOW_TO = "how_to"

    @property
    def rank(self) -> int:
        return _CONTENT_RANK[self]


_CONTENT_RANK = {ct: i for i, ct in enumerate(ContentType)}


class SystemGoal(Enum):
    INTENT_DISCOVERY = "intent_discovery"
    INTENT_ASSISTANCE = "intent_assistance"
    ERROR_MANAGEMENT = "error_management"
    TRUST_BUILDING = "trust_building"


class UserGoal(Enum):
    RESOLVE_CONFUSION_SURPRISE = "resolve_confusion_surprise"
    PRIVACY_AWARENESS = "privacy_awareness"
    RELIABILITY = "reliability"
    INFORMATIVENESS = "informativeness"


class LoadLevel(Enum):
    """Three-step discretization of cognitive/visual/audio load and urgency."""

    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"

    @property
    def rank(self) -> int:
        return ("low", "medium", "high").index(self.value)

    def __lt__(self, other: "LoadLevel") -> bool:
        if not isinstance(other, LoadLevel):
            return NotImplemented
        return self.rank < other.rank


class Modality(Enum):
    VISUAL = "visual"
    AUDIO = "audio"
    HAPTIC = "haptic"


class AILiteracy(Enum):
    LOW = "low"
    HIGH = "high"


class ConfidenceBand(Enum):
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"


class ContentTypeSet:
    """A subset of the seven content types with canonical iteration order.

    Equality and hashing are order-insensitive (plain set semantics);
    iteration and serialization always follow canonical ContentType order,
    so any insertion order produces byte-identical output downstream.
    """

    __slots__ = ("_members",)

    def __init__(self, members: "ContentTypeSet | frozenset[ContentType] | tuple[ContentType, ...] | list[ContentType] | set[ContentType]" = ()):
        if isinstance(members, ContentTypeSet):
            self._members: frozenset[ContentType] = members._members
        else:
            self._members = frozenset(members)
        for m in self._members:
            if not isinstance(m, ContentType):
                raise TypeError(f"not a ContentType: {m!r}")

    @classmethod
    def all(cls) -> "ContentTypeSet":
        return cls(tuple(ContentType))

    def __iter__(self) -> Iterator[ContentType]:
        return iter(sorted(self._members, key=lambda ct: ct.rank))

    def __len__(self) -> int:
        return len(self._members)

    def __contains__(self, item: object) -> bool:
        return item in self._members

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ContentTypeSet):
            return self._members == other._members
        if isinstance(other, (set, frozenset)):
            return self._members == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._members)

    def __bool__(self) -> bool:
        return bool(self._members)

    def __or__(self, other: "ContentTypeSet") -> "ContentTypeSet":
        return ContentTypeSet(self._members | other._members)

    def __and__(self, other: "ContentTypeSet") -> "ContentTypeSet":
        return ContentTypeSet(self._members & other._members)

    def __le__(self, other: "ContentTypeSet") -> bool:
        return self._members <= other._members

    def __repr__(self) -> str:
        return "ContentTypeSet({%s})" % ", ".join(ct.value for ct in self)

    def tokens(self) -> list[str]:
        """Wire form: canonical-order list of enum tokens."""
        return [ct.value for ct in self]


@dataclass(frozen=True)
class UserState:
    activity: str
    cognitive_load: LoadLevel
    time_urgency: LoadLevel = LoadLevel.LOW
    surprised: bool = False
    confused: bool = False
    hands_busy: bool = False


@dataclass(frozen=True)
class ContextualInfo:
    location: str
    time_of_day: str
    environment: frozenset[str]
    visual_load: LoadLevel = LoadLevel.LOW
    audio_load: LoadLevel = LoadLevel.LOW


@dataclass(frozen=True)
class UserProfile:
    ai_literacy: AILiteracy
    familiar_with_outcome: bool = True
    preferences: Mapping[str, str] = field(default_factory=dict)


Confidence = Union[float, ConfidenceBand]


@dataclass(frozen=True)
class AIOutputDescriptor:
    modality: Modality
    description: str
    confidence: Confidence
    anchors: frozenset[str] = frozenset()


@dataclass(frozen=True)
class Scenario:
    id: str
    user_state: UserState
    context: ContextualInfo
    system_goals: frozenset[SystemGoal]
    user_goals: frozenset[UserGoal]
    profile: UserProfile
    ai_output: AIOutputDescriptor
    facts: Mapping[str, str] = field(default_factory=dict)


def _check_labels(labels: frozenset[str], what: str, out: list[str]) -> None:
    folded = {}
    for label in labels:
        if not label.strip():
            out.append(f"{what} labels must be nonempty")
        key = label.casefold()
        if key != label:
            out.append(f"{what} label {label!r} is not case-folded")
        if key in folded:
            out.append(f"{what} label {label!r} duplicates {folded[key]!r} after case folding")
        else:
            folded[key] = label


def validate_scenario(s: Scenario) -> list[str]:
    """Return every invariant violation in ``s`` (empty list means valid).

    Violations are data, not failures: the function never raises for bad
    field values, only for objects of entirely wrong type upstream.
    """
    out: list[str] = []
    if not s.id or not all(c.isalnum() or c in "_-" for c in s.id):
        out.append("id must be a nonempty identifier of [A-Za-z0-9_-]")
    if not s.system_goals:
        out.append("system_goals must be nonempty")
    if not s.user_goals:
        out.append("user_goals must be nonempty")
    if isinstance(s.ai_output.confidence, float):
        if not 0.0 <= s.ai_output.confidence <= 1.0:
            out.append("confidence out of [0,1]")
    _check_labels(s.context.environment, "environment", out)
    _check_labels(s.ai_output.anchors, "anchors", out)
    return out
