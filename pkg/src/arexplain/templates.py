"""Template-driven rendering of explanation text per content type.

Templates are authored content: plain bodies with ``{placeholder}`` slots
filled from a scenario's facts in a single pass, optionally declaring the
scene anchor they can attach to and a graphic asset. The decision engine
only reads the declarations; this module owns registration, the shipped
pack, and rendering.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources
from typing import TYPE_CHECKING, Mapping, Optional

from .model import ContentType, Scenario
from .xasformat import ParseError, ParseErrorKind, SourceSpan, scan_document

if TYPE_CHECKING:  # pragma: no cover - type hints only, engine imports us
    from .engine import DetailPlan, Paradigm, Pattern


class GraphicComplexity(Enum):
    ICON = "icon"
    IMAGE = "image"


@dataclass(frozen=True)
class GraphicAsset:
    asset_id: str
    complexity: GraphicComplexity


class TemplateSyntaxError(ValueError):
    """Malformed placeholder syntax in a template body."""


class MissingTemplateError(LookupError):
    def __init__(self, content_type: ContentType, domain: str):
        self.content_type = content_type
        self.domain = domain
        super().__init__(
            f"no template for {content_type.value} under domain {domain!r} or generic fallback")


class MissingFactError(KeyError):
    def __init__(self, keys: list[str]):
        self.keys = sorted(set(keys))
        super().__init__("missing facts: " + ", ".join(self.keys))


_PLACEHOLDER_RE = re.compile(r"\{([a-z0-9_]+)\}")


def placeholders(body: str) -> list[str]:
    """Names of every slot in ``body``; raises on malformed brace syntax."""
    names = []
    i = 0
    while i < len(body):
        c = body[i]
        if c == "{":
            m = _PLACEHOLDER_RE.match(body, i)
            if not m:
                raise TemplateSyntaxError(f"malformed placeholder at offset {i}")
            names.append(m.group(1))
            i = m.end()
        elif c == "}":
            raise TemplateSyntaxError(f"stray '}}' at offset {i}")
        else:
            i += 1
    return names


@dataclass(frozen=True)
class ExplanationTemplate:
    content_type: ContentType
    domain_tag: str
    body: str
    anchor: Optional[str] = None
    graphic: Optional[GraphicAsset] = None

    def __post_init__(self) -> None:
        placeholders(self.body)  # raises on bad syntax

    def substitute(self, facts: Mapping[str, str]) -> str:
        missing = [name for name in placeholders(self.body) if name not in facts]
        if missing:
            raise MissingFactError(missing)
        return _PLACEHOLDER_RE.sub(lambda m: facts[m.group(1)], self.body)


class TemplateRegistry:
    """Immutable mapping of (content type, domain) to templates."""

    __slots__ = ("_by_key",)

    def __init__(self, templates: tuple[ExplanationTemplate, ...] = ()):
        by_key: dict[tuple[ContentType, str], ExplanationTemplate] = {}
        for t in templates:
            by_key[(t.content_type, t.domain_tag)] = t
        self._by_key = by_key

    def __len__(self) -> int:
        return len(self._by_key)

    def register(self, t: ExplanationTemplate) -> "TemplateRegistry":
        """A new registry with ``t`` added; same-key registration replaces."""
        merged = dict(self._by_key)
        merged[(t.content_type, t.domain_tag)] = t
        out = TemplateRegistry()
        out._by_key = merged
        return out

    def get(self, content_type: ContentType, domain: str) -> Optional[ExplanationTemplate]:
        return self._by_key.get((content_type, domain))

    def lookup(self, content_type: ContentType, domain: str) -> Optional[ExplanationTemplate]:
        """Domain template, else the generic fallback, else None."""
        if domain:
            found = self._by_key.get((content_type, domain))
            if found is not None:
                return found
        return self._by_key.get((content_type, "generic"))


def register_template(t: ExplanationTemplate, registry: TemplateRegistry) -> TemplateRegistry:
    return registry.register(t)


@dataclass(frozen=True)
class RenderedSection:
    content_type: ContentType
    text: str
    graphic: Optional[GraphicAsset]
    pattern: "Pattern"


@dataclass(frozen=True)
class RenderedExplanation:
    concise_text: str
    detailed_sections: tuple[RenderedSection, ...]


def render(
    s: Scenario,
    plan: "DetailPlan",
    paradigm: "Paradigm",
    registry: TemplateRegistry,
) -> RenderedExplanation:
    """Instantiate every planned section from the scenario's facts.

    Sections follow canonical content-type order; the concise text is the
    concise sections' texts joined by single spaces. Missing templates and
    missing fact keys raise instead of silently dropping a planned section.
    """
    domain = s.facts.get("domain", "")
    resolved: dict[ContentType, ExplanationTemplate] = {}
    for ct in plan.detailed:
        t = registry.lookup(ct, domain)
        if t is None:
            raise MissingTemplateError(ct, domain or "generic")
        resolved[ct] = t

    missing: list[str] = []
    for t in resolved.values():
        missing.extend(name for name in placeholders(t.body) if name not in s.facts)
    if missing:
        raise MissingFactError(missing)

    sections = []
    concise_parts = []
    for ct in plan.detailed:
        t = resolved[ct]
        text = t.substitute(s.facts)
        sections.append(RenderedSection(
            content_type=ct,
            text=text,
            graphic=t.graphic,
            pattern=paradigm.fragment_patterns[ct],
        ))
        if ct in plan.concise:
            concise_parts.append(text)
    return RenderedExplanation(
        concise_text=" ".join(concise_parts),
        detailed_sections=tuple(sections),
    )


# ---------------------------------------------------------------------------
# template pack files

_CONTENT_TOKENS = {ct.value: ct for ct in ContentType}
_COMPLEXITY_TOKENS = {g.value: g for g in GraphicComplexity}


def parse_template_pack(text: str) -> tuple[list[ExplanationTemplate], list[ParseError]]:
    """Parse a pack file of repeated ``[template]`` sections.

    Uses the ``.xas`` line grammar plus trailing-backslash continuation for
    long bodies.
    """
    sections, errors = scan_document(
        text, allow_repeated=frozenset({"template"}), continuations=True)
    out: list[ExplanationTemplate] = []
    for sec in sections:
        if sec.name != "template":
            errors.append(ParseError(sec.span, ParseErrorKind.UNKNOWN_SECTION,
                                     f"unknown section [{sec.name}] in template pack"))
            continue
        fields: dict[str, object] = {}
        spans: dict[str, SourceSpan] = {}
        bad = False
        for e in sec.entries:
            if e.key not in {"type", "domain", "body", "anchor", "graphic_asset",
                             "graphic_complexity"}:
                errors.append(ParseError(e.key_span, ParseErrorKind.UNKNOWN_KEY,
                                         f"unknown template key {e.key!r}"))
                bad = True
                continue
            fields[e.key] = e.value.data
            spans[e.key] = e.value.span
            expect = "token" if e.key in {"type", "graphic_complexity"} else "string"
            if e.value.kind != expect:
                errors.append(ParseError(e.value.span, ParseErrorKind.BAD_VALUE,
                                         f"{e.key} expects a {expect}"))
                bad = True
        for req in ("type", "domain", "body"):
            if req not in fields:
                errors.append(ParseError(sec.span, ParseErrorKind.MISSING_KEY,
                                         f"[template] is missing required key {req!r}"))
                bad = True
        if bad:
            continue
        ct = _CONTENT_TOKENS.get(str(fields["type"]))
        if ct is None:
            errors.append(ParseError(spans["type"], ParseErrorKind.BAD_VALUE,
                                     "type must be one of {" + ", ".join(sorted(_CONTENT_TOKENS)) + "}"))
            continue
        graphic = None
        if "graphic_asset" in fields or "graphic_complexity" in fields:
            if "graphic_asset" not in fields or "graphic_complexity" not in fields:
                errors.append(ParseError(sec.span, ParseErrorKind.MISSING_KEY,
                                         "graphic_asset and graphic_complexity go together"))
                continue
            complexity = _COMPLEXITY_TOKENS.get(str(fields["graphic_complexity"]))
            if complexity is None:
                errors.append(ParseError(spans["graphic_complexity"], ParseErrorKind.BAD_VALUE,
                                         "graphic_complexity must be icon or image"))
                continue
            graphic = GraphicAsset(str(fields["graphic_asset"]), complexity)
        try:
            template = ExplanationTemplate(
                content_type=ct,
                domain_tag=str(fields["domain"]),
                body=str(fields["body"]),
                anchor=str(fields["anchor"]) if "anchor" in fields else None,
                graphic=graphic,
            )
        except TemplateSyntaxError as exc:
            errors.append(ParseError(spans["body"], ParseErrorKind.BAD_VALUE, str(exc)))
            continue
        out.append(template)
    return out, errors


def registry_from_pack(text: str) -> TemplateRegistry:
    templates, errors = parse_template_pack(text)
    if errors:
        raise ValueError("template pack has errors:\n" + "\n".join(str(e) for e in errors))
    return TemplateRegistry(tuple(templates))


@lru_cache(maxsize=1)
def builtin_registry() -> TemplateRegistry:
    """The shipped pack covering the bundled corpus domains plus generic."""
    text = resources.files("arexplain").joinpath("data/templates.xat").read_text("utf-8")
    return registry_from_pack(text)
