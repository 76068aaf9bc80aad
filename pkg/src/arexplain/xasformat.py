"""Parse and serialize the ``.xas`` scenario text format and corpus layout.

The format is line-oriented, sectioned key-value text:

* ``[section]`` headers; ``key = value`` lines; ``#`` comments to end of line.
* Values are bare enum tokens (lowercase snake_case), double-quoted strings
  (escapes ``\\\\ \\" \\n \\r \\t``), decimal fractions, booleans
  ``true``/``false``, or bracketed comma-separated lists.
* Sections ``[scenario] [user_state] [context] [goals] [profile] [ai_output]``
  are required; ``[facts]`` is optional. Duplicate keys within a section and
  duplicate sections are errors.

Parsing reports *all* faults in one pass, each with a 1-based line/column
span. LF and CRLF input are equivalent.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Callable, Iterable, Optional

from .model import (
    AILiteracy,
    AIOutputDescriptor,
    Confidence,
    ConfidenceBand,
    ContextualInfo,
    LoadLevel,
    Modality,
    Scenario,
    SystemGoal,
    UserGoal,
    UserProfile,
    UserState,
    validate_scenario,
)


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int

    def __post_init__(self) -> None:
        if self.line < 1 or self.column < 1:
            raise ValueError("spans are 1-based")


class ParseErrorKind(Enum):
    UNKNOWN_SECTION = "unknown_section"
    UNKNOWN_KEY = "unknown_key"
    BAD_VALUE = "bad_value"
    DUPLICATE_KEY = "duplicate_key"
    MISSING_SECTION = "missing_section"
    MISSING_KEY = "missing_key"


@dataclass(frozen=True)
class ParseError:
    span: SourceSpan
    kind: ParseErrorKind
    message: str

    def __post_init__(self) -> None:
        if not self.message:
            raise ValueError("message must be nonempty")

    def __str__(self) -> str:
        return f"{self.span.line}:{self.span.column}: {self.kind.value}: {self.message}"


@dataclass(frozen=True)
class Value:
    """A parsed right-hand side: kind is token|string|number|bool|list."""

    kind: str
    data: object
    span: SourceSpan


@dataclass
class Entry:
    key: str
    key_span: SourceSpan
    value: Value


@dataclass
class Section:
    name: str
    span: SourceSpan
    entries: list[Entry]

    def get(self, key: str) -> Optional[Entry]:
        for e in self.entries:
            if e.key == key:
                return e
        return None


_KEY_RE = re.compile(r"[A-Za-z0-9_.\-]+")
_TOKEN_RE = re.compile(r"[a-z0-9_]+\Z")
_NUMBER_RE = re.compile(r"-?(\d+\.\d*|\.\d+|\d+)([eE][-+]?\d+)?\Z")

_ESCAPES = {"\\": "\\", '"': '"', "n": "\n", "r": "\r", "t": "\t"}
_UNESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}


def _strip_comment(line: str) -> str:
    """Cut a ``#`` comment, honoring quoted strings."""
    in_string = False
    i = 0
    while i < len(line):
        c = line[i]
        if in_string:
            if c == "\\" and i + 1 < len(line):
                i += 2
                continue
            if c == '"':
                in_string = False
        elif c == '"':
            in_string = True
        elif c == "#":
            return line[:i]
        i += 1
    return line


def iter_logical_lines(text: str, continuations: bool = False) -> Iterable[tuple[int, str]]:
    """Yield (1-based line number, content) after comment stripping.

    With ``continuations`` a trailing backslash splices the next line,
    joined by a single space (leading whitespace of the continuation is
    dropped). The yielded line number is the first physical line's.
    """
    physical = text.split("\n")
    n = len(physical)
    i = 0
    while i < n:
        raw = _strip_comment(physical[i].rstrip("\r"))
        start = i + 1
        if continuations:
            while raw.rstrip().endswith("\\") and i + 1 < n:
                raw = raw.rstrip()[:-1].rstrip()
                i += 1
                raw += " " + _strip_comment(physical[i].rstrip("\r")).lstrip()
        yield start, raw
        i += 1


def _parse_scalar(text: str, line: int, col: int, errors: list[ParseError]) -> Optional[Value]:
    span = SourceSpan(line, col)
    if text == "true":
        return Value("bool", True, span)
    if text == "false":
        return Value("bool", False, span)
    if _NUMBER_RE.match(text):
        return Value("number", float(text), span)
    if text.startswith('"'):
        out = []
        i = 1
        while i < len(text):
            c = text[i]
            if c == "\\":
                if i + 1 >= len(text) or text[i + 1] not in _ESCAPES:
                    errors.append(ParseError(SourceSpan(line, col + i), ParseErrorKind.BAD_VALUE,
                                             "bad escape in string"))
                    return None
                out.append(_ESCAPES[text[i + 1]])
                i += 2
                continue
            if c == '"':
                if text[i + 1:].strip():
                    errors.append(ParseError(SourceSpan(line, col + i + 1), ParseErrorKind.BAD_VALUE,
                                             "trailing characters after string"))
                    return None
                return Value("string", "".join(out), span)
            out.append(c)
            i += 1
        errors.append(ParseError(span, ParseErrorKind.BAD_VALUE, "unterminated string"))
        return None
    if _TOKEN_RE.match(text):
        return Value("token", text, span)
    errors.append(ParseError(span, ParseErrorKind.BAD_VALUE, f"unparseable value {text!r}"))
    return None


def _parse_value(text: str, line: int, col: int, errors: list[ParseError]) -> Optional[Value]:
    text = text.strip()
    if not text:
        errors.append(ParseError(SourceSpan(line, col), ParseErrorKind.BAD_VALUE, "missing value"))
        return None
    if text.startswith("["):
        if not text.endswith("]"):
            errors.append(ParseError(SourceSpan(line, col), ParseErrorKind.BAD_VALUE,
                                     "unterminated list"))
            return None
        inner = text[1:-1]
        items: list[Value] = []
        # split on commas outside quotes
        parts: list[tuple[int, str]] = []
        depth_q = False
        start = 0
        i = 0
        while i < len(inner):
            c = inner[i]
            if depth_q:
                if c == "\\":
                    i += 2
                    continue
                if c == '"':
                    depth_q = False
            elif c == '"':
                depth_q = True
            elif c == ",":
                parts.append((start, inner[start:i]))
                start = i + 1
            i += 1
        parts.append((start, inner[start:]))
        if len(parts) == 1 and not parts[0][1].strip():
            return Value("list", [], SourceSpan(line, col))
        ok = True
        for off, chunk in parts:
            lead = len(chunk) - len(chunk.lstrip())
            item = _parse_scalar(chunk.strip(), line, col + 1 + off + lead, errors)
            if item is None:
                ok = False
            elif item.kind not in ("token", "string"):
                errors.append(ParseError(item.span, ParseErrorKind.BAD_VALUE,
                                         "lists may contain only tokens or strings"))
                ok = False
            else:
                items.append(item)
        return Value("list", items, SourceSpan(line, col)) if ok else None
    return _parse_scalar(text, line, col, errors)


def scan_document(
    text: str,
    allow_repeated: frozenset[str] = frozenset(),
    continuations: bool = False,
) -> tuple[list[Section], list[ParseError]]:
    """Split a document into sections of parsed key/value entries."""
    errors: list[ParseError] = []
    sections: list[Section] = []
    current: Optional[Section] = None
    seen_names: set[str] = set()
    for line_no, content in iter_logical_lines(text, continuations=continuations):
        stripped = content.strip()
        if not stripped:
            continue
        indent = len(content) - len(content.lstrip())
        col = indent + 1
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                errors.append(ParseError(SourceSpan(line_no, col), ParseErrorKind.BAD_VALUE,
                                         "malformed section header"))
                current = None
                continue
            name = stripped[1:-1].strip()
            if name in seen_names and name not in allow_repeated:
                errors.append(ParseError(SourceSpan(line_no, col), ParseErrorKind.DUPLICATE_KEY,
                                         f"duplicate section [{name}]"))
                current = None
                continue
            seen_names.add(name)
            current = Section(name, SourceSpan(line_no, col), [])
            sections.append(current)
            continue
        m = _KEY_RE.match(stripped)
        eq = stripped[m.end():].lstrip() if m else ""
        if not m or not eq.startswith("="):
            errors.append(ParseError(SourceSpan(line_no, col), ParseErrorKind.BAD_VALUE,
                                     "expected 'key = value'"))
            continue
        if current is None:
            errors.append(ParseError(SourceSpan(line_no, col), ParseErrorKind.UNKNOWN_SECTION,
                                     "key outside any section"))
            continue
        key = m.group(0)
        value_off = content.index("=", indent + m.end()) + 1
        value_text = content[value_off:]
        lead = len(value_text) - len(value_text.lstrip())
        value = _parse_value(value_text, line_no, value_off + 1 + lead, errors)
        if value is None:
            continue
        if current.get(key) is not None:
            errors.append(ParseError(SourceSpan(line_no, col), ParseErrorKind.DUPLICATE_KEY,
                                     f"duplicate key {key!r} in [{current.name}]"))
            continue
        current.entries.append(Entry(key, SourceSpan(line_no, col), value))
    return sections, errors


# ---------------------------------------------------------------------------
# scenario schema

_SYSTEM_GOAL_TOKENS = {g.value: g for g in SystemGoal}
_USER_GOAL_TOKENS = {g.value: g for g in UserGoal}
_USER_GOAL_ALIASES = {
    "resolve_surprise": UserGoal.RESOLVE_CONFUSION_SURPRISE,
    "resolve_confusion": UserGoal.RESOLVE_CONFUSION_SURPRISE,
}
_LOAD_TOKENS = {l.value: l for l in LoadLevel}
_MODALITY_TOKENS = {m.value: m for m in Modality}
_LITERACY_TOKENS = {l.value: l for l in AILiteracy}
_BAND_TOKENS = {b.value: b for b in ConfidenceBand}

_REQUIRED_SECTIONS = ("scenario", "user_state", "context", "goals", "profile", "ai_output")
_ALL_SECTIONS = _REQUIRED_SECTIONS + ("facts",)

_SECTION_KEYS: dict[str, set[str]] = {
    "scenario": {"id", "version"},
    "user_state": {"activity", "cognitive_load", "time_urgency", "surprised", "confused", "hands_busy"},
    "context": {"location", "time_of_day", "environment", "visual_load", "audio_load"},
    "goals": {"system", "user"},
    "profile": {"ai_literacy", "familiar_with_outcome"},
    "ai_output": {"modality", "description", "confidence", "anchors"},
}


class _Builder:
    """Extracts typed fields from scanned sections, collecting errors."""

    def __init__(self, sections: list[Section], errors: list[ParseError]):
        self.by_name = {s.name: s for s in sections}
        self.errors = errors

    def fail(self, span: SourceSpan, kind: ParseErrorKind, message: str) -> None:
        self.errors.append(ParseError(span, kind, message))

    def entry(self, section: str, key: str, required: bool) -> Optional[Entry]:
        sec = self.by_name.get(section)
        if sec is None:
            return None
        e = sec.get(key)
        if e is None and required:
            self.fail(sec.span, ParseErrorKind.MISSING_KEY,
                      f"[{section}] is missing required key {key!r}")
        return e

    def string(self, section: str, key: str, required: bool = True, default: str = "") -> str:
        e = self.entry(section, key, required)
        if e is None:
            return default
        if e.value.kind != "string":
            self.fail(e.value.span, ParseErrorKind.BAD_VALUE,
                      f"{key} expects a quoted string")
            return default
        return str(e.value.data)

    def boolean(self, section: str, key: str, default: bool) -> bool:
        e = self.entry(section, key, required=False)
        if e is None:
            return default
        if e.value.kind != "bool":
            self.fail(e.value.span, ParseErrorKind.BAD_VALUE,
                      f"{key} expects true or false")
            return default
        return bool(e.value.data)

    def enum(self, section: str, key: str, tokens: dict, *, required: bool = True,
             default=None, aliases: Optional[dict] = None):
        e = self.entry(section, key, required)
        if e is None:
            return default
        legal = "{" + ", ".join(sorted(tokens)) + "}"
        if e.value.kind != "token":
            self.fail(e.value.span, ParseErrorKind.BAD_VALUE,
                      f"{key} expects one of {legal}")
            return default
        tok = str(e.value.data)
        if tok in tokens:
            return tokens[tok]
        if aliases and tok in aliases:
            return aliases[tok]
        self.fail(e.value.span, ParseErrorKind.BAD_VALUE,
                  f"{key} value {tok!r} is not one of {legal}")
        return default

    def load(self, section: str, key: str, *, required: bool = True,
             default: LoadLevel = LoadLevel.LOW) -> LoadLevel:
        return self.enum(section, key, _LOAD_TOKENS, required=required, default=default)

    def string_set(self, section: str, key: str, required: bool = True) -> frozenset[str]:
        e = self.entry(section, key, required)
        if e is None:
            return frozenset()
        if e.value.kind != "list":
            self.fail(e.value.span, ParseErrorKind.BAD_VALUE, f"{key} expects a list")
            return frozenset()
        labels = []
        for item in e.value.data:  # type: ignore[union-attr]
            labels.append(str(item.data).casefold().strip())
        return frozenset(labels)

    def goal_set(self, section: str, key: str, tokens: dict, aliases: dict) -> frozenset:
        e = self.entry(section, key, required=True)
        if e is None:
            return frozenset()
        if e.value.kind != "list":
            self.fail(e.value.span, ParseErrorKind.BAD_VALUE, f"{key} expects a list of goal tokens")
            return frozenset()
        legal = "{" + ", ".join(sorted(tokens)) + "}"
        goals = set()
        for item in e.value.data:  # type: ignore[union-attr]
            tok = str(item.data)
            if tok in tokens:
                goals.add(tokens[tok])
            elif tok in aliases:
                goals.add(aliases[tok])
            else:
                self.fail(item.span, ParseErrorKind.BAD_VALUE,
                          f"{key} goal {tok!r} is not one of {legal}")
        return frozenset(goals)

    def confidence(self) -> Confidence:
        e = self.entry("ai_output", "confidence", required=True)
        if e is None:
            return ConfidenceBand.HIGH
        if e.value.kind == "number":
            return float(e.value.data)  # type: ignore[arg-type]
        if e.value.kind == "token":
            tok = str(e.value.data)
            if tok in _BAND_TOKENS:
                return _BAND_TOKENS[tok]
        self.fail(e.value.span, ParseErrorKind.BAD_VALUE,
                  "confidence expects a fraction in [0,1] or one of {high, low, medium}")
        return ConfidenceBand.HIGH

    def text_map(self, section: str, prefix: str = "") -> dict[str, str]:
        sec = self.by_name.get(section)
        out: dict[str, str] = {}
        if sec is None:
            return out
        for e in sec.entries:
            if prefix:
                if not e.key.startswith(prefix):
                    continue
                name = e.key[len(prefix):]
            else:
                name = e.key
            if not name:
                self.fail(e.key_span, ParseErrorKind.UNKNOWN_KEY, f"empty map key {e.key!r}")
                continue
            if e.value.kind != "string":
                self.fail(e.value.span, ParseErrorKind.BAD_VALUE,
                          f"{e.key} expects a quoted string")
                continue
            out[name] = str(e.value.data)
        return out


def parse_scenario(text: str) -> tuple[Optional[Scenario], list[ParseError]]:
    """Parse a ``.xas`` document. Returns (scenario, errors).

    The scenario is None whenever errors is nonempty; a returned scenario
    always satisfies every core-model invariant.
    """
    sections, errors = scan_document(text)
    for sec in sections:
        if sec.name not in _ALL_SECTIONS:
            errors.append(ParseError(sec.span, ParseErrorKind.UNKNOWN_SECTION,
                                     f"unknown section [{sec.name}]"))
            continue
        if sec.name == "facts":
            continue
        known = _SECTION_KEYS[sec.name]
        for e in sec.entries:
            if e.key in known:
                continue
            if sec.name == "profile" and e.key.startswith("preference."):
                continue
            errors.append(ParseError(e.key_span, ParseErrorKind.UNKNOWN_KEY,
                                     f"unknown key {e.key!r} in [{sec.name}]"))
    present = {s.name for s in sections}
    for name in _REQUIRED_SECTIONS:
        if name not in present:
            errors.append(ParseError(SourceSpan(1, 1), ParseErrorKind.MISSING_SECTION,
                                     f"missing required section [{name}]"))

    b = _Builder(sections, errors)

    version_entry = b.entry("scenario", "version", required=False)
    if version_entry is not None and (version_entry.value.kind != "number"
                                      or version_entry.value.data != 1.0):
        b.fail(version_entry.value.span, ParseErrorKind.BAD_VALUE, "version must be 1")

    scenario = Scenario(
        id=b.string("scenario", "id"),
        user_state=UserState(
            activity=b.string("user_state", "activity"),
            cognitive_load=b.load("user_state", "cognitive_load"),
            time_urgency=b.load("user_state", "time_urgency", required=False),
            surprised=b.boolean("user_state", "surprised", False),
            confused=b.boolean("user_state", "confused", False),
            hands_busy=b.boolean("user_state", "hands_busy", False),
        ),
        context=ContextualInfo(
            location=b.string("context", "location"),
            time_of_day=b.string("context", "time_of_day"),
            environment=b.string_set("context", "environment"),
            visual_load=b.load("context", "visual_load", required=False),
            audio_load=b.load("context", "audio_load", required=False),
        ),
        system_goals=b.goal_set("goals", "system", _SYSTEM_GOAL_TOKENS, {}),
        user_goals=b.goal_set("goals", "user", _USER_GOAL_TOKENS, _USER_GOAL_ALIASES),
        profile=UserProfile(
            ai_literacy=b.enum("profile", "ai_literacy", _LITERACY_TOKENS,
                               default=AILiteracy.LOW),
            familiar_with_outcome=b.boolean("profile", "familiar_with_outcome", True),
            preferences=b.text_map("profile", prefix="preference."),
        ),
        ai_output=AIOutputDescriptor(
            modality=b.enum("ai_output", "modality", _MODALITY_TOKENS,
                            default=Modality.VISUAL),
            description=b.string("ai_output", "description"),
            confidence=b.confidence(),
            anchors=b.string_set("ai_output", "anchors", required=False),
        ),
        facts=b.text_map("facts"),
    )

    if not errors:
        for violation in validate_scenario(scenario):
            errors.append(ParseError(SourceSpan(1, 1), ParseErrorKind.BAD_VALUE, violation))
    if errors:
        return None, errors
    return scenario, []


def _quote(s: str) -> str:
    return '"' + "".join(_UNESCAPES.get(c, c) for c in s) + '"'


def _fmt_number(x: float) -> str:
    if x == int(x):
        return str(int(x))
    return repr(x)


def serialize_scenario(s: Scenario) -> str:
    """Canonical text form: fixed section and key order, defaults explicit.

    ``parse_scenario(serialize_scenario(s))`` reconstructs an equal value,
    and equal scenarios serialize to identical text.
    """
    lines: list[str] = []
    lines.append("[scenario]")
    lines.append(f"id = {_quote(s.id)}")
    lines.append("version = 1")
    lines.append("")
    lines.append("[user_state]")
    lines.append(f"activity = {_quote(s.user_state.activity)}")
    lines.append(f"cognitive_load = {s.user_state.cognitive_load.value}")
    lines.append(f"time_urgency = {s.user_state.time_urgency.value}")
    lines.append(f"surprised = {str(s.user_state.surprised).lower()}")
    lines.append(f"confused = {str(s.user_state.confused).lower()}")
    lines.append(f"hands_busy = {str(s.user_state.hands_busy).lower()}")
    lines.append("")
    lines.append("[context]")
    lines.append(f"location = {_quote(s.context.location)}")
    lines.append(f"time_of_day = {_quote(s.context.time_of_day)}")
    env = ", ".join(_quote(x) for x in sorted(s.context.environment))
    lines.append(f"environment = [{env}]")
    lines.append(f"visual_load = {s.context.visual_load.value}")
    lines.append(f"audio_load = {s.context.audio_load.value}")
    lines.append("")
    lines.append("[goals]")
    system = ", ".join(_quote(g.value) for g in SystemGoal if g in s.system_goals)
    user = ", ".join(_quote(g.value) for g in UserGoal if g in s.user_goals)
    lines.append(f"system = [{system}]")
    lines.append(f"user = [{user}]")
    lines.append("")
    lines.append("[profile]")
    lines.append(f"ai_literacy = {s.profile.ai_literacy.value}")
    lines.append(f"familiar_with_outcome = {str(s.profile.familiar_with_outcome).lower()}")
    for key in sorted(s.profile.preferences):
        lines.append(f"preference.{key} = {_quote(s.profile.preferences[key])}")
    lines.append("")
    lines.append("[ai_output]")
    lines.append(f"modality = {s.ai_output.modality.value}")
    lines.append(f"description = {_quote(s.ai_output.description)}")
    if isinstance(s.ai_output.confidence, ConfidenceBand):
        lines.append(f"confidence = {s.ai_output.confidence.value}")
    else:
        lines.append(f"confidence = {_fmt_number(s.ai_output.confidence)}")
    anchors = ", ".join(_quote(x) for x in sorted(s.ai_output.anchors))
    lines.append(f"anchors = [{anchors}]")
    if s.facts:
        lines.append("")
        lines.append("[facts]")
        for key in sorted(s.facts):
            lines.append(f"{key} = {_quote(s.facts[key])}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# corpus loading

@dataclass(frozen=True)
class CorpusError:
    name: str
    message: str

    def __str__(self) -> str:
        return f"{self.name}: {self.message}"


def load_corpus_entries(
    entries: Iterable[tuple[str, str]],
) -> tuple[list[tuple[Scenario, Optional[dict]]], list[CorpusError]]:
    """Pair ``<id>.xas`` scenarios with ``<id>.golden.json`` texts by id.

    Golden payloads are returned as parsed JSON objects; interpreting them
    is the caller's concern. Duplicate scenario ids and orphan goldens are
    errors.
    """
    import json

    scenarios: dict[str, Scenario] = {}
    order: list[str] = []
    goldens: dict[str, dict] = {}
    errors: list[CorpusError] = []
    for name, text in sorted(entries):
        if name.endswith(".golden.json"):
            stem = name[: -len(".golden.json")]
            try:
                payload = json.loads(text)
            except ValueError as exc:
                errors.append(CorpusError(name, f"invalid JSON: {exc}"))
                continue
            if not isinstance(payload, dict):
                errors.append(CorpusError(name, "golden must be a JSON object"))
                continue
            goldens[stem] = payload
        elif name.endswith(".xas"):
            scenario, parse_errors = parse_scenario(text)
            if scenario is None:
                for pe in parse_errors:
                    errors.append(CorpusError(name, str(pe)))
                continue
            if scenario.id in scenarios:
                errors.append(CorpusError(name, f"duplicate scenario id {scenario.id!r}"))
                continue
            stem = name[: -len(".xas")]
            if stem != scenario.id:
                errors.append(CorpusError(name, f"file stem does not match scenario id {scenario.id!r}"))
                continue
            scenarios[scenario.id] = scenario
            order.append(scenario.id)
    for stem in sorted(goldens):
        if stem not in scenarios:
            errors.append(CorpusError(f"{stem}.golden.json",
                                      f"golden without scenario {stem!r}"))
    pairs = [(scenarios[sid], goldens.get(sid)) for sid in order]
    return pairs, errors


def load_corpus_dir(path: str | Path) -> tuple[list[tuple[Scenario, Optional[dict]]], list[CorpusError]]:
    """Read a corpus directory from disk and pair scenarios with goldens."""
    base = Path(path)
    entries = []
    for child in base.iterdir():
        if child.name.endswith(".xas") or child.name.endswith(".golden.json"):
            entries.append((child.name, child.read_text(encoding="utf-8")))
    return load_corpus_entries(entries)
