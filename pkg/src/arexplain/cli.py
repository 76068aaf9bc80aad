"""Command-line entry points.

Exit codes: 0 success, 2 input/validation error, 3 I/O error.
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Optional

import click

from .engine import DesignRecommendation, Pattern, whatif_diff
from .harness import builtin_corpus_dir, recommend_payload, run_corpus_dir
from .jsonio import canonical_json, diff_to_json
from .model import Scenario, validate_scenario
from .xasformat import parse_scenario

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_IO = 3

CORPUS_ENV = "AREXPLAIN_CORPUS"


def _read_file(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        click.echo(f"error: cannot read {path}: {exc.strerror}", err=True)
        sys.exit(EXIT_IO)


def _load_scenario(path: str) -> Scenario:
    text = _read_file(path)
    scenario, errors = parse_scenario(text)
    if scenario is None:
        for e in errors:
            click.echo(f"{path}:{e}", err=True)
        sys.exit(EXIT_INPUT)
    return scenario


def _value_for(field: str, rec: DesignRecommendation) -> str:
    if field == "availability":
        return "always available"
    if field == "delivery.mode":
        return rec.delivery.mode.value.replace("_", "-")
    if field == "delivery.trigger_modality":
        return f"{rec.delivery.trigger_modality.value} trigger"
    if field == "confirmation_required":
        return "confirmation required" if rec.confirmation_required else "no confirmation"
    if field == "content":
        return ", ".join(rec.content.tokens())
    if field == "detail.concise":
        return ", ".join(rec.detail.concise.tokens())
    if field == "detail.expansion":
        return "expandable"
    if field == "explanation_modality":
        return rec.explanation_modality.value
    if field == "paradigm.format":
        return rec.paradigm.format.value if rec.paradigm.applicable else "n/a"
    if field == "paradigm.patterns":
        if not rec.paradigm.applicable:
            return "n/a"
        implicit = [ct.value for ct, p in sorted(rec.paradigm.fragment_patterns.items(),
                                                 key=lambda kv: kv[0].rank)
                    if p is Pattern.IMPLICIT]
        if not implicit:
            return "all explicit"
        if len(implicit) == len(rec.paradigm.fragment_patterns):
            return "all implicit"
        return "implicit: " + ", ".join(implicit)
    return field


def _human_recommendation(scenario: Scenario, rec: DesignRecommendation) -> str:
    lines = [
        f"scenario: {scenario.id}",
        f"delivery: {rec.delivery.mode.value.replace('_', '-')}"
        f" ({rec.delivery.trigger_modality.value} trigger)",
        f"content: {', '.join(rec.content.tokens())}",
        f"concise: {', '.join(rec.detail.concise.tokens())}",
        f"modality: {rec.explanation_modality.value}",
        f"format: {_value_for('paradigm.format', rec)}",
        "patterns: " + ", ".join(
            f"{ct.value}={p.value}" for ct, p in sorted(
                rec.paradigm.fragment_patterns.items(), key=lambda kv: kv[0].rank)),
        f"confirmation: {'required' if rec.confirmation_required else 'not required'}",
        "rationale:",
    ]
    for entry in rec.rationale:
        value = _value_for(entry.decision_field, rec)
        lines.append(f"  {entry.guideline}: {value} — {entry.reason}")
    return "\n".join(lines)


@click.group()
def main() -> None:
    """Design-recommendation engine for AI explanations in everyday AR."""


@main.command("recommend")
@click.argument("path", type=str)
@click.option("--json", "as_json", is_flag=True, help="Emit the structured JSON payload.")
def cmd_recommend(path: str, as_json: bool) -> None:
    """Compute the full design recommendation for a scenario file."""
    scenario = _load_scenario(path)
    payload = recommend_payload(scenario)
    if as_json:
        click.echo(canonical_json(payload), nl=False)
        return
    from .engine import recommend

    rec = recommend(scenario)
    click.echo(_human_recommendation(scenario, rec))
    if payload["render_error"]:
        click.echo(f"render error: {payload['render_error']}", err=True)


@main.command("validate")
@click.argument("path", type=str)
def cmd_validate(path: str) -> None:
    """Check a scenario file; list every fault found."""
    text = _read_file(path)
    scenario, errors = parse_scenario(text)
    if scenario is None:
        for e in errors:
            click.echo(f"{path}:{e}", err=True)
        sys.exit(EXIT_INPUT)
    violations = validate_scenario(scenario)
    if violations:
        for v in violations:
            click.echo(f"{path}: {v}", err=True)
        sys.exit(EXIT_INPUT)
    click.echo(f"{path}: valid ({scenario.id})")


@main.command("render")
@click.argument("path", type=str)
def cmd_render(path: str) -> None:
    """Print the explanation text only (concise, then the detailed sections)."""
    scenario = _load_scenario(path)
    payload = recommend_payload(scenario)
    if payload["render_error"]:
        click.echo(f"error: {payload['render_error']}", err=True)
        sys.exit(EXIT_INPUT)
    rendered = payload["rendered"]
    click.echo(f"concise: {rendered['concise_text']}")
    for section in rendered["sections"]:
        click.echo(f"{section['content_type']}: {section['text']}")


@main.group("corpus")
def corpus_group() -> None:
    """Golden-corpus operations."""


@corpus_group.command("run")
@click.argument("directory", type=str, required=False)
@click.option("--json", "as_json", is_flag=True, help="Emit the report as JSON.")
def cmd_corpus_run(directory: Optional[str], as_json: bool) -> None:
    """Recommend every fixture and compare against its golden file."""
    import os

    target = directory or os.environ.get(CORPUS_ENV) or str(builtin_corpus_dir())
    if not Path(target).is_dir():
        click.echo(f"error: not a directory: {target}", err=True)
        sys.exit(EXIT_IO)
    report, errors = run_corpus_dir(target)
    if report is None:
        for e in errors:
            click.echo(str(e), err=True)
        sys.exit(EXIT_INPUT)
    if as_json:
        click.echo(canonical_json(report.to_json()), nl=False)
    else:
        for r in report.results:
            if r.passed is None:
                click.echo(f"{r.id}: skipped (no golden)")
            elif r.passed:
                click.echo(f"{r.id}: pass")
            else:
                for m in r.mismatches:
                    click.echo(
                        f"{r.id}: FAIL field {m['field']}:"
                        f" expected {m['expected']!r}, got {m['actual']!r}")
        click.echo(f"{report.passed}/{report.compared} passed")
    if not report.all_passed:
        sys.exit(EXIT_INPUT)


@main.command("diff")
@click.argument("path_a", type=str)
@click.argument("path_b", type=str)
@click.option("--json", "as_json", is_flag=True, help="Emit the diff as JSON.")
def cmd_diff(path_a: str, path_b: str, as_json: bool) -> None:
    """Compare the recommendations for two scenario files with attribution."""
    a = _load_scenario(path_a)
    b = _load_scenario(path_b)
    diff = whatif_diff(a, b)
    if as_json:
        click.echo(canonical_json(diff_to_json(diff)), nl=False)
        return
    if diff.identical:
        click.echo("no differences")
        return
    for f in diff.fields:
        blame = ", ".join(f.attribution) if f.attribution else "joint factors"
        click.echo(f"{f.field}: {f.a!r} -> {f.b!r} (attribution: {blame})")


@main.command("serve")
@click.option("--port", type=int, default=8571, show_default=True)
@click.option("--host", type=str, default="127.0.0.1", show_default=True,
              help="Bind address; loopback unless overridden.")
@click.option("--corpus", "corpus_dir", type=str, default=None,
              help=f"Fixture directory (default: ${CORPUS_ENV} or the bundled corpus).")
@click.option("--static", "static_dir", type=str, default=None,
              help="Optional directory of explorer assets to serve at /.")
def cmd_serve(port: int, host: str, corpus_dir: Optional[str], static_dir: Optional[str]) -> None:
    """Run the HTTP JSON API for the what-if explorer."""
    import os

    import uvicorn

    from .service import create_app

    target = corpus_dir or os.environ.get(CORPUS_ENV) or str(builtin_corpus_dir())
    try:
        app = create_app(target, static_dir=static_dir)
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
