import dataclasses

import pytest

from arexplain.engine import canonical_table, decide_paradigm, plan_detail, recommend, select_content
from arexplain.model import ContentType, Scenario
from arexplain.templates import (
    ExplanationTemplate,
    GraphicAsset,
    GraphicComplexity,
    MissingFactError,
    MissingTemplateError,
    TemplateRegistry,
    TemplateSyntaxError,
    parse_template_pack,
    placeholders,
    register_template,
    render,
)

FIG_CAPTION_WHY = ("This recipe fits your {diet} diet ({protein}) and is made from "
                   "ingredients you have in the fridge: {ingredients}")


def test_register_recipe_why_template_retrievable():
    registry = TemplateRegistry()
    t = ExplanationTemplate(ContentType.WHY_WHY_NOT, "recipe", FIG_CAPTION_WHY)
    registry = register_template(t, registry)
    assert registry.get(ContentType.WHY_WHY_NOT, "recipe") is t


def test_reregistration_replaces_and_keeps_size():
    registry = TemplateRegistry()
    first = ExplanationTemplate(ContentType.WHY_WHY_NOT, "recipe", "first")
    second = ExplanationTemplate(ContentType.WHY_WHY_NOT, "recipe", "second")
    registry = register_template(first, registry)
    registry = register_template(second, registry)
    assert len(registry) == 1
    assert registry.get(ContentType.WHY_WHY_NOT, "recipe").body == "second"


def test_unclosed_placeholder_rejected():
    with pytest.raises(TemplateSyntaxError):
        ExplanationTemplate(ContentType.HOW, "generic", "broken {slot")


def test_stray_closing_brace_rejected():
    with pytest.raises(TemplateSyntaxError):
        placeholders("no } here")


def test_substitution_fills_fig_caption_body():
    t = ExplanationTemplate(ContentType.WHY_WHY_NOT, "recipe", FIG_CAPTION_WHY)
    text = t.substitute({"diet": "high-protein", "protein": "32g",
                         "ingredients": "chicken and cauliflower"})
    assert text == ("This recipe fits your high-protein diet (32g) and is made from "
                    "ingredients you have in the fridge: chicken and cauliflower")


def _plan_and_paradigm(scenario: Scenario, registry):
    content, _ = select_content(scenario, canonical_table())
    plan, _ = plan_detail(content, scenario)
    paradigm, _ = decide_paradigm(plan, scenario, registry)
    return plan, paradigm


def test_plant_concise_text_matches_documented_default(corpus_by_id, registry):
    scenario, _ = corpus_by_id["scenario2"]
    plan, paradigm = _plan_and_paradigm(scenario, registry)
    rendered = render(scenario, plan, paradigm, registry)
    assert rendered.concise_text == (
        "The system scans the plant's visual appearance. "
        "It has abnormal spots on the leaves, which indicate fungi or bacteria infection.")


def test_case2_certainty_section(corpus_by_id, registry):
    scenario, _ = corpus_by_id["case2"]
    plan, paradigm = _plan_and_paradigm(scenario, registry)
    rendered = render(scenario, plan, paradigm, registry)
    by_type = {sec.content_type: sec for sec in rendered.detailed_sections}
    assert by_type[ContentType.CERTAINTY].text == \
        "The recognition of salmon is uncertain (confidence 71%)."


def test_slotless_template_passes_through_verbatim(corpus_by_id, registry):
    scenario, _ = corpus_by_id["scenario4"]
    empty_facts = dataclasses.replace(scenario, facts={"domain": "podcast"})
    plan, paradigm = _plan_and_paradigm(empty_facts, registry)
    rendered = render(empty_facts, plan, paradigm, registry)
    assert rendered.detailed_sections[0].text == \
        "The recommendation takes your playlist history and driving routine into account."


def test_generic_fallback_used_when_domain_template_absent(corpus_by_id, registry):
    scenario, _ = corpus_by_id["scenario3"]  # no domain fact at all
    plan, paradigm = _plan_and_paradigm(scenario, registry)
    rendered = render(scenario, plan, paradigm, registry)
    assert rendered.detailed_sections[0].text == \
        "This restaurant is recommended based on everyone's food preference and movie genre."


def test_missing_template_raises_instead_of_dropping_section(corpus_by_id):
    scenario, _ = corpus_by_id["scenario2"]
    bare = TemplateRegistry()
    plan, paradigm = _plan_and_paradigm(scenario, bare)
    with pytest.raises(MissingTemplateError):
        render(scenario, plan, paradigm, bare)


def test_missing_facts_listed(corpus_by_id, registry):
    scenario, _ = corpus_by_id["case2"]
    sparse = dataclasses.replace(scenario, facts={"domain": "recipe"})
    plan, paradigm = _plan_and_paradigm(sparse, registry)
    with pytest.raises(MissingFactError) as exc:
        render(sparse, plan, paradigm, registry)
    assert "io_basis" in exc.value.keys
    assert "confidence_pct" in exc.value.keys


def test_section_count_and_order_follow_plan(corpus_by_id, registry):
    scenario, _ = corpus_by_id["case2"]
    plan, paradigm = _plan_and_paradigm(scenario, registry)
    rendered = render(scenario, plan, paradigm, registry)
    assert len(rendered.detailed_sections) == len(plan.detailed)
    assert [sec.content_type for sec in rendered.detailed_sections] == list(plan.detailed)


def test_no_placeholder_survives_any_corpus_rendering(corpus_pairs, registry):
    for scenario, _ in corpus_pairs:
        rec = recommend(scenario, registry)
        rendered = render(scenario, rec.detail, rec.paradigm, registry)
        texts = [rendered.concise_text] + [s.text for s in rendered.detailed_sections]
        for text in texts:
            assert "{" not in text and "}" not in text


def test_sections_carry_patterns_and_graphics(corpus_by_id, registry):
    scenario, _ = corpus_by_id["scenario2"]
    plan, paradigm = _plan_and_paradigm(scenario, registry)
    rendered = render(scenario, plan, paradigm, registry)
    why = next(s for s in rendered.detailed_sections
               if s.content_type is ContentType.WHY_WHY_NOT)
    assert why.pattern.value == "implicit"
    assert why.graphic == GraphicAsset("leaf_spot_highlight", GraphicComplexity.ICON)


# --- pack file ----------------------------------------------------------------

def test_pack_continuation_lines_join_with_single_space():
    text = (
        "[template]\n"
        "type = how\n"
        'domain = "demo"\n'
        'body = "first part \\\n'
        '        second part"\n'
    )
    templates, errors = parse_template_pack(text)
    assert errors == []
    assert templates[0].body == "first part second part"


def test_pack_rejects_malformed_body():
    text = "[template]\ntype = how\ndomain = \"demo\"\nbody = \"broken {\"\n"
    templates, errors = parse_template_pack(text)
    assert templates == []
    assert errors


def test_builtin_pack_deliberately_omits_na_cells(registry):
    # plant: no what_if/how_to wording exists; recipe: examples are the
    # recommendations themselves; automation: no example either
    assert registry.get(ContentType.WHAT_IF, "plant") is None
    assert registry.get(ContentType.HOW_TO, "plant") is None
    assert registry.get(ContentType.EXAMPLE, "recipe") is None
    assert registry.get(ContentType.EXAMPLE, "automation") is None
    # every content type is coverable through the generic fallback
    for ct in ContentType:
        assert registry.lookup(ct, "plant") is not None
