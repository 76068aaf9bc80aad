"""Deterministic design recommendations for AI explanations in everyday AR."""

from .engine import (
    DesignRecommendation,
    EmptySelectionError,
    canonical_table,
    confidence_band,
    decide_delivery,
    decide_modality,
    decide_paradigm,
    plan_detail,
    recommend,
    select_content,
    whatif_diff,
)
from .model import Scenario, validate_scenario
from .templates import builtin_registry, register_template, render
from .xasformat import parse_scenario, serialize_scenario

__version__ = "0.1.0"

__all__ = [
    "DesignRecommendation",
    "EmptySelectionError",
    "Scenario",
    "builtin_registry",
    "canonical_table",
    "confidence_band",
    "decide_delivery",
    "decide_modality",
    "decide_paradigm",
    "parse_scenario",
    "plan_detail",
    "recommend",
    "register_template",
    "render",
    "select_content",
    "serialize_scenario",
    "validate_scenario",
    "whatif_diff",
    "__version__",
]
