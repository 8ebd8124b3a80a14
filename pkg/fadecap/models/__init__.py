"""
fadecap Models - stationary fading processes
"""

from fadecap.models.base import ConsistencyReport, FadingModel
from fadecap.models.builtin import (
    BandlimitedModel,
    CustomModel,
    FiniteMemoryModel,
    GaussMarkovModel,
    IIDModel,
)
from fadecap.models.registry import (
    check_consistency,
    eval_R,
    eval_S,
    get_model_class,
    list_models,
    make_model,
    parse_model_spec,
    register_model,
)

__all__ = [
    "FadingModel",
    "ConsistencyReport",
    "IIDModel",
    "GaussMarkovModel",
    "BandlimitedModel",
    "FiniteMemoryModel",
    "CustomModel",
    "register_model",
    "get_model_class",
    "list_models",
    "make_model",
    "parse_model_spec",
    "eval_R",
    "eval_S",
    "check_consistency",
]
