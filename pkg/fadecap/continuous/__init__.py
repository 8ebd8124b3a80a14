"""fadecap Continuous-time Package"""

from fadecap.continuous.capacity import (
    ct_capacity,
    ct_I,
    ct_I_with_error,
    ct_integrate,
    ct_unit_mass,
    validate_ct_model,
)
from fadecap.continuous.models import (
    CTFadingModel,
    bandlimited,
    list_ct_models,
    make_ct_model,
    ornstein_uhlenbeck,
    parse_ct_model_spec,
)

__all__ = [
    "CTFadingModel",
    "make_ct_model",
    "list_ct_models",
    "parse_ct_model_spec",
    "ornstein_uhlenbeck",
    "bandlimited",
    "ct_integrate",
    "ct_unit_mass",
    "validate_ct_model",
    "ct_I",
    "ct_I_with_error",
    "ct_capacity",
]
