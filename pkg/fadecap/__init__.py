"""
fadecap - capacity bounds for noncoherent correlated Rayleigh fading

Bounds, low-SNR asymptotes and oracles for the flat-fading channel
Y_k = X_k H_k + W_k under peak and average power constraints.

Usage:
    import fadecap

    model = fadecap.parse_model_spec("gauss_markov?r=0.9")
    fadecap.upper_bound_U(model, rho=1e-2, beta=2.0)
    fadecap.asymptote_f(model, beta=2.0)
"""

from fadecap.exceptions import (
    FadeCapError,
    ModelError,
    ConstraintError,
    ConvergenceError,
    NumericalError,
    QuadratureError,
    ConfigurationError,
)
from fadecap.config import NumericsConfig, SweepConfig, configure_numerics, get_numerics
from fadecap.models import (
    FadingModel,
    IIDModel,
    GaussMarkovModel,
    BandlimitedModel,
    FiniteMemoryModel,
    CustomModel,
    register_model,
    list_models,
    make_model,
    parse_model_spec,
)
from fadecap.spectral import compute_I, compute_lambda_inf, compute_nu_inf
from fadecap.bounds import (
    BoundSet,
    PowerConstraints,
    bound_set,
    theta_star,
    upper_bound_U,
    upper_bound_U_pred,
    bound_Cu,
    asymptote_f,
    asymptote_Cll,
)
from fadecap.prediction import causal_error, noncausal_error, finite_window_error
from fadecap.onoff import lambda_n, ln_coefficient
from fadecap.channel import mi_quadratic, mi_monte_carlo, mi_quadrature_1d
from fadecap.continuous import make_ct_model, ct_I, ct_capacity

__version__ = "0.1.0"
__all__ = [
    # Exceptions
    "FadeCapError",
    "ModelError",
    "ConstraintError",
    "ConvergenceError",
    "NumericalError",
    "QuadratureError",
    "ConfigurationError",
    # Configuration
    "NumericsConfig",
    "SweepConfig",
    "configure_numerics",
    "get_numerics",
    # Models
    "FadingModel",
    "IIDModel",
    "GaussMarkovModel",
    "BandlimitedModel",
    "FiniteMemoryModel",
    "CustomModel",
    "register_model",
    "list_models",
    "make_model",
    "parse_model_spec",
    # Spectral functionals
    "compute_I",
    "compute_lambda_inf",
    "compute_nu_inf",
    # Bounds
    "BoundSet",
    "PowerConstraints",
    "bound_set",
    "theta_star",
    "upper_bound_U",
    "upper_bound_U_pred",
    "bound_Cu",
    "asymptote_f",
    "asymptote_Cll",
    # Prediction
    "causal_error",
    "noncausal_error",
    "finite_window_error",
    # On-off lower bound
    "lambda_n",
    "ln_coefficient",
    # Mutual information
    "mi_quadratic",
    "mi_monte_carlo",
    "mi_quadrature_1d",
    # Continuous time
    "make_ct_model",
    "ct_I",
    "ct_capacity",
]
