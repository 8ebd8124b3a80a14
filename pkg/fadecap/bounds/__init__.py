"""
fadecap Bounds Package - upper bounds, lower-bound asymptotes and their low-SNR limits
"""

from fadecap.bounds.cll import cll_monte_carlo
from fadecap.bounds.models import (
    BoundSet,
    PowerConstraints,
    SingleLetterSolution,
    UPredResult,
    validate_constraints,
)
from fadecap.bounds.pred import (
    power_grid,
    prediction_gain,
    single_letter_mi_sup,
    solve_single_letter,
    solve_u_pred,
    u_pred_objective,
    upper_bound_U_pred,
)
from fadecap.bounds.upper import (
    asymptote_Cll,
    asymptote_Cu,
    asymptote_f,
    bound_Cu,
    closed_form_U_peak_limited,
    f_coefficient,
    lemma_bound,
    theta_star,
    upper_bound_U,
    upper_bound_window,
)
from fadecap.models.base import FadingModel

__all__ = [
    "bound_set",
    "BoundSet",
    "PowerConstraints",
    "SingleLetterSolution",
    "UPredResult",
    "validate_constraints",
    "lemma_bound",
    "theta_star",
    "upper_bound_U",
    "upper_bound_window",
    "bound_Cu",
    "f_coefficient",
    "asymptote_f",
    "asymptote_Cll",
    "asymptote_Cu",
    "closed_form_U_peak_limited",
    "power_grid",
    "solve_single_letter",
    "single_letter_mi_sup",
    "prediction_gain",
    "u_pred_objective",
    "solve_u_pred",
    "upper_bound_U_pred",
    "cll_monte_carlo",
]


def bound_set(model: FadingModel, rho: float, beta: float, n: int = 1) -> BoundSet:
    """
    Evaluate every bound at one (rho, beta) point.

    Args:
        model: Fading model
        rho: Peak power
        beta: Peak-to-average ratio
        n: Block length of the on-off scheme behind the L_n column

    Returns:
        BoundSet in nats per symbol
    """
    from fadecap.onoff import ln_coefficient
    from fadecap.spectral import compute_I

    validate_constraints(rho, beta)
    value, theta = lemma_bound(rho, beta, compute_I(model, rho))
    u_pred = solve_u_pred(model, rho, beta)
    return BoundSet(
        rho=rho,
        beta=beta,
        U=value,
        U_pred=u_pred.value,
        C_u=bound_Cu(model, rho, beta),
        L_n=ln_coefficient(model, n, beta) * rho * rho,
        f_beta_rho2=asymptote_f(model, beta) * rho * rho,
        theta=theta,
        n=n,
        U_pred_converged=u_pred.converged,
    )
