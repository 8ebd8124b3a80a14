"""
Validation suites - acceptance checks against closed forms and independent oracles

Each suite takes an optional model; without one it runs on the models the
checks were calibrated for. ``run_suite("all")`` runs every suite in order.
"""

from __future__ import annotations

import datetime
import logging
import math
from typing import Callable, Dict, List, Optional

import numpy as np

from fadecap.bounds import (
    asymptote_Cll,
    asymptote_f,
    solve_u_pred,
    upper_bound_U,
)
from fadecap.channel import iid_onoff, mi_cubic_coefficient, mi_monte_carlo, mi_quadratic, mi_quadrature_1d
from fadecap.config import SUITES
from fadecap.continuous import ct_capacity, ct_I, ct_unit_mass, make_ct_model
from fadecap.exceptions import ConfigurationError, FadeCapError
from fadecap.models import (
    BandlimitedModel,
    FadingModel,
    FiniteMemoryModel,
    GaussMarkovModel,
    IIDModel,
)
from fadecap.onoff import lambda_n, lambda_n_double_sum, ln_coefficient, optimal_duty
from fadecap.prediction import (
    causal_error,
    finite_window_error,
    interpolation_error,
    noncausal_error,
)
from fadecap.spectral import compute_lambda_inf, lambda_inf_series
from fadecap.validation.report import ValidationReport

logger = logging.getLogger(__name__)

# Hand-derived reference values
GM_HALF_CAUSAL_ERROR = 0.8660254037844386     # gauss_markov r=0.5, rho=1
GM_09_LAMBDA = 9.526315789473685              # (1 + 0.81) / (1 - 0.81)
OU_I_AT_2 = math.sqrt(5.0) - 1.0              # gamma=1, P_peak=2
OU_CAPACITY = 0.5 - 0.25 * OU_I_AT_2          # P_ave=0.5, P_peak=2


def builtin_models() -> List[FadingModel]:
    """One instance of every built-in discrete-time model."""
    return [
        IIDModel(),
        GaussMarkovModel(r=0.5),
        GaussMarkovModel(r=0.9),
        BandlimitedModel(w=0.5),
        FiniteMemoryModel(taps=(0.5,)),
    ]


def _now() -> datetime.datetime:
    return datetime.datetime.now()


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

def run_asymptotes(model: Optional[FadingModel] = None, **_) -> ValidationReport:
    """Low-SNR tightness of U and L_n, bound ordering and U_pred tightness."""
    report = ValidationReport(suite="asymptotes")
    tight_models = [model] if model else [GaussMarkovModel(r=0.5), GaussMarkovModel(r=0.9)]
    for m in tight_models:
        for beta in (1.0, 4.0):
            f = asymptote_f(m, beta)
            started = _now()
            rho = 1e-3
            report.add_check(f"U_over_rho2[{m.name};beta={beta:g};rho={rho:g}]",
                             upper_bound_U(m, rho, beta) / rho ** 2, f, 0.02, "rel",
                             started=started)
            started = _now()
            report.add_check(f"Ln_coeff[{m.name};beta={beta:g};n=1024]",
                             ln_coefficient(m, 1024, beta), f, 0.01, "rel", started=started)

    for m in ([model] if model else builtin_models()):
        lam = compute_lambda_inf(m)
        for beta in (1.0, 2.0, 4.0):
            f = asymptote_f(m, beta)
            started = _now()
            report.add_check(f"Cll_le_f[{m.name};beta={beta:g}]",
                             asymptote_Cll(m, beta), f, 1e-12, "le", started=started)
            report.add_check(f"f_le_Cu[{m.name};beta={beta:g}]",
                             f, lam / (2.0 * beta), 1e-12, "le")
            report.add_check(f"Ln_le_f[{m.name};beta={beta:g};n=1024]",
                             ln_coefficient(m, 1024, beta), f, 1e-12, "le")
            started = _now()
            gaps = [abs(upper_bound_U(m, rho, beta) / rho ** 2 - f) for rho in (1e-1, 1e-2, 1e-3)]
            report.add_check(f"U_gap_shrinks[{m.name};beta={beta:g}]",
                             float(np.max(np.diff(gaps))), 0.0, 1e-9, "le", started=started)

    memory = GaussMarkovModel(r=1.0 / math.sqrt(2.0))
    report.add_check("Cll_equals_f[lambda=3;beta=1]",
                     asymptote_Cll(memory, 1.0), asymptote_f(memory, 1.0), 1e-9, "abs")

    iid = IIDModel()
    for beta in (1.0, 2.0, 4.0):
        a = optimal_duty(1.0, beta)
        for rho in (1e-1, 1e-2, 1e-3):
            started = _now()
            onoff = mi_quadrature_1d(a, rho)
            report.add_check(f"onoff_mi_le_U[iid;beta={beta:g};rho={rho:g}]",
                             onoff.value, upper_bound_U(iid, rho, beta),
                             1e-12 + onoff.stderr, "le", started=started)

    pred_model = model or GaussMarkovModel(r=0.9)
    rho, beta = 1e-2, 4.0
    started = _now()
    u_pred = solve_u_pred(pred_model, rho, beta)
    report.add_check(f"U_pred_over_rho2[{pred_model.name};beta={beta:g};rho={rho:g}]",
                     u_pred.value / rho ** 2, asymptote_f(pred_model, beta), 0.10, "rel",
                     started=started, converged=u_pred.converged, p_ave=u_pred.p_ave)
    report.add_check(f"U_pred_converged[{pred_model.name};beta={beta:g};rho={rho:g}]",
                     float(u_pred.converged), 1.0, 0.0, "abs")
    return report


def run_mi(model: Optional[FadingModel] = None, seed: int = 42,
           samples: int = 1_000_000, **_) -> ValidationReport:
    """Quadratic MI expansion against exact quadrature and Monte Carlo."""
    report = ValidationReport(suite="mi")
    started = _now()
    ratio = {rho: mi_quadrature_1d(0.5, rho).value / rho ** 2 for rho in (0.05, 0.025)}
    report.add_check("onoff_ratio[n=1;a=0.5;rho=0.05]", ratio[0.05], 0.125, 0.01, "abs",
                     started=started)
    report.add_check("onoff_ratio_trend[n=1;a=0.5]",
                     abs(ratio[0.025] - 0.125), abs(ratio[0.05] - 0.125), 0.0, "le")

    scalar = iid_onoff(1, 0.5)
    started = _now()
    estimate = mi_monte_carlo(scalar, IIDModel(), 0.05, samples=samples, seed=seed)
    report.add_check("mc_vs_quadrature[n=1;a=0.5;rho=0.05]", estimate.value,
                     mi_quadrature_1d(0.5, 0.05).value, 3.0 * estimate.stderr, "abs",
                     started=started)

    m = model or GaussMarkovModel(r=0.8)
    mu = iid_onoff(3, 0.5)
    c2 = mi_quadratic(mu, m).coefficient
    c3 = mi_cubic_coefficient(mu, m)
    for rho in (0.1, 0.05):
        started = _now()
        estimate = mi_monte_carlo(mu, m, rho, samples=samples, seed=seed)
        report.add_check(
            f"mc_vs_quadratic[{m.name};n=3;a=0.5;rho={rho:g}]",
            estimate.value, c2 * rho ** 2,
            3.0 * estimate.stderr + (abs(c3) + 0.2) * rho ** 3, "abs",
            started=started, stderr=estimate.stderr, cubic=c3,
        )
    return report


def run_prediction(model: Optional[FadingModel] = None, **_) -> ValidationReport:
    """Finite windows converging to the closed-form prediction errors."""
    report = ValidationReport(suite="prediction")
    m = model or GaussMarkovModel(r=0.5)
    rho = 1.0
    if model is None:
        report.add_check("causal_closed_form[gauss_markov(r=0.5);rho=1]",
                         causal_error(m, rho), GM_HALF_CAUSAL_ERROR, 1e-6, "abs")

    started = _now()
    report.add_check(f"causal_window[{m.name};rho=1;n=1024]",
                     finite_window_error(m, rho, 1024, "causal").sigma2,
                     causal_error(m, rho), 1e-3, "abs", started=started)
    started = _now()
    report.add_check(f"smoothing_window[{m.name};rho=1;n=2048]",
                     finite_window_error(m, rho, 2048, "smoothing").sigma2,
                     noncausal_error(m, rho), 1e-3, "abs", started=started)
    started = _now()
    report.add_check(f"noncausal_window[{m.name};rho=1;n=2048]",
                     finite_window_error(m, rho, 2048, "noncausal").sigma2,
                     interpolation_error(m, rho), 1e-3, "abs", started=started)

    for n in (2, 16, 64):
        report.add_check(f"causal_window_ge_limit[{m.name};n={n}]",
                         finite_window_error(m, rho, n, "causal").sigma2,
                         causal_error(m, rho), 1e-9, "ge")
        report.add_check(f"smoothing_window_ge_limit[{m.name};n={n}]",
                         finite_window_error(m, rho, n, "smoothing").sigma2,
                         noncausal_error(m, rho), 1e-9, "ge")
    return report


def run_lambda(model: Optional[FadingModel] = None, **_) -> ValidationReport:
    """Cesaro sums lambda_n increasing to lambda_inf."""
    report = ValidationReport(suite="lambda")
    m = model or GaussMarkovModel(r=0.9)
    started = _now()
    lam = compute_lambda_inf(m)
    expected = m.closed_form_lambda_inf()
    if model is None:
        expected = GM_09_LAMBDA
    if expected is not None:
        report.add_check(f"lambda_inf[{m.name}]", lam, expected, 1e-6, "rel", started=started)
    report.add_check(f"lambda_series_vs_quadrature[{m.name}]",
                     lambda_inf_series(m).value, lam, 1e-6, "abs")

    for n in (1, 2, 4, 16, 64, 256, 512, 1024):
        report.add_check(f"lambda_n_le_inf[{m.name};n={n}]", lambda_n(m, n), lam, 1e-12, "le")
    report.add_check(f"lambda_512_gap[{m.name}]", lambda_n(m, 512), lam, 0.01, "rel")
    report.add_check(f"lambda_n_double_sum[{m.name};n=64]",
                     lambda_n_double_sum(m, 64), lambda_n(m, 64), 1e-9, "rel")
    return report


def run_ct(**_) -> ValidationReport:
    """Continuous-time quadrature against closed forms."""
    report = ValidationReport(suite="ct")
    ou = make_ct_model("ornstein_uhlenbeck", gamma=1.0)
    started = _now()
    report.add_check("ct_I[ou(gamma=1);P=2]", ct_I(ou, 2.0), OU_I_AT_2, 1e-6, "abs",
                     started=started)
    report.add_check("ct_capacity[ou(gamma=1);P_ave=0.5;P_peak=2]",
                     ct_capacity(ou, 0.5, 2.0), OU_CAPACITY, 1e-6, "abs")
    for p in (0.1, 1.0, 10.0):
        report.add_check(f"ct_I_closed_form[ou(gamma=1);P={p:g}]",
                         ct_I(ou, p), ou.closed_form_I(p), 1e-6, "rel")
    report.add_check("ct_unit_mass[ou(gamma=1)]", ct_unit_mass(ou), 1.0, 1e-6, "abs")

    flat = make_ct_model("bandlimited", W=1.0)
    report.add_check("ct_I_closed_form[bandlimited(W=1);P=1]",
                     ct_I(flat, 1.0), flat.closed_form_I(1.0), 1e-6, "rel")
    report.add_check("ct_unit_mass[bandlimited(W=1)]", ct_unit_mass(flat), 1.0, 1e-6, "abs")
    return report


_SUITES: Dict[str, Callable[..., ValidationReport]] = {
    "asymptotes": run_asymptotes,
    "mi": run_mi,
    "prediction": run_prediction,
    "lambda": run_lambda,
    "ct": run_ct,
}


def run_suite(
    suite: str = "all",
    model: Optional[FadingModel] = None,
    seed: int = 42,
    samples: int = 1_000_000,
) -> ValidationReport:
    """
    Run one suite (or all of them) and return the finished report.

    A check that raises is recorded as a failure rather than aborting the run.
    """
    if suite not in SUITES:
        raise ConfigurationError(f"Unknown suite {suite!r}; choose from {', '.join(SUITES)}",
                                 setting="suite")
    names = [s for s in SUITES if s != "all"] if suite == "all" else [suite]
    report = ValidationReport(suite=suite)
    for name in names:
        logger.info("Running validation suite '%s'", name)
        try:
            report.extend(_SUITES[name](model=model, seed=seed, samples=samples))
        except FadeCapError as e:
            logger.error("Suite '%s' raised: %s", name, e)
            report.add_check(f"{name}[error:{e.error_code}]", math.nan, 0.0, 0.0)
    report.finish()
    return report
