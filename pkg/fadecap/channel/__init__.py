"""fadecap Channel Package - block inputs, exact densities and MI estimates"""

from fadecap.channel.vector import (
    InputDistribution,
    QuadraticMI,
    coupled_onoff,
    moment_coefficient,
    iid_onoff,
    k_of_mu,
    k_of_z,
    mi_cubic_coefficient,
    mi_quadratic,
    min_eigenvalue,
    point_mass,
)
from fadecap.channel.oracle import (
    MIEstimate,
    conditional_covariance,
    log_conditional_density,
    mi_monte_carlo,
    mi_quadrature_1d,
    sample_output,
)

__all__ = [
    "InputDistribution",
    "QuadraticMI",
    "point_mass",
    "iid_onoff",
    "coupled_onoff",
    "k_of_z",
    "k_of_mu",
    "mi_quadratic",
    "mi_cubic_coefficient",
    "moment_coefficient",
    "min_eigenvalue",
    "MIEstimate",
    "conditional_covariance",
    "log_conditional_density",
    "sample_output",
    "mi_monte_carlo",
    "mi_quadrature_1d",
]
