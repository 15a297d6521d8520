"""Nested-sum power series for the Lame equation in Weierstrass form.

The Lame equation y'' = (alpha(alpha+1) rho^2 sn^2(z, rho) - h) y is solved
about sn^2 = 0 by regrouping its three-term recurrence into nested sums,
checked against a plain Frobenius recurrence, linked to nine Heun local
solutions and to an integral representation of its first-order block.
"""

from .asymptotics import (
    DomainVerdict,
    convergence_domain,
    lame_asymptotic_limit,
    lame_asymptotic_small_rho,
    small_rho_domain,
)
from .elliptic import complete_K, jacobi_sn, xi_of_z
from .errors import (
    BranchError,
    DivergenceError,
    DomainError,
    PoleError,
    QuadratureError,
    QuantizationError,
    SingularConfigurationError,
)
from .frobenius import (
    LameParams,
    SeriesPoly,
    eval_series,
    frobenius_coefficients,
    ode_residual,
    ode_residual_z,
    recurrence_coeffs,
)
from .heunlocal import (
    DESCRIPTORS,
    HeunParams,
    HeunSeriesCoeffs,
    Regime,
    heun_asymptotic,
    heun_domain,
    heun_hf_infinite,
    heun_hf_poly1,
    local_solution,
)
from .hypergeo import HypergeometricArgs, gauss_2f1, pochhammer, weighted_2f1
from .integralform import QuadratureSpec, WChain, heun_y1_integral, w_value, y1_integral, y1_series_reference
from .series3trf import (
    Branch,
    Family,
    Kind,
    SolutionSpec,
    Type1Quantization,
    expand_to_xi_coeffs,
    lf_infinite,
    lf_poly_type1,
    ls_infinite,
    quantized_alpha,
)

__version__ = "0.1.0"
