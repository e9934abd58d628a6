"""SINR analysis of Poisson ad hoc networks.

Monte Carlo simulation of non-fading, Rayleigh-fading and
partial-fading SINR distributions, closed-form CDF/rate/outage bounds,
Laplace-transform characterizations of the inverted SINR with numerical
inversion, and a multi-antenna conjugate-beamforming case study.
"""

from .bounds import BoundCurve, CurveKind
from .channel import FadingModel, draw_powers
from .geometry import (
    DistanceSequence,
    NetworkConfig,
    TruncationPolicy,
    emit_realization,
    nearest_pdf,
    sample_distances,
)
from .kernels import active_backend, available_backends
from .laplace import cdf_via_laplace, laplace_inv_q_nfd, laplace_inv_q_pfd
from .mc import (
    EmpiricalCdf,
    Estimate,
    RateParams,
    SinrSampleSet,
    ks_distance,
    mean_shannon_rate,
    outage_rate,
    run_mc,
    sinr_sample,
)
from .mmimo import MmimoConfig, mmimo_asymptotic_sinr, mmimo_finite_sinr, run_mmimo
from .numerics import (
    DEFAULT_INVERSION,
    DEFAULT_QUAD,
    InversionSpec,
    QuadSpec,
    integrate,
    invert_laplace_cdf,
    lower_inc_gamma,
    rho,
    upper_inc_gamma,
)
from .rng import realization_stream

__version__ = "0.1.0"
