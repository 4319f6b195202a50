"""Exact Hankel transforms of quadratic continued fractions and Somos-4 checks."""

from .cf import (
    CFParams,
    SomosCertificate,
    TauOrbit,
    fit_canonical_cf,
    orbit_somos_residual,
    series_from_cf,
    tau_orbit,
    tau_transform,
    theorem1_certificate,
    theorem1_T_residual,
    theorem3_residual,
)
from .gflang import eval_gf, parse_gf, pretty_print
from .hankel import (
    RationalMatrix,
    det_bareiss,
    det_naive,
    hankel_matrix,
    hankel_transform,
    hankel_via_orbit,
)
from .presets import PRESETS, expected_somos_params
from .series import PowerSeries, fixed_point_solve, ps_add, ps_inv, ps_mul
from .somos import Somos4Params, somos4_fit, somos4_generate, somos4_residuals
from .verify import VerificationReport, somos_seed_pipeline, verify_preset, verify_sweep

__version__ = "0.1.0"
