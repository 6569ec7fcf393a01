"""Numerical pipeline for curvature pinching of starshaped hypersurfaces.

Modules: spaceform (conformal ball models of the three space forms),
symfun (symmetric-function calculus on principal curvatures), surface
(radial graphs and pointwise extrinsic data), quadrature (sphere rules and
normalized L^p norms), identities (residual checks for the integral
identities and inequality chain), constants (the explicit constant chain
K1..K3, eps1 and the stability bound), pinch (the stability experiment)
and cli (the command-line front end).
"""

from .constants import ConstantsConfig, ProofConstants, final_bound
from .errors import ConfigError, HypothesisError, NumericalError, StarpinchError
from .pinch import (PinchReport, RunSettings, fit_geodesic_sphere,
                    hausdorff_distance, run_pinch, scaling_study)
from .quadrature import SphericalRule, build_rule, lp_norm, surface_integral
from .spaceform import (SpaceFormModel, c_delta, geodesic_distance,
                        geodesic_radius, position_vector, s_delta)
from .surface import RadialSurface, evaluate_point, starshape_report
from .symfun import (CurvatureProfile, calibrate, curvature_profile,
                     elementary_symmetric, maclaurin_gaps, newton_gap,
                     normalized_mean_curvatures, partial_H)

__all__ = [
    "ConstantsConfig",
    "ProofConstants",
    "final_bound",
    "ConfigError",
    "HypothesisError",
    "NumericalError",
    "StarpinchError",
    "PinchReport",
    "RunSettings",
    "fit_geodesic_sphere",
    "hausdorff_distance",
    "run_pinch",
    "scaling_study",
    "SphericalRule",
    "build_rule",
    "lp_norm",
    "surface_integral",
    "SpaceFormModel",
    "c_delta",
    "geodesic_distance",
    "geodesic_radius",
    "position_vector",
    "s_delta",
    "RadialSurface",
    "evaluate_point",
    "starshape_report",
    "CurvatureProfile",
    "calibrate",
    "curvature_profile",
    "elementary_symmetric",
    "maclaurin_gaps",
    "newton_gap",
    "normalized_mean_curvatures",
    "partial_H",
]

__version__ = "0.1.0"
