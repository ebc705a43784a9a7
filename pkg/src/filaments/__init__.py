"""Filament plots: isometric plane-curve embeddings of tabular data and the
unit-length space curves built from them via moving-frame integration."""

__version__ = "0.1.0"

from .andrews import (
    AndrewsMap,
    CurveMap,
    PlaneCurveSamples,
    build_identity_map,
    build_map,
    evaluate_curve,
    evaluate_time_slice,
    gram_deviation,
    mqv_closed_form,
    mqv_of_map,
    slice_interval_epsilon,
    time_slice_singular_values,
)
from .bishop import (
    Filament,
    FrameTrajectory,
    build_filament,
    check_identity,
    integrate_frame,
    rodrigues_exp,
    skew_from_phi,
    torsion,
)
from .gauss import GaussSumReport, gauss_sum, perturb_singular_values, verify_bound
from .ingest import Dataset, Standardization, load_csv, standardize
from .spectral import SvdFactors, group_ties, svd

__all__ = [
    "AndrewsMap",
    "CurveMap",
    "Dataset",
    "Filament",
    "FrameTrajectory",
    "GaussSumReport",
    "PlaneCurveSamples",
    "Standardization",
    "SvdFactors",
    "build_filament",
    "build_identity_map",
    "build_map",
    "check_identity",
    "evaluate_curve",
    "evaluate_time_slice",
    "gauss_sum",
    "gram_deviation",
    "group_ties",
    "integrate_frame",
    "load_csv",
    "mqv_closed_form",
    "mqv_of_map",
    "perturb_singular_values",
    "rodrigues_exp",
    "skew_from_phi",
    "slice_interval_epsilon",
    "standardize",
    "svd",
    "time_slice_singular_values",
    "torsion",
    "verify_bound",
]
