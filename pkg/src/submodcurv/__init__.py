"""Exact curvature invariants of ideal-generated submodules on polydiscs.

The package computes, in exact rational arithmetic, the objects attached to
a weighted analytic module on the unit polydisc and an ideal-generated
submodule: reproducing kernels, frame decompositions along zero varieties,
Grammian metrics, curvature matrices, determinant-bundle curvature,
localization dimensions, and rigidity decision procedures.
"""

from .algebra import (LogSeries, MultiIndex, SeriesMatrix, TruncSeries,
                      iter_multiindices, mixed_hessian, pochhammer, rat,
                      series_det, series_exp, series_inverse, series_log)
from .curvature import (CONVENTION, CurvatureTensor, PrincipalCurvaturePair,
                        curvature_matrix, det_bundle_curvature,
                        fd_log_hessian, fd_mixed_hessian, gauge_conjugate,
                        gauge_equivalent, gauge_transform_metric,
                        line_curvature, principal_curvature_pair)
from .errors import (DegeneracyError, DomainError, InputError, ShapeError,
                     SingularityError, SubmodcurvError, TruncationError,
                     UnsupportedIdealError)
from .frames import (FrameSeries, MetricSeries, decompose_coordinate_ideal,
                     frame_on_zero_set, frame_vector_at_base, grammian,
                     reconstruction_residual)
from .ideals import (CATALOGUE, CoordinateSubspace, IdealSpec,
                     LocalizationResult, MinimalityCertificate, PointSet,
                     localization_dim, minimality_certificate, zero_set)
from .invariants import (CubicReport, LambdaMuInvariant, RigidityReport,
                         cubic_positive_roots, lambda_mu_equivalent,
                         lambda_mu_invariants, polydisc_rigidity,
                         polydisc_rigidity_report, principal_rigidity,
                         sturm_chain)
from .polynomials import Poly, parse_poly
from .rkhs import (DiagonalFilteredKernel, GramFormKernel,
                   RankOneCorrectedKernel, WeightedPolydiscModule,
                   ambient_kernel_exact, diag_coeff, monomial_norm_sq,
                   poly_inner, submodule_kernel)

__version__ = "0.1.0"

__all__ = [
    "CATALOGUE", "CONVENTION", "CoordinateSubspace", "CubicReport",
    "CurvatureTensor", "DegeneracyError", "DiagonalFilteredKernel",
    "DomainError", "FrameSeries", "GramFormKernel", "IdealSpec",
    "InputError", "LambdaMuInvariant", "LocalizationResult", "LogSeries",
    "MetricSeries", "MinimalityCertificate", "MultiIndex", "PointSet",
    "Poly", "PrincipalCurvaturePair", "RankOneCorrectedKernel",
    "RigidityReport", "SeriesMatrix", "ShapeError", "SingularityError",
    "SubmodcurvError", "TruncSeries", "TruncationError",
    "UnsupportedIdealError", "WeightedPolydiscModule",
    "ambient_kernel_exact", "cubic_positive_roots", "curvature_matrix",
    "decompose_coordinate_ideal", "det_bundle_curvature", "diag_coeff",
    "fd_log_hessian", "fd_mixed_hessian", "frame_on_zero_set",
    "frame_vector_at_base", "gauge_conjugate", "gauge_equivalent",
    "gauge_transform_metric", "grammian", "iter_multiindices",
    "lambda_mu_equivalent", "lambda_mu_invariants", "line_curvature",
    "localization_dim", "minimality_certificate", "mixed_hessian",
    "monomial_norm_sq", "parse_poly", "pochhammer", "poly_inner",
    "polydisc_rigidity", "polydisc_rigidity_report",
    "principal_curvature_pair", "principal_rigidity", "rat",
    "reconstruction_residual", "series_det", "series_exp", "series_inverse",
    "series_log", "sturm_chain", "submodule_kernel", "zero_set",
]
