"""Positive Szego-type quadrature on the unit circle with prescribed nodes."""

from ._kernels import using_numba
from .config import TOL, Tolerances
from .errors import CircleQuadError
from .measures import ArcSpec, MeasureSpec, modified_hat_moments, moments
from .opuc import (
    MomentSequence,
    SchurSequence,
    UnitPoint,
    blaschke_eval,
    blaschke_solve,
    inner_product,
    schur_cohn,
    schur_from_moments,
    szego_from_schur,
)
from .poly import ComplexPoly, from_zeros
from .prescribe import (
    PrescriptionResult,
    classical_arc,
    lobatto2,
    prescribe_2l,
    prescribe_2lp1,
    radau,
    radau_arc_admissible,
    tau_for_omega,
    three_nodes,
)
from .qpopuc import (
    OrthogonalityParams,
    QpopucSpec,
    assemble,
    invariance_parameter,
    modified_schur,
    orthogonality_params,
    zeros_on_circle,
)
from .quadrature import (
    QuadRule,
    TauScan,
    build_rule,
    scan_tau,
    verify_exactness,
    weights,
)

__version__ = "0.1.0"

__all__ = [
    "TOL",
    "Tolerances",
    "CircleQuadError",
    "ComplexPoly",
    "from_zeros",
    "MomentSequence",
    "SchurSequence",
    "UnitPoint",
    "ArcSpec",
    "MeasureSpec",
    "moments",
    "modified_hat_moments",
    "schur_from_moments",
    "szego_from_schur",
    "inner_product",
    "blaschke_eval",
    "blaschke_solve",
    "schur_cohn",
    "QpopucSpec",
    "OrthogonalityParams",
    "assemble",
    "invariance_parameter",
    "orthogonality_params",
    "modified_schur",
    "zeros_on_circle",
    "PrescriptionResult",
    "radau",
    "radau_arc_admissible",
    "lobatto2",
    "three_nodes",
    "prescribe_2l",
    "prescribe_2lp1",
    "classical_arc",
    "tau_for_omega",
    "QuadRule",
    "TauScan",
    "weights",
    "build_rule",
    "verify_exactness",
    "scan_tau",
    "using_numba",
]
