"""Centralized numerical tolerances.

Every threshold used by the library lives here so that the disk/circle
membership bands can be tightened or relaxed in one place.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # unit-circle membership for inputs (|z| - 1)
    on_circle: float = 1e-12
    # UnitPoint internal consistency between theta and z
    unit_point: float = 1e-14
    # Schur-Cohn refusal band around |s_k(0)| = 1
    disk_boundary_band: float = 1e-12
    # |F_n(z) - target| for accepted Blaschke roots
    root_residual: float = 1e-11
    # bisection stops when the theta bracket is this narrow
    bisect_theta: float = 1e-14
    # allowed non-monotonicity in sampled unwrapped phase
    phase_jitter: float = 1e-9
    # minimum theta gap between distinct roots
    root_gap: float = 1e-10
    # orthogonality residuals, relative to E_0
    orthogonality: float = 1e-10
    # pointwise check of the direct vs. Favard-route representation
    representation: float = 1e-10
    # moment-matching residual for weights, relative to mu_0
    weight_residual: float = 1e-9
    # nodal residual |Q(alpha_i)|, relative to max coefficient
    node_residual: float = 1e-9
    # 1-norm condition number above which linear systems are refused
    condition_limit: float = 1e12
    # degenerate (parallel-secant) detection in the 2-node solve
    lobatto_degenerate: float = 1e-12
    # order-collapse detection: |sigma| <= tol * (1 + |delta|)
    sigma_collapse: float = 1e-12
    # minimum weight accepted as positive
    weight_positive: float = 1e-12
    # tau-arc boundary refinement (radians)
    scan_refine: float = 1e-4


TOL = Tolerances()
