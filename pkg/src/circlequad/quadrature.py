"""Quadrature rules on the unit circle: weight solving, exactness
verification, rule assembly, and the tau-grid scanner.

A rule {(z_s, lambda_s)} built from an (n, ell) spec integrates all
Laurent monomials z**k, |k| <= m = n - ell - 1, exactly, plus the single
extra element z**(m+1) - omega * z**-(m+1). Weights are recovered from
the full moment-matching system; its residual doubles as the
certificate that the nodal polynomial really was quasi-paraorthogonal
for the measure.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .config import TOL
from .errors import (
    CircleQuadError,
    InvalidParameterError,
    NodesNotQuadratureError,
    NotRepresentableError,
    PositivityViolationError,
)
from .measures import MeasureSpec, moments
from .opuc import TWO_PI, MomentSequence, SchurSequence, UnitPoint, schur_from_moments
from .poly import ONE
from .prescribe import prescribe_2l
from .qpopuc import QpopucSpec, assemble, orthogonality_params, zeros_on_circle

GREEN = "positive"
RED_SCHUR = "inadmissible-schur"
RED_WEIGHTS = "simple-nodes-nonpositive-weights"
RED_BOUNDARY = "boundary-degenerate"


@dataclass(frozen=True)
class QuadRule:
    nodes: list  # of UnitPoint
    weights: np.ndarray  # real, positive for admissible rules
    m: int  # exact on z**k for |k| <= m
    omega: complex | None  # extra exact element z**(m+1) - omega z**-(m+1)
    measure: MeasureSpec | None = None
    n: int | None = None
    ell: int | None = None
    tau: complex | None = None

    def apply(self, f) -> complex:
        z = np.array([p.z for p in self.nodes])
        return complex(np.sum(self.weights * f(z)))


@dataclass
class TauScan:
    thetas: np.ndarray
    labels: list
    arcs: list  # of (theta_start, theta_end) green arcs, refined


def weights(nodes, mu: MomentSequence, m: int) -> np.ndarray:
    """Weights matching all moments mu_k, |k| <= m, in least squares.

    The stacked real/imaginary system is consistent exactly when the
    nodes are the zeros of a quasi-paraorthogonal polynomial of the
    measure; an inconsistent system is reported as such instead of
    returning a best-fit rule.
    """
    n = len(nodes)
    if 2 * m + 1 < n:
        raise InvalidParameterError(f"2m + 1 = {2 * m + 1} rows cannot pin {n} weights")
    if mu.order < m:
        raise InvalidParameterError(f"need moments to order {m}, have {mu.order}")
    z = np.array([p.z for p in nodes])
    k = np.arange(-m, m + 1)
    a = z[None, :] ** k[:, None]
    b = mu.array(-m, m)
    a_real = np.vstack([a.real, a.imag])
    b_real = np.concatenate([b.real, b.imag])
    lam, *_ = np.linalg.lstsq(a_real, b_real, rcond=None)
    resid = float(np.max(np.abs(a @ lam - b)))
    mu0 = float(mu.get(0).real)
    if resid > TOL.weight_residual * mu0:
        raise NodesNotQuadratureError(
            f"moment-matching residual {resid:.3e} exceeds {TOL.weight_residual * mu0:.1e}; "
            "the nodes are not the zeros of a quasi-paraorthogonal polynomial "
            "for this measure"
        )
    return lam


def build_rule(
    measure: MeasureSpec,
    spec: QpopucSpec,
    mu: MomentSequence | None = None,
    deltas: SchurSequence | None = None,
) -> QuadRule:
    """Full positive rule for an admissible spec.

    Precomputed moments/reflection coefficients may be passed to avoid
    recomputation in scans.
    """
    m = spec.n - spec.ell - 1
    need = max(2 * m + 2, spec.n - spec.ell)
    if mu is None:
        mu = moments(measure, need)
    if deltas is None:
        deltas = schur_from_moments(mu, spec.n - spec.ell)
    nodes = zeros_on_circle(spec, deltas)
    lam = weights(nodes, mu, m)
    params = orthogonality_params(spec, deltas)
    omega = None if params.collapsed else params.omega
    mu0 = float(mu.get(0).real)
    if np.min(lam) <= TOL.weight_positive:
        raise PositivityViolationError(
            f"minimum weight {np.min(lam):.3e} is not positive",
            diagnostics={
                "weights": lam.tolist(),
                "nodes_theta": [p.theta for p in nodes],
                "tau": spec.tau,
            },
        )
    if abs(float(np.sum(lam)) - mu0) > 1e-10 * mu0:
        raise NodesNotQuadratureError(
            f"weights sum to {np.sum(lam)}, expected mu_0 = {mu0}"
        )
    return QuadRule(
        nodes=nodes,
        weights=lam,
        m=m,
        omega=omega,
        measure=measure,
        n=spec.n,
        ell=spec.ell,
        tau=spec.tau,
    )


def verify_exactness(rule: QuadRule, mu: MomentSequence) -> dict:
    """Residual report over the claimed exactness space.

    Checks z**k for k = 0..m (negative powers follow by conjugation for
    real weights), the omega-paired element at order m + 1, the bare
    monomial z**(m+1) (sharpness: it should fail for generic measures),
    and the first failing plain power beyond, if any is observable.
    """
    m = rule.m
    if mu.order < m + 1:
        raise InvalidParameterError(f"need moments to order {m + 1}, have {mu.order}")
    z = np.array([p.z for p in rule.nodes])
    lam = rule.weights
    mu0 = float(mu.get(0).real)
    tol = TOL.weight_residual * mu0
    residuals = {}
    ok = True
    for k in range(m + 1):
        r = abs(np.sum(lam * z**k) - mu.get(k))
        residuals[k] = float(r)
        ok = ok and r <= tol
    report = {"residuals": residuals, "tolerance": tol}
    if rule.omega is not None:
        pair = np.sum(lam * (z ** (m + 1) - rule.omega * z ** (-(m + 1))))
        target = mu.get(m + 1) - rule.omega * mu.get(-(m + 1))
        r_omega = float(abs(pair - target))
        residuals["omega_pair"] = r_omega
        ok = ok and r_omega <= tol
    bare = float(abs(np.sum(lam * z ** (m + 1)) - mu.get(m + 1)))
    report["bare_next_power"] = bare
    report["sharp"] = bare > tol
    first_fail = None
    for k in range(m + 1, mu.order + 1):
        if abs(np.sum(lam * z**k) - mu.get(k)) > tol:
            first_fail = k
            break
    report["first_failing_power"] = first_fail
    report["passes"] = bool(ok)
    return report


def _classify(measure, n, ell, alphas, tau, mu, deltas) -> str:
    """One scanner grid point -> classification label."""
    try:
        if ell == 0:
            res_spec = QpopucSpec(n, 0, ONE, tau)
            admissible = True
        else:
            pres = prescribe_2l(deltas, n, ell, alphas, tau)
            res_spec = pres.spec
            admissible = pres.admissible
    except CircleQuadError:
        return RED_BOUNDARY
    if admissible:
        try:
            build_rule(measure, res_spec, mu=mu, deltas=deltas)
            return GREEN
        except PositivityViolationError:
            return RED_WEIGHTS
        except CircleQuadError:
            return RED_BOUNDARY
    # Schur-Cohn failed: peek at the zeros of Q through the companion
    # matrix (diagnostic only) to tell off-circle pairs apart from
    # simple circle nodes with some negative weight
    try:
        q = assemble(res_spec, deltas)
    except CircleQuadError:
        return RED_BOUNDARY
    roots = q.roots()
    if np.max(np.abs(np.abs(roots) - 1.0)) > 1e-6:
        return RED_SCHUR
    gaps = np.abs(roots[:, None] - roots[None, :]) + np.eye(len(roots))
    if np.min(gaps) < 1e-8:
        return RED_BOUNDARY
    try:
        pts = [UnitPoint.from_complex(r, tol=1e-6) for r in roots]
        lam = weights(pts, mu, n - ell - 1)
    except CircleQuadError:
        return RED_SCHUR
    return RED_WEIGHTS if np.min(lam) <= TOL.weight_positive else GREEN


def scan_tau(
    measure: MeasureSpec,
    n: int,
    ell: int,
    alphas,
    grid_size: int = 4000,
) -> TauScan:
    """Classify the invariance parameter over a uniform circle grid.

    Adjacent grid points with the positive classification are merged
    into maximal arcs (with wraparound); each green/non-green boundary
    is then refined by bisection to the configured angular resolution.
    """
    if grid_size < 8:
        raise InvalidParameterError("grid_size must be at least 8")
    m = n - ell - 1
    need = max(2 * m + 2, n - ell)
    mu = moments(measure, need)
    deltas = schur_from_moments(mu, n - ell)
    thetas = np.arange(grid_size) * (TWO_PI / grid_size)

    def label_at(theta):
        return _classify(
            measure, n, ell, alphas, complex(np.exp(1j * theta)), mu, deltas
        )

    labels = [label_at(t) for t in thetas]

    green = [lab == GREEN for lab in labels]
    arcs = []
    if all(green):
        arcs.append((0.0, TWO_PI))
    elif any(green):
        # walk runs of green points with wraparound
        g = np.array(green)
        starts = np.where(g & ~np.roll(g, 1))[0]
        for s in starts:
            e = s
            while g[(e + 1) % grid_size]:
                e = (e + 1) % grid_size
            lo = _refine_boundary(label_at, thetas[s], -TWO_PI / grid_size)
            hi = _refine_boundary(label_at, thetas[e], TWO_PI / grid_size)
            arcs.append((lo % TWO_PI, hi % TWO_PI))
        arcs.sort()
    return TauScan(thetas=thetas, labels=labels, arcs=arcs)


def _refine_boundary(label_at, theta_green, step):
    """Bisect between a green angle and its non-green neighbor."""
    lo, hi = theta_green, theta_green + step
    while abs(hi - lo) > TOL.scan_refine:
        mid = 0.5 * (lo + hi)
        if label_at(mid) == GREEN:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def apply(rule: QuadRule, f) -> complex:
    return rule.apply(f)


def rule_to_dict(rule: QuadRule, residuals: dict | None = None) -> dict:
    def c_pair(z):
        return None if z is None else [z.real, z.imag]

    return {
        "n": rule.n,
        "ell": rule.ell,
        "tau": c_pair(rule.tau),
        "omega": c_pair(rule.omega),
        "m": rule.m,
        "measure": rule.measure.label() if rule.measure else None,
        "nodes": [
            {"theta": p.theta, "re": p.z.real, "im": p.z.imag} for p in rule.nodes
        ],
        "weights": [float(w) for w in rule.weights],
        "residuals": residuals or {},
    }


def rule_from_dict(data: dict, measure: MeasureSpec | None = None) -> QuadRule:
    nodes = [UnitPoint(d["theta"], complex(d["re"], d["im"])) for d in data["nodes"]]

    def from_pair(p):
        return None if p is None else complex(p[0], p[1])

    return QuadRule(
        nodes=nodes,
        weights=np.array(data["weights"], dtype=float),
        m=int(data["m"]),
        omega=from_pair(data.get("omega")),
        measure=measure,
        n=data.get("n"),
        ell=data.get("ell"),
        tau=from_pair(data.get("tau")),
    )


def save_rule(rule: QuadRule, path, residuals=None) -> None:
    with open(path, "w") as fh:
        json.dump(rule_to_dict(rule, residuals), fh, indent=2)


def save_rule_csv(rule: QuadRule, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["theta", "weight"])
        for p, w in zip(rule.nodes, rule.weights):
            writer.writerow([repr(p.theta), repr(float(w))])
