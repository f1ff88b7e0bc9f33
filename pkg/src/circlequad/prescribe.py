"""Solving for the free parameters (P, tau) from prescribed nodes.

Given reflection coefficients of the measure and up to 2*ell + 1 points
on the unit circle, these routines produce a spec (n, ell, P, tau) whose
polynomial Q vanishes at the prescribed points. Variants: one node
(Radau), two nodes with free tau (Lobatto), three nodes (tau determined),
the general 2*ell and 2*ell + 1 node systems, arc-endpoint rules built on
the endpoint-modified measure, and recovering tau from a target
exactness parameter omega.

Throughout, f_i = conj(F_{n-ell}(alpha_i)) where F_k is the Blaschke
quotient z rho_{k-1} / rho*_{k-1}.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from .config import TOL
from .errors import (
    BoundaryDegenerateError,
    ConditionViolationError,
    InternalConsistencyError,
    InvalidParameterError,
    NoSolutionError,
    RankDeficiencyError,
)
from .measures import ArcSpec, in_open_arc, same_orientation
from .opuc import (
    MomentSequence,
    SchurSequence,
    UnitPoint,
    blaschke_eval,
    blaschke_solve,
    schur_cohn,
    schur_from_moments,
)
from .poly import ONE, ComplexPoly, from_zeros
from .qpopuc import QpopucSpec, assemble
from .measures import modified_hat_moments


@dataclass
class PrescriptionResult:
    spec: QpopucSpec | None
    admissible: bool
    diagnostics: dict = field(default_factory=dict)
    # populated only by classical_arc, whose nodal polynomial lives on a
    # modified moment chain rather than the base one
    nodes: list | None = None
    nodal_poly: ComplexPoly | None = None


def _f_values(deltas: SchurSequence, n: int, ell: int, alphas) -> np.ndarray:
    return np.array(
        [np.conj(blaschke_eval(deltas, n - ell, a.z)) for a in alphas]
    )


def _check_residual(spec: QpopucSpec, deltas: SchurSequence, alphas, tol_rel):
    q = assemble(spec, deltas)
    z = np.array([a.z for a in alphas])
    resid = float(np.max(np.abs(q(z)))) if len(z) else 0.0
    limit = tol_rel * q.max_abs_coeff()
    if resid > limit:
        raise InternalConsistencyError(
            f"prescribed-node residual {resid:.3e} exceeds {limit:.3e}"
        )
    return resid


def radau(deltas: SchurSequence, n: int, alpha: UnitPoint) -> PrescriptionResult:
    """One prescribed node (ell = 0): tau = -F_n(alpha)."""
    if n < 2:
        raise InvalidParameterError("radau requires n >= 2")
    tau = -blaschke_eval(deltas, n, alpha.z)
    spec = QpopucSpec(n, 0, ONE, tau)
    resid = _check_residual(spec, deltas, [alpha], 1e-11)
    return PrescriptionResult(
        spec,
        admissible=True,
        diagnostics={"f_values": [np.conj(-tau)], "residual": resid},
    )


def radau_arc_admissible(
    deltas: SchurSequence, n: int, tau: complex, arc: ArcSpec, closed: bool = False
) -> bool:
    """Does -tau lie on the (counterclockwise) arc (F_n(a), F_n(b))?

    True guarantees all n zeros of the corresponding one-node rule fall
    in the open support arc (a, b).
    """
    tau_a = blaschke_eval(deltas, n, arc.a.z)
    tau_b = blaschke_eval(deltas, n, arc.b.z)
    if closed:
        if abs(-tau - tau_a) < 1e-12 or abs(-tau - tau_b) < 1e-12:
            return True
    return in_open_arc(-tau, tau_a, tau_b)


def lobatto2(
    deltas: SchurSequence,
    n: int,
    alpha1: UnitPoint,
    alpha2: UnitPoint,
    tau: complex,
    t: float = 0.5,
) -> PrescriptionResult:
    """Two prescribed nodes, free tau (ell = 1).

    Generic case: the single zero of P is eta = c12 + tau * a12 with
    conj(c12) = (f1 - f2) / (f1 a1 - f2 a2) and
    conj(a12) = (a1 - a2) / (f1 a1 - f2 a2). Admissible iff |eta| < 1.
    In the degenerate case f1 a1 = f2 a2 only one tau works and eta is
    free along the chord between the nodes (parameter ``t``).
    """
    if n < 3:
        raise InvalidParameterError("lobatto2 requires n >= 3")
    a1, a2 = alpha1.z, alpha2.z
    if abs(a1 - a2) < 1e-12:
        raise InvalidParameterError("prescribed nodes must be distinct")
    f1, f2 = _f_values(deltas, n, 1, [alpha1, alpha2])
    diagnostics = {"f_values": [f1, f2]}
    if abs(f1 - f2) < 1e-12:
        raise NoSolutionError(
            "Blaschke values at the two nodes coincide; eta would be forced "
            "onto the unit circle"
        )
    denom = f1 * a1 - f2 * a2
    if abs(denom) < TOL.lobatto_degenerate * (abs(f1) + abs(f2)):
        # degenerate: only one invariance parameter admits both nodes
        tau_req = a1 * np.conj(f2)
        diagnostics["degenerate_case"] = True
        if abs(tau - tau_req) > 1e-9:
            raise NoSolutionError(
                f"degenerate configuration requires tau = {tau_req}, got {tau}"
            )
        if not (0.0 < t < 1.0):
            raise InvalidParameterError("chord parameter t must lie in (0, 1)")
        eta = a1 + t * (a2 - a1)
    else:
        c12 = np.conj((f1 - f2) / denom)
        a12 = np.conj((a1 - a2) / denom)
        eta = c12 + tau * a12
        diagnostics.update(c12=complex(c12), a12=complex(a12), degenerate_case=False)
        # admissible-tau arc: from a1*conj(f2) over the midpoint direction
        # to a2*conj(f1)
        x = a1 * np.conj(f2)
        y = a2 * np.conj(f1)
        c = -((np.conj(f1) - np.conj(f2)) / abs(f1 - f2)) * ((a1 - a2) / abs(a1 - a2))
        if in_open_arc(c, x, y):
            diagnostics["tau_arc"] = ArcSpec(
                UnitPoint.from_complex(x), UnitPoint.from_complex(y)
            )
        else:
            diagnostics["tau_arc"] = ArcSpec(
                UnitPoint.from_complex(y), UnitPoint.from_complex(x)
            )
    diagnostics["eta"] = complex(eta)
    admissible = abs(eta) < 1.0 - TOL.disk_boundary_band
    spec = QpopucSpec(n, 1, from_zeros([eta]), tau)
    if admissible:
        _check_residual(spec, deltas, [alpha1, alpha2], TOL.node_residual)
    return PrescriptionResult(spec, admissible, diagnostics)


def _mobius_through(points, images):
    """Coefficients (a, b, c, d) of the Moebius map sending each point
    to its image, via the nullspace of the 3x4 incidence system."""
    rows = []
    for z, w in zip(points, images):
        rows.append([z, 1.0, -w * z, -w])
    _, s, vh = np.linalg.svd(np.array(rows, dtype=complex))
    if s[-1] < 1e-10 * s[0]:
        raise NoSolutionError(
            "Moebius interpolation is degenerate (coincident data)"
        )
    return vh[-1].conj()


def three_nodes(
    deltas: SchurSequence, n: int, alphas: list[UnitPoint]
) -> PrescriptionResult:
    """Three prescribed nodes (ell = 1): both eta and tau are determined.

    The interpolation conditions say the disk automorphism
    conj(tau) (z - eta)/(1 - conj(eta) z) maps alpha_i to -f_i; the map
    is recovered by Moebius interpolation and decomposed. It is a disk
    automorphism (|eta| < 1) exactly when the alpha and f triples have
    the same orientation on the circle; both criteria are evaluated and
    must agree.
    """
    if len(alphas) != 3:
        raise InvalidParameterError("three_nodes takes exactly 3 points")
    az = [p.z for p in alphas]
    if min(abs(az[0] - az[1]), abs(az[0] - az[2]), abs(az[1] - az[2])) < 1e-12:
        raise InvalidParameterError("prescribed nodes must be distinct")
    f = _f_values(deltas, n, 1, alphas)
    if min(abs(f[0] - f[1]), abs(f[0] - f[2]), abs(f[1] - f[2])) < 1e-12:
        raise NoSolutionError("Blaschke values at the nodes are not distinct")
    a, b, c, d = _mobius_through(az, [-fi for fi in f])
    if abs(a) < 1e-13 or abs(d) < 1e-13:
        raise NoSolutionError("interpolating map is not a disk automorphism")
    eta = -b / a
    eta_alt = np.conj(-c / d)
    tau = np.conj(a / d)
    diagnostics = {
        "f_values": list(f),
        "eta": complex(eta),
        "eta_alt": complex(eta_alt),
        "tau": complex(tau),
    }
    orientation_ok = same_orientation(tuple(az), tuple(f))
    inside = abs(eta) < 1.0
    if abs(abs(eta) - 1.0) <= 1e-9:
        raise BoundaryDegenerateError(
            f"|eta| = {abs(eta)} is within 1e-9 of the unit circle"
        )
    if orientation_ok != inside:
        raise InternalConsistencyError(
            "orientation test and |eta| < 1 disagree"
        )
    if not inside:
        return PrescriptionResult(None, False, diagnostics)
    if abs(eta - eta_alt) > 1e-8 * (1.0 + abs(eta)):
        raise InternalConsistencyError("the two eta readings of the map disagree")
    if abs(abs(tau) - 1.0) > 1e-9:
        raise InternalConsistencyError(f"|tau| = {abs(tau)} drifted off the circle")
    tau = tau / abs(tau)
    spec = QpopucSpec(n, 1, from_zeros([eta]), tau)
    _check_residual(spec, deltas, alphas, 1e-10)
    return PrescriptionResult(spec, True, diagnostics)


def _vandermonde(points, cols):
    pts = np.asarray(points, dtype=complex)
    return pts[:, None] ** np.arange(cols)[None, :]


def prescribe_2l(
    deltas: SchurSequence, n: int, ell: int, alphas: list[UnitPoint], tau: complex
) -> PrescriptionResult:
    """2*ell prescribed nodes with given tau.

    Builds the coupled linear system in (p, conj(p)) from the
    interpolation conditions P(a_i) + tau f_i P*(a_i) = 0, solves it
    directly, and cross-checks against the Schur-complement elimination
    form. Admissible iff P passes the Schur-Cohn test.
    """
    if len(alphas) != 2 * ell or ell < 1:
        raise InvalidParameterError(f"expected 2*ell = {2 * ell} nodes")
    if 2 * ell + 1 > n:
        raise InvalidParameterError("need 2*ell + 1 <= n")
    if ell == 1:
        return lobatto2(deltas, n, alphas[0], alphas[1], tau)
    az = np.array([p.z for p in alphas])
    if np.min(np.abs(az[:, None] - az[None, :]) + np.eye(2 * ell)) < 1e-12:
        raise InvalidParameterError("prescribed nodes must be distinct")
    f = _f_values(deltas, n, ell, alphas)

    v1 = _vandermonde(az[:ell], ell)
    v2 = _vandermonde(az[ell:], ell)
    f1, f2 = f[:ell], f[ell:]
    d1 = az[:ell] ** ell
    d2 = az[ell:] ** ell
    top = np.hstack([v1, tau * (f1 * d1)[:, None] * np.conj(v1)])
    bot = np.hstack([v2, tau * (f2 * d2)[:, None] * np.conj(v2)])
    m_full = np.vstack([top, bot])
    rhs = np.concatenate([-tau * f1 - d1, -tau * f2 - d2])
    cond = float(abs(np.linalg.cond(m_full, 1)))
    if not np.isfinite(cond) or cond > TOL.condition_limit:
        raise ConditionViolationError(
            f"prescription system condition number {cond:.3e} exceeds limit; "
            "the node/Blaschke configuration is (near-)singular"
        )
    x = np.linalg.solve(m_full, rhs)
    p, p_conj = x[:ell], x[ell:]
    coupling = float(np.max(np.abs(p_conj - np.conj(p))))
    if coupling > 1e-10 * (1.0 + np.max(np.abs(p))):
        raise InternalConsistencyError(
            f"conjugate coupling violated by {coupling:.3e}"
        )

    # Schur-complement elimination form, used as an independent check
    w1 = np.linalg.solve(np.conj(v1), np.column_stack([np.conj(d1 * f1)[:, None] * v1, np.conj(d1), np.conj(f1)]))
    w2 = np.linalg.solve(np.conj(v2), np.column_stack([np.conj(d2 * f2)[:, None] * v2, np.conj(d2), np.conj(f2)]))
    m_elim = w1[:, :ell] - w2[:, :ell]
    rhs_elim = tau * (w1[:, ell] - w2[:, ell]) + (w1[:, ell + 1] - w2[:, ell + 1])
    p_elim = -np.linalg.solve(m_elim, rhs_elim)
    if np.max(np.abs(p_elim - p)) > 1e-8 * (1.0 + np.max(np.abs(p))):
        raise InternalConsistencyError("elimination and direct solves disagree")

    poly = ComplexPoly(np.concatenate([p, [1.0]]))
    diagnostics = {"f_values": list(f), "condition": cond}
    try:
        sc = schur_cohn(poly)
        admissible = sc.stable
        diagnostics["schur_params"] = sc.params
    except BoundaryDegenerateError as exc:
        admissible = False
        diagnostics["boundary_degenerate"] = str(exc)
    spec = QpopucSpec(n, ell, poly, tau)
    _check_residual(spec, deltas, alphas, TOL.node_residual)
    return PrescriptionResult(spec, admissible, diagnostics)


def prescribe_2lp1(
    deltas: SchurSequence, n: int, ell: int, alphas: list[UnitPoint]
) -> PrescriptionResult:
    """2*ell + 1 prescribed nodes: tau is no longer free.

    Scaling the interpolation conditions by lambda = sqrt(conj(tau))
    makes them a homogeneous system in (lambda p, conj-reversed); fixing
    the leading coefficient to 1 turns it into a square solve whose
    second block must come out as tau times the conjugate-reversed first
    block — that surplus structure determines tau and doubles as the
    validation.
    """
    if len(alphas) != 2 * ell + 1 or ell < 1:
        raise InvalidParameterError(f"expected 2*ell + 1 = {2 * ell + 1} nodes")
    if 2 * ell + 1 > n:
        raise InvalidParameterError("need 2*ell + 1 <= n")
    if ell == 1:
        out = three_nodes(deltas, n, alphas)
        if out.spec is None:
            raise NoSolutionError(
                "three-node configuration is inadmissible (orientation mismatch)"
            )
        return out
    az = np.array([p.z for p in alphas])
    m_tot = 2 * ell + 1
    if np.min(np.abs(az[:, None] - az[None, :]) + np.eye(m_tot)) < 1e-12:
        raise InvalidParameterError("prescribed nodes must be distinct")
    f = _f_values(deltas, n, ell, alphas)

    # rows: p_0..p_{ell-1} columns, then f_i * (q_0..q_ell) columns,
    # with the p_ell (monic) column moved to the right-hand side
    v_full = _vandermonde(az, ell + 1)
    a_mat = np.hstack([v_full[:, :ell], f[:, None] * v_full])
    rhs = -az**ell
    cond = float(abs(np.linalg.cond(a_mat, 1)))
    if not np.isfinite(cond) or cond > TOL.condition_limit:
        raise RankDeficiencyError(
            f"prescription system condition number {cond:.3e} exceeds limit"
        )
    x = np.linalg.solve(a_mat, rhs)
    p, q = x[:ell], x[ell:]
    # true solution: q = tau * conj-reverse of (p_0..p_{ell-1}, 1)
    full = np.concatenate([p, [1.0]])
    ratios = q / np.conj(full[::-1])
    tau = complex(ratios[0])
    if abs(abs(tau) - 1.0) > 1e-8:
        raise NoSolutionError(
            f"recovered invariance parameter has modulus {abs(tau)}; the "
            "prescribed nodes admit no invariant solution"
        )
    tau /= abs(tau)
    scatter = float(np.max(np.abs(ratios - tau)))
    if scatter > 1e-8 * (1.0 + np.max(np.abs(full))):
        raise InternalConsistencyError(
            f"conjugate-reversal structure violated by {scatter:.3e}"
        )
    # residuals of the homogeneous relations lambda P + f conj(lambda) P* = 0
    lam = cmath.sqrt(np.conj(tau))
    poly = ComplexPoly(full)
    p_star = poly.reciprocal(ell)
    hom = np.abs(lam * poly(az) + f * np.conj(lam) * p_star(az))
    if np.max(hom) > 1e-9 * (1.0 + float(np.max(np.abs(full)))):
        raise InternalConsistencyError(
            f"homogeneous residual {np.max(hom):.3e} after tau recovery"
        )
    diagnostics = {"f_values": list(f), "condition": cond, "tau": tau}
    try:
        sc = schur_cohn(poly)
        admissible = sc.stable
        diagnostics["schur_params"] = sc.params
    except BoundaryDegenerateError as exc:
        admissible = False
        diagnostics["boundary_degenerate"] = str(exc)
    spec = QpopucSpec(n, ell, poly, tau)
    _check_residual(spec, deltas, alphas, TOL.node_residual)
    return PrescriptionResult(spec, admissible, diagnostics)


def classical_arc(
    mu: MomentSequence,
    arc: ArcSpec,
    n: int,
    mode: str,
    tau_hat: complex | None = None,
    alpha: UnitPoint | None = None,
) -> PrescriptionResult:
    """Rules with both endpoints of the support arc prescribed.

    Works on the endpoint-modified moment chain: nodes are {a, b} plus
    the n - 2 zeros of the degree-(n-2) invariant polynomial
    z rho^_{n-3} + tau^ rho^*_{n-3} of the modified measure.
    ``mode`` is "lobatto" (caller supplies tau_hat) or "peherstorfer"
    (tau_hat = -F^_{n-2}(alpha) pins one interior node).
    """
    if n < 4:
        raise InvalidParameterError("classical_arc requires n >= 4")
    hat = modified_hat_moments(mu, arc.a, arc.b, mu.order - 1)
    hat_deltas = schur_from_moments(hat, n - 2)
    m = n - 2
    if mode == "peherstorfer":
        if alpha is None:
            raise InvalidParameterError("peherstorfer mode requires alpha")
        tau_hat = -blaschke_eval(hat_deltas, m, alpha.z)
    elif mode == "lobatto":
        if tau_hat is None:
            raise InvalidParameterError("lobatto mode requires tau_hat")
        if abs(abs(tau_hat) - 1.0) > 1e-12:
            raise InvalidParameterError("|tau_hat| must equal 1")
    else:
        raise InvalidParameterError(f"unknown mode {mode!r}")
    tau_a = blaschke_eval(hat_deltas, m, arc.a.z)
    tau_b = blaschke_eval(hat_deltas, m, arc.b.z)
    diagnostics = {
        "tau_hat": complex(tau_hat),
        "tau_arc": (complex(tau_a), complex(tau_b)),
        "tau": complex(arc.a.z * arc.b.z * tau_hat),
    }
    if not in_open_arc(-tau_hat, tau_a, tau_b):
        return PrescriptionResult(None, False, diagnostics)
    interior = blaschke_solve(hat_deltas, m, -tau_hat)
    from .opuc import szego_from_schur  # local import to avoid cycle noise

    rho = szego_from_schur(hat_deltas, m - 1)[m - 1]
    p_inner = rho.shift(1) + tau_hat * rho.reciprocal(m - 1)
    nodal = from_zeros([arc.a.z, arc.b.z]) * p_inner
    nodes = [arc.a, arc.b] + interior
    for pt in interior:
        if not arc.contains(pt.z, closed=True, tol=1e-10):
            return PrescriptionResult(
                None, False, dict(diagnostics, escaped_node=pt.theta)
            )
    return PrescriptionResult(
        None, True, diagnostics, nodes=nodes, nodal_poly=nodal
    )


def tau_for_omega(
    deltas: SchurSequence,
    n: int,
    ell: int,
    alphas: list[UnitPoint],
    omega: complex,
):
    """Invariance parameters tau realizing a target omega.

    The 2*ell-node system makes P(0) affine in tau, P(0) = A tau + B;
    substituting into the closed form for omega yields one quadratic in
    tau, so there are at most two solutions on the circle. Returns
    (solutions, degenerate) where degenerate means omega does not depend
    on tau at all (B = 0 with the target attained).
    """
    if abs(abs(omega) - 1.0) > 1e-12:
        raise InvalidParameterError("|omega| must equal 1")
    if len(alphas) != 2 * ell:
        raise InvalidParameterError(f"expected 2*ell = {2 * ell} nodes")
    delta = complex(deltas.delta[n - ell])
    if ell == 0:
        a_coef, b_coef = 0.0 + 0.0j, 1.0 + 0.0j
    else:
        az = np.array([p.z for p in alphas])
        f = _f_values(deltas, n, ell, alphas)
        v1 = _vandermonde(az[:ell], ell)
        v2 = _vandermonde(az[ell:], ell)
        f1, f2 = f[:ell], f[ell:]
        d1 = az[:ell] ** ell
        d2 = az[ell:] ** ell
        w1 = np.linalg.solve(
            np.conj(v1),
            np.column_stack([np.conj(d1 * f1)[:, None] * v1, np.conj(d1), np.conj(f1)]),
        )
        w2 = np.linalg.solve(
            np.conj(v2),
            np.column_stack([np.conj(d2 * f2)[:, None] * v2, np.conj(d2), np.conj(f2)]),
        )
        m_elim = w1[:, :ell] - w2[:, :ell]
        cond = float(abs(np.linalg.cond(m_elim, 1)))
        if not np.isfinite(cond) or cond > TOL.condition_limit:
            raise ConditionViolationError(
                f"tau-parametrized system condition {cond:.3e} exceeds limit"
            )
        minv = np.linalg.inv(m_elim)
        a_coef = complex(-(minv @ (w1[:, ell] - w2[:, ell]))[0])
        b_coef = complex(-(minv @ (w1[:, ell + 1] - w2[:, ell + 1]))[0])

    d_big = np.conj(delta)
    scale = max(abs(a_coef), abs(b_coef), 1.0)
    if abs(b_coef) <= 1e-12 * scale:
        # P(0) = A tau: omega is the same for every tau
        realized = _omega_from_p0(a_coef, b_coef, 1.0 + 0.0j, delta)
        attained = realized is not None and abs(realized - omega) <= 1e-9
        return [], attained

    coeffs = np.array(
        [
            np.conj(b_coef),
            (np.conj(a_coef) - np.conj(d_big)) - omega * (a_coef - d_big),
            -omega * b_coef,
        ]
    )
    roots = np.roots(coeffs[np.argmax(np.abs(coeffs) > 0) :]) if np.any(coeffs != 0) else []
    out = []
    for r in np.atleast_1d(roots):
        if abs(abs(r) - 1.0) > 1e-10:
            continue
        tau = complex(r / abs(r))
        realized = _omega_from_p0(a_coef, b_coef, tau, delta)
        if realized is not None and abs(realized - omega) <= 1e-9:
            out.append(tau)
    # merge near-duplicates (double roots)
    unique = []
    for tau in out:
        if all(abs(tau - u) > 1e-9 for u in unique):
            unique.append(tau)
    return unique[:2], False


def _omega_from_p0(a_coef, b_coef, tau, delta):
    p0 = a_coef * tau + b_coef
    den = np.conj(tau) * p0 - np.conj(delta)
    if abs(den) < 1e-13:
        return None
    return complex((tau * np.conj(p0) - delta) / den)
