"""Core primitives for orthogonal polynomials on the unit circle.

Conventions: moments are mu_k = integral of z**k d(mu), with
mu_{-k} = conj(mu_k), and <z**j, z**k> = mu_{j-k}. Monic Szego
polynomials follow rho_k = z rho_{k-1} + delta_k rho*_{k-1} with
reflection coefficients delta_k = rho_k(0) in the open unit disk.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from ._kernels import blaschke_values, szego_eval
from .config import TOL
from .errors import (
    BoundaryDegenerateError,
    DomainError,
    InternalConsistencyError,
    InvalidParameterError,
    MomentRangeError,
    NotPositiveDefiniteError,
)
from .poly import ComplexPoly

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class UnitPoint:
    """A point e^{i theta} on the unit circle, kept in both forms."""

    theta: float
    z: complex

    def __post_init__(self):
        if abs(abs(self.z) - 1.0) > 1e-14 * 10:
            raise DomainError(f"|z| = {abs(self.z)} is not on the unit circle")
        if abs(self.z - cmath.exp(1j * self.theta)) > 1e-13:
            raise InternalConsistencyError("theta and z disagree")

    @staticmethod
    def from_theta(theta: float) -> "UnitPoint":
        theta = theta % TWO_PI
        return UnitPoint(theta, cmath.exp(1j * theta))

    @staticmethod
    def from_complex(z: complex, tol: float = 1e-9) -> "UnitPoint":
        if abs(abs(z) - 1.0) > tol:
            raise DomainError(f"|z| = {abs(z)} is off the unit circle")
        z = z / abs(z)
        return UnitPoint(cmath.phase(z) % TWO_PI, z)


@dataclass(frozen=True)
class MomentSequence:
    """Trigonometric moments mu_0..mu_N; negative indices by conjugation."""

    mu: np.ndarray

    def __post_init__(self):
        mu = np.asarray(self.mu, dtype=complex)
        object.__setattr__(self, "mu", mu)
        if len(mu) == 0:
            raise InvalidParameterError("empty moment sequence")
        if abs(mu[0].imag) > 1e-12 * max(1.0, abs(mu[0])) or mu[0].real <= 0:
            raise NotPositiveDefiniteError(f"mu_0 = {mu[0]} must be real positive")

    @property
    def order(self) -> int:
        return len(self.mu) - 1

    def get(self, k: int) -> complex:
        i = abs(k)
        if i > self.order:
            raise MomentRangeError(f"moment {k} beyond available order {self.order}")
        return complex(self.mu[i]) if k >= 0 else complex(np.conj(self.mu[i]))

    def array(self, lo: int, hi: int) -> np.ndarray:
        """Moments mu_lo..mu_hi as a dense array."""
        return np.array([self.get(k) for k in range(lo, hi + 1)])


@dataclass(frozen=True)
class SchurSequence:
    """Verblunsky/Schur parameters delta_0..delta_n (delta_0 = 1) and norms E_k."""

    delta: np.ndarray
    norms: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.delta, dtype=complex)
        e = np.asarray(self.norms, dtype=float)
        object.__setattr__(self, "delta", d)
        object.__setattr__(self, "norms", e)
        if d[0] != 1.0:
            raise InvalidParameterError("delta_0 must equal 1")
        if np.any(np.abs(d[1:]) >= 1.0):
            raise InvalidParameterError("all delta_k (k >= 1) must lie in the open unit disk")
        if len(e) != len(d) or np.any(e <= 0):
            raise InvalidParameterError("norms must be positive and match delta in length")
        object.__setattr__(self, "_rho_cache", [np.array([1.0 + 0.0j])])

    @property
    def order(self) -> int:
        return len(self.delta) - 1

    def params(self, n: int | None = None) -> np.ndarray:
        """delta_1..delta_n as a plain array."""
        n = self.order if n is None else n
        if n > self.order:
            raise InvalidParameterError(f"order {n} beyond available {self.order}")
        return self.delta[1 : n + 1]

    def rho_coeffs(self, k: int) -> np.ndarray:
        """Coefficients of the monic recursion polynomial of degree k
        (cached; the recursion is extended on demand)."""
        if k > self.order:
            raise InvalidParameterError(f"order {k} beyond available {self.order}")
        cache = self._rho_cache
        while len(cache) <= k:
            j = len(cache)
            d = self.delta[j]
            rho = cache[-1]
            zr = np.concatenate([[0.0], rho])
            rs = np.conj(rho[::-1])  # reciprocal of the previous monic rho
            cache.append(zr + d * np.concatenate([rs, [0.0]])[: len(zr)])
        return cache[k]

    @staticmethod
    def from_params(params, e0: float = 1.0) -> "SchurSequence":
        params = np.asarray(params, dtype=complex)
        if np.any(np.abs(params) >= 1.0):
            raise InvalidParameterError("Schur parameters must lie in the open unit disk")
        norms = e0 * np.concatenate([[1.0], np.cumprod(1.0 - np.abs(params) ** 2)])
        return SchurSequence(np.concatenate([[1.0], params]), norms)


def szego_from_schur(deltas: SchurSequence, n: int) -> list[ComplexPoly]:
    """Monic rho_0..rho_n from the Szego recursion."""
    return [ComplexPoly(deltas.rho_coeffs(k)) for k in range(n + 1)]


def inner_product(p: ComplexPoly, q: ComplexPoly, mu: MomentSequence) -> complex:
    """<P, Q> = sum_j sum_k p_j conj(q_k) mu_{j-k}."""
    dp, dq = p.degree, q.degree
    if max(dp, dq) > mu.order:
        raise MomentRangeError(
            f"moments up to order {max(dp, dq)} needed, only {mu.order} available"
        )
    acc = 0.0 + 0.0j
    for j, pj in enumerate(p.coeffs):
        if pj == 0:
            continue
        for k, qk in enumerate(q.coeffs):
            if qk == 0:
                continue
            acc += pj * np.conj(qk) * mu.get(j - k)
    return acc


def schur_from_moments(mu: MomentSequence, n: int) -> SchurSequence:
    """Levinson-type recursion: reflection coefficients from moments.

    delta_k = -<z rho_{k-1}, 1> / <rho*_{k-1}, 1>, with the norm update
    E_k = E_{k-1} (1 - |delta_k|^2) acting as the positive-definiteness
    certificate.
    """
    if n > mu.order:
        raise MomentRangeError(f"need moments to order {n}, have {mu.order}")
    mu_arr = mu.array(0, n)
    rho = np.array([1.0 + 0.0j])
    rho_star = np.array([1.0 + 0.0j])
    params = []
    e0 = float(mu_arr[0].real)
    e = e0
    for k in range(1, n + 1):
        num = np.dot(rho, mu_arr[1 : len(rho) + 1])
        den = np.dot(rho_star, mu_arr[: len(rho_star)])
        d = -num / den
        e_next = e * (1.0 - abs(d) ** 2)
        if abs(d) >= 1.0 or e_next <= 0:
            raise NotPositiveDefiniteError(
                f"moment sequence not positive definite at order {k} (|delta| = {abs(d)})"
            )
        zr = np.concatenate([[0.0], rho])
        rs = np.zeros(len(zr), dtype=complex)
        rs[: len(rho_star)] = rho_star
        rho, rho_star = zr + d * rs, np.conj(d) * zr + rs
        params.append(d)
        e = e_next
    return SchurSequence.from_params(np.array(params), e0=e0)


def blaschke_eval(deltas: SchurSequence, n: int, z: complex) -> complex:
    """F_n(z) = z rho_{n-1}(z) / rho*_{n-1}(z) for z on the unit circle."""
    if abs(abs(z) - 1.0) > TOL.on_circle * 10:
        raise DomainError(f"|z| = {abs(z)} off the unit circle")
    return complex(blaschke_values(deltas.params(n - 1), np.array([z]))[0])


def _phase_derivative(w, z):
    """d/dtheta of arg F_n(e^{i theta}): 1 plus the Poisson kernels of
    the chain zeros."""
    if len(w) == 0:
        return np.ones(np.shape(z), dtype=float)
    num = 1.0 - np.abs(w) ** 2
    den = np.abs(z[..., None] - w[None, :]) ** 2
    return 1.0 + np.sum(num[None, :] / den, axis=-1)


def _phase_grid(params, n, w):
    """Circle angles dense enough that the phase of F_n moves by less
    than pi/2 between neighbors.

    On the circle F_n factors as z times the Blaschke factors of the
    zeros w_j of rho_{n-1}; each factor's phase is monotone with total
    increase 2 pi, so placing the preimages of 8n equally spaced factor
    phases (available in closed form from the Moebius inverse) bounds
    every factor's variation per gap by 2 pi / (8n), hence the total by
    roughly pi/4. The zeros are obtained from the companion matrix, but
    only to steer sampling — root acceptance still rests on bisection
    plus residual checks.
    """
    k = 16 * n
    pieces = [np.arange(k) * (TWO_PI / k)]
    u = np.exp(1j * np.arange(8 * n) * (TWO_PI / (8 * n)))
    for wj in w:
        if abs(wj) < 0.5:
            continue  # flat factor; the uniform grid suffices
        z = (wj + u) / (1.0 + u * np.conj(wj))
        pieces.append(np.angle(z) % TWO_PI)
    return np.unique(np.concatenate(pieces))


def blaschke_solve(deltas: SchurSequence, n: int, target: complex) -> list[UnitPoint]:
    """All n solutions of F_n(z) = target on the unit circle.

    The unwrapped phase of F_n along the circle increases monotonically
    by 2 pi n, so every solution is bracketed by a sampled crossing and
    then pinned down by bisection.
    """
    if abs(abs(target) - 1.0) > TOL.on_circle * 10:
        raise DomainError(f"|target| = {abs(target)} off the unit circle")
    params = np.asarray(deltas.params(n - 1), dtype=complex)

    rho_top = deltas.rho_coeffs(n - 1)
    w = np.roots(rho_top[::-1]) if n > 1 else np.array([], dtype=complex)
    if len(w) and np.max(np.abs(w)) >= 1.0:
        # the recursion guarantees zeros strictly inside the disk; a
        # violation here means the companion diagnostic lost accuracy
        if np.max(np.abs(w)) > 1.0 + 1e-8:
            raise InternalConsistencyError("chain zeros escaped the unit disk")
        w = w / np.maximum(1.0, np.abs(w) + 1e-15)
    thetas = _phase_grid(params, n, w)
    raw = np.angle(blaschke_values(params, np.exp(1j * thetas)))
    psi = np.unwrap(raw)
    steps = np.diff(psi)
    closing = (psi[0] + TWO_PI * n) - psi[-1]
    if np.max(steps) > 0.9 * math.pi or not (
        -TOL.phase_jitter < closing < 0.9 * math.pi
    ):
        raise InternalConsistencyError(
            "sampled phase steps are too coarse; grid construction failed"
        )
    if np.min(steps) < -TOL.phase_jitter:
        raise InternalConsistencyError("sampled Blaschke phase is not monotone")

    thetas_ext = np.concatenate([thetas, [thetas[0] + TWO_PI]])
    psi_ext = np.concatenate([psi, [psi[0] + TWO_PI * n]])

    t_ang = cmath.phase(target)
    k0 = math.ceil((psi_ext[0] - t_ang) / TWO_PI - 1e-13)
    levels = t_ang + TWO_PI * (k0 + np.arange(n))
    idx = np.searchsorted(psi_ext, levels, side="left") - 1
    idx = np.clip(idx, 0, len(thetas_ext) - 2)
    lo = thetas_ext[idx]
    hi = thetas_ext[idx + 1]
    conj_t = np.conj(target)

    # coarse bisection to a safe neighborhood, then Newton steps using
    # the exact phase derivative (quadratic convergence, clamped to the
    # bracket so the root cannot escape)
    for _ in range(12):
        if np.max(hi - lo) <= TOL.bisect_theta:
            break
        mid = 0.5 * (lo + hi)
        r = np.angle(blaschke_values(params, np.exp(1j * mid)) * conj_t)
        above = r > 0
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
    theta = 0.5 * (lo + hi)
    for _ in range(40):
        z = np.exp(1j * theta)
        g = np.angle(blaschke_values(params, z) * conj_t)
        step = g / _phase_derivative(w, z)
        theta = np.clip(theta - step, lo, hi)
        if np.max(np.abs(step)) < TOL.bisect_theta:
            break

    roots_theta = np.sort(theta % TWO_PI)
    z = np.exp(1j * roots_theta)
    resid = np.abs(blaschke_values(params, z) - target)
    # |F - target| scales with the local phase derivative, which peaks
    # when chain zeros sit very close to the circle; the per-root
    # tolerance reflects a theta accuracy of a few bisection brackets
    limit = np.maximum(
        TOL.root_residual, 50.0 * TOL.bisect_theta * _phase_derivative(w, z)
    )
    if np.any(resid >= limit):
        worst = int(np.argmax(resid / limit))
        raise InternalConsistencyError(
            f"Blaschke root residual {resid[worst]:.3e} exceeds "
            f"{limit[worst]:.3e}"
        )
    gaps = np.diff(np.concatenate([roots_theta, [roots_theta[0] + TWO_PI]]))
    if np.min(gaps) <= TOL.root_gap:
        raise InternalConsistencyError("near-duplicate Blaschke roots detected")
    return [UnitPoint(float(t), complex(w)) for t, w in zip(roots_theta, z)]


@dataclass
class SchurCohnResult:
    stable: bool
    params: list  # s_k(0) = kappa_k for k = ell..1 (downward order)
    kappas: dict = field(default_factory=dict)  # k -> P_k(0)
    polys: dict = field(default_factory=dict)  # k -> monic P_k

    @property
    def worst(self) -> float:
        return max((abs(s) for s in self.params), default=0.0)


def schur_cohn(p: ComplexPoly) -> SchurCohnResult:
    """Classical Schur-Cohn test for a monic polynomial.

    Runs the downward recursion s_{k-1}(z) = (1/z)(s_k - s_k(0)) /
    (1 - conj(s_k(0)) s_k) on the polynomial pair (P_k, P_k*); stable
    iff every s_k(0) lies strictly inside the unit disk. Values within
    the boundary band are refused rather than classified.
    """
    if not p.is_monic(tol=0.0):
        # allow tiny drift from arithmetic, refuse anything larger
        if abs(p.coeffs[-1] - 1.0) > 1e-12:
            raise InvalidParameterError("Schur-Cohn input must be monic")
    ell = p.degree
    result = SchurCohnResult(stable=True, params=[])
    coeffs = p.coeffs.copy()
    for k in range(ell, 0, -1):
        kappa = complex(coeffs[0])  # P_k(0); P_k*(0) = conj(leading) ~ 1
        result.params.append(kappa)
        result.kappas[k] = kappa
        result.polys[k] = ComplexPoly(coeffs)
        band = TOL.disk_boundary_band
        if abs(abs(kappa) - 1.0) <= band:
            raise BoundaryDegenerateError(
                f"|s_{k}(0)| = {abs(kappa)} within {band} of the unit circle"
            )
        if abs(kappa) > 1.0:
            result.stable = False
        denom = 1.0 - abs(kappa) ** 2
        star = np.conj(coeffs[::-1])
        coeffs = (coeffs - kappa * star)[1:] / denom
    return result


def random_unit_points(rng, count: int) -> list[UnitPoint]:
    """Distinct random points on the circle (test/scan helper)."""
    thetas = rng.uniform(0.0, TWO_PI, size=count)
    return [UnitPoint.from_theta(float(t)) for t in thetas]
