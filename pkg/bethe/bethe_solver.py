"""
Bethe ansatz equations through the master function

    S_k(μ, ξ) = ½‖ξ‖² - 2π⟨μ, ξ⟩ + ½ Σ_{α ∈ Σ_0} ‖α‖² ∫_0^{ξ(α^∨)} arctan(t/k_α) dt,

whose unique minimizer μ̂ gives the spectral parameter λ = iμ̂. The master
function is strictly convex and coercive, so damped Newton converges from
any starting point.
"""

from __future__ import absolute_import

import math

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from bethe.exceptions import (ConvergenceException,
                              IndeterminateRegularityWarning,
                              InvalidWeightException,
                              WeylGroupTooLargeException, print_warning)
from bethe.root_systems import (REGULARITY_TOL, Multiplicity, enumerate_weyl,
                                is_dominant, weight_coefficients,
                                weight_from_coefficients)
from bethe.utils import debug_log


DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 100
ARMIJO_SLOPE = 1e-4
ARMIJO_FACTOR = 0.5
MIN_STEP = 1e-16
# below this margin regularity can not be decided numerically
INDETERMINATE_TOL = 1e-12
GAP_SLACK = 1e-9


def _positive_k(rs, k):
    return k.require_positive(rs)


def coxeter_number_h(rs, k):
    """h_k = 2 Σ_{α ∈ Σ_0} 1/k_α"""
    return float(2 * (1.0 / _positive_k(rs, k)).sum())


def sigma(rs, k, xi):
    """σ_ξ^k = Σ_{α ∈ Σ_0} arctan(ξ(α^∨)/k_α)·α"""
    kk = _positive_k(rs, k)
    return np.arctan(rs.pairings(xi) / kk).dot(rs.roots)


def master_value(rs, k, mu, xi):
    kk = _positive_k(rs, k)
    xi = np.asarray(xi, dtype=float)
    t = rs.pairings(xi)
    # ∫_0^x arctan(t/c) dt = x·arctan(x/c) - (c/2)·ln(1 + x²/c²)
    integrals = t * np.arctan(t / kk) - 0.5 * kk * np.log1p((t / kk) ** 2)
    return float(0.5 * xi.dot(xi) - 2 * math.pi * np.dot(mu, xi) +
                 0.5 * rs.norms2.dot(integrals))


def master_gradient(rs, k, mu, xi):
    xi = np.asarray(xi, dtype=float)
    return xi - 2 * math.pi * np.asarray(mu) + sigma(rs, k, xi)


def master_hessian(rs, k, xi):
    kk = _positive_k(rs, k)
    t = rs.pairings(xi)
    weights = kk / (kk ** 2 + t ** 2)
    return np.eye(rs.rank) + np.einsum('r,ri,rj->ij', weights, rs.roots,
                                       rs.coroots)


def initial_point(rs, k, mu):
    return 2 * math.pi * np.asarray(mu, dtype=float) / (
        1 + coxeter_number_h(rs, k) / rs.rank)


def minimize(rs, k, mu, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """Damped Newton on S_k(μ, ·). Returns (μ̂, gradient norm, iterations).

    The stopping test is ‖grad‖ < tol·max(1, ‖2πμ‖).
    """
    mu = np.asarray(mu, dtype=float)
    threshold = tol * max(1.0, 2 * math.pi * np.linalg.norm(mu))
    xi = initial_point(rs, k, mu)
    value = master_value(rs, k, mu, xi)
    for iteration in range(max_iter + 1):
        gradient = master_gradient(rs, k, mu, xi)
        grad_norm = float(np.linalg.norm(gradient))
        if grad_norm < threshold:
            return xi, grad_norm, iteration
        if iteration == max_iter:
            break
        step = -cho_solve(cho_factor(master_hessian(rs, k, xi)), gradient)
        slope = gradient.dot(step)
        slack = 8 * np.finfo(float).eps * max(1.0, abs(value))
        t = 1.0
        while True:
            candidate = xi + t * step
            candidate_value = master_value(rs, k, mu, candidate)
            if candidate_value <= value + ARMIJO_SLOPE * t * slope + slack:
                break
            t *= ARMIJO_FACTOR
            if t < MIN_STEP:
                raise ConvergenceException(
                    "Line search stalled at gradient norm %.3g after %d "
                    "iterations" % (grad_norm, iteration))
        debug_log("newton %d: |grad| = %.3e, step = %g"
                  % (iteration, grad_norm, t))
        xi, value = candidate, candidate_value
    raise ConvergenceException(
        "Gradient norm %.3g still above %.3g after %d Newton iterations"
        % (grad_norm, threshold, max_iter))


def bae_residual(rs, wg, k, lam):
    """Largest violation over w ∈ W_0 of the exponential-form equations

        e^{wλ(φ^∨)} = Π_{α > 0} ((wλ(α^∨) - k_α)/(wλ(α^∨) + k_α))^{α(φ^∨)}.
    """
    kk = k.for_roots(rs)[:rs.n_positive]
    exponents = np.rint(rs.roots[:rs.n_positive].dot(
        rs.highest_coroot)).astype(int)
    worst = 0.0
    for matrix in wg.matrices:
        image = matrix.dot(lam)
        pairings = rs.pairings(image)[:rs.n_positive]
        factors = ((pairings - kk) / (pairings + kk)) ** exponents
        left = np.exp(image.dot(rs.highest_coroot))
        worst = max(worst, abs(left - np.prod(factors)))
    return float(worst)


def bae_log_residual(rs, k, mu, mu_hat):
    """‖μ̂ + σ_μ̂ - 2πμ‖, the logarithmic form at the minimizer."""
    return float(np.linalg.norm(master_gradient(rs, k, mu, mu_hat)))


def gap_certificate(rs, k, mu, mu_hat, slack=GAP_SLACK):
    """Check 2πμ(β^∨)/(1 + h_k/n) <= μ̂(β^∨) <= 2πμ(β^∨) for β > 0."""
    if not is_dominant(rs, mu):
        raise InvalidWeightException(
            "Moment gap bounds need a dominant weight")
    shrink = 1 + coxeter_number_h(rs, k) / rs.rank
    upper = 2 * math.pi * rs.pairings(mu)[:rs.n_positive]
    values = rs.pairings(mu_hat)[:rs.n_positive]
    bounds = []
    for index, (top, value) in enumerate(zip(upper, values)):
        bottom = top / shrink
        tol = slack * max(1.0, abs(top))
        bounds.append({
            'root': index,
            'lower': float(bottom),
            'value': float(value),
            'upper': float(top),
            'lower_slack': float(value - bottom),
            'upper_slack': float(top - value),
            'pass': bool(value >= bottom - tol and value <= top + tol),
        })
    return {
        'bounds': bounds,
        'dominant': is_dominant(rs, mu_hat, tol=slack),
        'pass': all(b['pass'] for b in bounds) and is_dominant(
            rs, mu_hat, tol=slack),
    }


def sigma_bounds_check(rs, k, lams, tol=1e-12):
    """0 <= σ_λ(β^∨) <= (h_k/n)·λ(β^∨) for dominant λ and β > 0."""
    ratio = coxeter_number_h(rs, k) / rs.rank
    worst = 0.0
    for lam in lams:
        values = rs.pairings(sigma(rs, k, lam))[:rs.n_positive]
        caps = ratio * rs.pairings(lam)[:rs.n_positive]
        scale = max(1.0, np.abs(caps).max())
        worst = max(worst, (-values).max() / scale,
                    (values - caps).max() / scale)
    return {
        'name': 'sigma_bounds',
        'max_deviation': float(max(worst, 0.0)),
        'tolerance': tol,
        'pass': bool(worst <= tol),
    }


def k_matrix(rs, k, lam):
    """Matrix of K_λ^k(v) = v + Σ_α k_α·α(v)·α^∨/(k_α² - λ(α^∨)²)."""
    kk = k.for_roots(rs)
    t = rs.pairings(lam)
    weights = kk / (kk ** 2 - t ** 2)
    return np.eye(rs.rank) + np.einsum('r,ri,rj->ij', weights, rs.coroots,
                                       rs.roots)


def pauli_certificate(rs, k, lam, tol=REGULARITY_TOL):
    """Regularity verdict for λ = iμ̂ together with the K_λ^k matrix and
    its agreement with the master Hessian at -iλ."""
    lam = np.asarray(lam, dtype=complex)
    if np.abs(lam.real).max() > 1e-12 * max(1.0, np.abs(lam).max()):
        raise InvalidWeightException(
            "Pauli certificate needs a purely imaginary spectral parameter")
    matrix = k_matrix(rs, k, lam).real
    hessian = master_hessian(rs, k, (-1j * lam).real)
    margin = float(np.abs(rs.pairings(lam)).min())
    if INDETERMINATE_TOL <= margin <= tol:
        print_warning(
            "Smallest coroot pairing %.3g is inside [%g, %g]; regularity "
            "is numerically indeterminate" % (margin, INDETERMINATE_TOL,
                                              tol),
            category=IndeterminateRegularityWarning)
    regular = margin > tol
    return {
        'regular': regular,
        'margin': margin,
        'indeterminate': INDETERMINATE_TOL <= margin <= tol,
        'K_matrix': matrix,
        'min_eig_K': float(np.linalg.eigvalsh(0.5 * (matrix + matrix.T))[0]),
        'hessian_deviation': float(np.abs(matrix - hessian).max()),
        'excluded': not regular,
    }


def quasi_momenta(rs, mu_hat):
    """Type A only: μ̂ in particle coordinates of R^{n+1}."""
    if rs.embedding is None:
        return None
    return rs.embedding.dot(mu_hat)


def lieb_liniger_residual(rs, k, mu, mu_hat):
    """Type A only: max_j |p_j + 2Σ_{l≠j} arctan((p_j - p_l)/k) - 2πμ_j|."""
    if rs.embedding is None:
        return None
    c = k.values['long']
    p = rs.embedding.dot(mu_hat)
    target = 2 * math.pi * rs.embedding.dot(mu)
    differences = p[:, None] - p[None, :]
    residual = p + 2 * np.arctan(differences / c).sum(axis=1) - target
    return float(np.abs(residual).max())


class BetheSolution(object):
    """Certified minimizer μ̂ of the master function for one weight."""

    def __init__(self, rs, k, mu, mu_vec, mu_hat, grad_norm, iterations):
        self.rs = rs
        self.k = k
        self.mu = tuple(int(c) for c in mu)
        self.mu_vec = mu_vec
        self.mu_hat = mu_hat
        self.grad_norm = grad_norm
        self.iterations = iterations
        self.bae_residual = None
        self.log_residual = bae_log_residual(rs, k, mu_vec, mu_hat)
        self.gap = None
        self.pauli = pauli_certificate(rs, k, self.lam)
        self.quasi_momenta = quasi_momenta(rs, mu_hat)
        self.lieb_liniger_residual = lieb_liniger_residual(rs, k, mu_vec,
                                                           mu_hat)

    def __repr__(self):
        return 'BetheSolution(%s, mu=%r)' % (self.rs.name, self.mu)

    @property
    def lam(self):
        return 1j * self.mu_hat

    @property
    def energy(self):
        return float(self.mu_hat.dot(self.mu_hat))

    @property
    def regular(self):
        return self.pauli['regular']

    @property
    def pairings(self):
        return self.rs.pairings(self.mu_hat)[:self.rs.n_positive]

    def to_dict(self):
        data = {
            'system': {'type': self.rs.cartan_type, 'rank': self.rs.rank},
            'multiplicity': dict(self.k.values),
            'mu': list(self.mu),
            'mu_hat': {
                'coordinates': self.mu_hat.tolist(),
                'pairings': self.pairings.tolist(),
            },
            'energy': self.energy,
            'grad_norm': self.grad_norm,
            'iterations': self.iterations,
            'bae_residual': self.bae_residual,
            'bae_log_residual': self.log_residual,
            'regular': self.regular,
            'gap_bounds': self.gap['bounds'] if self.gap else [],
            'pauli': {
                'min_eig_K': self.pauli['min_eig_K'],
                'margin': self.pauli['margin'],
                'indeterminate': self.pauli['indeterminate'],
                'excluded': self.pauli['excluded'],
            },
        }
        if self.quasi_momenta is not None:
            data['quasi_momenta'] = self.quasi_momenta.tolist()
            data['lieb_liniger_residual'] = self.lieb_liniger_residual
        return data


def _weyl_group_or_none(rs):
    try:
        return enumerate_weyl(rs)
    except WeylGroupTooLargeException as e:
        print_warning("Skipping the BAE residual: %s" % e.message)
        return None


def solve_covector(rs, k, mu_vec, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER,
                   wg=None, certify=True):
    """Solve for a weight given as a covector of the weight lattice."""
    mu_vec = np.asarray(mu_vec, dtype=float)
    coefficients = np.rint(weight_coefficients(rs, mu_vec)).astype(int)
    mu_hat, grad_norm, iterations = minimize(rs, k, mu_vec, tol, max_iter)
    solution = BetheSolution(rs, k, coefficients, mu_vec, mu_hat,
                             grad_norm, iterations)
    if certify:
        if wg is None:
            wg = _weyl_group_or_none(rs)
        if wg is not None:
            solution.bae_residual = bae_residual(rs, wg, k, solution.lam)
        if is_dominant(rs, mu_vec):
            solution.gap = gap_certificate(rs, k, mu_vec, mu_hat)
    return solution


def solve(rs, k, weight, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER, wg=None):
    """Solve the Bethe ansatz equations for the weight Σ m_i ω_i given by
    its integer coefficients m."""
    mu_vec = weight_from_coefficients(rs, weight)
    _positive_k(rs, k)
    return solve_covector(rs, k, mu_vec, tol=tol, max_iter=max_iter, wg=wg)


def equivariance_check(rs, wg, k, weight, tol=1e-9,
                       max_iter=DEFAULT_MAX_ITER):
    """max_w ‖solve(wμ) - w·solve(μ)‖ over W_0."""
    mu_vec = weight_from_coefficients(rs, weight)
    base = solve_covector(rs, k, mu_vec, max_iter=max_iter, certify=False)
    worst = 0.0
    for matrix in wg.matrices:
        image = solve_covector(rs, k, matrix.dot(mu_vec), max_iter=max_iter,
                               certify=False)
        worst = max(worst, float(np.linalg.norm(
            image.mu_hat - matrix.dot(base.mu_hat))))
    return {
        'name': 'equivariance',
        'max_deviation': worst,
        'tolerance': tol,
        'pass': worst < tol,
    }


def limit_envelope(rs, k, mu_vec):
    """Per-root bound 2πμ(β^∨)·(h_k/n)/(1 + h_k/n) on |μ̂(β^∨) - 2πμ(β^∨)|."""
    ratio = coxeter_number_h(rs, k) / rs.rank
    return 2 * math.pi * rs.pairings(mu_vec)[:rs.n_positive] * ratio / (
        1 + ratio)


def impenetrable_limit_study(rs, weight, k_values, tol=DEFAULT_TOL,
                             max_iter=DEFAULT_MAX_ITER, multiplicity=None):
    """Distance of μ̂_k from 2πμ along increasing couplings.

    multiplicity(k) builds the Multiplicity for a scalar k; the default
    uses k for both root lengths. The monotone decrease is recorded, not
    asserted.
    """
    multiplicity = multiplicity or Multiplicity
    mu_vec = weight_from_coefficients(rs, weight)
    if not is_dominant(rs, mu_vec):
        raise InvalidWeightException(
            "The impenetrable limit study needs a dominant weight")
    target = 2 * math.pi * mu_vec
    rows = []
    for value in k_values:
        k = multiplicity(value)
        mu_hat, _, _ = minimize(rs, k, mu_vec, tol, max_iter)
        envelope = limit_envelope(rs, k, mu_vec)
        deviations = np.abs(rs.pairings(mu_hat - target)[:rs.n_positive])
        rows.append({
            'k': float(value),
            'distance': float(np.linalg.norm(mu_hat - target)),
            'envelope': float(envelope.max()),
            'max_pairing_deviation': float(deviations.max()),
            'within_envelope': bool(
                (deviations <= envelope + GAP_SLACK).all()),
        })
    distances = [row['distance'] for row in rows]
    return {
        'rows': rows,
        'decreasing': all(b < a for a, b in zip(distances, distances[1:])),
    }
