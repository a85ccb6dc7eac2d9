"""
c-functions and the Bethe eigenfunctions.

ψ_λ^k is an exponential polynomial on V. The W-invariant eigenfunction
φ_λ^k agrees with ψ_λ^k on the closure of the fundamental alcove and is
extended to V by folding. The impenetrable eigenfunction uses the
normalization that makes k_{w_0}^{-1}·ψ_{iμ̂_k}^k converge to it.
"""

from __future__ import absolute_import

import math

import numpy as np

from bethe.exceptions import (BetheWarning, SingularSpectralParameterException,
                              WallPointException, print_warning)
from bethe.exp_poly import ExpPolynomial
from bethe.operators import q_word, wall_points
from bethe.root_systems import (DEFAULT_FOLD_ITER, REGULARITY_TOL,
                                fold_to_alcove, is_regular, nearest_walls,
                                normalize_affine_root, wall_distance)
from bethe.utils import debug_log, make_rng


MODES = ('bethe_k', 'impenetrable', 'free')
POLE_TOL = 1e-12
NORMALIZATION_TOL = 1e-10
LATTICE_TOL = 1e-8

EIGEN_STEP = 1e-4
JUMP_STEP = 1e-4
JUMP_OFFSET = 1e-6
JUMP_STENCIL = 5
SUB_REGULAR_MARGIN = 1e-3
JUMP_TOL = 1e-3


class CFunctionValue(object):

    def __init__(self, value, pole_flag=False):
        self.value = value
        self.pole_flag = pole_flag

    def __repr__(self):
        return 'CFunctionValue(%r, pole_flag=%r)' % (self.value,
                                                     self.pole_flag)


def c_tilde(rs, k, lam):
    """Π_{α > 0} (λ(α^∨) + k_α)/λ(α^∨); a vanishing pairing sets
    pole_flag and an infinite value."""
    pairings = rs.pairings(np.asarray(lam, dtype=complex))[:rs.n_positive]
    kk = k.for_roots(rs)[:rs.n_positive]
    if (np.abs(pairings) < POLE_TOL).any():
        return CFunctionValue(complex(np.inf), pole_flag=True)
    return CFunctionValue(complex(np.prod((pairings + kk) / pairings)))


def c_regularized(rs, k, lam):
    """The same product over the roots with λ(α^∨) != 0 only."""
    pairings = rs.pairings(np.asarray(lam, dtype=complex))[:rs.n_positive]
    kk = k.for_roots(rs)[:rs.n_positive]
    keep = np.abs(pairings) >= POLE_TOL
    return CFunctionValue(
        complex(np.prod((pairings[keep] + kk[keep]) / pairings[keep])),
        pole_flag=not keep.all())


def longest_multiplicity(rs, k):
    """k_{w_0} = Π_{α > 0} k_α"""
    return float(np.prod(k.for_roots(rs)[:rs.n_positive]))


def _require_regular(rs, lam):
    if not is_regular(rs, lam, REGULARITY_TOL):
        raise SingularSpectralParameterException(
            "Spectral parameter is singular (min |λ(α^∨)| = %.3g); only "
            "regular eigenfunctions can be constructed"
            % np.abs(rs.pairings(lam)).min())


def psi_bethe(rs, wg, k, lam):
    """ψ_λ^k = (1/#W_0) Σ_w c̃_k(wλ)·e^{wλ} for regular λ."""
    lam = np.asarray(lam, dtype=complex)
    _require_regular(rs, lam)
    terms = []
    for matrix in wg.matrices:
        image = matrix.dot(lam)
        terms.append((image, c_tilde(rs, k, image).value / len(wg)))
    total = sum(c for _, c in terms)
    scale = max(1.0, max(abs(c) for _, c in terms))
    if abs(total - 1) > NORMALIZATION_TOL * scale:
        print_warning("ψ(0) = %r deviates from 1" % (total,),
                      category=BetheWarning)
    return _plane_waves(rs.rank, terms)


def _plane_waves(nvars, terms):
    result = ExpPolynomial(nvars)
    for exponent, coefficient in terms:
        result = result + ExpPolynomial.plane_wave(exponent, coefficient)
    return result


def psi_operator(rs, wg, k, lam):
    """(1/#W_0) Σ_w Q_k(w)e^λ, built from reduced words."""
    lam = np.asarray(lam, dtype=complex)
    wave = ExpPolynomial.plane_wave(lam)
    result = ExpPolynomial(rs.rank)
    for word in wg.reduced_words:
        result = result + q_word(rs, word, k, wave)
    return result.scale(1.0 / len(wg))


def psi_free(rs, wg, lam):
    """The k ≡ 0 eigenfunction (1/#W_0) Σ_w e^{wλ}."""
    lam = np.asarray(lam, dtype=complex)
    return _plane_waves(rs.rank, [(m.dot(lam), 1.0 / len(wg))
                                  for m in wg.matrices])


def impenetrable_weight(rs, lam):
    """λ/(2πi) as a weight; raises unless it lies in P and λ is regular."""
    lam = np.asarray(lam, dtype=complex)
    mu = lam / (2j * math.pi)
    coefficients = rs.simple_pairings(mu)
    if (np.abs(mu.imag).max() > LATTICE_TOL or
            np.abs(coefficients - np.rint(coefficients.real)).max() >
            LATTICE_TOL):
        raise SingularSpectralParameterException(
            "Impenetrable eigenfunctions need λ ∈ 2πi·P")
    _require_regular(rs, lam)
    return mu.real


def psi_impenetrable(rs, wg, lam):
    """(1/#W_0)·Π_{α > 0} λ(α^∨)^{-1}·Σ_w (-1)^{l(w)} e^{wλ}

    The product runs over positive roots only: k_{w_0}^{-1}·ψ_λ^k tends to
    this function as k grows.
    """
    lam = np.asarray(lam, dtype=complex)
    impenetrable_weight(rs, lam)
    prefactor = 1.0 / np.prod(rs.pairings(lam)[:rs.n_positive]) / len(wg)
    return _plane_waves(rs.rank, [
        (matrix.dot(lam), wg.sign(index) * prefactor)
        for index, matrix in enumerate(wg.matrices)])


class EigenfunctionEval(object):
    """φ = G(ψ): fold v into the closure of C_+ and evaluate ψ there."""

    def __init__(self, rs, wg, k, lam, mode='bethe_k',
                 max_iter=DEFAULT_FOLD_ITER):
        if mode not in MODES:
            raise ValueError("Unknown eigenfunction mode %r" % mode)
        self.rs = rs
        self.lam = np.asarray(lam, dtype=complex)
        self.mode = mode
        self.max_iter = max_iter
        if mode == 'bethe_k':
            self.psi = psi_bethe(rs, wg, k, self.lam)
        elif mode == 'impenetrable':
            self.psi = psi_impenetrable(rs, wg, self.lam)
        else:
            self.psi = psi_free(rs, wg, self.lam)
        # Δφ = p_2(λ)·φ = -E·φ
        self.energy = float(-np.sum(self.lam ** 2).real)

    def __repr__(self):
        return 'EigenfunctionEval(%s, mode=%s)' % (self.rs.name, self.mode)

    def psi_value(self, v):
        return self.psi.eval(v)

    def __call__(self, v):
        _, image = fold_to_alcove(self.rs, v, max_iter=self.max_iter)
        return self.psi.eval(image)

    def evaluate_grid(self, points):
        return np.array([self(v) for v in points], dtype=complex)


def eigenfunction(rs, wg, k, solution, mode='bethe_k'):
    """EigenfunctionEval for a solved weight; the free and impenetrable
    modes use λ = 2πiμ."""
    if mode == 'bethe_k':
        lam = solution.lam
    else:
        lam = 2j * math.pi * solution.mu_vec
    return EigenfunctionEval(rs, wg, k, lam, mode=mode)


def evaluate_grid(ev, points):
    return ev.evaluate_grid(points)


def phi_eval(rs, wg, k, lam, v, mode='bethe_k'):
    return EigenfunctionEval(rs, wg, k, lam, mode=mode)(v)


def _eigen_residual(ev, points, h):
    worst = 0.0
    scale = 0.0
    for v in points:
        v = np.asarray(v, dtype=float)
        distance = wall_distance(ev.rs, v)
        if distance <= 2 * h:
            raise WallPointException(
                "Grid point %s is %.3g from a wall, closer than twice the "
                "finite-difference step %g" % (v.tolist(), distance, h))
        value = ev(v)
        laplacian = -2 * len(v) * value
        for axis in np.eye(len(v)):
            laplacian += ev(v + h * axis) + ev(v - h * axis)
        laplacian /= h ** 2
        worst = max(worst, abs(laplacian + ev.energy * value))
        scale = max(scale, abs(ev.energy * value))
    return worst / max(scale, np.finfo(float).tiny)


def verify_eigen(rs, wg, k, solution, points, h=EIGEN_STEP, mode='bethe_k',
                 tol=1e-6):
    """Central-difference Laplacian of φ against -E·φ on regular points.

    The deviation is relative to max |E·φ| over the points.
    """
    ev = eigenfunction(rs, wg, k, solution, mode)
    deviation = _eigen_residual(ev, points, h)
    debug_log("eigen residual (%s, h=%g): %.3e" % (mode, h, deviation))
    return {
        'name': 'eigen_equation_%s' % mode,
        'max_deviation': float(deviation),
        'tolerance': tol,
        'pass': bool(deviation < tol),
        'energy': ev.energy,
        'step': h,
    }


def eigen_convergence_order(rs, wg, k, solution, points, h=1e-2,
                            mode='bethe_k', min_order=1.8):
    """Observed order of the Laplacian residual under step halving."""
    ev = eigenfunction(rs, wg, k, solution, mode)
    coarse = _eigen_residual(ev, points, h)
    fine = _eigen_residual(ev, points, h / 2)
    order = math.log(coarse / fine, 2) if fine > 0 else float('inf')
    return {
        'name': 'eigen_order_%s' % mode,
        'max_deviation': float(fine),
        'order': float(order),
        'coarse': float(coarse),
        'fine': float(fine),
        'tolerance': min_order,
        'pass': bool(order >= min_order),
    }


def one_sided_weights(nodes, order):
    """Weights w with Σ w_i g(t_i) ≈ g^{(order)}(0) for the given nodes."""
    nodes = np.asarray(nodes, dtype=float)
    powers = np.arange(len(nodes))
    vandermonde = nodes[None, :] ** powers[:, None]
    rhs = np.zeros(len(nodes))
    rhs[order] = math.factorial(order)
    return np.linalg.solve(vandermonde, rhs)


def _one_sided_derivative(ev, v, d, order, step, offset, side):
    if order == 0:
        return ev(v + side * offset * d), 0.0
    nodes = side * (offset + step * np.arange(JUMP_STENCIL))
    weights = one_sided_weights(nodes, order)
    values = np.array([ev(v + t * d) for t in nodes])
    noise = 1e3 * np.finfo(float).eps * np.abs(values).max() * \
        np.abs(weights).sum()
    return weights.dot(values), noise


def _check_sub_regular(rs, a, v, margin=SUB_REGULAR_MARGIN):
    own = normalize_affine_root(rs, a.base, a.offset)
    others = [b for b in nearest_walls(rs, v, margin) if b != own]
    if others or abs(rs.affine_value(a, v)) > 1e-10:
        raise WallPointException(
            "Wall sample %s is not a sub-regular point of its wall"
            % (np.round(v, 6).tolist(),))


def verify_jumps(rs, wg, k, solution, wall_samples=None, r_max=3,
                 step=JUMP_STEP, offset=JUMP_OFFSET, mode='bethe_k',
                 rng=None, count=10, tol=JUMP_TOL):
    """Jumps of ∂^r along Db^∨ across the walls of C_+ from one-sided
    5-point differences: (1 - (-1)^r)·k_b·∂^{r-1} on the positive side.

    wall_samples is a list of (j, v) with v on the wall of a_j. Steps
    grow with the derivative order to keep roundoff in check.
    """
    if mode == 'impenetrable':
        raise ValueError("Jump conditions are checked for the bethe_k and "
                         "free modes only")
    ev = eigenfunction(rs, wg, k, solution, mode)
    if wall_samples is None:
        rng = rng if rng is not None else make_rng()
        wall_samples = []
        for j in range(rs.rank + 1):
            a = rs.simple_affine_root(j)
            per_wall = max(1, count // (rs.rank + 1))
            wall_samples.extend((j, v) for v in wall_points(rs, rng, a,
                                                            per_wall))
    k_of = (lambda index: 0.0) if mode != 'bethe_k' else (
        lambda index: k(rs, index))
    orders = {}
    for j, v in wall_samples:
        a = rs.simple_affine_root(j)
        _check_sub_regular(rs, a, v)
        d = rs.coroots[a.base]
        k_a = k_of(a.base)
        below = _one_sided_derivative(ev, v, d, 0, step, 0.0, 1)[0]
        for r in range(1, r_max + 1):
            h = step * 10 ** ((r - 1) / 2.0)
            plus, noise_plus = _one_sided_derivative(ev, v, d, r, h,
                                                     offset, 1)
            minus, noise_minus = _one_sided_derivative(ev, v, d, r, h,
                                                       offset, -1)
            expected = (1 - (-1) ** r) * k_a * below
            error = abs(plus - minus - expected)
            noise = noise_plus + noise_minus
            scale = max(abs(expected), abs(plus), 1e-12)
            deviation = error / scale
            passed = error <= noise or deviation < tol
            entry = orders.setdefault(r, {'order': r, 'max_deviation': 0.0,
                                          'noise_floor': 0.0, 'pass': True})
            entry['max_deviation'] = max(entry['max_deviation'],
                                         float(deviation))
            entry['noise_floor'] = max(entry['noise_floor'], float(noise))
            entry['pass'] = entry['pass'] and bool(passed)
            below = plus
    per_order = [orders[r] for r in sorted(orders)]
    return {
        'name': 'derivative_jumps_%s' % mode,
        'orders': per_order,
        'max_deviation': max([o['max_deviation'] for o in per_order] or
                             [0.0]),
        'tolerance': tol,
        'samples': len(wall_samples),
        'pass': all(o['pass'] for o in per_order),
    }


def phi_vanishes_on_walls(rs, wg, lam, points, tol=1e-10):
    """Impenetrable φ on wall points."""
    ev = EigenfunctionEval(rs, wg, None, lam, mode='impenetrable')
    worst = max([abs(ev(v)) for v in points] or [0.0])
    return {
        'name': 'impenetrable_wall_zeros',
        'max_deviation': float(worst),
        'tolerance': tol,
        'pass': bool(worst < tol),
    }

