"""
Integral operators I(a), integral-reflection operators Q_{k,a} and Q_k(w),
the propagation operator T_k, Dunkl-type operators and the affine
intertwiner J_k, together with numerical checkers for the relations they
satisfy.

Words of simple affine reflections use the indices 0..n. q_word composes
left to right as operators: q_word([i1, i2], k, f) = Q_{k,a_i1}(Q_{k,a_i2} f).
A folding word lists reflections in the order they were applied to a point,
so the alcove representative of T_k f for that word is q_word of the
reversed word.
"""

from __future__ import absolute_import

import itertools
import math
import threading

import numpy as np

from bethe.exceptions import WallPointException
from bethe.exp_poly import ExpPolynomial, Polynomial
from bethe.root_systems import (DEFAULT_FOLD_ITER, apply_affine_word,
                                coxeter_order, fold_to_alcove,
                                nearest_walls, negative_affine_roots,
                                normalize_affine_root, wall_distance)


DEGENERATE_TOL = 1e-8
DUNKL_WALL_TOL = 1e-8
ONE_SIDED_OFFSET = 1e-7


def integral_op(rs, a, f):
    """(I(a)f)(v) = ∫_0^{a(v)} f(v - t·Da^∨) dt, in closed form."""
    d = rs.coroots[a.base]
    n = rs.rank
    affine = Polynomial.linear(n, rs.roots[a.base], a.offset)
    terms = []
    for mu, p in f.terms:
        c = mu.dot(d)
        # p(v - t·d) = Σ_j q_j(v) t^j
        q = []
        derivative = p
        j = 0
        while derivative:
            q.append(derivative.scale((-1) ** j / math.factorial(j)))
            derivative = derivative.directional_derivative(d)
            j += 1
        if abs(c) < DEGENERATE_TOL:
            # project μ onto the hyperplane μ(Da^∨) = 0 before integrating
            mu = mu - c / 2 * rs.roots[a.base]
            integrated = Polynomial(n)
            for j, qj in enumerate(q):
                integrated = integrated + qj * affine ** (j + 1) * (1.0 / (j + 1))
            terms.append((mu, integrated))
            continue
        own = Polynomial(n)
        reflected = Polynomial(n)
        for j, qj in enumerate(q):
            own = own + qj.scale(math.factorial(j) / c ** (j + 1))
            for i in range(j + 1):
                factor = (math.factorial(j) / math.factorial(j - i) /
                          c ** (i + 1))
                reflected = reflected + qj * affine ** (j - i) * factor
        terms.append((mu, own))
        terms.append((mu - c * rs.roots[a.base],
                      reflected.scale(-np.exp(-a.offset * c))))
    return ExpPolynomial(n, terms)


def reflect_function(rs, a, f):
    """f∘s_a"""
    d = rs.coroots[a.base]
    matrix = np.eye(rs.rank) - np.outer(d, rs.roots[a.base])
    return f.pullback(matrix, -a.offset * d)


def q_reflect(rs, a, k, f):
    """Q_{k,a} f = f∘s_a + k_a·I(a)f"""
    k_a = k(rs, a.base)
    reflected = reflect_function(rs, a, f)
    if not k_a:
        return reflected
    return reflected + integral_op(rs, a, f).scale(k_a)


def q_simple(rs, k, j, f):
    return q_reflect(rs, rs.simple_affine_root(j), k, f)


def q_word(rs, word, k, f):
    for j in reversed(list(word)):
        f = q_simple(rs, k, j, f)
    return f


def linear_part(rs, word, u):
    """Apply the linear parts of the reflections in word to u, in order."""
    u = np.array(u, dtype=float)
    for j in word:
        a = rs.simple_affine_root(j)
        u = u - rs.roots[a.base].dot(u) * rs.coroots[a.base]
    return u


def _direction_key(directions):
    return tuple(tuple(np.round(d, 12) + 0.0) for d in directions)


class PiecewiseEval(object):
    """T_k f as an evaluator: on the alcove w^{-1}C_+ it equals
    (Q_k(w)f)(w·), where w is the element found by folding.

    Alcove representatives and their derivatives are cached, and the cache
    is guarded by a lock.
    """

    def __init__(self, rs, k, source, max_iter=DEFAULT_FOLD_ITER):
        self.rs = rs
        self.k = k
        self.source = source
        self.max_iter = max_iter
        self._representatives = {(): source}
        self._derivatives = {}
        self._lock = threading.Lock()

    def representative(self, word):
        """Q_k(w)f for the folding word of w."""
        word = tuple(word)
        with self._lock:
            length = len(word)
            while word[:length] not in self._representatives:
                length -= 1
            result = self._representatives[word[:length]]
        # Q_k(w) for word + [j] is Q_{k,a_j} applied to the prefix result
        for end in range(length + 1, len(word) + 1):
            result = q_simple(self.rs, self.k, word[end - 1], result)
            with self._lock:
                self._representatives[word[:end]] = result
        return result

    def _derivative(self, word, directions):
        key = (word, _direction_key(directions))
        with self._lock:
            cached = self._derivatives.get(key)
        if cached is not None:
            return cached
        g = self.representative(word)
        for d in directions:
            g = g.directional_derivative(d)
        with self._lock:
            self._derivatives[key] = g
        return g

    def fold(self, v):
        return fold_to_alcove(self.rs, v, max_iter=self.max_iter)

    def value(self, v, directions=()):
        """∂_{d1}⋯∂_{dr}(T_k f)(v) for v off the walls (value at a wall
        point is the continuous limit)."""
        word, image = self.fold(v)
        mapped = [linear_part(self.rs, word, d) for d in directions]
        return self._derivative(word, mapped).eval(image)

    __call__ = value

    def eval(self, v):
        return self.value(v)

    def one_sided(self, v, side, directions=()):
        """Derivative at v of the analytic piece on the side v + 0·side."""
        side = np.asarray(side, dtype=float)
        probe = v + ONE_SIDED_OFFSET * side / np.linalg.norm(side)
        word, _ = self.fold(probe)
        image = apply_affine_word(self.rs, word, v)
        mapped = [linear_part(self.rs, word, d) for d in directions]
        return self._derivative(word, mapped).eval(image)


def propagate(rs, k, f, max_iter=DEFAULT_FOLD_ITER):
    return PiecewiseEval(rs, k, f, max_iter=max_iter)


def piecewise_eval(P, v):
    return P.value(v)


class ReflectedEval(object):
    """The function s_a F = F∘s_a for an evaluator F."""

    def __init__(self, inner, a):
        self.inner = inner
        self.rs = inner.rs
        self.k = inner.k
        self.a = a

    def value(self, x, directions=()):
        rs = self.rs
        mapped = [d - rs.roots[self.a.base].dot(d) * rs.coroots[self.a.base]
                  for d in directions]
        return self.inner.value(rs.affine_reflect(self.a, x), mapped)

    __call__ = value


class DunklImage(object):
    """D_u^k F, evaluated on regular points through the alcove form
    ∂_u F + Σ_{a ∈ Σ^+, a(x) < 0} k_a·Da(u)·F∘s_a.
    """

    def __init__(self, inner, u):
        self.inner = inner
        self.rs = inner.rs
        self.k = inner.k
        self.u = np.asarray(u, dtype=float)

    def value(self, x, directions=()):
        rs = self.rs
        total = self.inner.value(x, [self.u] + list(directions))
        for a in negative_affine_roots(rs, x):
            weight = self.k(rs, a.base) * rs.roots[a.base].dot(self.u)
            if not weight:
                continue
            mapped = [d - rs.roots[a.base].dot(d) * rs.coroots[a.base]
                      for d in directions]
            total += weight * self.inner.value(rs.affine_reflect(a, x),
                                               mapped)
        return total

    __call__ = value


def require_regular(rs, v, tol=DUNKL_WALL_TOL):
    distance = wall_distance(rs, v)
    if distance <= tol:
        raise WallPointException(
            "Point %s lies %.3g from an affine root hyperplane; Dunkl "
            "operators are only defined on regular points"
            % (np.round(v, 6).tolist(), distance))


def dunkl_eval(P, u, v, tol=DUNKL_WALL_TOL):
    """(D_u^k F)(v) for an evaluator F (usually T_k f) at a regular v."""
    require_regular(P.rs, v, tol)
    return DunklImage(P, u).value(v)


def intertwiner(rs, k, f):
    """J_k f = ∂_{φ^∨}(Q_k(a_0) f) + k_φ·f"""
    k_phi = k(rs, rs.highest_root)
    return (q_simple(rs, k, 0, f).directional_derivative(rs.highest_coroot) +
            f.scale(k_phi))


def random_exp_poly(rng, nvars, n_terms=3, degree=2, scale=1.0):
    """Random exponential polynomial with complex exponents of size ~scale
    and polynomial coefficients of degree <= degree."""
    monomials = [m for m in itertools.product(range(degree + 1),
                                              repeat=nvars)
                 if sum(m) <= degree]
    terms = []
    for _ in range(n_terms):
        exponent = scale * (rng.uniform(-1, 1, nvars) +
                            1j * rng.uniform(-2, 2, nvars))
        chosen = rng.choice(len(monomials), size=min(3, len(monomials)),
                            replace=False)
        coeffs = dict((monomials[i], complex(*rng.normal(size=2)))
                      for i in chosen)
        terms.append((exponent, Polynomial(nvars, coeffs)))
    return ExpPolynomial(nvars, terms)


def regular_points(rs, rng, count, radius=1.5, margin=1e-2):
    """Random points at distance > margin from every affine wall."""
    points = []
    while len(points) < count:
        v = rng.uniform(-radius, radius, rs.rank)
        if wall_distance(rs, v) > margin:
            points.append(v)
    return points


def wall_points(rs, rng, a, count, radius=1.5, margin=5e-2):
    """Random sub-regular points on the hyperplane V_a."""
    d = rs.coroots[a.base]
    points = []
    while len(points) < count:
        x = rng.uniform(-radius, radius, rs.rank)
        v = x - rs.affine_value(a, x) / 2.0 * d
        own = normalize_affine_root(rs, a.base, a.offset)
        if all(b == own for b in nearest_walls(rs, v, margin)):
            points.append(v)
    return points


def _relative(deviation, scale):
    return deviation / max(1.0, scale)


def _report(name, deviation, tolerance, **extra):
    report = {
        'name': name,
        'max_deviation': float(deviation),
        'tolerance': tolerance,
        'pass': bool(deviation < tolerance),
    }
    report.update(extra)
    return report


def _scale(f):
    return max([p.max_abs for _, p in f.terms] or [0.0])


def check_quadratic_relations(rs, fs, tol=1e-12):
    """I(a)²f = 0 for every simple affine root."""
    worst = 0.0
    for f in fs:
        for j in range(rs.rank + 1):
            a = rs.simple_affine_root(j)
            twice = integral_op(rs, a, integral_op(rs, a, f))
            worst = max(worst, _relative(_scale(twice), _scale(f)))
    return _report('quadratic_relations', worst, tol)


def check_involution(rs, k, fs, tol=1e-10):
    """Q_{k,a}² = id for every simple affine root."""
    worst = 0.0
    for f in fs:
        for j in range(rs.rank + 1):
            twice = q_simple(rs, k, j, q_simple(rs, k, j, f))
            worst = max(worst, _relative(twice.max_deviation(f), _scale(f)))
    return _report('involution', worst, tol)


def check_braid_relations(rs, k, fs, tol=1e-10):
    """Alternating words of length m_ij agree for every pair of simple
    affine reflections with finite Coxeter order."""
    worst = 0.0
    for i, j in itertools.combinations(range(rs.rank + 1), 2):
        m = coxeter_order(rs, i, j)
        if m is None:
            continue
        first = [(i, j)[t % 2] for t in range(m)]
        second = [(j, i)[t % 2] for t in range(m)]
        for f in fs:
            deviation = q_word(rs, first, k, f).max_deviation(
                q_word(rs, second, k, f))
            worst = max(worst, _relative(deviation, _scale(f)))
    return _report('braid_relations', worst, tol)


def check_wall_restriction(rs, k, fs, rng, count=10, tol=1e-10):
    """Q_{k,a} f and f agree on the hyperplane V_a."""
    worst = 0.0
    for j in range(rs.rank + 1):
        a = rs.simple_affine_root(j)
        for f in fs:
            image = q_reflect(rs, a, k, f)
            for v in wall_points(rs, rng, a, count, margin=0.0):
                worst = max(worst, abs(image.eval(v) - f.eval(v)) /
                            max(1.0, abs(f.eval(v))))
    return _report('wall_restriction', worst, tol)


def check_antisymmetric_kernel(rs, fs, tol=1e-10):
    """I(b) annihilates s_b-antisymmetric functions."""
    worst = 0.0
    for j in range(rs.rank + 1):
        b = rs.simple_affine_root(j)
        for g in fs:
            f = g - reflect_function(rs, b, g)
            worst = max(worst, _relative(_scale(integral_op(rs, b, f)),
                                         _scale(g)))
    return _report('antisymmetric_kernel', worst, tol)


def check_intertwiner(rs, k, fs, rng, tol=1e-10):
    """J_k on plane waves and J_k∘∂_u = ∂_{s_φ u}∘J_k."""
    worst = 0.0
    phi_coroot = rs.highest_coroot
    k_phi = k(rs, rs.highest_root)
    for f in fs:
        for mu, _ in f.terms:
            c = mu.dot(phi_coroot)
            expected = ExpPolynomial.plane_wave(
                mu - c * rs.roots[rs.highest_root],
                -(c + k_phi) * np.exp(c))
            actual = intertwiner(rs, k, ExpPolynomial.plane_wave(mu))
            worst = max(worst, _relative(actual.max_deviation(expected),
                                         _scale(expected)))
        u = rng.normal(size=rs.rank)
        su = rs.reflect(rs.highest_root, u)
        left = intertwiner(rs, k, f.directional_derivative(u))
        right = intertwiner(rs, k, f).directional_derivative(su)
        worst = max(worst, _relative(left.max_deviation(right),
                                     _scale(left)))
    return _report('intertwiner', worst, tol)


def check_cross_relation(rs, k, j, u, f, points, tol=1e-8):
    """s_a D_u = D_{s_{Da}u} s_a + k_a·Da(u) on T_k f, a = a_j."""
    a = rs.simple_affine_root(j)
    F = propagate(rs, k, f)
    su = u - rs.roots[a.base].dot(u) * rs.coroots[a.base]
    constant = k(rs, a.base) * rs.roots[a.base].dot(u)
    left_operator = DunklImage(F, u)
    right_operator = DunklImage(ReflectedEval(F, a), su)
    worst = 0.0
    for x in points:
        require_regular(rs, x)
        left = left_operator.value(rs.affine_reflect(a, x))
        right = right_operator.value(x) + constant * F.value(x)
        worst = max(worst, abs(left - right) / max(1.0, abs(left)))
    return _report('cross_relation', worst, tol, simple_root=j)


def check_commutativity(rs, k, u, u2, f, points, tol=1e-8):
    """[D_u, D_u2] = 0 on T_k f."""
    F = propagate(rs, k, f)
    first = DunklImage(DunklImage(F, u2), u)
    second = DunklImage(DunklImage(F, u), u2)
    worst = 0.0
    for x in points:
        require_regular(rs, x)
        a, b = first.value(x), second.value(x)
        worst = max(worst, abs(a - b) / max(1.0, abs(a)))
    return _report('dunkl_commutativity', worst, tol)


def check_intertwining(rs, k, f, u, points, tol=1e-8):
    """T_k(∂_u f) = D_u^k(T_k f) on regular points."""
    F = propagate(rs, k, f)
    G = propagate(rs, k, f.directional_derivative(u))
    worst = 0.0
    for x in points:
        left = G.value(x)
        right = dunkl_eval(F, u, x)
        worst = max(worst, abs(left - right) / max(1.0, abs(left)))
    return _report('intertwining', worst, tol)


def fd_laplacian(F, v, h):
    total = -2 * len(v) * F(v)
    for axis in np.eye(len(v)):
        total += F(v + h * axis) + F(v - h * axis)
    return total / h ** 2


def check_w0_invariant_descent(rs, k, f, points, tol=1e-8, fd_tol=1e-4):
    """p_2(D^k) acts as the Laplacian: compares the nested Dunkl
    evaluation, T_k(Δf) and a central finite-difference Laplacian of T_k f.
    """
    F = propagate(rs, k, f)
    T_laplacian = propagate(rs, k, f.laplacian())
    axes = np.eye(rs.rank)
    worst = 0.0
    worst_fd = 0.0
    for x in points:
        require_regular(rs, x)
        dunkl = sum(DunklImage(DunklImage(F, e), e).value(x) for e in axes)
        symbolic = T_laplacian.value(x)
        h = min(1e-3, 0.5 * wall_distance(rs, x))
        numeric = fd_laplacian(F, x, h)
        scale = max(1.0, abs(symbolic))
        worst = max(worst, abs(dunkl - symbolic) / scale)
        worst_fd = max(worst_fd, abs(numeric - symbolic) / scale)
    report = _report('laplacian_descent', worst, tol,
                     fd_deviation=float(worst_fd), fd_tolerance=fd_tol)
    report['pass'] = report['pass'] and worst_fd < fd_tol
    return report


def check_jumps(rs, k, f, rng, count=5, r_max=3, tol=1e-8):
    """Derivative jumps of T_k f across the walls of the fundamental
    alcove: the jump of ∂^r along Db^∨ equals (1 - (-1)^r)·k_b·∂^{r-1}
    on the positive side."""
    F = propagate(rs, k, f)
    worst = 0.0
    for j in range(rs.rank + 1):
        b = rs.simple_affine_root(j)
        d = rs.coroots[b.base]
        k_b = k(rs, b.base)
        for v in wall_points(rs, rng, b, count):
            for r in range(1, r_max + 1):
                plus = F.one_sided(v, d, [d] * r)
                minus = F.one_sided(v, -d, [d] * r)
                expected = (1 - (-1) ** r) * k_b * F.one_sided(
                    v, d, [d] * (r - 1))
                worst = max(worst, abs(plus - minus - expected) /
                            max(1.0, abs(plus)))
    return _report('derivative_jumps', worst, tol)


def bae_detector(rs, wg, k, lam, tol=1e-8):
    """Relative termwise deviation of Q_k(a_0)ψ_λ^k from ψ_λ^k; it vanishes
    exactly on solutions of the Bethe ansatz equations."""
    from bethe.eigenfunctions import psi_bethe

    psi = psi_bethe(rs, wg, k, lam)
    deviation = _relative(q_simple(rs, k, 0, psi).max_deviation(psi),
                          _scale(psi))
    return _report('bae_detector', deviation, tol)
