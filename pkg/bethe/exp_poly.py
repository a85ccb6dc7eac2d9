"""
Exponential polynomials f(v) = Σ_μ p_μ(v)·e^{μ(v)} on R^n.

Exponents are complex covectors, coefficients are sparse complex
polynomials keyed by multi-index. Exponents are canonicalized on a grid of
width EXPONENT_GRID, so two exponents that differ by rounding noise share
one term.
"""

from __future__ import absolute_import

import itertools
import math

import numpy as np


EXPONENT_GRID = 1e-10
# coefficients below this fraction of the operands' largest one are dropped
CHOP = 1e-13


def _fsum_complex(values):
    values = list(values)
    return complex(math.fsum(v.real for v in values),
                   math.fsum(v.imag for v in values))


class Polynomial(object):
    """Sparse polynomial in n variables with complex coefficients."""

    def __init__(self, nvars, coeffs=None, scale=None):
        self.nvars = nvars
        self.coeffs = {}
        for monomial, c in (coeffs or {}).items():
            if c != 0:
                self.coeffs[tuple(monomial)] = complex(c)
        self._chop(scale)

    @property
    def max_abs(self):
        return max([abs(c) for c in self.coeffs.values()] or [0.0])

    def _chop(self, scale=None):
        if not self.coeffs:
            return
        scale = max(scale or 0.0, self.max_abs)
        self.coeffs = dict((m, c) for m, c in self.coeffs.items()
                           if abs(c) > CHOP * scale)

    @classmethod
    def constant(cls, nvars, value=1.0):
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars, index):
        monomial = [0] * nvars
        monomial[index] = 1
        return cls(nvars, {tuple(monomial): 1.0})

    @classmethod
    def linear(cls, nvars, gradient, constant=0.0):
        """v ↦ gradient·v + constant"""
        coeffs = {(0,) * nvars: constant}
        for i, g in enumerate(gradient):
            monomial = [0] * nvars
            monomial[i] = 1
            coeffs[tuple(monomial)] = g
        return cls(nvars, coeffs)

    def __repr__(self):
        return 'Polynomial(%r)' % (self.coeffs,)

    def __bool__(self):
        return bool(self.coeffs)

    __nonzero__ = __bool__

    @property
    def degree(self):
        if not self.coeffs:
            return -1
        return max(sum(m) for m in self.coeffs)

    @property
    def is_constant(self):
        return self.degree <= 0

    def constant_term(self):
        return self.coeffs.get((0,) * self.nvars, 0j)

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.nvars, other)
        coeffs = dict(self.coeffs)
        for m, c in other.coeffs.items():
            coeffs[m] = coeffs.get(m, 0j) + c
        return Polynomial(self.nvars, coeffs,
                          scale=max(self.max_abs, other.max_abs))

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        return Polynomial(self.nvars, dict(
            (m, c * factor) for m, c in self.coeffs.items()))

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        coeffs = {}
        for (m1, c1), (m2, c2) in itertools.product(self.coeffs.items(),
                                                    other.coeffs.items()):
            m = tuple(a + b for a, b in zip(m1, m2))
            coeffs[m] = coeffs.get(m, 0j) + c1 * c2
        return Polynomial(self.nvars, coeffs)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        result = Polynomial.constant(self.nvars)
        for _ in range(exponent):
            result = result * self
        return result

    def __call__(self, v):
        v = np.asarray(v)
        return _fsum_complex(c * np.prod(v ** np.array(m))
                             for m, c in self.coeffs.items())

    def derivative(self, index):
        coeffs = {}
        for m, c in self.coeffs.items():
            if m[index]:
                lowered = list(m)
                lowered[index] -= 1
                coeffs[tuple(lowered)] = c * m[index]
        return Polynomial(self.nvars, coeffs)

    def directional_derivative(self, u):
        result = Polynomial(self.nvars)
        for i, ui in enumerate(u):
            if ui:
                result = result + self.derivative(i).scale(ui)
        return result

    def compose_affine(self, matrix, shift):
        """The polynomial v ↦ p(matrix·v + shift)."""
        linear = [Polynomial.linear(self.nvars, matrix[i], shift[i])
                  for i in range(self.nvars)]
        powers = {}

        def power(i, e):
            if (i, e) not in powers:
                powers[i, e] = linear[i] ** e
            return powers[i, e]

        result = Polynomial(self.nvars)
        for m, c in self.coeffs.items():
            term = Polynomial.constant(self.nvars, c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result


class ExpPolynomial(object):
    """Finite sum of polynomial × exponential terms.

    Values are immutable: every operation returns a new ExpPolynomial.
    """

    def __init__(self, nvars, terms=()):
        self.nvars = nvars
        self._terms = {}
        for exponent, poly in terms:
            self._add_term(np.asarray(exponent, dtype=complex), poly)

    def _key(self, exponent):
        scaled = np.concatenate((exponent.real, exponent.imag)) / EXPONENT_GRID
        base = np.rint(scaled)
        candidates = [base]
        # probe the neighbouring cell where rounding is ambiguous
        ambiguous = np.flatnonzero(np.abs(np.abs(scaled - base) - 0.5) < 0.1)
        for choice in itertools.product((0, 1), repeat=len(ambiguous)):
            if any(choice):
                shifted = base.copy()
                for index, flip in zip(ambiguous, choice):
                    if flip:
                        shifted[index] += np.sign(scaled[index] - base[index])
                candidates.append(shifted)
        keys = [tuple(c.astype(np.int64)) for c in candidates]
        for key in keys:
            if key in self._terms:
                return key
        return keys[0]

    def _add_term(self, exponent, poly):
        if not poly:
            return
        key = self._key(exponent)
        if key in self._terms:
            stored, existing = self._terms[key]
            total = existing + poly
            if total:
                self._terms[key] = (stored, total)
            else:
                del self._terms[key]
        else:
            self._terms[key] = (exponent, poly)

    @classmethod
    def plane_wave(cls, exponent, coefficient=1.0):
        exponent = np.asarray(exponent, dtype=complex)
        nvars = len(exponent)
        return cls(nvars, [(exponent,
                            Polynomial.constant(nvars, coefficient))])

    @classmethod
    def constant(cls, nvars, value=1.0):
        return cls.plane_wave(np.zeros(nvars), value)

    @classmethod
    def from_polynomial(cls, poly, exponent=None):
        if exponent is None:
            exponent = np.zeros(poly.nvars)
        return cls(poly.nvars, [(exponent, poly)])

    def __repr__(self):
        return 'ExpPolynomial(%d terms)' % len(self._terms)

    def __len__(self):
        return len(self._terms)

    @property
    def terms(self):
        return [(exponent, poly) for exponent, poly in self._terms.values()]

    @property
    def degree(self):
        return max([poly.degree for _, poly in self.terms] or [-1])

    def is_zero(self):
        return not self._terms

    def __add__(self, other):
        if not isinstance(other, ExpPolynomial):
            other = ExpPolynomial.constant(self.nvars, other)
        return ExpPolynomial(self.nvars, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        return ExpPolynomial(self.nvars, [(e, p.scale(factor))
                                          for e, p in self.terms])

    def __mul__(self, other):
        if not isinstance(other, ExpPolynomial):
            return self.scale(other)
        return ExpPolynomial(self.nvars, [
            (e1 + e2, p1 * p2)
            for (e1, p1), (e2, p2) in itertools.product(self.terms,
                                                        other.terms)])

    __rmul__ = __mul__

    def eval(self, v):
        v = np.asarray(v, dtype=float)
        return _fsum_complex(poly(v) * np.exp(exponent.dot(v))
                             for exponent, poly in self.terms)

    __call__ = eval

    def directional_derivative(self, u):
        """∂_u(p·e^μ) = (∂_u p + μ(u)·p)·e^μ, termwise."""
        u = np.asarray(u, dtype=float)
        return ExpPolynomial(self.nvars, [
            (e, p.directional_derivative(u) + p.scale(e.dot(u)))
            for e, p in self.terms])

    def laplacian(self):
        result = ExpPolynomial(self.nvars)
        for axis in np.eye(self.nvars):
            result = result + self.directional_derivative(
                axis).directional_derivative(axis)
        return result

    def pullback(self, matrix, shift=None):
        """The function v ↦ f(matrix·v + shift)."""
        matrix = np.asarray(matrix, dtype=float)
        if shift is None:
            shift = np.zeros(self.nvars)
        shift = np.asarray(shift, dtype=float)
        terms = []
        for exponent, poly in self.terms:
            factor = np.exp(exponent.dot(shift))
            terms.append((matrix.T.dot(exponent),
                          poly.compose_affine(matrix, shift).scale(factor)))
        return ExpPolynomial(self.nvars, terms)

    def max_deviation(self, other):
        """Largest coefficient of self - other after term matching."""
        difference = self - other
        coefficients = [abs(c) for _, p in difference.terms
                        for c in p.coeffs.values()]
        return max(coefficients or [0.0])

    def approx_equal(self, other, tol=1e-10):
        return self.max_deviation(other) < tol


def evaluate(f, v):
    return f.eval(v)


def directional_derivative(f, u):
    return f.directional_derivative(u)


def pullback(f, matrix, shift=None):
    return f.pullback(matrix, shift)


def approx_equal(f, g, tol=1e-10):
    return f.approx_equal(g, tol)
