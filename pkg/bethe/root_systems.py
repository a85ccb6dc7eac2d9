"""
Finite irreducible root systems of types A-G, their affine extension and
their Weyl groups.

The Euclidean space V and its dual are identified through an orthonormal
coordinate realization, so roots (covectors) and coroots (vectors) are both
stored as rows of numpy arrays. Long roots have squared length 2 and
α^∨ = 2α/‖α‖².

Affine roots are a = Da + m with Da in Σ_0 and m an integer. The simple
affine roots are numbered 0..n with a_0 = -φ + 1 and a_j = α_j.
"""

from __future__ import absolute_import

import math
from collections import deque, namedtuple

import numpy as np

from bethe.exceptions import (FoldingException, InvalidMultiplicityException,
                              InvalidRootSystemException,
                              InvalidWeightException,
                              WeylGroupTooLargeException)


CARTAN_TYPES = ('A', 'B', 'C', 'D', 'E', 'F', 'G')
CLASSICAL_TYPES = ('A', 'B', 'C', 'D')
MIN_RANK = {'A': 1, 'B': 2, 'C': 3, 'D': 4}
EXCEPTIONAL_RANKS = {'E': (6, 7, 8), 'F': (4,), 'G': (2,)}

DEFAULT_MAX_RANK = 6
DEFAULT_MAX_WEYL_ORDER = 10 ** 6
DEFAULT_FOLD_ITER = 100000

WALL_TOL = 1e-12
REGULARITY_TOL = 1e-9
KEY_DECIMALS = 9


AffineRoot = namedtuple('AffineRoot', 'base offset')


def _vector_key(v, decimals=KEY_DECIMALS):
    # + 0.0 folds -0.0 into 0.0
    return tuple(np.round(np.real(v), decimals) + 0.0)


def _basis(dim, *entries):
    v = np.zeros(dim)
    for index, value in entries:
        v[index] += value
    return v


def _e8_simple_roots(rank):
    simple = [0.5 * np.array([1, -1, -1, -1, -1, -1, -1, 1], dtype=float),
              _basis(8, (0, 1), (1, 1))]
    simple += [_basis(8, (i, 1), (i - 1, -1)) for i in range(1, 7)]
    return simple[:rank]


def _ambient_simple_roots(cartan_type, rank):
    """Return the Bourbaki simple roots of the given type in their
    ambient coordinate space."""
    if cartan_type == 'A':
        dim = rank + 1
        return [_basis(dim, (i, 1), (i + 1, -1)) for i in range(rank)]
    chain = [_basis(rank, (i, 1), (i + 1, -1)) for i in range(rank - 1)]
    if cartan_type == 'B':
        return chain + [_basis(rank, (rank - 1, 1))]
    if cartan_type == 'C':
        return chain + [_basis(rank, (rank - 1, 2))]
    if cartan_type == 'D':
        return chain + [_basis(rank, (rank - 2, 1), (rank - 1, 1))]
    if cartan_type == 'E':
        return _e8_simple_roots(rank)
    if cartan_type == 'F':
        return [_basis(4, (1, 1), (2, -1)), _basis(4, (2, 1), (3, -1)),
                _basis(4, (3, 1)), 0.5 * np.array([1., -1., -1., -1.])]
    # G2 lives in the sum-zero plane of R^3
    return [_basis(3, (0, 1), (1, -1)), _basis(3, (0, -2), (1, 1), (2, 1))]


def validate_cartan_type(cartan_type, rank, max_rank=DEFAULT_MAX_RANK):
    cartan_type = str(cartan_type).upper()
    if cartan_type not in CARTAN_TYPES:
        raise InvalidRootSystemException(
            "Unknown Cartan type '%s', expected one of %s"
            % (cartan_type, ', '.join(CARTAN_TYPES)))
    try:
        rank = int(rank)
    except (TypeError, ValueError):
        raise InvalidRootSystemException("Rank must be an integer, got %r"
                                         % (rank,))
    if cartan_type in EXCEPTIONAL_RANKS:
        if rank not in EXCEPTIONAL_RANKS[cartan_type]:
            raise InvalidRootSystemException(
                "Type %s exists only in rank %s" % (
                    cartan_type,
                    ', '.join(str(r) for r in EXCEPTIONAL_RANKS[cartan_type])))
    else:
        if rank < MIN_RANK[cartan_type]:
            raise InvalidRootSystemException(
                "Type %s needs rank >= %d" % (cartan_type,
                                               MIN_RANK[cartan_type]))
        if rank > max_rank:
            raise InvalidRootSystemException(
                "Rank %d of type %s is above the configured cap %d"
                % (rank, cartan_type, max_rank))
    return cartan_type, rank


def weyl_group_order(cartan_type, rank):
    """Classical order formula of W_0."""
    if cartan_type == 'A':
        return math.factorial(rank + 1)
    if cartan_type in ('B', 'C'):
        return 2 ** rank * math.factorial(rank)
    if cartan_type == 'D':
        return 2 ** (rank - 1) * math.factorial(rank)
    return {('E', 6): 51840, ('E', 7): 2903040, ('E', 8): 696729600,
            ('F', 4): 1152, ('G', 2): 12}[(cartan_type, rank)]


class RootSystemData(object):
    """Realization of a finite irreducible root system Σ_0.

    Positive roots occupy indices 0..P-1 sorted by height, and the negative
    of root i is stored at index i + P. Arrays are read-only.
    """

    def __init__(self, cartan_type, rank, roots, coefficients, simple_roots,
                 embedding=None):
        self.cartan_type = cartan_type
        self.rank = rank
        self.roots = _frozen(roots)
        self.norms2 = _frozen(np.einsum('ij,ij->i', roots, roots))
        self.coroots = _frozen(2 * roots / self.norms2[:, None])
        self.coefficients = _frozen(coefficients)
        self.n_positive = len(roots) // 2
        self.positive_roots = tuple(range(self.n_positive))
        self.simple_roots = tuple(simple_roots)
        heights = coefficients[:self.n_positive].sum(axis=1)
        self.highest_root = int(np.argmax(heights))
        # only set for type A: columns span the sum-zero hyperplane of R^{n+1}
        self.embedding = None if embedding is None else _frozen(embedding)

        simple = self.roots[list(self.simple_roots)]
        simple_coroots = self.coroots[list(self.simple_roots)]
        self.cartan_matrix = _frozen(
            np.rint(simple_coroots.dot(simple.T)).astype(int))
        self.fundamental_weights = _frozen(np.linalg.inv(simple_coroots).T)
        self.long_mask = _frozen(np.isclose(self.norms2, self.norms2.max()))
        self.simply_laced = bool(self.long_mask.all())
        self._lookup = dict((_vector_key(r), i)
                            for i, r in enumerate(self.roots))

    def __repr__(self):
        return 'RootSystemData(%s%d)' % (self.cartan_type, self.rank)

    @property
    def name(self):
        return '%s%d' % (self.cartan_type, self.rank)

    @property
    def highest_coroot(self):
        return self.coroots[self.highest_root]

    @property
    def weyl_vector(self):
        """ρ, half the sum of the positive roots."""
        return 0.5 * self.roots[:self.n_positive].sum(axis=0)

    def negative(self, index):
        return (index + self.n_positive) % (2 * self.n_positive)

    def is_positive(self, index):
        return index < self.n_positive

    def root_index(self, vector):
        """Index of a root given by its coordinates, or None."""
        return self._lookup.get(_vector_key(vector))

    def pairings(self, xi):
        """ξ(α^∨) for every root, in root order."""
        return self.coroots.dot(xi)

    def simple_pairings(self, xi):
        return self.coroots[list(self.simple_roots)].dot(xi)

    def reflection_matrix(self, index):
        return np.eye(self.rank) - np.outer(self.coroots[index],
                                            self.roots[index])

    def reflect(self, index, v):
        return v - self.roots[index].dot(v) * self.coroots[index]

    def simple_affine_root(self, j):
        if j == 0:
            return AffineRoot(self.negative(self.highest_root), 1)
        return AffineRoot(self.simple_roots[j - 1], 0)

    def affine_value(self, a, v):
        return self.roots[a.base].dot(v) + a.offset

    def affine_reflect(self, a, v):
        """s_a(v) = v - a(v)·Da^∨"""
        return v - self.affine_value(a, v) * self.coroots[a.base]

    def simple_affine_values(self, v):
        values = self.roots[list(self.simple_roots)].dot(v)
        phi = self.roots[self.highest_root].dot(v)
        return np.concatenate(([1 - phi], values))

    def is_positive_affine(self, a):
        return a.offset > 0 or (a.offset == 0 and self.is_positive(a.base))

    def to_dict(self, weyl_group=None):
        data = {
            'type': self.cartan_type,
            'rank': self.rank,
            'roots': self.roots.tolist(),
            'coroots': self.coroots.tolist(),
            'positive_roots': list(self.positive_roots),
            'simple_roots': list(self.simple_roots),
            'highest_root': self.highest_root,
            'cartan_matrix': self.cartan_matrix.tolist(),
            'fundamental_weights': self.fundamental_weights.tolist(),
            'weyl_order': weyl_group_order(self.cartan_type, self.rank),
        }
        if weyl_group is not None:
            data['longest_element'] = list(
                weyl_group.reduced_words[weyl_group.longest_element])
        return data


def _frozen(array):
    array = np.array(array)
    array.flags.writeable = False
    return array


def _close_under_reflections(simple):
    norms = [s.dot(s) for s in simple]
    found = dict((_vector_key(s), s) for s in simple)
    queue = deque(simple)
    while queue:
        root = queue.popleft()
        for s, norm in zip(simple, norms):
            image = root - 2 * root.dot(s) / norm * s
            key = _vector_key(image)
            if key not in found:
                found[key] = image
                queue.append(image)
    return list(found.values())


def build_root_system(cartan_type, rank, max_rank=DEFAULT_MAX_RANK):
    """Construct the standard realization of the irreducible root system
    of the given Cartan type and rank."""
    cartan_type, rank = validate_cartan_type(cartan_type, rank, max_rank)
    simple = np.array(_ambient_simple_roots(cartan_type, rank))
    simple *= math.sqrt(2.0 / max(s.dot(s) for s in simple))

    embedding = None
    if simple.shape[1] > rank:
        basis, _ = np.linalg.qr(simple.T)
        simple = simple.dot(basis)
        if cartan_type == 'A':
            embedding = basis

    roots = np.array(_close_under_reflections(list(simple)))
    coefficients = roots.dot(np.linalg.inv(simple))
    rounded = np.rint(coefficients)
    if not np.allclose(coefficients, rounded, atol=1e-8):
        raise InvalidRootSystemException(
            "Non-integral simple root expansion in %s%d" % (cartan_type, rank))
    rounded = rounded.astype(int)

    positive = [i for i in range(len(roots)) if (rounded[i] >= 0).all()]
    positive.sort(key=lambda i: (rounded[i].sum(), tuple(-rounded[i])))
    ordered = np.concatenate((roots[positive], -roots[positive]))
    ordered_coefficients = np.concatenate((rounded[positive],
                                           -rounded[positive]))
    simple_indices = []
    for j in range(rank):
        target = np.eye(rank, dtype=int)[j]
        simple_indices.append(int(np.flatnonzero(
            (ordered_coefficients == target).all(axis=1))[0]))
    return RootSystemData(cartan_type, rank, ordered, ordered_coefficients,
                          simple_indices, embedding=embedding)


class WeylGroup(object):
    """Full enumeration of the finite Weyl group W_0.

    Reduced words use the simple reflection indices 1..n, matching the
    numbering of the simple affine roots.
    """

    def __init__(self, root_system, matrices, reduced_words, permutations):
        self.root_system = root_system
        self.matrices = _frozen(matrices)
        self.reduced_words = tuple(reduced_words)
        self.permutations = _frozen(permutations)
        self.lengths = _frozen([len(w) for w in self.reduced_words])
        self.longest_element = int(np.argmax(self.lengths))
        rho = root_system.weyl_vector
        self._index = dict((_vector_key(m.dot(rho)), i)
                           for i, m in enumerate(self.matrices))

    def __len__(self):
        return len(self.reduced_words)

    @property
    def order(self):
        return len(self)

    def act(self, element, v):
        return self.matrices[element].dot(v)

    def index(self, matrix):
        return self._index[_vector_key(matrix.dot(
            self.root_system.weyl_vector))]

    def multiply(self, first, second):
        return self.index(self.matrices[first].dot(self.matrices[second]))

    def inverse(self, element):
        return self.index(self.matrices[element].T)

    def sign(self, element):
        return -1 if self.lengths[element] % 2 else 1

    def inversion_count(self, element):
        """#{α > 0 : wα < 0}"""
        perm = self.permutations[element][:self.root_system.n_positive]
        return int((perm >= self.root_system.n_positive).sum())


def _root_permutations(rs, matrices, chunk=4096):
    coefficient_span = int(np.abs(rs.coefficients).max())
    base = 2 * coefficient_span + 1
    weights = base ** np.arange(rs.rank, dtype=np.int64)
    codes = (rs.coefficients + coefficient_span).dot(weights)
    order = np.argsort(codes)
    sorted_codes = codes[order]
    inverse_simple = np.linalg.inv(rs.roots[list(rs.simple_roots)])
    permutations = []
    for start in range(0, len(matrices), chunk):
        block = np.asarray(matrices[start:start + chunk])
        images = np.einsum('gij,rj->gri', block, rs.roots)
        coefficients = np.rint(images.dot(inverse_simple)).astype(np.int64)
        image_codes = (coefficients + coefficient_span).dot(weights)
        positions = np.searchsorted(sorted_codes, image_codes)
        permutations.append(order[positions])
    return np.concatenate(permutations)


def enumerate_weyl(rs, max_order=DEFAULT_MAX_WEYL_ORDER):
    """Enumerate W_0 by breadth-first search over right multiplication by
    simple reflections, so the first word reaching an element is reduced.
    """
    predicted = weyl_group_order(rs.cartan_type, rs.rank)
    if predicted > max_order:
        raise WeylGroupTooLargeException(
            "Weyl group of %s has order %d, above the enumeration cap %d"
            % (rs.name, predicted, max_order))
    rho = rs.weyl_vector
    reflections = [rs.reflection_matrix(i) for i in rs.simple_roots]
    matrices = [np.eye(rs.rank)]
    words = [()]
    seen = {_vector_key(rho): 0}
    queue = deque([0])
    while queue:
        current = queue.popleft()
        for j, reflection in enumerate(reflections, 1):
            product = matrices[current].dot(reflection)
            key = _vector_key(product.dot(rho))
            if key in seen:
                continue
            seen[key] = len(matrices)
            matrices.append(product)
            words.append(words[current] + (j,))
            queue.append(len(matrices) - 1)
    return WeylGroup(rs, matrices, words, _root_permutations(rs, matrices))


class Multiplicity(object):
    """W-invariant multiplicity function, one value per root length.

    Zero values are accepted (the free case); use require_positive() where
    a strictly positive coupling is needed.
    """

    def __init__(self, k_long, k_short=None):
        if k_short is None:
            k_short = k_long
        self.values = {}
        for name, value in (('long', k_long), ('short', k_short)):
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise InvalidMultiplicityException(
                    "Multiplicity '%s' must be a number, got %r"
                    % (name, value))
            if not math.isfinite(value) or value < 0:
                raise InvalidMultiplicityException(
                    "Multiplicity '%s' must be finite and nonnegative, "
                    "got %r" % (name, value))
            self.values[name] = value

    def __repr__(self):
        return 'Multiplicity(long=%r, short=%r)' % (self.values['long'],
                                                    self.values['short'])

    @classmethod
    def zero(cls):
        return cls(0.0)

    @property
    def is_zero(self):
        return not any(self.values.values())

    def for_roots(self, rs):
        return np.where(rs.long_mask, self.values['long'],
                        self.values['short'])

    def __call__(self, rs, index):
        return self.values['long' if rs.long_mask[index] else 'short']

    def require_positive(self, rs):
        k = self.for_roots(rs)
        if (k <= 0).any():
            raise InvalidMultiplicityException()
        return k


def pair(rs, xi, coroot):
    """ξ(α^∨) for a covector ξ and a coroot given by coordinates."""
    return np.dot(xi, coroot)


def orbit(wg, xi):
    """Distinct points of the W_0-orbit of ξ, in element order."""
    points = []
    seen = set()
    for matrix in wg.matrices:
        image = matrix.dot(xi)
        key = _vector_key(image) + _vector_key(np.imag(image))
        if key not in seen:
            seen.add(key)
            points.append(image)
    return points


def is_dominant(rs, mu, tol=WALL_TOL):
    return bool((np.real(rs.simple_pairings(mu)) >= -tol).all())


def is_regular(rs, lam, tol=REGULARITY_TOL):
    """λ(α^∨) != 0 for every root, with margin tol."""
    return bool(np.abs(rs.pairings(lam)).min() > tol)


def weight_from_coefficients(rs, coefficients):
    """Covector Σ m_i ω_i for integer coefficients m."""
    coefficients = list(coefficients)
    if len(coefficients) != rs.rank:
        raise InvalidWeightException(
            "Weight of %s needs %d coefficients, got %d"
            % (rs.name, rs.rank, len(coefficients)))
    integers = []
    for c in coefficients:
        if isinstance(c, bool) or not float(c).is_integer():
            raise InvalidWeightException(
                "Weight coefficient %r is not an integer" % (c,))
        integers.append(int(c))
    return np.array(integers, dtype=float).dot(rs.fundamental_weights)


def weight_coefficients(rs, mu):
    """Inverse of weight_from_coefficients: μ(a_j^∨) for j = 1..n."""
    return rs.simple_pairings(mu)


def translate(rs, v, coroot_coefficients):
    """Translate v by the coroot lattice element Σ γ_j a_j^∨."""
    gamma = np.asarray(coroot_coefficients, dtype=float)
    return v + gamma.dot(rs.coroots[list(rs.simple_roots)])


def coxeter_order(rs, i, j):
    """Order of s_{a_i}s_{a_j} for simple affine roots, None if infinite."""
    if i == j:
        return 1
    a, b = rs.simple_affine_root(i), rs.simple_affine_root(j)
    product = (rs.roots[a.base].dot(rs.coroots[b.base]) *
               rs.roots[b.base].dot(rs.coroots[a.base]))
    return {0: 2, 1: 3, 2: 4, 3: 6}.get(int(round(product)))


def chi(rs, a, x):
    """Alcove predicate: 1 where a(x) < 0, 0 elsewhere."""
    return 1 if rs.affine_value(a, x) < 0 else 0


def negative_affine_roots(rs, x):
    """The finite set of positive affine roots a with a(x) < 0."""
    found = []
    for i, t in enumerate(rs.roots[:rs.n_positive].dot(x)):
        # a = α + m, m >= 0, needs m < -t
        for m in range(0, max(0, int(math.ceil(-t)))):
            found.append(AffineRoot(i, m))
        # a = -α + m, m >= 1, needs m < t
        for m in range(1, max(1, int(math.ceil(t)))):
            found.append(AffineRoot(rs.negative(i), m))
    return found


def normalize_affine_root(rs, base, offset):
    """Positive affine root with the same zero hyperplane as base + offset."""
    a = AffineRoot(base, int(offset))
    if rs.is_positive_affine(a):
        return a
    return AffineRoot(rs.negative(base), -int(offset))


def nearest_walls(rs, x, band):
    """Positive affine roots whose hyperplane lies within band of x."""
    walls = []
    for i in rs.positive_roots:
        t = rs.roots[i].dot(x)
        m = -int(round(t))
        distance = abs(t + m) / math.sqrt(rs.norms2[i])
        if distance < band:
            walls.append((distance, normalize_affine_root(rs, i, m)))
    walls.sort(key=lambda item: item[0])
    return [a for _, a in walls]


def wall_distance(rs, x):
    """Euclidean distance from x to the nearest affine root hyperplane."""
    t = rs.roots[:rs.n_positive].dot(x)
    return float((np.abs(t - np.rint(t)) / np.sqrt(
        rs.norms2[:rs.n_positive])).min())


def fold_to_alcove(rs, v, max_iter=DEFAULT_FOLD_ITER, tol=WALL_TOL):
    """Fold v into the closure of the fundamental alcove C_+.

    Returns (word, image) where word lists the simple affine reflections
    in the order they were applied to v. Points on a wall (a_j(v) >= -tol)
    are not reflected.
    """
    image = np.array(v, dtype=float)
    if not np.isfinite(image).all():
        raise FoldingException("Cannot fold non-finite point %r" % (v,))
    word = []
    for _ in range(max_iter):
        negative = np.flatnonzero(rs.simple_affine_values(image) < -tol)
        if not len(negative):
            return tuple(word), image
        j = int(negative[0])
        image = rs.affine_reflect(rs.simple_affine_root(j), image)
        word.append(j)
    raise FoldingException(
        "Folding %r did not terminate within %d reflections"
        % (list(v), max_iter))


def apply_affine_word(rs, word, v):
    """Apply simple affine reflections to v in list order."""
    image = np.array(v, dtype=float)
    for j in word:
        image = rs.affine_reflect(rs.simple_affine_root(j), image)
    return image
