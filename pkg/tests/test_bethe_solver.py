from __future__ import absolute_import
import math
import unittest

import mock
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from bethe import bethe_solver
from bethe.exceptions import (ConvergenceException,
                              InvalidMultiplicityException,
                              InvalidWeightException,
                              IndeterminateRegularityWarning)
from bethe.root_systems import Multiplicity, weight_from_coefficients

from .utils import a1_pairing, system


class MasterFunctionTest(unittest.TestCase):

    def setUp(self):
        self.rs, _ = system('B', 2)
        self.k = Multiplicity(0.5, 3.0)
        self.mu = weight_from_coefficients(self.rs, [1, 2])

    def test_value_matches_quadrature_a1(self):
        rs, _ = system('A', 1)
        k = Multiplicity(2.0)
        mu = rs.fundamental_weights[0]
        xi = 1.3 * mu
        t = float(rs.pairings(xi)[0])
        integral = quad(lambda s: math.atan(s / 2.0), 0.0, t)[0]
        expected = (0.5 * xi.dot(xi) - 2 * math.pi * mu.dot(xi) +
                    2 * integral)
        self.assertAlmostEqual(
            bethe_solver.master_value(rs, k, mu, xi), expected, places=10)

    def test_gradient_matches_difference(self):
        xi = np.array([0.7, -1.9])
        h = 1e-6
        numeric = np.array([
            (bethe_solver.master_value(self.rs, self.k, self.mu, xi + h * e) -
             bethe_solver.master_value(self.rs, self.k, self.mu, xi - h * e))
            / (2 * h) for e in np.eye(2)])
        np.testing.assert_allclose(
            bethe_solver.master_gradient(self.rs, self.k, self.mu, xi),
            numeric, atol=1e-6)

    def test_hessian_matches_difference(self):
        xi = np.array([2.1, 0.4])
        h = 1e-6
        columns = [
            (bethe_solver.master_gradient(self.rs, self.k, self.mu,
                                          xi + h * e) -
             bethe_solver.master_gradient(self.rs, self.k, self.mu,
                                          xi - h * e)) / (2 * h)
            for e in np.eye(2)]
        np.testing.assert_allclose(
            bethe_solver.master_hessian(self.rs, self.k, xi),
            np.array(columns).T, atol=1e-6)

    def test_coxeter_number(self):
        rs, _ = system('A', 2)
        # six roots with k = 1
        self.assertEqual(bethe_solver.coxeter_number_h(rs, Multiplicity(1)),
                         12.0)
        # B2: four long roots and four short ones
        self.assertAlmostEqual(
            bethe_solver.coxeter_number_h(self.rs, self.k),
            2 * (4 / 0.5 + 4 / 3.0))

    def test_requires_positive_multiplicity(self):
        with self.assertRaises(InvalidMultiplicityException):
            bethe_solver.coxeter_number_h(self.rs, Multiplicity(1.0, 0.0))


class SolveTest(unittest.TestCase):

    def test_a1_reference_value(self):
        rs, wg = system('A', 1)
        solution = bethe_solver.solve(rs, Multiplicity(2.0), [1], wg=wg)
        t = a1_pairing(2.0)
        self.assertAlmostEqual(t, 2.6135, places=3)
        self.assertAlmostEqual(solution.pairings[0], t, places=10)
        self.assertAlmostEqual(solution.energy, t ** 2 / 2, places=9)
        self.assertLess(solution.bae_residual, 1e-9)
        self.assertLess(solution.log_residual, 1e-10)
        self.assertTrue(solution.regular)

    def test_a1_higher_weights(self):
        rs, wg = system('A', 1)
        for m in (2, 3):
            solution = bethe_solver.solve(rs, Multiplicity(0.7), [m], wg=wg)
            self.assertAlmostEqual(solution.pairings[0],
                                   a1_pairing(0.7, m), places=9)

    def test_gap_certificate(self):
        rs, wg = system('B', 2)
        solution = bethe_solver.solve(rs, Multiplicity(0.5, 3.0), [1, 1],
                                      wg=wg)
        self.assertTrue(solution.gap['pass'])
        self.assertTrue(solution.gap['dominant'])
        for bound in solution.gap['bounds']:
            self.assertGreaterEqual(bound['lower_slack'], -1e-9)
            self.assertGreaterEqual(bound['upper_slack'], -1e-9)

    def test_pauli_identity(self):
        rs, wg = system('G', 2)
        solution = bethe_solver.solve(rs, Multiplicity(1.0, 2.0), [1, 1],
                                      wg=wg)
        self.assertLess(solution.pauli['hessian_deviation'], 1e-10)
        self.assertGreater(solution.pauli['min_eig_K'], 0)
        self.assertFalse(solution.pauli['excluded'])

    def test_singular_weight_is_excluded(self):
        rs, wg = system('A', 2)
        solution = bethe_solver.solve(rs, Multiplicity(1.0), [1, 0], wg=wg)
        self.assertFalse(solution.regular)
        self.assertTrue(solution.pauli['excluded'])
        self.assertLess(solution.bae_residual, 1e-9)

    def test_zero_weight(self):
        rs, wg = system('A', 2)
        solution = bethe_solver.solve(rs, Multiplicity(1.0), [0, 0], wg=wg)
        np.testing.assert_allclose(solution.mu_hat, 0.0)
        self.assertEqual(solution.iterations, 0)

    def test_non_dominant_weight_has_no_gap(self):
        rs, wg = system('A', 2)
        solution = bethe_solver.solve(rs, Multiplicity(1.0), [-1, 2], wg=wg)
        self.assertIsNone(solution.gap)
        self.assertLess(solution.bae_residual, 1e-9)

    def test_lieb_liniger(self):
        rs, wg = system('A', 2)
        solution = bethe_solver.solve(rs, Multiplicity(1.3), [2, 1], wg=wg)
        self.assertLess(solution.lieb_liniger_residual, 1e-10)
        self.assertAlmostEqual(sum(solution.quasi_momenta), 0.0)
        rs, wg = system('B', 2)
        other = bethe_solver.solve(rs, Multiplicity(1.0), [1, 1], wg=wg)
        self.assertIsNone(other.lieb_liniger_residual)
        self.assertNotIn('quasi_momenta', other.to_dict())

    def test_to_dict(self):
        rs, wg = system('A', 1)
        data = bethe_solver.solve(rs, Multiplicity(2.0), [1], wg=wg).to_dict()
        self.assertEqual(data['mu'], [1])
        self.assertEqual(data['system'], {'type': 'A', 'rank': 1})
        self.assertIn('pairings', data['mu_hat'])
        self.assertEqual(len(data['gap_bounds']), 1)

    def test_convergence_failure(self):
        rs, _ = system('A', 1)
        with self.assertRaises(ConvergenceException):
            bethe_solver.minimize(rs, Multiplicity(2.0),
                                  rs.fundamental_weights[0], max_iter=0)

    def test_zero_multiplicity_rejected(self):
        rs, _ = system('A', 2)
        with self.assertRaises(InvalidMultiplicityException):
            bethe_solver.solve(rs, Multiplicity.zero(), [1, 1])

    def test_too_large_weyl_group_skips_residual(self):
        rs, _ = system('A', 1)
        with mock.patch('bethe.bethe_solver.enumerate_weyl',
                        side_effect=bethe_solver.WeylGroupTooLargeException),\
                mock.patch('bethe.bethe_solver.print_warning') as mock_warn:
            solution = bethe_solver.solve(rs, Multiplicity(2.0), [1])
        self.assertIsNone(solution.bae_residual)
        self.assertTrue(mock_warn.called)


class CertificateTest(unittest.TestCase):

    def test_gap_needs_dominant_weight(self):
        rs, _ = system('A', 2)
        with self.assertRaises(InvalidWeightException):
            bethe_solver.gap_certificate(rs, Multiplicity(1.0),
                                         -rs.weyl_vector, rs.weyl_vector)

    def test_pauli_needs_imaginary_parameter(self):
        rs, _ = system('A', 2)
        with self.assertRaises(InvalidWeightException):
            bethe_solver.pauli_certificate(rs, Multiplicity(1.0),
                                           rs.weyl_vector)

    @mock.patch('bethe.bethe_solver.print_warning')
    def test_indeterminate_band(self, mock_warn):
        rs, _ = system('A', 1)
        lam = 1e-10 * 1j * rs.fundamental_weights[0]
        report = bethe_solver.pauli_certificate(rs, Multiplicity(1.0), lam)
        self.assertTrue(report['indeterminate'])
        self.assertFalse(report['regular'])
        self.assertEqual(mock_warn.call_args[1]['category'],
                         IndeterminateRegularityWarning)

    def test_bae_residual_detects_non_solutions(self):
        rs, wg = system('A', 1)
        k = Multiplicity(2.0)
        solution = bethe_solver.solve(rs, k, [1], wg=wg)
        shifted = solution.lam * 1.01
        self.assertGreater(bethe_solver.bae_residual(rs, wg, k, shifted),
                           1e-3)

    def test_sigma_bounds(self):
        rs, _ = system('B', 2)
        rng = np.random.default_rng(0)
        lams = [rng.uniform(0, 3, 2).dot(rs.fundamental_weights)
                for _ in range(20)]
        report = bethe_solver.sigma_bounds_check(
            rs, Multiplicity(0.5, 3.0), lams)
        self.assertTrue(report['pass'], report)

    def test_equivariance(self):
        rs, wg = system('B', 2)
        report = bethe_solver.equivariance_check(
            rs, wg, Multiplicity(0.5, 3.0), [1, 1])
        self.assertTrue(report['pass'], report)


class ImpenetrableLimitTest(unittest.TestCase):

    def test_distance_decreases(self):
        rs, _ = system('A', 2)
        study = bethe_solver.impenetrable_limit_study(
            rs, [1, 1], [1.0, 10.0, 100.0, 1e4])
        self.assertTrue(study['decreasing'])
        self.assertTrue(all(row['within_envelope'] for row in study['rows']))
        self.assertLess(study['rows'][-1]['distance'], 1e-2)

    def test_custom_multiplicity(self):
        rs, _ = system('B', 2)
        study = bethe_solver.impenetrable_limit_study(
            rs, [1, 1], [1.0, 100.0],
            multiplicity=lambda k: Multiplicity(k, 2 * k))
        self.assertEqual([row['k'] for row in study['rows']], [1.0, 100.0])

    def test_needs_dominant_weight(self):
        rs, _ = system('A', 2)
        with self.assertRaises(InvalidWeightException):
            bethe_solver.impenetrable_limit_study(rs, [-1, 0], [1.0])


@settings(max_examples=20, deadline=None)
@given(st.floats(0.05, 50.0), st.integers(1, 4))
def test_a1_pairing_property(k, m):
    rs, wg = system('A', 1)
    solution = bethe_solver.solve(rs, Multiplicity(k), [m], wg=wg)
    assert abs(solution.pairings[0] - a1_pairing(k, m)) < 1e-8
    assert solution.bae_residual < 1e-8


@pytest.mark.parametrize('cartan,k,weight', [
    (('A', 3), Multiplicity(1.0), [1, 1, 1]),
    (('B', 3), Multiplicity(0.5, 3.0), [2, 0, 1]),
    (('C', 3), Multiplicity(1.0, 0.25), [1, 2, 1]),
    (('D', 4), Multiplicity(2.0), [1, 1, 1, 1]),
])
def test_higher_rank_solutions(cartan, k, weight):
    rs, wg = system(*cartan)
    solution = bethe_solver.solve(rs, k, weight, wg=wg)
    assert solution.bae_residual < 1e-9
    assert solution.gap['pass']
