from __future__ import absolute_import
import csv
import io
import unittest

import numpy as np
from click.testing import CliRunner

from bethe import eval as eval_command
from bethe.bethe_solver import solve
from bethe.eigenfunctions import phi_eval
from bethe.exceptions import BadParameterException, PauliExcludedException
from bethe.root_systems import Multiplicity

from .utils import AssertInvokeRaisesMixin, system


A1_ARGS = ['--type', 'A', '--rank', '1', '--k-long', '2', '--weight', '1']
A2_SINGULAR = ['--type', 'A', '--rank', '2', '--k-long', '1',
               '--weight', '1,0']


def _parse(output):
    lines = output.splitlines()
    comments = [line[2:] for line in lines if line.startswith('# ')]
    rows = list(csv.reader(io.StringIO(
        '\n'.join(line for line in lines if not line.startswith('#')))))
    return comments, rows[0], rows[1:]


class EvalTest(AssertInvokeRaisesMixin, unittest.TestCase):

    def setUp(self):
        self.runner = CliRunner(mix_stderr=False)

    def test_a1_grid(self):
        result = self.runner.invoke(eval_command.cli,
                                    A1_ARGS + ['--grid', '-1:1:5'])
        self.assertEqual(result.exit_code, 0, result.stderr)
        comments, header, rows = _parse(result.output)
        self.assertEqual(header, ['x1', 're_phi', 'im_phi'])
        self.assertEqual(len(rows), 5)
        self.assertEqual([c.split(' = ')[0] for c in comments],
                         ['lambda', 'energy', 'k_long', 'mode'])
        values = [complex(float(r[1]), float(r[2])) for r in rows]
        # φ(0) = 1 and φ is even
        self.assertAlmostEqual(values[2], 1.0)
        self.assertAlmostEqual(values[0], values[4])
        self.assertAlmostEqual(values[1], values[3])

    def test_grid_from_config(self):
        with self.runner.isolated_filesystem():
            with open('job.yml', 'w') as f:
                f.write('grid: "0:0.5:2,0:0.5:3"\n')
            result = self.runner.invoke(
                eval_command.cli,
                ['-c', 'job.yml', '--type', 'B', '--rank', '2', '--k-long',
                 '0.5', '--k-short', '3', '--weight', '1,1'])
        self.assertEqual(result.exit_code, 0, result.stderr)
        _, header, rows = _parse(result.output)
        self.assertEqual(header, ['x1', 'x2', 're_phi', 'im_phi'])
        self.assertEqual(len(rows), 6)

    def test_grid_required(self):
        self.assertInvokeRaises(BadParameterException, eval_command.cli,
                                A1_ARGS)

    def test_grid_rank_mismatch(self):
        result = self.runner.invoke(eval_command.cli,
                                    A1_ARGS + ['--grid', '0:1:2,0:1:2'])
        self.assertEqual(result.exit_code, 1)

    def test_singular_weight(self):
        self.assertInvokeRaises(PauliExcludedException, eval_command.cli,
                                A2_SINGULAR + ['--grid', '0:1:2,0:1:2'])
        result = self.runner.invoke(eval_command.cli,
                                    A2_SINGULAR + ['--grid', '0:1:2,0:1:2'])
        self.assertEqual(result.exit_code, 2)
        self.assertEqual(result.output, '')

    def test_free_mode_ignores_singularity(self):
        result = self.runner.invoke(
            eval_command.cli,
            A2_SINGULAR + ['--grid', '0:1:2,0:1:2', '--mode', 'free'])
        self.assertEqual(result.exit_code, 0, result.stderr)
        comments, _, rows = _parse(result.output)
        self.assertIn('mode = free', comments)
        self.assertAlmostEqual(float(rows[0][-2]), 1.0)

    def test_unknown_mode(self):
        result = self.runner.invoke(eval_command.cli,
                                    A1_ARGS + ['--grid', '0:1:2',
                                               '--mode', 'bosonic'])
        self.assertEqual(result.exit_code, 2)


class EvalGridTest(unittest.TestCase):

    def setUp(self):
        self.runner = CliRunner(mix_stderr=False)

    def _values(self, grid):
        result = self.runner.invoke(eval_command.cli,
                                    A1_ARGS + ['--grid', grid])
        self.assertEqual(result.exit_code, 0, result.stderr)
        _, _, rows = _parse(result.output)
        return [complex(float(r[-2]), float(r[-1])) for r in rows]

    def test_single_point_at_origin(self):
        self.assertEqual(len(self._values('0:5:1')), 1)
        self.assertAlmostEqual(self._values('0:5:1')[0], 1.0)

    def test_matches_library(self):
        rs, wg = system('A', 1)
        k = Multiplicity(2.0)
        lam = solve(rs, k, [1], wg=wg).lam
        values = self._values('-1:1:11')
        for x, value in zip(np.linspace(-1, 1, 11), values):
            self.assertAlmostEqual(
                value, phi_eval(rs, wg, k, lam, np.array([x])), places=12)

    def test_coroot_translation(self):
        rs, _ = system('A', 1)
        shift = rs.coroots[rs.simple_roots[0]][0]
        shifted = self._values('%.17g:%.17g:11' % (shift - 1, shift + 1))
        for a, b in zip(self._values('-1:1:11'), shifted):
            self.assertAlmostEqual(a, b, places=9)
