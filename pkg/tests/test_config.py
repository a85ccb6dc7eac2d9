from __future__ import absolute_import
import json
import os
import shutil
import tempfile
import textwrap
import unittest

import mock

from bethe.config import (DEFAULT_VERIFY_SYSTEMS, JobConfig,
                          config_from_options, load_job_config, parse_weight)
from bethe.exceptions import (BadConfigException, BadParameterException,
                              ConfigParseException)
from bethe.utils import DEFAULT_SEED


VALID_YAML_CFG = """
    system:
        type: b
        rank: 2
    multiplicity:
        long: 0.5
        short: 3
    weight: [1, 2]
    solver:
        tol: 1e-10
        max_iter: 50
    grid: "-1:1:5,-1:1:5"
    sweep:
        k: [0.5, 1, 2]
        weights: "0:2"
    verify:
        systems:
          - type: A
            rank: 1
            multiplicity: {long: 2}
        samples: 4
        seed: 7
"""

GLOBAL_YAML_CFG = """
    multiplicity:
        long: 1
    solver:
        max_iter: 25
"""


class JobConfigTest(unittest.TestCase):

    def setUp(self):
        self.conf = JobConfig()
        self.conf.load(textwrap.dedent(VALID_YAML_CFG))

    def test_init_sets_default(self):
        conf = JobConfig()
        self.assertIsNone(conf.cartan_type)
        self.assertEqual(conf.tol, 1e-12)
        self.assertEqual(conf.max_iter, 100)
        self.assertEqual(conf.seed, DEFAULT_SEED)
        self.assertEqual(conf.verify_systems,
                         [dict(s) for s in DEFAULT_VERIFY_SYSTEMS])

    def test_load(self):
        self.assertEqual(self.conf.cartan_type, 'b')
        self.assertEqual(self.conf.rank, 2)
        self.assertEqual(self.conf.k_long, 0.5)
        self.assertEqual(self.conf.k_short, 3)
        self.assertEqual(self.conf.weight, [1, 2])
        self.assertEqual(self.conf.max_iter, 50)
        self.assertEqual(self.conf.grid, '-1:1:5,-1:1:5')
        self.assertEqual(self.conf.sweep_k, [0.5, 1, 2])
        self.assertEqual(self.conf.sweep_weights, '0:2')
        self.assertEqual(len(self.conf.verify_systems), 1)
        self.assertEqual(self.conf.verify_samples, 4)
        self.assertEqual(self.conf.seed, 7)

    def test_load_partial(self):
        conf = JobConfig()
        conf.load("weight: [3]")
        self.assertEqual(conf.weight, [3])
        self.assertIsNone(conf.cartan_type)
        self.assertEqual(conf.max_iter, 100)

    def test_load_empty(self):
        conf = JobConfig()
        conf.load("")
        self.assertIsNone(conf.weight)

    def test_load_json(self):
        conf = JobConfig()
        conf.load('{"system": {"type": "G", "rank": 2}, "seed": 3}')
        self.assertEqual(conf.cartan_type, 'G')
        self.assertEqual(conf.seed, 3)

    def test_load_malformed(self):
        conf = JobConfig()
        with self.assertRaises(ConfigParseException):
            conf.load("system: {type: A")
        with self.assertRaises(ConfigParseException):
            conf.load("- just\n- a list")

    def test_load_unknown_section(self):
        conf = JobConfig()
        with self.assertRaises(BadConfigException) as cm:
            conf.load("systems: {}\nprojects: 1")
        self.assertIn('projects, systems', cm.exception.message)

    def test_load_file(self):
        tmpdir = tempfile.mkdtemp()
        tmpfilepath = os.path.join(tmpdir, 'job.yml')
        with open(tmpfilepath, 'w') as f:
            f.write(textwrap.dedent(VALID_YAML_CFG))
        conf = JobConfig()
        conf.load_file(tmpfilepath)
        self.assertEqual(conf.weight, [1, 2])
        with open(tmpfilepath, 'w') as f:
            f.write("system: [")
        with self.assertRaises(ConfigParseException) as cm:
            conf.load_file(tmpfilepath)
        self.assertIn(tmpfilepath, cm.exception.message)
        shutil.rmtree(tmpdir)

    def test_update(self):
        self.conf.update(rank=3, weight=None, seed=11)
        self.assertEqual(self.conf.rank, 3)
        self.assertEqual(self.conf.weight, [1, 2])
        self.assertEqual(self.conf.seed, 11)
        with self.assertRaises(AttributeError):
            self.conf.update(apikey='abc')

    def test_validate(self):
        conf = self.conf.validate()
        self.assertIs(conf, self.conf)
        self.assertEqual(conf.cartan_type, 'B')
        # PyYAML reads 1e-10 as a string
        self.assertEqual(conf.tol, 1e-10)
        self.assertEqual(conf.root_system().name, 'B2')
        self.assertEqual(conf.multiplicity().values,
                         {'long': 0.5, 'short': 3.0})

    def test_validate_missing_system(self):
        self.conf.rank = None
        with self.assertRaises(BadConfigException):
            self.conf.validate()

    def test_validate_invalid_system(self):
        self.conf.cartan_type = 'Q'
        with self.assertRaises(BadConfigException):
            self.conf.validate()

    def test_validate_multiplicity(self):
        self.conf.k_short = 0
        with self.assertRaises(BadConfigException):
            self.conf.validate()
        self.conf.validate(allow_zero_multiplicity=True)
        self.conf.k_long = None
        with self.assertRaises(BadConfigException):
            self.conf.validate()
        self.conf.k_long = 'heavy'
        with self.assertRaises(BadConfigException):
            self.conf.validate()

    def test_validate_weight(self):
        for weight in (None, [1], [1, 2.5], [True, 1], '1,2'):
            self.conf.weight = weight
            with self.assertRaises(BadConfigException):
                self.conf.validate()
        self.conf.weight = None
        self.conf.validate(require_weight=False)

    def test_validate_solver(self):
        self.conf.tol = 'small'
        with self.assertRaises(BadConfigException):
            self.conf.validate()
        self.conf.tol = 1e-8
        self.conf.max_iter = 0
        with self.assertRaises(BadConfigException):
            self.conf.validate()

    def test_to_dict(self):
        data = self.conf.to_dict()
        self.assertEqual(data['system'], {'type': 'b', 'rank': 2})
        self.assertEqual(data['solver']['max_iter'], 50)
        self.assertEqual(data['verify']['samples'], 4)
        conf = JobConfig()
        conf.load(json.dumps(data))
        self.assertEqual(conf.to_dict(), data)


class LoadJobConfigTest(unittest.TestCase):

    def setUp(self):
        self.tmpdir = tempfile.mkdtemp()
        self.globalpath = os.path.join(self.tmpdir, '.bethe.yml')
        self.localpath = os.path.join(self.tmpdir, 'job.yml')
        with open(self.globalpath, 'w') as f:
            f.write(textwrap.dedent(GLOBAL_YAML_CFG))
        with open(self.localpath, 'w') as f:
            f.write(textwrap.dedent(VALID_YAML_CFG))
        patcher = mock.patch('bethe.config.GLOBAL_BETHE_YML_PATH',
                             new=self.globalpath)
        self.addCleanup(patcher.stop)
        patcher.start()

    def tearDown(self):
        shutil.rmtree(self.tmpdir)

    def test_global_only(self):
        conf = load_job_config()
        self.assertEqual(conf.k_long, 1)
        self.assertEqual(conf.max_iter, 25)

    def test_job_file_overrides_global(self):
        conf = load_job_config(self.localpath)
        self.assertEqual(conf.k_long, 0.5)
        self.assertEqual(conf.max_iter, 50)

    def test_overrides_win(self):
        conf = load_job_config(self.localpath, {'k_long': 4.0,
                                                'max_iter': None})
        self.assertEqual(conf.k_long, 4.0)
        self.assertEqual(conf.max_iter, 50)

    def test_skip_global(self):
        conf = load_job_config(load_global=False)
        self.assertIsNone(conf.k_long)
        self.assertEqual(conf.max_iter, 100)

    def test_no_global_file(self):
        os.remove(self.globalpath)
        conf = load_job_config()
        self.assertIsNone(conf.k_long)

    def test_config_from_options(self):
        conf = config_from_options(config_path=self.localpath, rank=3,
                                   cartan_type='A', weight='1,0,1',
                                   verify_samples=2)
        self.assertEqual((conf.cartan_type, conf.rank), ('A', 3))
        self.assertEqual(conf.weight, [1, 0, 1])
        self.assertEqual(conf.verify_samples, 2)
        self.assertEqual(conf.k_short, 3)


class ParseWeightTest(unittest.TestCase):

    def test_parse(self):
        self.assertEqual(parse_weight('1, 0,-2'), [1, 0, -2])
        self.assertIsNone(parse_weight(None))

    def test_invalid(self):
        for value in ('1,a', '1.5', ''):
            with self.assertRaises(BadParameterException):
                parse_weight(value)
