# -*- coding: utf-8 -*-
from __future__ import absolute_import
import functools
import math

import mock
from click.testing import CliRunner
from scipy.optimize import brentq

from bethe import config
from bethe.root_systems import build_root_system, enumerate_weyl


class AssertInvokeRaisesMixin(object):
    def assertInvokeRaises(self, exc, *args, **kwargs):
        """
        Invoke self.runner (or a new runner if nonexistent) with given *args
        and **kwargs, assert that it raised an exception of type exc, and
        return the runner's result.
        """
        runner = getattr(self, 'runner', None) or CliRunner()
        kwargs['standalone_mode'] = False
        result = runner.invoke(*args, **kwargs)
        self.assertIsInstance(result.exception, exc)
        return result


@functools.lru_cache(maxsize=None)
def system(cartan_type, rank):
    """Cached (root system, Weyl group) pair."""
    rs = build_root_system(cartan_type, rank)
    return rs, enumerate_weyl(rs)


def a1_pairing(k, m=1):
    """Root of t + 4·arctan(t/k) = 2πm, the A1 Bethe equation for μ = mω."""
    return brentq(lambda t: t + 4 * math.atan(t / k) - 2 * math.pi * m,
                  0.0, 2 * math.pi * m, xtol=1e-15)


def mock_conf(testcase, conf=None, **values):
    """Patch load_job_config to return a prepared JobConfig."""
    if not conf:
        conf = config.JobConfig()
        conf.cartan_type = 'A'
        conf.rank = 1
        conf.k_long = 2.0
        conf.weight = [1]
    for name, value in values.items():
        setattr(conf, name, value)
    patcher = mock.patch('bethe.config.load_job_config', return_value=conf,
                         autospec=True)
    patcher.start()
    testcase.addCleanup(patcher.stop)
    return conf
