import os

import pytest

from bethe.utils import make_rng


@pytest.fixture
def tempdir(tmpdir):
    cwd = os.getcwd()
    os.chdir(str(tmpdir))
    yield tmpdir
    os.chdir(cwd)


@pytest.fixture
def rng():
    return make_rng(1234)


@pytest.fixture(autouse=True)
def no_global_config(tmpdir, monkeypatch):
    monkeypatch.setattr('bethe.config.GLOBAL_BETHE_YML_PATH',
                        str(tmpdir.join('missing.yml')))
