import sys

import pytest
from hypothesis import HealthCheck, settings

from biprops.configs import Caps
from biprops.envelope import EnvelopeBiprop
from biprops.multicat import finite_set_multicat

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SMALL = Caps(max_word=2, max_index=2, max_hom=4)
TINY = Caps(max_word=2, max_index=2, max_hom=2)


@pytest.fixture(scope="session")
def fs2():
    return finite_set_multicat({"X": 2}, max_arity=3)


@pytest.fixture(scope="session")
def twisted():
    return finite_set_multicat({"X": 2}, max_arity=3, grading=3, twist="graph", name="twisted")


@pytest.fixture(scope="session")
def graded():
    return finite_set_multicat({"X": 2}, max_arity=3, grading=3, name="graded")


@pytest.fixture(scope="session")
def env_fs2(fs2):
    return EnvelopeBiprop(fs2)


@pytest.fixture(scope="session")
def env_twisted(twisted):
    return EnvelopeBiprop(twisted)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in mod.LINES:
            terminalreporter.write_line(line)
