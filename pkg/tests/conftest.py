import functools

import pytest
from hypothesis import settings

from moufang.catalog import BUILTIN_NAMES, builtin, g16_gamma2c1
from moufang.chein import AntiAutomorphismData, mg2, mg_theta_h
from moufang.loop import center

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def small_groups():
    """Builtin groups of order at most 16, by name."""
    out = {}
    for name in BUILTIN_NAMES:
        G = builtin(name)
        if G.order <= 16 and G.is_associative:
            out[name] = G
    return out


@functools.lru_cache(maxsize=None)
def small_loops():
    """Groups and Moufang loops of order at most 16, by name."""
    out = dict(small_groups())
    out["o16"] = builtin("o16")
    for name, G in small_groups().items():
        if 2 * G.order <= 16:
            out[f"mg2:{name}"] = mg2(G).table
            for h in sorted(center(G)):
                if h and G.table[h, h] == 0:
                    d = AntiAutomorphismData.inversion(G, h)
                    out[f"mgth:{name}:{h}"] = mg_theta_h(d)
    return out


@pytest.fixture(scope="session")
def groups():
    return small_groups()


@pytest.fixture(scope="session")
def loops():
    return small_loops()


@pytest.fixture(scope="session")
def d8():
    return builtin("d8")


@pytest.fixture(scope="session")
def q8():
    return builtin("q8")


@pytest.fixture(scope="session")
def mg2_d8():
    return mg2(builtin("d8")).table


@pytest.fixture(scope="session")
def gamma16():
    return g16_gamma2c1()


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line[1])
