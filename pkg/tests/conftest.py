import sys
from functools import lru_cache

import pytest

from frobcount.census import contexts, oracle_census
from frobcount.cyclofactor import factor_xd_minus_1
from frobcount.modstruct import build_module_context
from frobcount.tame import make_extension

CONFIGS = [(3, 1, 2), (2, 1, 3), (5, 1, 2)]


@lru_cache(maxsize=None)
def ctx_for(p, r, label, val_bound=6):
    L = make_extension(p, r, label)
    return build_module_context(L, factor_xd_minus_1(p, L.d), val_bound)


@lru_cache(maxsize=None)
def all_ctxs(p, r, d, val_bound=6):
    return contexts(p, r, d, val_bound)


@lru_cache(maxsize=None)
def oracle(p, r, d, val_bound):
    return oracle_census(p, r, d, val_bound)


@pytest.fixture
def s3_ctx():
    """L = F_3((sqrt t)): the S_3 / C_6 setting."""
    return ctx_for(3, 1, (2, 1, 0))


@pytest.fixture
def a4_ctx():
    """L = F_8((t)) over F_2((t)): the A_4 setting."""
    return ctx_for(2, 1, (1, 3, 0))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "SUMMARY", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for num in sorted(lines):
            terminalreporter.write_line(lines[num])
