import os

import pytest
from hypothesis import HealthCheck, settings

from homspace.weyl import LieType, cache_path, default_cache_dir

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# criterion number -> list of (part, passed, note); filled by the acceptance tests
ACCEPTANCE = {}


def pytest_addoption(parser):
    parser.addoption("--runlong", action="store_true", help="run tests that may enumerate E8")


def e8_available(config) -> bool:
    """E8 runs when asked for, or when its histogram is already cached."""
    if config.getoption("--runlong") or os.environ.get("HOMSPACE_RUN_LONG") == "1":
        return True
    return cache_path(LieType("E", 8), default_cache_dir()).exists()


@pytest.fixture
def need_e8(request):
    if not e8_available(request.config):
        pytest.skip("E8 histogram not cached; use --runlong to enumerate 696,729,600 elements")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[n]
        ok = all(p for _, p, _ in parts)
        tr.write_line(f"criterion {n:2}: {'PASS' if ok else 'FAIL'}")
        for part, passed, note in parts:
            mark = "ok  " if passed else "FAIL"
            tr.write_line(f"      {mark} {part}" + (f": {note}" if note else ""))
