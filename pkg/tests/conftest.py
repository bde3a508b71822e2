from __future__ import annotations

import os

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.register_profile("thorough", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_ACCEPTANCE_KEY = pytest.StashKey[dict]()


@pytest.fixture(scope="session")
def acceptance_log(request) -> dict:
    """Criterion number -> (title, passed, summary line), filled by the acceptance tests."""
    return request.config.stash.setdefault(_ACCEPTANCE_KEY, {})


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(_ACCEPTANCE_KEY, {})
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(log):
        title, passed, summary = log[num]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {num:>2}. {title}: {summary}")
