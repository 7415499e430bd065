import re

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)


_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion, regardless of capture."""
    outcomes = {}
    for key, label in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL"),
                       ("skipped", "SKIP")):
        for rep in terminalreporter.stats.get(key, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::" not in nodeid:
                continue
            m = _CRITERION.search(nodeid)
            if not m:
                continue
            num = int(m.group(1))
            prior = outcomes.get(num)
            if prior is None or label == "FAIL":
                outcomes[num] = (label, m.group(2).replace("_", " "))
    if not outcomes:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num in sorted(outcomes):
        label, name = outcomes[num]
        terminalreporter.write_line(f"ACCEPTANCE {num} ({name}): {label}")
