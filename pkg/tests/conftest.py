import json
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@pytest.fixture(scope="session")
def frozen():
    return json.loads((Path(__file__).parent / "data" / "frozen.json").read_text())


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion, in order, after the usual summary."""
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(lines, key=lambda k: (int(str(k).rstrip("b")), str(k))):
        passed, name, detail = lines[key]
        tag = "INFO" if str(key).endswith("b") else ("PASS" if passed else "FAIL")
        terminalreporter.write_line(f"{tag}  [{key}] {name}: {detail}")
