import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from boxdim import _accel  # noqa: E402

BACKENDS = ["numpy"] + (["numba"] if _accel.HAVE_NUMBA else [])

ACCEPTANCE = {}


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def criterion(request):
    """Record a pass/fail line for an acceptance criterion.

    Usage: ``criterion("3", "exact equivalence", ok, detail)``; the summary
    is printed at the end of the run.
    """

    def record(number, title, ok, detail=""):
        ACCEPTANCE.setdefault(number, []).append((title, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE, key=lambda k: (len(k), k)):
        for title, ok, detail in ACCEPTANCE[number]:
            mark = "PASS" if ok else "FAIL"
            line = f"[{mark}] criterion {number}: {title}"
            terminalreporter.write_line(f"{line} ({detail})" if detail else line)
