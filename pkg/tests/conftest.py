import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import report  # noqa: E402


def pytest_terminal_summary(terminalreporter):
    if report.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in report.RESULTS:
            terminalreporter.write_line(line)
