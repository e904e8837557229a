import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# One line per acceptance criterion, filled in by tests/test_acceptance.py.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: s.split()[1]):
            terminalreporter.write_line(line)
