import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # acceptance verdict lines would otherwise drown in captured output
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "_LINES", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.line(line)
