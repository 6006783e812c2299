import sys


def _acceptance_lines():
    for name, mod in list(sys.modules.items()):
        if name.rsplit(".", 1)[-1] == "test_acceptance" and hasattr(mod, "RESULTS"):
            return [mod.RESULTS[k] for k in sorted(mod.RESULTS)]
    return []


def pytest_terminal_summary(terminalreporter):
    lines = _acceptance_lines()
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
