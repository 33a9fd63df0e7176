ACCEPTANCE_LINES: dict[str, str] = {}


def record_criterion(number: int, title: str, passed: bool, detail: str = "") -> str:
    line = f"criterion {number:2d} {'PASS' if passed else 'FAIL'}: {title}"
    if detail:
        line += f" ({detail})"
    ACCEPTANCE_LINES[f"{number:02d}"] = line
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
