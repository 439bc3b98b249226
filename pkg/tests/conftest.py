def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: full-window acceptance criteria (slow)")


def pytest_terminal_summary(terminalreporter):
    lines = []
    for status in ("passed", "failed"):
        for rep in terminalreporter.stats.get(status, []):
            if rep.when == "call" and "test_criterion_" in rep.nodeid:
                name = rep.nodeid.split("::")[-1]
                lines.append(f"{'PASS' if status == 'passed' else 'FAIL'}  {name}")
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: s.split()[1]):
            terminalreporter.write_line(line)
