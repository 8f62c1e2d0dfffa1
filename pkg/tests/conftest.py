def pytest_terminal_summary(terminalreporter):
    """Echo the acceptance verdict lines past output capture."""
    try:
        from test_acceptance import VERDICT_LOG
    except ImportError:
        return
    if VERDICT_LOG:
        terminalreporter.section("acceptance criteria")
        for line in VERDICT_LOG:
            terminalreporter.write_line(line)
