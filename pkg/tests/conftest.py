import pytest

from zdkit.boxkite import build_box_kite


@pytest.fixture
def sedenion_kite():
    """The s=1 sedenion box-kite with zigzag (3, 6, 5)."""
    return build_box_kite(1, (3, 6, 5), 4)


ACCEPTANCE = []  # (k, ok, text) in run order


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k, ok, text in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {k}: {text}")
