import pytest

from dropclique import kernels

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(params=["numba", "python"])
def dfs_backend(request, monkeypatch):
    """Run the chi search through the compiled kernel or its pure-Python body."""
    fn = kernels.chi_avoid_dfs
    if request.param == "python":
        monkeypatch.setattr(kernels, "chi_avoid_dfs", getattr(fn, "py_func", fn))
    return request.param


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
