import pytest

from vrsdr_score import _align_py

try:
    from vrsdr_score import _align_ext
except ImportError:  # extension not built
    _align_ext = None

KERNELS = [pytest.param(_align_py, id="python")]
if _align_ext is not None:
    KERNELS.append(pytest.param(_align_ext, id="cython"))


@pytest.fixture(params=KERNELS)
def kernel(request):
    return request.param


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
