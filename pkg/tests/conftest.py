import importlib

import pytest

from jetsym import _pykernels

try:
    _cy = importlib.import_module("jetsym._kernels")
except ImportError:  # extension not built
    _cy = None

BACKENDS = [_pykernels] + ([_cy] if _cy is not None else [])


@pytest.fixture(params=BACKENDS, ids=lambda m: m.BACKEND)
def kern(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    from acceptance_support import RESULTS
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        passed, label = RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if passed else 'FAIL'}  {label}")
