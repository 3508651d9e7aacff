import mpmath
import pytest


@pytest.fixture(autouse=True)
def _reset_mpmath():
    prec = mpmath.mp.prec
    yield
    mpmath.mp.prec = prec


# one line per acceptance criterion, printed after the run
_ACCEPTANCE = {}


@pytest.fixture(scope="session")
def acceptance():
    def record(key, passed, detail):
        _ACCEPTANCE[key] = f"[PRIMARY] criterion {key}: {'PASS' if passed else 'FAIL'}  {detail}"
        print(_ACCEPTANCE[key])
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=lambda k: (int(k.split(".")[0]), k)):
        terminalreporter.write_line(_ACCEPTANCE[key])
