import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

# criterion number -> (status, detail); filled by test_acceptance.py
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def small_corpus():
    from nctower.verify import build_corpus

    return build_corpus("small")


@pytest.fixture(scope="session")
def small_limits(small_corpus):
    """name -> LimitResult (or the CapacityError raised) for every small-corpus instance."""
    from nctower import CapacityError, inverse_limit

    out = {}
    for inst in small_corpus:
        try:
            out[inst.name] = inverse_limit(inst.phi)
        except CapacityError as exc:
            out[inst.name] = exc
    return out


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        status, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {status}  {detail}")
