import sys

import pytest
from hypothesis import HealthCheck, settings

from nfgcodes import Polynomial
from nfgcodes.convcode import section_from_polynomials

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def hx(coeffs: dict[int, int], p: int = 2, name: str = "x") -> Polynomial:
    """Univariate polynomial from {exponent: coefficient}."""
    top = max(coeffs, default=0)
    return Polynomial.univariate(p, name, [coeffs.get(i, 0) for i in range(top + 1)])


def poly_matrix(rows, p: int = 2):
    return tuple(tuple(hx(e, p) if isinstance(e, dict) else Polynomial.const(p, e) for e in r) for r in rows)


# rate-1/2 four-state code generated by (1 + D^2, 1 + D + D^2)
@pytest.fixture(scope="session")
def ex3():
    return section_from_polynomials(2, [[[1, 0, 1], [1, 1, 1]]])


# rate-2/3 ternary code with g1 = (1 + D^2, 2 + D, 0), g2 = (1, 0, 2)
@pytest.fixture(scope="session")
def ex4():
    return section_from_polynomials(3, [[[1, 0, 1], [2, 1], [0]], [[1], [0], [2]]])


@pytest.fixture(scope="session")
def sm_pair():
    """The two rate-1/3 codes generated by (1, 1 + D, D) and (D, D, 1 + D)."""
    c1 = section_from_polynomials(2, [[[1], [1, 1], [0, 1]]])
    c2 = section_from_polynomials(2, [[[0, 1], [0, 1], [1, 1]]])
    return c1, c2


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.line(n))
