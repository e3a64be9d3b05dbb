import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from augtor.poly import LaurentPoly

settings.register_profile(
    "augtor", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "augtor"))


def laurent(max_deg=6, max_coeff=9, min_exp=0, max_min_exp=0, nonzero=True, min_deg=0):
    """Strategy for Laurent polynomials with bounded span and coefficients."""

    @st.composite
    def build(draw):
        n = draw(st.integers(min_deg, max_deg))
        coeffs = draw(st.lists(st.integers(-max_coeff, max_coeff), min_size=n + 1, max_size=n + 1))
        if nonzero:
            if coeffs[0] == 0:
                coeffs[0] = draw(st.sampled_from([c for c in range(-max_coeff, max_coeff + 1) if c]))
            if coeffs[-1] == 0:
                coeffs[-1] = draw(st.sampled_from([c for c in range(-max_coeff, max_coeff + 1) if c]))
        k = draw(st.integers(min_exp, max_min_exp))
        return LaurentPoly(tuple(coeffs), k)

    return build()


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
