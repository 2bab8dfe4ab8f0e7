import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    derandomize=True,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_domain_points(rng, n, y_max=3.0):
    """Uniform samples of the half-fundamental domain truncated at ``y_max``."""
    out = []
    while len(out) < n:
        x = rng.uniform(0.0, 0.5)
        y = rng.uniform(np.sqrt(3) / 2, y_max)
        if x * x + y * y >= 1.0:
            out.append((x, y))
    return out


# one line per acceptance criterion, printed at the end of the session
ACCEPTANCE_LINES = {}


def record(number, ok, detail):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])


_ADAPTIVE = {}


@pytest.fixture(scope="session")
def adaptive_report():
    """Default-config adaptive runs, computed once per pair per session."""
    from ljcert.certify import AdaptiveConfig, certify_adaptive
    from ljcert.energy import ExponentPair

    def get(alpha, beta):
        key = (alpha, beta)
        if key not in _ADAPTIVE:
            _ADAPTIVE[key] = certify_adaptive(ExponentPair(alpha, beta), AdaptiveConfig(workers=1))
        return _ADAPTIVE[key]

    return get
