import math

import numpy as np
import pytest
from hypothesis import strategies as st

from dcgeom import PulseSequence

ACCEPTANCE_KEY = pytest.StashKey[list]()


def random_sequence(rng, max_segments=6, max_omega=2.0, max_duration=2 * math.pi):
    n = int(rng.integers(1, max_segments + 1))
    omegas = rng.uniform(-max_omega, max_omega, n)
    # sprinkle in free evolution so the omega = 0 branch is exercised
    omegas[rng.random(n) < 0.15] = 0.0
    durations = rng.uniform(0.05, max_duration, n)
    return PulseSequence.from_pairs(zip(omegas, durations), label="random")


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


@pytest.fixture
def random_sequences(rng):
    return [random_sequence(rng) for _ in range(24)]


segments = st.tuples(
    st.floats(-2.0, 2.0, allow_nan=False),
    st.floats(0.0, 2 * math.pi, allow_nan=False),
)
sequences = st.lists(segments, min_size=0, max_size=6).map(PulseSequence.from_pairs)


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line per acceptance criterion."""
    lines = request.config.stash.setdefault(ACCEPTANCE_KEY, [])

    def record(number, description, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        lines.append(f"[{status}] criterion {number:>2}: {description}" + (f" ({detail})" if detail else ""))
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
