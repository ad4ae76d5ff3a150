import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from todacx.chaincx import ChainComplex
from todacx.intlin import IntMatrix

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_complex(rng: random.Random, max_rank=2, length=3, entries=2, lo=None):
    """Random bounded complex with d d = 0 (rejection per differential)."""
    if lo is None:
        lo = rng.randint(-1, 1)
    ranks = {lo + t: rng.randint(0, max_rank) for t in range(length)}
    diffs = {}
    for n in range(lo + 1, lo + length):
        r0, r1 = ranks[n - 1], ranks[n]
        m = IntMatrix.zeros(r0, r1)
        for _ in range(60):
            cand = IntMatrix(r0, r1, [[rng.randint(-entries, entries) for _ in range(r1)] for _ in range(r0)])
            if n - 1 in diffs and not (diffs[n - 1] @ cand).is_zero():
                continue
            m = cand
            break
        diffs[n] = m
    return ChainComplex(ranks, diffs)


@st.composite
def complexes(draw, max_rank=2, length=3, entries=2):
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return random_complex(random.Random(seed), max_rank, length, entries)


@st.composite
def int_matrices(draw, max_rows=4, max_cols=4, lo=-6, hi=6):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    rows = draw(st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r))
    return IntMatrix(r, c, rows)


@pytest.fixture
def rng():
    return random.Random(20240611)


# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
