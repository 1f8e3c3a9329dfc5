"""Shared oracles and fixtures.

The oracles here avoid the package's own arithmetic: products are formed
with explicit double loops so that structured-matrix and encoding checks
are compared against an independent route.
"""

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile('default', max_examples=60, deadline=None)
settings.load_profile('default')


def conv_oracle(p, q):
    """Coefficient product by explicit double loop (highest degree first)."""
    p, q = np.asarray(p), np.asarray(q)
    out = np.zeros(p.size + q.size - 1, dtype=np.result_type(p, q))
    for i, pi in enumerate(p):
        for j, qj in enumerate(q):
            out[i + j] += pi * qj
    return out


def add_oracle(p, q):
    p, q = np.asarray(p), np.asarray(q)
    n = max(p.size, q.size)
    out = np.zeros(n, dtype=np.result_type(p, q))
    out[n - p.size:] += p
    out[n - q.size:] += q
    return out


def central_jacobian(fun, x, h=1e-6):
    x = np.asarray(x, dtype=float)
    cols = []
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        cols.append((fun(x + e) - fun(x - e)) / (2 * h))
    return np.column_stack(cols)


def random_coeffs(rng, size, complex_=False, lead_one=False):
    c = rng.uniform(-2, 2, size)
    if complex_:
        c = c + 1j * rng.uniform(-2, 2, size)
    if size == 0:
        return c
    if lead_one:
        c[0] = 1.0
    elif abs(c[0]) < 0.1:
        c[0] = 1.0
    return c


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


# filled by test_acceptance; printed as one block after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section('acceptance criteria')
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
