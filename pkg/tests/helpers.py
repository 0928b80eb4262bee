"""Hypothesis strategies and shared state for the test suite."""

import numpy as np
from hypothesis import strategies as st


def complex_arrays(n, elements=st.floats(-1, 1, allow_nan=False, allow_infinity=False)):
    """Strategy for length-n complex vectors with bounded parts."""
    return st.lists(st.tuples(elements, elements), min_size=n, max_size=n).map(
        lambda pairs: np.array([complex(a, b) for a, b in pairs])
    )


def unit_vectors(n):
    return complex_arrays(n).filter(lambda v: np.linalg.norm(v) > 1e-3).map(lambda v: v / np.linalg.norm(v))


def hermitian_matrices(n):
    def build(v):
        m = v.reshape(n, n)
        return (m + m.conj().T) / 2

    return complex_arrays(n * n).map(build)


def density_matrices(n, rank=None):
    """Random n x n density matrices from a Gram construction."""
    k = rank or n

    def build(v):
        g = v.reshape(n, k)
        m = g @ g.conj().T
        return m / np.trace(m).real

    return complex_arrays(n * k).filter(lambda v: np.linalg.norm(v) > 1e-2).map(build)


# acceptance lines collected by test_acceptance.py
ACCEPTANCE_LINES = []
