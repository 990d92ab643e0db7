"""Shared fixtures and hypothesis strategies."""

from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ldpckw.code import ClassicalCode
from ldpckw.corpus import random_corpus
from ldpckw.f2 import BinaryMatrix

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def binary_matrices(draw, max_rows=6, max_cols=6, min_rows=0, min_cols=0):
    rows = draw(st.integers(min_rows, max_rows))
    cols = draw(st.integers(min_cols, max_cols))
    bits = draw(st.lists(st.integers(0, 1), min_size=rows * cols, max_size=rows * cols))
    return BinaryMatrix(np.array(bits, dtype=np.uint8).reshape(rows, cols))


@st.composite
def codes(draw, max_n=5, max_m=5):
    return ClassicalCode(draw(binary_matrices(max_m, max_n, min_rows=1, min_cols=1)))


def brute_kernel(M: BinaryMatrix) -> set[tuple[int, ...]]:
    """All solutions of ``M v = 0`` by enumeration."""
    out = set()
    for v in itertools.product((0, 1), repeat=M.cols):
        if not np.any(M @ np.array(v, dtype=np.uint8)):
            out.add(v)
    return out


def span(vectors, length) -> set[tuple[int, ...]]:
    vecs = [np.asarray(v, dtype=np.uint8) for v in vectors]
    out = set()
    for coeffs in itertools.product((0, 1), repeat=len(vecs)):
        acc = np.zeros(length, dtype=np.uint8)
        for c, v in zip(coeffs, vecs):
            if c:
                acc ^= v
        out.add(tuple(int(b) for b in acc))
    return out


@pytest.fixture(scope="session")
def corpus():
    return random_corpus()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
