"""Seeded random code corpus used by the verification suite and scripts."""

from __future__ import annotations

import numpy as np

from .code import ClassicalCode, random_code

CORPUS_SEED = 20260418


def random_corpus(size: int = 50, seed: int = CORPUS_SEED, n_range=(1, 6), m_range=(1, 6)) -> list[ClassicalCode]:
    rng = np.random.default_rng(seed)
    codes = []
    for idx in range(size):
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        m = int(rng.integers(m_range[0], m_range[1] + 1))
        code = random_code(rng, n, m)
        codes.append(ClassicalCode(code.H, f"rand{idx:02d}"))
    return codes


def random_full_rank_square(count: int = 20, seed: int = CORPUS_SEED + 1, max_n: int = 6) -> list[ClassicalCode]:
    """Square parity-check matrices of full GF(2) rank, by rejection sampling."""
    from . import f2

    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(1, max_n + 1))
        code = random_code(rng, n, n)
        if f2.rank(code.H) == n:
            out.append(ClassicalCode(code.H, f"sq{len(out):02d}"))
    return out
