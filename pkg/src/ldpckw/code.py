"""
Classical LDPC codes: Tanner-graph queries, dualities and product constructions.

Product codes index bit ``(i, j)`` (``i`` from the first code, ``j`` from the
second) by column ``j * n1 + i``: the first code's index runs fastest.  The same
convention extends to ``p`` codes in :func:`pq_product`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from . import f2
from .f2 import BinaryMatrix


@dataclass(frozen=True, eq=False)
class ClassicalCode:
    """A classical code given by an ``m x n`` parity-check matrix (checks x bits)."""

    H: BinaryMatrix
    name: str = field(default="", compare=False)

    @classmethod
    def from_matrix(cls, H, name: str = "") -> "ClassicalCode":
        if not isinstance(H, BinaryMatrix):
            arr = np.asarray(H, dtype=np.uint8)
            H = BinaryMatrix(arr if arr.ndim == 2 else arr.reshape(0, 0))
        return cls(H, name)

    @property
    def n(self) -> int:
        return self.H.cols

    @property
    def m(self) -> int:
        return self.H.rows

    @cached_property
    def rank(self) -> int:
        return f2.rank(self.H)

    @cached_property
    def symmetry_basis(self) -> tuple[np.ndarray, ...]:
        return tuple(f2.kernel_basis(self.H))

    @cached_property
    def redundancy_basis(self) -> tuple[np.ndarray, ...]:
        return tuple(f2.kernel_basis(self.H.T))

    @property
    def k(self) -> int:
        return len(self.symmetry_basis)

    @property
    def k_T(self) -> int:
        return len(self.redundancy_basis)

    def check_support(self, a: int) -> list[int]:
        """Bits acted on by check ``a``."""
        return [int(i) for i in np.flatnonzero(self.H.row(a))]

    def bit_support(self, i: int) -> list[int]:
        """Checks that act on bit ``i``."""
        return [int(a) for a in np.flatnonzero(self.H.col(i))]

    def tanner_edges(self) -> list[tuple[int, int]]:
        """``(bit, check)`` pairs, sorted by check then bit."""
        return [(i, a) for a in range(self.m) for i in self.check_support(a)]

    def symmetries(self) -> list[frozenset[int]]:
        return [frozenset(int(i) for i in np.flatnonzero(v)) for v in self.symmetry_basis]

    def redundancies(self) -> list[frozenset[int]]:
        return [frozenset(int(a) for a in np.flatnonzero(v)) for v in self.redundancy_basis]

    def is_codeword(self, word) -> bool:
        return not np.any(self.H @ np.asarray(word, dtype=np.uint8))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassicalCode):
            return NotImplemented
        return self.H == other.H

    def __hash__(self) -> int:
        return hash(self.H)

    def __repr__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"ClassicalCode({label}n={self.n}, m={self.m}, k={self.k}, kT={self.k_T})"


def from_matrix(H, name: str = "") -> ClassicalCode:
    return ClassicalCode.from_matrix(H, name)


def transpose_code(code: ClassicalCode) -> ClassicalCode:
    return ClassicalCode(code.H.T, f"{code.name}^T" if code.name else "")


def perp_code(code: ClassicalCode) -> ClassicalCode:
    """Orthogonal complement: the codewords of ``code`` become the checks."""
    H = f2.from_vectors(code.symmetry_basis, code.n)
    return ClassicalCode(H, f"{code.name}^perp" if code.name else "")


def tensor_product(c1: ClassicalCode, c2: ClassicalCode) -> ClassicalCode:
    """Rows are the checks ``C1_{a,j}`` (index ``j*m1 + a``), then ``C2_{i,b}`` (index ``b*n1 + i``)."""
    H = f2.vstack([
        f2.kron(BinaryMatrix.identity(c2.n), c1.H),
        f2.kron(c2.H, BinaryMatrix.identity(c1.n)),
    ])
    return ClassicalCode(H, _join(c1, c2, "x"))


def check_product(c1: ClassicalCode, c2: ClassicalCode) -> ClassicalCode:
    """Row ``(a, b)`` sits at ``b*m1 + a`` and supports ``delta1(a) x delta2(b)``."""
    return ClassicalCode(f2.kron(c2.H, c1.H), _join(c1, c2, "*"))


def pq_product(codes: Sequence[ClassicalCode], q: int) -> ClassicalCode:
    """Stack ``H_S`` over all ``q``-subsets ``S`` in lexicographic order.

    ``H_S`` is a Kronecker product with ``H_s`` in slot ``s`` for ``s in S`` and the
    identity elsewhere; the last code is the outermost factor so that code 1's
    bit index runs fastest, matching :func:`tensor_product`.
    """
    p = len(codes)
    if not 1 <= q <= p:
        raise ValueError(f"need 1 <= q <= p, got q={q}, p={p}")
    blocks = []
    for subset in itertools.combinations(range(p), q):
        factors = [codes[s].H if s in subset else BinaryMatrix.identity(codes[s].n) for s in range(p)]
        blocks.append(f2.kron_all(factors[::-1]))
    return ClassicalCode(f2.vstack(blocks), f"({p},{q})-product")


def defect_dual_basis(code: ClassicalCode) -> list[frozenset[int]]:
    """Check subsets ``G_b`` with ``|G_b & R_b'|`` odd exactly when ``b == b'``.

    Single checks are preferred (lowest index first); otherwise the system
    ``G R^T = I`` is solved on the pivot columns of the redundancy basis.
    """
    R = f2.from_vectors(code.redundancy_basis, code.m)
    kT = R.rows
    if kT == 0:
        return []
    chosen: list[int] = []
    for beta in range(kT):
        target = np.zeros(kT, dtype=np.uint8)
        target[beta] = 1
        hits = [a for a in range(code.m) if np.array_equal(R.col(a), target) and a not in chosen]
        if not hits:
            break
        chosen.append(hits[0])
    else:
        return [frozenset({a}) for a in chosen]
    _, trace = f2.rref_with_trace(R)
    piv = list(trace.pivots)
    sub = BinaryMatrix(R.data[:, piv])
    G_sub = f2.inverse(sub.T)
    out = []
    for beta in range(kT):
        out.append(frozenset(piv[c] for c in np.flatnonzero(G_sub.row(beta))))
    return out


def repetition_ring(n: int) -> ClassicalCode:
    """Periodic Ising chain: check ``a`` acts on bits ``a`` and ``a+1 mod n``."""
    H = np.zeros((n, n), dtype=np.uint8)
    for a in range(n):
        H[a, a] ^= 1
        H[a, (a + 1) % n] ^= 1
    return ClassicalCode(BinaryMatrix(H), f"ring{n}")


def ising3() -> ClassicalCode:
    """Three-site periodic Ising code with rows ``101 / 110 / 011``."""
    return ClassicalCode(BinaryMatrix([[1, 0, 1], [1, 1, 0], [0, 1, 1]]), "ising3")


def open_chain(n: int) -> ClassicalCode:
    H = np.zeros((n - 1, n), dtype=np.uint8)
    for a in range(n - 1):
        H[a, a] = H[a, a + 1] = 1
    return ClassicalCode(BinaryMatrix(H), f"chain{n}")


def random_code(rng: np.random.Generator, n: int, m: int, density: float = 0.5) -> ClassicalCode:
    H = (rng.random((m, n)) < density).astype(np.uint8)
    return ClassicalCode(BinaryMatrix(H))


def _join(c1: ClassicalCode, c2: ClassicalCode, op: str) -> str:
    if c1.name and c2.name:
        return f"{c1.name}{op}{c2.name}"
    return ""
