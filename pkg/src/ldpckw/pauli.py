"""
Symplectic Pauli operators, pushing them through processes, and Hamiltonian specs.

A :class:`PauliOperator` stores ``i^k X^x Z^z`` (all X factors written to the left
of all Z factors on each wire), so ``Y = i X Z`` and ``X Z = -i Y``.  In this
form CNOT conjugation never changes the phase and Hadamard contributes ``(-1)``
on wires carrying both an X and a Z.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from . import f2
from .code import ClassicalCode
from .f2 import BinaryMatrix
from .process import CnotGate, HGate, QuantumProcess


@dataclass(frozen=True, eq=False)
class PauliOperator:
    x: np.ndarray
    z: np.ndarray
    k: int = 0

    def __post_init__(self):
        x = np.array(self.x, dtype=np.uint8) % 2
        z = np.array(self.z, dtype=np.uint8) % 2
        if x.shape != z.shape or x.ndim != 1:
            raise ValueError("x and z must be equal-length bit vectors")
        x.setflags(write=False)
        z.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "k", int(self.k) % 4)

    @classmethod
    def identity(cls, n: int) -> "PauliOperator":
        return cls(np.zeros(n), np.zeros(n))

    @classmethod
    def from_support(cls, n: int, x: Iterable[int] = (), z: Iterable[int] = (), k: int = 0) -> "PauliOperator":
        xv = np.zeros(n, dtype=np.uint8)
        zv = np.zeros(n, dtype=np.uint8)
        for w in x:
            xv[w] ^= 1
        for w in z:
            zv[w] ^= 1
        return cls(xv, zv, k)

    @classmethod
    def from_label(cls, label: str) -> "PauliOperator":
        """Parse ``"+XIZY"`` style labels; character ``w`` acts on wire ``w``."""
        sign = {"+": 0, "-": 2}
        k = 0
        if label[:2] in ("+i", "-i"):
            k, label = sign[label[0]] + 1, label[2:]
        elif label[:1] in sign:
            k, label = sign[label[0]], label[1:]
        x = [c in "XY" for c in label]
        z = [c in "ZY" for c in label]
        k += sum(c == "Y" for c in label)  # Y = i X Z
        return cls(np.array(x), np.array(z), k)

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def phase(self) -> complex:
        return 1j**self.k

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        if self.n != other.n:
            raise ValueError("Pauli operators act on different wire counts")
        swap = int(np.dot(self.z.astype(int), other.x.astype(int))) % 2
        return PauliOperator(self.x ^ other.x, self.z ^ other.z, self.k + other.k + 2 * swap)

    def __neg__(self) -> "PauliOperator":
        return PauliOperator(self.x, self.z, self.k + 2)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliOperator):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.x, other.x) and np.array_equal(self.z, other.z)

    def __hash__(self):
        return hash((self.x.tobytes(), self.z.tobytes(), self.k))

    def same_word(self, other: "PauliOperator") -> bool:
        return np.array_equal(self.x, other.x) and np.array_equal(self.z, other.z)

    def symplectic(self, other: "PauliOperator") -> int:
        return int(np.dot(self.x.astype(int), other.z.astype(int)) + np.dot(self.z.astype(int), other.x.astype(int))) % 2

    def commutes(self, other: "PauliOperator") -> bool:
        return self.symplectic(other) == 0

    def is_hermitian(self) -> bool:
        return (self.k % 2) == (int(np.dot(self.x.astype(int), self.z.astype(int))) % 2)

    def is_identity(self) -> bool:
        return not self.x.any() and not self.z.any()

    def weight(self) -> int:
        return int(np.count_nonzero(self.x | self.z))

    def conjugate(self, gate) -> "PauliOperator":
        """``U P U^dagger`` for a single gate."""
        x, z = self.x.copy(), self.z.copy()
        k = self.k
        if isinstance(gate, HGate):
            w = gate.wire
            k += 2 * int(x[w] & z[w])
            x[w], z[w] = z[w], x[w]
        elif isinstance(gate, CnotGate):
            x[gate.target] ^= x[gate.control]
            z[gate.control] ^= z[gate.target]
        else:
            raise TypeError(f"unsupported gate {gate!r}")
        return PauliOperator(x, z, k)

    def extend(self, n: int) -> "PauliOperator":
        pad = n - self.n
        return PauliOperator(np.concatenate([self.x, np.zeros(pad)]), np.concatenate([self.z, np.zeros(pad)]), self.k)

    def restrict(self, wires: Sequence[int]) -> "PauliOperator":
        return PauliOperator(self.x[list(wires)], self.z[list(wires)], self.k)

    def to_sparse(self) -> sp.csr_matrix:
        n = self.n
        dim = 2**n
        xm = int(sum(int(b) << w for w, b in enumerate(self.x)))
        zm = int(sum(int(b) << w for w, b in enumerate(self.z)))
        cols = np.arange(dim, dtype=np.int64)
        signs = 1 - 2 * (_popcount(cols & zm) % 2)
        data = self.phase * signs
        return sp.csr_matrix((data.astype(complex), (cols ^ xm, cols)), shape=(dim, dim))

    def to_dense(self) -> np.ndarray:
        return self.to_sparse().toarray()

    def __str__(self) -> str:
        prefix = {0: "+", 1: "+i", 2: "-", 3: "-i"}
        k = self.k - int(np.dot(self.x.astype(int), self.z.astype(int)))  # fold i's into Y letters
        letters = "".join("IXZY"[int(a) + 2 * int(b)] for a, b in zip(self.x, self.z))
        return prefix[k % 4] + letters

    __repr__ = __str__


def _popcount(a: np.ndarray) -> np.ndarray:
    a = a.astype(np.int64)
    count = np.zeros_like(a)
    while np.any(a):
        count += a & 1
        a >>= 1
    return count


class _Obstructed:
    """Marker returned when an operator cannot be pushed through a realization."""

    def __repr__(self):
        return "OBSTRUCTED"

    def __bool__(self):
        return False


OBSTRUCTED = _Obstructed()


def _conjugate_all(p: PauliOperator, gates) -> PauliOperator:
    for g in gates:
        p = p.conjugate(g)
    return p


def _measured_sign_and_bad(proc: QuantumProcess, p: PauliOperator) -> tuple[np.ndarray, int]:
    """Bits that block absorption at the measurements, and the sign from absorbed factors."""
    bad = []
    sign = 0
    for mm in proc.measurements:
        w = mm.wire
        if mm.basis == "X":
            bad.append(p.z[w])
            if p.x[w] and mm.outcome == -1:
                sign += 2
        else:
            bad.append(p.x[w])
            if p.z[w] and mm.outcome == -1:
                sign += 2
    return np.array(bad, dtype=np.uint8), sign


def _ancilla_stabilizers(proc: QuantumProcess) -> list[PauliOperator]:
    """Generators ``s`` with ``s P_A = P_A``, already pushed through the gates."""
    W = proc.n_wires
    gens = []
    for a in proc.ancillas:
        k = 0 if a.eigenvalue == 1 else 2
        s = PauliOperator.from_support(W, x=[a.wire], k=k) if a.basis == "X" else \
            PauliOperator.from_support(W, z=[a.wire], k=k)
        gens.append(_conjugate_all(s, proc.gates))
    return gens


def push_pauli(proc: QuantumProcess, op: PauliOperator):
    """Find ``op'`` on the outputs with ``D op = op' D``, or return OBSTRUCTED.

    ``op`` is conjugated through the gates; stabilizers of the prepared ancillas
    may be multiplied in so that every measured wire carries only factors of the
    measured basis, which are then absorbed into the postselected outcome.
    """
    if op.n != proc.n_in:
        raise ValueError(f"operator acts on {op.n} wires, process has {proc.n_in} inputs")
    pushed = _conjugate_all(op.extend(proc.n_wires), proc.gates)
    gens = _ancilla_stabilizers(proc)
    bad, _ = _measured_sign_and_bad(proc, pushed)
    if gens:
        A = BinaryMatrix(np.column_stack([_measured_sign_and_bad(proc, g)[0] for g in gens])
                         if len(proc.measurements) else np.zeros((0, len(gens))))
        c = f2.solve(A, bad)
    else:
        c = None if bad.any() else np.zeros(0, dtype=np.uint8)
    if c is None:
        return OBSTRUCTED
    for q in np.flatnonzero(c):
        pushed = pushed * gens[q]
    _, sign = _measured_sign_and_bad(proc, pushed)
    out = pushed.restrict(proc.outputs)
    return PauliOperator(out.x, out.z, out.k + sign)


def output_gauge(proc: QuantumProcess) -> list[PauliOperator]:
    """Output operators ``G`` with ``G D = D`` coming from ancilla stabilizers."""
    gens = _ancilla_stabilizers(proc)
    if not gens:
        return []
    if proc.measurements:
        A = BinaryMatrix(np.column_stack([_measured_sign_and_bad(proc, g)[0] for g in gens]))
        null = f2.kernel_basis(A)
    else:
        null = [row for row in np.eye(len(gens), dtype=np.uint8)]
    out = []
    for c in null:
        g = PauliOperator.identity(proc.n_wires)
        for q in np.flatnonzero(c):
            g = g * gens[q]
        _, sign = _measured_sign_and_bad(proc, g)
        r = g.restrict(proc.outputs)
        out.append(PauliOperator(r.x, r.z, r.k + sign))
    return out


def equal_modulo(p: PauliOperator, q: PauliOperator, gauge: Sequence[PauliOperator]) -> bool:
    """True iff ``p = q g`` for some ``g`` in the group generated by ``gauge`` (phases included)."""
    if p.same_word(q):
        return p.k == q.k
    if not gauge:
        return False
    target = np.concatenate([p.x ^ q.x, p.z ^ q.z])
    A = BinaryMatrix(np.column_stack([np.concatenate([g.x, g.z]) for g in gauge]))
    c = f2.solve(A, target)
    if c is None:
        return False
    prod = q
    for idx in np.flatnonzero(c):
        prod = prod * gauge[idx]
    return prod == p


@dataclass(frozen=True)
class HamiltonianSpec:
    """``sum_t c_t P_t`` with real ``c_t`` and Hermitian Pauli words."""

    n_wires: int
    terms: tuple[tuple[float, PauliOperator], ...]

    def __post_init__(self):
        for c, p in self.terms:
            if p.n != self.n_wires:
                raise ValueError("term acts on the wrong number of wires")
            if not p.is_hermitian():
                raise ValueError(f"term {p} is not Hermitian")
            if np.iscomplexobj(c) or not np.isfinite(c):
                raise ValueError(f"coefficient {c!r} must be a finite real number")

    def __add__(self, other: "HamiltonianSpec") -> "HamiltonianSpec":
        if self.n_wires != other.n_wires:
            raise ValueError("cannot add Hamiltonians on different wire counts")
        return HamiltonianSpec(self.n_wires, self.terms + other.terms)

    def scaled(self, factor: float) -> "HamiltonianSpec":
        return HamiltonianSpec(self.n_wires, tuple((factor * c, p) for c, p in self.terms))

    def nonzero(self) -> "HamiltonianSpec":
        return HamiltonianSpec(self.n_wires, tuple((c, p) for c, p in self.terms if c != 0))

    def to_sparse(self) -> sp.csr_matrix:
        dim = 2**self.n_wires
        out = sp.csr_matrix((dim, dim), dtype=complex)
        for c, p in self.terms:
            if c != 0:
                out = out + c * p.to_sparse()
        return out.tocsr()

    def is_commuting(self) -> bool:
        ps = [p for _, p in self.terms]
        return all(a.commutes(b) for i, a in enumerate(ps) for b in ps[i + 1:])


def _z_word(n: int, wires) -> PauliOperator:
    return PauliOperator.from_support(n, z=wires)


def _x_word(n: int, wires) -> PauliOperator:
    return PauliOperator.from_support(n, x=wires)


def build_hamiltonian(code: ClassicalCode, J: float = 1.0, h: float = 0.0) -> HamiltonianSpec:
    """``-J sum_a prod_{i in delta(a)} Z_i - h sum_i X_i``."""
    n = code.n
    terms = [(-J, _z_word(n, code.check_support(a))) for a in range(code.m)]
    terms += [(-h, _x_word(n, [i])) for i in range(n)]
    return HamiltonianSpec(n, tuple(terms))


def layer_wires(c1: ClassicalCode, c2: ClassicalCode) -> tuple[callable, callable]:
    """Wire index functions ``alpha(i, j)`` and ``beta(i, j)`` for the stacked layers."""
    N = c1.n * c2.n
    return (lambda i, j: j * c1.n + i), (lambda i, j: N + j * c1.n + i)


def coupling_terms(c1: ClassicalCode, c2: ClassicalCode, kind: str, lam: float) -> HamiltonianSpec:
    """``-lam sum alpha^z beta^z`` (tensor) or ``-lam sum alpha^x beta^x`` (check)."""
    if kind not in ("tensor", "check"):
        raise ValueError(f"kind must be 'tensor' or 'check', got {kind!r}")
    alpha, beta = layer_wires(c1, c2)
    W = 2 * c1.n * c2.n
    word = _z_word if kind == "tensor" else _x_word
    terms = tuple((-lam, word(W, [alpha(i, j), beta(i, j)])) for j in range(c2.n) for i in range(c1.n))
    return HamiltonianSpec(W, terms)


def layer_terms(c1: ClassicalCode, c2: ClassicalCode, h1: float, h2: float, J: float = 1.0) -> HamiltonianSpec:
    """``n2`` copies of the first code's Hamiltonian and ``n1`` copies of the second's."""
    alpha, beta = layer_wires(c1, c2)
    W = 2 * c1.n * c2.n
    terms = []
    for j in range(c2.n):
        terms += [(-J, _z_word(W, [alpha(i, j) for i in c1.check_support(a)])) for a in range(c1.m)]
        terms += [(-h1, _x_word(W, [alpha(i, j)])) for i in range(c1.n)]
    for i in range(c1.n):
        terms += [(-J, _z_word(W, [beta(i, j) for j in c2.check_support(b)])) for b in range(c2.m)]
        terms += [(-h2, _x_word(W, [beta(i, j)])) for j in range(c2.n)]
    return HamiltonianSpec(W, tuple(terms))


def build_coupled_layer(c1: ClassicalCode, c2: ClassicalCode, kind: str, h1: float, h2: float,
                        lam: float, J: float = 1.0) -> HamiltonianSpec:
    return layer_terms(c1, c2, h1, h2, J) + coupling_terms(c1, c2, kind, lam)
