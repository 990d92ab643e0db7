"""
Structural checks that a process implements the duality or a product merge.

Each relation ``op -> expected`` is checked symbolically with :func:`push_pauli`
(modulo the output gauge the ancillas impose) and, when the process is small
enough, densely via ``D op = expected D``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .code import ClassicalCode
from .pauli import OBSTRUCTED, PauliOperator, equal_modulo, output_gauge, push_pauli
from .process import QuantumProcess
from .sim import MAX_MATRIX_WIRES, process_matrix

DENSE_LIMIT = 10
DENSE_TOL = 1e-10


@dataclass(frozen=True)
class Relation:
    index: int
    name: str
    status: str  # "pass", "fail" or "obstructed"
    witness: str
    dense: Optional[bool] = None

    @property
    def passed(self) -> bool:
        return self.status == "pass" and self.dense is not False

    @property
    def agrees(self) -> bool:
        """Symbolic and dense verdicts coincide (trivially true without a dense check)."""
        return self.dense is None or self.dense == (self.status == "pass")


@dataclass(frozen=True)
class Report:
    title: str
    relations: tuple[Relation, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.relations)

    def failures(self) -> list[Relation]:
        return [r for r in self.relations if not r.passed]

    def records(self) -> list[dict]:
        out = []
        for r in self.relations:
            status = "fail" if r.status == "pass" and not r.passed else r.status
            out.append({"relation": r.name, "status": status, "witness": r.witness, "dense": r.dense})
        return out

    def render(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'} ({len(self.relations)} relations)"]
        for r in self.relations:
            dense = "" if r.dense is None else f" dense={'ok' if r.dense else 'FAIL'}"
            lines.append(f"  [{r.index:3d}] {r.name}: {r.status}{dense}  {r.witness}")
        return "\n".join(lines) + "\n"


def _dense_ok(D: np.ndarray, op: PauliOperator, expected: PauliOperator) -> bool:
    lhs = D @ op.to_dense()
    rhs = expected.to_dense() @ D
    scale = max(1.0, float(np.max(np.abs(D))))
    return bool(np.max(np.abs(lhs - rhs)) < DENSE_TOL * scale)


def _check(proc: QuantumProcess, pairs: list[tuple[str, PauliOperator, PauliOperator]],
           title: str, dense: Optional[bool]) -> Report:
    gauge = output_gauge(proc)
    small = proc.n_in + proc.n_out <= DENSE_LIMIT and proc.n_wires <= MAX_MATRIX_WIRES
    use_dense = small if dense is None else dense
    D = process_matrix(proc) if use_dense else None
    rels = []
    for idx, (name, op, expected) in enumerate(pairs):
        pushed = push_pauli(proc, op)
        if pushed is OBSTRUCTED:
            status, witness = "obstructed", f"{op} has no image"
        elif equal_modulo(pushed, expected, gauge):
            status, witness = "pass", f"{op} -> {pushed}"
        else:
            status, witness = "fail", f"{op} -> {pushed}, expected {expected}"
        rels.append(Relation(idx, name, status, witness, _dense_ok(D, op, expected) if D is not None else None))
    return Report(title, tuple(rels))


def duality_relations(code: ClassicalCode) -> list[tuple[str, PauliOperator, PauliOperator]]:
    n, m = code.n, code.m
    pairs = []
    for i in range(n):
        pairs.append((f"X{i} -> Z{code.bit_support(i)}",
                      PauliOperator.from_support(n, x=[i]),
                      PauliOperator.from_support(m, z=code.bit_support(i))))
    for a in range(m):
        pairs.append((f"Z{code.check_support(a)} -> X[{a}]",
                      PauliOperator.from_support(n, z=code.check_support(a)),
                      PauliOperator.from_support(m, x=[a])))
    return pairs


def verify_duality(code: ClassicalCode, proc: QuantumProcess, dense: Optional[bool] = None) -> Report:
    """Check bit flips map to dual check products and checks map to dual flips, phase +1."""
    title = f"duality {code.name or f'{code.m}x{code.n}'} / {proc.realization}"
    if proc.n_in != code.n or proc.n_out != code.m:
        bad = Relation(0, "shape", "fail", f"process is {proc.n_in}->{proc.n_out}, code needs {code.n}->{code.m}")
        return Report(title, (bad,))
    return _check(proc, duality_relations(code), title, dense)


def product_relations(c1: ClassicalCode, c2: ClassicalCode, kind: str) -> list[tuple[str, PauliOperator, PauliOperator]]:
    n1, n2 = c1.n, c2.n
    N = n1 * n2
    idx = lambda i, j: j * n1 + i  # noqa: E731
    W = 2 * N
    pairs = []
    if kind == "tensor":
        for j in range(n2):
            for i in range(n1):
                q = idx(i, j)
                pairs.append((f"XaXb({i},{j}) -> X", PauliOperator.from_support(W, x=[q, N + q]),
                              PauliOperator.from_support(N, x=[q])))
        for j in range(n2):
            for a in range(c1.m):
                sup = [idx(i, j) for i in c1.check_support(a)]
                pairs.append((f"row check {a} on j={j}", PauliOperator.from_support(W, z=sup),
                              PauliOperator.from_support(N, z=sup)))
        for i in range(n1):
            for b in range(c2.m):
                sup = [idx(i, j) for j in c2.check_support(b)]
                pairs.append((f"column check {b} on i={i}", PauliOperator.from_support(W, z=[N + q for q in sup]),
                              PauliOperator.from_support(N, z=sup)))
    elif kind == "check":
        for q in range(N):
            pairs.append((f"Xa[{q}] -> X", PauliOperator.from_support(W, x=[q]), PauliOperator.from_support(N, x=[q])))
            pairs.append((f"Xb[{q}] -> X", PauliOperator.from_support(W, x=[N + q]),
                          PauliOperator.from_support(N, x=[q])))
            pairs.append((f"ZaZb[{q}] -> Z", PauliOperator.from_support(W, z=[q, N + q]),
                          PauliOperator.from_support(N, z=[q])))
    else:
        raise ValueError(f"kind must be 'tensor' or 'check', got {kind!r}")
    return pairs


def verify_product(c1: ClassicalCode, c2: ClassicalCode, kind: str, proc: QuantumProcess,
                   dense: Optional[bool] = None) -> Report:
    N = c1.n * c2.n
    title = f"{kind} merge {c1.name or c1.n}, {c2.name or c2.n}"
    if proc.n_in != 2 * N or proc.n_out != N:
        return Report(title, (Relation(0, "shape", "fail", f"process is {proc.n_in}->{proc.n_out}"),))
    return _check(proc, product_relations(c1, c2, kind), title, dense)
