"""
Quantum processes: ancilla preparation, a Clifford gate list, postselected measurements.

Wires ``0..n_in-1`` are the inputs and ancillas are appended after them.  A
process realizes the (generally non-invertible) linear map

    |x>  ->  <meas| U (|x> (x) |anc>)

with the surviving wires read out in the order given by ``outputs``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Literal, Union

from . import f2
from .code import ClassicalCode

Basis = Literal["X", "Z"]
STATE_BASIS = {"plus": ("X", 1), "minus": ("X", -1), "zero": ("Z", 1), "one": ("Z", -1)}
REALIZATIONS = ("defect", "minimal_coupling", "tensor_merge", "check_merge")
FORMAT_VERSION = 1


@dataclass(frozen=True)
class HGate:
    wire: int


@dataclass(frozen=True)
class CnotGate:
    control: int
    target: int

    def __post_init__(self):
        if self.control == self.target:
            raise ValueError(f"CNOT control and target coincide on wire {self.control}")


Gate = Union[HGate, CnotGate]


@dataclass(frozen=True)
class Ancilla:
    wire: int
    state: str = "zero"

    def __post_init__(self):
        if self.state not in STATE_BASIS:
            raise ValueError(f"unknown ancilla state {self.state!r}")

    @property
    def basis(self) -> Basis:
        return STATE_BASIS[self.state][0]

    @property
    def eigenvalue(self) -> int:
        return STATE_BASIS[self.state][1]


@dataclass(frozen=True)
class Measurement:
    wire: int
    basis: Basis = "X"
    outcome: int = 1

    def __post_init__(self):
        if self.basis not in ("X", "Z") or self.outcome not in (1, -1):
            raise ValueError(f"bad measurement {self}")


@dataclass(frozen=True)
class QuantumProcess:
    n_in: int
    ancillas: tuple[Ancilla, ...]
    gates: tuple[Gate, ...]
    measurements: tuple[Measurement, ...]
    outputs: tuple[int, ...]
    realization: str = "defect"
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        W = self.n_wires
        anc = [a.wire for a in self.ancillas]
        if anc != list(range(self.n_in, W)):
            raise ValueError("ancillas must occupy wires n_in, n_in+1, ... in order")
        meas = [mm.wire for mm in self.measurements]
        if len(set(meas)) != len(meas) or len(set(self.outputs)) != len(self.outputs):
            raise ValueError("a wire is measured or output twice")
        if set(meas) & set(self.outputs):
            raise ValueError("a measured wire cannot also be an output")
        if set(meas) | set(self.outputs) != set(range(W)):
            raise ValueError("every wire must end as exactly one of measured / output")
        for g in self.gates:
            wires = (g.wire,) if isinstance(g, HGate) else (g.control, g.target)
            if any(not 0 <= w < W for w in wires):
                raise ValueError(f"gate {g} references an undeclared wire")
        if self.realization not in REALIZATIONS:
            raise ValueError(f"unknown realization {self.realization!r}")

    @property
    def n_wires(self) -> int:
        return self.n_in + len(self.ancillas)

    @property
    def n_out(self) -> int:
        return len(self.outputs)

    def wire_roles(self) -> list[tuple[str, str]]:
        """``(start, end)`` for every wire: start in {input, ancilla}, end in {output, measured}."""
        measured = {mm.wire for mm in self.measurements}
        return [("input" if w < self.n_in else "ancilla", "measured" if w in measured else "output")
                for w in range(self.n_wires)]

    def with_gates(self, gates) -> "QuantumProcess":
        return QuantumProcess(self.n_in, self.ancillas, tuple(gates), self.measurements,
                              self.outputs, self.realization, dict(self.meta))

    def with_ancilla_states(self, states: list[str]) -> "QuantumProcess":
        anc = tuple(Ancilla(a.wire, s) for a, s in zip(self.ancillas, states, strict=True))
        return QuantumProcess(self.n_in, anc, self.gates, self.measurements,
                              self.outputs, self.realization, dict(self.meta))

    def to_dict(self) -> dict:
        gates = []
        for g in self.gates:
            if isinstance(g, HGate):
                gates.append({"g": "H", "w": g.wire})
            else:
                gates.append({"g": "CNOT", "c": g.control, "t": g.target})
        return {
            "version": FORMAT_VERSION,
            "n_in": self.n_in,
            "n_out": self.n_out,
            "wires": [{"id": w, "start": s, "end": e} for w, (s, e) in enumerate(self.wire_roles())],
            "ancillas": [{"wire": a.wire, "basis": a.basis, "state": a.state} for a in self.ancillas],
            "gates": gates,
            "measurements": [{"wire": mm.wire, "basis": mm.basis, "postselect": mm.outcome}
                             for mm in self.measurements],
            "outputs": list(self.outputs),
            "realization": self.realization,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "QuantumProcess":
        if doc.get("version") != FORMAT_VERSION:
            raise ValueError(f"unsupported process format version {doc.get('version')!r}")
        gates: list[Gate] = []
        for g in doc["gates"]:
            if g["g"] == "H":
                gates.append(HGate(int(g["w"])))
            elif g["g"] == "CNOT":
                gates.append(CnotGate(int(g["c"]), int(g["t"])))
            else:
                raise ValueError(f"unknown gate {g['g']!r}")
        ancillas = []
        for a in doc["ancillas"]:
            anc = Ancilla(int(a["wire"]), a["state"])
            if "basis" in a and a["basis"] != anc.basis:
                raise ValueError(f"ancilla state {anc.state} is not in basis {a['basis']}")
            ancillas.append(anc)
        proc = cls(
            n_in=int(doc["n_in"]),
            ancillas=tuple(ancillas),
            gates=tuple(gates),
            measurements=tuple(Measurement(int(mm["wire"]), mm["basis"], int(mm["postselect"]))
                               for mm in doc["measurements"]),
            outputs=tuple(int(w) for w in doc["outputs"]),
            realization=doc["realization"],
        )
        if "n_out" in doc and doc["n_out"] != proc.n_out:
            raise ValueError("n_out disagrees with the output list")
        return proc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "QuantumProcess":
        return cls.from_dict(json.loads(text))


def resource_counts(proc: QuantumProcess) -> tuple[int, int]:
    return len(proc.ancillas), len(proc.measurements)


@dataclass(frozen=True)
class DefectPlan:
    """The two eliminations behind :func:`extract_defect`."""

    check_trace: f2.RowOpTrace
    bit_trace: f2.RowOpTrace
    rank: int

    def redundancies(self, m: int) -> list[frozenset[int]]:
        """Check combinations the first elimination sums into zero rows."""
        E = self.check_trace.transform()
        return [frozenset(int(a) for a, v in enumerate(E.row(r)) if v) for r in range(self.rank, m)]

    def symmetries(self, n: int) -> list[frozenset[int]]:
        """Bit combinations the second elimination sums into zero rows."""
        E = self.bit_trace.transform()
        return [frozenset(int(i) for i, v in enumerate(E.row(r)) if v) for r in range(self.rank, n)]


def defect_plan(code: ClassicalCode) -> DefectPlan:
    reduced, check_trace = f2.rref_with_trace(code.H)
    _, bit_trace = f2.rref_with_trace(reduced.T)
    return DefectPlan(check_trace, bit_trace, len(check_trace.pivots))


def extract_defect(code: ClassicalCode, ancilla_state: str = "zero") -> QuantumProcess:
    """Realize the KW map with ``k_T`` ancillas and ``k`` measurements.

    Writing ``H = A [I_r 0; 0 0] B`` from the two eliminations, the circuit is:
    CNOTs for ``B`` on the inputs, X-measurement (postselect +1) of the ``k`` wires
    that drop out, ``k_T`` fresh ancillas, CNOTs for ``A`` and a Hadamard on every
    output.  With ancillas in ``|0>`` this is proportional to the closed-form map;
    ``|+>`` / ``|->`` ancillas select a symmetry sector instead.
    """
    n, m = code.n, code.m
    plan = defect_plan(code)
    r = plan.rank
    perm_checks = plan.check_trace.row_permutation
    perm_bits = plan.bit_trace.row_permutation

    gates: list[Gate] = []
    # input side: op R_t <- R_t + R_s on H'^T  ->  CNOT(control t, target s)
    for t, s in plan.bit_trace.ops:
        gates.append(CnotGate(t, s))
    coord_wire = [perm_bits[c] for c in range(r)] + [n + q for q in range(m - r)]
    wire_of_check = [0] * m
    for c in range(m):
        wire_of_check[perm_checks[c]] = coord_wire[c]
    # output side: undo the check elimination, last op first
    for t, s in reversed(plan.check_trace.ops):
        gates.append(CnotGate(wire_of_check[s], wire_of_check[t]))
    gates.extend(HGate(w) for w in wire_of_check)

    ancillas = tuple(Ancilla(n + q, ancilla_state) for q in range(m - r))
    measurements = tuple(Measurement(perm_bits[c], "X", 1) for c in range(r, n))
    return QuantumProcess(n, ancillas, tuple(gates), measurements, tuple(wire_of_check), "defect",
                          {"code": code.name})


def extract_minimal_coupling(code: ClassicalCode) -> QuantumProcess:
    """One gauge ancilla per check, one Gauss-law measurement per bit.

    Ancilla ``a`` (wire ``n + a``) starts in ``|0>`` and collects the parity of
    ``delta(a)`` through ``CNOT(i, a~)``; the bits are then measured in X.
    """
    n, m = code.n, code.m
    gates: list[Gate] = [CnotGate(i, n + a) for i in range(n) for a in code.bit_support(i)]
    gates.extend(HGate(n + a) for a in range(m))
    ancillas = tuple(Ancilla(n + a, "zero") for a in range(m))
    measurements = tuple(Measurement(i, "X", 1) for i in range(n))
    return QuantumProcess(n, ancillas, tuple(gates), measurements, tuple(n + a for a in range(m)),
                          "minimal_coupling", {"code": code.name})


def extract_product(c1: ClassicalCode, c2: ClassicalCode, kind: str) -> QuantumProcess:
    """Merge each pair ``(alpha_ij, beta_ij)`` into one output qubit.

    alpha wires are ``0..N-1`` and beta wires ``N..2N-1`` (index ``j*n1 + i``).
    """
    N = c1.n * c2.n
    if kind == "tensor":
        gates = tuple(CnotGate(q, N + q) for q in range(N))
        meas = tuple(Measurement(N + q, "Z", 1) for q in range(N))
        realization = "tensor_merge"
    elif kind == "check":
        gates = tuple(CnotGate(N + q, q) for q in range(N))
        meas = tuple(Measurement(N + q, "X", 1) for q in range(N))
        realization = "check_merge"
    else:
        raise ValueError(f"kind must be 'tensor' or 'check', got {kind!r}")
    return QuantumProcess(2 * N, (), gates, meas, tuple(range(N)), realization,
                          {"n1": c1.n, "n2": c2.n})


def gate_matrix_summary(proc: QuantumProcess) -> str:
    """One line per gate, for logs and goldens."""
    lines = []
    for g in proc.gates:
        lines.append(f"H {g.wire}" if isinstance(g, HGate) else f"CNOT {g.control} {g.target}")
    return "\n".join(lines)


__all__ = [
    "Ancilla", "CnotGate", "HGate", "Measurement", "QuantumProcess",
    "defect_plan", "extract_defect", "extract_minimal_coupling", "extract_product", "resource_counts",
]
