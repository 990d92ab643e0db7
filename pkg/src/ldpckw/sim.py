"""
Dense state-vector execution of processes, exact diagonalization and effective blocks.

Basis index bit ``w`` is wire ``w`` (wire 0 least significant), everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence, Union

import numpy as np
import scipy.sparse.linalg as spla

from .code import ClassicalCode
from .errors import AnnihilationError, DegeneracyError, ResourceError
from .pauli import HamiltonianSpec
from .process import CnotGate, HGate, QuantumProcess, extract_defect

MAX_WIRES = 20
MAX_MATRIX_WIRES = 12
MAX_DENSE_SPECTRUM = 14
MAX_LOW_STATES = 16
ANNIHILATION_THRESHOLD = 1e-12
DEGENERACY_THRESHOLD = 1e-8
EIGSH_TOL = 1e-10

_SQ = 1 / np.sqrt(2)
SINGLE_QUBIT = {
    "zero": np.array([1.0, 0.0], dtype=complex),
    "one": np.array([0.0, 1.0], dtype=complex),
    "plus": np.array([_SQ, _SQ], dtype=complex),
    "minus": np.array([_SQ, -_SQ], dtype=complex),
}
_MEASURED_BRA = {("X", 1): SINGLE_QUBIT["plus"], ("X", -1): SINGLE_QUBIT["minus"],
                 ("Z", 1): SINGLE_QUBIT["zero"], ("Z", -1): SINGLE_QUBIT["one"]}
_H = np.array([[1, 1], [1, -1]], dtype=complex) * _SQ

AncillaSpec = Union[str, np.ndarray, Sequence[complex]]


@dataclass(frozen=True)
class DenseState:
    """Amplitudes over ``n`` wires with the squared norm kept alongside."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        n = int(round(np.log2(max(len(amps), 1))))
        if 2**n != len(amps):
            raise ValueError(f"amplitude vector length {len(amps)} is not a power of two")
        if n > MAX_WIRES:
            raise ResourceError(f"{n} wires exceed the state cap of {MAX_WIRES}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def product(cls, singles: Sequence[AncillaSpec]) -> "DenseState":
        """Product state with ``singles[w]`` on wire ``w``."""
        vec = np.ones(1, dtype=complex)
        for s in singles:
            vec = np.kron(single_qubit(s), vec)
        return cls(vec)

    @classmethod
    def uniform(cls, n: int, label: str = "plus") -> "DenseState":
        return cls.product([label] * n)

    @classmethod
    def basis(cls, n: int, index: int) -> "DenseState":
        v = np.zeros(2**n, dtype=complex)
        v[index] = 1.0
        return cls(v)

    @property
    def n_wires(self) -> int:
        return int(round(np.log2(len(self.amplitudes))))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "DenseState":
        return DenseState(self.amplitudes / self.norm)

    def fidelity(self, other: "DenseState") -> float:
        """``|<a|b>|^2`` of the normalized states (global phase ignored)."""
        a, b = self.amplitudes, other.amplitudes
        return float(abs(np.vdot(a, b)) ** 2 / (np.vdot(a, a).real * np.vdot(b, b).real))

    def expectation(self, matrix) -> float:
        psi = self.amplitudes
        return float(np.vdot(psi, matrix @ psi).real / np.vdot(psi, psi).real)


def single_qubit(spec: AncillaSpec) -> np.ndarray:
    if isinstance(spec, str):
        try:
            return SINGLE_QUBIT[spec]
        except KeyError:
            raise ValueError(f"unknown single-qubit state {spec!r}") from None
    v = np.asarray(spec, dtype=complex).reshape(-1)
    if v.shape != (2,) or np.linalg.norm(v) == 0:
        raise ValueError("a single-qubit state needs two amplitudes, not both zero")
    return v / np.linalg.norm(v)


def _ancilla_vectors(proc: QuantumProcess, overrides) -> list[np.ndarray]:
    states: list[AncillaSpec] = [a.state for a in proc.ancillas]
    if overrides is None:
        pass
    elif isinstance(overrides, Mapping):
        wires = [a.wire for a in proc.ancillas]
        for w, s in overrides.items():
            if w not in wires:
                raise ValueError(f"wire {w} is not an ancilla")
            states[wires.index(w)] = s
    elif isinstance(overrides, (str, np.ndarray)):
        # one label or one amplitude pair for every ancilla
        states = [overrides] * len(proc.ancillas)
    else:
        if len(overrides) != len(proc.ancillas):
            raise ValueError(f"expected {len(proc.ancillas)} ancilla states, got {len(overrides)}")
        states = list(overrides)
    return [single_qubit(s) for s in states]


def _run(proc: QuantumProcess, inputs: np.ndarray, anc: list[np.ndarray]) -> np.ndarray:
    """Apply the process to each row of ``inputs`` (batch x 2^n_in) without renormalizing."""
    batch = inputs.shape[0]
    psi = inputs
    for v in anc:  # each new ancilla is the next most significant wire
        psi = (v[None, :, None] * psi[:, None, :]).reshape(batch, -1)
    W = proc.n_wires
    t = psi.reshape((batch,) + (2,) * W)
    axis = lambda w: W - w  # noqa: E731  (axis 0 is the batch)
    for g in proc.gates:
        if isinstance(g, HGate):
            t = np.moveaxis(np.tensordot(_H, t, axes=([1], [axis(g.wire)])), 0, axis(g.wire))
        elif isinstance(g, CnotGate):
            ac, at = axis(g.control), axis(g.target)
            sl = [slice(None)] * t.ndim
            sl[ac] = 1
            sub_axis = at if at < ac else at - 1
            t = t.copy()
            t[tuple(sl)] = np.flip(t[tuple(sl)], axis=sub_axis)
        else:
            raise TypeError(f"unsupported gate {g!r}")
    operands: list = [t, [0] + [1 + w for w in reversed(range(W))]]
    for mm in proc.measurements:
        operands += [_MEASURED_BRA[(mm.basis, mm.outcome)].conj(), [1 + mm.wire]]
    out_axes = [0] + [1 + w for w in reversed(proc.outputs)]
    res = np.einsum(*operands, out_axes)
    return np.asarray(res).reshape(batch, 2**proc.n_out)


def apply_process(proc: QuantumProcess, state: DenseState, ancilla_overrides=None,
                  renormalize: bool = True, cap: int = MAX_WIRES) -> tuple[DenseState, float]:
    """Run ``proc`` on ``state``; returns the output state and the postselection probability.

    ``ancilla_overrides`` may be one state for every ancilla (a label or a numpy
    2-vector), a list with one state per ancilla, or a ``{wire: state}`` mapping.
    """
    if state.n_wires != proc.n_in:
        raise ValueError(f"state has {state.n_wires} wires, process expects {proc.n_in}")
    if proc.n_wires > cap:
        raise ResourceError(f"process uses {proc.n_wires} wires, cap is {cap}")
    anc = _ancilla_vectors(proc, ancilla_overrides)
    out = _run(proc, state.amplitudes[None, :], anc)[0]
    before = np.vdot(state.amplitudes, state.amplitudes).real
    prob = float(np.vdot(out, out).real / before) if before > 0 else 0.0
    if prob < ANNIHILATION_THRESHOLD:
        raise AnnihilationError(prob)
    if renormalize:
        out = out / np.linalg.norm(out)
    return DenseState(out), prob


def process_matrix(proc: QuantumProcess, ancilla_overrides=None) -> np.ndarray:
    """``2^n_out x 2^n_in`` matrix of the process, postselected branches left unnormalized."""
    if proc.n_in + len(proc.ancillas) > MAX_MATRIX_WIRES:
        raise ResourceError(f"{proc.n_wires} wires exceed the process-matrix limit of {MAX_MATRIX_WIRES}")
    anc = _ancilla_vectors(proc, ancilla_overrides)
    eye = np.eye(2**proc.n_in, dtype=complex)
    return _run(proc, eye, anc).T


def prepare_state(code: ClassicalCode, ancilla_spec=None) -> DenseState:
    """Apply the defect realization of ``code`` to ``|+>^n`` (default ancillas ``|+>``)."""
    proc = extract_defect(code)
    spec = "plus" if ancilla_spec is None else ancilla_spec
    out, _ = apply_process(proc, DenseState.uniform(code.n, "plus"), spec if proc.ancillas else None)
    return out


def exact_spectrum(spec: HamiltonianSpec, num_low: int | None = None) -> np.ndarray:
    """Lowest ``num_low`` eigenvalues in ascending order (all of them by default)."""
    n = spec.n_wires
    if n > MAX_WIRES:
        raise ResourceError(f"{n} wires exceed {MAX_WIRES}")
    mat = spec.to_sparse()
    dim = 2**n
    if n <= MAX_DENSE_SPECTRUM:
        evals = np.linalg.eigvalsh(mat.toarray())
        return evals if num_low is None else evals[:num_low]
    if num_low is None or num_low > MAX_LOW_STATES:
        raise ResourceError(f"iterative mode returns at most {MAX_LOW_STATES} eigenvalues")
    evals = spla.eigsh(mat, k=min(num_low, dim - 2), which="SA", tol=EIGSH_TOL, return_eigenvectors=False)
    return np.sort(evals.real)


@dataclass(frozen=True)
class EffectiveBlock:
    labels: tuple[str, ...]
    matrix: np.ndarray
    coupling: float
    residual: float
    eigenvalues: np.ndarray

    def element(self, row: str, col: str) -> complex:
        return complex(self.matrix[self.labels.index(row), self.labels.index(col)])


def ground_projector_basis(constraint: HamiltonianSpec, tol: float = 1e-9) -> np.ndarray:
    """Orthonormal basis of the ground space of a commuting Hamiltonian."""
    if not constraint.is_commuting():
        raise ValueError("constraint terms must mutually commute")
    evals, evecs = np.linalg.eigh(constraint.to_sparse().toarray())
    return evecs[:, evals < evals[0] + tol]


def effective_block(spec: HamiltonianSpec, constraint: HamiltonianSpec, num_states: int | None = None,
                    basis: np.ndarray | None = None, labels: Sequence[str] | None = None,
                    coupling: float = float("nan")) -> EffectiveBlock:
    """Exact low-energy block of ``spec`` rotated onto the ground space of ``constraint``.

    The lowest eigenvectors ``V`` are mapped to ``range(P)`` by the direct rotation
    (polar factor of ``B^dagger V``), so the block has exactly the low eigenvalues.
    ``basis`` (columns) fixes the constrained basis; it defaults to an arbitrary
    orthonormal basis of the ground space.
    """
    if spec.n_wires > MAX_MATRIX_WIRES:
        raise ResourceError(f"{spec.n_wires} wires exceed the dense limit of {MAX_MATRIX_WIRES}")
    P_basis = ground_projector_basis(constraint)
    B = P_basis if basis is None else np.asarray(basis, dtype=complex)
    if B.shape[0] != 2**spec.n_wires:
        raise ValueError("basis rows must match the Hilbert space dimension")
    # basis must lie in range(P)
    leak = B - P_basis @ (P_basis.conj().T @ B)
    if np.linalg.norm(leak) > 1e-8:
        raise ValueError("constrained basis is not inside the ground space of the constraint")
    d = B.shape[1]
    num_states = d if num_states is None else num_states
    if num_states != d:
        raise ValueError(f"num_states={num_states} must equal the constrained dimension {d}")
    evals, evecs = np.linalg.eigh(spec.to_sparse().toarray())
    E, V = evals[:d], evecs[:, :d]
    M = B.conj().T @ V
    U, s, Vh = np.linalg.svd(M)
    if s.min() < DEGENERACY_THRESHOLD:
        raise DegeneracyError(f"low eigenspace is orthogonal to the constrained space (sigma_min={s.min():.2e})")
    W = U @ Vh
    heff = W @ np.diag(E) @ W.conj().T
    heff = 0.5 * (heff + heff.conj().T)
    residual = float(np.sqrt(max(0.0, 1.0 - s.min() ** 2)))
    labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(d))
    return EffectiveBlock(labels, heff, coupling, residual, E)


def coupled_layer_basis(N: int, kind: str) -> tuple[np.ndarray, tuple[str, ...]]:
    """Constrained basis for strongly coupled layers with ``N`` sites per layer.

    Tensor coupling locks ``alpha = beta`` in Z: states ``|s>_alpha |s>_beta``.
    Check coupling locks them in X: the Hadamard image of the same states.
    Labels are the bitstrings of ``s`` with site 0 first.
    """
    if kind not in ("tensor", "check"):
        raise ValueError(f"kind must be 'tensor' or 'check', got {kind!r}")
    dim = 2 ** (2 * N)
    B = np.zeros((dim, 2**N), dtype=complex)
    for s in range(2**N):
        B[s | (s << N), s] = 1.0
    if kind == "check":
        Hn = np.ones((1, 1))
        for _ in range(2 * N):
            Hn = np.kron(Hn, _H)
        B = Hn @ B
    labels = tuple("".join(str((s >> q) & 1) for q in range(N)) for s in range(2**N))
    return B, labels


def fit_power_law(samples: Sequence[tuple[float, float]]) -> tuple[float, float, float]:
    """Fit ``value = c * lam^p`` by least squares in log-log space.

    Returns ``(p, c, max relative residual)``; ``c`` carries the sign of the values.
    """
    if len(samples) < 2:
        raise ValueError("need at least two samples to fit a power law")
    lam = np.array([s[0] for s in samples], dtype=float)
    val = np.array([s[1] for s in samples], dtype=float)
    if np.any(val == 0) or np.any(lam <= 0):
        raise ValueError("power-law fit needs nonzero values and positive couplings")
    if np.any(np.diff(lam) <= 0):
        raise ValueError("couplings must be strictly ascending")
    signs = np.sign(val)
    if not np.all(signs == signs[0]):
        raise ValueError("values change sign; not a single power law")
    slope, intercept = np.polyfit(np.log(lam), np.log(np.abs(val)), 1)
    const = float(signs[0] * np.exp(intercept))
    fitted = const * lam**slope
    resid = float(np.max(np.abs(fitted - val) / np.abs(val)))
    return float(slope), const, resid


@dataclass(frozen=True)
class ScanConfig:
    """A coupled-layer perturbation scan: one effective block per coupling value.

    ``probe="flip"`` reads ``<10..0|H_eff|00..0>`` (one site flipped) and
    ``probe="plaquette"`` reads ``<11..1|H_eff|00..0>`` (all sites flipped).
    """

    kind: str = "tensor"
    h1: float = 1.0
    h2: float = 1.0
    lambdas: tuple[float, ...] = (50.0, 100.0, 200.0)
    probe: str = "flip"
    J: float = 1.0

    def __post_init__(self):
        if self.probe not in ("flip", "plaquette"):
            raise ValueError(f"probe must be 'flip' or 'plaquette', got {self.probe!r}")
        if self.kind not in ("tensor", "check"):
            raise ValueError(f"kind must be 'tensor' or 'check', got {self.kind!r}")


def run_scan(c1: ClassicalCode, c2: ClassicalCode, cfg: ScanConfig) -> list[tuple[float, float]]:
    """``(lambda, amplitude)`` for each coupling in ``cfg.lambdas``."""
    from .pauli import build_coupled_layer, coupling_terms

    N = c1.n * c2.n
    B, labels = coupled_layer_basis(N, cfg.kind)
    target = "1" + "0" * (N - 1) if cfg.probe == "flip" else "1" * N
    out = []
    for lam in cfg.lambdas:
        spec = build_coupled_layer(c1, c2, cfg.kind, cfg.h1, cfg.h2, lam, cfg.J)
        block = effective_block(spec, coupling_terms(c1, c2, cfg.kind, lam), basis=B, labels=labels, coupling=lam)
        out.append((float(lam), float(block.element(target, "0" * N).real)))
    return out
