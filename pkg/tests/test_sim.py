"""State-vector execution, spectra and effective blocks."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import codes
from ldpckw.code import ClassicalCode, defect_dual_basis, ising3, open_chain, transpose_code
from ldpckw.errors import AnnihilationError, DegeneracyError, ResourceError
from ldpckw.pauli import HamiltonianSpec, PauliOperator, build_coupled_layer, build_hamiltonian, coupling_terms
from ldpckw.process import QuantumProcess, extract_defect, extract_minimal_coupling, extract_product
from ldpckw.sim import (DenseState, ScanConfig, apply_process, coupled_layer_basis, effective_block,
                        exact_spectrum, fit_power_law, prepare_state, process_matrix, run_scan)

RING2 = ClassicalCode.from_matrix([[1, 1], [1, 1]], "ring2")
PAIR = ClassicalCode.from_matrix([[1, 1]], "pair")


def ghz(a, b):
    v = np.zeros(8, dtype=complex)
    v[0], v[7] = a, b
    return DenseState(v)


def test_state_preparation_sectors():
    p = extract_defect(ising3())
    plus = DenseState.uniform(3)
    out, prob = apply_process(p, plus, "plus")
    assert out.fidelity(ghz(1, 0)) > 1 - 1e-12
    assert prob == pytest.approx(1.0)
    out, _ = apply_process(p, plus, "minus")
    assert out.fidelity(ghz(0, 1)) > 1 - 1e-12
    a, b = 0.6, 0.8j
    spec = a * np.array([1, 1]) / np.sqrt(2) + b * np.array([1, -1]) / np.sqrt(2)
    out, _ = apply_process(p, plus, spec)
    assert out.fidelity(ghz(a, b)) > 1 - 1e-12
    out, _ = apply_process(p, plus, {3: "minus"})
    assert out.fidelity(ghz(0, 1)) > 1 - 1e-12


def test_prepare_state():
    assert prepare_state(ising3()).fidelity(ghz(1, 0)) > 1 - 1e-12
    assert prepare_state(ising3(), "minus").fidelity(ghz(0, 1)) > 1 - 1e-12


def expect(state, m, x=(), z=()):
    return state.expectation(PauliOperator.from_support(m, x=sorted(x), z=sorted(z)).to_sparse())


@given(codes(4, 4))
def test_prepared_states_are_stabilized(c):
    dual = transpose_code(c)  # bits of the dual are the checks of c
    symmetric = prepare_state(c, "zero")  # the bare duality map applied to |+>^n
    broken = prepare_state(c)  # |+> ancillas select one symmetry sector
    for b in range(dual.m):
        assert expect(symmetric, c.m, z=dual.check_support(b)) == pytest.approx(1.0, abs=1e-10)
        assert expect(broken, c.m, z=dual.check_support(b)) == pytest.approx(1.0, abs=1e-10)
    for sym in dual.symmetries():
        assert expect(symmetric, c.m, x=sym) == pytest.approx(1.0, abs=1e-10)
    for g in defect_dual_basis(c):
        assert expect(broken, c.m, z=g) == pytest.approx(1.0, abs=1e-10)


def test_symmetric_preparation_of_ising3():
    assert prepare_state(ising3(), "zero").fidelity(ghz(1, 1)) > 1 - 1e-12


def test_open_chain_output_is_stabilizer_state():
    c = open_chain(3)
    state = prepare_state(c)
    for b in range(3):
        op = PauliOperator.from_support(2, z=transpose_code(c).check_support(b))
        assert state.expectation(op.to_sparse()) == pytest.approx(1.0, abs=1e-10)


def test_annihilation_is_signalled():
    p = extract_defect(ising3())
    minus_in = DenseState.product(["minus", "plus", "plus"])
    with pytest.raises(AnnihilationError):
        apply_process(p, minus_in)


def test_process_matrix_examples():
    one = ClassicalCode.from_matrix([[1]])
    assert np.allclose(process_matrix(extract_product(one, one, "tensor")), [[1, 0, 0, 0], [0, 0, 0, 1]])
    sq = ClassicalCode.from_matrix([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    U = process_matrix(extract_defect(sq))
    assert np.abs(U.conj().T @ U - np.eye(8)).max() < 1e-10
    big = extract_minimal_coupling(ClassicalCode.from_matrix(np.ones((7, 6), dtype=np.uint8)))
    with pytest.raises(ResourceError):
        process_matrix(big)


@given(codes(4, 4), st.integers(0, 2**32 - 1))
def test_apply_matches_matrix_and_is_linear(c, seed):
    rng = np.random.default_rng(seed)
    for p in (extract_defect(c), extract_minimal_coupling(c)):
        D = process_matrix(p)
        psi1 = rng.normal(size=2**c.n) + 1j * rng.normal(size=2**c.n)
        psi2 = rng.normal(size=2**c.n) + 1j * rng.normal(size=2**c.n)
        try:
            out, prob = apply_process(p, DenseState(psi1), renormalize=False)
        except AnnihilationError:
            continue
        assert np.allclose(out.amplitudes, D @ psi1, atol=1e-10)
        combo = 0.3 * psi1 - 1.7j * psi2
        lin, _ = apply_process(p, DenseState(combo), renormalize=False)
        assert np.allclose(lin.amplitudes, 0.3 * (D @ psi1) - 1.7j * (D @ psi2), atol=1e-10)


def test_exact_spectrum_examples():
    spec = HamiltonianSpec(1, ((-0.7, PauliOperator.from_label("X")),))
    assert np.allclose(exact_spectrum(spec), [-0.7, 0.7])
    ev = exact_spectrum(build_hamiltonian(ising3(), 1.0, 0.0), 3)
    assert np.allclose(ev, [-3, -3, 1])


def test_iterative_spectrum_matches_dense():
    from ldpckw.code import repetition_ring
    spec = build_hamiltonian(repetition_ring(15), 1.0, 0.8)
    low = exact_spectrum(spec, 4)
    assert low.shape == (4,)
    assert np.all(np.diff(low) >= -1e-12)
    small = build_hamiltonian(repetition_ring(8), 1.0, 0.8)
    dense = exact_spectrum(small)
    assert dense[0] == pytest.approx(-1.0 * 8 * 1.2, rel=0.2)


def test_strong_coupling_ground_space_dimension():
    lam = 50.0
    spec = build_coupled_layer(RING2, RING2, "tensor", 0.0, 0.0, lam)
    ev = exact_spectrum(spec)
    # 16 locked configurations sit far below the rest
    assert ev[16] - ev[15] > lam


def test_effective_block_commuting_limit():
    lam = 1e6
    spec = build_coupled_layer(RING2, RING2, "tensor", 0.0, 0.0, lam)
    B, labels = coupled_layer_basis(4, "tensor")
    block = effective_block(spec, coupling_terms(RING2, RING2, "tensor", lam), basis=B, labels=labels)
    # P H_Z P: the layer checks evaluated on the locked configurations
    expected = np.real(np.diag(B.conj().T @ spec.to_sparse().toarray() @ B))
    assert np.allclose(block.matrix, np.diag(expected), atol=1e-6)
    assert np.allclose(np.sort(expected), block.eigenvalues, atol=1e-6)


def test_effective_block_eigenvalues_and_hermiticity():
    lam = 20.0
    spec = build_coupled_layer(RING2, RING2, "tensor", 1.0, 0.5, lam)
    B, labels = coupled_layer_basis(4, "tensor")
    block = effective_block(spec, coupling_terms(RING2, RING2, "tensor", lam), basis=B, labels=labels, coupling=lam)
    assert np.abs(block.matrix - block.matrix.conj().T).max() < 1e-10
    assert np.allclose(np.linalg.eigvalsh(block.matrix), block.eigenvalues, atol=1e-8)
    assert block.residual < 0.1


def test_effective_block_degeneracy_error():
    # constrained space orthogonal to the true ground state
    spec = HamiltonianSpec(1, ((-1.0, PauliOperator.from_label("Z")),))
    constraint = HamiltonianSpec(1, ((1.0, PauliOperator.from_label("Z")),))
    with pytest.raises(DegeneracyError):
        effective_block(spec, constraint)


def test_second_order_tensor_law():
    (l1, a1), (l2, a2) = run_scan(RING2, RING2, ScanConfig("tensor", 1.0, 1.0, (100.0, 200.0), "flip"))
    assert abs(-a1 * l1 - 1) < 0.02
    assert abs(-a2 * l2 - 1) < 0.01


def test_plaquette_amplitude_oracle():
    """The all-site flip amplitude equals ``<1111| P V (R V)^3 |0000>`` to leading order.

    ``R`` is the resolvent of the coupling term on the excited states; the
    independent dense evaluation gives ``-5/16 lambda^-3`` for this instance.
    """
    lam = 80.0
    spec_v = build_coupled_layer(PAIR, PAIR, "check", 0.0, 0.0, 0.0).to_sparse().toarray()
    spec_0 = coupling_terms(PAIR, PAIR, "check", lam).to_sparse().toarray()
    e0_all, U = np.linalg.eigh(spec_0)
    e0 = e0_all[0]
    ground = np.abs(e0_all - e0) < 1e-9
    P = U[:, ground] @ U[:, ground].conj().T
    R = U[:, ~ground] @ np.diag(1.0 / (e0 - e0_all[~ground])) @ U[:, ~ground].conj().T
    B, labels = coupled_layer_basis(4, "check")
    V = spec_v
    fourth = B[:, labels.index("1111")].conj() @ P @ V @ R @ V @ R @ V @ R @ V @ P @ B[:, 0]
    assert fourth.real * lam**3 == pytest.approx(-5 / 16, rel=1e-9)
    # the numerical block agrees with that leading coefficient
    [(_, amp)] = run_scan(PAIR, PAIR, ScanConfig("check", 0.0, 0.0, (lam,), "plaquette"))
    assert amp * lam**3 == pytest.approx(-5 / 16, rel=1e-3)


def test_fit_power_law_examples():
    p, c, r = fit_power_law([(10, 1e-4), (20, 6.25e-6), (40, 3.90625e-7)])
    assert p == pytest.approx(-4.0, abs=1e-9) and c == pytest.approx(1.0, abs=1e-9) and r < 1e-9
    p, _, _ = fit_power_law([(10, 0.1), (100, 0.01)])
    assert p == pytest.approx(-1.0)
    with pytest.raises(ValueError):
        fit_power_law([(10, 0.0), (20, 1.0)])
    with pytest.raises(ValueError):
        fit_power_law([(20, 1.0), (10, 2.0)])


def test_dense_state_validation():
    with pytest.raises(ValueError):
        DenseState(np.ones(3))
    with pytest.raises(ValueError):
        apply_process(extract_defect(ising3()), DenseState.uniform(2))
    assert DenseState.basis(2, 3).norm == 1.0


def test_scan_config_validation():
    with pytest.raises(ValueError):
        ScanConfig(probe="ring")
