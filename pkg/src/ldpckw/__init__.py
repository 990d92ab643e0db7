"""Kramers-Wannier dualities of classical LDPC codes as ZX diagrams and quantum processes."""

from .code import (ClassicalCode, check_product, defect_dual_basis, from_matrix, ising3, open_chain,
                   perp_code, pq_product, repetition_ring, tensor_product, transpose_code)
from .errors import AlistParseError, AnnihilationError, DegeneracyError, DimensionError, ResourceError
from .f2 import BinaryMatrix, RowOpTrace, kernel_basis, rank, rref_with_trace
from .pauli import (OBSTRUCTED, HamiltonianSpec, PauliOperator, build_coupled_layer, build_hamiltonian,
                    push_pauli)
from .process import QuantumProcess, extract_defect, extract_minimal_coupling, extract_product, resource_counts
from .sim import (DenseState, EffectiveBlock, apply_process, effective_block, exact_spectrum, fit_power_law,
                  prepare_state, process_matrix)
from .verify import verify_duality, verify_product
from .zx import contract, kw_diagram, kw_matrix_oracle, product_diagram

__version__ = "0.1.0"
