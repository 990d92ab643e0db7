"""ZX diagrams, contraction and the closed-form duality oracle."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given

from conftest import codes
from ldpckw import f2
from ldpckw.code import ClassicalCode, ising3, open_chain
from ldpckw.errors import ResourceError
from ldpckw.f2 import BinaryMatrix
from ldpckw.pauli import PauliOperator
from ldpckw.zx import (HADAMARD, Edge, Leg, ZxDiagram, contract, fuse, kw_diagram, kw_matrix_oracle,
                       normalized_overlap, product_diagram)


def hadamard_n(n):
    out = np.ones((1, 1))
    for _ in range(n):
        out = np.kron(out, HADAMARD)
    return out


def test_kw_diagram_counts():
    d = kw_diagram(ClassicalCode.from_matrix([[1]]))
    assert d.colors == ("Z", "X") and len(d.edges) == 1 and d.outputs[0].hadamard
    d = kw_diagram(ising3())
    assert d.colors.count("Z") == 3 and d.colors.count("X") == 3
    assert len(d.edges) == 6 and all(leg.hadamard for leg in d.outputs)
    d = kw_diagram(open_chain(3))
    assert d.colors.count("X") == 2 and len(d.edges) == 4


def test_contract_small_cases():
    wire = ZxDiagram(("Z",), (), (Leg("i", 0),), (Leg("o", 0),))
    assert np.allclose(contract(wire), np.eye(2))
    M = contract(kw_diagram(ClassicalCode.from_matrix([[1]])))
    assert normalized_overlap(M, HADAMARD) == pytest.approx(1.0, abs=1e-12)


def test_contract_ising3_matches_oracle():
    c = ising3()
    assert normalized_overlap(contract(kw_diagram(c)), kw_matrix_oracle(c.H)) > 1 - 1e-10


def test_oracle_examples():
    assert np.allclose(kw_matrix_oracle(BinaryMatrix.identity(3)), hadamard_n(3))
    assert np.allclose(kw_matrix_oracle(BinaryMatrix([[1]])), HADAMARD)
    with pytest.raises(ResourceError):
        kw_matrix_oracle(BinaryMatrix.zeros(13, 12))


def test_oracle_intertwines_ising3():
    c = ising3()
    D = kw_matrix_oracle(c.H)
    for i in range(3):
        lhs = D @ PauliOperator.from_support(3, x=[i]).to_dense()
        rhs = PauliOperator.from_support(3, z=c.bit_support(i)).to_dense() @ D
        assert np.allclose(lhs, rhs)
    for a in range(3):
        lhs = D @ PauliOperator.from_support(3, z=c.check_support(a)).to_dense()
        rhs = PauliOperator.from_support(3, x=[a]).to_dense() @ D
        assert np.allclose(lhs, rhs)


def test_product_diagrams():
    one = ClassicalCode.from_matrix([[1]])
    T = contract(product_diagram(one, one, "tensor"))
    assert normalized_overlap(T, np.array([[1, 0, 0, 0], [0, 0, 0, 1]])) == pytest.approx(1.0)
    C = contract(product_diagram(one, one, "check"))
    assert normalized_overlap(C, HADAMARD @ T @ hadamard_n(2)) == pytest.approx(1.0)
    d = product_diagram(ising3(), ising3(), "tensor")
    assert (d.num_spiders, len(d.inputs), len(d.outputs)) == (9, 18, 9)


def test_contract_budget():
    with pytest.raises(ResourceError):
        contract(kw_diagram(ising3()), budget=4)


def test_dump_lists_every_spider():
    text = kw_diagram(ising3()).dump()
    assert len(text.splitlines()) == 6
    assert "out:t0~" in text


def test_fuse_preserves_semantics():
    # two Z spiders in a row: fusing gives the same map
    d = ZxDiagram(("Z", "Z", "X"), (Edge(0, 1), Edge(1, 2)), (Leg("a", 0), Leg("b", 1)), (Leg("o", 2),))
    fused = fuse(d, 0, 1)
    assert fused.num_spiders == 2
    assert normalized_overlap(contract(d), contract(fused)) > 1 - 1e-12
    with pytest.raises(ValueError):
        fuse(d, 1, 2)


@given(codes(5, 5))
def test_contract_kw_diagram_matches_oracle(c):
    assert normalized_overlap(contract(kw_diagram(c)), kw_matrix_oracle(c.H)) > 1 - 1e-10


@given(codes(2, 2), codes(2, 2))
def test_check_diagram_is_hadamard_conjugate(c1, c2):
    N = c1.n * c2.n
    T = contract(product_diagram(c1, c2, "tensor"))
    C = contract(product_diagram(c1, c2, "check"))
    assert normalized_overlap(C, hadamard_n(N) @ T @ hadamard_n(2 * N)) > 1 - 1e-10


@given(codes(4, 4))
def test_oracle_unitary_iff_square_full_rank(c):
    D = kw_matrix_oracle(c.H)
    unitary = D.shape[0] == D.shape[1] and np.allclose(D.conj().T @ D, np.eye(D.shape[1]))
    assert unitary == (c.n == c.m == f2.rank(c.H))
