import numpy as np
import pytest

from witnesslp import (
    DimensionError,
    build_basis,
    min_eigenvalue,
    identity,
    permutation_images,
    shift_operator,
)
from witnesslp.opbasis import max_entangled_ket

from conftest import ket, proj


def test_shift_is_pauli_x_for_qubits():
    assert np.allclose(shift_operator(2).mat, [[0, 1], [1, 0]])


def test_shift_action_and_order():
    s3 = shift_operator(3).mat
    e0 = np.eye(3)[0]
    assert np.allclose(s3 @ e0, np.eye(3)[1])
    s4 = shift_operator(4).mat
    assert np.allclose(np.linalg.matrix_power(s4, 4), np.eye(4))
    # unitary but not Hermitian
    assert np.allclose(s4 @ s4.conj().T, np.eye(4))
    assert not np.allclose(s4, s4.conj().T)


def test_shift_rejects_small_dimension():
    with pytest.raises(DimensionError):
        shift_operator(1)


def test_basis3_matches_explicit_kets(basis3):
    want_o1 = (proj(ket(3, 0, 1)) + proj(ket(3, 1, 2)) + proj(ket(3, 2, 0))) / 3
    want_o2 = (proj(ket(3, 0, 2)) + proj(ket(3, 1, 0)) + proj(ket(3, 2, 1))) / 3
    psi = (ket(3, 0, 0) + ket(3, 1, 1) + ket(3, 2, 2)) / np.sqrt(3)
    assert np.allclose(basis3.ops[0].mat, want_o1, atol=0)
    assert np.allclose(basis3.ops[1].mat, want_o2, atol=0)
    assert np.allclose(basis3.ops[2].mat, proj(psi), atol=1e-15)


def test_basis4_matches_explicit_kets(basis4):
    want_o3 = (
        proj(ket(4, 0, 3)) + proj(ket(4, 1, 0)) + proj(ket(4, 2, 1)) + proj(ket(4, 3, 2))
    ) / 4
    assert np.allclose(basis4.ops[2].mat, want_o3, atol=0)
    want_o1 = (
        proj(ket(4, 0, 1)) + proj(ket(4, 1, 2)) + proj(ket(4, 2, 3)) + proj(ket(4, 3, 0))
    ) / 4
    assert np.allclose(basis4.ops[0].mat, want_o1, atol=0)


def test_basis2_members_and_orthogonality(basis2):
    want_o1 = (proj(ket(2, 0, 1)) + proj(ket(2, 1, 0))) / 2
    bell = (ket(2, 0, 0) + ket(2, 1, 1)) / np.sqrt(2)
    assert np.allclose(basis2.ops[0].mat, want_o1)
    assert np.allclose(basis2.ops[1].mat, proj(bell), atol=1e-15)
    assert np.max(np.abs(basis2.ops[0].mat @ basis2.ops[1].mat)) < 1e-12


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_basis_structure(n):
    basis = build_basis(n)
    assert len(basis.ops) == n
    for i, oi in enumerate(basis.ops):
        assert oi.trace() == pytest.approx(1.0, abs=1e-12)
        assert min_eigenvalue(oi) >= -1e-12
        for j, oj in enumerate(basis.ops):
            if i != j:
                assert np.max(np.abs(oi.mat @ oj.mat)) < 1e-12
    # the last member projects on a single vector
    evals = np.linalg.eigvalsh(basis.ops[-1].mat)
    assert np.sum(evals > 0.5) == 1
    psi = max_entangled_ket(n)
    assert np.allclose(basis.ops[-1].mat, proj(psi), atol=1e-15)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_basis_sum_below_identity(n):
    basis = build_basis(n)
    total = sum(o.mat for o in basis.ops)
    gap = identity(n * n).mat - total
    assert np.linalg.eigvalsh(gap)[0] >= -1e-12


def test_permutation_images_known_maps(basis2, basis3, basis4):
    assert permutation_images(basis2) == {1: 1, 2: 2}
    assert permutation_images(basis3) == {1: 2, 2: 1, 3: 3}
    assert permutation_images(basis4) == {1: 3, 2: 2, 3: 1, 4: 4}


def test_permutation_images_n5():
    # direct conjugation oracle: k maps to n - k for the cyclic members
    assert permutation_images(build_basis(5)) == {1: 4, 2: 3, 3: 2, 4: 1, 5: 5}
