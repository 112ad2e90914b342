import numpy as np
import pytest

import qddsim as q
from qddsim.linalg import AXES, embed, identity, kron, pauli
from qddsim.model import coupling_components

from conftest import PRIMARY_SEED


def test_draw_is_deterministic():
    a = q.random_couplings(PRIMARY_SEED, 3)
    b = q.random_couplings(PRIMARY_SEED, 3)
    assert a.to_json() == b.to_json()
    for key in a.j0:
        assert np.array_equal(a.j0[key], b.j0[key])


def test_anisotropic_entries_in_range():
    c = q.random_couplings(9, 4)
    for mat in list(c.j0.values()) + list(c.j1.values()):
        assert mat.shape == (3, 3)
        assert np.all(np.abs(mat) <= 1.0)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_isotropic_matrices_scalar_multiples_of_identity(seed):
    c = q.random_couplings(seed, 3, q.SymmetryClass.ISOTROPIC)
    for mat in list(c.j0.values()) + list(c.j1.values()):
        assert np.array_equal(mat, mat[0, 0] * np.eye(3))
        assert abs(mat[0, 0]) <= 1.0


def test_chain_topology_masks_couplings():
    c = q.random_couplings(5, 3, topology=q.Topology.CHAIN)
    assert set(c.j1) == {1}
    assert set(c.j0) == {(1, 2), (2, 3)}


def test_m_zero_rejected():
    with pytest.raises(ValueError):
        q.random_couplings(1, 0)


def test_zero_couplings_zero_hamiltonian():
    c = q.random_couplings(1, 2)
    for key in c.j0:
        c.j0[key] = np.zeros((3, 3))
    for key in c.j1:
        c.j1[key] = np.zeros((3, 3))
    parts = q.build_hamiltonian(c)
    assert np.abs(parts.h_full).max() == 0.0


def test_single_pair_heisenberg():
    c = q.CouplingSet(
        m=1,
        topology=q.Topology.CENTRAL_SPIN,
        symmetry_class=q.SymmetryClass.ISOTROPIC,
        alpha=1.0,
        lam=1.0,
        seed=0,
        j0={},
        j1={1: np.eye(3)},
    )
    parts = q.build_hamiltonian(c)
    expected = sum(kron(pauli(a), pauli(a)) for a in AXES)
    assert np.abs(parts.h_full - expected).max() < 1e-15


def _direct_full_space(c: q.CouplingSet) -> np.ndarray:
    """Independent assembly: embed every Pauli pair on the full (M+1)-site space."""
    n = c.m + 1
    h = np.zeros((2**n, 2**n), dtype=complex)
    for (i, j), mat in c.j0.items():
        for k in range(3):
            for l in range(3):
                h += mat[k, l] * embed(pauli(AXES[k]), i, n) @ embed(pauli(AXES[l]), j, n)
    for i, mat in c.j1.items():
        for mu in range(3):
            for k in range(3):
                h += mat[mu, k] * embed(pauli(AXES[mu]), 0, n) @ embed(pauli(AXES[k]), i, n)
    return h


def test_full_hamiltonian_matches_direct_embedding(aniso3):
    c, parts = aniso3
    direct = _direct_full_space(c)
    assert np.abs(parts.h_full - direct).max() <= 1e-13
    assert np.abs(parts.h_full - parts.h_full.conj().T).max() <= 1e-13


def test_parts_reassemble_h_full(aniso3):
    _, parts = aniso3
    rebuilt = kron(identity(2), parts.h_bath)
    for mu, a in enumerate(AXES):
        rebuilt = rebuilt + kron(pauli(a), parts.a_ops[mu])
    assert np.abs(rebuilt - parts.h_full).max() <= 1e-13


def test_coupling_operators_recovered_by_projection(aniso3):
    _, parts = aniso3
    for a_stored, a_projected in zip(parts.a_ops, coupling_components(parts)):
        assert np.abs(a_stored - a_projected).max() <= 1e-13


def test_h_bath_commutes_with_qubit_paulis(aniso3):
    _, parts = aniso3
    hb_full = kron(identity(2), parts.h_bath)
    for a in AXES:
        s_full = kron(pauli(a), identity(parts.bath_dim))
        assert np.abs(hb_full @ s_full - s_full @ hb_full).max() < 1e-12


@pytest.mark.parametrize("seed", range(20))
def test_isotropic_su2_invariant_many_seeds(seed):
    c = q.random_couplings(seed, 2, q.SymmetryClass.ISOTROPIC)
    assert q.su2_defect(q.build_hamiltonian(c)) <= 1e-12


def test_anisotropic_defect_large(aniso3):
    _, parts = aniso3
    assert q.su2_defect(parts) > 0.1


def test_zero_hamiltonian_defect_zero():
    c = q.random_couplings(1, 2)
    for key in c.j0:
        c.j0[key] = np.zeros((3, 3))
    for key in c.j1:
        c.j1[key] = np.zeros((3, 3))
    assert q.su2_defect(q.build_hamiltonian(c)) == 0.0


def test_json_round_trip_bit_exact(aniso3):
    c, _ = aniso3
    text = c.to_json()
    back = q.CouplingSet.from_json(text)
    assert back.to_json() == text
    for key in c.j0:
        assert np.array_equal(back.j0[key], c.j0[key])
    for key in c.j1:
        assert np.array_equal(back.j1[key], c.j1[key])
    assert (back.m, back.seed, back.alpha, back.lam) == (c.m, c.seed, c.alpha, c.lam)
    assert back.topology is c.topology and back.symmetry_class is c.symmetry_class
