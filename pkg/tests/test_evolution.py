import numpy as np
import pytest
from scipy.linalg import expm as pade_expm

import qddsim as q
from qddsim.linalg import AXES, PauliAxis, identity, kron, pauli, unitarity_defect

from conftest import PRIMARY_SEED


def brute_toggling(parts, profile):
    """Oracle: multiply Pade-exponential segments directly."""
    d = parts.bath_dim
    u = np.eye(2 * d, dtype=complex)
    for i, (fx, fy, fz) in enumerate(profile.values):
        h = kron(identity(2), parts.h_bath)
        for f, axis, a in zip((fx, fy, fz), AXES, parts.a_ops):
            h = h + f * kron(pauli(axis), a)
        u = pade_expm(-1j * profile.durations[i] * h) @ u
    return u


def brute_lab(parts, schedule):
    d = parts.bath_dim
    u = np.eye(2 * d, dtype=complex)
    t_prev = 0.0
    for ev in schedule.events:
        u = pade_expm(-1j * (ev.time - t_prev) * parts.h_full) @ u
        u = kron(pauli(ev.axis), identity(d)) @ u
        t_prev = ev.time
    return pade_expm(-1j * (schedule.tau - t_prev) * parts.h_full) @ u


def test_toggling_decoupled_qubit(aniso2):
    c, parts = aniso2
    stripped = q.build_hamiltonian(
        q.CouplingSet(
            m=c.m, topology=c.topology, symmetry_class=c.symmetry_class,
            alpha=c.alpha, lam=c.lam, seed=c.seed,
            j0=dict(c.j0), j1={i: np.zeros((3, 3)) for i in c.j1},
        )
    )
    prof = q.switching_profile(q.qdd_schedule(2, 1, 0.6))
    u = q.toggling_propagator(stripped, prof)
    expected = kron(identity(2), q.herm_expm(stripped.h_bath, 0.6))
    assert np.abs(u - expected).max() < 1e-12


def test_toggling_small_tau_limit(aniso2):
    _, parts = aniso2
    prof = q.switching_profile(q.qdd_schedule(1, 1, 1e-13))
    u = q.toggling_propagator(parts, prof)
    assert np.abs(u - np.eye(2 * parts.bath_dim)).max() < 1e-11


def test_toggling_matches_brute_force(aniso1):
    _, parts = aniso1
    prof = q.switching_profile(q.qdd_schedule(1, 1, 0.1))
    assert np.abs(q.toggling_propagator(parts, prof) - brute_toggling(parts, prof)).max() < 1e-12


def test_lab_no_pulses_single_segment(aniso2):
    _, parts = aniso2
    # a schedule with zero pulses is one full-Hamiltonian segment
    s = q.qdd_schedule(0, 0, 0.8)
    assert len(s.events) == 0
    u = q.lab_propagator(parts, s)
    assert np.abs(u - q.herm_expm(parts.h_full, 0.8)).max() < 1e-12


def test_lab_pure_pulses_reproduce_pulse_operator():
    c = q.random_couplings(3, 2)
    for key in c.j0:
        c.j0[key] = np.zeros((3, 3))
    for key in c.j1:
        c.j1[key] = np.zeros((3, 3))
    parts = q.build_hamiltonian(c)
    for n_x, n_z in [(1, 1), (2, 1), (0, 3), (2, 2)]:
        s = q.qdd_schedule(n_x, n_z, 1.0)
        u = q.lab_propagator(parts, s)
        expected = kron(q.pulse_operator(n_x, n_z), identity(parts.bath_dim))
        assert np.abs(u - expected).max() < 1e-12


def test_lab_matches_brute_force(aniso1):
    _, parts = aniso1
    s = q.qdd_schedule(1, 1, 0.1)
    assert np.abs(q.lab_propagator(parts, s) - brute_lab(parts, s)).max() < 1e-12


def test_bath_propagator_trivial_bath():
    # a single bath spin has no intra-bath bonds, so the ideal bath
    # evolution is the identity at every duration
    c = q.random_couplings(4, 1)
    parts = q.build_hamiltonian(c)
    assert np.abs(parts.h_bath).max() == 0.0
    assert np.abs(q.bath_propagator(parts, 0.9) - np.eye(4)).max() <= 1e-13


def test_bath_propagator(aniso2):
    _, parts = aniso2
    u = q.bath_propagator(parts, 0.3)
    expected = kron(identity(2), pade_expm(-1j * 0.3 * parts.h_bath))
    assert np.abs(u - expected).max() < 1e-12
    assert np.abs(q.bath_propagator(parts, 0.0) - np.eye(2 * parts.bath_dim)).max() <= 1e-13


@pytest.mark.parametrize("topology", [q.Topology.CENTRAL_SPIN, q.Topology.CHAIN])
@pytest.mark.parametrize("seed", [PRIMARY_SEED, 7])
def test_frame_equivalence(topology, seed):
    c = q.random_couplings(seed, 2, topology=topology)
    parts = q.build_hamiltonian(c)
    ev = q.TogglingEvolver(parts)
    d = parts.bath_dim
    for n_x in range(5):
        for n_z in range(5):
            s = q.qdd_schedule(n_x, n_z, 0.7)
            u_lab = q.lab_propagator(parts, s, ev)
            u_tog = q.toggling_propagator(parts, q.switching_profile(s), ev)
            p_full = kron(q.pulse_operator(n_x, n_z), identity(d))
            assert np.abs(u_lab - p_full @ u_tog).max() <= 1e-12
            assert unitarity_defect(u_lab) <= 1e-12
            assert unitarity_defect(u_tog) <= 1e-12


def test_many_segments_stay_unitary(aniso3):
    _, parts = aniso3
    s = q.qdd_schedule(8, 8, 2.0)  # 80 pulses, 81 segments
    u = q.lab_propagator(parts, s)
    assert unitarity_defect(u) <= 1e-12


def test_decompose_single_component():
    rng = np.random.default_rng(1)
    v = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    dec = q.pauli_decompose(kron(pauli(PauliAxis.X), v))
    assert np.abs(dec.b[0] - v).max() < 1e-14
    assert np.abs(dec.b0).max() < 1e-14
    assert np.abs(dec.b[1]).max() < 1e-14 and np.abs(dec.b[2]).max() < 1e-14


def test_decompose_identity():
    dec = q.pauli_decompose(np.eye(8))
    assert np.allclose(dec.b0, np.eye(4))
    assert all(np.abs(b).max() < 1e-14 for b in dec.b)


def test_decompose_reassembles(iso3):
    _, parts = iso3
    dec = q.qdd_decomposition(parts, 2, 1, 0.4)
    assert dec.reassembly_residual() <= 1e-12


@pytest.mark.parametrize("fixture", ["aniso3", "iso3"])
def test_unitarity_conditions(fixture, request):
    _, parts = request.getfixturevalue(fixture)
    dec = q.qdd_decomposition(parts, 2, 1, 0.37)
    complete, cross = dec.unitarity_defects()
    assert complete <= 1e-12
    assert cross <= 1e-12


@pytest.mark.parametrize("n_x,n_z", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_bath_block_order_bound(aniso3, n_x, n_z):
    # each coupling block must shrink at least as fast as tau^(min+1)
    _, parts = aniso3
    ev = q.TogglingEvolver(parts)
    taus = np.geomspace(0.003, 0.03, 7)
    norms = []
    for tau in taus:
        dec = q.qdd_decomposition(parts, n_x, n_z, tau, ev)
        norms.append(max(np.abs(b).max() for b in dec.b))
    slope = np.polyfit(np.log(taus), np.log(norms), 1)[0]
    assert slope >= min(n_x, n_z) + 1 - 0.2
