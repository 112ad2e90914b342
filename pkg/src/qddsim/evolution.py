"""Exact propagators in the lab and toggling frames.

Between pulses the Hamiltonian is constant, so a propagator is an ordered
product of segment exponentials (latest factor leftmost). In the lab frame
the segments all share the full Hamiltonian and the pulses appear as
explicit unitaries kron(sigma_axis, 1). In the toggling frame the pulses
disappear and each segment generator is

    H_seg = kron(1, h_bath) + sum_mu f_mu * kron(sigma_mu, a_mu)

with the sign triple (f_x, f_y, f_z) of the current interval. The two
frames are related exactly by the net pulse rotation:
lab = kron(pulse_operator, 1) @ toggling.

Because f_x = f_z * f_y, at most four distinct segment generators occur per
Hamiltonian; their eigensystems are cached so that different durations reuse
the same eigenvectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    AXES,
    expm_from_eigensystem,
    herm_eigensystem,
    identity,
    kron,
    partial_trace_qubit,
    pauli,
)
from .model import HamiltonianParts
from .sequence import PulseSchedule, SwitchingProfile, qdd_schedule, switching_profile


class TogglingEvolver:
    """Caches per-sign-triple eigensystems of one Hamiltonian.

    Reuse one instance across many (schedule, tau) cells of the same model;
    a cache entry is computed at most once per triple (idempotent under
    concurrent insertion, so instances may be shared between threads).
    """

    def __init__(self, parts: HamiltonianParts):
        self.parts = parts
        self._segment_cache: dict[tuple[int, int, int], tuple[np.ndarray, np.ndarray]] = {}
        self._bath_eig: tuple[np.ndarray, np.ndarray] | None = None
        self._full_eig: tuple[np.ndarray, np.ndarray] | None = None

    def _segment_eig(self, triple: tuple[int, int, int]):
        cached = self._segment_cache.get(triple)
        if cached is None:
            h_seg = kron(identity(2), self.parts.h_bath)
            for mu in range(3):
                h_seg = h_seg + triple[mu] * kron(pauli(AXES[mu]), self.parts.a_ops[mu])
            cached = herm_eigensystem(h_seg)
            self._segment_cache[triple] = cached
        return cached

    def bath_eigensystem(self):
        if self._bath_eig is None:
            self._bath_eig = herm_eigensystem(self.parts.h_bath)
        return self._bath_eig

    def full_eigensystem(self):
        if self._full_eig is None:
            self._full_eig = herm_eigensystem(self.parts.h_full)
        return self._full_eig

    def toggling(self, profile: SwitchingProfile) -> np.ndarray:
        dim = 2 * self.parts.bath_dim
        u = identity(dim)
        durations = profile.durations
        for i, triple in enumerate(map(tuple, profile.values)):
            w, v = self._segment_eig(triple)
            u = expm_from_eigensystem(w, v, durations[i]) @ u
        return u

    def lab(self, schedule: PulseSchedule) -> np.ndarray:
        d = self.parts.bath_dim
        w, v = self.full_eigensystem()
        u = identity(2 * d)
        t_prev = 0.0
        for ev in schedule.events:
            u = expm_from_eigensystem(w, v, ev.time - t_prev) @ u
            u = kron(pauli(ev.axis), identity(d)) @ u
            t_prev = ev.time
        return expm_from_eigensystem(w, v, schedule.tau - t_prev) @ u

    def bath_unitary(self, tau: float) -> np.ndarray:
        """exp(-i tau h_bath) on the bath space only."""
        w, v = self.bath_eigensystem()
        return expm_from_eigensystem(w, v, float(tau))


def toggling_propagator(
    parts: HamiltonianParts,
    profile: SwitchingProfile,
    evolver: TogglingEvolver | None = None,
) -> np.ndarray:
    """Ordered product of toggling-frame segment exponentials; unitary."""
    ev = evolver if evolver is not None else TogglingEvolver(parts)
    return ev.toggling(profile)


def lab_propagator(
    parts: HamiltonianParts,
    schedule: PulseSchedule,
    evolver: TogglingEvolver | None = None,
) -> np.ndarray:
    """Segment exponentials of the full Hamiltonian interleaved with pulses."""
    ev = evolver if evolver is not None else TogglingEvolver(parts)
    return ev.lab(schedule)


def bath_propagator(parts: HamiltonianParts, tau: float) -> np.ndarray:
    """Ideal decoupled evolution kron(1, exp(-i tau h_bath)) on the full space."""
    return kron(identity(2), TogglingEvolver(parts).bath_unitary(tau))


@dataclass
class PropagatorDecomposition:
    """Full-space propagator expanded in the qubit Pauli basis.

    u = kron(1, b0) + sum_mu kron(sigma_mu, b[mu]); the bath blocks inherit
    two constraints from unitarity of u:

        b0 b0+ + sum_mu b_mu b_mu+ = 1
        i sum_{mu,nu} eps(mu,nu,kappa) b_mu b_nu+ + (b0 b_kappa+ + h.c.) = 0
    """

    u: np.ndarray
    b0: np.ndarray
    b: tuple[np.ndarray, np.ndarray, np.ndarray]
    tau: float

    def reassembly_residual(self) -> float:
        rebuilt = kron(identity(2), self.b0)
        for mu in range(3):
            rebuilt = rebuilt + kron(pauli(AXES[mu]), self.b[mu])
        return float(np.abs(rebuilt - self.u).max())

    def unitarity_defects(self) -> tuple[float, float]:
        """Max-norm residuals of the completeness and cross conditions."""
        dim = self.b0.shape[0]
        complete = self.b0 @ self.b0.conj().T - identity(dim)
        for bm in self.b:
            complete = complete + bm @ bm.conj().T
        worst_cross = 0.0
        bx, by, bz = self.b
        # epsilon contraction unrolled per kappa: (mu, nu) pairs with sign
        cross_terms = {
            0: ((by, bz, +1), (bz, by, -1)),  # kappa = x
            1: ((bz, bx, +1), (bx, bz, -1)),  # kappa = y
            2: ((bx, by, +1), (by, bx, -1)),  # kappa = z
        }
        for kappa in range(3):
            acc = self.b0 @ self.b[kappa].conj().T
            acc = acc + acc.conj().T
            for left, right, sign in cross_terms[kappa]:
                acc = acc + 1j * sign * (left @ right.conj().T)
            worst_cross = max(worst_cross, float(np.abs(acc).max()))
        return float(np.abs(complete).max()), worst_cross


def pauli_decompose(u: np.ndarray, tau: float = 0.0) -> PropagatorDecomposition:
    """Extract the bath blocks b0, b_mu of a full-space operator.

    b0 is half the qubit partial trace of u; b_mu half the partial trace of
    (sigma_mu x 1) u.
    """
    d = u.shape[0] // 2
    b0 = 0.5 * partial_trace_qubit(u)
    b = tuple(
        0.5 * partial_trace_qubit(kron(pauli(axis), identity(d)) @ u) for axis in AXES
    )
    return PropagatorDecomposition(u=u, b0=b0, b=b, tau=tau)


def qdd_decomposition(
    parts: HamiltonianParts,
    n_x: int,
    n_z: int,
    tau: float,
    evolver: TogglingEvolver | None = None,
) -> PropagatorDecomposition:
    """Toggling-frame propagator of one QDD cell, already Pauli-decomposed."""
    profile = switching_profile(qdd_schedule(n_x, n_z, tau))
    u = toggling_propagator(parts, profile, evolver)
    return pauli_decompose(u, tau=tau)
