"""Initial states and the distance norm between real and ideal evolution.

The qubit starts in |gamma><gamma|, the +1 eigenstate of sigma_gamma, for
each gamma in {x, y, z}. The bath starts either in a pure product state of
single-spin eigenstates or maximally mixed (1/D, the infinite-temperature
state). The figure of merit is

    d^2 = (1/3) sum_gamma Tr[ Delta_gamma^2 ],
    Delta_gamma = Tr_bath( ideal rho0 ideal+  -  real rho0 real+ ),

where the ideal evolution decouples the qubit completely (bath evolves under
h_bath alone, qubit under the net pulse rotation). Delta_gamma is Hermitian
and traceless, so d_gamma is its Frobenius norm.

Since the lab propagator equals kron(P, 1) times the toggling one and the
net rotation P commutes with the ideal bath evolution, conjugation by P
drops out of Tr[Delta^2]; `frame_reduced_distance` exploits that to evaluate
d from the toggling propagator without ever building P.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .linalg import AXES, PauliAxis, identity, kron, partial_trace_bath
from .model import HamiltonianParts
from .evolution import TogglingEvolver, toggling_propagator
from .sequence import qdd_schedule, switching_profile


class BathKind(enum.Enum):
    PRODUCT = "product"
    MAXIMALLY_MIXED = "maximally_mixed"


def pauli_ket(axis: PauliAxis, sign: int = +1) -> np.ndarray:
    """Normalized eigenvector of sigma_axis with eigenvalue `sign`."""
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    if axis is PauliAxis.Z:
        return np.array([1.0, 0.0], dtype=complex) if sign > 0 else np.array([0.0, 1.0], dtype=complex)
    if axis is PauliAxis.X:
        return np.array([1.0, sign], dtype=complex) / np.sqrt(2)
    return np.array([1.0, 1j * sign], dtype=complex) / np.sqrt(2)


def default_directions(m: int) -> list[tuple[PauliAxis, int]]:
    """Product-bath default: axes cycled x, y, z, ... with +1 signs."""
    return [(AXES[i % 3], +1) for i in range(m)]


def random_directions(seed: int, m: int) -> list[tuple[PauliAxis, int]]:
    """Seeded random per-spin axes and signs, for direction-choice robustness."""
    rng = np.random.default_rng(seed)
    return [(AXES[rng.integers(3)], int(rng.integers(2)) * 2 - 1) for _ in range(m)]


@dataclass
class InitialState:
    """Product initial state rho_S x rho_B of qubit and bath."""

    gamma: PauliAxis
    rho_s: np.ndarray
    bath_kind: BathKind
    bath_directions: list[tuple[PauliAxis, int]] | None
    rho_b: np.ndarray

    @property
    def rho0(self) -> np.ndarray:
        return kron(self.rho_s, self.rho_b)


def bath_state(
    bath_kind: BathKind,
    m: int,
    directions: Sequence[tuple[PauliAxis, int]] | None = None,
) -> np.ndarray:
    """Bath density matrix: product of single-spin projectors, or 1/D."""
    dim = 2**m
    if bath_kind is BathKind.MAXIMALLY_MIXED:
        if directions is not None:
            raise ValueError("directions apply only to the product bath")
        return identity(dim) / dim
    if directions is None:
        raise ValueError("product bath needs per-spin directions")
    if len(directions) != m:
        raise ValueError(f"expected {m} directions, got {len(directions)}")
    rho = np.array([[1.0 + 0j]])
    for axis, sign in directions:
        ket = pauli_ket(axis, sign)
        rho = kron(rho, np.outer(ket, ket.conj()))
    return rho


def make_state(
    gamma: PauliAxis,
    bath_kind: BathKind,
    m: int,
    directions: Sequence[tuple[PauliAxis, int]] | None = None,
) -> InitialState:
    ket = pauli_ket(gamma, +1)
    return InitialState(
        gamma=gamma,
        rho_s=np.outer(ket, ket.conj()),
        bath_kind=bath_kind,
        bath_directions=list(directions) if directions is not None else None,
        rho_b=bath_state(bath_kind, m, directions),
    )


def make_states(
    bath_kind: BathKind,
    m: int,
    directions: Sequence[tuple[PauliAxis, int]] | None = None,
) -> tuple[InitialState, InitialState, InitialState]:
    """The three qubit preparations gamma = x, y, z over one shared bath state."""
    rho_b = bath_state(bath_kind, m, directions)
    states = []
    for gamma in AXES:
        ket = pauli_ket(gamma, +1)
        states.append(
            InitialState(
                gamma=gamma,
                rho_s=np.outer(ket, ket.conj()),
                bath_kind=bath_kind,
                bath_directions=list(directions) if directions is not None else None,
                rho_b=rho_b,
            )
        )
    return tuple(states)


@dataclass
class DistanceResult:
    """d and its per-preparation components at one duration tau."""

    tau: float
    d: float
    d_gamma: tuple[float, float, float]
    delta_gamma: tuple[np.ndarray, np.ndarray, np.ndarray]


def delta(
    state: InitialState,
    u_real: np.ndarray,
    u_b: np.ndarray,
    p_op: np.ndarray,
) -> np.ndarray:
    """Reduced-state difference between ideal and real evolution.

    `u_real` must be the lab-frame propagator (pulses included), `u_b` the
    full-space ideal bath evolution, and `p_op` the 2x2 net pulse rotation.
    """
    d = state.rho_b.shape[0]
    if u_real.shape[0] != 2 * d or u_b.shape[0] != 2 * d:
        raise ValueError("propagators must act on the full qubit x bath space")
    rho0 = state.rho0
    p_full = kron(p_op, identity(d))
    ideal = u_b @ p_full @ rho0 @ p_full.conj().T @ u_b.conj().T
    real = u_real @ rho0 @ u_real.conj().T
    return partial_trace_bath(ideal - real)


def _distance_from_deltas(tau, deltas) -> DistanceResult:
    d_gamma = tuple(
        float(np.sqrt(max(np.trace(dg @ dg).real, 0.0))) for dg in deltas
    )
    d = float(np.sqrt(sum(x * x for x in d_gamma) / 3.0))
    return DistanceResult(tau=float(tau), d=d, d_gamma=d_gamma, delta_gamma=tuple(deltas))


def norm_distance(
    states: Sequence[InitialState],
    u_real: np.ndarray,
    u_b: np.ndarray,
    p_op: np.ndarray,
    tau: float = 0.0,
) -> DistanceResult:
    """d over the three qubit preparations, lab-frame evaluation."""
    _check_states(states)
    deltas = [delta(st, u_real, u_b, p_op) for st in states]
    return _distance_from_deltas(tau, deltas)


def frame_reduced_distance(
    states: Sequence[InitialState],
    u_tog: np.ndarray,
    u_bath: np.ndarray,
    tau: float = 0.0,
) -> DistanceResult:
    """Same d as `norm_distance`, from the toggling propagator.

    `u_bath` is the bath-space-only unitary exp(-i tau h_bath). The pulse
    rotation cancels inside Tr[Delta^2], so the toggling frame gives the
    identical result at lower cost.
    """
    _check_states(states)
    d = u_bath.shape[0]
    deltas = []
    for st in states:
        ideal = kron(st.rho_s, u_bath @ st.rho_b @ u_bath.conj().T)
        real = u_tog @ st.rho0 @ u_tog.conj().T
        deltas.append(partial_trace_bath(ideal - real))
    return _distance_from_deltas(tau, deltas)


def _check_states(states: Sequence[InitialState]) -> None:
    if len(states) != 3 or tuple(st.gamma for st in states) != AXES:
        raise ValueError("need the three preparations in (x, y, z) order")
    if not (states[0].rho_b is states[1].rho_b is states[2].rho_b):
        if not all(np.array_equal(states[0].rho_b, st.rho_b) for st in states[1:]):
            raise ValueError("the three preparations must share one bath state")


def qdd_distance(
    parts: HamiltonianParts,
    states: Sequence[InitialState],
    n_x: int,
    n_z: int,
    tau: float,
    evolver: TogglingEvolver | None = None,
) -> DistanceResult:
    """d for one QDD cell at one duration, via the toggling frame."""
    ev = evolver if evolver is not None else TogglingEvolver(parts)
    profile = switching_profile(qdd_schedule(n_x, n_z, tau))
    u_tog = toggling_propagator(parts, profile, ev)
    return frame_reduced_distance(states, u_tog, ev.bath_unitary(tau), tau=tau)


def series_csv(results: Sequence[DistanceResult]) -> str:
    """CSV rows `tau,d,dx,dy,dz`, scientific notation, 17 significant digits."""
    lines = ["tau,d,dx,dy,dz"]
    for r in results:
        fields = (r.tau, r.d, *r.d_gamma)
        lines.append(",".join(f"{x:.16e}" for x in fields))
    return "\n".join(lines) + "\n"
