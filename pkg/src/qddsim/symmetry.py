"""Numerical machinery behind the symmetry-doubling argument.

The decohering power of a propagator u = kron(1, b0) + sum kron(sigma_mu,
b_mu) is carried by bath traces against the initial bath state:

    b_mu     = Tr[ b0  rho_B b_mu+ ]
    b_munu   = Tr[ b_mu rho_B b_nu+ ]

The reduced evolved qubit state splits exactly into four pieces (T1..T4)
built from these traces; the piece linear in b_mu is the leading
decoherence channel. If the Hamiltonian commutes with global pi rotations
and rho_B is maximally mixed, the parity of the bath blocks under bath-site
rotations (b0 even, b_mu odd except along the rotation axis) forces every
b_mu to vanish, which promotes the leading channel to the b_munu terms and
doubles the decay exponent of the distance norm.

The hermitian-conjugate placement in T3 is fixed by requiring the four-term
split to reproduce the directly computed reduced state exactly: the
commutator d_mu = [sigma_mu, rho_S] pairs with conj(b_mu).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .evolution import PropagatorDecomposition
from .linalg import AXES, PauliAxis, embed, partial_trace_bath, pauli
from .metrics import InitialState


def b_coefficients(
    dec: PropagatorDecomposition, rho_b: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Bath traces (b_vector, b_matrix) of a decomposition against rho_b."""
    if rho_b.shape[0] != dec.b0.shape[0]:
        raise ValueError("bath state dimension does not match decomposition")
    b_vec = np.array(
        [np.trace(dec.b0 @ rho_b @ dec.b[mu].conj().T) for mu in range(3)]
    )
    b_mat = np.array(
        [
            [np.trace(dec.b[mu] @ rho_b @ dec.b[nu].conj().T) for nu in range(3)]
            for mu in range(3)
        ]
    )
    return b_vec, b_mat


def t_decomposition(
    state: InitialState, dec: PropagatorDecomposition
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """The four-term split T1..T4 of the reduced evolved state.

    `dec` must come from the toggling-frame propagator. The sum
    T1 + T2 + T3 + T4 equals Tr_bath(u rho0 u+) identically.
    """
    rho_s, rho_b = state.rho_s, state.rho_b
    b_vec, b_mat = b_coefficients(dec, rho_b)
    sig = [pauli(a) for a in AXES]

    t1 = rho_s * np.trace(rho_b)
    for mu in range(3):
        t1 = t1 + (sig[mu] @ rho_s @ sig[mu] - rho_s) * b_mat[mu, mu]

    t2 = np.zeros((2, 2), dtype=complex)
    for mu in range(3):
        for nu in range(3):
            if mu != nu:
                t2 = t2 + sig[mu] @ rho_s @ sig[nu] * b_mat[mu, nu]

    t3 = np.zeros((2, 2), dtype=complex)
    for mu in range(3):
        d_mu = sig[mu] @ rho_s - rho_s @ sig[mu]
        t3 = t3 + d_mu * np.conj(b_vec[mu])

    # -i sum eps(mu, nu, kappa) rho_S sigma_kappa b[nu, mu], six terms unrolled
    t4 = -1j * (
        rho_s @ sig[2] * (b_mat[1, 0] - b_mat[0, 1])
        + rho_s @ sig[0] * (b_mat[2, 1] - b_mat[1, 2])
        + rho_s @ sig[1] * (b_mat[0, 2] - b_mat[2, 0])
    )
    return t1, t2, t3, t4


def t_residual(state: InitialState, dec: PropagatorDecomposition) -> float:
    """Max-norm gap between the T sum and the directly reduced evolved state."""
    direct = partial_trace_bath(dec.u @ state.rho0 @ dec.u.conj().T)
    t1, t2, t3, t4 = t_decomposition(state, dec)
    return float(np.abs(t1 + t2 + t3 + t4 - direct).max())


def bath_rotation(nu: PauliAxis, m: int) -> np.ndarray:
    """Global bath pi rotation: the product of sigma_nu over all bath sites.

    Equal to the true exp(-i pi/2 sigma_nu) product up to a global phase,
    which conjugation never sees.
    """
    rot = np.eye(2**m, dtype=complex)
    for site in range(m):
        rot = rot @ embed(pauli(nu), site, m)
    return rot


@dataclass
class ParityDefects:
    """Deviation of the bath blocks from their rotation parities about `nu`."""

    nu: PauliAxis
    b0_even: float
    parallel_even: float
    perpendicular_odd: float

    @property
    def worst(self) -> float:
        return max(self.b0_even, self.parallel_even, self.perpendicular_odd)


def rotation_parities(
    dec: PropagatorDecomposition, nu: PauliAxis, m: int
) -> ParityDefects:
    """Parity defects of b0 and b_mu under the bath rotation about `nu`.

    For a rotation-invariant Hamiltonian, b0 and b_nu are even and the two
    perpendicular blocks odd; all three defects then vanish to rounding.
    """
    rot = bath_rotation(nu, m)
    conj = lambda x: rot @ x @ rot.conj().T
    b0_even = float(np.abs(conj(dec.b0) - dec.b0).max())
    parallel = float(np.abs(conj(dec.b[nu.index]) - dec.b[nu.index]).max())
    perp = max(
        float(np.abs(conj(dec.b[mu]) + dec.b[mu]).max())
        for mu in range(3)
        if mu != nu.index
    )
    return ParityDefects(
        nu=nu, b0_even=b0_even, parallel_even=parallel, perpendicular_odd=perp
    )


@dataclass
class SymmetryReport:
    """Everything the symmetry-check command emits for one cell."""

    b_vector: np.ndarray
    b_matrix: np.ndarray
    parity_defects: tuple[ParityDefects, ParityDefects, ParityDefects]
    t_residuals: tuple[float, float, float]

    def to_json(self) -> str:
        doc = {
            "b_vector": {
                a.value: [float(v.real), float(v.imag)]
                for a, v in zip(AXES, self.b_vector)
            },
            "b_matrix": {
                f"{am.value},{an.value}": [
                    float(self.b_matrix[m, n].real),
                    float(self.b_matrix[m, n].imag),
                ]
                for m, am in enumerate(AXES)
                for n, an in enumerate(AXES)
            },
            "max_abs_b_vector": float(np.abs(self.b_vector).max()),
            "max_abs_b_offdiag": float(
                max(
                    abs(self.b_matrix[m, n])
                    for m in range(3)
                    for n in range(3)
                    if m != n
                )
            ),
            "parity_defects": {
                p.nu.value: {
                    "b0_even": p.b0_even,
                    "parallel_even": p.parallel_even,
                    "perpendicular_odd": p.perpendicular_odd,
                }
                for p in self.parity_defects
            },
            "t_residuals": {
                a.value: r for a, r in zip(AXES, self.t_residuals)
            },
        }
        return json.dumps(doc, indent=2)


def symmetry_report(
    dec: PropagatorDecomposition,
    states: tuple[InitialState, InitialState, InitialState],
    m: int,
) -> SymmetryReport:
    """Assemble b coefficients, parity defects and T residuals in one pass."""
    b_vec, b_mat = b_coefficients(dec, states[0].rho_b)
    parities = tuple(rotation_parities(dec, nu, m) for nu in AXES)
    residuals = tuple(t_residual(st, dec) for st in states)
    return SymmetryReport(
        b_vector=b_vec,
        b_matrix=b_mat,
        parity_defects=parities,
        t_residuals=residuals,
    )
