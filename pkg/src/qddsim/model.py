"""Central-spin and spin-chain Hamiltonians with seeded random couplings.

A model is one qubit (site 0) coupled to M bath spins (sites 1..M). Bath
spins couple pairwise through 3x3 matrices J0[i, j] and to the qubit through
3x3 matrices J1[i]:

    H = sum_{i<j} sigma^(i) . J0[i,j] . sigma^(j)
      + sum_i    sigma^(0) . J1[i]   . sigma^(i)

Two symmetry classes are supported. In the anisotropic class every matrix
entry is an independent uniform draw from [-1, 1]; the model then has no
continuous symmetry. In the isotropic class each matrix is a scalar multiple
of the identity (J0[i,j] = alpha*lam*j0*1, J1[i] = lam*j1*1 with scalars j0,
j1 in [-1, 1]), which makes H invariant under global spin rotations.

Couplings are fixed once from a 64-bit seed and are deterministic across
platforms: draws come from a splitmix64 stream, J0 pairs first in
lexicographic (i, j) order with row-major entries, then J1 in ascending i.
Pairs or sites excluded by the topology are zero and consume no draws.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

import numpy as np

from .linalg import AXES, embed, identity, kron, partial_trace_qubit, pauli
from .rng import SplitMix64


class Topology(enum.Enum):
    """Which couplings exist: all-to-all around the qubit, or a linear chain."""

    CENTRAL_SPIN = "central_spin"
    CHAIN = "chain"


class SymmetryClass(enum.Enum):
    ANISOTROPIC = "anisotropic"
    ISOTROPIC = "isotropic"


def coupled_pairs(m: int, topology: Topology) -> list[tuple[int, int]]:
    """Bath-spin pairs (i, j), 1-based with i < j, that carry a J0 matrix."""
    if topology is Topology.CHAIN:
        return [(i, i + 1) for i in range(1, m)]
    return [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]


def coupled_sites(m: int, topology: Topology) -> list[int]:
    """Bath sites, 1-based, that carry a J1 matrix to the qubit."""
    if topology is Topology.CHAIN:
        return [1]
    return list(range(1, m + 1))


@dataclass
class CouplingSet:
    """One frozen random realization of the model couplings.

    `j0` maps a 1-based bath pair (i, j), i < j, to its 3x3 matrix; `j1`
    maps a 1-based bath site to its 3x3 qubit-coupling matrix. Pairs or
    sites absent from the maps are zero (topology mask). Instances are
    treated as immutable after construction.
    """

    m: int
    topology: Topology
    symmetry_class: SymmetryClass
    alpha: float
    lam: float
    seed: int
    j0: dict[tuple[int, int], np.ndarray] = field(default_factory=dict)
    j1: dict[int, np.ndarray] = field(default_factory=dict)

    def to_json(self) -> str:
        """Serialize to a JSON document that round-trips bit-exactly."""
        doc = {
            "M": self.m,
            "topology": self.topology.value,
            "symmetry_class": self.symmetry_class.value,
            "alpha": self.alpha,
            "lambda": self.lam,
            "seed": self.seed,
            "J0": [
                {"i": i, "j": j, "matrix": self.j0[(i, j)].tolist()}
                for (i, j) in sorted(self.j0)
            ],
            "J1": [{"i": i, "matrix": self.j1[i].tolist()} for i in sorted(self.j1)],
        }
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "CouplingSet":
        doc = json.loads(text)
        return cls(
            m=int(doc["M"]),
            topology=Topology(doc["topology"]),
            symmetry_class=SymmetryClass(doc["symmetry_class"]),
            alpha=float(doc["alpha"]),
            lam=float(doc["lambda"]),
            seed=int(doc["seed"]),
            j0={
                (int(e["i"]), int(e["j"])): np.array(e["matrix"], dtype=float)
                for e in doc["J0"]
            },
            j1={int(e["i"]): np.array(e["matrix"], dtype=float) for e in doc["J1"]},
        )


def random_couplings(
    seed: int,
    m: int,
    symmetry_class: SymmetryClass = SymmetryClass.ANISOTROPIC,
    topology: Topology = Topology.CENTRAL_SPIN,
    alpha: float = 1.0,
    lam: float = 1.0,
) -> CouplingSet:
    """Draw a coupling realization; a fixed seed gives bit-identical output."""
    if m < 1:
        raise ValueError("need at least one bath spin (m >= 1)")
    stream = SplitMix64(seed)

    def draw_matrix(scale: float) -> np.ndarray:
        if symmetry_class is SymmetryClass.ISOTROPIC:
            return scale * stream.uniform_symmetric() * np.eye(3)
        return np.array(
            [[stream.uniform_symmetric() for _ in range(3)] for _ in range(3)]
        )

    j0 = {pair: draw_matrix(alpha * lam) for pair in coupled_pairs(m, topology)}
    j1 = {site: draw_matrix(lam) for site in coupled_sites(m, topology)}
    return CouplingSet(
        m=m,
        topology=topology,
        symmetry_class=symmetry_class,
        alpha=alpha,
        lam=lam,
        seed=seed,
        j0=j0,
        j1=j1,
    )


@dataclass
class HamiltonianParts:
    """The model Hamiltonian split into bath-only and qubit-coupling blocks.

    `h_bath` is the intra-bath Hamiltonian on the D = 2^m bath space, `a_ops`
    the three bath operators multiplying the qubit Paulis, and `h_full` the
    assembled operator  kron(1, h_bath) + sum_mu kron(sigma_mu, a_ops[mu])
    on the 2D-dimensional full space. Immutable after construction.
    """

    m: int
    h_bath: np.ndarray
    a_ops: tuple[np.ndarray, np.ndarray, np.ndarray]
    h_full: np.ndarray

    @property
    def bath_dim(self) -> int:
        return 2**self.m


def build_hamiltonian(couplings: CouplingSet) -> HamiltonianParts:
    """Assemble bath Hamiltonian, coupling operators and the full Hamiltonian."""
    m = couplings.m
    dim = 2**m
    h_bath = np.zeros((dim, dim), dtype=complex)
    for (i, j), mat in sorted(couplings.j0.items()):
        for k in range(3):
            left = embed(pauli(AXES[k]), i - 1, m)
            for l in range(3):
                if mat[k, l] != 0.0:
                    h_bath += mat[k, l] * (left @ embed(pauli(AXES[l]), j - 1, m))

    a_ops = []
    for mu in range(3):
        a_mu = np.zeros((dim, dim), dtype=complex)
        for i, mat in sorted(couplings.j1.items()):
            for k in range(3):
                if mat[mu, k] != 0.0:
                    a_mu += mat[mu, k] * embed(pauli(AXES[k]), i - 1, m)
        a_ops.append(a_mu)

    h_full = kron(identity(2), h_bath)
    for mu in range(3):
        h_full += kron(pauli(AXES[mu]), a_ops[mu])
    return HamiltonianParts(m=m, h_bath=h_bath, a_ops=tuple(a_ops), h_full=h_full)


def su2_defect(parts: HamiltonianParts, m: int | None = None) -> float:
    """How far the full Hamiltonian is from global spin-rotation invariance.

    Returns max over nu of max|[H, S_nu]| with S_nu the total spin component
    summed over the qubit and all bath sites. Zero (to rounding) for the
    isotropic class, order one for a generic anisotropic draw.
    """
    m = parts.m if m is None else m
    n_sites = m + 1
    worst = 0.0
    for axis in AXES:
        total_spin = sum(embed(pauli(axis), s, n_sites) for s in range(n_sites))
        comm = parts.h_full @ total_spin - total_spin @ parts.h_full
        worst = max(worst, float(np.abs(comm).max()))
    return worst


def coupling_components(parts: HamiltonianParts) -> tuple[np.ndarray, ...]:
    """Recover the bath operators a_ops from h_full by qubit-Pauli projection."""
    return tuple(
        0.5 * partial_trace_qubit(kron(pauli(axis), identity(parts.bath_dim)) @ parts.h_full)
        for axis in AXES
    )
