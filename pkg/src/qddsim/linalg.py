"""Dense complex-matrix kernel for a qubit attached to a small spin bath.

All operators live on tensor products of spin-1/2 sites. The qubit is always
the most significant (leftmost) Kronecker factor, so a full-space operator of
dimension 2*D splits into 2x2 blocks of bath operators; both partial traces
below rely on that ordering. Dimensions stay at or below 2^9, so everything
is dense and matrix exponentials go through Hermitian eigendecomposition,
which keeps propagators unitary to rounding.
"""

from __future__ import annotations

import enum

import numpy as np

HERMITICITY_RTOL = 1e-12


class PauliAxis(enum.Enum):
    """The three spin axes; `index` maps to the conventional (x, y, z) order."""

    X = "x"
    Y = "y"
    Z = "z"

    @property
    def index(self) -> int:
        return ("x", "y", "z").index(self.value)


AXES = (PauliAxis.X, PauliAxis.Y, PauliAxis.Z)

_SIGMA = (
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)

#: Nonzero entries (mu, nu, kappa, sign) of the Levi-Civita symbol, listed
#: explicitly so that every epsilon contraction in the package is an
#: unrolled sum over these six terms rather than a sign lookup in a loop.
LEVI_CIVITA: tuple[tuple[PauliAxis, PauliAxis, PauliAxis, int], ...] = (
    (PauliAxis.X, PauliAxis.Y, PauliAxis.Z, +1),
    (PauliAxis.Y, PauliAxis.Z, PauliAxis.X, +1),
    (PauliAxis.Z, PauliAxis.X, PauliAxis.Y, +1),
    (PauliAxis.X, PauliAxis.Z, PauliAxis.Y, -1),
    (PauliAxis.Z, PauliAxis.Y, PauliAxis.X, -1),
    (PauliAxis.Y, PauliAxis.X, PauliAxis.Z, -1),
)


def pauli(axis: PauliAxis) -> np.ndarray:
    """Standard 2x2 Pauli matrix for `axis` (a fresh copy)."""
    return _SIGMA[axis.index].copy()


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with `a` as the more significant factor."""
    return np.kron(a, b)


def embed(op: np.ndarray, site: int, n_sites: int) -> np.ndarray:
    """Embed a single-site 2x2 operator at `site` among `n_sites` spins.

    Site 0 is the leftmost (most significant) factor; all other sites carry
    the identity.
    """
    if not 0 <= site < n_sites:
        raise ValueError(f"site {site} out of range for {n_sites} sites")
    left = identity(2**site)
    right = identity(2 ** (n_sites - site - 1))
    return np.kron(np.kron(left, op), right)


def hermiticity_defect(a: np.ndarray) -> float:
    """max|A - A^dagger|, the absolute deviation from Hermiticity."""
    return float(np.abs(a - a.conj().T).max())


def require_hermitian(a: np.ndarray, rtol: float = HERMITICITY_RTOL) -> None:
    """Raise ValueError if `a` is not Hermitian within `rtol * max|a|`.

    The scale is floored at 1 so near-zero operators are judged on an
    absolute tolerance instead of an empty relative one.
    """
    scale = float(np.abs(a).max())
    if hermiticity_defect(a) > rtol * max(scale, 1.0):
        raise ValueError("matrix is not Hermitian within tolerance")


def herm_eigensystem(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and eigenvectors of a Hermitian matrix.

    Returns `(w, v)` with `h = v @ diag(w) @ v^dagger`. Callers that
    exponentiate the same generator for many durations should hold on to
    this pair and use :func:`expm_from_eigensystem`.
    """
    require_hermitian(h)
    w, v = np.linalg.eigh(h)
    return w, v


def expm_from_eigensystem(w: np.ndarray, v: np.ndarray, t: float) -> np.ndarray:
    """exp(-i t H) from a precomputed eigensystem of H."""
    return (v * np.exp(-1j * t * w)) @ v.conj().T


def herm_expm(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i t h) for Hermitian `h` via eigendecomposition.

    The eigenvector route returns a matrix unitary to rounding for any `t`,
    unlike Pade scaling-and-squaring whose unitarity drift would pollute
    distance norms at the 1e-12 level where the scaling fits operate.
    """
    w, v = herm_eigensystem(h)
    return expm_from_eigensystem(w, v, float(t))


def unitarity_defect(u: np.ndarray) -> float:
    """max-norm of U^dagger U - 1."""
    return float(np.abs(u.conj().T @ u - np.eye(u.shape[0])).max())


def _split_dims(op: np.ndarray) -> int:
    dim = op.shape[0]
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise ValueError("operator must be square")
    if dim % 2:
        raise ValueError("operator dimension must be even (qubit x bath)")
    return dim // 2


def partial_trace_qubit(op: np.ndarray) -> np.ndarray:
    """Trace out the qubit factor, returning a D x D bath operator."""
    d = _split_dims(op)
    return np.einsum("sasb->ab", op.reshape(2, d, 2, d))


def partial_trace_bath(op: np.ndarray) -> np.ndarray:
    """Trace out the bath factor, returning a 2 x 2 qubit operator."""
    d = _split_dims(op)
    return np.einsum("sata->st", op.reshape(2, d, 2, d))
