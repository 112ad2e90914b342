"""The four scaling tables: symmetry class of the Hamiltonian against
symmetry of the initial bath state.

Fitted exponents zeta of d ~ tau^zeta on a pulse-number grid. Rows are N_z,
columns N_x. The four combinations show:

  anisotropic + product bath   -> min(N_x, N_z) + 1
  isotropic   + mixed bath     -> 2 (min(N_x, N_z) + 1)   (doubled)
  isotropic   + product bath   -> min(N_x, N_z) + 1       (no doubling)
  anisotropic + mixed bath     -> alternating: N+1 for odd N, doubled for even

Takes a few seconds at three bath spins.
"""

import qddsim as q

SEED = 42
CASES = [
    ("anisotropic Hamiltonian, product bath", q.SymmetryClass.ANISOTROPIC, q.BathKind.PRODUCT),
    ("isotropic Hamiltonian, maximally mixed bath", q.SymmetryClass.ISOTROPIC, q.BathKind.MAXIMALLY_MIXED),
    ("isotropic Hamiltonian, product bath", q.SymmetryClass.ISOTROPIC, q.BathKind.PRODUCT),
    ("anisotropic Hamiltonian, maximally mixed bath", q.SymmetryClass.ANISOTROPIC, q.BathKind.MAXIMALLY_MIXED),
]

for label, sym, bath in CASES:
    couplings = q.random_couplings(SEED, 3, sym)
    spec = q.SweepSpec(
        couplings=couplings,
        bath_kind=bath,
        directions=q.default_directions(3) if bath is q.BathKind.PRODUCT else None,
        n_x_values=range(4),
        n_z_values=range(4),
    )
    table = q.exponent_table(spec)
    print(f"\n== {label}")
    print(table.to_csv())
    if table.failures:
        print("  window failures:", table.failures)
