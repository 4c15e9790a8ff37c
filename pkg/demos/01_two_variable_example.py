"""
A two-variable walk through the Zeno reduction
==============================================

The formula (~x0 | ~x1) & (x0 | x1) has two clauses over two variables.
We keep only the first clause as a hard constraint, so the feasible
assignments are 00, 01 and 10, and the reduced space has dimension 3.
"""

import numpy as np

from zenoqaoa import CnfFormula, SelectionBasis, build_reduced, compress, hp_diagonal, lift
from zenoqaoa.hamiltonians import hb_matrix
from zenoqaoa.zeno import projected_hamiltonian

phi = CnfFormula.from_dimacs_lists(2, [[-1, -2], [1, 2]])

# The problem Hamiltonian is diagonal: entry x counts satisfied clauses.
print("H_P diagonal:", hp_diagonal(phi).dense().diag)

# The mixer connects assignments that differ in exactly one bit.
print("H_B =\n", hb_matrix(2))

# Models of the first clause index the selected basis vectors.
basis = SelectionBasis(2, [0, 1, 2])

# Projecting the mixer onto the feasible states cuts every edge into |11>.
print("P H_B P =\n", projected_hamiltonian(hb_matrix(2), basis).real)

# The reduced operators are the 3x3 principal submatrices.
ops = build_reduced(phi, basis, delta=0.1)
print("reduced H_P diagonal:", ops.hp_red.diag)
print("reduced H_B =\n", ops.hb_red)

# Compressing a state keeps the feasible amplitudes and sets the rest aside.
psi = np.array([1, 1, 0, 1]) / np.sqrt(3)
split = compress(psi, basis)
print("reduced amplitudes:", split.reduced.amplitudes.real)
print("residual:", split.residual.real)

# Lifting puts the two pieces back together exactly.
assert np.array_equal(lift(split), psi)
