"""Linear stability of 1D continuous Galerkin with a boundary penalty.

For u_t + a u_x = 0 on [0, 1] the Galerkin matrices satisfy
Q + Q^T = diag(-1, 0, ..., 0, 1): only the two end points carry energy.
A penalty tau on the inflow DoF gives the test matrix diag(2 tau + a, 0, ..., -a),
so the energy is non-increasing exactly when tau <= -a/2.
"""

import numpy as np

from entropy_cg.certify import boundary_matrix, build_1d_operators, certify, inflow_penalty

M, Q = build_1d_operators(p=3, n_elements=4)
print("size:", M.shape, " max|Q + Q^T - B| =", np.abs(Q + Q.T - boundary_matrix(len(M))).max())

# Sweep the penalty and watch the verdict flip at tau = -1/2.
for tau in (-1.0, -0.6, -0.5, -0.4, 0.0):
    cert = certify(M, Q, a=1.0, Pi=inflow_penalty(len(M), tau))
    print(f"tau = {tau:+.2f}   max eigenvalue = {cert.max_eigenvalue:+.3f}   {cert.verdict}")
