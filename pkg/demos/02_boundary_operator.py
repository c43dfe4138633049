"""The nonlinear boundary penalty.

At every boundary quadrature node the penalty is Pi * V with
F(V) = int_0^1 t f'(tV).n dt and Pi = min(F, 0): outflow nodes are left
alone, inflow nodes are damped. For Burgers F = V (n_x + n_y) / 3; for the
cos-flux law a short series takes over near V = 0, where the closed form
cancels badly.
"""

import numpy as np

from entropy_cg.flux import builtin_law
from entropy_cg.sat import BoundaryOperatorSpec, clamp_Pi, eval_F

closed = BoundaryOperatorSpec("closed_form")
gauss = BoundaryOperatorSpec("quadrature", order=5)

burgers = builtin_law("burgers2d")
V = np.array([-2.0, -0.5, 0.5, 3.0])
n = np.array([1.0, 0.0])
print("Burgers F closed form :", eval_F(burgers, V, n, closed))
print("Burgers F Gauss order 5:", eval_F(burgers, V, n, gauss))
print("Pi = min(F, 0)        :", clamp_Pi(eval_F(burgers, V, n, closed)))

cos = builtin_law("cosflux")
for v in (1.0, 1e-3, 1e-5, 0.0):
    print(f"cos-flux F({v:g}) = {eval_F(cos, v, n, closed):+.16e}")
