"""Common SPR numerator for a segment of Schur polynomials.

The segment is carried to the left half plane by ``z = (1+s)/(1-s)``,
solved there and mapped back, so deg c_z never exceeds n.
"""
import numpy as np

from sprforge import Poly, schur_check, synthesize_discrete
from sprforge.oracles import unit_circle_grid_min

az = Poly(np.real(np.poly([0.5, 0.6 * np.exp(1j), 0.6 * np.exp(-1j)])))
bz = Poly(np.real(np.poly([-0.4, 0.3 + 0.5j, 0.3 - 0.5j])))
print("Schur endpoints:", schur_check(az), schur_check(bz))

res = synthesize_discrete(az, bz)
print("c(z) =", np.round(res.c_z.coeffs, 6), " degree", res.c_z.degree)
for name, den in (("a", az), ("b", bz)):
    g = unit_circle_grid_min(res.c_z, den)
    print(f"min Re[c/{name}] on the unit circle: {g.min_value:.4g}")
