"""Build a common SPR numerator for a stable segment of cubics and check it.

Run with ``python3 demos/common_numerator.py``.
"""
import numpy as np

from sprforge import Poly, SegmentFamily, is_spr, segment_hurwitz, synthesize
from sprforge.oracles import grid_min_real_part

a = Poly.from_roots([-1.0, -1.0, -1.0])          # (s+1)^3
b = Poly.from_roots([-0.3 + 2j, -0.3 - 2j, -4.0])
fam = SegmentFamily(a, b)

verdict = segment_hurwitz(fam)
print("segment stable:", verdict.stable)
print("  trace:", "; ".join(verdict.method_trace))

res = synthesize(fam)
print("\ncommon point x:", np.round(res.x.x, 6))
print("epsilon:", res.eps.epsilon, " delta:", res.delta.delta)
print("c(s) =", np.round(res.c_final.coeffs, 6))

for name, den in (("a", a), ("b", b)):
    cert = is_spr(res.c_final, den)
    grid = grid_min_real_part(res.c_final, den)
    print(f"c/{name}: certified {cert.verdict}, grid minimum {grid.min_value:.4g} at w = {grid.argmin:.4g}")

# the same c works for every member of the segment
worst = min(grid_min_real_part(res.c_final, fam.member(lam), samples=20_000).min_value
            for lam in np.linspace(0, 1, 21))
print("\nsmallest grid value over 21 segment members:", f"{worst:.4g}")
