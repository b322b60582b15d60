"""Two Hurwitz quartics whose segment leaves the stable set.

No common SPR numerator can exist, so synthesis refuses and reports the
member that touches the imaginary axis.
"""
import numpy as np

from sprforge import Poly, SegmentFamily, SegmentUnstable, lambda_routh_positivity, synthesize

a = Poly([1.0, 0.615, 1.384, 0.307, 0.307])
b = Poly([1.0, 1.385, 2.616, 1.693, 1.693])
fam = SegmentFamily(a, b)
print("roots of a:", np.round(np.roots(a.coeffs), 4))
print("roots of b:", np.round(np.roots(b.coeffs), 4))

try:
    synthesize(fam)
except SegmentUnstable as exc:
    v = exc.verdict
    print(f"\nrefused: witness lambda = {v.witness_lambda:.6f}, root = {v.witness_root:.6f}")
    member = fam.member(v.witness_lambda)
    print("member:", np.round(member.coeffs, 6))
    print("its roots:", np.round(np.roots(member.coeffs), 6))

# the Hurwitz-minor check reaches the same verdict independently
m = lambda_routh_positivity(fam)
print("\nminor check stable:", m.stable)
