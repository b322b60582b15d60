from fractions import Fraction

import numpy as np
import pytest

from sprforge.errors import PreconditionError
from sprforge.oracles import lambda_grid_roots
from sprforge.polycore import Poly
from sprforge.segstab import (SegmentFamily, hurwitz_minor_polys, lambda_routh_positivity,
                              segment_hurwitz)
from corpus import mixed_segment, unstable_fixture

A3, B3 = Poly([1, 3, 3, 1]), Poly([1, 6, 12, 8])


def test_constant_segment_stable():
    fam = SegmentFamily(A3, A3)
    assert segment_hurwitz(fam).stable
    assert fam.degenerate


def test_cubic_pair_stable():
    fam = SegmentFamily(A3, B3)
    assert segment_hurwitz(fam).stable
    assert lambda_grid_roots(fam).max_real_part < 0


def test_cubic_pair_second_minor():
    minors = hurwitz_minor_polys(SegmentFamily(A3, B3))
    assert minors[1] == [Fraction(27), Fraction(29), Fraction(8)]
    lam = np.linspace(0, 1, 11)
    a = np.outer(1 - lam, A3.coeffs) + np.outer(lam, B3.coeffs)
    np.testing.assert_allclose(np.polyval([27, 29, 8], lam), a[:, 1] * a[:, 2] - a[:, 3])


def test_minors_constant_for_equal_endpoints():
    minors = hurwitz_minor_polys(SegmentFamily(A3, A3))
    for m in minors:
        assert all(c == 0 for c in m[:-1]) and m[-1] > 0
    assert lambda_routh_positivity(SegmentFamily(A3, A3)).stable


def test_unstable_fixture_endpoints_hurwitz():
    fam = unstable_fixture()
    for p in (fam.a, fam.b):
        assert np.max(np.roots(p.coeffs).real) < 0
    mid = fam.member(0.5).coeffs
    np.testing.assert_allclose(mid, np.polymul([1, 0, 1], [1, 1, 1]), atol=1e-12)


def test_unstable_fixture_witness():
    fam = unstable_fixture()
    v = segment_hurwitz(fam)
    assert not v.stable
    assert v.witness_lambda == pytest.approx(0.5, abs=1e-9)
    assert abs(v.witness_root - 1j) < 1e-9
    member = fam.member(v.witness_lambda)
    assert abs(member(v.witness_root)) <= 1e-8 * member.norm()


def test_unstable_fixture_minor_has_root():
    check = lambda_routh_positivity(unstable_fixture())
    assert not check.stable and check.failing_minor is not None
    assert lambda_grid_roots(unstable_fixture()).max_real_part >= 0


@pytest.mark.parametrize("a, b, lam", [([1, -1, 2], [1, 3, 2], 0.0), ([1, 3, 2], [1, 3, -2], 1.0)])
def test_unstable_endpoint_witness(a, b, lam):
    v = segment_hurwitz(SegmentFamily(Poly(a), Poly(b)))
    assert not v.stable and v.witness_lambda == lam
    assert v.witness_root.real >= 0


def test_origin_check_recorded():
    # the constant term is affine in lambda and positive at both Hurwitz
    # endpoints, so the origin check always passes; it is still traced
    v = segment_hurwitz(SegmentFamily(A3, B3))
    assert "constant term keeps its sign" in v.method_trace


def test_family_validation():
    with pytest.raises(PreconditionError):
        SegmentFamily(Poly([1, 1]), Poly([1, 2, 1]))
    with pytest.raises(PreconditionError):
        SegmentFamily(Poly([2, 1]), Poly([1, 1]))
    fam = SegmentFamily.normalized(Poly([2, 4]), Poly([3, 3]))
    assert fam.a.tolist() == [1, 2] and fam.b.tolist() == [1, 1]


def test_minor_method_degree_cap():
    p = Poly.from_roots([-1.0] * 13)
    with pytest.raises(PreconditionError):
        lambda_routh_positivity(SegmentFamily(p, p))


def test_witness_residual_on_random_unstable():
    rng = np.random.default_rng(8)
    seen = 0
    while seen < 20:
        fam = mixed_segment(rng, int(rng.integers(2, 9)))
        v = segment_hurwitz(fam)
        if v.stable:
            continue
        seen += 1
        member = fam.member(v.witness_lambda)
        assert abs(member(v.witness_root)) <= 1e-8 * member.norm()
        assert v.witness_root.real >= -1e-9
        if v.witness_lambda in (0.0, 1.0):
            assert "endpoint" in v.method_trace[0]


def test_three_way_agreement_small():
    rng = np.random.default_rng(9)
    for _ in range(60):
        fam = mixed_segment(rng, int(rng.integers(1, 9)))
        rep = lambda_grid_roots(fam)
        if abs(rep.max_real_part) <= 1e-9:
            continue
        truth = rep.max_real_part < 0
        assert segment_hurwitz(fam).stable == truth
        assert lambda_routh_positivity(fam).stable == truth
