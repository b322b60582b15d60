import numpy as np
import pytest

from sprforge.polycore import (Poly, ZeroPolynomialError, cauchy_root_bound, count_real_roots,
                               eval_at_jomega, interval_extrema, poly_arith, positive_on_halfline,
                               positive_on_interval, rational_extrema, real_roots, routh_hurwitz,
                               sturm_chain)
from sprforge.oracles import max_real_root
from corpus import halfline_min


# ---- arithmetic -------------------------------------------------------------

def test_mul_square():
    assert poly_arith([1, 1], [1, 1], "mul").tolist() == [1, 2, 1]


def test_derive_cubic():
    assert poly_arith([1, 3, 3, 1], op="derive").tolist() == [3, 6, 3]


def test_compose_affine():
    assert poly_arith([1, 0], op="compose_affine", alpha=2, beta=1).tolist() == [2, 1]
    p = Poly([1, -3, 2])
    q = p.compose_affine(0.5, -1.0)
    for s in (-2.0, 0.3, 4.0):
        assert q(s) == pytest.approx(p(0.5 * s - 1.0))


def test_compose_affine_pure_scaling():
    p = Poly([2, 0, -8])
    assert p.compose_affine(3.0, 0.0).tolist() == [18, 0, -8]


def test_add_sub_scale():
    p, q = Poly([1, 2, 3]), Poly([1, 2])
    assert (p + q).tolist() == [1, 3, 5]
    assert (p - Poly([1, 2, 3])).is_zero
    assert p.scale(2).tolist() == [2, 4, 6]


def test_leading_zero_stripping():
    assert Poly([0, 0, 1, 2]).degree == 1
    assert Poly([1e-15, 1, 2]).degree == 1


def test_zero_polynomial_rejected():
    z = Poly.zero()
    assert z.is_zero
    with pytest.raises(ZeroPolynomialError):
        routh_hurwitz(z)
    with pytest.raises(ZeroPolynomialError):
        positive_on_halfline(z)


def test_monic_is_exact():
    p = Poly([3.0, 1.0, 7.0]).monic()
    assert p.lc == 1.0


def test_ring_axioms_random():
    rng = np.random.default_rng(11)
    for _ in range(200):
        p, q, r = (Poly(rng.uniform(-10, 10, rng.integers(1, 8))) for _ in range(3))
        for lhs, rhs in [((p + q) * r, p * r + q * r), (p * q, q * p),
                         ((p * q) * r, p * (q * r)), (p + q, q + p)]:
            scale = max(np.abs(rhs.coeffs).max(), 1.0)
            d = lhs.degree
            assert rhs.degree == d
            assert np.max(np.abs(lhs.coeffs - rhs.coeffs)) <= 1e-12 * scale


# ---- evaluation on the axis ---------------------------------------------------

def test_eval_at_jomega_examples():
    assert eval_at_jomega([1, 1], 1.0) == 1 + 1j
    assert eval_at_jomega([1, 0, 1], 1.0) == 0
    assert eval_at_jomega([1, 3, 3, 1], 0.0) == 1


def test_eval_at_jomega_matches_polyval():
    rng = np.random.default_rng(2)
    c = rng.normal(size=7)
    w = np.linspace(-3, 3, 13)
    np.testing.assert_allclose(eval_at_jomega(c, w), np.polyval(c, 1j * w), rtol=1e-13)


def test_conjugate_symmetry_is_exact():
    rng = np.random.default_rng(3)
    for _ in range(50):
        p = Poly(rng.uniform(-10, 10, rng.integers(1, 10)))
        w = rng.uniform(-20, 20)
        assert eval_at_jomega(p, -w) == np.conj(eval_at_jomega(p, w))


# ---- Routh-Hurwitz ----------------------------------------------------------

@pytest.mark.parametrize("coeffs, expected", [
    ([1, 3, 3, 1], True),
    ([1, 1, 1, 1], False),
    ([1, 0, -1], False),
    ([1, 2], True),
    ([1, -2], False),
    ([1, 0, 1], False),
])
def test_routh_examples(coeffs, expected):
    assert routh_hurwitz(coeffs).hurwitz is expected


def test_routh_table_is_certificate():
    r = routh_hurwitz([1, 3, 3, 1])
    assert all(v > 0 for v in r.first_column)
    assert r.failure_row is None
    bad = routh_hurwitz([1, 1, 2, 4])
    assert not bad.hurwitz and bad.failure_row is not None


def test_routh_zero_pivot_epsilon_row():
    # s^4 + s^3 + 2s^2 + 2s + 3 has a zero pivot in the third row, two RHP roots
    r = routh_hurwitz([1, 1, 2, 2, 3])
    assert not r.hurwitz
    assert max_real_root([1, 1, 2, 2, 3]) > 0


def test_routh_all_zero_row_is_marginal():
    # (s^2 + 1)(s + 1): the auxiliary-polynomial case
    r = routh_hurwitz([1, 1, 1, 1])
    assert not r.hurwitz


def test_routh_negative_leading_coefficient_normalized():
    assert routh_hurwitz([-1, -3, -3, -1]).hurwitz


def test_routh_agrees_with_eigenvalues():
    rng = np.random.default_rng(4)
    checked = 0
    for _ in range(1500):
        n = int(rng.integers(1, 11))
        roots = []
        while len(roots) < n:
            re = rng.uniform(-3, 1)
            if n - len(roots) >= 2 and rng.random() < 0.5:
                im = rng.uniform(0.1, 3)
                roots += [complex(re, im), complex(re, -im)]
            else:
                roots.append(re)
        margin = min(abs(np.real(roots)))
        if margin <= 1e-6:
            continue
        p = np.real(np.poly(roots))
        checked += 1
        assert routh_hurwitz(p).hurwitz == (max(np.real(roots)) < 0)
    assert checked >= 1000


# ---- Cauchy bound -------------------------------------------------------------

@pytest.mark.parametrize("coeffs, bound", [([1, 0, -4], 5), ([1, 0, 0], 1), ([2, 0, -8], 5)])
def test_cauchy_bound_examples(coeffs, bound):
    assert cauchy_root_bound(coeffs) == bound


def test_cauchy_bound_encloses_roots():
    rng = np.random.default_rng(5)
    for _ in range(100):
        c = rng.uniform(-10, 10, rng.integers(2, 9))
        assert np.max(np.abs(np.roots(c))) <= cauchy_root_bound(c) * (1 + 1e-12)


# ---- Sturm machinery ---------------------------------------------------------------

def test_sturm_chain_shape():
    chain = sturm_chain([1, -6, 11, -6])
    assert chain[0].tolist() == [1, -6, 11, -6]
    assert chain[1].tolist() == [3, -12, 11]


def test_count_and_isolate_roots():
    p = Poly([1, -6, 11, -6])
    assert count_real_roots(p) == 3
    assert count_real_roots(p, 1.5, 2.5) == 1
    np.testing.assert_allclose(real_roots(p), [1, 2, 3], rtol=1e-9)


def test_positive_on_halfline_examples():
    assert positive_on_halfline([1, 0, 1]).verdict
    touch = positive_on_halfline([1, -2, 1])
    assert not touch.verdict
    assert touch.witness == pytest.approx(1.0, abs=1e-6)
    cubic = positive_on_halfline([1, -6, 11, -6])
    assert not cubic.verdict and cubic.witness > 0
    assert np.polyval([1, -6, 11, -6], cubic.witness) <= 1e-9


def test_positivity_proof_is_reverifiable():
    pr = positive_on_halfline([1, -3, 4])
    assert pr.verdict and pr.root_count == 0
    assert pr.sturm_chain[0].tolist() == [1, -3, 4]
    assert pr.sturm_chain[1].tolist() == [2, -3]


def test_strictness_at_zero():
    assert not positive_on_halfline([1, 1, 0]).verdict
    assert positive_on_halfline([1, 1, 0], strict_at_zero=False).verdict


def test_negative_leading_coefficient_fails():
    pr = positive_on_halfline([-1, 5, 5])
    assert not pr.verdict


def test_near_double_root_escalates_correctly():
    # (t - 1)^2 + 1e-14 is positive; (t - 1)^2 - 1e-14 is not
    assert positive_on_halfline([1, -2, 1 + 1e-14]).verdict
    assert not positive_on_halfline([1, -2, 1 - 1e-14]).verdict


def test_positive_on_halfline_vs_grid():
    rng = np.random.default_rng(6)
    for _ in range(300):
        g = rng.uniform(-5, 5, rng.integers(2, 8))
        g[0] = abs(g[0]) + 0.1
        R = cauchy_root_bound(g)
        mn, tm = halfline_min(g, R)
        if abs(mn) <= 1e-6 * np.polyval(np.abs(g), tm):
            continue
        pr = positive_on_halfline(g)
        grid = np.concatenate([[0.0], np.geomspace(1e-9 * R, R, 100_000)])
        gmin = np.polyval(g, grid).min()
        if pr.verdict:
            assert gmin > 0
        else:
            assert gmin < 0
            assert np.polyval(g, pr.witness) <= 1e-9 * np.polyval(np.abs(g), pr.witness)


def test_positive_on_interval():
    assert positive_on_interval([1, 0, -1], 1.5, 3.0).verdict
    assert not positive_on_interval([1, 0, -1], 0.0, 3.0).verdict


def test_interval_extrema():
    mn, tmin, mx, tmax = interval_extrema([1, -2, 0], 0.0, 3.0)
    assert mn == pytest.approx(-1.0) and tmin == pytest.approx(1.0, rel=1e-6)
    assert mx == pytest.approx(3.0) and tmax == 3.0


def test_rational_extrema():
    # (t + 2) / (t + 1) decreases from 2 to 1.5 on [0, 1]
    mn, _, mx, _ = rational_extrema([1, 2], [1, 1], 0.0, 1.0)
    assert mn == pytest.approx(1.5) and mx == pytest.approx(2.0)


def test_routh_subnormal_pivot_stays_finite():
    c = [4.0, 8.846046692705822e-299, 0.0, 0.0, 0.0, 2.0]
    r = routh_hurwitz(c)
    assert np.all(np.isfinite(np.concatenate(r.routh_table)))
    assert not r.hurwitz
    assert np.max(np.roots(c).real) > 0
