import math
import random
from fractions import Fraction

import numpy as np
import pytest

from eqmap.algebra import (
    Jet,
    LaurentPoly,
    inv_sqrt_R_series,
    laurent_zero_coeff,
    series_times_poly_coeff,
    substitute_uniformizer,
)
from eqmap.errors import SingularJetError


def test_zero_coeff_reads_off_constant():
    p = LaurentPoly({1: 1, 0: 3, -1: 1})
    assert laurent_zero_coeff(p) == 3


def test_zero_coeff_absent_exponent():
    assert laurent_zero_coeff(LaurentPoly({2: 1})) == 0


def test_zero_coeff_of_t_times_cubed_substitution():
    # [T^0] of T*(T + z/T)^3 = 3 z^2, checked against an explicit binomial sum
    z = Fraction(7, 3)
    y = LaurentPoly({1: 1, -1: z})
    p = y * y * y * LaurentPoly({1: 1})
    expected = sum(
        math.comb(3, k) * z**k for k in range(4) if 3 - 2 * k + 1 == 0
    )
    assert laurent_zero_coeff(p) == expected == 3 * z**2


def test_zero_coeff_shift_picks_any_coefficient():
    rng = random.Random(0)
    p = LaurentPoly({k: rng.randint(-5, 5) for k in range(-3, 4)})
    for r in range(-3, 4):
        assert laurent_zero_coeff(p.shifted(-r)) == p.coeff(r)


def test_substitute_affine_linear():
    p = substitute_uniformizer([0, 1], u=0, z=2, mode="affine")
    assert p == LaurentPoly({1: 1, -1: 2})


def test_substitute_affine_square():
    # (T + 1 + 1/T)^2 expanded by hand
    p = substitute_uniformizer([0, 0, 1], u=1, z=1, mode="affine")
    assert p == LaurentPoly({2: 1, 1: 2, 0: 3, -1: 2, -2: 1})


def test_substitute_symmetric_linear():
    p = substitute_uniformizer([0, 1], u=0, z=4, mode="symmetric")
    assert p == LaurentPoly({1: Fraction(2), -1: Fraction(2)})


def test_substitute_symmetric_rejects_nonpositive_z():
    with pytest.raises(ValueError):
        substitute_uniformizer([0, 1], u=0.0, z=-1.0, mode="symmetric")


def test_substitute_symmetric_with_jet_z():
    # sqrt(z) rides along as a jet; constant terms must match the float path
    z0 = 0.9
    zj = Jet([z0, 0.35, -0.1])
    p_jet = substitute_uniformizer([0.2, 1, 0, 0.5], u=0.1, z=zj, mode="symmetric")
    p_flt = substitute_uniformizer([0.2, 1, 0, 0.5], u=0.1, z=z0, mode="symmetric")
    for k in range(-3, 4):
        cj = p_jet.coeff(k)
        c0 = cj.constant_term if isinstance(cj, Jet) else cj
        assert float(c0) == pytest.approx(float(p_flt.coeff(k)), rel=1e-13, abs=1e-15)


def test_substitution_zero_coeff_symmetric_under_T_to_z_over_T():
    # coefficient symmetry c_k = z^k c_{-k} for affine substitutions
    rng = random.Random(1)
    for _ in range(10):
        u = Fraction(rng.randint(-3, 3), rng.randint(1, 4))
        z = Fraction(rng.randint(1, 6), rng.randint(1, 4))
        coeffs = [Fraction(rng.randint(-4, 4)) for _ in range(rng.randint(1, 6))]
        p = substitute_uniformizer(coeffs, u, z, mode="affine")
        # T -> z/T leaves the substituted polynomial invariant, which pins
        # every negative coefficient to a positive one
        for k in range(0, p.max_exp + 1):
            assert p.coeff(-k) == p.coeff(k) * z**k


# ---- jets ----------------------------------------------------------------


def test_jet_log_mercator():
    a = 0.7
    x = Jet([1.0, a, 0.0])  # 1 + a*eps to order 2
    lg = x.log()
    assert lg.coeffs[0] == pytest.approx(0.0)
    assert lg.coeffs[1] == pytest.approx(a)
    assert lg.coeffs[2] == pytest.approx(-a * a / 2)


def test_jet_product_difference_of_squares():
    a = 1.3
    one_plus = Jet([1.0, a, 0.0])
    one_minus = Jet([1.0, -a, 0.0])
    prod = one_plus * one_minus
    assert prod.coeffs[0] == pytest.approx(1.0)
    assert prod.coeffs[1] == pytest.approx(0.0)
    assert prod.coeffs[2] == pytest.approx(-a * a)


def test_jet_partial_extraction_includes_factorials():
    j = Jet.constant(0, (3,))
    arr = j.coeffs
    arr[2] = 5.0
    assert Jet(arr).partial((2,)) == pytest.approx(10.0)


def test_jet_log_exp_round_trip():
    rng = np.random.default_rng(7)
    coeffs = rng.normal(size=(3, 3))
    coeffs[0, 0] = 2.0
    j = Jet(coeffs.astype(object))
    back = j.log().exp()
    err = np.max(np.abs((back - j).coeffs.astype(float)))
    assert err < 1e-12 * np.max(np.abs(coeffs))


def test_jet_mul_div_round_trip():
    rng = np.random.default_rng(11)
    a = Jet(rng.normal(size=5).astype(object))
    b = Jet((rng.normal(size=5) + np.array([3, 0, 0, 0, 0])).astype(object))
    back = (a * b) / b
    err = np.max(np.abs((back - a).coeffs.astype(float)))
    assert err < 1e-12


def test_jet_sqrt_squares_back():
    rng = np.random.default_rng(13)
    coeffs = rng.normal(size=(4,))
    coeffs[0] = 1.7
    j = Jet(coeffs.astype(object))
    s = j.sqrt()
    err = np.max(np.abs((s * s - j).coeffs.astype(float)))
    assert err < 1e-13


def test_jet_reciprocal_rejects_zero_constant():
    with pytest.raises(SingularJetError):
        Jet([0.0, 1.0]).reciprocal()


def test_jet_derivative_consumes_one_order():
    j = Jet([1.0, 2.0, 3.0, 4.0])
    d = j.dx(0)
    assert d.orders == (2,)
    assert list(d.coeffs) == [2.0, 6.0, 12.0]


def test_jet_multiplication_truncates_to_min_orders():
    a = Jet([1.0, 1.0, 1.0])
    b = Jet([1.0, 1.0])
    assert (a * b).orders == (1,)


def test_jet_exact_rational_arithmetic():
    a = Jet([Fraction(1), Fraction(1, 3)])
    inv = a.reciprocal()
    assert inv.coeffs[0] == Fraction(1)
    assert inv.coeffs[1] == Fraction(-1, 3)


# ---- series at infinity ----------------------------------------------------


def test_inv_sqrt_series_semicircle_endpoints():
    s = inv_sqrt_R_series(-2, 2, 4)
    assert list(s.coeffs) == [1, 0, 2, 0]


def test_inv_sqrt_series_degenerate_is_inverse_y():
    s = inv_sqrt_R_series(0, 0, 6)
    assert list(s.coeffs) == [1, 0, 0, 0, 0, 0]


def test_inv_sqrt_series_odd_terms_vanish_for_symmetric_endpoints():
    s = inv_sqrt_R_series(Fraction(-5, 3), Fraction(5, 3), 9)
    assert all(s.coeffs[i] == 0 for i in range(1, 9, 2))


def test_inv_sqrt_series_square_is_exact_inverse():
    # Q(y)^2 (y-a)(y-b) = 1 + O(y^-n) exactly in rational arithmetic
    a, b = Fraction(-3, 2), Fraction(5, 4)
    n = 10
    q = list(inv_sqrt_R_series(a, b, n).coeffs)
    s, p = a + b, a * b
    # c_m = sum_{i+j=m} q_i q_j, then Q^2 R2 coefficient of y^-m must vanish
    c = [sum(q[i] * q[m - i] for i in range(m + 1)) for m in range(n)]
    assert c[0] == 1
    assert c[1] - s * c[0] == 0
    for m in range(2, n):
        assert c[m] - s * c[m - 1] + p * c[m - 2] == 0


def test_series_times_poly_coeff():
    s = inv_sqrt_R_series(-2, 2, 4)
    # y * (y^-1 + 2 y^-3) has coefficient 2 at y^-2 and 1 at y^0
    assert series_times_poly_coeff([0, 1], s, 0) == 1
    assert series_times_poly_coeff([0, 1], s, -2) == 2
