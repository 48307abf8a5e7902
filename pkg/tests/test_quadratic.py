"""Continued fractions, semiconvergents, quadratic certificates and counts."""

import math
import random
from fractions import Fraction

import pytest

from indecomp.errors import (
    IndexOutOfRange,
    NotSquarefree,
    IllegalParameter,
)
from indecomp.quadratic import (
    cf_expand,
    decompose_quadratic,
    fundamental_tp_unit,
    indecomposables_quadratic,
    is_totally_positive_quad_codiff,
    make_quad_field,
    quad_counts,
    quad_elem,
    quad_ideal_hnf,
    quad_trace_pairing,
    search_indecomposables,
    semiconvergent,
    sqrt_disc_element,
    trace_one_delta,
    trace_one_delta_scalings,
    QuadCodifferentElement,
)

RNG = random.Random(424242)
TESTED_D = (2, 3, 5, 6, 7, 10, 13)


def test_make_quad_field_checks():
    with pytest.raises(NotSquarefree):
        make_quad_field(12)
    with pytest.raises(IllegalParameter):
        make_quad_field(1)
    assert make_quad_field(5).one_mod_four
    assert not make_quad_field(7).one_mod_four


def test_element_arithmetic():
    f = make_quad_field(13)
    w = quad_elem(f, 0, 1)
    # omega^2 = omega + (D-1)/4 for D = 1 mod 4
    assert (w * w).coords == (3, 1)
    assert w.trace() == 1 and w.norm() == -3
    f2 = make_quad_field(2)
    w2 = quad_elem(f2, 0, 1)
    assert (w2 * w2).coords == (2, 0)
    for _ in range(300):
        x = quad_elem(f, RNG.randint(-9, 9), RNG.randint(-9, 9))
        y = quad_elem(f, RNG.randint(-9, 9), RNG.randint(-9, 9))
        assert (x * y).norm() == x.norm() * y.norm()
        assert (x + y).trace() == x.trace() + y.trace()
        assert x * y == y * x
        assert (x.conj()).norm() == x.norm()


def test_cf_examples():
    assert (cf_expand(2).u0, cf_expand(2).period) == (1, (2,))
    for t in (1, 3, 5):
        cf = cf_expand(t * t + 1)
        assert cf.u0 == t and cf.period == (2 * t,)
    assert cf_expand(3).period == (1, 2)
    assert cf_expand(13).period == (3,)
    assert cf_expand(5).u0 == 0 and cf_expand(5).period == (1,)


def test_cf_against_rational_euclid():
    """Partial quotients agree with the plain Euclidean algorithm applied to
    a 30-digit rational approximation of xi_D."""

    def terms_from_rational(x: Fraction, k: int):
        out = []
        for _ in range(k):
            fl = x.numerator // x.denominator
            out.append(fl)
            if x == fl:
                break
            x = 1 / (x - fl)
        return out

    for D in TESTED_D + (26,):
        s = math.isqrt(D * 10**60)
        approx = Fraction(s, 10**30)
        field = make_quad_field(D)
        xi = (approx - 1) / 2 if field.one_mod_four else approx
        want = terms_from_rational(xi, 12)[:11]
        cf = cf_expand(D)
        assert want == [cf.u(i) for i in range(11)], D


def test_cf_period_primitive():
    for D in TESTED_D:
        period = cf_expand(D).period
        s = len(period)
        for d in range(1, s):
            if s % d == 0:
                assert any(period[i] != period[i % d] for i in range(s))


def test_convergent_determinant_identity():
    for D in TESTED_D:
        cf = cf_expand(D)
        for i in range(0, 2 * cf.period_length + 2):
            p_i, q_i = cf.convergent_pair(i)
            p_m, q_m = cf.convergent_pair(i - 1)
            assert p_i * q_m - p_m * q_i == (-1) ** (i - 1)


def test_semiconvergent_examples():
    cf = cf_expand(2)
    assert semiconvergent(2, -1, 0).coords == (1, 0)
    # alpha_{-1,1} = alpha_{-1} + alpha_0 = 1 + (1 + omega)
    assert semiconvergent(2, -1, 1).coords == (2, 1)
    assert semiconvergent(2, -1, cf.u(1)) == cf.convergent(1)
    for D in TESTED_D:
        cf = cf_expand(D)
        for i in range(-1, 4, 2):
            assert semiconvergent(D, i, 0) == cf.convergent(i)
            assert semiconvergent(D, i, cf.u(i + 2)) == cf.convergent(i + 2)
    with pytest.raises(IndexOutOfRange):
        semiconvergent(2, -1, cf_expand(2).u(1) + 1)
    with pytest.raises(IndexOutOfRange):
        semiconvergent(2, -2, 0)


def test_indecomposables_quadratic_d2():
    recs = indecomposables_quadratic(2, 50)
    coords = {r.element.coords for r in recs}
    assert (1, 0) in coords  # i = -1, r = 0
    assert (2, 1) in coords  # the norm-2 indecomposable 2 + sqrt(2)
    assert (1, 1) not in coords  # 1 + sqrt(2) has norm -1
    for r in recs:
        assert r.element.is_totally_positive()
        assert r.element.norm() <= 50


def test_indecomposables_quadratic_d5():
    # Q(sqrt 5): every totally positive semiconvergent is a unit
    recs = indecomposables_quadratic(5, 100)
    assert recs and all(r.element.norm() == 1 for r in recs)
    assert search_indecomposables(5, 100) == []


def test_indecomposables_quadratic_d26():
    # D = t^2 + 1 with t = 5: counts n = 2t+1 and #S = 2t
    assert quad_counts(26) == (11, 10)
    recs = indecomposables_quadratic(26, 200)
    orbits = {quad_ideal_hnf(r.element) for r in recs if abs(r.element.norm()) != 1}
    assert len(orbits) >= 4


def test_quad_counts_examples():
    for t in (1, 3, 5):
        assert quad_counts(t * t + 1) == (2 * t + 1, 2 * t)
    # period of sqrt(3) is (1, 2): n = u_1 + 1 = 2, #S = 2*u_1 = 2
    assert quad_counts(3) == (2, 2)
    # s odd: n = 2*u_{s-1} + 1
    assert quad_counts(13) == (3, 3)


def test_trace_one_delta_all_odd_indices():
    for D in TESTED_D:
        cf = cf_expand(D)
        for i in range(-1, 2 * cf.period_length, 2):
            delta = trace_one_delta(D, i)
            assert is_totally_positive_quad_codiff(delta)
            for r in range(0, cf.u(i + 2) + 1):
                assert quad_trace_pairing(delta, semiconvergent(D, i, r)) == 1
    with pytest.raises(IndexOutOfRange):
        trace_one_delta(2, 0)


def test_trace_one_delta_d2_explicit():
    delta = trace_one_delta(2, -1)
    # delta = (-p_0 + q_0 sqrt(2)) / (2 sqrt(2)) with (p_0, q_0) = (1, 1)
    assert delta.numerator.coords == (-1, 1)


def test_scaling_resolution_one_mod_four():
    """The literal display is D times the working certificate."""
    for D in (5, 13):
        rec = trace_one_delta_scalings(D, 1)
        assert rec["passing"] == "literal/D"
        assert rec["literal_trace"] == D
        assert rec["literal_totally_positive"] is True
    rec = trace_one_delta_scalings(2, 1)
    assert rec["passing"] == "direct" and rec["literal_trace"] == 1


def test_quad_pairing_integrality():
    for D in TESTED_D:
        f = make_quad_field(D)
        s = sqrt_disc_element(f)
        for _ in range(200):
            g = quad_elem(f, RNG.randint(-9, 9), RNG.randint(-9, 9))
            x = quad_elem(f, RNG.randint(-9, 9), RNG.randint(-9, 9))
            got = quad_trace_pairing(QuadCodifferentElement(g), x)
            # independent route: Tr(g*x*conj(s))/N(s) must equal it
            prod = g * x * s.conj()
            assert Fraction(prod.trace(), s.norm()) == got


def test_fundamental_tp_unit():
    eps = fundamental_tp_unit(2)
    assert eps.coords == (3, 2)  # (1 + sqrt 2)^2
    for D in TESTED_D:
        eps = fundamental_tp_unit(D)
        assert eps.norm() == 1 and eps.is_totally_positive()
        assert eps.coords != (1, 0)


def test_decompose_quadratic():
    f = make_quad_field(2)
    two = quad_elem(f, 2, 0)
    got = decompose_quadratic(two)
    assert got == (quad_elem(f, 1, 0), quad_elem(f, 1, 0))
    el = quad_elem(f, 2, 1)
    assert decompose_quadratic(el) is None  # 2 + sqrt(2) is indecomposable


def test_search_vs_closed_inventories():
    for D in TESTED_D:
        window = 4 * D
        closed = {
            quad_ideal_hnf(r.element)
            for r in indecomposables_quadratic(D, window)
            if abs(r.element.norm()) != 1
        }
        found = {quad_ideal_hnf(e) for e in search_indecomposables(D, window)}
        assert closed == found, D


def test_quad_ideal_hnf_unit_invariance():
    f = make_quad_field(10)
    eps = fundamental_tp_unit(10)
    el = quad_elem(f, 4, 1)  # norm 6
    assert quad_ideal_hnf(el) == quad_ideal_hnf(el * eps)
    assert quad_ideal_hnf(el) != quad_ideal_hnf(el.conj())
