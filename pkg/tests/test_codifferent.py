"""Trace pairing, the canonical certificate delta, monogenicity certificates."""

import random
from fractions import Fraction

import pytest

from indecomp.codifferent import (
    CodifferentElement,
    MonogenicityStatus,
    _fprime_inverse_parts,
    certificate_delta,
    certified_simplest,
    fprime_element,
    is_totally_positive_codiff,
    monogenicity_certificate,
    pairing_matrix,
    trace_pairing,
)
from indecomp.errors import UnsupportedFamily, ZeroElement
from indecomp.order_kernel import (
    Family,
    OrderElement,
    elem,
    embed_sign_definite,
    make_field,
    mul,
    multiplication_matrix,
    one,
    rho,
    make_custom_field,
)

RNG = random.Random(555001)


def rand_elem(field, lim=8):
    return OrderElement(tuple(RNG.randint(-lim, lim) for _ in range(3)), field)


def _pairing_by_rational_route(field, gamma, x):
    """Independent Tr(gamma*x/f'(rho)) via exact rational linear algebra."""
    adj, det = _fprime_inverse_parts(field)
    prod = mul(gamma, x)
    inv_coords = [
        Fraction(sum(adj[i][k] * prod.coords[k] for k in range(3)), det) for i in range(3)
    ]
    c2, c1, _ = field.minpoly
    tr = 3 * inv_coords[0] - c2 * inv_coords[1] + (c2 * c2 - 2 * c1) * inv_coords[2]
    assert tr.denominator == 1
    return int(tr)


def test_pairing_integral_and_matches_rational_route():
    for family, a in ((Family.SIMPLEST_CUBIC, 7), (Family.ENNOLA, 4), (Family.THOMAS, 3)):
        f = make_field(family, a)
        for _ in range(400):
            gamma, x = rand_elem(f), rand_elem(f)
            got = trace_pairing(CodifferentElement(gamma), x)
            assert got == _pairing_by_rational_route(f, gamma, x)


def test_pairing_bilinear():
    f = make_field(Family.SIMPLEST_CUBIC, 4)
    for _ in range(300):
        g1, g2, x, y = (rand_elem(f) for _ in range(4))
        d1, d2, d12 = (CodifferentElement(g) for g in (g1, g2, g1 + g2))
        assert trace_pairing(d12, x) == trace_pairing(d1, x) + trace_pairing(d2, x)
        assert trace_pairing(d1, x + y) == trace_pairing(d1, x) + trace_pairing(d1, y)


def test_certificate_delta_closed_form():
    """Tr(delta * (v1 + v2 rho + v3 rho^2)) = v1 + v3 for both families."""
    for field in (make_field(Family.SIMPLEST_CUBIC, 7), make_field(Family.ENNOLA, 5)):
        delta = certificate_delta(field)
        for _ in range(300):
            x = rand_elem(field)
            assert trace_pairing(delta, x) == x.coords[0] + x.coords[2]


def test_certificate_delta_examples():
    f = make_field(Family.SIMPLEST_CUBIC, 7)
    delta = certificate_delta(f)
    assert trace_pairing(delta, one(f)) == 1
    assert trace_pairing(delta, rho(f)) == 0
    assert trace_pairing(delta, elem(f, 1, 1, 1)) == 2
    # triangle elements -v - w rho + (v+1) rho^2 pair to 1
    for v, w in ((0, 1), (2, 20), (7, 64)):
        assert trace_pairing(delta, elem(f, -v, -w, v + 1)) == 1


def test_certificate_delta_char_poly_display():
    """(a^2+3a+9)*delta is a root of x^3 - n x^2 + 2n x - n, n = a^2+3a+9."""
    for a in (-1, 0, 1, 2, 4, 7):
        f = make_field(Family.SIMPLEST_CUBIC, a)
        n = a * a + 3 * a + 9
        scaled = CodifferentElement(certificate_delta(f).numerator * n)
        adj, det = _fprime_inverse_parts(f)
        mg = multiplication_matrix(scaled.numerator)
        m = [
            [Fraction(sum(mg[i][k] * adj[k][j] for k in range(3)), det) for j in range(3)]
            for i in range(3)
        ]
        e1 = m[0][0] + m[1][1] + m[2][2]
        e2 = (
            m[0][0] * m[1][1] - m[0][1] * m[1][0]
            + m[0][0] * m[2][2] - m[0][2] * m[2][0]
            + m[1][1] * m[2][2] - m[1][2] * m[2][1]
        )
        e3 = (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
        assert (e1, e2, e3) == (n, 2 * n, n)


def test_certificate_delta_totally_positive():
    for a in (-1, 0, 1, 2, 4, 7):
        f = make_field(Family.SIMPLEST_CUBIC, a)
        assert is_totally_positive_codiff(certificate_delta(f))


def test_inverse_fprime_not_totally_positive():
    f = make_field(Family.SIMPLEST_CUBIC, 7)
    assert not is_totally_positive_codiff(CodifferentElement(one(f)))
    # embedding-sign confirmation: f'(rho) has a negative conjugate
    ivs, _ = embed_sign_definite(fprime_element(f))
    signs = [1 if iv.is_positive() else -1 for iv in ivs]
    assert -1 in signs and 1 in signs


def test_squares_are_totally_positive_codiff():
    f = make_field(Family.SIMPLEST_CUBIC, 4)
    fp = fprime_element(f)
    for _ in range(100):
        x = rand_elem(f, 4)
        if x.is_zero():
            continue
        # x^2 * f' / f' = x^2 is a totally positive codifferent member
        assert is_totally_positive_codiff(CodifferentElement(mul(mul(x, x), fp)))


def test_codiff_zero_rejected():
    f = make_field(Family.SIMPLEST_CUBIC, 4)
    with pytest.raises(ZeroElement):
        is_totally_positive_codiff(CodifferentElement(elem(f, 0, 0, 0)))


def test_pairing_matrix_shape():
    f = make_field(Family.ENNOLA, 3)
    b = pairing_matrix(f)
    assert b[0][0] == b[0][1] == b[1][0] == 0
    assert b[0][2] == b[1][1] == b[2][0] == 1


def test_monogenicity_certificate():
    cert = MonogenicityStatus.CERTIFIED_MONOGENIC
    unv = MonogenicityStatus.UNVERIFIED
    cases = {7: cert, 0: cert, 5: unv, 6: cert, 3: unv, 9: cert, 12: unv, 41: unv, 2: cert}
    for a, want in cases.items():
        assert monogenicity_certificate(make_field(Family.SIMPLEST_CUBIC, a)) is want, a
    certified = [a for a in range(-1, 51) if certified_simplest(a)]
    assert len(certified) == 44
    assert set(range(-1, 51)) - set(certified) == {3, 5, 12, 21, 30, 39, 41, 48}
    with pytest.raises(UnsupportedFamily):
        monogenicity_certificate(make_field(Family.ENNOLA, 3))


def test_certificate_delta_unsupported():
    with pytest.raises(UnsupportedFamily):
        certificate_delta(make_field(Family.THOMAS, 2))
    with pytest.raises(UnsupportedFamily):
        certificate_delta(make_custom_field(0, -4, 1))
