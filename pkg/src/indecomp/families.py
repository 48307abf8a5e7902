"""Closed-form indecomposable inventories for the three cubic families.

The triangle of a SimplestCubic field is indexed internally by (v, W) with
w = v(a+2) + 1 + W; the order-3 rotation (conjugation combined with a fixed
totally positive unit) is affine in these coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .codifferent import CodifferentElement, certificate_delta, trace_pairing
from .errors import (
    DegenerateSpan,
    IllegalParameter,
    OutOfDomain,
    OutOfRange,
    OutOfTriangle,
)
from .order_kernel import (
    Family,
    FieldSpec,
    OrderElement,
    elem,
    is_totally_positive,
    make_field,
    mul,
    one,
    unit_generators,
    unit_inverse,
)

KIND_UNIT = "unit"
KIND_EXCEPTIONAL = "exceptional"
KIND_TRIANGLE = "triangle"
KIND_ENNOLA_ROW = "ennola_row"
KIND_THOMAS_ROW1 = "thomas_row1"
KIND_THOMAS_ROW2 = "thomas_row2"


@dataclass(frozen=True)
class TrianglePoint:
    v: int
    W: int

    def w(self, a: int) -> int:
        return self.v * (a + 2) + 1 + self.W


def in_triangle(a: int, p: TrianglePoint) -> bool:
    return 0 <= p.v <= a and 0 <= p.W <= a - p.v


def unit_corners(a: int) -> tuple[TrianglePoint, TrianglePoint, TrianglePoint]:
    """The three unit points rho^2, 1, (rho')^{-2} in (v, W) indexing."""
    return (TrianglePoint(0, -1), TrianglePoint(-1, a + 1), TrianglePoint(a + 1, 0))


def triangle_element(field: FieldSpec, p: TrianglePoint) -> OrderElement:
    a = field.a
    w = p.w(a)
    return elem(field, -p.v, -w, p.v + 1)


def rotate(p: TrianglePoint, a: int, turns: int = 1) -> TrianglePoint:
    """Order-3 rotation of the triangle (and of its three unit corners).

    One turn sends alpha(v, W) to the first conjugate times (rho')^{-2},
    which is alpha(W, a-v-W); two turns use the second conjugate and rho^2.
    """
    if turns not in (1, 2):
        raise IllegalParameter("turns must be 1 or 2")
    if not (in_triangle(a, p) or p in unit_corners(a)):
        raise OutOfDomain(f"{p} outside triangle and unit corners for a={a}")
    q = TrianglePoint(p.W, a - p.v - p.W)
    if turns == 2:
        q = TrianglePoint(q.W, a - q.v - q.W)
    return q


def triangle_norm(a: int, v: int, W: int) -> int:
    """Closed-form norm of alpha(v, W) inside the triangle."""
    if not in_triangle(a, TrianglePoint(v, W)):
        raise OutOfTriangle(f"(v, W) = ({v}, {W}) outside triangle for a={a}")
    return (
        a * a * v * W
        - a * v * v * W
        - a * v * W * W
        + a * a * v
        - 2 * a * v * v
        + a * v * W
        + a * W * W
        + v**3
        - 3 * v * W * W
        - W**3
        + 3 * a * v
        + 3 * a * W
        - 3 * v * v
        - 3 * v * W
        - 3 * W * W
        + 2 * a
        + 3
    )


def fundamental_triangle(a: int) -> list[TrianglePoint]:
    """A fundamental third of the triangle under the order-3 rotation."""
    if a < 0:
        raise IllegalParameter("fundamental triangle needs a >= 0")
    bigA, a0 = divmod(a, 3)
    points: list[TrianglePoint] = []
    top = bigA - 1 if a0 == 0 else bigA
    for v in range(0, top + 1):
        for W in range(v, 3 * bigA + a0 - 2 * v - 1 + 1):
            points.append(TrianglePoint(v, W))
    if a0 == 0:
        points.append(TrianglePoint(bigA, bigA))
    return points


@dataclass(frozen=True)
class IndecomposableRecord:
    element: OrderElement
    kind: str
    index: tuple[int, ...]
    certificate: Optional[tuple[CodifferentElement, int]]


def _record(element, kind, index, cert_delta=None):
    cert = None
    if cert_delta is not None:
        t = trace_pairing(cert_delta, element)
        cert = (cert_delta, t)
    return IndecomposableRecord(element, kind, index, cert)


@lru_cache(maxsize=None)
def indecomposables_simplest(a: int) -> tuple[IndecomposableRecord, ...]:
    """1, 1+rho+rho^2, and the triangle; (a^2+3a+6)/2 records in total."""
    field = make_field(Family.SIMPLEST_CUBIC, a)
    delta = certificate_delta(field)
    records = [
        _record(one(field), KIND_UNIT, (), delta),
        _record(elem(field, 1, 1, 1), KIND_EXCEPTIONAL, (), delta),
    ]
    for v in range(0, a + 1):
        for W in range(0, a - v + 1):
            p = TrianglePoint(v, W)
            records.append(_record(triangle_element(field, p), KIND_TRIANGLE, (v, W), delta))
    assert 2 * len(records) == a * a + 3 * a + 6
    return tuple(records)


@lru_cache(maxsize=None)
def indecomposables_ennola(a: int) -> tuple[IndecomposableRecord, ...]:
    """1 and 1 + w*rho + rho^2 for 1 <= w <= a-1."""
    field = make_field(Family.ENNOLA, a)
    delta = certificate_delta(field)
    records = [_record(one(field), KIND_UNIT, (), delta)]
    for w in range(1, a):
        records.append(_record(elem(field, 1, w, 1), KIND_ENNOLA_ROW, (w,), delta))
    return tuple(records)


@lru_cache(maxsize=None)
def indecomposables_thomas(a: int) -> tuple[IndecomposableRecord, ...]:
    """1, 1 - a*rho + rho^2, and the two rows; 2a+1 records in total."""
    field = make_field(Family.THOMAS, a)
    records = [
        _record(one(field), KIND_UNIT, ()),
        _record(elem(field, 1, -a, 1), KIND_EXCEPTIONAL, ()),
    ]
    for v in range(1, a):
        records.append(_record(elem(field, 0, (a + 2) * v + 1, -v), KIND_THOMAS_ROW1, (v,)))
    delta2 = _thomas_row2_delta(a)
    for w in range(a, 2 * a):
        records.append(
            _record(elem(field, -1, (a + 2) * w + 1, -w), KIND_THOMAS_ROW2, (w,), delta2)
        )
    assert len(records) == 2 * a + 1
    for rec in records:
        assert is_totally_positive(rec.element), rec
    return tuple(records)


@lru_cache(maxsize=None)
def _thomas_row2_delta(a: int) -> CodifferentElement:
    """Shared trace-2 certificate for the second Thomas row, found by search."""
    from .oracle import shared_trace_witness

    field = make_field(Family.THOMAS, a)
    row = [elem(field, -1, (a + 2) * w + 1, -w) for w in range(a, 2 * a)]
    return shared_trace_witness(row, t=2)


def parallelepiped_candidates(
    u1: OrderElement, u2: OrderElement, u3: OrderElement
) -> tuple[list[OrderElement], list[OrderElement]]:
    """Lattice points of the closed parallelepiped spanned by three units.

    Returns (candidates, vertex_sums): candidates are the lattice points that
    are not sums of a subset of the generators; vertex_sums are the (at most
    eight) subset sums that do land on lattice points, zero included.
    """
    field = u1.field
    if u2.field != field or u3.field != field:
        from .errors import FieldMismatch

        raise FieldMismatch("parallelepiped generators from different fields")
    gens = (u1.coords, u2.coords, u3.coords)
    m = tuple(tuple(gens[j][i] for j in range(3)) for i in range(3))  # columns = generators
    det = (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )
    if det == 0:
        raise DegenerateSpan("generators are linearly dependent")
    # adjugate for exact t = M^{-1} x
    adj = tuple(
        tuple(
            m[(j + 1) % 3][(i + 1) % 3] * m[(j + 2) % 3][(i + 2) % 3]
            - m[(j + 1) % 3][(i + 2) % 3] * m[(j + 2) % 3][(i + 1) % 3]
            for j in range(3)
        )
        for i in range(3)
    )
    subset_sums = set()
    for mask in range(8):
        s = [0, 0, 0]
        for b in range(3):
            if mask >> b & 1:
                for i in range(3):
                    s[i] += gens[b][i]
        subset_sums.add(tuple(s))
    lo = [min(0, *(s[i] for s in subset_sums)) for i in range(3)]
    hi = [max(0, *(s[i] for s in subset_sums)) for i in range(3)]
    # hull box of the vertices contains the parallelepiped (convexity)
    candidates = []
    vertex_sums = []
    for x0 in range(lo[0], hi[0] + 1):
        for x1 in range(lo[1], hi[1] + 1):
            for x2 in range(lo[2], hi[2] + 1):
                x = (x0, x1, x2)
                ts = [sum(adj[i][k] * x[k] for k in range(3)) for i in range(3)]
                if det > 0:
                    if not all(0 <= t <= det for t in ts):
                        continue
                else:
                    if not all(det <= t <= 0 for t in ts):
                        continue
                el = OrderElement(x, field)
                if x in subset_sums:
                    vertex_sums.append(el)
                else:
                    candidates.append(el)
    candidates.sort(key=lambda e: e.coords)
    vertex_sums.sort(key=lambda e: e.coords)
    return candidates, vertex_sums


def standard_parallelepipeds(field: FieldSpec):
    """The two parallelepipeds (1, e1, e2) and (1, e1, e1*e2^{-1})."""
    e1, e2 = unit_generators(field).totally_positive
    e3 = mul(e1, unit_inverse(e2))
    return ((one(field), e1, e2), (one(field), e1, e3))


def upper_strip_split(a: int, v: int, w: int) -> tuple[OrderElement, OrderElement]:
    """Explicit decomposition of -v - w*rho + (v+2)*rho^2 in the upper strip.

    The strip is 0 <= v <= a, (v+1)(a+1)+1 <= w <= (v+1)(a+2); the two parts
    re-sum to the element and are both totally positive.
    """
    if not (0 <= v <= a and (v + 1) * (a + 1) + 1 <= w <= (v + 1) * (a + 2)):
        raise OutOfRange(f"(v, w) = ({v}, {w}) outside the strip for a={a}")
    field = make_field(Family.SIMPLEST_CUBIC, a)
    first = elem(field, -v, -(a + 1) * (v + 1), v + 1)
    second = elem(field, 0, -(w - (a + 1) * (v + 1)), 1)
    total = first + second
    assert total.coords == (-v, -w, v + 2)
    return first, second
