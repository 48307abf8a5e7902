"""Brute-force ground truth: decomposability, minimal traces, lattice search.

All searches are exhaustive over rigorously derived integer boxes: the box
is the interval hull of the constraint region mapped through the inverse of
the embedding matrix, computed with rational interval arithmetic (Cramer's
rule), with root intervals refined until the determinant is sign-definite.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .codifferent import (
    CodifferentElement,
    dual_pairing_vector,
    fprime_element,
    is_totally_positive_codiff,
    trace_pairing,
)
from .errors import IllegalParameter, CertificateFailure, RefinementLimit, UnboundedRegion
from .intervals import Interval, det
from .order_kernel import (
    REFINEMENT_CAP,
    FieldSpec,
    OrderElement,
    embed,
    is_totally_positive,
    norm,
    refine_roots,
)


# ---------------------------------------------------------------------------
# Generic interval boxes (dimension 2 and 3)


def box_from_embedding(
    rows: Sequence[Sequence[Interval]], bounds: Sequence[Interval]
) -> Optional[list[tuple[int, int]]]:
    """Integer coordinate box enclosing {x : sigma_i(x) in bounds_i for all i}.

    rows is the embedding matrix (row i = embedding i on the power basis) as
    intervals; returns None when its determinant is not yet sign-definite
    (caller refines), otherwise per-coordinate integer ranges (possibly empty).
    """
    d = len(rows)
    dt = det(rows)
    if not dt.sign_definite():
        return None
    ranges = []
    for j in range(d):
        m = [[bounds[i] if k == j else rows[i][k] for k in range(d)] for i in range(d)]
        xj = det(m) / dt
        ranges.append((math.ceil(xj.lo), math.floor(xj.hi)))
    return ranges


def iterate_box(ranges: Sequence[tuple[int, int]]) -> Iterable[tuple[int, ...]]:
    """Lexicographically ascending integer points of a coordinate box."""
    if any(lo > hi for lo, hi in ranges):
        return iter(())
    return itertools.product(*(range(lo, hi + 1) for lo, hi in ranges))


# ---------------------------------------------------------------------------
# Cubic embedding contexts


def _embedding_rows(field: FieldSpec, rounds: int) -> list[list[Interval]]:
    r = refine_roots(field, rounds)
    return [[Interval(1), iv, iv.square()] for iv in r.intervals]


def _context(
    field: FieldSpec,
    positive: Sequence[OrderElement] = (),
    sign_definite: Sequence[OrderElement] = (),
):
    """Embedding rows with sign-definite determinant, plus element enclosures.

    Root intervals are halved until the determinant is sign-definite, every
    element of `positive` has positive enclosures, and every element of
    `sign_definite` has sign-definite enclosures.
    """
    for rounds in range(REFINEMENT_CAP + 1):
        r = refine_roots(field, rounds)
        rows = [[Interval(1), iv, iv.square()] for iv in r.intervals]
        if not det(rows).sign_definite():
            continue
        enclosures: dict[OrderElement, tuple[Interval, ...]] = {}
        ok = True
        for el in tuple(positive) + tuple(sign_definite):
            ivs = embed(el, r)
            want_positive = el in positive
            if want_positive and not all(iv.is_positive() for iv in ivs):
                ok = False
                break
            if not all(iv.sign_definite() for iv in ivs):
                ok = False
                break
            enclosures[el] = ivs
        if ok:
            return rows, enclosures
    raise RefinementLimit("embedding context did not stabilize")


def search_box(field: FieldSpec, constraints: Sequence[tuple[object, object]]) -> list[tuple[int, int]]:
    """Integer box for per-embedding constraints lo_i < sigma_i(x) < hi_i.

    Every embedding must carry two finite rational bounds, otherwise the
    region is unbounded.
    """
    if len(constraints) != 3:
        raise UnboundedRegion("need one (lo, hi) constraint per embedding")
    bounds = []
    for lo, hi in constraints:
        if lo is None or hi is None:
            raise UnboundedRegion("one-sided constraints leave the region unbounded")
        bounds.append(Interval(Fraction(lo), Fraction(hi)))
    for rounds in range(REFINEMENT_CAP + 1):
        rows = _embedding_rows(field, rounds)
        box = box_from_embedding(rows, bounds)
        if box is not None:
            return box
    raise RefinementLimit("embedding determinant never became sign-definite")


# ---------------------------------------------------------------------------
# Decomposability


def decompose(alpha: OrderElement) -> Optional[tuple[OrderElement, OrderElement]]:
    """Lexicographically least (beta, alpha-beta) with both totally positive.

    Returns None exactly when alpha is indecomposable in the order.
    """
    if alpha.is_zero() or not is_totally_positive(alpha):
        raise IllegalParameter("decompose expects a totally positive element")
    rows, enclosures = _context(alpha.field, positive=[alpha])
    bounds = [Interval(0, iv.hi) for iv in enclosures[alpha]]
    box = box_from_embedding(rows, bounds)
    assert box is not None
    for coords in iterate_box(box):
        if coords == (0, 0, 0):
            continue
        beta = OrderElement(coords, alpha.field)
        rest = alpha - beta
        if rest.is_zero():
            continue
        if is_totally_positive(beta) and is_totally_positive(rest):
            return beta, rest
    return None


# ---------------------------------------------------------------------------
# Minimal trace over the totally positive codifferent


def _trace_slice(alpha: OrderElement, t: int) -> list[OrderElement]:
    """All numerators gamma with Tr((gamma/f')*alpha) = t and gamma/f' >> 0."""
    field = alpha.field
    fp = fprime_element(field)
    rows, enclosures = _context(field, positive=[alpha], sign_definite=[fp])
    aiv = enclosures[alpha]
    fiv = enclosures[fp]
    bounds = []
    for i in range(3):
        # 0 < sigma_i(delta) < t / sigma_i(alpha), gamma = delta * f'(rho)
        if fiv[i].is_positive():
            bounds.append(Interval(0, t * fiv[i].hi / aiv[i].lo))
        else:
            bounds.append(Interval(t * fiv[i].lo / aiv[i].lo, 0))
    box = box_from_embedding(rows, bounds)
    assert box is not None
    c = dual_pairing_vector(field, alpha)
    pivot = max(range(3), key=lambda j: abs(c[j]))
    if c[pivot] == 0:
        return []
    others = [j for j in range(3) if j != pivot]
    hits = []
    (lo0, hi0), (lo1, hi1) = box[others[0]], box[others[1]]
    plo, phi = box[pivot]
    for x0 in range(lo0, hi0 + 1):
        for x1 in range(lo1, hi1 + 1):
            num = t - c[others[0]] * x0 - c[others[1]] * x1
            q, r = divmod(num, c[pivot])
            if r:
                continue
            if not plo <= q <= phi:
                continue
            coords = [0, 0, 0]
            coords[others[0]] = x0
            coords[others[1]] = x1
            coords[pivot] = q
            gamma = OrderElement(tuple(coords), field)
            if is_totally_positive_codiff(CodifferentElement(gamma)):
                hits.append(gamma)
    hits.sort(key=lambda g: g.coords)
    return hits


def min_trace(
    alpha: OrderElement, t_max: int = 10
) -> Optional[tuple[int, CodifferentElement]]:
    """Smallest t <= t_max with a totally positive delta of Tr(alpha*delta) = t.

    The witness is the lexicographically least numerator; None means every
    trace up to t_max is unattained (reported as "> t_max", never as a claim).
    """
    if alpha.is_zero() or not is_totally_positive(alpha):
        raise IllegalParameter("min_trace expects a totally positive element")
    if t_max < 1:
        raise IllegalParameter("t_max must be at least 1")
    for t in range(1, t_max + 1):
        hits = _trace_slice(alpha, t)
        if hits:
            witness = CodifferentElement(hits[0])
            assert trace_pairing(witness, alpha) == t
            return t, witness
    return None


def shared_trace_witness(elements: Sequence[OrderElement], t: int) -> CodifferentElement:
    """One totally positive delta with Tr(delta*e) = t for every listed element."""
    if not elements:
        raise IllegalParameter("need at least one element")
    for gamma in _trace_slice(elements[0], t):
        delta = CodifferentElement(gamma)
        if all(trace_pairing(delta, e) == t for e in elements[1:]):
            return delta
    raise CertificateFailure(f"no shared totally positive trace-{t} witness")


# ---------------------------------------------------------------------------
# Window search for indecomposables


@dataclass(frozen=True)
class SearchInventory:
    """Ground-truth inventory from the two fundamental parallelepipeds."""

    indecomposables: tuple[OrderElement, ...]
    units: tuple[OrderElement, ...]


def indecomposables_by_search(field: FieldSpec) -> SearchInventory:
    """Exhaustive decompose-testing of the window lattice points.

    Unit lattice points (norm +-1) are reported separately: they are
    trivially indecomposable and the closed-form inventories list only the
    element 1 for them.
    """
    from .families import parallelepiped_candidates, standard_parallelepipeds

    seen: dict[tuple[int, int, int], OrderElement] = {}
    for gens in standard_parallelepipeds(field):
        cands, vertices = parallelepiped_candidates(*gens)
        for el in cands + vertices:
            seen[el.coords] = el
    units = []
    indec = []
    for coords in sorted(seen):
        el = seen[coords]
        if el.is_zero() or not is_totally_positive(el):
            continue
        if norm(el) in (1, -1):
            units.append(el)
            continue
        if decompose(el) is None:
            indec.append(el)
    return SearchInventory(tuple(indec), tuple(units))


# ---------------------------------------------------------------------------
# Exact norm superadditivity check


def norms_superadditive(a_norm: int, b_norm: int, sum_norm: int) -> bool:
    """Exact test of sum_norm^(1/3) >= a_norm^(1/3) + b_norm^(1/3).

    With D = sum_norm - a_norm - b_norm, the inequality holds iff D >= 0 and
    D^3 >= 27 * a_norm * b_norm * (D + a_norm + b_norm): the right-hand side
    3*(AB)^(1/3)*(A^(1/3)+B^(1/3)) is the positive root of the cubic
    t^3 - 27ABt - 27AB(A+B).
    """
    if a_norm <= 0 or b_norm <= 0 or sum_norm <= 0:
        raise IllegalParameter("norms of totally positive elements are positive")
    d = sum_norm - a_norm - b_norm
    if d < 0:
        return False
    return d**3 >= 27 * a_norm * b_norm * (d + a_norm + b_norm)
