"""Neighborhood predicates for the order bound topology.

Works over the positive orthant (simplicial cones are handled by an exact
linear change of coordinates, see :func:`orthant_coordinates`), where order
intervals are boxes and containment of a box in a halfspace linearizes
through componentwise absolute values.  All computations are exact.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from . import exactlp, polyhedral
from .core import (
    ConeNotSimplicial,
    DimensionMismatch,
    NotInterior,
    NotPositive,
    OrderInterval,
    RationalVector,
    rational_rank,
)

ABSORBS_AT_EVERY_SCALE = math.inf  # sentinel for degenerate (zero) intervals


@dataclass(frozen=True)
class Polytope:
    """Halfspace-represented convex set ``{y : a_i . y <= b_i}``."""

    normals: tuple[RationalVector, ...]
    offsets: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.normals) != len(self.offsets):
            raise DimensionMismatch("one offset per normal required")
        if not self.normals:
            raise ValueError("a polytope needs at least one halfspace")
        d = self.normals[0].dim
        for a in self.normals:
            if a.dim != d:
                raise DimensionMismatch("mixed normal dimensions")

    @property
    def dim(self) -> int:
        return self.normals[0].dim

    def contains(self, y: RationalVector) -> bool:
        if y.dim != self.dim:
            raise DimensionMismatch(f"{y.dim} != {self.dim}")
        return all(a.dot(y) <= b for a, b in zip(self.normals, self.offsets))

    def zero_interior(self) -> bool:
        """0 lies in the interior iff every offset is positive."""
        return all(b > 0 for b in self.offsets)

    def rows(self):
        return zip(self.normals, self.offsets)


def box(radii: Iterable) -> Polytope:
    """Axis-aligned box ``prod [-r_k, r_k]``."""
    r = RationalVector(radii)
    normals = []
    offsets = []
    for k in range(r.dim):
        e = RationalVector.unit(r.dim, k)
        normals += [e, -e]
        offsets += [r.coords[k], r.coords[k]]
    return Polytope(tuple(normals), tuple(offsets))


def is_bounded(U: Polytope) -> bool:
    """Every coordinate has a finite maximum and minimum over ``U`` (exact LPs)."""
    for k in range(U.dim):
        for sign in (1, -1):
            out = exactlp.solve(
                exactlp.LinearProgram(
                    constraint_matrix=U.normals,
                    rhs=U.offsets,
                    relations=tuple(exactlp.LEQ for _ in U.normals),
                    objective=sign * RationalVector.unit(U.dim, k),
                    sense=exactlp.MAXIMIZE,
                )
            )
            if out.status == "unbounded":
                return False
            if out.status == "infeasible":
                return True  # empty set is bounded
    return True


def vertices(U: Polytope) -> tuple[RationalVector, ...]:
    """Vertex set of a bounded polytope via the homogenization cone.

    ``{(y, t) : a_i.y <= b_i t, t >= 0}`` is a halfspace cone whose rays
    with positive last coordinate are the vertices (after rescaling).
    Inherits the double-description dimension cap.
    """
    d = U.dim
    normals = [
        RationalVector(tuple(-c for c in a.coords) + (b,)) for a, b in U.rows()
    ]
    normals.append(RationalVector((0,) * d + (1,)))
    hcone = polyhedral.HCone(tuple(normals), d + 1)
    verts = []
    for ray in polyhedral.h_to_v(hcone).generators:
        t = ray.coords[d]
        if t > 0:
            verts.append(RationalVector(c / t for c in ray.coords[:d]))
        elif not RationalVector(ray.coords[:d]).is_zero():
            raise ValueError("polytope is unbounded (recession ray found)")
    return tuple(verts)


def is_circled(U: Polytope) -> bool:
    """For a convex set containing 0, circled means symmetric: ``U = -U``.

    Decided exactly by checking ``-v in U`` for every vertex of ``U``.
    """
    if not is_bounded(U):
        raise ValueError("circledness check expects a bounded set")
    if not U.contains(RationalVector.zero(U.dim)):
        raise ValueError("circledness check expects 0 in the set")
    return all(U.contains(-v) for v in vertices(U))


def _require_orthant(cone) -> int:
    if not isinstance(cone, polyhedral.HCone):
        raise ConeNotSimplicial("interval must live over an orthant H-cone")
    units = {RationalVector.unit(cone.dim, k) for k in range(cone.dim)}
    normalized = set()
    for a in cone.normals:
        pos = [c for c in a.coords if c != 0]
        if len(pos) != 1 or pos[0] <= 0:
            raise ConeNotSimplicial("cone is not the positive orthant")
        normalized.add(a * (1 / pos[0]))
    if normalized != units:
        raise ConeNotSimplicial("cone is not the positive orthant")
    return cone.dim


def absorbs_interval(
    U: Polytope, iv: OrderInterval
) -> Union[Fraction, float]:
    """Largest ``mu`` with ``mu * [lo, hi]`` inside ``U`` (exact).

    Over the orthant the interval is a box, and the maximum of ``a_i . v``
    over its vertices is ``sum_j max(a_ij*lo_j, a_ij*hi_j)``.  Returns the
    ``ABSORBS_AT_EVERY_SCALE`` sentinel if no row constrains the scale
    (degenerate interval at 0); a value of 0 means no positive scale fits.
    Combined with a circled ``U`` this decides absorption in both signs.
    """
    dim = _require_orthant(iv.cone)
    if U.dim != dim:
        raise DimensionMismatch(f"{U.dim} != {dim}")
    best: Optional[Fraction] = None
    for a, b in U.rows():
        peak = sum(
            (max(c * lo, c * hi) for c, lo, hi in zip(a.coords, iv.lo, iv.hi)),
            Fraction(0),
        )
        if peak > 0:
            ratio = b / peak
            best = ratio if best is None else min(best, ratio)
    if best is None:
        return ABSORBS_AT_EVERY_SCALE
    return max(best, Fraction(0))


@dataclass(frozen=True)
class IntervalNeighborhoodCheck:
    """Outcome of testing ``[-u, u]`` as an order-bound neighborhood of 0."""

    verdict: bool
    diagnosis: str
    failing_interval: Optional[OrderInterval] = None


def interval_in_bob(
    u: RationalVector,
    trials: int = 50,
    rng: Optional[random.Random] = None,
) -> IntervalNeighborhoodCheck:
    """Is ``[-u, u]`` a neighborhood base element of the order bound topology?

    The box is convex and symmetric by construction; what has to be checked
    is absorption of order intervals.  Deterministic probes (the intervals
    ``[0, e_k]``) decide the orthant case on their own; randomized intervals
    add breadth.  ``u`` is an order unit exactly when every probe absorbs.
    """
    dim = u.dim
    orthant = polyhedral.positive_orthant(dim)
    # [-u, u] as row pairs (e_k, -e_k) with offset u_k: convex, and circled
    # because the two rows of each pair share the offset (empty if some
    # u_k < 0, in which case nothing is absorbed).
    normals = []
    offsets = []
    for k in range(dim):
        e = RationalVector.unit(dim, k)
        normals += [e, -e]
        offsets += [u.coords[k], u.coords[k]]
    ball = Polytope(tuple(normals), tuple(offsets))

    probes: list[OrderInterval] = []
    zero = RationalVector.zero(dim)
    for k in range(dim):
        e = RationalVector.unit(dim, k)
        probes.append(OrderInterval(zero, e, orthant))
        probes.append(OrderInterval(e, e, orthant))
    if rng is not None:
        for _ in range(trials):
            lo = RationalVector(
                [Fraction(rng.randint(-8, 8), rng.randint(1, 4)) for _ in range(dim)]
            )
            span = RationalVector(
                [Fraction(rng.randint(0, 8), rng.randint(1, 4)) for _ in range(dim)]
            )
            probes.append(OrderInterval(lo, lo + span, orthant))

    for iv in probes:
        mu = absorbs_interval(ball, iv)
        if mu != ABSORBS_AT_EVERY_SCALE and mu <= 0:
            return IntervalNeighborhoodCheck(
                verdict=False,
                diagnosis=f"interval [{iv.lo!r}, {iv.hi!r}] is never absorbed",
                failing_interval=iv,
            )
    return IntervalNeighborhoodCheck(
        verdict=True, diagnosis=f"absorbed all {len(probes)} probe intervals"
    )


def i_of_u(U: Polytope) -> Polytope:
    """The self-centered part ``{x in U : [-x, x] ⊆ U}`` as an exact H-rep.

    For ``x >= 0`` the box condition under row ``a_i`` peaks at the sign
    pattern of ``a_i``, giving the row ``sum_j |a_ij| x_j <= b_i``; these
    absolute rows dominate the original ones on the orthant.
    """
    d = U.dim
    normals: list[RationalVector] = []
    offsets: list[Fraction] = []
    for k in range(d):
        normals.append(-RationalVector.unit(d, k))
        offsets.append(Fraction(0))
    seen = set()
    for a, b in U.rows():
        row = (a.abs(), b)
        if row not in seen:
            seen.add(row)
            normals.append(row[0])
            offsets.append(row[1])
    return Polytope(tuple(normals), tuple(offsets))


def v_of_u_member(U: Polytope, y: RationalVector) -> bool:
    """Membership of ``y`` in ``V(U)``, the union of boxes ``[-x, x]`` over
    ``x`` in ``I(U)``, decided by the exact feasibility LP
    ``exists x: x_j >= |y_j|, x in I(U)``."""
    inner = i_of_u(U)
    if y.dim != U.dim:
        raise DimensionMismatch(f"{y.dim} != {U.dim}")
    rows = list(inner.normals)
    rhs = list(inner.offsets)
    rels = [exactlp.LEQ] * len(rows)
    for k in range(U.dim):
        rows.append(RationalVector.unit(U.dim, k))
        rhs.append(abs(y.coords[k]))
        rels.append(exactlp.GEQ)
    out = exactlp.solve(
        exactlp.LinearProgram(
            constraint_matrix=tuple(rows),
            rhs=tuple(rhs),
            relations=tuple(rels),
            objective=RationalVector.zero(U.dim),
            sense=exactlp.FEASIBILITY,
        )
    )
    return out.status == "feasible"


def catches_canonical_chain(U: Polytope, w: RationalVector) -> int:
    """Least ``n`` with ``[-w/n, w/n] ⊆ U`` (exact row ratios).

    Requires 0 in the interior of ``U`` and ``w`` in the orthant; the index
    is bounded a priori by the row ratios, so no search is needed.  This
    decides catching for the canonical chain family only.
    """
    if not U.zero_interior():
        raise NotInterior("U must contain 0 in its interior")
    if any(c < 0 for c in w.coords):
        raise NotPositive(f"{w!r} is not in the positive orthant")
    if w.dim != U.dim:
        raise DimensionMismatch(f"{w.dim} != {U.dim}")
    n = 1
    for a, b in U.rows():
        peak = sum(
            (abs(c) * wv for c, wv in zip(a.coords, w.coords)), Fraction(0)
        )
        if peak > 0:
            n = max(n, math.ceil(peak / b))
    return n


def v_of_u_catch_index(U: Polytope, w: RationalVector) -> int:
    """Least ``n`` with ``[-w/n, w/n] ⊆ V(U)``.

    Since ``I(U)`` is downward closed on the orthant, the box fits in
    ``V(U)`` exactly when ``w/n`` lies in ``I(U)``; that reduces to the
    same row ratios as :func:`catches_canonical_chain` applied to the
    absolute-row form.
    """
    inner = i_of_u(U)
    if not all(b > 0 for a, b in inner.rows() if not any(c < 0 for c in a.coords)):
        raise NotInterior("I(U) must contain a neighborhood of 0 on the orthant")
    if any(c < 0 for c in w.coords):
        raise NotPositive(f"{w!r} is not in the positive orthant")
    n = 1
    for a, b in inner.rows():
        if any(c < 0 for c in a.coords):
            continue  # orthant rows, satisfied by w/n automatically
        peak = sum((c * wv for c, wv in zip(a.coords, w.coords)), Fraction(0))
        if peak > 0:
            n = max(n, math.ceil(peak / b))
    return n


def orthant_coordinates(cone: polyhedral.HCone):
    """Exact change of coordinates carrying a simplicial cone to the orthant.

    For a cone with exactly ``dim`` independent rows, ``y = A x`` (rows of
    ``A`` the normals) maps the cone onto the positive orthant and order
    intervals onto boxes.  Returns the forward map.
    """
    if len(cone.normals) != cone.dim or rational_rank(cone.normals) != cone.dim:
        raise ConeNotSimplicial(
            "need exactly dim independent rows for an orthant transform"
        )

    def forward(x: RationalVector) -> RationalVector:
        return RationalVector([a.dot(x) for a in cone.normals])

    return forward
