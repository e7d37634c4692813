"""Polyhedral cones and their order-theoretic decision procedures.

Cones come in halfspace form (:class:`HCone`, rows ``a_i`` with
``K = {x : a_i . x >= 0}``) and generator form (:class:`VCone`).  H-cones are
closed by construction, so the order they induce is Archimedean; in finite
dimension the order-topological interior of such a cone is its standard
interior, which makes "order unit" and "net catching element" decidable by
exact sign conditions on the rows.  Every predicate here is tolerance-free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from . import exactlp
from .core import (
    DimensionCap,
    DimensionMismatch,
    NoSuchFunctional,
    NotDirected,
    NotInterior,
    NotPositive,
    NotStrictlyPositive,
    RationalVector,
    cone_leq,
    rational_rank,
)

DD_DIM_CAP = 6


@dataclass(frozen=True)
class HCone:
    """Cone in halfspace representation: ``{x : a_i . x >= 0 for all i}``.

    An empty row tuple is the whole space.  Rows must be nonzero.
    """

    normals: tuple[RationalVector, ...]
    dim: int

    def __post_init__(self):
        for a in self.normals:
            if a.dim != self.dim:
                raise DimensionMismatch("normal dimension != cone dimension")
            if a.is_zero():
                raise ValueError("zero normal row")

    def contains(self, x: RationalVector) -> bool:
        self._check(x)
        return all(a.dot(x) >= 0 for a in self.normals)

    def _check(self, x: RationalVector) -> None:
        if x.dim != self.dim:
            raise DimensionMismatch(f"{x.dim} != {self.dim}")


@dataclass(frozen=True)
class VCone:
    """Cone generated by finitely many rays (nonnegative combinations)."""

    generators: tuple[RationalVector, ...]
    dim: int

    def __post_init__(self):
        for r in self.generators:
            if r.dim != self.dim:
                raise DimensionMismatch("generator dimension != cone dimension")
            if r.is_zero():
                raise ValueError("zero generator")

    def contains(self, x: RationalVector) -> bool:
        if x.dim != self.dim:
            raise DimensionMismatch(f"{x.dim} != {self.dim}")
        if x.is_zero():
            return True
        if not self.generators:
            return False
        rows = []
        rhs = []
        rels = []
        m = len(self.generators)
        for i in range(self.dim):
            rows.append(RationalVector([r.coords[i] for r in self.generators]))
            rhs.append(x.coords[i])
            rels.append(exactlp.EQ)
        for j in range(m):
            rows.append(RationalVector.unit(m, j))
            rhs.append(0)
            rels.append(exactlp.GEQ)
        out = exactlp.solve(
            exactlp.LinearProgram(
                constraint_matrix=tuple(rows),
                rhs=tuple(Fraction(b) for b in rhs),
                relations=tuple(rels),
                objective=RationalVector.zero(m),
                sense=exactlp.FEASIBILITY,
            )
        )
        return out.status == "feasible"


def positive_orthant(dim: int) -> HCone:
    return HCone(tuple(RationalVector.unit(dim, k) for k in range(dim)), dim)


def member(cone: HCone, x: RationalVector) -> bool:
    """Exact membership via the halfspace rows."""
    return cone.contains(x)


def interior_member(cone: HCone, x: RationalVector) -> bool:
    """Standard-topology interior: every row strictly positive."""
    cone._check(x)
    return all(a.dot(x) > 0 for a in cone.normals)


def is_directed(cone: VCone) -> bool:
    """The induced order is directed iff the generators span the space."""
    return rational_rank(cone.generators) == cone.dim


def is_pointed(cone: HCone) -> bool:
    """``K ∩ -K = {0}`` iff the normals span the dual space."""
    return rational_rank(cone.normals) == cone.dim


@lru_cache(maxsize=None)
def interior_witness(cone: HCone) -> Optional[RationalVector]:
    """A point with every row strictly positive, or None if none exists.

    For closed convex cones nonempty interior is equivalent to the cone
    spanning the space, i.e. to directedness of the induced order.
    """
    n = len(cone.normals)
    lp = exactlp.LinearProgram(
        constraint_matrix=cone.normals,
        rhs=tuple(Fraction(0) for _ in range(n)),
        relations=tuple(exactlp.GEQ for _ in range(n)),
        objective=RationalVector.zero(cone.dim),
        sense=exactlp.FEASIBILITY,
    )
    out = exactlp.strict_feasible(lp, range(n))
    return out.point if out.status == "feasible" else None


def _require_directed(cone: HCone) -> None:
    if interior_witness(cone) is None:
        raise NotDirected("cone has empty interior, induced order is not directed")


def least_dominating_multiple(
    cone: HCone, u: RationalVector, x: RationalVector
) -> Optional[int]:
    """Least ``n >= 1`` with ``x <= n*u``, or None if no multiple works.

    Since ``x <= n*u`` iff ``n*(a_i.u) >= a_i.x`` for every row, the feasible
    ``n`` form an integer interval computed exactly from row ratios.  The
    same number is the least ``n`` with ``x/n <= u``.
    """
    cone._check(u)
    cone._check(x)
    lo = 1
    hi: Optional[int] = None
    for a in cone.normals:
        c = a.dot(u)
        d = a.dot(x)
        if c > 0:
            lo = max(lo, math.ceil(d / c))
        elif c == 0:
            if d > 0:
                return None
        else:
            bound = math.floor(d / c)
            hi = bound if hi is None else min(hi, bound)
    if hi is not None and lo > hi:
        return None
    return lo


def catch_index(cone: HCone, u: RationalVector, w: RationalVector) -> Optional[int]:
    """Least ``n`` with ``w/n <= u`` (the canonical chain of ``w`` is caught)."""
    return least_dominating_multiple(cone, u, w)


def is_order_unit(cone: HCone, u: RationalVector) -> bool:
    """Decide the order-unit property through interior membership.

    Cross-checks the definition: ``u`` is an order unit iff every signed
    standard basis vector is dominated by some multiple of ``u`` (domination
    is additive, so basis vectors suffice).  The two routes must agree for a
    closed full-dimensional cone; disagreement would be an implementation
    bug and raises.
    """
    _require_directed(cone)
    via_interior = interior_member(cone, u)
    via_definition = all(
        least_dominating_multiple(cone, u, sign * RationalVector.unit(cone.dim, k))
        is not None
        for k in range(cone.dim)
        for sign in (1, -1)
    )
    if via_interior != via_definition:  # pragma: no cover - internal guard
        raise AssertionError(
            "interior test and definitional order-unit test disagree"
        )
    return via_interior


def is_net_catching_fd(
    cone: HCone, u: RationalVector, samples: Iterable[RationalVector] = ()
) -> bool:
    """Net-catching test for finite-dimensional closed cones.

    For Archimedean directed spaces net catching elements are exactly the
    order units, which here are the interior points.  For each supplied
    sample ``w`` in the cone the canonical chain ``w/n`` is verified to be
    caught by ``u`` at the exact index reported by :func:`catch_index`.
    """
    _require_directed(cone)
    result = is_order_unit(cone, u)
    for w in samples:
        if not cone.contains(w):
            raise NotPositive(f"sample {w!r} is not in the cone")
        n = catch_index(cone, u, w)
        if result:
            if n is None or not cone.contains(u - w * Fraction(1, n)):
                raise AssertionError("interior point failed to catch a chain")
    return result


# ---------------------------------------------------------------------------
# The unit norm ||x||_u = inf{lam > 0 : -lam*u <= x <= lam*u}.


def _require_interior_unit(cone: HCone, u: RationalVector) -> None:
    cone._check(u)
    if not interior_member(cone, u):
        raise NotInterior(f"{u!r} is not an interior point of the cone")


def unorm(cone: HCone, u: RationalVector, x: RationalVector) -> Fraction:
    """Exact unit norm of ``x`` for the interior unit ``u``.

    Because every row is strictly positive on ``u``, the defining infimum is
    attained and equals ``max_i |a_i.x| / (a_i.u)``.
    """
    _require_interior_unit(cone, u)
    cone._check(x)
    best = Fraction(0)
    for a in cone.normals:
        r = abs(a.dot(x)) / a.dot(u)
        if r > best:
            best = r
    return best


def unorm_bisection(
    cone: HCone,
    u: RationalVector,
    x: RationalVector,
    resolution: Fraction = Fraction(1, 2**40),
) -> tuple[Fraction, Fraction]:
    """Bracket the unit norm by bisection over membership tests only.

    Independent of the closed form: uses nothing beyond ``lam*u - x in K``
    and ``lam*u + x in K``.  Returns ``(lo, hi)`` with ``hi - lo`` at most
    ``resolution`` and the norm in ``(lo, hi]`` (or ``(0, 0)`` when both
    memberships already hold at 0).
    """
    _require_interior_unit(cone, u)

    def inside(lam: Fraction) -> bool:
        return cone.contains(lam * u - x) and cone.contains(lam * u + x)

    if inside(Fraction(0)):
        return Fraction(0), Fraction(0)
    hi = Fraction(1)
    while not inside(hi):
        hi *= 2
    lo = Fraction(0)
    while hi - lo > resolution:
        mid = (lo + hi) / 2
        if inside(mid):
            hi = mid
        else:
            lo = mid
    return lo, hi


def unorm_ball_is_interval(
    cone: HCone, u: RationalVector, samples: Iterable[RationalVector]
) -> bool:
    """Check ``||x||_u <= 1  iff  -u <= x <= u`` on every sample (exact)."""
    _require_interior_unit(cone, u)
    for x in samples:
        in_ball = unorm(cone, u, x) <= 1
        in_interval = cone.contains(x + u) and cone.contains(u - x)
        if in_ball != in_interval:
            return False
    return True


def unorm_equivalence_constants(
    cone: HCone, u: RationalVector, u2: RationalVector
) -> tuple[Fraction, Fraction]:
    """Exact constants ``c, C > 0`` with ``c*||.||_u <= ||.||_u2 <= C*||.||_u``.

    Row ratios are extremal: each row contributes the factor
    ``(a_i.u)/(a_i.u2)`` between the two row terms.
    """
    _require_interior_unit(cone, u)
    _require_interior_unit(cone, u2)
    if not cone.normals:
        return Fraction(1), Fraction(1)
    ratios = [a.dot(u) / a.dot(u2) for a in cone.normals]
    return min(ratios), max(ratios)


def unorm_box_constants(
    cone: HCone, u: RationalVector
) -> tuple[Fraction, Fraction]:
    """Exact ``c, C > 0`` with ``B_c(sup) ⊆ [-u, u] ⊆ B_C(sup)``.

    Sandwiches the unit ball of the unit norm between sup-norm boxes, which
    is what makes the norm generate the standard topology.  Requires a
    pointed cone, otherwise ``[-u, u]`` is unbounded.
    """
    _require_interior_unit(cone, u)
    if not is_pointed(cone):
        raise ValueError("cone must be pointed for a bounded unit ball")
    c = min(a.dot(u) / sum(abs(v) for v in a.coords) for a in cone.normals)
    # C = max ||x||_inf over {x : |a_i.x| <= a_i.u}, one exact LP per signed axis
    rows = []
    rhs = []
    rels = []
    for a in cone.normals:
        rows.append(a)
        rhs.append(a.dot(u))
        rels.append(exactlp.LEQ)
        rows.append(-a)
        rhs.append(a.dot(u))
        rels.append(exactlp.LEQ)
    big = Fraction(0)
    for k in range(cone.dim):
        for sign in (1, -1):
            out = exactlp.solve(
                exactlp.LinearProgram(
                    constraint_matrix=tuple(rows),
                    rhs=tuple(rhs),
                    relations=tuple(rels),
                    objective=sign * RationalVector.unit(cone.dim, k),
                    sense=exactlp.MAXIMIZE,
                )
            )
            if out.status != "optimal":  # pragma: no cover - pointedness guard
                raise AssertionError("unit ball unexpectedly unbounded")
            big = max(big, out.value)
    return c, big


# ---------------------------------------------------------------------------
# Bases of cones and strictly positive functionals.


def strictly_positive_functional(cone: VCone) -> RationalVector:
    """A functional with value >= 1 on every generator (hence strictly
    positive on the cone minus the origin), found by exact LP."""
    if not cone.generators:
        raise NoSuchFunctional("trivial cone has no generators to separate")
    m = len(cone.generators)
    out = exactlp.solve(
        exactlp.LinearProgram(
            constraint_matrix=cone.generators,
            rhs=tuple(Fraction(1) for _ in range(m)),
            relations=tuple(exactlp.GEQ for _ in range(m)),
            objective=RationalVector.zero(cone.dim),
            sense=exactlp.FEASIBILITY,
        )
    )
    if out.status != "feasible":
        raise NoSuchFunctional(
            "no functional is strictly positive on all generators"
        )
    return out.point


@dataclass(frozen=True)
class BaseDescriptor:
    """The base ``{x in K : f.x = 1}`` of a cone, as its vertex hull.

    For finitely generated cones the base is the convex hull of the
    normalized generators.  ``recession_rays`` is empty for genuine bases;
    a nonzero entry marks a degenerate unbounded extension.
    """

    functional: RationalVector
    cone: VCone
    vertices: tuple[RationalVector, ...]
    recession_rays: tuple[RationalVector, ...] = field(default=())


def base_of(cone: VCone, f: RationalVector) -> BaseDescriptor:
    """Normalize the generators onto the hyperplane ``f.x = 1``."""
    if f.dim != cone.dim:
        raise DimensionMismatch(f"{f.dim} != {cone.dim}")
    values = [f.dot(r) for r in cone.generators]
    for r, v in zip(cone.generators, values):
        if v <= 0:
            raise NotStrictlyPositive(f"f.{r!r} = {v} is not positive")
    vertices = tuple(r * (1 / v) for r, v in zip(cone.generators, values))
    return BaseDescriptor(functional=f, cone=cone, vertices=vertices)


def base_bounded(base: BaseDescriptor) -> bool:
    """A finite vertex hull is bounded unless a recession ray was attached."""
    return len(base.vertices) > 0 and all(
        r.is_zero() for r in base.recession_rays
    )


class BaseBoundCheck(Enum):
    CONFIRMED = "confirmed"
    NOT_UPPER_BOUND = "not_upper_bound"
    THEOREM_VIOLATION = "theorem_violation"


def upper_bound_of_base_is_net_catching(
    base: BaseDescriptor, u: RationalVector
) -> BaseBoundCheck:
    """Check that an upper bound of a bounded base is net catching.

    Exact cone comparisons against every vertex; the net-catching claim is
    then evaluated on the halfspace form of the same cone.  A CONFIRMED
    verdict means both sides held; THEOREM_VIOLATION would mean an upper
    bound that is not net catching, which no run should ever produce.
    """
    if not base_bounded(base):
        raise ValueError("base must be bounded")
    hcone = v_to_h(base.cone)
    if not all(cone_leq(hcone, v, u) for v in base.vertices):
        return BaseBoundCheck.NOT_UPPER_BOUND
    if is_net_catching_fd(hcone, u):
        return BaseBoundCheck.CONFIRMED
    return BaseBoundCheck.THEOREM_VIOLATION  # pragma: no cover - see docstring


# ---------------------------------------------------------------------------
# Double description: exact conversion between the two representations.


def _primitive(v: RationalVector) -> RationalVector:
    """Scale a ray to a primitive integer vector (direction preserved)."""
    denom_lcm = 1
    for c in v.coords:
        denom_lcm = denom_lcm * c.denominator // math.gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in v.coords]
    g = 0
    for i in ints:
        g = math.gcd(g, abs(i))
    return RationalVector([i // g for i in ints])


def _in_cone_of(ray: RationalVector, others: Sequence[RationalVector]) -> bool:
    if not others:
        return ray.is_zero()
    return VCone(tuple(others), ray.dim).contains(ray)


def _prune_rays(rays: list[RationalVector]) -> list[RationalVector]:
    """Drop duplicates and rays generated by the remaining ones."""
    seen = []
    for r in rays:
        if not r.is_zero():
            p = _primitive(r)
            if p not in seen:
                seen.append(p)
    keep = list(seen)
    i = 0
    while i < len(keep):
        others = keep[:i] + keep[i + 1 :]
        if _in_cone_of(keep[i], others):
            keep.pop(i)
        else:
            i += 1
    return keep


@lru_cache(maxsize=None)
def h_to_v(cone: HCone) -> VCone:
    """Generators of a halfspace cone (double description, small dims only)."""
    if cone.dim > DD_DIM_CAP:
        raise DimensionCap(f"dimension {cone.dim} exceeds cap {DD_DIM_CAP}")
    rays: list[RationalVector] = []
    for k in range(cone.dim):
        e = RationalVector.unit(cone.dim, k)
        rays += [e, -e]
    for a in cone.normals:
        pos = [r for r in rays if a.dot(r) > 0]
        zero = [r for r in rays if a.dot(r) == 0]
        neg = [r for r in rays if a.dot(r) < 0]
        new = pos + zero
        for rp in pos:
            for rn in neg:
                w = a.dot(rp) * rn - a.dot(rn) * rp
                if not w.is_zero():
                    new.append(w)
        rays = _prune_rays(new)
    return VCone(tuple(rays), cone.dim)


@lru_cache(maxsize=None)
def v_to_h(cone: VCone) -> HCone:
    """Halfspace form of a generated cone.

    The dual cone ``{a : a.r_j >= 0}`` is itself a halfspace cone whose
    generators, by biduality of closed convex cones, are exactly the
    normals of the primal.
    """
    if cone.dim > DD_DIM_CAP:
        raise DimensionCap(f"dimension {cone.dim} exceeds cap {DD_DIM_CAP}")
    dual = HCone(tuple(cone.generators), cone.dim)
    normals = h_to_v(dual).generators
    return HCone(normals, cone.dim)


# ---------------------------------------------------------------------------
# The constructive order-bounded order-open set around an interior point.


@dataclass(frozen=True)
class OrderOpenBoundedSet:
    """The set ``(2u - int K) ∩ int K``: nonempty, order open, inside [0, 2u].

    Membership is two strict row systems; for a canonical chain ``w/n`` the
    least index at which the interval ``[u - w/n, u + w/n]`` fits inside is
    a closed-form row ratio, because every row is a positive functional.
    """

    cone: HCone
    center: RationalVector  # the interior point u

    def contains(self, y: RationalVector) -> bool:
        upper = 2 * self.center - y
        return all(
            a.dot(y) > 0 and a.dot(upper) > 0 for a in self.cone.normals
        )

    def interval_inside(self, w: RationalVector, n: int) -> bool:
        """Exact check that ``[u - w/n, u + w/n]`` is a subset of the set."""
        lo = self.center - w * Fraction(1, n)
        hi = self.center + w * Fraction(1, n)
        return all(
            a.dot(lo) > 0 and a.dot(2 * self.center - hi) > 0
            for a in self.cone.normals
        )

    def catch_index(self, w: RationalVector) -> int:
        """Least ``n`` with ``[u - w/n, u + w/n]`` inside the set."""
        if not self.cone.contains(w):
            raise NotPositive(f"{w!r} is not in the cone")
        n = 1
        for a in self.cone.normals:
            ratio = a.dot(w) / a.dot(self.center)
            n = max(n, math.floor(ratio) + 1)
        return n


def order_open_bounded_set(cone: HCone, u: RationalVector) -> OrderOpenBoundedSet:
    """Build the order-bounded order-open neighborhood of ``u`` in the cone."""
    _require_interior_unit(cone, u)
    return OrderOpenBoundedSet(cone=cone, center=u)
