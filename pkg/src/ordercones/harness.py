"""Randomized property suites with a traceability report.

Every registered property maps one claim about cone-ordered spaces to an
executable check over seeded random instances.  Runs are deterministic:
identical configs produce byte-identical reports.  Polyhedral checks are
exact; ice-cream-cone checks carry the configured float tolerance.

Property ids double as claim tags (e.g. ``"Prop7.5"``); the shipped
``traceability.csv`` lists every id with a one-line statement of the claim,
and the suite refuses to start if the two ever disagree.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
import zlib
from dataclasses import dataclass, field, replace
from fractions import Fraction
from importlib import resources
from typing import Callable, Optional

import numpy as np

from . import exactlp, icecream, lexseq, polyhedral, toposets
from .core import (
    OrderInterval,
    RationalVector,
    UnknownProperty,
    cone_leq,
    rational_rank,
)

MUTATION_BREAK_SEC9_LAMBDA = "sec9-break-lambda"

_KNOWN_MUTATIONS = {MUTATION_BREAK_SEC9_LAMBDA}


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 1729
    dims: tuple[int, ...] = (2, 3, 4)
    trials_per_property: int = 25
    float_tol: float = 1e-9
    mutations: tuple[str, ...] = ()

    def __post_init__(self):
        if isinstance(self.seed, bool) or not isinstance(self.seed, int):
            raise TypeError("seed must be an integer")
        object.__setattr__(self, "dims", tuple(self.dims))
        if not self.dims or any(
            not isinstance(d, int) or d < 2 for d in self.dims
        ):
            raise ValueError("dims must be integers >= 2")
        if self.trials_per_property < 0:
            raise ValueError("trials_per_property must be >= 0")
        if not self.float_tol > 0:
            raise ValueError("float_tol must be positive")
        object.__setattr__(self, "mutations", tuple(self.mutations))
        unknown = set(self.mutations) - _KNOWN_MUTATIONS
        if unknown:
            raise ValueError(f"unknown mutations: {sorted(unknown)}")


@dataclass(frozen=True)
class PropertyReport:
    property_id: str
    status: str  # "pass" | "fail" | "skipped"
    trials: int
    counterexample: Optional[str] = None


class PropertyFailure(Exception):
    def __init__(self, counterexample: str, trials: int):
        super().__init__(counterexample)
        self.counterexample = counterexample
        self.trials = trials


@dataclass
class _Ctx:
    config: SuiteConfig
    rng: random.Random
    np_rng: np.random.Generator

    def dim(self, i: int) -> int:
        return self.config.dims[i % len(self.config.dims)]


def _fmt(v) -> str:
    if isinstance(v, RationalVector):
        return "(" + ",".join(str(c) for c in v.coords) + ")"
    if isinstance(v, np.ndarray):
        return "(" + ",".join(repr(float(c)) for c in v) + ")"
    return repr(v)


def _fmt_cone(cone: polyhedral.HCone) -> str:
    return "rows[" + ";".join(_fmt(a) for a in cone.normals) + "]"


# ---------------------------------------------------------------------------
# Seeded instance generators.


def _rand_fraction(rng, lo=-8, hi=8, max_den=4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def _rand_int_vector(rng, dim, lo=-3, hi=3, nonzero=True) -> RationalVector:
    while True:
        v = RationalVector([rng.randint(lo, hi) for _ in range(dim)])
        if not nonzero or not v.is_zero():
            return v


def _rand_vector(rng, dim, lo=-8, hi=8, max_den=4) -> RationalVector:
    return RationalVector([_rand_fraction(rng, lo, hi, max_den) for _ in range(dim)])


def random_hcone(rng, dim, pointed=True) -> polyhedral.HCone:
    """Random halfspace cone with nonempty interior (rejection sampled)."""
    while True:
        nrows = rng.randint(dim, dim + 2)
        normals = tuple(_rand_int_vector(rng, dim) for _ in range(nrows))
        cone = polyhedral.HCone(normals, dim)
        if pointed and rational_rank(normals) != dim:
            continue
        if polyhedral.interior_witness(cone) is None:
            continue
        return cone


def random_interior_point(rng, cone: polyhedral.HCone) -> RationalVector:
    w = polyhedral.interior_witness(cone)
    for _ in range(20):
        scale = Fraction(rng.randint(1, 4), rng.randint(1, 2))
        jitter = RationalVector(
            [Fraction(rng.randint(-2, 2), 16) for _ in range(cone.dim)]
        )
        cand = scale * w + jitter
        if polyhedral.interior_member(cone, cand):
            return cand
    return w


def random_cone_point(rng, cone: polyhedral.HCone) -> RationalVector:
    """A point of the cone (possibly on the boundary), exactly constructed."""
    x = _rand_int_vector(rng, cone.dim, -4, 4, nonzero=False)
    if cone.contains(x):
        return x
    w = polyhedral.interior_witness(cone)
    t = max(
        (-(a.dot(x)) / a.dot(w) for a in cone.normals if a.dot(x) < 0),
        default=Fraction(0),
    )
    return x + t * w


def random_boundary_point(rng, cone: polyhedral.HCone) -> RationalVector:
    """A cone point with at least one row exactly zero."""
    p = random_cone_point(rng, cone)
    w = polyhedral.interior_witness(cone)
    if not polyhedral.interior_member(cone, p):
        return p
    tau = min(a.dot(p) / a.dot(w) for a in cone.normals)
    return p - tau * w


def random_vcone(rng, dim) -> polyhedral.VCone:
    """Random pointed directed generated cone.

    Every generator has first coordinate >= 1 (so a strictly positive
    functional exists) and the set is rejected until it spans the space.
    """
    while True:
        ngens = rng.randint(dim, dim + 2)
        gens = []
        for _ in range(ngens):
            v = [Fraction(rng.randint(1, 3))] + [
                _rand_fraction(rng, -3, 3, 2) for _ in range(dim - 1)
            ]
            gens.append(RationalVector(v))
        if rational_rank(gens) == dim:
            return polyhedral.VCone(tuple(gens), dim)


def random_polytope(rng, dim, symmetric=False, extra_rows=2) -> toposets.Polytope:
    """Bounded polytope with 0 interior: a box plus random halfspaces."""
    radii = [Fraction(rng.randint(1, 3)) for _ in range(dim)]
    base = toposets.box(radii)
    normals = list(base.normals)
    offsets = list(base.offsets)
    for _ in range(extra_rows):
        a = _rand_int_vector(rng, dim, -2, 2)
        b = Fraction(rng.randint(1, 4), rng.randint(1, 2))
        normals.append(a)
        offsets.append(b)
        if symmetric:
            normals.append(-a)
            offsets.append(b)
    return toposets.Polytope(tuple(normals), tuple(offsets))


def random_evseq(rng, max_prefix=4) -> lexseq.EvSeq:
    prefix = [_rand_fraction(rng, -6, 6, 3) for _ in range(rng.randint(0, max_prefix))]
    return lexseq.EvSeq(tuple(prefix), _rand_fraction(rng, -6, 6, 3))


def random_evseq_order_unit(rng, max_prefix=4) -> lexseq.EvSeq:
    prefix = [
        Fraction(rng.randint(1, 6), rng.randint(1, 3))
        for _ in range(rng.randint(0, max_prefix))
    ]
    return lexseq.EvSeq(tuple(prefix), Fraction(rng.randint(1, 6), rng.randint(1, 3)))


def random_icecream(np_rng, dim, tol) -> icecream.IceCreamCone:
    while True:
        d = np_rng.standard_normal(dim)
        if float(np.linalg.norm(d)) > 1e-6:
            break
    eps = float(np_rng.uniform(0.15, 0.85))
    return icecream.IceCreamCone.from_direction(d, eps=eps, tol=tol)


def random_ice_interior(np_rng, cone: icecream.IceCreamCone) -> np.ndarray:
    while True:
        r = float(np_rng.uniform(0.5, 2.0))
        x = r * cone.axis + float(np_rng.uniform(0, 0.7)) * r * _rand_unit(
            np_rng, cone.dim
        )
        if cone.margin(x) > 10 * cone.tol:
            return x


def random_ice_member(np_rng, cone: icecream.IceCreamCone) -> np.ndarray:
    while True:
        x = np_rng.standard_normal(cone.dim) * 2.0
        if cone.contains(x):
            return x
        # shifting along the axis raises the margin by at least (1-eps) per unit
        x = x + (abs(cone.margin(x)) / (1.0 - cone.eps) + 0.5) * cone.axis
        if cone.contains(x):
            return x


def _rand_unit(np_rng, dim) -> np.ndarray:
    while True:
        v = np_rng.standard_normal(dim)
        n = float(np.linalg.norm(v))
        if n > 1e-9:
            return v / n


def _sample_interval_points(cone, x, np_rng, k):
    """Points of [-x, x] for an ice cream cone: probes plus rejection."""
    pts = [x.copy(), -x, np.zeros(cone.dim)]
    radius = 1.5 * float(np.linalg.norm(x)) / cone.eps
    attempts = 0
    while len(pts) < k and attempts < 50 * k:
        y = np_rng.uniform(0, radius) * _rand_unit(np_rng, cone.dim)
        if icecream.in_order_interval(cone, x, y):
            pts.append(y)
        attempts += 1
    return pts


# ---------------------------------------------------------------------------
# Property checkers.  Each returns the number of trials performed and raises
# PropertyFailure with a serialized counterexample on the first violation.


def _check_thm_2_6(config, ctx):
    trials = 0
    for i in range(config.trials_per_property):
        dim = ctx.dim(i)
        cone = random_hcone(ctx.rng, dim)
        elements = [
            random_interior_point(ctx.rng, cone),
            random_boundary_point(ctx.rng, cone),
            -random_interior_point(ctx.rng, cone),
            *(_rand_vector(ctx.rng, dim, -4, 4, 2) for _ in range(3)),
        ]
        for x in elements:
            interior = polyhedral.interior_member(cone, x)
            unit = polyhedral.is_order_unit(cone, x)
            catching = polyhedral.is_net_catching_fd(cone, x)
            if not interior == unit == catching:
                raise PropertyFailure(
                    f"{_fmt_cone(cone)} x={_fmt(x)} interior={interior} "
                    f"order_unit={unit} net_catching={catching}",
                    trials,
                )
            trials += 1
    return trials


def _check_prop_2_1(config, ctx):
    trials = 0
    for i in range(config.trials_per_property):
        dim = ctx.dim(i)
        cone = random_hcone(ctx.rng, dim)
        u = random_interior_point(ctx.rng, cone)
        window = polyhedral.order_open_bounded_set(cone, u)
        if not window.contains(u):
            raise PropertyFailure(f"{_fmt_cone(cone)} window misses u={_fmt(u)}", trials)
        two_u = 2 * u
        for _ in range(4):
            w = random_cone_point(ctx.rng, cone)
            n = window.catch_index(w)
            ok = window.interval_inside(w, n)
            minimal = n == 1 or not window.interval_inside(w, n - 1)
            if not (ok and minimal):
                raise PropertyFailure(
                    f"{_fmt_cone(cone)} u={_fmt(u)} w={_fmt(w)} n={n}", trials
                )
            # order boundedness at the caught interval's endpoints
            hi = u + Fraction(1, n) * w
            lo = u - Fraction(1, n) * w
            if not (
                cone.contains(lo)
                and cone.contains(two_u - hi)
            ):
                raise PropertyFailure(
                    f"window endpoint escaped [0,2u]: u={_fmt(u)} w={_fmt(w)}", trials
                )
            trials += 1
    return trials


def _check_prop_3_1(config, ctx):
    trials = 0
    for i in range(config.trials_per_property):
        dim = ctx.dim(i)
        cone = random_hcone(ctx.rng, dim)
        # interior nonempty, so net catching elements exist; order units
        # must then all be net catching
        u = random_interior_point(ctx.rng, cone)
        samples = [random_cone_point(ctx.rng, cone) for _ in range(3)]
        if not polyhedral.is_net_catching_fd(cone, u, samples=samples):
            raise PropertyFailure(f"{_fmt_cone(cone)} u={_fmt(u)}", trials)
        trials += 1
    return trials


def _check_prop_3_4(config, ctx):
    trials = 0
    # directed + Archimedean: net catching implies order unit
    for i in range(config.trials_per_property):
        dim = ctx.dim(i)
        cone = random_hcone(ctx.rng, dim)
        x = _rand_vector(ctx.rng, dim, -4, 4, 2)
        if polyhedral.is_net_catching_fd(cone, x) and not polyhedral.is_order_unit(
            cone, x
        ):
            raise PropertyFailure(f"{_fmt_cone(cone)} x={_fmt(x)}", trials)
        trials += 1
    # contrapositive on the lex plane: a net catching non-unit exists, and
    # the space fails the Archimedean axiom on an explicit pair
    e2 = RationalVector.unit(3, 1)
    if lexseq.lex_is_order_unit(e2) or not lexseq.lex_is_net_catching(e2):
        raise PropertyFailure("lex separating element misbehaved", trials)
    x, y = lexseq.lex_non_archimedean_witness(3, depth=1000)
    if not lexseq.dominates_all_multiples(x, y, 1000):
        raise PropertyFailure("lex non-Archimedean witness failed", trials)
    return trials + 1


def _check_ex_3_6(config, ctx):
    trials = 0
    space = lexseq.LexSpace(3)
    for _ in range(config.trials_per_property):
        x = _rand_vector(ctx.rng, 3, -6, 6, 3)
        sign = lexseq.lex_classify(x)
        positive = space.cone.contains(x) and not x.is_zero()
        if positive != (sign.sign == 1):
            raise PropertyFailure(f"classification broke at {_fmt(x)}", trials)
        if lexseq.lex_is_net_catching(x) != positive:
            raise PropertyFailure(f"net catching set wrong at {_fmt(x)}", trials)
        if lexseq.lex_is_order_unit(x) != (x.coords[0] > 0):
            raise PropertyFailure(f"order unit set wrong at {_fmt(x)}", trials)
        if x.coords[0] > 0:
            # order unit definition: arbitrary y is dominated by a multiple
            y = _rand_vector(ctx.rng, 3, -6, 6, 3)
            m = max(1, math.floor(y.coords[0] / x.coords[0]) + 1)
            if not lexseq.lex_leq(y, m * x):
                raise PropertyFailure(
                    f"unit {_fmt(x)} fails to dominate {_fmt(y)} at m={m}", trials
                )
        trials += 1
    # the separating example: net catching but not an order unit
    sep = RationalVector([0, 1, 0])
    if not (
        lexseq.lex_is_net_catching(sep) and not lexseq.lex_is_order_unit(sep)
    ):
        raise PropertyFailure("(0,1,0) should catch without being a unit", trials)
    return trials + 1


def _check_ex_3_3(config, ctx):
    report = lexseq.non_netcatching_witness(lexseq.EVSEQ_ONE, depth=48)
    if report.c != 2:
        raise PropertyFailure(f"expected tail 2, got {report.c}", 0)
    for n in (1, 2, 3, 7, 48):
        el = report.chain_element(n)
        if el.prefix != (Fraction(0),) * (n - 1) or el.tail != 2:
            raise PropertyFailure(f"chain element {n} is {el!r}", 0)
        if lexseq.ev_leq(el, lexseq.EVSEQ_ONE):
            raise PropertyFailure(f"chain element {n} fell below the unit", 0)
    return max(1, config.trials_per_property)


def _check_thm_6_5(config, ctx):
    trials = 0
    for _ in range(config.trials_per_property):
        u = random_evseq_order_unit(ctx.rng)
        if not lexseq.ev_is_order_unit(u):
            raise PropertyFailure(f"generator produced a non-unit {u!r}", trials)
        if lexseq.ev_is_net_catching(u):
            raise PropertyFailure(f"{u!r} reported net catching", trials)
        report = lexseq.non_netcatching_witness(u, depth=24)
        for n in (1, 2, 24):
            if lexseq.ev_leq(report.chain_element(n), u):
                raise PropertyFailure(f"witness for {u!r} broke at n={n}", trials)
        trials += 1
    return trials


def _check_thm_4_6(config, ctx):
    trials = 0
    for i in range(config.trials_per_property):
        dim = min(ctx.dim(i), 4)  # double description cost grows with dim
        vcone = random_vcone(ctx.rng, dim)
        f = polyhedral.strictly_positive_functional(vcone)
        base = polyhedral.base_of(vcone, f)
        if not polyhedral.base_bounded(base):
            raise PropertyFailure(f"vertex hull reported unbounded: {base!r}", trials)
        u = base.vertices[0]
        for v in base.vertices[1:]:
            u = u + v
        extra = random_cone_point(ctx.rng, polyhedral.v_to_h(vcone))
        for cand in (u, u + extra):
            verdict = polyhedral.upper_bound_of_base_is_net_catching(base, cand)
            if verdict is not polyhedral.BaseBoundCheck.CONFIRMED:
                raise PropertyFailure(
                    f"gens={[_fmt(g) for g in vcone.generators]} "
                    f"u={_fmt(cand)} verdict={verdict}",
                    trials,
                )
        trials += 1
    return trials


def _check_prop_5_1(config, ctx):
    trials = 0
    for i in range(config.trials_per_property):
        dim = ctx.dim(i)
        cone = random_hcone(ctx.rng, dim)
        w = polyhedral.interior_witness(cone)
        samples = [random_cone_point(ctx.rng, cone) for _ in range(2)]
        if not polyhedral.is_net_catching_fd(cone, w, samples=samples):
            raise PropertyFailure(f"{_fmt_cone(cone)} witness not catching", trials)
        trials += 1
    return trials


def _check_prop_5_4(config, ctx):
    trials = 0
    tol = config.float_tol
    for i in range(config.trials_per_property):
        dim = max(ctx.dim(i), 3)
        cone = random_icecream(ctx.np_rng, dim, tol)
        a = random_ice_member(ctx.np_rng, cone)
        b = random_ice_member(ctx.np_rng, cone)
        lam = float(ctx.np_rng.uniform(0, 3))
        if not cone.contains(a + b) or not cone.contains(lam * a):
            raise PropertyFailure(
                f"cone axioms failed: eps={cone.eps} a={_fmt(a)} b={_fmt(b)}", trials
            )
        # boundary description: extreme base points classify as boundary
        v = _rand_unit(ctx.np_rng, dim)
        v = v - float(cone.axis @ v) * cone.axis
        nv = float(np.linalg.norm(v))
        if nv <= 1e-6:
            continue
        rim_dir = v / nv
        p = cone.axis + rim_dir * math.sqrt(1.0 / cone.eps**2 - 1.0)
        if icecream.member(cone, p) is not icecream.Region.BOUNDARY:
            raise PropertyFailure(
                f"extreme base point misclassified: eps={cone.eps} p={_fmt(p)}",
                trials,
            )
        # Archimedean: explicit escape index for the domination chain
        x = random_ice_interior(ctx.np_rng, cone)
        y = random_ice_member(ctx.np_rng, cone)
        icecream.archimedean_escape_index(cone, x, y)
        # parameter uniqueness, sampled: a clearly narrower cone must lose
        # the rim point p
        other = icecream.IceCreamCone(
            axis=cone.axis,
            eps=min(0.95, cone.eps + 0.1),
            dim=dim,
            tol=tol,
        )
        probes = [random_ice_member(ctx.np_rng, cone) for _ in range(20)] + [p]
        if icecream.same_membership_on(cone, other, probes):
            raise PropertyFailure(
                f"eps {cone.eps} vs {other.eps} indistinguishable on probes", trials
            )
        trials += 1
    return trials


def _check_lem_5_5(config, ctx):
    trials = 0
    tol = config.float_tol
    for i in range(config.trials_per_property):
        dim = max(ctx.dim(i), 3)
        cone = random_icecream(ctx.np_rng, dim, tol)
        v = _rand_unit(ctx.np_rng, dim)
        v = v - float(cone.axis @ v) * cone.axis
        nv = float(np.linalg.norm(v))
        if nv <= 1e-6:
            continue
        v = v / nv
        rim = math.sqrt(1.0 / cone.eps**2 - 1.0)
        inside = cone.axis + v * (0.9 * rim)
        extreme = cone.axis + v * rim
        outside = cone.axis + v * (1.1 * rim)
        if not icecream.base_contains(cone, inside):
            raise PropertyFailure(f"interior base point rejected eps={cone.eps}", trials)
        if not icecream.base_contains(cone, extreme):
            raise PropertyFailure(f"extreme base point rejected eps={cone.eps}", trials)
        if icecream.base_contains(cone, outside):
            raise PropertyFailure(f"outside point accepted eps={cone.eps}", trials)
        trials += 1
    return trials


def _check_lem_5_7(config, ctx):
    trials = 0
    tol = config.float_tol
    for i in range(config.trials_per_property):
        dim = max(ctx.dim(i), 3)
        cone = random_icecream(ctx.np_rng, dim, tol)
        x = random_ice_interior(ctx.np_rng, cone)
        kappa = icecream.inradius(cone, x)
        lam = icecream.base_majorant(cone, x)
        if abs(icecream.inradius(cone, 2 * x) - 2 * kappa) > 10 * tol * (1 + kappa):
            raise PropertyFailure(f"inradius not homogeneous at {_fmt(x)}", trials)
        for _ in range(20):
            s = _rand_unit(ctx.np_rng, dim)
            if not cone.contains(x + kappa * s):
                raise PropertyFailure(
                    f"ball left the cone: eps={cone.eps} x={_fmt(x)} dir={_fmt(s)}",
                    trials,
                )
            b = _random_base_point(ctx.np_rng, cone)
            if not cone.contains(lam * x - b):
                raise PropertyFailure(
                    f"majorant failed: eps={cone.eps} x={_fmt(x)} b={_fmt(b)}", trials
                )
        trials += 1
    return trials


def _random_base_point(np_rng, cone: icecream.IceCreamCone) -> np.ndarray:
    v = _rand_unit(np_rng, cone.dim)
    v = v - float(cone.axis @ v) * cone.axis
    nv = float(np.linalg.norm(v))
    rim = math.sqrt(1.0 / cone.eps**2 - 1.0)
    if nv <= 1e-9:
        return cone.axis.copy()
    return cone.axis + v / nv * float(np_rng.uniform(0, rim))


def _check_prop_5_8(config, ctx):
    trials = 0
    tol = config.float_tol
    for i in range(config.trials_per_property):
        dim = max(ctx.dim(i), 3)
        cone = random_icecream(ctx.np_rng, dim, tol)
        x = random_ice_interior(ctx.np_rng, cone)
        w = random_ice_member(ctx.np_rng, cone)
        if float(np.linalg.norm(w)) < 1e-6:
            continue
        bound = icecream.unorm_ice(cone, x, w)
        expected = max(1, math.ceil(bound - 10 * tol))
        caught = None
        for n in range(max(1, expected - 2), expected + 3):
            if cone.margin(x - w / n) >= -tol:
                caught = n
                break
        if caught is None or abs(caught - expected) > 1:
            raise PropertyFailure(
                f"eps={cone.eps} x={_fmt(x)} w={_fmt(w)} "
                f"bound={bound} caught={caught}",
                trials,
            )
        trials += 1
    return trials


def _check_prop_7_5(config, ctx):
    trials = 0
    for i in range(config.trials_per_property):
        dim = ctx.dim(i)
        u = RationalVector(
            [_rand_fraction(ctx.rng, -2, 4, 3) for _ in range(dim)]
        )
        check = toposets.interval_in_bob(u, trials=10, rng=ctx.rng)
        unit = polyhedral.is_order_unit(polyhedral.positive_orthant(dim), u)
        if check.verdict != unit:
            raise PropertyFailure(
                f"u={_fmt(u)} interval_in_bob={check.verdict} order_unit={unit} "
                f"({check.diagnosis})",
                trials,
            )
        trials += 1
    return trials


def _check_prop_7_6(config, ctx):
    trials = 0
    for i in range(config.trials_per_property):
        dim = ctx.dim(i)
        # random simplicial cone: dim independent integer rows
        while True:
            rows = tuple(_rand_int_vector(ctx.rng, dim) for _ in range(dim))
            if rational_rank(rows) == dim:
                break
        cone = polyhedral.HCone(rows, dim)
        forward = toposets.orthant_coordinates(cone)
        u = _rand_vector(ctx.rng, dim, -4, 4, 2)
        tu = forward(u)
        unit = polyhedral.is_order_unit(cone, u)
        box_margin = min(tu.coords)
        check = toposets.interval_in_bob(tu, trials=8, rng=ctx.rng)
        if not (unit == (box_margin > 0) == check.verdict):
            raise PropertyFailure(
                f"{_fmt_cone(cone)} u={_fmt(u)} unit={unit} "
                f"margin={box_margin} bob={check.verdict}",
                trials,
            )
        trials += 1
    return trials


def _check_rem_7_4i(config, ctx):
    trials = 0
    for i in range(config.trials_per_property):
        dim = ctx.dim(i)
        cone = random_hcone(ctx.rng, dim)
        u = random_interior_point(ctx.rng, cone)
        samples = [_rand_vector(ctx.rng, dim, -6, 6, 3) for _ in range(20)]
        samples += [u, -u, RationalVector.zero(dim)]
        if not polyhedral.unorm_ball_is_interval(cone, u, samples):
            raise PropertyFailure(f"{_fmt_cone(cone)} u={_fmt(u)}", trials)
        trials += len(samples)
    return trials


def _check_rem_7_4ii(config, ctx):
    trials = 0
    for i in range(config.trials_per_property):
        dim = ctx.dim(i)
        cone = random_hcone(ctx.rng, dim)
        u = random_interior_point(ctx.rng, cone)
        u2 = random_interior_point(ctx.rng, cone)
        c, big = polyhedral.unorm_equivalence_constants(cone, u, u2)
        if not 0 < c <= big:
            raise PropertyFailure(f"bad constants {c}, {big}", trials)
        for _ in range(10):
            x = _rand_vector(ctx.rng, dim, -6, 6, 3)
            nu = polyhedral.unorm(cone, u, x)
            nu2 = polyhedral.unorm(cone, u2, x)
            if not (c * nu <= nu2 <= big * nu):
                raise PropertyFailure(
                    f"{_fmt_cone(cone)} u={_fmt(u)} u'={_fmt(u2)} x={_fmt(x)} "
                    f"c={c} C={big} |x|_u={nu} |x|_u'={nu2}",
                    trials,
                )
            trials += 1
    return trials


def _check_lem_7_7(config, ctx):
    trials = 0
    for i in range(config.trials_per_property):
        dim = 2 if i % 2 == 0 else min(ctx.dim(i), 3)
        U = random_polytope(ctx.rng, dim)
        for _ in range(4):
            y = _rand_vector(ctx.rng, dim, -8, 8, 4)
            if toposets.v_of_u_member(U, y):
                if not U.contains(y):
                    raise PropertyFailure(f"V(U) escaped U at {_fmt(y)}", trials)
                for lam in (Fraction(-1), Fraction(-1, 2), Fraction(1, 3)):
                    if not toposets.v_of_u_member(U, lam * y):
                        raise PropertyFailure(
                            f"V(U) not circled at {_fmt(y)} lam={lam}", trials
                        )
            w = RationalVector([abs(c) for c in _rand_vector(ctx.rng, dim, -6, 6, 2)])
            if toposets.v_of_u_catch_index(U, w) != toposets.catches_canonical_chain(
                U, w
            ):
                raise PropertyFailure(
                    f"V(U) catch index diverged at w={_fmt(w)}", trials
                )
            trials += 1
    return trials


def _check_lem_7_10(config, ctx):
    trials = 0
    for i in range(config.trials_per_property):
        dim = ctx.dim(i)
        U = random_polytope(ctx.rng, dim, symmetric=True)
        if dim <= 3 and not toposets.is_circled(U):
            raise PropertyFailure("symmetric polytope reported non-circled", trials)
        # catching precondition: the canonical family is caught at some index
        toposets.catches_canonical_chain(U, RationalVector([1] * dim))
        orthant = polyhedral.positive_orthant(dim)
        for _ in range(4):
            lo = _rand_vector(ctx.rng, dim, -6, 6, 2)
            span = RationalVector(
                [abs(c) for c in _rand_vector(ctx.rng, dim, -4, 4, 2)]
            )
            iv = OrderInterval(lo, lo + span, orthant)
            mu = toposets.absorbs_interval(U, iv)
            if mu != toposets.ABSORBS_AT_EVERY_SCALE and mu <= 0:
                raise PropertyFailure(
                    f"interval [{_fmt(lo)},{_fmt(lo + span)}] not absorbed", trials
                )
            trials += 1
    return trials


def _check_thm_8_2(config, ctx):
    trials = 0
    for i in range(config.trials_per_property):
        dim = ctx.dim(i)
        cone = random_hcone(ctx.rng, dim)
        u = random_interior_point(ctx.rng, cone)
        c, big = polyhedral.unorm_box_constants(cone, u)
        if not 0 < c <= big:
            raise PropertyFailure(f"bad sandwich constants {c}, {big}", trials)
        for _ in range(8):
            x = _rand_vector(ctx.rng, dim, -6, 6, 3)
            y = _rand_vector(ctx.rng, dim, -6, 6, 3)
            s = _rand_fraction(ctx.rng, -4, 4, 2)
            nx = polyhedral.unorm(cone, u, x)
            ny = polyhedral.unorm(cone, u, y)
            if polyhedral.unorm(cone, u, x + y) > nx + ny:
                raise PropertyFailure(f"triangle inequality broke at {_fmt(x)}", trials)
            if polyhedral.unorm(cone, u, s * x) != abs(s) * nx:
                raise PropertyFailure(f"homogeneity broke at {_fmt(x)}", trials)
            if (nx == 0) != x.is_zero():
                raise PropertyFailure(f"definiteness broke at {_fmt(x)}", trials)
            sup = max(abs(cc) for cc in x.coords)
            if nx <= 1 and sup > big:
                raise PropertyFailure(f"outer box violated at {_fmt(x)}", trials)
            if sup <= c and nx > 1:
                raise PropertyFailure(f"inner box violated at {_fmt(x)}", trials)
            trials += 1
    return trials


def _check_sec_9(config, ctx):
    trials = 0
    tol = config.float_tol
    mutate = MUTATION_BREAK_SEC9_LAMBDA in config.mutations
    for i in range(config.trials_per_property):
        dim = max(ctx.dim(i), 3)
        cone = random_icecream(ctx.np_rng, dim, tol)
        x = random_ice_interior(ctx.np_rng, cone)
        cert = icecream.equivalence_certificate(cone, x)
        if mutate:
            cert = icecream.EquivalenceCertificate(
                center=cert.center, kappa=cert.kappa, lam=cert.kappa
            )
        for y in _sample_interval_points(cone, x, ctx.np_rng, 12):
            if float(np.linalg.norm(y)) > cert.lam + tol:
                raise PropertyFailure(
                    f"eps={cone.eps} x={_fmt(x)} y={_fmt(y)} "
                    f"escapes the outer ball lam={cert.lam}",
                    trials,
                )
        for _ in range(12):
            y = float(ctx.np_rng.uniform(0, cert.kappa)) * _rand_unit(
                ctx.np_rng, dim
            )
            if not icecream.in_order_interval(cone, x, y):
                raise PropertyFailure(
                    f"eps={cone.eps} x={_fmt(x)} y={_fmt(y)} "
                    f"inner ball left the interval",
                    trials,
                )
        trials += 1
    return trials


def _check_thm_10_2(config, ctx):
    trials = 0
    units = [lexseq.EVSEQ_ONE] + [
        random_evseq_order_unit(ctx.rng) for _ in range(config.trials_per_property)
    ]
    for u in units:
        report = lexseq.non_netcatching_witness(u, depth=24)
        for n in range(1, report.depth + 1):
            el = report.chain_element(n)
            inside = lexseq.ev_leq(-u, el) and lexseq.ev_leq(el, u)
            if inside:
                raise PropertyFailure(
                    f"chain for {u!r} entered [-u,u] at n={n}", trials
                )
        trials += 1
    return trials


_REGISTRY: dict[str, tuple[str, Callable]] = {
    "Thm2.6": (
        "interior points, order units and net catching elements coincide "
        "for closed full-dimensional cones",
        _check_thm_2_6,
    ),
    "Prop2.1": (
        "an interior point yields a nonempty order-bounded order-open set "
        "inside [0,2u] that catches canonical chains",
        _check_prop_2_1,
    ),
    "Prop3.1": (
        "when net catching elements exist, every order unit is net catching",
        _check_prop_3_1,
    ),
    "Prop3.4": (
        "in Archimedean directed spaces net catching elements are order "
        "units; the lex plane separates the notions",
        _check_prop_3_4,
    ),
    "Ex3.3": (
        "the all-ones sequence is an order unit but its witness chain "
        "decreases to 0 without ever dropping below it",
        _check_ex_3_3,
    ),
    "Ex3.6": (
        "lexicographic order: positive cone minus 0 catches, only positive "
        "first coordinate gives units",
        _check_ex_3_6,
    ),
    "Thm4.6": (
        "upper bounds of a bounded base are net catching",
        _check_thm_4_6,
    ),
    "Prop5.1": (
        "finite-dimensional Archimedean directed spaces have net catching "
        "elements",
        _check_prop_5_1,
    ),
    "Prop5.4": (
        "ice cream cones: cone axioms, boundary set, Archimedean escape, "
        "parameter uniqueness",
        _check_prop_5_4,
    ),
    "Lem5.5": (
        "the ice cream base is the 1/eps ball sliced at level 1",
        _check_lem_5_5,
    ),
    "Lem5.7": (
        "inscribed-ball radius and the base majorant 1/(eps*kappa)",
        _check_lem_5_7,
    ),
    "Prop5.8": (
        "interior points of ice cream cones catch canonical chains at the "
        "unit-norm index",
        _check_prop_5_8,
    ),
    "Thm6.5": (
        "no eventually-constant sequence is net catching; witnesses "
        "certify it for random order units",
        _check_thm_6_5,
    ),
    "Prop7.5": (
        "u is an order unit iff [-u,u] absorbs all order intervals",
        _check_prop_7_5,
    ),
    "Prop7.6": (
        "the order-bound interior of the cone is the set of order units",
        _check_prop_7_6,
    ),
    "Rem7.4i": (
        "the closed unit ball of the unit norm is [-u,u]",
        _check_rem_7_4i,
    ),
    "Rem7.4ii": (
        "unit norms of two interior units are equivalent with exact "
        "row-ratio constants",
        _check_rem_7_4ii,
    ),
    "Lem7.7": (
        "V(U) is a circled subset of U catching whenever U catches",
        _check_lem_7_7,
    ),
    "Lem7.10": (
        "circled catching sets absorb all order intervals",
        _check_lem_7_10,
    ),
    "Thm8.2": (
        "the unit norm is a norm and its ball nests between sup-norm boxes "
        "(order topology = standard topology)",
        _check_thm_8_2,
    ),
    "Sec9": (
        "Euclidean balls of radii kappa and lambda sandwich the order-unit "
        "ball of an ice cream cone",
        _check_sec_9,
    ),
    "Thm10.2": (
        "the witness chain decreases to 0 yet never enters [-u,u]",
        _check_thm_10_2,
    ),
}


def property_ids() -> tuple[str, ...]:
    return tuple(_REGISTRY)


def property_claim(property_id: str) -> str:
    if property_id not in _REGISTRY:
        raise UnknownProperty(property_id)
    return _REGISTRY[property_id][0]


def _traceability_ids() -> set[str]:
    text = resources.files("ordercones").joinpath("traceability.csv").read_text()
    reader = csv.DictReader(io.StringIO(text))
    return {row["property_id"] for row in reader}


def check_traceability() -> None:
    """Fail fast if the shipped matrix and the registry ever drift apart."""
    matrix = _traceability_ids()
    registered = set(_REGISTRY)
    orphans = matrix - registered
    if orphans:
        raise RuntimeError(
            f"traceability matrix lists unregistered properties: {sorted(orphans)}"
        )
    missing = registered - matrix
    if missing:
        raise RuntimeError(
            f"registered properties missing from the matrix: {sorted(missing)}"
        )


def _ctx_for(property_id: str, config: SuiteConfig) -> _Ctx:
    tag = zlib.crc32(property_id.encode())
    rng = random.Random(f"{config.seed}:{property_id}")
    np_rng = np.random.default_rng([config.seed & 0xFFFFFFFFFFFFFFFF, tag])
    return _Ctx(config=config, rng=rng, np_rng=np_rng)


def run_one(property_id: str, config: SuiteConfig) -> PropertyReport:
    check_traceability()
    if property_id not in _REGISTRY:
        raise UnknownProperty(property_id)
    if config.trials_per_property == 0:
        return PropertyReport(property_id, "skipped", 0)
    _, fn = _REGISTRY[property_id]
    ctx = _ctx_for(property_id, config)
    try:
        trials = fn(config, ctx)
    except PropertyFailure as failure:
        return PropertyReport(
            property_id, "fail", failure.trials, failure.counterexample
        )
    except Exception as exc:  # checker bugs become failures, not crashes
        return PropertyReport(property_id, "fail", 0, f"checker raised: {exc!r}")
    return PropertyReport(property_id, "pass", trials)


def run_all(config: SuiteConfig) -> list[PropertyReport]:
    check_traceability()
    return [run_one(pid, config) for pid in _REGISTRY]


def report_csv(reports: list[PropertyReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["property_id", "status", "trials", "counterexample"])
    for r in reports:
        writer.writerow([r.property_id, r.status, r.trials, r.counterexample or ""])
    return buf.getvalue()


def report_json(reports: list[PropertyReport]) -> str:
    payload = [
        {
            "property_id": r.property_id,
            "status": r.status,
            "trials": r.trials,
            "counterexample": r.counterexample,
        }
        for r in reports
    ]
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
