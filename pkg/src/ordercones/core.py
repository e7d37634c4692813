"""Exact scalars and vectors, cone-induced partial orders, order intervals,
and decreasing chains.

Scalars are arbitrary-precision rationals (``fractions.Fraction``), so every
order comparison made through this module is exact: there is no tolerance
anywhere.  A *cone* is any object exposing ``dim`` (or ``None`` for spaces
without a fixed coordinate dimension) and ``contains(element) -> bool``; the
induced order is ``x <= y  iff  y - x in cone``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union


Rational = Fraction

RationalLike = Union[int, str, Fraction]


# ---------------------------------------------------------------------------
# Errors shared across the package.


class DimensionMismatch(ValueError):
    """Operands do not share the ambient dimension."""


class EmptyInterval(ValueError):
    """Interval endpoints are not ordered, so the interval would be empty."""


class NotPositive(ValueError):
    """An element required to lie in the positive cone does not."""


class NotInterior(ValueError):
    """An element required to be an interior point of the cone is not."""


class NotDirected(ValueError):
    """The cone does not generate the space, so the order is not directed."""


class NoSuchFunctional(ValueError):
    """No strictly positive linear functional exists for the cone."""


class NotStrictlyPositive(ValueError):
    """A functional fails strict positivity on a cone generator."""


class DimensionCap(ValueError):
    """Instance exceeds the configured dimension cap of an algorithm."""


class ConeNotSimplicial(ValueError):
    """Operation requires a simplicial cone (or the positive orthant)."""


class DimensionTooSmall(ValueError):
    """The ambient dimension is below the minimum the construction needs."""


class ChainInvariantError(ValueError):
    """A queried chain index violates monotonicity or the lower-bound claim."""


class UnknownProperty(KeyError):
    """Requested property id is not registered in the suite."""


def rat(value: RationalLike) -> Fraction:
    """Coerce ``value`` to an exact rational.

    Accepts ints, ``Fraction`` and strings like ``"3"``, ``"-2/7"`` or
    ``"0.25"``.  Floats are rejected: silently converting them would smuggle
    binary rounding error into computations that must stay exact.
    """
    if isinstance(value, float):
        raise TypeError(
            "refusing to build an exact rational from a float; "
            "pass a string such as '1/3' instead"
        )
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rat(value: Fraction) -> str:
    """Serialize a rational as an explicit ``p/q`` string."""
    return f"{value.numerator}/{value.denominator}"


class RationalVector:
    """Immutable coordinate vector with exact rational entries."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable[RationalLike]):
        object.__setattr__(self, "coords", tuple(rat(c) for c in coords))
        if not self.coords:
            raise ValueError("a vector needs at least one coordinate")

    def __setattr__(self, name, value):
        raise AttributeError("RationalVector is immutable")

    @property
    def dim(self) -> int:
        return len(self.coords)

    @staticmethod
    def zero(dim: int) -> "RationalVector":
        return RationalVector([0] * dim)

    @staticmethod
    def unit(dim: int, k: int) -> "RationalVector":
        """Standard basis vector e_k (0-based index)."""
        if not 0 <= k < dim:
            raise IndexError(k)
        return RationalVector([1 if j == k else 0 for j in range(dim)])

    def _check_dim(self, other: "RationalVector") -> None:
        if self.dim != other.dim:
            raise DimensionMismatch(f"{self.dim} != {other.dim}")

    def __add__(self, other: "RationalVector") -> "RationalVector":
        self._check_dim(other)
        return RationalVector(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "RationalVector") -> "RationalVector":
        self._check_dim(other)
        return RationalVector(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> "RationalVector":
        return RationalVector(-a for a in self.coords)

    def __mul__(self, scalar: RationalLike) -> "RationalVector":
        s = rat(scalar)
        return RationalVector(s * a for a in self.coords)

    __rmul__ = __mul__

    def dot(self, other: "RationalVector") -> Fraction:
        self._check_dim(other)
        return sum((a * b for a, b in zip(self.coords, other.coords)), Fraction(0))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def abs(self) -> "RationalVector":
        """Componentwise absolute value."""
        return RationalVector(a if a >= 0 else -a for a in self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, k: int) -> Fraction:
        return self.coords[k]

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalVector) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return "vec(" + ", ".join(str(c) for c in self.coords) + ")"


def vec(*coords: RationalLike) -> RationalVector:
    """Convenience constructor: ``vec(1, "1/2")``."""
    return RationalVector(coords)


def rational_rank(vectors: Sequence[RationalVector]) -> int:
    """Rank of the given vectors over the rationals (exact elimination)."""
    rows = [list(v.coords) for v in vectors if not v.is_zero()]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    col = 0
    while rank < len(rows) and col < ncols:
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        for r in range(rank + 1, len(rows)):
            if rows[r][col] != 0:
                factor = rows[r][col] / prow[col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], prow)]
        rank += 1
        col += 1
    return rank


# ---------------------------------------------------------------------------
# The cone-induced order.


def cone_leq(cone, x, y) -> bool:
    """``x <= y`` in the partial order induced by ``cone``.

    Holds exactly when ``y - x`` is a member of the cone.  Elements must
    support subtraction; membership is delegated to ``cone.contains``.
    """
    dim = getattr(cone, "dim", None)
    if dim is not None:
        for v in (x, y):
            vdim = getattr(v, "dim", None)
            if vdim is not None and vdim != dim:
                raise DimensionMismatch(f"element dim {vdim} != cone dim {dim}")
    return cone.contains(y - x)


@dataclass(frozen=True)
class OrderInterval:
    """The set ``[lo, hi] = {z : lo <= z <= hi}`` in the cone order."""

    lo: RationalVector
    hi: RationalVector
    cone: object

    def contains(self, z) -> bool:
        return cone_leq(self.cone, self.lo, z) and cone_leq(self.cone, z, self.hi)

    def is_degenerate(self) -> bool:
        return self.lo == self.hi


def make_interval(x, y, cone) -> OrderInterval:
    """Build ``[x, y]``; raises :class:`EmptyInterval` unless ``x <= y``."""
    if not cone_leq(cone, x, y):
        raise EmptyInterval(f"{x!r} is not below {y!r} in the cone order")
    return OrderInterval(x, y, cone)


class DecreasingChain:
    """A sequence ``n -> element(n)`` (n = 1, 2, ...) claimed to decrease to
    ``claimed_infimum`` in the cone order.

    The monotonicity and lower-bound invariants are verified lazily for the
    indices actually queried (``check_prefix``); nothing about the claimed
    infimum is ever *proved* here, see :func:`validate_chain_infimum`.
    """

    def __init__(self, generator: Callable[[int], object], claimed_infimum, cone):
        self.generator = generator
        self.claimed_infimum = claimed_infimum
        self.cone = cone
        self._cache: dict[int, object] = {}

    def element(self, n: int):
        if n < 1:
            raise IndexError("chain indices start at 1")
        if n not in self._cache:
            self._cache[n] = self.generator(n)
        return self._cache[n]

    def check_prefix(self, depth: int) -> None:
        """Verify the chain invariants for every index up to ``depth``."""
        for n in range(1, depth + 1):
            if not cone_leq(self.cone, self.claimed_infimum, self.element(n)):
                raise ChainInvariantError(
                    f"claimed infimum is not below element({n})"
                )
            if n > 1 and not cone_leq(self.cone, self.element(n), self.element(n - 1)):
                raise ChainInvariantError(f"element({n}) is not below element({n - 1})")


def canonical_chain(w, cone) -> DecreasingChain:
    """The chain ``n -> w / n`` with claimed infimum 0.

    Requires ``w`` to lie in the cone.  The claim that the infimum is 0 is
    justified only for Archimedean (e.g. closed) cones; for others the chain
    is still constructed and it is the validator's job to refute the claim.
    """
    if not cone.contains(w):
        raise NotPositive(f"{w!r} is not in the cone")
    zero = w - w
    return DecreasingChain(lambda n: w * Fraction(1, n), zero, cone)


@dataclass(frozen=True)
class Refuted:
    """The infimum claim is wrong: ``witness`` is a lower bound above it."""

    witness: object


@dataclass(frozen=True)
class ConsistentUpTo:
    """No refutation found among the candidates up to the given depth."""

    depth: int


def validate_chain_infimum(
    chain: DecreasingChain, candidate_lower_bounds: Iterable, depth: int
) -> Union[Refuted, ConsistentUpTo]:
    """Finite refutation search for a chain's claimed infimum.

    Returns ``Refuted(z)`` if some candidate ``z`` is a lower bound of the
    first ``depth`` elements yet does not sit below the claimed infimum;
    otherwise ``ConsistentUpTo(depth)``.  Consistency is *not* a proof:
    infimum validity is not decidable from finitely many indices.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    chain.check_prefix(depth)
    for z in candidate_lower_bounds:
        bounds_all = all(
            cone_leq(chain.cone, z, chain.element(n)) for n in range(1, depth + 1)
        )
        if bounds_all and not cone_leq(chain.cone, z, chain.claimed_infimum):
            return Refuted(z)
    return ConsistentUpTo(depth)
