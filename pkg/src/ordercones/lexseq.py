"""The two counterexample spaces.

* Lexicographically ordered R^n: a totally ordered vector lattice that is
  not Archimedean.  Every nonzero positive element is net catching, but only
  elements with positive first coordinate are order units, so the two
  notions genuinely separate.

* Eventually constant rational sequences: an infinite-dimensional
  Archimedean vector lattice with order units in which *no* element is net
  catching.  Non-catching is certified constructively: for any positive
  candidate ``u`` there is an explicit chain decreasing to 0 that never
  drops below ``u``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .core import (
    DecreasingChain,
    DimensionMismatch,
    DimensionTooSmall,
    NotPositive,
    RationalVector,
    rat,
)

# ---------------------------------------------------------------------------
# Lexicographic order on R^n.


@dataclass(frozen=True)
class LexSign:
    """Sign of a vector in the lexicographic order.

    ``sign`` is -1, 0 or 1; ``leading`` is the 1-based index of the first
    nonzero coordinate (None for the zero vector).
    """

    sign: int
    leading: Optional[int]


def lex_classify(x: RationalVector) -> LexSign:
    """First nonzero coordinate decides: all-zero prefix then positive entry
    means positive; negative entry means negative."""
    for i, c in enumerate(x.coords):
        if c != 0:
            return LexSign(1 if c > 0 else -1, i + 1)
    return LexSign(0, None)


@dataclass(frozen=True)
class LexCone:
    """Positive cone of the lexicographic order: zero or lex-positive."""

    dim: int

    def contains(self, x: RationalVector) -> bool:
        if x.dim != self.dim:
            raise DimensionMismatch(f"{x.dim} != {self.dim}")
        return lex_classify(x).sign >= 0


@dataclass(frozen=True)
class LexSpace:
    """R^dim with the (total) lexicographic vector order; dim >= 2."""

    dim: int

    def __post_init__(self):
        if self.dim < 2:
            raise DimensionTooSmall("lexicographic space needs dim >= 2")

    @property
    def cone(self) -> LexCone:
        return LexCone(self.dim)

    def leq(self, x: RationalVector, y: RationalVector) -> bool:
        return self.cone.contains(y - x)


def lex_leq(x: RationalVector, y: RationalVector) -> bool:
    return lex_classify(y - x).sign >= 0


def lex_is_order_unit(x: RationalVector) -> bool:
    """Order units are exactly the vectors with positive first coordinate:
    any ``y`` is dominated once ``n * x_1`` exceeds ``y_1``."""
    return x.coords[0] > 0


def lex_is_net_catching(x: RationalVector) -> bool:
    """Every nonzero positive element catches: the order is total, so a
    chain with infimum 0 cannot stay strictly above a positive element."""
    return lex_classify(x).sign == 1


@dataclass(frozen=True)
class NotCaughtUpTo:
    depth: int


def lex_catch_index(
    x: RationalVector, chain: DecreasingChain, depth: int
) -> Union[int, NotCaughtUpTo]:
    """Least ``n <= depth`` with ``chain(n) <= x`` lexicographically.

    A ``NotCaughtUpTo`` answer for a genuinely net catching ``x`` signals a
    chain whose claimed infimum is wrong (see
    :func:`ordercones.core.validate_chain_infimum`).
    """
    if not lex_is_net_catching(x):
        raise NotPositive(f"{x!r} is not lex-positive")
    chain.check_prefix(depth)
    for n in range(1, depth + 1):
        if lex_leq(chain.element(n), x):
            return n
    return NotCaughtUpTo(depth)


def lex_non_archimedean_witness(
    dim: int, depth: int = 1_000_000
) -> tuple[RationalVector, RationalVector]:
    """A pair ``(x, y)`` with ``n*x <= y`` for every ``n``.

    Returns ``x = e_2`` and ``y = e_1``: the comparison is decided at the
    first coordinate, where ``y - n*x`` has entry 1 regardless of ``n``.
    The domination is verified exhaustively for ``n`` up to ``depth``.
    """
    if dim < 2:
        raise DimensionTooSmall("need dim >= 2")
    x = RationalVector.unit(dim, 1)
    y = RationalVector.unit(dim, 0)
    if not dominates_all_multiples(x, y, depth):  # pragma: no cover - guard
        raise AssertionError("witness failed verification")
    return x, y


def dominates_all_multiples(x: RationalVector, y: RationalVector, n_max: int) -> bool:
    """Exact check that ``n*x <= y`` (lex) for every ``n = 1..n_max``.

    Runs over scaled integer coordinates with an incremental update, so a
    depth of 10^6 stays cheap.
    """
    if x.dim != y.dim:
        raise DimensionMismatch(f"{x.dim} != {y.dim}")
    scale = 1
    for c in list(x.coords) + list(y.coords):
        scale = scale * c.denominator // math.gcd(scale, c.denominator)
    xi = [int(c * scale) for c in x.coords]
    yi = [int(c * scale) for c in y.coords]
    diff = [a - b for a, b in zip(yi, xi)]  # y - n*x at n = 1
    for _ in range(n_max):
        for d in diff:
            if d > 0:
                break
            if d < 0:
                return False
        diff = [a - b for a, b in zip(diff, xi)]
    return True


# ---------------------------------------------------------------------------
# Eventually constant sequences with the componentwise order.


@dataclass(frozen=True)
class EvSeq:
    """A rational sequence with a finite prefix and a constant tail.

    Canonical form: the last prefix entry differs from the tail (enforced on
    construction), so equality of representations is equality of sequences.
    Indices are 1-based.
    """

    prefix: tuple[Fraction, ...]
    tail: Fraction

    def __post_init__(self):
        prefix = tuple(rat(c) for c in self.prefix)
        tail = rat(self.tail)
        while prefix and prefix[-1] == tail:
            prefix = prefix[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "tail", tail)

    @staticmethod
    def constant(value) -> "EvSeq":
        return EvSeq((), rat(value))

    def value_at(self, k: int) -> Fraction:
        if k < 1:
            raise IndexError("sequence indices start at 1")
        return self.prefix[k - 1] if k <= len(self.prefix) else self.tail

    def entries(self) -> tuple[Fraction, ...]:
        """The distinct positions that determine the sequence: the prefix
        plus the tail value."""
        return self.prefix + (self.tail,)

    def max_entry(self) -> Fraction:
        return max(self.entries())

    def min_entry(self) -> Fraction:
        return min(self.entries())

    def __add__(self, other: "EvSeq") -> "EvSeq":
        m = max(len(self.prefix), len(other.prefix))
        return EvSeq(
            tuple(self.value_at(k) + other.value_at(k) for k in range(1, m + 1)),
            self.tail + other.tail,
        )

    def __sub__(self, other: "EvSeq") -> "EvSeq":
        return self + (-other)

    def __neg__(self) -> "EvSeq":
        return EvSeq(tuple(-c for c in self.prefix), -self.tail)

    def __mul__(self, scalar) -> "EvSeq":
        s = rat(scalar)
        return EvSeq(tuple(s * c for c in self.prefix), s * self.tail)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.prefix and self.tail == 0

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.prefix)
        return f"seq[{head}; {self.tail}, {self.tail}, ...]"


EVSEQ_ZERO = EvSeq((), Fraction(0))
EVSEQ_ONE = EvSeq((), Fraction(1))  # the all-ones order unit


@dataclass(frozen=True)
class EvSeqCone:
    """Componentwise positive cone of the sequence space."""

    dim = None  # the space has no finite coordinate dimension

    def contains(self, s: EvSeq) -> bool:
        return all(c >= 0 for c in s.entries())


@dataclass(frozen=True)
class EvSeqSpace:
    """Marker object for the eventually-constant sequence space."""

    @property
    def cone(self) -> EvSeqCone:
        return EvSeqCone()


def ev_leq(a: EvSeq, b: EvSeq) -> bool:
    """Componentwise comparison over the common prefix refinement."""
    m = max(len(a.prefix), len(b.prefix))
    return (
        all(a.value_at(k) <= b.value_at(k) for k in range(1, m + 1))
        and a.tail <= b.tail
    )


def ev_min(a: EvSeq, b: EvSeq) -> EvSeq:
    m = max(len(a.prefix), len(b.prefix))
    return EvSeq(
        tuple(min(a.value_at(k), b.value_at(k)) for k in range(1, m + 1)),
        min(a.tail, b.tail),
    )


def ev_max(a: EvSeq, b: EvSeq) -> EvSeq:
    m = max(len(a.prefix), len(b.prefix))
    return EvSeq(
        tuple(max(a.value_at(k), b.value_at(k)) for k in range(1, m + 1)),
        max(a.tail, b.tail),
    )


def ev_is_order_unit(u: EvSeq) -> bool:
    """Order unit iff the infimum of the entries is positive: then any
    bounded sequence is dominated by a multiple of ``u``."""
    return u.min_entry() > 0


def ev_archimedean_escape_index(x: EvSeq, y: EvSeq) -> Optional[int]:
    """For ``x`` with some positive entry, an exact ``n`` with not
    ``n*x <= y``; None if ``x`` has no positive entry (then ``x <= 0`` and
    domination never breaks, as the Archimedean property demands)."""
    best: Optional[int] = None
    horizon = max(len(x.prefix), len(y.prefix)) + 1
    for k in range(1, horizon + 1):
        xv = x.value_at(k)
        if xv > 0:
            n = max(1, math.floor(y.value_at(k) / xv) + 1)
            best = n if best is None else min(best, n)
    return best


def ev_is_net_catching(u: EvSeq) -> bool:
    """No element of this space is net catching (the space is an
    infinite-dimensional Archimedean vector lattice); for positive nonzero
    ``u`` the refusal is certified by :func:`non_netcatching_witness`."""
    if EvSeqCone().contains(u) and not u.is_zero():
        non_netcatching_witness(u)  # raises if the certificate fails
    return False


@dataclass(frozen=True)
class EvSeqWitnessReport:
    """Certificate that ``candidate`` is not net catching.

    ``chain`` is the sequence family ``x(n)``: zero before index ``n``, the
    constant ``c`` from index ``n`` on, with ``c`` one more than the largest
    entry of the candidate.  Certified facts, each checked exactly up to
    ``depth``:

    (a) the chain is decreasing;
    (b) its order infimum is 0: coordinate ``k`` is zeroed out by every
        ``x(n)`` with ``n > k``, so any lower bound is componentwise <= 0
        (``zero_from_index`` records the per-coordinate witnesses);
    (c) ``x(n) <= candidate`` fails for every ``n``: at position
        ``escape_positions[n-1]`` the chain value ``c`` exceeds the
        candidate's entry.
    """

    candidate: EvSeq
    chain: DecreasingChain
    c: Fraction
    depth: int
    zero_from_index: tuple[int, ...]
    escape_positions: tuple[int, ...]

    def chain_element(self, n: int) -> EvSeq:
        return self.chain.element(n)


def witness_chain_element(n: int, c: Fraction) -> EvSeq:
    """The n-th witness sequence: zeros strictly before index n, then c."""
    return EvSeq((Fraction(0),) * (n - 1), c)


def non_netcatching_witness(u: EvSeq, depth: int = 64) -> EvSeqWitnessReport:
    """Construct and certify the chain showing ``u`` is not net catching."""
    cone = EvSeqCone()
    if not cone.contains(u) or u.is_zero():
        raise NotPositive("witness construction needs a positive nonzero candidate")
    c = u.max_entry() + 1
    chain = DecreasingChain(
        lambda n: witness_chain_element(n, c), EVSEQ_ZERO, cone
    )

    # (a) decreasing with the claimed lower bound 0
    chain.check_prefix(depth)

    # (b) order infimum is 0: every coordinate k is 0 from chain index k+1 on
    zero_from = []
    for k in range(1, depth + 1):
        n = k + 1
        if chain.element(n).value_at(k) != 0:  # pragma: no cover - structural
            raise AssertionError("witness chain failed the zero-coordinate check")
        zero_from.append(n)
    if chain.element(1).tail != c:  # pragma: no cover - structural
        raise AssertionError("witness chain tail mismatch")

    # (c) for each n, an explicit position where the chain exceeds u
    escapes = []
    for n in range(1, depth + 1):
        k = max(n, len(u.prefix) + 1)
        if not chain.element(n).value_at(k) == c > u.value_at(k):
            raise AssertionError(  # pragma: no cover - structural
                "witness chain failed the escape check"
            )
        if ev_leq(chain.element(n), u):  # pragma: no cover - structural
            raise AssertionError("chain element unexpectedly below candidate")
        escapes.append(k)

    return EvSeqWitnessReport(
        candidate=u,
        chain=chain,
        c=c,
        depth=depth,
        zero_from_index=tuple(zero_from),
        escape_positions=tuple(escapes),
    )
