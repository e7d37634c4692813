"""Exact rational linear programming.

A small two-phase simplex over ``fractions.Fraction`` with Bland's
least-index anti-cycling rule.  Variables are free (internally split into
positive and negative parts); every answer that carries a point is
re-substituted into the constraints before it is returned, so callers can
rely on feasibility holding with zero tolerance.

Instances in this package are tiny (tens of variables at most); no effort is
spent on sparse storage or revised-simplex updates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .core import DimensionMismatch, RationalVector, rat

LEQ = "<="
EQ = "=="
GEQ = ">="

_RELATIONS = (LEQ, EQ, GEQ)

MINIMIZE = "minimize"
MAXIMIZE = "maximize"
FEASIBILITY = "feasibility_only"


@dataclass(frozen=True)
class LinearProgram:
    constraint_matrix: tuple[RationalVector, ...]
    rhs: tuple[Fraction, ...]
    relations: tuple[str, ...]
    objective: RationalVector
    sense: str = MINIMIZE

    def __post_init__(self):
        m = len(self.constraint_matrix)
        if not (m == len(self.rhs) == len(self.relations)):
            raise DimensionMismatch("constraint rows, rhs and relations disagree")
        for rel in self.relations:
            if rel not in _RELATIONS:
                raise ValueError(f"unknown relation {rel!r}")
        n = self.objective.dim
        for row in self.constraint_matrix:
            if row.dim != n:
                raise DimensionMismatch("constraint row dimension != objective")
        if self.sense not in (MINIMIZE, MAXIMIZE, FEASIBILITY):
            raise ValueError(f"unknown sense {self.sense!r}")

    @property
    def nvars(self) -> int:
        return self.objective.dim

    def satisfied_by(self, point: RationalVector) -> bool:
        """Exact re-substitution of ``point`` into every constraint."""
        for row, b, rel in zip(self.constraint_matrix, self.rhs, self.relations):
            lhs = row.dot(point)
            ok = (lhs <= b) if rel == LEQ else (lhs >= b) if rel == GEQ else (lhs == b)
            if not ok:
                return False
        return True


@dataclass(frozen=True)
class LPOutcome:
    status: str  # "optimal" | "infeasible" | "unbounded" | "feasible"
    point: Optional[RationalVector] = None
    value: Optional[Fraction] = None


def lp(
    rows: Iterable[Sequence] ,
    relations: Iterable[str],
    rhs: Iterable,
    objective: Sequence = None,
    sense: str = FEASIBILITY,
) -> LinearProgram:
    """Convenience constructor coercing plain sequences to exact rationals."""
    rows = tuple(RationalVector(r) for r in rows)
    if objective is None:
        objective = [0] * rows[0].dim
    return LinearProgram(
        constraint_matrix=rows,
        rhs=tuple(rat(b) for b in rhs),
        relations=tuple(relations),
        objective=RationalVector(objective),
        sense=sense,
    )


class _Tableau:
    """Dense simplex tableau; last row holds reduced costs, last column rhs."""

    def __init__(self, rows, basis):
        self.rows = rows  # list of list[Fraction], m constraint rows + 1 cost row
        self.basis = basis  # basis variable index per constraint row

    @property
    def m(self):
        return len(self.rows) - 1

    @property
    def ncols(self):
        return len(self.rows[0]) - 1

    def pivot(self, r: int, c: int) -> None:
        prow = self.rows[r]
        piv = prow[c]
        if piv != 1:
            inv = 1 / piv
            self.rows[r] = prow = [a * inv for a in prow]
        for i, row in enumerate(self.rows):
            if i != r and row[c] != 0:
                f = row[c]
                self.rows[i] = [a - f * b for a, b in zip(row, prow)]
        self.basis[r] = c

    def run(self, allowed: int) -> str:
        """Minimize the cost row over columns < ``allowed``.

        Returns "optimal" or "unbounded".  Bland's rule throughout.
        """
        while True:
            cost = self.rows[-1]
            enter = next((j for j in range(allowed) if cost[j] < 0), None)
            if enter is None:
                return "optimal"
            leave = None
            best = None
            for i in range(self.m):
                coef = self.rows[i][enter]
                if coef > 0:
                    ratio = self.rows[i][-1] / coef
                    if (
                        best is None
                        or ratio < best
                        or (ratio == best and self.basis[i] < self.basis[leave])
                    ):
                        best = ratio
                        leave = i
            if leave is None:
                return "unbounded"
            self.pivot(leave, enter)


def _build_phase1(lp_: LinearProgram):
    """Standard form with split variables; returns tableau and column map."""
    n = lp_.nvars
    m = len(lp_.constraint_matrix)

    # Normalize rows so rhs >= 0 (flipping the relation when negating).
    rows = []
    for a, b, rel in zip(lp_.constraint_matrix, lp_.rhs, lp_.relations):
        if b < 0:
            a, b = -a, -b
            rel = {LEQ: GEQ, GEQ: LEQ, EQ: EQ}[rel]
        rows.append((a, b, rel))

    nslack = sum(1 for _, _, rel in rows if rel != EQ)
    # columns: x+ (n), x- (n), slacks (nslack), artificials (filled below), rhs
    slack_base = 2 * n
    art_base = 2 * n + nslack

    needs_art = []
    si = 0
    body = []
    for a, b, rel in rows:
        coefs = [Fraction(0)] * (art_base)
        for j, v in enumerate(a.coords):
            coefs[j] = v
            coefs[n + j] = -v
        if rel == LEQ:
            coefs[slack_base + si] = Fraction(1)
            needs_art.append(False)
            si += 1
        elif rel == GEQ:
            coefs[slack_base + si] = Fraction(-1)
            needs_art.append(True)
            si += 1
        else:
            needs_art.append(True)
        body.append((coefs, b))

    nart = sum(needs_art)
    ncols = art_base + nart
    tab_rows = []
    basis = []
    ai = 0
    for (coefs, b), art in zip(body, needs_art):
        row = coefs + [Fraction(0)] * nart + [b]
        if art:
            row[art_base + ai] = Fraction(1)
            basis.append(art_base + ai)
            ai += 1
        else:
            # slack with +1 coefficient is basic
            basis.append(next(j for j in range(slack_base, art_base) if row[j] == 1))
        tab_rows.append(row)

    # Phase-1 cost: sum of artificials, expressed over the current basis.
    cost = [Fraction(0)] * (ncols + 1)
    for j in range(art_base, ncols):
        cost[j] = Fraction(1)
    for r, bvar in enumerate(basis):
        if bvar >= art_base:
            cost = [c - a for c, a in zip(cost, tab_rows[r])]
    tab_rows.append(cost)
    return _Tableau(tab_rows, basis), n, art_base


def _extract_point(tab: _Tableau, n: int) -> RationalVector:
    values = [Fraction(0)] * tab.ncols
    for r, bvar in enumerate(tab.basis):
        values[bvar] = tab.rows[r][-1]
    return RationalVector([values[j] - values[n + j] for j in range(n)])


def solve(lp_: LinearProgram) -> LPOutcome:
    """Solve an exact LP; returned points satisfy all constraints exactly."""
    tab, n, art_base = _build_phase1(lp_)
    tab.run(art_base)
    if tab.rows[-1][-1] != 0:
        # phase-1 optimum is -sum(artificials); nonzero means infeasible
        return LPOutcome(status="infeasible")

    # Drive remaining artificials out of the basis where possible.
    for r in range(tab.m):
        if tab.basis[r] >= art_base:
            col = next((j for j in range(art_base) if tab.rows[r][j] != 0), None)
            if col is not None:
                tab.pivot(r, col)
            # else: redundant zero row; harmless to leave in place

    point = _extract_point(tab, n)
    if not lp_.satisfied_by(point):  # pragma: no cover - internal guard
        raise AssertionError("simplex produced an infeasible point")
    if lp_.sense == FEASIBILITY:
        return LPOutcome(status="feasible", point=point)

    # Phase 2: install the real objective (minimization form).
    sign = Fraction(1) if lp_.sense == MINIMIZE else Fraction(-1)
    cost = [Fraction(0)] * (tab.ncols + 1)
    for j, c in enumerate(lp_.objective.coords):
        cost[j] = sign * c
        cost[n + j] = -sign * c
    for r, bvar in enumerate(tab.basis):
        if bvar < art_base and cost[bvar] != 0:
            f = cost[bvar]
            cost = [c - f * a for c, a in zip(cost, tab.rows[r])]
    tab.rows[-1] = cost

    status = tab.run(art_base)
    point = _extract_point(tab, n)
    if not lp_.satisfied_by(point):  # pragma: no cover - internal guard
        raise AssertionError("simplex produced an infeasible point")
    if status == "unbounded":
        return LPOutcome(status="unbounded", point=point)
    value = lp_.objective.dot(point)
    return LPOutcome(status="optimal", point=point, value=value)


def strict_feasible(lp_: LinearProgram, strict_rows: Iterable[int]) -> LPOutcome:
    """Decide whether the listed inequality rows can hold strictly.

    Shifts each listed row by a fresh margin variable ``t`` (capped at 1),
    maximizes ``t`` and reports feasibility iff the optimum is positive.
    The returned point strictly satisfies every listed row.
    """
    strict = set(strict_rows)
    for i in strict:
        if lp_.relations[i] == EQ:
            raise ValueError(f"row {i} is an equality; it cannot be strict")

    n = lp_.nvars
    rows = []
    rhs = []
    rels = []
    for i, (a, b, rel) in enumerate(
        zip(lp_.constraint_matrix, lp_.rhs, lp_.relations)
    ):
        shift = 0
        if i in strict:
            shift = -1 if rel == GEQ else 1
        rows.append(RationalVector(list(a.coords) + [shift]))
        rhs.append(b)
        rels.append(rel)
    # 0 <= t <= 1
    rows.append(RationalVector([0] * n + [1]))
    rhs.append(Fraction(0))
    rels.append(GEQ)
    rows.append(RationalVector([0] * n + [1]))
    rhs.append(Fraction(1))
    rels.append(LEQ)

    aug = LinearProgram(
        constraint_matrix=tuple(rows),
        rhs=tuple(rhs),
        relations=tuple(rels),
        objective=RationalVector([0] * n + [1]),
        sense=MAXIMIZE,
    )
    out = solve(aug)
    if out.status == "infeasible" or (out.status == "optimal" and out.value == 0):
        return LPOutcome(status="infeasible")
    point = RationalVector(out.point.coords[:n])
    margin = out.point.coords[n]
    return LPOutcome(status="feasible", point=point, value=margin)
