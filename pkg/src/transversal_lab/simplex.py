"""Exact rational simplex for the small feasibility/optimization problems here.

Works entirely over Fraction, so feasibility verdicts are exact.  Structural
variables are free (split into positive parts internally); inequality rows may
mix <=, >= and ==.  Dantzig pricing with an automatic switch to Bland's rule
guards against cycling.  Problems in this package have at most a few hundred
rows, so a dense tableau is fine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

LE = "<="
GE = ">="
EQ = "=="

ZERO = Fraction(0)
ONE = Fraction(1)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Row:
    coeffs: tuple
    rel: str
    rhs: Fraction

    @staticmethod
    def of(coeffs: Sequence, rel: str, rhs) -> "Row":
        if rel not in (LE, GE, EQ):
            raise ValueError(f"bad relation {rel!r}")
        return Row(tuple(Fraction(c) for c in coeffs), rel, Fraction(rhs))

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        v = sum(c * xi for c, xi in zip(self.coeffs, x) if c)
        if self.rel == LE:
            return v <= self.rhs
        if self.rel == GE:
            return v >= self.rhs
        return v == self.rhs


@dataclass
class LPResult:
    status: str
    x: Optional[tuple]
    objective: Optional[Fraction]


def _pivot(tab, basis, r, c, ncols):
    prow = tab[r]
    piv = prow[c]
    if piv != ONE:
        inv = ONE / piv
        tab[r] = prow = [v * inv for v in prow]
    nz = [j for j, v in enumerate(prow) if v]
    for i, row in enumerate(tab):
        if i == r:
            continue
        f = row[c]
        if f:
            for j in nz:
                row[j] -= f * prow[j]
    basis[r] = c


def _run_simplex(tab, basis, ncols, max_pivots=200000):
    """Tableau rows end with rhs; last row is the (maximizing) objective in
    reduced form: obj[j] < 0 means entering j improves.  Returns status."""
    obj = tab[-1]
    pivots = 0
    bland_after = 2000
    while True:
        pivots += 1
        if pivots > max_pivots:
            raise RuntimeError("simplex pivot budget exhausted")
        use_bland = pivots > bland_after
        enter = -1
        if use_bland:
            for j in range(ncols):
                if obj[j] < 0:
                    enter = j
                    break
        else:
            best = ZERO
            for j in range(ncols):
                v = obj[j]
                if v < best:
                    best = v
                    enter = j
        if enter < 0:
            return OPTIMAL
        leave = -1
        best_ratio = None
        for i in range(len(tab) - 1):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leave])
                ):
                    best_ratio = ratio
                    leave = i
        if leave < 0:
            return UNBOUNDED
        _pivot(tab, basis, leave, enter, ncols + 1)


def solve_lp(
    n_vars: int,
    rows: Sequence[Row],
    objective: Optional[Sequence] = None,
    maximize: bool = True,
) -> LPResult:
    """Solve max/min objective . x subject to rows, x free.

    With objective=None only feasibility is decided (phase 1); the returned
    point is then a vertex of the feasible region.
    """
    rows = list(rows)
    m = len(rows)
    # canonical: every row as (coeffs, rel in {LE, EQ}, rhs)
    canon = []
    for row in rows:
        if row.rel == GE:
            canon.append((tuple(-c for c in row.coeffs), LE, -row.rhs))
        else:
            canon.append((row.coeffs, row.rel, row.rhs))
    nsplit = 2 * n_vars
    n_le = sum(1 for _, rel, _ in canon if rel == LE)
    slack_base = nsplit
    art_base = nsplit + n_le
    # count artificials: LE rows with negative rhs, plus every EQ row
    art_rows = [
        i
        for i, (_, rel, rhs) in enumerate(canon)
        if (rel == LE and rhs < 0) or rel == EQ
    ]
    n_art = len(art_rows)
    ncols = nsplit + n_le + n_art
    tab: list[list[Fraction]] = []
    basis: list[int] = []
    slack_i = 0
    art_i = 0
    for coeffs, rel, rhs in canon:
        line = [ZERO] * (ncols + 1)
        neg = rhs < 0
        sgn = -1 if neg else 1
        for j, c in enumerate(coeffs):
            if c:
                line[2 * j] = sgn * c
                line[2 * j + 1] = -sgn * c
        line[-1] = sgn * rhs
        if rel == LE:
            line[slack_base + slack_i] = Fraction(sgn)
            if neg:
                line[art_base + art_i] = ONE
                basis.append(art_base + art_i)
                art_i += 1
            else:
                basis.append(slack_base + slack_i)
            slack_i += 1
        else:  # EQ
            line[art_base + art_i] = ONE
            basis.append(art_base + art_i)
            art_i += 1
        tab.append(line)

    # phase 1: maximize -sum(artificials)
    obj = [ZERO] * (ncols + 1)
    for j in range(art_base, art_base + n_art):
        obj[j] = ONE
    tab.append(obj)
    for i, b in enumerate(basis):
        if b >= art_base and obj[b]:
            f = obj[b]
            for j, v in enumerate(tab[i]):
                if v:
                    obj[j] -= f * v
    status = _run_simplex(tab, basis, ncols)
    if status != OPTIMAL:
        raise RuntimeError("phase 1 cannot be unbounded")
    if tab[-1][-1] != 0:
        return LPResult(INFEASIBLE, None, None)

    # drive artificials out of the basis; drop redundant rows
    drop: list[int] = []
    for i in range(len(tab) - 1):
        if basis[i] >= art_base:
            prow = tab[i]
            piv = next((j for j in range(art_base) if prow[j]), None)
            if piv is None:
                drop.append(i)
            else:
                _pivot(tab, basis, i, piv, ncols + 1)
    for i in sorted(drop, reverse=True):
        del tab[i]
        del basis[i]

    # cut off artificial columns
    keep = art_base
    tab = [row[:keep] + [row[-1]] for row in tab]
    ncols = keep

    def extract():
        vals = [ZERO] * ncols
        for i, b in enumerate(basis):
            vals[b] = tab[i][-1]
        return tuple(vals[2 * j] - vals[2 * j + 1] for j in range(n_vars))

    if objective is None:
        return LPResult(OPTIMAL, extract(), None)

    cvec = [Fraction(c) for c in objective]
    if not maximize:
        cvec = [-c for c in cvec]
    obj = [ZERO] * (ncols + 1)
    for j, c in enumerate(cvec):
        if c:
            obj[2 * j] = -c
            obj[2 * j + 1] = c
    tab[-1] = obj
    for i, b in enumerate(basis):
        f = obj[b]
        if f:
            prow = tab[i]
            for j, v in enumerate(prow):
                if v:
                    obj[j] -= f * v
    status = _run_simplex(tab, basis, ncols)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, extract(), None)
    x = extract()
    val = sum(c * xi for c, xi in zip(cvec, x))
    if not maximize:
        val = -val
    return LPResult(OPTIMAL, x, val)


def feasible_point(n_vars: int, rows: Sequence[Row]) -> Optional[tuple]:
    """Exact feasibility: a vertex of {x : rows} or None."""
    res = solve_lp(n_vars, rows, objective=None)
    return res.x if res.status == OPTIMAL else None


def verify_point(x: Sequence, rows: Sequence[Row]) -> bool:
    xs = [Fraction(v) for v in x]
    return all(r.satisfied_by(xs) for r in rows)
