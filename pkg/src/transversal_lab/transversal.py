"""Transversal feasibility over stacks of convex sections, exactly.

A line (a, b, c, d) meets the section at height t iff its point
(a*t + b, c*t + d) satisfies the polygon's edge inequalities; those rows are
linear in (a, b, c, d), so "meets every section" is an exact rational LP.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ._parallel import pmap
from .errors import DuplicateHeights, EmptyImage, TooFewSections
from .geom import (
    LineParam,
    Section,
    as_fraction,
    convex_hull,
    line_through_points,
    polygon_intersection,
)
from .simplex import EQ, GE, LE, OPTIMAL, Row, feasible_point, solve_lp


@dataclass(frozen=True)
class ConstraintSet:
    """Linear rows over (a, b, c, d) whose solution set is exactly the set of
    lines meeting one section."""

    section: Section
    rows: tuple[Row, ...]

    def satisfied_by(self, line: LineParam) -> bool:
        x = tuple(as_fraction(v) for v in (line.a, line.b, line.c, line.d))
        return all(r.satisfied_by(x) for r in self.rows)


@dataclass(frozen=True)
class TransversalReport:
    feasible: bool
    witness: Optional[LineParam]
    infeasible_subset: Optional[tuple[int, ...]]


def _edge_row(n, beta, t) -> Row:
    # dot(n, (a*t + b, c*t + d)) >= beta
    return Row.of([n[0] * t, n[0], n[1] * t, n[1]], GE, beta)


def section_constraint_set(s: Section) -> ConstraintSet:
    """Rows satisfied by a line iff its point at s.t lies in the polygon."""
    t = s.t
    vs = s.vertices
    rows: list[Row] = []
    if len(vs) == 1:
        (x, y) = vs[0]
        rows.append(Row.of([t, 1, 0, 0], EQ, x))
        rows.append(Row.of([0, 0, t, 1], EQ, y))
    elif len(vs) == 2:
        a, b = vs
        d = (b[0] - a[0], b[1] - a[1])
        n = (-d[1], d[0])
        rows.append(Row.of([n[0] * t, n[0], n[1] * t, n[1]], EQ, n[0] * a[0] + n[1] * a[1]))
        rows.append(_edge_row(d, d[0] * a[0] + d[1] * a[1], t))
        rows.append(
            Row.of(
                [-d[0] * t, -d[0], -d[1] * t, -d[1]],
                GE,
                -(d[0] * b[0] + d[1] * b[1]),
            )
        )
    else:
        m = len(vs)
        for i in range(m):
            a, b = vs[i], vs[(i + 1) % m]
            n = (-(b[1] - a[1]), b[0] - a[0])
            rows.append(_edge_row(n, n[0] * a[0] + n[1] * a[1], t))
    return ConstraintSet(s, tuple(rows))


def _sorted_sections(sections: Sequence[Section]):
    order = sorted(range(len(sections)), key=lambda i: sections[i].t)
    heights = [sections[i].t for i in order]
    if len(set(heights)) != len(heights):
        raise DuplicateHeights("section heights must be pairwise distinct")
    return order


def _candidate_lines(sections_sorted: list[Section]):
    """Cheap certificate candidates, each verified exactly by the caller."""
    yield LineParam(Fraction(0), Fraction(0), Fraction(0), Fraction(0))
    first, last = sections_sorted[0], sections_sorted[-1]
    pts_a = [first.centroid()] + list(first.vertices)
    pts_b = [last.centroid()] + list(last.vertices)
    for p in pts_a:
        for q in pts_b:
            yield line_through_points(p, first.t, q, last.t)


def _meets_all(line: LineParam, csets: Sequence[ConstraintSet]) -> bool:
    return all(cs.satisfied_by(line) for cs in csets)


def _lp_feasible(csets: Sequence[ConstraintSet]) -> Optional[LineParam]:
    rows = [r for cs in csets for r in cs.rows]
    x = feasible_point(4, rows)
    if x is None:
        return None
    return LineParam(*x)


def _analytic_center(csets: Sequence[ConstraintSet], start: LineParam) -> Optional[LineParam]:
    """Damped Newton on the log-barrier; None when the region has no interior."""
    rows = [r for cs in csets for r in cs.rows]
    ineq = [(r.coeffs, r.rhs) for r in rows if r.rel == GE]
    if not ineq or any(r.rel == EQ for r in rows):
        return None
    A = [[float(c) for c in coeffs] for coeffs, _ in ineq]
    b = [float(rhs) for _, rhs in ineq]
    x = [float(v) for v in (start.a, start.b, start.c, start.d)]
    # push inside first: maximize the minimum slack with an exact LP
    margin_rows = [
        Row.of(list(coeffs) + [-1], GE, rhs) for coeffs, rhs in ineq
    ]
    box = Fraction(10 ** 6)
    for j in range(4):
        e = [0] * 5
        e[j] = 1
        margin_rows.append(Row.of(e, LE, box))
        margin_rows.append(Row.of(e, GE, -box))
    margin_rows.append(Row.of([0, 0, 0, 0, 1], LE, 1))
    res = solve_lp(5, margin_rows, objective=[0, 0, 0, 0, 1])
    if res.status != OPTIMAL or res.objective is None or res.objective <= 0:
        return None
    x = [float(v) for v in res.x[:4]]
    for _ in range(60):
        slack = [
            sum(A[i][j] * x[j] for j in range(4)) - b[i] for i in range(len(A))
        ]
        if min(slack) <= 0:
            return None
        grad = [0.0] * 4
        hess = [[0.0] * 4 for _ in range(4)]
        for i, s in enumerate(slack):
            inv = 1.0 / s
            for j in range(4):
                grad[j] += -A[i][j] * inv
                for k in range(4):
                    hess[j][k] += A[i][j] * A[i][k] * inv * inv
        try:
            step = _solve4(hess, [-g for g in grad])
        except ZeroDivisionError:
            return None
        tau = 1.0
        while tau > 1e-8:
            xn = [x[j] + tau * step[j] for j in range(4)]
            sn = [sum(A[i][j] * xn[j] for j in range(4)) - b[i] for i in range(len(A))]
            if min(sn) > 0:
                break
            tau *= 0.5
        else:
            break
        x = [x[j] + tau * step[j] for j in range(4)]
        if max(abs(s) for s in step) * tau < 1e-13:
            break
    cand = LineParam(*(Fraction(v).limit_denominator(10 ** 12) for v in x))
    return cand if _meets_all(cand, csets) else None


def _solve4(mat, rhs):
    n = len(rhs)
    m = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(m[r][col]))
        if abs(m[piv][col]) < 1e-300:
            raise ZeroDivisionError
        m[col], m[piv] = m[piv], m[col]
        inv = 1.0 / m[col][col]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col] * inv
                for k in range(col, n + 1):
                    m[r][k] -= f * m[col][k]
    return [m[r][n] / m[r][r] for r in range(n)]


def find_transversal(
    sections: Sequence[Section], canonical: bool = False
) -> TransversalReport:
    """Exact feasibility of "one line meets every section".

    Feasible reports carry a witness satisfying every constraint exactly.
    Infeasible reports carry the first (lexicographically) infeasible
    subfamily of at most five sections.
    """
    if not sections:
        raise TooFewSections("need at least one section")
    order = _sorted_sections(sections)
    srt = [sections[i] for i in order]
    csets = [section_constraint_set(s) for s in srt]
    if len(srt) == 1:
        p = srt[0].centroid()
        return TransversalReport(True, LineParam(Fraction(0), p[0], Fraction(0), p[1]), None)
    witness = None
    for cand in _candidate_lines(srt):
        if _meets_all(cand, csets):
            witness = cand
            break
    if witness is None:
        witness = _lp_feasible(csets)
    if witness is not None:
        if canonical:
            center = _analytic_center(csets, witness)
            if center is not None:
                witness = center
        return TransversalReport(True, witness, None)
    if len(srt) <= 5:
        subset = tuple(sorted(order))
        return TransversalReport(False, None, subset)
    bad = _first_infeasible_quintuple(csets)
    subset = tuple(sorted(order[i] for i in bad))
    return TransversalReport(False, None, subset)


def _first_infeasible_quintuple(csets: Sequence[ConstraintSet]):
    """Lexicographic scan with a cache of witnesses from earlier quintuples."""
    cache: list[LineParam] = []
    for combo in itertools.combinations(range(len(csets)), 5):
        group = [csets[i] for i in combo]
        if any(_meets_all(w, group) for w in cache):
            continue
        w = _lp_feasible(group)
        if w is None:
            return combo
        cache.append(w)
    return None


@dataclass(frozen=True)
class HellyReport:
    global_feasible: bool
    all_quintuples: bool
    witness_quintuple: Optional[tuple[int, ...]]

    @property
    def equivalent(self) -> bool:
        return self.global_feasible == self.all_quintuples


def helly_check(sections: Sequence[Section]) -> HellyReport:
    """Compare global feasibility with the conjunction over all 5-subsets."""
    if len(sections) < 6:
        raise TooFewSections("helly check needs at least 6 sections")
    order = _sorted_sections(sections)
    srt = [sections[i] for i in order]
    csets = [section_constraint_set(s) for s in srt]
    report = find_transversal(sections)
    if report.feasible:
        w = report.witness
        all_q = True
        for combo in itertools.combinations(range(len(csets)), 5):
            if not _meets_all(w, [csets[i] for i in combo]):
                # the global witness certifies each quintuple; a miss would
                # mean the witness itself is wrong
                all_q = _quintuple_conjunction(csets)[0]
                break
        return HellyReport(True, all_q, None)
    bad = _first_infeasible_quintuple(csets)
    if bad is None:
        return HellyReport(False, True, None)
    return HellyReport(False, False, tuple(sorted(order[i] for i in bad)))


def _quintuple_conjunction(csets):
    cache: list[LineParam] = []
    for combo in itertools.combinations(range(len(csets)), 5):
        group = [csets[i] for i in combo]
        if any(_meets_all(w, group) for w in cache):
            continue
        w = _lp_feasible(group)
        if w is None:
            return False, combo
        cache.append(w)
    return True, None


def browder_four(a: Section, b: Section, c: Section, d: Section) -> TransversalReport:
    """Transversal of four sections; feasible whenever the four come from a
    stack with the three-section line property."""
    return find_transversal([a, b, c, d])


# ---------------------------------------------------------------------------
# set-valued fixed-point demonstrator


@dataclass
class FixedPointTrace:
    points: list[tuple[float, float]]
    converged: bool
    residual: float
    line: Optional[LineParam]


def _project_polygon_through(x, tx, poly: Section, t_target):
    """Image of `poly` (at poly.t) through the pencil of lines at (x, tx),
    evaluated on the plane t_target; exact affine copy of the polygon."""
    mu = (t_target - poly.t) / (tx - poly.t)
    out = []
    for v in poly.vertices:
        out.append((v[0] + mu * (x[0] - v[0]), v[1] + mu * (x[1] - v[1])))
    return convex_hull(out) if len(out) > 2 else out


def _image_through_b(x, b: Section, a: Section, c: Section):
    """h(x): points of c reachable from x in plane b through section a."""
    mapped = _project_polygon_through(x, b.t, a, c.t)
    return polygon_intersection(list(c.vertices), mapped)


def _centroid(poly) -> tuple[Fraction, Fraction]:
    n = len(poly)
    sx = sum(p[0] for p in poly)
    sy = sum(p[1] for p in poly)
    return (
        Fraction(sx, n).limit_denominator(10 ** 12),
        Fraction(sy, n).limit_denominator(10 ** 12),
    )


def fixed_point_trace(
    a: Section,
    b: Section,
    c: Section,
    d: Section,
    start,
    max_iter: int = 100,
    tol: float = 1e-8,
) -> FixedPointTrace:
    """Iterate a single-valued selection of the composed set-valued map
    x -> {points of B on lines through D and (points of C on lines through A and x)}.

    The trace is a demonstrator; the LP route stays authoritative for
    existence.  Raises EmptyImage when an intermediate image is empty.
    """
    heights = [s.t for s in (a, b, c, d)]
    if len(set(heights)) != 4:
        raise DuplicateHeights("four distinct heights required")
    x = (as_fraction(start[0]), as_fraction(start[1]))
    trace = [(float(x[0]), float(x[1]))]
    converged = False
    residual = math.inf
    for _ in range(max_iter):
        v = _image_through_b(x, b, a, c)
        if not v:
            raise EmptyImage("no line through the start meets both outer sections")
        nu = (b.t - c.t) / (d.t - c.t)
        from .geom import minkowski_scaled

        reach = minkowski_scaled(v, 1 - nu, list(d.vertices), nu)
        fx = polygon_intersection(list(b.vertices), reach)
        if not fx:
            raise EmptyImage("composed image is empty inside the middle section")
        nxt = _centroid(fx)
        residual = math.hypot(float(nxt[0] - x[0]), float(nxt[1] - x[1]))
        x = nxt
        trace.append((float(x[0]), float(x[1])))
        if residual <= tol:
            converged = True
            break
    line = None
    if converged:
        # choose a partner point in plane c seen through both outer sections
        through_a = _project_polygon_through(x, b.t, a, c.t)
        through_d = _project_polygon_through(x, b.t, d, c.t)
        meet = polygon_intersection(list(c.vertices), through_a)
        meet = polygon_intersection(meet, through_d)
        if meet:
            y = _centroid(meet)
            line = line_through_points(x, b.t, y, c.t)
        else:
            converged = False
    return FixedPointTrace(trace, converged, residual, line)
