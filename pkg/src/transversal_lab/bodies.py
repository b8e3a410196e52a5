"""Generators of section stacks and a convex-concavity checker.

The line-property being checked: for any three sections of the stack, through
any point of any one of them passes a line meeting the other two.  Stacks of
concentric scaled copies of one polygon have it exactly when the radius is a
convex function of height (midpoints stay below chords), which covers the
one-sheet quadric and the split cone; the random generator builds stacks as
plane-wise convex hulls of a bundle of lines, which has the property by
construction (affine combinations of bundle lines are again lines of the
bundle's span).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from ._parallel import pmap
from .errors import InvalidHeight, TooFewSections, ValidationError
from .geom import (
    LineParam,
    Section,
    as_fraction,
    convex_hull,
    polygons_intersect,
)


@dataclass(frozen=True)
class SectionStack:
    sections: tuple[Section, ...]
    provenance: str = "custom"
    seed: Optional[int] = None
    input_order: tuple[int, ...] = ()

    def __post_init__(self):
        secs = self.sections
        heights = [s.t for s in secs]
        if len(set(heights)) != len(heights):
            raise ValidationError("stack heights must be strictly increasing")
        order = tuple(sorted(range(len(secs)), key=lambda i: secs[i].t))
        object.__setattr__(self, "input_order", order)
        object.__setattr__(self, "sections", tuple(secs[i] for i in order))

    def __len__(self):
        return len(self.sections)

    def __iter__(self):
        return iter(self.sections)

    def __getitem__(self, i):
        return self.sections[i]

    @property
    def heights(self):
        return tuple(s.t for s in self.sections)


def _unit_polygon(n_vertices: int) -> list[tuple[Fraction, Fraction]]:
    """A fixed rational n-gon inscribed in the unit circle.

    Denominators are capped so that the exact feasibility tests downstream
    stay fast; the polygon itself is the object being studied, so the cap
    costs nothing in rigor."""
    pts = []
    for k in range(n_vertices):
        ang = 2.0 * math.pi * k / n_vertices
        pts.append(
            (
                Fraction(math.cos(ang)).limit_denominator(10 ** 6),
                Fraction(math.sin(ang)).limit_denominator(10 ** 6),
            )
        )
    return pts


def _scaled_stack(heights, radii, n_vertices, provenance) -> SectionStack:
    base = _unit_polygon(n_vertices)
    secs = []
    for t, r in zip(heights, radii):
        if r == 0:
            secs.append(Section(t, [(Fraction(0), Fraction(0))]))
        else:
            secs.append(Section(t, [(r * x, r * y) for (x, y) in base]))
    return SectionStack(tuple(secs), provenance=provenance)


def hyperboloid_sections(heights: Sequence, n_vertices: int = 16) -> SectionStack:
    """Concentric n-gons of radius sqrt(1 + t^2): the one-sheet quadric's
    horizontal discs, discretized with aligned vertices."""
    if n_vertices < 8:
        raise ValidationError("need at least 8 vertices")
    hs = [as_fraction(t) for t in heights]
    if len(set(hs)) != len(hs):
        raise ValidationError("heights must be distinct")
    radii = [
        Fraction(math.sqrt(1.0 + float(t) * float(t))).limit_denominator(10 ** 6)
        for t in hs
    ]
    return _scaled_stack(hs, radii, n_vertices, "hyperboloid")


def split_cone_sections(heights: Sequence, n_vertices: int = 16) -> SectionStack:
    """Concentric n-gons of radius |t| - 1 (two cone halves moved apart)."""
    hs = [as_fraction(t) for t in heights]
    if len(set(hs)) != len(hs):
        raise ValidationError("heights must be distinct")
    for t in hs:
        if abs(t) <= 1:
            raise InvalidHeight(f"height {t} has |t| <= 1")
    radii = [abs(t) - 1 for t in hs]
    return _scaled_stack(hs, radii, n_vertices, "split_cone")


def stack_from_bundle(lines: Sequence[LineParam], heights: Sequence) -> SectionStack:
    """Sections are the convex hulls of the bundle's points at each height.

    Any point of any section is a convex combination of bundle points, and the
    same combination of the bundle lines is a line through it meeting every
    other section; so the stack has the three-section line property exactly.
    """
    if not lines:
        raise ValidationError("bundle must not be empty")
    hs = [as_fraction(t) for t in heights]
    if len(set(hs)) != len(hs):
        raise ValidationError("heights must be distinct")
    exact = [ln.as_fractions() for ln in lines]
    secs = []
    for t in hs:
        pts = [ln.point_at(t) for ln in exact]
        hull = convex_hull(pts)
        secs.append(Section(t, hull))
    return SectionStack(tuple(secs), provenance="custom")


def random_convex_concave(
    seed: int, n_sections: int = 5, heights: Optional[Sequence] = None
) -> SectionStack:
    """Seeded random stack with the three-section line property by construction."""
    rng = random.Random(seed)
    if heights is None:
        heights = [Fraction(i) - Fraction(n_sections - 1, 2) for i in range(n_sections)]
    hs = [as_fraction(t) for t in heights]
    if len(set(hs)) != len(hs):
        raise ValidationError("heights must be distinct")
    hs = sorted(hs)
    t_lo, t_hi = hs[0], hs[-1]
    k = rng.randint(6, 9)
    lines = []
    for _ in range(k):
        r1 = 0.6 + 1.2 * rng.random()
        r2 = 0.6 + 1.2 * rng.random()
        a1 = 2 * math.pi * rng.random()
        a2 = 2 * math.pi * rng.random()
        p = (Fraction(round(r1 * math.cos(a1), 4)), Fraction(round(r1 * math.sin(a1), 4)))
        q = (Fraction(round(r2 * math.cos(a2), 4)), Fraction(round(r2 * math.sin(a2), 4)))
        a = (q[0] - p[0]) / (t_hi - t_lo)
        c = (q[1] - p[1]) / (t_hi - t_lo)
        lines.append(LineParam(a, p[0] - a * t_lo, c, p[1] - c * t_lo))
    # one line kept extreme on the left at every height, so that it survives
    # as a hull vertex of both end sections
    a_avg = sum(ln.a for ln in lines) / k
    need = min(
        min(ln.a * t + ln.b - a_avg * t for ln in lines) for t in (t_lo, t_hi)
    )
    c_avg = sum(ln.c for ln in lines) / k
    d_avg = sum(ln.d for ln in lines) / k
    lines.append(LineParam(a_avg, need - 1, c_avg, d_avg))
    stack = stack_from_bundle(lines, hs)
    return SectionStack(stack.sections, provenance="random", seed=seed)


@dataclass(frozen=True)
class ConcavityReport:
    passed: bool
    samples: int
    witness: Optional[tuple] = None  # ((i, j, k), point at section index)


def _boundary_point(section: Section, u: Fraction):
    """Exact point at perimeter parameter u in [0, 1)."""
    vs = section.vertices
    if len(vs) == 1:
        return vs[0]
    if len(vs) == 2:
        lam = u
        return (
            vs[0][0] + lam * (vs[1][0] - vs[0][0]),
            vs[0][1] + lam * (vs[1][1] - vs[0][1]),
        )
    m = len(vs)
    scaled = u * m
    i = int(scaled)
    lam = scaled - i
    a, b = vs[i % m], vs[(i + 1) % m]
    return (a[0] + lam * (b[0] - a[0]), a[1] + lam * (b[1] - a[1]))


def _line_exists_through(p, sec_from: Section, other1: Section, other2: Section) -> bool:
    """Exact test: does a line through (p, sec_from.t) meet both others?

    In slope space v, the requirements are v in (S1 - p)/dt1 and (S2 - p)/dt2,
    an intersection of two exact convex polygons.
    """
    dt1 = other1.t - sec_from.t
    dt2 = other2.t - sec_from.t
    # slope sets (S1-p)/dt1 and (S2-p)/dt2 meet iff the division-free scaled
    # copies dt2*(S1-p) and dt1*(S2-p) do; negative scales are point
    # reflections, so the images stay convex CCW
    s1 = [(dt2 * (q[0] - p[0]), dt2 * (q[1] - p[1])) for q in other1.vertices]
    s2 = [(dt1 * (q[0] - p[0]), dt1 * (q[1] - p[1])) for q in other2.vertices]
    return polygons_intersect(s1, s2)


def convex_concavity_check(
    stack: SectionStack,
    samples: int = 1000,
    seed: int = 0,
    middle_only: bool = False,
) -> ConcavityReport:
    """Sampled check of the three-section line property.

    Each sample picks a triple i<j<k, a member of the triple (only the middle
    one when middle_only is set), and an exact boundary point of it, then asks
    by exact 2D feasibility whether a line through the point meets the other
    two sections.  The first failure is reported as a witness.
    """
    n = len(stack)
    if n < 3:
        return ConcavityReport(True, 0, None)
    rng = random.Random(seed)
    secs = stack.sections
    tasks = []
    for _ in range(samples):
        i, j, k = sorted(rng.sample(range(n), 3))
        which = 1 if middle_only else rng.randrange(3)
        u = Fraction(rng.randrange(10 ** 4), 10 ** 4)
        tasks.append(((i, j, k), which, u))

    def run(task):
        (i, j, k), which, u = task
        triple = (secs[i], secs[j], secs[k])
        src = triple[which]
        others = tuple(s for w, s in enumerate(triple) if w != which)
        p = _boundary_point(src, u)
        return _line_exists_through(p, src, others[0], others[1])

    results = pmap(run, tasks)
    for task, ok in zip(tasks, results):
        if not ok:
            (i, j, k), which, u = task
            idx = (i, j, k)
            p = _boundary_point(stack.sections[idx[which]], u)
            return ConcavityReport(False, samples, (idx, idx[which], (float(p[0]), float(p[1]))))
    return ConcavityReport(True, samples, None)
