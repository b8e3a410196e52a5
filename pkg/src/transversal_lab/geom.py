"""Planar types and predicates for stacks of convex sections on parallel planes.

Non-horizontal lines are encoded by four numbers (a, b, c, d); the point of
the line on the plane of height z is (a*z + b, c*z + d).  Affine combinations
of lines evaluate plane-wise to the same affine combinations of points, which
is what makes "the set of lines meeting a convex section" convex in these
coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import CenterOnPlane, DuplicateHeights, ValidationError

Number = Union[int, float, Fraction]
PointF = tuple[Fraction, Fraction]

INFINITY = "infinity"


def as_fraction(x) -> Fraction:
    """Exact conversion: ints/Fractions pass through, floats keep their binary value,
    strings are parsed as decimals or 'p/q'."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ValidationError("booleans are not coordinates")
    if isinstance(x, (int, float, str)):
        return Fraction(x)
    raise ValidationError(f"cannot rationalize {x!r}")


def as_point(p) -> PointF:
    x, y = p
    return (as_fraction(x), as_fraction(y))


@dataclass(frozen=True)
class LineParam:
    """A non-horizontal line: x = a*z + b, y = c*z + d."""

    a: Number
    b: Number
    c: Number
    d: Number

    def point_at(self, t: Number):
        return (self.a * t + self.b, self.c * t + self.d)

    def as_fractions(self) -> "LineParam":
        return LineParam(*(as_fraction(v) for v in (self.a, self.b, self.c, self.d)))

    def as_floats(self) -> "LineParam":
        return LineParam(*(float(v) for v in (self.a, self.b, self.c, self.d)))

    def combine(self, other: "LineParam", lam: Number) -> "LineParam":
        """Affine combination lam*self + (1-lam)*other."""
        return LineParam(
            lam * self.a + (1 - lam) * other.a,
            lam * self.b + (1 - lam) * other.b,
            lam * self.c + (1 - lam) * other.c,
            lam * self.d + (1 - lam) * other.d,
        )


def line_point_at(line: LineParam, t: Number):
    """Point of `line` on the plane of height t."""
    return line.point_at(t)


def line_through_points(p: PointF, tp: Number, q: PointF, tq: Number) -> LineParam:
    """The unique non-horizontal line through (p, tp) and (q, tq), exact."""
    tp, tq = as_fraction(tp), as_fraction(tq)
    if tp == tq:
        raise DuplicateHeights("line through two points needs distinct heights")
    p, q = as_point(p), as_point(q)
    a = (q[0] - p[0]) / (tq - tp)
    c = (q[1] - p[1]) / (tq - tp)
    return LineParam(a, p[0] - a * tp, c, p[1] - c * tp)


def _cross(o: PointF, u: PointF, v: PointF) -> Fraction:
    return (u[0] - o[0]) * (v[1] - o[1]) - (u[1] - o[1]) * (v[0] - o[0])


def _dedupe(points: list[PointF]) -> list[PointF]:
    out: list[PointF] = []
    for p in points:
        if not out or p != out[-1]:
            out.append(p)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


class Section:
    """A convex polygon (possibly a segment or a single point) at a fixed height.

    Vertices are stored exactly as rationals, counterclockwise, with repeated
    and collinear vertices pruned at construction.
    """

    __slots__ = ("t", "vertices")

    def __init__(self, t: Number, vertices: Iterable):
        object.__setattr__(self, "t", as_fraction(t))
        pts = _dedupe([as_point(p) for p in vertices])
        if not pts:
            raise ValidationError("section needs at least one vertex")
        object.__setattr__(self, "vertices", tuple(_normalize_polygon(pts)))

    def __setattr__(self, name, value):  # immutable value type
        raise AttributeError("Section is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Section)
            and self.t == other.t
            and self.vertices == other.vertices
        )

    def __hash__(self):
        return hash((self.t, self.vertices))

    def __repr__(self):
        return f"Section(t={self.t}, {len(self.vertices)} vertices)"

    @property
    def is_point(self) -> bool:
        return len(self.vertices) == 1

    @property
    def is_segment(self) -> bool:
        return len(self.vertices) == 2

    def centroid(self) -> PointF:
        n = len(self.vertices)
        sx = sum(v[0] for v in self.vertices)
        sy = sum(v[1] for v in self.vertices)
        return (sx / n, sy / n)

    def translated(self, dx: Number, dy: Number) -> "Section":
        dx, dy = as_fraction(dx), as_fraction(dy)
        return Section(self.t, [(v[0] + dx, v[1] + dy) for v in self.vertices])

    def contains_exact(self, p) -> bool:
        """Exact membership for a rational point."""
        p = as_point(p)
        vs = self.vertices
        if len(vs) == 1:
            return p == vs[0]
        if len(vs) == 2:
            if _cross(vs[0], vs[1], p) != 0:
                return False
            d = (vs[1][0] - vs[0][0], vs[1][1] - vs[0][1])
            s = d[0] * (p[0] - vs[0][0]) + d[1] * (p[1] - vs[0][1])
            return 0 <= s <= d[0] * d[0] + d[1] * d[1]
        return all(
            _cross(vs[i], vs[(i + 1) % len(vs)], p) >= 0 for i in range(len(vs))
        )

    def float_vertices(self) -> list[tuple[float, float]]:
        return [(float(x), float(y)) for (x, y) in self.vertices]


def _normalize_polygon(pts: list[PointF]) -> list[PointF]:
    if len(pts) <= 1:
        return pts
    if len(pts) == 2:
        return pts
    area2 = sum(_cross(pts[0], pts[i], pts[i + 1]) for i in range(1, len(pts) - 1))
    if area2 == 0:
        # all collinear: keep the two extreme points
        d = None
        for q in pts[1:]:
            if q != pts[0]:
                d = (q[0] - pts[0][0], q[1] - pts[0][1])
                break
        if d is None:
            return [pts[0]]
        keyed = sorted(pts, key=lambda p: d[0] * p[0] + d[1] * p[1])
        lo, hi = keyed[0], keyed[-1]
        return [lo] if lo == hi else [lo, hi]
    if area2 < 0:
        pts = list(reversed(pts))
    # prune collinear middles (repeat until stable: pruning can expose new ones)
    changed = True
    while changed and len(pts) > 2:
        changed = False
        out = []
        n = len(pts)
        for i in range(n):
            if _cross(pts[i - 1], pts[i], pts[(i + 1) % n]) != 0:
                out.append(pts[i])
            else:
                changed = True
        pts = out
    if len(pts) < 3:
        raise ValidationError("degenerate polygon collapsed unexpectedly")
    n = len(pts)
    for i in range(n):
        if _cross(pts[i - 1], pts[i], pts[(i + 1) % n]) <= 0:
            raise ValidationError("vertices are not in strictly convex position")
    # rotate so the lexicographically smallest vertex comes first (canonical form)
    k = min(range(n), key=lambda i: pts[i])
    return pts[k:] + pts[:k]


def _closest_on_segment(p, a, b):
    ax, ay = a
    bx, by = b
    px, py = p
    dx, dy = bx - ax, by - ay
    denom = dx * dx + dy * dy
    if denom == 0:
        return (ax, ay)
    s = ((px - ax) * dx + (py - ay) * dy) / denom
    s = 0.0 if s < 0.0 else (1.0 if s > 1.0 else s)
    return (ax + s * dx, ay + s * dy)


def dist_point_polygon(p, poly: Section) -> tuple[float, tuple[float, float]]:
    """Distance from p to the polygon and the (unique) closest point."""
    px, py = float(p[0]), float(p[1])
    vs = poly.float_vertices()
    if len(vs) == 1:
        q = vs[0]
        return (math.hypot(px - q[0], py - q[1]), q)
    if len(vs) >= 3:
        inside = True
        n = len(vs)
        for i in range(n):
            ax, ay = vs[i]
            bx, by = vs[(i + 1) % n]
            if (bx - ax) * (py - ay) - (by - ay) * (px - ax) < 0:
                inside = False
                break
        if inside:
            return (0.0, (px, py))
    best = None
    bestq = None
    n = len(vs)
    m = n if n >= 3 else 1
    for i in range(m):
        q = _closest_on_segment((px, py), vs[i], vs[(i + 1) % n])
        d = math.hypot(px - q[0], py - q[1])
        if best is None or d < best:
            best, bestq = d, q
    return (best, bestq)


def central_project(center_height, point, height, target_height):
    """Project `point` (on the plane of `height`) from a center on the axis.

    The center is (0, 0, m); with m == "infinity" the projection is parallel
    to the axis and leaves the planar coordinates unchanged.  Exactness of the
    inputs is preserved (rational in, rational out).
    """
    if center_height == INFINITY or center_height is None or (
        isinstance(center_height, float) and math.isinf(center_height)
    ):
        return (point[0], point[1])
    m = center_height
    if m == height or m == target_height:
        raise CenterOnPlane(f"center height {m} lies on a source/target plane")
    factor = (m - target_height) / (m - height)
    return (point[0] * factor, point[1] * factor)


@dataclass(frozen=True)
class HalfPlane:
    """A closed half-plane in the plane of `height`: all p with
    dot(normal, p - anchor) >= 0.  The normal is unit length and points inward."""

    anchor: tuple
    normal: tuple[float, float]
    height: Fraction

    def __post_init__(self):
        object.__setattr__(self, "anchor", as_point(self.anchor))
        object.__setattr__(self, "height", as_fraction(self.height))
        nx, ny = float(self.normal[0]), float(self.normal[1])
        norm = math.hypot(nx, ny)
        if abs(norm - 1.0) > 1e-12:
            raise ValidationError(f"normal must be unit length, got |n| = {norm!r}")
        object.__setattr__(self, "normal", (nx, ny))

    def offset(self, p) -> float:
        """Signed inward margin of p (>= 0 means membership)."""
        return self.normal[0] * (float(p[0]) - float(self.anchor[0])) + self.normal[
            1
        ] * (float(p[1]) - float(self.anchor[1]))

    def contains(self, p) -> bool:
        return self.offset(p) >= 0.0

    def boundary_angle(self) -> float:
        """Angle of the boundary direction, in [0, pi)."""
        ang = math.atan2(self.normal[1], self.normal[0]) + math.pi / 2.0
        return ang % math.pi

    def normal_exact(self) -> PointF:
        return (as_fraction(self.normal[0]), as_fraction(self.normal[1]))


class HalfPlaneConfig:
    """Five half-planes on five distinct heights, sorted by height."""

    __slots__ = ("planes", "generic")

    def __init__(self, planes: Sequence[HalfPlane], tol: float = 1e-9):
        planes = tuple(sorted(planes, key=lambda h: h.height))
        if len(planes) != 5:
            raise ValidationError(f"need exactly 5 half-planes, got {len(planes)}")
        heights = [h.height for h in planes]
        if len(set(heights)) != 5:
            raise DuplicateHeights("half-plane heights must be pairwise distinct")
        object.__setattr__(self, "planes", planes)
        object.__setattr__(self, "generic", _pairwise_nonparallel(planes, tol))

    def __setattr__(self, name, value):
        raise AttributeError("HalfPlaneConfig is immutable")

    def __iter__(self):
        return iter(self.planes)

    def __getitem__(self, i):
        return self.planes[i]

    def __eq__(self, other):
        return isinstance(other, HalfPlaneConfig) and self.planes == other.planes

    def __repr__(self):
        return f"HalfPlaneConfig(heights={[str(h.height) for h in self.planes]})"

    @property
    def heights(self) -> tuple[Fraction, ...]:
        return tuple(h.height for h in self.planes)

    @property
    def normals(self) -> tuple[tuple[float, float], ...]:
        return tuple(h.normal for h in self.planes)


def _pairwise_nonparallel(planes: Sequence[HalfPlane], tol: float) -> bool:
    angles = [h.boundary_angle() for h in planes]
    for i in range(len(angles)):
        for j in range(i + 1, len(angles)):
            d = abs(angles[i] - angles[j]) % math.pi
            if min(d, math.pi - d) <= tol:
                return False
    return True


def genericity_check(config: HalfPlaneConfig, tol: float = 1e-9) -> bool:
    """True iff every pair of boundary directions differs by more than tol radians."""
    return _pairwise_nonparallel(config.planes, tol)


# ---------------------------------------------------------------------------
# exact convex-polygon utilities (used by the set-valued maps and generators)


def convex_hull(points: Iterable) -> list[PointF]:
    """Andrew's monotone chain on exact rational points; output is CCW."""
    pts = sorted({as_point(p) for p in points})
    if len(pts) <= 2:
        return pts
    lower: list[PointF] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[PointF] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def clip_halfplane(poly: list[PointF], n: PointF, beta: Fraction) -> list[PointF]:
    """Keep the part of a convex CCW polygon with dot(n, p) >= beta (exact)."""
    if not poly:
        return []
    if len(poly) == 1:
        p = poly[0]
        return poly if n[0] * p[0] + n[1] * p[1] >= beta else []
    out: list[PointF] = []
    m = len(poly)
    closed = m > 2
    edges = range(m) if closed else range(m - 1)
    vals = [n[0] * p[0] + n[1] * p[1] - beta for p in poly]
    if not closed:
        # a segment: clip directly
        a, b = poly
        va, vb = vals
        pts = []
        if va >= 0:
            pts.append(a)
        if (va > 0 > vb) or (va < 0 < vb):
            s = va / (va - vb)
            pts.append((a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])))
        if vb >= 0:
            pts.append(b)
        return _dedupe(pts)
    for i in edges:
        a, b = poly[i], poly[(i + 1) % m]
        va, vb = vals[i], vals[(i + 1) % m]
        if va >= 0:
            out.append(a)
        if (va > 0 > vb) or (va < 0 < vb):
            s = va / (va - vb)
            out.append((a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])))
    return _dedupe(out)


def polygon_edges_as_halfplanes(poly: list[PointF]):
    """Inward halfplane rows (n, beta) with dot(n, p) >= beta for a CCW polygon."""
    rows = []
    m = len(poly)
    for i in range(m):
        a, b = poly[i], poly[(i + 1) % m]
        n = (-(b[1] - a[1]), b[0] - a[0])
        rows.append((n, n[0] * a[0] + n[1] * a[1]))
    return rows


def polygon_constraint_rows(poly: list[PointF]):
    """(n, beta) rows with dot(n, p) >= beta describing a convex polygon,
    including the degenerate point/segment cases."""
    if len(poly) >= 3:
        return polygon_edges_as_halfplanes(poly)
    if len(poly) == 1:
        (x, y) = poly[0]
        one, zero = Fraction(1), Fraction(0)
        return [
            ((one, zero), x),
            ((-one, zero), -x),
            ((zero, one), y),
            ((zero, -one), -y),
        ]
    a, b = poly
    d = (b[0] - a[0], b[1] - a[1])
    n = (-d[1], d[0])
    beta = n[0] * a[0] + n[1] * a[1]
    return [
        (n, beta),
        ((-n[0], -n[1]), -beta),
        (d, d[0] * a[0] + d[1] * a[1]),
        ((-d[0], -d[1]), -(d[0] * b[0] + d[1] * b[1])),
    ]


def polygon_intersection(p: list[PointF], q: list[PointF]) -> list[PointF]:
    """Exact intersection of two convex polygons (either may be degenerate)."""
    if not p or not q:
        return []
    out = list(p)
    for n, beta in polygon_constraint_rows(q):
        out = clip_halfplane(out, n, beta)
        if not out:
            return []
    return out


def polygons_intersect(p: list[PointF], q: list[PointF]) -> bool:
    """Exact emptiness test for the intersection of two convex polygons.

    Separating-axis: the closed sets are disjoint iff one's constraint row
    is strictly violated by every vertex of the other (the Minkowski
    difference's edges carry normals of one of the two polygons)."""
    if not p or not q:
        return False
    for n, beta in polygon_constraint_rows(p):
        nx, ny = n
        if all(nx * v[0] + ny * v[1] < beta for v in q):
            return False
    for n, beta in polygon_constraint_rows(q):
        nx, ny = n
        if all(nx * v[0] + ny * v[1] < beta for v in p):
            return False
    return True


def _poly_contains(poly: list[PointF], p: PointF) -> bool:
    if not poly:
        return False
    if len(poly) == 1:
        return poly[0] == p
    if len(poly) == 2:
        a, b = poly
        if _cross(a, b, p) != 0:
            return False
        d = (b[0] - a[0], b[1] - a[1])
        s = d[0] * (p[0] - a[0]) + d[1] * (p[1] - a[1])
        return 0 <= s <= d[0] * d[0] + d[1] * d[1]
    return all(
        _cross(poly[i], poly[(i + 1) % len(poly)], p) >= 0 for i in range(len(poly))
    )


def minkowski_scaled(p: list[PointF], alpha: Fraction, q: list[PointF], beta: Fraction) -> list[PointF]:
    """Convex hull of {alpha*u + beta*v}, exact."""
    pts = [
        (alpha * u[0] + beta * v[0], alpha * u[1] + beta * v[1]) for u in p for v in q
    ]
    hull = convex_hull(pts)
    return hull
