"""Signed-permutation codes of half-plane configurations.

A code lists, for the five positions around a reference circle, which
half-plane boundary is crossed there and whether the projected half-plane
contains the reference point.  Two dihedral generator pairs act on codes:
``a1``/``a2`` re-choose the projection center and the line orientation
(they relabel), ``b1``/``b2`` re-choose the reference point and the circle
orientation (they act on positions).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Optional, Sequence

from .errors import AnchorCollision, Degenerate, ValidationError
from .geom import HalfPlaneConfig, LineParam, as_fraction, line_through_points

Entry = tuple[int, int]  # (label 1..5, sign +1/-1)


def _fmt_entry(e: Entry) -> str:
    return f"{e[0]}{'+' if e[1] > 0 else '-'}"


@dataclass(frozen=True)
class Code:
    entries: tuple[Entry, ...]

    def __post_init__(self):
        if len(self.entries) != 5:
            raise ValidationError("a code has exactly five entries")
        labels = sorted(l for l, _ in self.entries)
        if labels != [1, 2, 3, 4, 5]:
            raise ValidationError(f"labels must be 1..5 once each, got {labels}")
        if any(s not in (1, -1) for _, s in self.entries):
            raise ValidationError("signs must be +1 or -1")

    @staticmethod
    def parse(text: str) -> "Code":
        text = text.replace(" ", "")
        m = re.fullmatch(r"([1-5][+-]){5}", text)
        if not m:
            raise ValidationError(f"cannot parse code {text!r}")
        entries = tuple(
            (int(text[2 * i]), 1 if text[2 * i + 1] == "+" else -1) for i in range(5)
        )
        return Code(entries)

    def __str__(self) -> str:
        return "".join(_fmt_entry(e) for e in self.entries)

    def sort_key(self):
        return tuple((l, 0 if s > 0 else 1) for l, s in self.entries)


def _flip(e: Entry) -> Entry:
    return (e[0], -e[1])


def _a1_entry(e: Entry) -> Entry:
    l, s = e
    return (l + 1, s) if l < 5 else (1, -s)


def _a1_inv_entry(e: Entry) -> Entry:
    l, s = e
    return (l - 1, s) if l > 1 else (5, -s)


def gen_a1(code: Code) -> Code:
    """Shift every label by one along the ten-cycle 1+,2+,..,5+,1-,..,5-."""
    return Code(tuple(_a1_entry(e) for e in code.entries))


def gen_a1_inv(code: Code) -> Code:
    return Code(tuple(_a1_inv_entry(e) for e in code.entries))


def gen_a2(code: Code) -> Code:
    """Reverse labels (1<->5, 2<->4), signs kept."""
    return Code(tuple((6 - l, s) for l, s in code.entries))


def gen_b1(code: Code) -> Code:
    """Move the last entry to the front and flip its sign."""
    e = code.entries
    return Code((_flip(e[4]),) + e[:4])


def gen_b1_inv(code: Code) -> Code:
    e = code.entries
    return Code(e[1:] + (_flip(e[0]),))


def gen_b2(code: Code) -> Code:
    """Reverse entry order, signs kept."""
    return Code(tuple(reversed(code.entries)))


TOKENS = {
    "a1": gen_a1,
    "a1i": gen_a1_inv,
    "a2": gen_a2,
    "b1": gen_b1,
    "b1i": gen_b1_inv,
    "b2": gen_b2,
}

GENERATORS = ("a1", "a2", "b1", "b2")

GroupWord = Sequence[str]


def apply_word(code: Code, word: GroupWord) -> Code:
    """Apply tokens left to right (each token acts on the current code)."""
    out = code
    for tok in word:
        try:
            out = TOKENS[tok](out)
        except KeyError:
            raise ValidationError(f"unknown generator token {tok!r}") from None
    return out


def word_from_notation(text: str) -> list[str]:
    """Translate composition notation like "a1^-3 b1^2" into a token list.

    Factors in the notation compose as functions (the rightmost factor acts
    first), so the token list comes out reversed relative to reading order.
    """
    text = text.replace("⁻", "^-").replace(" ", "")
    factors = re.findall(r"([ab][12])(?:\^(-?\d+))?", text)
    if "".join(f + (f"^{p}" if p else "") for f, p in factors) != text:
        raise ValidationError(f"cannot parse word {text!r}")
    tokens: list[str] = []
    for name, power in reversed(factors):
        k = int(power) if power else 1
        if k == 0:
            continue
        tok = name if k > 0 else (name + "i")
        if tok.endswith("i") and name in ("a2", "b2"):
            tok = name  # involutions are their own inverses
        tokens.extend([tok] * abs(k))
    return tokens


def all_codes() -> list[Code]:
    out = []
    for perm in permutations((1, 2, 3, 4, 5)):
        for signs in product((1, -1), repeat=5):
            out.append(Code(tuple(zip(perm, signs))))
    return out


def orbit(code: Code) -> frozenset[Code]:
    """Closure of {code} under the four generators."""
    seen = {code}
    frontier = [code]
    while frontier:
        nxt = []
        for c in frontier:
            for g in (gen_a1, gen_a2, gen_b1, gen_b2):
                img = g(c)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return frozenset(seen)


def is_trivial_code(code: Code) -> bool:
    """True iff the entries include 1+, 2+, 3+ and 4+ (in any positions)."""
    have = set(code.entries)
    return all((l, 1) in have for l in (1, 2, 3, 4))


NAMED_CLASSES = {
    "C1": "3+2-1+4+5+",
    "C2": "3+2-1+5+4+",
    "C3": "3+2-4+1+5+",
    "C4": "3+2-5+1+4+",
    "D5": "4+2-1+3+5+",
    "E6": "4+1+3-5+2+",
}

CLASS_LABELS = tuple(NAMED_CLASSES)


@dataclass(frozen=True)
class Classification:
    orbits: tuple[tuple[Code, ...], ...]
    representatives: tuple[Code, ...]
    orbit_sizes: tuple[int, ...]
    trivial_free: dict  # label -> orbit index
    group_order: int

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)

    def size_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for s in self.orbit_sizes:
            hist[s] = hist.get(s, 0) + 1
        return dict(sorted(hist.items()))

    def orbit_index_of(self, code: Code) -> int:
        return _orbit_lookup()[code]


@lru_cache(maxsize=1)
def classify_all() -> Classification:
    """Partition all 3840 codes into orbits and label the trivial-free ones."""
    codes = all_codes()
    assigned: dict[Code, int] = {}
    orbits: list[tuple[Code, ...]] = []
    for c in codes:
        if c in assigned:
            continue
        orb = orbit(c)
        idx = len(orbits)
        orbits.append(tuple(sorted(orb, key=Code.sort_key)))
        for x in orb:
            assigned[x] = idx
    trivial_free: dict[str, int] = {}
    free_indices = [
        i for i, orb in enumerate(orbits) if not any(is_trivial_code(x) for x in orb)
    ]
    for label, text in NAMED_CLASSES.items():
        idx = assigned[Code.parse(text)]
        trivial_free[label] = idx
    labeled = sorted(trivial_free.values())
    if labeled != sorted(free_indices):
        raise AssertionError(
            f"trivial-free orbits {free_indices} do not match the named classes {labeled}"
        )
    reps = tuple(orb[0] for orb in orbits)
    return Classification(
        orbits=tuple(orbits),
        representatives=reps,
        orbit_sizes=tuple(len(o) for o in orbits),
        trivial_free=trivial_free,
        group_order=_induced_group_order(),
    )


@lru_cache(maxsize=1)
def _orbit_lookup() -> dict[Code, int]:
    cl = classify_all()
    lookup: dict[Code, int] = {}
    for i, orb in enumerate(cl.orbits):
        for c in orb:
            lookup[c] = i
    return lookup


def canonical_class(code: Code) -> str:
    """TRIVIAL, or the class label of the code's orbit."""
    cl = classify_all()
    idx = _orbit_lookup()[code]
    for label, i in cl.trivial_free.items():
        if i == idx:
            return label
    return "TRIVIAL"


def _induced_group_order() -> int:
    """Order of the permutation group the generators induce on the code set."""
    codes = all_codes()
    index = {c: i for i, c in enumerate(codes)}
    gens = []
    for g in (gen_a1, gen_a2, gen_b1, gen_b2):
        gens.append(tuple(index[g(c)] for c in codes))
    identity = tuple(range(len(codes)))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[i] for i in p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return len(seen)


# ---------------------------------------------------------------------------
# rook boards


@dataclass(frozen=True)
class Board:
    """Five rooks on a 5x5 board: column i holds a rook in row rows[i] with
    color colors[i] (+1 white, -1 black).  One rook per row and column."""

    rows: tuple[int, ...]
    colors: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.rows) != [1, 2, 3, 4, 5]:
            raise ValidationError("board needs one rook per row and column")
        if any(c not in (1, -1) for c in self.colors):
            raise ValidationError("colors must be +1/-1")


def code_to_board(code: Code) -> Board:
    return Board(
        rows=tuple(l for l, _ in code.entries),
        colors=tuple(s for _, s in code.entries),
    )


def board_to_code(board: Board) -> Code:
    return Code(tuple(zip(board.rows, board.colors)))


def board_roundtrip(code: Code) -> Code:
    """Code -> board -> code; the identity on every code."""
    return board_to_code(code_to_board(code))


def board_move_last_column_front(board: Board) -> Board:
    """Fifth column to the front, flipping that rook's color."""
    return Board(
        rows=(board.rows[4],) + board.rows[:4],
        colors=(-board.colors[4],) + board.colors[:4],
    )


def board_move_last_row_front(board: Board) -> Board:
    """Fifth row to the front, flipping that rook's color."""
    rows = tuple((r % 5) + 1 for r in board.rows)
    colors = tuple(
        -c if r == 5 else c for r, c in zip(board.rows, board.colors)
    )
    return Board(rows=rows, colors=colors)


def board_mirror_columns(board: Board) -> Board:
    return Board(rows=tuple(reversed(board.rows)), colors=tuple(reversed(board.colors)))


def board_mirror_rows(board: Board) -> Board:
    return Board(rows=tuple(6 - r for r in board.rows), colors=board.colors)


# ---------------------------------------------------------------------------
# coding a geometric configuration


def anchor_line(config: HalfPlaneConfig, tol: float = 1e-9) -> LineParam:
    """The non-horizontal line through the five anchors (exact rational fit
    through the extreme anchors; the middle ones must sit on it)."""
    planes = config.planes
    first, last = planes[0], planes[-1]
    line = line_through_points(first.anchor, first.height, last.anchor, last.height)
    for hp in planes[1:-1]:
        px, py = line.point_at(hp.height)
        if (
            abs(float(px - hp.anchor[0])) > tol
            or abs(float(py - hp.anchor[1])) > tol
        ):
            raise AnchorCollision("anchors do not lie on one non-horizontal line")
    return line


def _encounter_order(n: int, m_interval: int, orient: int) -> list[int]:
    """Planes (indexed by ascending height) in the order a point moving along
    the line from the chosen interval meets them.  Interval 0 wraps through
    infinity; interval k in 1..n-1 sits between heights k-1 and k."""
    if not 0 <= m_interval < n:
        raise ValidationError(f"m_interval must be in 0..{n - 1}")
    if orient not in (1, -1):
        raise ValidationError("orientation must be +1 or -1")
    base = list(range(m_interval, n)) + list(range(0, m_interval))
    if orient == 1:
        return base
    back = list(range(m_interval - 1, -1, -1)) + list(range(n - 1, m_interval - 1, -1))
    return back


def _projection_sign(m: Optional[Fraction], t_ref: Fraction, t: Fraction) -> int:
    if m is None:
        return 1
    return 1 if (m - t_ref) * (m - t) > 0 else -1


def _circle_crossings(dirs: Sequence[tuple[float, float]]):
    """For concurrent boundaries with unit normals `dirs`, the 10 crossing
    angles on the unit circle, each tagged with its plane index."""
    crossings = []
    for k, (nx, ny) in enumerate(dirs):
        base = math.atan2(ny, nx) + math.pi / 2.0
        for off in (0.0, math.pi):
            crossings.append(((base + off) % (2 * math.pi), k))
    crossings.sort()
    return crossings


def code_from_configuration(
    config: HalfPlaneConfig,
    m_interval: int = 0,
    orient_line: int = 1,
    n_index: Optional[int] = None,
    orient_circle: int = 1,
) -> Code:
    """Code of a half-plane configuration whose anchors lie on one line.

    The planes are renumbered 1..5 in the order they are met along the line
    starting from the chosen interval (0 = the interval through infinity,
    which is the default, giving height order).  Boundaries are projected to
    the first renumbered plane; the ten crossings with the unit circle are
    walked from the reference point N and the first five crossings produce
    the entries, signed by whether the projected half-plane contains N.
    """
    if not config.generic:
        raise Degenerate("boundaries must be pairwise non-parallel")
    anchor_line(config)  # validates collinearity
    heights = list(config.heights)
    order = _encounter_order(5, m_interval, orient_line)
    if m_interval == 0:
        m = None
    else:
        m = (heights[m_interval - 1] + heights[m_interval]) / 2
    t_ref = heights[order[0]]
    dirs = []
    for idx in order:
        u = config.planes[idx].normal
        s = _projection_sign(m, t_ref, heights[idx])
        dirs.append((u[0] * s, u[1] * s))
    return _code_from_normals(dirs, n_index, orient_circle)


def _code_from_normals(
    dirs: Sequence[tuple[float, float]],
    n_index: Optional[int],
    orient_circle: int,
) -> Code:
    if orient_circle not in (1, -1):
        raise ValidationError("circle orientation must be +1 or -1")
    crossings = _circle_crossings(dirs)
    angles = [a for a, _ in crossings]
    gaps = [
        (angles[(i + 1) % 10] - angles[i]) % (2 * math.pi) for i in range(10)
    ]
    if min(gaps) < 1e-12:
        raise Degenerate("coincident circle crossings")
    if n_index is None:
        # the first generic angle >= 0
        n_angle = 0.0 if angles[0] > 1e-12 else angles[0] + gaps[0] / 2.0
    else:
        if not 0 <= n_index < 10:
            raise ValidationError("n_index must be in 0..9")
        n_angle = (angles[n_index] + gaps[n_index] / 2.0) % (2 * math.pi)
    npt = (math.cos(n_angle), math.sin(n_angle))
    # walk from N, collect the first five crossings
    keyed = sorted(
        ((a - n_angle) % (2 * math.pi) if orient_circle == 1 else (n_angle - a) % (2 * math.pi), k)
        for a, k in crossings
    )
    first5 = keyed[:5]
    labels_seen = [k for _, k in first5]
    if sorted(labels_seen) != [0, 1, 2, 3, 4]:
        raise Degenerate("crossing walk did not meet each boundary once")
    entries = []
    for _, k in first5:
        dot = dirs[k][0] * npt[0] + dirs[k][1] * npt[1]
        if abs(dot) < 1e-12:
            raise Degenerate("reference point on a projected boundary")
        entries.append((k + 1, 1 if dot > 0 else -1))
    return Code(tuple(entries))


def configuration_code_choices(config: HalfPlaneConfig):
    """All (m_interval, orient_line, n_index, orient_circle, code) tuples."""
    out = []
    for m in range(5):
        for ol in (1, -1):
            for n in range(10):
                for oc in (1, -1):
                    out.append((m, ol, n, oc, code_from_configuration(config, m, ol, n, oc)))
    return out


def normal_angles_for_code(code: Code, phases: Optional[Sequence[float]] = None) -> list[float]:
    """Unit-normal angles (indexed by plane number 1..5) of a configuration
    whose default code equals `code`.

    The ten circle crossings are placed at the given phases (default: evenly,
    starting at 18 degrees); entry k of the code claims crossing k, which
    fixes each boundary direction, and the sign picks the inward side.
    """
    if phases is None:
        phases = [math.radians(18.0 + 36.0 * k) for k in range(5)]
    if len(phases) != 5:
        raise ValidationError("need five crossing phases")
    if not all(0 < p < math.pi for p in phases) or any(
        phases[i] >= phases[i + 1] for i in range(4)
    ):
        raise ValidationError("phases must be increasing in (0, pi)")
    angles = [0.0] * 5
    for k, (label, sign) in enumerate(code.entries):
        theta = phases[k]
        # normal = theta -/+ pi/2; pick the side containing N = angle 0
        cand = theta - math.pi / 2.0
        if math.cos(cand) * sign < 0:
            cand = theta + math.pi / 2.0
        angles[label - 1] = cand % (2 * math.pi)
    return angles
