"""Triangular-lattice geometry: unit triangles, lozenges, region builders.

Lattice points are written (i, j) in skew coordinates: the point sits at
i*e1 + j*e2 with e1 = (1, 0) and e2 = (1/2, sqrt(3)/2).  A unit triangle
is addressed by (row, pos, orient):

    up(r, p)   has corners (p, r), (p+1, r), (p, r+1)
    down(r, p) has corners (p+1, r), (p, r+1), (p+1, r+1)

Rows count upward from the region's base line at row 0, positions grow
rightward.  Two adjacent triangles form a lozenge in one of three
orientations:

    right    up(r, p) + down(r, p)
    left     up(r, p) + down(r, p-1)
    vertical up(r+1, p) + down(r, p)

Every builder anchors its region with the base side on row 0 and the
southwest corner of the base at (0, 0); the Frames record carries the
reference lines that the weight assignments measure distances from.
Regions are immutable; builders and queries are pure functions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

UP = "U"
DOWN = "D"

LEFT = "left"
RIGHT = "right"
VERTICAL = "vertical"


class BadDents(ValueError):
    """Dent positions are duplicated, out of range, or miscounted."""


class Unbalanced(ValueError):
    """A builder produced (or would produce) a geometrically broken region."""


class Untileable(ValueError):
    """Forced-lozenge propagation exposed a triangle with no cover."""


class NotBalanced(ValueError):
    """split_region: the proposed part has unequal triangle counts."""


class SeparatingViolated(ValueError):
    """split_region: border-adjacent part triangles mix both orientations."""


class Triangle(NamedTuple):
    row: int
    pos: int
    orient: str


def up(row: int, pos: int) -> Triangle:
    return Triangle(row, pos, UP)


def down(row: int, pos: int) -> Triangle:
    return Triangle(row, pos, DOWN)


class Lozenge(NamedTuple):
    first: Triangle
    second: Triangle
    orientation: str


def partner_candidates(t: Triangle) -> list[tuple[Triangle, str]]:
    """The three triangles that could pair with t, with lozenge orientation."""
    r, p = t.row, t.pos
    if t.orient == UP:
        return [(down(r, p), RIGHT), (down(r, p - 1), LEFT), (down(r - 1, p), VERTICAL)]
    return [(up(r, p), RIGHT), (up(r, p + 1), LEFT), (up(r + 1, p), VERTICAL)]


def make_lozenge(t1: Triangle, t2: Triangle) -> Lozenge:
    """Build the lozenge covering two adjacent triangles (order-insensitive)."""
    if t1.orient == DOWN:
        t1, t2 = t2, t1
    if t1.orient != UP or t2.orient != DOWN:
        raise ValueError("a lozenge needs one up and one down triangle")
    for cand, orientation in partner_candidates(t1):
        if cand == t2:
            return Lozenge(t1, t2, orientation)
    raise ValueError("triangles %r and %r do not share an edge" % (t1, t2))


@dataclass(frozen=True)
class Frames:
    """Reference lines for the distance-based weight assignments.

    base_row: row index of the base line (weight on right lozenges by height).
    se_i: i-coordinate of the southeast side (weight on right lozenges by
        distance from that side).
    sw_level: level of the southwest corner for the vertical-lozenge weight;
        only regions whose west boundary is a clean staircase carry one.
    A None entry means the corresponding weight is undefined for the region.
    """

    base_row: Optional[int] = None
    se_i: Optional[int] = None
    sw_level: Optional[int] = None


@dataclass(frozen=True)
class RegionParams:
    x: int
    y: int
    z: int
    t: int
    m: int
    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        for name in ("x", "y", "z", "t", "m", "a", "b", "c"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise ValueError("parameter %s must be a nonnegative integer" % name)


@dataclass(frozen=True)
class Region:
    triangles: frozenset[Triangle]
    params: Optional[RegionParams] = None
    frames: Optional[Frames] = None

    def __len__(self) -> int:
        return len(self.triangles)


def is_balanced(region: Region) -> bool:
    ups = sum(1 for t in region.triangles if t.orient == UP)
    return 2 * ups == len(region.triangles)


def region_json(region: Region) -> str:
    """Canonical JSON text for a region; byte-identical across runs."""
    tri = sorted([t.row, t.pos, t.orient] for t in region.triangles)
    params = None
    if region.params is not None:
        params = {k: getattr(region.params, k) for k in ("x", "y", "z", "t", "m", "a", "b", "c")}
    return json.dumps({"triangles": tri, "params": params}, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# builders


def _hexagon_triangles(n1: int, n2: int, n3: int, n4: int, n5: int, n6: int) -> set[Triangle]:
    """All unit triangles of the hexagon with clockwise sides n1..n6
    (northwest, north, northeast, southeast, south, southwest), base side
    n5 lying on row 0 from (0, 0) to (n5, 0)."""
    if n2 + n3 != n5 + n6 or n1 + n6 != n3 + n4:
        raise Unbalanced("hexagon sides do not close up: %r" % ((n1, n2, n3, n4, n5, n6),))

    def inside(i: int, j: int) -> bool:
        return 0 <= j <= n6 + n1 and -n6 <= i <= n5 and 0 <= i + j <= n5 + n4

    tris: set[Triangle] = set()
    for r in range(n6 + n1):
        for p in range(-n6, n5 + 1):
            if inside(p, r) and inside(p + 1, r) and inside(p, r + 1):
                tris.add(up(r, p))
            if inside(p + 1, r) and inside(p, r + 1) and inside(p + 1, r + 1):
                tris.add(down(r, p))
    return tris


def _up_triangle_block(i0: int, j0: int, size: int) -> set[Triangle]:
    """A size-`size` up-pointing triangle with lower-left corner (i0, j0)."""
    tris: set[Triangle] = set()
    for k in range(size):
        r = j0 + k
        for p in range(i0, i0 + size - k):
            tris.add(up(r, p))
        for p in range(i0, i0 + size - k - 1):
            tris.add(down(r, p))
    return tris


def _down_triangle_block(i0: int, j0: int, size: int) -> set[Triangle]:
    """A size-`size` down-pointing triangle with bottom vertex (i0, j0);
    its other corners sit at (i0-size, j0+size) and (i0, j0+size)."""
    tris: set[Triangle] = set()
    for k in range(size):
        r = j0 + k
        for p in range(i0 - k - 1, i0):
            tris.add(down(r, p))
        for p in range(i0 - k, i0):
            tris.add(up(r, p))
    return tris


def build_shamrock(m: int, a: int, b: int, c: int, anchor: tuple[int, int]) -> set[Triangle]:
    """Triangles of the four-leaf hole: a central down-pointing core of size
    m with up-pointing lobes of sizes a (below), b (upper right) and c
    (upper left).  `anchor` is the lower-left corner of the a-lobe."""
    i0, j0 = anchor
    tris = _up_triangle_block(i0, j0, a)
    tris |= _down_triangle_block(i0, j0 + a, m)
    tris |= _up_triangle_block(i0, j0 + a + m, b)
    tris |= _up_triangle_block(i0 - m - c, j0 + a + m, c)
    return tris


def build_hexagon(a: int, b: int, c: int) -> Region:
    """Hexagon with clockwise sides a, b, c, a, b, c from the northwest."""
    tris = _hexagon_triangles(a, b, c, a, b, c)
    params = RegionParams(x=b, y=0, z=a, t=c, m=0, a=0, b=0, c=0)
    return Region(frozenset(tris), params, Frames(base_row=0, se_i=b, sw_level=0))


def build_q_region(p: RegionParams) -> Region:
    """Hexagon with a shamrock-shaped notch on its base.

    The hexagon has clockwise sides z+a+b+c, x+y+m, t+a+b+c, z+m,
    x+y+a+b+c, t+m; the notch sits on the base with the a-lobe's lower-left
    corner x+c units right of the hexagon's lower-left corner.
    """
    hexa = _hexagon_triangles(
        p.z + p.a + p.b + p.c,
        p.x + p.y + p.m,
        p.t + p.a + p.b + p.c,
        p.z + p.m,
        p.x + p.y + p.a + p.b + p.c,
        p.t + p.m,
    )
    hole = build_shamrock(p.m, p.a, p.b, p.c, (p.x + p.c, 0))
    if not hole <= hexa:
        raise Unbalanced("notch sticks out of the hexagon for %r" % (p,))
    tris = hexa - hole
    width = p.x + p.y + p.a + p.b + p.c
    sw_level = 0 if p.b == 0 and p.c == 0 else None
    region = Region(frozenset(tris), p, Frames(base_row=0, se_i=width, sw_level=sw_level))
    if not is_balanced(region):
        raise Unbalanced("region is not balanced for %r" % (p,))
    return region


def build_magnet_bar(m: int, a: int, x: int, y: int, z: int, t: int) -> Region:
    """The b = c = 0 notch specialization: a bar-with-pendant hole."""
    return build_q_region(RegionParams(x=x, y=y, z=z, t=t, m=m, a=a, b=0, c=0))


def build_k_region(a: int, x: int, y: int, z: int, t: int) -> Region:
    """Hexagon with a single up-pointing triangular notch of size a on the base."""
    return build_q_region(RegionParams(x=x, y=y, z=z, t=t, m=0, a=a, b=0, c=0))


def build_semihexagon_dented(a: int, b: int, dents: Iterable[int]) -> Region:
    """Top half of the hexagon with sides a, b, a: a trapezoid of height a
    with base a+b, minus the up-pointing base triangles at the 1-indexed
    positions in `dents` (exactly a of them, so the result is balanced)."""
    dents = list(dents)
    if len(set(dents)) != len(dents):
        raise BadDents("duplicate dent positions in %r" % (dents,))
    if len(dents) != a:
        raise BadDents("need exactly %d dents, got %d" % (a, len(dents)))
    if any(not 1 <= s <= a + b for s in dents):
        raise BadDents("dent positions must lie in 1..%d: %r" % (a + b, dents))
    tris: set[Triangle] = set()
    for r in range(a):
        for p in range(0, a + b - r):
            tris.add(up(r, p))
        for p in range(0, a + b - r - 1):
            tris.add(down(r, p))
    for s in dents:
        tris.discard(up(0, s - 1))
    return Region(frozenset(tris), None, Frames(base_row=0, se_i=None, sw_level=None))


# ---------------------------------------------------------------------------
# region surgery


def remove_forced(region: Region, w) -> tuple[Region, int]:
    """Strip lozenges that every tiling must contain.

    Repeatedly finds a triangle with exactly one in-region partner, removes
    the pair, and accumulates the q-exponent of the removed lozenge under
    the weight assignment w.  Raises Untileable if some triangle ends up
    with no partner at all.
    """
    from .weights import lozenge_exponent

    remaining = set(region.triangles)
    acc = 0
    changed = True
    while changed:
        changed = False
        for t in sorted(remaining):
            options = [
                (cand, orientation)
                for cand, orientation in partner_candidates(t)
                if cand in remaining
            ]
            if not options:
                raise Untileable("triangle %r has no possible cover" % (t,))
            if len(options) == 1:
                cand, _ = options[0]
                loz = make_lozenge(t, cand)
                acc += lozenge_exponent(w, region, loz)
                remaining.discard(t)
                remaining.discard(cand)
                changed = True
                break
    return Region(frozenset(remaining), None, region.frames), acc


def _border_part_orientations(region: Region, part: frozenset[Triangle]) -> set[str]:
    rest = region.triangles - part
    orientations: set[str] = set()
    for t in part:
        for cand, _ in partner_candidates(t):
            if cand in rest:
                orientations.add(t.orient)
                break
    return orientations


def split_region(region: Region, part: Iterable[Triangle]) -> tuple[Region, Region]:
    """Cut a region in two along a border no lozenge can cross.

    The part must be a balanced subset, and every part triangle that touches
    the complement across an edge must have the same orientation.  Under
    those conditions each tiling of the whole is the disjoint union of a
    tiling of the part and one of the complement, so generating functions
    multiply.
    """
    part = frozenset(part)
    if not part <= region.triangles:
        raise ValueError("part is not a subset of the region")
    ups = sum(1 for t in part if t.orient == UP)
    if 2 * ups != len(part):
        raise NotBalanced("part has %d triangles but %d point up" % (len(part), ups))
    orientations = _border_part_orientations(region, part)
    if len(orientations) > 1:
        raise SeparatingViolated("border-adjacent part triangles mix orientations")
    rest = region.triangles - part
    return (
        Region(part, None, region.frames),
        Region(rest, None, region.frames),
    )
