"""Tiling enumeration: a naive exhaustive oracle and a frontier engine.

The two routes share one contract (the generating function of a region
under a weight assignment) and deliberately share no code: the oracle
backtracks over whole tilings, the engine sweeps the region row by row
carrying a boundary mask.  Tests pit them against each other.

kuo_remove prepares the four-point overlapping recurrences: it checks
that the marked triangles sit on the region's outer boundary in cyclic
order and hands back the five derived regions in a fixed order.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from .lattice import (
    DOWN,
    LEFT,
    RIGHT,
    UP,
    VERTICAL,
    Lozenge,
    Region,
    Triangle,
    down,
    make_lozenge,
    partner_candidates,
    region_json,
    up,
)
from .qalgebra import QPoly
from .weights import (
    MissingFrame,
    WeightAssignment,
    g_exponent,
    lozenge_exponent,
    tiling_volume,
)

DEFAULT_TRIANGLE_BUDGET = 120


class BudgetExceeded(RuntimeError):
    """The region is too large for the requested enumeration route."""


class BadMarks(ValueError):
    """Marked triangles violate the four-point boundary precondition."""


@dataclass(frozen=True)
class GenFunction:
    poly: QPoly
    assignment: WeightAssignment
    region_digest: str


def region_digest(region: Region) -> str:
    return hashlib.sha256(region_json(region).encode("ascii")).hexdigest()


_ORIENT_LETTER = {RIGHT: "R", LEFT: "L", VERTICAL: "V"}


def tiling_json(tiling: "frozenset[Lozenge]") -> str:
    """Canonical JSON text for one tiling: each lozenge as its two triangles
    plus an orientation letter, the whole list sorted."""
    entries = sorted(
        [list(loz.first), list(loz.second), _ORIENT_LETTER[loz.orientation]]
        for loz in tiling
    )
    return json.dumps(entries, separators=(",", ":"))


# ---------------------------------------------------------------------------
# oracle route: plain backtracking


def iter_tilings(
    region: Region, max_triangles: int = DEFAULT_TRIANGLE_BUDGET
) -> Iterator[frozenset[Lozenge]]:
    """Yield every tiling exactly once, deterministically.

    Branches on the lexicographically smallest uncovered triangle, trying
    its partners in a fixed orientation order.
    """
    if len(region.triangles) > max_triangles:
        raise BudgetExceeded(
            "%d triangles exceed the enumeration budget of %d"
            % (len(region.triangles), max_triangles)
        )
    acc: list[Lozenge] = []

    def rec(remaining: frozenset[Triangle]) -> Iterator[frozenset[Lozenge]]:
        if not remaining:
            yield frozenset(acc)
            return
        t = min(remaining)
        for cand, _ in partner_candidates(t):
            if cand in remaining:
                acc.append(make_lozenge(t, cand))
                yield from rec(remaining - {t, cand})
                acc.pop()

    return rec(region.triangles)


def gen_function_oracle(
    region: Region,
    w: WeightAssignment,
    max_triangles: int = DEFAULT_TRIANGLE_BUDGET,
) -> GenFunction:
    """Generating function by brute force, one tiling at a time."""
    terms: dict[int, int] = {}
    for tiling in iter_tilings(region, max_triangles=max_triangles):
        if w is WeightAssignment.WT0:
            e = tiling_volume(region, tiling)
        else:
            e = sum(lozenge_exponent(w, region, loz) for loz in tiling)
        terms[e] = terms.get(e, 0) + 1
    return GenFunction(QPoly(terms), w, region_digest(region))


# ---------------------------------------------------------------------------
# engine route: frontier dynamic programming

_NONE = 0  # no pending decision in this row
_LEFT = 1  # previous down triangle waits to pair left with the next up
_RIGHT = 2  # current up triangle claimed its right-hand down partner


def _frontier(
    region: Region,
    exponent_of: Callable[[Lozenge], int],
    max_states: Optional[int],
) -> QPoly:
    if not region.triangles:
        return QPoly(1)
    rows: dict[int, tuple[set[int], set[int]]] = {}
    for t in region.triangles:
        ups, downs = rows.setdefault(t.row, (set(), set()))
        (ups if t.orient == UP else downs).add(t.pos)

    def check_budget(n: int) -> None:
        if max_states is not None and n > max_states:
            raise BudgetExceeded("frontier needs %d states, budget is %d" % (n, max_states))

    rmin, rmax = min(rows), max(rows)
    states: dict[frozenset[int], QPoly] = {frozenset(): QPoly(1)}
    for r in range(rmin, rmax + 1):
        ups, downs = rows.get(r, (set(), set()))
        if not ups and not downs:
            continue
        ups_above = rows.get(r + 1, (set(), set()))[0]
        new_states: dict[frozenset[int], QPoly] = {}
        for mask, entry in states.items():
            # inner scan over the row, left to right; a state is the pending
            # carry plus the set of next-row ups already claimed by verticals
            inner: dict[tuple[int, frozenset[int]], QPoly] = {(_NONE, frozenset()): entry}
            for p in range(min(ups | downs), max(ups | downs) + 1):
                if p in ups:
                    nxt: dict[tuple[int, frozenset[int]], QPoly] = {}
                    for (carry, out), val in inner.items():
                        if carry == _LEFT:
                            if p not in mask:
                                _accumulate(nxt, (_NONE, out), val)
                        elif p in mask:
                            _accumulate(nxt, (_NONE, out), val)
                        elif p in downs:
                            e = exponent_of(make_lozenge(up(r, p), down(r, p)))
                            _accumulate(nxt, (_RIGHT, out), val.shift(e))
                    inner = nxt
                    check_budget(len(inner))
                if p in downs:
                    nxt = {}
                    for (carry, out), val in inner.items():
                        if carry == _RIGHT:
                            _accumulate(nxt, (_NONE, out), val)
                            continue
                        if p + 1 in ups:
                            e = exponent_of(make_lozenge(up(r, p + 1), down(r, p)))
                            _accumulate(nxt, (_LEFT, out), val.shift(e))
                        if p in ups_above:
                            e = exponent_of(make_lozenge(down(r, p), up(r + 1, p)))
                            _accumulate(nxt, (_NONE, out | {p}), val.shift(e))
                    inner = nxt
                    check_budget(len(inner))
            for (carry, out), val in inner.items():
                if carry == _NONE:
                    _accumulate(new_states, out, val)
        states = new_states
        check_budget(len(states))
    total = QPoly(0)
    for mask, val in states.items():
        if not mask:
            total = total + val
    return total


def _accumulate(bucket, key, val) -> None:
    if key in bucket:
        bucket[key] = bucket[key] + val
    else:
        bucket[key] = val


def count_tilings(region: Region, max_states: Optional[int] = None) -> int:
    """Number of tilings (0 if untileable, 1 for the empty region)."""
    poly = _frontier(region, lambda loz: 0, max_states)
    return poly.terms.get(0, 0)


def gen_function(
    region: Region,
    w: WeightAssignment,
    max_states: Optional[int] = None,
) -> GenFunction:
    """Generating function via the frontier sweep; exact, never sampled.

    wt0 is computed through the wt2 route shifted down by the empty-pile
    exponent, which is the only way wt0 exists (see the weights module).
    """
    if w is WeightAssignment.WT0:
        if region.params is None:
            raise MissingFrame("wt0 needs a parameter-tagged region")
        base = _frontier(
            region,
            lambda loz: lozenge_exponent(WeightAssignment.WT2, region, loz),
            max_states,
        )
        poly = base.shift(-g_exponent(region.params))
    else:
        poly = _frontier(region, lambda loz: lozenge_exponent(w, region, loz), max_states)
    return GenFunction(poly, w, region_digest(region))


# ---------------------------------------------------------------------------
# four-point boundary removal

def _neighbors_ccw(t: Triangle) -> list[Triangle]:
    """Edge-neighbors of t in counterclockwise rotational order."""
    r, p = t.row, t.pos
    if t.orient == UP:
        return [down(r, p), down(r, p - 1), down(r - 1, p)]
    return [up(r, p + 1), up(r + 1, p), up(r, p)]


def _centroid3(t: Triangle) -> tuple[int, int]:
    """Triangle centroid scaled by 3, in the skew coordinates."""
    if t.orient == UP:
        return (3 * t.pos + 1, 3 * t.row + 1)
    return (3 * t.pos + 2, 3 * t.row + 2)


def _outer_walk(triangles: frozenset[Triangle]) -> list[Triangle]:
    """Triangles along the outer face of the adjacency graph, in walk order.

    Faces of the adjacency graph are orbits of the next-half-edge map of
    its planar embedding; the outer face is the orbit with the most
    negative signed area.  Tracing faces rather than boundary edges
    matters: a triangle whose three neighbors all exist still sits on the
    outer face when it touches the region's boundary in a single point,
    and holes pinched to the boundary merge into the outer face the same
    way.  The four-point recurrences mark exactly such triangles.
    """
    ring = {
        t: [n for n in _neighbors_ccw(t) if n in triangles] for t in triangles
    }
    half_edges = {(t, n) for t, nbs in ring.items() for n in nbs}
    if not half_edges:
        return sorted(triangles)
    seen = set()
    best_walk, best_area = None, None
    for start in half_edges:
        if start in seen:
            continue
        orbit = []
        edge = start
        while edge not in seen:
            seen.add(edge)
            orbit.append(edge)
            t, n = edge
            around = ring[n]
            edge = (n, around[(around.index(t) - 1) % len(around)])
        area = 0
        for a, b in orbit:
            ca, cb = _centroid3(a), _centroid3(b)
            area += ca[0] * cb[1] - cb[0] * ca[1]
        if best_area is None or area < best_area:
            best_walk = [t for t, _ in orbit]
            best_area = area
    return best_walk


def _cyclically_ordered(length: int, pu: int, pv: int, pw: int, ps: int) -> bool:
    dv = (pv - pu) % length
    dw = (pw - pu) % length
    ds = (ps - pu) % length
    return 0 < dv < dw < ds


def kuo_remove(region: Region, marked: list[Triangle]) -> list[Region]:
    """Validate four boundary marks and return the five derived regions.

    Order of the result: [R - {u,v,w,s}, R - {u,v}, R - {w,s}, R - {u,s},
    R - {v,w}].  The marks must alternate orientation (u, w one way and
    v, s the other) and appear in cyclic order on the outer boundary walk,
    read in either direction.
    """
    if len(marked) != 4 or len(set(marked)) != 4:
        raise BadMarks("need four distinct marked triangles")
    u, v, w, s = marked
    if any(t not in region.triangles for t in marked):
        raise BadMarks("marked triangles must lie in the region")
    if u.orient != w.orient or v.orient != s.orient or u.orient == v.orient:
        raise BadMarks("marks must alternate orientation as u, v, w, s")
    walk = _outer_walk(region.triangles)
    spots = {t: [k for k, owner in enumerate(walk) if owner == t] for t in marked}
    if any(not positions for positions in spots.values()):
        raise BadMarks("every mark must lie on the outer boundary")
    n = len(walk)
    ordered = any(
        _cyclically_ordered(n, pu, pv, pw, ps) or _cyclically_ordered(n, pu, ps, pw, pv)
        for pu in spots[u]
        for pv in spots[v]
        for pw in spots[w]
        for ps in spots[s]
    )
    if not ordered:
        raise BadMarks("marks are not in cyclic order on the outer boundary")
    removals = [(u, v, w, s), (u, v), (w, s), (u, s), (v, w)]
    return [
        Region(region.triangles - frozenset(gone), None, region.frames) for gone in removals
    ]
