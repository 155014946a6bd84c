"""The four q-weight assignments on lozenges.

Three of them are local: wt1 and wt2 weight right lozenges by a lattice
distance (to the southeast side, resp. above the base), wt3 weights
vertical lozenges by the distance to the southwest corner level.  All
other orientations carry weight 1 (exponent 0).  The offset conventions
below are pinned by the unit-hexagon calibration tests and by matching
the closed product formulas; do not adjust one without the other.

wt0 weights a tiling by the number of unit cubes in the pile the tiling
depicts.  That exponent is a property of the whole pile, not of any one
lozenge (the same right lozenge can cap columns of different heights in
different tilings), so wt0 only exists at tiling level: see
tiling_volume.
"""

from __future__ import annotations

from enum import Enum
from math import comb

from .lattice import RIGHT, VERTICAL, Lozenge, Region, RegionParams


class MissingFrame(ValueError):
    """The region does not carry the reference side this weight needs."""


class WeightUndefined(ValueError):
    """wt0 has no per-lozenge exponent; use tiling_volume instead."""


class NegativeVolume(ValueError):
    """A cube count came out negative: a convention broke somewhere."""


class WeightAssignment(Enum):
    WT0 = "wt0"
    WT1 = "wt1"
    WT2 = "wt2"
    WT3 = "wt3"


def weight_from_name(name: str) -> WeightAssignment:
    try:
        return WeightAssignment(name.lower())
    except ValueError:
        raise ValueError("unknown weight %r (expected wt0..wt3)" % name) from None


Tiling = frozenset


def lozenge_exponent(w: WeightAssignment, region: Region, loz: Lozenge) -> int:
    """Exponent of q carried by one lozenge under assignment w.

    Orientations the assignment ignores give 0.  Raises MissingFrame when
    the region lacks the reference line the assignment measures from, and
    WeightUndefined for wt0 (see module docstring).
    """
    if w is WeightAssignment.WT0:
        raise WeightUndefined("wt0 is defined per tiling, not per lozenge")
    frames = region.frames if isinstance(region, Region) else region
    if frames is None:
        raise MissingFrame("region carries no frame data")
    if w is WeightAssignment.WT1:
        if loz.orientation != RIGHT:
            return 0
        if frames.se_i is None:
            raise MissingFrame("wt1 needs the southeast side position")
        return frames.se_i - loz.first.pos
    if w is WeightAssignment.WT2:
        if loz.orientation != RIGHT:
            return 0
        if frames.base_row is None:
            raise MissingFrame("wt2 needs the base row")
        return loz.first.row - frames.base_row + 1
    if loz.orientation != VERTICAL:
        return 0
    if frames.sw_level is None:
        raise MissingFrame("wt3 needs the southwest corner level")
    return loz.second.pos + loz.second.row + 2 - frames.sw_level


def tiling_exponent(w: WeightAssignment, region: Region, tiling: Tiling) -> int:
    """Total q-exponent of a tiling: the sum over its lozenges."""
    return sum(lozenge_exponent(w, region, loz) for loz in tiling)


def f_exponent(p: RegionParams) -> int:
    """wt1-exponent of the empty-pile tiling, as a closed form in the
    region parameters (independent of t)."""
    return (
        p.m * comb(p.y + p.b + 1, 2)
        + p.z * comb(p.y + 1, 2)
        + p.m * (p.z + p.b) * (p.y + p.a + p.b)
        + (p.z + p.b) * comb(p.m + 1, 2)
        + p.x * (p.z + p.b + p.c) * (p.y + p.m + p.a + p.b + p.c)
        + (p.z + p.b + p.c) * comb(p.x + 1, 2)
        + p.a * (p.x + p.c) * (p.y + p.a + p.b)
        + p.a * comb(p.x + p.c + 1, 2)
    )


def g_exponent(p: RegionParams) -> int:
    """wt2-exponent of the empty-pile tiling (independent of t)."""
    return (
        (p.y + p.b) * comb(p.m + 1, 2)
        + p.m * p.y * p.z
        + p.y * comb(p.z + 1, 2)
        + p.m * (p.z + p.b) * (p.m + p.a)
        + p.m * comb(p.z + p.b + 1, 2)
        + p.x * (p.m + p.a) * (p.z + p.b + p.c)
        + p.x * comb(p.z + p.b + p.c + 1, 2)
        + (p.x + p.c) * comb(p.a + 1, 2)
    )


def tiling_volume(region: Region, tiling: Tiling) -> int:
    """Number of unit cubes in the pile this tiling depicts.

    Uses the wt2 route: the wt2-exponent of a tiling exceeds that of the
    empty pile by exactly the pile's volume.  The wt1/f route must agree;
    the tests hold both routes to that.
    """
    if region.params is None:
        raise MissingFrame("tiling_volume needs a parameter-tagged region")
    vol = tiling_exponent(WeightAssignment.WT2, region, tiling) - g_exponent(region.params)
    if vol < 0:
        raise NegativeVolume("volume %d < 0; weight conventions are broken" % vol)
    return vol
