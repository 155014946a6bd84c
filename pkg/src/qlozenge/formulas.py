"""Closed product evaluators for the tiling counts and volume sums.

Each evaluator assembles its value in the factored q-integer algebra and
expands once at the end, so a transcription slip surfaces as a
NonExactDivision instead of a silently wrong polynomial.  Results carry
the full polynomial together with the q-power the displayed form splits
out in front of the hyperfactorial ratio.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial

from .lattice import BadDents, RegionParams
from .qalgebra import (
    QFactorExponents,
    QPoly,
    push_hyperfactorial,
    push_prefactor,
    push_q_int,
    resolve,
)


@dataclass(frozen=True)
class FormulaResult:
    """A closed-form value.

    poly is the complete polynomial, prefactor included; the recorded
    prefactor_exponent only says how much of it the displayed form pulls
    out in front.
    """

    poly: QPoly
    prefactor_exponent: int


def _ratio(prefactor: int, num: list[int], den: list[int]) -> FormulaResult:
    acc = QFactorExponents(prefactor_exponent=prefactor)
    for n in num:
        acc = push_hyperfactorial(acc, n, 1)
    for n in den:
        acc = push_hyperfactorial(acc, n, -1)
    return FormulaResult(resolve(acc), prefactor)


@lru_cache(maxsize=None)
def macmahon_q(a: int, b: int, c: int) -> FormulaResult:
    """Volume generating function of plane partitions in an a x b x c box."""
    return _ratio(0, [a, b, c, a + b + c], [a + b, b + c, c + a])


def _count_factor_lists(p: RegionParams) -> tuple[list[int], list[int]]:
    """Hyperfactorial arguments shared by the count and its q-analogue."""
    x, y, z, t, m, a, b, c = p.x, p.y, p.z, p.t, p.m, p.a, p.b, p.c
    big = m + a + b + c
    num = [
        big + x + y + z + t,
        big + x + t,
        big + x + y,
        big + y + z,
        x,
        y,
        z,
        t,
        m,
        m,
        m,
        a,
        a,
        b,
        c,
        m + a + b + c,
        m + b + c + z + t,
        m + a + c + x,
        m + a + b + y,
        c + x + t,
        b + y + z,
    ]
    den = [
        big + x + y + t,
        big + x + y + z,
        big + z + t,
        big + x,
        big + y,
        x + t,
        y + z,
        m + a,
        m + a,
        m + b,
        m + c,
        m + b + y + z,
        m + c + x + t,
        a + c + x,
        a + b + y,
        b + c + z + t,
    ]
    return num, den


@lru_cache(maxsize=None)
def _hyperfactorial_int(n: int) -> int:
    out = 1
    for k in range(1, n):
        out *= factorial(k)
    return out


@lru_cache(maxsize=None)
def theorem_main(p: RegionParams) -> int:
    """Number of tilings of the notched region, by the hyperfactorial product.

    Evaluated in plain integer arithmetic, independently of the q
    machinery, so it can cross-check theorem_qmain at q=1.
    """
    num, den = _count_factor_lists(p)
    top = 1
    for n in num:
        top *= _hyperfactorial_int(n)
    bottom = 1
    for n in den:
        bottom *= _hyperfactorial_int(n)
    value, rem = divmod(top, bottom)
    if rem:
        raise ArithmeticError("hyperfactorial ratio is not an integer for %r" % (p,))
    return value


@lru_cache(maxsize=None)
def theorem_qmain(p: RegionParams) -> FormulaResult:
    """Volume generating function over the notched region's tilings."""
    num, den = _count_factor_lists(p)
    return _ratio(0, num, den)


@lru_cache(maxsize=None)
def hex_M1(a: int, b: int, c: int) -> FormulaResult:
    """First hexagon q-count: q^(ab(b+1)/2) times the box polynomial."""
    pre = a * b * (b + 1) // 2
    return FormulaResult(macmahon_q(a, b, c).poly.shift(pre), pre)


@lru_cache(maxsize=None)
def hex_M2(a: int, b: int, c: int) -> FormulaResult:
    """Second hexagon q-count: q^(ba(a+1)/2) times the box polynomial."""
    pre = b * a * (a + 1) // 2
    return FormulaResult(macmahon_q(a, b, c).poly.shift(pre), pre)


def semihex_dents_M2(a: int, b: int, dents) -> FormulaResult:
    """Generating function of the dented half-hexagon's tilings.

    Equals the column-strict fillings enumerated by the dent positions:
    q^(sum s_i - i) times the double product of shifted q-integer ratios.
    """
    return _semihex_cached(a, b, tuple(dents))


@lru_cache(maxsize=None)
def _semihex_cached(a: int, b: int, dents: tuple[int, ...]) -> FormulaResult:
    if len(set(dents)) != len(dents):
        raise BadDents("duplicate dent positions in %r" % (list(dents),))
    if len(dents) != a:
        raise BadDents("need exactly %d dents, got %d" % (a, len(dents)))
    if any(not 1 <= k <= a + b for k in dents):
        raise BadDents("dent positions must lie in 1..%d: %r" % (a + b, list(dents)))
    s = sorted(dents)
    shown = sum(si - i for i, si in enumerate(s, start=1))
    acc = QFactorExponents(prefactor_exponent=shown)
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            # (q^s_j - q^s_i) / (q^j - q^i) = q^(s_i - i) [s_j - s_i] / [j - i]
            acc = push_prefactor(acc, s[i] - (i + 1))
            acc = push_q_int(acc, s[j] - s[i], 1)
            acc = push_q_int(acc, j - i, -1)
    return FormulaResult(resolve(acc), shown)


@lru_cache(maxsize=None)
def k_region_M2(a: int, x: int, y: int, z: int, t: int) -> FormulaResult:
    """Second q-count of the one-lobe cornered region."""
    pre = y * comb(z + 1, 2) + x * comb(a + z + 1, 2)
    num = [a, x, y, z, t, a + x + t, a + x + y, a + y + z, a + x + y + z + t]
    den = [x + t, a + x, a + y, y + z, a + x + y + t, a + x + y + z, a + t + z]
    return _ratio(pre, num, den)


def _bar_ratio_lists(m, a, x, y, z, t):
    num = [
        m + a + x + y + z + t,
        m + a + x + t,
        m + a + x + y,
        m + a + y + z,
        x,
        y,
        z,
        t,
        m,
        a,
        a,
        m + z + t,
        m + a + x,
        m + a + y,
    ]
    den = [
        m + a + x + y + t,
        m + a + x + y + z,
        m + a + z + t,
        m + a + x,
        m + a + y,
        a + x,
        a + y,
        z + t,
        m + a,
        m + y + z,
        m + x + t,
    ]
    return num, den


@lru_cache(maxsize=None)
def magnet_M2(m: int, a: int, x: int, y: int, z: int, t: int) -> FormulaResult:
    """Second q-count of the bar region (lobe plus core on the boundary)."""
    pre = (
        y * comb(m + 1, 2)
        + (m + x + y) * comb(z + 1, 2)
        + m * y * z
        + (m + a) * (x + m) * z
        + x * comb(a + 1, 2)
    )
    num, den = _bar_ratio_lists(m, a, x, y, z, t)
    return _ratio(pre, num, den)


@lru_cache(maxsize=None)
def magnet_M3(m: int, a: int, x: int, y: int, z: int, t: int) -> FormulaResult:
    """Third q-count of the bar region; same ratio as magnet_M2."""
    pre = (
        m * comb(a + 1, 2)
        + t * comb(z + a + 1, 2)
        + a * (z + m) * (x + a)
        + a * comb(z + m + 1, 2)
    )
    num, den = _bar_ratio_lists(m, a, x, y, z, t)
    return _ratio(pre, num, den)
