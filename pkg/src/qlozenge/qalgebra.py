"""Exact arithmetic in the indeterminate q.

Polynomials are stored sparsely as {exponent: coefficient} with Python
integers, so every operation is exact.  Products of q-integers (the
building blocks of q-factorials and q-hyperfactorials) are kept in
factored form (QFactorExponents) and only expanded on demand, because
product formulas cancel most factors before expansion is worthwhile.

All values are immutable after construction; operations return new
objects and are safe to call from worker processes.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping


class NonExactDivision(ArithmeticError):
    """A polynomial quotient would need a nonzero remainder."""


class QPoly:
    """A polynomial in q with integer coefficients and exponents >= 0.

    >>> p = QPoly({0: 1, 1: 1})
    >>> str(p * p)
    '1 + 2*q + q^2'
    >>> QPoly(0) == QPoly({})
    True
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | int = 0):
        if isinstance(terms, int):
            terms = {0: terms}
        clean: dict[int, int] = {}
        for e, c in terms.items():
            if not isinstance(e, int) or isinstance(e, bool) or e < 0:
                raise ValueError("exponents must be nonnegative integers, got %r" % (e,))
            if not isinstance(c, int) or isinstance(c, bool):
                raise ValueError("coefficients must be integers, got %r" % (c,))
            if c:
                clean[e] = c
        self._terms = clean

    @property
    def terms(self) -> dict[int, int]:
        """A copy of the sparse {exponent: coefficient} map."""
        return dict(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = QPoly(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "QPoly | int") -> "QPoly":
        if isinstance(other, int):
            other = QPoly(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return QPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        return QPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "QPoly | int") -> "QPoly":
        return self + (-other if isinstance(other, QPoly) else QPoly(-other))

    def __mul__(self, other: "QPoly | int") -> "QPoly":
        if isinstance(other, int):
            other = QPoly(other)
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = QPoly(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "QPoly":
        """Multiply by q^k.  k may be negative only when q^(-k) divides self."""
        if not self._terms:
            return self
        if k < 0 and min(self._terms) + k < 0:
            raise NonExactDivision("shift by q^%d leaves negative exponents" % k)
        return QPoly({e + k: c for e, c in self._terms.items()})

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return max(self._terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for e in sorted(self._terms):
            c = self._terms[e]
            mag = abs(c)
            if e == 0:
                body = str(mag)
            elif mag == 1:
                body = "q" if e == 1 else "q^%d" % e
            else:
                body = "%d*q" % mag if e == 1 else "%d*q^%d" % (mag, e)
            if not parts:
                parts.append("-" + body if c < 0 else body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return "QPoly(%r)" % (self._terms,)


_TERM_RE = re.compile(r"^(?:(\d+)\*)?q(?:\^(\d+))?$|^(\d+)$")


def parse_poly(text: str) -> QPoly:
    """Inverse of str(QPoly): parse the canonical text form.

    >>> parse_poly("1 + q + 2*q^3") == QPoly({0: 1, 1: 1, 3: 2})
    True
    >>> parse_poly("0")
    QPoly({})
    """
    text = text.strip()
    if text == "0":
        return QPoly(0)
    sign = 1
    if text.startswith("-"):
        sign = -1
        text = text[1:].strip()
    out: dict[int, int] = {}
    for chunk in re.split(r"\s+([+-])\s+", text):
        if chunk == "+":
            sign = 1
            continue
        if chunk == "-":
            sign = -1
            continue
        m = _TERM_RE.match(chunk)
        if not m:
            raise ValueError("cannot parse term %r" % chunk)
        if m.group(3) is not None:
            e, c = 0, int(m.group(3))
        else:
            c = int(m.group(1)) if m.group(1) else 1
            e = int(m.group(2)) if m.group(2) else 1
        if e in out:
            raise ValueError("duplicate exponent %d" % e)
        out[e] = sign * c
    return QPoly(out)


def q_int(n: int) -> QPoly:
    """The q-integer [n] = 1 + q + ... + q^(n-1); [0] is the zero polynomial."""
    if n < 0:
        raise ValueError("q_int of negative %d" % n)
    return QPoly({e: 1 for e in range(n)})


def q_factorial(n: int) -> QPoly:
    """[n]! = [1][2]...[n], the generating polynomial of inversions."""
    out = QPoly(1)
    for j in range(2, n + 1):
        out = out * q_int(j)
    return out


def poly_eval(p: QPoly, at: "Fraction | int") -> Fraction:
    """Evaluate exactly at a rational point."""
    x = Fraction(at)
    return sum((c * x**e for e, c in p.terms.items()), Fraction(0))


def poly_exact_div(num: QPoly, den: QPoly) -> QPoly:
    """Quotient p with p*den == num, via ascending-exponent long division.

    Any remainder, fractional coefficient, or overshoot past the possible
    quotient degree raises NonExactDivision.  This is deliberate: a failed
    division here almost always means a product formula was copied wrong.

    >>> str(poly_exact_div(QPoly({2: 1, 0: -1}), QPoly({1: 1, 0: -1})))
    '1 + q'
    """
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    if not num:
        return QPoly(0)
    dmin = min(den._terms)
    dlead = den._terms[dmin]
    qdeg_max = num.degree() - den.degree()
    if qdeg_max < 0:
        raise NonExactDivision("numerator degree below denominator degree")
    rem = dict(num._terms)
    quot: dict[int, int] = {}
    while rem:
        rmin = min(rem)
        e = rmin - dmin
        if e < 0 or e > qdeg_max:
            raise NonExactDivision("inexact polynomial division")
        c, leftover = divmod(rem[rmin], dlead)
        if leftover:
            raise NonExactDivision("inexact polynomial division")
        quot[e] = c
        for de, dc in den._terms.items():
            k = e + de
            v = rem.get(k, 0) - c * dc
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return QPoly(quot)


class QFactorExponents:
    """A formal product q^E * prod_j [j]^(e_j), kept unexpanded.

    The exponent map may carry negative entries while factors are being
    accumulated; resolve() demands that the final quotient is an honest
    polynomial.
    """

    __slots__ = ("_exponents", "_prefactor")

    def __init__(self, exponents: Mapping[int, int] | None = None, prefactor_exponent: int = 0):
        clean: dict[int, int] = {}
        if exponents:
            for j, e in exponents.items():
                if not isinstance(j, int) or j < 1:
                    raise ValueError("factor index must be a positive integer, got %r" % (j,))
                if e:
                    clean[j] = e
        if prefactor_exponent < 0:
            raise ValueError("prefactor exponent must be nonnegative")
        self._exponents = clean
        self._prefactor = prefactor_exponent

    @property
    def exponents(self) -> dict[int, int]:
        return dict(self._exponents)

    @property
    def prefactor_exponent(self) -> int:
        return self._prefactor

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QFactorExponents):
            return NotImplemented
        return self._exponents == other._exponents and self._prefactor == other._prefactor

    def __hash__(self) -> int:
        return hash((frozenset(self._exponents.items()), self._prefactor))

    def __repr__(self) -> str:
        return "QFactorExponents(%r, prefactor_exponent=%d)" % (self._exponents, self._prefactor)


def push_q_int(acc: QFactorExponents, n: int, sign: int) -> QFactorExponents:
    """Multiply (sign=+1) or divide (sign=-1) by the single factor [n]."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if n < 0:
        raise ValueError("q-integer index must be nonnegative")
    out = acc.exponents
    if n >= 1:
        out[n] = out.get(n, 0) + sign
    return QFactorExponents(out, acc.prefactor_exponent)


def push_q_factorial(acc: QFactorExponents, n: int, sign: int) -> QFactorExponents:
    """Multiply or divide by [n]! = [1][2]...[n]."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    out = acc.exponents
    for j in range(1, n + 1):
        out[j] = out.get(j, 0) + sign
    return QFactorExponents(out, acc.prefactor_exponent)


def push_hyperfactorial(acc: QFactorExponents, n: int, sign: int) -> QFactorExponents:
    """Multiply or divide by the q-hyperfactorial [0]! [1]! ... [n-1]!.

    Expanding the factorials gives prod_{j=1}^{n-1} [j]^(n-j), so the push
    just adds sign*(n-j) to each slot.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if n < 0:
        raise ValueError("hyperfactorial index must be nonnegative")
    out = acc.exponents
    for j in range(1, n):
        out[j] = out.get(j, 0) + sign * (n - j)
    return QFactorExponents(out, acc.prefactor_exponent)


def push_prefactor(acc: QFactorExponents, k: int) -> QFactorExponents:
    """Multiply by q^k; the running prefactor must stay nonnegative."""
    return QFactorExponents(acc.exponents, acc.prefactor_exponent + k)


def resolve(acc: QFactorExponents) -> QPoly:
    """Expand the factored product into a single polynomial.

    Positive slots multiply into a numerator, negative slots into a
    denominator, and the quotient must be exact.
    """
    num = QPoly(1)
    den = QPoly(1)
    for j in sorted(acc.exponents):
        e = acc.exponents[j]
        base = q_int(j)
        if e > 0:
            num = num * base**e
        else:
            den = den * base ** (-e)
    return poly_exact_div(num, den).shift(acc.prefactor_exponent)
