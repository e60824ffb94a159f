"""Hodge types and critical integers.

Two independent routes to the critical set: the closed interval formula and
a brute-force scan of Deligne's criterion. Tests pit them against each other.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .characters import InfinityType, predicates


class HodgeError(ValueError):
    pass


INF = math.inf


@dataclass(frozen=True)
class HodgeType:
    weight: int
    pairs: tuple

    def __post_init__(self):
        pairs = tuple(sorted((int(p), int(q)) for p, q in self.pairs))
        for p, q in pairs:
            if p + q != self.weight:
                raise HodgeError(f"pair ({p},{q}) does not have weight {self.weight}")
        if Counter(pairs) != Counter((q, p) for p, q in pairs):
            raise HodgeError("Hodge type is not closed under (p,q) -> (q,p)")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def from_p_list(cls, weight: int, ps: Iterable[int]) -> HodgeType:
        pairs = []
        for p in ps:
            pairs += [(p, weight - p), (weight - p, p)]
        return cls(weight, tuple(pairs))

    def has_diagonal(self) -> bool:
        return any(p == q for p, q in self.pairs)

    def p_values(self) -> list[int]:
        return sorted({p for p, _ in self.pairs})

    def __str__(self) -> str:
        body = ", ".join(f"({p},{q})" for p, q in self.pairs)
        return f"w={self.weight} {{{body}}}"


@dataclass(frozen=True)
class CriticalRange:
    lo: object
    hi: object

    @property
    def empty(self) -> bool:
        return self.lo > self.hi

    def __contains__(self, m) -> bool:
        return self.lo <= m <= self.hi

    def shift(self, d) -> CriticalRange:
        return CriticalRange(self.lo + d, self.hi + d)

    def members(self) -> list:
        if self.lo == -INF or self.hi == INF:
            raise HodgeError("unbounded range")
        out, m = [], self.lo
        while m <= self.hi:
            out.append(m)
            m += 1
        return out

    def __str__(self) -> str:
        if self.empty:
            return "empty"
        return f"[{_fmt(self.lo)}, {_fmt(self.hi)}]"


def _fmt(x) -> str:
    if x in (INF, -INF):
        return "+inf" if x > 0 else "-inf"
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _integral(x: Fraction, what: str) -> int:
    if Fraction(x).denominator != 1:
        raise HodgeError(f"{what} {x} is not an integer; exponents are not algebraic")
    return int(x)


def hodge_of_representation(pi: InfinityType) -> HodgeType:
    """Hodge type of the motive conjecturally attached to Pi over K."""
    n = pi.n
    shift = Fraction(n - 1, 2)
    pairs, weights = [], set()
    for a, b in pi.exps:
        p = _integral(-a + shift, "Hodge number")
        q = _integral(-b + shift, "Hodge number")
        pairs += [(p, q), (q, p)]
        weights.add(p + q)
    if len(weights) != 1:
        raise HodgeError("representation type is not pure")
    return HodgeType(weights.pop(), tuple(pairs))


def hodge_of_character(chi: InfinityType) -> HodgeType:
    """Hodge type of M(chi): pairs (-a_i, -b_i) and their swaps."""
    pairs, weights = [], set()
    for a, b in chi.exps:
        p, q = _integral(-a, "Hodge number"), _integral(-b, "Hodge number")
        pairs += [(p, q), (q, p)]
        weights.add(p + q)
    if len(weights) != 1:
        raise HodgeError("character type is not motivic")
    return HodgeType(weights.pop(), tuple(pairs))


def tensor_hodge(h1: HodgeType, h2: HodgeType) -> HodgeType:
    pairs = [(p1 + p2, q1 + q2) for p1, q1 in h1.pairs for p2, q2 in h2.pairs]
    return HodgeType(h1.weight + h2.weight, tuple(pairs))


def _no_diagonal(h: HodgeType) -> None:
    if h.has_diagonal():
        raise HodgeError("Hodge type has a pair with p = q")


def critical_range_closed(h: HodgeType) -> CriticalRange:
    """Closed form: with p_1 < ... sorted and k the last index below w/2,
    m is critical iff max(p_k+1, w+1-p_(k+1)) <= m <= min(w-p_k, p_(k+1))."""
    _no_diagonal(h)
    w = h.weight
    ps = [-INF] + h.p_values() + [INF]
    k = max(i for i in range(len(ps) - 1) if ps[i] < Fraction(w, 2))
    lo = max(ps[k] + 1, w + 1 - ps[k + 1])
    hi = min(w - ps[k], ps[k + 1])
    return CriticalRange(lo, hi)


def deligne_oracle(h: HodgeType, m: int) -> bool:
    _no_diagonal(h)
    w = h.weight
    for p, _ in h.pairs:
        left = p - m <= -1 and w - p - m >= 0
        right = p - m >= 0 and w - p - m <= -1
        if not (left or right):
            return False
    return True


def oracle_scan(h: HodgeType) -> list[int]:
    """All critical m, found by scanning a window outside which nothing changes."""
    _no_diagonal(h)
    maxp = max(p for p, _ in h.pairs)
    lo, hi = h.weight - maxp - 1 - 2, maxp + 1 + 2
    return [m for m in range(lo, hi + 1) if deligne_oracle(h, m)]


def critical_range_character(chi: InfinityType) -> CriticalRange:
    pr = predicates(chi)
    if not pr.motivic:
        raise HodgeError("character is not motivic")
    if not pr.critical:
        raise HodgeError("character is not critical")
    w = pr.weight
    a = [INF] + sorted(chi.a, reverse=True) + [-INF]
    k = max(i for i in range(len(a) - 1) if a[i] > Fraction(-w, 2))
    lo = max(-a[k] + 1, w + 1 + a[k + 1])
    hi = min(w + a[k], -a[k + 1])
    return CriticalRange(lo, hi)


def critical_range_pair(c: Sequence, eta: InfinityType) -> CriticalRange:
    """Critical range of M(Pi) (x) M(eta) in the variable m - (n-1)/2.

    ``c`` are the first exponents of Pi's conjugate self-dual type.
    """
    if eta.n != 1:
        raise HodgeError("eta must be a character over K")
    (ea, eb), = eta.exps
    c = [Fraction(x) for x in c]
    if sorted(c, reverse=True) != c or len(set(c)) != len(c):
        raise HodgeError("exponents of Pi must be strictly decreasing")
    d = ea - eb
    for x in c:
        if d + 2 * x == 0:
            raise HodgeError(f"b - a = 2a_i for a_i = {x}: no critical value")
    cs = [INF] + c + [-INF]
    r = max(i for i in range(len(cs) - 1) if i == 0 or d + 2 * cs[i] > 0)
    lo = max(1 - cs[r] - ea, 1 + cs[r + 1] - eb)
    hi = min(cs[r] - eb, -cs[r + 1] - ea)
    return CriticalRange(lo, hi)
