"""Dirichlet characters with exact angles, and their Gauss sums.

The only floating point in the package lives here. A character stores the
angle k/ord of each value, so the symbolic side never sees a rounded root of
unity.
"""

from __future__ import annotations

import cmath
import itertools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

TOLERANCE = 1e-9


class DirichletError(ValueError):
    pass


def factorize(f: int) -> dict[int, int]:
    out, p = {}, 2
    while p * p <= f:
        while f % p == 0:
            out[p] = out.get(p, 0) + 1
            f //= p
        p += 1
    if f > 1:
        out[f] = out.get(f, 0) + 1
    return out


def totient(f: int) -> int:
    return math.prod(p ** (k - 1) * (p - 1) for p, k in factorize(f).items())


def _primitive_root(p: int) -> int:
    phi = p - 1
    primes = factorize(phi)
    for g in range(2, p):
        if all(pow(g, phi // q, p) != 1 for q in primes):
            return g
    return 1


def _local_generators(p: int, k: int) -> list[tuple[int, int]]:
    """Generators of (Z/p^k)^x with their orders."""
    q = p**k
    if p == 2:
        if k == 1:
            return []
        if k == 2:
            return [(3, 2)]
        return [(q - 1, 2), (5, 2 ** (k - 2))]
    g = _primitive_root(p)
    if pow(g, p - 1, p * p) == 1:
        g += p
    return [(g % q, (p - 1) * p ** (k - 1))]


def generators(f: int) -> list[tuple[int, int]]:
    """CRT lifts of the local generators, as (residue mod f, order)."""
    out = []
    for p, k in sorted(factorize(f).items()):
        q = p**k
        rest = f // q
        for g, o in _local_generators(p, k):
            # x = g mod q, x = 1 mod rest
            x = (g * rest * pow(rest, -1, q) + q * pow(q, -1, rest)) % f if rest > 1 else g
            out.append((x, o))
    return out


@dataclass(frozen=True)
class DirichletCharacter:
    """``angles[a]`` is the angle of eps(a) in turns, for a coprime to f."""

    modulus: int
    angles: tuple  # sorted (residue, Fraction) pairs

    def __post_init__(self):
        f = self.modulus
        if f < 1:
            raise DirichletError("modulus must be positive")
        table = dict(self.angles)
        units = [a for a in range(f) if math.gcd(a, f) == 1]
        if sorted(table) != units:
            raise DirichletError(f"values must be given exactly on the units mod {f}")
        if table[1 % f] != 0:
            raise DirichletError("eps(1) must be 1")
        # multiplicativity against a generating set implies it everywhere
        for a in units:
            for g, _ in generators(f):
                if table[a * g % f] != (table[a] + table[g]) % 1:
                    raise DirichletError(f"not multiplicative at {a}, {g}")
        if totient(f) % self.order:
            raise DirichletError("order does not divide phi(f)")

    @classmethod
    def from_table(cls, f: int, table: dict) -> DirichletCharacter:
        return cls(f, tuple(sorted((a % f, Fraction(x) % 1) for a, x in table.items())))

    @cached_property
    def table(self) -> dict:
        return dict(self.angles)

    def angle(self, a: int) -> Fraction | None:
        return self.table.get(a % self.modulus)

    def __call__(self, a: int) -> complex:
        t = self.angle(a)
        if t is None:
            return 0j
        return cmath.exp(2j * math.pi * float(t))

    @property
    def order(self) -> int:
        return math.lcm(*(t.denominator for t in self.table.values()))

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def conj(self) -> DirichletCharacter:
        return DirichletCharacter(self.modulus, tuple((a, -t % 1) for a, t in self.angles))

    @property
    def parity(self) -> int:
        return 1 if self.angle(-1) == 0 else -1

    @cached_property
    def conductor(self) -> int:
        f = self.modulus
        for d in sorted(d for d in range(1, f + 1) if f % d == 0):
            if all(t == 0 for a, t in self.angles if a % d == 1 % d):
                return d
        return f

    @property
    def primitive(self) -> bool:
        return self.conductor == self.modulus

    def __str__(self) -> str:
        vals = ", ".join(f"{a}:{t}" for a, t in self.angles)
        return f"eps mod {self.modulus} [{vals}]"


def all_characters(f: int) -> list[DirichletCharacter]:
    """Every character mod f, trivial first, in a fixed order."""
    gens = generators(f)
    out = []
    for ks in itertools.product(*(range(o) for _, o in gens)):
        table = {}
        for es in itertools.product(*(range(o) for _, o in gens)):
            a = math.prod(pow(g, e, f) for (g, _), e in zip(gens, es)) % f
            table[a] = sum((Fraction(k * e, o) for (_, o), k, e in zip(gens, ks, es)), Fraction(0)) % 1
        if not gens:
            table = {1 % f: Fraction(0)}
        out.append(DirichletCharacter.from_table(f, table))
    return out


def primitive_characters(f: int) -> list[DirichletCharacter]:
    return [e for e in all_characters(f) if e.primitive]


def gauss_sum(eps: DirichletCharacter) -> complex:
    """Direct sum of eps(a) e^(2 pi i a / f) over a = 1..f."""
    f = eps.modulus
    return sum((eps(a) * cmath.exp(2j * math.pi * a / f) for a in range(1, f + 1)), 0j)


def check_magnitude(eps: DirichletCharacter) -> bool | None:
    """| |G(eps)|^2 - f | < 1e-9; None (with a warning) for imprimitive eps."""
    if not eps.primitive:
        warnings.warn(f"skipped: character mod {eps.modulus} has conductor {eps.conductor}", stacklevel=2)
        return None
    return abs(abs(gauss_sum(eps)) ** 2 - eps.modulus) < TOLERANCE
