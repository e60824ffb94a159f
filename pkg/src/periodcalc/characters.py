"""Infinity types of algebraic Hecke characters and formal character products."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .fields import BASE_FIELD, CMFieldSpec, CMType, EmbeddingRef, FieldError, restrict


class CharacterError(ValueError):
    pass


def half(x) -> Fraction:
    """Coerce to a rational whose denominator divides 2."""
    q = Fraction(x)
    if q.denominator not in (1, 2):
        raise CharacterError(f"exponent {q} is not a half-integer")
    return q


def fmt_q(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class InfinityType:
    """Exponents (a_i, b_i) of chi_inf = prod sigma_i^a_i sigma_i-bar^b_i."""

    field: str
    exps: tuple

    def __post_init__(self):
        object.__setattr__(self, "exps", tuple((half(a), half(b)) for a, b in self.exps))

    @classmethod
    def from_a(cls, fieldname: str, a: Iterable, w=0) -> InfinityType:
        """Motivic type sigma_i^a_i sigma_i-bar^(-w-a_i); w=0 is conjugate self-dual."""
        return cls(fieldname, tuple((half(x), -half(w) - half(x)) for x in a))

    @classmethod
    def trivial(cls, fieldname: str, n: int) -> InfinityType:
        return cls(fieldname, ((0, 0),) * n)

    @property
    def n(self) -> int:
        return len(self.exps)

    @property
    def a(self) -> tuple:
        return tuple(p[0] for p in self.exps)

    @property
    def b(self) -> tuple:
        return tuple(p[1] for p in self.exps)

    def __str__(self) -> str:
        return " ".join(f"({fmt_q(a)},{fmt_q(b)})" for a, b in self.exps)


def check_transform(chi: InfinityType) -> InfinityType:
    return InfinityType(chi.field, tuple((-b, -a) for a, b in chi.exps))


def conj_transform(chi: InfinityType) -> InfinityType:
    return InfinityType(chi.field, tuple((b, a) for a, b in chi.exps))


def multiply(x: InfinityType, y: InfinityType) -> InfinityType:
    if x.field != y.field or x.n != y.n:
        raise CharacterError(f"cannot multiply types over {x.field} and {y.field}")
    return InfinityType(x.field, tuple((a1 + a2, b1 + b2) for (a1, b1), (a2, b2) in zip(x.exps, y.exps)))


def power(x: InfinityType, k) -> InfinityType:
    k = Fraction(k)
    return InfinityType(x.field, tuple((a * k, b * k) for a, b in x.exps))


def norm_pullback(eta: InfinityType, target: CMFieldSpec) -> InfinityType:
    if eta.n != 1:
        raise CharacterError(f"norm pullback needs a character over {BASE_FIELD}, got one over {eta.field}")
    return InfinityType(target.name, eta.exps * target.degree)


@dataclass(frozen=True)
class Predicates:
    algebraic: bool
    motivic: bool
    critical: bool
    regular: bool
    conjugate_self_dual: bool
    very_regular: bool
    weight: int | None

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def weight(chi: InfinityType) -> int | None:
    sums = {a + b for a, b in chi.exps}
    if len(sums) != 1:
        return None
    s = sums.pop()
    return int(-s) if s.denominator == 1 else None


def predicates(chi: InfinityType) -> Predicates:
    algebraic = all(a.denominator == 1 and b.denominator == 1 for a, b in chi.exps)
    w = weight(chi) if algebraic else None
    a = chi.a
    regular = len(set(a)) == len(a)
    ordered = sorted(a, reverse=True)
    very = regular and all(x - y >= 3 for x, y in zip(ordered, ordered[1:]))
    return Predicates(
        algebraic=algebraic,
        motivic=w is not None,
        critical=all(x != y for x, y in chi.exps),
        regular=regular,
        conjugate_self_dual=all(y == -x for x, y in chi.exps),
        very_regular=very,
        weight=w,
    )


def compatible_cm_type(chi: InfinityType) -> CMType:
    """Phi_chi: sigma_i when a_i < b_i, its conjugate otherwise."""
    members = []
    for i, (a, b) in enumerate(chi.exps, start=1):
        if a == b:
            raise CharacterError(f"type is not critical at slot {i} (a_i = b_i = {fmt_q(a)})")
        members.append(EmbeddingRef(i, barred=not a < b))
    return CMType.of(chi.field, members)


def galois_twist(chi: InfinityType, k: int, spec: CMFieldSpec) -> InfinityType:
    """Permute the slots by g^k: slot g(i) receives the old slot i."""
    if not spec.cyclic:
        raise CharacterError(f"field {spec.name} is not cyclic over {BASE_FIELD}")
    if chi.n != spec.degree:
        raise CharacterError("type length does not match the field degree")
    g = spec.permutation
    exps = list(chi.exps)
    for _ in range(k % spec.degree):
        new = [None] * len(exps)
        for i, pair in enumerate(exps):
            new[g[i] - 1] = pair
        exps = new
    return InfinityType(chi.field, tuple(exps))


def is_primitive_at_infinity(chi: InfinityType, spec: CMFieldSpec) -> bool:
    """Necessary condition for chi != chi^tau: no nontrivial twist fixes the type."""
    return all(galois_twist(chi, k, spec) != chi for k in range(1, spec.degree))


# Formal products of named characters.
#
# An atom is a named character, possibly conjugated and possibly pulled back
# along a norm to a larger field ``home``. Self-conjugate characters (the norm
# character, pullbacks of Dirichlet characters) ignore conjugation.


@dataclass(frozen=True, order=True)
class Atom:
    name: str
    field: str
    home: str
    conj: bool = False
    selfconj: bool = False

    def conjugate(self) -> Atom:
        if self.selfconj:
            return self
        return Atom(self.name, self.field, self.home, not self.conj, self.selfconj)

    def at(self, home: str) -> Atom:
        return Atom(self.name, self.field, home, self.conj, self.selfconj)

    def base(self) -> Atom:
        """The atom over its own field."""
        return self.at(self.field)

    def plain(self) -> Atom:
        return Atom(self.name, self.field, self.home, False, self.selfconj)

    def __str__(self) -> str:
        s = self.name + (".c" if self.conj else "")
        return s if self.home == self.field else f"{s}@{self.home}"


@dataclass(frozen=True)
class CharExpr:
    """Element of the free abelian group on atoms (exponents rational)."""

    terms: tuple = ()

    @classmethod
    def build(cls, mapping: Mapping | Iterable) -> CharExpr:
        acc: dict = {}
        items = mapping.items() if isinstance(mapping, Mapping) else mapping
        for atom, e in items:
            acc[atom] = acc.get(atom, Fraction(0)) + Fraction(e)
        return cls(tuple(sorted((a, e) for a, e in acc.items() if e != 0)))

    @classmethod
    def of(cls, atom: Atom, e=1) -> CharExpr:
        return cls.build({atom: e})

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __mul__(self, other: CharExpr) -> CharExpr:
        return CharExpr.build(list(self.terms) + list(other.terms))

    def __pow__(self, k) -> CharExpr:
        k = Fraction(k)
        return CharExpr.build((a, e * k) for a, e in self.terms)

    def inv(self) -> CharExpr:
        return self ** -1

    def conj(self) -> CharExpr:
        return CharExpr.build((a.conjugate(), e) for a, e in self.terms)

    def check(self) -> CharExpr:
        return self.conj().inv()

    def pullback(self, home: str) -> CharExpr:
        return CharExpr.build((a.at(home), e) for a, e in self.terms)

    def is_trivial(self) -> bool:
        return not self.terms

    def homes(self) -> set:
        return {a.home for a, _ in self.terms}

    def single_atom(self) -> Atom | None:
        if len(self.terms) == 1 and self.terms[0][1] == 1:
            return self.terms[0][0]
        return None

    def __str__(self) -> str:
        if not self.terms:
            return "1"
        parts = []
        for a, e in self.terms:
            parts.append(str(a) if e == 1 else f"{a}^{fmt_q(e)}")
        return "*".join(parts)


@dataclass(frozen=True)
class CharacterSpec:
    name: str
    inftype: InfinityType
    csd: bool = False
    supercuspidal: bool = False
    rational: str | None = None
    factors: CharExpr | None = None
    selfconj: bool = False
    psi: bool = False

    def __post_init__(self):
        if self.csd and any(b != -a for a, b in self.inftype.exps):
            raise CharacterError(f"character {self.name} is flagged conjugate self-dual but b_i != -a_i")

    @property
    def field(self) -> str:
        return self.inftype.field

    @property
    def coefficient_field(self) -> str:
        return self.rational or f"E_{self.name}"

    def atom(self) -> Atom:
        return Atom(self.name, self.field, self.field, False, self.selfconj)

    def expr(self) -> CharExpr:
        return CharExpr.of(self.atom())


def expr_inftype(expr: CharExpr, home: str, chars: Mapping[str, CharacterSpec],
                 fields: Mapping[str, CMFieldSpec]) -> InfinityType:
    """Infinity type over ``home`` of a formal product of atoms."""
    spec = fields[home]
    total = InfinityType.trivial(home, spec.degree)
    for atom, e in expr.terms:
        if atom.home != home:
            raise CharacterError(f"atom {atom} does not live over {home}")
        base = chars[atom.name].inftype
        if atom.conj:
            base = conj_transform(base)
        slots = []
        for i in range(1, spec.degree + 1):
            try:
                j = restrict(fields, home, EmbeddingRef(i), atom.field).index
            except FieldError as exc:
                raise CharacterError(str(exc)) from None
            slots.append(base.exps[j - 1])
        total = multiply(total, power(InfinityType(home, tuple(slots)), e))
    return total


# The auxiliary characters attached to a character eta over K, as formal
# products. norm is the character ||.|| of A_K.


def tilde(eta: CharExpr) -> CharExpr:
    """eta~ = eta / eta^c."""
    return eta * eta.conj().inv()


def zero_pullback(eta: CharExpr, w_sum, norm: CharExpr) -> CharExpr:
    """eta_0 o N, determined by eta eta^c = (eta_0 o N) ||.||^(a+b)."""
    return eta * eta.conj() * norm ** (-Fraction(w_sum))


def square_twist(eta: CharExpr, w_sum, norm: CharExpr) -> CharExpr:
    """eta^(2) = eta^2 / (eta_0 o N)."""
    return eta ** 2 * zero_pullback(eta, w_sum, norm).inv()
