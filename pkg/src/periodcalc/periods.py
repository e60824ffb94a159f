"""Period monomials and the rewrite system that normalizes them.

A monomial is a finite product of period symbols with rational exponents.
Rules are oriented toward periods of single base characters at single
embeddings, so the fixpoint reached by applying them in a fixed order is a
normal form: two monomials are equivalent exactly when the normal form of
their quotient is 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .characters import CharExpr, fmt_q
from .fields import BASE_FIELD, EmbeddingRef, FieldLattice, is_absorbable, restrict


class NormalizationError(ArithmeticError):
    pass


def _where_str(where: frozenset) -> str:
    items = sorted(where, key=lambda e: (e.index, e.barred))
    if len(items) == 1:
        return str(items[0])
    return "{" + ", ".join(str(e) for e in items) + "}"


@dataclass(frozen=True)
class TwoPiI:
    rank = 0

    def __str__(self) -> str:
        return "2pii"


@dataclass(frozen=True)
class DiscSqrt:
    """Square root of the discriminant of the maximal totally real subfield."""

    field: str
    rank = 1

    def __str__(self) -> str:
        return f"D({self.field})"


@dataclass(frozen=True)
class Gauss:
    name: str
    rank = 2

    @property
    def default_unit_field(self):
        return BASE_FIELD if self.name == "eps_K" else None

    def __str__(self) -> str:
        return f"G({self.name})"


@dataclass(frozen=True)
class Unit:
    field: str
    rank = 3

    @property
    def default_unit_field(self):
        return self.field

    def __str__(self) -> str:
        return f"U({self.field})"


@dataclass(frozen=True)
class AutP:
    rep: str
    s: int
    rank = 4

    def __str__(self) -> str:
        return f"AUTP({self.rep}, {self.s})"


@dataclass(frozen=True)
class Arch:
    m: Fraction
    rep: str
    rep2: str
    rank = 5

    def __str__(self) -> str:
        return f"ARCH({fmt_q(self.m)}, {self.rep}, {self.rep2})"


@dataclass(frozen=True)
class Period:
    field: str
    char: CharExpr
    where: frozenset
    rank = 6

    def __post_init__(self):
        object.__setattr__(self, "where", frozenset(self.where))

    @property
    def single(self) -> EmbeddingRef | None:
        if len(self.where) == 1:
            return next(iter(self.where))
        return None

    def __str__(self) -> str:
        return f"P_{self.field}({self.char}; {_where_str(self.where)})"


@dataclass(frozen=True)
class LValue:
    obj: str
    at: Fraction
    rank = 7

    def __str__(self) -> str:
        return f"L[{self.obj}]({fmt_q(self.at)})"


TWO_PI_I = TwoPiI()


@lru_cache(maxsize=65536)
def symbol_key(sym) -> tuple:
    return (sym.rank, str(sym))


@dataclass(frozen=True)
class Monomial:
    terms: tuple = ()

    @classmethod
    def build(cls, items: Mapping | Iterable) -> Monomial:
        acc: dict = {}
        items = items.items() if isinstance(items, Mapping) else items
        for sym, e in items:
            acc[sym] = acc.get(sym, Fraction(0)) + Fraction(e)
        return cls(tuple(sorted(((s, e) for s, e in acc.items() if e != 0), key=lambda t: symbol_key(t[0]))))

    @classmethod
    def of(cls, sym, e=1) -> Monomial:
        return cls.build({sym: e})

    def as_dict(self) -> dict:
        return dict(self.terms)

    def get(self, sym) -> Fraction:
        return self.as_dict().get(sym, Fraction(0))

    def symbols(self) -> list:
        return [s for s, _ in self.terms]

    def is_one(self) -> bool:
        return not self.terms

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial.build(list(self.terms) + list(other.terms))

    def __truediv__(self, other: Monomial) -> Monomial:
        return self * other.inv()

    def __pow__(self, k) -> Monomial:
        k = Fraction(k)
        return Monomial.build((s, e * k) for s, e in self.terms)

    def inv(self) -> Monomial:
        return self ** -1

    def without(self, pred: Callable) -> Monomial:
        return Monomial(tuple((s, e) for s, e in self.terms if not pred(s)))

    def __str__(self) -> str:
        if not self.terms:
            return "1"
        return " * ".join(str(s) if e == 1 else f"{s}^{fmt_q(e)}" for s, e in self.terms)


ONE = Monomial()


def mono_mul(x: Monomial, y: Monomial) -> Monomial:
    return x * y


def mono_inv(x: Monomial) -> Monomial:
    return x.inv()


def mono_pow(x: Monomial, k) -> Monomial:
    return x ** k


@dataclass(frozen=True)
class Relation:
    """lhs ~ rhs up to units of the coefficient field ``modulo``."""

    lhs: Monomial
    rhs: Monomial
    modulo: object = "Q"
    provenance: str = ""
    annotations: tuple = ()

    def monomial(self) -> Monomial:
        return self.lhs / self.rhs

    def __str__(self) -> str:
        mod = self.modulo if isinstance(self.modulo, str) else "*".join(self.modulo)
        return f"{self.lhs} ~ {self.rhs} mod {mod}"


@dataclass(frozen=True)
class TraceStep:
    rule: str
    before: str
    after: str

    def __str__(self) -> str:
        return f"{self.rule}: {self.before} -> {self.after}"


# Each rule maps (monomial, session) to (monomial, steps).


def _local(name: str, rewrite: Callable):
    """Lift a per-symbol rewrite ``rewrite(sym, e, session) -> Monomial | None``."""

    def rule(mono: Monomial, session):
        out, steps = [], []
        for sym, e in mono.terms:
            new = rewrite(sym, e, session)
            if new is None:
                out.append((sym, e))
            else:
                steps.append(TraceStep(name, str(Monomial.of(sym, e)), str(new)))
                out += new.terms
        if not steps:
            return mono, steps
        return Monomial.build(out), steps

    rule.__name__ = f"rule_{name}"
    return rule


def _split_cm_type(sym, e, session):
    if isinstance(sym, Period) and len(sym.where) != 1:
        return Monomial.build((Period(sym.field, sym.char, {w}), e) for w in sym.where)
    return None


def _expand_atom(atom, session) -> CharExpr | None:
    spec = session.characters.get(atom.name)
    if spec is None or spec.factors is None:
        return None
    expr = spec.factors
    if atom.conj:
        expr = expr.conj()
    if atom.home != atom.field:
        expr = expr.pullback(atom.home)
    return expr


def _split_character(sym, e, session):
    if not isinstance(sym, Period) or sym.single is None:
        return None
    atom = sym.char.single_atom()
    if atom is not None:
        expr = _expand_atom(atom, session)
        if expr is None:
            return None
        return Monomial.of(Period(sym.field, expr, sym.where), e)
    return Monomial.build((Period(sym.field, CharExpr.of(a), sym.where), e * k) for a, k in sym.char.terms)


def _norm(sym, e, session):
    if not isinstance(sym, Period) or sym.single is None:
        return None
    atom = sym.char.single_atom()
    if atom is None or atom.home == atom.field:
        return None
    emb = restrict(session.fields, atom.home, sym.single, atom.field)
    return Monomial.of(Period(atom.field, CharExpr.of(atom.base()), {emb}), e)


def _conjugation(sym, e, session):
    if not isinstance(sym, Period) or sym.single is None:
        return None
    atom = sym.char.single_atom()
    if atom is None or not atom.conj:
        return None
    return Monomial.of(Period(sym.field, CharExpr.of(atom.plain()), {sym.single.conj()}), e)


def _gauss(sym, e, session):
    if isinstance(sym, Gauss) and sym.name in session.gauss_links:
        link = session.gauss_links[sym.name]
        return Monomial.of(Period(BASE_FIELD, link, {EmbeddingRef(1)}), -e)
    return None


def _norm_character(sym, e, session):
    if isinstance(sym, Period) and sym.field == BASE_FIELD and sym.single is not None:
        atom = sym.char.single_atom()
        if atom is not None and atom.name == session.norm_name and atom.home == BASE_FIELD:
            return Monomial.of(TWO_PI_I, -e)
    return None


def _disc(sym, e, session):
    if not isinstance(sym, DiscSqrt):
        return None
    spec = session.fields.get(sym.field)
    if spec is None:
        return None
    if spec.degree == 1:
        return ONE
    if spec.parents is None:
        return None
    (p1, p2), (n1, n2) = spec.parents, spec.parent_degrees
    return Monomial.build({DiscSqrt(p1): e * n2, DiscSqrt(p2): e * n1})


def _pair_rule(name: str, select: Callable, bonus: Callable):
    """Cancel P(x, e) P(x, e-bar) down to nonnegative exponents, one of them 0.

    ``select(atom, session)`` picks the atoms the relation applies to and
    ``bonus(m)`` is the monomial P(x,e)^m P(x,e-bar)^m is equivalent to.
    Subtracting min(x, y) is plain min-cancellation when both exponents are
    positive and is the unique such representative in general.
    """

    def rule(mono: Monomial, session):
        groups: dict = {}
        for sym, e in mono.terms:
            if isinstance(sym, Period) and sym.single is not None:
                atom = sym.char.single_atom()
                if atom is not None and not atom.conj and atom.home == sym.field and select(atom, session):
                    key = (sym.field, sym.char, sym.single.index)
                    groups.setdefault(key, {})[sym.single.barred] = e
        result, steps = mono, []
        for (fld, char, idx), ex in sorted(groups.items(), key=lambda kv: (kv[0][0], str(kv[0][1]), kv[0][2])):
            x, y = ex.get(False, Fraction(0)), ex.get(True, Fraction(0))
            m = min(x, y)
            if m == 0:
                continue
            up = Period(fld, char, {EmbeddingRef(idx, False)})
            down = Period(fld, char, {EmbeddingRef(idx, True)})
            before = Monomial.build({up: x, down: y})
            delta = Monomial.build({up: -m, down: -m}) * (bonus(m))
            result = result * delta
            steps.append(TraceStep(name, str(before), str(before * delta)))
        return result, steps

    rule.__name__ = f"rule_{name}"
    return rule


rule_split_cm_type = _local("split_cm_type", _split_cm_type)
rule_split_character = _local("split_character", _split_character)
rule_norm = _local("norm", _norm)
rule_conjugation = _local("conjugation", _conjugation)
rule_csd_cancel = _pair_rule(
    "csd_cancel",
    lambda atom, s: atom.name in s.characters and s.characters[atom.name].csd,
    lambda m: ONE,
)
# P(psi,1) P(psi,iota) = P(psi psi^c, 1) = P(||.||, 1) ~ (2 pi i)^-1
rule_psi = _pair_rule(
    "psi",
    lambda atom, s: atom.name == s.psi and atom.field == BASE_FIELD,
    lambda m: Monomial.of(TWO_PI_I, -m),
)
rule_gauss = _local("gauss", _gauss)
rule_norm_character = _local("norm_character", _norm_character)
rule_disc = _local("disc", _disc)


def rule_absorb(mono: Monomial, session, modulo):
    """Drop units of ``modulo``; D(F)^2 is rational, so D exponents reduce mod 2."""
    lattice: FieldLattice = session.lattice
    out, steps = [], []
    for sym, e in mono.terms:
        if is_absorbable(sym, modulo, lattice):
            steps.append(TraceStep("absorb", str(Monomial.of(sym, e)), "1"))
            continue
        if isinstance(sym, DiscSqrt) and e.denominator == 1 and not 0 <= e < 2:
            r = e % 2
            steps.append(TraceStep("absorb", str(Monomial.of(sym, e)), str(Monomial.of(sym, r))))
            e = r
        out.append((sym, e))
    return Monomial.build(out), steps


RULES = (
    rule_split_cm_type,
    rule_split_character,
    rule_norm,
    rule_conjugation,
    rule_csd_cancel,
    rule_psi,
    rule_gauss,
    rule_norm_character,
    rule_disc,
)

MAX_PASSES = 1000


def normalize_traced(mono: Monomial, session, modulo="Q") -> tuple[Monomial, list]:
    session.lattice.require(modulo)
    trace: list = []
    for _ in range(MAX_PASSES):
        start = mono
        for rule in RULES:
            mono, steps = rule(mono, session)
            trace += steps
        mono, steps = rule_absorb(mono, session, modulo)
        trace += steps
        if mono == start:
            break
    else:  # pragma: no cover - the rules are terminating
        raise NormalizationError("normalization did not terminate")
    e = mono.get(TWO_PI_I)
    if e.denominator != 1:
        raise NormalizationError(f"2pii exponent {fmt_q(e)} is not an integer")
    return mono, trace


def normalize(mono: Monomial, session, modulo="Q") -> Monomial:
    return normalize_traced(mono, session, modulo)[0]


def equivalent(lhs: Monomial, rhs: Monomial, session, modulo="Q") -> tuple[bool, Monomial, list]:
    """(lhs ~ rhs, normal form of lhs/rhs, rewrite trace)."""
    residual, trace = normalize_traced(lhs / rhs, session, modulo)
    return residual.is_one(), residual, trace
