"""Abstract syntax shared by the DSL front end and the derivation engine."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .characters import CharacterSpec, CharExpr, InfinityType
from .fields import CMFieldSpec
from .periods import Monomial
from .session import Session

FLAGS = ("csd", "psi", "supercuspidal")


@dataclass(frozen=True)
class ScriptHeader:
    name: str


@dataclass(frozen=True)
class FieldDecl:
    name: str
    degree: int
    cyclic: bool = True
    generator: tuple | None = None


@dataclass(frozen=True)
class CompositumDecl:
    name: str
    left: str
    right: str


@dataclass(frozen=True)
class CoefficientDecl:
    name: str
    contains: tuple = ()


@dataclass(frozen=True)
class AbsorbDecl:
    symbol: object
    field: str


@dataclass(frozen=True)
class CharacterDecl:
    name: str
    field: str
    exps: tuple
    flags: tuple = ()
    rational: str | None = None
    factors: CharExpr | None = None


@dataclass(frozen=True)
class GaussDecl:
    name: str
    link: CharExpr | None = None


@dataclass(frozen=True)
class RepDecl:
    name: str
    char: str


@dataclass(frozen=True)
class AxiomStep:
    """kind is blasius, main, induction, pair or induction_pair.

    blasius uses ``expr`` and ``args = (field,)``; the others name
    representations, characters and fields in ``args``.
    """

    kind: str
    args: tuple
    at: Fraction
    label: str
    expr: CharExpr | None = None


@dataclass(frozen=True)
class PeriodStep:
    rep: str
    s: int
    label: str


@dataclass(frozen=True)
class EliminateStep:
    items: tuple
    sources: tuple
    label: str


@dataclass(frozen=True)
class SolveStep:
    symbol: object
    source: str
    label: str


@dataclass(frozen=True)
class AssertStep:
    lhs: Monomial
    rhs: Monomial
    modulo: str = "Q"


@dataclass(frozen=True)
class TargetStep:
    lhs: Monomial
    rhs: Monomial
    modulo: str = "Q"
    source: str | None = None


DECLARATIONS = (FieldDecl, CompositumDecl, CoefficientDecl, AbsorbDecl, CharacterDecl, GaussDecl, RepDecl)


def apply_declaration(session: Session, node) -> None:
    if isinstance(node, FieldDecl):
        session.declare_field(CMFieldSpec(node.name, node.degree, node.cyclic, node.generator))
    elif isinstance(node, CompositumDecl):
        session.declare_compositum(node.name, node.left, node.right)
    elif isinstance(node, CoefficientDecl):
        session.declare_coefficient(node.name, node.contains)
    elif isinstance(node, AbsorbDecl):
        session.declare_unit(node.symbol, node.field)
    elif isinstance(node, CharacterDecl):
        flags = set(node.flags)
        spec = CharacterSpec(
            node.name,
            InfinityType(node.field, node.exps),
            csd="csd" in flags,
            supercuspidal="supercuspidal" in flags,
            rational=node.rational,
            factors=node.factors,
            psi="psi" in flags,
        )
        session.declare_character(spec)
    elif isinstance(node, GaussDecl):
        session.declare_gauss(node.name, node.link)
    elif isinstance(node, RepDecl):
        session.declare_rep(node.name, node.char)
    else:
        raise TypeError(f"not a declaration: {node!r}")


def session_from(nodes) -> Session:
    session = Session()
    for node in nodes:
        if isinstance(node, DECLARATIONS):
            apply_declaration(session, node)
    return session
