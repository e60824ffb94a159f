"""Append-only registry of the fields, characters and representations in play."""

from __future__ import annotations

import copy

from .characters import (
    Atom,
    CharacterError,
    CharacterSpec,
    CharExpr,
    InfinityType,
    expr_inftype,
)
from .fields import BASE_FIELD, BASE_SPEC, CMFieldSpec, FieldError, FieldLattice, compositum, is_subfield
from .induction import RepSpec, induce
from .periods import Gauss


class SessionError(ValueError):
    pass


NORM = "norm"


class Session:
    """Declarations are checked on entry and never removed."""

    norm_name = NORM

    def __init__(self):
        self.fields: dict[str, CMFieldSpec] = {BASE_FIELD: BASE_SPEC}
        self.lattice = FieldLattice()
        self.characters: dict[str, CharacterSpec] = {}
        self.reps: dict[str, RepSpec] = {}
        self.gauss_links: dict[str, CharExpr] = {}
        self.dirichlet: set[str] = {"eps_K"}
        self.psi: str | None = None
        self.characters[NORM] = CharacterSpec(
            NORM, InfinityType(BASE_FIELD, ((1, 1),)), rational="Q", selfconj=True
        )
        self.lattice.declare_unit(Gauss("eps_K"), BASE_FIELD)

    def copy(self) -> Session:
        return copy.deepcopy(self)

    def _fresh(self, name: str) -> None:
        taken = set(self.fields) | set(self.characters) | set(self.reps) | self.dirichlet | self.lattice.names
        if name in taken:
            raise SessionError(f"name {name} is already declared")

    def declare_field(self, spec: CMFieldSpec) -> str:
        self._fresh(spec.name)
        self.fields[spec.name] = spec
        return spec.name

    def declare_compositum(self, name: str, f1: str, f2: str) -> str:
        self._fresh(name)
        for f in (f1, f2):
            if f not in self.fields:
                raise SessionError(f"field {f} is not declared")
        return self.declare_field(compositum(name, self.fields[f1], self.fields[f2]))

    def declare_coefficient(self, name: str, contains=()) -> str:
        self._fresh(name)
        self.lattice.declare(name, contains)
        return name

    def declare_unit(self, symbol, fieldname: str) -> None:
        self.lattice.declare_unit(symbol, fieldname)

    def declare_character(self, spec: CharacterSpec) -> str:
        self._fresh(spec.name)
        if spec.field not in self.fields:
            raise SessionError(f"field {spec.field} is not declared")
        if spec.inftype.n != self.fields[spec.field].degree:
            raise SessionError(
                f"character {spec.name}: {spec.inftype.n} exponent pairs for a field of degree "
                f"{self.fields[spec.field].degree}"
            )
        if spec.psi and self.psi is not None:
            raise SessionError(f"psi is already {self.psi}")
        if spec.psi and (spec.field != BASE_FIELD or spec.inftype.exps != ((1, 0),)):
            raise SessionError("psi must be a character over K of type (1,0)")
        if spec.factors is not None:
            self.check_expr(spec.factors, spec.field)
            if self.inftype(spec.factors, spec.field) != spec.inftype:
                raise SessionError(f"character {spec.name}: declared factors have a different infinity type")
        if spec.rational is None:
            spec = CharacterSpec(**{**spec.__dict__, "rational": f"E_{spec.name}"})
        if spec.rational not in self.lattice.names:
            self.lattice.declare(spec.rational, [BASE_FIELD])
        self.characters[spec.name] = spec
        if spec.psi:
            self.psi = spec.name
        return spec.name

    def declare_rep(self, name: str, chi: str) -> RepSpec:
        self._fresh(name)
        spec = self.char(chi)
        if spec.inftype.n % 2 == 0 and self.psi is None:
            raise SessionError("even degree induction needs a declared psi")
        rep = induce(spec, self.fields[spec.field], name)
        self.reps[name] = rep
        return rep

    def declare_gauss(self, name: str, link: CharExpr | None) -> None:
        self._fresh(name)
        if link is not None:
            self.check_expr(link, BASE_FIELD)
            self.gauss_links[name] = link
        self.dirichlet.add(name)

    def char(self, name: str) -> CharacterSpec:
        if name not in self.characters:
            raise SessionError(f"character {name} is not declared")
        return self.characters[name]

    def rep(self, name: str) -> RepSpec:
        if name not in self.reps:
            raise SessionError(f"representation {name} is not declared")
        return self.reps[name]

    def field(self, name: str) -> CMFieldSpec:
        if name not in self.fields:
            raise SessionError(f"field {name} is not declared")
        return self.fields[name]

    def atom(self, name: str, conj: bool = False, home: str | None = None) -> Atom:
        spec = self.char(name)
        home = home or spec.field
        if home not in self.fields:
            raise SessionError(f"field {home} is not declared")
        if not is_subfield(self.fields, spec.field, home):
            raise SessionError(f"{spec.field} is not a subfield of {home}; cannot pull {name} back")
        return Atom(name, spec.field, home, conj and not spec.selfconj, spec.selfconj)

    def check_expr(self, expr: CharExpr, home: str) -> None:
        for atom, _ in expr.terms:
            if atom.home != home:
                raise SessionError(f"{atom} does not live over {home}")

    def inftype(self, expr: CharExpr, home: str) -> InfinityType:
        try:
            return expr_inftype(expr, home, self.characters, self.fields)
        except (CharacterError, FieldError) as exc:
            raise SessionError(str(exc)) from None
