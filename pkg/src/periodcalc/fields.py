"""Combinatorial model of CM fields F = F+K over a fixed imaginary quadratic K.

Nothing here knows about field elements. A field is a degree over K, a
permutation describing the Galois action on the K-trivial embeddings and,
for a compositum, the two parents it was built from.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Iterable, Iterator

BASE_FIELD = "K"
RATIONALS = "Q"


class FieldError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class EmbeddingRef:
    """sigma_index, or its complex conjugate when barred."""

    index: int
    barred: bool = False

    def conj(self) -> EmbeddingRef:
        return EmbeddingRef(self.index, not self.barred)

    def __str__(self) -> str:
        return ("~" if self.barred else "") + f"s{self.index}"


def _emb_key(e: EmbeddingRef):
    return (e.index, e.barred)


@dataclass(frozen=True)
class CMType:
    field: str
    members: frozenset

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        seen = {}
        for e in self.members:
            if e.index in seen:
                raise FieldError(f"embedding index {e.index} occurs twice in CM type")
            seen[e.index] = e

    @classmethod
    def of(cls, fieldname: str, members: Iterable[EmbeddingRef]) -> CMType:
        return cls(fieldname, frozenset(members))

    def conj(self) -> CMType:
        return CMType(self.field, frozenset(e.conj() for e in self.members))

    def is_full(self, degree: int) -> bool:
        return sorted(e.index for e in self.members) == list(range(1, degree + 1))

    def unbarred(self) -> int:
        return sum(1 for e in self.members if not e.barred)

    def sorted(self) -> list[EmbeddingRef]:
        return sorted(self.members, key=_emb_key)

    def __iter__(self) -> Iterator[EmbeddingRef]:
        return iter(self.sorted())

    def __len__(self) -> int:
        return len(self.members)

    def __str__(self) -> str:
        return "{" + ", ".join(str(e) for e in self.sorted()) + "}"


def conjugate_cm_type(psi: CMType) -> CMType:
    return psi.conj()


def permutation_order(perm: tuple[int, ...]) -> int:
    n = len(perm)
    seen = [False] * n
    order = 1
    for start in range(n):
        if seen[start]:
            continue
        length, i = 0, start
        while not seen[i]:
            seen[i] = True
            i = perm[i] - 1
            length += 1
        order = lcm(order, length)
    return order


def shift_permutation(n: int) -> tuple[int, ...]:
    return tuple(i % n + 1 for i in range(1, n + 1))


@dataclass(frozen=True)
class CMFieldSpec:
    """A CM field of degree n over K.

    ``generator`` lists the images g(1), ..., g(n) of the embedding indices
    under a fixed element of Gal(F/K); ``None`` means the cyclic shift.
    """

    name: str
    degree: int
    cyclic: bool = True
    generator: tuple[int, ...] | None = None
    parents: tuple[str, str] | None = None
    parent_degrees: tuple[int, int] | None = None

    def __post_init__(self):
        if self.degree < 1:
            raise FieldError(f"field {self.name}: degree must be positive")
        g = self.permutation
        if sorted(g) != list(range(1, self.degree + 1)):
            raise FieldError(f"field {self.name}: generator is not a permutation of 1..{self.degree}")
        order = permutation_order(g)
        if self.cyclic and order != self.degree:
            raise FieldError(
                f"field {self.name}: cyclic generator must have order {self.degree}, got {order}"
            )
        if not self.cyclic and self.degree % order:
            raise FieldError(f"field {self.name}: generator order {order} does not divide {self.degree}")

    @property
    def permutation(self) -> tuple[int, ...]:
        if self.generator is None:
            return shift_permutation(self.degree)
        return tuple(self.generator)

    @property
    def disc_symbol(self) -> str:
        return self.name

    def embeddings(self) -> list[EmbeddingRef]:
        return [EmbeddingRef(i, b) for i in range(1, self.degree + 1) for b in (False, True)]

    def pair_of(self, index: int) -> tuple[int, int]:
        """Grid coordinates (j, k) of a compositum embedding index."""
        if self.parent_degrees is None:
            raise FieldError(f"{self.name} is not a compositum")
        n2 = self.parent_degrees[1]
        return (index - 1) // n2 + 1, (index - 1) % n2 + 1

    def index_of(self, j: int, k: int) -> int:
        if self.parent_degrees is None:
            raise FieldError(f"{self.name} is not a compositum")
        return (j - 1) * self.parent_degrees[1] + k

    def check_embedding(self, e: EmbeddingRef) -> None:
        if not 1 <= e.index <= self.degree:
            raise FieldError(f"embedding {e} out of range for {self.name} (degree {self.degree})")


BASE_SPEC = CMFieldSpec(BASE_FIELD, 1)


def compositum(name: str, f1: CMFieldSpec, f2: CMFieldSpec) -> CMFieldSpec:
    """Compositum of two linearly disjoint CM fields (disjointness is assumed).

    Embeddings are indexed by the pair grid, tau_(j,k) restricting to sigma_j
    and sigma'_k. The Galois generator acts diagonally, so the result is
    cyclic exactly when the parent degrees are coprime.
    """
    n1, n2 = f1.degree, f2.degree
    g1, g2 = f1.permutation, f2.permutation
    images = []
    for j in range(1, n1 + 1):
        for k in range(1, n2 + 1):
            images.append((g1[j - 1] - 1) * n2 + g2[k - 1])
    cyclic = f1.cyclic and f2.cyclic and gcd(n1, n2) == 1
    return CMFieldSpec(name, n1 * n2, cyclic, tuple(images), (f1.name, f2.name), (n1, n2))


@dataclass
class FieldLattice:
    """Coefficient fields ordered by declared containment.

    Q sits below everything and K below every field except Q. A modulo
    argument may be a single name or a tuple of names standing for their
    join.
    """

    names: set = field(default_factory=lambda: {RATIONALS, BASE_FIELD})
    containments: set = field(default_factory=set)
    units: dict = field(default_factory=dict)

    def declare(self, name: str, contains: Iterable[str] = ()) -> None:
        contains = tuple(contains)
        for c in contains:
            if c not in self.names:
                raise FieldError(f"coefficient field {c} is not declared")
        if name in self.names and name not in (RATIONALS, BASE_FIELD) and not contains:
            raise FieldError(f"coefficient field {name} declared twice")
        self.names.add(name)
        for c in contains:
            if self.contains(c, name) and c != name:
                raise FieldError(f"containment {c} <= {name} would create a cycle")
            self.containments.add((c, name))

    def declare_unit(self, symbol, fieldname: str) -> None:
        self.require(fieldname)
        self.units[symbol] = fieldname

    def require(self, modulo) -> None:
        for name in _components(modulo):
            if name not in self.names:
                raise FieldError(f"coefficient field {name} is not declared")

    def contains(self, big: str, small: str) -> bool:
        """True when small is a subfield of big."""
        if small == big or small == RATIONALS:
            return True
        if small == BASE_FIELD and big != RATIONALS:
            return True
        frontier, seen = [small], {small}
        while frontier:
            cur = frontier.pop()
            for lo, hi in self.containments:
                if lo == cur and hi not in seen:
                    if hi == big:
                        return True
                    seen.add(hi)
                    frontier.append(hi)
        return False

    def below(self, modulo, small: str) -> bool:
        return any(self.contains(name, small) for name in _components(modulo))

    def unit_field(self, symbol) -> str | None:
        if symbol in self.units:
            return self.units[symbol]
        return getattr(symbol, "default_unit_field", None)


def _components(modulo) -> tuple[str, ...]:
    if isinstance(modulo, str):
        return (modulo,)
    return tuple(modulo)


def is_absorbable(symbol, modulo, lattice: FieldLattice) -> bool:
    """Whether ``symbol`` is a unit of the coefficient field ``modulo``."""
    lattice.require(modulo)
    home = lattice.unit_field(symbol)
    if home is None:
        return False
    return lattice.below(modulo, home)


def restrict(fields: dict, name: str, emb: EmbeddingRef, target: str) -> EmbeddingRef:
    """Restriction of an embedding of ``name`` to the subfield ``target``."""
    if target == name:
        return emb
    if target == BASE_FIELD:
        return EmbeddingRef(1, emb.barred)
    spec = fields[name]
    if spec.parents is None:
        raise FieldError(f"{target} is not a subfield of {name}")
    j, k = spec.pair_of(emb.index)
    for parent, idx in zip(spec.parents, (j, k)):
        try:
            return restrict(fields, parent, EmbeddingRef(idx, emb.barred), target)
        except FieldError:
            continue
    raise FieldError(f"{target} is not a subfield of {name}")


def is_subfield(fields: dict, small: str, big: str) -> bool:
    if small in (big, BASE_FIELD):
        return True
    spec = fields[big]
    return spec.parents is not None and any(is_subfield(fields, small, p) for p in spec.parents)
