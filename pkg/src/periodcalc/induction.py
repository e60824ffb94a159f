"""Automorphic induction bookkeeping: infinity types, the index s, CM types."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .characters import CharacterSpec, InfinityType, is_primitive_at_infinity, predicates
from .fields import BASE_FIELD, CMFieldSpec, CMType, EmbeddingRef


class InductionError(ValueError):
    pass


@dataclass(frozen=True)
class RepSpec:
    """Pi(chi), or Pi(chi) (x) ||.||^(-1/2) psi when n is even.

    ``c`` is sorted strictly decreasing; ``order[i]`` is the embedding index
    of chi that supplied ``c[i]``.
    """

    name: str
    base_char: str
    field: str
    c: tuple
    order: tuple
    psi_used: bool

    @property
    def n(self) -> int:
        return len(self.c)

    @property
    def parity(self) -> str:
        return "even" if self.n % 2 == 0 else "odd"

    @property
    def inftype(self) -> InfinityType:
        return InfinityType(BASE_FIELD, tuple((x, -x) for x in self.c))


def induce(chi: CharacterSpec, spec: CMFieldSpec, name: str | None = None) -> RepSpec:
    problems = []
    pr = predicates(chi.inftype)
    if not chi.csd:
        problems.append("not conjugate self-dual")
    if not pr.regular:
        problems.append("not regular")
    if not chi.supercuspidal:
        problems.append("supercuspidality hypothesis not asserted")
    if not spec.cyclic:
        problems.append(f"field {spec.name} is not cyclic over {BASE_FIELD}")
    if not pr.algebraic:
        problems.append("exponents are not integers")
    if problems:
        raise InductionError(f"cannot induce {chi.name}: " + "; ".join(problems))
    if not is_primitive_at_infinity(chi.inftype, spec):
        raise InductionError(f"cannot induce {chi.name}: fixed by a nontrivial Galois twist")
    a = chi.inftype.a
    order = tuple(sorted(range(1, len(a) + 1), key=lambda i: -a[i - 1]))
    even = len(a) % 2 == 0
    shift = Fraction(1, 2) if even else Fraction(0)
    c = tuple(a[i - 1] + shift for i in order)
    return RepSpec(name or f"Pi_{chi.name}", chi.name, spec.name, c, order, even)


def s_index(rep: RepSpec, eta: InfinityType) -> tuple[int, int]:
    (ea, eb), = eta.exps
    vals = [ea - eb + 2 * x for x in rep.c]
    if any(v == 0 for v in vals):
        raise InductionError("a - b + 2c_i = 0 for some i: no critical values")
    s = sum(1 for v in vals if v < 0)
    return s, rep.n - s


def phi_from_a(fieldname: str, a: Sequence, s: int) -> CMType:
    """sigma_i on the s smallest a_i, the conjugates elsewhere."""
    n = len(a)
    if not 0 <= s <= n:
        raise InductionError(f"s = {s} out of range 0..{n}")
    if len(set(a)) != n:
        raise InductionError("exponents are not regular")
    smallest = set(sorted(range(1, n + 1), key=lambda i: a[i - 1])[:s])
    return CMType.of(fieldname, [EmbeddingRef(i, i not in smallest) for i in range(1, n + 1)])


def phi_s(chi: CharacterSpec, s: int) -> CMType:
    return phi_from_a(chi.field, chi.inftype.a, s)


def phi_from_eta(chi: CharacterSpec, eta: InfinityType, shift=0) -> CMType:
    """Sign construction: sigma_i when a - b + 2a_i (+ shift) < 0."""
    (ea, eb), = eta.exps
    members = [EmbeddingRef(i, not ea - eb + 2 * x + shift < 0) for i, x in enumerate(chi.inftype.a, 1)]
    return CMType.of(chi.field, members)


def highest_weights(rep: RepSpec) -> tuple:
    n = rep.n
    return tuple(-rep.c[n - j] - Fraction(n + 1 - 2 * j, 2) for j in range(1, n + 1))


def check_interlacing(mu: Sequence, lam: Sequence) -> bool:
    """mu_1 >= -lam_(n-1) >= mu_2 >= -lam_(n-2) >= ... >= -lam_1 >= mu_n."""
    n = len(mu)
    if len(lam) != n - 1:
        raise InductionError(f"need {n - 1} weights for the second representation, got {len(lam)}")
    chain = [mu[0]]
    for j in range(1, n):
        chain += [-lam[n - 1 - j], mu[j]]
    return all(x >= y for x, y in zip(chain, chain[1:]))


def _strictly_decreasing(xs: Sequence) -> bool:
    return all(x > y for x, y in zip(xs, xs[1:]))


def check_pair_hypothesis(a: Sequence, a2: Sequence) -> bool:
    """-a_n > a'_1 >= -a_(n-1) > a'_2 >= ... > a'_(n-1) >= -a_1."""
    n = len(a)
    if len(a2) != n - 1:
        raise InductionError(f"need {n - 1} exponents for the second character, got {len(a2)}")
    if not (_strictly_decreasing(a) and _strictly_decreasing(a2)):
        raise InductionError("exponent vectors must be strictly decreasing")
    for k in range(1, n):
        if not (-a[n - k] > a2[k - 1] >= -a[n - k - 1]):
            return False
    return True


@dataclass(frozen=True)
class PairReport:
    hypothesis: bool
    matches_grid_rule: bool

    @property
    def status(self) -> str:
        if self.matches_grid_rule:
            return "membership equals j+k >= n+1"
        if self.hypothesis:
            return "MISMATCH despite hypothesis"
        return "not guaranteed (hypothesis fails)"


def phi_pair(a: Sequence, a2: Sequence, spec: CMFieldSpec, psi: bool = True) -> tuple[CMType, PairReport]:
    """Compatible CM type of chi o N * chi' o N (* psi o N) over the compositum.

    ``a`` and ``a2`` are indexed by embedding. At tau_(j,k) the product has
    type (a_j + a'_k + e, -a_j - a'_k) with e = 1 when psi is included.
    """
    n, n2 = len(a), len(a2)
    if spec.parent_degrees != (n, n2):
        raise InductionError(f"{spec.name} is not a compositum of degrees {n} and {n2}")
    extra = 1 if psi else 0
    rank = {i: r for r, i in enumerate(sorted(range(1, n + 1), key=lambda i: -a[i - 1]), 1)}
    rank2 = {i: r for r, i in enumerate(sorted(range(1, n2 + 1), key=lambda i: -a2[i - 1]), 1)}
    members, agree = [], True
    for j in range(1, n + 1):
        for k in range(1, n2 + 1):
            x, y = a[j - 1] + a2[k - 1] + extra, -a[j - 1] - a2[k - 1]
            inside = x < y
            members.append(EmbeddingRef(spec.index_of(j, k), not inside))
            agree &= inside == (rank[j] + rank2[k] >= n + 1)
    try:
        hyp = check_pair_hypothesis(sorted(a, reverse=True), sorted(a2, reverse=True))
    except InductionError:
        hyp = False
    return CMType.of(spec.name, members), PairReport(hyp, agree)


def exponent_profile(n: int) -> dict:
    """Multiplicity of each embedding across Phi_(j,chi), j = 1..n-1."""
    if n < 2:
        raise InductionError("n must be at least 2")
    a = list(range(n - 1, -1, -1))
    counts = {EmbeddingRef(i, b): 0 for i in range(1, n + 1) for b in (False, True)}
    for j in range(1, n):
        for e in phi_from_a("F", a, j):
            counts[e] += 1
    return counts
