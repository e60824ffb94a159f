"""Axioms, elimination and the canned derivations.

L-values only ever enter through axiom instances. A derivation combines
relations so that every L-value cancels, solves for the period of interest
and compares the normal form with the expected formula.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .characters import CharacterError, CharExpr, compatible_cm_type, fmt_q, predicates
from .fields import BASE_FIELD, EmbeddingRef, FieldError
from .hodge import (
    HodgeError,
    critical_range_character,
    critical_range_closed,
    critical_range_pair,
    hodge_of_representation,
    tensor_hodge,
)
from .induction import InductionError, RepSpec, check_interlacing, highest_weights, phi_s, s_index
from .periods import (
    ONE,
    TWO_PI_I,
    Arch,
    AutP,
    DiscSqrt,
    Gauss,
    LValue,
    Monomial,
    NormalizationError,
    Period,
    Relation,
    equivalent,
    normalize,
)
from .script import (
    DECLARATIONS,
    AssertStep,
    AxiomStep,
    CharacterDecl,
    CompositumDecl,
    EliminateStep,
    FieldDecl,
    PeriodStep,
    RepDecl,
    ScriptHeader,
    SolveStep,
    TargetStep,
    apply_declaration,
)
from .session import Session, SessionError

VERIFIED = "verified"
FAILED = "failed"
WITH_ASSUMPTIONS = "verified-with-assumptions"

NONVANISHING = "assumed-nonvanishing"


class AxiomError(ValueError):
    pass


class ScriptError(ValueError):
    """The script refers to something that does not exist or is malformed."""


def _join(*mods) -> object:
    names = set()
    for m in mods:
        names.update((m,) if isinstance(m, str) else m)
    names.discard("Q")
    if not names:
        return "Q"
    if len(names) == 1:
        return names.pop()
    return tuple(sorted(names))


def _coefficients(session: Session, expr: CharExpr) -> object:
    return _join(*(session.char(a.name).coefficient_field for a, _ in expr.terms))


def hecke_key(fieldname: str, expr: CharExpr) -> str:
    return f"{fieldname}:{expr}"


def induced_character(session: Session, rep: RepSpec, eta: str) -> CharExpr:
    """chi * (eta o N), times psi o N in the even case."""
    theta = session.char(rep.base_char).expr() * CharExpr.of(session.atom(eta, home=rep.field))
    if rep.psi_used:
        theta = theta * CharExpr.of(session.atom(session.psi, home=rep.field))
    return theta


def axiom_blasius(session: Session, expr: CharExpr, fieldname: str, m) -> Relation:
    """L(theta, m) ~ D^(1/2) (2 pi i)^(mn) p(theta-check, Phi_theta)."""
    spec = session.field(fieldname)
    session.check_expr(expr, fieldname)
    t = session.inftype(expr, fieldname)
    pr = predicates(t)
    if not (pr.motivic and pr.critical):
        raise AxiomError(f"{expr} is not a motivic critical character")
    m = Fraction(m)
    if m.denominator != 1:
        raise AxiomError(f"Blasius needs an integer point, got {fmt_q(m)}")
    rng = critical_range_character(t)
    if m not in rng:
        raise AxiomError(f"{fmt_q(m)} is not critical for {expr} (critical range {rng})")
    phi = compatible_cm_type(t)
    rhs = Monomial.build({
        DiscSqrt(fieldname): 1,
        TWO_PI_I: m * spec.degree,
        Period(fieldname, expr.check(), phi.members): 1,
    })
    return Relation(Monomial.of(LValue(hecke_key(fieldname, expr), m)), rhs,
                    _coefficients(session, expr), "blasius")


def axiom_main(session: Session, rep_name: str, eta: str, m, s: int | None = None) -> Relation:
    """L(m, Pi (x) eta) ~ (2 pi i)^(mn) G(eps_K)^[n/2] P^(s)(Pi) p(eta-check,1)^s p(eta-check,iota)^(n-s).

    ``m`` is in the shifted variable, so it lies in Z + (n-1)/2.
    """
    rep = session.rep(rep_name)
    spec = session.char(eta)
    if spec.field != BASE_FIELD:
        raise AxiomError(f"{eta} must be a character over {BASE_FIELD}")
    n, m = rep.n, Fraction(m)
    try:
        got, _ = s_index(rep, spec.inftype)
        rng = critical_range_pair(rep.c, spec.inftype)
    except (InductionError, HodgeError) as exc:
        raise AxiomError(str(exc)) from None
    if s is not None and s != got:
        raise AxiomError(f"{eta} gives s = {got}, not {s}")
    if (m - Fraction(n - 1, 2)).denominator != 1:
        raise AxiomError(f"point {fmt_q(m)} is not in Z + (n-1)/2")
    if m not in rng:
        raise AxiomError(f"{fmt_q(m)} is outside the critical range {rng}")
    (a, b), = spec.inftype.exps
    if m + Fraction(n - 1, 2) < Fraction(n - a - b, 2):
        raise AxiomError(f"{fmt_q(m)} is below the central bound (n - a - b)/2")
    check = spec.expr().check()
    rhs = Monomial.build({
        TWO_PI_I: m * n,
        Gauss("eps_K"): n // 2,
        AutP(rep_name, got): 1,
        Period(BASE_FIELD, check, {EmbeddingRef(1)}): got,
        Period(BASE_FIELD, check, {EmbeddingRef(1, True)}): n - got,
    })
    modulo = _join(session.char(rep.base_char).coefficient_field, spec.coefficient_field)
    return Relation(Monomial.of(LValue(f"{rep_name}|{eta}", m)), rhs, modulo, "main")


def axiom_induction_L(session: Session, rep_name: str, eta: str, m) -> Relation:
    """L(m, Pi(chi) (x) eta) = L(m, chi (eta o N)); with the psi twist the
    left point is shifted by 1/2."""
    rep = session.rep(rep_name)
    m = Fraction(m)
    theta = induced_character(session, rep, eta)
    inner = m - Fraction(1, 2) if rep.psi_used else m
    return Relation(
        Monomial.of(LValue(f"{rep_name}|{eta}", m)),
        Monomial.of(LValue(hecke_key(rep.field, theta), inner)),
        "Q",
        "induction",
    )


def _pair_reps(session: Session, rep_name: str, rep2_name: str) -> tuple[RepSpec, RepSpec]:
    rep, rep2 = session.rep(rep_name), session.rep(rep2_name)
    if rep2.n != rep.n - 1:
        raise AxiomError(f"{rep2_name} must have degree {rep.n - 1}")
    if rep.psi_used == rep2.psi_used:
        raise AxiomError("exactly one of the two representations carries the psi twist")
    return rep, rep2


def axiom_pair(session: Session, rep_name: str, rep2_name: str, m) -> Relation:
    """L(m+1/2, Pi x Pi') ~ ARCH prod_j P^(j)(Pi) prod_k P^(k)(Pi')."""
    rep, rep2 = _pair_reps(session, rep_name, rep2_name)
    m = Fraction(m)
    if m.denominator != 1 or m < 0:
        raise AxiomError(f"m must be a nonnegative integer, got {fmt_q(m)}")
    for r in (rep, rep2):
        if not predicates(session.char(r.base_char).inftype).very_regular:
            raise AxiomError(f"{r.base_char} is not very regular")
    if not check_interlacing(highest_weights(rep), highest_weights(rep2)):
        raise AxiomError("highest weights do not interlace")
    n = rep.n
    h = tensor_hodge(hodge_of_representation(rep.inftype), hodge_of_representation(rep2.inftype))
    try:
        rng = critical_range_closed(h)
    except HodgeError as exc:
        raise AxiomError(str(exc)) from None
    if m + n - 1 not in rng:
        raise AxiomError(f"{fmt_q(m + n - 1)} is not critical for M(Pi) (x) M(Pi') (range {rng})")
    rhs = Monomial.build(
        [(Arch(m, rep_name, rep2_name), 1)]
        + [(AutP(rep_name, j), 1) for j in range(1, n)]
        + [(AutP(rep2_name, k), 1) for k in range(1, n - 1)]
    )
    notes = (f"{NONVANISHING}: L(1/2, {rep_name} x {rep2_name}) != 0",) if m == 0 else ()
    modulo = _join(session.char(rep.base_char).coefficient_field, session.char(rep2.base_char).coefficient_field)
    return Relation(Monomial.of(LValue(f"{rep_name}|{rep2_name}", m + Fraction(1, 2))), rhs, modulo, "pair", notes)


def pair_character(session: Session, rep: RepSpec, rep2: RepSpec, fieldname: str) -> CharExpr:
    return CharExpr.build({
        session.atom(rep.base_char, home=fieldname): 1,
        session.atom(rep2.base_char, home=fieldname): 1,
        session.atom(session.psi, home=fieldname): 1,
    })


def axiom_induction_pair(session: Session, rep_name: str, rep2_name: str, fieldname: str, m) -> Relation:
    """L(m+1/2, Pi x Pi') = L(m, chi o N * chi' o N * psi o N) over the compositum."""
    rep, rep2 = _pair_reps(session, rep_name, rep2_name)
    spec = session.field(fieldname)
    if spec.parents != (rep.field, rep2.field):
        raise AxiomError(f"{fieldname} is not the compositum of {rep.field} and {rep2.field}")
    m = Fraction(m)
    theta = pair_character(session, rep, rep2, fieldname)
    return Relation(
        Monomial.of(LValue(f"{rep_name}|{rep2_name}", m + Fraction(1, 2))),
        Monomial.of(LValue(hecke_key(fieldname, theta), m)),
        "Q",
        "induction_pair",
    )


def _matcher(item) -> Callable:
    if item == "L":
        return lambda s: isinstance(s, LValue)
    if item == "AUTP":
        return lambda s: isinstance(s, AutP)
    return lambda s: s == item


def eliminate(session: Session, relations: Sequence[Relation], items: Iterable) -> list[Relation]:
    """Gaussian elimination on exponent vectors.

    Each matching symbol is removed by dividing every relation that contains
    it by a suitable power of the first one that does; that pivot is then
    dropped.
    """
    match = [_matcher(i) for i in items]
    wanted = lambda s: any(f(s) for f in match)
    pool = [(normalize(r.monomial(), session), r.modulo, r.annotations) for r in relations]
    while True:
        present = sorted({s for mono, _, _ in pool for s in mono.symbols() if wanted(s)}, key=str)
        if not present:
            break
        sym = present[0]
        pi = next(i for i, (mono, _, _) in enumerate(pool) if mono.get(sym) != 0)
        pmono, pmod, pnotes = pool.pop(pi)
        ep = pmono.get(sym)
        new = []
        for mono, mod, notes in pool:
            e = mono.get(sym)
            if e != 0:
                mono = normalize(mono * pmono ** (-e / ep), session)
                mod, notes = _join(mod, pmod), tuple(dict.fromkeys(notes + pnotes))
            new.append((mono, mod, notes))
        pool = new
    return [Relation(mono, ONE, mod, "eliminate", notes) for mono, mod, notes in pool]


def solve(session: Session, relation: Relation, symbol) -> Relation:
    mono = normalize(relation.monomial(), session)
    e = mono.get(symbol)
    if e == 0:
        raise AxiomError(f"{symbol} does not occur in the relation")
    rest = mono.without(lambda s: s == symbol)
    return Relation(Monomial.of(symbol), normalize(rest ** (-1 / e), session), relation.modulo,
                    "solve", relation.annotations)


@dataclass
class DerivationReport:
    name: str
    verdict: str
    trace: list = field(default_factory=list)
    residual: Monomial = ONE
    assumptions: tuple = ()
    relations: dict = field(default_factory=dict)
    failed_step: int | None = None
    message: str = ""
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.verdict != FAILED

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "verdict": self.verdict,
            "failed_step": self.failed_step,
            "message": self.message,
            "residual": str(self.residual),
            "assumptions": list(self.assumptions),
            "relations": {k: str(v) for k, v in self.relations.items()},
            "trace": list(self.trace),
            "details": self.details,
        }

    def to_text(self, verbose: bool = False) -> str:
        lines = [f"{self.name}: {self.verdict}"]
        if self.failed_step is not None:
            lines.append(f"  failed at step {self.failed_step}: {self.message}")
        if not self.residual.is_one():
            lines.append(f"  residual: {self.residual}")
        for a in self.assumptions:
            lines.append(f"  assumption: {a}")
        for k, v in self.details.items():
            lines.append(f"  {k}: {v}")
        for k, v in self.relations.items():
            lines.append(f"  {k}: {v}")
        if verbose:
            lines += ["  " + t for t in self.trace]
        return "\n".join(lines)


def _describe(node) -> str:
    from .dsl import print_statement

    return print_statement(node)


def run_steps(session: Session, nodes: Sequence, name: str = "script") -> DerivationReport:
    """Replay declarations and steps against ``session`` (mutated in place)."""
    report = DerivationReport(name, VERIFIED)
    rels = report.relations
    notes: list = []

    def fail(i, message, residual=ONE):
        report.verdict, report.failed_step, report.message, report.residual = FAILED, i, message, residual
        report.trace.append(f"step {i} FAILED: {message}")
        return report

    def need(label, i):
        if label not in rels:
            raise ScriptError(f"step {i}: relation {label} is not defined")
        return rels[label]

    for i, node in enumerate(nodes, start=1):
        if isinstance(node, ScriptHeader):
            report.name = node.name
            continue
        if isinstance(node, DECLARATIONS):
            try:
                apply_declaration(session, node)
            except (SessionError, FieldError, CharacterError, InductionError) as exc:
                raise ScriptError(f"step {i}: {exc}") from None
            continue
        report.trace.append(f"step {i}: {_describe(node)}")
        try:
            if isinstance(node, AxiomStep):
                rel = _axiom(session, node)
                rels[node.label] = rel
                notes += rel.annotations
            elif isinstance(node, PeriodStep):
                sub = derive_period_relation(session, node.rep, node.s)
                if sub.verdict == FAILED:
                    return fail(i, f"period relation for {node.rep}, s={node.s}: {sub.message}", sub.residual)
                rels[node.label] = sub.relations["solved"]
            elif isinstance(node, EliminateStep):
                out = eliminate(session, [need(l, i) for l in node.sources], node.items)
                if len(out) != 1:
                    return fail(i, f"elimination left {len(out)} relations, expected 1")
                rels[node.label] = out[0]
                notes += out[0].annotations
            elif isinstance(node, SolveStep):
                rels[node.label] = solve(session, need(node.source, i), node.symbol)
            elif isinstance(node, AssertStep):
                # residuals read claimed / derived: what the claim has in excess
                ok, residual, trace = equivalent(node.rhs, node.lhs, session, node.modulo)
                report.trace += ["  " + str(t) for t in trace]
                if not ok:
                    return fail(i, "assertion does not hold", residual)
            elif isinstance(node, TargetStep):
                lhs, rhs = node.lhs, node.rhs
                if node.source is not None:
                    got = need(node.source, i)
                    lhs, rhs = lhs * got.rhs, rhs * got.lhs
                ok, residual, trace = equivalent(rhs, lhs, session, node.modulo)
                report.trace += ["  " + str(t) for t in trace]
                if not ok:
                    return fail(i, "target not reached", residual)
                report.trace.append(f"  target holds mod {node.modulo}")
            else:
                raise ScriptError(f"step {i}: unknown statement {node!r}")
        except (AxiomError, InductionError, HodgeError, NormalizationError) as exc:
            return fail(i, str(exc))
        except (SessionError, FieldError, CharacterError) as exc:
            raise ScriptError(f"step {i}: {exc}") from None
    report.assumptions = tuple(dict.fromkeys(notes))
    if report.assumptions:
        report.verdict = WITH_ASSUMPTIONS
    return report


def _axiom(session: Session, node: AxiomStep) -> Relation:
    k, args = node.kind, node.args
    if k == "blasius":
        return axiom_blasius(session, node.expr, args[0], node.at)
    if k == "main":
        return axiom_main(session, args[0], args[1], node.at)
    if k == "induction":
        return axiom_induction_L(session, args[0], args[1], node.at)
    if k == "pair":
        return axiom_pair(session, args[0], args[1], node.at)
    if k == "induction_pair":
        return axiom_induction_pair(session, args[0], args[1], args[2], node.at)
    raise ScriptError(f"unknown axiom {k}")


def verify_script(nodes: Sequence, name: str = "script") -> DerivationReport:
    return run_steps(Session(), nodes, name)


# Canned derivations.


def period_template(session: Session, rep_name: str, s: int) -> Monomial:
    """Expected value of P^(s)(Pi): the right-hand side the engine must reproduce."""
    rep = session.rep(rep_name)
    chi = session.char(rep.base_char)
    n = rep.n
    mono = Monomial.build({
        DiscSqrt(rep.field): 1,
        Gauss("eps_K"): -(n // 2),
        Period(rep.field, chi.expr().check(), phi_s(chi, s).members): 1,
    })
    if rep.psi_used:
        psi_check = session.char(session.psi).expr().check()
        mono = mono * Monomial.build({
            TWO_PI_I: Fraction(-n, 2),
            Period(BASE_FIELD, psi_check, {EmbeddingRef(1)}): s,
            Period(BASE_FIELD, psi_check, {EmbeddingRef(1, True)}): n - s,
        })
    return mono


def admissible_etas(rep: RepSpec, s: int, count: int = 2) -> list[tuple]:
    """Infinity types (a, b) of characters over K with s(eta) = s, and a point.

    a - b must sit strictly between -2c_r and -2c_(r+1) with r = n - s; the
    point is the top of the critical range, which always clears the central
    bound. Distinct choices vary a - b when the gap allows and shift a + b
    otherwise.
    """
    n, c = rep.n, rep.c
    r = n - s
    lo = -2 * c[r - 1] + 1 if r >= 1 else None
    hi = -2 * c[r] - 1 if r < n else None
    if lo is None:
        ds = [hi - k for k in range(count)]
    elif hi is None:
        ds = [lo + k for k in range(count)]
    else:
        ds = [d for d in range(int(lo), int(hi) + 1)][:count]
    if not ds:
        raise AxiomError(f"no admissible eta for s = {s}")
    out = []
    for k in range(count):
        d = Fraction(ds[k % len(ds)])
        b = Fraction(k)
        a = b + d
        from .characters import InfinityType

        eta = InfinityType(BASE_FIELD, ((a, b),))
        rng = critical_range_pair(c, eta)
        out.append((a, b, rng.hi))
    return out


def period_steps(session: Session, rep_name: str, s: int, count: int = 2, tag: str = "") -> list:
    """Statements deriving P^(s)(Pi) once per admissible eta."""
    rep = session.rep(rep_name)
    nodes = []
    template = period_template(session, rep_name, s)
    used = set(session.characters)
    for k, (a, b, m) in enumerate(admissible_etas(rep, s, count), start=1):
        eta = f"eta{tag}_s{s}_{k}"
        while eta in used:
            eta += "x"
        used.add(eta)
        lab = f"{tag}s{s}_{k}"
        nodes.append(CharacterDecl(eta, BASE_FIELD, ((a, b),)))
        nodes.append(AxiomStep("main", (rep_name, eta), m, f"M{lab}"))
        nodes.append(AxiomStep("induction", (rep_name, eta), m, f"I{lab}"))
        inner = m - Fraction(1, 2) if rep.psi_used else m
        theta = _theta_after(session, rep, eta, a, b)
        nodes.append(AxiomStep("blasius", (rep.field,), inner, f"B{lab}", theta))
        nodes.append(EliminateStep(("L",), (f"M{lab}", f"I{lab}", f"B{lab}"), f"E{lab}"))
        nodes.append(SolveStep(AutP(rep_name, s), f"E{lab}", f"S{lab}"))
        nodes.append(TargetStep(Monomial.of(AutP(rep_name, s)), template, "Q", f"S{lab}"))
    return nodes


def _theta_after(session: Session, rep: RepSpec, eta: str, a, b) -> CharExpr:
    from .characters import Atom

    chi = session.char(rep.base_char).expr()
    theta = chi * CharExpr.of(Atom(eta, BASE_FIELD, rep.field))
    if rep.psi_used:
        theta = theta * CharExpr.of(session.atom(session.psi, home=rep.field))
    return theta


def derive_period_relation(session: Session, rep_name: str, s: int, count: int = 2) -> DerivationReport:
    """Re-derive P^(s)(Pi) from the axioms with ``count`` different etas."""
    rep = session.rep(rep_name)
    if not 0 <= s <= rep.n:
        raise AxiomError(f"s = {s} out of range 0..{rep.n}")
    sub = session.copy()
    nodes = period_steps(sub, rep_name, s, count)
    report = run_steps(sub, nodes, f"period {rep_name} s={s}")
    if report.verdict == FAILED:
        return report
    solved = [v for k, v in report.relations.items() if k.startswith("S")]
    forms = {str(normalize(r.rhs, sub)) for r in solved}
    report.details["eta choices"] = len(solved)
    report.details["independent of eta"] = len(forms) == 1
    if len(forms) != 1:
        report.verdict, report.message = FAILED, "solved relation depends on eta"
        return report
    leftover = [a.name for r in solved for sym in r.rhs.symbols() if isinstance(sym, Period)
                for a, _ in sym.char.terms if a.name.startswith("eta")]
    if leftover:
        report.verdict, report.message = FAILED, f"eta periods survive: {leftover}"
        return report
    # the eta fields drop out together with the eta periods
    modulo = _join(session.char(rep.base_char).coefficient_field,
                   *([session.char(session.psi).coefficient_field] if rep.psi_used else []))
    report.relations["solved"] = Relation(solved[0].lhs, solved[0].rhs, modulo, "period")
    report.relations["template"] = Relation(Monomial.of(AutP(rep_name, s)), period_template(session, rep_name, s))
    return report


def default_a(n: int, gap: int = 3) -> tuple:
    """A very regular conjugate self-dual exponent vector, roughly centred."""
    return tuple(gap * (n - i) - (gap * (n - 1)) // 2 for i in range(1, n + 1))


def default_pair(n: int, m: int = 0) -> tuple[tuple, tuple]:
    """(a, a') satisfying the interlacing hypothesis with m + n - 1 critical."""
    gap = 2 * m + 5
    a = default_a(n, gap)
    # psi sits on the even-degree side, which moves the centre by one
    lift = m + 1 if n % 2 else m + 2
    a2 = tuple(-a[n - k - 1] + lift for k in range(1, n))
    return a, a2


def period_script(a: Sequence, count: int = 2, name: str | None = None, s_values=None) -> list:
    """Self-contained script re-deriving P^(s)(Pi(chi)) for every s (or those given)."""
    n = len(a)
    even = n % 2 == 0
    nodes = [ScriptHeader(name or f"{'even' if even else 'odd'}final_n{n}"), FieldDecl("F", n)]
    if even:
        nodes.append(CharacterDecl("psi", BASE_FIELD, ((1, 0),), ("psi",)))
    nodes.append(CharacterDecl("chi", "F", tuple((Fraction(x), -Fraction(x)) for x in a), ("csd", "supercuspidal")))
    nodes.append(RepDecl("Pi", "chi"))
    session = Session()
    for node in nodes[1:]:
        apply_declaration(session, node)
    for s in range(n + 1) if s_values is None else s_values:
        nodes += period_steps(session, "Pi", s, count)
    return nodes


def arch_script(a: Sequence, a2: Sequence, m: int, name: str | None = None) -> list:
    """Script solving for the archimedean factor ARCH(m, Pi, Pi')."""
    n = len(a)
    nodes = [
        ScriptHeader(name or f"arch_n{n}_m{m}"),
        FieldDecl("F", n),
        FieldDecl("F2", n - 1),
        CompositumDecl("L", "F", "F2"),
        CharacterDecl("psi", BASE_FIELD, ((1, 0),), ("psi",)),
        CharacterDecl("chi", "F", tuple((Fraction(x), -Fraction(x)) for x in a), ("csd", "supercuspidal")),
        CharacterDecl("chi2", "F2", tuple((Fraction(x), -Fraction(x)) for x in a2), ("csd", "supercuspidal")),
        RepDecl("Pi", "chi"),
        RepDecl("Pi2", "chi2"),
        AxiomStep("pair", ("Pi", "Pi2"), Fraction(m), "A"),
    ]
    session = Session()
    for node in nodes[1:-1]:
        apply_declaration(session, node)
    labels = ["A"]
    for j in range(1, n):
        nodes.append(PeriodStep("Pi", j, f"P{j}"))
        labels.append(f"P{j}")
    for k in range(1, n - 1):
        nodes.append(PeriodStep("Pi2", k, f"Q{k}"))
        labels.append(f"Q{k}")
    theta = pair_character(session, session.rep("Pi"), session.rep("Pi2"), "L")
    nodes += [
        AxiomStep("induction_pair", ("Pi", "Pi2", "L"), Fraction(m), "I"),
        AxiomStep("blasius", ("L",), Fraction(m), "B", theta),
        EliminateStep(("L", "AUTP"), tuple(labels + ["I", "B"]), "E"),
        SolveStep(Arch(Fraction(m), "Pi", "Pi2"), "E", "S"),
    ]
    # K E(chi) E(chi') E(psi), where the final statement lives
    from .script import CoefficientDecl

    nodes.insert(9, CoefficientDecl("Einf", ("E_chi", "E_chi2", "E_psi")))
    expected = Fraction(2 * m + 1, 2) * n * (n - 1)
    nodes.append(TargetStep(Monomial.of(Arch(Fraction(m), "Pi", "Pi2")), Monomial.of(TWO_PI_I, expected), "Einf", "S"))
    return nodes


def derive_archimedean(a: Sequence, a2: Sequence, m: int) -> DerivationReport:
    nodes = arch_script(a, a2, m)
    session = Session()
    report = run_steps(session, nodes)
    if report.verdict != FAILED:
        solved = report.relations["S"]
        arch_form = normalize(solved.rhs, session, "Einf")
        report.details["ARCH normal form"] = str(arch_form)
        report.details["2pii exponent"] = fmt_q(arch_form.get(TWO_PI_I))
        leftovers = [str(s) for s in arch_form.symbols() if isinstance(s, (DiscSqrt, Gauss))]
        report.details["DISC/GAUSS eliminated"] = not leftovers
    return report


def mutants(nodes: Sequence):
    """Scripts differing from ``nodes`` by one exponent in one target.

    Symbols the target's modulo would absorb are left alone, since perturbing
    them cannot change the verdict. Yields
    (statement index, symbol, delta, mutated statements).
    """
    from .fields import is_absorbable
    from .script import session_from

    session = session_from(nodes)
    for i, node in enumerate(nodes):
        if not isinstance(node, TargetStep):
            continue
        syms = list(node.rhs.symbols())
        if TWO_PI_I not in syms:
            syms.append(TWO_PI_I)
        for sym in syms:
            if is_absorbable(sym, node.modulo, session.lattice):
                continue
            for delta in (1, -1):
                bumped = node.rhs * Monomial.of(sym, delta)
                mutated = list(nodes)
                mutated[i] = TargetStep(node.lhs, bumped, node.modulo, node.source)
                yield i + 1, sym, delta, mutated
