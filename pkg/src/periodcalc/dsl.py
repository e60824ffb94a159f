"""Line-oriented script language: lexer, parser and printer.

The parser resolves every name against a scratch session as it goes, so
reference errors point at the offending token. ``print_script`` emits text
that parses back to the same statements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .characters import Atom, CharacterError, CharExpr, fmt_q
from .fields import BASE_FIELD, EmbeddingRef, FieldError
from .induction import InductionError
from .periods import (
    TWO_PI_I,
    Arch,
    AutP,
    DiscSqrt,
    Gauss,
    LValue,
    Monomial,
    Period,
    TwoPiI,
    Unit,
)
from .script import (
    FLAGS,
    AbsorbDecl,
    AssertStep,
    AxiomStep,
    CharacterDecl,
    CoefficientDecl,
    CompositumDecl,
    EliminateStep,
    FieldDecl,
    GaussDecl,
    PeriodStep,
    RepDecl,
    ScriptHeader,
    SolveStep,
    TargetStep,
    apply_declaration,
)
from .session import Session, SessionError

PUNCT = set("(){},;~*^/@.=|-+")
KEYWORDS = (
    "script", "field", "coefficient", "absorb", "character", "gauss", "rep",
    "axiom", "period", "eliminate", "solve", "assert", "target",
)
AXIOMS = ("blasius", "main", "induction", "pair", "induction_pair")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int, expected=()):
        self.message, self.line, self.col = message, line, col
        self.expected = tuple(sorted(set(expected)))
        text = f"{line}:{col}: {message}"
        if self.expected:
            text += " (expected one of: " + ", ".join(self.expected) + ")"
        super().__init__(text)


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, INT, PUNCT, LABEL, TWOPII, NL, EOF
    text: str
    line: int
    col: int

    def show(self) -> str:
        return {"NL": "end of line", "EOF": "end of input"}.get(self.kind, repr(self.text))


def tokenize(source: str) -> list[Token]:
    out = []
    for ln, line in enumerate(source.splitlines(), start=1):
        i, n = 0, len(line)
        while i < n:
            ch, col = line[i], i + 1
            if ch == "#":
                break
            if ch.isspace():
                i += 1
            elif line.startswith("2pii", i) and not (i + 4 < n and (line[i + 4].isalnum() or line[i + 4] == "_")):
                out.append(Token("TWOPII", "2pii", ln, col))
                i += 4
            elif ch.isdigit():
                j = i
                while j < n and line[j].isdigit():
                    j += 1
                out.append(Token("INT", line[i:j], ln, col))
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < n and (line[j].isalnum() or line[j] == "_"):
                    j += 1
                out.append(Token("NAME", line[i:j], ln, col))
                i = j
            elif ch == "[":
                j = line.find("]", i)
                if j < 0:
                    raise ParseError("unterminated '['", ln, col, ["]"])
                out.append(Token("LABEL", line[i + 1:j], ln, col))
                i = j + 1
            elif ch in PUNCT:
                out.append(Token("PUNCT", ch, ln, col))
                i += 1
            else:
                raise ParseError(f"unexpected character {ch!r}", ln, col)
        out.append(Token("NL", "", ln, n + 1))
    last = out[-1].line + 1 if out else 1
    out.append(Token("EOF", "", last, 1))
    return out


@dataclass(frozen=True)
class Script:
    statements: tuple

    @property
    def name(self) -> str | None:
        for s in self.statements:
            if isinstance(s, ScriptHeader):
                return s.name
        return None


class Parser:
    def __init__(self, source: str, session: Session | None = None):
        self.toks = tokenize(source)
        self.pos = 0
        self.session = session if session is not None else Session()
        self.labels: set[str] = set()

    # token helpers

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def error(self, message: str, expected=(), tok: Token | None = None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.col, expected)

    def at(self, text: str) -> bool:
        return self.tok.kind in ("NAME", "PUNCT") and self.tok.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"unexpected {self.tok.show()}", [text])
        self.pos += 1
        return self.toks[self.pos - 1]

    def name(self, what: str = "NAME") -> Token:
        if self.tok.kind != "NAME":
            self.error(f"unexpected {self.tok.show()}", [what])
        self.pos += 1
        return self.toks[self.pos - 1]

    def integer(self) -> int:
        neg = self.accept("-")
        if self.tok.kind != "INT":
            self.error(f"unexpected {self.tok.show()}", ["INT"])
        self.pos += 1
        v = int(self.toks[self.pos - 1].text)
        return -v if neg else v

    def rational(self) -> Fraction:
        if self.accept("("):
            q = self.rational()
            self.expect(")")
            return q
        neg = self.accept("-")
        if self.tok.kind != "INT":
            self.error(f"unexpected {self.tok.show()}", ["INT"] if neg else ["INT", "-", "("])
        v = Fraction(self.integer())
        if self.accept("/"):
            d = self.integer()
            if d == 0:
                self.error("zero denominator", tok=self.toks[self.pos - 1])
            v /= d
        return -v if neg else v

    def end(self):
        if self.tok.kind != "NL":
            self.error(f"unexpected {self.tok.show()}", ["end of line"])
        self.pos += 1

    # reference checks

    def field_ref(self, what: str = "FIELD") -> str:
        t = self.name(what)
        if t.text not in self.session.fields:
            self.error(f"field {t.text} is not declared", tok=t)
        return t.text

    def char_ref(self) -> str:
        t = self.name("CHARACTER")
        if t.text not in self.session.characters:
            self.error(f"character {t.text} is not declared", tok=t)
        return t.text

    def rep_ref(self) -> str:
        t = self.name("REP")
        if t.text not in self.session.reps:
            self.error(f"representation {t.text} is not declared", tok=t)
        return t.text

    def coefficient_ref(self) -> str:
        t = self.name("FIELD")
        if t.text not in self.session.lattice.names and t.text not in self.session.fields:
            self.error(f"field {t.text} is not declared", tok=t)
        return t.text

    def label_ref(self) -> str:
        t = self.name("LABEL")
        if t.text not in self.labels:
            self.error(f"relation {t.text} is not defined", tok=t)
        return t.text

    def new_label(self) -> str:
        t = self.name("LABEL")
        if t.text in self.labels:
            self.error(f"relation {t.text} is already defined", tok=t)
        self.labels.add(t.text)
        return t.text

    # character expressions

    def char_expr(self) -> CharExpr:
        if self.tok.kind == "INT" and self.tok.text == "1":
            self.pos += 1
            return CharExpr()
        acc = self.char_factor()
        while self.accept("*"):
            acc = acc * self.char_factor()
        return acc

    def char_factor(self) -> CharExpr:
        t = self.tok
        name = self.char_ref()
        conj = check = False
        if self.accept("."):
            which = self.name("c or v")
            if which.text not in ("c", "v"):
                self.error(f"unexpected {which.show()}", ["c", "v"], tok=which)
            conj = which.text == "c"
            check = which.text == "v"
        home = None
        if self.accept("@"):
            home = self.field_ref()
        try:
            atom = self.session.atom(name, conj or check, home)
        except SessionError as exc:
            self.error(str(exc), tok=t)
        e = self.rational() if self.accept("^") else Fraction(1)
        return CharExpr.of(atom, -e if check else e)

    # monomials

    def where(self) -> frozenset:
        def emb():
            barred = self.accept("~")
            t = self.name("EMBEDDING")
            if not (t.text[:1] == "s" and t.text[1:].isdigit() and int(t.text[1:]) >= 1):
                self.error(f"bad embedding {t.text}", ["s1", "s2", "..."], tok=t)
            return EmbeddingRef(int(t.text[1:]), barred)

        if self.accept("{"):
            items = [emb()]
            while self.accept(","):
                items.append(emb())
            self.expect("}")
            return frozenset(items)
        return frozenset([emb()])

    SYMBOL_STARTS = ("2pii", "P_F(...)", "G(...)", "D(...)", "U(...)", "AUTP(...)", "ARCH(...)", "L[...]")

    def symbol(self):
        t = self.tok
        if t.kind == "TWOPII":
            self.pos += 1
            return TWO_PI_I
        if t.kind != "NAME":
            self.error(f"unexpected {t.show()}", self.SYMBOL_STARTS)
        self.pos += 1
        if t.text.startswith("P_") and len(t.text) > 2:
            fieldname = t.text[2:]
            if fieldname not in self.session.fields:
                self.error(f"field {fieldname} is not declared", tok=t)
            self.expect("(")
            expr = self.char_expr()
            self.expect(";")
            where = self.where()
            self.expect(")")
            try:
                self.session.check_expr(expr, fieldname)
            except SessionError as exc:
                self.error(str(exc), tok=t)
            if any(e.index > self.session.fields[fieldname].degree for e in where):
                self.error(f"embedding index out of range for {fieldname}", tok=t)
            return Period(fieldname, expr, where)
        if t.text == "L":
            if self.tok.kind != "LABEL":
                self.error(f"unexpected {self.tok.show()}", ["[label]"])
            obj = self.tok.text.strip()
            self.pos += 1
            self.expect("(")
            q = self.rational()
            self.expect(")")
            return LValue(obj, q)
        if t.text in ("D", "G", "U"):
            self.expect("(")
            if t.text == "D":
                arg = self.field_ref()
            elif t.text == "G":
                a = self.name("DIRICHLET")
                if a.text not in self.session.dirichlet:
                    self.error(f"Dirichlet character {a.text} is not declared", tok=a)
                arg = a.text
            else:
                arg = self.coefficient_ref()
            self.expect(")")
            return {"D": DiscSqrt, "G": Gauss, "U": Unit}[t.text](arg)
        if t.text == "AUTP":
            self.expect("(")
            rep = self.rep_ref()
            self.expect(",")
            s = self.integer()
            self.expect(")")
            return AutP(rep, s)
        if t.text == "ARCH":
            self.expect("(")
            m = self.rational()
            self.expect(",")
            r1 = self.rep_ref()
            self.expect(",")
            r2 = self.rep_ref()
            self.expect(")")
            return Arch(m, r1, r2)
        self.error(f"unknown symbol {t.text}", self.SYMBOL_STARTS, tok=t)

    def monomial(self) -> Monomial:
        if self.tok.kind == "INT" and self.tok.text == "1":
            self.pos += 1
            return Monomial()
        items = []
        while True:
            sym = self.symbol()
            e = self.rational() if self.accept("^") else Fraction(1)
            items.append((sym, e))
            if not self.accept("*"):
                return Monomial.build(items)

    # statements

    def statement(self):
        t = self.tok
        if t.kind != "NAME" or t.text not in KEYWORDS:
            self.error(f"unexpected {t.show()}", KEYWORDS)
        self.pos += 1
        node = getattr(self, "st_" + t.text)()
        self.end()
        return node

    def declare(self, node, tok: Token):
        try:
            apply_declaration(self.session, node)
        except (SessionError, FieldError, CharacterError, InductionError) as exc:
            self.error(str(exc), tok=tok)
        return node

    def st_script(self):
        return ScriptHeader(self.name().text)

    def fresh(self) -> Token:
        t = self.name()
        s = self.session
        if t.text in set(s.fields) | set(s.characters) | set(s.reps) | s.dirichlet | s.lattice.names:
            self.error(f"name {t.text} is already declared", tok=t)
        return t

    def st_field(self):
        t = self.fresh()
        if self.accept("compositum"):
            left = self.field_ref()
            right = self.field_ref()
            return self.declare(CompositumDecl(t.text, left, right), t)
        self.expect("degree")
        degree = self.integer()
        cyclic, generator = True, None
        if self.accept("noncyclic"):
            cyclic = False
        else:
            self.accept("cyclic")
        if self.accept("perm"):
            generator = []
            while self.tok.kind == "INT":
                generator.append(self.integer())
            if not generator:
                self.error(f"unexpected {self.tok.show()}", ["INT"])
            generator = tuple(generator)
        else:
            self.accept("shift")
        return self.declare(FieldDecl(t.text, degree, cyclic, generator), t)

    def st_coefficient(self):
        t = self.fresh()
        contains = []
        if self.accept("contains"):
            contains.append(self.coefficient_ref())
            while self.tok.kind == "NAME":
                contains.append(self.coefficient_ref())
        return self.declare(CoefficientDecl(t.text, tuple(contains)), t)

    def st_absorb(self):
        t = self.tok
        sym = self.symbol()
        self.expect("in")
        return self.declare(AbsorbDecl(sym, self.coefficient_ref()), t)

    def st_character(self):
        t = self.fresh()
        self.expect("on")
        fieldname = self.field_ref()
        self.expect("inf")
        exps = []
        while self.at("("):
            self.expect("(")
            a = self.rational()
            self.expect(",")
            b = self.rational()
            self.expect(")")
            exps.append((a, b))
        if not exps:
            self.error(f"unexpected {self.tok.show()}", ["("])
        flags, rational, factors = set(), None, None
        while True:
            if self.tok.kind == "NAME" and self.tok.text in FLAGS:
                flags.add(self.tok.text)
                self.pos += 1
            elif self.accept("rational"):
                rational = self.name("FIELD").text
            else:
                break
        if self.accept("="):
            ftok = self.tok
            factors = self.char_expr()
            try:
                self.session.check_expr(factors, fieldname)
            except SessionError as exc:
                self.error(str(exc), tok=ftok)
        node = CharacterDecl(t.text, fieldname, tuple(exps), tuple(f for f in FLAGS if f in flags), rational, factors)
        return self.declare(node, t)

    def st_gauss(self):
        t = self.fresh()
        link = self.char_expr() if self.accept("=") else None
        return self.declare(GaussDecl(t.text, link), t)

    def st_rep(self):
        t = self.fresh()
        self.expect("=")
        self.expect("induce")
        return self.declare(RepDecl(t.text, self.char_ref()), t)

    def st_axiom(self):
        k = self.name("AXIOM")
        if k.text not in AXIOMS:
            self.error(f"unknown axiom {k.text}", AXIOMS, tok=k)
        expr, args = None, ()
        if k.text == "blasius":
            expr = self.char_expr()
            self.expect("on")
            args = (self.field_ref(),)
        elif k.text in ("main", "induction"):
            args = (self.rep_ref(), self.char_ref())
        else:
            args = (self.rep_ref(), self.rep_ref())
            if k.text == "induction_pair":
                self.expect("on")
                args += (self.field_ref(),)
        self.expect("at")
        q = self.rational()
        self.expect("as")
        return AxiomStep(k.text, args, q, self.new_label(), expr)

    def st_period(self):
        rep = self.rep_ref()
        s = self.integer()
        self.expect("as")
        return PeriodStep(rep, s, self.new_label())

    def st_eliminate(self):
        items = []
        while not self.at("using"):
            if self.tok.kind == "NAME" and self.tok.text in ("L", "AUTP") and self.peek().text not in ("(",) \
                    and self.peek().kind != "LABEL":
                items.append(self.tok.text)
                self.pos += 1
            else:
                items.append(self.symbol())
        if not items:
            self.error("nothing to eliminate", ["L", "AUTP", "symbol"])
        self.expect("using")
        sources = [self.label_ref()]
        while not self.at("as"):
            sources.append(self.label_ref())
        self.expect("as")
        return EliminateStep(tuple(items), tuple(sources), self.new_label())

    def st_solve(self):
        sym = self.symbol()
        self.expect("from")
        src = self.label_ref()
        self.expect("as")
        return SolveStep(sym, src, self.new_label())

    def relation_sides(self):
        lhs = self.monomial()
        self.expect("~")
        return lhs, self.monomial()

    def st_assert(self):
        lhs, rhs = self.relation_sides()
        modulo = self.coefficient_ref() if self.accept("mod") else "Q"
        return AssertStep(lhs, rhs, modulo)

    def st_target(self):
        lhs, rhs = self.relation_sides()
        self.expect("mod")
        modulo = self.coefficient_ref()
        source = self.label_ref() if self.accept("from") else None
        return TargetStep(lhs, rhs, modulo, source)

    def parse(self) -> Script:
        nodes = []
        while self.tok.kind != "EOF":
            if self.tok.kind == "NL":
                self.pos += 1
                continue
            nodes.append(self.statement())
        return Script(tuple(nodes))


def parse(source: str) -> Script:
    return Parser(source).parse()


def parse_monomial(text: str, session: Session | None = None) -> Monomial:
    p = Parser(text, session)
    while p.tok.kind == "NL":
        p.pos += 1
    mono = p.monomial()
    if p.tok.kind != "NL":
        p.error(f"unexpected {p.tok.show()}", ["*", "end of line"])
    return mono


def parse_inftype(text: str) -> tuple:
    """``(2,-2) (0,0)`` as a tuple of rational pairs."""
    p = Parser(text)
    exps = []
    while p.at("("):
        p.expect("(")
        a = p.rational()
        p.expect(",")
        b = p.rational()
        p.expect(")")
        exps.append((a, b))
    if not exps or p.tok.kind != "NL":
        p.error(f"unexpected {p.tok.show()}", ["("])
    return tuple(exps)


def parse_vector(text: str) -> tuple:
    """``2,0,-2`` or ``2 0 -2`` as a tuple of rationals."""
    p = Parser(text.replace(",", " "))
    out = []
    while p.tok.kind != "NL" and p.tok.kind != "EOF":
        out.append(p.rational())
    if not out:
        p.error("empty vector", ["INT"])
    return tuple(out)


# printing


def _pair(a, b) -> str:
    return f"({fmt_q(a)},{fmt_q(b)})"


def _expr(expr: CharExpr) -> str:
    return str(expr)


def print_statement(node) -> str:
    if isinstance(node, ScriptHeader):
        return f"script {node.name}"
    if isinstance(node, FieldDecl):
        kind = "cyclic" if node.cyclic else "noncyclic"
        gen = "shift" if node.generator is None else "perm " + " ".join(map(str, node.generator))
        return f"field {node.name} degree {node.degree} {kind} {gen}"
    if isinstance(node, CompositumDecl):
        return f"field {node.name} compositum {node.left} {node.right}"
    if isinstance(node, CoefficientDecl):
        tail = " contains " + " ".join(node.contains) if node.contains else ""
        return f"coefficient {node.name}{tail}"
    if isinstance(node, AbsorbDecl):
        return f"absorb {node.symbol} in {node.field}"
    if isinstance(node, CharacterDecl):
        parts = [f"character {node.name} on {node.field} inf", " ".join(_pair(a, b) for a, b in node.exps)]
        parts += list(node.flags)
        if node.rational:
            parts.append(f"rational {node.rational}")
        if node.factors is not None:
            parts.append(f"= {_expr(node.factors)}")
        return " ".join(parts)
    if isinstance(node, GaussDecl):
        return f"gauss {node.name}" + (f" = {_expr(node.link)}" if node.link is not None else "")
    if isinstance(node, RepDecl):
        return f"rep {node.name} = induce {node.char}"
    if isinstance(node, AxiomStep):
        at = f"at {fmt_q(node.at)} as {node.label}"
        if node.kind == "blasius":
            return f"axiom blasius {_expr(node.expr)} on {node.args[0]} {at}"
        if node.kind == "induction_pair":
            return f"axiom induction_pair {node.args[0]} {node.args[1]} on {node.args[2]} {at}"
        return f"axiom {node.kind} {' '.join(node.args)} {at}"
    if isinstance(node, PeriodStep):
        return f"period {node.rep} {node.s} as {node.label}"
    if isinstance(node, EliminateStep):
        items = " ".join(str(i) for i in node.items)
        return f"eliminate {items} using {' '.join(node.sources)} as {node.label}"
    if isinstance(node, SolveStep):
        return f"solve {node.symbol} from {node.source} as {node.label}"
    if isinstance(node, AssertStep):
        return f"assert {node.lhs} ~ {node.rhs} mod {node.modulo}"
    if isinstance(node, TargetStep):
        tail = f" from {node.source}" if node.source else ""
        return f"target {node.lhs} ~ {node.rhs} mod {node.modulo}{tail}"
    raise TypeError(f"cannot print {node!r}")


def print_script(script) -> str:
    nodes = script.statements if isinstance(script, Script) else script
    return "\n".join(print_statement(n) for n in nodes) + "\n"


__all__ = [
    "ParseError", "Script", "Token", "parse", "parse_inftype", "parse_monomial", "parse_vector",
    "print_script", "print_statement", "tokenize", "TwoPiI", "Atom", "BASE_FIELD",
]
