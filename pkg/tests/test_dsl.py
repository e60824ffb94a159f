from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from periodcalc.characters import Atom, CharExpr
from periodcalc.derivations import arch_script, default_a, default_pair, period_script
from periodcalc.dsl import ParseError, parse, parse_monomial, print_script, tokenize
from periodcalc.fields import EmbeddingRef
from periodcalc.periods import TWO_PI_I, DiscSqrt, Gauss, Monomial, Period, Unit
from periodcalc.script import (
    AssertStep,
    CharacterDecl,
    CoefficientDecl,
    CompositumDecl,
    FieldDecl,
    GaussDecl,
    ScriptHeader,
)

ROOT = Path(__file__).resolve().parent.parent
SHIPPED = sorted((ROOT / "scripts").glob("*.pcs"))


def golden_corpus():
    yield from (p.read_text() for p in SHIPPED)
    for n in (2, 3, 4, 5):
        yield print_script(period_script(default_a(n)))
    for n, m in ((2, 1), (3, 0), (4, 2)):
        yield print_script(arch_script(*default_pair(n, m), m))


def test_shipped_scripts_exist():
    assert {p.stem for p in SHIPPED} >= {
        "oddfinal_n3", "oddfinal_n5", "evenfinal_n2", "evenfinal_n4", "arch_n3", "arch_n4"}


@pytest.mark.parametrize("text", list(golden_corpus()))
def test_round_trip_golden(text):
    script = parse(text)
    printed = print_script(script)
    again = parse(printed)
    assert again.statements == script.statements
    assert print_script(again) == printed


def test_field_statement():
    (node,) = parse("field F degree 3 cyclic shift").statements
    assert node == FieldDecl("F", 3, True, None)
    (node,) = parse("field G degree 4 noncyclic perm 2 1 4 3").statements
    assert node == FieldDecl("G", 4, False, (2, 1, 4, 3))


def test_character_statement():
    src = "field F degree 3\ncharacter chi on F inf (2,-2) (1,-1) (-2,2) csd"
    node = parse(src).statements[1]
    assert node == CharacterDecl("chi", "F", ((2, -2), (1, -1), (-2, 2)), ("csd",))


def test_undeclared_field_is_reported_at_its_token():
    src = "field F degree 3\ncharacter chi on G inf (2,-2) (1,-1) (-2,2) csd"
    with pytest.raises(ParseError) as err:
        parse(src)
    assert (err.value.line, err.value.col) == (2, 18)
    assert "G" in err.value.message


def test_unexpected_token_lists_expectations():
    with pytest.raises(ParseError) as err:
        parse("field F degree three")
    assert err.value.line == 1 and err.value.col == 16
    assert "INT" in err.value.expected
    assert str(err.value).startswith("1:16:")


def test_duplicate_names_rejected():
    with pytest.raises(ParseError, match="already"):
        parse("field F degree 3\nfield F degree 2")


def test_unknown_label():
    with pytest.raises(ParseError) as err:
        parse("solve 2pii from X as Y")
    assert err.value.col == 17


def test_semantic_errors_surface_as_parse_errors():
    with pytest.raises(ParseError, match="order"):
        parse("field F degree 3 cyclic perm 2 1 3")
    with pytest.raises(ParseError, match="conjugate self-dual"):
        parse("field F degree 1\ncharacter chi on F inf (1,0) csd")


def test_comments_and_blank_lines():
    script = parse("# header\n\nscript demo  # name\nfield F degree 2\n")
    assert script.name == "demo"
    assert [t.kind for t in tokenize("2pii # x")] == ["TWOPII", "NL", "EOF"]


def test_parse_monomial():
    mono = parse_monomial("2pii^-3 * D(K) * G(eps_K)^(1/2) * U(K)")
    assert mono == Monomial.build({TWO_PI_I: -3, DiscSqrt("K"): 1, Gauss("eps_K"): Fraction(1, 2), Unit("K"): 1})


# random well-formed scripts

NAMES = st.sampled_from(["alpha", "beta", "gamma", "delta", "mu", "nu"])
half = st.integers(-12, 12).map(lambda k: Fraction(k, 2))


@st.composite
def scripts(draw):
    nodes = [ScriptHeader(draw(st.sampled_from(["demo", "x1", "random_case"])))]
    degrees = {"K": 1}
    for name in ("F", "G")[: draw(st.integers(0, 2))]:
        d = draw(st.integers(1, 4))
        nodes.append(FieldDecl(name, d))
        degrees[name] = d
    if "G" in degrees:
        nodes.append(CompositumDecl("L", "F", "G"))
        degrees["L"] = degrees["F"] * degrees["G"]
    coeffs = ["Q", "K"]
    if draw(st.booleans()):
        nodes.append(CoefficientDecl("E1", ("K",)))
        coeffs.append("E1")
    chars = {}
    for name in draw(st.lists(NAMES, unique=True, max_size=4)):
        fld = draw(st.sampled_from(sorted(degrees)))
        n = degrees[fld]
        csd = draw(st.booleans())
        if csd:
            a = draw(st.lists(st.integers(-9, 9), min_size=n, max_size=n))
            exps = tuple((Fraction(x), Fraction(-x)) for x in a)
        else:
            exps = tuple(draw(st.lists(st.tuples(half, half), min_size=n, max_size=n)))
        rational = draw(st.sampled_from([None, "Q", "K"]))
        nodes.append(CharacterDecl(name, fld, exps, ("csd",) if csd else (), rational))
        chars[name] = fld
    k_chars = [c for c, f in chars.items() if f == "K"]
    if draw(st.booleans()):
        link = None
        if k_chars and draw(st.booleans()):
            c = draw(st.sampled_from(k_chars))
            link = CharExpr.build({Atom(c, "K", "K", False, False): 1,
                                   Atom(c, "K", "K", True, False): 1,
                                   Atom("norm", "K", "K", False, True): draw(st.integers(-3, 3)) or 1})
        nodes.append(GaussDecl("g0", link))
    for _ in range(draw(st.integers(0, 3))):
        terms = {TWO_PI_I: draw(st.integers(-5, 5))}
        for fld in draw(st.lists(st.sampled_from(sorted(degrees)), max_size=2)):
            terms[DiscSqrt(fld)] = draw(half)
        for c in draw(st.lists(st.sampled_from(sorted(chars)), max_size=2)) if chars else []:
            fld = chars[c]
            idx = draw(st.lists(st.integers(1, degrees[fld]), unique=True, min_size=1))
            where = {EmbeddingRef(i, draw(st.booleans())) for i in idx}
            atom = Atom(c, fld, fld, draw(st.booleans()), False)
            terms[Period(fld, CharExpr.of(atom, draw(st.integers(-2, 2)) or 1), where)] = draw(half)
        mono = Monomial.build(terms)
        nodes.append(AssertStep(mono, Monomial.build({Gauss("eps_K"): draw(st.integers(-2, 2))}),
                                draw(st.sampled_from(coeffs))))
    return nodes


@settings(max_examples=150, deadline=None)
@given(scripts())
def test_round_trip_random(nodes):
    text = print_script(nodes)
    script = parse(text)
    assert list(script.statements) == nodes
    assert print_script(script) == text


def test_grammar_doc_example_verifies():
    from periodcalc.derivations import VERIFIED, verify_script

    doc = (ROOT / "docs" / "grammar.md").read_text()
    example = doc.split("## Example")[1].split("```")[1]
    report = verify_script(parse(example).statements)
    assert report.verdict == VERIFIED, report.to_text()
