"""Command line front end.

Exit codes: 0 when everything verified, 1 on a verification failure, 2 on
bad input (usage, parse or reference errors).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict
from fractions import Fraction
from pathlib import Path

from .characters import (
    CharacterError,
    CharacterSpec,
    InfinityType,
    compatible_cm_type,
    fmt_q,
    is_primitive_at_infinity,
    predicates,
)
from .derivations import (
    FAILED,
    AxiomError,
    DerivationReport,
    ScriptError,
    arch_script,
    default_a,
    default_pair,
    derive_archimedean,
    period_script,
    verify_script,
    run_steps,
)
from .dsl import ParseError, parse, parse_inftype, parse_monomial, parse_vector, print_script
from .fields import BASE_FIELD, CMFieldSpec, FieldError
from .gauss import DirichletError, all_characters, check_magnitude, gauss_sum
from .hodge import (
    HodgeError,
    HodgeType,
    critical_range_character,
    critical_range_closed,
    critical_range_pair,
)
from .induction import InductionError, induce, phi_from_a
from .periods import NormalizationError, normalize_traced
from .session import Session, SessionError

SCHEMA = 1
INPUT_ERRORS = (ParseError, ScriptError, SessionError, FieldError, CharacterError, InductionError,
                HodgeError, AxiomError, DirichletError, NormalizationError, OSError, ValueError)


class InputError(Exception):
    pass


def _color_enabled(stream) -> bool:
    env = os.environ.get("PERIODCALC_COLOR", "").lower()
    if env in ("0", "never", "plain", "no", "off"):
        return False
    if env in ("1", "always", "yes", "on"):
        return True
    return hasattr(stream, "isatty") and stream.isatty()


def _paint(text: str, ok: bool, enabled: bool) -> str:
    if not enabled:
        return text
    return f"\033[{32 if ok else 31}m{text}\033[0m"


class Output:
    def __init__(self, args):
        self.json = args.json
        self.color = _color_enabled(sys.stdout)
        self.doc = {"schema": SCHEMA, "command": " ".join(args.argv), "results": []}
        self.lines: list[str] = []

    def add(self, text: str, data: dict):
        self.lines.append(text)
        self.doc["results"].append(data)

    def report(self, rep: DerivationReport, verbose: bool = False):
        text = rep.to_text(verbose)
        head, _, rest = text.partition("\n")
        head = head.replace(rep.verdict, _paint(rep.verdict, rep.ok, self.color), 1)
        self.add(head + ("\n" + rest if rest else ""), {"kind": "report", **rep.to_dict()})

    def finish(self, code: int) -> int:
        self.doc["exit"] = code
        if self.json:
            print(json.dumps(self.doc, indent=2, default=str))
        else:
            for line in self.lines:
                print(line)
        return code


def _q(x) -> str:
    return "inf" if isinstance(x, float) else fmt_q(x)


def _range(rng) -> dict:
    return {"lo": _q(rng.lo), "hi": _q(rng.hi), "empty": rng.empty}


def cmd_check_character(args, out: Output) -> int:
    exps = parse_inftype(args.inftype)
    t = InfinityType(args.field, exps)
    pr = predicates(t)
    data = {"kind": "character", "inftype": str(t), **{k: v for k, v in asdict(pr).items()}}
    lines = [f"infinity type: {t}"]
    lines += [f"  {k}: {v}" for k, v in asdict(pr).items()]
    if pr.motivic and pr.critical:
        phi = compatible_cm_type(t)
        rng = critical_range_character(t)
        data.update(cm_type=str(phi), critical_range=_range(rng))
        lines += [f"  compatible CM type: {phi}", f"  critical range: {rng}"]
    # only the infinity-type half of primitivity is decidable here
    prim = is_primitive_at_infinity(t, CMFieldSpec(args.field, len(exps)))
    data["primitive_necessary_condition"] = prim
    lines.append(f"  primitivity: {'necessary condition holds' if prim else 'fails at infinity'}")
    out.add("\n".join(lines), data)
    return 0


def cmd_critical_range(args, out: Output) -> int:
    if args.hodge:
        pairs = parse_inftype(args.hodge)
        weights = {p + q for p, q in pairs}
        if len(weights) != 1:
            raise InputError("Hodge pairs must share one weight")
        h = HodgeType(int(weights.pop()), tuple((int(p), int(q)) for p, q in pairs))
        rng, what = critical_range_closed(h), f"Hodge type {args.hodge}"
    elif args.character:
        rng, what = critical_range_character(InfinityType(BASE_FIELD, parse_inftype(args.character))), \
            f"character {args.character}"
    elif args.c and args.eta:
        eta = InfinityType(BASE_FIELD, parse_inftype(args.eta))
        c = tuple(sorted(parse_vector(args.c), reverse=True))
        rng = critical_range_pair(c, eta)
        what = f"Pi with c = {', '.join(map(fmt_q, c))} twisted by {args.eta} (variable m - (n-1)/2)"
    else:
        raise InputError("give --hodge, --character, or both --c and --eta")
    out.add(f"{what}: critical range {rng}", {"kind": "critical-range", "input": what, **_range(rng)})
    return 0


def cmd_induce(args, out: Output) -> int:
    a = parse_vector(args.a)
    n = len(a)
    spec = CharacterSpec("chi", InfinityType.from_a("F", a), csd=True, supercuspidal=True)
    rep = induce(spec, CMFieldSpec("F", n))
    lines = [f"Pi(chi), n = {n} ({rep.parity})", "  c = " + " ".join(fmt_q(x) for x in rep.c)]
    phis = {}
    for s in range(n + 1):
        phi = phi_from_a("F", spec.inftype.a, s)
        phis[s] = str(phi)
        lines.append(f"  Phi_{s} = {phi}")
    out.add("\n".join(lines), {"kind": "induce", "n": n, "parity": rep.parity,
                               "c": [fmt_q(x) for x in rep.c], "cm_types": phis})
    return 0


def _session_for(path: str | None) -> Session:
    if not path:
        return Session()
    from .dsl import Parser

    p = Parser(Path(path).read_text())
    p.parse()
    return p.session


def cmd_normalize(args, out: Output) -> int:
    session = _session_for(args.session)
    mono = parse_monomial(args.monomial, session)
    if args.mod not in session.lattice.names and args.mod not in session.fields:
        raise InputError(f"unknown field {args.mod}")
    nf, trace = normalize_traced(mono, session, args.mod)
    lines = [f"{mono}  =>  {nf}   (mod {args.mod})"]
    if args.trace:
        lines += [f"  {t}" for t in trace]
    out.add("\n".join(lines), {"kind": "normalize", "input": str(mono), "normal_form": str(nf),
                               "modulo": args.mod, "trace": [str(t) for t in trace]})
    return 0


def _verify_file(path: str) -> tuple[str, DerivationReport | Exception]:
    try:
        script = parse(Path(path).read_text())
        name = script.name or Path(path).stem
        return name, verify_script(script.statements, name)
    except INPUT_ERRORS as exc:
        return Path(path).stem, InputError(f"{path}: {exc}")


def cmd_verify(args, out: Output) -> int:
    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        results = list(pool.map(_verify_file, args.scripts))
    code = 0
    for name, res in sorted(results, key=lambda r: r[0]):
        if isinstance(res, Exception):
            out.add(f"{name}: error: {res}", {"kind": "error", "name": name, "message": str(res)})
            code = 2
        else:
            out.report(res, args.trace)
            if res.verdict == FAILED:
                code = max(code, 1)
    return code


def cmd_derive(args, out: Output) -> int:
    if args.which in ("odd", "even"):
        if args.a:
            a = parse_vector(args.a)
        elif args.n:
            a = default_a(args.n)
        else:
            raise InputError("give --n or --a")
        n = len(a)
        if (n % 2 == 1) != (args.which == "odd"):
            raise InputError(f"n = {n} is not {args.which}")
        if args.s is not None and not 0 <= args.s <= n:
            raise InputError(f"s = {args.s} out of range 0..{n}")
        nodes = period_script(a, s_values=None if args.s is None else [args.s])
    else:
        if args.a and args.a2:
            a, a2 = parse_vector(args.a), parse_vector(args.a2)
        elif args.n:
            a, a2 = default_pair(args.n, args.m)
        else:
            raise InputError("give --n or both --a and --a2")
        nodes = arch_script(a, a2, args.m)
    if args.emit_script:
        Path(args.emit_script).write_text(print_script(nodes))
    if args.which == "arch":
        rep = derive_archimedean(a, a2, args.m)
    else:
        rep = run_steps(Session(), nodes)
    out.report(rep, args.trace)
    return 1 if rep.verdict == FAILED else 0


def cmd_gauss(args, out: Output) -> int:
    if args.f < 1:
        raise InputError("modulus must be positive")
    code = 0
    for k, eps in enumerate(all_characters(args.f)):
        if args.primitive and not eps.primitive:
            continue
        g = gauss_sum(eps)
        ok = check_magnitude(eps) if eps.primitive else None
        if ok is False:
            code = 1
        mag = {True: "|G|^2 = f", False: "|G|^2 != f", None: "skipped (imprimitive)"}[ok]
        out.add(
            f"eps_{k} mod {args.f}: order {eps.order}, conductor {eps.conductor}, "
            f"G = {g.real:+.12f} {g.imag:+.12f}i, {mag}",
            {"kind": "gauss", "index": k, "modulus": args.f, "order": eps.order, "conductor": eps.conductor,
             "primitive": eps.primitive, "real": g.real, "imag": g.imag, "magnitude_ok": ok},
        )
    return code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="periodcalc", description="Symbolic period relations for induced representations.")
    p.add_argument("--json", action="store_true", help="emit a JSON document (schema 1)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check-character", help="predicates of an infinity type")
    s.add_argument("inftype", help='exponent pairs, e.g. "(2,-2) (0,0) (-2,2)"')
    s.add_argument("--field", default="F")
    s.set_defaults(func=cmd_check_character)

    s = sub.add_parser("critical-range", help="critical integers of a Hodge type, character or twisted Pi")
    s.add_argument("--hodge", help='Hodge pairs, e.g. "(3,-1) (-1,3)"')
    s.add_argument("--character", help="infinity type over K")
    s.add_argument("--c", help="exponents of Pi, e.g. 2,0,-2")
    s.add_argument("--eta", help='infinity type of eta, e.g. "(0,1)"')
    s.set_defaults(func=cmd_critical_range)

    s = sub.add_parser("induce", help="c-vector and CM types of Pi(chi)")
    s.add_argument("a", help="a-vector of a conjugate self-dual chi, e.g. 2,0,-2")
    s.set_defaults(func=cmd_induce)

    s = sub.add_parser("normalize", help="normal form of a monomial")
    s.add_argument("monomial")
    s.add_argument("--session", help="script whose declarations are in scope")
    s.add_argument("--mod", default="Q")
    s.add_argument("--trace", action="store_true")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("verify", help="replay scripts")
    s.add_argument("scripts", nargs="+")
    s.add_argument("--jobs", type=int, default=4)
    s.add_argument("--trace", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("derive", help="run a canned derivation")
    s.add_argument("which", choices=("odd", "even", "arch"))
    s.add_argument("--n", type=int)
    s.add_argument("--m", type=int, default=0, help="arch only: L(m + 1/2, Pi x Pi')")
    s.add_argument("--a")
    s.add_argument("--a2")
    s.add_argument("--s", type=int)
    s.add_argument("--emit-script", metavar="PATH")
    s.add_argument("--trace", action="store_true")
    s.set_defaults(func=cmd_derive)

    s = sub.add_parser("gauss", help="Gauss sums of the Dirichlet characters mod f")
    s.add_argument("f", type=int)
    s.add_argument("--primitive", action="store_true")
    s.set_defaults(func=cmd_gauss)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.argv = ["periodcalc", *argv]
    out = Output(args)
    try:
        code = args.func(args, out)
    except (InputError, *INPUT_ERRORS) as exc:
        if args.json:
            out.doc["error"] = str(exc)
            return out.finish(2)
        print(f"periodcalc: error: {exc}", file=sys.stderr)
        return 2
    return out.finish(code)


if __name__ == "__main__":
    sys.exit(main())
