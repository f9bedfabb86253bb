"""Command-line front end.  Every command prints one JSON report on stdout."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .bench import DEFAULT_LENGTHS, bench
from .clifford import c_multiply, c_normal_form, count_bound
from .kgroup import build_x, build_z, is_trivial, k0_multiply, k0_normal_form, normal_form
from .oracles import RelatorSoupConfig, nontrivial_witness, relator_soup, soup_of_length, write_corpus
from .presentations import DerivationError, clifford_presentation, k_presentation
from .replab import (
    FROBENIUS,
    HlpParams,
    NormKind,
    StabilityPreconditionError,
    check_table,
    commutant_dimension,
    compressed_rep_search,
    defect_bound_from_derivation,
    exact_clifford_rep,
    fit_exact_rep,
    hlp_lower_bound,
    hom_defect,
    lemma_clifford_check,
    lift_to_table,
    matrix_norm,
    matrix_to_json,
    perturb,
    relation_defect,
    table_from_json,
    table_to_json,
)
from .words import Alphabet, AlphabetError, Word, WordSyntaxError, concat, invert, parse_word

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "hlprofile report",
    "type": "object",
    "required": ["command", "inputs", "result", "instrumentation", "version"],
    "additionalProperties": False,
    "properties": {
        "command": {"type": "string"},
        "inputs": {"type": "object"},
        "result": {"type": "object"},
        "instrumentation": {
            "type": "object",
            "required": ["micros"],
            "properties": {"micros": {"type": "integer", "minimum": 0}},
        },
        "seed": {"type": "integer"},
        "version": {"type": "string"},
    },
}

ERROR_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "hlprofile error",
    "type": "object",
    "required": ["command", "error", "version"],
    "additionalProperties": False,
    "properties": {
        "command": {"type": ["string", "null"]},
        "error": {
            "type": "object",
            "required": ["kind", "type", "message"],
            "properties": {
                "kind": {"enum": ["usage", "domain"]},
                "type": {"type": "string"},
                "message": {"type": "string"},
                "position": {"type": "integer"},
            },
        },
        "version": {"type": "string"},
    },
}

RANDOMIZED = {"fuzz", "rep-defect", "rep-search", "derive-bound", "bench"}
DOMAIN_ERRORS = (WordSyntaxError, AlphabetError, DerivationError, StabilityPreconditionError,
                 ValueError, ArithmeticError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--group", choices=["cn", "c", "k0", "k"], default="k")
    p.add_argument("--n", type=int)
    p.add_argument("--norm", default="frobenius")
    p.add_argument("--seed", type=int)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--json-indent", type=int)
    p.add_argument("--out", type=Path)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="hlprofile", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    add("normal-form", "normal form of a word").add_argument("word")
    add("decide", "decide whether a word is trivial").add_argument("word")
    p = add("equal", "decide whether two words are equal")
    p.add_argument("word1")
    p.add_argument("word2")
    p = add("mult", "multiply two normal forms")
    p.add_argument("word1")
    p.add_argument("word2")
    add("build-z", "word z(k) equal to z^k in K").add_argument("k", type=int)
    add("build-x", "word x(k) equal to x_k in K").add_argument("k", type=int)
    p = add("fuzz", "cross-check the decision procedure on generated words")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-length", type=int, default=2000)
    add("rep-exact", "exact irreducible representation of C(n)")
    p = add("rep-defect", "relation defect of a perturbed irrep")
    p.add_argument("--magnitude", type=float, default=1e-3)
    p = add("rep-lift", "lift a (perturbed) irrep to a table over C(n)")
    p.add_argument("--magnitude", type=float, default=0.0)
    p = add("rep-fit", "fit an exact representation to a table")
    p.add_argument("--magnitude", type=float, default=0.0)
    p.add_argument("--table", type=Path, help="HomTable JSON file instead of a perturbed irrep")
    p = add("rep-lemma-check", "dimension verdict from (d, n, epsilon, deltaJ)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--delta-j", type=float, required=True)
    p = add("rep-search", "local search for small tables with psi(J) far from 1")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--iterations", type=int, default=1000)
    p = add("hlp-bound", "dimension lower bound from the constant chain")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--c4", type=float, required=True)
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--iso-exponent", type=int, default=26)
    p.add_argument("--log-exponent", type=int, default=52)
    p = add("derive-bound", "defect bound from a derivation vs measured defect")
    p.add_argument("--factors", type=int, default=10)
    p.add_argument("--conjugator-length", type=int, default=6)
    p.add_argument("--magnitude", type=float, default=1e-3)
    p.add_argument("--eps", type=float, help="epsilon for K words (no rep is measured)")
    p = add("bench", "time the decision procedure against word length")
    p.add_argument("--lengths", type=lambda s: [int(v) for v in s.split(",")],
                   default=list(DEFAULT_LENGTHS))
    p.add_argument("--trials", type=int, default=3)
    return parser


def _alphabet(args) -> Alphabet:
    if args.group == "cn":
        if args.n is None:
            raise UsageError("--group cn needs --n")
        return Alphabet.cn(args.n)
    return Alphabet.from_name(args.group)


def _word(args, text) -> Word:
    return parse_word(text, _alphabet(args))


def _rank(args) -> int:
    if args.n is None:
        raise UsageError(f"{args.command} needs --n")
    return args.n


def _nf_json(nf, alphabet: Alphabet) -> dict:
    return {"form": nf.to_json(), "rendered": str(nf.to_word(alphabet))}


def cmd_normal_form(args):
    w = _word(args, args.word)
    inputs = {"group": args.group, "n": args.n, "word": args.word}
    if w.alphabet.kind in ("cn", "c", "k0"):
        return inputs, _nf_json(normal_form(w), w.alphabet), {}
    reduced = normal_form(w)
    _, trace = is_trivial(w)
    return inputs, {"form": reduced.to_json(), "rendered": str(reduced.to_word()),
                    "pinch_free": reduced.is_pinch_free()}, trace.to_json()


def cmd_decide(args):
    w = _word(args, args.word)
    trivial, trace = is_trivial(w)
    return ({"group": args.group, "n": args.n, "word": args.word, "length": w.length},
            {"trivial": trivial}, trace.to_json())


def cmd_equal(args):
    w1, w2 = _word(args, args.word1), _word(args, args.word2)
    trivial, trace = is_trivial(concat(w1, invert(w2)))
    return ({"group": args.group, "n": args.n, "word1": args.word1, "word2": args.word2},
            {"equal": trivial}, trace.to_json())


def cmd_mult(args):
    w1, w2 = _word(args, args.word1), _word(args, args.word2)
    inputs = {"group": args.group, "n": args.n, "word1": args.word1, "word2": args.word2}
    if w1.alphabet.is_clifford:
        g1, g2 = c_normal_form(w1), c_normal_form(w2)
        product, count = c_multiply(g1, g2)
        result = {"product": _nf_json(product, w1.alphabet), "applications": count.to_json()}
        if w1.alphabet.kind == "cn":
            result["bound"] = count_bound(w1.alphabet.n)
        return inputs, result, {}
    if w1.alphabet.kind == "k0":
        product = k0_multiply(k0_normal_form(w1), k0_normal_form(w2))
        return inputs, {"product": _nf_json(product, w1.alphabet)}, {}
    reduced = normal_form(concat(w1, w2))
    return inputs, {"product": {"form": reduced.to_json(), "rendered": str(reduced.to_word())}}, {}


def _build(args, fn):
    if args.k < 0:
        raise ValueError("k must be >= 0")
    w = fn(args.k)
    return {"k": str(args.k)}, {"word": str(w), "length": w.length}, {}


def cmd_fuzz(args):
    if args.count < 0 or args.max_length < 1:
        raise ValueError("need --count >= 0 and --max-length >= 1")
    soups, witnesses, failures = [], [], []
    max_increment = 0
    for i in range(args.count):
        target = 1 + (args.seed * 7919 + i * 104729) % args.max_length
        w = soup_of_length(target, args.seed * 1_000_003 + i, max_length=args.max_length)
        trivial, trace = is_trivial(w)
        soups.append(w)
        if not trivial:
            failures.append({"kind": "soup", "index": i, "word": str(w)})
        h = trace.max_bit_length_history
        max_increment = max([max_increment] + [b - a for a, b in zip(h, h[1:])])
        v = nontrivial_witness(args.seed * 1_000_003 + i, 1 + i % 12)
        trivial, trace = is_trivial(v)
        witnesses.append(v)
        if trivial:
            failures.append({"kind": "witness", "index": i, "word": str(v)})
    if args.out:
        header = {"seed": args.seed, "count": args.count, "max_length": args.max_length}
        write_corpus(args.out.with_suffix(".trivial.txt"), soups, {**header, "kind": "soup"})
        write_corpus(args.out.with_suffix(".nontrivial.txt"), witnesses,
                     {**header, "kind": "witness"})
    return ({"count": args.count, "max_length": args.max_length},
            {"soups": len(soups), "witnesses": len(witnesses), "disagreements": failures,
             "max_bits_increment": max_increment}, {})


def _rep(args):
    n = _rank(args)
    phi = exact_clifford_rep(n)
    if args.magnitude:
        if args.seed is None:
            raise UsageError("a non-zero --magnitude needs --seed")
        phi = perturb(phi, args.magnitude, args.seed)
    return n, phi


def cmd_rep_exact(args):
    n = _rank(args)
    phi = exact_clifford_rep(n)
    result = {"d": phi.d, "relation_defect": relation_defect(phi, NormKind.parse(args.norm)),
              "commutant_dimension": commutant_dimension(phi)}
    if args.out:
        _dump(args.out, {str(s): matrix_to_json(phi[s]) for s in phi.symbols})
    return {"n": n}, result, {}


def cmd_rep_defect(args):
    n, phi = _rep(args)
    kind = NormKind.parse(args.norm)
    return ({"n": n, "magnitude": args.magnitude, "norm": str(kind)},
            {"d": phi.d, "relation_defect": relation_defect(phi, kind)}, {})


def cmd_rep_lift(args):
    n, phi = _rep(args)
    kind = NormKind.parse(args.norm)
    psi = lift_to_table(phi)
    rd = relation_defect(phi, kind)
    if args.out:
        _dump(args.out, table_to_json(psi))
    return ({"n": n, "magnitude": args.magnitude, "norm": str(kind)},
            {"d": psi.d, "size": len(psi.matrices), "relation_defect": rd,
             "hom_defect": hom_defect(psi, kind), "bound": count_bound(n) * rd,
             "lemma_check": check_table(psi).to_json()}, {})


def cmd_rep_fit(args):
    if args.table:
        psi = table_from_json(json.loads(args.table.read_text()))
        inputs = {"table": str(args.table)}
    else:
        n, phi = _rep(args)
        psi = lift_to_table(phi)
        inputs = {"n": n, "magnitude": args.magnitude}
    fit = fit_exact_rep(psi, args.tolerance, seed=args.seed or 0)
    result = fit.to_json()
    result["gamma_defect"] = hom_defect(fit.gamma)
    if args.out:
        _dump(args.out, {"gamma": table_to_json(fit.gamma), "U": matrix_to_json(fit.isometry)})
    return {**inputs, "tolerance": args.tolerance}, result, {}


def cmd_rep_lemma_check(args):
    n = _rank(args)
    verdict = lemma_clifford_check(args.d, n, args.eps, args.delta_j)
    return ({"d": args.d, "n": n, "eps": args.eps, "deltaJ": args.delta_j},
            verdict.to_json(), {})


def cmd_rep_search(args):
    n = _rank(args)
    report = compressed_rep_search(n, args.d, args.iterations, args.seed)
    return report["inputs"], report["metrics"], {}


def cmd_hlp_bound(args):
    p = HlpParams(args.delta, args.eps, args.c4, args.kappa, args.iso_exponent, args.log_exponent)
    return ({"delta": p.delta, "eps": p.epsilon, "C4": p.C4, "kappa": p.kappa,
             "iso_exponent": p.iso_exponent, "log_exponent": p.log_exponent},
            hlp_lower_bound(p).to_json(), {})


def cmd_derive_bound(args):
    cfg = RelatorSoupConfig(args.factors, args.conjugator_length, args.seed)
    inputs = {"group": args.group, "n": args.n, "factors": args.factors,
              "conjugator_length": args.conjugator_length}
    if args.group == "cn":
        n = _rank(args)
        soup = relator_soup(cfg, clifford_presentation(n))
        phi = perturb(exact_clifford_rep(n), args.magnitude, args.seed)
        eps = relation_defect(phi, FROBENIUS)
        bound = defect_bound_from_derivation(soup.word, soup.derivation, eps, soup.presentation)
        measured = matrix_norm(phi.evaluate(soup.word) - np.eye(phi.d), FROBENIUS)
        result = {"epsilon": eps, "measured": measured}
        inputs["magnitude"] = args.magnitude
    elif args.group == "k":
        if args.eps is None:
            raise UsageError("--group k needs --eps")
        soup = relator_soup(cfg, k_presentation())
        bound = defect_bound_from_derivation(soup.word, soup.derivation, args.eps,
                                             soup.presentation)
        result = {"epsilon": args.eps}
    else:
        raise UsageError("derive-bound supports --group cn or k")
    result.update({"word": str(soup.word), "applications": len(soup.derivation),
                   "bound": bound, "derivation": [s.to_json() for s in soup.derivation]})
    return inputs, result, {}


def cmd_bench(args):
    out = bench(args.lengths, args.trials, args.seed)
    return {"lengths": args.lengths, "trials": args.trials}, out, {}


COMMANDS = {
    "normal-form": cmd_normal_form,
    "decide": cmd_decide,
    "equal": cmd_equal,
    "mult": cmd_mult,
    "build-z": lambda a: _build(a, build_z),
    "build-x": lambda a: _build(a, build_x),
    "fuzz": cmd_fuzz,
    "rep-exact": cmd_rep_exact,
    "rep-defect": cmd_rep_defect,
    "rep-lift": cmd_rep_lift,
    "rep-fit": cmd_rep_fit,
    "rep-lemma-check": cmd_rep_lemma_check,
    "rep-search": cmd_rep_search,
    "hlp-bound": cmd_hlp_bound,
    "derive-bound": cmd_derive_bound,
    "bench": cmd_bench,
}

def _dump(path: Path, data) -> None:
    path.write_text(json.dumps(data) + "\n")


def _emit(obj, indent) -> None:
    sys.stdout.write(json.dumps(obj, indent=indent) + "\n")


def _summary(report) -> str:
    result = report["result"]
    keys = [k for k, v in result.items() if isinstance(v, (bool, int, float, str))][:4]
    return f"{report['command']}: " + ", ".join(f"{k}={result[k]}" for k in keys)


def run(argv) -> tuple[int, dict, int | None]:
    """Run one command; returns (exit code, report or error object, JSON indent)."""
    parser = build_parser()
    command = None
    indent = None
    try:
        args = parser.parse_args(argv)
        command = args.command
        indent = getattr(args, "json_indent", None)
        if command is None:
            raise UsageError("missing subcommand")
        if command in RANDOMIZED and args.seed is None:
            raise UsageError(f"{command} needs --seed")
        start = time.perf_counter()
        inputs, result, instrumentation = COMMANDS[command](args)
        micros = int(round((time.perf_counter() - start) * 1e6))
        instrumentation = {**instrumentation}
        instrumentation.setdefault("micros", micros)
        instrumentation["total_micros"] = micros
        report = {"command": command, "inputs": inputs, "result": result,
                  "instrumentation": instrumentation}
        if args.seed is not None:
            report["seed"] = args.seed
        report["version"] = __version__
        return 0, report, indent
    except UsageError as e:
        return 2, _error(command, "usage", e), indent
    except DOMAIN_ERRORS as e:
        return 1, _error(command, "domain", e), indent


def _error(command, kind, exc) -> dict:
    err = {"kind": kind, "type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, WordSyntaxError):
        err["position"] = exc.position
    return {"command": command, "error": err, "version": __version__}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    code, obj, indent = run(argv)
    _emit(obj, indent)
    if code == 0:
        print(_summary(obj), file=sys.stderr)
    else:
        print(f"error ({obj['error']['kind']}): {obj['error']['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
