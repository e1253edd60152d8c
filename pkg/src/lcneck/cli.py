"""Command-line front end. Exit codes: 0 yes, 1 no, 2 usage or input error."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .automata import Automaton, StateLimitExceeded
from .formula import SystemId, check_fragment, parse_formula, parse_sequent, print_formula
from .grammar import (
    GrammarError, cs_embed_grammar, enumerate_language, format_grammar, import_right_linear,
    member, parse_grammar, parse_right_linear, perm_closure_oracle,
)
from .hlcalc import HlConfig, HlLimitExceeded, HlProver, lbrac_translate
from .hypergraph import (
    HlSequent, HypergraphError, graph_from_json, graph_to_json, print_hl_type, to_dot,
    type_from_json,
)
from .proofs import LATEX_PREAMBLE, proof_to_json, proof_to_latex, proof_to_text
from .search import MemoLimitExceeded, Prover, SearchConfig
from .semantics import (
    CountermodelConfig, EpsilonMode, Interpretation, SemanticsError, countermodel_search, holds,
)
from .transforms import FreshSymbolPool, box, cal_A, cal_S, e_n, o_n, t_n, unneck

YES, NO, ERROR = 0, 1, 2


class _Usage(Exception):
    pass


def _out(text: str = "") -> None:
    print(text)


# ------------------------------------------------------------------ prove

def cmd_prove(args) -> int:
    system = SystemId.parse(args.system)
    seq = parse_sequent(args.sequent)
    check_fragment(seq, system)
    prover = Prover(SearchConfig(system, cut_budget=args.cut_budget))
    proof = prover.derive(seq)
    if proof is None:
        _out(f"not derivable in {system.value}: {seq}")
        return NO
    if args.proof_json:
        _out(json.dumps(proof_to_json(proof), indent=2))
    elif args.latex:
        if args.standalone:
            _out(LATEX_PREAMBLE)
        _out(proof_to_latex(proof))
    else:
        _out(f"derivable in {system.value}: {seq}")
        if args.proof:
            _out(proof_to_text(proof))
    return YES


# ------------------------------------------------------------------ grammar

def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror}") from None


def cmd_grammar(args) -> int:
    if args.action == "member":
        g = parse_grammar(_read(args.file))
        if args.word is None:
            raise _Usage("member needs a word")
        word = tuple(args.word.split()) if " " in args.word else tuple(args.word)
        res = member(g, word)
        if not res:
            _out(f"not a member: {args.word}")
            return NO
        _out(f"member: {args.word}")
        _out("assignment: " + ", ".join(print_formula(t) for t in res.assignment))
        return YES
    if args.action == "enum":
        g = parse_grammar(_read(args.file))
        words = enumerate_language(g, args.max_len)
        for w in sorted(words, key=lambda w: (len(w), w)):
            _out(w if isinstance(w, str) else " ".join(w))
        return YES if words else NO
    rl = parse_right_linear(_read(args.file))
    if args.action == "import":
        g = import_right_linear(rl)
        if args.perm:
            g = cs_embed_grammar(g.with_system(SystemId.LCS))
        sys.stdout.write(format_grammar(g))
        return YES
    # perm: the permutation-closure oracle of a right-linear grammar
    words = perm_closure_oracle(rl, args.max_len)
    for w in sorted(words, key=lambda w: (len(w), w)):
        _out(w)
    return YES if words else NO


# ------------------------------------------------------------------ transform

def cmd_transform(args) -> int:
    f = parse_formula(args.formula, allow_reserved=True)
    pool = FreshSymbolPool.for_formulas(f)
    kind = args.kind
    if kind in ("eN", "oN") and args.N is None:
        raise _Usage(f"{kind} needs --N")
    if kind == "box":
        out = box(f, pool)
    elif kind == "eN":
        out = e_n(f, args.N, pool)
    elif kind == "oN":
        out = o_n(f, args.N, pool)
    elif kind == "unneck":
        out = unneck(f)
    elif kind == "calA":
        out = cal_A(f)
    elif kind == "calS":
        out = cal_S(f)
    else:
        out = t_n(f, args.n, pool)
    _out(print_formula(out))
    return YES


# ------------------------------------------------------------------ semantics

def _model_files(specs) -> dict:
    out = {}
    for spec in specs or []:
        if "=" not in spec:
            raise _Usage(f"model must be NAME=FILE, got {spec!r}")
        name, path = spec.split("=", 1)
        try:
            out[name] = Automaton.from_json(_read(path))
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise _Usage(f"{path}: not an automaton file ({exc})") from None
    return out


def cmd_semantics(args) -> int:
    seq = parse_sequent(args.sequent)
    mode = EpsilonMode.ALLOW if args.allow_eps else EpsilonMode.FORBID
    if args.action == "check":
        m = Interpretation(_model_files(args.model), mode)
        ok = holds(seq, m)
        _out(f"{'holds' if ok else 'fails'}: {seq}")
        return YES if ok else NO
    cfg = CountermodelConfig(max_states=args.max_states, alphabet=tuple(args.alphabet),
                             samples=args.samples, seed=args.seed, epsilon_mode=mode)
    m = countermodel_search(seq, cfg)
    if m is None:
        _out(f"no countermodel in {args.samples} samples: {seq}")
        return NO
    _out(json.dumps({"sequent": str(seq), "interpretation": m.to_json(),
                     "words": m.describe()}, indent=2))
    return YES


# ------------------------------------------------------------------ hl

def _load_hl(path: str) -> HlSequent:
    try:
        data = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise _Usage(f"{path}: invalid JSON ({exc.msg})") from None
    graphs = data.get("graphs", {})
    try:
        ant = graph_from_json(data["antecedent"], graphs)
        succ = type_from_json(data["succedent"], graphs)
    except KeyError as exc:
        raise _Usage(f"{path}: missing key {exc}") from None
    return HlSequent(ant, succ)


def cmd_hl(args) -> int:
    cfg = HlConfig(node_limit=args.node_limit)
    if args.action == "prove":
        seq = _load_hl(args.input)
    else:
        seq = lbrac_translate(parse_sequent(args.input))
        _out(json.dumps({"antecedent": graph_to_json(seq.antecedent),
                         "succedent": print_hl_type(seq.succedent)}, indent=2))
    if args.dot:
        _out(to_dot(seq.antecedent))
    proof = HlProver(cfg).derive(seq)
    if proof is None:
        _out("not derivable")
        return NO
    _out("derivable")
    if args.proof:
        _out(proof.render())
    return YES


# ------------------------------------------------------------------ main

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lcneck", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prove", help="cut-free proof search")
    p.add_argument("system", help="L, Lneck, LCS, Lrev or Lbrac")
    p.add_argument("sequent")
    p.add_argument("--cut-budget", type=int, default=0)
    p.add_argument("--proof", action="store_true", help="print the proof tree")
    p.add_argument("--proof-json", action="store_true")
    p.add_argument("--latex", action="store_true")
    p.add_argument("--standalone", action="store_true", help="with --latex: include the preamble")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("grammar", help="categorial grammars")
    p.add_argument("action", choices=["member", "enum", "import", "perm"])
    p.add_argument("file")
    p.add_argument("word", nargs="?")
    p.add_argument("--max-len", type=int, default=4)
    p.add_argument("--perm", action="store_true", help="import: emit the cs-embedded grammar")
    p.set_defaults(func=cmd_grammar)

    p = sub.add_parser("transform", help="formula translations")
    p.add_argument("kind", choices=["box", "eN", "oN", "unneck", "calA", "calS", "tn"])
    p.add_argument("formula")
    p.add_argument("--N", type=int)
    p.add_argument("--n", type=int, default=1)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("semantics", help="regular-language models")
    p.add_argument("action", choices=["check", "countermodel"])
    p.add_argument("sequent")
    p.add_argument("-m", "--model", action="append", metavar="NAME=FILE")
    p.add_argument("--allow-eps", action="store_true")
    p.add_argument("--max-states", type=int, default=2)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alphabet", default="ab")
    p.set_defaults(func=cmd_semantics)

    p = sub.add_parser("hl", help="hypergraph calculus")
    p.add_argument("action", choices=["prove", "embed"])
    p.add_argument("input", help="sequent JSON file (prove) or Lbrac sequent (embed)")
    p.add_argument("--node-limit", type=int, default=24)
    p.add_argument("--proof", action="store_true")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_hl)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return ERROR if exc.code else YES
    try:
        return args.func(args)
    except (_Usage, ValueError, HypergraphError, GrammarError, SemanticsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    except (MemoLimitExceeded, HlLimitExceeded, StateLimitExceeded) as exc:
        print(f"error: resource limit: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
