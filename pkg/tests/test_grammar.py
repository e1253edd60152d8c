from pathlib import Path

import pytest

from oracles import chain_perm_brute, words
from lcneck.formula import Over, Prim, Sequent, SystemId, parse_formula, parse_sequent
from lcneck.grammar import (
    Grammar, GrammarError, RightLinearGrammar, apply_chain_permutation, cs_embed_grammar,
    enumerate_language, evenize_grammar, format_grammar, format_right_linear,
    import_right_linear, lemma1_check, member, parse_grammar, parse_right_linear,
    perm_closure_oracle, rl_language, unneck_grammar,
)
from lcneck.search import Prover, SearchConfig, enumerate_sequents

DATA = Path(__file__).parent / "data"
F = parse_formula


def load(name):
    return parse_grammar((DATA / name).read_text())


def test_abc_membership():
    g = load("abc.gr")
    assert member(g, "abcabc")
    assert not member(g, "acb")
    res = member(g, "abc")
    assert res.assignment == (F("(s / q) / p"), F("p"), F("q"))
    assert res.proof is not None


def test_perm_membership():
    g = load("perm_abc.gr")
    assert member(g, "bca")
    assert not member(g, "aab")


def test_empty_and_unknown():
    g = load("abc.gr")
    with pytest.raises(GrammarError):
        member(g, "")
    with pytest.raises(GrammarError):
        member(g, "abd")


def test_enumerate():
    assert enumerate_language(load("abc.gr"), 6) == {"abc", "abcabc"}
    assert enumerate_language(load("abc.gr"), 0) == set()


def test_perm_grammar_short_words():
    # only the cyclic shifts of abc survive at length 3
    assert enumerate_language(load("perm_abc.gr"), 3) == {"abc", "bca", "cab"}


def test_cs_embed_matches_displayed_grammar():
    g = load("abc.gr").with_system(SystemId.LCS)
    out = cs_embed_grammar(g)
    assert out == load("perm_abc.gr")
    back = unneck_grammar(out)
    assert back.lexicon == load("abc.gr").lexicon
    assert back.distinguished == Prim("s")


def test_import_right_linear():
    rl = RightLinearGrammar("S", (("S", "a", "B"), ("B", "b", None)))
    g = import_right_linear(rl)
    assert g.lexicon == {"a": (Over(Prim("S"), Prim("B")),), "b": (Prim("B"),)}
    assert enumerate_language(g, 3) == rl_language(rl, 3) == {"ab"}
    unary = RightLinearGrammar("S", (("S", "a", "S"), ("S", "a", None)))
    assert enumerate_language(import_right_linear(unary), 3) == {"a", "aa", "aaa"}


def test_right_linear_parse_errors():
    with pytest.raises(GrammarError):
        parse_right_linear("start: X\nX -> a Y b\n")
    with pytest.raises(GrammarError):
        parse_right_linear("X -> a\n")
    rl = parse_right_linear((DATA / "rl_abc.txt").read_text())
    assert parse_right_linear(format_right_linear(rl)) == rl


def test_perm_oracle():
    rl = parse_right_linear((DATA / "rl_abc.txt").read_text())
    assert perm_closure_oracle(rl, 3) == {"abc", "acb", "bac", "bca", "cab", "cba"}
    ab = RightLinearGrammar("S", (("S", "a", "B"), ("B", "b", None)))
    assert perm_closure_oracle(ab, 2) == {"ab", "ba"}
    assert perm_closure_oracle(ab, 1) == set()


def test_right_linear_perm_construction():
    # right-linear import, read under LCS, embedded into Lneck
    rl = parse_right_linear((DATA / "rl_abc.txt").read_text())
    g = cs_embed_grammar(import_right_linear(rl).with_system(SystemId.LCS))
    got = enumerate_language(g, 6)
    assert got == perm_closure_oracle(rl, 6)
    assert len(got) == 96


def test_grammar_file_round_trip():
    g = load("perm_abc.gr")
    assert parse_grammar(format_grammar(g)) == g
    with pytest.raises(GrammarError):
        parse_grammar("start: s\n")
    with pytest.raises(GrammarError):
        parse_grammar("system: L\nstart: s\na : p^c\n")


def test_chain_permutation_examples():
    S = parse_sequent
    assert lemma1_check(S("s / q, q / p, p -> s")) == (1, 2)
    assert lemma1_check(S("q / p, s / q, p -> s")) == (2, 1)
    assert lemma1_check(S("p / q, r -> s")) is None
    with pytest.raises(GrammarError):
        lemma1_check(S("p * q, r -> s"))


def _simple_shape(s):
    *divs, last = s.antecedent
    return (isinstance(last, Prim) and isinstance(s.succedent, Prim) and
            all(isinstance(d, Over) and isinstance(d.left, Prim) and isinstance(d.right, Prim)
                for d in divs))


def test_chain_permutation_property():
    lcs = Prover(SearchConfig(SystemId.LCS))
    l = Prover(SearchConfig(SystemId.L))
    n = 0
    for s in enumerate_sequents(("p", "q", "s"), 4, SystemId.L):
        if not _simple_shape(s) or not lcs.derivable(s):
            continue
        sigma = lemma1_check(s)
        assert sigma is not None, s
        ps = [d.left.name for d in s.antecedent[:-1]]
        qs = [d.right.name for d in s.antecedent[:-1]]
        brute = chain_perm_brute(ps, qs, s.antecedent[-1].name, s.succedent.name)
        assert tuple(i - 1 for i in sigma) in brute
        assert l.derivable(apply_chain_permutation(s, sigma)), s
        n += 1
    assert n >= 20


CORPUS = ["shift_pair.gr", "neck_arg.gr", "cycle3.gr", "perm_abc.gr"]


@pytest.mark.parametrize("name", CORPUS)
def test_evenize_preserves_language(name):
    g = load(name)
    ev = evenize_grammar(g)
    n = 5 if len(g.alphabet) < 3 else 4
    pe, pg = Prover(SearchConfig(SystemId.LNECK)), Prover(SearchConfig(SystemId.LNECK))
    for w in words(g.alphabet, n):
        assert bool(member(g, w, pg)) == bool(member(ev, w, pe)), w


@pytest.mark.parametrize("name", ["abc.gr", "cycle3.gr"])
def test_monotone_in_system_strength(name):
    g = load(name)
    g = unneck_grammar(g) if g.system is SystemId.LNECK else g
    weak = enumerate_language(g, 5)
    strong = enumerate_language(g.with_system(SystemId.LCS), 5)
    assert weak <= strong


@pytest.mark.parametrize("name", CORPUS[:3])
def test_sandwich(name):
    ev = evenize_grammar(load(name))
    low = unneck_grammar(ev)
    high = low.with_system(SystemId.LCS)
    for w in words(ev.alphabet, 5):
        if member(low, w):
            assert member(ev, w), w
        if member(ev, w):
            assert member(high, w), w
