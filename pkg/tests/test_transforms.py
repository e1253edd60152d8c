import random

import pytest
from hypothesis import given, settings

from conftest import formulas
from lcneck.formula import (
    FragmentError, Prim, Sequent, Shift, SystemId, Under, is_even_cyclic, is_odd_cyclic,
    parse_formula, parse_sequent, print_formula, size,
)
from lcneck.search import Prover, SearchConfig, enumerate_sequents
from lcneck.transforms import (
    FreshSymbolPool, box, cal_A, cal_S, e_n, map_sequent_evenize, map_sequent_embed,
    o_n, t_n, unneck,
)

F = parse_formula
S = parse_sequent
p = Prim("p")


def P(text):
    return parse_formula(text, allow_reserved=True)


def test_box_expansion():
    assert box(p) == P("(__l \\ ((__l * p) * __r)) / __r")


def test_pool_avoids_existing_names():
    pool = FreshSymbolPool(frozenset({"__l"}))
    assert pool.l.name != "__l" and pool.r.name == "__r"
    assert pool.q(3).name == "__q3"


def test_box_instances():
    pv = Prover(SearchConfig(SystemId.LNECK))
    assert pv.derivable(Sequent((p,), box(p)))
    a, b = F("q * p"), F("(p * q)^c")
    pool = FreshSymbolPool.for_formulas(a, b)
    assert pv.derivable(Sequent((a,), b))
    assert pv.derivable(Sequent((box(a, pool),), box(b, pool)))


def test_en_on_examples():
    assert e_n(Shift(p), 1) == Shift(box(p))
    assert o_n(Shift(p), 1) == box(p)
    assert print_formula(e_n(Shift(p), 1)) == "((__l \\ ((__l * p) * __r)) / __r)^c"
    for n in range(4):
        assert e_n(p, n) == p


def test_en_innermost_first():
    # the odd inner ^c becomes a box, the even outer one a tower of N boxes
    pool = FreshSymbolPool(frozenset({"p", "q"}))
    f = F("(p^c \\ q)^c")

    def tower(x):
        for _ in range(3):
            x = Shift(box(x, pool))
        return x

    assert e_n(f, 3, pool) == tower(Under(box(p, pool), Prim("q")))
    assert o_n(f, 3, pool) == box(Under(tower(p), Prim("q")), pool)


def test_en_size_guard():
    with pytest.raises(ValueError):
        e_n(F("(p * q)^c"), 1)
    with pytest.raises(FragmentError):
        o_n(F("p^r"), 3)


def test_en_equivalence_example():
    pv = Prover(SearchConfig(SystemId.LNECK))
    s = S("q, p -> (p * q)^c")
    m = map_sequent_evenize(s, 2)
    assert m.antecedent == s.antecedent
    assert pv.derivable(s) and pv.derivable(m)


@settings(max_examples=200, deadline=None)
@given(formulas(names=("p", "q"), unary=(Shift,), max_leaves=4))
def test_even_odd_cyclic(f):
    n = max(size(f), 1)
    assert is_even_cyclic(e_n(f, n))
    assert is_odd_cyclic(o_n(f, n))


def test_unneck():
    assert unneck(F("(p^c * q)^c")) == F("p * q")
    assert unneck(p) == p
    f = F("p^c")
    assert unneck(e_n(f, 1)) != f


def test_cal_examples():
    assert cal_S(p) == Shift(p)
    assert print_formula(cal_A(F("(s / q) / p"))) == "((s / q^c) / p^c)"
    assert cal_S(F("q \\ p")) == F("(q \\ p^c)^c")
    assert cal_A(F("q \\ p")) == F("q^c \\ p")
    assert cal_S(F("p * q")) == F("(p^c * q^c)^c")
    with pytest.raises(FragmentError):
        cal_A(F("p^c"))


def test_embedding_instance():
    s = S("q, p / q -> p")
    lcs = Prover(SearchConfig(SystemId.LCS)).derivable(s)
    neck = Prover(SearchConfig(SystemId.LNECK)).derivable(map_sequent_embed(s))
    assert lcs and neck


def test_tn():
    assert t_n(p, 0) == p
    assert t_n(p, 1) == P("__q1 * (p / __q1)")
    assert t_n(p, 2) == P("__q2 * ((__q1 * (p / __q1)) / __q2)")
    with pytest.raises(ValueError):
        t_n(p, -1)


def test_tn_derivability():
    # T_n(A) -> B needs B closed under rotation; with B = p the sequent fails
    pv = Prover(SearchConfig(SystemId.LNECK))
    assert pv.derivable(Sequent((t_n(p, 2),), Shift(p)))
    assert not pv.derivable(Sequent((t_n(p, 2),), p))
    assert not pv.derivable(Sequent((t_n(p, 1),), p))


def test_shifted_antecedent_instances():
    pv = Prover(SearchConfig(SystemId.LNECK))
    n = 0
    for s in enumerate_sequents(("p", "q"), 3, SystemId.LNECK):
        if len(s.antecedent) == 1 and isinstance(s.succedent, Shift) and pv.derivable(s):
            assert pv.derivable(Sequent((Shift(s.antecedent[0]),), s.succedent)), s
            n += 1
    assert n > 10


def test_evenization_equivalence_small():
    pv = Prover(SearchConfig(SystemId.LNECK))
    pool = FreshSymbolPool(frozenset({"p", "q"}))
    for s in enumerate_sequents(("p", "q"), 3, SystemId.LNECK):
        if max(size(f) for f in s.formulas()) > 2:
            continue
        assert pv.derivable(s) == pv.derivable(map_sequent_evenize(s, 2, pool)), s


def test_embedding_sample():
    rng = random.Random(6)
    lcs = Prover(SearchConfig(SystemId.LCS))
    neck = Prover(SearchConfig(SystemId.LNECK))
    corpus = list(enumerate_sequents(("p", "q"), 4, SystemId.L))
    for s in rng.sample(corpus, 300):
        assert lcs.derivable(s) == neck.derivable(map_sequent_embed(s)), s
