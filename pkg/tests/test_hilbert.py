from lcneck.formula import SystemId, parse_formula, parse_sequent
from lcneck.hilbert import check_hilbert_proof, find_hilbert_error, left_product, sequent_to_hilbert
from lcneck.proofs import RuleId
from lcneck.search import Prover, SearchConfig, enumerate_sequents

S = parse_sequent


def test_identity_axiom():
    assert check_hilbert_proof([(S("p * q -> p * q"), RuleId.HAxId, ())])


def test_neck_rotation_step():
    steps = [
        (S("p * q -> (p * q)^c"), RuleId.HAxNeck, ()),
        (S("q * p -> (p * q)^c"), RuleId.HNeckRot, (0,)),
    ]
    assert check_hilbert_proof(steps)


def test_forward_reference_rejected():
    steps = [
        (S("p -> q"), RuleId.HTrans, (1, 2)),
        (S("p -> p"), RuleId.HAxId, ()),
        (S("p -> p"), RuleId.HAxId, ()),
    ]
    assert not check_hilbert_proof(steps)
    idx, reason = find_hilbert_error(steps)
    assert idx == 0 and reason


def test_multi_formula_antecedent_rejected():
    assert not check_hilbert_proof([(S("p, q -> p * q"), RuleId.HAxId, ())])


def test_rule_names_as_strings():
    assert check_hilbert_proof([(S("p -> p^c"), "HAxNeck", ())])


def test_wrong_rotation_rejected():
    steps = [
        (S("p * q -> p * q"), RuleId.HAxId, ()),
        (S("q * p -> p * q"), RuleId.HNeckRot, (0,)),
    ]
    assert not check_hilbert_proof(steps)


def test_example_translation():
    pv = Prover(SearchConfig(SystemId.LNECK))
    proof = pv.derive(S("q, p -> (p * q)^c"))
    steps = sequent_to_hilbert(proof)
    assert check_hilbert_proof(steps)
    last = steps[-1]
    seq = last.sequent if hasattr(last, "sequent") else last[0]
    assert seq == S("q * p -> (p * q)^c")


def test_left_product():
    assert left_product([parse_formula(x) for x in "pqr"]) == parse_formula("(p * q) * r")


def test_translation_bridge():
    pv = Prover(SearchConfig(SystemId.LNECK))
    n = 0
    for s in enumerate_sequents(("p", "q"), 4, SystemId.LNECK):
        proof = pv.derive(s)
        if proof is None:
            continue
        steps = sequent_to_hilbert(proof)
        assert find_hilbert_error(steps) is None, s
        n += 1
    assert n > 1000
