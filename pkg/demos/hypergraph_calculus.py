"""
Cycles in the hypergraph Lambek calculus
========================================

"""

from lcneck.formula import SystemId, parse_sequent
from lcneck.hlcalc import HlProver, lbrac_decide, lbrac_translate, match_pattern
from lcneck.hypergraph import (
    HPrim, HTimes, Hypergraph, HlSequent, Placeholder, loop_graph, neck_h, print_hl_type,
    replace, sg, to_dot, tr,
)
from lcneck.search import Prover, SearchConfig

p, q, r = HPrim("p", 2), HPrim("q", 2), HPrim("r", 2)

# gluing the ends of a string graph makes a cycle
cyc = replace(loop_graph(Placeholder(2)), 0, sg([p, q, r]))
print(cyc)
print(to_dot(cyc))

# ungluing it again: rotations, and chains with one edge flipped
for d in match_pattern(cyc, loop_graph(Placeholder(2))):
    print(" ", d.blocks[0])

target = neck_h(HTimes(sg([p, q, r])))
print(print_hl_type(target))
hp = HlProver()
print(hp.derive(HlSequent(sg([q, r, p]), target)).render())

# a reversed chain is also accepted, which the string calculus would not do
rev = Hypergraph((0, 1, 2, 3), (((3, 2), p), ((2, 1), q), ((1, 0), r)), (0, 3))
print("reversed chain:", hp.derive(HlSequent(rev, target)) is not None)

s = parse_sequent("r, q, p -> ((p^c * q^c) * r^c)^c")
image = HlSequent(sg([tr(x, allow_neck=True) for x in s.antecedent]), tr(s.succedent, allow_neck=True))
print("via hypergraphs:", hp.derive(image) is not None,
      "in Lneck:", Prover(SearchConfig(SystemId.LNECK)).derivable(s))

# with reversal and bracelets the translation is faithful
b = parse_sequent("r, q, p -> ((p^b * q^b) * r^b)^b")
print(lbrac_translate(b).succedent)
print("decided:", lbrac_decide(b, prover=hp))
searcher = Prover(SearchConfig(SystemId.LBRAC, cut_budget=1))
print("bounded cut search:", searcher.derivable(b))
