"""
Grammars for permutation closures
=================================

"""

from lcneck.formula import SystemId, print_formula
from lcneck.grammar import (
    cs_embed_grammar, enumerate_language, evenize_grammar, import_right_linear, member,
    parse_grammar, parse_right_linear, perm_closure_oracle, unneck_grammar,
)

# a Lambek grammar for (abc)+
abc = parse_grammar("""
system: L
start: s
a : (s / q) / p
a : ((s / s) / q) / p
b : p
c : q
""")
print(sorted(enumerate_language(abc, 6), key=len))

# the same lexicon with every type shifted, read in Lneck
shifted = cs_embed_grammar(abc.with_system(SystemId.LCS))
print([print_formula(t) for t in shifted.lexicon["a"]])
print(sorted(enumerate_language(shifted, 6), key=lambda w: (len(w), w)))
# only rotations of the words appear, not arbitrary permutations
print("acb:", bool(member(shifted, "acb")))

# going through a right-linear grammar gives all permutations
rl = parse_right_linear("""
start: S
S -> a P
P -> b Q
Q -> c S
Q -> c
""")
perm = cs_embed_grammar(import_right_linear(rl).with_system(SystemId.LCS))
got = enumerate_language(perm, 6)
print(len(got), "words; oracle agrees:", got == perm_closure_oracle(rl, 6))

# evenization keeps the language
ev = evenize_grammar(shifted)
for w in ["abc", "bca", "acb"]:
    print(w, bool(member(shifted, w)), bool(member(ev, w)))
print([print_formula(t) for t in ev.lexicon["b"]])
