"""
Proof search with the cyclic shift
==================================

"""

from lcneck.formula import SystemId, parse_sequent
from lcneck.proofs import proof_to_text, check_proof
from lcneck.search import Prover, SearchConfig
from lcneck.semantics import CountermodelConfig, countermodel_search

prover = Prover(SearchConfig(SystemId.LNECK))

# a product is below the cyclic shift of its swapped version
seq = parse_sequent("q * p -> (p * q)^c")
proof = prover.derive(seq)
print(proof_to_text(proof))
print("checked:", check_proof(proof, SystemId.LNECK))

# shifting twice is the same as shifting once
for text in ["p^c^c -> p^c", "p^c -> p^c^c", "q \\ p^c -> p^c / q"]:
    print(text, "=>", prover.derivable(parse_sequent(text)))

# rotation is only available under a shifted succedent
print("p, q -> q * p:", prover.derivable(parse_sequent("p, q -> q * p")))
print("p, q -> (q * p)^c:", prover.derivable(parse_sequent("p, q -> (q * p)^c")))

# unprovable sequents can often be refuted by a small regular model
bad = parse_sequent("p^c -> p")
print(bad, "derivable:", prover.derivable(bad))
model = countermodel_search(bad, CountermodelConfig(seed=7))
for name, ws in model.describe().items():
    print(f"  {name} contains {ws}")

# plain L is the neck-free part of Lneck
plain = Prover(SearchConfig(SystemId.L))
s = parse_sequent("p / q, q -> p")
print(s, plain.derivable(s), prover.derivable(s))
