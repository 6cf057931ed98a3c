"""
Power chains and the ABC dichotomy
==================================

"""

from kemperman import check_abc_linear, check_cor3, make_ambient, power_chain, span, subfield
from kemperman.campaign import sharpness_search

L = make_ambient("gf:2:4")
t, one = L.gen, L.one

pc = power_chain(span([one, t]))
print("chain dims", pc.dims, "n =", pc.stabilization_n, "bound", pc.bound_2dimL_over_dimB)
print("checks:", pc.checks)

# B without 1 is first moved by the inverse of its first element
pc = power_chain(span([t, t ** 3]))
print("normalized by", pc.substitution.pretty(), "->", pc.B)

# complements of K reach the exponent bound in GF(2^6)
reps = sharpness_search("power-chain-bound", "supplementary", "gf:2:6")
print(sum(r.certificate["sharp"] for r in reps), "of", len(reps), "complements are sharp")

# ABC: <ABC> = <AB> or the dimension jumps by a multiple of dim H
G4 = subfield(L, 2)
print(check_abc_linear(G4, G4, span([one, t])).to_json())
print(check_cor3(span([one]), span([one, t])).to_json())
