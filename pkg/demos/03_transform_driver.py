"""
Linear Kemperman transforms and the reduction driver
====================================================

"""

import json

from kemperman import make_ambient, reduce_pair, span, subfield, transform_pair
from kemperman.transform import UP_A, UP_B, find_pivot

L = make_ambient("gf:2:4")
t, one = L.gen, L.one
A = span([one, t])

# both transforms along t keep the product span inside <AA>
print("Up-A:", [str(S) for S in transform_pair(A, A, t, UP_A)])
print("Up-B:", [str(S) for S in transform_pair(A, A, t, UP_B)])

# the driver stops once no quotient moves either side
E, F, trace = reduce_pair(A, A)
print("reduced pair:", E, F)
print(json.dumps(trace.to_json_list(), indent=1))

# a subfield is already stable
G4 = subfield(L, 2)
print("pivot for GF(4), GF(4):", find_pivot(G4, G4))

# the same driver works in GF(3)(x)
R = make_ambient("ratfun:3")
x = R.gen
E, F, trace = reduce_pair(span([R.one, x, R.one / (x + 1)]), span([R.one, x * x]))
print("GF(3)(x):", len(trace), "steps, dims", E.dim, F.dim)
