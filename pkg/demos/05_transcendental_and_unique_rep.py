"""
GF(q)(x) and the unique-representation bound
============================================

"""

from kemperman import (
    ConditionError,
    UniqueRepInstance,
    check_torsion_free,
    check_unique_rep,
    make_ambient,
    span,
)
from kemperman.campaign import sharpness_search

R = make_ambient("ratfun:2")
x, one = R.gen, R.one

# in GF(2)(x) only K is a finite-dimensional subfield, so the bound has a 1
print(check_torsion_free(span([x.inverse(), one]), span([one, x])).to_json())

# monomial spans meet the bound exactly
for rep in sharpness_search("torsion-free", "monomial", "ratfun:2", limit=3):
    c = rep.certificate
    print(f"r={c['r']} s={c['s']} dim<AB>={rep.dims['AB']} sharp={c['sharp']}")

# explicit complements A = K + Abar, B = K + Bbar
L = make_ambient("gf:2:4")
t = L.gen
inst = UniqueRepInstance.from_complements(span([t]), span([t]))
print(check_unique_rep(inst).to_json())

try:
    UniqueRepInstance.from_complements(span([x]), span([x.inverse()]))
except ConditionError as exc:
    print("rejected:", exc)
