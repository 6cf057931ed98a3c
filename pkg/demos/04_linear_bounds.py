"""
Lower bounds for dim <AB> in GF(q^n)
====================================

"""

from kemperman import (
    check_full_product,
    check_kneser_linear,
    duality_witness,
    make_ambient,
    olson_linear,
    span,
    stabilizer,
    subfield,
)
from kemperman.theorems import check_prime_degree

L = make_ambient("gf:2:4")
t, one = L.gen, L.one
A = span([one, t])
G4 = subfield(L, 2)

# Kneser-type bound with the stabilizer of <AB>
print("stabilizer of GF(4):", stabilizer(G4))
print(check_kneser_linear(A, A).to_json())

# Olson-type certificate: S inside <AB> stable under a subfield H
cert = olson_linear(G4, span([one, t]))
print("olson:", cert.to_dict())

# prime degree: <AB> = L or the bound with a 1
L5 = make_ambient("gf:2:5")
s = L5.gen
print(check_prime_degree(span([L5.one, s]), span([L5.one, s * s])).to_json())

# dim A + dim B > n forces <AB> = L, with one witness per coordinate functional
B = span([one, t, t * t])
print(check_full_product(B, A).to_json())
print("witness for the t^3 coefficient:", [v.pretty() for v in duality_witness(B, B, (0, 0, 0, 1))])
