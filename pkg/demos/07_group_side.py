"""
Product sets in small finite groups
===================================

"""

from kemperman import GSet, olson_find, parse_group, product_set
from kemperman.groupsets import (
    UP_A,
    abc_exhaustive,
    check_kemperman_unique,
    kneser_check,
    set_kemperman_transform,
    subgroups,
)

Z6 = parse_group("cyclic:6")
A = GSet.from_text(Z6, "0,1")
print("A+A =", product_set(A, A).to_text())
print("transform along 1:", [S.to_text() for S in set_kemperman_transform(A, A, 1, UP_A)])
print(kneser_check(GSet.from_text(Z6, "0,2,4"), GSet.from_text(Z6, "0,2,4")).to_json())

S3 = parse_group("sym:3")
print("subgroups of S3:", [H.to_text() for H in subgroups(S3)])
S, H, side = olson_find(GSet.of(S3, [1, 2]), GSet.of(S3, [0, 3]))
print("olson certificate:", S.to_text(), H.to_text(), side)
print(check_kemperman_unique(GSet.of(S3, [1, 2]), GSet.of(S3, [0, 3])).to_json())

# every triple of S3 with B inside C and 1 in C
print(abc_exhaustive(S3))
