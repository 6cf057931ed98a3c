"""Product sets in small finite groups and the classical set-side theorems.

Groups are Cayley tables on indices 0..order-1; subsets are bitmasks.
Everything is exhaustive, which is cheap at order <= 64.
"""

from __future__ import annotations

import itertools
from functools import cached_property
from pathlib import Path

from .errors import GroupError, InvariantError
from .report import DEGENERATE, HOLDS, NOT_APPLICABLE, TheoremReport, verdict_for
from .transform import UP_A, UP_B

MAX_ORDER = 64


class GroupTable:
    """Finite group given by its multiplication table; ``table[a][b]`` is ab."""

    def __init__(self, table, descriptor: str = "table"):
        table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(table)
        if not 1 <= n <= MAX_ORDER:
            raise GroupError(f"group order must be between 1 and {MAX_ORDER}, got {n}")
        if any(len(row) != n or any(not 0 <= x < n for x in row) for row in table):
            raise GroupError("table is not an order x order array of indices")
        self.order = n
        self.table = table
        self.descriptor = descriptor
        ident = [e for e in range(n) if table[e] == tuple(range(n))
                 and all(table[a][e] == a for a in range(n))]
        if not ident:
            raise GroupError("no identity element")
        self.identity = e = ident[0]
        inverse = []
        for a in range(n):
            row = table[a]
            try:
                b = row.index(e)
            except ValueError:
                raise GroupError(f"element {a} has no inverse") from None
            if table[b][a] != e:
                raise GroupError(f"element {a} has no two-sided inverse")
            inverse.append(b)
        self.inverse = tuple(inverse)
        for a in range(n):
            ta = table[a]
            for b in range(n):
                if table[ta[b]] != tuple(ta[x] for x in table[b]):
                    raise GroupError("table is not associative")
        self.full = (1 << n) - 1

    def __repr__(self):
        return f"GroupTable({self.descriptor!r}, order={self.order})"

    def __eq__(self, other):
        return isinstance(other, GroupTable) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __reduce__(self):
        return (GroupTable, (self.table, self.descriptor))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def is_abelian(self) -> bool:
        T = self.table
        return all(T[a][b] == T[b][a] for a in range(self.order) for b in range(a))

    # bitmask translations via per-byte lookup tables
    def _chunk_tables(self, side: str):
        n, T = self.order, self.table
        tables = []
        for g in range(n):
            per_g = []
            for base in range(0, n, 8):
                width = min(8, n - base)
                images = [1 << (T[g][base + i] if side == "left" else T[base + i][g])
                          for i in range(width)]
                lut = [0] * (1 << width)
                for m in range(1, 1 << width):
                    low = m & -m
                    lut[m] = lut[m ^ low] | images[low.bit_length() - 1]
                per_g.append(lut)
            tables.append(per_g)
        return tables

    @cached_property
    def _left_luts(self):
        return self._chunk_tables("left")

    @cached_property
    def _right_luts(self):
        return self._chunk_tables("right")

    def left_translate(self, g: int, mask: int) -> int:
        """Mask of gX."""
        out = 0
        for lut in self._left_luts[g]:
            if mask & 0xFF:
                out |= lut[mask & 0xFF]
            mask >>= 8
        return out

    def right_translate(self, mask: int, g: int) -> int:
        """Mask of Xg."""
        out = 0
        for lut in self._right_luts[g]:
            if mask & 0xFF:
                out |= lut[mask & 0xFF]
            mask >>= 8
        return out

    # constructors ---------------------------------------------------------------
    @classmethod
    def cyclic(cls, n: int) -> "GroupTable":
        return cls([[(i + j) % n for j in range(n)] for i in range(n)], f"cyclic:{n}")

    @classmethod
    def dihedral(cls, n: int) -> "GroupTable":
        """Symmetries of the n-gon, order 2n; index k + n*e stands for r^k s^e."""
        if n < 1:
            raise GroupError("dihedral needs n >= 1")

        def mul(x, y):
            a, e = x % n, x // n
            b, f = y % n, y // n
            return (a + (-b if e else b)) % n + n * ((e + f) % 2)

        size = 2 * n
        return cls([[mul(x, y) for y in range(size)] for x in range(size)], f"dihedral:{n}")

    @classmethod
    def symmetric(cls, n: int) -> "GroupTable":
        """S_n (n <= 4), permutations in lexicographic order, (pq)(i) = p(q(i))."""
        if not 1 <= n <= 4:
            raise GroupError("symmetric groups are supported for n <= 4")
        perms = list(itertools.permutations(range(n)))
        index = {p: i for i, p in enumerate(perms)}
        table = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
        return cls(table, f"sym:{n}")

    @classmethod
    def direct_product(cls, G: "GroupTable", H: "GroupTable") -> "GroupTable":
        """G x H with index g * |H| + h."""
        m = H.order
        size = G.order * m
        if size > MAX_ORDER:
            raise GroupError(f"product order {size} exceeds {MAX_ORDER}")
        table = [[G.table[x // m][y // m] * m + H.table[x % m][y % m] for y in range(size)]
                 for x in range(size)]
        return cls(table, f"prod:{G.descriptor},{H.descriptor}")

    @classmethod
    def from_file(cls, path) -> "GroupTable":
        """Order followed by order² whitespace-separated entries."""
        nums = [int(tok) for tok in Path(path).read_text().split()]
        if not nums:
            raise GroupError("empty table file")
        n = nums[0]
        if len(nums) != 1 + n * n:
            raise GroupError(f"table file needs {n * n} entries after the order")
        rows = [nums[1 + i * n: 1 + (i + 1) * n] for i in range(n)]
        return cls(rows, f"table:{path}")

    @classmethod
    def multiplicative(cls, ambient) -> "GroupTable":
        """L^* of a finite extension; element with integer code k has index k - 1."""
        order = ambient.order - 1
        if order > MAX_ORDER:
            raise GroupError(f"L^* has order {order} > {MAX_ORDER}")
        vals = [ambient.from_code(k).value for k in range(1, ambient.order)]
        code = {v: k for k, v in enumerate(vals)}
        table = [[code[ambient.mul(u, v)] for v in vals] for u in vals]
        return cls(table, f"mult:{ambient.descriptor}")


def value_code(ambient, value) -> int:
    """Integer code of a finite-extension value (base-q digits, constant first)."""
    q = ambient.q
    return sum(c * q ** i for i, c in enumerate(value))


def parse_group(descriptor: str) -> GroupTable:
    """``cyclic:<n>``, ``dihedral:<n>``, ``sym:<n>``, ``prod:<d1>,<d2>``,
    ``table:<file>`` or ``mult:<finite ambient>``."""
    kind, _, arg = descriptor.partition(":")
    try:
        if kind == "cyclic":
            return GroupTable.cyclic(int(arg))
        if kind == "dihedral":
            return GroupTable.dihedral(int(arg))
        if kind == "sym":
            return GroupTable.symmetric(int(arg))
        if kind == "prod":
            left, sep, right = arg.partition(",")
            if not sep:
                raise GroupError("prod needs two descriptors separated by ','")
            return GroupTable.direct_product(parse_group(left), parse_group(right))
        if kind == "table":
            return GroupTable.from_file(arg)
        if kind == "mult":
            from .ffield import make_ambient

            amb = make_ambient(arg)
            if not amb.is_finite:
                raise GroupError("mult: needs a finite ambient")
            return GroupTable.multiplicative(amb)
    except ValueError as exc:
        if isinstance(exc, GroupError):
            raise
        raise GroupError(f"malformed group descriptor {descriptor!r}: {exc}") from None
    raise GroupError(f"unknown group descriptor {descriptor!r}")


class GSet:
    """Subset of a GroupTable stored as a bitmask."""

    __slots__ = ("group", "mask")

    def __init__(self, group: GroupTable, mask: int):
        if mask < 0 or mask >> group.order:
            raise GroupError("mask has bits outside the group")
        self.group = group
        self.mask = mask

    @classmethod
    def of(cls, group: GroupTable, members) -> "GSet":
        mask = 0
        for m in members:
            if not 0 <= m < group.order:
                raise GroupError(f"{m} is not an element index")
            mask |= 1 << m
        return cls(group, mask)

    @classmethod
    def from_text(cls, group: GroupTable, text: str) -> "GSet":
        return cls.of(group, (int(s) for s in text.split(",") if s.strip()))

    def members(self) -> list[int]:
        m, out = self.mask, []
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return out

    def __len__(self):
        return self.mask.bit_count()

    def __contains__(self, g: int) -> bool:
        return bool(self.mask >> g & 1)

    def __eq__(self, other):
        return isinstance(other, GSet) and self.mask == other.mask and self.group == other.group

    def __hash__(self):
        return hash(self.mask)

    def __le__(self, other: "GSet") -> bool:
        return self.mask & ~other.mask == 0

    def __or__(self, other: "GSet") -> "GSet":
        return GSet(self.group, self.mask | other.mask)

    def __and__(self, other: "GSet") -> "GSet":
        return GSet(self.group, self.mask & other.mask)

    def to_text(self) -> str:
        return ",".join(str(m) for m in self.members())

    def __repr__(self):
        return f"GSet({{{self.to_text()}}})"

    def __reduce__(self):
        return (GSet, (self.group, self.mask))


def _same_group(*sets: GSet) -> GroupTable:
    G = sets[0].group
    for s in sets[1:]:
        if s.group is not G and s.group != G:
            raise GroupError("sets from different groups")
    return G


def product_set(A: GSet, B: GSet) -> GSet:
    """AB = {ab}, as the union of the left translates aB."""
    G = _same_group(A, B)
    out = 0
    for a in A.members():
        out |= G.left_translate(a, B.mask)
        if out == G.full:
            break
    return GSet(G, out)


def power_set(B: GSet, n: int) -> GSet:
    """B^n with B^0 = {1}."""
    G = B.group
    out = GSet(G, 1 << G.identity)
    for _ in range(n):
        out = product_set(out, B)
    return out


def set_kemperman_transform(A: GSet, B: GSet, x: int, variant: str = UP_A, check: bool = False):
    """Up-A: (A ∪ Ax, B ∩ x⁻¹B).  Up-B: (A ∩ Ax⁻¹, B ∪ xB)."""
    G = _same_group(A, B)
    if not A.mask or not B.mask:
        raise GroupError("A and B must be nonempty")
    xi = G.inverse[x]
    if variant == UP_A:
        A1 = A.mask | G.right_translate(A.mask, x)
        B1 = B.mask & G.left_translate(xi, B.mask)
    elif variant == UP_B:
        A1 = A.mask & G.right_translate(A.mask, xi)
        B1 = B.mask | G.left_translate(x, B.mask)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    A1, B1 = GSet(G, A1), GSet(G, B1)
    if check:
        _check_transform(A, B, x, variant, A1, B1)
    return A1, B1


def _check_transform(A, B, x, variant, A1, B1):
    G = A.group
    if A1.mask and B1.mask and not product_set(A1, B1) <= product_set(A, B):
        raise InvariantError("transformed product escapes AB")
    in_BBinv = x in product_set(B, GSet.of(G, (G.inverse[b] for b in B.members())))
    in_AinvA = x in product_set(GSet.of(G, (G.inverse[a] for a in A.members())), A)
    if variant == UP_A:
        if bool(B1.mask) != in_BBinv:
            raise InvariantError("B' nonempty does not match x ∈ BB⁻¹")
        if (len(A1) > len(A)) != (G.right_translate(A.mask, x) != A.mask):
            raise InvariantError("|A'| > |A| does not match Ax != A")
    else:
        if bool(A1.mask) != in_AinvA:
            raise InvariantError("A'' nonempty does not match x ∈ A⁻¹A")
        if (len(B1) > len(B)) != (G.left_translate(x, B.mask) != B.mask):
            raise InvariantError("|B''| > |B| does not match xB != B")


# -- subgroups -----------------------------------------------------------------------------


def generated(G: GroupTable, mask: int) -> int:
    """Mask of the subgroup generated by the given elements."""
    cur = mask | 1 << G.identity
    while True:
        nxt = product_set(GSet(G, cur), GSet(G, cur)).mask
        if nxt == cur:
            return cur
        cur = nxt


def subgroups(G: GroupTable) -> list[GSet]:
    """All subgroups, sorted by (size, mask).

    Cyclic subgroups are joined with already-found subgroups until no new
    subgroup appears; every subgroup is reached since it is generated by
    finitely many cyclic ones.
    """
    cyclic = sorted({generated(G, 1 << g) for g in range(G.order)})
    found = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        new = []
        for H in frontier:
            for C in cyclic:
                if C & ~H == 0:
                    continue
                J = generated(G, H | C)
                if J not in found:
                    found.add(J)
                    new.append(J)
        frontier = new
    return [GSet(G, m) for m in sorted(found, key=lambda m: (m.bit_count(), m))]


_SUBGROUP_CACHE: dict = {}


def _subgroups_cached(G: GroupTable) -> list[GSet]:
    key = G.table
    if key not in _SUBGROUP_CACHE:
        _SUBGROUP_CACHE[key] = subgroups(G)
    return _SUBGROUP_CACHE[key]


# -- theorem checks ------------------------------------------------------------------------


def _report(name, G, sets, dims, bound, verdict, cert=None):
    return TheoremReport(name, G.descriptor, [s.to_text() for s in sets], dims, bound, verdict,
                         cert or {})


def _require_nonempty(*sets):
    if any(not s.mask for s in sets):
        raise GroupError("sets must be nonempty")


def check_basic(A: GSet, B: GSet) -> TheoremReport:
    """|A| + |B| > |G| forces AB = G."""
    G = _same_group(A, B)
    _require_nonempty(A, B)
    sizes = {"A": len(A), "B": len(B)}
    if len(A) + len(B) <= G.order:
        return _report("basic", G, (A, B), sizes, None, NOT_APPLICABLE,
                       {"reason": "|A| + |B| <= |G|"})
    AB = product_set(A, B)
    sizes["AB"] = len(AB)
    return _report("basic", G, (A, B), sizes, G.order, verdict_for(AB.mask == G.full))


def representation_counts(A: GSet, B: GSet) -> list[int]:
    G = _same_group(A, B)
    counts = [0] * G.order
    T = G.table
    bs = B.members()
    for a in A.members():
        row = T[a]
        for b in bs:
            counts[row[b]] += 1
    return counts


def check_kemperman_unique(A: GSet, B: GSet) -> TheoremReport:
    """If some c ∈ AB has exactly one factorization, |AB| >= |A| + |B| - 1."""
    G = _same_group(A, B)
    _require_nonempty(A, B)
    counts = representation_counts(A, B)
    unique = [c for c, k in enumerate(counts) if k == 1]
    size_ab = sum(1 for k in counts if k)
    sizes = {"A": len(A), "B": len(B), "AB": size_ab}
    bound = len(A) + len(B) - 1
    if not unique:
        return _report("kemperman-unique", G, (A, B), sizes, bound, NOT_APPLICABLE,
                       {"reason": "no uniquely represented element"})
    return _report("kemperman-unique", G, (A, B), sizes, bound, verdict_for(size_ab >= bound),
                   {"unique": unique[0]})


def coset_union(AB: GSet, H: GSet, side: str) -> GSet:
    """Union of the cosets inside AB: Hg for ``left`` (HS = S), gH for ``right``."""
    G = AB.group
    out = 0
    rest = AB.mask
    while rest:
        low = rest & -rest
        g = low.bit_length() - 1
        coset = G.right_translate(H.mask, g) if side == "left" else G.left_translate(g, H.mask)
        if coset & ~AB.mask == 0:
            out |= coset
        rest &= ~coset  # cosets partition G and g lies in its own
    return GSet(G, out)


def olson_find(A: GSet, B: GSet) -> tuple[GSet, GSet, str]:
    """First (S, H, side) with S ⊆ AB a union of H-cosets and |S| >= |A| + |B| - |H|."""
    G = _same_group(A, B)
    _require_nonempty(A, B)
    AB = product_set(A, B)
    need = len(A) + len(B)
    for H in _subgroups_cached(G):
        for side in ("left", "right"):
            S = coset_union(AB, H, side)
            if S.mask and len(S) >= need - len(H):
                return S, H, side
    raise InvariantError("no Olson certificate found")


def check_olson_sets(A: GSet, B: GSet) -> TheoremReport:
    G = _same_group(A, B)
    S, H, side = olson_find(A, B)
    return _report("olson-sets", G, (A, B),
                   {"A": len(A), "B": len(B), "AB": len(product_set(A, B)), "S": len(S), "H": len(H)},
                   len(A) + len(B) - len(H), HOLDS,
                   {"S": S.to_text(), "H": H.to_text(), "side": side})


def check_thOl2(A: GSet, B: GSet) -> TheoremReport:
    """1 ∈ B:  AB² = AB or 2|AB| >= 2|A| + |B|."""
    G = _same_group(A, B)
    _require_nonempty(A, B)
    if G.identity not in B:
        raise GroupError("B must contain the identity")
    AB = product_set(A, B)
    AB2 = product_set(AB, B)
    sizes = {"A": len(A), "B": len(B), "AB": len(AB), "AB2": len(AB2)}
    doubled = 2 * len(A) + len(B)
    if AB2 == AB:
        return _report("olson-ab2", G, (A, B), sizes, doubled, DEGENERATE, {"branch": "AB² = AB"})
    return _report("olson-ab2", G, (A, B), sizes, doubled, verdict_for(2 * len(AB) >= doubled),
                   {"doubled": True})


def check_thOl3(B: GSet, n: int) -> TheoremReport:
    """|B^n| = |B^(n+1)| or 2|B^n| >= 2|B^(n-1)| + |B|."""
    G = B.group
    _require_nonempty(B)
    if n < 1:
        raise ValueError("n must be >= 1")
    prev = power_set(B, n - 1)
    cur = product_set(prev, B)
    nxt = product_set(cur, B)
    sizes = {"B": len(B), "n": n, "prev": len(prev), "cur": len(cur), "next": len(nxt)}
    doubled = 2 * len(prev) + len(B)
    if len(cur) == len(nxt):
        return _report("olson-powers", G, (B,), sizes, doubled, DEGENERATE,
                       {"branch": "|B^n| = |B^(n+1)|"})
    return _report("olson-powers", G, (B,), sizes, doubled, verdict_for(2 * len(cur) >= doubled),
                   {"doubled": True})


def _abc(name, A, B, C):
    G = _same_group(A, B, C)
    AB = product_set(A, B)
    ABC = product_set(AB, C)
    sizes = {"A": len(A), "B": len(B), "C": len(C), "AB": len(AB), "ABC": len(ABC)}
    bound = len(A) + len(B)
    if ABC == AB:
        return _report(name, G, (A, B, C), sizes, bound, DEGENERATE, {"branch": "ABC = AB"})
    return _report(name, G, (A, B, C), sizes, bound, verdict_for(len(ABC) >= bound))


def check_abc_sets(A: GSet, B: GSet, C: GSet) -> TheoremReport:
    """B ⊆ C and 1 ∈ C:  ABC = AB or |ABC| >= |A| + |B|."""
    _require_nonempty(A, B)
    if not B <= C or A.group.identity not in C:
        raise GroupError("needs B ⊆ C and 1 ∈ C")
    return _abc("abc-sets", A, B, C)


def check_abc_abelian(A: GSet, B: GSet, C: GSet) -> TheoremReport:
    """Abelian G and 1 ∈ C, with no containment between B and C."""
    _require_nonempty(A, B, C)
    if not A.group.is_abelian:
        raise GroupError("group is not abelian")
    if A.group.identity not in C:
        raise GroupError("needs 1 ∈ C")
    return _abc("abc-abelian", A, B, C)


def set_stabilizer(X: GSet) -> GSet:
    """{g : gX = X}."""
    G = X.group
    return GSet.of(G, (g for g in range(G.order) if G.left_translate(g, X.mask) == X.mask))


def kneser_check(A: GSet, B: GSet) -> TheoremReport:
    """Abelian G:  |AB| >= |AH| + |BH| - |H| with H the stabilizer of AB."""
    G = _same_group(A, B)
    _require_nonempty(A, B)
    if not G.is_abelian:
        raise GroupError("Kneser's bound is checked only for abelian groups")
    AB = product_set(A, B)
    H = set_stabilizer(AB)
    AH, BH = product_set(A, H), product_set(B, H)
    bound = len(AH) + len(BH) - len(H)
    return _report("kneser-sets", G, (A, B),
                   {"A": len(A), "B": len(B), "AB": len(AB), "H": len(H), "AH": len(AH), "BH": len(BH)},
                   bound, verdict_for(len(AB) >= bound), {"H": H.to_text()})


def _supersets(base: int, full: int):
    rest = full & ~base
    sub = rest
    while True:
        yield base | sub
        if sub == 0:
            return
        sub = (sub - 1) & rest


def abc_exhaustive(G: GroupTable, require_subset: bool = True) -> dict:
    """Every triple (A, B, C) with 1 ∈ C (and B ⊆ C when ``require_subset``).

    Whether ABC = AB depends only on AB and C, and the bound only grows
    with |A| + |B|, so triples are grouped by AB (and B when B ⊆ C is
    required) and each group is checked once against its largest |A| + |B|.
    The returned counts are per triple.
    """
    if G.order > 12:
        raise GroupError("exhaustive triples only for order <= 12")
    if not require_subset and not G.is_abelian:
        raise GroupError("the variant without B ⊆ C needs an abelian group")
    full, e = G.full, 1 << G.identity
    # key -> [largest |A|+|B|, number of (A, B), witness (A, B)]
    groups: dict = {}
    for B in range(1, full + 1):
        nb = B.bit_count()
        for A in range(1, full + 1):
            M = product_set(GSet(G, A), GSet(G, B)).mask
            key = (B, M) if require_subset else M
            size = A.bit_count() + nb
            g = groups.get(key)
            if g is None:
                groups[key] = [size, 1, (A, B)]
            else:
                g[1] += 1
                if size > g[0]:
                    g[0], g[2] = size, (A, B)
    counts = {"instances": 0, DEGENERATE: 0, HOLDS: 0, "violated": []}
    for key, (best, mult, wit) in groups.items():
        B, M = key if require_subset else (0, key)
        Mset = GSet(G, M)
        for C in _supersets(B | e, full):
            MC = product_set(Mset, GSet(G, C)).mask
            counts["instances"] += mult
            if MC == M:
                counts[DEGENERATE] += mult
            elif MC.bit_count() >= best:
                counts[HOLDS] += mult
            else:
                counts["violated"].append((wit[0], wit[1], C))
    return counts


# -- bridge to the linear side ----------------------------------------------------------------


def field_bridge(A, B) -> dict:
    """Set-side and linear Olson certificates for subspaces A, B of GF(q^n).

    The set side works in L^* with A∖{0}, B∖{0}; the two certificates are
    reported together and not compared.
    """
    from .subspace import nonzero_values
    from .theorems import olson_linear

    amb = A.ambient
    G = GroupTable.multiplicative(amb)
    As = GSet.of(G, (value_code(amb, v) - 1 for v in nonzero_values(A)))
    Bs = GSet.of(G, (value_code(amb, v) - 1 for v in nonzero_values(B)))
    S, H, side = olson_find(As, Bs)
    cert = olson_linear(A, B)
    return {
        "sets": {"S": len(S), "H": len(H), "side": side, "A": len(As), "B": len(Bs)},
        "linear": {"S": cert.S.dim, "H": cert.H.dim, "side": cert.side, "case": cert.case_tag},
    }
