"""Certificates and checks for lower bounds on dim <AB>.

Every ``check_*`` function returns a :class:`~kemperman.report.TheoremReport`;
a ``violated`` verdict means the computed instance contradicts the bound.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .errors import AmbientError, ConditionError, InvariantError
from .ffield import Element
from .report import DEGENERATE, HOLDS, NOT_APPLICABLE, VIOLATED, TheoremReport, verdict_for
from .subspace import (
    ENUM_CAP,
    Subspace,
    base_space,
    contains,
    enumerate_nonzero,
    first_nonzero,
    is_subspace_of,
    product_span,
    scale,
    span,
    subspace_intersect,
    subspace_sum,
    whole_space,
    zero_space,
)
from .transform import UP_A, UP_B, in_left_quotient, in_right_quotient, reduce_pair, rises, transform_pair

# check_torsion_free runs the Olson cross-check only below this many elements of <AB>
TORSION_CROSS_CHECK_LIMIT = 256


def _inputs(*spaces: Subspace) -> list[str]:
    return [s.describe() for s in spaces]


def _require_nonzero(*spaces: Subspace):
    if any(s.is_zero() for s in spaces):
        raise ValueError("subspaces must be nonzero")


# -- stabilizers and subfields ----------------------------------------------------------


@functools.lru_cache(maxsize=8192)
def stabilizer(V: Subspace) -> Subspace:
    """H = {x in L : xV ⊆ V}, as the intersection of the spaces V v⁻¹.

    In GF(q)(x) the result is checked to be K.
    """
    if V.is_zero():
        raise ValueError("stabilizer of {0} is undefined")
    H = None
    for v in V.basis():
        piece = scale(v.inverse(), V)
        H = piece if H is None else subspace_intersect(H, piece)
        if H.dim == 1:
            break
    if not V.ambient.is_finite and H.dim != 1:
        raise InvariantError("GF(q)(x) stabilizer is not K")
    return H


def is_field_subspace(V: Subspace) -> bool:
    """1 ∈ V and <VV> ⊆ V; for finite-dimensional V this makes V a field."""
    if V.is_zero() or not contains(V, V.ambient.one):
        return False
    return is_subspace_of(product_span(V, V), V)


def h_module_decompose(V: Subspace, H: Subspace, base: Subspace | None = None) -> list[Element]:
    """Representatives R with V = base ⊕ (⊕_{v in R} Hv).

    Greedy over the basis of V: a row outside the current span contributes
    Hv.  Requires H a field with <HV> = V (and <H base> = base).
    """
    if not is_field_subspace(H):
        raise ValueError("H is not a subfield")
    if product_span(H, V) != V:
        raise ValueError("V is not an H-module: <HV> != V")
    cur = base if base is not None else zero_space(V.ambient)
    start = cur.dim
    reps = []
    for v in V.basis():
        if contains(cur, v):
            continue
        Hv = product_span(H, span([v]))
        new = subspace_sum(cur, Hv)
        if new.dim != cur.dim + H.dim:
            raise InvariantError("H-orbit sum is not direct")
        reps.append(v)
        cur = new
    if cur != V or len(reps) * H.dim != V.dim - start:
        raise InvariantError("H-module decomposition incomplete")
    return reps


# -- linear Kneser bound ------------------------------------------------------------------


def check_kneser_linear(A: Subspace, B: Subspace) -> TheoremReport:
    """dim <AB> >= dim A + dim B - dim H, H the stabilizer of <AB>."""
    amb = A.ambient
    if A.is_zero() or B.is_zero():
        return TheoremReport("kneser-linear", amb.descriptor, _inputs(A, B),
                             {"A": A.dim, "B": B.dim}, None, NOT_APPLICABLE,
                             {"reason": "zero subspace"})
    AB = product_span(A, B)
    H = stabilizer(AB)
    bound = A.dim + B.dim - H.dim
    return TheoremReport(
        "kneser-linear", amb.descriptor, _inputs(A, B),
        {"A": A.dim, "B": B.dim, "AB": AB.dim, "H": H.dim},
        bound, verdict_for(AB.dim >= bound),
        {"stabilizer": H.describe()},
    )


# -- linear Olson ----------------------------------------------------------------------------


@dataclass(frozen=True)
class OlsonCertificate:
    S: Subspace
    H: Subspace
    side: str  # "right": <SH> = S, "left": <HS> = S
    case_tag: str  # "distinct-cosets" or "quotient-field"
    reduced_pair: tuple[Subspace, Subspace]
    witness: tuple | None = None
    steps: int = 0

    def verify(self, A: Subspace, B: Subspace) -> None:
        """Re-check every invariant from scratch; raises InvariantError."""
        S, H = self.S, self.H
        if S.is_zero():
            raise InvariantError("S is zero")
        if not contains(H, H.ambient.one) or not is_field_subspace(H):
            raise InvariantError("H is not a subfield containing K")
        if not is_subspace_of(S, product_span(A, B)):
            raise InvariantError("S is not inside <AB>")
        prod = product_span(S, H) if self.side == "right" else product_span(H, S)
        if prod != S:
            raise InvariantError("S is not stable under H")
        if S.dim < A.dim + B.dim - H.dim:
            raise InvariantError("dimension bound fails")

    def to_dict(self) -> dict:
        out = {
            "S": self.S.describe(),
            "H": self.H.describe(),
            "side": self.side,
            "case": self.case_tag,
            "E": self.reduced_pair[0].describe(),
            "F": self.reduced_pair[1].describe(),
            "steps": self.steps,
        }
        if self.witness is not None:
            out["witness"] = [str(w) for w in self.witness]
        return out


def _first_escape(X: Subspace, Y: Subspace, left_test, cap):
    """First (x1, x2) in X_* with x1 x2⁻¹ failing ``left_test`` against Y."""
    elems = list(enumerate_nonzero(X, cap))
    verdicts = {}
    for x1 in elems:
        for x2 in elems:
            d = x1 * x2.inverse()
            ok = verdicts.get(d)
            if ok is None:
                ok = verdicts[d] = left_test(d, Y)
            if not ok:
                return x1, x2
    return None


def olson_linear(A: Subspace, B: Subspace, cap: int = ENUM_CAP) -> OlsonCertificate:
    """Subspace S ⊆ <AB> and subfield H with HS = S or SH = S and
    dim S >= dim A + dim B - dim H, built from the reduced pair (E, F).

    The side with the larger dimension drives the case split (E on ties).
    """
    _require_nonzero(A, B)
    E, F, trace = reduce_pair(A, B, verify=True, cap=cap)
    K = base_space(A.ambient)
    S = product_span(E, F)
    if E.dim >= F.dim:
        esc = _first_escape(F, E, in_left_quotient, cap)
        if esc is not None:
            x1, x2 = esc
            if subspace_intersect(scale(x1, E), scale(x2, E)).dim != 0:
                raise InvariantError("Ex1 and Ex2 are not independent")
            if S.dim < 2 * E.dim:
                raise InvariantError("dim <EF> < 2 dim E in distinct-coset case")
            cert = OlsonCertificate(S, K, "right", "distinct-cosets", (E, F), esc, len(trace))
        else:
            z = first_nonzero(F)
            D = scale(z.inverse(), F)
            if not is_field_subspace(D):
                raise InvariantError("FF_*⁻¹ is not a field")
            cert = OlsonCertificate(S, D, "right", "quotient-field", (E, F), (z,), len(trace))
    else:
        # mirror: quotients y1⁻¹y2 of E tested against FF_*⁻¹
        esc = _first_escape(E, F, in_right_quotient, cap)
        if esc is not None:
            y1, y2 = esc
            if subspace_intersect(scale(y1, F), scale(y2, F)).dim != 0:
                raise InvariantError("y1F and y2F are not independent")
            if S.dim < 2 * F.dim:
                raise InvariantError("dim <EF> < 2 dim F in distinct-coset case")
            cert = OlsonCertificate(S, K, "left", "distinct-cosets", (E, F), esc, len(trace))
        else:
            z = first_nonzero(E)
            D = scale(z.inverse(), E)
            if not is_field_subspace(D):
                raise InvariantError("E_*⁻¹E is not a field")
            cert = OlsonCertificate(S, D, "left", "quotient-field", (E, F), (z,), len(trace))
    cert.verify(A, B)
    return cert


def check_olson_linear(A: Subspace, B: Subspace, cap: int = ENUM_CAP) -> TheoremReport:
    amb = A.ambient
    if A.is_zero() or B.is_zero():
        return TheoremReport("olson-linear", amb.descriptor, _inputs(A, B),
                             {"A": A.dim, "B": B.dim}, None, NOT_APPLICABLE,
                             {"reason": "zero subspace"})
    try:
        cert = olson_linear(A, B, cap)
    except InvariantError as exc:
        return TheoremReport("olson-linear", amb.descriptor, _inputs(A, B),
                             {"A": A.dim, "B": B.dim}, None, VIOLATED, {"error": str(exc)})
    return TheoremReport(
        "olson-linear", amb.descriptor, _inputs(A, B),
        {"A": A.dim, "B": B.dim, "AB": product_span(A, B).dim, "S": cert.S.dim, "H": cert.H.dim},
        A.dim + B.dim - cert.H.dim, HOLDS, cert.to_dict(),
    )


def check_prime_degree(A: Subspace, B: Subspace) -> TheoremReport:
    """For [L:K] prime: <AB> = L or dim <AB> >= dim A + dim B - 1."""
    amb = A.ambient
    n = amb.n
    if any(n % d == 0 for d in range(2, n)) or n < 2:
        raise AmbientError(f"extension degree {n} is not prime")
    if A.is_zero() or B.is_zero():
        return TheoremReport("prime-degree", amb.descriptor, _inputs(A, B),
                             {"A": A.dim, "B": B.dim}, None, NOT_APPLICABLE,
                             {"reason": "zero subspace"})
    AB = product_span(A, B)
    bound = A.dim + B.dim - 1
    if AB.dim == n:
        return TheoremReport("prime-degree", amb.descriptor, _inputs(A, B),
                             {"A": A.dim, "B": B.dim, "AB": AB.dim}, bound, DEGENERATE,
                             {"branch": "<AB> = L"})
    return TheoremReport("prime-degree", amb.descriptor, _inputs(A, B),
                         {"A": A.dim, "B": B.dim, "AB": AB.dim}, bound,
                         verdict_for(AB.dim >= bound), {})


def check_torsion_free(A: Subspace, B: Subspace, cross_check: bool | None = None) -> TheoremReport:
    """In GF(q)(x): dim <AB> >= dim A + dim B - 1.

    With ``cross_check`` (default: when <AB> has at most
    ``TORSION_CROSS_CHECK_LIMIT`` elements) the Olson certificate must have H = K.
    """
    amb = A.ambient
    if amb.is_finite:
        raise AmbientError("torsion-free check needs a rational function field")
    _require_nonzero(A, B)
    AB = product_span(A, B)
    bound = A.dim + B.dim - 1
    ok = AB.dim >= bound
    cert: dict = {}
    if cross_check is None:
        cross_check = amb.q ** AB.dim <= TORSION_CROSS_CHECK_LIMIT
    if cross_check:
        olson = olson_linear(A, B)
        cert["olson_H_dim"] = olson.H.dim
        cert["olson_case"] = olson.case_tag
        ok = ok and olson.H.dim == 1
    else:
        cert["olson_cross_check"] = "skipped"
    return TheoremReport("torsion-free", amb.descriptor, _inputs(A, B),
                         {"A": A.dim, "B": B.dim, "AB": AB.dim}, bound, verdict_for(ok), cert)


# -- full product and duality ---------------------------------------------------------------


def _functional(amb, phi, v) -> int:
    F = amb.F
    acc = 0
    for c, x in zip(phi, v):
        if c and x:
            acc = F.add(acc, F.mul(c, x))
    return acc


def duality_witness(A: Subspace, B: Subspace, phi) -> tuple[Element, Element]:
    """(a, b) with phi(ab) != 0, scanning basis rows of A, then of B."""
    amb = A.ambient
    if not amb.is_finite:
        raise AmbientError("duality witness needs a finite extension")
    phi = tuple(phi)
    if len(phi) != amb.n or not any(phi):
        raise ValueError("phi must be a nonzero vector of length n")
    if A.dim + B.dim <= amb.n:
        raise ValueError("needs dim A + dim B > dim L")
    for a in A.basis():
        for b in B.basis():
            if _functional(amb, phi, amb.mul(a.value, b.value)):
                return a, b
    raise InvariantError("no duality witness although dim A + dim B > dim L")


def check_full_product(A: Subspace, B: Subspace, witnesses: bool = True) -> TheoremReport:
    """dim A + dim B > dim L forces <AB> = L.

    With ``witnesses`` a duality witness is found for each coordinate
    functional, showing <AB> lies in no coordinate hyperplane.
    """
    amb = A.ambient
    if not amb.is_finite:
        raise AmbientError("full-product check needs a finite extension")
    n = amb.n
    dims = {"A": A.dim, "B": B.dim}
    if A.is_zero() or B.is_zero() or A.dim + B.dim <= n:
        return TheoremReport("full-product", amb.descriptor, _inputs(A, B), dims, None,
                             NOT_APPLICABLE, {"reason": "dim A + dim B <= dim L"})
    AB = product_span(A, B)
    dims["AB"] = AB.dim
    ok = AB == whole_space(amb)
    cert = {}
    if witnesses:
        pairs = []
        for i in range(n):
            phi = tuple(1 if j == i else 0 for j in range(n))
            a, b = duality_witness(A, B, phi)
            pairs.append([str(a), str(b)])
        cert["witnesses"] = pairs
    return TheoremReport("full-product", amb.descriptor, _inputs(A, B), dims, n, verdict_for(ok), cert)


# -- unique representation ---------------------------------------------------------------------


@dataclass(frozen=True)
class UniqueRepInstance:
    """A = K ⊕ Abar, B = K ⊕ Bbar and K ∩ (Abar + Bbar + <Abar Bbar>) = {0}."""

    A: Subspace
    B: Subspace
    Abar: Subspace
    Bbar: Subspace

    def __post_init__(self):
        problem = cond_violation(self.A, self.B, self.Abar, self.Bbar)
        if problem:
            raise ConditionError(problem)

    @classmethod
    def from_complements(cls, Abar: Subspace, Bbar: Subspace) -> "UniqueRepInstance":
        K = base_space(Abar.ambient)
        return cls(subspace_sum(K, Abar), subspace_sum(K, Bbar), Abar, Bbar)


def cond_violation(A, B, Abar, Bbar) -> str | None:
    """Describe which part of the unique-representation condition fails."""
    K = base_space(A.ambient)
    one = A.ambient.one
    if subspace_sum(K, Abar) != A or contains(Abar, one) or A.dim != Abar.dim + 1:
        return "A is not K ⊕ Abar"
    if subspace_sum(K, Bbar) != B or contains(Bbar, one) or B.dim != Bbar.dim + 1:
        return "B is not K ⊕ Bbar"
    W = subspace_sum(subspace_sum(Abar, Bbar), product_span(Abar, Bbar))
    if contains(W, one):
        return "K meets Abar + Bbar + <Abar Bbar>"
    return None


def unique_rep_transform_step(inst: UniqueRepInstance, d: Element,
                              variant: str | None = None) -> tuple[UniqueRepInstance, str]:
    """One transform along d ∈ Abar ∩ Bbar; the condition is re-verified.

    Up-A:  Abar + Ad,  Bbar ∩ d⁻¹Bbar;   Up-B:  Abar ∩ Abar d⁻¹,  Bbar + dB.
    """
    if d.is_zero() or not contains(inst.Abar, d) or not contains(inst.Bbar, d):
        raise ValueError("pivot must be a nonzero element of Abar ∩ Bbar")
    if variant is None:
        ra, rb = rises(inst.A, inst.B, d)
        variant = UP_A if ra >= rb else UP_B
    A1, B1 = transform_pair(inst.A, inst.B, d, variant)
    dinv = d.inverse()
    if variant == UP_A:
        Abar1 = subspace_sum(inst.Abar, scale(d, inst.A))
        Bbar1 = subspace_intersect(inst.Bbar, scale(dinv, inst.Bbar))
    else:
        Abar1 = subspace_intersect(inst.Abar, scale(dinv, inst.Abar))
        Bbar1 = subspace_sum(inst.Bbar, scale(d, inst.B))
    problem = cond_violation(A1, B1, Abar1, Bbar1)
    if problem:
        raise InvariantError(f"transform broke the condition: {problem}")
    return UniqueRepInstance(A1, B1, Abar1, Bbar1), variant


def unique_rep_reduce(inst: UniqueRepInstance) -> tuple[UniqueRepInstance, list[str]]:
    """Transform until Abar ∩ Bbar = {0}, pivoting on its first nonzero element."""
    limit = 2 * product_span(inst.A, inst.B).dim ** 2
    variants = []
    while True:
        meet = subspace_intersect(inst.Abar, inst.Bbar)
        if meet.is_zero():
            return inst, variants
        if len(variants) >= limit:
            raise InvariantError("unique-representation reduction exceeded safety bound")
        before = (inst.A.dim + inst.B.dim, inst.A.dim)
        inst, v = unique_rep_transform_step(inst, first_nonzero(meet))
        if not (inst.A.dim + inst.B.dim, inst.A.dim) > before:
            raise InvariantError("lexicographic measure did not increase")
        variants.append(v)


def check_unique_rep(inst: UniqueRepInstance, reduce: bool = True) -> TheoremReport:
    """dim <AB> >= dim A + dim B - 1 under the unique-representation condition."""
    A, B = inst.A, inst.B
    amb = A.ambient
    AB = product_span(A, B)
    meet = subspace_intersect(inst.Abar, inst.Bbar)
    bound = A.dim + B.dim - 1
    ok = AB.dim >= bound
    cert: dict = {"case": 1 if meet.is_zero() else 2, "meet_dim": meet.dim}
    if reduce:
        final, variants = unique_rep_reduce(inst)
        E, F = final.A, final.B
        EF = product_span(E, F)
        ok = ok and subspace_intersect(E, F) == base_space(amb)
        ok = ok and is_subspace_of(EF, AB) and E.dim + F.dim >= A.dim + B.dim
        ok = ok and EF.dim >= E.dim + F.dim - 1
        cert["steps"] = variants
        cert["reduced_dims"] = [E.dim, F.dim]
    return TheoremReport("unique-rep", amb.descriptor, _inputs(A, B, inst.Abar, inst.Bbar),
                         {"A": A.dim, "B": B.dim, "AB": AB.dim}, bound, verdict_for(ok), cert)


# -- ABC theorem and its corollary -----------------------------------------------------------------


def check_abc_linear(A: Subspace, B: Subspace, C: Subspace) -> TheoremReport:
    """<ABC> = <AB> or dim <ABC> >= dim A + dim B (for 1 ∈ C).

    On the second branch the stabilizer H of <AB> must also split
    <ABC> = <AB> ⊕ (⊕ Hv), so the dimension gap is a multiple of dim H.
    """
    amb = A.ambient
    _require_nonzero(A, B)
    if not contains(C, amb.one):
        raise ConditionError("C must contain 1")
    AB = product_span(A, B)
    ABC = product_span(AB, C)
    dims = {"A": A.dim, "B": B.dim, "C": C.dim, "AB": AB.dim, "ABC": ABC.dim}
    bound = A.dim + B.dim
    if ABC == AB:
        return TheoremReport("abc-linear", amb.descriptor, _inputs(A, B, C), dims, bound,
                             DEGENERATE, {"branch": "<ABC> = <AB>"})
    H = stabilizer(AB)
    dims["H"] = H.dim
    ok = ABC.dim >= bound
    refined = (ABC.dim - AB.dim) % H.dim == 0
    reps = None
    if refined and H.dim > 1:
        try:
            reps = h_module_decompose(ABC, H, base=AB)
        except (ValueError, InvariantError):
            refined = False
    cert = {"divisibility": refined}
    if reps is not None:
        cert["representatives"] = len(reps)
    return TheoremReport("abc-linear", amb.descriptor, _inputs(A, B, C), dims, bound,
                         verdict_for(ok and refined), cert)


def check_cor3(A: Subspace, B: Subspace, cap: int = ENUM_CAP) -> TheoremReport:
    """<AB B_*⁻¹B> = <AB> or dim <AB²> >= dim A + dim B."""
    amb = A.ambient
    _require_nonzero(A, B)
    AB = product_span(A, B)
    AB2 = product_span(AB, B)
    total = AB
    seen = set()
    for b0 in enumerate_nonzero(B, cap):
        piece = scale(b0.inverse(), AB2)
        if piece in seen:
            continue
        seen.add(piece)
        total = subspace_sum(total, piece)
    dims = {"A": A.dim, "B": B.dim, "AB": AB.dim, "AB2": AB2.dim, "ABBinvB": total.dim}
    bound = A.dim + B.dim
    if total == AB:
        return TheoremReport("cor3", amb.descriptor, _inputs(A, B), dims, bound, DEGENERATE,
                             {"branch": "<AB B_*⁻¹B> = <AB>"})
    return TheoremReport("cor3", amb.descriptor, _inputs(A, B), dims, bound,
                         verdict_for(AB2.dim >= bound), {})


# -- powers -------------------------------------------------------------------------------


@dataclass
class PowerChainReport:
    B: Subspace
    dims: list[int]
    stabilization_n: int | None
    is_field_at_n: bool
    bound_2dimL_over_dimB: int | None
    substitution: Element | None = None
    checks: dict | None = None

    @property
    def ok(self) -> bool:
        return all(self.checks.values()) if self.checks else True

    def to_report(self) -> TheoremReport:
        cert = {
            "stabilization_n": self.stabilization_n,
            "is_field_at_n": self.is_field_at_n,
            "checks": self.checks,
        }
        if self.stabilization_n is None:
            cert["stop_reached"] = len(self.dims)
        if self.substitution is not None:
            cert["normalized_by"] = str(self.substitution)
        return TheoremReport("power-chain", self.B.ambient.descriptor, _inputs(self.B),
                             {"B": self.B.dim, "chain": list(self.dims)},
                             self.bound_2dimL_over_dimB, verdict_for(self.ok), cert)


def power_chain(B: Subspace, stop: int | None = None) -> PowerChainReport:
    """Follow B ⊂ <B²> ⊂ ... to the least n with <B^n> = <B^(n+1)>.

    If 1 ∉ B, B is first replaced by b⁻¹B for its first nonzero element b.
    At n the three equivalent conditions <B^(n+1)> = <B^n>,
    <B^(2n)> = <B^n> and "<B^n> is a field" are checked, and shown to fail
    before n; the growth dichotomy
    <B^(i+1)> = <B^i> or dim <B^(i+1)> >= dim <B^(i-1)> + dim B
    is checked at every index, and n <= floor(2 dim L / dim B) in GF(q^n).
    """
    _require_nonzero(B)
    amb = B.ambient
    sub = None
    if not contains(B, amb.one):
        sub = first_nonzero(B)
        B = scale(sub.inverse(), B)
    if stop is None:
        if not amb.is_finite:
            raise ValueError("a stop index is required in GF(q)(x)")
        stop = amb.n + 1
    if stop < 1:
        raise ValueError("stop must be >= 1")
    chain = [base_space(amb), B]  # chain[i] = <B^i>
    n = None
    while len(chain) - 1 <= stop:
        nxt = product_span(chain[-1], B)
        if nxt == chain[-1]:
            n = len(chain) - 1
            break
        chain.append(nxt)
    top = n if n is not None else stop
    dims = [chain[i].dim for i in range(1, top + 1)]
    checks = {}
    checks["strictly_increasing"] = all(dims[i] < dims[i + 1] for i in range(len(dims) - 1))
    # growth dichotomy at i = 1..top-1, plus i = n where it holds by equality
    dich = True
    for i in range(1, len(chain) - 1):
        nxt, cur, prev = chain[i + 1], chain[i], chain[i - 1]
        dich = dich and (nxt == cur or nxt.dim >= prev.dim + B.dim)
    checks["growth_dichotomy"] = dich
    # for i < n none of the three equivalent conditions may hold
    before = True
    for i in range(1, top):
        P = chain[i]
        before = before and not is_field_subspace(P) and product_span(P, P) != P
    checks["no_early_field"] = before
    is_field = False
    if n is not None:
        P = chain[n]
        is_field = is_field_subspace(P)
        checks["field_at_n"] = is_field
        checks["square_at_n"] = product_span(P, P) == P
        cur, constant = P, True
        for _ in range(n, 2 * n):
            cur = product_span(cur, B)
            constant = constant and cur == P
        checks["constant_to_2n"] = constant
    bound = None
    if amb.is_finite:
        bound = (2 * amb.n) // B.dim
        checks["exponent_bound"] = n is not None and n <= bound
    return PowerChainReport(B, dims, n, is_field, bound, sub, checks)
