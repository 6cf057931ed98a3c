import dataclasses

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kemperman import (
    AmbientError,
    ConditionError,
    InvariantError,
    UniqueRepInstance,
    base_space,
    check_abc_linear,
    check_cor3,
    check_full_product,
    check_kneser_linear,
    check_torsion_free,
    check_unique_rep,
    duality_witness,
    h_module_decompose,
    is_field_subspace,
    make_ambient,
    olson_linear,
    power_chain,
    product_span,
    scale,
    span,
    stabilizer,
    subfield,
    unique_rep_transform_step,
    whole_space,
    zero_space,
)
from kemperman.campaign import all_subspaces
from kemperman.subspace import enumerate_nonzero
from kemperman.theorems import check_prime_degree, cond_violation

GF16 = make_ambient("gf:2:4")
T, ONE = GF16.gen, GF16.one
K16 = base_space(GF16)
GF4_IN_16 = subfield(GF16, 2)


def brute_stabilizer(V):
    amb = V.ambient
    elems = set(enumerate_nonzero(V)) | {amb.zero}
    return {amb.from_code(k) for k in range(amb.q ** amb.n)
            if all(amb.from_code(k) * v in elems for v in elems)}


@pytest.mark.parametrize("desc", ["gf:2:4", "gf:3:2", "gf:2:6"])
def test_stabilizer_matches_brute_force(desc):
    amb = make_ambient(desc)
    fields = [subfield(amb, d) for d in range(1, amb.n + 1) if amb.n % d == 0]
    pool = [V for V in all_subspaces(amb) if not V.is_zero()]
    if len(pool) > 200:
        pool = pool[::13]
    for V in pool:
        H = stabilizer(V)
        assert set(enumerate_nonzero(H)) | {amb.zero} == brute_stabilizer(V)
        assert is_field_subspace(H) and H in fields


def test_stabilizer_examples():
    assert stabilizer(whole_space(GF16)) == whole_space(GF16)
    assert stabilizer(span([ONE, T])) == K16
    assert stabilizer(GF4_IN_16) == GF4_IN_16
    with pytest.raises(ValueError):
        stabilizer(zero_space(GF16))
    rat = make_ambient("ratfun:2")
    x = rat.gen
    assert stabilizer(span([rat.one, x, x * x])).dim == 1


def test_is_field_subspace():
    assert is_field_subspace(K16)
    assert not is_field_subspace(span([ONE, T]))
    assert is_field_subspace(GF4_IN_16)
    assert not is_field_subspace(span([T]))


def test_kneser_examples():
    r = check_kneser_linear(span([ONE, T]), span([ONE, T]))
    assert r.verdict == "holds" and r.dims["AB"] == 3 and r.dims["H"] == 1 and r.bound == 3
    L = whole_space(GF16)
    r = check_kneser_linear(L, L)
    assert r.verdict == "holds" and r.dims["AB"] == r.bound == 4
    assert check_kneser_linear(zero_space(GF16), L).verdict == "not-applicable"


def test_olson_examples():
    c = olson_linear(K16, K16)
    assert c.S == K16 and c.H == K16
    A = span([ONE, T])
    c = olson_linear(A, A)
    assert c.reduced_pair == (span([ONE, T, T * T]), K16)
    assert c.case_tag == "quotient-field" and c.H == K16 and c.S == span([ONE, T, T * T])
    c = olson_linear(GF4_IN_16, GF4_IN_16)
    assert c.case_tag == "quotient-field" and c.H == GF4_IN_16 and c.S == GF4_IN_16
    assert c.S.dim >= 2 + 2 - c.H.dim


def test_olson_certificate_rejects_tampering():
    A = span([ONE, T])
    c = olson_linear(A, A)
    c.verify(A, A)
    with pytest.raises(InvariantError):
        dataclasses.replace(c, S=span([T ** 3])).verify(A, A)
    with pytest.raises(InvariantError):
        dataclasses.replace(c, H=span([ONE, T])).verify(A, A)
    with pytest.raises(InvariantError):
        dataclasses.replace(c, S=span([ONE])).verify(A, A)


@st.composite
def pairs(draw, desc=None):
    desc = desc or draw(st.sampled_from(["gf:2:4", "gf:3:3", "gf:2:6", "gf:4:2"]))
    pool = [S for S in all_subspaces(make_ambient(desc)) if not S.is_zero()]
    return draw(st.sampled_from(pool)), draw(st.sampled_from(pool))


@given(pairs())
def test_olson_certificate_always_verifies(pair):
    A, B = pair
    c = olson_linear(A, B)
    c.verify(A, B)
    H = c.H
    amb = A.ambient
    assert H in [subfield(amb, d) for d in range(1, amb.n + 1) if amb.n % d == 0]
    side = product_span(c.S, H)
    assert side == c.S


@given(pairs("gf:2:5"))
def test_prime_degree_dichotomy(pair):
    r = check_prime_degree(*pair)
    assert r.verdict in ("holds", "degenerate-branch")


def test_prime_degree_rejects_composite():
    with pytest.raises(AmbientError):
        check_prime_degree(K16, K16)


def test_full_product_examples():
    L = whole_space(GF16)
    assert check_full_product(L, L).verdict == "holds"
    gf4 = make_ambient("gf:2:2")
    assert check_full_product(whole_space(gf4), base_space(gf4)).verdict == "holds"
    r = check_full_product(span([ONE, T, T * T]), span([ONE, T]))
    assert r.verdict == "holds" and len(r.certificate["witnesses"]) == 4
    assert check_full_product(span([ONE, T]), span([ONE, T])).verdict == "not-applicable"


def test_duality_witness_examples():
    gf4 = make_ambient("gf:2:2")
    a, b = duality_witness(base_space(gf4), whole_space(gf4), (0, 1))
    assert (a, b) == (gf4.one, gf4.gen)
    A = span([ONE, T, T * T])
    assert duality_witness(A, A, (0, 0, 0, 1)) == (T, T * T)
    assert duality_witness(A, A, (1, 0, 0, 0)) == (ONE, ONE)
    with pytest.raises(ValueError):
        duality_witness(span([ONE]), span([ONE]), (1, 0, 0, 0))


@given(pairs("gf:2:4"), st.integers(1, 15))
def test_duality_witness_for_any_functional(pair, code):
    A, B = pair
    if A.dim + B.dim <= 4:
        return
    phi = GF16.from_code(code).value
    a, b = duality_witness(A, B, phi)
    v = (a * b).value
    assert sum(c * x for c, x in zip(phi, v)) % 2 == 1


def test_torsion_free_examples():
    amb = make_ambient("ratfun:2")
    x, one = amb.gen, amb.one
    K = base_space(amb)
    assert check_torsion_free(K, K).verdict == "holds"
    A = span([x ** i for i in range(3)])
    B = span([x ** i for i in range(4)])
    r = check_torsion_free(A, B)
    assert r.verdict == "holds" and r.dims["AB"] == 6 == r.bound
    r = check_torsion_free(span([x.inverse(), one]), span([one, x]))
    assert r.dims["AB"] == 3 and r.certificate["olson_H_dim"] == 1
    with pytest.raises(AmbientError):
        check_torsion_free(K16, K16)


def test_unique_rep_examples():
    inst = UniqueRepInstance.from_complements(zero_space(GF16), zero_space(GF16))
    assert check_unique_rep(inst).verdict == "holds"
    inst = UniqueRepInstance.from_complements(span([T]), span([T]))
    r = check_unique_rep(inst)
    assert r.verdict == "holds" and r.dims["AB"] == 3 and r.certificate["case"] == 2
    new, variant = unique_rep_transform_step(inst, T, "Up-A")
    assert new.Abar == span([T, T * T]) and new.Bbar.is_zero()
    rat = make_ambient("ratfun:2")
    x = rat.gen
    with pytest.raises(ConditionError):
        UniqueRepInstance.from_complements(span([x]), span([x.inverse()]))


def test_unique_rep_step_requires_common_element():
    inst = UniqueRepInstance.from_complements(span([T]), span([T * T]))
    with pytest.raises(ValueError):
        unique_rep_transform_step(inst, T)


def test_cond_violation_messages():
    assert cond_violation(span([ONE, T]), K16, span([ONE]), zero_space(GF16)) is not None
    assert cond_violation(span([ONE, T]), span([ONE, T]), span([T]), span([T])) is None


def test_abc_examples():
    A = span([ONE, T])
    assert check_abc_linear(A, A, K16).verdict == "degenerate-branch"
    r = check_abc_linear(A, A, A)
    assert r.verdict == "holds" and r.dims["ABC"] == 4
    r = check_abc_linear(GF4_IN_16, GF4_IN_16, A)
    assert r.verdict == "holds" and r.dims["AB"] == 2 and r.dims["ABC"] == 4
    assert r.certificate["representatives"] == 1
    with pytest.raises(ConditionError):
        check_abc_linear(A, A, span([T]))


def test_h_module_decompose():
    L = whole_space(GF16)
    assert len(h_module_decompose(L, GF4_IN_16)) == 2
    assert h_module_decompose(GF4_IN_16, GF4_IN_16) == [ONE]
    V = span([ONE, T])
    assert h_module_decompose(V, K16) == V.basis()
    with pytest.raises(ValueError):
        h_module_decompose(V, GF4_IN_16)


def test_cor3_examples():
    A = span([ONE, T])
    assert check_cor3(A, K16).verdict == "degenerate-branch"
    r = check_cor3(K16, A)
    assert r.verdict == "holds" and r.dims["AB2"] == 3
    assert check_cor3(whole_space(GF16), A).verdict == "degenerate-branch"


def test_power_chain_examples():
    r = power_chain(K16)
    assert r.stabilization_n == 1 and r.is_field_at_n and r.ok
    r = power_chain(span([ONE, T]))
    assert r.dims == [2, 3, 4] and r.stabilization_n == 3
    assert r.bound_2dimL_over_dimB == 4 and r.ok
    r = power_chain(span([T, T * T]))
    assert r.substitution == T and r.B == span([ONE, T]) and r.ok


def test_power_chain_rational_needs_stop():
    amb = make_ambient("ratfun:2")
    B = span([amb.one, amb.gen])
    with pytest.raises(ValueError):
        power_chain(B)
    r = power_chain(B, stop=5)
    assert r.stabilization_n is None and r.dims == [2, 3, 4, 5, 6]
    assert r.to_report().certificate["stop_reached"] == 5


@pytest.mark.parametrize("desc", ["gf:2:4", "gf:3:2", "gf:2:6"])
def test_power_chain_against_brute_field_check(desc):
    amb = make_ambient(desc)
    fields = {subfield(amb, d) for d in range(1, amb.n + 1) if amb.n % d == 0}
    for B in all_subspaces(amb):
        if B.is_zero() or amb.one not in B:
            continue
        r = power_chain(B)
        assert r.ok, r.checks
        P = B
        for _ in range(r.stabilization_n - 1):
            P = product_span(P, B)
        assert P in fields
        assert r.stabilization_n == len(r.dims)


def test_scale_keeps_stabilizer():
    V = span([ONE, T])
    assert stabilizer(scale(T, V)) == stabilizer(V)
