import dataclasses

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kemperman import InvariantError, make_ambient, product_span, scale, span, subfield
from kemperman.campaign import all_subspaces
from kemperman.subspace import enumerate_nonzero, is_subspace_of
from kemperman.transform import (
    UP_A,
    UP_B,
    find_pivot,
    in_left_quotient,
    in_right_quotient,
    reduce_pair,
    stable_set_violations,
    transform_pair,
)

GF16 = make_ambient("gf:2:4")
T, ONE = GF16.gen, GF16.one


def quotient_set(A):
    vals = list(enumerate_nonzero(A))
    return {a.inverse() * b for a in vals for b in vals}


def brute_d(A, B):
    return quotient_set(A) & quotient_set(B)


def nonzero_pool(desc):
    return [S for S in all_subspaces(make_ambient(desc)) if not S.is_zero()]


@st.composite
def pairs(draw):
    desc = draw(st.sampled_from(["gf:2:4", "gf:3:2", "gf:2:3", "gf:4:2"]))
    pool = nonzero_pool(desc)
    return draw(st.sampled_from(pool)), draw(st.sampled_from(pool))


def test_quotient_membership_matches_brute_force():
    pool = nonzero_pool("gf:2:4")
    for A in pool:
        Q = quotient_set(A)
        for k in range(1, 16):
            d = GF16.from_code(k)
            assert in_left_quotient(d, A) == (d in Q)
            assert in_right_quotient(d, A) == (d in Q)


def test_quotient_examples():
    assert in_left_quotient(ONE, span([T]))
    assert in_left_quotient(T, span([ONE, T]))
    assert not in_left_quotient(T, span([ONE]))
    with pytest.raises(ZeroDivisionError):
        in_left_quotient(GF16.zero, span([ONE]))


def test_transform_examples():
    A = span([ONE, T])
    assert transform_pair(A, A, ONE, UP_A) == (A, A)
    assert scale(T.inverse(), A) == span([T ** 3 + 1, ONE])
    assert transform_pair(A, A, T, UP_A) == (span([ONE, T, T * T]), span([ONE]))
    assert transform_pair(A, A, T, UP_B) == (span([ONE]), span([ONE, T, T * T]))
    with pytest.raises(ZeroDivisionError):
        transform_pair(A, A, GF16.zero)


@given(pairs(), st.data())
def test_transform_properties(pair, data):
    A, B = pair
    amb = A.ambient
    x = amb.from_code(data.draw(st.integers(1, amb.q ** amb.n - 1)))
    AB = product_span(A, B)
    A1, B1 = transform_pair(A, B, x, UP_A)
    assert is_subspace_of(product_span(A1, B1), AB)
    assert (not B1.is_zero()) == in_right_quotient(x, B)
    assert (A1.dim > A.dim) == (scale(x, A) != A)
    A2, B2 = transform_pair(A, B, x, UP_B)
    assert is_subspace_of(product_span(A2, B2), AB)
    assert (not A2.is_zero()) == in_left_quotient(x, A)
    assert (B2.dim > B.dim) == (scale(x, B) != B)


@given(pairs())
def test_find_pivot_agrees_with_brute_force(pair):
    A, B = pair
    D = brute_d(A, B)
    moving = [d for d in D if scale(d, A) != A or scale(d, B) != B]
    d = find_pivot(A, B)
    if not moving:
        assert d is None
    else:
        assert d in moving


@given(pairs())
def test_reduce_pair_guarantees(pair):
    A, B = pair
    E, F, trace = reduce_pair(A, B)
    assert not E.is_zero() and not F.is_zero()
    assert E.dim + F.dim >= A.dim + B.dim
    AB = product_span(A, B)
    assert is_subspace_of(product_span(E, F), AB)
    assert len(trace) <= 2 * AB.dim ** 2
    for u in brute_d(E, F):
        assert scale(u, E) == E and scale(u, F) == F
    prev = (A, B)
    for step, cur in zip(trace.steps, trace.pairs):
        assert (cur[0].dim + cur[1].dim, cur[0].dim) > (prev[0].dim + prev[1].dim, prev[0].dim)
        assert max(cur[0].dim, cur[1].dim) <= AB.dim
        assert (step.variant == UP_A) == (step.rise_a >= step.rise_b)
        prev = cur


def test_reduce_examples():
    K = span([ONE])
    E, F, trace = reduce_pair(K, K)
    assert (E, F) == (K, K) and len(trace) == 0
    A = span([ONE, T])
    assert find_pivot(A, A) == T
    E, F, trace = reduce_pair(A, A)
    assert (E, F) == (span([ONE, T, T * T]), K)
    assert [s.to_dict() for s in trace.steps] == [{
        "pivot": "0,1,0,0", "variant": UP_A, "rise_a": 1, "rise_b": 1,
        "dims_before": [2, 2], "dims_after": [3, 1],
    }]
    G4 = subfield(GF16, 2)
    assert find_pivot(G4, G4) is None
    assert reduce_pair(G4, G4)[:2] == (G4, G4)
    assert find_pivot(K, K) is None


def test_rational_reduce():
    amb = make_ambient("ratfun:3")
    x, one = amb.gen, amb.one
    A = span([one, x, one / (x + 1)])
    B = span([one, x * x])
    E, F, trace = reduce_pair(A, B)
    assert E.dim + F.dim >= 5
    assert is_subspace_of(product_span(E, F), product_span(A, B))
    assert stable_set_violations(E, F) == []


def test_trace_verify_catches_tampering():
    A = span([ONE, T])
    _, _, trace = reduce_pair(A, A)
    trace.verify()
    step = trace.steps[0]
    trace.steps[0] = dataclasses.replace(step, rise_b=0)
    with pytest.raises(InvariantError):
        trace.verify()
    trace.steps[0] = step
    trace.pairs[0] = (A, A)
    with pytest.raises(InvariantError):
        trace.verify()


def test_stable_set_violations_flags_unstable_pair():
    for A in [span([ONE, T]), span([T, T ** 3])]:
        moving = {d for d in brute_d(A, A) if scale(d, A) != A}
        assert moving and set(stable_set_violations(A, A)) == moving


def test_zero_inputs_rejected():
    Z = span([], GF16)
    with pytest.raises(ValueError):
        reduce_pair(Z, span([ONE]))
    with pytest.raises(ValueError):
        find_pivot(span([ONE]), Z)
