import io
import json

import numpy as np
import pytest

from kemperman import EnumerationCapError, Subspace, make_ambient
from kemperman.campaign import (
    Campaign,
    _group_count,
    gaussian_binomial,
    instance_count,
    instance_rng,
    parse_dims,
    random_cond_instance,
    random_subspace,
    run_campaign,
    sharpness_search,
)
from kemperman.subspace import contains

GF16 = make_ambient("gf:2:4")


def run(c):
    buf = io.StringIO()
    summary = run_campaign(c, buf)
    return summary, buf.getvalue()


def test_gaussian_binomial_values():
    assert [gaussian_binomial(4, k, 2) for k in range(5)] == [1, 15, 35, 15, 1]
    assert gaussian_binomial(3, 1, 3) == 13
    assert gaussian_binomial(2, 3, 2) == 0


def test_random_subspace_seed_42_is_frozen():
    V = random_subspace(GF16, 2, np.random.default_rng(42))
    assert V.describe() == "0,1,0,1;0,0,1,1"
    # same stream drawn by hand: the two rows must span V
    rng = np.random.default_rng(42)
    rows = [tuple(int(c) for c in rng.integers(0, 2, size=4)) for _ in range(2)]
    assert V == Subspace.from_describe(GF16, ";".join(",".join(map(str, r)) for r in rows))


def test_random_subspace_dims_and_flags():
    rng = instance_rng(1, 0)
    for d in range(1, 5):
        V = random_subspace(GF16, d, rng)
        assert V.dim == d
        assert contains(random_subspace(GF16, d, rng, contains_one=True), GF16.one)
    assert random_subspace(GF16, 4, rng).dim == 4
    with pytest.raises(ValueError):
        random_subspace(GF16, 5, rng)
    rat = make_ambient("ratfun:3")
    assert random_subspace(rat, 3, rng).dim == 3
    with pytest.raises(ValueError):
        random_subspace(rat, 9, rng)


def test_random_subspace_is_roughly_uniform():
    # 35 two-dimensional subspaces of GF(16); each should appear
    rng = np.random.default_rng(0)
    seen = {random_subspace(GF16, 2, rng) for _ in range(2000)}
    assert len(seen) == 35


def test_random_cond_instance():
    rng = instance_rng(5, 3)
    inst = random_cond_instance(make_ambient("gf:2:6"), ((1, 3), (1, 3)), rng)
    assert inst is not None and inst.A.dim <= 3


def test_parse_dims():
    assert parse_dims("2,3") == ((2, 2), (3, 3))
    assert parse_dims("1-3,2") == ((1, 3), (2, 2))
    assert parse_dims(None) == ()
    with pytest.raises(ValueError):
        parse_dims("a,b")


def test_exhaustive_counts():
    c = Campaign("linear", "kneser-linear", "gf:2:4", exhaustive=True)
    assert instance_count(c) == 67 ** 2
    c = Campaign("linear", "abc-linear", "gf:2:4", exhaustive=True)
    assert instance_count(c) == 66 * 66 * 16
    c = Campaign("linear", "power-chain", "gf:2:6", exhaustive=True)
    assert instance_count(c) == 374
    c = Campaign("group", "abc", "cyclic:6", exhaustive=True)
    brute = sum(1 for b in range(1, 64) for cc in range(1, 64) if cc & 1 and b & ~cc == 0)
    assert _group_count(c) == 63 * brute


def test_group_exhaustive_campaign():
    summary, text = run(Campaign("group", "abc", "cyclic:4", exhaustive=True))
    lines = text.splitlines()
    assert summary.total == len(lines) == _group_count(Campaign("group", "abc", "cyclic:4", exhaustive=True))
    assert summary.violated == 0
    assert all(json.loads(line)["theorem"] == "abc-sets" for line in lines)


def test_report_field_order():
    _, text = run(Campaign("linear", "kneser-linear", "gf:2:3", trials=3, seed=1))
    for line in text.splitlines():
        assert list(json.loads(line)) == ["theorem", "ambient", "inputs", "dims", "bound", "verdict", "certificate"]


@pytest.mark.parametrize("theorem,target", [
    ("olson-linear", "gf:3:3"), ("transform", "gf:2:6"), ("unique-rep", "gf:2:4"),
    ("torsion-free", "ratfun:2"), ("power-chain", "gf:2:4"),
])
def test_seeded_campaigns_are_reproducible(theorem, target):
    c = Campaign("linear", theorem, target, trials=25, seed=9)
    s1, t1 = run(c)
    s2, t2 = run(c)
    assert t1 == t2 and s1.violated == 0
    _, t3 = run(Campaign("linear", theorem, target, trials=25, seed=10))
    assert t3 != t1


def test_parallel_output_matches_serial():
    c = Campaign("linear", "transform", "gf:2:4", trials=40, seed=3)
    _, serial = run(c)
    _, parallel = run(Campaign("linear", "transform", "gf:2:4", trials=40, seed=3, jobs=2))
    assert serial == parallel


def test_ceiling_refuses_large_exhaustive_runs():
    with pytest.raises(EnumerationCapError):
        run(Campaign("linear", "kneser-linear", "gf:2:4", exhaustive=True, ceiling=100))
    with pytest.raises(EnumerationCapError):
        run(Campaign("group", "abc", "cyclic:8", exhaustive=True, ceiling=1000))


def test_explicit_instances():
    c = Campaign("linear", "kneser-linear", "gf:2:4", explicit=(("1,0,0,0;0,1,0,0", "1,0,0,0;0,1,0,0"),))
    summary, text = run(c)
    rep = json.loads(text)
    assert summary.total == 1 and rep["dims"]["AB"] == 3


def test_unknown_theorem():
    with pytest.raises(ValueError):
        Campaign("linear", "abc", "gf:2:4")


def test_sharpness_families():
    reps = sharpness_search("torsion-free", "monomial", "ratfun:2", limit=4)
    assert len(reps) == 16 and all(r.certificate["sharp"] for r in reps)
    reps = sharpness_search("power-chain-bound", "supplementary", "gf:2:4")
    assert len(reps) == 8 and all(r.certificate["sharp"] for r in reps)
    reps = sharpness_search("power-chain-bound", "whole", "gf:2:4")
    assert reps[0].certificate["stabilization_n"] == 1
    with pytest.raises(ValueError):
        sharpness_search("power-chain-bound", "nope", "gf:2:4")
