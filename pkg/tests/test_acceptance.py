"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import io
import json
import time

import pytest

from conftest import ACCEPTANCE_LINES
from kemperman import (
    ConditionError,
    UniqueRepInstance,
    check_full_product,
    check_unique_rep,
    check_torsion_free,
    make_ambient,
    olson_linear,
    power_chain,
    product_span,
    span,
    subfield,
    unique_rep_transform_step,
)
from kemperman.campaign import Campaign, all_subspaces, run_campaign, sharpness_search
from kemperman.groupsets import abc_exhaustive, parse_group
from kemperman.subspace import contains, enumerate_nonzero

pytestmark = pytest.mark.acceptance


class Criterion:
    def __init__(self, number, title):
        self.number, self.title = number, title
        self.start = time.perf_counter()
        self.notes = []

    def note(self, text):
        self.notes.append(text)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        status = "PASS" if exc_type is None else "FAIL"
        elapsed = time.perf_counter() - self.start
        detail = "; ".join(self.notes) if exc_type is None else f"{exc_type.__name__}: {exc}"
        line = f"ACCEPTANCE {self.number:>2} {status} {self.title} ({elapsed:.1f}s) {detail}"
        print(line)
        ACCEPTANCE_LINES.append(line)
        return False


def campaign_reports(c):
    buf = io.StringIO()
    summary = run_campaign(c, buf)
    return summary, [json.loads(line) for line in buf.getvalue().splitlines()]


def test_01_exhaustive_linear_kneser():
    with Criterion(1, "linear Kneser, all pairs of GF(2^4) and GF(3^3)") as cr:
        for desc, total in [("gf:2:4", 67 ** 2), ("gf:3:3", 28 ** 2)]:
            summary, reports = campaign_reports(Campaign("linear", "kneser-linear", desc, exhaustive=True))
            assert summary.total == total and summary.violated == 0
            n = make_ambient(desc).n
            for r in reports:
                if r["verdict"] == "holds":
                    d = r["dims"]
                    assert d["AB"] >= d["A"] + d["B"] - d["H"]
                else:
                    # a zero side: <AB> = {0}, whose stabilizer is all of L
                    assert r["verdict"] == "not-applicable"
                    assert 0 >= r["dims"]["A"] + r["dims"]["B"] - n
            cr.note(f"{desc}: {total} pairs")
        assert time.perf_counter() - cr.start < 30


def test_02_exhaustive_linear_olson():
    with Criterion(2, "linear Olson certificates, same instance sets") as cr:
        for desc in ["gf:2:4", "gf:3:3"]:
            amb = make_ambient(desc)
            fields = [subfield(amb, d) for d in range(1, amb.n + 1) if amb.n % d == 0]
            pool = [V for V in all_subspaces(amb) if not V.is_zero()]
            count = 0
            for A in pool:
                for B in pool:
                    cert = olson_linear(A, B)
                    cert.verify(A, B)
                    S, H = cert.S, cert.H
                    assert H in fields
                    assert product_span(S, H) == S
                    assert S <= product_span(A, B)
                    assert S.dim >= A.dim + B.dim - H.dim
                    count += 1
            summary, _ = campaign_reports(Campaign("linear", "olson-linear", desc, exhaustive=True))
            assert summary.total == len(all_subspaces(amb)) ** 2 and summary.violated == 0
            cr.note(f"{desc}: {count} certificates")


def test_03_prime_degree():
    with Criterion(3, "prime degree, all pairs of GF(2^5)") as cr:
        summary, reports = campaign_reports(Campaign("linear", "prime-degree", "gf:2:5", exhaustive=True))
        assert summary.total == 374 ** 2 and summary.violated == 0
        for r in reports:
            if r["verdict"] == "degenerate-branch":
                assert r["dims"]["AB"] == 5
            elif r["verdict"] == "holds":
                assert r["dims"]["AB"] >= r["dims"]["A"] + r["dims"]["B"] - 1
        cr.note(f"{summary.total} pairs, {summary.counts['degenerate-branch']} with <AB> = L")


def test_04_full_product_and_duality():
    with Criterion(4, "full product and duality witnesses, GF(2^4) and GF(2^5)") as cr:
        for desc in ["gf:2:4", "gf:2:5"]:
            amb = make_ambient(desc)
            n = amb.n
            pool = [V for V in all_subspaces(amb) if not V.is_zero()]
            applicable = 0
            for A in pool:
                for B in pool:
                    if A.dim + B.dim <= n:
                        continue
                    r = check_full_product(A, B)
                    assert r.verdict == "holds" and r.dims["AB"] == n
                    assert len(r.certificate["witnesses"]) == n
                    applicable += 1
            cr.note(f"{desc}: {applicable} applicable pairs, {applicable * n} witnesses")


def test_05_torsion_free():
    with Criterion(5, "torsion-free bound and monomial sharpness") as cr:
        for desc in ["ratfun:2", "ratfun:3"]:
            amb = make_ambient(desc)
            x = amb.gen
            for r in range(1, 9):
                for s in range(1, 9):
                    A = span([x ** i for i in range(r)])
                    B = span([x ** i for i in range(s)])
                    rep = check_torsion_free(A, B, cross_check=False)
                    assert rep.dims["AB"] == r + s - 1 and rep.verdict == "holds"
            reps = sharpness_search("torsion-free", "monomial", desc, limit=4)
            assert all(rep.certificate["sharp"] for rep in reps)
            summary, _ = campaign_reports(Campaign("linear", "torsion-free", desc, trials=1000, seed=2024))
            assert summary.total == 1000 and summary.violated == 0
            cr.note(f"{desc}: 64 monomial pairs sharp, 1000 random pairs hold")


def test_06_power_chains():
    with Criterion(6, "power chains in GF(2^4) and GF(2^6)") as cr:
        for desc, expected in [("gf:2:4", 16), ("gf:2:6", 374)]:
            amb = make_ambient(desc)
            fields = [subfield(amb, d) for d in range(1, amb.n + 1) if amb.n % d == 0]
            members = [B for B in all_subspaces(amb) if B.dim and contains(B, amb.one)]
            assert len(members) == expected
            for B in members:
                pc = power_chain(B)
                assert pc.ok, pc.checks
                n = pc.stabilization_n
                assert n is not None and n <= (2 * amb.n) // B.dim
                top = B
                for _ in range(n - 1):
                    top = product_span(top, B)
                assert top in fields
            sharp = [r for r in sharpness_search("power-chain-bound", "supplementary", desc)
                     if r.certificate["sharp"]]
            assert sharp
            cr.note(f"{desc}: {expected} chains, {len(sharp)} sharp supplementary witnesses")


def test_07_transform_driver():
    with Criterion(7, "transform driver on random pairs") as cr:
        for desc in ["gf:2:4", "gf:3:3", "gf:2:6"]:
            c = Campaign("linear", "transform", desc, trials=10_000, seed=7, dims=((1, 3), (1, 3)))
            summary, reports = campaign_reports(c)
            assert summary.total == 10_000 and summary.violated == 0
            steps = 0
            for r in reports:
                prev = (r["dims"]["A"], r["dims"]["B"])
                for st in r["certificate"]["steps"]:
                    before, after = tuple(st["dims_before"]), tuple(st["dims_after"])
                    assert before == prev
                    assert (sum(after), after[0]) > (sum(before), before[0])
                    prev = after
                    steps += 1
                assert prev == (r["dims"]["E"], r["dims"]["F"])
                assert sum(prev) >= r["dims"]["A"] + r["dims"]["B"]
            cr.note(f"{desc}: 10000 pairs, {steps} steps")


def test_08_unique_representation():
    with Criterion(8, "unique representation under the direct-sum condition") as cr:
        for desc in ["gf:2:4", "gf:3:3", "gf:2:6", "ratfun:2", "ratfun:3"]:
            summary, reports = campaign_reports(Campaign("linear", "unique-rep", desc, trials=1000, seed=8))
            assert summary.total == 1000 and summary.violated == 0
            for r in reports:
                assert r["dims"]["AB"] >= r["bound"]
            steps = sum(len(r["certificate"]["steps"]) for r in reports)
            cr.note(f"{desc}: 1000 instances, {steps} condition-preserving steps")
        # random complements rarely meet, so also sweep every valid instance whose complements do
        for desc in ["gf:2:4", "gf:3:3", "gf:2:5"]:
            amb = make_ambient(desc)
            pool = [V for V in all_subspaces(amb) if not contains(V, amb.one)]
            steps = 0
            for Abar in pool:
                for Bbar in pool:
                    meet = Abar & Bbar
                    if meet.is_zero():
                        continue
                    try:
                        inst = UniqueRepInstance.from_complements(Abar, Bbar)
                    except ConditionError:
                        continue
                    for d in enumerate_nonzero(meet):
                        unique_rep_transform_step(inst, d)
                        steps += 1
                    assert check_unique_rep(inst).verdict == "holds"
            cr.note(f"{desc}: every meeting pair, {steps} steps")


def test_09_abc_linear():
    with Criterion(9, "ABC dichotomy, all triples of GF(2^4) with 1 in C") as cr:
        summary, reports = campaign_reports(Campaign("linear", "abc-linear", "gf:2:4", exhaustive=True))
        assert summary.total == 66 * 66 * 16 and summary.violated == 0
        branch = 0
        for r in reports:
            if r["verdict"] == "holds":
                d = r["dims"]
                assert (d["ABC"] - d["AB"]) % d["H"] == 0 and r["certificate"]["divisibility"]
                branch += 1
        cr.note(f"{summary.total} triples, {branch} on the growth branch")


GROUPS = ["cyclic:5", "cyclic:6", "cyclic:7", "cyclic:8", "sym:3", "dihedral:4"]
PAIR_THEOREMS = ["basic", "kemperman-unique", "olson", "olson-ab2", "olson-powers", "kneser"]


def test_10_group_oracles():
    with Criterion(10, "set-side theorems over Z5..Z8, S3, D4") as cr:
        total = 0
        for desc in GROUPS:
            G = parse_group(desc)
            for theorem in PAIR_THEOREMS:
                if theorem == "kneser" and not G.is_abelian:
                    continue
                summary, _ = campaign_reports(Campaign("group", theorem, desc, exhaustive=True))
                assert summary.violated == 0, (desc, theorem)
                total += summary.total
            counts = abc_exhaustive(G)
            assert counts["violated"] == []
            total += counts["instances"]
            if G.is_abelian:
                counts = abc_exhaustive(G, require_subset=False)
                assert counts["violated"] == []
                total += counts["instances"]
        cr.note(f"{total} instances")


def test_11_determinism():
    with Criterion(11, "seeded campaigns repeat byte for byte") as cr:
        campaigns = [
            Campaign("linear", "olson-linear", "gf:3:3", trials=200, seed=11),
            Campaign("linear", "transform", "gf:2:6", trials=200, seed=11),
            Campaign("linear", "unique-rep", "ratfun:2", trials=100, seed=11),
            Campaign("linear", "power-chain", "gf:2:6", trials=100, seed=11),
            Campaign("group", "abc", "sym:3", trials=500, seed=11),
        ]
        for c in campaigns:
            runs = []
            for jobs in (1, 1, 2):
                buf = io.StringIO()
                run_campaign(Campaign(**{**c.__dict__, "jobs": jobs}), buf)
                runs.append(buf.getvalue().encode())
            assert runs[0] == runs[1] == runs[2]
        cr.note(f"{len(campaigns)} campaigns, serial twice and with 2 workers")
