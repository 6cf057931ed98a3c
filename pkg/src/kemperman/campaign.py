"""Verification campaigns: instance generation, evaluation and ordered reporting.

Random instances come from a generator keyed by (seed, instance index), so
a campaign produces the same report stream whatever the number of workers.
"""

from __future__ import annotations

import functools
import itertools
import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import poly
from .errors import ConditionError, EnumerationCapError, InvariantError
from .ffield import Element, make_ambient
from .groupsets import (
    GSet,
    check_abc_abelian,
    check_abc_sets,
    check_basic,
    check_kemperman_unique,
    check_olson_sets,
    check_thOl2,
    check_thOl3,
    kneser_check,
    parse_group,
)
from .linalg import rref
from .report import HOLDS, VERDICTS, VIOLATED, TheoremReport
from .subspace import Subspace, base_space, contains, span, subspace_sum
from .theorems import (
    UniqueRepInstance,
    check_abc_linear,
    check_cor3,
    check_full_product,
    check_kneser_linear,
    check_olson_linear,
    check_prime_degree,
    check_torsion_free,
    check_unique_rep,
    cond_violation,
    power_chain,
)
from .transform import reduce_pair

DEFAULT_CEILING = 10 ** 7
# generator degree bound for random subspaces of GF(q)(x)
RATIONAL_GEN_DEGREE = 3
RATIONAL_MAX_DIM = 4
# attempts before a random (Cond)-valid instance is given up
COND_ATTEMPTS = 200


# -- subspace generation -------------------------------------------------------------------


def all_subspaces(ambient, dim: int | None = None) -> list[Subspace]:
    """Every subspace of GF(q^n), by dimension, then pivot set, then free entries.

    The count for dimension k is the Gaussian binomial [n, k]_q.
    """
    if not ambient.is_finite:
        raise ValueError("GF(q)(x) has infinitely many subspaces")
    return list(_all_subspaces(ambient.descriptor, dim))


@functools.lru_cache(maxsize=64)
def _all_subspaces(descriptor: str, dim: int | None) -> tuple[Subspace, ...]:
    amb = make_ambient(descriptor)
    n, q = amb.n, amb.q
    dims = range(n + 1) if dim is None else (dim,)
    out = []
    for k in dims:
        for pivots in itertools.combinations(range(n), k):
            pset = set(pivots)
            free = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, n) if c not in pset]
            for vals in itertools.product(range(q), repeat=len(free)):
                rows = [[0] * n for _ in range(k)]
                for r, p in enumerate(pivots):
                    rows[r][p] = 1
                for (r, c), v in zip(free, vals):
                    rows[r][c] = v
                out.append(Subspace(amb, tuple(tuple(r) for r in rows)))
    return tuple(out)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if not 0 <= k <= n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def instance_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


def _rand_ints(rng, q, size):
    return [int(v) for v in rng.integers(0, q, size=size)]


def random_subspace(ambient, dim: int, rng: np.random.Generator, contains_one: bool = False) -> Subspace:
    """Random subspace of the given dimension.

    GF(q^n): uniform, by drawing random rows (after 1, with ``contains_one``)
    until they are independent.  GF(q)(x): generators num/den with random
    numerators of degree <= RATIONAL_GEN_DEGREE and random monic
    denominators of degree <= 1; not uniform in any sense.
    """
    amb = ambient
    q = amb.q
    if amb.is_finite:
        if not 1 <= dim <= amb.n:
            raise ValueError(f"dimension {dim} impossible in {amb.descriptor}")
        n = amb.n
        while True:
            rows = [tuple(_rand_ints(rng, q, n)) for _ in range(dim - contains_one)]
            if contains_one:
                rows = [amb.one_value] + rows
            R = rref(amb.F, rows, n)
            if len(R) == dim:
                return Subspace(amb, R)
    if not 1 <= dim <= RATIONAL_MAX_DIM:
        raise ValueError(f"random rational subspaces need 1 <= dim <= {RATIONAL_MAX_DIM}")
    while True:
        gens = [amb.one] if contains_one else []
        while len(gens) < dim:
            num = poly.trim(tuple(_rand_ints(rng, q, RATIONAL_GEN_DEGREE + 1)))
            if not num:
                continue
            dd = int(rng.integers(0, 2))
            den = tuple(_rand_ints(rng, q, dd)) + (1,)
            gens.append(Element(amb, amb.normalize(num, den)))
        V = span(gens)
        if V.dim == dim:
            return V


def random_cond_instance(ambient, dim_ranges, rng) -> UniqueRepInstance | None:
    """Random complements (Abar, Bbar) satisfying (Cond).

    ``dim_ranges`` bounds dim A and dim B; each attempt draws fresh
    dimensions, so infeasible sizes are simply skipped.
    """
    (alo, ahi), (blo, bhi) = dim_ranges
    for _ in range(COND_ATTEMPTS):
        da = int(rng.integers(max(alo, 1), ahi + 1)) - 1
        db = int(rng.integers(max(blo, 1), bhi + 1)) - 1
        Abar = _random_avoiding_one(ambient, da, rng)
        Bbar = _random_avoiding_one(ambient, db, rng)
        if Abar is None or Bbar is None:
            continue
        try:
            return UniqueRepInstance.from_complements(Abar, Bbar)
        except ConditionError:
            continue
    return None


def _random_avoiding_one(ambient, dim, rng):
    if dim == 0:
        return Subspace._from_rows(ambient, ())
    V = random_subspace(ambient, dim, rng)
    return None if contains(V, ambient.one) else V


# -- campaign description ----------------------------------------------------------------------

LINEAR_THEOREMS = {
    # name: (number of subspace slots, checker)
    "kneser-linear": (2, check_kneser_linear),
    "olson-linear": (2, check_olson_linear),
    "prime-degree": (2, check_prime_degree),
    "torsion-free": (2, check_torsion_free),
    "full-product": (2, check_full_product),
    "abc-linear": (3, check_abc_linear),
    "cor3": (2, check_cor3),
    "power-chain": (1, None),
    "transform": (2, None),
    "unique-rep": (2, None),
}

# checkers that report a zero subspace as not-applicable; exhaustive runs include {0}
ZERO_TOLERANT = {"kneser-linear", "olson-linear", "prime-degree", "full-product"}

GROUP_THEOREMS = {
    "basic": 2,
    "kemperman-unique": 2,
    "olson": 2,
    "olson-ab2": 2,
    "olson-powers": 2,
    "abc": 3,
    "abc-abelian": 3,
    "kneser": 2,
}


@dataclass(frozen=True)
class Campaign:
    kind: str  # "linear" or "group"
    theorem: str
    target: str  # ambient or group descriptor
    exhaustive: bool = False
    trials: int = 100
    seed: int = 0
    dims: tuple = ()  # per slot: (lo, hi)
    contains_one: bool = False
    jobs: int = 1
    ceiling: int = DEFAULT_CEILING
    stop: int | None = None  # power chains in GF(q)(x)
    explicit: tuple = ()  # explicit instances, each a tuple of text inputs

    def __post_init__(self):
        table = LINEAR_THEOREMS if self.kind == "linear" else GROUP_THEOREMS
        if self.theorem not in table:
            raise ValueError(f"unknown theorem {self.theorem!r} for {self.kind} campaigns")

    @property
    def slots(self) -> int:
        if self.kind == "linear":
            return LINEAR_THEOREMS[self.theorem][0]
        return GROUP_THEOREMS[self.theorem]


@dataclass
class Summary:
    total: int = 0
    counts: Counter = field(default_factory=Counter)

    @property
    def violated(self) -> int:
        return self.counts[VIOLATED]

    def to_dict(self) -> dict:
        return {"total": self.total, **{v: self.counts[v] for v in VERDICTS}}


def parse_dims(text: str | None) -> tuple:
    """``"2,3"`` or ``"1-3,1-3"`` into ((lo, hi), ...)."""
    if not text:
        return ()
    out = []
    for part in text.split(","):
        lo, sep, hi = part.partition("-")
        lo = int(lo)
        out.append((lo, int(hi) if sep else lo))
    return tuple(out)


def _slot_range(c: Campaign, i: int, default: tuple[int, int]) -> tuple[int, int]:
    if c.dims:
        return c.dims[min(i, len(c.dims) - 1)]
    return default


# -- linear instances -----------------------------------------------------------------------


@functools.lru_cache(maxsize=32)
def _linear_pools(c: Campaign) -> tuple:
    """Per-slot candidate lists for exhaustive linear campaigns."""
    amb = make_ambient(c.target)
    spaces = all_subspaces(amb)
    one = amb.one
    pools = []
    for i in range(c.slots):
        lo, hi = _slot_range(c, i, (0, amb.n))
        if c.theorem == "unique-rep":
            # slots are the complements Abar, Bbar; dims refer to A, B
            pool = [V for V in spaces if lo - 1 <= V.dim <= hi - 1 and not contains(V, one)]
        else:
            if c.theorem not in ZERO_TOLERANT:
                lo = max(lo, 1)
            pool = [V for V in spaces if lo <= V.dim <= hi]
            need_one = c.contains_one or c.theorem == "power-chain" or (c.theorem == "abc-linear" and i == 2)
            if need_one:
                pool = [V for V in pool if contains(V, one)]
        pools.append(tuple(pool))
    return tuple(pools)


def instance_count(c: Campaign) -> int:
    if c.explicit:
        return len(c.explicit)
    if not c.exhaustive:
        return c.trials
    if c.kind == "linear":
        count = 1
        for pool in _linear_pools(c):
            count *= len(pool)
        return count
    return _group_count(c)


def _mixed_radix(index, sizes):
    out = []
    for s in reversed(sizes):
        index, r = divmod(index, s)
        out.append(r)
    return list(reversed(out))


def linear_instance(c: Campaign, index: int):
    amb = make_ambient(c.target)
    if c.explicit:
        return tuple(Subspace.from_describe(amb, t) for t in c.explicit[index])
    if c.exhaustive:
        pools = _linear_pools(c)
        picks = _mixed_radix(index, [len(p) for p in pools])
        return tuple(p[k] for p, k in zip(pools, picks))
    rng = instance_rng(c.seed, index)
    top = amb.n if amb.is_finite else RATIONAL_MAX_DIM
    if c.theorem == "unique-rep":
        ranges = (_slot_range(c, 0, (1, top)), _slot_range(c, 1, (1, top)))
        inst = random_cond_instance(amb, ranges, rng)
        return None if inst is None else (inst.Abar, inst.Bbar)
    out = []
    for i in range(c.slots):
        lo, hi = _slot_range(c, i, (1, top))
        d = int(rng.integers(lo, hi + 1))
        need_one = c.contains_one or c.theorem == "power-chain" or (c.theorem == "abc-linear" and i == 2)
        out.append(random_subspace(amb, d, rng, contains_one=need_one))
    return tuple(out)


def check_transform_driver(A: Subspace, B: Subspace) -> TheoremReport:
    """Run the reduction with full verification and summarize the trace."""
    amb = A.ambient
    try:
        E, F, trace = reduce_pair(A, B, verify=True)
    except InvariantError as exc:
        return TheoremReport("transform", amb.descriptor, [A.describe(), B.describe()],
                             {"A": A.dim, "B": B.dim}, None, VIOLATED, {"error": str(exc)})
    return TheoremReport(
        "transform", amb.descriptor, [A.describe(), B.describe()],
        {"A": A.dim, "B": B.dim, "E": E.dim, "F": F.dim},
        A.dim + B.dim, HOLDS,
        {"steps": trace.to_json_list(), "E": E.describe(), "F": F.describe()},
    )


def evaluate_linear(c: Campaign, inputs) -> TheoremReport | None:
    if inputs is None:
        return None
    if c.theorem == "power-chain":
        return power_chain(inputs[0], stop=c.stop).to_report()
    if c.theorem == "transform":
        return check_transform_driver(*inputs)
    if c.theorem == "unique-rep":
        Abar, Bbar = inputs
        amb = Abar.ambient
        K = base_space(amb)
        A, B = subspace_sum(K, Abar), subspace_sum(K, Bbar)
        if cond_violation(A, B, Abar, Bbar):
            if c.explicit:
                raise ConditionError(cond_violation(A, B, Abar, Bbar))
            return None
        try:
            return check_unique_rep(UniqueRepInstance(A, B, Abar, Bbar))
        except InvariantError as exc:
            return TheoremReport("unique-rep", amb.descriptor, [Abar.describe(), Bbar.describe()],
                                 {"A": A.dim, "B": B.dim}, None, VIOLATED, {"error": str(exc)})
    checker = LINEAR_THEOREMS[c.theorem][1]
    try:
        return checker(*inputs)
    except InvariantError as exc:
        return TheoremReport(c.theorem, inputs[0].ambient.descriptor, [s.describe() for s in inputs],
                             {}, None, VIOLATED, {"error": str(exc)})


# -- group instances ------------------------------------------------------------------------


def _group(c: Campaign):
    return _group_cached(c.target)


@functools.lru_cache(maxsize=16)
def _group_cached(descriptor):
    return parse_group(descriptor)


def _group_count(c: Campaign) -> int:
    """Exhaustive instance count, in closed form."""
    n = _group(c).order
    m = (1 << n) - 1
    if c.theorem == "olson-powers":
        return m * n
    if c.theorem == "olson-ab2":
        return m << (n - 1)
    if c.theorem == "abc":
        # C = {1} ∪ C' and nonempty B ⊆ C: sum over C' of 2^(|C'|+1) - 1
        return m * (2 * 3 ** (n - 1) - 2 ** (n - 1))
    if c.theorem == "abc-abelian":
        return m * m << (n - 1)
    return m * m


@functools.lru_cache(maxsize=16)
def _group_index(c: Campaign):
    """(B, C) pairs for exhaustive ABC campaigns, times every A."""
    G = _group(c)
    full = G.full
    e = 1 << G.identity
    bc = []
    for B in range(1, full + 1):
        if c.theorem == "abc":
            base = B | e
            rest = full & ~base
            sub = rest
            extras = []
            while True:
                extras.append(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & rest
            for x in sorted(extras):
                bc.append((B, base | x))
        else:
            rest = full & ~e
            for x in range(rest + 1):
                if x & rest == x:
                    bc.append((B, e | x))
    return tuple(bc)


def group_instance(c: Campaign, index: int):
    G = _group(c)
    if c.explicit:
        return tuple(GSet.from_text(G, t) if k < 2 or c.theorem != "olson-powers" else int(t)
                     for k, t in enumerate(c.explicit[index]))
    full = G.full
    e = 1 << G.identity
    if c.exhaustive:
        if c.theorem in ("abc", "abc-abelian"):
            bc = _group_index(c)
            a, k = divmod(index, len(bc))
            B, C = bc[k]
            return GSet(G, a + 1), GSet(G, B), GSet(G, C)
        if c.theorem == "olson-powers":
            b, n = divmod(index, G.order)
            return GSet(G, b + 1), n + 1
        if c.theorem == "olson-ab2":
            half = 1 << (G.order - 1)
            a, r = divmod(index, half)
            # r enumerates subsets of the non-identity elements
            B = e
            others = [g for g in range(G.order) if g != G.identity]
            for bit, g in enumerate(others):
                if r >> bit & 1:
                    B |= 1 << g
            return GSet(G, a + 1), GSet(G, B)
        a, b = divmod(index, full)
        return GSet(G, a + 1), GSet(G, b + 1)
    rng = instance_rng(c.seed, index)

    def rand_mask():
        return int(rng.integers(1, full + 1))

    A = GSet(G, rand_mask())
    if c.theorem == "olson-powers":
        return A, int(rng.integers(1, G.order + 1))
    B = rand_mask()
    if c.theorem == "olson-ab2":
        B |= e
    if c.theorem in ("abc", "abc-abelian"):
        C = rand_mask() | e
        if c.theorem == "abc":
            C |= B
        return A, GSet(G, B), GSet(G, C)
    return A, GSet(G, B)


def evaluate_group(c: Campaign, inputs) -> TheoremReport:
    t = c.theorem
    if t == "basic":
        return check_basic(*inputs)
    if t == "kemperman-unique":
        return check_kemperman_unique(*inputs)
    if t == "olson":
        try:
            return check_olson_sets(*inputs)
        except InvariantError as exc:
            A, B = inputs
            return TheoremReport("olson-sets", A.group.descriptor, [A.to_text(), B.to_text()], {},
                                 None, VIOLATED, {"error": str(exc)})
    if t == "olson-ab2":
        return check_thOl2(*inputs)
    if t == "olson-powers":
        return check_thOl3(*inputs)
    if t == "abc":
        return check_abc_sets(*inputs)
    if t == "abc-abelian":
        return check_abc_abelian(*inputs)
    return kneser_check(*inputs)


# -- running -----------------------------------------------------------------------------------


def evaluate_index(c: Campaign, index: int) -> str | None:
    """JSON line for one instance, or None when the instance is skipped."""
    if c.kind == "linear":
        rep = evaluate_linear(c, linear_instance(c, index))
    else:
        rep = evaluate_group(c, group_instance(c, index))
    return None if rep is None else rep.to_json()


def _evaluate_chunk(c: Campaign, bounds: tuple[int, int]) -> list:
    return [evaluate_index(c, i) for i in range(*bounds)]


def _upper_estimate(c: Campaign) -> int:
    """Cheap upper bound on the exhaustive instance count, from Gaussian binomials."""
    if not c.exhaustive or c.explicit:
        return 0
    if c.kind == "group":
        return _group_count(c)
    amb = make_ambient(c.target)
    if not amb.is_finite:
        raise ValueError("exhaustive campaigns need a finite ambient")
    est = 1
    for i in range(c.slots):
        lo, hi = _slot_range(c, i, (0, amb.n))
        est *= sum(gaussian_binomial(amb.n, k, amb.q) for k in range(max(lo - 1, 0), hi + 1))
    return est


def iter_reports(c: Campaign):
    """Report lines in instance order; workers only change who computes them."""
    est = _upper_estimate(c)
    if est > c.ceiling:
        raise EnumerationCapError(
            f"about {est} instances exceed the ceiling {c.ceiling}; use --trials N --seed S instead"
        )
    total = instance_count(c)
    if c.exhaustive and total > c.ceiling:
        raise EnumerationCapError(
            f"{total} instances exceed the ceiling {c.ceiling}; use --trials N --seed S instead"
        )
    if c.jobs <= 1 or total < 2:
        for i in range(total):
            yield evaluate_index(c, i)
        return
    size = max(1, min(500, total // (c.jobs * 8) or 1))
    chunks = [(lo, min(lo + size, total)) for lo in range(0, total, size)]
    with ProcessPoolExecutor(max_workers=c.jobs) as pool:
        for lines in pool.map(functools.partial(_evaluate_chunk, replace(c, jobs=1)), chunks):
            yield from lines


def run_campaign(c: Campaign, out=None) -> Summary:
    """Write one JSON line per instance to ``out`` (if given) and tally verdicts."""
    summary = Summary()
    for line in iter_reports(c):
        if line is None:
            continue
        summary.total += 1
        verdict = json.loads(line)["verdict"]
        summary.counts[verdict] += 1
        if out is not None:
            out.write(line + "\n")
    return summary


# -- sharpness ------------------------------------------------------------------------------------


def sharpness_search(theorem: str, family: str, target: str, limit: int = 4) -> list[TheoremReport]:
    """Reports for every family member; ``certificate['sharp']`` marks equality.

    torsion-free / monomial: A = span{1..x^(r-1)}, B = span{1..x^(s-1)}, r, s <= limit.
    power-chain-bound / supplementary: every complement of K in GF(q^n).
    power-chain-bound / all: every subspace of GF(q^n) containing 1.
    power-chain-bound / whole: B = L.
    """
    amb = make_ambient(target)
    out = []
    if theorem == "torsion-free":
        if family != "monomial":
            raise ValueError(f"unknown torsion-free family {family!r}")
        x = amb.gen
        for r in range(1, limit + 1):
            for s in range(1, limit + 1):
                A = span([x ** i for i in range(r)])
                B = span([x ** i for i in range(s)])
                rep = check_torsion_free(A, B, cross_check=False)
                rep.certificate["sharp"] = rep.dims["AB"] == rep.bound
                rep.certificate["r"], rep.certificate["s"] = r, s
                out.append(rep)
        return out
    if theorem != "power-chain-bound":
        raise ValueError(f"unknown sharpness theorem {theorem!r}")
    if not amb.is_finite:
        raise ValueError("power-chain bound needs a finite ambient")
    one = amb.one
    if family == "supplementary":
        members = [V for V in all_subspaces(amb, amb.n - 1) if not contains(V, one)]
    elif family == "all":
        members = [V for V in all_subspaces(amb) if V.dim and contains(V, one)]
    elif family == "whole":
        members = all_subspaces(amb, amb.n)
    else:
        raise ValueError(f"unknown power-chain family {family!r}")
    for B in members:
        pc = power_chain(B)
        rep = pc.to_report()
        rep.certificate["sharp"] = pc.stabilization_n == pc.bound_2dimL_over_dimB
        rep.inputs = [B.describe()]
        out.append(rep)
    return out
