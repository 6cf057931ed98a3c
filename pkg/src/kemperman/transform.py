"""Linear Kemperman transforms and the reduction driver.

For a pair (A, B) of nonzero subspaces and x != 0 the two transforms are

    Up-A:  (A + Ax,  B ∩ x⁻¹B)
    Up-B:  (A ∩ Ax⁻¹,  B + xB)

Both keep <A'B'> inside <AB>.  :func:`reduce_pair` applies them until the
quotient set D = A_*⁻¹A ∩ BB_*⁻¹ fixes both sides (AD = A and DB = B).
D is never stored; membership is tested through
``dim(dA + A) < 2 dim A``, i.e. ``dA ∩ A != {0}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import poly
from .errors import InvariantError
from .ffield import Element
from .subspace import (
    ENUM_CAP,
    Subspace,
    is_subspace_of,
    nonzero_numerators as _numerators,
    nonzero_values,
    product_span,
    scale,
    scaled_sum_dim,
    subspace_intersect,
    subspace_sum,
)

UP_A = "Up-A"
UP_B = "Up-B"


def _nonzero_check(d: Element):
    if d.is_zero():
        raise ZeroDivisionError("transform pivot must be nonzero")


def in_left_quotient(d: Element, A: Subspace) -> bool:
    """``d ∈ A_*⁻¹A``, i.e. some nonzero a has ad ∈ A."""
    _nonzero_check(d)
    if A.is_zero():
        raise ValueError("A must be nonzero")
    return scaled_sum_dim(d, A) < 2 * A.dim


def in_right_quotient(d: Element, B: Subspace) -> bool:
    """``d ∈ BB_*⁻¹``; the ambients are commutative, so same test as the left side."""
    _nonzero_check(d)
    if B.is_zero():
        raise ValueError("B must be nonzero")
    return scaled_sum_dim(d, B) < 2 * B.dim


def transform_pair(A: Subspace, B: Subspace, x: Element, variant: str = UP_A):
    """Apply one linear Kemperman transform with respect to ``x``."""
    _nonzero_check(x)
    if variant == UP_A:
        return subspace_sum(A, scale(x, A)), subspace_intersect(B, scale(x.inverse(), B))
    if variant == UP_B:
        return subspace_intersect(A, scale(x.inverse(), A)), subspace_sum(B, scale(x, B))
    raise ValueError(f"unknown variant {variant!r}")


def rises(A: Subspace, B: Subspace, d: Element) -> tuple[int, int]:
    """``(dim (A+Ad)/A, dim (B+dB)/B)``."""
    return scaled_sum_dim(d, A) - A.dim, scaled_sum_dim(d, B) - B.dim


def _is_scalar(amb, v) -> bool:
    if amb.is_finite:
        return not any(v[1:])
    num, den = v
    return len(num) <= 1 and den == (1,)


def quotient_candidates(X: Subspace, side: str = "left", cap: int = ENUM_CAP):
    """Distinct raw values of X_*⁻¹X (``side='left'``) or XX_*⁻¹, in pivot order.

    Outer loop over x in enumeration order, inner over x'; the candidate
    is x⁻¹x' (left) or x'x⁻¹ (right).  In a commutative ambient both give
    the same set, only the order of first appearance is mirrored.
    """
    amb = X.ambient
    seen = set()
    if not amb.is_finite:
        # over the common denominator, (Q/D)/(P/D) = Q/P
        F = amb.F
        nums = [poly.trim(v) for v in _numerators(X, cap)]
        for x in nums:
            for y in nums:
                g = poly.gcd(F, x, y)
                a, b = poly.exact_div(F, y, g), poly.exact_div(F, x, g)
                if b[-1] != 1:
                    c = F.inv(b[-1])
                    a, b = poly.scalar_mul(F, c, a), poly.scalar_mul(F, c, b)
                d = (a, b)
                if d not in seen:
                    seen.add(d)
                    yield d
        return
    mul, inv = amb.mul, amb.inv
    elems = list(nonzero_values(X, cap))
    for x in elems:
        xi = inv(x)
        for y in elems:
            d = mul(xi, y)
            if d not in seen:
                seen.add(d)
                yield d


def find_pivot(A: Subspace, B: Subspace, cap: int = ENUM_CAP):
    """First d in D = A_*⁻¹A ∩ BB_*⁻¹ with Ad ≠ A or dB ≠ B, else None.

    Candidates come from the quotient set of the smaller side (A on ties);
    nonzero scalars are skipped since K_* fixes every subspace.
    """
    if A.is_zero() or B.is_zero():
        raise ValueError("A and B must be nonzero")
    amb = A.ambient
    use_a = A.dim <= B.dim
    source, other = (A, B) if use_a else (B, A)
    for v in quotient_candidates(source, "left" if use_a else "right", cap):
        if _is_scalar(amb, v):
            continue
        d = Element(amb, v)
        r = scaled_sum_dim(d, other)
        if r == 2 * other.dim:
            continue  # d outside the other quotient set
        # dX = X exactly when dim(dX + X) = dim X
        if r > other.dim or scaled_sum_dim(d, source) > source.dim:
            return d
    return None


@dataclass(frozen=True)
class TransformStep:
    pivot: Element
    variant: str
    rise_a: int
    rise_b: int
    dims_before: tuple[int, int]
    dims_after: tuple[int, int]

    def to_dict(self) -> dict:
        return {
            "pivot": str(self.pivot),
            "variant": self.variant,
            "rise_a": self.rise_a,
            "rise_b": self.rise_b,
            "dims_before": list(self.dims_before),
            "dims_after": list(self.dims_after),
        }


@dataclass
class TransformTrace:
    initial: tuple[Subspace, Subspace]
    final: tuple[Subspace, Subspace] | None = None
    steps: list[TransformStep] = field(default_factory=list)
    pairs: list[tuple[Subspace, Subspace]] = field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    def to_json_list(self) -> list[dict]:
        return [s.to_dict() for s in self.steps]

    def verify(self) -> None:
        """Re-check the per-step guarantees on the recorded pairs."""
        prev = self.initial
        for step, pair in zip(self.steps, self.pairs):
            a0, b0 = prev
            a1, b1 = pair
            before = (a0.dim + b0.dim, a0.dim)
            after = (a1.dim + b1.dim, a1.dim)
            if not after > before:
                raise InvariantError(f"lexicographic measure did not increase: {before} -> {after}")
            if not is_subspace_of(product_span(a1, b1), product_span(a0, b0)):
                raise InvariantError("transform enlarged the product span")
            if a1.is_zero() or b1.is_zero():
                raise InvariantError("transform produced a zero space")
            expected = (
                (a0.dim + step.rise_a, b0.dim - step.rise_b)
                if step.variant == UP_A
                else (a0.dim - step.rise_a, b0.dim + step.rise_b)
            )
            if (a1.dim, b1.dim) != expected:
                raise InvariantError("dimension accounting mismatch")
            prev = pair


def stable_set_violations(E: Subspace, F: Subspace, cap: int = ENUM_CAP) -> list[Element]:
    """Elements u of E_*⁻¹E ∩ FF_*⁻¹ with Eu ≠ E or uF ≠ F (exhaustive).

    D lies in both quotient sets, so only the smaller side is enumerated.
    """
    amb = E.ambient
    small, other = (E, F) if E.dim <= F.dim else (F, E)
    bad = []
    for v in quotient_candidates(small, "left", cap):
        u = Element(amb, v)
        r = scaled_sum_dim(u, other)
        if r == 2 * other.dim:
            continue
        if r > other.dim or scaled_sum_dim(u, small) > small.dim:
            bad.append(u)
    return bad


def safety_bound(A: Subspace, B: Subspace) -> int:
    m = product_span(A, B).dim
    return 2 * m * m


def reduce_pair(A: Subspace, B: Subspace, verify: bool = True, cap: int = ENUM_CAP):
    """Iterate pivot search and transforms until D fixes both sides.

    Returns ``(E, F, trace)`` with <EF> ⊆ <AB>, dim E + dim F >= dim A + dim B
    and ED = E, DF = F.  Up-A is taken when rise_a >= rise_b.
    """
    if A.is_zero() or B.is_zero():
        raise ValueError("A and B must be nonzero")
    limit = safety_bound(A, B)
    trace = TransformTrace(initial=(A, B))
    E, F = A, B
    while True:
        d = find_pivot(E, F, cap)
        if d is None:
            break
        if len(trace.steps) >= limit:
            raise InvariantError(f"transform driver exceeded safety bound {limit}")
        ra, rb = rises(E, F, d)
        variant = UP_A if ra >= rb else UP_B
        E1, F1 = transform_pair(E, F, d, variant)
        trace.steps.append(TransformStep(d, variant, ra, rb, (E.dim, F.dim), (E1.dim, F1.dim)))
        trace.pairs.append((E1, F1))
        E, F = E1, F1
    trace.final = (E, F)
    if verify:
        trace.verify()
        if E.dim + F.dim < A.dim + B.dim:
            raise InvariantError("reduction lost dimension")
        if not is_subspace_of(product_span(E, F), product_span(A, B)):
            raise InvariantError("reduced pair escapes <AB>")
        bad = stable_set_violations(E, F, cap)
        if bad:
            raise InvariantError(f"reduced pair not stable under D: {bad[0]}")
    return E, F, trace
