"""Finite-dimensional K-subspaces of L in canonical form.

In GF(q^n) a subspace is the RREF of its basis in ambient coordinates.
In GF(q)(x) it is stored as ``den`` (the minimal monic common
denominator) together with the RREF of the numerator polynomials, whose
coefficient vectors are padded to a common width; the pivot order is by
power of x.  Equal subspaces therefore have identical ``(rows, den)``.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator

from . import poly
from .errors import EnumerationCapError, MixedAmbientError
from .ffield import Element, make_ambient
from .linalg import combine, intersect_rows, reduce_vector, rref

# enumerate_nonzero refuses subspaces with more than this many elements
ENUM_CAP = 1 << 20


class Subspace:
    """Immutable canonical subspace; build with :func:`span` and friends."""

    __slots__ = ("ambient", "rows", "den", "_hash")

    def __init__(self, ambient, rows, den=None):
        self.ambient = ambient
        self.rows = rows
        self.den = den
        self._hash = None

    @classmethod
    def _from_rows(cls, ambient, rows, den=None) -> "Subspace":
        """Canonicalize raw rows (coordinates, or numerators over ``den``)."""
        if ambient.is_finite:
            return cls(ambient, rref(ambient.F, rows, ambient.n))
        return _rational_canonical(ambient, den if den is not None else (1,), rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def is_zero(self) -> bool:
        return not self.rows

    def basis(self) -> list[Element]:
        return [Element(self.ambient, self._row_value(r)) for r in self.rows]

    def _row_value(self, row):
        if self.ambient.is_finite:
            return row
        return self.ambient.normalize(poly.trim(row), self.den)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.rows == other.rows and self.den == other.den and self.ambient == other.ambient

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.den))
        return self._hash

    def __contains__(self, v: Element) -> bool:
        return contains(self, v)

    def __le__(self, other: "Subspace") -> bool:
        return is_subspace_of(self, other)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_intersect(self, other)

    def __reduce__(self):
        return (Subspace, (self.ambient, self.rows, self.den))

    def describe(self) -> str:
        """One-line form used in reports: ``[den=<poly>|]row;row;...``."""
        body = ";".join(",".join(str(c) for c in r) for r in self.rows) or "0"
        if self.ambient.is_finite:
            return body
        return f"den={poly.to_text(self.den)}|{body}"

    @classmethod
    def from_describe(cls, ambient, text: str) -> "Subspace":
        """Inverse of :meth:`describe`; rows need not be reduced."""
        text = text.strip()
        den = None
        if text.startswith("den="):
            head, _, text = text.partition("|")
            den = poly.from_text(ambient.F, head[4:])
        if text in ("", "0"):
            return zero_space(ambient)
        rows = [tuple(int(c) for c in r.split(",")) for r in text.split(";") if r.strip()]
        if ambient.is_finite and any(len(r) != ambient.n for r in rows):
            raise ValueError(f"rows must have {ambient.n} coordinates")
        if any(not 0 <= c < ambient.q for r in rows for c in r):
            raise ValueError("coefficient outside GF(q)")
        return cls._from_rows(ambient, rows, den)

    def __repr__(self):
        return f"Subspace({self.ambient.descriptor}, dim={self.dim}, {self.describe()})"

    def __str__(self):
        return "span{" + ", ".join(b.pretty() for b in self.basis()) + "}"

    # text serialization -----------------------------------------------------
    def to_text(self) -> str:
        """Header line (descriptor, plus ``den=`` when rational), then rows."""
        header = self.ambient.descriptor
        if not self.ambient.is_finite:
            header += f" den={poly.to_text(self.den)}"
        lines = [header] + [",".join(str(c) for c in r) for r in self.rows]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Subspace":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        head = lines[0].split()
        amb = make_ambient(head[0])
        den = None
        for tok in head[1:]:
            if tok.startswith("den="):
                den = poly.from_text(amb.F, tok[4:])
        rows = [tuple(int(c) for c in ln.split(",")) for ln in lines[1:]]
        return cls._from_rows(amb, rows, den)


def _rational_canonical(amb, den, rows) -> Subspace:
    F = amb.F
    polys = [poly.trim(r) for r in rows]
    polys = [a for a in polys if a]
    if not polys:
        return Subspace(amb, (), (1,))
    den = poly.monic(F, poly.trim(den))
    width = max(len(a) for a in polys)
    R = rref(F, [a + (0,) * (width - len(a)) for a in polys], width)
    g = den
    for row in R:
        if len(g) == 1:
            break
        g = poly.gcd(F, g, poly.trim(row))
    if len(g) > 1:
        den = poly.exact_div(F, den, g)
        polys = [poly.exact_div(F, poly.trim(row), g) for row in R]
        width = max(len(a) for a in polys)
        R = rref(F, [a + (0,) * (width - len(a)) for a in polys], width)
    width = max(len(poly.trim(r)) for r in R)
    R = tuple(r[:width] for r in R)
    amb.check_degree(den, (0,) * width)
    return Subspace(amb, R, den)


def _same_ambient(*spaces):
    amb = spaces[0].ambient
    for s in spaces[1:]:
        if s.ambient is not amb and s.ambient != amb:
            raise MixedAmbientError("subspaces of different ambients")
    return amb


def _embed(amb, spaces):
    """Numerator polys of each space over the lcm of their denominators."""
    F = amb.F
    D = (1,)
    for s in spaces:
        D = poly.lcm(F, D, s.den)
    out = []
    for s in spaces:
        f = poly.exact_div(F, D, s.den)
        out.append([poly.mul(F, poly.trim(r), f) for r in s.rows])
    return D, out


def _pad(polys, width):
    return [a + (0,) * (width - len(a)) for a in polys]


# -- constructors ----------------------------------------------------------------


def zero_space(ambient) -> Subspace:
    return Subspace(ambient, (), None if ambient.is_finite else (1,))


def base_space(ambient) -> Subspace:
    """K = span{1} inside L."""
    return span([ambient.one])


def whole_space(ambient) -> Subspace:
    """L itself (GF(q^n) only)."""
    if not ambient.is_finite:
        raise ValueError("GF(q)(x) is infinite-dimensional")
    n = ambient.n
    return Subspace(ambient, tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n)))


def span(gens: Iterable[Element], ambient=None) -> Subspace:
    """Canonical K-linear span of ``gens``; ``span([], amb)`` is {0}."""
    gens = list(gens)
    if not gens:
        if ambient is None:
            raise ValueError("span of no generators needs an explicit ambient")
        return zero_space(ambient)
    amb = gens[0].ambient if ambient is None else ambient
    for g in gens:
        if g.ambient is not amb and g.ambient != amb:
            raise MixedAmbientError("generators of different ambients")
    if amb.is_finite:
        return Subspace(amb, rref(amb.F, [g.value for g in gens], amb.n))
    F = amb.F
    D = (1,)
    for g in gens:
        D = poly.lcm(F, D, g.value[1])
    nums = [poly.mul(F, g.value[0], poly.exact_div(F, D, g.value[1])) for g in gens]
    return _rational_canonical(amb, D, nums)


# -- lattice operations -----------------------------------------------------------


def subspace_sum(A: Subspace, B: Subspace) -> Subspace:
    amb = _same_ambient(A, B)
    if not B.rows:
        return A
    if not A.rows:
        return B
    if amb.is_finite:
        return Subspace(amb, rref(amb.F, A.rows + B.rows, amb.n))
    D, (na, nb) = _embed(amb, (A, B))
    return _rational_canonical(amb, D, na + nb)


def subspace_intersect(A: Subspace, B: Subspace) -> Subspace:
    amb = _same_ambient(A, B)
    if not A.rows or not B.rows:
        return zero_space(amb)
    if amb.is_finite:
        return Subspace(amb, intersect_rows(amb.F, A.rows, B.rows, amb.n))
    D, (na, nb) = _embed(amb, (A, B))
    width = max(len(a) for a in na + nb)
    meet = intersect_rows(amb.F, _pad(na, width), _pad(nb, width), width)
    return _rational_canonical(amb, D, meet)


def scale(x: Element, A: Subspace) -> Subspace:
    """xA, of the same dimension as A."""
    amb = A.ambient
    if x.ambient is not amb and x.ambient != amb:
        raise MixedAmbientError("element and subspace of different ambients")
    if x.is_zero():
        raise ZeroDivisionError("scale by 0")
    if amb.is_finite:
        mul, v = amb.mul, x.value
        return Subspace(amb, rref(amb.F, [mul(v, r) for r in A.rows], amb.n))
    if not A.rows:
        return A
    F = amb.F
    num, den = x.value
    rows = [poly.mul(F, poly.trim(r), num) for r in A.rows]
    return _rational_canonical(amb, poly.mul(F, A.den, den), rows)


def product_span(A: Subspace, B: Subspace) -> Subspace:
    """<AB>: the span of all products of basis rows."""
    amb = _same_ambient(A, B)
    if not A.rows or not B.rows:
        return zero_space(amb)
    if amb.is_finite:
        mul = amb.mul
        prods = [mul(a, b) for a in A.rows for b in B.rows]
        return Subspace(amb, rref(amb.F, prods, amb.n))
    F = amb.F
    pa = [poly.trim(r) for r in A.rows]
    pb = [poly.trim(r) for r in B.rows]
    prods = [poly.mul(F, a, b) for a in pa for b in pb]
    return _rational_canonical(amb, poly.mul(F, A.den, B.den), prods)


def scaled_sum_dim(x: Element, A: Subspace) -> int:
    """dim(xA + A), by one rank computation without canonicalizing xA."""
    amb = A.ambient
    if x.is_zero():
        raise ZeroDivisionError("scale by 0")
    if not A.rows:
        return 0
    if amb.is_finite:
        mul, v = amb.mul, x.value
        return len(rref(amb.F, [mul(v, r) for r in A.rows] + list(A.rows), amb.n))
    F = amb.F
    num, den = x.value
    pa = [poly.trim(r) for r in A.rows]
    stacked = [poly.mul(F, a, num) for a in pa] + [poly.mul(F, a, den) for a in pa]
    width = max(len(a) for a in stacked)
    return len(rref(F, _pad(stacked, width), width))


def product_chain(*spaces: Subspace) -> Subspace:
    out = spaces[0]
    for s in spaces[1:]:
        out = product_span(out, s)
    return out


# -- predicates ---------------------------------------------------------------------


def contains(A: Subspace, v: Element) -> bool:
    amb = A.ambient
    if v.ambient is not amb and v.ambient != amb:
        raise MixedAmbientError("element and subspace of different ambients")
    if v.is_zero():
        return True
    if not A.rows:
        return False
    if amb.is_finite:
        return not any(reduce_vector(amb.F, A.rows, v.value))
    F = amb.F
    num, den = v.value
    f, r = poly.divmod_(F, A.den, den)
    if r:
        return False
    target = poly.mul(F, num, f)
    width = len(A.rows[0])
    if len(target) > width:
        return False
    return not any(reduce_vector(F, A.rows, target + (0,) * (width - len(target))))


def equals(A: Subspace, B: Subspace) -> bool:
    _same_ambient(A, B)
    return A == B


def is_subspace_of(A: Subspace, B: Subspace) -> bool:
    """A ⊆ B."""
    amb = _same_ambient(A, B)
    if not A.rows:
        return True
    if A.dim > B.dim:
        return False
    if amb.is_finite:
        F = amb.F
        return all(not any(reduce_vector(F, B.rows, r)) for r in A.rows)
    return subspace_sum(A, B) == B


# -- enumeration --------------------------------------------------------------------


def _check_cap(A: Subspace, cap: int):
    size = A.ambient.q ** A.dim
    if size > cap:
        raise EnumerationCapError(
            f"subspace has {size} elements, more than the cap {cap}"
        )


def nonzero_values(A: Subspace, cap: int = ENUM_CAP) -> Iterator:
    """Raw values of the nonzero elements of A, see :func:`enumerate_nonzero`."""
    amb = A.ambient
    for vec in nonzero_numerators(A, cap):
        yield vec if amb.is_finite else amb.normalize(poly.trim(vec), A.den)


def nonzero_numerators(A: Subspace, cap: int = ENUM_CAP) -> Iterator[tuple]:
    """Coordinate vectors (numerators over ``A.den`` in GF(q)(x)) of A's nonzero elements."""
    _check_cap(A, cap)
    amb = A.ambient
    F, q, d = amb.F, amb.q, A.dim
    if d == 0:
        return
    rows = A.rows
    width = len(rows[0])
    coeffs = [0] * d
    for _ in range(q ** d - 1):
        # increment the base-q counter, first row least significant
        i = 0
        while coeffs[i] == q - 1:
            coeffs[i] = 0
            i += 1
        coeffs[i] += 1
        yield tuple(combine(F, coeffs, rows, width))


def enumerate_nonzero(A: Subspace, cap: int = ENUM_CAP) -> Iterator[Element]:
    """All q^dim - 1 nonzero elements, once each.

    Order: coefficient vectors on the RREF basis counted in base q with the
    first basis row least significant; span{1, t} over GF(2) gives
    1, t, 1+t.
    """
    amb = A.ambient
    for v in nonzero_values(A, cap):
        yield Element(amb, v)


def first_nonzero(A: Subspace) -> Element:
    if not A.rows:
        raise ValueError("{0} has no nonzero element")
    return A.basis()[0]
