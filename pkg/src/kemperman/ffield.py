"""Exact arithmetic in K = GF(q), L = GF(q^n) and L = GF(q)(x).

Ambients are built from descriptor strings::

    >>> L = make_ambient("gf:2:4")          # GF(16) over GF(2), modulus t^4+t+1
    >>> t = L.gen
    >>> (t * t.inverse()) == L.one
    True
    >>> R = make_ambient("ratfun:2:64")     # GF(2)(x), degree cap 64

Raw values are plain tuples so that the linear algebra in
:mod:`kemperman.subspace` can work on them without wrapper objects:
a GF(q^n) value is its coordinate vector on ``1, t, ..., t^(n-1)``; a
GF(q)(x) value is a reduced pair ``(num, den)`` of polynomials with monic
denominator.  :class:`Element` wraps a raw value together with its ambient.
"""

from __future__ import annotations

import functools
import re

from . import poly
from .errors import AmbientError, DegreeOverflowError, MixedAmbientError

MAX_BASE_ORDER = 1 << 16
# Log/antilog tables are built for L when |L| is at most this.
TABLE_LIMIT = 1 << 14
DEFAULT_MAX_DEGREE = 256


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise AmbientError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    m, r = 0, q
    while r % p == 0:
        r //= p
        m += 1
    if r != 1:
        raise AmbientError(f"{q} is not a prime power")
    return p, m


# -- base field K = GF(q) ----------------------------------------------------


class PrimeField:
    """GF(p) on the integers ``0..p-1``."""

    is_prime = True

    def __init__(self, p: int):
        self.p = self.q = p
        self.m = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0 in GF(%d)" % self.p)
        return pow(a, -1, self.p)

    def __repr__(self):
        return f"GF({self.p})"


class PrimePowerField:
    """GF(p^m), m > 1, as GF(p)[s]/(g) flattened to integer codes.

    Code ``c`` stands for the polynomial whose base-p digits are the
    coefficients of c (constant digit least significant).
    """

    is_prime = False

    def __init__(self, p: int, m: int):
        self.p, self.m, self.q = p, m, p ** m
        prime = PrimeField(p)
        self.modulus = poly.canonical_irreducible(prime, m)
        order = self.q - 1
        exp = None
        for g in range(2, self.q):
            gpoly = poly.from_index(prime, g, m)
            powers = [1]
            cur: tuple = (1,)
            for _ in range(order - 1):
                cur = poly.mod(prime, poly.mul(prime, cur, gpoly), self.modulus)
                code = self._code(cur)
                if code == 1:
                    break
                powers.append(code)
            if len(powers) == order:
                exp = powers
                break
        if exp is None:  # pragma: no cover - GF(p^m)^* is cyclic
            raise ArithmeticError("no primitive element found")
        self._exp = exp + exp
        self._log = [0] * self.q
        for k, c in enumerate(exp):
            self._log[c] = k

    def _code(self, a) -> int:
        return sum(c * self.p ** i for i, c in enumerate(a))

    def _digits(self, a):
        p = self.p
        out = []
        for _ in range(self.m):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        da, db = self._digits(a), self._digits(b)
        return self._code([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a):
        if self.p == 2:
            return a
        return self._code([-x % self.p for x in self._digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"inverse of 0 in GF({self.q})")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def __repr__(self):
        return f"GF({self.q})"


@functools.lru_cache(maxsize=None)
def base_field(q: int):
    """The base field GF(q); cached so equal q share one object."""
    p, m = _factor_prime_power(q)
    if q > MAX_BASE_ORDER:
        raise AmbientError(f"base field order {q} exceeds {MAX_BASE_ORDER}")
    return PrimeField(p) if m == 1 else PrimePowerField(p, m)


# -- elements -----------------------------------------------------------------


class Element:
    """An element of an ambient field L, immutable and hashable."""

    __slots__ = ("ambient", "value")

    def __init__(self, ambient, value):
        self.ambient = ambient
        self.value = value

    def _coerce(self, other):
        if isinstance(other, Element):
            if other.ambient is not self.ambient and other.ambient != self.ambient:
                raise MixedAmbientError("elements of different ambients")
            return other.value
        if isinstance(other, int):
            return self.ambient.scalar(other)
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Element(self.ambient, self.ambient.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Element(self.ambient, self.ambient.sub(self.value, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Element(self.ambient, self.ambient.sub(v, self.value))

    def __neg__(self):
        return Element(self.ambient, self.ambient.neg(self.value))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Element(self.ambient, self.ambient.mul(self.value, v))

    __rmul__ = __mul__

    def inverse(self) -> "Element":
        return Element(self.ambient, self.ambient.inv(self.value))

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Element(self.ambient, self.ambient.mul(self.value, self.ambient.inv(v)))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        amb = self.ambient
        result, base = amb.one_value, self.value
        while e:
            if e & 1:
                result = amb.mul(result, base)
            e >>= 1
            if e:
                base = amb.mul(base, base)
        return Element(amb, result)

    def is_zero(self) -> bool:
        return self.ambient.is_zero(self.value)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.value == other.value and self.ambient == other.ambient
        if isinstance(other, int):
            return self.value == self.ambient.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return self.ambient.format_value(self.value)

    def pretty(self) -> str:
        return self.ambient.pretty_value(self.value)

    def __repr__(self):
        return f"Element({self.ambient.descriptor!r}, {str(self)!r})"

    def __reduce__(self):
        return (Element, (self.ambient, self.value))


# -- ambients -------------------------------------------------------------------


class FiniteExtension:
    """L = GF(q^n) = GF(q)[t]/(f) with the canonical modulus f."""

    kind = "gf"
    is_finite = True

    def __init__(self, q: int, n: int):
        if n < 1:
            raise AmbientError("extension degree must be >= 1")
        self.F = base_field(q)
        self.q, self.p, self.n = q, self.F.p, n
        self.modulus = poly.canonical_irreducible(self.F, n)
        if not poly.is_irreducible(self.F, self.modulus):  # pragma: no cover
            raise AmbientError("internal error: canonical modulus is reducible")
        self.order = q ** n
        self.zero_value = (0,) * n
        self.one_value = (1,) + (0,) * (n - 1)
        self.descriptor = f"gf:{q}:{n}"
        self._tables = None
        if self.order <= TABLE_LIMIT:
            self._build_tables()

    # equality by descriptor: the modulus is a function of (q, n)
    def __eq__(self, other):
        return isinstance(other, FiniteExtension) and other.descriptor == self.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __reduce__(self):
        return (make_ambient, (self.descriptor,))

    def __repr__(self):
        return f"FiniteExtension({self.descriptor!r}, modulus={poly.to_text(self.modulus, 't')})"

    def _build_tables(self):
        F, n = self.F, self.n
        vec = [poly.from_index(F, k, n) for k in range(self.order)]
        code = {v: k for k, v in enumerate(vec)}
        order = self.order - 1
        exp = [1] if order == 1 else None
        for g in range(2, self.order):
            if exp is not None:
                break
            gv = vec[g]
            powers = [1]
            cur = gv
            while code[cur] != 1:
                powers.append(code[cur])
                cur = self._polymul(cur, gv)
            if len(powers) == order:
                exp = powers
        if exp is None:  # pragma: no cover
            raise AmbientError("internal error: no primitive element")
        log = [0] * self.order
        for k, c in enumerate(exp):
            log[c] = k
        self._tables = (vec, code, exp + exp, log)

    def _polymul(self, u, v):
        r = poly.mod(self.F, poly.mul(self.F, poly.trim(u), poly.trim(v)), self.modulus)
        return r + (0,) * (self.n - len(r))

    # raw value arithmetic
    def add(self, u, v):
        if self.F.is_prime:
            p = self.p
            if p == 2:
                return tuple(a ^ b for a, b in zip(u, v))
            return tuple((a + b) % p for a, b in zip(u, v))
        fa = self.F.add
        return tuple(fa(a, b) for a, b in zip(u, v))

    def neg(self, u):
        return tuple(self.F.neg(a) for a in u)

    def sub(self, u, v):
        return self.add(u, self.neg(v))

    def mul(self, u, v):
        t = self._tables
        if t is not None:
            vec, code, exp, log = t
            cu, cv = code[u], code[v]
            if cu == 0 or cv == 0:
                return self.zero_value
            return vec[exp[log[cu] + log[cv]]]
        return self._polymul(u, v)

    def inv(self, u):
        t = self._tables
        if t is not None:
            vec, code, exp, log = t
            c = code[u]
            if c == 0:
                raise ZeroDivisionError("inverse of 0")
            return vec[exp[(self.order - 1 - log[c]) % (self.order - 1)]]
        a = poly.trim(u)
        if not a:
            raise ZeroDivisionError("inverse of 0")
        g, s, _ = poly.xgcd(self.F, a, self.modulus)
        s = poly.mod(self.F, s, self.modulus)
        return s + (0,) * (self.n - len(s))

    def is_zero(self, u) -> bool:
        return not any(u)

    def scalar(self, c: int):
        return (c % self.q if self.F.is_prime else c,) + (0,) * (self.n - 1)

    def scale_value(self, c: int, u):
        fm = self.F.mul
        return tuple(fm(c, a) for a in u)

    def pow_value(self, u, e: int):
        return (Element(self, u) ** e).value

    # element constructors
    @property
    def one(self) -> Element:
        return Element(self, self.one_value)

    @property
    def zero(self) -> Element:
        return Element(self, self.zero_value)

    @property
    def gen(self) -> Element:
        """The class of t (equal to a scalar when n == 1)."""
        if self.n == 1:
            return Element(self, self.scalar(-self.modulus[0] if self.F.is_prime else self.F.neg(self.modulus[0])))
        return Element(self, (0, 1) + (0,) * (self.n - 2))

    def element(self, coeffs) -> Element:
        if isinstance(coeffs, str):
            return self.parse(coeffs)
        coeffs = tuple(coeffs)
        if len(coeffs) > self.n:
            r = poly.mod(self.F, poly.trim(coeffs), self.modulus)
            coeffs = r
        coeffs = tuple(coeffs) + (0,) * (self.n - len(coeffs))
        if any(not 0 <= c < self.q for c in coeffs):
            raise ValueError("coefficient outside GF(q)")
        return Element(self, coeffs)

    def from_code(self, k: int) -> Element:
        return Element(self, poly.from_index(self.F, k, self.n))

    def elements(self):
        """All q^n elements in base-q integer order."""
        for k in range(self.order):
            yield self.from_code(k)

    # text form: comma-separated coefficients, constant first
    def format_value(self, u) -> str:
        return ",".join(str(c) for c in u)

    def pretty_value(self, u) -> str:
        """Polynomial form in t, e.g. ``t^2+t+1``."""
        return poly.to_text(poly.trim(u), "t")

    def parse(self, text: str) -> Element:
        parts = [s for s in text.replace(" ", "").split(",") if s]
        return self.element(int(s) for s in parts)

    @property
    def coord_dim(self) -> int:
        return self.n


class RationalFunctionField:
    """L = GF(q)(x); values are reduced ``(num, den)`` with monic den."""

    kind = "ratfun"
    is_finite = False

    def __init__(self, q: int, max_degree: int = DEFAULT_MAX_DEGREE):
        if max_degree < 1:
            raise AmbientError("degree cap must be >= 1")
        self.F = base_field(q)
        self.q, self.p = q, self.F.p
        self.max_degree = max_degree
        self.zero_value = ((), (1,))
        self.one_value = ((1,), (1,))
        self.descriptor = f"ratfun:{q}:{max_degree}"

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField) and other.descriptor == self.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __reduce__(self):
        return (make_ambient, (self.descriptor,))

    def __repr__(self):
        return f"RationalFunctionField({self.descriptor!r})"

    def check_degree(self, *polys):
        for a in polys:
            if len(a) - 1 > self.max_degree:
                raise DegreeOverflowError(
                    f"degree {len(a) - 1} exceeds cap {self.max_degree} in {self.descriptor}"
                )

    def normalize(self, num, den):
        F = self.F
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return self.zero_value
        g = poly.gcd(F, num, den)
        if len(g) > 1:
            num, den = poly.exact_div(F, num, g), poly.exact_div(F, den, g)
        if den[-1] != 1:
            c = F.inv(den[-1])
            num, den = poly.scalar_mul(F, c, num), poly.scalar_mul(F, c, den)
        self.check_degree(num, den)
        return (num, den)

    def add(self, u, v):
        F = self.F
        (a, b), (c, d) = u, v
        if b == d:
            return self.normalize(poly.add(F, a, c), b)
        return self.normalize(poly.add(F, poly.mul(F, a, d), poly.mul(F, c, b)), poly.mul(F, b, d))

    def neg(self, u):
        return (poly.neg(self.F, u[0]), u[1])

    def sub(self, u, v):
        return self.add(u, self.neg(v))

    def mul(self, u, v):
        F = self.F
        (a, b), (c, d) = u, v
        if not a or not c:
            return self.zero_value
        g1, g2 = poly.gcd(F, a, d), poly.gcd(F, c, b)
        if len(g1) > 1:
            a, d = poly.exact_div(F, a, g1), poly.exact_div(F, d, g1)
        if len(g2) > 1:
            c, b = poly.exact_div(F, c, g2), poly.exact_div(F, b, g2)
        num, den = poly.mul(F, a, c), poly.mul(F, b, d)
        self.check_degree(num, den)
        return (num, den)

    def inv(self, u):
        if not u[0]:
            raise ZeroDivisionError("inverse of 0")
        return self.normalize(u[1], u[0])

    def is_zero(self, u) -> bool:
        return not u[0]

    def scalar(self, c: int):
        c = c % self.q if self.F.is_prime else c
        return ((c,), (1,)) if c else self.zero_value

    @property
    def one(self) -> Element:
        return Element(self, self.one_value)

    @property
    def zero(self) -> Element:
        return Element(self, self.zero_value)

    @property
    def gen(self) -> Element:
        return Element(self, ((0, 1), (1,)))

    def element(self, num, den=(1,)) -> Element:
        if isinstance(num, str):
            return self.parse(num)
        return Element(self, self.normalize(poly.trim(num), poly.trim(den)))

    def format_value(self, u) -> str:
        return f"{poly.to_text(u[0])}/{poly.to_text(u[1])}"

    def pretty_value(self, u) -> str:
        num, den = u
        if den == (1,):
            return poly.to_text(num)

        def wrap(a):
            text = poly.to_text(a)
            return f"({text})" if len([c for c in a if c]) > 1 else text

        return f"{wrap(num)}/{wrap(den)}"

    def parse(self, text: str) -> Element:
        num, _, den = text.partition("/")
        n = poly.from_text(self.F, num)
        d = poly.from_text(self.F, den) if den else (1,)
        return Element(self, self.normalize(n, d))


_DESCRIPTOR = re.compile(r"^(gf|ratfun):(\d+)(?::(\d+))?$")


@functools.lru_cache(maxsize=None)
def make_ambient(spec: str):
    """Build an ambient from ``gf:<q>:<n>`` or ``ratfun:<q>:<maxdeg>``.

    Construction is deterministic and cached: the same descriptor always
    yields the same object.
    """
    m = _DESCRIPTOR.match(spec.strip())
    if not m:
        raise AmbientError(f"malformed ambient descriptor {spec!r}")
    kind, q, extra = m.group(1), int(m.group(2)), m.group(3)
    if kind == "gf":
        if extra is None:
            raise AmbientError("gf descriptor needs a degree: gf:<q>:<n>")
        return FiniteExtension(q, int(extra))
    return RationalFunctionField(q, int(extra) if extra is not None else DEFAULT_MAX_DEGREE)


def elem_mul(a: Element, b: Element) -> Element:
    return a * b


def elem_inv(a: Element) -> Element:
    return a.inverse()


def subfield(ambient, d: int):
    """The subfield GF(q^d) of GF(q^n) as a Subspace.

    Computed as the kernel of the GF(q)-linear map ``y -> y^(q^d) - y``.
    """
    from .linalg import kernel
    from .subspace import Subspace, span

    if not ambient.is_finite:
        if d == 1:
            return span([ambient.one])
        raise AmbientError("GF(q)(x) has no finite-dimensional subfield besides K")
    n = ambient.n
    if d < 1 or n % d:
        raise AmbientError(f"{d} does not divide the degree {n}")
    e = ambient.q ** d
    images = []
    for i in range(n):
        basis = tuple(1 if j == i else 0 for j in range(n))
        images.append(ambient.sub(ambient.pow_value(basis, e), basis))
    # kernel of the map y -> sum_i y_i * images[i]
    rows = kernel(ambient.F, images, n)
    return Subspace._from_rows(ambient, rows)
