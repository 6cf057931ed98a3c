"""Dense univariate polynomials over a finite base field.

A polynomial is a tuple of field codes, constant term first, with no
trailing zeros; the zero polynomial is ``()``.  Every function takes the
base field ``F`` (see :mod:`kemperman.ffield`) as its first argument.
"""

from __future__ import annotations

Poly = tuple


def trim(a) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def deg(a: Poly) -> int:
    """Degree, with ``deg(()) == -1``."""
    return len(a) - 1


def add(F, a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    fadd = F.add
    for i, c in enumerate(b):
        out[i] = fadd(out[i], c)
    return trim(out)


def neg(F, a: Poly) -> Poly:
    return tuple(F.neg(c) for c in a)


def sub(F, a: Poly, b: Poly) -> Poly:
    return add(F, a, neg(F, b))


def scalar_mul(F, c: int, a: Poly) -> Poly:
    if c == 0:
        return ()
    fmul = F.mul
    return tuple(fmul(c, x) for x in a)


def mul(F, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    if F.is_prime:
        p = F.p
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return trim(v % p for v in out)
    fadd, fmul = F.add, F.mul
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = fadd(out[i + j], fmul(x, y))
    return trim(out)


def divmod_(F, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) <= db:
        return (), tuple(a)
    if F.is_prime:
        p = F.p
        inv_lead = 1 if b[-1] == 1 else pow(b[-1], -1, p)
        qt = [0] * (len(r) - db)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k] % p
            if c == 0:
                continue
            c = c * inv_lead % p
            qt[k - db] = c
            base = k - db
            for j, y in enumerate(b):
                if y:
                    r[base + j] -= c * y
        return trim(qt), trim(v % p for v in r[:db])
    inv_lead = F.inv(b[-1])
    qt = [0] * (len(r) - db)
    fmul, fsub = F.mul, F.sub
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if c == 0:
            continue
        c = fmul(c, inv_lead)
        qt[k - db] = c
        for j in range(db + 1):
            r[k - db + j] = fsub(r[k - db + j], fmul(c, b[j]))
    return trim(qt), trim(r[:db])


def mod(F, a: Poly, b: Poly) -> Poly:
    return divmod_(F, a, b)[1]


def exact_div(F, a: Poly, b: Poly) -> Poly:
    qt, r = divmod_(F, a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return qt


def monic(F, a: Poly) -> Poly:
    if not a or a[-1] == 1:
        return a
    return scalar_mul(F, F.inv(a[-1]), a)


def gcd(F, a: Poly, b: Poly) -> Poly:
    """Monic gcd; ``gcd((), ()) == ()``."""
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def xgcd(F, a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g`` and ``g`` monic."""
    r0, r1 = a, b
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        qt, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, qt, s1))
        t0, t1 = t1, sub(F, t0, mul(F, qt, t1))
    if not r0:
        return (), s0, t0
    c = F.inv(r0[-1])
    return scalar_mul(F, c, r0), scalar_mul(F, c, s0), scalar_mul(F, c, t0)


def lcm(F, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    return monic(F, exact_div(F, mul(F, a, b), gcd(F, a, b)))


def powmod(F, a: Poly, e: int, m: Poly) -> Poly:
    result: Poly = (1,)
    base = mod(F, a, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, base), m)
        e >>= 1
        if e:
            base = mod(F, mul(F, base, base), m)
    return result


def is_irreducible(F, f: Poly) -> bool:
    """Irreducibility over GF(q): no root, and ``gcd(f, x^(q^d) - x) = 1``
    for every ``d <= deg f / 2``."""
    n = deg(f)
    if n < 1:
        return False
    if n == 1:
        return True
    if any(not evaluate(F, f, c) for c in range(F.q)):
        return False
    x: Poly = (0, 1)
    xq = x
    for _ in range(n // 2):
        xq = powmod(F, xq, F.q, f)
        if deg(gcd(F, f, sub(F, xq, x))) > 0:
            return False
    return True


def evaluate(F, f: Poly, c: int) -> int:
    acc = 0
    for coef in reversed(f):
        acc = F.add(F.mul(acc, c), coef)
    return acc


def from_index(F, k: int, length: int) -> Poly:
    """Base-q digits of ``k`` (constant term least significant)."""
    q = F.q
    out = []
    for _ in range(length):
        k, r = divmod(k, q)
        out.append(r)
    return tuple(out)


def canonical_irreducible(F, n: int) -> Poly:
    """Smallest monic irreducible of degree ``n`` in base-q integer order."""
    for k in range(F.q ** n):
        f = from_index(F, k, n) + (1,)
        if is_irreducible(F, f):
            return f
    raise ArithmeticError(f"no irreducible polynomial of degree {n} over GF({F.q})")


def to_text(a: Poly, var: str = "x") -> str:
    if not a:
        return "0"
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
            continue
        mono = var if i == 1 else f"{var}^{i}"
        terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms)


def from_text(F, text: str, var: str = "x") -> Poly:
    """Parse the output of :func:`to_text` (also accepts ``2x^3`` and ``-``)."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial text")
    s = s.replace("-", "+-")
    coeffs: dict[int, int] = {}
    for term in s.split("+"):
        if not term:
            continue
        sign = 1
        if term.startswith("-"):
            sign, term = -1, term[1:]
        if var in term:
            head, _, tail = term.partition(var)
            head = head.rstrip("*")
            c = int(head) if head else 1
            e = int(tail[1:]) if tail.startswith("^") else 1
            if tail and not tail.startswith("^"):
                raise ValueError(f"bad term {term!r}")
        else:
            c, e = int(term), 0
        if not 0 <= c < F.q:
            raise ValueError(f"coefficient {c} outside GF({F.q})")
        c = F.neg(c) if sign < 0 else c
        coeffs[e] = F.add(coeffs.get(e, 0), c)
    if not coeffs:
        return ()
    out = [0] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return trim(out)
