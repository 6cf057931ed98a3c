"""Gaussian elimination over GF(q) on small dense row lists."""

from __future__ import annotations

Row = tuple


def rref(F, rows, width: int) -> tuple[Row, ...]:
    """Reduced row echelon form with zero rows dropped.

    Pivots run strictly left to right, pivot entries are 1 and every
    pivot column is zero outside its pivot row, so equal row spaces give
    identical output.
    """
    M = [list(r) for r in rows if any(r)]
    if not M:
        return ()
    nrows = len(M)
    r = 0
    if F.is_prime and F.p == 2:
        for c in range(width):
            piv = next((i for i in range(r, nrows) if M[i][c]), None)
            if piv is None:
                continue
            M[r], M[piv] = M[piv], M[r]
            row = M[r]
            for i in range(nrows):
                if i != r and M[i][c]:
                    M[i] = [x ^ y for x, y in zip(M[i], row)]
            r += 1
            if r == nrows:
                break
    elif F.is_prime:
        p = F.p
        for c in range(width):
            piv = next((i for i in range(r, nrows) if M[i][c]), None)
            if piv is None:
                continue
            M[r], M[piv] = M[piv], M[r]
            row = M[r]
            if row[c] != 1:
                inv = pow(row[c], -1, p)
                row = M[r] = [x * inv % p for x in row]
            for i in range(nrows):
                f = M[i][c]
                if i != r and f:
                    M[i] = [(x - f * y) % p for x, y in zip(M[i], row)]
            r += 1
            if r == nrows:
                break
    else:
        mul, sub, inv = F.mul, F.sub, F.inv
        for c in range(width):
            piv = next((i for i in range(r, nrows) if M[i][c]), None)
            if piv is None:
                continue
            M[r], M[piv] = M[piv], M[r]
            row = M[r]
            if row[c] != 1:
                s = inv(row[c])
                row = M[r] = [mul(s, x) for x in row]
            for i in range(nrows):
                f = M[i][c]
                if i != r and f:
                    M[i] = [sub(x, mul(f, y)) for x, y in zip(M[i], row)]
            r += 1
            if r == nrows:
                break
    return tuple(tuple(row) for row in M[:r])


def pivot_of(row) -> int:
    for i, x in enumerate(row):
        if x:
            return i
    return -1


def reduce_vector(F, basis, v) -> list:
    """Remainder of ``v`` against an RREF ``basis``; zero iff v in span."""
    v = list(v)
    for row in basis:
        c = pivot_of(row)
        f = v[c]
        if f:
            if F.is_prime:
                p = F.p
                v = [(x - f * y) % p for x, y in zip(v, row)]
            else:
                v = [F.sub(x, F.mul(f, y)) for x, y in zip(v, row)]
    return v


def intersect_rows(F, A, B, width: int) -> tuple[Row, ...]:
    """Zassenhaus: reduce ``[a|a]`` and ``[b|0]``; rows ``[0|w]`` span A∩B."""
    if not A or not B:
        return ()
    zero = (0,) * width
    stacked = [tuple(a) + tuple(a) for a in A] + [tuple(b) + zero for b in B]
    R = rref(F, stacked, 2 * width)
    meet = [row[width:] for row in R if not any(row[:width])]
    return rref(F, meet, width)


def kernel(F, images, n: int) -> tuple[Row, ...]:
    """RREF basis of ``{y in GF(q)^n : sum_i y_i * images[i] = 0}``."""
    if n == 0:
        return ()
    w = len(images[0])
    stacked = []
    for i, img in enumerate(images):
        unit = tuple(1 if j == i else 0 for j in range(n))
        stacked.append(tuple(img) + unit)
    R = rref(F, stacked, w + n)
    ker = [row[w:] for row in R if not any(row[:w])]
    return rref(F, ker, n)


def combine(F, coeffs, rows, width: int) -> list:
    """``sum_i coeffs[i] * rows[i]``."""
    out = [0] * width
    if F.is_prime:
        p = F.p
        for c, row in zip(coeffs, rows):
            if c:
                out = [(x + c * y) % p for x, y in zip(out, row)]
        return out
    for c, row in zip(coeffs, rows):
        if c:
            out = [F.add(x, F.mul(c, y)) for x, y in zip(out, row)]
    return out
