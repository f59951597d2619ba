"""Dense exact matrix algebra over the fields used in this package.

Matrices are plain lists of lists whose entries live in Q_p (PadicNumber),
E (ExtElement) or Q (Fraction).  The handful of routines here (products,
determinants, inverses, kernels, characteristic polynomials) use Gaussian
elimination with largest-absolute-value pivoting so p-adic precision is not
thrown away on bad pivots.
"""

from __future__ import annotations

from fractions import Fraction

from .padic import ExtElement, PadicNumber, PrecisionError


class QRing:
    """Adapter making Fraction usable through the same entry protocol."""

    @staticmethod
    def zero():
        return Fraction(0)

    @staticmethod
    def one():
        return Fraction(1)


def entry_is_zero(x) -> bool:
    if isinstance(x, (PadicNumber, ExtElement)):
        return x.is_zero()
    return x == 0


def pivot_size(x) -> float:
    """Bigger is better as a pivot; -inf for zero."""
    if entry_is_zero(x):
        return float("-inf")
    if isinstance(x, PadicNumber):
        return -x.valuation()
    if isinstance(x, ExtElement):
        return -x.valuation_e()
    return 1.0


def zeros(ring, n: int, m: int):
    return [[ring.zero() for _ in range(m)] for _ in range(n)]


def identity(ring, n: int):
    out = zeros(ring, n, n)
    for i in range(n):
        out[i][i] = ring.one()
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_neg(a):
    return [[-x for x in row] for row in a]


def mat_scale(c, a):
    return [[c * x for x in row] for row in a]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for t in range(1, k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_apply(f, a):
    return [[f(x) for x in row] for row in a]


def trace(a):
    acc = a[0][0]
    for i in range(1, len(a)):
        acc = acc + a[i][i]
    return acc


def det(ring, a):
    """Determinant by elimination with size pivoting."""
    n = len(a)
    m = [row[:] for row in a]
    out = ring.one()
    sign = 1
    for c in range(n):
        piv, best = None, float("-inf")
        for r in range(c, n):
            s = pivot_size(m[r][c])
            if s > best:
                piv, best = r, s
        if best == float("-inf"):
            return ring.zero()
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        out = out * m[c][c]
        inv = _inv_entry(m[c][c])
        for r in range(c + 1, n):
            if entry_is_zero(m[r][c]):
                continue
            f = m[r][c] * inv
            for j in range(c, n):
                m[r][j] = m[r][j] - f * m[c][j]
    if sign < 0:
        out = -out
    return out


def _inv_entry(x):
    if isinstance(x, (PadicNumber, ExtElement)):
        return x.inverse()
    return 1 / x


def inverse(ring, a):
    n = len(a)
    m = [row[:] + irow[:] for row, irow in zip(a, identity(ring, n))]
    for c in range(n):
        piv, best = None, float("-inf")
        for r in range(c, n):
            s = pivot_size(m[r][c])
            if s > best:
                piv, best = r, s
        if best == float("-inf"):
            raise PrecisionError("matrix is singular at precision")
        m[c], m[piv] = m[piv], m[c]
        inv = _inv_entry(m[c][c])
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r == c or entry_is_zero(m[r][c]):
                continue
            f = m[r][c]
            m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def solve_kernel(ring, a):
    """A basis of the right kernel of a (rows may outnumber columns)."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [row[:] for row in a]
    pivots = []
    r = 0
    for c in range(cols):
        piv, best = None, float("-inf")
        for rr in range(r, rows):
            s = pivot_size(m[rr][c])
            if s > best:
                piv, best = rr, s
        if best == float("-inf"):
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = _inv_entry(m[r][c])
        m[r] = [x * inv for x in m[r]]
        for rr in range(rows):
            if rr == r or entry_is_zero(m[rr][c]):
                continue
            f = m[rr][c]
            m[rr] = [x - f * y for x, y in zip(m[rr], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [ring.zero() for _ in range(cols)]
        vec[fc] = ring.one()
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][fc]
        basis.append(vec)
    return basis


def rank(a) -> int:
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [row[:] for row in a]
    r = 0
    for c in range(cols):
        piv, best = None, float("-inf")
        for rr in range(r, rows):
            s = pivot_size(m[rr][c])
            if s > best:
                piv, best = rr, s
        if best == float("-inf"):
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = _inv_entry(m[r][c])
        m[r] = [x * inv for x in m[r]]
        for rr in range(rows):
            if rr == r or entry_is_zero(m[rr][c]):
                continue
            f = m[rr][c]
            m[rr] = [x - f * y for x, y in zip(m[rr], m[r])]
        r += 1
        if r == rows:
            break
    return r


def charpoly(ring, a):
    """Monic characteristic polynomial of a, lowest degree first.

    Faddeev-LeVerrier: all divisions are by the integers 1..n, which are
    exact in characteristic zero.
    """
    n = len(a)
    coeffs = [ring.zero() for _ in range(n + 1)]
    coeffs[n] = ring.one()
    m = [row[:] for row in a]
    c_prev = ring.one()
    ident = identity(ring, n)
    mk = None
    for k in range(1, n + 1):
        if k == 1:
            mk = m
        else:
            mk = mat_mul(m, mat_add(mk, mat_scale(c_prev, ident)))
        ck = -(trace(mk) * _inv_int(ring, k))
        coeffs[n - k] = ck
        c_prev = ck
    return coeffs


def _inv_int(ring, k: int):
    one = ring.one()
    acc = one
    for _ in range(k - 1):
        acc = acc + one
    return _inv_entry(acc)


def poly_eval(coeffs, x, ring):
    acc = ring.zero()
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_discriminant(ring, coeffs):
    """Discriminant of a monic polynomial via the Sylvester resultant with its derivative."""
    n = len(coeffs) - 1
    if n < 1:
        raise ValueError("degree must be >= 1")
    deriv = []
    for i in range(1, n + 1):
        acc = coeffs[i]
        for _ in range(i - 1):
            acc = acc + coeffs[i]
        deriv.append(acc)
    res = _resultant(ring, coeffs, deriv)
    # disc = (-1)^(n(n-1)/2) * res / lc, and lc = 1 (monic)
    if (n * (n - 1) // 2) % 2 == 1:
        res = -res
    return res


def _resultant(ring, f, g):
    """Resultant of two polynomials (lowest degree first) via the Sylvester matrix."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    if size == 0:
        return ring.one()
    rows = []
    fr = list(reversed(f))
    gr = list(reversed(g))
    for i in range(n):
        rows.append([ring.zero()] * i + fr + [ring.zero()] * (size - m - 1 - i))
    for i in range(m):
        rows.append([ring.zero()] * i + gr + [ring.zero()] * (size - n - 1 - i))
    return det(ring, rows)
