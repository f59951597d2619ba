"""Quadratic forms over F and the Gauss-sum evaluation of their Weil index.

The index gamma_psi(q) of a nondegenerate form q is the normalized value
i(L)/|i(L)| of the integral i(L) = \\int_L psi(q(v)/2) dv over any lattice L
with dual(L) contained in 2L; it is an exact eighth root of unity (a fourth
root for p odd).  The oracle below evaluates the integral as a finite sum
over a quotient of L that is deep enough for the summand to be well defined,
then snaps to mu_8 at tolerance 1e-6.
"""

from __future__ import annotations

from cmath import exp, pi
from fractions import Fraction

from . import matrices
from .cyclotomic import Mu8
from .padic import FieldConfig, PadicNumber, PrecisionError

SNAP_TOL = 1e-6


class QuadraticForm:
    """A nondegenerate quadratic form, as a symmetric Gram matrix over F."""

    def __init__(self, field: FieldConfig, gram):
        self.field = field
        self.gram = [[field(x) for x in row] for row in gram]
        n = len(self.gram)
        for row in self.gram:
            if len(row) != n:
                raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if not (self.gram[i][j] == self.gram[j][i]):
                    raise ValueError("Gram matrix must be symmetric")

    @staticmethod
    def diagonal(field: FieldConfig, coeffs) -> "QuadraticForm":
        cs = [field(c) for c in coeffs]
        n = len(cs)
        gram = [[cs[i] if i == j else field(0) for j in range(n)] for i in range(n)]
        return QuadraticForm(field, gram)

    @property
    def dim(self) -> int:
        return len(self.gram)

    def det(self) -> PadicNumber:
        return matrices.det(self.field, self.gram)

    def is_degenerate(self) -> bool:
        return self.det().is_zero()

    def diagonal_coeffs(self):
        """The diagonal entries, raising if the form is not diagonal."""
        for i in range(self.dim):
            for j in range(self.dim):
                if i != j and not self.gram[i][j].is_zero():
                    raise ValueError("form is not diagonal")
        return [self.gram[i][i] for i in range(self.dim)]

    def orthogonal_sum(self, other: "QuadraticForm") -> "QuadraticForm":
        n, m = self.dim, other.dim
        K = self.field
        gram = matrices.zeros(K, n + m, n + m)
        for i in range(n):
            for j in range(n):
                gram[i][j] = self.gram[i][j]
        for i in range(m):
            for j in range(m):
                gram[n + i][n + j] = other.gram[i][j]
        return QuadraticForm(K, gram)

    def negate(self) -> "QuadraticForm":
        return QuadraticForm(self.field, matrices.mat_neg(self.gram))


def diagonalize(q: QuadraticForm):
    """A congruent diagonal form: returns (diagonal QuadraticForm, P) with P^T G P diagonal."""
    K = q.field
    n = q.dim
    g = [row[:] for row in q.gram]
    p_mat = matrices.identity(K, n)
    for k in range(n):
        # choose the most-unit diagonal pivot available
        piv, best = None, float("-inf")
        for i in range(k, n):
            s = matrices.pivot_size(g[i][i])
            if s > best:
                piv, best = i, s
        if best == float("-inf"):
            # all remaining diagonal entries vanish; bring in an off-diagonal
            found = None
            for i in range(k, n):
                for j in range(i + 1, n):
                    if not g[i][j].is_zero():
                        found = (i, j)
                        break
                if found:
                    break
            if not found:
                raise PrecisionError("degenerate form cannot be diagonalized")
            i, j = found
            _congr_add(g, p_mat, i, j, K(1))  # row/col_i += row/col_j makes g[i][i] = 2 g[i][j] != 0
            piv = i
        if piv != k:
            _congr_swap(g, p_mat, k, piv)
        inv = g[k][k].inverse()
        for i in range(k + 1, n):
            if g[i][k].is_zero():
                continue
            f = g[i][k] * inv
            _congr_add(g, p_mat, i, k, -f)
    diag = [g[i][i] for i in range(n)]
    if any(d.is_zero() for d in diag):
        raise PrecisionError("degenerate form cannot be diagonalized")
    return QuadraticForm.diagonal(K, diag), p_mat


def _congr_swap(g, p_mat, i, j):
    g[i], g[j] = g[j], g[i]
    for row in g:
        row[i], row[j] = row[j], row[i]
    for row in p_mat:
        row[i], row[j] = row[j], row[i]


def _congr_add(g, p_mat, i, j, c):
    """Basis change e_i += c * e_j (columns of P), applied congruently to g."""
    n = len(g)
    for t in range(n):
        g[i][t] = g[i][t] + c * g[j][t]
    for t in range(n):
        g[t][i] = g[t][i] + c * g[t][j]
    for row in p_mat:
        row[i] = row[i] + c * row[j]


def _coordinate_gauss_sum(c: PadicNumber, lattice_shift: int = 0) -> complex:
    """i(L) for the one-dimensional form c*x^2 over L = p^j O.

    j = floor(-v(c)/2) + lattice_shift with lattice_shift <= 0, which keeps
    the admissibility dual(L) <= 2L.  The integral is a finite sum over
    L / p^(j+k) L with k just deep enough that psi(c x^2 / 2) is constant
    on cosets.
    """
    if lattice_shift > 0:
        raise ValueError("lattice_shift must be <= 0 to keep the lattice admissible")
    K = c.field
    p = K.p
    v = c.valuation()
    j = -((v + 1) // 2) + lattice_shift  # floor(-v/2) + shift
    k = max(0, -v - 2 * j)
    mod = p ** k
    scale = v + 2 * j  # <= 0
    total = 0j
    vol = Fraction(p) ** (-(j + k))
    if scale >= 0:
        return float(vol) * mod + 0j
    # psi(c x^2 / 2) for x = p^j m: the p-adic fractional part of
    # c_unit * m^2 * (1/2) * p^scale, where 1/2 is a p-adic unit.
    denom = p ** (-scale)
    cu = c.unit_part(min(c.prec, -scale)) % denom
    half = pow(2, -1, denom)
    for m in range(mod):
        t = Fraction(cu * m * m * half % denom, denom)
        total += exp(2j * pi * float(t))
    return total * float(vol)


def weil_index_oracle(q: QuadraticForm, lattice_shift=0) -> Mu8:
    """gamma_psi(q) for a diagonal form q, straight from the defining integral.

    lattice_shift may be an int applied to every coordinate lattice or a
    per-coordinate list; any admissible choice returns the same mu_8 element,
    which the lattice-independence tests exercise.
    """
    coeffs = q.diagonal_coeffs()
    if any(c.is_zero() for c in coeffs):
        raise PrecisionError("degenerate form has no Weil index")
    if isinstance(lattice_shift, int):
        shifts = [lattice_shift] * len(coeffs)
    else:
        shifts = list(lattice_shift)
    total = 1 + 0j
    for c, s in zip(coeffs, shifts):
        total *= _coordinate_gauss_sum(c, s)
    return Mu8.from_complex(total, SNAP_TOL)


def weil_index(q: QuadraticForm) -> Mu8:
    """gamma_psi of an arbitrary nondegenerate form (diagonalized first)."""
    try:
        diag = q.diagonal_coeffs()
        dq = q
    except ValueError:
        dq, _ = diagonalize(q)
    return weil_index_oracle(dq)


def gamma_ratio(a: PadicNumber) -> Mu8:
    """gamma_psi(a x^2) / gamma_psi(x^2); a function of the square class of a."""
    if a.is_zero():
        raise PrecisionError("gamma ratio of zero")
    K = a.field
    num = weil_index_oracle(QuadraticForm.diagonal(K, [a]))
    den = weil_index_oracle(QuadraticForm.diagonal(K, [K(1)]))
    return num / den


def gamma_of_gram(field: FieldConfig, gram) -> Mu8:
    """Weil index of the form with the given Gram matrix."""
    return weil_index(QuadraticForm(field, gram))
