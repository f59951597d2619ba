"""The two symmetric-pair geometries and their linear algebra.

Side one: G = GL_2n over F with H = GL_n x GL_n fixed by conjugation with
eps = diag(1_n, -1_n); the (-1)-eigenspace s consists of anti-diagonal
blocks, stored as the pair (A1, A2).  Side two: the twisted form built from
a quadratic extension E and a parameter gamma, whose (-1)-eigenspace s' is
gl_n(E) with the sigma-twisted H' = GL_n(E) action h.B = h B conj(h)^-1.

Both sides share the trace pairing <X,Y> = tr(XY), which takes values in F
on either space.
"""

from __future__ import annotations

from fractions import Fraction

from . import matrices
from .padic import ExtElement, FieldConfig, PadicNumber, PrecisionError, QuadExtension


class LieSElement:
    """(A1, A2), standing for the anti-diagonal block matrix [[0, A1], [A2, 0]]."""

    __slots__ = ("pair", "a1", "a2")

    def __init__(self, pair: "PairS", a1, a2):
        self.pair = pair
        self.a1 = [[pair.K(x) for x in row] for row in a1]
        self.a2 = [[pair.K(x) for x in row] for row in a2]

    def __repr__(self):
        return f"LieSElement({self.a1!r}, {self.a2!r})"

    def __neg__(self):
        return LieSElement(self.pair, matrices.mat_neg(self.a1), matrices.mat_neg(self.a2))

    def scale(self, c) -> "LieSElement":
        c = self.pair.K(c)
        return LieSElement(self.pair, matrices.mat_scale(c, self.a1), matrices.mat_scale(c, self.a2))

    def add(self, other: "LieSElement") -> "LieSElement":
        return LieSElement(self.pair, matrices.mat_add(self.a1, other.a1),
                           matrices.mat_add(self.a2, other.a2))

    def embed(self):
        """The full 2n x 2n matrix [[0, A1], [A2, 0]] over F."""
        K, n = self.pair.K, self.pair.n
        out = matrices.zeros(K, 2 * n, 2 * n)
        for i in range(n):
            for j in range(n):
                out[i][n + j] = self.a1[i][j]
                out[n + i][j] = self.a2[i][j]
        return out


class LieSPrimeElement:
    """B in gl_n(E), standing for [[0, gamma*B], [conj(B), 0]]."""

    __slots__ = ("pair", "b")

    def __init__(self, pair: "PairSPrime", b):
        self.pair = pair
        self.b = [[pair.E(x) for x in row] for row in b]

    def __repr__(self):
        return f"LieSPrimeElement({self.b!r})"

    def __neg__(self):
        return LieSPrimeElement(self.pair, matrices.mat_neg(self.b))

    def scale(self, c) -> "LieSPrimeElement":
        c = self.pair.E(self.pair.K(c))
        return LieSPrimeElement(self.pair, matrices.mat_scale(c, self.b))

    def embed(self):
        """The 2n x 2n matrix over E."""
        E, n = self.pair.E, self.pair.n
        gamma = E(self.pair.gamma)
        out = [[E(0) for _ in range(2 * n)] for _ in range(2 * n)]
        for i in range(n):
            for j in range(n):
                out[i][n + j] = gamma * self.b[i][j]
                out[n + i][j] = self.b[i][j].conj()
        return out


class PairS:
    """The split-side symmetric pair at rank n over F."""

    def __init__(self, K: FieldConfig, n: int):
        self.K = K
        self.n = n

    def element(self, a1, a2) -> LieSElement:
        return LieSElement(self, a1, a2)

    def scalar_element(self, x, y) -> LieSElement:
        """Convenience for n = 1: the element (x, y)."""
        return self.element([[x]], [[y]])

    # -- group and action ------------------------------------------------

    def act(self, h, X: LieSElement) -> LieSElement:
        """(h1, h2) . (A1, A2) = (h1 A1 h2^-1, h2 A2 h1^-1)."""
        h1, h2 = h
        h1 = [[self.K(x) for x in row] for row in h1]
        h2 = [[self.K(x) for x in row] for row in h2]
        h1i = matrices.inverse(self.K, h1)
        h2i = matrices.inverse(self.K, h2)
        return LieSElement(self,
                           matrices.mat_mul(matrices.mat_mul(h1, X.a1), h2i),
                           matrices.mat_mul(matrices.mat_mul(h2, X.a2), h1i))

    def eta_of_h(self, h, ext: QuadExtension) -> int:
        """eta(h) = eta(det h1 * det h2); trivial on every stabilizer of an rss point."""
        h1, h2 = h
        d = matrices.det(self.K, [[self.K(x) for x in row] for row in h1]) * \
            matrices.det(self.K, [[self.K(x) for x in row] for row in h2])
        return ext.eta(d)

    def theta(self, g):
        """theta(g) = eps g eps on 2n x 2n matrices."""
        n = self.n
        out = [row[:] for row in g]
        for i in range(2 * n):
            for j in range(2 * n):
                if (i < n) != (j < n):
                    out[i][j] = -out[i][j]
        return out

    def symmetrize(self, g):
        """s(g) = g * iota(g) with iota(g) = theta(g^-1); fixed by iota, constant on gH."""
        gi = matrices.inverse(self.K, g)
        return matrices.mat_mul(g, self.theta(gi))

    def iota(self, g):
        return self.theta(matrices.inverse(self.K, g))

    def cayley(self, X: LieSElement):
        """(1 - X)(1 + X)^-1 on the embedded matrix; needs 1 +- X invertible."""
        K, n = self.K, self.n
        m = X.embed()
        ident = matrices.identity(K, 2 * n)
        plus = matrices.mat_add(ident, m)
        minus = matrices.mat_sub(ident, m)
        d = matrices.det(K, plus) * matrices.det(K, minus)
        if d.is_zero():
            raise PrecisionError("Cayley transform needs det(1+X)det(1-X) != 0")
        return matrices.mat_mul(minus, matrices.inverse(K, plus))

    # -- pairing and ambient algebra --------------------------------------

    def pairing(self, X: LieSElement, Y: LieSElement) -> PadicNumber:
        """<X,Y> = tr(XY) = tr(A1 B2) + tr(A2 B1)."""
        acc = self.K(0)
        n = self.n
        for i in range(n):
            for j in range(n):
                acc = acc + X.a1[i][j] * Y.a2[j][i]
                acc = acc + X.a2[i][j] * Y.a1[j][i]
        return acc

    def ambient_dim(self) -> int:
        return 4 * self.n * self.n

    def ad_matrix(self, X: LieSElement):
        """ad(X) on gl_2n(F), in the ordered basis (h-basis, s-basis)."""
        m = X.embed()
        cols = []
        for bvec in self.h_basis() + self.s_basis():
            br = self.bracket(m, bvec)
            cols.append(self._decompose(br))
        return matrices.transpose(cols)

    def _decompose(self, mat):
        """Coordinates of a 2n x 2n matrix in the (h-basis, s-basis) order."""
        n = self.n
        coords = []
        for blk in range(2):
            for i in range(n):
                for j in range(n):
                    coords.append(mat[blk * n + i][blk * n + j])
        for i in range(n):
            for j in range(n):
                coords.append(mat[i][n + j])
        for i in range(n):
            for j in range(n):
                coords.append(mat[n + i][j])
        return coords

    def h_basis(self):
        """Basis of the fixed subalgebra (block-diagonal matrices) as embedded matrices."""
        K, n = self.K, self.n
        out = []
        for blk in range(2):
            for i in range(n):
                for j in range(n):
                    m = matrices.zeros(K, 2 * n, 2 * n)
                    m[blk * n + i][blk * n + j] = K(1)
                    out.append(m)
        return out

    def s_basis(self):
        out = []
        K, n = self.K, self.n
        for i in range(n):
            for j in range(n):
                a1 = matrices.zeros(K, n, n)
                a1[i][j] = K(1)
                out.append(self.element(a1, matrices.zeros(K, n, n)).embed())
        for i in range(n):
            for j in range(n):
                a2 = matrices.zeros(K, n, n)
                a2[i][j] = K(1)
                out.append(self.element(matrices.zeros(K, n, n), a2).embed())
        return out

    def trace_form(self, m1, m2) -> PadicNumber:
        return matrices.trace(matrices.mat_mul(m1, m2))

    def bracket(self, m1, m2):
        return matrices.mat_sub(matrices.mat_mul(m1, m2), matrices.mat_mul(m2, m1))


class PairSPrime:
    """The twisted-side symmetric pair at rank n, built from E and gamma."""

    def __init__(self, ext: QuadExtension, n: int, gamma=1):
        self.E = ext
        self.K = ext.K
        self.n = n
        self.gamma = ext.K(gamma)
        if self.gamma.is_zero():
            raise ValueError("gamma must be a unit of F^x")

    def element(self, b) -> LieSPrimeElement:
        return LieSPrimeElement(self, b)

    def scalar_element(self, b) -> LieSPrimeElement:
        return self.element([[b]])

    def act_twisted(self, h, X: LieSPrimeElement) -> LieSPrimeElement:
        """h . B = h B conj(h)^-1."""
        h = [[self.E(x) for x in row] for row in h]
        hbar = [[x.conj() for x in row] for row in h]
        hbari = matrices.inverse(self.E, hbar)
        return LieSPrimeElement(self, matrices.mat_mul(matrices.mat_mul(h, X.b), hbari))

    def pairing(self, X: LieSPrimeElement, Y: LieSPrimeElement) -> PadicNumber:
        """<X,Y> = tr(XY) = gamma * Tr_{E/F} tr(B conj(C)); always lands in F."""
        E, n = self.E, self.n
        acc = E(0)
        for i in range(n):
            for j in range(n):
                acc = acc + X.b[i][j] * Y.b[j][i].conj()
        acc = self.E(self.gamma) * acc
        val = acc + acc.conj()
        assert val.b.is_zero()
        return val.a

    def norm_matrix(self, X: LieSPrimeElement):
        """gamma * B * conj(B), the invariant matrix over E (with F char poly)."""
        bbar = [[x.conj() for x in row] for row in X.b]
        g = self.E(self.gamma)
        return matrices.mat_scale(g, matrices.mat_mul(X.b, bbar))

    def ambient_dim(self) -> int:
        return 4 * self.n * self.n

    def _gprime_basis(self):
        """F-basis of the twisted algebra: blocks [[A, gamma B], [conj B, conj A]]."""
        E, n = self.E, self.n
        out = []
        one, delta = E(1), E.gen()
        gamma = E(self.K(self.gamma))
        for comp in (one, delta):
            for i in range(n):
                for j in range(n):
                    m = [[E(0) for _ in range(2 * n)] for _ in range(2 * n)]
                    m[i][j] = comp
                    m[n + i][n + j] = comp.conj()
                    out.append(m)
        for comp in (one, delta):
            for i in range(n):
                for j in range(n):
                    m = [[E(0) for _ in range(2 * n)] for _ in range(2 * n)]
                    m[i][n + j] = gamma * comp
                    m[n + i][j] = comp.conj()
                    out.append(m)
        return out

    def h_basis(self):
        """First half of the twisted-algebra basis: the diag(A, conj A) part."""
        return self._gprime_basis()[: 2 * self.n * self.n]

    def s_basis(self):
        return self._gprime_basis()[2 * self.n * self.n:]

    def trace_form(self, m1, m2) -> PadicNumber:
        val = matrices.trace(matrices.mat_mul(m1, m2))
        assert val.b.is_zero()
        return val.a

    def bracket(self, m1, m2):
        return matrices.mat_sub(matrices.mat_mul(m1, m2), matrices.mat_mul(m2, m1))

    def ad_matrix(self, X: LieSPrimeElement):
        """ad(X) on the twisted algebra, as an F-matrix in the _gprime_basis coordinates."""
        basis = self._gprime_basis()
        m = X.embed()
        cols = []
        for bvec in basis:
            br = self.bracket(m, bvec)
            cols.append(self._decompose(br))
        return matrices.transpose(cols)

    def _decompose(self, mat):
        """Coordinates of a twisted-algebra matrix in the _gprime_basis order."""
        n = self.n
        gamma_inv = self.E(self.gamma).inverse() if not self.gamma.is_zero() else None
        coords = []
        for i in range(n):
            for j in range(n):
                coords.append(mat[i][j].a)
        for i in range(n):
            for j in range(n):
                coords.append(mat[i][j].b)
        for i in range(n):
            for j in range(n):
                coords.append((gamma_inv * mat[i][n + j]).a)
        for i in range(n):
            for j in range(n):
                coords.append((gamma_inv * mat[i][n + j]).b)
        return coords


# ---------------------------------------------------------------------------
# Discriminant factor |D(X)|
# ---------------------------------------------------------------------------

def disc_exponent(pair, X) -> Fraction:
    """e with |D(X)|_F = p^e, where |D(X)| = |det(ad X on g/ker)|^(1/2).

    The determinant of the induced endomorphism on the ambient algebra
    modulo the centralizer is the lowest nonvanishing coefficient of the
    characteristic polynomial of ad(X) (ad X is semisimple for rss X), up
    to sign, so no basis of the complement is ever needed.
    """
    K = pair.K
    ad = pair.ad_matrix(X)
    coeffs = matrices.charpoly(K, ad)
    z = 0
    while z < len(coeffs) and coeffs[z].is_zero():
        z += 1
    if z >= len(coeffs) - 1:
        raise PrecisionError("ad(X) is nilpotent at precision; no discriminant")
    expected_kernel = 2 * pair.n
    if z != expected_kernel:
        raise ValueError(f"element is not regular semisimple (kernel dim {z})")
    c = coeffs[z]
    return Fraction(-c.valuation(), 2)


def disc_abs(pair, X) -> Fraction:
    """|D(X)|_F as an exact power of p (possibly half-integer exponent)."""
    return disc_exponent(pair, X)


# ---------------------------------------------------------------------------
# Gram matrices of the trace form on the named subspaces
# ---------------------------------------------------------------------------

def gram_of_basis(pair, basis):
    return [[pair.trace_form(b1, b2) for b2 in basis] for b1 in basis]


def gram_h(pair):
    """Gram of <,> on the fixed subalgebra (h or h')."""
    return gram_of_basis(pair, pair.h_basis())


def cartan_space_basis(pair, X):
    """Coordinate basis of the centralizer of X inside s (the Cartan through rss X)."""
    ad = pair.ad_matrix(X)
    ker = matrices.solve_kernel(pair.K, ad)
    sdim = 2 * pair.n * pair.n
    coords = []
    for vec in ker:
        svec = vec[sdim:]
        if all(x.is_zero() for x in vec[:sdim]):
            coords.append(svec)
    if len(coords) != pair.n:
        raise ValueError("unexpected Cartan dimension; element not regular semisimple?")
    return coords


def torus_subalgebra_basis(pair, X):
    """Basis (in h-coordinates) of t = the centralizer of the Cartan through X inside h."""
    ad = pair.ad_matrix(X)
    ker = matrices.solve_kernel(pair.K, ad)
    sdim = 2 * pair.n * pair.n
    out = []
    for vec in ker:
        hvec = vec[:sdim]
        if all(x.is_zero() for x in vec[sdim:]):
            out.append(hvec)
    if len(out) != pair.n:
        raise ValueError("unexpected torus dimension; element not regular semisimple?")
    return out


def _h_matrix_from_coords(pair, coords):
    basis = pair.h_basis()
    acc = None
    for c, b in zip(coords, basis):
        if isinstance(b[0][0], ExtElement):
            term = matrices.mat_scale(pair.E(c), b)
        else:
            term = matrices.mat_scale(c, b)
        acc = term if acc is None else matrices.mat_add(acc, term)
    return acc


def q_complement_basis(pair, X):
    """Matrices spanning the orthogonal complement of t inside h (the space q)."""
    K = pair.K
    hb = pair.h_basis()
    tvecs = torus_subalgebra_basis(pair, X)
    tmats = [_h_matrix_from_coords(pair, tv) for tv in tvecs]
    rows = [[pair.trace_form(tm, hbv) for hbv in hb] for tm in tmats]
    ker = matrices.solve_kernel(K, rows)
    return [_h_matrix_from_coords(pair, kv) for kv in ker]


def bracket_pair_gram(pair, X, Y):
    """Gram matrix of q_{X,Y}(Z, Z') = <[Z,X],[Y,Z']> on the complement of t in h.

    X and Y must be regular elements of a common Cartan space; the form is
    then symmetric and nondegenerate.
    """
    qb = q_complement_basis(pair, X)
    mx = X.embed()
    my = Y.embed()
    bx = [pair.bracket(z, mx) for z in qb]
    by = [pair.bracket(my, z) for z in qb]
    return [[pair.trace_form(bx[i], by[j]) for j in range(len(qb))] for i in range(len(qb))]
