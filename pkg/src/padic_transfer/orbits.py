"""Orbit invariants, regularity, matching, the gamma-norm criterion and transfer factors.

The H-orbit of a regular semisimple element on either side is pinned down by
one monic polynomial: the characteristic polynomial of A1*A2 on the split
side, of gamma*B*conj(B) on the twisted side.  Matching between the two
sides is equality of these invariants; existence of a twisted partner for a
split element is the norm condition decided by is_in_gamma_norm.
"""

from __future__ import annotations

from fractions import Fraction

from . import matrices
from .padic import (ExtElement, FieldConfig, PadicNumber, PrecisionError,
                    QuadExtension, Unsupported, hensel_simple_root)
from .pairs import LieSElement, LieSPrimeElement, PairS, PairSPrime


class OrbitInvariant:
    """The monic invariant polynomial of an orbit, lowest degree first."""

    def __init__(self, field: FieldConfig, coeffs):
        self.field = field
        self.coeffs = [field(c) for c in coeffs]
        if not (self.coeffs[-1] == field(1)):
            raise ValueError("invariant polynomial must be monic")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def discriminant(self) -> PadicNumber:
        return matrices.poly_discriminant(self.field, self.coeffs)

    def is_separable(self) -> bool:
        return not self.discriminant().is_zero()

    def constant_term(self) -> PadicNumber:
        return self.coeffs[0]

    def has_root(self, x) -> bool:
        return matrices.poly_eval(self.coeffs, self.field(x), self.field).is_zero()

    def __eq__(self, other):
        if not isinstance(other, OrbitInvariant):
            return NotImplemented
        if self.degree != other.degree:
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __repr__(self):
        return f"OrbitInvariant({[repr(c) for c in self.coeffs]})"

    def serialize(self):
        return [c.serialize() for c in self.coeffs]


def invariant(X) -> OrbitInvariant:
    """Characteristic polynomial of A1*A2, resp. gamma*B*conj(B) (coefficients in F)."""
    if isinstance(X, LieSElement):
        K = X.pair.K
        prod = matrices.mat_mul(X.a1, X.a2)
        return OrbitInvariant(K, matrices.charpoly(K, prod))
    if isinstance(X, LieSPrimeElement):
        pair = X.pair
        nm = pair.norm_matrix(X)
        coeffs_e = matrices.charpoly(pair.E, nm)
        out = []
        for c in coeffs_e:
            if not c.b.is_zero():
                raise PrecisionError("invariant of twisted element not sigma-invariant at precision")
            out.append(c.a)
        return OrbitInvariant(pair.K, out)
    raise TypeError("invariant expects a LieSElement or LieSPrimeElement")


def is_regular_semisimple(X) -> bool:
    """Separable invariant with invertible blocks (closed orbit of maximal dimension)."""
    inv = invariant(X)
    disc = inv.discriminant()
    if disc.is_zero() and not disc.is_exact_zero():
        raise PrecisionError("regularity undecidable at working precision")
    if disc.is_zero():
        return False
    if isinstance(X, LieSElement):
        d1 = matrices.det(X.pair.K, X.a1)
        d2 = matrices.det(X.pair.K, X.a2)
        return not (d1.is_zero() or d2.is_zero())
    db = matrices.det(X.pair.E, X.b)
    return not db.is_zero()


def matches(X: LieSElement, Y: LieSPrimeElement) -> bool:
    """Orbit matching: equal invariant polynomials of regular semisimple elements."""
    if not is_regular_semisimple(X) or not is_regular_semisimple(Y):
        raise ValueError("matching is defined for regular semisimple elements")
    return invariant(X) == invariant(Y)


def kappa(X: LieSElement, ext: QuadExtension) -> int:
    """Transfer factor on the split Lie algebra side: eta(det A1)."""
    if not is_regular_semisimple(X):
        raise ValueError("transfer factor needs a regular semisimple element")
    return ext.eta(matrices.det(X.pair.K, X.a1))


def group_invariant(pair: PairS, x) -> OrbitInvariant:
    """Invariant of an element of the symmetric space S: char poly of the upper-left block."""
    n, K = pair.n, pair.K
    a_block = [[x[i][j] for j in range(n)] for i in range(n)]
    return OrbitInvariant(K, matrices.charpoly(K, a_block))


def is_group_rss(pair: PairS, x) -> bool:
    """Regular semisimple in S: fixed by iota, separable invariant, +-1 not eigenvalues."""
    K = pair.K
    it = pair.iota(x)
    for i in range(2 * pair.n):
        for j in range(2 * pair.n):
            if not (it[i][j] == x[i][j]):
                return False
    inv = group_invariant(pair, x)
    if not inv.is_separable():
        return False
    return not inv.has_root(1) and not inv.has_root(-1)


def kappa_group(pair: PairS, x, ext: QuadExtension) -> int:
    """Transfer factor on the symmetric space: eta(det of the upper-right block)."""
    if not is_group_rss(pair, x):
        raise ValueError("transfer factor needs a regular semisimple element of S")
    n, K = pair.n, pair.K
    b_block = [[x[i][n + j] for j in range(n)] for i in range(n)]
    db = matrices.det(K, b_block)
    if db.is_zero():
        raise ValueError("upper-right block is singular")
    return ext.eta(db)


# ---------------------------------------------------------------------------
# Unramified factor fields F_i = F[t]/(mu) and the gamma-norm criterion
# ---------------------------------------------------------------------------

class UnramifiedExt:
    """The unramified extension of F defined by a monic mod-p irreducible mu.

    Elements are coefficient tuples over F of length deg(mu); the ring of
    integers is O_F[s], so the valuation is the minimum coefficient valuation
    and the residue field is F_q = F_p[s]/(mu mod p).
    """

    def __init__(self, K: FieldConfig, mu_int):
        self.K = K
        self.mu = [m % K.p ** K.precision for m in mu_int]
        self.d = len(mu_int) - 1
        assert mu_int[-1] == 1
        self.q = K.p ** self.d
        self.mu_bar = [m % K.p for m in mu_int]

    def coerce(self, x):
        if isinstance(x, (int, Fraction, PadicNumber)):
            return [self.K(x)] + [self.K(0)] * (self.d - 1)
        return list(x)

    def add(self, x, y):
        return [a + b for a, b in zip(x, y)]

    def mul(self, x, y):
        K, d = self.K, self.d
        conv = [K(0)] * (2 * d - 1)
        for i, a in enumerate(x):
            if a.is_zero():
                continue
            for j, b in enumerate(y):
                conv[i + j] = conv[i + j] + a * b
        # reduce modulo the monic mu
        for top in range(2 * d - 2, d - 1, -1):
            c = conv[top]
            if c.is_zero():
                continue
            for k in range(self.d):
                conv[top - self.d + k] = conv[top - self.d + k] - c * K(self.mu[k])
            conv[top] = K(0)
        return conv[:d]

    def scalar_mul(self, c, x):
        c = self.K(c)
        return [c * a for a in x]

    def inverse(self, x):
        """Solve x*y = 1 by linear algebra on the multiplication matrix."""
        K, d = self.K, self.d
        cols = []
        for i in range(d):
            e = [K(0)] * d
            e[i] = K(1)
            cols.append(self.mul(x, e))
        m = matrices.transpose(cols)
        inv = matrices.inverse(K, m)
        return [inv[i][0] for i in range(d)]

    def valuation(self, x) -> int:
        vals = [c.valuation() for c in x if not c.is_zero()]
        if not vals:
            raise PrecisionError("valuation of zero in factor field")
        return min(vals)

    def shift(self, x, k: int):
        """Multiply by p^k."""
        return [c << k for c in x]

    def residue_poly(self, x):
        """The residue in F_q as an integer-coefficient polynomial mod p."""
        out = []
        for c in x:
            if c.is_zero():
                out.append(0)
            elif c.valuation() > 0:
                out.append(0)
            elif c.valuation() == 0:
                out.append(c.residue())
            else:
                raise ValueError("residue of a non-integral element")
        return out

    # residue-field helpers (integer polynomial arithmetic mod (p, mu_bar))

    def _fq_mul(self, a, b):
        p, d = self.K.p, self.d
        conv = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                conv[i + j] = (conv[i + j] + x * y) % p
        for top in range(2 * d - 2, d - 1, -1):
            c = conv[top]
            if c:
                for k in range(d):
                    conv[top - d + k] = (conv[top - d + k] - c * self.mu_bar[k]) % p
                conv[top] = 0
        return conv[:d]

    def legendre(self, x) -> int:
        """Legendre symbol in F_q of the unit part of x."""
        v = self.valuation(x)
        unit = self.shift(x, -v)
        r = self.residue_poly(unit)
        if all(c == 0 for c in r):
            raise PrecisionError("unit part reduced to zero")
        # r^((q-1)/2) in F_q
        e = (self.q - 1) // 2
        acc = [1] + [0] * (self.d - 1)
        base = r
        while e:
            if e & 1:
                acc = self._fq_mul(acc, base)
            base = self._fq_mul(base, base)
            e >>= 1
        if acc == [1] + [0] * (self.d - 1):
            return 1
        if acc == [self.K.p - 1] + [0] * (self.d - 1):
            return -1
        raise AssertionError("legendre power did not land on +-1")

    def eta_of(self, x, ext: QuadExtension) -> int:
        """The quadratic character of F_i^x attached to L_i = F_i(sqrt(Delta)).

        Returns 0 when L_i splits (E embeds into F_i), in which case there
        is no condition on x.
        """
        if not ext.ramified:
            if self.d % 2 == 0:
                return 0
            return 1 if self.valuation(x) % 2 == 0 else -1
        # Delta = p * w with w a unit; Hilbert symbol (x, Delta) over F_i
        vx = self.valuation(x)
        eps = (self.q - 1) // 2
        w = ext.delta.unit_part(1)
        sign = -1 if (vx * eps) % 2 == 1 else 1
        sign *= self.legendre(x)  # v(Delta) = 1 multiplies in leg(unit x)
        if vx % 2 == 1:
            wq = pow(w, (self.q - 1) // 2, self.K.p)
            sign *= 1 if wq == 1 else -1
        return sign

    def newton_root(self, poly_coeffs):
        """Lift the residue root s of poly (lowest first, coefficients in F) to F_i."""
        K, d = self.K, self.d
        cs = [self.coerce(c) for c in poly_coeffs]
        x = [K(0), K(1)] + [K(0)] * (d - 2) if d >= 2 else [K(0)] * 1
        if d == 1:
            # mu = t - r: the residue root is r
            x = [K(-self.mu[0])]

        def ev(cfs, z):
            acc = self.coerce(0)
            for c in reversed(cfs):
                acc = self.add(self.mul(acc, z), c)
            return acc

        dcs = []
        for i in range(1, len(cs)):
            term = cs[i]
            acc = term
            for _ in range(i - 1):
                acc = self.add(acc, term)
            dcs.append(acc)
        steps = 0
        while True:
            fx = ev(cs, x)
            if all(c.is_zero() for c in fx):
                return x
            steps += 1
            if steps > K.precision + 2:
                raise ArithmeticError("Newton iteration failed to converge")
            fpx = ev(dcs, x)
            x = self.add(x, [(-c) for c in self.mul(fx, self.inverse(fpx))])


def _poly_mod_p(coeffs, p):
    return [int(c) % p for c in coeffs]


def _fp_polydiv(a, b, p):
    """Divide a by b over F_p (lists lowest-first); returns (q, r)."""
    a = a[:]
    db, lb = len(b) - 1, b[-1]
    while len(b) > 1 and b[-1] == 0:
        b = b[:-1]
        db, lb = len(b) - 1, b[-1]
    inv = pow(lb, -1, p)
    q = [0] * max(1, len(a) - db)
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        c = a[-1] * inv % p
        sh = len(a) - 1 - db
        q[sh] = c
        for i in range(db + 1):
            a[sh + i] = (a[sh + i] - c * b[i]) % p
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return q, a


def _fp_gcd(a, b, p):
    while any(c % p for c in b):
        _, r = _fp_polydiv(a, b, p)
        a, b = b, r
    # normalize monic
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    if any(a):
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _fp_monics(p, d):
    for idx in range(p ** d):
        lo = []
        t = idx
        for _ in range(d):
            lo.append(t % p)
            t //= p
        yield lo + [1]


def _fp_factor(coeffs, p):
    """Irreducible factorization over F_p as [(monic factor, multiplicity)].

    Brute force: a smallest-degree nontrivial monic divisor is automatically
    irreducible.  Fine at the degrees this package meets.
    """
    work = [c % p for c in coeffs]
    while len(work) > 1 and work[-1] == 0:
        work.pop()
    inv = pow(work[-1], -1, p)
    work = [c * inv % p for c in work]
    out = {}
    while len(work) - 1 >= 1:
        factor = None
        for d in range(1, len(work) - 1):
            for cand in _fp_monics(p, d):
                _, r = _fp_polydiv(work, cand, p)
                if not any(r):
                    factor = cand
                    break
            if factor:
                break
        if factor is None:
            factor = work[:]
        mult = 0
        while True:
            q, r = _fp_polydiv(work, factor, p)
            if any(r):
                break
            mult += 1
            work = q
        out.setdefault(tuple(factor), 0)
        out[tuple(factor)] += mult
    return [(list(f), m) for f, m in out.items()]


def is_in_gamma_norm(pair: PairS, a_matrix, gamma, ext: QuadExtension):
    """Decide A in gamma * N(GL_n(E)) for a regular semisimple A over F.

    The centralizer of A is a product of fields F_i cut out by the
    irreducible factors of its characteristic polynomial; the condition
    holds iff the eigenvalue-over-gamma is a norm from E*F_i in every
    factor where that tensor is a field.  Characteristic polynomials whose
    mod-p reduction has a repeated irreducible factor are not split here:
    those return Unsupported rather than a guess.
    """
    K = pair.K
    gamma = K(gamma)
    if gamma.is_zero():
        raise ValueError("gamma must be nonzero")
    a = [[K(x) for x in row] for row in a_matrix]
    chi = matrices.charpoly(K, a)
    disc = matrices.poly_discriminant(K, chi)
    if disc.is_zero():
        raise ValueError("A must be regular semisimple (separable char poly)")
    if matrices.det(K, a).is_zero():
        raise ValueError("A must be invertible")
    # normalize to integral coefficients: A in gamma*N iff p^2k A is
    n = len(chi) - 1
    worst = 0
    for i, c in enumerate(chi[:-1]):
        if not c.is_zero() and c.valuation() < 0:
            need = (-c.valuation() + (n - i) - 1) // (n - i)
            worst = max(worst, need)
    # p^2k = N(p^k) is a norm in every quadratic extension, so scaling A by
    # an even power of p changes neither side of the membership question.
    shift = 2 * ((worst + 1) // 2)
    if shift:
        chi = [c << (shift * (n - i)) for i, c in enumerate(chi)]
    gamma_eff = gamma
    p = K.p
    chibar = []
    for c in chi:
        if c.is_zero():
            chibar.append(0)
        elif c.valuation() > 0:
            chibar.append(0)
        else:
            chibar.append(c.residue())
    factors = _fp_factor(chibar, p)
    if sum(m * (len(f) - 1) for f, m in factors) != n:
        raise Unsupported("mod-p reduction dropped degree; no Hensel splitting available")
    if any(m > 1 for _, m in factors):
        raise Unsupported("repeated irreducible factor mod p; no Hensel splitting available")
    for mu_bar, _ in factors:
        ext_field = UnramifiedExt(K, mu_bar)
        alpha = ext_field.newton_root(chi)
        x = ext_field.mul(alpha, ext_field.inverse(ext_field.coerce(gamma_eff)))
        sign = ext_field.eta_of(x, ext)
        if sign == -1:
            return False
    return True
