"""Exact arithmetic in Q_p (p odd) and its quadratic extensions at fixed working precision.

Numbers are stored as p^v * u with the unit mantissa u kept modulo p^prec,
so every value is known exactly modulo p^(v+prec).  Operations that would
leave fewer than one significant digit raise PrecisionError instead of
silently truncating.
"""

from __future__ import annotations

from fractions import Fraction


class PrecisionError(ArithmeticError):
    """Raised when a result would carry no significant p-adic digits."""


class Unsupported(Exception):
    """Raised when an operation is outside the implemented decision procedures."""


def _val_int(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class FieldConfig:
    """The base field F = Q_p with an odd prime p and a working precision."""

    def __init__(self, p: int, precision: int = 24):
        if p < 3 or p % 2 == 0 or not _is_prime(p):
            raise ValueError("p must be an odd prime")
        if precision < 4:
            raise ValueError("precision must be at least 4")
        self.p = p
        self.precision = precision

    def __repr__(self):
        return f"FieldConfig(p={self.p}, precision={self.precision})"

    def __eq__(self, other):
        return isinstance(other, FieldConfig) and (self.p, self.precision) == (other.p, other.precision)

    def __hash__(self):
        return hash((self.p, self.precision))

    # -- construction -------------------------------------------------

    def __call__(self, x) -> "PadicNumber":
        """Coerce an int, Fraction or PadicNumber into this field."""
        if isinstance(x, PadicNumber):
            if x.field is not self and x.field != self:
                raise ValueError("mixing distinct field configs")
            return x
        if isinstance(x, int):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x == 0:
                return self.zero()
            v = _val_int(x.numerator, self.p) - _val_int(x.denominator, self.p)
            num = x.numerator // self.p ** max(_val_int(x.numerator, self.p), 0)
            den = x.denominator // self.p ** max(_val_int(x.denominator, self.p), 0)
            m = self.p ** self.precision
            u = num * pow(den, -1, m) % m
            return PadicNumber(self, v, u, self.precision)
        raise TypeError(f"cannot coerce {type(x)} into Q_p")

    def zero(self) -> "PadicNumber":
        return PadicNumber(self, None, None, None, exact_zero=True)

    def one(self) -> "PadicNumber":
        return self(1)

    def uniformizer(self) -> "PadicNumber":
        return self(self.p)

    def inexact_zero(self, level: int) -> "PadicNumber":
        """A value indistinguishable from 0 modulo p^level."""
        z = PadicNumber(self, None, None, None, exact_zero=False)
        z.zero_level = level
        return z

    # -- residue-field helpers ----------------------------------------

    def legendre(self, n: int) -> int:
        """Legendre symbol of n mod p (n must be a unit)."""
        n %= self.p
        if n == 0:
            raise ValueError("legendre of 0")
        return 1 if pow(n, (self.p - 1) // 2, self.p) == 1 else -1

    def least_nonresidue(self) -> int:
        for u in range(2, self.p):
            if self.legendre(u) == -1:
                return u
        raise AssertionError("no quadratic nonresidue found")

    def square_class_reps(self):
        """Representatives {1, u0, p, u0*p} of F^x / (F^x)^2."""
        u0 = self.least_nonresidue()
        return [self(1), self(u0), self(self.p), self(u0 * self.p)]

    def random_unit(self, rng) -> "PadicNumber":
        m = self.p ** self.precision
        u = rng.randrange(1, m)
        while u % self.p == 0:
            u = rng.randrange(1, m)
        return PadicNumber(self, 0, u, self.precision)

    def random_nonzero(self, rng, vmin: int = -2, vmax: int = 2) -> "PadicNumber":
        x = self.random_unit(rng)
        return x << rng.randint(vmin, vmax)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PadicNumber:
    """An element of Q_p: p^v * u with u a unit known modulo p^prec."""

    __slots__ = ("field", "v", "u", "prec", "exact_zero", "zero_level")

    def __init__(self, field: FieldConfig, v, u, prec, exact_zero: bool = False):
        self.field = field
        self.exact_zero = exact_zero
        self.zero_level = None
        if exact_zero or u is None:
            self.v = None
            self.u = None
            self.prec = None
            if not exact_zero:
                self.zero_level = 0
            return
        if prec < 1:
            raise PrecisionError("no significant digits left")
        m = field.p ** prec
        u %= m
        if u % field.p == 0:
            raise ValueError("mantissa must be a unit")
        self.v = v
        self.u = u
        self.prec = min(prec, field.precision)
        self.u %= field.p ** self.prec

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        """True when the value is zero at the working precision."""
        return self.u is None

    def is_exact_zero(self) -> bool:
        return self.exact_zero

    def known_level(self) -> int:
        """The value is known exactly modulo p^known_level."""
        if self.exact_zero:
            return 10 ** 9
        if self.u is None:
            return self.zero_level
        return self.v + self.prec

    def valuation(self) -> int:
        if self.u is None:
            raise PrecisionError("valuation of (possibly) zero value")
        return self.v

    def residue(self) -> int:
        """Unit part modulo p (requires a nonzero value)."""
        return self.unit_part(1)

    def unit_part(self, k: int = None) -> int:
        """The mantissa modulo p^k."""
        if self.u is None:
            raise PrecisionError("unit part of zero")
        if k is None:
            k = self.prec
        if k > self.prec:
            raise PrecisionError("not enough digits")
        return self.u % self.field.p ** k

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PadicNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.u is None and other.u is None:
            if self.exact_zero and other.exact_zero:
                return self.field.zero()
            return self.field.inexact_zero(min(self.known_level(), other.known_level()))
        if self.u is None:
            return _truncate_add_zero(other, self)
        if other.u is None:
            return _truncate_add_zero(self, other)
        p = self.field.p
        m = min(self.v + self.prec, other.v + other.prec)
        v0 = min(self.v, other.v)
        if m - v0 < 1:
            raise PrecisionError("addition lost all digits")
        mod = p ** (m - v0)
        r = (self.u * p ** (self.v - v0) + other.u * p ** (other.v - v0)) % mod
        if r == 0:
            return self.field.inexact_zero(m)
        dv = _val_int(r, p)
        v = v0 + dv
        prec = m - v
        if prec < 1:
            return self.field.inexact_zero(m)
        return PadicNumber(self.field, v, r // p ** dv, prec)

    __radd__ = __add__

    def __neg__(self):
        if self.u is None:
            return self
        return PadicNumber(self.field, self.v, -self.u % self.field.p ** self.prec, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.exact_zero or other.exact_zero:
            return self.field.zero()
        if self.u is None or other.u is None:
            z, w = (self, other) if self.u is None else (other, self)
            shift = 0 if w.u is None else w.v
            return self.field.inexact_zero(z.zero_level + shift)
        prec = min(self.prec, other.prec)
        return PadicNumber(self.field, self.v + other.v, self.u * other.u, prec)

    __rmul__ = __mul__

    def inverse(self):
        if self.u is None:
            raise PrecisionError("inverting (possibly) zero value")
        m = self.field.p ** self.prec
        return PadicNumber(self.field, -self.v, pow(self.u, -1, m), self.prec)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k == 0:
            return self.field.one()
        if k < 0:
            return self.inverse() ** (-k)
        if self.u is None:
            if self.exact_zero:
                return self
            return self.field.inexact_zero(self.zero_level * k)
        m = self.field.p ** self.prec
        return PadicNumber(self.field, self.v * k, pow(self.u, k, m), self.prec)

    def __lshift__(self, k: int):
        """Multiply by p^k."""
        if self.u is None:
            return self
        return PadicNumber(self.field, self.v + k, self.u, self.prec)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self - other
        return d.u is None

    def __hash__(self):
        raise TypeError("PadicNumber is not hashable (equality is at precision)")

    # -- square structure ----------------------------------------------

    def is_square(self) -> bool:
        if self.u is None:
            raise PrecisionError("is_square of zero")
        return self.v % 2 == 0 and self.field.legendre(self.u) == 1

    def sqrt(self) -> "PadicNumber":
        """Square root via Hensel lifting (p odd)."""
        if self.u is None:
            raise PrecisionError("sqrt of zero")
        if self.v % 2 != 0:
            raise ValueError("odd valuation: not a square")
        p, prec = self.field.p, self.prec
        r = _sqrt_mod_p(self.u % p, p)
        if r is None:
            raise ValueError("unit part is not a quadratic residue")
        m = p ** prec
        # Newton iteration doubles correct digits each round
        k = 1
        while k < prec:
            k = min(2 * k, prec)
            mod = p ** k
            r = (r + self.u * pow(r, -1, mod)) * pow(2, -1, mod) % mod
        root = PadicNumber(self.field, self.v // 2, r % m, prec)
        assert root * root == self
        return root

    def square_class(self) -> tuple:
        """(valuation mod 2, legendre of the unit part) — the class in F^x/(F^x)^2."""
        if self.u is None:
            raise PrecisionError("square class of zero")
        return (self.v % 2, self.field.legendre(self.u))

    # -- conversions -----------------------------------------------------

    def lift(self, k: int = None) -> Fraction:
        """A rational representative agreeing with the value mod p^(v+k)."""
        if self.exact_zero:
            return Fraction(0)
        if self.u is None:
            return Fraction(0)
        if k is None:
            k = self.prec
        return Fraction(self.unit_part(k)) * Fraction(self.field.p) ** self.v

    def __repr__(self):
        if self.exact_zero:
            return "0"
        if self.u is None:
            return f"O(p^{self.zero_level})"
        return f"{self.v}:{self.u}"

    def serialize(self) -> str:
        """CLI wire format 'v:mantissa'."""
        if self.u is None:
            return "zero"
        return f"{self.v}:{self.u}"


def _truncate_add_zero(x: PadicNumber, z: PadicNumber) -> PadicNumber:
    """x plus a value only known to vanish mod p^zero_level."""
    if z.exact_zero:
        return x
    lev = z.zero_level
    if x.v >= lev:
        return x.field.inexact_zero(lev)
    prec = min(x.prec, lev - x.v)
    if prec < 1:
        return x.field.inexact_zero(lev)
    return PadicNumber(x.field, x.v, x.u, prec)


def _sqrt_mod_p(a: int, p: int):
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


# ---------------------------------------------------------------------------
# Hilbert symbol and the quadratic character eta
# ---------------------------------------------------------------------------

def hilbert_symbol(a: PadicNumber, b: PadicNumber) -> int:
    """The Hilbert symbol (a,b)_F for p odd.

    Returns 1 iff z^2 = a x^2 + b y^2 has a nontrivial solution over F.
    """
    if a.is_zero() or b.is_zero():
        raise PrecisionError("Hilbert symbol needs nonzero arguments")
    K = a.field
    alpha, beta = a.valuation(), b.valuation()
    ua, ub = a.residue(), b.residue()
    eps = (K.p - 1) // 2
    sign = -1 if (alpha * beta * eps) % 2 == 1 else 1
    if beta % 2 == 1:
        sign *= K.legendre(ua)
    if alpha % 2 == 1:
        sign *= K.legendre(ub)
    return sign


def hilbert_symbol_bruteforce(a: PadicNumber, b: PadicNumber, extra_depth: int = 3) -> int:
    """Decide solvability of z^2 = a x^2 + b y^2 by finite search.

    The symbol only depends on square classes, so a and b are first reduced
    to valuation 0 or 1.  A primitive solution modulo p^k whose gradient is
    a unit Hensel-lifts to F, so the search is conclusive.
    """
    if a.is_zero() or b.is_zero():
        raise PrecisionError("Hilbert symbol needs nonzero arguments")
    K = a.field
    p = K.p
    a = a << (-2 * (a.valuation() // 2))
    b = b << (-2 * (b.valuation() // 2))
    k = max(a.valuation(), b.valuation()) + extra_depth
    mod = p ** k
    aa = _int_rep(a, k)
    bb = _int_rep(b, k)
    for x in range(mod):
        ax2 = aa * x * x % mod
        for y in range(mod):
            if x % p == 0 and y % p == 0:
                continue
            rhs = (ax2 + bb * y * y) % mod
            z = _sqrt_mod_pk(rhs, p, k)
            if z is None:
                continue
            grad = (2 * aa * x % mod, 2 * bb * y % mod, (-2 * z) % mod)
            if any(g != 0 and _val_int(g, p) <= (k - 1) // 2 for g in grad):
                return 1
    return -1


def _int_rep(x: PadicNumber, k: int) -> int:
    """Integer representative of x modulo p^k (x may have negative valuation scaled out by caller)."""
    if x.valuation() < 0:
        raise ValueError("integer representative needs nonnegative valuation")
    return x.unit_part(min(x.prec, k)) * x.field.p ** x.valuation() % x.field.p ** k


def _sqrt_mod_pk(n: int, p: int, k: int):
    """A square root of n modulo p^k, or None."""
    mod = p ** k
    n %= mod
    if n == 0:
        return 0
    v = _val_int(n, p)
    if v % 2 == 1:
        return None
    u = n // p ** v
    if k - v < 1:
        return 0
    r = _sqrt_mod_p(u % p, p)
    if r is None:
        return None
    kk = 1
    while kk < k - v:
        kk = min(2 * kk, k - v)
        m2 = p ** kk
        r = (r + u * pow(r, -1, m2)) * pow(2, -1, m2) % m2
    return r * p ** (v // 2) % mod


# ---------------------------------------------------------------------------
# Quadratic extension E = F(sqrt(Delta))
# ---------------------------------------------------------------------------

DELTA_CLASSES = ("u0", "p", "u0p")


class QuadExtension:
    """E = F(sqrt(Delta)) for Delta in one of the nonsquare classes u0, p, u0*p."""

    def __init__(self, K: FieldConfig, delta_class: str = "u0"):
        if delta_class not in DELTA_CLASSES:
            raise ValueError(f"delta_class must be one of {DELTA_CLASSES}")
        self.K = K
        self.delta_class = delta_class
        u0 = K.least_nonresidue()
        self.delta = {"u0": K(u0), "p": K(K.p), "u0p": K(u0 * K.p)}[delta_class]
        self.ramified = delta_class != "u0"

    def __repr__(self):
        return f"QuadExtension(p={self.K.p}, delta_class={self.delta_class!r})"

    def __call__(self, a, b=0) -> "ExtElement":
        if isinstance(a, ExtElement):
            return a
        return ExtElement(self, self.K(a), self.K(b))

    def zero(self):
        return self(0, 0)

    def one(self):
        return self(1, 0)

    def gen(self):
        """The fixed square root delta of Delta."""
        return self(0, 1)

    def eta(self, a: PadicNumber) -> int:
        """The quadratic character of F^x attached to E: 1 iff a is a norm."""
        return hilbert_symbol(self.K(a), self.delta)

    def is_norm_bruteforce(self, a: PadicNumber, gamma: PadicNumber = None, depth: int = 2) -> bool:
        """Decide a in gamma*N(E^x) by solving a = gamma*N(b) mod p^(v(a)+depth).

        The norm subgroup is open (it contains 1 + pO for p odd), so
        congruence at depth v(a)+2 certifies membership.  b runs over
        p^s * (b1 + b2*delta) with (b1, b2) primitive; such norms have
        valuation 2s in the unramified case and 2s or 2s+1 when ramified.
        """
        K = self.K
        a = K(a)
        if a.is_zero():
            raise PrecisionError("norm test of zero")
        if gamma is not None:
            a = a / K(gamma)
        p = K.p
        s = a.valuation() // 2
        t = a << (-2 * s)
        lev = t.valuation() + depth
        mod = p ** lev
        target = _int_rep(t, lev)
        dd = _int_rep(self.delta, lev)
        for b1 in range(mod):
            b1sq = b1 * b1 % mod
            for b2 in range(mod):
                if b1 % p == 0 and b2 % p == 0:
                    continue
                if (b1sq - dd * b2 * b2 - target) % mod == 0:
                    return True
        return False


class ExtElement:
    """a + b*delta in E = F(sqrt(Delta))."""

    __slots__ = ("ext", "a", "b")

    def __init__(self, ext: QuadExtension, a: PadicNumber, b: PadicNumber):
        self.ext = ext
        self.a = a
        self.b = b

    def conj(self) -> "ExtElement":
        return ExtElement(self.ext, self.a, -self.b)

    def norm(self) -> PadicNumber:
        """N(x) = x * conj(x) = a^2 - Delta b^2, an element of F."""
        return self.a * self.a - self.ext.delta * self.b * self.b

    def trace(self) -> PadicNumber:
        return self.a + self.a

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def _coerce(self, other):
        if isinstance(other, ExtElement):
            return other
        if isinstance(other, (int, Fraction, PadicNumber)):
            return self.ext(other, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ExtElement(self.ext, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return ExtElement(self.ext, -self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self.ext.delta
        return ExtElement(self.ext,
                          self.a * other.a + d * self.b * other.b,
                          self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def inverse(self) -> "ExtElement":
        n = self.norm()
        if n.is_zero():
            raise PrecisionError("inverting (possibly) zero element of E")
        ni = n.inverse()
        return ExtElement(self.ext, self.a * ni, -self.b * ni)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.ext.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        raise TypeError("ExtElement is not hashable")

    def valuation_e(self) -> int:
        """Valuation in E normalized so v_E(pi_E) = 1.

        Unramified: v_E = v_F on F and v_E(x) = min(v(a), v(b)).
        Ramified (Delta = pi*unit): v_E(x) = v_F(N(x)).
        """
        if self.is_zero():
            raise PrecisionError("valuation of zero")
        if not self.ext.ramified:
            vals = []
            if not self.a.is_zero():
                vals.append(self.a.valuation())
            if not self.b.is_zero():
                vals.append(self.b.valuation())
            return min(vals)
        return self.norm().valuation()

    def __repr__(self):
        return f"({self.a!r}) + ({self.b!r})*d"


# ---------------------------------------------------------------------------
# Additive character psi and exact unit-circle values
# ---------------------------------------------------------------------------

class CharacterValue:
    """exp(2*pi*i*t) stored as the exact rational t modulo 1."""

    __slots__ = ("t",)

    def __init__(self, t: Fraction):
        self.t = Fraction(t) % 1

    def __mul__(self, other: "CharacterValue") -> "CharacterValue":
        return CharacterValue(self.t + other.t)

    def __pow__(self, k: int) -> "CharacterValue":
        return CharacterValue(self.t * k)

    def inverse(self) -> "CharacterValue":
        return CharacterValue(-self.t)

    def is_one(self) -> bool:
        return self.t == 0

    def __eq__(self, other):
        return isinstance(other, CharacterValue) and self.t == other.t

    def __hash__(self):
        return hash(self.t)

    def __complex__(self):
        from cmath import exp, pi

        return exp(2j * pi * float(self.t))

    def __repr__(self):
        return f"e(2*pi*i*{self.t})"


def psi_exponent(x: PadicNumber) -> Fraction:
    """The exact rational t with psi(x) = exp(2*pi*i*t): the p-adic fractional part.

    psi is trivial on O_F and nontrivial on p^-1 O_F (conductor zero).
    """
    if x.is_zero():
        if not x.exact_zero and x.zero_level < 0:
            raise PrecisionError("psi needs the value mod O_F")
        return Fraction(0)
    v = x.valuation()
    if v >= 0:
        return Fraction(0)
    frac_digits = -v
    if x.prec < frac_digits:
        raise PrecisionError("psi needs more digits than available")
    p = x.field.p
    return Fraction(x.unit_part(frac_digits), p ** frac_digits) % 1


def psi(x: PadicNumber) -> CharacterValue:
    return CharacterValue(psi_exponent(x))


# ---------------------------------------------------------------------------
# Hensel lifting of simple residue roots
# ---------------------------------------------------------------------------

def hensel_simple_root(coeffs, r0: int, field: FieldConfig = None) -> PadicNumber:
    """The unique root congruent to r0 of a polynomial with O_F coefficients.

    coeffs lists the coefficients c_0, ..., c_d of c_0 + c_1 x + ... + c_d x^d,
    as ints, Fractions or PadicNumbers of nonnegative valuation.  Requires
    f(r0) == 0 and f'(r0) != 0 modulo p; otherwise the lift is refused.
    """
    if field is None:
        field = next(c.field for c in coeffs if isinstance(c, PadicNumber))
    p, N = field.p, field.precision
    cs = []
    for c in coeffs:
        c = field(c)
        if c.is_exact_zero():
            cs.append(0)
            continue
        if not c.is_zero() and c.valuation() < 0:
            raise ValueError("coefficients must be integral")
        cs.append(_int_rep(c, N) if not c.is_zero() else 0)

    def f(x, mod):
        out = 0
        for c in reversed(cs):
            out = (out * x + c) % mod
        return out

    def fprime(x, mod):
        out = 0
        for i in range(len(cs) - 1, 0, -1):
            out = (out * x + i * cs[i]) % mod
        return out

    r0 %= p
    if f(r0, p) != 0:
        raise ValueError("r0 is not a residue root")
    if fprime(r0, p) == 0:
        raise ValueError("residue root is not simple; refusing to lift")
    r, k = r0, 1
    while k < N:
        k = min(2 * k, N)
        mod = p ** k
        r = (r - f(r, mod) * pow(fprime(r, mod), -1, mod)) % mod
    if r % p ** N == 0:
        return field.zero()
    v = _val_int(r, p) if r % p == 0 else 0
    return PadicNumber(field, v, r // p ** v, N - v)
