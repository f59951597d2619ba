"""Exact scalars for character sums: rational combinations of unit phases.

A Cyc value is a finite formal sum of terms  q * sqrt(p)^h * e^(2*pi*i*t)
with q rational, h in {0,1} (integer powers of p are folded into q) and t a
rational phase modulo 1.  This ring is closed under the arithmetic the
orbital-integral engines need: indicator volumes (powers of p), additive
character values, quadratic Gauss sums and their half-integer magnitudes.

Zero testing is formal (all coefficients vanish after merging), which is
exactly what the engines produce in the provably-vanishing cases; numeric
comparisons elsewhere go through complex().
"""

from __future__ import annotations

from cmath import exp, pi
from fractions import Fraction


class Mu8:
    """An exact eighth root of unity, stored by its index 0..7."""

    __slots__ = ("k",)

    def __init__(self, k: int):
        self.k = k % 8

    def __mul__(self, other: "Mu8") -> "Mu8":
        return Mu8(self.k + other.k)

    def __truediv__(self, other: "Mu8") -> "Mu8":
        return Mu8(self.k - other.k)

    def inverse(self) -> "Mu8":
        return Mu8(-self.k)

    def __pow__(self, n: int) -> "Mu8":
        return Mu8(self.k * n)

    def __eq__(self, other):
        return isinstance(other, Mu8) and self.k == other.k

    def __hash__(self):
        return hash(("Mu8", self.k))

    def __complex__(self):
        return exp(2j * pi * self.k / 8)

    def phase(self) -> Fraction:
        return Fraction(self.k, 8)

    def __repr__(self):
        return f"Mu8({self.k})"

    @staticmethod
    def from_complex(z: complex, tol: float = 1e-6) -> "Mu8":
        """Snap a nonzero complex number to the nearest eighth root of unity."""
        r = abs(z)
        if r == 0:
            raise ValueError("cannot snap 0 to a root of unity")
        w = z / r
        best, bestdist = None, 2.0
        for k in range(8):
            d = abs(w - exp(2j * pi * k / 8))
            if d < bestdist:
                best, bestdist = k, d
        if bestdist > tol:
            raise ArithmeticError(f"snap distance {bestdist:.3g} exceeds tolerance {tol}")
        return Mu8(best)


class Cyc:
    """Finite formal sum of q * sqrt(p)^h * e^(2*pi*i*t) terms."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms=None):
        self.p = p
        self.terms = {}
        if terms:
            for (t, h), q in terms.items():
                self._add_term(Fraction(t) % 1, h & 1, Fraction(q))

    def _add_term(self, t: Fraction, h: int, q: Fraction):
        if q == 0:
            return
        key = (t, h)
        cur = self.terms.get(key, Fraction(0)) + q
        if cur == 0:
            self.terms.pop(key, None)
        else:
            self.terms[key] = cur

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(p: int) -> "Cyc":
        return Cyc(p)

    @staticmethod
    def rational(p: int, q) -> "Cyc":
        return Cyc(p, {(Fraction(0), 0): Fraction(q)})

    @staticmethod
    def phase(p: int, t, q=1) -> "Cyc":
        """q * e^(2*pi*i*t)."""
        return Cyc(p, {(Fraction(t) % 1, 0): Fraction(q)})

    @staticmethod
    def p_power(p: int, e) -> "Cyc":
        """p^e for a half-integer exponent e."""
        e = Fraction(e)
        if e.denominator not in (1, 2):
            raise ValueError("only half-integer powers of p are representable")
        h = 0 if e.denominator == 1 else 1
        floor = (e.numerator // e.denominator) if h == 0 else ((e.numerator - 1) // 2)
        return Cyc(p, {(Fraction(0), h): Fraction(p) ** floor})

    @staticmethod
    def from_mu8(p: int, z: Mu8, q=1) -> "Cyc":
        return Cyc.phase(p, z.phase(), q)

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = Cyc(self.p)
        out.terms = dict(self.terms)
        for (t, h), q in other.terms.items():
            out._add_term(t, h, q)
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Cyc(self.p)
        out.terms = {k: -q for k, q in self.terms.items()}
        return out

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
        out = Cyc(self.p)
        for (t1, h1), q1 in self.terms.items():
            for (t2, h2), q2 in other.terms.items():
                h = h1 + h2
                q = q1 * q2 * (self.p if h >= 2 else 1)
                out._add_term((t1 + t2) % 1, h & 1, q)
        return out

    __rmul__ = __mul__

    def _coerce(self, other):
        if isinstance(other, Cyc):
            if other.p != self.p:
                raise ValueError("mixing Cyc rings with different p")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyc.rational(self.p, other)
        if isinstance(other, Mu8):
            return Cyc.from_mu8(self.p, other)
        return NotImplemented

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return all(t == 0 and h == 0 for (t, h) in self.terms) or not self.terms

    def as_fraction(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_rational():
            raise ValueError("value is not rational")
        return self.terms[(Fraction(0), 0)]

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("Cyc is not hashable")

    def __complex__(self):
        rt = self.p ** 0.5
        out = 0j
        for (t, h), q in sorted(self.terms.items()):
            out += float(q) * (rt if h else 1.0) * exp(2j * pi * float(t))
        return out

    def __repr__(self):
        if not self.terms:
            return "Cyc(0)"
        bits = []
        for (t, h), q in sorted(self.terms.items()):
            s = f"{q}"
            if h:
                s += f"*sqrt({self.p})"
            if t:
                s += f"*e({t})"
            bits.append(s)
        return "Cyc(" + " + ".join(bits) + ")"

    def serialize(self):
        """JSON-friendly list of [phase, half_power, rational] triples."""
        return [[str(t), h, str(q)] for (t, h), q in sorted(self.terms.items())]
