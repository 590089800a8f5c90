"""Exact rational polynomials and rational functions in one variable.

Scalars are :class:`fractions.Fraction`.  :class:`Poly` is a dense, immutable
coefficient tuple in ascending degree order; :class:`RatFunc` is a reduced
quotient of two such polynomials.  Nothing in this module ever rounds.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, gcd
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

from .errors import ZeroPolynomial

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to :class:`Fraction`.

    Floats are rejected on purpose: they would silently break exactness.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def rational_to_str(value: Fraction) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is one."""
    value = as_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class Poly:
    """Dense univariate polynomial with exact rational coefficients.

    ``coeffs[k]`` multiplies ``z**k``.  Trailing zeros are stripped, so the zero
    polynomial has an empty coefficient tuple and ``degree == -1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def z(cls) -> "Poly":
        return cls([0, 1])

    # -- basic properties -------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"Poly([{', '.join(rational_to_str(c) for c in self.coeffs)}])"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            cs = rational_to_str(c)
            if k == 0:
                terms.append(cs)
            elif k == 1:
                terms.append(f"({cs})*z")
            else:
                terms.append(f"({cs})*z^{k}")
        return " + ".join(reversed(terms))

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly([as_rational(other)])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_rational(other)
            return Poly(c * a for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, c):
        c = as_rational(c)
        return Poly(a / c for a in self.coeffs)

    def __divmod__(self, other: "Poly"):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(), self
        quo = [Fraction(0)] * (dq + 1)
        lc = other.coeffs[-1]
        for shift in range(dq, -1, -1):
            top = rem[shift + len(other.coeffs) - 1]
            if top == 0:
                continue
            f = top / lc
            quo[shift] = f
            for j, b in enumerate(other.coeffs):
                rem[shift + j] -= f * b
        return Poly(quo), Poly(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    # -- calculus and evaluation -----------------------------------------
    def deriv(self, order: int = 1) -> "Poly":
        cs = self.coeffs
        for _ in range(order):
            cs = tuple(k * c for k, c in enumerate(cs))[1:]
        return Poly(cs)

    def __call__(self, x):
        """Horner evaluation; exact for rationals, float/array otherwise."""
        acc = 0
        if isinstance(x, (int, Fraction)):
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return Fraction(acc)
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def monic(self) -> "Poly":
        return self / self.lc

    def primitive(self) -> "Poly":
        """Scale to coprime integer coefficients with positive leading term."""
        if not self.coeffs:
            return self
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Poly(Fraction(v, g) for v in ints)

    def compose_scale(self, c) -> "Poly":
        """Return p(c*z)."""
        c = as_rational(c)
        return Poly(a * c**k for k, a in enumerate(self.coeffs))

    def compose_monomial(self, c, k: int) -> "Poly":
        """Return p(c * t**k) as a polynomial in t (used for z = omega x^2 / 2)."""
        c = as_rational(c)
        out = [Fraction(0)] * (k * self.degree + 1) if self.coeffs else []
        for j, a in enumerate(self.coeffs):
            out[k * j] = a * c**j
        return Poly(out)

    def to_json(self) -> list[str]:
        return [rational_to_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Poly":
        return cls(as_rational(s) for s in data)


def compose_neg(p: Poly) -> Poly:
    """Return p(-z)."""
    return p.compose_scale(-1)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (zero only if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def is_proportional(p: Poly, q: Poly) -> bool:
    """True iff p = c*q for some nonzero rational c."""
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    return p.monic() == q.monic()


def binom(x: Fraction, j: int) -> Fraction:
    """Generalized binomial C(x, j) for rational x via the falling factorial."""
    x = as_rational(x)
    num = Fraction(1)
    for i in range(j):
        num *= x - i
    return num / factorial(j)


def laguerre(n: int, a) -> Poly:
    """Generalized Laguerre polynomial L_n^{(a)}(z) with exact rational a."""
    if n < 0:
        raise ValueError("Laguerre degree must be non-negative")
    a = as_rational(a)
    return Poly(
        (-1) ** k * binom(n + a, n - k) / factorial(k) for k in range(n + 1)
    )


def wronskian_k(fs: Sequence[Poly]) -> Poly:
    """Wronskian det[d^i f_j / dz^i] of k polynomials (k = 1, 2, 3 handled)."""
    k = len(fs)
    rows = [[f.deriv(i) for f in fs] for i in range(k)]
    return _det(rows)


def _det(m: list[list[Poly]]) -> Poly:
    # cofactor expansion; k <= 3 in practice
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = Poly()
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def squarefree_part(p: Poly) -> Poly:
    if p.is_zero():
        raise ZeroPolynomial("square-free part of the zero polynomial")
    if p.degree == 0:
        return p
    return p // poly_gcd(p, p.deriv())


def sturm_chain(p: Poly) -> list[Poly]:
    chain = [p, p.deriv()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        chain.append(-(chain[-2] % chain[-1]))
    return [q for q in chain if not q.is_zero()]


def _variations(signs: Iterable[int]) -> int:
    nz = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def _sign_at_zero_plus(p: Poly) -> int:
    return _sign(next(c for c in p.coeffs if c != 0))


def count_positive_roots(p: Poly) -> int:
    """Number of distinct real roots of p in the open interval (0, inf)."""
    if p.is_zero():
        raise ZeroPolynomial("root count of the zero polynomial")
    sf = squarefree_part(p)
    if sf.degree <= 0:
        return 0
    chain = sturm_chain(sf)
    at_zero = _variations(_sign_at_zero_plus(q) for q in chain)
    at_inf = _variations(_sign(q.lc) for q in chain)
    return at_zero - at_inf


class RatFunc:
    """Reduced quotient num/den of polynomials; den is monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, Poly) else Poly([as_rational(num)])
        den = Poly([1]) if den is None else (den if isinstance(den, Poly) else Poly([as_rational(den)]))
        if den.is_zero():
            raise ZeroDivisionError("RatFunc with zero denominator")
        if num.is_zero():
            num, den = Poly(), Poly([1])
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            lc = den.lc
            num, den = num / lc, den / lc
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @staticmethod
    def _coerce(other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        return RatFunc(other)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def __add__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("RatFunc division by zero")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k >= 0:
            return RatFunc(self.num**k, self.den**k)
        return RatFunc(self.den ** (-k), self.num ** (-k))

    def __eq__(self, other):
        if isinstance(other, (Poly, int, Fraction)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return ratfunc_equal(self, other)

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r})"

    def deriv(self) -> "RatFunc":
        return RatFunc(
            self.num.deriv() * self.den - self.num * self.den.deriv(), self.den * self.den
        )

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def compose_monomial(self, c, k: int) -> "RatFunc":
        return RatFunc(self.num.compose_monomial(c, k), self.den.compose_monomial(c, k))


def ratfunc_equal(r1: RatFunc, r2: RatFunc) -> bool:
    """Equality by cross-multiplication, independent of normal form."""
    return (r1.num * r2.den - r2.num * r1.den).is_zero()


def nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Exact kernel basis of a rational matrix by Gauss-Jordan elimination."""
    m = [list(map(as_rational, r)) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis
