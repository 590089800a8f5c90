"""Quasi-rational functions of x: ``x**p * exp(q*omega*x**2) * R(z)``, z = omega x^2/2.

The class is closed under d/dx, products, quotients, and sums of terms whose
Gaussian factors agree and whose powers of x differ by an even integer.  The
rational part always lives in z; x enters only through ``xpow`` and ``gauss``.

Since ``dz/dx = 2z/x`` and ``d/dx exp(q omega x^2) = (4qz/x) exp(...)``,
differentiation is::

    (p, q, R)  ->  (p - 1, q, p R + 4 q z R + 2 z dR/dz)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateSeed, DegenerateWronskian, IdentityViolation, StructuralError
from .exactmath import Poly, RatFunc, as_rational, rational_to_str
from .report import CheckResult

_Z = Poly.z()


@dataclass(frozen=True)
class QRF:
    xpow: Fraction
    gauss: Fraction
    rat: RatFunc
    omega: Fraction

    def __post_init__(self):
        object.__setattr__(self, "xpow", as_rational(self.xpow))
        object.__setattr__(self, "gauss", as_rational(self.gauss))
        object.__setattr__(self, "omega", as_rational(self.omega))
        if not isinstance(self.rat, RatFunc):
            object.__setattr__(self, "rat", RatFunc(self.rat))
        if self.omega <= 0:
            raise ValueError("omega must be positive")

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, omega) -> "QRF":
        return cls(0, 0, RatFunc(0), omega)

    @classmethod
    def const(cls, c, omega) -> "QRF":
        return cls(0, 0, RatFunc(as_rational(c)), omega)

    @classmethod
    def of_z(cls, rat, omega) -> "QRF":
        """A pure function of z (xpow = 0, no Gaussian)."""
        return cls(0, 0, rat if isinstance(rat, RatFunc) else RatFunc(rat), omega)

    def is_zero(self) -> bool:
        return self.rat.is_zero()

    # -- algebra ----------------------------------------------------------
    def _check_omega(self, other: "QRF"):
        if self.omega != other.omega:
            raise StructuralError("QRFs with different omega cannot be combined")

    def _z_power(self, k: int) -> RatFunc:
        # x^(2k) = (2z/omega)^k
        return RatFunc(_Z * (2 / self.omega)) ** k

    def __add__(self, other: "QRF") -> "QRF":
        if not isinstance(other, QRF):
            other = QRF.const(other, self.omega)
        self._check_omega(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.gauss != other.gauss:
            raise StructuralError(
                f"cannot add QRFs with Gaussian factors {self.gauss} and {other.gauss}"
            )
        diff = other.xpow - self.xpow
        if diff.denominator != 1 or diff.numerator % 2:
            raise StructuralError(f"x-powers {self.xpow} and {other.xpow} differ by a non-even amount")
        k = diff.numerator // 2
        if k >= 0:
            rat = self.rat + other.rat * self._z_power(k)
            return QRF(self.xpow, self.gauss, rat, self.omega)
        rat = self.rat * self._z_power(-k) + other.rat
        return QRF(other.xpow, self.gauss, rat, self.omega)

    __radd__ = __add__

    def __neg__(self) -> "QRF":
        return QRF(self.xpow, self.gauss, -self.rat, self.omega)

    def __sub__(self, other) -> "QRF":
        if not isinstance(other, QRF):
            other = QRF.const(other, self.omega)
        return self + (-other)

    def __rsub__(self, other) -> "QRF":
        return (-self) + other

    def __mul__(self, other) -> "QRF":
        if not isinstance(other, QRF):
            return QRF(self.xpow, self.gauss, self.rat * as_rational(other), self.omega)
        self._check_omega(other)
        return QRF(self.xpow + other.xpow, self.gauss + other.gauss, self.rat * other.rat, self.omega)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QRF":
        if not isinstance(other, QRF):
            return QRF(self.xpow, self.gauss, self.rat / as_rational(other), self.omega)
        self._check_omega(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero QRF")
        return QRF(self.xpow - other.xpow, self.gauss - other.gauss, self.rat / other.rat, self.omega)

    def deriv(self) -> "QRF":
        r = self.rat
        z = RatFunc(_Z)
        rat = r * self.xpow + z * r * (4 * self.gauss) + z * r.deriv() * 2
        return QRF(self.xpow - 1, self.gauss, rat, self.omega)

    def equals(self, other: "QRF") -> bool:
        return (self - other).is_zero()

    def as_z_function(self) -> RatFunc:
        """Rewrite as a rational function of z (needs gauss = 0 and even xpow)."""
        if self.is_zero():
            return RatFunc(0)
        if self.gauss != 0 or self.xpow.denominator != 1 or self.xpow.numerator % 2:
            raise StructuralError("QRF is not a rational function of z")
        return self.rat * self._z_power(self.xpow.numerator // 2)

    def constant_value(self):
        """The constant this QRF equals, or None if it is not constant."""
        try:
            r = self.as_z_function()
        except StructuralError:
            return None
        return r.num.coeff(0) if r.is_constant() else None

    def __call__(self, x):
        """Floating-point evaluation at x (scalar or numpy array)."""
        import numpy as np

        x = np.asarray(x, dtype=float)
        z = 0.5 * float(self.omega) * x * x
        return x ** float(self.xpow) * np.exp(float(self.gauss) * float(self.omega) * x * x) * (
            self.rat.num(z) / self.rat.den(z)
        )

    def __str__(self):
        return (
            f"x^({rational_to_str(self.xpow)}) exp({rational_to_str(self.gauss)}*w*x^2) "
            f"* [{self.rat.num}] / [{self.rat.den}]"
        )


def radial_potential(l: int, omega, rat: RatFunc | None = None, shift=0) -> QRF:
    """omega^2 x^2/4 + l(l+1)/x^2 [+ rat(z)] [+ shift] as a QRF.

    omega^2 x^2 / 4 = z^2 / x^2, so the oscillator part is x^-2 (z^2 + l(l+1)).
    """
    omega = as_rational(omega)
    v = QRF(-2, 0, RatFunc(Poly([l * (l + 1), 0, 1])), omega)
    if rat is not None:
        v = v + QRF.of_z(rat, omega)
    if shift:
        v = v + QRF.const(shift, omega)
    return v


def apply_schrodinger(potential: QRF, f: QRF) -> QRF:
    """(-d^2/dx^2 + V) f."""
    if f.is_zero():
        return f
    return -(f.deriv().deriv()) + potential * f


def superpotential(phi: QRF) -> QRF:
    """W = -phi'/phi; the Gaussian factors cancel."""
    if phi.is_zero():
        raise DegenerateSeed("superpotential of the zero function")
    return -(phi.deriv() / phi)


def wronskian(f: QRF, g: QRF) -> QRF:
    return f * g.deriv() - f.deriv() * g


def p_from_seeds(phi1: QRF, phi2: QRF, e1, e2) -> QRF:
    """p = -W'/(2W), cross-checked against -(E1 - E2) phi1 phi2 / (2W)."""
    e1, e2 = as_rational(e1), as_rational(e2)
    w = wronskian(phi1, phi2)
    if w.is_zero():
        raise DegenerateWronskian("seed functions are linearly dependent")
    p = -(w.deriv() / (w * 2))
    p_alt = -(phi1 * phi2 * (e1 - e2)) / (w * 2)
    if not p.equals(p_alt):
        raise IdentityViolation("the two forms of p(x) disagree", residual=p - p_alt)
    return p


@dataclass(frozen=True)
class SSUSYTriple:
    p_fn: QRF
    q_fn: QRF
    c: Fraction
    V1: QRF
    V2: QRF


def ssusy_from_p(p: QRF, c) -> SSUSYTriple:
    """Rebuild q, V1 and V2 from p and the integration constant c."""
    if p.is_zero():
        raise DegenerateSeed("p must not vanish identically")
    c = as_rational(c)
    dp = p.deriv()
    ddp = dp.deriv()
    ratio = dp / (p * 2)
    tail = QRF.const(c * c / 16, p.omega) / (p * p)
    common = p * p + ddp / (p * 2) - ratio * ratio + tail
    q = -dp + p * p - ddp / (p * 2) + ratio * ratio - tail
    return SSUSYTriple(p, q, c, common - dp * 2, common + dp * 2)


def ssusy_check(p: QRF, c, v1_expected: QRF, v2_expected: QRF, check_id: str = "ssusy") -> CheckResult:
    """Check V2 - V1 = 4p' and compare both potentials with independent builds.

    The potentials are compared modulo additive constants; the constants
    found are reported in ``detail``.  Raises :class:`IdentityViolation` when
    a residual is not a constant.
    """
    t = ssusy_from_p(p, c)
    gap = t.V2 - t.V1 - p.deriv() * 4
    if not gap.is_zero():
        raise IdentityViolation(f"{check_id}: V2 - V1 != 4p'", residual=gap)
    offsets = {}
    for name, got, want in (("V1", t.V1, v1_expected), ("V2", t.V2, v2_expected)):
        diff = got - want
        const = diff.constant_value()
        if const is None:
            raise IdentityViolation(f"{check_id}: {name} differs by a non-constant", residual=diff)
        offsets[name] = rational_to_str(const)
    return CheckResult(check_id, True, "0", {"constant_offsets": offsets})
