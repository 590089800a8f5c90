"""Exceptional Laguerre polynomials as exact polynomial eigenfunctions.

For a denominator g of degree mu the polynomial y_n (n = mu + nu) solves

    z y'' + (alpha + 1 - z - 2 z g'/g) y' + [(z - alpha) g'/g + z g''/g] y = (mu - n) y.

Multiplying through by g keeps everything polynomial, so ``eop_solve`` works
on the coefficient vector of y and extracts the kernel exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AmbiguousSolution,
    IdentityViolation,
    InadmissibleDenominator,
    NoPolynomialSolution,
)
from .exactmath import (
    Poly,
    as_rational,
    compose_neg,
    is_proportional,
    laguerre,
    nullspace,
    rational_to_str,
    wronskian_k,
)
from .report import CheckResult
from .susy import (
    Case,
    ExtendedPotential,
    SeedKind,
    check_admissible,
    first_order_cubic,
    g_polynomial,
    new_cubic_g3,
)

_Z = Poly.z()


class FamilyLabel(enum.Enum):
    II_type = "I,I"
    IIII_type = "II,II"
    III_type = "I,II"
    # g = 1 (classical Laguerre) or a first-order X_m family
    OTHER = "other"


_CASE_LABEL = {Case.I: FamilyLabel.II_type, Case.II: FamilyLabel.IIII_type, Case.III: FamilyLabel.III_type}


@dataclass(frozen=True)
class EopFamily:
    alpha: Fraction
    g: Poly
    mu: int
    label: FamilyLabel = FamilyLabel.OTHER
    m1: int | None = None
    m2: int | None = None
    pot: ExtendedPotential | None = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_rational(self.alpha))
        if self.g.degree != self.mu:
            raise ValueError(f"deg g = {self.g.degree} does not match mu = {self.mu}")
        # the weight z^alpha e^-z g^-2 must be positive on (0, inf)
        if not check_admissible(self.g):
            raise InadmissibleDenominator(f"g = {self.g} vanishes on the positive half-line")

    @classmethod
    def from_case(cls, case: Case, alpha, m1: int, m2: int) -> "EopFamily":
        """Family attached to the Wronskian g of a two-seed case.

        Only the algebraic g and its admissibility are needed here, so the
        seed constraints of the potential construction are not imposed.
        """
        g = g_polynomial(case, alpha, m1, m2)
        return cls(as_rational(alpha), g, g.degree, _CASE_LABEL.get(case, FamilyLabel.OTHER), m1, m2)

    @classmethod
    def from_potential(cls, pot: ExtendedPotential) -> "EopFamily":
        s = pot.spec
        return cls(pot.alpha, pot.g, pot.mu, _CASE_LABEL.get(s.case, FamilyLabel.OTHER), s.m1, s.m2, pot)

    @classmethod
    def laguerre(cls, alpha) -> "EopFamily":
        return cls(as_rational(alpha), Poly([1]), 0)


@dataclass(frozen=True)
class EopPolynomial:
    n: int
    nu: int
    y: Poly

    def to_json(self, fam: EopFamily) -> dict:
        return {
            "family": fam.label.value,
            "alpha": rational_to_str(fam.alpha),
            "m1": fam.m1,
            "m2": fam.m2,
            "n": self.n,
            "nu": self.nu,
            "coeffs": self.y.to_json(),
        }


def ode_operator(fam: EopFamily, y: Poly, eigenvalue) -> Poly:
    """g times (EOP operator minus eigenvalue) applied to y."""
    g, a = fam.g, fam.alpha
    dg, ddg = g.deriv(), g.deriv(2)
    dy, ddy = y.deriv(), y.deriv(2)
    return (
        g * (_Z * ddy + (Poly([a + 1, -1])) * dy)
        - _Z * dg * dy * 2
        + ((_Z - a) * dg + _Z * ddg) * y
        - g * y * as_rational(eigenvalue)
    )


def ode_residual(fam: EopFamily, y: Poly, n: int) -> Poly:
    return ode_operator(fam, y, fam.mu - n)


def kernel_basis(fam: EopFamily, n: int) -> list[Poly]:
    """Exact kernel of the cleared ODE on polynomials of degree <= n."""
    cols = [ode_residual(fam, Poly.monomial(j), n) for j in range(n + 1)]
    nrows = max((c.degree for c in cols), default=0) + 1
    rows = [[c.coeff(i) for c in cols] for i in range(nrows)]
    return [Poly(v) for v in nullspace(rows, n + 1)]


def eop_solve(fam: EopFamily, n: int) -> EopPolynomial:
    """Unique monic degree-n polynomial solution, n = mu + nu."""
    if n < fam.mu:
        raise ValueError(f"n = {n} is below mu = {fam.mu}")
    basis = kernel_basis(fam, n)
    if not basis:
        raise NoPolynomialSolution(f"no polynomial solution of degree {n}")
    if len(basis) > 1:
        raise AmbiguousSolution(f"kernel of dimension {len(basis)} at degree {n}")
    y = basis[0]
    if y.degree != n:
        raise NoPolynomialSolution(f"kernel element has degree {y.degree}, expected {n}")
    y = y.monic()
    res = ode_residual(fam, y, n)
    if not res.is_zero():
        raise IdentityViolation("ODE residual is not zero", residual=res)
    return EopPolynomial(n, n - fam.mu, y)


def low_degree_kernel_dims(fam: EopFamily) -> dict[int, int]:
    """Diagnostic: kernel dimensions for n < mu (nothing is asserted about them)."""
    return {n: len(kernel_basis(fam, n)) for n in range(fam.mu)}


# -- gbar and the alternative ODE forms -------------------------------------

def gbar_identity(case: Case, alpha, m1: int, m2: int) -> tuple[Poly, Poly]:
    """Raw g and gbar (Wronskian of derivatives) for case i or ii, with

    z g'' = 2 z gbar - (alpha + z) g' + mu g   (case i)
    z g'' = 2 z gbar + (alpha + z) g' - mu g   (case ii)

    verified exactly.  Pure polynomial identity; no admissibility needed.
    """
    a = as_rational(alpha)
    if case is Case.I:
        f1, f2 = compose_neg(laguerre(m1, a - 2)), compose_neg(laguerre(m2, a - 2))
        sign = 1
    elif case is Case.II:
        f1, f2 = laguerre(m1, -a - 2), laguerre(m2, -a - 2)
        sign = -1
    else:
        raise ValueError("gbar is defined for cases i and ii only")
    g, gbar = wronskian_k([f1, f2]), wronskian_k([f1.deriv(), f2.deriv()])
    mu = m1 + m2 - 1
    res = _Z * g.deriv(2) - (_Z * gbar * 2 - (_Z + a) * g.deriv() * sign + g * (sign * mu))
    if not res.is_zero():
        raise IdentityViolation(
            f"gbar identity fails for case {case.value} ({m1},{m2}) at alpha = {rational_to_str(a)}",
            residual=res,
        )
    return g, gbar


_LABEL_CASE = {v: k for k, v in _CASE_LABEL.items()}


def gbar_build(fam: EopFamily) -> Poly:
    """gbar for an I,I or II,II family, scaled consistently with ``fam.g``."""
    if fam.label not in (FamilyLabel.II_type, FamilyLabel.IIII_type):
        raise ValueError("gbar is defined for the I,I and II,II families only")
    g, gbar = gbar_identity(_LABEL_CASE[fam.label], fam.alpha, fam.m1, fam.m2)
    if not is_proportional(g, fam.g):
        raise ValueError("family g is not the Wronskian g of its (m1, m2)")
    return gbar * (fam.g.lc / g.lc)


def alt_ode_residual(fam: EopFamily, y: EopPolynomial, gbar: Poly | None = None) -> Poly:
    g, a, mu, n = fam.g, fam.alpha, fam.mu, y.n
    gbar = gbar_build(fam) if gbar is None else gbar
    dg = g.deriv()
    p = y.y
    base = g * (_Z * p.deriv(2) + Poly([a + 1, -1]) * p.deriv()) - _Z * dg * p.deriv() * 2
    if fam.label is FamilyLabel.II_type:
        return base + (dg * (-2 * a) + _Z * gbar * 2) * p + g * p * n
    return base + _Z * (dg + gbar) * p * 2 - g * p * (2 * mu - n)


def alt_ode_check(fam: EopFamily, y: EopPolynomial, gbar: Poly | None = None) -> CheckResult:
    res = alt_ode_residual(fam, y, gbar)
    cid = f"alt-ode-{fam.label.value}-a{rational_to_str(fam.alpha)}-({fam.m1},{fam.m2})-n{y.n}"
    if not res.is_zero():
        raise IdentityViolation(cid, residual=res)
    return CheckResult(cid, True)


# -- reduction catalogue -----------------------------------------------------

def _require(cond: bool, name: str, alpha, residual: Poly | None = None):
    if not cond:
        raise IdentityViolation(f"reduction {name} fails at alpha = {rational_to_str(alpha)}", residual=residual)


def _prop(p: Poly, q: Poly) -> tuple[bool, Poly]:
    ok = is_proportional(p, q)
    return ok, (Poly() if ok else p.monic() - q.monic())


def reduction_check(identity: str, alpha, n_max: int = 6, m_max: int = 4) -> CheckResult:
    """Exact monic-proportionality checks of the low-degree reductions.

    a: g = +-1 families in cases i/ii reproduce L_n^{(alpha)}.
    b: case i/ii with (0, m+1) give L_m^{(alpha-1)}(-z) / L_m^{(-alpha-1)}(z).
    c: case i/ii with (1, 2) give L_2^{(-alpha-1)}(z) / L_2^{(alpha-1)}(-z).
    d: case iii with (m1, 0) / (0, m2) give L_{m1+1}^{(alpha-1)}(-z) / L_{m2+1}^{(-alpha-1)}(z).
    e: case iii (1, 1) and cases i/ii (1, 3) share the same cubic.
    distinct: that cubic is proportional to neither first-order cubic.
    """
    a = as_rational(alpha)
    detail: dict = {}
    if identity == "a":
        fams = [EopFamily.from_case(Case.I, a, 0, 1), EopFamily.from_case(Case.II, a, 0, 1)]
        for fam in fams:
            _require(fam.mu == 0, "a", a, fam.g)
            for n in range(n_max + 1):
                ok, res = _prop(eop_solve(fam, n).y, laguerre(n, a))
                _require(ok, "a", a, res)
        detail["g"] = [rational_to_str(f.g.coeff(0)) for f in fams]
    elif identity == "b":
        for m in range(1, m_max + 1):
            for case, want in ((Case.I, compose_neg(laguerre(m, a - 1))), (Case.II, laguerre(m, -a - 1))):
                got = g_polynomial(case, a, 0, m + 1)
                ok, res = _prop(got, want)
                _require(ok, "b", a, res)
                detail[f"{case.value}-m{m}"] = rational_to_str(got.lc / want.lc)
    elif identity == "c":
        for case, want in ((Case.I, laguerre(2, -a - 1)), (Case.II, compose_neg(laguerre(2, a - 1)))):
            got = g_polynomial(case, a, 1, 2)
            ok, res = _prop(got, want)
            _require(ok, "c", a, res)
            detail[case.value] = rational_to_str(got.lc / want.lc)
    elif identity == "d":
        for k in range(0, m_max):
            for (m1, m2), want in (((k, 0), compose_neg(laguerre(k + 1, a - 1))),
                                   ((0, k), laguerre(k + 1, -a - 1))):
                got = g_polynomial(Case.III, a, m1, m2)
                ok, res = _prop(got, want)
                _require(ok, "d", a, res)
                detail[f"({m1},{m2})"] = rational_to_str(got.lc / want.lc)
    elif identity == "e":
        g3 = g_polynomial(Case.III, a, 1, 1)
        for case in (Case.I, Case.II):
            ok, res = _prop(g_polynomial(case, a, 1, 3), g3)
            _require(ok, "e", a, res)
        ok, res = _prop(g3, new_cubic_g3(a))
        _require(ok, "e", a, res)
    elif identity == "distinct":
        g3 = g_polynomial(Case.III, a, 1, 1)
        for kind in SeedKind:
            _require(not is_proportional(g3, first_order_cubic(kind, a)), "distinct", a)
    else:
        raise ValueError(f"unknown reduction identity {identity!r}")
    return CheckResult(f"reduction-{identity}-a{rational_to_str(a)}", True, "0", detail)


REDUCTIONS = ("a", "b", "c", "d", "e", "distinct")
