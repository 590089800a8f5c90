"""Seed functions, two-seed extensions of the radial oscillator, and their spectra.

Conventions: ``alpha = l + 1/2`` always refers to the *final* angular momentum
``l``; the starting potential is ``V_{l'}`` with ``l' = l - 2`` (case i),
``l + 2`` (case ii) or ``l`` (case iii).  Constant prefactors of seed functions
(powers of omega/2) are dropped; every consumer is scale invariant.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import ConstraintViolation, IdentityViolation, InadmissibleDenominator
from .exactmath import (
    Poly,
    RatFunc,
    as_rational,
    compose_neg,
    count_positive_roots,
    is_proportional,
    laguerre,
    rational_to_str,
    wronskian_k,
)
from .qrf import QRF, radial_potential, wronskian
from .report import CheckResult

HALF = Fraction(1, 2)


def alpha_of(l: int) -> Fraction:
    return l + HALF


class SeedKind(enum.Enum):
    TYPE_I = "I"
    TYPE_II = "II"


class Case(enum.Enum):
    I = "i"
    II = "ii"
    III = "iii"
    # bare V_l; not an extension, kept so descriptors can describe the reference oscillator
    BASE = "base"


@dataclass(frozen=True)
class SeedSpec:
    kind: SeedKind
    l: int
    m: int
    omega: Fraction = Fraction(1)

    @property
    def alpha(self) -> Fraction:
        return alpha_of(self.l)

    def validate(self):
        if self.l < 0 or self.m < 0:
            raise ConstraintViolation(f"seed needs l >= 0 and m >= 0, got l={self.l}, m={self.m}")
        if as_rational(self.omega) <= 0:
            raise ConstraintViolation("omega must be positive")
        if self.kind is SeedKind.TYPE_II and not self.alpha > self.m:
            raise ConstraintViolation(
                f"type II seed requires alpha > m (alpha={rational_to_str(self.alpha)}, m={self.m})"
            )


def seed_energy(s: SeedSpec) -> Fraction:
    w, a = as_rational(s.omega), s.alpha
    if s.kind is SeedKind.TYPE_I:
        return -w * (a + 2 * s.m + 1)
    return -w * (a - 2 * s.m - 1)


def make_seed(s: SeedSpec) -> tuple[QRF, Fraction]:
    """Seed function and its factorization energy.

    Type I:  x^{l+1} e^{+omega x^2/4} L_m^{(alpha)}(-z)
    Type II: x^{-l}  e^{-omega x^2/4} L_m^{(-alpha)}(z)
    """
    s.validate()
    if s.kind is SeedKind.TYPE_I:
        phi = QRF(s.l + 1, Fraction(1, 4), RatFunc(compose_neg(laguerre(s.m, s.alpha))), s.omega)
    else:
        phi = QRF(-s.l, Fraction(-1, 4), RatFunc(laguerre(s.m, -s.alpha)), s.omega)
    return phi, seed_energy(s)


@dataclass(frozen=True)
class ExtensionSpec:
    case: Case
    l: int
    m1: int = 0
    m2: int = 0
    omega: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "omega", as_rational(self.omega))
        if not isinstance(self.case, Case):
            object.__setattr__(self, "case", Case(self.case))

    @property
    def alpha(self) -> Fraction:
        return alpha_of(self.l)

    @property
    def l_start(self) -> int:
        return {Case.I: self.l - 2, Case.II: self.l + 2}.get(self.case, self.l)

    @property
    def mu(self) -> int:
        if self.case is Case.BASE:
            return 0
        if self.case is Case.III:
            return self.m1 + self.m2 + 1
        return self.m1 + self.m2 - 1

    @property
    def C(self) -> Fraction:
        return {Case.I: -2 * self.omega, Case.II: 2 * self.omega}.get(self.case, Fraction(0))

    def validate(self):
        a, m1, m2 = self.alpha, self.m1, self.m2
        if self.omega <= 0:
            raise ConstraintViolation("omega must be positive")
        if self.l < 0:
            raise ConstraintViolation("l must be non-negative")
        if self.case is Case.BASE:
            return
        if self.l_start < 0:
            raise ConstraintViolation(f"starting potential V_{self.l_start} needs l' >= 0")
        if self.case is Case.I and not 0 <= m1 < m2:
            raise ConstraintViolation(f"case i requires 0 <= m1 < m2, got ({m1}, {m2})")
        if self.case is Case.II and not (0 <= m1 < m2 and m2 < a + 2):
            raise ConstraintViolation(
                f"case ii requires 0 <= m1 < m2 < alpha + 2 = {rational_to_str(a + 2)}, got ({m1}, {m2})"
            )
        if self.case is Case.III and not (m1 >= 0 and 0 <= m2 < a):
            raise ConstraintViolation(
                f"case iii requires m1 >= 0 and 0 <= m2 < alpha = {rational_to_str(a)}, got ({m1}, {m2})"
            )

    def seeds(self) -> tuple[SeedSpec, SeedSpec]:
        lp, w = self.l_start, self.omega
        if self.case is Case.I:
            return SeedSpec(SeedKind.TYPE_I, lp, self.m1, w), SeedSpec(SeedKind.TYPE_I, lp, self.m2, w)
        if self.case is Case.II:
            return SeedSpec(SeedKind.TYPE_II, lp, self.m1, w), SeedSpec(SeedKind.TYPE_II, lp, self.m2, w)
        if self.case is Case.III:
            return SeedSpec(SeedKind.TYPE_I, lp, self.m1, w), SeedSpec(SeedKind.TYPE_II, lp, self.m2, w)
        raise ConstraintViolation("the bare oscillator has no seeds")


def g_polynomial(case: Case, alpha, m1: int, m2: int) -> Poly:
    """The Wronskian formula for g as a pure polynomial identity in z.

    No physical constraints are imposed; ``build_g_raw`` adds them.
    """
    a = as_rational(alpha)
    if case is Case.BASE:
        return Poly([1])
    if case is Case.I:
        return wronskian_k([compose_neg(laguerre(m1, a - 2)), compose_neg(laguerre(m2, a - 2))])
    if case is Case.II:
        return wronskian_k([laguerre(m1, -a - 2), laguerre(m2, -a - 2)])
    f, h = compose_neg(laguerre(m1, a)), laguerre(m2, -a)
    z = Poly.z()
    return z * wronskian_k([f, h]) - (z + a) * f * h


def build_g_raw(spec: ExtensionSpec) -> Poly:
    """g_mu exactly as the Wronskian formula produces it (no rescaling)."""
    spec.validate()
    return g_polynomial(spec.case, spec.alpha, spec.m1, spec.m2)


def build_g(spec: ExtensionSpec) -> tuple[Poly, int]:
    """Canonical (primitive, positive leading coefficient) g_mu and its degree."""
    g = build_g_raw(spec)
    if g.degree != spec.mu:
        raise IdentityViolation(f"deg g = {g.degree} but mu = {spec.mu} for {spec}", residual=g)
    return g.primitive(), spec.mu


def build_g_k3(kind: SeedKind, alpha, ms: tuple[int, int, int]) -> Poly:
    """Three-seed pure-case g: Wronskian of L^{(alpha-3)}_{m_i}(-z) or L^{(-alpha-3)}_{m_i}(z)."""
    alpha = as_rational(alpha)
    if kind is SeedKind.TYPE_I:
        fs = [compose_neg(laguerre(m, alpha - 3)) for m in ms]
    else:
        fs = [laguerre(m, -alpha - 3) for m in ms]
    return wronskian_k(fs)


def check_admissible(g: Poly) -> bool:
    return count_positive_roots(g) == 0


def rational_part_z(g: Poly, omega) -> RatFunc:
    """-omega {2 g'/g + 4 z [g''/g - (g'/g)^2]} as a rational function of z."""
    omega = as_rational(omega)
    z = RatFunc(Poly.z())
    ld = RatFunc(g.deriv(), g)
    dd = RatFunc(g.deriv(2), g)
    return (ld * 2 + z * (dd - ld * ld) * 4) * (-omega)


def z_to_x(r: RatFunc, omega) -> RatFunc:
    """Substitute z = omega x^2 / 2."""
    return r.compose_monomial(as_rational(omega) / 2, 2)


@dataclass(frozen=True)
class ExtendedPotential:
    spec: ExtensionSpec
    g: Poly
    mu: int
    C: Fraction
    E1: Fraction
    E2: Fraction
    alpha: Fraction

    @property
    def omega(self) -> Fraction:
        return self.spec.omega

    @property
    def l(self) -> int:
        return self.spec.l

    @property
    def shift(self) -> Fraction:
        """Additive constant of V2 relative to V_l + V_rat."""
        return -(self.E1 + self.E2) / 2 + self.C

    @cached_property
    def rat_z(self) -> RatFunc:
        return rational_part_z(self.g, self.omega)

    @property
    def V1(self) -> QRF:
        if self.spec.case is Case.BASE:
            return radial_potential(self.l, self.omega)
        return radial_potential(self.spec.l_start, self.omega, shift=-(self.E1 + self.E2) / 2)

    @property
    def V2(self) -> QRF:
        return radial_potential(self.l, self.omega, self.rat_z, self.shift)

    @property
    def V_ext(self) -> QRF:
        """V_l + V_rat with the additive constant dropped."""
        return radial_potential(self.l, self.omega, self.rat_z)


def build_extension(spec: ExtensionSpec) -> ExtendedPotential:
    spec.validate()
    g, mu = build_g(spec)
    if not check_admissible(g):
        raise InadmissibleDenominator(f"g_{mu} = {g} has a zero on the positive half-line")
    if spec.case is Case.BASE:
        e1 = e2 = Fraction(0)
    else:
        s1, s2 = spec.seeds()
        e1, e2 = seed_energy(s1), seed_energy(s2)
    return ExtendedPotential(spec, g, mu, spec.C, e1, e2, spec.alpha)


def rational_part_x(pot: ExtendedPotential) -> RatFunc:
    return z_to_x(pot.rat_z, pot.omega)


class Convention(enum.Enum):
    SHIFTED = "shifted"
    CONSTANT_DROPPED = "constant-dropped"


def spectrum_energy(pot: ExtendedPotential, nu: int, convention: Convention = Convention.SHIFTED) -> Fraction:
    """Closed-form bound-state energy of level nu."""
    s, w = pot.spec, pot.omega
    if convention is Convention.CONSTANT_DROPPED or s.case is Case.BASE:
        return w * (2 * nu + pot.alpha + 1)
    if s.case is Case.I:
        return w * (2 * nu + 2 * s.l + s.m1 + s.m2 - 1)
    if s.case is Case.II:
        return w * (2 * nu + 2 * s.l - s.m1 - s.m2 + 5)
    return w * (2 * nu + 2 * s.l + s.m1 - s.m2 + 2)


def seed_wronskian_prefactor(spec: ExtensionSpec) -> QRF:
    """The x- and Gaussian prefactor multiplying g in W(phi1, phi2).

    Cases i/ii: x * chi^2 with chi of the starting l'; case iii: chi^I chi^II / x.
    Numerical constants are omitted.
    """
    w = spec.omega
    lp = spec.l_start
    one = RatFunc(1)
    if spec.case is Case.I:
        return QRF(1 + 2 * (lp + 1), Fraction(1, 2), one, w)
    if spec.case is Case.II:
        return QRF(1 - 2 * lp, Fraction(-1, 2), one, w)
    return QRF(-1 + (lp + 1) - lp, 0, one, w)


def seed_wronskian_matches_g(spec: ExtensionSpec) -> Fraction:
    """Return the constant c with W(phi1, phi2) = c * prefactor * g_raw; raise otherwise."""
    s1, s2 = spec.seeds()
    (phi1, _), (phi2, _) = make_seed(s1), make_seed(s2)
    w = wronskian(phi1, phi2)
    ratio = w / (seed_wronskian_prefactor(spec) * QRF.of_z(RatFunc(build_g_raw(spec)), spec.omega))
    c = ratio.constant_value()
    if c is None or c == 0:
        raise IdentityViolation(f"seed Wronskian is not proportional to g for {spec}", residual=ratio)
    return c


# -- closed-form cubics ------------------------------------------------------

def new_cubic_g3(alpha) -> Poly:
    a = as_rational(alpha)
    return Poly([(a - 1) * a * (a + 1), 3 * (a - 1) * (a + 1), 3 * a, 1]) / 3


def first_order_cubic(kind: SeedKind, alpha) -> Poly:
    """L_3^{(alpha-1)}(-z) (type I) or L_3^{(-alpha-1)}(z) (type II)."""
    a = as_rational(alpha)
    if kind is SeedKind.TYPE_I:
        return compose_neg(laguerre(3, a - 1))
    return laguerre(3, -a - 1)


def _xpoly(coeffs_by_power: dict[int, Fraction]) -> Poly:
    n = max(coeffs_by_power)
    return Poly([coeffs_by_power.get(k, 0) for k in range(n + 1)])


class CubicForm(enum.Enum):
    """The three reference cubic potentials: case iii (1, 1) and the two first-order cubics."""

    MIXED = "mixed"
    TYPE_I = "type-i"
    TYPE_II = "type-ii"


def golden_form(form: CubicForm, l: int, omega, corrected: bool = False) -> RatFunc:
    """N1/D + N2/D^2 in x for one of the reference cubic potentials.

    The reference x^4 factor (2l - 9) in the type-II N2 disagrees with the
    symbolic result; ``corrected=True`` substitutes (2l - 7), which is what
    the map l -> -l-1, omega -> -omega applied to the type-I form yields.
    """
    w = as_rational(omega)
    L = 2 * l + 1
    if form is CubicForm.MIXED:
        n1 = _xpoly({4: 12 * w**3, 0: 12 * w * (28 - L * L)})
        n2 = _xpoly({4: -288 * w * 3 * L * w**2,
                     2: -288 * w * 4 * (2 * l - 1) * (2 * l + 3) * w,
                     0: -288 * w * (2 * l - 1) * L * (2 * l + 3)})
        u = _xpoly({2: w, 0: L})
        d = u**3 - _xpoly({2: 3 * w, 0: L}) * 4
    elif form is CubicForm.TYPE_I:
        n1 = _xpoly({4: 12 * w**3, 0: -12 * w * (2 * l - 9) * (2 * l + 5)})
        k = -144 * w * (2 * l + 5)
        n2 = _xpoly({4: k * (2 * l + 9) * w**2,
                     2: k * 2 * (2 * l + 3) * (2 * l + 5) * w,
                     0: k * L * (2 * l + 3) * (2 * l + 5)})
        d = _xpoly({2: w, 0: 2 * l + 5}) ** 3 - _xpoly({2: 3 * w, 0: 6 * l + 11}) * (2 * (2 * l + 5))
    else:
        n1 = _xpoly({4: 12 * w**3, 0: -12 * w * (2 * l - 3) * (2 * l + 11)})
        k = 144 * w * (2 * l - 3)
        lead = (2 * l - 7) if corrected else (2 * l - 9)
        n2 = _xpoly({4: k * lead * w**2,
                     2: k * 2 * (2 * l - 3) * (2 * l - 1) * w,
                     0: k * (2 * l - 3) * (2 * l - 1) * L})
        d = _xpoly({2: w, 0: 2 * l - 3}) ** 3 + _xpoly({2: 3 * w, 0: 6 * l - 5}) * (2 * (2 * l - 3))
    return RatFunc(n1, d) + RatFunc(n2, d * d)


def golden_g(form: CubicForm, l: int) -> Poly:
    a = alpha_of(l)
    if form is CubicForm.MIXED:
        return build_g(ExtensionSpec(Case.III, l, 1, 1))[0]
    if form is CubicForm.TYPE_I:
        return first_order_cubic(SeedKind.TYPE_I, a)
    return first_order_cubic(SeedKind.TYPE_II, a)


def golden_check(form: CubicForm, l: int, omega, corrected: bool = False) -> CheckResult:
    """Compare the symbolic V_rat(x) with the reference closed form, exactly."""
    omega = as_rational(omega)
    if form is CubicForm.MIXED:
        got = rational_part_x(build_extension(ExtensionSpec(Case.III, l, 1, 1, omega)))
    else:
        got = z_to_x(rational_part_z(golden_g(form, l), omega), omega)
    residual = got - golden_form(form, l, omega, corrected)
    tag = f"{form.value}-fixed" if corrected else form.value
    cid = f"golden-{tag}-l{l}-w{rational_to_str(omega)}"
    detail = {} if residual.is_zero() else {"residual_numerator_in_x": residual.num.to_json()}
    return CheckResult(cid, residual.is_zero(), "0" if residual.is_zero() else str(residual), detail)


# l values honour l > 0 for the first two forms and l > 2 for the type-II cubic
GOLDEN_GRID = {CubicForm.MIXED: (1, 2, 3), CubicForm.TYPE_I: (1, 2, 3), CubicForm.TYPE_II: (3, 4, 5)}
GOLDEN_OMEGAS = (Fraction(1), Fraction(2))


def golden_suite(include_corrected: bool = True) -> list[CheckResult]:
    out = [golden_check(f, l, w) for f, ls in GOLDEN_GRID.items() for l in ls for w in GOLDEN_OMEGAS]
    if include_corrected:
        out += [golden_check(CubicForm.TYPE_II, l, w, corrected=True)
                for l in GOLDEN_GRID[CubicForm.TYPE_II] for w in GOLDEN_OMEGAS]
    return out


# -- three-seed identities ---------------------------------------------------

def wronskian3_identities(alpha, ms: tuple[int, int, int] = (1, 2, 3)) -> CheckResult:
    """Pure three-seed Wronskians collapse to the first-order cubics with swapped type.

    W(L^{(a-3)}_{m}(-z)) = -L_3^{(-a-1)}(z) and W(L^{(-a-3)}_{m}(z)) = L_3^{(a-1)}(-z)
    for (m1, m2, m3) = (1, 2, 3).  Proportionality is required; the exact
    sign/scale is recorded in ``detail``.
    """
    alpha = as_rational(alpha)
    m1, m2, m3 = ms
    if not 0 < m1 < m2 < m3:
        raise ValueError("need 0 < m1 < m2 < m3")
    gI = build_g_k3(SeedKind.TYPE_I, alpha, ms)
    gII = build_g_k3(SeedKind.TYPE_II, alpha, ms)
    tI = first_order_cubic(SeedKind.TYPE_II, alpha)
    tII = first_order_cubic(SeedKind.TYPE_I, alpha)
    cid = f"k3-wronskian-a{rational_to_str(alpha)}"
    for got, want, label in ((gI, tI, "type I"), (gII, tII, "type II")):
        if not is_proportional(got, want):
            raise IdentityViolation(f"{cid}: {label} collapse fails", residual=got.monic() - want.monic())
    return CheckResult(cid, True, "0", {
        "scale_I": rational_to_str(gI.lc / tI.lc),
        "scale_II": rational_to_str(gII.lc / tII.lc),
    })


# -- exploratory enumeration --------------------------------------------------

def enumerate_mu(mu: int, alpha) -> list[dict]:
    """All two-seed and pure three-seed constructions giving a degree-mu g.

    Returns one record per construction with the monic g and admissibility.
    Exploratory only.
    """
    alpha = as_rational(alpha)
    l = int(alpha - HALF)
    out = []
    for case in (Case.I, Case.II):
        for m1 in range(0, mu + 2):
            m2 = mu + 1 - m1
            if m2 <= m1:
                continue
            _try_add(out, ExtensionSpec(case, l, m1, m2), f"k2-{case.value}({m1},{m2})")
    for m1 in range(0, mu):
        _try_add(out, ExtensionSpec(Case.III, l, m1, mu - 1 - m1), f"k2-iii({m1},{mu - 1 - m1})")
    for kind in SeedKind:
        for m1 in range(1, mu + 4):
            for m2 in range(m1 + 1, mu + 4):
                m3 = mu + 3 - m1 - m2
                if m3 <= m2:
                    continue
                if kind is SeedKind.TYPE_II and not alpha + 3 > m3:
                    continue
                g = build_g_k3(kind, alpha, (m1, m2, m3))
                if g.degree == mu:
                    out.append({"construction": f"k3-{kind.value}({m1},{m2},{m3})", "g": g.monic(),
                                "admissible": check_admissible(g)})
    return out


def _try_add(out, spec, label):
    try:
        spec.validate()
    except ConstraintViolation:
        return
    g = build_g_raw(spec)
    if g.degree != spec.mu:
        return
    out.append({"construction": label, "g": g.monic(), "admissible": check_admissible(g)})


def distinct_admissible(records: list[dict]) -> list[Poly]:
    seen: list[Poly] = []
    for r in records:
        if r["admissible"] and r["g"].degree > 0 and r["g"] not in seen:
            seen.append(r["g"])
    return seen


# -- descriptor file -----------------------------------------------------------

SCHEMA_VERSION = 1


def to_descriptor(pot: ExtendedPotential, convention: Convention = Convention.SHIFTED) -> dict:
    s = pot.spec
    return {
        "schema_version": SCHEMA_VERSION,
        "case": s.case.value,
        "l": s.l,
        "m1": s.m1,
        "m2": s.m2,
        "omega": rational_to_str(s.omega),
        "alpha": rational_to_str(pot.alpha),
        "mu": pot.mu,
        "C": rational_to_str(pot.C),
        "g_coeffs": pot.g.to_json(),
        "E1": rational_to_str(pot.E1),
        "E2": rational_to_str(pot.E2),
        "convention": convention.value,
    }


def from_descriptor(data: dict) -> tuple[ExtendedPotential, Convention]:
    """Rebuild the potential and check every stored derived field against it."""
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {data.get('schema_version')!r}")
    spec = ExtensionSpec(Case(data["case"]), int(data["l"]), int(data["m1"]), int(data["m2"]),
                         as_rational(data["omega"]))
    pot = build_extension(spec)
    convention = Convention(data.get("convention", Convention.SHIFTED.value))
    expected = to_descriptor(pot, convention)
    stale = [k for k in expected if k in data and data[k] != expected[k]]
    if stale:
        raise ValueError(f"descriptor fields inconsistent with the construction: {stale}")
    return pot, convention
