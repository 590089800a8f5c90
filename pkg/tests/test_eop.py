from fractions import Fraction as F

import pytest

from xlaguerre.eop import (
    REDUCTIONS,
    EopFamily,
    FamilyLabel,
    alt_ode_check,
    alt_ode_residual,
    eop_solve,
    gbar_build,
    gbar_identity,
    kernel_basis,
    low_degree_kernel_dims,
    ode_residual,
    reduction_check,
)
from xlaguerre.errors import IdentityViolation, InadmissibleDenominator
from xlaguerre.exactmath import Poly, compose_neg, is_proportional, laguerre
from xlaguerre.susy import Case, ExtensionSpec, build_extension, new_cubic_g3

Z = Poly.z()
ALPHAS = [F(3, 2), F(5, 2), F(7, 2)]


def first_order_xl(m, nu, a):
    """Closed-form type-I exceptional Laguerre polynomial for g = L_m^{(a-1)}(-z)."""
    tail = laguerre(nu - 1, a) if nu > 0 else Poly()
    return compose_neg(laguerre(m, a)) * laguerre(nu, a - 1) + compose_neg(laguerre(m, a - 1)) * tail


@pytest.mark.parametrize("a", ALPHAS + [F(1, 2)])
def test_trivial_g_gives_laguerre(a):
    fam = EopFamily.laguerre(a)
    for n in range(8):
        y = eop_solve(fam, n)
        assert y.nu == n
        assert is_proportional(y.y, laguerre(n, a))
        assert y.y.lc == 1


def test_cubic_family_ground_polynomial():
    fam = EopFamily.from_potential(build_extension(ExtensionSpec(Case.III, 1, 1, 1)))
    assert fam.label is FamilyLabel.III_type
    y = eop_solve(fam, 3)
    assert y.y.degree == 3 and y.y.lc == 1
    assert ode_residual(fam, y.y, 3).is_zero()


@pytest.mark.parametrize("a", ALPHAS)
@pytest.mark.parametrize("m", [1, 2, 3])
def test_case_one_edge_family_matches_first_order_xl(a, m):
    fam = EopFamily.from_case(Case.I, a, 0, m + 1)
    assert fam.mu == m
    for nu in range(7):
        assert is_proportional(eop_solve(fam, m + nu).y, first_order_xl(m, nu, a))


@pytest.mark.parametrize("a", ALPHAS)
@pytest.mark.parametrize("case,m1,m2", [
    (Case.I, 1, 3), (Case.II, 1, 3), (Case.III, 1, 1), (Case.III, 2, 1), (Case.I, 0, 3),
])
def test_unique_monic_solution(a, case, m1, m2):
    try:
        fam = EopFamily.from_case(case, a, m1, m2)
    except InadmissibleDenominator:
        pytest.skip("inadmissible at this alpha")
    for nu in range(11):
        n = fam.mu + nu
        assert len(kernel_basis(fam, n)) == 1
        y = eop_solve(fam, n)
        assert (y.n, y.nu, y.y.degree, y.y.lc) == (n, nu, n, 1)
        assert ode_residual(fam, y.y, n).is_zero()


def test_solution_below_mu_rejected_and_diagnostic():
    fam = EopFamily.from_case(Case.III, F(3, 2), 1, 1)
    with pytest.raises(ValueError):
        eop_solve(fam, 2)
    assert set(low_degree_kernel_dims(fam)) == {0, 1, 2}


def test_inadmissible_family_rejected():
    with pytest.raises(InadmissibleDenominator):
        EopFamily.from_case(Case.II, F(3, 2), 0, 4)


def test_json_export():
    fam = EopFamily.from_potential(build_extension(ExtensionSpec(Case.III, 1, 1, 1)))
    d = eop_solve(fam, 4).to_json(fam)
    assert d["family"] == "I,II" and d["n"] == 4 and d["nu"] == 1
    assert d["coeffs"][-1] == "1" and len(d["coeffs"]) == 5


# -- gbar and alternative ODE ---------------------------------------------------

@pytest.mark.parametrize("case,m1,m2,a", [(Case.I, 1, 3, F(5, 2)), (Case.II, 1, 2, F(7, 2))])
def test_gbar_examples(case, m1, m2, a):
    g, gbar = gbar_identity(case, a, m1, m2)
    assert g.degree == m1 + m2 - 1


def test_gbar_trivial_pair():
    g, gbar = gbar_identity(Case.I, F(5, 2), 0, 1)
    assert gbar.is_zero() and g.degree == 0


def test_gbar_rejects_case_three():
    with pytest.raises(ValueError):
        gbar_identity(Case.III, F(3, 2), 1, 1)


@pytest.mark.parametrize("a", [F(3, 2), F(5, 2), F(7, 2), F(9, 2)])
def test_gbar_identity_all_pairs(a):
    for case in (Case.I, Case.II):
        for m2 in range(1, 9):
            for m1 in range(0, min(m2, 9 - m2)):
                gbar_identity(case, a, m1, m2)


@pytest.mark.parametrize("case,m1,m2,a", [(Case.I, 1, 3, F(5, 2)), (Case.II, 0, 4, F(5, 2))])
def test_alt_ode_examples(case, m1, m2, a):
    fam = EopFamily.from_case(case, a, m1, m2)
    gbar = gbar_build(fam)
    for nu in range(4):
        assert alt_ode_check(fam, eop_solve(fam, fam.mu + nu), gbar).passed


def test_alt_ode_detects_wrong_polynomial():
    fam = EopFamily.from_case(Case.I, F(5, 2), 1, 3)
    y = eop_solve(fam, 4)
    wrong = type(y)(y.n, y.nu, y.y + Poly([1]))
    assert not alt_ode_residual(fam, wrong).is_zero()
    with pytest.raises(IdentityViolation):
        alt_ode_check(fam, wrong)


def test_alt_ode_on_trivial_g_is_laguerre():
    fam = EopFamily.from_case(Case.I, F(5, 2), 0, 1)
    assert fam.g.degree == 0
    y = eop_solve(fam, 3)
    assert alt_ode_residual(fam, y).is_zero()


# -- reductions -------------------------------------------------------------------

@pytest.mark.parametrize("identity", REDUCTIONS)
@pytest.mark.parametrize("a", [F(3, 2), F(5, 2), F(7, 2), F(9, 2)])
def test_reductions(identity, a):
    assert reduction_check(identity, a).passed


def test_reduction_scales_are_exact():
    a = F(5, 2)
    b = reduction_check("b", a).detail
    assert all(v == "1" for k, v in b.items() if k.startswith("i-"))
    assert all(v == "-1" for k, v in b.items() if k.startswith("ii-"))
    assert reduction_check("c", a).detail == {"i": "1", "ii": "-1"}
    d = reduction_check("d", a).detail
    assert d["(2,0)"] == "-3" and d["(0,2)"] == "3"


def test_new_cubic_distinct_from_first_order_cubics():
    for a in [F(3, 2), F(5, 2), F(7, 2), F(9, 2)]:
        g3 = new_cubic_g3(a)
        assert not is_proportional(g3, compose_neg(laguerre(3, a - 1)))
        assert not is_proportional(g3, laguerre(3, -a - 1))


def test_unknown_reduction():
    with pytest.raises(ValueError):
        reduction_check("z", F(3, 2))
