from fractions import Fraction as F

import pytest

from xlaguerre.errors import DegenerateSeed, DegenerateWronskian, IdentityViolation, StructuralError
from xlaguerre.exactmath import Poly, RatFunc
from xlaguerre.qrf import (
    QRF,
    apply_schrodinger,
    p_from_seeds,
    radial_potential,
    ssusy_check,
    ssusy_from_p,
    superpotential,
)
from xlaguerre.susy import Case, ExtensionSpec, build_extension, make_seed

Z = Poly.z()
ONE = F(1)


def ground_state(l, omega=ONE):
    return QRF(l + 1, F(-1, 4), RatFunc(1), omega)


def test_derivative_of_ground_state():
    l = 2
    d = ground_state(l).deriv()
    assert d.equals(QRF(l, F(-1, 4), RatFunc(Poly([l + 1, -1])), ONE))


def test_derivative_of_z_and_constant():
    f = QRF.of_z(RatFunc(Z), ONE)
    assert f.deriv().equals(QRF(-1, 0, RatFunc(Z * 2), ONE))
    assert QRF.const(5, ONE).deriv().is_zero()


def test_derivative_matches_finite_difference():
    f = QRF(3, F(1, 4), RatFunc(Z + 2, Z**2 + 1), F(3, 2))
    x, h = 0.9, 1e-5
    fd = (f(x + h) - f(x - h)) / (2 * h)
    assert f.deriv()(x) == pytest.approx(fd, rel=1e-8)


def test_sum_rules():
    a = QRF(2, 0, RatFunc(1), ONE)     # x^2 = 2z/omega
    b = QRF.of_z(RatFunc(Z), ONE)       # z
    assert (a + b).equals(QRF.of_z(RatFunc(Z * 3), ONE))
    with pytest.raises(StructuralError):
        a + QRF(1, 0, RatFunc(1), ONE)
    with pytest.raises(StructuralError):
        a + QRF(2, F(1, 4), RatFunc(1), ONE)


def test_superpotential_examples():
    l = 1
    w = superpotential(ground_state(l))
    assert w.equals(QRF(-1, 0, RatFunc(Poly([-(l + 1), 1])), ONE))
    w1 = superpotential(QRF(l + 1, F(1, 4), RatFunc(1), ONE))
    assert w1.equals(QRF(-1, 0, RatFunc(Poly([-(l + 1), -1])), ONE))


def test_superpotential_scale_invariant_and_degenerate():
    phi = QRF(2, F(1, 4), RatFunc(Z + 3), ONE)
    assert superpotential(phi * 7).equals(superpotential(phi))
    with pytest.raises(DegenerateSeed):
        superpotential(QRF.zero(ONE))


@pytest.mark.parametrize("l", [0, 1, 3])
@pytest.mark.parametrize("omega", [ONE, F(2)])
def test_ground_state_energy(l, omega):
    psi = ground_state(l, omega)
    out = apply_schrodinger(radial_potential(l, omega), psi)
    assert out.equals(psi * (omega * (l + F(3, 2))))


def test_type_one_seed_eigenrelation_m0():
    l = 2
    phi = QRF(l + 1, F(1, 4), RatFunc(1), ONE)
    alpha = l + F(1, 2)
    assert apply_schrodinger(radial_potential(l, ONE), phi).equals(phi * (-(alpha + 1)))


def test_schrodinger_of_zero():
    assert apply_schrodinger(radial_potential(1, ONE), QRF.zero(ONE)).is_zero()


def _seeds(spec):
    return [make_seed(s) for s in spec.seeds()]


def test_p_two_forms_agree_cubic_case():
    (phi1, e1), (phi2, e2) = _seeds(ExtensionSpec(Case.III, 1, 1, 1))
    p = p_from_seeds(phi1, phi2, e1, e2)
    assert not p.is_zero()
    assert p.equals(p_from_seeds(phi2, phi1, e2, e1))


def test_p_degenerate_wronskian():
    (phi, e), _ = _seeds(ExtensionSpec(Case.III, 1, 1, 1))
    with pytest.raises(DegenerateWronskian):
        p_from_seeds(phi, phi, e, e)


@pytest.mark.parametrize("spec", [
    ExtensionSpec(Case.I, 2, 0, 1),
    ExtensionSpec(Case.III, 1, 1, 1),
    ExtensionSpec(Case.II, 2, 1, 3),
])
def test_ssusy_reconstruction(spec):
    pot = build_extension(spec)
    (phi1, e1), (phi2, e2) = _seeds(spec)
    p = p_from_seeds(phi1, phi2, e1, e2)
    t = ssusy_from_p(p, e1 - e2)
    assert (t.V2 - t.V1 - p.deriv() * 4).is_zero()
    r = ssusy_check(p, e1 - e2, pot.V1, pot.V2)
    assert r.passed
    assert set(r.detail["constant_offsets"]) == {"V1", "V2"}


def test_ssusy_check_rejects_wrong_potential():
    spec = ExtensionSpec(Case.III, 1, 1, 1)
    pot = build_extension(spec)
    (phi1, e1), (phi2, e2) = _seeds(spec)
    p = p_from_seeds(phi1, phi2, e1, e2)
    with pytest.raises(IdentityViolation) as exc:
        ssusy_check(p, e1 - e2, pot.V1, radial_potential(1, ONE))
    assert exc.value.residual is not None
