"""Floating-point checks: finite-difference spectra, wavefunctions, quadrature.

Everything here is evaluated from the exact objects of the other modules;
rationals are converted to floats only at this boundary.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .eop import EopFamily, EopPolynomial
from .errors import ConvergenceFailure, PoleEncountered, QuadratureNonConvergence
from .exactmath import Poly, as_rational
from .susy import Case, Convention, ExtendedPotential, spectrum_energy

log = logging.getLogger(__name__)

POLE_TOL = 1e-12


@dataclass(frozen=True)
class RadialPotential:
    """omega^2 x^2/4 + l(l+1)/x^2 + V_rat[g](z) + shift, ready for float sampling.

    ``g`` is None for the bare oscillator.
    """

    l: int
    omega: Fraction
    g: Poly | None = None
    shift: Fraction = Fraction(0)

    def __call__(self, x):
        return sample_potential(self, x)


def potential_terms(pot: ExtendedPotential, which: str = "V2") -> RadialPotential:
    """which: "V1", "V2" (with the seed-energy constants), "ext" (constant dropped) or "base" (V_l)."""
    w = pot.omega
    if which == "V1":
        if pot.spec.case is Case.BASE:
            return RadialPotential(pot.l, w)
        return RadialPotential(pot.spec.l_start, w, None, -(pot.E1 + pot.E2) / 2)
    if which == "V2":
        return RadialPotential(pot.l, w, pot.g, pot.shift)
    if which == "ext":
        return RadialPotential(pot.l, w, pot.g)
    if which == "base":
        return RadialPotential(pot.l, w)
    raise ValueError(f"unknown potential selector {which!r}")


def _rat_part(g: Poly, omega: float, z: np.ndarray) -> np.ndarray:
    gz = g(z)
    if np.any(np.abs(gz) < POLE_TOL):
        raise PoleEncountered("denominator g vanishes on the grid")
    d1 = g.deriv()(z) / gz
    d2 = g.deriv(2)(z) / gz
    return -omega * (2 * d1 + 4 * z * (d2 - d1 * d1))


def sample_potential(v: RadialPotential, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("grid points must lie in (0, x_max]")
    w = float(v.omega)
    out = 0.25 * w * w * x * x + v.l * (v.l + 1) / (x * x) + float(v.shift)
    if v.g is not None and v.g.degree > 0:
        out = out + _rat_part(v.g, w, 0.5 * w * x * x)
    return out


@dataclass
class SolverConfig:
    x_max: float = 12.0
    n_points: int = 4000
    extrapolate: bool = True
    n_eigen: int = 5

    def __post_init__(self):
        if not self.x_max > 0:
            raise ValueError("x_max must be positive")
        if self.n_points < 100:
            raise ValueError("n_points must be at least 100")
        if self.n_eigen < 1:
            raise ValueError("n_eigen must be at least 1")

    @classmethod
    def for_omega(cls, omega, **kw) -> "SolverConfig":
        # x_max is 12 in units of omega^{-1/2}
        kw.setdefault("x_max", 12.0 / math.sqrt(float(omega)))
        return cls(**kw)


@dataclass
class SpectrumReport:
    eigenvalues: list[float]
    formula_values: list[Fraction] = field(default_factory=list)
    max_rel_error: float = float("nan")
    coarse: list[float] = field(default_factory=list)

    def compare(self, formula: list[Fraction]) -> "SpectrumReport":
        self.formula_values = list(formula)
        ref = np.array([float(f) for f in formula])
        self.max_rel_error = float(np.max(np.abs(np.array(self.eigenvalues) - ref) / np.abs(ref)))
        return self


def fd_levels(potential, x_max: float, n_points: int, n_eigen: int, vectors: bool = False):
    """Lowest levels of -d^2/dx^2 + V on (0, x_max) with Dirichlet ends.

    Interior nodes x_i = i h, i = 1..n_points, h = x_max / (n_points + 1).
    """
    h = x_max / (n_points + 1)
    x = h * np.arange(1, n_points + 1)
    diag = 2.0 / h**2 + potential(x)
    off = np.full(n_points - 1, -1.0 / h**2)
    if vectors:
        vals, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(0, n_eigen - 1))
        return x, vals, vecs
    vals = eigh_tridiagonal(diag, off, eigvals_only=True, select="i", select_range=(0, n_eigen - 1))
    return vals


def eig_solve(potential, cfg: SolverConfig | None = None) -> SpectrumReport:
    """Second-order finite differences, optionally Richardson-extrapolated.

    The fine grid uses 2 n + 1 interior points so that its spacing is exactly
    h/2; with an h^2 error model the combination (4 E_fine - E_coarse)/3
    removes the leading term.
    """
    cfg = cfg or SolverConfig()
    coarse = fd_levels(potential, cfg.x_max, cfg.n_points, cfg.n_eigen)
    if not cfg.extrapolate:
        return SpectrumReport(coarse.tolist())
    fine = fd_levels(potential, cfg.x_max, 2 * cfg.n_points + 1, cfg.n_eigen)
    gap = np.abs(fine - coarse)
    if np.any(gap > 1e-3):
        raise ConvergenceFailure(f"two-grid estimates differ by up to {gap.max():.3g}")
    return SpectrumReport(((4 * fine - coarse) / 3).tolist(), coarse=coarse.tolist())


def spectrum_report(pot: ExtendedPotential, which: str = "V2",
                    cfg: SolverConfig | None = None) -> SpectrumReport:
    """Numeric levels of one of the potentials of ``pot`` against the closed form."""
    cfg = cfg or SolverConfig.for_omega(pot.omega)
    conv = Convention.CONSTANT_DROPPED if which in ("ext", "base") else Convention.SHIFTED
    if which == "base":
        formula = [pot.omega * (2 * nu + pot.alpha + 1) for nu in range(cfg.n_eigen)]
    else:
        formula = [spectrum_energy(pot, nu, conv) for nu in range(cfg.n_eigen)]
    return eig_solve(potential_terms(pot, which), cfg).compare(formula)


def count_sign_changes(values: np.ndarray, rel_floor: float = 1e-8) -> int:
    """Sign changes of a sampled function, ignoring values near zero."""
    v = np.asarray(values, dtype=float)
    v = v[np.abs(v) > rel_floor * np.max(np.abs(v))]
    return int(np.count_nonzero(np.diff(np.sign(v))))


# -- wavefunctions -------------------------------------------------------------

def wavefunction(fam: EopFamily, y: EopPolynomial, x, omega=None):
    """eta_l(z) y_n(z) / g(z), unnormalized; eta_l = z^{(2 alpha + 1)/4} e^{-z/2}."""
    if omega is None:
        omega = fam.pot.omega if fam.pot is not None else 1
    x = np.asarray(x, dtype=float)
    z = 0.5 * float(as_rational(omega)) * x * x
    gz = fam.g(z)
    if np.any(np.abs(gz) < POLE_TOL):
        raise PoleEncountered("denominator g vanishes at a sample point")
    a = float(fam.alpha)
    return z ** ((2 * a + 1) / 4) * np.exp(-z / 2) * y.y(z) / gz


# -- quadrature --------------------------------------------------------------

def gauss_laguerre(n: int, alpha) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for the weight z^alpha e^{-z} on (0, inf) (Golub-Welsch)."""
    a = float(alpha)
    k = np.arange(n)
    diag = 2 * k + a + 1
    off = np.sqrt(k[1:] * (k[1:] + a))
    nodes, vecs = eigh_tridiagonal(diag, off)
    weights = math.gamma(a + 1) * vecs[0, :] ** 2
    return nodes, weights


def _weighted_gram(fam: EopFamily, ys: list[Poly], n_nodes: int) -> np.ndarray:
    z, w = gauss_laguerre(n_nodes, fam.alpha)
    gz = fam.g(z)
    vals = np.array([p(z) for p in ys])
    return (vals * (w / gz**2)) @ vals.T


@dataclass
class QuadratureResult:
    value: np.ndarray
    doubled: np.ndarray
    nodes: int

    @property
    def max_rel_change(self) -> float:
        d = np.sqrt(np.abs(np.diag(self.doubled)))
        return float(np.max(np.abs(self.doubled - self.value) / np.outer(d, d)))


def gram_matrix(fam: EopFamily, ys: list[Poly], quad_nodes: int = 64,
                rtol: float = 1e-10, max_nodes: int = 4096) -> QuadratureResult:
    """Gram matrix of ys under z^alpha e^{-z} g^{-2}, doubling nodes until stable.

    Convergence: every entry changes by less than ``rtol`` times the geometric
    mean of the corresponding norms when the node count is doubled.
    """
    n = quad_nodes
    cur = _weighted_gram(fam, ys, n)
    while n <= max_nodes:
        nxt = _weighted_gram(fam, ys, 2 * n)
        res = QuadratureResult(cur, nxt, n)
        if res.max_rel_change < rtol:
            log.debug("quadrature converged at %d/%d nodes", n, 2 * n)
            return res
        n, cur = 2 * n, nxt
    raise QuadratureNonConvergence(f"no convergence up to {max_nodes} nodes")


def orthogonality_integral(fam: EopFamily, y1: EopPolynomial, y2: EopPolynomial,
                           quad_nodes: int = 64) -> tuple[float, float]:
    """The integral of y1 y2 z^alpha e^{-z} / g^2 over (0, inf), and its doubled-node value."""
    res = gram_matrix(fam, [y1.y, y2.y], quad_nodes)
    return float(res.value[0, 1]), float(res.doubled[0, 1])


def laguerre_norm_ratio(n: int, alpha) -> Fraction:
    """Gamma(n + alpha + 1) / (n! Gamma(alpha + 1)) = (alpha + 1)_n / n!, exactly."""
    a = as_rational(alpha)
    out = Fraction(1)
    for k in range(1, n + 1):
        out *= (a + k) / k
    return out
