"""Verification manifest: named exact and numeric checks over the whole construction.

Each manifest entry produces exactly one :class:`CheckResult`.  Failures of
exact identities surface as ``IdentityViolation`` inside the check and are
converted to failed entries here, carrying the residual as a string.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import eop, numerics, susy
from .errors import InadmissibleDenominator, XLaguerreError
from .exactmath import as_rational, rational_to_str
from .qrf import apply_schrodinger, p_from_seeds, radial_potential, ssusy_check
from .report import CheckResult
from .susy import Case, ExtensionSpec, SeedKind, SeedSpec

log = logging.getLogger(__name__)

DEFAULT_ALPHAS = (Fraction(3, 2), Fraction(5, 2), Fraction(7, 2))

# one admissible construction per case
DEFAULT_INSTANCES = (
    ExtensionSpec(Case.I, 2, 1, 3),
    ExtensionSpec(Case.II, 2, 1, 3),
    ExtensionSpec(Case.III, 1, 1, 1),
)

# small (m1, m2) families whose EOPs are solved; inadmissible ones are skipped
EOP_FAMILIES = (
    (Case.I, 0, 2), (Case.I, 0, 3), (Case.I, 1, 3),
    (Case.II, 0, 2), (Case.II, 1, 3),
    (Case.III, 1, 0), (Case.III, 0, 1), (Case.III, 1, 1),
)


@dataclass
class Context:
    alphas: tuple[Fraction, ...] = DEFAULT_ALPHAS
    potential: susy.ExtendedPotential | None = None
    nu_max: int = 10
    pair_sum_max: int = 8

    def instances(self) -> list[susy.ExtendedPotential]:
        if self.potential is not None:
            return [self.potential]
        return [susy.build_extension(s) for s in DEFAULT_INSTANCES]

    def families(self) -> list[eop.EopFamily]:
        if self.potential is not None:
            return [eop.EopFamily.from_potential(self.potential)]
        out = []
        for a in self.alphas:
            for case, m1, m2 in EOP_FAMILIES:
                try:
                    out.append(eop.EopFamily.from_case(case, a, m1, m2))
                except InadmissibleDenominator:
                    log.debug("skip inadmissible family %s (%d,%d) at alpha=%s", case, m1, m2, a)
        return out


def check_seed_eigen(ctx: Context) -> CheckResult:
    n = 0
    for l in range(0, 4):
        for m in range(0, 4):
            for kind in SeedKind:
                s = SeedSpec(kind, l, m, Fraction(1))
                if kind is SeedKind.TYPE_II and not s.alpha > m:
                    continue
                phi, e = susy.make_seed(s)
                res = apply_schrodinger(radial_potential(l, s.omega), phi) - phi * e
                if not res.is_zero():
                    return CheckResult("seed-eigen", False, str(res), {"seed": repr(s)})
                n += 1
    return CheckResult("seed-eigen", True, "0", {"seeds": n})


def check_wronskian_form(ctx: Context) -> CheckResult:
    consts = {}
    for pot in ctx.instances():
        if pot.spec.case is Case.BASE:
            continue
        consts[_label(pot.spec)] = rational_to_str(susy.seed_wronskian_matches_g(pot.spec))
    return CheckResult("wronskian-form", True, "0", {"constants": consts})


def check_ssusy(ctx: Context) -> CheckResult:
    detail = {}
    for pot in ctx.instances():
        s = pot.spec
        if s.case is Case.BASE:
            continue
        (phi1, e1), (phi2, e2) = (susy.make_seed(x) for x in s.seeds())
        p = p_from_seeds(phi1, phi2, e1, e2)
        p_rev = p_from_seeds(phi2, phi1, e2, e1)
        if not p.equals(p_rev):
            return CheckResult("ssusy", False, str(p - p_rev), {"instance": _label(s)})
        r = ssusy_check(p, e1 - e2, pot.V1, pot.V2, check_id=_label(s))
        detail[_label(s)] = r.detail["constant_offsets"]
    return CheckResult("ssusy", True, "0", detail)


def check_spectrum_consistency(ctx: Context) -> CheckResult:
    for pot in ctx.instances():
        for nu in range(6):
            shifted = susy.spectrum_energy(pot, nu, susy.Convention.SHIFTED)
            base = susy.spectrum_energy(pot, nu, susy.Convention.CONSTANT_DROPPED)
            if shifted != base + pot.shift:
                return CheckResult("spectrum-consistency", False, rational_to_str(shifted - base - pot.shift),
                                   {"instance": _label(pot.spec), "nu": nu})
    return CheckResult("spectrum-consistency", True)


def _reduction(identity: str) -> Callable[[Context], CheckResult]:
    def run(ctx: Context) -> CheckResult:
        detail = {}
        for a in ctx.alphas:
            detail[rational_to_str(a)] = eop.reduction_check(identity, a).detail
        return CheckResult(f"reduction-{identity}", True, "0", detail)
    return run


def _pairs(pair_sum_max: int):
    for m2 in range(1, pair_sum_max + 1):
        for m1 in range(0, m2):
            if m1 + m2 <= pair_sum_max:
                yield m1, m2


def check_gbar(ctx: Context) -> CheckResult:
    n = 0
    for a in ctx.alphas:
        for case in (Case.I, Case.II):
            for m1, m2 in _pairs(ctx.pair_sum_max):
                eop.gbar_identity(case, a, m1, m2)
                n += 1
    return CheckResult("gbar-identity", True, "0", {"pairs_checked": n})


def check_alt_ode(ctx: Context, nu_max: int = 3) -> CheckResult:
    n = skipped = 0
    for a in ctx.alphas:
        for case in (Case.I, Case.II):
            for m1, m2 in _pairs(ctx.pair_sum_max):
                try:
                    fam = eop.EopFamily.from_case(case, a, m1, m2)
                except InadmissibleDenominator:
                    skipped += 1
                    continue
                gbar = eop.gbar_build(fam)
                for nu in range(nu_max + 1):
                    eop.alt_ode_check(fam, eop.eop_solve(fam, fam.mu + nu), gbar)
                    n += 1
    return CheckResult("alt-ode", True, "0", {"solutions_checked": n, "inadmissible_skipped": skipped})


def check_k3(ctx: Context) -> CheckResult:
    return CheckResult("k3-wronskian", True, "0",
                       {rational_to_str(a): susy.wronskian3_identities(a).detail for a in ctx.alphas})


def check_eop_ode(ctx: Context) -> CheckResult:
    n = 0
    for fam in ctx.families():
        for nu in range(ctx.nu_max + 1):
            y = eop.eop_solve(fam, fam.mu + nu)
            assert y.y.degree == fam.mu + nu
            n += 1
    return CheckResult("eop-ode", True, "0", {"solutions": n})


def check_isospectral(ctx: Context, tol: float = 1e-6) -> CheckResult:
    worst = 0.0
    detail = {}
    for pot in ctx.instances():
        r1 = numerics.spectrum_report(pot, "V1")
        r2 = numerics.spectrum_report(pot, "V2")
        e1, e2 = np.array(r1.eigenvalues), np.array(r2.eigenvalues)
        err = max(float(np.max(np.abs(e1 - e2) / np.abs(e2))), r1.max_rel_error, r2.max_rel_error)
        detail[_label(pot.spec)] = err
        worst = max(worst, err)
    return CheckResult("isospectral", worst <= tol, worst, detail)


def check_orthogonality(ctx: Context, nu_max: int = 6, tol: float = 1e-8) -> CheckResult:
    worst = 0.0
    for fam in ctx.families():
        ys = [eop.eop_solve(fam, fam.mu + nu).y for nu in range(nu_max + 1)]
        gram = numerics.gram_matrix(fam, ys).doubled
        d = np.sqrt(np.diag(gram))
        if np.any(np.diag(gram) <= 0):
            return CheckResult("orthogonality", False, float("nan"), {"reason": "non-positive norm"})
        rel = np.abs(gram) / np.outer(d, d)
        np.fill_diagonal(rel, 0.0)
        worst = max(worst, float(rel.max()))
    return CheckResult("orthogonality", worst <= tol, worst)


MANIFEST: dict[str, Callable[[Context], CheckResult]] = {
    "seed-eigen": check_seed_eigen,
    "wronskian-form": check_wronskian_form,
    "ssusy": check_ssusy,
    "spectrum-consistency": check_spectrum_consistency,
    **{f"reduction-{i}": _reduction(i) for i in eop.REDUCTIONS},
    "gbar-identity": check_gbar,
    "alt-ode": check_alt_ode,
    "k3-wronskian": check_k3,
    "eop-ode": check_eop_ode,
    "isospectral": check_isospectral,
    "orthogonality": check_orthogonality,
}

# checks that only make sense on the built-in catalogue, not on a single potential
GLOBAL_ONLY = {"seed-eigen", "gbar-identity", "alt-ode", "k3-wronskian"} | {
    f"reduction-{i}" for i in eop.REDUCTIONS
}


def run_checks(ids: list[str], ctx: Context) -> list[CheckResult]:
    """Run the requested checks in manifest order; exceptions become failures."""
    unknown = set(ids) - set(MANIFEST)
    if unknown:
        raise KeyError(f"unknown check ids: {sorted(unknown)}")
    out = []
    for cid in MANIFEST:
        if cid not in ids:
            continue
        try:
            out.append(MANIFEST[cid](ctx))
        except XLaguerreError as exc:
            residual = getattr(exc, "residual", None)
            out.append(CheckResult(cid, False, str(residual) if residual is not None else str(exc),
                                   {"error": f"{type(exc).__name__}: {exc}"}))
    return out


def _label(spec: ExtensionSpec) -> str:
    return f"{spec.case.value}-l{spec.l}-({spec.m1},{spec.m2})-w{rational_to_str(spec.omega)}"


def parse_alpha_set(text: str) -> tuple[Fraction, ...]:
    return tuple(as_rational(t) for t in text.split(",") if t.strip())
