"""Numerical residuals for the integral identities and inequality chain.

Each check returns a ResidualReport.  Identities pass when |value| stays
within tolerance plus quadrature refinement error; inequalities pass when
the gap is above minus that slack.  All residuals are volume-normalized so
tolerances compare across surfaces of different size.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import HypothesisError
from .quadrature import SphericalRule, build_rule, integrate_batch
from .spaceform import c_delta
from .surface import RadialSurface, SurfacePointData
from .symfun import curvature_profile, mean_curvatures, umbilicity_defect_sq

IDENTITY = "identity"
INEQUALITY = "inequality"


@dataclass(frozen=True)
class ResidualReport:
    name: str
    value: float
    tolerance: float
    refinement_error: float
    kind: str = IDENTITY

    @property
    def passed(self) -> bool:
        slack = self.tolerance + self.refinement_error
        if self.kind == IDENTITY:
            return abs(self.value) <= slack
        return self.value >= -slack


def write_residual_table(reports, path) -> None:
    """CSV with columns name, value, tolerance, refinement_error, pass."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["name", "value", "tolerance", "refinement_error", "pass"])
        for rep in reports:
            writer.writerow([rep.name, repr(rep.value), repr(rep.tolerance),
                             repr(rep.refinement_error), rep.passed])


# ---------------------------------------------------------------------------


def _normalized_integral(surface, f, rule):
    """(integral of f)/V on the base rule, with a doubled-rule refinement error."""
    fine_rule = build_rule(rule.n, 2 * rule.order)
    out = []
    for rl in (rule, fine_rule):
        batch = surface.fields(rl)
        vol = integrate_batch(batch, np.ones(len(batch.rho)), rl)
        out.append(integrate_batch(batch, f(batch), rl) / vol)
    return out[0], abs(out[0] - out[1])


def hsiung_minkowski_residual(surface: RadialSurface, k: int, rule: SphericalRule,
                              tolerance: float = 1e-8) -> ResidualReport:
    """Normalized residual of int (H_{k+1} <Z,nu> + c_d(r) H_k) dv = 0."""
    if not 0 <= k <= surface.n - 1:
        raise ValueError(f"k must lie in [0, n-1], got {k}")
    delta = surface.model.delta

    def integrand(batch):
        H = batch.mean_curvature_orders()
        return H[:, k + 1] * batch.support + c_delta(batch.r, delta) * H[:, k]

    value, ref = _normalized_integral(surface, integrand, rule)
    return ResidualReport(name=f"hsiung_minkowski_k{k}", value=value,
                          tolerance=tolerance, refinement_error=ref, kind=IDENTITY)


def gauss_algebraic_check(point: SurfacePointData, tolerance: float = 1e-12) -> ResidualReport:
    """Relative residual of tau^2 = n(n-1)(H^2 - H_2) at one point.

    Relative to the shape-operator scale |S|^2 = sum kappa_i^2 (the term
    the trace identity subtracts); near umbilic points both sides cancel
    against quantities of that size, so it is the meaningful denominator.
    """
    prof = curvature_profile(point.kappa)
    n = prof.n
    rhs = float(n * (n - 1) * (prof.H[1] ** 2 - prof.H[2]))
    s_norm_sq = float(np.sum(prof.kappa**2))
    scale = max(prof.tau_sq, abs(rhs), s_norm_sq, 1e-300)
    value = abs(prof.tau_sq - rhs) / scale
    return ResidualReport(name="gauss_algebraic", value=value, tolerance=tolerance,
                          refinement_error=0.0, kind=IDENTITY)


def scalar_curvature(H2: float, n: int, delta: float) -> float:
    """Scal = n(n-1)(H_2 + delta), the trace consequence of the Gauss equation."""
    return n * (n - 1) * (H2 + delta)


def cauchy_schwarz_chain_check(surface: RadialSurface, rule: SphericalRule,
                               tolerance: float = 1e-8) -> ResidualReport:
    """Gap |B|_inf^(2n) |tau|_2^2 - |tau|_{n+1}^{2(n+1)} >= 0 (normalized norms)."""
    n = surface.n
    fine_rule = build_rule(rule.n, 2 * rule.order)
    gaps = []
    for rl in (rule, fine_rule):
        batch = surface.fields(rl)
        tau = np.sqrt(batch.tau_norm_sq())
        B_sup = float(np.max(np.abs(batch.kappa)))
        vol = integrate_batch(batch, np.ones(len(batch.rho)), rl)
        tau2_sq = integrate_batch(batch, tau**2, rl) / vol
        taun = (integrate_batch(batch, tau ** (n + 1), rl) / vol) ** (1.0 / (n + 1))
        gaps.append(B_sup ** (2 * n) * tau2_sq - taun ** (2 * (n + 1)))
    return ResidualReport(name="cauchy_schwarz_chain", value=gaps[0],
                          tolerance=tolerance, refinement_error=abs(gaps[0] - gaps[1]),
                          kind=INEQUALITY)


def lemma1_gap(point: SurfacePointData, r: int, K1: float,
               tolerance: float = 1e-10) -> ResidualReport:
    """Pointwise gap K1 (H H_r - H_{r+1}) - tau^2 >= 0."""
    prof = curvature_profile(point.kappa)
    if prof.H[r + 1] <= 0.0:
        raise HypothesisError(f"lemma gap needs H_{r+1} > 0, got {prof.H[r + 1]:.6g}")
    value = float(K1 * (prof.H[1] * prof.H[r] - prof.H[r + 1]) - prof.tau_sq)
    return ResidualReport(name=f"lemma_tau_bound_r{r}", value=value,
                          tolerance=tolerance, refinement_error=0.0, kind=INEQUALITY)


def lemma1_gap_batch(surface: RadialSurface, rule: SphericalRule, r: int, K1: float,
                     tolerance: float = 1e-10) -> ResidualReport:
    """Worst-node version of lemma1_gap over a whole quadrature batch."""
    batch = surface.fields(rule)
    H = mean_curvatures(batch.kappa)
    if np.any(H[:, r + 1] <= 0.0):
        bad = int(np.argmin(H[:, r + 1]))
        raise HypothesisError(
            f"lemma gap needs H_{r+1} > 0 everywhere; node {bad} has {H[bad, r + 1]:.6g}"
        )
    tau_sq = umbilicity_defect_sq(batch.kappa)
    gaps = K1 * (H[:, 1] * H[:, r] - H[:, r + 1]) - tau_sq
    return ResidualReport(name=f"lemma_tau_bound_r{r}", value=float(np.min(gaps)),
                          tolerance=tolerance, refinement_error=0.0, kind=INEQUALITY)


def tau_l2_epsilon_bound(surface: RadialSurface, r: int, h: float, K2: float,
                         rule: SphericalRule, tolerance: float = 1e-8) -> ResidualReport:
    """Gap K2 |eps|_1 - |tau|_2^2 >= 0 with eps = H_r - h (normalized)."""
    def tau_sq_field(batch):
        return batch.tau_norm_sq()

    def eps_field(batch):
        H = batch.mean_curvature_orders()
        return np.abs(H[:, r] - h)

    tau_val, tau_ref = _normalized_integral(surface, tau_sq_field, rule)
    eps_val, eps_ref = _normalized_integral(surface, eps_field, rule)
    return ResidualReport(name=f"tau_l2_epsilon_bound_r{r}",
                          value=K2 * eps_val - tau_val, tolerance=tolerance,
                          refinement_error=K2 * eps_ref + tau_ref, kind=INEQUALITY)


def michael_simon_ratio(surface: RadialSurface, rule: SphericalRule, Kn: float,
                        tolerance: float = 1e-8) -> ResidualReport:
    """Diagnostic gap Kn * int |H~| dv~ - V~^{(n-1)/n} for the flat immersion.

    Runs on the Euclidean-metric data of the chart immersion; never gates
    the pipeline because the sharp constant is configuration.
    """
    n = surface.n
    fine_rule = build_rule(rule.n, 2 * rule.order)
    gaps = []
    for rl in (rule, fine_rule):
        batch = surface.fields(rl)
        vol = integrate_batch(batch, np.ones(len(batch.rho)), rl, euclidean=True)
        total_H = integrate_batch(batch, np.abs(batch.H_tilde), rl, euclidean=True)
        gaps.append(Kn * total_H - vol ** ((n - 1) / n))
    return ResidualReport(name="michael_simon", value=gaps[0], tolerance=tolerance,
                          refinement_error=abs(gaps[0] - gaps[1]), kind=INEQUALITY)
