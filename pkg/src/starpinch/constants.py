"""The explicit constant chain K1 -> K2 -> K3 -> eps1 and the final bound.

The chain turns the pointwise multiplier K1 (symfun module) into the
integral bound int tau^2 <= K2 int |eps|, absorbs the extrinsic Sobolev
comparison into K3, and yields the smallness threshold
eps1 = eps0^(2(n+1)) / K3 together with the stability bound

    d_H(Sigma, S_rho0) <= C |eps|_1^gamma,
    C = c_RS * rho0 * K3^gamma,  gamma = alpha / (2(n+1)).

eps0, c_RS and alpha belong to the black-box almost-umbilical stability
theorem; they are configuration with documented defaults and are printed
in every report so that no number masquerades as derived.  The conformal
Sobolev constant c_{n,phi} defaults to Kn_MS * exp(n * sup|phi|) over the
containment ball, a safe computable bound for the volume distortion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .errors import HypothesisError
from .spaceform import SpaceFormModel, c_delta, chart_radius, s_delta


@dataclass(frozen=True)
class ConstantsConfig:
    """Configured (not derived) inputs of the constant chain."""

    eps0: float = 0.1          # smallness threshold of the black-box theorem
    c_RS: float = 1.0          # its multiplicative constant
    alpha: float = 0.5         # its Hoelder exponent alpha(n, p) at p = n+1 (placeholder)
    Kn_MS: float = 1.0         # Michael-Simon constant K(n)
    c_n: float | None = None   # sharpened-Newton constant; None -> calibrated default
    b_consts: tuple | None = None
    K1_mode: str = "h"         # "h" (pinching level) or "Hr+1" (min H_{r+1} route)

    def __post_init__(self):
        if min(self.eps0, self.c_RS, self.alpha, self.Kn_MS) <= 0.0:
            raise ValueError("constants must be strictly positive")
        if self.K1_mode not in ("h", "Hr+1"):
            raise ValueError(f"unknown K1_mode {self.K1_mode!r}")


@dataclass(frozen=True)
class ProofConstants:
    """Evaluated constant chain for one surface, with provenance."""

    K1: float
    K2: float
    K3: float
    eps1: float
    eps0: float
    c_RS: float
    alpha: float
    gamma: float
    c_n_phi: float
    Kn_MS: float
    dependencies: dict = field(default_factory=dict)

    def __post_init__(self):
        if min(self.K1, self.K2, self.K3, self.eps1, self.eps0, self.c_RS,
               self.alpha, self.gamma, self.c_n_phi, self.Kn_MS) <= 0.0:
            raise ValueError("all chain constants must be strictly positive")


def K2(delta: float, K1: float, R0: float, B_sup: float, R: float) -> float:
    """The three-case integral constant with int tau^2 <= K2 int |eps|."""
    if R0 <= 0.0:
        raise HypothesisError("R0 must be positive (quantitative starshapedness)")
    if B_sup < 0.0 or R < 0.0 or K1 <= 0.0:
        raise ValueError("K1 must be positive, B_sup and R nonnegative")
    if delta > 0.0:
        return (K1 / R0) * (1.0 + B_sup / math.sqrt(delta))
    if delta == 0.0:
        return (K1 / R0) * (1.0 + B_sup * R)
    return (K1 / R0) * (c_delta(R, delta) + B_sup * s_delta(R, delta))


def K3(K2_value: float, c_n_phi: float, volume: float, n: int) -> float:
    """K3 = K2 * c_{n,phi}^2 * V^{(2n+2)/n}."""
    if min(K2_value, c_n_phi, volume) <= 0.0:
        raise ValueError("K3 inputs must be positive")
    return K2_value * c_n_phi**2 * volume ** ((2.0 * n + 2.0) / n)


def eps1(eps0: float, K3_value: float, n: int) -> float:
    """Smallness threshold eps1 = eps0^{2(n+1)} / K3."""
    if eps0 <= 0.0 or K3_value <= 0.0:
        raise ValueError("eps0 and K3 must be positive")
    return eps0 ** (2 * (n + 1)) / K3_value


def gamma_exponent(alpha: float, n: int) -> float:
    return alpha / (2.0 * (n + 1))


def phi_sup(model: SpaceFormModel, R: float) -> float:
    """sup |phi| over the geodesic ball of radius R around the base point."""
    if model.delta == 0.0:
        return 0.0
    s = chart_radius(R, model)
    return abs(float(math.log1p(0.25 * model.delta * s * s)))


def c_n_phi_default(model: SpaceFormModel, n: int, R: float, Kn_MS: float) -> float:
    """Safe conformal Sobolev constant: Kn_MS * exp(n * sup|phi|)."""
    return Kn_MS * math.exp(n * phi_sup(model, R))


def final_bound(eps_l1: float, rho0: float, consts: ProofConstants):
    """The stability bound C |eps|_1^gamma and its applicability flag.

    The flag records whether eps_l1 <= eps1; the value is computed either
    way so inapplicable runs stay informative.
    """
    if eps_l1 < 0.0:
        raise ValueError("eps_l1 must be nonnegative")
    C = consts.c_RS * rho0 * consts.K3**consts.gamma
    bound = C * eps_l1**consts.gamma
    return bound, bool(eps_l1 <= consts.eps1)


def build_chain(n: int, r: int, delta: float, model: SpaceFormModel, *,
                h: float, B_sup: float, R0: float, R: float, volume: float,
                minH_partial: float, minH_rplus1: float,
                config: ConstantsConfig) -> ProofConstants:
    """Evaluate the whole chain for one surface, recording what it consumed."""
    from . import symfun

    c_n = config.c_n if config.c_n is not None else symfun.default_c_n(n)
    if config.K1_mode == "h":
        K1_value = symfun.K1(n, r, minH_partial, h, B_sup, c_n, config.b_consts)
    else:
        K1_value = symfun.K1_prime(n, r, minH_partial, minH_rplus1, B_sup, c_n,
                                   config.b_consts)
    K2_value = K2(delta, K1_value, R0, B_sup, R)
    c_phi = c_n_phi_default(model, n, R, config.Kn_MS)
    K3_value = K3(K2_value, c_phi, volume, n)
    gamma = gamma_exponent(config.alpha, n)
    deps = {
        "n": n, "r": r, "delta": delta, "h": h,
        "minH_partial": minH_partial, "minH_rplus1": minH_rplus1,
        "B_sup": B_sup, "volume": volume, "R0": R0, "R": R,
        "c_n": c_n, "K1_mode": config.K1_mode,
    }
    return ProofConstants(K1=K1_value, K2=K2_value, K3=K3_value,
                          eps1=eps1(config.eps0, K3_value, n),
                          eps0=config.eps0, c_RS=config.c_RS, alpha=config.alpha,
                          gamma=gamma, c_n_phi=c_phi, Kn_MS=config.Kn_MS,
                          dependencies=deps)


def describe(consts: ProofConstants) -> str:
    """Stable text block for report headers; configured values flagged."""
    lines = [
        f"K1 = {consts.K1!r}",
        f"K2 = {consts.K2!r}",
        f"K3 = {consts.K3!r}",
        f"eps1 = {consts.eps1!r}",
        f"gamma = {consts.gamma!r}",
        f"c_n_phi = {consts.c_n_phi!r}",
        f"eps0 = {consts.eps0!r}  (configured)",
        f"c_RS = {consts.c_RS!r}  (configured)",
        f"alpha = {consts.alpha!r}  (configured placeholder)",
        f"Kn_MS = {consts.Kn_MS!r}  (configured)",
    ]
    dep = " ".join(f"{k}={v!r}" for k, v in sorted(consts.dependencies.items()))
    lines.append(f"depends_on: {dep}")
    return "\n".join(lines)


def with_overrides(config: ConstantsConfig, **kwargs) -> ConstantsConfig:
    return replace(config, **kwargs)
