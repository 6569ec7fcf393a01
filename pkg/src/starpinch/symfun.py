"""Symmetric-function calculus on principal curvature vectors.

Everything here is exact algebra on a vector kappa of n principal
curvatures: elementary symmetric polynomials sigma_k, the normalized mean
curvatures H_k = sigma_k / C(n,k), the partial curvatures H_{l;i,j}
obtained by deleting two entries, the umbilicity defect
``tau^2 = sum (kappa_i - H_1)^2``, the Newton and Maclaurin inequality
gaps, and the explicit constants K1 / K1' that turn the sharpened Newton
inequality into the pointwise bound

    tau^2 <= K1 (H H_r - H_{r+1}).

The sharpened Newton constant c_n and the Maclaurin-chain constants
b_{n,k,r} are not known in closed form; this module calibrates them by a
seeded brute-force infimum over random positive curvature vectors (minus a
safety margin) and can write/read the result as a small text file.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import HypothesisError

# ---------------------------------------------------------------------------
# elementary symmetric polynomials and normalized mean curvatures


def elementary_symmetric(kappa) -> np.ndarray:
    """All sigma_0..sigma_n of the entries along the last axis.

    Uses the stable one-root-at-a-time recurrence, i.e. expands
    prod_i (t + kappa_i) incrementally.
    """
    kappa = np.asarray(kappa, dtype=float)
    n = kappa.shape[-1]
    sigma = np.zeros(kappa.shape[:-1] + (n + 1,))
    sigma[..., 0] = 1.0
    for i in range(n):
        k_i = kappa[..., i : i + 1]
        sigma[..., 1 : i + 2] = sigma[..., 1 : i + 2] + k_i * sigma[..., 0 : i + 1]
    return sigma


def normalized_mean_curvatures(sigma, n: int) -> np.ndarray:
    """H_k = sigma_k / C(n,k) for k = 0..n."""
    sigma = np.asarray(sigma, dtype=float)
    if sigma.shape[-1] != n + 1:
        raise ValueError("sigma must have length n+1")
    binom = np.array([math.comb(n, k) for k in range(n + 1)], dtype=float)
    return sigma / binom


def mean_curvatures(kappa) -> np.ndarray:
    """Shorthand: H_0..H_n straight from a curvature vector (batched)."""
    kappa = np.asarray(kappa, dtype=float)
    return normalized_mean_curvatures(elementary_symmetric(kappa), kappa.shape[-1])


def umbilicity_defect_sq(kappa) -> np.ndarray:
    """tau^2 = sum_i (kappa_i - H_1)^2, zero exactly at umbilic points."""
    kappa = np.asarray(kappa, dtype=float)
    mean = kappa.mean(axis=-1, keepdims=True)
    return np.sum((kappa - mean) ** 2, axis=-1)


@dataclass(frozen=True)
class CurvatureProfile:
    """All pointwise symmetric-function data for one curvature vector."""

    kappa: np.ndarray
    sigma: np.ndarray
    H: np.ndarray
    tau_sq: float

    @property
    def n(self) -> int:
        return len(self.kappa)


def curvature_profile(kappa) -> CurvatureProfile:
    kappa = np.sort(np.asarray(kappa, dtype=float))
    if kappa.ndim != 1 or kappa.size < 2:
        raise ValueError("kappa must be a vector of at least 2 curvatures")
    sigma = elementary_symmetric(kappa)
    H = normalized_mean_curvatures(sigma, kappa.size)
    return CurvatureProfile(kappa=kappa, sigma=sigma, H=H, tau_sq=float(umbilicity_defect_sq(kappa)))


# ---------------------------------------------------------------------------
# partial curvatures H_{l;i,j}


@dataclass(frozen=True)
class PartialMeanCurvature:
    value: float
    l: int
    i: int
    j: int


def partial_H(l: int, i: int, j: int, kappa) -> PartialMeanCurvature:
    """H_{l;i,j}: sigma_{l-2} of kappa with entries i and j removed, over C(n,l).

    Indices are 1-based (kappa_1..kappa_n, matching the sorted convention);
    for l = 2 the value is the dimensional constant 1/C(n,2).
    """
    kappa = np.asarray(kappa, dtype=float)
    n = kappa.shape[-1]
    if not 2 <= l <= n + 1:
        raise ValueError(f"l must lie in [2, n+1], got l={l} with n={n}")
    if i == j:
        raise ValueError("indices i and j must be distinct")
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError("indices must lie in 1..n")
    rest = np.delete(kappa, [i - 1, j - 1], axis=-1)
    sig = elementary_symmetric(rest)[..., l - 2]
    return PartialMeanCurvature(value=float(sig) / math.comb(n, l), l=l, i=i, j=j)


def partial_H_extremes(l: int, kappa_sorted) -> np.ndarray:
    """Batched H_{l;n,1}: delete the largest and smallest curvature.

    ``kappa_sorted`` has ascending entries along the last axis.
    """
    kappa_sorted = np.asarray(kappa_sorted, dtype=float)
    n = kappa_sorted.shape[-1]
    if not 2 <= l <= n + 1:
        raise ValueError(f"l must lie in [2, n+1], got l={l} with n={n}")
    middle = kappa_sorted[..., 1:-1]
    sig = elementary_symmetric(middle)[..., l - 2]
    return sig / math.comb(n, l)


# ---------------------------------------------------------------------------
# inequality gaps


def newton_gap(profile: CurvatureProfile, k: int) -> float:
    """H_k^2 - H_{k+1} H_{k-1}, nonnegative for all real curvature vectors."""
    H = profile.H
    if not 1 <= k <= profile.n - 1:
        raise ValueError(f"k must lie in [1, n-1], got k={k}")
    return float(H[k] ** 2 - H[k + 1] * H[k - 1])


def sharpened_newton_gap(profile: CurvatureProfile, k: int, c_n: float) -> float:
    """Newton gap minus c_n * tau^2 * H_{k+1;n,1}^2 (the sharpened estimate)."""
    if not 1 <= k <= profile.n - 1:
        raise ValueError(f"k must lie in [1, n-1], got k={k}")
    hp = partial_H_extremes(k + 1, profile.kappa)
    return newton_gap(profile, k) - c_n * profile.tau_sq * float(hp) ** 2


def maclaurin_gaps(profile: CurvatureProfile, r: int) -> np.ndarray:
    """The chain gaps H_k^(1/k) - H_{k+1}^(1/(k+1)) for k = 1..r.

    Requires H_{r+1} > 0; the positivity cascade (H_s > 0 for s <= r) is
    asserted before any fractional root is taken.
    """
    H = profile.H
    if not 1 <= r <= profile.n - 1:
        raise ValueError(f"r must lie in [1, n-1], got r={r}")
    if H[r + 1] <= 0.0:
        raise HypothesisError(f"Maclaurin chain needs H_{r+1} > 0, got {H[r + 1]:.6g}")
    if np.any(H[1 : r + 1] <= 0.0):
        raise HypothesisError("positivity cascade violated: some H_s <= 0 despite H_{r+1} > 0")
    roots = [H[k] ** (1.0 / k) for k in range(1, r + 2)]
    return np.array([roots[k - 1] - roots[k] for k in range(1, r + 1)])


# ---------------------------------------------------------------------------
# the pointwise constant of the tau^2 bound (Lemma-style multiplier)


def K1(n: int, r: int, minH_partial: float, h: float, B_sup: float,
       c_n: float, b_consts=None) -> float:
    """Multiplier K1 with tau^2 <= K1 (H H_r - H_{r+1}) pointwise.

    For r = 1 this is the exact dimensional constant n(n-1), from the
    identity tau^2 = n(n-1)(H^2 - H_2).  For r >= 2 it is the reciprocal
    of the explicit product

        c_n * min_k b_{n,k+1,r}^{2(k-1)} * (h / 2|B|) *
            sum_{k=1}^r (minH_partial^{1/(r-1)} / |B|)^{2(k-1)},

    evaluated with the calibrated constants.  Note K1 grows like 1/h: a
    weaker pinching hypothesis gives a weaker (larger) multiplier.
    """
    if r == 1:
        return float(n * (n - 1))
    if h <= 0.0 or B_sup <= 0.0:
        raise ValueError("h and B_sup must be positive")
    if minH_partial <= 0.0:
        raise HypothesisError("min H_{r+1;n,1} must be positive for r >= 2")
    factor = _k1_product(n, r, minH_partial, B_sup, c_n, b_consts) * (h / 2.0)
    return 1.0 / factor


def K1_prime(n: int, r: int, minH_partial: float, minH_rplus1: float, B_sup: float,
             c_n: float, b_consts=None) -> float:
    """Variant of K1 with (min H_{r+1})^(r/(r+1)) in place of h/2."""
    if minH_rplus1 <= 0.0:
        raise HypothesisError("min H_{r+1} must be positive")
    if B_sup <= 0.0:
        raise ValueError("B_sup must be positive")
    if r >= 2 and minH_partial <= 0.0:
        raise HypothesisError("min H_{r+1;n,1} must be positive for r >= 2")
    factor = _k1_product(n, r, minH_partial, B_sup, c_n, b_consts)
    factor *= minH_rplus1 ** (r / (r + 1.0))
    return 1.0 / factor


def _k1_product(n, r, minH_partial, B_sup, c_n, b_consts):
    """Common factor c_n * min_k(b^{2(k-1)}) * (1/|B|) * sum_k (...)^{2(k-1)}."""
    if c_n <= 0.0:
        raise ValueError("c_n must be positive")
    b = _b_vector(r, b_consts)
    min_b_pow = min(b[k - 1] ** (2 * (k - 1)) for k in range(1, r + 1))
    total = 0.0
    for k in range(1, r + 1):
        if k == 1:
            total += 1.0
        else:
            total += (minH_partial ** (1.0 / (r - 1)) / B_sup) ** (2 * (k - 1))
    return c_n * min_b_pow * total / B_sup


def _b_vector(r, b_consts):
    """b_consts[k-1] = b_{n,k+1,r} for k = 1..r; defaults to all ones."""
    if b_consts is None:
        return [1.0] * r
    b = [float(x) for x in b_consts]
    if len(b) < r:
        raise ValueError(f"need at least {r} b-constants, got {len(b)}")
    if any(x <= 0.0 for x in b):
        raise ValueError("b-constants must be positive")
    return b


# ---------------------------------------------------------------------------
# calibration of c_n and the b-constants


@dataclass(frozen=True)
class Calibration:
    """Calibrated inequality constants with their provenance."""

    n: int
    r: int
    c_n: float
    b_consts: tuple
    seed: int
    samples: int
    margin: float
    raw_c_inf: float = field(default=float("nan"))


def sample_positive_curvatures(n: int, samples: int, seed: int) -> np.ndarray:
    """Deterministic positive curvature vectors, sorted ascending.

    Mixes log-normal spread, moderate uniform values and near-umbilic
    configurations (where the sharpened-Newton ratio attains its infimum).
    """
    rng = np.random.Generator(np.random.Philox(seed))
    n_log = samples // 3
    n_uni = samples // 3
    n_umb = samples - n_log - n_uni
    logn = np.exp(rng.normal(0.0, 0.9, size=(n_log, n)))
    uni = rng.uniform(0.05, 3.0, size=(n_uni, n))
    base = rng.uniform(0.3, 2.0, size=(n_umb, 1))
    spread = 10.0 ** rng.uniform(-3.0, -0.5, size=(n_umb, 1))
    umb = base * (1.0 + spread * rng.normal(0.0, 1.0, size=(n_umb, n)))
    kappa = np.vstack([logn, uni, np.abs(umb) + 1e-6])
    return np.sort(kappa, axis=-1)


def _newton_tau_ratios(kappa: np.ndarray, k: int) -> np.ndarray:
    """(H_k^2 - H_{k+1}H_{k-1}) / (tau^2 H_{k+1;n,1}^2), NaN where degenerate."""
    H = mean_curvatures(kappa)
    tau_sq = umbilicity_defect_sq(kappa)
    hp = partial_H_extremes(k + 1, kappa)
    num = H[..., k] ** 2 - H[..., k + 1] * H[..., k - 1]
    den = tau_sq * hp**2
    scale = np.max(kappa, axis=-1) ** 2
    ok = tau_sq > 1e-6 * scale * kappa.shape[-1]
    return np.where(ok & (den > 0.0), num / np.where(den > 0.0, den, 1.0), np.nan)


def calibrate(n: int, r: int, samples: int = 100_000, seed: int = 31415,
              margin: float = 0.1) -> Calibration:
    """Brute-force calibration of c_n and b_{n,k,r} over random positive kappa.

    c_n is the sampled infimum over k of the sharpened-Newton ratio, scaled
    down by the safety margin; b_{n,k,r} likewise for the partial-curvature
    Maclaurin chain.  Deterministic for a given (seed, samples).
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if not 1 <= r <= n - 1:
        raise ValueError("r must lie in [1, n-1]")
    kappa = sample_positive_curvatures(n, samples, seed)
    ratios = [_newton_tau_ratios(kappa, k) for k in range(1, n)]
    raw_inf = float(np.nanmin(np.vstack(ratios)))
    c_n = (1.0 - margin) * raw_inf

    b = []
    for k_sum in range(1, r + 1):
        l = k_sum + 1  # chain index: b_{n,l,r} with l = k+1
        if l == 2 or l == r + 1:
            b.append(1.0)
            continue
        lhs = partial_H_extremes(l, kappa)
        rhs = partial_H_extremes(r + 1, kappa)
        good = (lhs > 0.0) & (rhs > 0.0)
        ratio = lhs[good] ** (1.0 / (l - 2)) / rhs[good] ** (1.0 / (r - 1))
        b.append((1.0 - margin) * float(np.min(ratio)))
    return Calibration(n=n, r=r, c_n=c_n, b_consts=tuple(b), seed=seed,
                       samples=samples, margin=margin, raw_c_inf=raw_inf)


def write_calibration(cal: Calibration, path) -> None:
    lines = [
        f"n = {cal.n}",
        f"r = {cal.r}",
        f"c_n = {cal.c_n!r}",
        "b_consts = " + " ".join(repr(x) for x in cal.b_consts),
        f"seed = {cal.seed}",
        f"samples = {cal.samples}",
        f"margin = {cal.margin!r}",
        f"raw_c_inf = {cal.raw_c_inf!r}",
    ]
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_calibration(path) -> Calibration:
    data = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            data[key.strip()] = value.strip()
    return Calibration(
        n=int(data["n"]),
        r=int(data["r"]),
        c_n=float(data["c_n"]),
        b_consts=tuple(float(x) for x in data["b_consts"].split()),
        seed=int(data["seed"]),
        samples=int(data["samples"]),
        margin=float(data["margin"]),
        raw_c_inf=float(data.get("raw_c_inf", "nan")),
    )


_DEFAULT_CN_CACHE: dict = {}


def default_c_n(n: int) -> float:
    """Calibrated c_n with the package-default seed and sample count."""
    if n not in _DEFAULT_CN_CACHE:
        _DEFAULT_CN_CACHE[n] = calibrate(n, 1, samples=60_000).c_n
    return _DEFAULT_CN_CACHE[n]
