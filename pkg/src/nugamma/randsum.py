"""Random summation: the counting family nu_p, random-sum sampling and
the convergence / pre-limit experiments.

The summand count nu_p has probability generating function

    P_p(z, m) = p^(1/m) z / (1 - (1-p) z^m)^(1/m),

supported on {1, 1+m, 1+2m, ...} with mean 1/p.  Writing nu = 1 + m N
with N negative-binomial (size 1/m, success p) reproduces exactly that
pgf, and N itself is drawn through the gamma-Poisson mixture so the
non-integer size 1/m is no obstacle.

A law X is a fixed point of random summation when X =d p^(1/2) * sum of
nu_p i.i.d. copies, for every p; the symmetrized gamma family has this
property with respect to its own m, and for arbitrary centered
variance-2 summands the normalized sums converge to it as p -> 0.  The
normalization p^(1/2) is required: without it the sum's variance grows
like 1/p and no limit exists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .diagnostics import ks_distance
from .dist import SymmetrizedGamma
from .parallel import block_ranges, child_rng, run_tasks

ECDF_GRID_POINTS = 512
ECDF_CENTRAL_SPAN = 0.999


@dataclass(frozen=True)
class NuFamily:
    """Counting family nu_p: positive whole-number m, p in (0, 1)."""

    m: int
    p: float

    def __post_init__(self) -> None:
        if not (isinstance(self.m, int) and self.m >= 1):
            raise ValueError(f"m must be a positive integer, got {self.m!r}")
        if not (0.0 < self.p < 1.0):
            raise ValueError(f"p must be in (0, 1), got {self.p}")

    @property
    def mean(self) -> float:
        return 1.0 / self.p

    def pgf(self, z):
        """P_p(z, m) for z in [0, 1]."""
        z = np.asarray(z, dtype=float)
        if np.any(z < 0.0) or np.any(z > 1.0):
            raise ValueError("pgf defined here for z in [0, 1]")
        out = self.p ** (1.0 / self.m) * z / (1.0 - (1.0 - self.p) * z ** self.m) ** (1.0 / self.m)
        return float(out) if out.ndim == 0 else out

    def sample(self, rng: np.random.Generator, size=None):
        """nu = 1 + m * N, N negative binomial via the gamma-Poisson mixture."""
        lam = rng.gamma(1.0 / self.m, (1.0 - self.p) / self.p, size=size)
        return 1 + self.m * rng.poisson(lam)


@dataclass(frozen=True)
class Component:
    """Picklable spec of a centered summand distribution."""

    kind: str
    param: float
    variance: float

    @classmethod
    def uniform_var2(cls) -> "Component":
        hw = math.sqrt(6.0)  # uniform on [-sqrt(6), sqrt(6)] has variance 2
        return cls(kind="uniform", param=hw, variance=2.0)

    @classmethod
    def symmetrized_gamma(cls, m: float) -> "Component":
        return cls(kind="sg", param=float(m), variance=2.0)

    @classmethod
    def normal(cls, std: float = math.sqrt(2.0)) -> "Component":
        return cls(kind="normal", param=float(std), variance=float(std) ** 2)

    @classmethod
    def zero(cls) -> "Component":
        return cls(kind="zero", param=0.0, variance=0.0)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        if self.kind == "uniform":
            return rng.uniform(-self.param, self.param, n)
        if self.kind == "sg":
            return SymmetrizedGamma(self.param).sample(rng, n)
        if self.kind == "normal":
            return rng.normal(0.0, self.param, n)
        if self.kind == "zero":
            return np.zeros(n)
        raise ValueError(f"unknown component kind {self.kind!r}")


@dataclass(frozen=True)
class RandomSumConfig:
    family: NuFamily
    component: Component
    replicates: int
    seed: int

    def __post_init__(self) -> None:
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")


def random_sum_sample(config: RandomSumConfig, rng: np.random.Generator) -> float:
    """One draw of p^(1/2) * sum_{j=1}^{nu} Y_j from the given stream."""
    nu = int(config.family.sample(rng))
    y = config.component.sample(rng, nu)
    return math.sqrt(config.family.p) * float(y.sum())


def _sums_block(args) -> np.ndarray:
    family, component, seed, stage, lo, hi = args
    cfg = RandomSumConfig(family, component, replicates=1, seed=seed)
    out = np.empty(hi - lo)
    for i in range(lo, hi):
        out[i - lo] = random_sum_sample(cfg, child_rng(seed, stage, i))
    return out


def random_sum_draws(config: RandomSumConfig, *, stage: int = 0, workers: int = 1) -> np.ndarray:
    """All replicates, one child stream per (stage, replicate index)."""
    blocks = block_ranges(config.replicates, workers)
    args = [(config.family, config.component, config.seed, stage, lo, hi) for lo, hi in blocks]
    return np.concatenate(run_tasks(_sums_block, args, workers))


def theorem1_experiment(m: int, component: Component, p_schedule,
                        replicates: int, seed: int,
                        workers: int = 1) -> list[tuple[float, float]]:
    """KS distance between normalized random sums and the symmetrized
    gamma law with the same m, per p of a decreasing schedule.

    Summands must be centered with variance 2 so that the limit is the
    standardized law itself; the distances shrink along the schedule up
    to Monte Carlo noise (and sit at the noise floor when the summands
    are symmetrized gamma already, the fixed-point case).
    """
    p_schedule = list(p_schedule)
    if any(b >= a for a, b in zip(p_schedule, p_schedule[1:])):
        raise ValueError("p_schedule must be strictly decreasing")
    if abs(component.variance - 2.0) > 1e-9:
        raise ValueError("theorem1_experiment requires a variance-2 component")
    target = SymmetrizedGamma(float(m))
    rows = []
    for stage, p in enumerate(p_schedule):
        cfg = RandomSumConfig(NuFamily(m, p), component, replicates, seed)
        sums = random_sum_draws(cfg, stage=stage, workers=workers)
        cdf = target.cdf_interpolator(np.abs(sums).max())
        rows.append((float(p), ks_distance(sums, cdf)))
    return rows


def _prelimit_block(args) -> np.ndarray:
    m, n, scale, seed, lo, hi = args
    d = SymmetrizedGamma(m)
    out = np.empty(hi - lo)
    for i in range(lo, hi):
        out[i - lo] = d.sample(child_rng(seed, i), n).sum() / scale
    return out


def evaluation_grid(draws: np.ndarray, points: int = ECDF_GRID_POINTS) -> np.ndarray:
    """Equally spaced grid spanning the central 99.9% of the draws."""
    tail = 0.5 * (1.0 - ECDF_CENTRAL_SPAN)
    lo, hi = np.quantile(draws, [tail, 1.0 - tail])
    return np.linspace(lo, hi, points)


def ecdf_values(draws: np.ndarray, grid: np.ndarray) -> np.ndarray:
    return np.searchsorted(np.sort(draws), grid, side="right") / len(draws)


@dataclass(frozen=True)
class PrelimitResult:
    sums: np.ndarray
    grid: np.ndarray
    ecdf: np.ndarray


def prelimit_experiment(m: int, n: int, replicates: int, exponent_alpha: float,
                        seed: int, workers: int = 1) -> PrelimitResult:
    """Replicate sums of n symmetrized gamma(m) variates, each divided by
    n^(1/exponent_alpha), with their empirical CDF on the standard grid."""
    if n < 1 or replicates < 1:
        raise ValueError("n and replicates must be >= 1")
    scale = float(n) ** (1.0 / exponent_alpha)
    blocks = block_ranges(replicates, workers)
    args = [(float(m), int(n), scale, seed, lo, hi) for lo, hi in blocks]
    sums = np.concatenate(run_tasks(_prelimit_block, args, workers))
    grid = evaluation_grid(sums)
    return PrelimitResult(sums=sums, grid=grid, ecdf=ecdf_values(sums, grid))


@dataclass(frozen=True)
class EcdfStableFit:
    alpha: float
    lam: float
    residual: float
    ks: float


def fit_stable_to_ecdf(grid: np.ndarray, ecdf: np.ndarray,
                       start: tuple[float, float] | None = None) -> EcdfStableFit:
    """Least-squares symmetric-stable CDF fit to an empirical CDF table.

    Deterministic bounded Nelder-Mead over (alpha, lambda); the reported
    ks is the sup distance between the table and the fitted CDF on the
    same grid.
    """
    from .dist import SymmetricStable

    if start is None:
        start = (1.9, 0.5)
    a0 = min(max(start[0], 0.81), 1.99)
    l0 = min(max(start[1], 2e-3), 49.0)

    def objective(p) -> float:
        model = SymmetricStable(alpha=float(p[0]), lam=float(p[1])).cdf_grid(grid)
        return float(np.sum((ecdf - model) ** 2))

    res = minimize(
        objective, (a0, l0), method="Nelder-Mead",
        bounds=[(0.8, 2.0), (1e-3, 50.0)],
        options={"maxiter": 500, "xatol": 1e-10, "fatol": 1e-10},
    )
    alpha, lam = float(res.x[0]), float(res.x[1])
    model = SymmetricStable(alpha=alpha, lam=lam).cdf_grid(grid)
    return EcdfStableFit(alpha=alpha, lam=lam, residual=float(res.fun),
                         ks=float(np.max(np.abs(ecdf - model))))
