"""Deterministic synthetic generators for the motivating dependence structures.

Each generator is a pure function of (n, seed, params): draws come from keyed
counter-based streams (one stream per role), and normal variates are produced
by the inverse CDF applied to an open-interval uniform stream, so any
implementation of the same stream layout reproduces these samples bit for bit.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ._rng import ROLE_NOISE, ROLE_SCALE, ROLE_X, ROLE_Y, stream, uniform_open
from .core import Sample
from .errors import DegenerateSample
from .scores import normal_quantile

__all__ = [
    "GenKind",
    "GenSpec",
    "gen_independent_normal",
    "gen_nonmonotone",
    "gen_stochastic_volatility",
    "gen_heavy_tail_monotone",
    "generate",
]


class GenKind(str, enum.Enum):
    INDEPENDENT_NORMAL = "independentNormal"
    NONMONOTONE = "nonmonotone"
    STOCHASTIC_VOLATILITY = "stochasticVolatility"
    HEAVY_TAIL_MONOTONE = "heavyTailMonotone"


@dataclass(frozen=True)
class GenSpec:
    kind: GenKind
    n: int
    seed: int = 0
    sigma: float = 0.1  # noise level; used by the nonmonotone generator

    def __post_init__(self):
        if self.n < 2:
            raise DegenerateSample(f"generators need n >= 2, got {self.n}")
        if self.sigma < 0:
            raise ValueError(f"sigma must be >= 0, got {self.sigma}")


def _normals(n: int, seed: int, role: int) -> np.ndarray:
    u = uniform_open(stream(seed, role), n)
    return normal_quantile(u, polish=True)


def gen_independent_normal(n: int, seed: int = 0) -> Sample:
    """Independent standard normal x and y — null-hypothesis data."""
    spec = GenSpec(GenKind.INDEPENDENT_NORMAL, n, seed)
    return Sample(_normals(spec.n, spec.seed, ROLE_X), _normals(spec.n, spec.seed, ROLE_Y))


def gen_nonmonotone(
    n: int, seed: int = 0, sigma: float = 0.1, x_override: np.ndarray | None = None
) -> Sample:
    """X ~ Uniform(-1,1), Y = X^2 + sigma * noise.

    Zero linear correlation in population, yet fully dependent — the case
    where monotone coefficients fail. ``x_override`` substitutes a fixed x
    vector (testing hook); the noise stream is unaffected by it.
    """
    spec = GenSpec(GenKind.NONMONOTONE, n, seed, sigma)
    if x_override is not None:
        x = np.asarray(x_override, dtype=np.float64)
        if x.shape != (n,):
            raise ValueError(f"x_override must have shape ({n},)")
    else:
        x = 2.0 * uniform_open(stream(spec.seed, ROLE_X), spec.n) - 1.0
    y = x**2
    if spec.sigma > 0:
        y = y + spec.sigma * _normals(spec.n, spec.seed, ROLE_NOISE)
    return Sample(x, y)


def gen_stochastic_volatility(
    n: int, seed: int = 0, v_override: np.ndarray | None = None
) -> Sample:
    """X = V*Z, Y = V*Z' with shared lognormal scaling V and independent normals.

    The common random scaling makes X and Y uncorrelated but dependent.
    ``v_override`` substitutes a fixed scaling vector (testing hook); setting
    it to ones reduces the output to gen_independent_normal's exact sample.
    """
    spec = GenSpec(GenKind.STOCHASTIC_VOLATILITY, n, seed)
    z = _normals(spec.n, spec.seed, ROLE_X)
    z_prime = _normals(spec.n, spec.seed, ROLE_Y)
    if v_override is not None:
        v = np.asarray(v_override, dtype=np.float64)
        if v.shape != (n,):
            raise ValueError(f"v_override must have shape ({n},)")
    else:
        v = np.exp(_normals(spec.n, spec.seed, ROLE_SCALE))
    return Sample(v * z, v * z_prime)


def gen_heavy_tail_monotone(n: int, seed: int = 0) -> Sample:
    """Nonmonotone sample with x pushed through a rank-preserving heavy-tail map.

    x in (-1,1) maps to tan((pi/2) * 0.999 * x): Cauchy-like tails (no finite
    first moment near the asymptotes) while every rank is preserved, so any
    rank-based statistic is identical on the original and transformed data.
    """
    base = gen_nonmonotone(n, seed, sigma=0.1)
    x = np.tan(0.5 * np.pi * 0.999 * base.x[:, 0])
    return Sample(x, base.y)


def generate(spec: GenSpec) -> Sample:
    """Dispatch on GenSpec.kind."""
    if spec.kind is GenKind.INDEPENDENT_NORMAL:
        return gen_independent_normal(spec.n, spec.seed)
    if spec.kind is GenKind.NONMONOTONE:
        return gen_nonmonotone(spec.n, spec.seed, spec.sigma)
    if spec.kind is GenKind.STOCHASTIC_VOLATILITY:
        return gen_stochastic_volatility(spec.n, spec.seed)
    return gen_heavy_tail_monotone(spec.n, spec.seed)
