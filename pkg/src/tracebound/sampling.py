"""Seeded random generation of pure states, fixed-rank states, Haar unitaries, and ensembles.

Reproducibility contract
------------------------
Every sampler draws from an :class:`RngStream` addressed by a 64-bit seed and
a stream index. A stream is numpy's PCG64 generator keyed by
``SeedSequence(seed, spawn_key=(stream_index,))``, so identical
``(seed, stream_index)`` always replays the identical byte sequence and
distinct indices are statistically independent. Normal variates come from
numpy's ziggurat ``standard_normal``; complex normals are
``(x + i*y) / sqrt(2)`` with independent real draws for x and y. Each sampler
documents the order in which it consumes draws; that order is part of the
contract. Experiments use one stream per sample index, which makes parallel
sampling produce the same set of samples as sequential sampling.
"""

from dataclasses import dataclass
from typing import Literal, Union

import numpy as np

from .states import DEFAULT_RANK_TOL, DensityMatrix

__all__ = [
    "EnsembleSpec",
    "FixedRank",
    "RngStream",
    "UniformRank",
    "draw_state",
    "fig1_rho",
    "fig1_sigma",
    "fixed_purity_state",
    "ginibre_fixed_rank",
    "haar_pure",
    "haar_unitary",
]

MAX_SEED = 2**64


class RngStream:
    """Deterministic random stream addressed by (seed, stream_index).

    The stream is stateful: consecutive draws advance it. Reconstructing a
    stream from the same address replays the same sequence from the start.
    """

    __slots__ = ("seed", "stream_index", "_gen")

    def __init__(self, seed: int, stream_index: int = 0):
        if not 0 <= seed < MAX_SEED:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        if stream_index < 0:
            raise ValueError(f"stream_index must be nonnegative, got {stream_index}")
        self.seed = int(seed)
        self.stream_index = int(stream_index)
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_index,))
        self._gen = np.random.Generator(np.random.PCG64(ss))

    def substream(self, index: int) -> "RngStream":
        """A fresh stream at another index under the same seed."""
        return RngStream(self.seed, index)

    def integer(self, low: int, high: int) -> int:
        """Uniform integer in [low, high] inclusive."""
        return int(self._gen.integers(low, high + 1))

    def uniform(self, low: float, high: float) -> float:
        return float(self._gen.uniform(low, high))

    def standard_normal(self, shape) -> np.ndarray:
        return self._gen.standard_normal(shape)

    def standard_gamma(self, alpha: float, size: int) -> np.ndarray:
        return self._gen.standard_gamma(alpha, size)

    def complex_normal(self, shape) -> np.ndarray:
        """Standard complex normal entries, E|z|^2 = 1. Real part drawn first."""
        x = self._gen.standard_normal(shape)
        y = self._gen.standard_normal(shape)
        return (x + 1j * y) / np.sqrt(2.0)

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, stream_index={self.stream_index})"


def haar_pure(d: int, rng: RngStream) -> DensityMatrix:
    """Haar-random pure state |psi><psi| of dimension d.

    Consumes one complex normal d-vector; normalization makes the
    distribution unitarily invariant.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    v = rng.complex_normal(d)
    v = v / np.linalg.norm(v)
    return DensityMatrix(np.outer(v, v.conj()))


def ginibre_fixed_rank(d: int, r: int, rng: RngStream) -> DensityMatrix:
    """Random rank-r state G G^dag / Tr(G G^dag) with G a d x r complex normal matrix.

    The numerical rank is r with probability 1. Consumes one d x r complex
    normal matrix.
    """
    if not 1 <= r <= d:
        raise ValueError(f"rank must be in [1, {d}], got {r}")
    g = rng.complex_normal((d, r))
    a = g @ g.conj().T
    return DensityMatrix(a / float(np.trace(a).real))


def haar_unitary(d: int, rng: RngStream) -> np.ndarray:
    """Haar-distributed d x d unitary via QR of a complex normal matrix.

    The R-diagonal phases are divided out, which corrects the raw QR output
    to the Haar measure. Consumes one d x d complex normal matrix.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    g = rng.complex_normal((d, d))
    q, r = np.linalg.qr(g)
    ph = np.diagonal(r).copy()
    ph /= np.abs(ph)
    return q * ph


def _purity_spectrum(s: int, p: float) -> np.ndarray:
    """Support-size-s eigenvalue list with Tr(rho^2) exactly p.

    One-parameter family: lambda_1 = (1 + (s-1)t)/s and
    lambda_{2..s} = (1-t)/s, whose purity is (1 + (s-1)t^2)/s; solving for
    the target purity gives t = sqrt((p*s - 1)/(s - 1)). t in [0, 1] spans
    the full purity range [1/s, 1] for the given support size.
    """
    if s == 1:
        return np.ones(1)
    t = np.sqrt(max(p * s - 1.0, 0.0) / (s - 1))
    lam = np.full(s, (1.0 - t) / s)
    lam[0] = (1.0 + (s - 1) * t) / s
    return lam


def fixed_purity_state(d: int, rank: int, target_purity: float, rng: RngStream,
                       rank_tolerance: float = DEFAULT_RANK_TOL) -> DensityMatrix:
    """Random state with the given support size and purity, Haar-random basis.

    Consumes one Haar unitary draw. The achieved purity matches the target to
    roundoff; the numerical rank equals ``rank`` unless the target purity is
    within roundoff of 1 (where the trailing eigenvalues vanish).
    """
    if not 1 <= rank <= d:
        raise ValueError(f"rank must be in [1, {d}], got {rank}")
    lo = 1.0 / rank
    if not lo - 1e-12 <= target_purity <= 1.0 + 1e-12:
        raise ValueError(f"purity must be in [{lo}, 1] for rank {rank}, got {target_purity}")
    lam = np.zeros(d)
    lam[:rank] = _purity_spectrum(rank, min(max(target_purity, lo), 1.0))
    u = haar_unitary(d, rng)
    m = (u * lam) @ u.conj().T
    m = (m + m.conj().T) / 2
    return DensityMatrix(m, rank_tolerance=rank_tolerance)


def fig1_sigma(d: int, rng: RngStream) -> DensityMatrix:
    """One draw from the ensemble with uniformly distributed rank and purity.

    Draw order: support size s uniform on {1..d}, then target purity uniform
    on [1/s, 1], then the Haar basis.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    return draw_state(d, UniformRank(1, d), "uniform_given_rank", rng)


def fig1_rho(d: int, rng: RngStream) -> DensityMatrix:
    """One draw from the bounded-rank ensemble: rank uniform on {1..d/4}, Ginibre law.

    Draw order: rank r, then the d x r Ginibre matrix. Requires d >= 4.
    """
    if d < 4:
        raise ValueError(f"bounded-rank ensemble requires d >= 4, got {d}")
    return draw_state(d, UniformRank(1, d // 4), "ensemble_natural", rng)


@dataclass(frozen=True)
class FixedRank:
    r: int

    def draw(self, rng: RngStream) -> int:
        return self.r


@dataclass(frozen=True)
class UniformRank:
    lo: int
    hi: int

    def draw(self, rng: RngStream) -> int:
        return rng.integer(self.lo, self.hi)


RankLaw = Union[FixedRank, UniformRank]
PurityLaw = Literal["ensemble_natural", "uniform_given_rank"]


@dataclass(frozen=True)
class EnsembleSpec:
    """Parameters of a random-state ensemble; drawing at an index is deterministic.

    ``purity_law`` is either "ensemble_natural" (rank-r Ginibre states, purity
    follows from the law) or "uniform_given_rank" (purity uniform on [1/r, 1]
    in a Haar-random basis).
    """

    dim: int
    rank_law: RankLaw
    purity_law: PurityLaw = "ensemble_natural"
    seed: int = 0

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dim}")
        if isinstance(self.rank_law, FixedRank):
            if not 1 <= self.rank_law.r <= self.dim:
                raise ValueError(f"fixed rank {self.rank_law.r} out of [1, {self.dim}]")
        else:
            if not 1 <= self.rank_law.lo <= self.rank_law.hi <= self.dim:
                raise ValueError(
                    f"rank range [{self.rank_law.lo}, {self.rank_law.hi}] out of [1, {self.dim}]"
                )
        if self.purity_law not in ("ensemble_natural", "uniform_given_rank"):
            raise ValueError(f"unknown purity law {self.purity_law!r}")
        if not 0 <= self.seed < MAX_SEED:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    def draw(self, index: int) -> DensityMatrix:
        """The state at sample index ``index``; same (spec, index) gives the same state."""
        return draw_state(self.dim, self.rank_law, self.purity_law, RngStream(self.seed, index))


def draw_state(d: int, rank_law: RankLaw, purity_law: PurityLaw, rng: RngStream) -> DensityMatrix:
    """Draw one state: rank first, then purity (if applicable), then matrix entries."""
    r = rank_law.draw(rng)
    if purity_law == "ensemble_natural":
        return ginibre_fixed_rank(d, r, rng)
    p = rng.uniform(1.0 / r, 1.0)
    return fixed_purity_state(d, r, p, rng)
