"""Density-matrix domain types, spectral decomposition, and scalar state functionals."""

from dataclasses import dataclass

import numpy as np

# Validation tolerances. Hermiticity is relative to the largest matrix entry;
# the PSD floor scales with dimension and the largest eigenvalue.
HERMITICITY_RTOL = 1e-10
TRACE_ATOL = 1e-10
PSD_FLOOR_RTOL = 1e-12
DEFAULT_RANK_TOL = 1e-10


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition of a Hermitian matrix, eigenvalues sorted decreasing.

    ``eigenvectors[:, j]`` is the unit eigenvector paired with
    ``eigenvalues[j]``; the column matrix is unitary.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def reconstruct(self) -> np.ndarray:
        """Return U diag(lambda) U^dag, the matrix this spectrum decomposes."""
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.conj().T


def hermitian_eig(m: np.ndarray) -> Spectrum:
    """Full spectral decomposition of a Hermitian matrix.

    Eigenvalues are real and sorted in decreasing order. Raises ValueError if
    ``m`` is not square or deviates from Hermiticity by more than
    ``HERMITICITY_RTOL`` relative to its largest entry.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    scale = float(np.abs(m).max()) if m.size else 0.0
    deviation = float(np.abs(m - m.conj().T).max()) if m.size else 0.0
    if deviation > HERMITICITY_RTOL * scale:
        raise ValueError(
            f"matrix is not Hermitian: max |M - M^dag| = {deviation:.3e} "
            f"exceeds {HERMITICITY_RTOL:.0e} * max-entry ({scale:.3e})"
        )
    w, v = np.linalg.eigh(m)
    eigenvalues = np.ascontiguousarray(w[::-1])
    eigenvectors = np.ascontiguousarray(v[:, ::-1])
    eigenvalues.setflags(write=False)
    eigenvectors.setflags(write=False)
    return Spectrum(eigenvalues=eigenvalues, eigenvectors=eigenvectors)


def numerical_rank(s: Spectrum, tol: float = DEFAULT_RANK_TOL) -> int:
    """Number of eigenvalues above ``tol * lambda_max``.

    Returns 0 only when the largest eigenvalue is itself nonpositive
    (the zero matrix, up to roundoff).
    """
    lam = s.eigenvalues
    if lam.size == 0:
        return 0
    lam_max = float(lam[0])
    if lam_max <= 0.0:
        return 0
    return int(np.count_nonzero(lam > tol * lam_max))


class DensityMatrix:
    """A validated quantum state: Hermitian, positive semidefinite, unit trace.

    All invariants are checked once, at construction; the spectral
    decomposition this requires is kept as a write-once cache that every
    spectral functional (rank, purity, ...) reads. Instances are immutable
    and safe to share across threads.
    """

    __slots__ = ("_matrix", "_rank_tolerance", "_spectrum")

    def __init__(self, matrix: np.ndarray, rank_tolerance: float = DEFAULT_RANK_TOL):
        m = np.array(matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise ValueError(f"expected a square matrix of dim >= 1, got shape {m.shape}")
        if rank_tolerance < 0:
            raise ValueError(f"rank_tolerance must be nonnegative, got {rank_tolerance}")
        scale = float(np.abs(m).max())
        deviation = float(np.abs(m - m.conj().T).max())
        if deviation > HERMITICITY_RTOL * scale:
            raise ValueError(
                f"matrix is not Hermitian: max |M - M^dag| = {deviation:.3e} "
                f"exceeds {HERMITICITY_RTOL:.0e} * max-entry ({scale:.3e})"
            )
        trace = complex(m.trace())
        if abs(trace - 1.0) > TRACE_ATOL:
            raise ValueError(f"trace must be 1 within {TRACE_ATOL:.0e}, got {trace}")
        m.setflags(write=False)
        self._matrix = m
        self._rank_tolerance = float(rank_tolerance)
        self._spectrum = hermitian_eig(m)
        lam = self._spectrum.eigenvalues
        floor = -m.shape[0] * PSD_FLOOR_RTOL * max(float(lam[0]), 0.0)
        if float(lam[-1]) < floor:
            raise ValueError(
                f"matrix is not positive semidefinite: min eigenvalue "
                f"{float(lam[-1]):.3e} below tolerance floor {floor:.3e}"
            )

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def dim(self) -> int:
        return self._matrix.shape[0]

    @property
    def rank_tolerance(self) -> float:
        return self._rank_tolerance

    @property
    def spectrum(self) -> Spectrum:
        return self._spectrum

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues sorted decreasing, with roundoff negatives clamped to 0."""
        return np.maximum(self._spectrum.eigenvalues, 0.0)

    def rank(self, tol: float | None = None) -> int:
        """Numerical rank at the given (or the instance's) relative cutoff."""
        return numerical_rank(self._spectrum, self._rank_tolerance if tol is None else tol)

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim}, rank={self.rank()})"


def purity(rho: DensityMatrix) -> float:
    """Tr(rho^2), between 1/d (maximally mixed) and 1 (pure)."""
    lam = rho.eigenvalues()
    return float(np.sum(lam * lam))


def linear_entropy(rho: DensityMatrix) -> float:
    """1 - Tr(rho^2), between 0 (pure) and 1 - 1/d (maximally mixed)."""
    return 1.0 - purity(rho)


def projector_state(d: int, r: int, offset: int = 0,
                    rank_tolerance: float = DEFAULT_RANK_TOL) -> DensityMatrix:
    """The state Pi/r for Pi the projector onto basis vectors [offset, offset+r).

    Rank is exactly ``r``; ``r == d`` (with offset 0) gives the maximally
    mixed state.
    """
    if r < 1:
        raise ValueError(f"rank must be >= 1, got {r}")
    if offset < 0 or offset + r > d:
        raise ValueError(f"projector [{offset}, {offset + r}) does not fit in dim {d}")
    diag = np.zeros(d)
    diag[offset:offset + r] = 1.0 / r
    return DensityMatrix(np.diag(diag).astype(complex), rank_tolerance=rank_tolerance)
