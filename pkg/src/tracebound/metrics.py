"""Distance metrics between density matrices and the signed split of their difference."""

from dataclasses import dataclass

import numpy as np

from .states import DensityMatrix, Spectrum, hermitian_eig

# Eigenvalues of rho - sigma with |value| at or below this cutoff belong to
# neither the positive nor the negative part, keeping the part ranks minimal.
SIGN_SPLIT_TOL = 1e-12

# Below this Hilbert-Schmidt distance the states are treated as equal and the
# ratio Q = D^2 / D_HS is reported as absent rather than a huge/NaN number.
Q_DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class SignedDecomposition:
    """Split of Delta = rho - sigma into orthogonal PSD parts Delta = plus - minus.

    The part spectra are assembled directly from the eigenpairs of Delta
    (positive eigenvalues feed the plus part, negated negative ones the minus
    part, near-zero ones neither), so no extra diagonalization happens.
    """

    delta_plus: np.ndarray
    delta_minus: np.ndarray
    plus_spectrum: Spectrum
    minus_spectrum: Spectrum

    @property
    def dim(self) -> int:
        return self.delta_plus.shape[0]


@dataclass(frozen=True)
class DistancePair:
    """Trace distance, Hilbert-Schmidt distance, and their ratio Q = D^2 / D_HS.

    ``q_ratio`` is None when the states are equal up to ``Q_DEGENERACY_TOL``.
    """

    trace_distance: float
    hs_distance: float
    q_ratio: float | None


def _check_same_dim(rho: DensityMatrix, sigma: DensityMatrix) -> None:
    if rho.dim != sigma.dim:
        raise ValueError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")


def split_signed_parts(delta_spectrum: Spectrum) -> SignedDecomposition:
    """Build the signed decomposition from an already computed spectrum of Delta."""
    w = delta_spectrum.eigenvalues
    v = delta_spectrum.eigenvectors
    d = w.shape[0]
    pos = w > SIGN_SPLIT_TOL
    neg = w < -SIGN_SPLIT_TOL

    n_pos = int(np.count_nonzero(pos))
    n_neg = int(np.count_nonzero(neg))
    if n_pos:
        delta_plus = (v[:, pos] * w[pos]) @ v[:, pos].conj().T
    else:
        delta_plus = np.zeros((d, d), dtype=complex)
    if n_neg:
        delta_minus = (v[:, neg] * (-w[neg])) @ v[:, neg].conj().T
    else:
        delta_minus = np.zeros((d, d), dtype=complex)

    # w is sorted decreasing, so positive entries are already in decreasing
    # order and negated negatives must be reversed to be decreasing.
    plus_eigs = np.concatenate([w[pos], np.zeros(d - n_pos)])
    plus_vecs = np.concatenate([v[:, pos], v[:, ~pos]], axis=1)
    minus_eigs = np.concatenate([-w[neg][::-1], np.zeros(d - n_neg)])
    minus_vecs = np.concatenate([v[:, neg][:, ::-1], v[:, ~neg]], axis=1)

    return SignedDecomposition(
        delta_plus=delta_plus,
        delta_minus=delta_minus,
        plus_spectrum=Spectrum(eigenvalues=plus_eigs, eigenvectors=plus_vecs),
        minus_spectrum=Spectrum(eigenvalues=minus_eigs, eigenvectors=minus_vecs),
    )


def signed_decomposition(rho: DensityMatrix, sigma: DensityMatrix) -> SignedDecomposition:
    """Orthogonal split rho - sigma = Delta_plus - Delta_minus with both parts PSD."""
    _check_same_dim(rho, sigma)
    return split_signed_parts(hermitian_eig(rho.matrix - sigma.matrix))


def trace_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """D(rho, sigma) = half the sum of absolute eigenvalues of rho - sigma."""
    _check_same_dim(rho, sigma)
    eigs = np.linalg.eigvalsh(rho.matrix - sigma.matrix)
    return 0.5 * float(np.sum(np.abs(eigs)))


def hs_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Tr[(rho - sigma)^2], computed entrywise so no diagonalization is needed."""
    _check_same_dim(rho, sigma)
    diff = rho.matrix - sigma.matrix
    return float(np.real(np.vdot(diff, diff)))


def q_ratio(rho: DensityMatrix, sigma: DensityMatrix) -> float | None:
    """D^2 / D_HS, or None when D_HS is below the degeneracy cutoff (rho ~ sigma)."""
    hs = hs_distance(rho, sigma)
    if hs <= Q_DEGENERACY_TOL:
        return None
    td = trace_distance(rho, sigma)
    return td * td / hs


def distances(rho: DensityMatrix, sigma: DensityMatrix) -> DistancePair:
    """Both distances plus the ratio Q in one call."""
    _check_same_dim(rho, sigma)
    td = trace_distance(rho, sigma)
    hs = hs_distance(rho, sigma)
    q = td * td / hs if hs > Q_DEGENERACY_TOL else None
    return DistancePair(trace_distance=td, hs_distance=hs, q_ratio=q)
