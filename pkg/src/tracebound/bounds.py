"""Upper and lower bounds relating D(rho,sigma)^2 to D_HS(rho,sigma), plus per-pair certificates.

Bound inventory, writing D for the trace distance, HS for the
Hilbert-Schmidt distance, r/s for the state ranks and SL for linear entropy:

- lower bound:            HS / 2 <= D^2                       (always)
- norm equivalence:       D^2 <= (d / 4) * HS                 (always)
- rank sum:               D^2 <= ((r + s) / 4) * HS           (always)
- reduced rank:           D^2 <= R * HS, R = r*s / (r + s)    (always, tightest rank bound)
- entropy, half-sum form: D^2 <= (HS + SL(rho) + SL(sigma)) / 2
- entropy, min form:      D^2 <= HS + min(SL(rho), SL(sigma))

The reduced-rank bound dominates the rank-sum bound, which in turn dominates
norm equivalence whenever r + s <= d. The entropy bounds are additive and can
win for low-entropy full-rank states, so the certificate keeps all of them.
"""

from dataclasses import dataclass

import numpy as np

from .metrics import Q_DEGENERACY_TOL, SignedDecomposition, split_signed_parts
from .states import DEFAULT_RANK_TOL, DensityMatrix, Spectrum, hermitian_eig, linear_entropy, numerical_rank

# Additive slack for verifying bound inequalities numerically (d <= 64);
# covers accumulated eigensolver error.
BOUND_SLACK = 1e-9


def reduced_rank(rank_rho: int, rank_sigma: int) -> float:
    """r*s / (r + s); at most min(r, s), between 1/2 and d/4 for d-dim states."""
    if rank_rho < 1 or rank_sigma < 1:
        raise ValueError(f"ranks must be >= 1, got ({rank_rho}, {rank_sigma})")
    return rank_rho * rank_sigma / (rank_rho + rank_sigma)


def norm_equivalence_upper(d: int, hs: float) -> float:
    """(d / 4) * HS, the bound available without any rank knowledge."""
    return d * hs / 4.0


def rank_sum_upper(rank_rho: int, rank_sigma: int, hs: float) -> float:
    """((r + s) / 4) * HS, from subadditivity of the rank."""
    return (rank_rho + rank_sigma) * hs / 4.0


def reduced_rank_upper(rank_rho: int, rank_sigma: int, hs: float) -> float:
    """R * HS with R the reduced rank; the tightest of the rank-based bounds."""
    return reduced_rank(rank_rho, rank_sigma) * hs


def entropy_half_sum_upper(hs: float, sl_rho: float, sl_sigma: float) -> float:
    """(HS + SL(rho) + SL(sigma)) / 2; tight when both states are pure."""
    return 0.5 * (hs + sl_rho + sl_sigma)


def entropy_min_upper(hs: float, sl_rho: float, sl_sigma: float) -> float:
    """HS + min(SL(rho), SL(sigma)); reduces to D^2 <= HS when one state is pure."""
    return hs + min(sl_rho, sl_sigma)


@dataclass(frozen=True)
class SignedRankCheck:
    """Outcome of the rank-domination check rank(Delta_+-) <= rank(rho/sigma)."""

    ok: bool
    rank_delta_plus: int
    rank_delta_minus: int
    rank_rho: int
    rank_sigma: int


def check_signed_rank_bound(sd: SignedDecomposition, rank_rho: int, rank_sigma: int,
                            tol: float = DEFAULT_RANK_TOL) -> SignedRankCheck:
    """Verify rank(Delta_plus) <= rank(rho) and rank(Delta_minus) <= rank(sigma)."""
    rank_plus = numerical_rank(sd.plus_spectrum, tol)
    rank_minus = numerical_rank(sd.minus_spectrum, tol)
    ok = rank_plus <= rank_rho and rank_minus <= rank_sigma
    return SignedRankCheck(ok=ok, rank_delta_plus=rank_plus, rank_delta_minus=rank_minus,
                           rank_rho=rank_rho, rank_sigma=rank_sigma)


def check_weyl(rho_spec: Spectrum, sigma_spec: Spectrum, delta_spec: Spectrum,
               tol: float = BOUND_SLACK) -> bool:
    """Weyl's inequality for rho = Delta + sigma and sigma = (-Delta) + rho.

    With all spectra sorted decreasing this requires r_j >= delta_j and
    s_j >= deltabar_j for every j, where deltabar is the sorted spectrum
    of sigma - rho.
    """
    r = rho_spec.eigenvalues
    s = sigma_spec.eigenvalues
    delta = delta_spec.eigenvalues
    delta_bar = -delta[::-1]  # sorted decreasing spectrum of -Delta
    return bool(np.all(r >= delta - tol) and np.all(s >= delta_bar - tol))


@dataclass(frozen=True)
class BoundReport:
    """Every distance, rank, and bound value for one state pair.

    ``best_upper`` is the minimum of the five upper bounds on D^2. The wire
    names used by the CSV/JSON serializers are noted where they differ.
    """

    dim: int
    rank_rho: int
    rank_sigma: int
    reduced_rank: float
    trace_distance: float
    hs_distance: float
    q_ratio: float | None
    lower_half_hs: float
    upper_norm_equivalence: float     # ub_norm_equiv
    upper_rank_sum: float             # ub_rank_sum
    upper_reduced_rank: float         # ub_theorem1
    upper_entropy_half_sum: float     # ub_entropy_p2
    upper_entropy_min: float          # ub_entropy_p3
    best_upper: float
    signed_rank_ok: bool              # lemma1_ok
    weyl_ok: bool
    rank_tol: float


def build_report(rho: DensityMatrix, sigma: DensityMatrix,
                 rank_tol: float | None = None) -> BoundReport:
    """Compute all distances, bounds, and consistency checks for one pair.

    ``rank_tol`` defaults to the relative cutoff carried by ``rho``. One
    diagonalization of rho - sigma feeds the trace distance, the signed
    decomposition, and the Weyl check; the Hilbert-Schmidt distance is
    entrywise.
    """
    if rho.dim != sigma.dim:
        raise ValueError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")
    d = rho.dim
    tol = rho.rank_tolerance if rank_tol is None else rank_tol

    delta_spec = hermitian_eig(rho.matrix - sigma.matrix)
    sd = split_signed_parts(delta_spec)
    td = 0.5 * float(np.sum(np.abs(delta_spec.eigenvalues)))
    diff = rho.matrix - sigma.matrix
    hs = float(np.real(np.vdot(diff, diff)))
    q = td * td / hs if hs > Q_DEGENERACY_TOL else None

    rank_rho = rho.rank(tol)
    rank_sigma = sigma.rank(tol)
    sl_rho = linear_entropy(rho)
    sl_sigma = linear_entropy(sigma)

    uppers = (
        norm_equivalence_upper(d, hs),
        rank_sum_upper(rank_rho, rank_sigma, hs),
        reduced_rank_upper(rank_rho, rank_sigma, hs),
        entropy_half_sum_upper(hs, sl_rho, sl_sigma),
        entropy_min_upper(hs, sl_rho, sl_sigma),
    )
    lemma = check_signed_rank_bound(sd, rank_rho, rank_sigma, tol)
    weyl = check_weyl(rho.spectrum, sigma.spectrum, delta_spec)

    return BoundReport(
        dim=d,
        rank_rho=rank_rho,
        rank_sigma=rank_sigma,
        reduced_rank=reduced_rank(rank_rho, rank_sigma),
        trace_distance=td,
        hs_distance=hs,
        q_ratio=q,
        lower_half_hs=0.5 * hs,
        upper_norm_equivalence=uppers[0],
        upper_rank_sum=uppers[1],
        upper_reduced_rank=uppers[2],
        upper_entropy_half_sum=uppers[3],
        upper_entropy_min=uppers[4],
        best_upper=min(uppers),
        signed_rank_ok=lemma.ok,
        weyl_ok=weyl,
        rank_tol=tol,
    )
