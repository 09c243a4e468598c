"""Monte Carlo experiments: bound-verification sweeps, worked-example tables, and
the search for counterexamples to the multiplicative-entropy conjecture.

Every experiment is deterministic in its seed: sample ``index`` under seed
``s`` always uses ``RngStream(s, index)``, so any record can be regenerated
from the coordinates (dim, index, seed) it carries.
"""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bounds import BOUND_SLACK, BoundReport, build_report, reduced_rank
from .metrics import Q_DEGENERACY_TOL, distances, hs_distance, trace_distance
from .sampling import (
    RngStream,
    UniformRank,
    draw_state,
    fig1_rho,
    fig1_sigma,
    ginibre_fixed_rank,
    haar_pure,
)
from .states import DEFAULT_RANK_TOL, DensityMatrix, projector_state, purity

# A conjecture violation is only reported when its margin clears this floor,
# so that independent recomputation cannot flip the sign.
MARGIN_FLOOR = 1e-9

# Residual tolerance for the exact identity D^2 = HS/2 on pure-pure pairs.
PURE_IDENTITY_TOL = 1e-10

# Arithmetic-only comparisons (bound orderings) get a much tighter slack than
# the eigensolver-limited ones.
ORDERING_SLACK = 1e-12


@dataclass(frozen=True)
class SampleRecord:
    """One verified pair: ranks, distances, every upper bound, check flags.

    ``index`` is the RNG stream index of the draw, which together with the
    run's (dim, seed) reproduces the pair exactly.
    """

    index: int
    d: int
    rank_rho: int
    rank_sigma: int
    reduced_rank: float
    trace_distance: float
    hs_distance: float
    q_ratio: float | None
    upper_reduced_rank: float
    upper_norm_equivalence: float
    upper_rank_sum: float
    upper_entropy_half_sum: float
    upper_entropy_min: float
    signed_rank_ok: bool
    weyl_ok: bool


@dataclass(frozen=True)
class ExperimentSummary:
    n_samples: int
    violations: int
    max_q_over_r: float
    min_q: float
    runtime_seconds: float
    seed: int
    redraws: int = 0
    failures: tuple[str, ...] = ()


def record_from_report(index: int, report: BoundReport) -> SampleRecord:
    return SampleRecord(
        index=index,
        d=report.dim,
        rank_rho=report.rank_rho,
        rank_sigma=report.rank_sigma,
        reduced_rank=report.reduced_rank,
        trace_distance=report.trace_distance,
        hs_distance=report.hs_distance,
        q_ratio=report.q_ratio,
        upper_reduced_rank=report.upper_reduced_rank,
        upper_norm_equivalence=report.upper_norm_equivalence,
        upper_rank_sum=report.upper_rank_sum,
        upper_entropy_half_sum=report.upper_entropy_half_sum,
        upper_entropy_min=report.upper_entropy_min,
        signed_rank_ok=report.signed_rank_ok,
        weyl_ok=report.weyl_ok,
    )


def record_violations(rec: SampleRecord, slack: float = BOUND_SLACK) -> list[str]:
    """All bound/consistency violations in one record; empty means certified.

    Q-chain checks are skipped when Q is absent (equal states). This is the
    single checking routine used by every sweep, so a deliberately corrupted
    record is guaranteed to be reported.
    """
    out = []
    d2 = rec.trace_distance**2
    if rec.q_ratio is not None:
        if rec.q_ratio < 0.5 - slack:
            out.append(f"Q below 1/2: Q={rec.q_ratio!r}")
        cap = min(rec.reduced_rank, rec.d / 4.0)
        if rec.q_ratio > cap + slack:
            out.append(f"Q above min(R, d/4): Q={rec.q_ratio!r} cap={cap!r}")
    if 0.5 * rec.hs_distance > d2 + slack:
        out.append(f"lower bound HS/2 exceeded D^2: hs={rec.hs_distance!r} D^2={d2!r}")
    for name, upper in (
        ("reduced-rank", rec.upper_reduced_rank),
        ("norm-equivalence", rec.upper_norm_equivalence),
        ("rank-sum", rec.upper_rank_sum),
        ("entropy-half-sum", rec.upper_entropy_half_sum),
        ("entropy-min", rec.upper_entropy_min),
    ):
        if d2 > upper + slack:
            out.append(f"{name} upper bound violated: D^2={d2!r} bound={upper!r}")
    if rec.upper_reduced_rank > rec.upper_rank_sum + ORDERING_SLACK:
        out.append("ordering violated: reduced-rank bound above rank-sum bound")
    if rec.rank_rho + rec.rank_sigma <= rec.d:
        if rec.upper_rank_sum > rec.upper_norm_equivalence + ORDERING_SLACK:
            out.append("ordering violated: rank-sum bound above norm-equivalence bound")
    if rec.reduced_rank > min(rec.rank_rho, rec.rank_sigma) + ORDERING_SLACK:
        out.append("reduced rank exceeds min(rank_rho, rank_sigma)")
    if not rec.signed_rank_ok:
        out.append("signed-part rank check failed")
    if not rec.weyl_ok:
        out.append("Weyl eigenvalue check failed")
    return out


def _figure1_sample(d: int, seed: int, index: int, rank_tol: float) -> tuple[SampleRecord, int]:
    """Draw pair #index (redrawing while the states coincide) and certify it."""
    stream = RngStream(seed, index)
    redraws = 0
    while True:
        rho = fig1_rho(d, stream)
        sigma = fig1_sigma(d, stream)
        if hs_distance(rho, sigma) > Q_DEGENERACY_TOL:
            break
        redraws += 1
    report = build_report(rho, sigma, rank_tol)
    return record_from_report(index, report), redraws


def run_figure1(d: int, n: int, seed: int = 0, rank_tol: float = DEFAULT_RANK_TOL,
                workers: int = 1) -> tuple[list[SampleRecord], ExperimentSummary]:
    """Verify the bound chain on n random pairs; records sorted by increasing R.

    Pairs draw rho from the bounded-rank ensemble and sigma from the
    uniform-rank-and-purity ensemble. Each sample has its own RNG stream, so
    the output is identical for any ``workers`` count; sorting is stable by
    (reduced rank, index).
    """
    if not 4 <= d <= 64:
        raise ValueError(f"dimension must be in [4, 64], got {d}")
    if n < 1:
        raise ValueError(f"sample count must be >= 1, got {n}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    t0 = time.perf_counter()
    if workers == 1:
        results = [_figure1_sample(d, seed, i, rank_tol) for i in range(n)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda i: _figure1_sample(d, seed, i, rank_tol), range(n)))
    records = sorted((rec for rec, _ in results), key=lambda r: (r.reduced_rank, r.index))
    redraws = sum(extra for _, extra in results)

    failures = []
    for rec in records:
        for msg in record_violations(rec):
            failures.append(f"d={d} index={rec.index} seed={seed}: {msg}")
    summary = ExperimentSummary(
        n_samples=n,
        violations=len(failures),
        max_q_over_r=max(rec.q_ratio / rec.reduced_rank for rec in records),
        min_q=min(rec.q_ratio for rec in records),
        runtime_seconds=time.perf_counter() - t0,
        seed=seed,
        redraws=redraws,
        failures=tuple(failures),
    )
    return records, summary


@dataclass(frozen=True)
class ExampleRow:
    """Computed vs expected distances for one analytically solvable pair."""

    family: str
    d: int
    r: int
    s: int | None
    trace_distance: float | None
    hs_distance: float | None
    q_ratio: float | None
    expected_trace_distance: float | None
    expected_hs_distance: float | None
    expected_q: float | None
    residual: float | None
    note: str = ""


def examples_table(d: int) -> list[ExampleRow]:
    """Closed-form families evaluated with the generic machinery.

    Family "projector_vs_mixed": rho = Pi_r/r against the maximally mixed
    state. The difference is diagonal with entries (1/r - 1/d) on the
    support and -1/d off it, giving D = (d-r)/d, HS = (d-r)/(d*r) and
    Q = R * (d^2 - r^2) / d^2. The r = d row degenerates to equal states
    and is skipped.

    Family "orthogonal_projectors": rho = Pi_r/r and sigma = Pi_s/s on
    disjoint supports (r + s <= d), giving D = 1, HS = (r+s)/(r*s), and
    Q = R exactly, i.e. the reduced-rank bound is saturated.
    """
    if d < 4:
        raise ValueError(f"dimension must be >= 4, got {d}")
    rows = []
    mixed = projector_state(d, d)
    for r in range(1, d + 1):
        if r == d:
            rows.append(ExampleRow(
                family="projector_vs_mixed", d=d, r=r, s=None,
                trace_distance=None, hs_distance=None, q_ratio=None,
                expected_trace_distance=None, expected_hs_distance=None,
                expected_q=None, residual=None, note="states equal",
            ))
            continue
        rho = projector_state(d, r)
        pair = distances(rho, mixed)
        want_td = (d - r) / d
        want_hs = (d - r) / (d * r)
        want_q = reduced_rank(r, d) * (d * d - r * r) / (d * d)
        residual = max(abs(pair.trace_distance - want_td),
                       abs(pair.hs_distance - want_hs),
                       abs(pair.q_ratio - want_q))
        rows.append(ExampleRow(
            family="projector_vs_mixed", d=d, r=r, s=None,
            trace_distance=pair.trace_distance, hs_distance=pair.hs_distance,
            q_ratio=pair.q_ratio, expected_trace_distance=want_td,
            expected_hs_distance=want_hs, expected_q=want_q, residual=residual,
        ))
    for r in range(1, d):
        for s in range(1, d - r + 1):
            rho = projector_state(d, r, offset=0)
            sigma = projector_state(d, s, offset=r)
            pair = distances(rho, sigma)
            want_hs = (r + s) / (r * s)
            want_q = reduced_rank(r, s)
            residual = max(abs(pair.trace_distance - 1.0),
                           abs(pair.hs_distance - want_hs),
                           abs(pair.q_ratio - want_q))
            rows.append(ExampleRow(
                family="orthogonal_projectors", d=d, r=r, s=s,
                trace_distance=pair.trace_distance, hs_distance=pair.hs_distance,
                q_ratio=pair.q_ratio, expected_trace_distance=1.0,
                expected_hs_distance=want_hs, expected_q=want_q, residual=residual,
            ))
    return rows


@dataclass(frozen=True)
class ConjectureSearchResult:
    """Outcome of the search for D^2 > HS / Tr(rho^2).

    When ``found``, the pair regenerates from (d, seed, index) via
    :func:`conjecture_candidate` and the margin recomputes positive.
    """

    found: bool
    d: int
    seed: int
    budget: int
    candidates_tried: int
    index: int | None = None
    kind: str | None = None
    margin: float | None = None

    @property
    def exhausted(self) -> bool:
        return not self.found


def conjecture_margin(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """D^2 - HS / Tr(rho^2); positive means the conjectured bound fails."""
    td = trace_distance(rho, sigma)
    return td * td - hs_distance(rho, sigma) / purity(rho)


# Three structured candidates for every ensemble candidate: random search
# alone essentially never hits a violation (none in 2e4 ensemble pairs while
# prototyping), whereas the structured family below violates over half the
# time.
STRUCTURED_PERIOD = 4


def conjecture_candidate(d: int, seed: int, index: int) -> tuple[DensityMatrix, DensityMatrix, str]:
    """Candidate pair #index for the conjecture search, deterministic in (d, seed, index).

    Structured candidates are diagonal: rho puts a spiky weight vector w on a
    small support; sigma shaves every support weight by the same t and
    spreads the removed mass uniformly on the complement. The difference then
    has a flat positive part on the support and a flat negative part off it,
    which keeps both normalized parts spread out while rho itself stays high
    purity - exactly the regime where D^2 can exceed HS / Tr(rho^2).

    Ensemble candidates pair a rank >= 2 Ginibre state with a draw from the
    uniform-rank-and-purity ensemble. Rank-1 rho is never produced: for pure
    rho the conjectured bound reduces to the proven D^2 <= HS, so the search
    skips it.
    """
    rng = RngStream(seed, index)
    if d >= 3 and index % STRUCTURED_PERIOD != STRUCTURED_PERIOD - 1:
        h = rng.integer(2, max(2, d // 2))
        g = rng.standard_gamma(0.5, h)
        total = float(g.sum())
        if total > 0:
            w = np.sort(g / total)[::-1]
        else:
            w = np.full(h, 1.0 / h)
        t = rng.uniform(0.0, float(w[-1]))
        p = np.zeros(d)
        p[:h] = w
        q = np.zeros(d)
        q[:h] = w - t
        q[h:] = h * t / (d - h)
        rho = DensityMatrix(np.diag(p).astype(complex))
        sigma = DensityMatrix(np.diag(q).astype(complex))
        return rho, sigma, "structured"
    r = rng.integer(2, max(2, d // 4))
    rho = ginibre_fixed_rank(d, r, rng)
    sigma = fig1_sigma(d, rng)
    return rho, sigma, "ensemble"


def find_conjecture_counterexample(d: int, budget: int, seed: int = 0) -> ConjectureSearchResult:
    """Search up to ``budget`` candidate pairs for a violation of D^2 <= HS / Tr(rho^2)."""
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    for index in range(budget):
        rho, sigma, kind = conjecture_candidate(d, seed, index)
        margin = conjecture_margin(rho, sigma)
        if margin > MARGIN_FLOOR:
            return ConjectureSearchResult(found=True, d=d, seed=seed, budget=budget,
                                          candidates_tried=index + 1, index=index,
                                          kind=kind, margin=margin)
    return ConjectureSearchResult(found=False, d=d, seed=seed, budget=budget,
                                  candidates_tried=budget)


def mixed_pair(d: int, kind: int, stream: RngStream) -> tuple[DensityMatrix, DensityMatrix]:
    """One pair from a rotation of five pair ensembles (selected by kind mod 5).

    0: bounded-rank Ginibre vs uniform rank-and-purity
    1: two full-range Ginibre states
    2: Haar pure vs uniform rank-and-purity
    3: two Haar pure states
    4: two orthogonal projector states with random ranks
    """
    k = kind % 5
    if k == 0:
        rho = draw_state(d, UniformRank(1, max(1, d // 4)), "ensemble_natural", stream)
        sigma = fig1_sigma(d, stream)
    elif k == 1:
        rho = draw_state(d, UniformRank(1, d), "ensemble_natural", stream)
        sigma = draw_state(d, UniformRank(1, d), "ensemble_natural", stream)
    elif k == 2:
        rho = haar_pure(d, stream)
        sigma = fig1_sigma(d, stream)
    elif k == 3:
        rho = haar_pure(d, stream)
        sigma = haar_pure(d, stream)
    else:
        r = stream.integer(1, d - 1)
        s = stream.integer(1, d - r)
        rho = projector_state(d, r, offset=0)
        sigma = projector_state(d, s, offset=r)
    return rho, sigma


def verify_sweep(dims: list[int], n_per_dim: int, seed: int = 0,
                 rank_tol: float = DEFAULT_RANK_TOL) -> ExperimentSummary:
    """Run every bound and consistency check over mixed ensembles at each dimension.

    Pure-pure pairs additionally get the exact-identity check
    |D^2 - HS/2| <= 1e-10. Any failure is recorded with its reproduction
    coordinates (dim, sample index, seed) in ``summary.failures``.
    """
    if not dims:
        raise ValueError("dims must be nonempty")
    if any(d < 2 for d in dims):
        raise ValueError(f"dimensions must be >= 2, got {dims}")
    if n_per_dim < 1:
        raise ValueError(f"n_per_dim must be >= 1, got {n_per_dim}")
    t0 = time.perf_counter()
    failures = []
    max_qr = -np.inf
    min_q = np.inf
    n_total = 0
    for dim_pos, d in enumerate(dims):
        for i in range(n_per_dim):
            stream = RngStream(seed, dim_pos * n_per_dim + i)
            rho, sigma = mixed_pair(d, i, stream)
            report = build_report(rho, sigma, rank_tol)
            rec = record_from_report(i, report)
            n_total += 1
            coords = f"dim={d} index={i} seed={seed}"
            for msg in record_violations(rec):
                failures.append(f"{coords}: {msg}")
            if rec.q_ratio is not None:
                max_qr = max(max_qr, rec.q_ratio / rec.reduced_rank)
                min_q = min(min_q, rec.q_ratio)
            if i % 5 == 3:  # both Haar pure by construction
                resid = abs(rec.trace_distance**2 - 0.5 * rec.hs_distance)
                if resid > PURE_IDENTITY_TOL:
                    failures.append(f"{coords}: pure-pair identity residual {resid!r}")
    return ExperimentSummary(
        n_samples=n_total,
        violations=len(failures),
        max_q_over_r=float(max_qr),
        min_q=float(min_q),
        runtime_seconds=time.perf_counter() - t0,
        seed=seed,
        failures=tuple(failures),
    )
