"""Command-line front end: subcommands, CSV/JSON serialization, exit codes.

Exit codes: 0 success, 1 bound violation (coordinates on stderr), 2 usage
error. All floats serialize with 17 significant digits, which round-trips
64-bit values exactly; output bytes are identical across runs and worker
counts for fixed flags.
"""

import argparse
import sys
from dataclasses import dataclass

from .experiments import (
    ConjectureSearchResult,
    ExampleRow,
    ExperimentSummary,
    SampleRecord,
    conjecture_candidate,
    conjecture_margin,
    examples_table,
    find_conjecture_counterexample,
    run_figure1,
    verify_sweep,
)
from .states import DEFAULT_RANK_TOL

FIGURE1_CSV_HEADER = ("index,d,rank_rho,rank_sigma,R,trace_dist,hs_dist,Q,"
                      "ub_theorem1,ub_norm_equiv,ub_rank_sum,ub_entropy_p2,"
                      "ub_entropy_p3,lemma1_ok,weyl_ok")
EXAMPLES_CSV_HEADER = ("family,d,r,s,trace_dist,hs_dist,Q,expected_trace_dist,"
                       "expected_hs_dist,expected_Q,residual,note")
SUMMARY_CSV_HEADER = "n_samples,violations,max_q_over_r,min_q,runtime_seconds,seed,redraws"
COUNTEREXAMPLE_CSV_HEADER = "found,d,seed,budget,candidates_tried,index,kind,margin"

EXAMPLES_RESIDUAL_TOL = 1e-10
DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class CliConfig:
    """Parsed flags for one invocation; defaults mirror the standard run."""

    command: str
    dim: int = 16
    samples: int = 20000
    seed: int = 0
    rank_tol: float = DEFAULT_RANK_TOL
    out_path: str | None = None
    format: str = "csv"
    workers: int = 1
    budget: int = DEFAULT_BUDGET
    plot_path: str | None = None


def _fmt_float(x: float) -> str:
    return f"{x:.17g}"


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return _fmt_float(v)
    return str(v)


def _json_scalar(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return _fmt_float(v)
    escaped = str(v).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def _json_object(fields: list[tuple[str, object]]) -> str:
    return "{" + ", ".join(f'"{k}": {_json_scalar(v)}' for k, v in fields) + "}"


def record_wire_fields(rec: SampleRecord) -> list[tuple[str, object]]:
    """Field order and wire names of one sample record (matches the CSV header)."""
    return [
        ("index", rec.index),
        ("d", rec.d),
        ("rank_rho", rec.rank_rho),
        ("rank_sigma", rec.rank_sigma),
        ("R", rec.reduced_rank),
        ("trace_dist", rec.trace_distance),
        ("hs_dist", rec.hs_distance),
        ("Q", rec.q_ratio),
        ("ub_theorem1", rec.upper_reduced_rank),
        ("ub_norm_equiv", rec.upper_norm_equivalence),
        ("ub_rank_sum", rec.upper_rank_sum),
        ("ub_entropy_p2", rec.upper_entropy_half_sum),
        ("ub_entropy_p3", rec.upper_entropy_min),
        ("lemma1_ok", rec.signed_rank_ok),
        ("weyl_ok", rec.weyl_ok),
    ]


def summary_wire_fields(summary: ExperimentSummary) -> list[tuple[str, object]]:
    return [
        ("n_samples", summary.n_samples),
        ("violations", summary.violations),
        ("max_q_over_r", summary.max_q_over_r),
        ("min_q", summary.min_q),
        ("runtime_seconds", summary.runtime_seconds),
        ("seed", summary.seed),
        ("redraws", summary.redraws),
    ]


def example_wire_fields(row: ExampleRow) -> list[tuple[str, object]]:
    return [
        ("family", row.family),
        ("d", row.d),
        ("r", row.r),
        ("s", row.s),
        ("trace_dist", row.trace_distance),
        ("hs_dist", row.hs_distance),
        ("Q", row.q_ratio),
        ("expected_trace_dist", row.expected_trace_distance),
        ("expected_hs_dist", row.expected_hs_distance),
        ("expected_Q", row.expected_q),
        ("residual", row.residual),
        ("note", row.note),
    ]


def _csv_table(header: str, rows: list[list[tuple[str, object]]]) -> str:
    lines = [header]
    for fields in rows:
        keys = ",".join(k for k, _ in fields)
        if keys != header:
            raise AssertionError(f"wire fields {keys} do not match header {header}")
        lines.append(",".join(_cell(v) for _, v in fields))
    return "\n".join(lines) + "\n"


def records_csv(records: list[SampleRecord]) -> str:
    return _csv_table(FIGURE1_CSV_HEADER, [record_wire_fields(r) for r in records])


def records_json(records: list[SampleRecord], summary: ExperimentSummary) -> str:
    body = ",\n".join("  " + _json_object(record_wire_fields(r)) for r in records)
    return ('{\n"records": [\n' + body + "\n],\n"
            '"summary": ' + _json_object(summary_wire_fields(summary)) + "\n}\n")


def _write_output(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tracebound",
        description="Certify trace-distance vs Hilbert-Schmidt-distance bounds "
                    "on random and analytically solvable density-matrix pairs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fig = sub.add_parser("figure1", help="verify the bound chain on random pairs; "
                                         "one CSV/JSON row per pair, sorted by R")
    fig.add_argument("--dim", type=int, default=16, help="Hilbert-space dimension (4..64)")
    fig.add_argument("--samples", type=int, default=20000, help="number of random pairs")
    fig.add_argument("--seed", type=int, default=0, help="64-bit RNG seed")
    fig.add_argument("--rank-tol", type=float, default=DEFAULT_RANK_TOL, dest="rank_tol",
                     help="relative eigenvalue cutoff for numerical ranks")
    fig.add_argument("--workers", type=int, default=1,
                     help="thread count; output is identical for any value")
    fig.add_argument("--out", default=None, help="output file (default: stdout)")
    fig.add_argument("--format", choices=("csv", "json"), default="csv")
    fig.add_argument("--plot", default=None, dest="plot",
                     help="also render the Q scatter with bound curves to this file")

    exa = sub.add_parser("examples", help="closed-form projector families: computed vs "
                                          "expected distances with residuals")
    exa.add_argument("--dim", type=int, default=16, help="Hilbert-space dimension (>= 4)")
    exa.add_argument("--out", default=None, help="write CSV/JSON here instead of a table")
    exa.add_argument("--format", choices=("csv", "json"), default="csv")

    ver = sub.add_parser("verify", help="run every bound and consistency check over "
                                        "mixed ensembles at one dimension")
    ver.add_argument("--dim", type=int, default=16, help="Hilbert-space dimension (>= 2)")
    ver.add_argument("--samples", type=int, default=20000, help="number of pairs")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--rank-tol", type=float, default=DEFAULT_RANK_TOL, dest="rank_tol")
    ver.add_argument("--out", default=None, help="write the summary as CSV/JSON here")
    ver.add_argument("--format", choices=("csv", "json"), default="csv")

    cex = sub.add_parser("counterexample", help="search for a pair violating the "
                                                "conjectured bound D^2 <= HS / Tr(rho^2)")
    cex.add_argument("--dim", type=int, default=16, help="Hilbert-space dimension (>= 2)")
    cex.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                     help="maximum number of candidate pairs")
    cex.add_argument("--seed", type=int, default=0)
    cex.add_argument("--out", default=None, help="write the result as CSV/JSON here")
    cex.add_argument("--format", choices=("csv", "json"), default="csv")

    return parser


def config_from_args(args: argparse.Namespace) -> CliConfig:
    return CliConfig(
        command=args.command,
        dim=args.dim,
        samples=getattr(args, "samples", 20000),
        seed=getattr(args, "seed", 0),
        rank_tol=getattr(args, "rank_tol", DEFAULT_RANK_TOL),
        out_path=getattr(args, "out", None),
        format=getattr(args, "format", "csv"),
        workers=getattr(args, "workers", 1),
        budget=getattr(args, "budget", DEFAULT_BUDGET),
        plot_path=getattr(args, "plot", None),
    )


def _print_failures(failures: tuple[str, ...]) -> None:
    for line in failures:
        print(f"VIOLATION {line}", file=sys.stderr)


def _cmd_figure1(cfg: CliConfig) -> int:
    records, summary = run_figure1(cfg.dim, cfg.samples, cfg.seed,
                                   rank_tol=cfg.rank_tol, workers=cfg.workers)
    if cfg.format == "csv":
        _write_output(records_csv(records), cfg.out_path)
    else:
        _write_output(records_json(records, summary), cfg.out_path)
    if cfg.plot_path is not None:
        from .plotting import render_figure1
        render_figure1(records, cfg.dim, cfg.plot_path)
    print(f"figure1: d={cfg.dim} n_samples={summary.n_samples} "
          f"violations={summary.violations} min_q={summary.min_q:.6g} "
          f"max_q_over_r={summary.max_q_over_r:.6g} redraws={summary.redraws} "
          f"seed={summary.seed} runtime_seconds={summary.runtime_seconds:.3f}",
          file=sys.stderr)
    _print_failures(summary.failures)
    return 1 if summary.violations else 0


def _examples_text_table(rows: list[ExampleRow]) -> str:
    lines = [f"{'family':<24} {'d':>3} {'r':>3} {'s':>3} {'trace_dist':>13} "
             f"{'hs_dist':>13} {'Q':>13} {'residual':>10} note"]
    for row in rows:
        def num(v):
            return f"{v:.10g}" if v is not None else "-"
        s = str(row.s) if row.s is not None else "-"
        resid = f"{row.residual:.3e}" if row.residual is not None else "-"
        lines.append(f"{row.family:<24} {row.d:>3} {row.r:>3} {s:>3} "
                     f"{num(row.trace_distance):>13} {num(row.hs_distance):>13} "
                     f"{num(row.q_ratio):>13} {resid:>10} {row.note}")
    return "\n".join(lines) + "\n"


def _cmd_examples(cfg: CliConfig) -> int:
    rows = examples_table(cfg.dim)
    bad = [row for row in rows if row.residual is not None and row.residual > EXAMPLES_RESIDUAL_TOL]
    max_residual = max((row.residual for row in rows if row.residual is not None), default=0.0)
    if cfg.out_path is None and cfg.format == "csv":
        sys.stdout.write(_examples_text_table(rows))
    elif cfg.format == "csv":
        _write_output(_csv_table(EXAMPLES_CSV_HEADER, [example_wire_fields(r) for r in rows]),
                      cfg.out_path)
    else:
        body = ",\n".join("  " + _json_object(example_wire_fields(r)) for r in rows)
        summary = _json_object([("rows", len(rows)), ("violations", len(bad)),
                                ("max_residual", max_residual)])
        _write_output('{\n"rows": [\n' + body + '\n],\n"summary": ' + summary + "\n}\n",
                      cfg.out_path)
    print(f"examples: d={cfg.dim} rows={len(rows)} max_residual={max_residual:.3e} "
          f"violations={len(bad)}", file=sys.stderr)
    for row in bad:
        print(f"VIOLATION family={row.family} d={row.d} r={row.r} s={row.s} "
              f"residual={row.residual!r}", file=sys.stderr)
    return 1 if bad else 0


def _cmd_verify(cfg: CliConfig) -> int:
    summary = verify_sweep([cfg.dim], cfg.samples, cfg.seed, rank_tol=cfg.rank_tol)
    print(f"verify: dim={cfg.dim} n_samples={summary.n_samples} "
          f"violations={summary.violations} min_q={summary.min_q:.6g} "
          f"max_q_over_r={summary.max_q_over_r:.6g} seed={summary.seed} "
          f"runtime_seconds={summary.runtime_seconds:.3f}")
    if cfg.out_path is not None:
        if cfg.format == "csv":
            _write_output(_csv_table(SUMMARY_CSV_HEADER, [summary_wire_fields(summary)]),
                          cfg.out_path)
        else:
            doc = _json_object(summary_wire_fields(summary))
            failures = ", ".join(_json_scalar(f) for f in summary.failures)
            _write_output('{\n"summary": ' + doc + ',\n"failures": [' + failures + "]\n}\n",
                          cfg.out_path)
    _print_failures(summary.failures)
    return 1 if summary.violations else 0


def counterexample_wire_fields(res: ConjectureSearchResult) -> list[tuple[str, object]]:
    return [
        ("found", res.found),
        ("d", res.d),
        ("seed", res.seed),
        ("budget", res.budget),
        ("candidates_tried", res.candidates_tried),
        ("index", res.index),
        ("kind", res.kind),
        ("margin", res.margin),
    ]


def _cmd_counterexample(cfg: CliConfig) -> int:
    res = find_conjecture_counterexample(cfg.dim, cfg.budget, cfg.seed)
    if res.found:
        rho, sigma, kind = conjecture_candidate(res.d, res.seed, res.index)
        recomputed = conjecture_margin(rho, sigma)
        print(f"counterexample: found d={res.d} seed={res.seed} index={res.index} "
              f"kind={kind} margin={res.margin:.6e} recomputed_margin={recomputed:.6e} "
              f"candidates_tried={res.candidates_tried}")
        if recomputed <= 0:
            print("VIOLATION stored counterexample did not recompute positive", file=sys.stderr)
            return 1
    else:
        print(f"counterexample: exhausted d={res.d} seed={res.seed} "
              f"budget={res.budget} candidates_tried={res.candidates_tried} (inconclusive)")
    if cfg.out_path is not None:
        if cfg.format == "csv":
            _write_output(_csv_table(COUNTEREXAMPLE_CSV_HEADER,
                                     [counterexample_wire_fields(res)]), cfg.out_path)
        else:
            _write_output(_json_object(counterexample_wire_fields(res)) + "\n", cfg.out_path)
    return 0


_COMMANDS = {
    "figure1": _cmd_figure1,
    "examples": _cmd_examples,
    "verify": _cmd_verify,
    "counterexample": _cmd_counterexample,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage/help
        return int(exc.code or 0)
    cfg = config_from_args(args)
    try:
        return _COMMANDS[cfg.command](cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
