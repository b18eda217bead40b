"""Command-line interface.

Subcommands: moments, table, sample, compare, bounds, verify. All output is
deterministic for a fixed configuration: reruns with any --threads value
produce byte-identical bytes.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 exact-mode
resource ceiling exceeded, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import __version__
from .bounds import RATIO_PRESET, build_bounds_report
from .distribution import build_document, build_histogram, compare, gaussian_reference, render_csv, render_json
from .exactring import Precision
from .moments import (
    ResourceCeilingError,
    extrapolate_limit,
    generate_table,
    normalized_moments,
)
from .sampling import SampleBatch, sample_negativities
from .selfcheck import run_all

__all__ = ["main"]

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_IO = 4


class UsageError(ValueError):
    pass


def _default_threads() -> int:
    env = os.environ.get("NEGMOMENTS_THREADS", "")
    if env:
        try:
            value = int(env)
        except ValueError as exc:
            raise UsageError(f"NEGMOMENTS_THREADS must be an integer, got {env!r}") from exc
        if value < 1:
            raise UsageError("NEGMOMENTS_THREADS must be at least 1")
        return value
    return os.cpu_count() or 1


def _add_common(parser: argparse.ArgumentParser, with_output: bool = True) -> None:
    if with_output:
        parser.add_argument("--format", choices=("json", "csv"), default="json", help="output format")
        parser.add_argument("--output", default="-", help="output path, or - for stdout")
    parser.add_argument("--precision-bits", type=int, default=256, help="working precision for evaluation")
    parser.add_argument("--threads", type=int, default=None, help="worker threads (env NEGMOMENTS_THREADS)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="negmoments", description=__doc__)
    parser.add_argument("--version", action="version", version=f"negmoments {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", help="exact/floating mean and deviation for one size")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--mu", type=int, help="local dimension of the equal bipartition")
    group.add_argument("--n-qubits", type=int, help="even total qubit count (mu = 2^(n/2))")
    p.add_argument("--exact", action="store_true", help="insist on exact arithmetic")
    _add_common(p)

    p = sub.add_parser("table", help="normalized-mean convergence table over qubit counts")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=14)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--extrapolate", action="store_true", help="append the geometric-tail limit")
    _add_common(p)

    p = sub.add_parser("sample", help="sample negativities and histogram them")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--mu", type=int)
    group.add_argument("--n-qubits", type=int)
    p.add_argument("--nu", type=int, default=None, help="second dimension (defaults to mu)")
    p.add_argument("--generator", choices=("haar", "circuit"), default="haar")
    p.add_argument("--j", type=int, default=40, help="circuit rounds per sample")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bins", type=int, default=60)
    _add_common(p)

    p = sub.add_parser("compare", help="sample and compare against the Gaussian reference")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--mu", type=int)
    group.add_argument("--n-qubits", type=int)
    p.add_argument("--nu", type=int, default=None)
    p.add_argument("--generator", choices=("haar", "circuit"), default="haar")
    p.add_argument("--j", type=int, default=40)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bins", type=int, default=60)
    _add_common(p)

    p = sub.add_parser("bounds", help="singlet-distance / fidelity / distillation bounds")
    p.add_argument("--n-qubits", type=int, required=True)
    p.add_argument("--c", default=None, help="ratio constant, or 'preset'")
    _add_common(p)

    p = sub.add_parser("verify", help="run the internal identity suites")
    p.add_argument("--max-mu", type=int, default=16)
    _add_common(p, with_output=False)
    return parser


def _resolve_size(args) -> tuple[int, int | None]:
    if args.n_qubits is not None:
        n = args.n_qubits
        if n < 2 or n % 2:
            raise UsageError("--n-qubits must be even and at least 2")
        return 2 ** (n // 2), n
    mu = args.mu
    if mu is None or mu < 2:
        raise UsageError("--mu must be at least 2")
    n = 2 * (mu.bit_length() - 1) if mu & (mu - 1) == 0 else None
    return mu, n


def _precision(args) -> Precision:
    try:
        return Precision(args.precision_bits)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _write(text: str, output: str) -> None:
    if output == "-":
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)


def _cmd_moments(args) -> int:
    mu, n = _resolve_size(args)
    report = normalized_moments(mu, _precision(args), exact=True if args.exact else None)
    if args.format == "json":
        text = render_json(build_document(report, n_qubits=n))
    else:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["mu", "n_qubits", "mean_float", "sigma_float", "mean_normalized", "sigma_normalized"])
        writer.writerow(
            [
                report.mu,
                "" if n is None else n,
                repr(report.mean_float),
                repr(report.sigma_float),
                repr(report.mean_normalized),
                repr(report.sigma_normalized),
            ]
        )
        text = buffer.getvalue()
    _write(text, args.output)
    return EXIT_OK


def _cmd_table(args) -> int:
    if args.n_min < 2 or args.n_min % 2 or args.n_max < args.n_min or args.n_max % 2:
        raise UsageError("qubit counts must be even, n-min >= 2, n-max >= n-min")
    n_list = list(range(args.n_min, args.n_max + 1, 2))
    rows = generate_table(n_list, _precision(args), exact=True if args.exact else None)
    limit = extrapolate_limit(rows) if args.extrapolate else None
    if args.format == "json":
        doc = {
            "rows": [
                {"n_qubits": r.n_qubits, "mu": r.mu, "ratio": r.ratio, "delta": r.delta} for r in rows
            ],
            "extrapolated_limit": limit,
        }
        text = render_json(doc)
    else:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["n_qubits", "mu", "ratio", "delta"])
        for r in rows:
            writer.writerow([r.n_qubits, r.mu, repr(r.ratio), "" if r.delta is None else repr(r.delta)])
        if limit is not None:
            writer.writerow(["limit", "", repr(limit), ""])
        text = buffer.getvalue()
    _write(text, args.output)
    return EXIT_OK


def _sampling_run(args):
    threads = args.threads if args.threads is not None else _default_threads()
    if threads < 1:
        raise UsageError("--threads must be at least 1")
    if args.samples < 1:
        raise UsageError("--samples must be at least 1")
    if args.generator == "circuit":
        if args.n_qubits is None:
            raise UsageError("circuit generator needs --n-qubits")
        batch = SampleBatch(args.seed, args.samples, n_qubits=args.n_qubits, generator="circuit", j=args.j)
        mu, n = _resolve_size(args)
        nu = mu
    else:
        mu, n = _resolve_size(args)
        nu = args.nu if args.nu is not None else mu
        if nu < mu:
            raise UsageError("--nu must be at least --mu")
        batch = SampleBatch(args.seed, args.samples, dims=(mu, nu), generator="haar")
    values = sample_negativities(batch, threads=threads)
    report = normalized_moments(mu, _precision(args))
    n_max = (mu - 1) / 2.0
    hist = build_histogram(values / n_max, args.bins)
    ref = gaussian_reference(report)
    return report, n, hist, ref


def _cmd_sample(args) -> int:
    report, n, hist, ref = _sampling_run(args)
    if args.format == "csv":
        text = render_csv(hist, ref)
    else:
        text = render_json(build_document(report, n_qubits=n, histogram=hist, reference=ref))
    _write(text, args.output)
    return EXIT_OK


def _cmd_compare(args) -> int:
    report, n, hist, ref = _sampling_run(args)
    comparison = compare(hist, ref)
    if args.format == "csv":
        text = render_csv(hist, ref)
    else:
        text = render_json(build_document(report, n_qubits=n, histogram=hist, reference=ref, comparison=comparison))
    _write(text, args.output)
    return EXIT_OK


def _cmd_bounds(args) -> int:
    n = args.n_qubits
    if n < 2 or n % 2:
        raise UsageError("--n-qubits must be even and at least 2")
    if args.c is None:
        rows = generate_table(list(range(2, 14, 2)), _precision(args))
        c = extrapolate_limit(rows)
    elif args.c == "preset":
        c = RATIO_PRESET
    else:
        try:
            c = float(args.c)
        except ValueError as exc:
            raise UsageError("--c must be a number or 'preset'") from exc
    report = build_bounds_report(n, c=c)
    doc = {
        "n_qubits": report.n_qubits,
        "c": c,
        "mean_negativity": report.mean_negativity,
        "singlet_distance_lb": report.singlet_distance_lb,
        "fidelity_ub": report.fidelity_ub,
        "distillable_ub_ebits": report.distillable_ub_ebits,
        "log_neg_mean": report.log_neg_mean,
        "raw": {
            "singlet_distance": report.singlet_distance_raw,
            "fidelity": report.fidelity_raw,
        },
    }
    if args.format == "json":
        text = render_json(doc)
    else:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        keys = ["n_qubits", "c", "mean_negativity", "singlet_distance_lb", "fidelity_ub", "distillable_ub_ebits", "log_neg_mean"]
        writer.writerow(keys)
        writer.writerow([doc[k] if isinstance(doc[k], int) else repr(doc[k]) for k in keys])
        text = buffer.getvalue()
    _write(text, args.output)
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.max_mu < 2:
        raise UsageError("--max-mu must be at least 2")
    results = run_all(args.max_mu)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        sys.stdout.write(f"{r.name:<{width}}  {status}  {r.detail}\n")
    failed = sum(1 for r in results if not r.passed)
    sys.stdout.write(f"{len(results) - failed}/{len(results)} suites passed\n")
    return EXIT_OK if failed == 0 else EXIT_VERIFY_FAILED


_COMMANDS = {
    "moments": _cmd_moments,
    "table": _cmd_table,
    "sample": _cmd_sample,
    "compare": _cmd_compare,
    "bounds": _cmd_bounds,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help/--version
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ResourceCeilingError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_RESOURCE
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
