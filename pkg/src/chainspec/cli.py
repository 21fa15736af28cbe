"""Command-line entry point.

``chainspec verify`` runs the verification suites and prints one line per
check (or a JSON array with ``--format json``); ``chainspec list-suites``
prints the available suite names.  ``--report-dir`` additionally writes
``report.csv`` and a ``summary.png`` bar chart of per-suite outcomes.

Exit status: 0 on success (expected discrepancies do not fail), 1 when any
check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from .verify import SuiteConfig, UsageError, run_all, suite_names


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="chainspec",
        description="Exact verification harness for symmetric spectra of integer chain complexes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", action="append", default=None, metavar="NAME",
                   help="suite to run (repeatable; default: all)")
    v.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    v.add_argument("--trials", type=int, default=300, help="trials per randomized check (default 300)")
    v.add_argument("--max-level", type=int, default=4, dest="max_level",
                   help="level bound for sampled elements (default 4)")
    v.add_argument("--stab-bound", type=int, default=5, dest="stab_bound",
                   help="stabilization level bound (default 5)")
    v.add_argument("--format", choices=["text", "json"], default="text",
                   help="output format (default text)")
    v.add_argument("--fail-fast", action="store_true", help="stop after the first failing suite")
    v.add_argument("--complex", action="append", default=[], metavar="FILE", dest="complexes",
                   help="chain complex JSON file; R(C) is added to the test corpus (repeatable)")
    v.add_argument("--report-dir", default=None, metavar="DIR", dest="report_dir",
                   help="write report.csv and summary.png to this directory")

    sub.add_parser("list-suites", help="list suite names")
    return parser


def _format_text(reports, out):
    width = max((len(r.suite) + len(r.check) for r in reports), default=0) + 1
    for r in reports:
        label = "%s/%s" % (r.suite, r.check)
        tag = {"pass": "PASS", "fail": "FAIL", "expected-discrepancy": "EXPECTED-DISCREPANCY"}[r.verdict]
        line = "%-*s %-20s trials=%-5d failures=%d" % (width, label, tag, r.trials, r.failures)
        print(line, file=out)
        if r.witness is not None and r.verdict != "pass":
            print("    witness: %s" % r.witness, file=out)
    fails = sum(r.verdict == "fail" for r in reports)
    disc = sum(r.verdict == "expected-discrepancy" for r in reports)
    print("%d checks: %d passed, %d failed, %d expected discrepancies"
          % (len(reports), len(reports) - fails - disc, fails, disc), file=out)


def _write_report(reports, directory):
    os.makedirs(directory, exist_ok=True)
    fields = ["suite", "check", "trials", "failures", "verdict", "witness"]
    with open(os.path.join(directory, "report.csv"), "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields)
        writer.writeheader()
        for r in reports:
            writer.writerow({**r.to_dict(), "witness": r.witness or ""})

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    suites = sorted({r.suite for r in reports})
    counts = {v: [sum(1 for r in reports if r.suite == s and r.verdict == v) for s in suites]
              for v in ("pass", "fail", "expected-discrepancy")}
    fig, ax = plt.subplots(figsize=(10, max(3, 0.32 * len(suites))))
    y = range(len(suites))
    left = [0] * len(suites)
    for verdict, color in (("pass", "#2a9d4e"), ("expected-discrepancy", "#e9a000"), ("fail", "#d03030")):
        ax.barh(y, counts[verdict], left=left, color=color, label=verdict)
        left = [a + b for a, b in zip(left, counts[verdict])]
    ax.set_yticks(list(y), suites)
    ax.invert_yaxis()
    ax.set_xlabel("checks")
    ax.set_title("verification outcomes by suite")
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(os.path.join(directory, "summary.png"), dpi=120)
    plt.close(fig)


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already; pass that through
        return int(exc.code or 0)

    if args.command == "list-suites":
        for name in suite_names():
            print(name)
        return 0

    extra = []
    for path in args.complexes:
        if not os.path.exists(path):
            print("chainspec: no such file: %s" % path, file=sys.stderr)
            return 2
        extra.append((os.path.splitext(os.path.basename(path))[0], path))

    cfg = SuiteConfig(
        seed=args.seed,
        trials=args.trials,
        max_level=args.max_level,
        stab_bound=args.stab_bound,
        fail_fast=args.fail_fast,
        extra_complexes=tuple(extra),
    )
    try:
        reports = run_all(cfg, args.suite)
    except UsageError as exc:
        print("chainspec: %s" % exc, file=sys.stderr)
        return 2

    if args.format == "json":
        print(json.dumps([r.to_dict() for r in reports], indent=2))
    else:
        _format_text(reports, sys.stdout)

    if args.report_dir:
        _write_report(reports, args.report_dir)

    return 1 if any(r.verdict == "fail" for r in reports) else 0


if __name__ == "__main__":
    sys.exit(main())
