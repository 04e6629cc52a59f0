"""Command-line surface: scenario-driven computations and checks.

Every subcommand except ``counterexample`` reads a scenario file (see
:mod:`coarsecoh.scenario` for the format) and emits two reports: a JSON
document for machines and a TSV table for people.  By default the TSV
goes to stdout; ``--json`` prints the JSON instead, and ``--out BASE``
writes ``BASE.json`` and ``BASE.tsv`` as well.  The JSON is deterministic
for a fixed scenario and command, except for the ``_generated_at``
timestamp, which always sits alone on its own line.

Subcommands:
  hilbert          dimension table of the module over gwindow
  hom              dimension table of graded Hom(module, module2)
  ext              dimension table of Ext^i(R/ideal^n, module)
  gamma            torsion submodule of the module along the ideal
  cech             local cohomology H^i by the localization route
  lc               local cohomology H^i by either route (--route)
  dtransform       ideal transform D^i (colimit of Ext^i(a^n, module))
  coarsen          fiber-sum the module's dimension table along psi
  check-commute    compare coarsened vs directly coarse local cohomology
  check-transform  the four-term torsion/transform sequence, degreewise
  counterexample   the rational-exponent escape family at level --k

Exit codes: 0 success (and every checker verdict positive), 1 scenario or
usage error, 2 a checker returned FAILS, 3 a limit refused to stabilize
under its cap, 4 a coarsening fiber sum could not be certified finite.
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys
from pathlib import Path

from .coarsen import check_commutation, coarsen_ring, coarsen_table
from .errors import CoarseningRefusal, ScenarioError, UnstabilizedError
from .homres import colim_ext_table, graded_ext, hom_table
from .localcoh import (
    cech_table,
    check_transform_sequence,
    ideal_transform,
    local_cohomology,
    torsion_submodule,
)
from .monoidx import build_witness_hom, counterexample_report
from .scenario import Scenario, parse_scenario

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILS = 2
EXIT_UNSTABILIZED = 3
EXIT_REFUSED = 4

_VERDICT_EXIT = {
    "OK": EXIT_OK,
    "COMMUTES_ON_WINDOW": EXIT_OK,
    "FAILS": EXIT_FAILS,
    "UNSTABILIZED": EXIT_UNSTABILIZED,
}


# ---------------------------------------------------------------------------
# Report assembly.
# ---------------------------------------------------------------------------


def _window_str(window) -> str:
    if window.free_box is not None:
        lo, hi = window.free_box
        return "(%s)..(%s)" % (
            ",".join(str(v) for v in lo),
            ",".join(str(v) for v in hi),
        )
    return "{%s}" % ", ".join(str(d) for d in window)


def _table_json(table) -> dict:
    return {g: v for g, v in table.rows()}


def _tsv(comments, header, rows) -> str:
    lines = ["# " + c for c in comments]
    lines.append("\t".join(header))
    for row in rows:
        lines.append("\t".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def _table_tsv(command: str, verdict: str, table, extra_comments=()) -> str:
    return _tsv(
        ["command: " + command, "verdict: " + verdict, *extra_comments],
        ["degree", "dim"],
        table.rows(),
    )


# ---------------------------------------------------------------------------
# Subcommand handlers: scenario, args -> (payload, tsv, exit code).
# ---------------------------------------------------------------------------


def _cmd_hilbert(s: Scenario, args):
    s.require("ring", "module", "gwindow")
    table = s.module.hilbert(s.gwindow)
    payload = {
        "command": "hilbert",
        "verdict": "OK",
        "window": _window_str(s.gwindow),
        "table": _table_json(table),
    }
    return payload, _table_tsv("hilbert", "OK", table), EXIT_OK


def _cmd_hom(s: Scenario, args):
    s.require("ring", "module", "module2", "gwindow")
    table = hom_table(s.module, s.module2, s.gwindow)
    payload = {
        "command": "hom",
        "verdict": "OK",
        "window": _window_str(s.gwindow),
        "table": _table_json(table),
    }
    return payload, _table_tsv("hom", "OK", table), EXIT_OK


def _cmd_ext(s: Scenario, args):
    s.require("ring", "ideal", "module", "gwindow")
    ideal = s.ideal.power(args.n) if args.n != 1 else s.ideal
    table = graded_ext(args.i, ideal, s.module, s.gwindow)
    payload = {
        "command": "ext",
        "verdict": "OK",
        "parameters": {"i": args.i, "n": args.n},
        "window": _window_str(s.gwindow),
        "table": _table_json(table),
    }
    return payload, _table_tsv("ext", "OK", table), EXIT_OK


def _cmd_gamma(s: Scenario, args):
    s.require("ring", "ideal", "module", "gwindow")
    n_cap = args.ncap or s.n_cap
    data = torsion_submodule(s.ideal, s.module, s.gwindow, n_cap)
    payload = {
        "command": "gamma",
        "verdict": "OK",
        "parameters": {"n_cap": n_cap},
        "window": _window_str(s.gwindow),
        "table": _table_json(data.table),
        "stabilized_at": {str(g): n for g, n in sorted(
            data.stabilized_at.items(), key=lambda kv: kv[0].sort_key()
        )},
        "global_index": data.global_index,
    }
    tsv = _tsv(
        ["command: gamma", "verdict: OK", "global_index: %d" % data.global_index],
        ["degree", "dim", "stabilized_at"],
        [
            (str(g), data.table.get(g), data.stabilized_at.get(g, 1))
            for g in s.gwindow
        ],
    )
    return payload, tsv, EXIT_OK


def _cmd_cech(s: Scenario, args):
    s.require("ring", "ideal", "module", "gwindow")
    ray_cap = args.raycap or s.ray_cap
    table = cech_table(s.ideal, args.i, s.module, s.gwindow, ray_cap)
    payload = {
        "command": "cech",
        "verdict": "OK",
        "parameters": {"i": args.i, "route": "cech", "ray_cap": ray_cap},
        "window": _window_str(s.gwindow),
        "table": _table_json(table),
    }
    comments = ["i: %d" % args.i, "route: cech"]
    return payload, _table_tsv("cech", "OK", table, comments), EXIT_OK


def _cmd_lc(s: Scenario, args):
    s.require("ring", "ideal", "module", "gwindow")
    n_cap = args.ncap or s.n_cap
    ray_cap = args.raycap or s.ray_cap
    stab = None
    if args.route == "ext" and args.i > 0:
        table, report = colim_ext_table(
            args.i, s.ideal, s.module, s.gwindow, n_cap, family="quotient"
        )
        stab = report
    else:
        table = local_cohomology(
            s.ideal, args.i, s.module, s.gwindow, args.route, n_cap, ray_cap
        )
    payload = {
        "command": "lc",
        "verdict": "OK",
        "parameters": {
            "i": args.i,
            "route": args.route,
            "n_cap": n_cap,
            "ray_cap": ray_cap,
        },
        "window": _window_str(s.gwindow),
        "table": _table_json(table),
    }
    comments = ["i: %d" % args.i, "route: " + args.route]
    if stab is not None:
        payload["stabilized_at"] = {
            str(g): n
            for g, n in sorted(
                stab.per_degree.items(), key=lambda kv: kv[0].sort_key()
            )
        }
        payload["global_index"] = stab.global_index
        comments.append("global_index: %d" % stab.global_index)
    return payload, _table_tsv("lc", "OK", table, comments), EXIT_OK


def _cmd_dtransform(s: Scenario, args):
    s.require("ring", "ideal", "module", "gwindow")
    n_cap = args.ncap or s.n_cap
    table, report = colim_ext_table(
        args.i, s.ideal, s.module, s.gwindow, n_cap, family="ideal"
    )
    payload = {
        "command": "dtransform",
        "verdict": "OK",
        "parameters": {"i": args.i, "n_cap": n_cap},
        "window": _window_str(s.gwindow),
        "table": _table_json(table),
        "stabilized_at": {
            str(g): n
            for g, n in sorted(
                report.per_degree.items(), key=lambda kv: kv[0].sort_key()
            )
        },
        "global_index": report.global_index,
    }
    comments = ["i: %d" % args.i, "global_index: %d" % report.global_index]
    return payload, _table_tsv("dtransform", "OK", table, comments), EXIT_OK


def _cmd_coarsen(s: Scenario, args):
    s.require("ring", "module", "psi", "gwindow", "hwindow")
    fine = s.module.hilbert(s.gwindow)
    coarse_ring = coarsen_ring(s.ring, s.psi, s.coarse_certificate)
    table, cert = coarsen_table(
        fine,
        s.psi,
        s.hwindow,
        fine_ring=s.ring,
        coarse_ring=coarse_ring,
        assume_support_covered=args.assume_support_covered,
    )
    payload = {
        "command": "coarsen",
        "verdict": "OK",
        "parameters": {
            "assume_support_covered": args.assume_support_covered,
        },
        "gwindow": _window_str(s.gwindow),
        "hwindow": _window_str(s.hwindow),
        "table": _table_json(table),
        "certificate": {"route": cert.route, "note": cert.note},
    }
    comments = ["certificate: " + cert.route]
    return payload, _table_tsv("coarsen", "OK", table, comments), EXIT_OK


def _cmd_check_commute(s: Scenario, args):
    s.require("ring", "ideal", "module", "psi", "gwindow", "hwindow")
    n_cap = args.ncap or s.n_cap
    report = check_commutation(
        s.ideal,
        s.module,
        s.psi,
        args.i,
        s.gwindow,
        s.hwindow,
        n_cap=n_cap,
        assume_support_covered=args.assume_support_covered,
        coarse_certificate=s.coarse_certificate,
    )
    payload = report.to_json_dict()
    payload["command"] = "check-commute"
    payload["gwindow"] = _window_str(s.gwindow)
    payload["hwindow"] = _window_str(s.hwindow)
    comments = [
        "command: check-commute",
        "verdict: " + report.verdict,
        "n_cap: %d" % n_cap,
    ]
    rows = []
    for entry in report.entries:
        route = entry.cert.route if entry.cert else "-"
        for (h, a), (_, b) in zip(entry.coarsened.rows(), entry.coarse.rows()):
            rows.append((entry.i, h, a, b, "yes" if a == b else "NO", route))
    if report.unstable is not None:
        comments.append(
            "unstabilized: i=%s at %s, trajectory %s"
            % (
                report.unstable["i"],
                report.unstable["degree"],
                report.unstable["trajectory"],
            )
        )
    tsv = _tsv(
        comments,
        ["i", "degree", "coarsened", "coarse", "agree", "certificate"],
        rows,
    )
    return payload, tsv, _VERDICT_EXIT[report.verdict]


def _cmd_check_transform(s: Scenario, args):
    s.require("ring", "ideal", "module", "gwindow")
    n_cap = args.ncap or s.n_cap
    ray_cap = args.raycap or s.ray_cap
    report = check_transform_sequence(s.ideal, s.module, s.gwindow, n_cap, ray_cap)
    payload = report.to_json_dict()
    payload["command"] = "check-transform"
    payload["window"] = _window_str(s.gwindow)
    comments = [
        "command: check-transform",
        "verdict: " + report.verdict,
    ]
    for entry in report.higher:
        comments.append(
            "higher i=%d: %s over %d degrees"
            % (
                entry["i"],
                "agree" if entry["agree"] else "DISAGREE",
                entry["degrees_checked"],
            )
        )
    if report.unstable is not None:
        comments.append(
            "unstabilized: %s at %s, trajectory %s"
            % (
                report.unstable["what"],
                report.unstable["degree"],
                report.unstable["trajectory"],
            )
        )
    rows = [
        (
            str(r.degree),
            r.gamma,
            r.module,
            r.d0,
            r.h1,
            "yes" if r.all_ok() else "NO",
        )
        for r in report.rows
    ]
    tsv = _tsv(
        comments,
        ["degree", "torsion", "module", "transform0", "h1", "exact"],
        rows,
    )
    return payload, tsv, _VERDICT_EXIT[report.verdict]


def _cmd_counterexample(s: Scenario, args):
    report = counterexample_report(args.k, seed=args.seed)
    payload = report.to_json_dict()
    payload["command"] = "counterexample"
    payload["verdict"] = "OK"
    comments = [
        "command: counterexample",
        "verdict: OK",
        "support size: %d" % len(report.support),
        "idempotency witnesses: %d verified" % len(report.idempotency),
        "generation gaps: %d certified" % len(report.generation_gaps),
        "external claim: " + report.external_claim,
    ]
    rows = [
        (
            c.k,
            str(c.shift),
            str(c.ideal.threshold),
            repr(c.probe),
            repr(c.probe_image),
        )
        for c in build_witness_hom(report.level).components
    ]
    tsv = _tsv(
        comments,
        ["k", "degree", "threshold", "probe", "probe_image"],
        rows,
    )
    return payload, tsv, EXIT_OK


_HANDLERS = {
    "hilbert": _cmd_hilbert,
    "hom": _cmd_hom,
    "ext": _cmd_ext,
    "gamma": _cmd_gamma,
    "cech": _cmd_cech,
    "lc": _cmd_lc,
    "dtransform": _cmd_dtransform,
    "coarsen": _cmd_coarsen,
    "check-commute": _cmd_check_commute,
    "check-transform": _cmd_check_transform,
    "counterexample": _cmd_counterexample,
}


# ---------------------------------------------------------------------------
# Argument parsing and dispatch.
# ---------------------------------------------------------------------------


def _i_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(
            "expected a comma-separated list of integers, got %r" % text
        )


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors, which this tool
    reserves for FAILS verdicts; route usage problems to exit 1 instead."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "%s: error: %s\n" % (self.prog, message))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="coarsecoh",
        description="Exact graded local cohomology and coarsening checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, scenario: bool = True):
        p = sub.add_parser(name, help=help_text)
        if scenario:
            p.add_argument("scenario", help="path to a scenario file")
        p.add_argument("--out", help="write BASE.json and BASE.tsv")
        p.add_argument(
            "--json",
            action="store_true",
            help="print the JSON report instead of the TSV table",
        )
        return p

    add("hilbert", "dimension table of the module")
    add("hom", "graded Hom dimension table (module -> module2)")

    p = add("ext", "Ext^i(R/ideal^n, module) dimension table")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--n", type=int, default=1, help="ideal power (default 1)")

    p = add("gamma", "torsion submodule along the ideal")
    p.add_argument("--ncap", type=int, help="override the scenario's n_cap")

    p = add("cech", "local cohomology by the localization route")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--raycap", type=int, help="override the scenario's ray_cap")

    p = add("lc", "local cohomology by either route")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--route", choices=("cech", "ext"), default="cech")
    p.add_argument("--ncap", type=int, help="override the scenario's n_cap")
    p.add_argument("--raycap", type=int, help="override the scenario's ray_cap")

    p = add("dtransform", "ideal transform D^i")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--ncap", type=int, help="override the scenario's n_cap")

    p = add("coarsen", "fiber-sum the module's dimension table along psi")
    p.add_argument("--assume-support-covered", action="store_true")

    p = add("check-commute", "coarsened vs directly coarse local cohomology")
    p.add_argument(
        "--i",
        type=_i_list,
        default=[0, 1, 2],
        help="comma-separated cohomological degrees (default 0,1,2)",
    )
    p.add_argument("--ncap", type=int, help="override the scenario's n_cap")
    p.add_argument("--assume-support-covered", action="store_true")

    p = add("check-transform", "four-term torsion/transform sequence check")
    p.add_argument("--ncap", type=int, help="override the scenario's n_cap")
    p.add_argument("--raycap", type=int, help="override the scenario's ray_cap")

    p = add("counterexample", "escape family for the rational monoid algebra",
            scenario=False)
    p.add_argument("--k", type=int, required=True, help="truncation level")
    p.add_argument("--seed", type=int, default=0)

    return parser


def run_command(args) -> tuple[str, str, int]:
    """Execute one parsed command line: returns (json text, tsv text,
    exit code).  Raises nothing the dispatcher below does not handle."""
    scenario = None
    if getattr(args, "scenario", None) is not None:
        scenario = parse_scenario(Path(args.scenario).read_text())
    try:
        payload, tsv, code = _HANDLERS[args.command](scenario, args)
    except UnstabilizedError as err:
        payload = {
            "command": args.command,
            "verdict": "UNSTABILIZED",
            "unstable": {
                "what": err.what,
                "degree": str(err.degree),
                "trajectory": err.trajectory,
            },
        }
        tsv = _tsv(
            [
                "command: " + args.command,
                "verdict: UNSTABILIZED",
                "what: " + err.what,
                "degree: %s" % (err.degree,),
                "trajectory: %s" % (err.trajectory,),
            ],
            ["degree", "dim"],
            [],
        )
        code = EXIT_UNSTABILIZED
    except CoarseningRefusal as err:
        payload = {
            "command": args.command,
            "verdict": "REFUSED",
            "degree": None if err.h is None else str(err.h),
            "reason": err.reason,
        }
        tsv = _tsv(
            [
                "command: " + args.command,
                "verdict: REFUSED",
                "reason: " + err.reason,
            ],
            ["degree", "dim"],
            [],
        )
        code = EXIT_REFUSED
    stamp = datetime.datetime.now(datetime.timezone.utc).isoformat(
        timespec="seconds"
    )
    payload["_generated_at"] = stamp
    return json.dumps(payload, sort_keys=True, indent=2), tsv, code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        json_text, tsv_text, code = run_command(args)
    except (ScenarioError, OSError, ValueError) as err:
        print("error: %s" % err, file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        Path(args.out + ".json").write_text(json_text + "\n")
        Path(args.out + ".tsv").write_text(tsv_text)
    if args.json:
        print(json_text)
    else:
        sys.stdout.write(tsv_text)
    return code


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
