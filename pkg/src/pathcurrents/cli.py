"""Command-line front end.

Results go to stdout (or ``--output``), diagnostics to stderr. Exit codes:
0 success, 1 usage or parse error, 2 domain error (invalid state,
undefined postselection), 3 verification failure. The default output
format can be set with ``PATHCURRENTS_FORMAT`` (``json`` or ``csv``).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import analysis, checks, oracle
from .hilbert import InvalidDensityError, check_density, pure_density
from .network import InterferometerNetwork, NetworkError, load_network, parse_fraction
from .presets import canonical_network, named_state, rho_eta

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3
FORMAT_ENV = "PATHCURRENTS_FORMAT"


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_network_source(source: str) -> InterferometerNetwork:
    if source == "canonical":
        return canonical_network()
    path = Path(source)
    if not path.exists():
        raise UsageError(f"network file not found: {source}")
    try:
        return load_network(path)
    except NetworkError as exc:
        raise UsageError(f"cannot parse network file {source}: {exc}") from None


def parse_state(spec: str):
    """Density operator from ``phi-max``, ``eta=<x>`` or a list of 4 amplitudes.

    Amplitudes are comma-separated numbers, fractions or complex literals
    (``0,1,1,0`` or ``1/2,1j/2,...``) and are normalized.
    """
    spec = spec.strip()
    if spec == "phi-max":
        return pure_density(named_state("Phi_max")), 1.0
    if spec.startswith("eta="):
        try:
            eta = float(parse_fraction(spec[4:]))
        except ValueError as exc:
            raise UsageError(f"bad state spec {spec!r}: {exc}") from None
        try:
            return rho_eta(eta), eta
        except ValueError as exc:
            raise DomainError(str(exc)) from None
    parts = spec.split(",")
    if len(parts) != 4:
        raise UsageError(f"bad state spec {spec!r}: use phi-max, eta=<x> or four amplitudes")
    amps = []
    for p in parts:
        try:
            amps.append(complex(float(parse_fraction(p))))
        except ValueError:
            try:
                amps.append(complex(p.strip().replace(" ", "")))
            except ValueError:
                raise UsageError(f"bad amplitude {p!r}") from None
    try:
        return pure_density(np.array(amps)), None
    except ValueError as exc:
        raise DomainError(f"invalid state: {exc}") from None


def _complex(w: complex) -> dict:
    return {"re": w.real, "im": w.imag}


def _emit(text: str, args) -> None:
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(x)) if isinstance(x, (float, np.floating)) else x for x in row])
    return buf.getvalue()


def _json(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def cmd_simulate(args) -> int:
    net = load_network_source(args.network)
    rho, _ = parse_state(args.state)
    reports = analysis.all_probabilities(rho, net)
    if args.format == "csv":
        rows = [(r.context_index, lab, p) for r in reports for lab, p in r.entries]
        _emit(_csv(["context", "path", "probability"], rows), args)
    else:
        doc = {
            "state": args.state,
            "contexts": [
                {"index": r.context_index, "probabilities": dict(r.entries), "total": r.total} for r in reports
            ],
        }
        _emit(_json(doc), args)
    return EXIT_OK


def cmd_weak_values(args) -> int:
    net = load_network_source(args.network)
    rho, _ = parse_state(args.state)
    if args.postselect not in net.output_context:
        raise UsageError(f"{args.postselect!r} is not an output path; choose from {list(net.output_context.labels)}")
    try:
        table = analysis.conditional_current_table(rho, net, args.postselect)
    except analysis.UndefinedPostselectionError as exc:
        raise DomainError(f"zero-probability postselection on {args.postselect!r}: {exc}") from None
    residual = analysis.continuity_residual(table, net)
    if args.format == "csv":
        rows = [(k, lab, w.real, w.imag) for k, row in enumerate(table.contexts) for lab, w in row]
        _emit(_csv(["context", "path", "re", "im"], rows), args)
    else:
        doc = {
            "state": args.state,
            "postselection": table.postselection,
            "postselection_probability": table.postselection_probability,
            "continuity_residual": residual,
            "contexts": [
                {"index": k, "weak_values": {lab: _complex(w) for lab, w in row}}
                for k, row in enumerate(table.contexts)
            ],
        }
        _emit(_json(doc), args)
    return EXIT_OK


def cmd_sweep(args) -> int:
    try:
        grid = analysis.parse_grid(args.grid)
    except ValueError as exc:
        raise UsageError(f"bad grid {args.grid!r}: {exc}") from None
    try:
        records = analysis.visibility_sweep(grid)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    rows = analysis.records_as_rows(records)
    if args.format == "csv":
        _emit(_csv(analysis.SWEEP_COLUMNS, rows), args)
    else:
        doc = {"columns": list(analysis.SWEEP_COLUMNS), "rows": [dict(zip(analysis.SWEEP_COLUMNS, r)) for r in rows]}
        _emit(_json(doc), args)
    return EXIT_OK


def cmd_oracle(args) -> int:
    net = load_network_source(args.network)
    assignments = oracle.enumerate_assignments(net)
    report = oracle.check_statements(assignments, net)
    labels = net.labels()
    if args.format == "csv":
        rows = [[a[lab] for lab in labels] + [oracle.witness_value(a)] for a in assignments]
        _emit(_csv(labels + ["witness"], rows), args)
    else:
        doc = {
            "convention": oracle.PARALLEL_CONVENTION,
            "labels": labels,
            "assignment_count": len(assignments),
            "nc_max_witness": oracle.nc_max_witness(assignments) if assignments else None,
            "statements": {
                "checked": report.checked,
                "statement_1_counterexamples": [a.true_labels() for a in report.statement_1_counterexamples],
                "statement_2_counterexamples": [a.true_labels() for a in report.statement_2_counterexamples],
                "result": "no counterexamples" if report.ok else "counterexamples found",
            },
            "assignments": [a.true_labels() for a in assignments],
        }
        _emit(_json(doc), args)
    return EXIT_OK


def cmd_verify(args) -> int:
    net = load_network_source(args.network)
    results = checks.run_checks(net)
    passed, failed = checks.summary(results)
    if args.json:
        _emit(_json({"passed": passed, "failed": failed, "checks": [r.as_dict() for r in results]}), args)
    else:
        lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}" for r in results]
        lines.append(f"{passed} passed, {failed} failed")
        _emit("\n".join(lines) + "\n", args)
    return EXIT_OK if failed == 0 else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    default_format = os.environ.get(FORMAT_ENV, "json")
    if default_format not in ("json", "csv"):
        default_format = "json"

    parser = _Parser(prog="pathcurrents", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, state=True):
        p.add_argument("--network", default="canonical", help='"canonical" or a network-definition JSON file')
        if state:
            p.add_argument("--state", default="phi-max", help='"phi-max", "eta=<x>" or four amplitudes')
        p.add_argument("--format", choices=("json", "csv"), default=default_format)
        p.add_argument("--output", "-o", help="write results here instead of stdout")

    p = sub.add_parser("simulate", help="outcome probabilities in every context")
    common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("weak-values", help="conditional currents for one detected output")
    common(p)
    p.add_argument("--postselect", required=True, help="output path label, e.g. 1,0")
    p.set_defaults(func=cmd_weak_values)

    p = sub.add_parser("sweep", help="witness and currents over a visibility grid")
    p.add_argument("--grid", default=analysis.DEFAULT_GRID, help="start:stop:count (default %(default)s)")
    p.add_argument("--format", choices=("json", "csv"), default=default_format)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle", help="enumerate noncontextual assignments and their bound")
    common(p, state=False)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--network", default="canonical")
    p.add_argument("--json", action="store_true", help="machine-readable result list")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, InvalidDensityError, analysis.UndefinedPostselectionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
