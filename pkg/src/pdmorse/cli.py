"""Command-line front end.

Subcommands:

* ``spectrum``      analytic vs numeric eigenvalues per level
* ``wavefunction``  normalized wavefunction samples with tail diagnostics
* ``verify``        full internal-consistency suite for a configuration

Reports go to --out or stdout (JSON or RFC-4180 CSV); human-readable notes go
to stderr.  Exit codes: 0 pass, 1 verification failure, 2 invalid parameters,
3 numeric overflow / domain error.  Payloads carry no timestamps, so equal
configurations produce byte-identical files.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional, Sequence

from .checks import verification_report
from .config import MODELS, load_config_file, make_run_config
from .errors import DomainOverflowError, PdmError
from .report import SPECTRUM_COLUMNS, WAVEFUNCTION_COLUMNS, spectrum_report, wavefunction_report

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_PARAMS = 2
EXIT_OVERFLOW = 3


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return "" if value is None else str(value)


def _spectrum_csv(payload: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SPECTRUM_COLUMNS)
    for row in payload["levels"]:
        writer.writerow([_fmt(row[col]) for col in SPECTRUM_COLUMNS])
    return buf.getvalue()


def _wavefunction_csv(payload: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(WAVEFUNCTION_COLUMNS)
    for row in payload["samples"]:
        writer.writerow([_fmt(row[col]) for col in WAVEFUNCTION_COLUMNS])
    return buf.getvalue()


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _to_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="JSON config file; flags override its values")
    p.add_argument("--model", choices=MODELS)
    p.add_argument("--A", dest="a_coupling", type=float, help="Morse coupling A")
    p.add_argument("--B", dest="b_coupling", type=float, help="Morse coupling B (> 0)")
    p.add_argument("--alpha", type=float, help="ordering parameter alpha")
    p.add_argument("--beta", type=float, help="ordering parameter beta")
    p.add_argument("--kappa", type=float, help="mass deformation kappa (>= 0)")
    p.add_argument("--levels", type=int, help="number of levels")
    p.add_argument("--n", type=int, help="level index for wavefunction output")
    p.add_argument("--samples", type=int, help="number of coordinate samples")
    p.add_argument("--x-min", dest="x_min", type=float, help="grid override: lower edge")
    p.add_argument("--x-max", dest="x_max", type=float, help="grid override: upper edge")
    p.add_argument("--points", dest="n_points", type=int, help="grid override: point count")
    p.add_argument("--format", dest="fmt", choices=("json", "csv"))
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--tol", type=float, help="numeric-match tolerance for spectrum rows")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pdmorse",
        description="Solvable position-dependent-mass Morse/Coulomb models with a finite-difference cross-check.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("spectrum", "per-level analytic and numeric energies"),
        ("wavefunction", "normalized wavefunction samples"),
        ("verify", "run the verification suite; exit 0 only if all checks pass"),
    ):
        _add_common(sub.add_parser(name, help=text))
    return parser


def _config_from_args(args: argparse.Namespace):
    file_data = load_config_file(args.config) if args.config else None
    keys = (
        "model", "a_coupling", "b_coupling", "alpha", "beta", "kappa", "levels",
        "n", "samples", "x_min", "x_max", "n_points", "fmt", "out", "tol",
    )
    return make_run_config(file_data, **{k: getattr(args, k) for k in keys})


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
        if args.command == "spectrum":
            payload = spectrum_report(cfg)
            text = _spectrum_csv(payload) if cfg.fmt == "csv" else _to_json(payload)
            _emit(text, cfg.out)
            if not payload["passed"]:
                print("spectrum: at least one level missed tolerance", file=sys.stderr)
                return EXIT_VERIFY_FAILED
            return EXIT_OK
        if args.command == "wavefunction":
            payload = wavefunction_report(cfg)
            text = _wavefunction_csv(payload) if cfg.fmt == "csv" else _to_json(payload)
            _emit(text, cfg.out)
            return EXIT_OK
        payload = verification_report(cfg)
        _emit(_to_json(payload), cfg.out)
        for check in payload["checks"]:
            if not check["passed"]:
                detail = check.get("detail", "")
                print(
                    f"FAIL {check['name']}: measured={check['measured']!r} "
                    f"tolerance={check['tolerance']!r} {detail}".rstrip(),
                    file=sys.stderr,
                )
        if not payload["passed"]:
            return EXIT_VERIFY_FAILED
        print(f"verify: {payload['n_checks']} checks passed", file=sys.stderr)
        return EXIT_OK
    except DomainOverflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except PdmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_PARAMS


if __name__ == "__main__":
    sys.exit(main())
