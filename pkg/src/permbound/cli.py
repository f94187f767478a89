"""Command-line client for the permanent service.

Runs against the in-process service by default; pass ``--server URL`` to
talk to a running ``permbound serve`` instance instead.  Exit codes: 0 all
assertions passed, 1 an asserted inequality or consistency check failed,
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Optional

from pydantic import BaseModel, ValidationError

from .client import RemoteServiceError, make_client
from .errors import (
    FieldError,
    MatrixFormatError,
    ParameterError,
    PermboundError,
    SizeError,
    StructuralError,
)
from .matio import load_matrix, matrix_to_payload
from .service import models

_USAGE_ERRORS = (
    MatrixFormatError,
    ParameterError,
    SizeError,
    FieldError,
    StructuralError,
    RemoteServiceError,
    ValidationError,
)


def _dump(model: BaseModel) -> str:
    return json.dumps(model.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"


def _emit(model: BaseModel, path: Optional[str]) -> None:
    text = _dump(model)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_config(path: Optional[str], model_cls):
    if path is None:
        return model_cls()
    with open(path, "r", encoding="utf-8") as fh:
        return model_cls.model_validate_json(fh.read())


def _matrix_payload(path: str) -> models.MatrixPayload:
    return models.MatrixPayload(**matrix_to_payload(load_matrix(path)))


def _fmt_scalar(pair, field: str) -> str:
    re, im = pair
    if field == "real" or im == 0.0:
        s = repr(re)
        return s[:-2] if s.endswith(".0") else s
    return repr(complex(re, im))


def _cmd_perm(args, client) -> int:
    resp = client.perm(models.PermRequest(matrix=_matrix_payload(args.matrix)))
    print(_fmt_scalar(resp.value, resp.field))
    if resp.log_abs is not None:
        print(f"ln|perm| = {resp.log_abs!r}  phase = {_fmt_scalar(resp.phase, resp.field)}")
    else:
        print("perm is exactly zero")
    if resp.cross_checked:
        print(f"cross-check (glynn enumeration): rel err = {resp.cross_check_rel_err!r}")
    if args.output:
        _emit(resp, args.output)
    if not resp.consistent:
        print("error: exact algorithms disagree beyond 1e-9", file=sys.stderr)
        return 1
    return 0


def _cmd_estimate(args, client) -> int:
    req = models.EstimateRequest(
        matrix=_matrix_payload(args.matrix),
        samples=args.samples,
        seed=args.seed,
        norm_bound=args.T,
    )
    resp = client.estimate(req)
    print(f"mean = {_fmt_scalar(resp.mean, 'maybe-complex')}  stderr = {resp.stderr!r}")
    print(
        f"samples = {resp.samples}  max|Gly| = {resp.max_abs_gly!r}  "
        f"samples above T^n = {resp.exceeded_norm}"
    )
    if args.output:
        _emit(resp, args.output)
    return 1 if resp.exceeded_norm > 0 else 0


def _cmd_bounds(args, client) -> int:
    req = models.BoundsRequest(
        matrix=_matrix_payload(args.matrix), norm_bound=args.T, exact_cap=args.exact_cap
    )
    resp = client.bounds(req)
    _emit(resp, args.output)
    return 0


def _cmd_verify(args, client) -> int:
    config = _load_config(args.config, models.VerifyConfig)
    report = client.verify(config)
    _emit(report, args.output)
    print(
        f"verify: {report.matrices_tested} matrices, "
        f"{len(report.violations)} violations",
        file=sys.stderr,
    )
    return 1 if report.violations else 0


def _write_concentration_csv(report: models.ConcentrationReportModel, path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["matrix_id", "check", "t", "empirical", "bound", "asserted", "ok"])
        for row in report.rows:
            writer.writerow(
                [row.matrix_id, row.check, repr(row.threshold), repr(row.empirical),
                 repr(row.bound), row.asserted, row.ok]
            )


def _cmd_concentration(args, client) -> int:
    config = _load_config(args.config, models.ConcentrationConfig)
    report = client.concentration(config)
    if args.csv:
        _write_concentration_csv(report, args.csv)
    _emit(report, args.output)
    if report.violations:
        for row in report.violations:
            print(
                f"violation: {row.matrix_id} {row.check} t={row.threshold} "
                f"empirical={row.empirical} > bound={row.bound}",
                file=sys.stderr,
            )
        return 1
    return 0


def _write_tightness_csv(report: models.TightnessReport, path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["n", "delta", "log_perm", "envelope_low", "envelope_high", "envelope_ok",
             "mean_gap_log", "rowmax_gap_log", "real_sqrt_log", "gap_rowmax"]
        )
        for row in report.rows:
            writer.writerow(
                [row.n, repr(row.delta), repr(row.log_perm), repr(row.envelope_low),
                 repr(row.envelope_high), row.envelope_ok, repr(row.mean_gap_log),
                 repr(row.rowmax_gap_log), repr(row.real_sqrt_log), repr(row.gap_rowmax)]
            )


def _cmd_tightness(args, client) -> int:
    config = _load_config(args.config, models.TightnessConfig)
    report = client.tightness(config)
    if args.csv:
        _write_tightness_csv(report, args.csv)
    _emit(report, args.output)
    return 1 if report.violations else 0


def _cmd_serve(args, _client) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permbound",
        description="Exact permanents, Glynn estimates, and bound certificates.",
    )
    parser.add_argument("--server", help="base URL of a running service; default in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("perm", help="exact permanent of a matrix file")
    p.add_argument("matrix")
    p.add_argument("--output", help="also write the JSON response here")
    p.set_defaults(func=_cmd_perm)

    p = sub.add_parser("estimate", help="Monte Carlo Glynn estimate")
    p.add_argument("matrix")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--T", type=float, default=None, help="norm bound, at least the operator norm")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("bounds", help="log-space bound report for a matrix file")
    p.add_argument("matrix")
    p.add_argument("--T", type=float, default=None)
    p.add_argument("--exact-cap", type=int, default=16, dest="exact_cap")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("verify", help="bound soundness sweep over seeded ensembles")
    p.add_argument("--config")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("concentration", help="empirical tails against tail formulas")
    p.add_argument("--config")
    p.add_argument("--output")
    p.add_argument("--csv")
    p.set_defaults(func=_cmd_concentration)

    p = sub.add_parser("tightness", help="scaled-identity decay probe")
    p.add_argument("--config")
    p.add_argument("--output")
    p.add_argument("--csv")
    p.set_defaults(func=_cmd_tightness)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    client = make_client(args.server)
    try:
        return args.func(args, client)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PermboundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
