"""Command-line front end: ``biracah bi-table | racah | verify``.

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error,
3 numeric-domain error. JSON output follows the schemas in ``schemas/``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import verify as verify_mod
from .bannai import BIParams, eigenvalue, grid, h_norm, recurrence_coeffs, value_table, weights
from .numcore import DEFAULT_PREC, NumericDomainError, hp_str, parse_rational, precision, rational_str
from .racah import BIContext, mus_from_bi, racah_matrix
from .spherewave import RacahContext

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _rational(text: str):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _default_prec() -> int:
    env = os.environ.get("BIRACAH_PREC")
    if env is None:
        return DEFAULT_PREC
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"BIRACAH_PREC must be an integer, got {env!r}") from None


def build_parser(default_prec: int = DEFAULT_PREC) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("parameters")
    for name in ("mu1", "mu2", "mu3", "rho1", "rho2", "r1", "r2"):
        g.add_argument(f"--{name}", type=_rational)
    g.add_argument("--N", type=int, required=True)
    common.add_argument("--prec", type=int, default=default_prec, help="working precision in decimal digits")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="biracah", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("bi-table", parents=[common], help="Bannai-Ito grid, weights, recurrence and values")
    rp = sub.add_parser("racah", parents=[common], help="Racah coefficient matrix")
    vp = sub.add_parser("verify", parents=[common], help="run a verification suite")
    vp.add_argument("suite", choices=(*verify_mod.SUITES, "all"))
    for p in (rp, vp):
        p.add_argument("--corrupt-phase", action="store_true", help="flip the phase on odd S (test hook)")
        p.add_argument("--u-rule", choices=("a_prev_c", "a_c", "a_prev_c_prev"), default="a_prev_c")
    return parser


def _mu_given(args) -> bool:
    return any(getattr(args, k) is not None for k in ("mu1", "mu2", "mu3"))


def _bi_given(args) -> bool:
    return any(getattr(args, k) is not None for k in ("rho1", "rho2", "r1", "r2"))


def resolve_params(args, need_mu: bool = False):
    """Return (RacahContext or None, BIParams) from either parameter form.

    With ``need_mu`` direct Bannai-Ito parameters are mapped back to
    (mu1, mu2, mu3); parameters outside that image are rejected.
    """
    if _mu_given(args) and _bi_given(args):
        raise UsageError("give either --mu1/--mu2/--mu3 or --rho1/--rho2/--r1/--r2, not both")
    if _mu_given(args):
        missing = [k for k in ("mu1", "mu2", "mu3") if getattr(args, k) is None]
        if missing:
            raise UsageError(f"missing {', '.join('--' + m for m in missing)}")
        ctx = RacahContext(args.mu1, args.mu2, args.mu3, args.N)
        return ctx, ctx.bi
    if _bi_given(args):
        missing = [k for k in ("rho1", "rho2", "r1", "r2") if getattr(args, k) is None]
        if missing:
            raise UsageError(f"missing {', '.join('--' + m for m in missing)}")
        p = BIParams(args.rho1, args.rho2, args.r1, args.r2, args.N)
        if need_mu:
            ctx = RacahContext(*mus_from_bi(p), p.N)
            return ctx, ctx.bi
        return None, p
    raise UsageError("no parameters given")


def _params_dict(p: BIParams) -> dict:
    return {
        "rho1": rational_str(p.rho1),
        "rho2": rational_str(p.rho2),
        "r1": rational_str(p.r1),
        "r2": rational_str(p.r2),
        "N": p.N,
    }


def _mu_dict(ctx) -> dict | None:
    if ctx is None:
        return None
    return {"mu1": rational_str(ctx.mu1), "mu2": rational_str(ctx.mu2), "mu3": rational_str(ctx.mu3)}


def _csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerows(rows)
    return buf.getvalue()


def cmd_bi_table(args) -> tuple[int, str]:
    ctx, p = resolve_params(args)
    size = p.N + 1
    coeffs = [recurrence_coeffs(p, n) for n in range(size)]
    doc = {
        "params": _params_dict(p),
        "mu": _mu_dict(ctx),
        "x": [rational_str(grid(p, S)) for S in range(size)],
        "w": [rational_str(w) for w in weights(p)],
        "lambda": [rational_str(eigenvalue(p, n)) for n in range(size)],
        "a": [rational_str(a) for a, _ in coeffs],
        "c": [rational_str(c) for _, c in coeffs],
        "h_N": rational_str(h_norm(p)),
        "B": [[rational_str(v) for v in row] for row in value_table(p)],
    }
    if args.format == "json":
        return EXIT_OK, json.dumps(doc, indent=2)
    rows = [["quantity", "i", "j", "value"]]
    for key in ("x", "w", "lambda", "a", "c"):
        rows += [[key, i, "", v] for i, v in enumerate(doc[key])]
    rows.append(["h_N", "", "", doc["h_N"]])
    rows += [["B", n, S, v] for n, row in enumerate(doc["B"]) for S, v in enumerate(row)]
    return EXIT_OK, _csv(rows)


def cmd_racah(args) -> tuple[int, str]:
    ctx, p = resolve_params(args)
    R = racah_matrix(ctx if ctx is not None else BIContext(p), corrupt_phase=args.corrupt_phase, u_rule=args.u_rule)
    doc = {
        "params": _params_dict(p),
        "mu": _mu_dict(ctx),
        "precision": args.prec,
        "matrix": [[hp_str(v) for v in row] for row in R.entries],
        "residual": hp_str(R.residual),
    }
    if args.format == "json":
        return EXIT_OK, json.dumps(doc, indent=2)
    rows = [["quantity", "i", "j", "value"]]
    rows += [["R", S, K, v] for S, row in enumerate(doc["matrix"]) for K, v in enumerate(row)]
    rows.append(["residual", "", "", doc["residual"]])
    return EXIT_OK, _csv(rows)


def cmd_verify(args) -> tuple[int, str]:
    ctx, _ = resolve_params(args, need_mu=True)
    config = verify_mod.VerifyConfig(seed=args.seed, corrupt_phase=args.corrupt_phase, u_rule=args.u_rule)
    report = verify_mod.run(args.suite, ctx, config)
    code = EXIT_OK if report.passed else EXIT_FAIL
    if args.format == "json":
        return code, report.to_json()
    rows = [["name", "max_abs_err", "max_rel_err", "tolerance", "pass"]]
    rows += [[c.name, c.max_abs_err, c.max_rel_err, c.tolerance, str(c.passed).lower()] for c in report.per_check]
    return code, _csv(rows)


COMMANDS = {"bi-table": cmd_bi_table, "racah": cmd_racah, "verify": cmd_verify}


def main(argv=None) -> int:
    try:
        parser = build_parser(_default_prec())
    except UsageError as exc:
        print(f"biracah: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        with precision(args.prec):
            code, out = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"biracah: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericDomainError as exc:
        print(f"biracah: numeric-domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"biracah: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(out if out.endswith("\n") else out + "\n")
    return code
