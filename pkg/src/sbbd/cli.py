"""Command-line interface.

Subcommands: design verify, od construct, od verify, compose, analyze,
simulate, mask.  Exit codes: 0 success, 1 verification failure, 2 usage
error.  All randomness is seeded; --seed defaults to 1729 so repeated
invocations are byte-identical.

Design matrices travel as header-less CSV, which does not carry the
(v1, v2) split.  Commands reading a CSV accept --v1/--v2 and default to the
square split when the column count is a perfect square.  Files that start
with '{' are parsed as SB-block JSON, which embeds v1 and v2.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import (
    DesignMatrix,
    SbbdError,
    a_optimality,
    blocks_from_json,
    blocks_to_json,
    blocks_to_matrix,
    catalog_by_id,
    compose,
    construct_od1,
    cyclic_shift_perms,
    design_from_json,
    matrix_from_csv,
    matrix_to_blocks,
    matrix_to_csv,
    od_from_csv,
    od_to_csv,
    permute_extension,
    random_effects,
    simulate,
)
from .estimator import EffectVector
from .masks import export_masks, schedule_to_bytes, schedule_to_json

DEFAULT_SEED = 1729


class UsageError(Exception):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_design(path: str, v1, v2) -> DesignMatrix:
    text = _read_text(path)
    if not text.strip():
        raise UsageError(f"no design data in {path!r}")
    if text.lstrip().startswith("{"):
        return blocks_to_matrix(blocks_from_json(text))
    first = text.strip().splitlines()[0]
    cols = len(first.split(","))
    if v1 is None and v2 is None:
        root = math.isqrt(cols)
        if root * root != cols:
            raise UsageError(
                f"{cols} columns is not a perfect square; pass --v1 (and"
                " optionally --v2)"
            )
        v1 = v2 = root
    elif v1 is not None and v2 is None:
        if cols % v1:
            raise UsageError(f"--v1 {v1} does not divide {cols} columns")
        v2 = cols // v1
    elif v1 is None:
        if cols % v2:
            raise UsageError(f"--v2 {v2} does not divide {cols} columns")
        v1 = cols // v2
    if v1 * v2 != cols:
        raise UsageError(f"--v1 {v1} x --v2 {v2} != {cols} columns")
    return matrix_from_csv(text, v1, v2)


def _write_output(data: str, out) -> None:
    if out is None or out == "-":
        sys.stdout.write(data)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(data)


def _frac_str(x: Fraction) -> str:
    return str(Fraction(x))


def _cmd_design_verify(args) -> int:
    d = design_from_json(_read_text(args.file))
    k = str(d.k) if d.is_bibd else "variable"
    print(f"v={d.v} b={d.b} r={d.r} lambda={d.lam} k={k}")
    return 0


def _cmd_od_construct(args) -> int:
    od = construct_od1(args.q)
    _write_output(od_to_csv(od), args.out)
    if args.out and args.out != "-":
        print(f"wrote OD_1({od.s},{od.n}) with {od.n_rows} rows to {args.out}")
    return 0


def _cmd_od_verify(args) -> int:
    od = od_from_csv(_read_text(args.file))
    print(f"ordered design verified: eta={od.eta} s={od.s} n={od.n} rows={od.n_rows}")
    return 0


def _resolve_block_design(ref: str):
    if ref.startswith("catalog:"):
        return catalog_by_id(ref.split(":", 1)[1])
    return design_from_json(_read_text(ref))


def _resolve_od(ref: str):
    if ref.isdigit():
        return construct_od1(int(ref))
    return od_from_csv(_read_text(ref))


def _cmd_compose(args) -> int:
    d = _resolve_block_design(args.design)
    od = _resolve_od(args.od)
    composed = compose(d, od)
    x = composed.x
    if args.perms:
        name, _, count = args.perms.partition(":")
        if name != "cyclic" or not count.isdigit() or int(count) < 1:
            raise UsageError("--perms expects cyclic:<u> with u >= 1")
        x = permute_extension(x, cyclic_shift_perms(x.v2, int(count)))
    if args.out and args.out.endswith(".json"):
        payload = blocks_to_json(matrix_to_blocks(x))
        _write_output(payload + "\n", args.out)
    else:
        _write_output(matrix_to_csv(x), args.out)
    if args.out and args.out != "-":
        print(
            f"wrote {x.n_rows} x {x.v1 * x.v2} design matrix"
            f" (v1={x.v1}, v2={x.v2}) to {args.out};"
            f" spanning guaranteed: {str(composed.spanning_guaranteed).lower()}"
        )
    return 0


def _analyze_payload(x: DesignMatrix) -> dict:
    report = a_optimality(x)
    return {
        "lambda": list(report.params.lam),
        "spanning": report.is_spanning,
        "spectrum": [
            {"value": _frac_str(val), "mult": mult}
            for val, mult in report.spectral.merged()
        ],
        "a_criterion": _frac_str(report.a_criterion),
        "a_lower_bound": (
            _frac_str(report.a_lower_bound)
            if report.a_lower_bound is not None
            else None
        ),
        "semi_regular": report.is_semi_regular,
        "regular": report.is_regular,
        "a_optimal_in_omega": report.is_a_optimal_in_omega,
    }


def _cmd_analyze(args) -> int:
    x = _load_design(args.file, args.v1, args.v2)
    payload = _analyze_payload(x)
    if args.json:
        print(json.dumps(payload, indent=2))
        return 0
    mu, l12, l21, l22 = payload["lambda"]
    kind = "SBBD" if payload["spanning"] else "SBBD*"
    print(f"{kind}({x.v1}, {x.v2}, {x.n_rows}); Lambda = ({mu}, {l12}, {l21}, {l22})")
    print(f"spanning: {str(payload['spanning']).lower()}")
    print("spectrum (eigenvalue x multiplicity):")
    for item in payload["spectrum"]:
        print(f"  {item['value']} x {item['mult']}")
    print(f"A-criterion: {payload['a_criterion']}")
    bound = payload["a_lower_bound"]
    print(f"A lower bound: {bound if bound is not None else 'n/a (not semi-regular)'}")
    print(f"semi-regular: {str(payload['semi_regular']).lower()}")
    print(f"regular: {str(payload['regular']).lower()}")
    print(f"A-optimal in Omega: {str(payload['a_optimal_in_omega']).lower()}")
    return 0


def _cmd_simulate(args) -> int:
    x = _load_design(args.file, args.v1, args.v2)
    if args.tau:
        blob = json.loads(_read_text(args.tau))
        tau = EffectVector(int(blob["v1"]), int(blob["v2"]), blob["tau"])
    else:
        tau = random_effects(x.v1, x.v2, scale=1.0, seed=args.seed)
    report = simulate(x, tau, sigma=args.sigma, runs=args.runs, seed=args.seed)
    if args.json:
        payload = {
            "runs": report.runs,
            "sigma": report.sigma,
            "alpha": report.alpha,
            "predicted_variance": report.predicted_variance,
            "max_relative_deviation": report.max_relative_deviation,
            "contrasts": [
                {
                    "i": i,
                    "j": j,
                    "true": report.true_contrasts[idx],
                    "mean": report.empirical_mean[idx],
                    "variance": report.empirical_variance[idx],
                }
                for idx, (i, j) in enumerate(report.contrast_index)
            ],
        }
        print(json.dumps(payload, indent=2))
        return 0
    print(
        f"runs={report.runs} sigma={report.sigma} alpha={report.alpha}"
        f" predicted variance={report.predicted_variance:.6g}"
    )
    print(f"max relative deviation: {report.max_relative_deviation:.4%}")
    print(f"{'contrast':>10} {'true':>12} {'mean':>12} {'variance':>12}")
    for idx, (i, j) in enumerate(report.contrast_index):
        print(
            f"{f'({i},{j})':>10} {report.true_contrasts[idx]:>12.6f}"
            f" {report.empirical_mean[idx]:>12.6f}"
            f" {report.empirical_variance[idx]:>12.6f}"
        )
    return 0


def _cmd_mask(args) -> int:
    x = _load_design(args.file, args.v1, args.v2)
    schedule = export_masks(x)
    if args.format == "json":
        _write_output(schedule_to_json(schedule) + "\n", args.out)
    else:
        if args.out is None or args.out == "-":
            sys.stdout.buffer.write(schedule_to_bytes(schedule))
        else:
            with open(args.out, "wb") as fh:
                fh.write(schedule_to_bytes(schedule))
    if args.out and args.out != "-":
        print(
            f"wrote {schedule.n_masks} masks of shape"
            f" {schedule.v1}x{schedule.v2} to {args.out}"
        )
    return 0


def _add_dims(p: argparse.ArgumentParser) -> None:
    p.add_argument("--v1", type=int, help="left point count for CSV input")
    p.add_argument("--v2", type=int, help="right point count for CSV input")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sbbd",
        description="construct, verify, analyze, and simulate spanning"
        " bipartite block designs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_design = sub.add_parser("design", help="block-design utilities")
    design_sub = p_design.add_subparsers(dest="subcommand", required=True)
    p_dv = design_sub.add_parser("verify", help="verify a block-design JSON file")
    p_dv.add_argument("file")
    p_dv.set_defaults(func=_cmd_design_verify)

    p_od = sub.add_parser("od", help="ordered-design utilities")
    od_sub = p_od.add_subparsers(dest="subcommand", required=True)
    p_oc = od_sub.add_parser("construct", help="build an OD_1(q,q) over GF(q)")
    p_oc.add_argument("--q", type=int, required=True, help="prime power <= 49")
    p_oc.add_argument("--out", help="output CSV path (default stdout)")
    p_oc.set_defaults(func=_cmd_od_construct)
    p_ov = od_sub.add_parser("verify", help="verify an ordered-design CSV file")
    p_ov.add_argument("file")
    p_ov.set_defaults(func=_cmd_od_verify)

    p_compose = sub.add_parser(
        "compose", help="compose a block design with an ordered design"
    )
    p_compose.add_argument(
        "--design", required=True, help="block-design JSON file or catalog:<id>"
    )
    p_compose.add_argument(
        "--od", required=True, help="ordered-design CSV file or a prime power q"
    )
    p_compose.add_argument(
        "--perms", help="cyclic:<u> stacks u layers of cyclic column shifts"
    )
    p_compose.add_argument(
        "--out", help="output path; .json writes SB-block JSON, else CSV"
    )
    p_compose.set_defaults(func=_cmd_compose)

    p_analyze = sub.add_parser("analyze", help="verify conditions and report spectrum")
    p_analyze.add_argument("file", help="design CSV / SB-block JSON, or - for stdin")
    p_analyze.add_argument("--json", action="store_true")
    _add_dims(p_analyze)
    p_analyze.set_defaults(func=_cmd_analyze)

    p_sim = sub.add_parser("simulate", help="Monte Carlo variance-balance check")
    p_sim.add_argument("file", help="design CSV / SB-block JSON, or - for stdin")
    p_sim.add_argument("--sigma", type=float, required=True)
    p_sim.add_argument("--runs", type=int, required=True)
    p_sim.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_sim.add_argument("--tau", help="effect-vector JSON file (default: seeded random)")
    p_sim.add_argument("--json", action="store_true")
    _add_dims(p_sim)
    p_sim.set_defaults(func=_cmd_simulate)

    p_mask = sub.add_parser("mask", help="export DropConnect masks")
    p_mask.add_argument("file", help="design CSV / SB-block JSON, or - for stdin")
    p_mask.add_argument("--format", choices=("json", "bin"), default="json")
    p_mask.add_argument("--out", help="output path (default stdout)")
    _add_dims(p_mask)
    p_mask.set_defaults(func=_cmd_mask)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"cannot read/write: {exc}", file=sys.stderr)
        return 2
    except SbbdError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
