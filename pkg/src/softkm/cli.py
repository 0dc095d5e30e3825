"""Command-line interface.

Subcommands: solve-global, solve-am, solve-mvskm, check-skmable,
check-tilsdable, eval, bench. Exit codes: 0 on success, 2 on invalid
input, 3 on numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .audits import is_skmable, is_ti_lsdable, _double_center
from .core import numerical_rank
from .errors import InvalidInput, NumericalFailure, SoftKMError
from .io import (
    RunConfig,
    bench,
    format_bench_table,
    load_csv,
    load_labels,
    run,
    write_bench_outputs,
)
from .metrics import accuracy, nmi, purity

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3


def _add_solver_parser(sub, name: str, blurb: str):
    p = sub.add_parser(name, help=blurb)
    p.add_argument("--input", required=True, help="samples-as-rows CSV")
    p.add_argument("--k", type=int, required=True, help="number of prototypes")
    p.add_argument("--lambda", dest="lam", type=float, default=None,
                   help="volume penalty weight (required for solve-mvskm)")
    p.add_argument("--epsilon", type=float, default=1e-8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-8,
                   help="relative objective tolerance for iterative solvers")
    p.add_argument("--max-iters", type=int, default=300)
    p.add_argument("--out", required=True, help="output directory")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="softkm",
        description="Soft k-means solvers, decomposability checks, and scoring.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    _add_solver_parser(sub, "solve-global", "closed-form global solver")
    _add_solver_parser(sub, "solve-am", "alternating-minimization baseline")
    _add_solver_parser(sub, "solve-mvskm", "minimal-volume solver")

    for name, blurb in (("check-skmable", "exact factorization feasibility"),
                        ("check-tilsdable", "kernel-side feasibility")):
        p = sub.add_parser(name, help=blurb)
        p.add_argument("--input", required=True)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--tau", type=float, default=1e-10)
        if name == "check-tilsdable":
            p.add_argument("--kernel", action="store_true",
                           help="treat the input as an n x n kernel instead of data")

    p = sub.add_parser("eval", help="score predicted labels against ground truth")
    p.add_argument("--pred", required=True)
    p.add_argument("--truth", required=True)

    p = sub.add_parser("bench", help="run a JSON-described sweep on labeled data")
    p.add_argument("--spec", required=True)
    return parser


def _solver_name(command: str) -> str:
    return command.removeprefix("solve-")


def _cmd_solve(args) -> int:
    cfg = RunConfig(
        solver=_solver_name(args.command),
        k=args.k,
        input_path=args.input,
        output_dir=args.out,
        lam=args.lam,
        epsilon=args.epsilon,
        seed=args.seed,
        rel_obj_tol=args.tol,
        max_iters=args.max_iters,
    )
    res = run(cfg)
    print(f"solver={res.solver} k={res.k} objective={res.objective:.12g} "
          f"iterations={res.iterations} out={args.out}")
    return EXIT_OK


def _cmd_check(args) -> int:
    X, _ = load_csv(args.input)
    if args.command == "check-skmable":
        ok = is_skmable(X, args.k, args.tau)
        rank = numerical_rank(X.centered, args.tau)
    else:
        if getattr(args, "kernel", False):
            K = X.values
            if K.shape[0] != K.shape[1]:
                raise InvalidInput("--kernel input must be a square matrix")
        else:
            K = X.values.T @ X.values
        ok = is_ti_lsdable(K, args.k, args.tau)
        rank = numerical_rank(_double_center(np.asarray(K, dtype=float)), args.tau)
    print("true" if ok else "false")
    print(f"numerical_rank={rank}")
    return EXIT_OK


def _cmd_eval(args) -> int:
    pred = load_labels(args.pred)
    truth = load_labels(args.truth)
    print(f"ACC {accuracy(pred, truth):.6f}")
    print(f"NMI {nmi(pred, truth):.6f}")
    print(f"Purity {purity(pred, truth):.6f}")
    return EXIT_OK


def _expand_bench_spec(spec: dict) -> tuple[list[RunConfig], str, str]:
    for key in ("input", "out", "runs"):
        if key not in spec:
            raise InvalidInput(f"bench spec is missing {key!r}")
    input_path, out_dir = spec["input"], spec["out"]
    configs = []
    for i, entry in enumerate(spec["runs"]):
        solver = entry.get("solver")
        if solver not in ("global", "am", "mvskm"):
            raise InvalidInput(f"runs[{i}]: unknown solver {solver!r}")
        seeds = entry.get("seeds", [entry.get("seed", 0)])
        if solver == "global":
            seeds = seeds[:1]  # deterministic: one row regardless of seeds
        for seed in seeds:
            configs.append(RunConfig(
                solver=solver,
                k=int(entry.get("k", 0)),
                input_path=input_path,
                output_dir=f"{out_dir}/run_{len(configs):03d}_{solver}",
                lam=entry.get("lambda"),
                epsilon=float(entry.get("epsilon", 1e-8)),
                seed=int(seed),
                rel_obj_tol=float(entry.get("tol", 1e-8)),
                max_iters=int(entry.get("max_iters", 300)),
            ))
    return configs, input_path, out_dir


def _cmd_bench(args) -> int:
    try:
        with open(args.spec, encoding="utf-8") as fh:
            spec = json.load(fh)
    except FileNotFoundError:
        raise InvalidInput(f"bench spec not found: {args.spec}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"bench spec is not valid JSON: {exc}") from None
    configs, input_path, out_dir = _expand_bench_spec(spec)
    _, truth = load_csv(input_path)
    if truth is None:
        raise InvalidInput("bench input must carry a label column")
    rows = bench(configs, truth)
    write_bench_outputs(rows, out_dir)
    print(format_bench_table(rows))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command.startswith("solve-"):
            return _cmd_solve(args)
        if args.command.startswith("check-"):
            return _cmd_check(args)
        if args.command == "eval":
            return _cmd_eval(args)
        return _cmd_bench(args)
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (InvalidInput, SoftKMError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
