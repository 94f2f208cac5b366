"""Command-line harness for desk-scale experiments.

Three subcommands: ``learn`` runs the learner once and verifies the returned
allocation, ``sweep`` measures sample counts across player counts (the
sample-complexity figure), ``cw`` measures the width constant of
cyclic-permutation vertex simplices over random strictly convex games.

All outputs are CSV with fixed headers; rows are computed in parallel worker
processes (capped by the CORE_PICKER_THREADS environment variable) and sorted
before writing, so outputs are byte-identical for a fixed seed regardless of
worker count.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .games import (
    gen_convex_boundary,
    gen_permutahedron,
    gen_strictly_convex,
    gen_unit_game,
    marginal_increments,
)
from .geometry import simplex_width
from .learner import DEFAULT_MAX_EPOCHS, LearnerConfig, common_points_picking
from .oracle import NoiseModel, RewardOracle
from .verify import core_membership

GENERATORS = {
    "strict": gen_strictly_convex,
    "convex": gen_convex_boundary,
    "unit": lambda n, seed, noise: gen_unit_game(n, noise),
    "permutahedron": lambda n, seed, noise: gen_permutahedron(n, noise),
}

MEMBERSHIP_TOL = 1e-9


def trial_streams(seed: int, n: int, trial: int):
    """Independent (game, oracle) seed streams derived from one root seed."""
    root = np.random.SeedSequence(entropy=seed, spawn_key=(n, trial))
    return root.spawn(2)


def run_single(n, gen, perm_choice, delta, seed, noise, max_epochs, trial=0):
    """One full pipeline run: generate, learn, verify.  Returns a result dict."""
    game_stream, oracle_stream = trial_streams(seed, n, trial)
    game = GENERATORS[gen](n, game_stream, noise)
    oracle = RewardOracle(game, oracle_stream)
    config = LearnerConfig(delta=delta, perm_choice=perm_choice, max_epochs=max_epochs)
    report = common_points_picking(oracle, config)
    check = core_membership(game, report.allocation, tol=MEMBERSHIP_TOL)
    return {
        "n": n,
        "trial": trial,
        "seed": seed,
        "delta": delta,
        "perm_choice": perm_choice,
        "epochs": report.epochs,
        "samples": report.samples,
        "stopped": report.stopped_naturally,
        "violation_max": check.max_violation,
        "efficiency_gap": check.efficiency_gap,
        "is_member": check.is_member,
        "allocation": report.allocation,
    }


def _sweep_worker(args):
    n, trial, gen, perm_choice, delta, seed, max_epochs = args
    r = run_single(n, gen, perm_choice, delta, seed, "bernoulli", max_epochs, trial)
    return (n, trial, r["samples"], r["stopped"], r["violation_max"])


def _cw_worker(args):
    n, trial, seed = args
    game_stream, _ = trial_streams(seed, n, trial)
    increments = marginal_increments(n, game_stream, coeff=0.9)
    margin = float(np.min(np.diff(increments)))
    vertices = [increments[(np.arange(n) + k) % n] for k in range(n)]
    width = simplex_width(vertices)
    return (n, trial, width, n * margin / width)


def _worker_count() -> int:
    cap = os.environ.get("CORE_PICKER_THREADS")
    if cap is not None:
        return max(1, int(cap))
    return min(os.cpu_count() or 1, 8)


def _parallel_map(fn, jobs):
    workers = _worker_count()
    if workers == 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def _write_csv(path, header, rows):
    lines = [header] + [",".join(_fmt(v) for v in row) for row in rows]
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)  # shortest digits that round-trip the double exactly
    return str(v)


def cmd_learn(args) -> int:
    r = run_single(args.n, args.gen, args.perms, args.delta, args.seed,
                   args.noise, args.max_epochs)
    alloc = " ".join(repr(float(v)) for v in r["allocation"])
    print(f"allocation: {alloc}")
    row = (r["n"], r["delta"], r["perm_choice"], r["seed"], r["epochs"],
           r["samples"], r["stopped"], r["violation_max"])
    _write_csv(args.out, "n,delta,perm_choice,seed,epochs,samples,stopped,violation_max", [row])
    if r["stopped"] and not r["is_member"]:
        return 1
    return 0


def cmd_sweep(args) -> int:
    jobs = [
        (n, t, args.gen, args.perms, args.delta, args.seed, args.max_epochs)
        for n in range(args.n_min, args.n_max + 1)
        for t in range(args.trials)
    ]
    rows = sorted(_parallel_map(_sweep_worker, jobs))
    _write_csv(args.out, "n,trial,samples,stopped,violation_max", rows)
    return 0


def cmd_cw(args) -> int:
    jobs = [(n, t, args.seed) for n in args.n for t in range(args.trials)]
    rows = sorted(_parallel_map(_cw_worker, jobs))
    _write_csv(args.out, "n,trial,width,c_w", rows)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="core-picker",
        description="Expected-core learning experiments for convex stochastic games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    learn = sub.add_parser("learn", help="one learner run plus core verification")
    learn.add_argument("--n", type=int, required=True)
    learn.add_argument("--gen", choices=sorted(GENERATORS), default="strict")
    learn.add_argument("--perms", choices=["adjacent", "cyclic"], default="adjacent")
    learn.add_argument("--delta", type=float, default=0.1)
    learn.add_argument("--seed", type=int, default=0)
    learn.add_argument("--noise", default="bernoulli",
                       help="bernoulli or uniform:<radius>")
    learn.add_argument("--max-epochs", type=int, default=DEFAULT_MAX_EPOCHS)
    learn.add_argument("--out", default=None, help="CSV path (default stdout)")
    learn.set_defaults(fn=cmd_learn)

    sweep = sub.add_parser("sweep", help="sample counts across player counts")
    sweep.add_argument("--n-min", type=int, default=2)
    sweep.add_argument("--n-max", type=int, default=6)
    sweep.add_argument("--trials", type=int, default=20)
    sweep.add_argument("--gen", choices=["strict", "convex"], default="strict")
    sweep.add_argument("--perms", choices=["adjacent", "cyclic"], default="adjacent")
    sweep.add_argument("--delta", type=float, default=0.1)
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--max-epochs", type=int, default=DEFAULT_MAX_EPOCHS)
    sweep.add_argument("--out", default=None)
    sweep.set_defaults(fn=cmd_sweep)

    cw = sub.add_parser("cw", help="width constant of cyclic-vertex simplices")
    cw.add_argument("--n", type=int, nargs="+", default=[10, 50])
    cw.add_argument("--trials", type=int, default=500)
    cw.add_argument("--seed", type=int, default=0)
    cw.add_argument("--out", default=None)
    cw.set_defaults(fn=cmd_cw)
    return parser


def _validate(parser, args) -> None:
    if args.command == "learn":
        if not 2 <= args.n <= 20:
            parser.error("--n must be in 2..20")
        if not 0.0 < args.delta < 1.0:
            parser.error("--delta must lie in (0, 1)")
        try:
            NoiseModel.parse(args.noise)
        except ValueError as exc:
            parser.error(str(exc))
        if args.max_epochs < 1:
            parser.error("--max-epochs must be positive")
    elif args.command == "sweep":
        if not 2 <= args.n_min <= args.n_max <= 10:
            parser.error("need 2 <= n-min <= n-max <= 10")
        if args.trials < 1:
            parser.error("--trials must be positive")
        if not 0.0 < args.delta < 1.0:
            parser.error("--delta must lie in (0, 1)")
    elif args.command == "cw":
        if any(not 2 <= n <= 1000 for n in args.n):
            parser.error("--n entries must be in 2..1000")
        if args.trials < 1:
            parser.error("--trials must be positive")


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
