"""Command-line interface.

Subcommands
-----------
run
    Execute a configured sweep and write the trial CSV.
profile-table
    Emit the structure-function table for the three simulation
    profiles (flat, power-law, exponential) at a given sparsity.
refine-study
    Refinement trajectories from a diagonal-screening initializer,
    centered vs. uncentered operator, one row per iteration.
diagnostics
    Run a theory check suite (dk | noise-scaling | complexity) and
    write its report.

Machine output goes to the file given by ``--out`` (stdout when
``--out -``); progress and errors go to stderr. Exit code is 0 on
success and 1 on any failure, including bad flags.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import sys

import numpy as np

from . import harness, theory
from .estimators import dt_estimate
from .exceptions import ConfigError, SepcaError
from .model import centered_gamma, draw_samples, embed_spike
from .profiles import make_profile

TABLE_PROFILES = (
    ("flat", "flat", {}),
    ("power-law", "power-law-amplitude", {"alpha": 0.5, "offset": 0.1}),
    ("exponential", "exponential-amplitude", {"rate": 1.0, "offset": 0.1}),
)

# Fixed setups for the diagnostics suites; documented in the README.
DK_SETUP = dict(n=30, k=5, theta=3.0, m_values=(20, 200), instances=1000)
NOISE_SETUP = dict(n=200, k=10, theta=3.0, m_fixed=500, p_pair=(10, 40),
                   p_fixed=20, m_pair=(200, 800), n_subsets=100)
COMPLEXITY_SETUP = dict(n_profiles=10_000, max_k=64, table_k=40)


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; the documented
    # contract is 0/1.
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="sepca", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a configured benchmark sweep")
    p_run.add_argument("--config", required=True, help="JSON experiment config")
    p_run.add_argument("--out", default=None, help="output CSV path ('-' for stdout)")
    p_run.add_argument("--seed", type=int, default=None, help="override master_seed")
    p_run.add_argument("--threads", default=None, help="override worker count (int or 'auto')")
    p_run.add_argument("--population", action="store_true",
                       help="use the noiseless population matrix instead of samples")
    p_run.add_argument("--timing", action="store_true",
                       help="record wall times (breaks byte-reproducibility)")

    p_tab = sub.add_parser("profile-table", help="structure-function table for the three profiles")
    p_tab.add_argument("--k", type=int, required=True)
    p_tab.add_argument("--out", required=True, help="output CSV path ('-' for stdout)")

    p_ref = sub.add_parser("refine-study", help="refinement trajectories, both operators")
    p_ref.add_argument("--config", required=True)
    p_ref.add_argument("--out", default=None, help="output CSV path ('-' for stdout)")
    p_ref.add_argument("--seed", type=int, default=None)
    p_ref.add_argument("--threads", default=None)

    p_diag = sub.add_parser("diagnostics", help="run a theory check suite")
    p_diag.add_argument("--which", required=True, choices=("dk", "noise-scaling", "complexity"))
    p_diag.add_argument("--out", required=True, help="report CSV path ('-' for stdout)")
    p_diag.add_argument("--seed", type=int, default=0)
    return parser


@contextlib.contextmanager
def _open_out(path: str):
    if path == "-":
        yield sys.stdout
        return
    try:
        fh = open(path, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise ConfigError(f"cannot write output {path!r}: {exc}") from exc
    try:
        yield fh
    finally:
        fh.close()


def _apply_overrides(config, args):
    updates = {}
    if getattr(args, "seed", None) is not None:
        if not 0 <= args.seed < 2 ** 64:
            raise ConfigError("--seed must be an unsigned 64-bit integer")
        updates["master_seed"] = args.seed
    if getattr(args, "threads", None) is not None:
        t = args.threads
        if t != "auto":
            try:
                t = int(t)
            except ValueError:
                raise ConfigError("--threads must be a positive integer or 'auto'") from None
            if t < 1:
                raise ConfigError("--threads must be a positive integer or 'auto'")
        updates["threads"] = t
    if getattr(args, "out", None) is not None:
        updates["out_path"] = args.out
    if updates:
        import dataclasses

        config = dataclasses.replace(config, **updates)
    return config


def _cmd_run(args) -> int:
    config = _apply_overrides(harness.load_config(args.config), args)
    records = harness.run_experiment(
        config, population=args.population, timing=args.timing,
        progress=harness.print_progress,
    )
    with _open_out(config.out_path) as fh:
        harness.write_csv(records, fh)
    harness.print_progress(f"wrote {len(records)} records to {config.out_path}")
    return 0


def _cmd_profile_table(args) -> int:
    if args.k < 1:
        raise ConfigError("--k must be a positive integer")
    columns = {}
    for label, kind, params in TABLE_PROFILES:
        columns[label] = theory.structure_function(make_profile(kind, args.k, **params))
    with _open_out(args.out) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["p"] + [label for label, _, _ in TABLE_PROFILES])
        for p in range(1, args.k + 1):
            writer.writerow([str(p)] + [f"{columns[label](p):.9g}" for label, _, _ in TABLE_PROFILES])
    return 0


def _cmd_refine_study(args) -> int:
    config = _apply_overrides(harness.load_config(args.config), args)
    rows = harness.run_refine_study(config, progress=harness.print_progress)
    with _open_out(config.out_path) as fh:
        harness.write_refine_study_csv(rows, fh)
    harness.print_progress(f"wrote {len(rows)} rows to {config.out_path}")
    return 0


def _diag_dk(out, seed: int) -> int:
    cfg = DK_SETUP
    rng = np.random.default_rng(seed)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["instance", "m", "p", "lhs", "rhs", "satisfied"])
    violations = 0
    for i in range(cfg["instances"]):
        m = cfg["m_values"][i % len(cfg["m_values"])]
        weights = rng.uniform(0.05, 1.0, size=cfg["k"])
        profile = make_profile("custom", cfg["k"], weights=weights)
        model = embed_spike(profile, cfg["n"], theta=cfg["theta"], rng=rng,
                            signs=rng.choice(np.array([-1.0, 1.0]), size=cfg["k"]))
        gamma = centered_gamma(draw_samples(model, m, rng))
        # Rotate over true, random (support-touching), and data-driven
        # supports so the inequality is exercised on all three shapes.
        which = i % 3
        if which == 0:
            support = model.support
        elif which == 1:
            p = int(rng.integers(1, 2 * cfg["k"] + 1))
            extra = rng.choice(cfg["n"], size=min(p, cfg["n"]), replace=False)
            support = np.union1d(extra, model.support[:1])
        else:
            # union in the leading true index so the screened support
            # always carries some spike energy (the bound's precondition)
            support = np.union1d(dt_estimate(gamma, cfg["k"]).support,
                                 model.support[:1])
        entry = theory.dk_alignment_check(gamma, model, support)
        if not entry.satisfied:
            violations += 1
        writer.writerow([str(i), str(m), str(len(np.asarray(support))),
                         f"{entry.lhs:.9g}", f"{entry.rhs:.9g}",
                         "true" if entry.satisfied else "false"])
    harness.print_progress(
        f"dk: {cfg['instances'] - violations}/{cfg['instances']} satisfied")
    return 0 if violations == 0 else 1


def _diag_noise(out, seed: int) -> int:
    cfg = NOISE_SETUP
    rng = np.random.default_rng(seed)
    profile = make_profile("flat", cfg["k"])
    model = embed_spike(profile, cfg["n"], theta=cfg["theta"], rng=rng)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["p", "m", "median_spectral_norm"])
    medians = {}
    for p, med in theory.noise_block_scaling(model, cfg["m_fixed"], cfg["p_pair"],
                                             cfg["n_subsets"], rng):
        medians[(p, cfg["m_fixed"])] = med
        writer.writerow([str(p), str(cfg["m_fixed"]), f"{med:.9g}"])
    for m in cfg["m_pair"]:
        (_, med), = theory.noise_block_scaling(model, m, [cfg["p_fixed"]],
                                               cfg["n_subsets"], rng)
        medians[(cfg["p_fixed"], m)] = med
        writer.writerow([str(cfg["p_fixed"]), str(m), f"{med:.9g}"])
    p_lo, p_hi = cfg["p_pair"]
    m_lo, m_hi = cfg["m_pair"]
    ratio_p = medians[(p_hi, cfg["m_fixed"])] / medians[(p_lo, cfg["m_fixed"])]
    ratio_m = medians[(cfg["p_fixed"], m_lo)] / medians[(cfg["p_fixed"], m_hi)]
    ok = abs(ratio_p - 2.0) <= 0.5 and abs(ratio_m - 2.0) <= 0.5
    harness.print_progress(
        f"noise-scaling: ratio(p={p_hi})/ratio(p={p_lo}) = {ratio_p:.3f}, "
        f"ratio(m={m_lo})/ratio(m={m_hi}) = {ratio_m:.3f} (target 2.0 +- 25%)")
    return 0 if ok else 1


def _diag_complexity(out, seed: int) -> int:
    cfg = COMPLEXITY_SETUP
    rng = np.random.default_rng(seed)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["profile_id", "k", "A", "B", "argmax_p", "argmin_p", "dominance_ok"])
    violations = 0

    def _emit(pid, sf):
        nonlocal violations
        pair = theory.complexity_pair(sf)
        ok = pair.A <= pair.B + 1e-12
        if not ok:
            violations += 1
        writer.writerow([pid, str(sf.k), f"{pair.A:.9g}", f"{pair.B:.9g}",
                         str(pair.argmax_p), str(pair.argmin_p),
                         "true" if ok else "false"])

    for i in range(cfg["n_profiles"]):
        k = int(rng.integers(1, cfg["max_k"] + 1))
        weights = rng.uniform(0.0, 1.0, size=k) + 1e-9
        _emit(f"random-{i}", theory.structure_function(
            make_profile("custom", k, weights=weights)))
    for label, kind, params in TABLE_PROFILES:
        _emit(label, theory.structure_function(
            make_profile(kind, cfg["table_k"], **params)))
    total = cfg["n_profiles"] + len(TABLE_PROFILES)
    harness.print_progress(f"complexity: {total - violations}/{total} satisfy A <= B")
    return 0 if violations == 0 else 1


def _cmd_diagnostics(args) -> int:
    with _open_out(args.out) as fh:
        if args.which == "dk":
            return _diag_dk(fh, args.seed)
        if args.which == "noise-scaling":
            return _diag_noise(fh, args.seed)
        return _diag_complexity(fh, args.seed)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "profile-table":
            return _cmd_profile_table(args)
        if args.command == "refine-study":
            return _cmd_refine_study(args)
        return _cmd_diagnostics(args)
    except (ConfigError, SepcaError, OSError) as exc:
        print(f"sepca: error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
