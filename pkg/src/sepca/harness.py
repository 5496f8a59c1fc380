"""Configuration-driven, seeded Monte Carlo benchmark harness.

One trial draws a model with a fresh random support and signs,
samples it once, forms the centered matrix once, and runs every
requested algorithm on that same matrix, so algorithm comparisons are
paired. Per-trial seeds are derived from (master seed, profile index,
sample count, trial index) through a splittable counter scheme, which
makes every trial independent of scheduling: the output is a pure
function of the configuration regardless of worker count.

Records are emitted in a canonical order (profile as configured, then
m ascending, then trial, then algorithm in dt / single-peak / sep
order, then pre before post) and serialized to CSV with a fixed
header and 9-significant-digit floats, so equal configurations yield
byte-equal files.

Per-invocation wall times are only measured when ``timing`` is
requested; the field is written as 0 otherwise, because measured
times would break the byte-determinism contract.
"""

from __future__ import annotations

import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import estimators as est
from .exceptions import ConfigError, SepcaError
from .metrics import sin_angle, support_recall
from .model import centered_gamma, draw_samples, embed_spike, population_gamma
from .profiles import PROFILE_KINDS, make_profile

CSV_HEADER = (
    "profile,algorithm,n,k,m,theta,trial,seed,stage,sin_error,recall,"
    "refine_T,operator,wall_ms,status"
)

_CSV_FIELDS = CSV_HEADER.split(",")

_PROFILE_PARAM_KEYS = {
    "flat": set(),
    "power-law-amplitude": {"alpha", "offset"},
    "exponential-amplitude": {"rate", "offset"},
    "power-law-energy": {"alpha"},
    "custom": {"weights"},
}

_ALGO_ORDER = {name: i for i, name in enumerate(est.ALGORITHMS)}
_STAGE_ORDER = {"pre": 0, "post": 1}


@dataclass(frozen=True)
class ProfileSpec:
    """A named profile recipe, as it appears in config files."""

    kind: str
    params: dict = field(default_factory=dict)
    name: str | None = None

    @property
    def label(self) -> str:
        if self.name:
            return self.name
        if not self.params:
            return self.kind
        args = ",".join(f"{k}={self.params[k]}" for k in sorted(self.params))
        return f"{self.kind}({args})"

    def build(self, k: int):
        return make_profile(self.kind, k, **self.params)


@dataclass(frozen=True)
class RefineSpec:
    enabled: bool
    T: int
    k_prime: int
    operator: str


@dataclass(frozen=True)
class ExperimentConfig:
    """Full description of one benchmark sweep."""

    n: int
    k: int
    theta: float
    m_values: tuple[int, ...]
    profiles: tuple[ProfileSpec, ...]
    algorithms: tuple[str, ...]
    trials: int
    refine: RefineSpec
    master_seed: int
    threads: int | str
    out_path: str

    def resolved_threads(self) -> int:
        if self.threads == "auto":
            import os

            return os.cpu_count() or 1
        return int(self.threads)


@dataclass(frozen=True)
class TrialRecord:
    """One (profile, algorithm, m, trial, stage) outcome row."""

    profile: str
    algorithm: str
    n: int
    k: int
    m: int
    theta: float
    trial: int
    seed: int
    stage: str
    sin_error: float | None
    recall: float | None
    refine_T: int
    operator: str
    wall_ms: float
    status: str


def _require(cond: bool, msg: str):
    if not cond:
        raise ConfigError(msg)


def _parse_profile(obj, where: str) -> ProfileSpec:
    _require(isinstance(obj, dict), f"{where} must be an object")
    obj = dict(obj)
    kind = obj.pop("kind", None)
    _require(isinstance(kind, str) and kind in PROFILE_KINDS,
             f"{where}.kind must be one of {PROFILE_KINDS}")
    name = obj.pop("name", None)
    _require(name is None or isinstance(name, str), f"{where}.name must be a string")
    allowed = _PROFILE_PARAM_KEYS[kind]
    unknown = set(obj) - allowed
    _require(not unknown, f"{where} has unknown keys {sorted(unknown)} for kind {kind!r}")
    return ProfileSpec(kind=kind, params=obj, name=name)


def config_from_dict(doc: dict) -> ExperimentConfig:
    """Validate a raw JSON document; unknown keys are an error."""
    _require(isinstance(doc, dict), "config must be a JSON object")
    expected = {"n", "k", "theta", "m_values", "profiles", "algorithms",
                "trials", "refine", "master_seed", "threads", "out_path"}
    unknown = set(doc) - expected
    _require(not unknown, f"config has unknown keys: {sorted(unknown)}")
    missing = expected - set(doc)
    _require(not missing, f"config is missing keys: {sorted(missing)}")

    n, k = doc["n"], doc["k"]
    _require(isinstance(n, int) and n >= 1, "n must be a positive integer")
    _require(isinstance(k, int) and 1 <= k <= n, "k must satisfy 1 <= k <= n")
    theta = doc["theta"]
    _require(isinstance(theta, (int, float)) and theta >= 0, "theta must be >= 0")

    m_values = doc["m_values"]
    _require(isinstance(m_values, list) and m_values, "m_values must be a non-empty list")
    _require(all(isinstance(m, int) and m >= 1 for m in m_values),
             "every m in m_values must be a positive integer")
    _require(len(set(m_values)) == len(m_values), "m_values must be distinct")

    profs = doc["profiles"]
    _require(isinstance(profs, list) and profs, "profiles must be a non-empty list")
    profiles = tuple(_parse_profile(p, f"profiles[{i}]") for i, p in enumerate(profs))
    labels = [p.label for p in profiles]
    _require(len(set(labels)) == len(labels), "profile labels must be distinct")

    algos = doc["algorithms"]
    _require(isinstance(algos, list) and algos, "algorithms must be a non-empty list")
    _require(all(a in est.ALGORITHMS for a in algos),
             f"algorithms must be drawn from {est.ALGORITHMS}")
    _require(len(set(algos)) == len(algos), "algorithms must be distinct")

    trials = doc["trials"]
    _require(isinstance(trials, int) and trials >= 1, "trials must be a positive integer")

    ref = doc["refine"]
    _require(isinstance(ref, dict), "refine must be an object")
    ref_unknown = set(ref) - {"enabled", "T", "k_prime", "operator"}
    _require(not ref_unknown, f"refine has unknown keys: {sorted(ref_unknown)}")
    ref_missing = {"enabled", "T", "k_prime", "operator"} - set(ref)
    _require(not ref_missing, f"refine is missing keys: {sorted(ref_missing)}")
    _require(isinstance(ref["enabled"], bool), "refine.enabled must be a boolean")
    _require(isinstance(ref["T"], int) and ref["T"] >= 0, "refine.T must be >= 0")
    _require(isinstance(ref["k_prime"], int) and 1 <= ref["k_prime"] <= n,
             "refine.k_prime must satisfy 1 <= k_prime <= n")
    _require(ref["operator"] in est.OPERATOR_MODES,
             f"refine.operator must be one of {est.OPERATOR_MODES}")
    refine = RefineSpec(enabled=ref["enabled"], T=ref["T"],
                        k_prime=ref["k_prime"], operator=ref["operator"])

    seed = doc["master_seed"]
    _require(isinstance(seed, int) and 0 <= seed < 2 ** 64,
             "master_seed must be an unsigned 64-bit integer")

    threads = doc["threads"]
    _require(threads == "auto" or (isinstance(threads, int) and threads >= 1),
             "threads must be a positive integer or 'auto'")

    out_path = doc["out_path"]
    _require(isinstance(out_path, str) and out_path, "out_path must be a non-empty string")

    return ExperimentConfig(
        n=n, k=k, theta=float(theta), m_values=tuple(m_values),
        profiles=profiles, algorithms=tuple(algos), trials=trials,
        refine=refine, master_seed=seed, threads=threads, out_path=out_path,
    )


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path!r} is not valid JSON: {exc}") from exc
    return config_from_dict(doc)


def trial_seed_sequence(master_seed: int, profile_index: int, m: int, trial: int):
    """Splittable per-trial seed: a pure function of its coordinates."""
    return np.random.SeedSequence([master_seed, profile_index, m, trial])


def _run_one_trial(
    config: ExperimentConfig,
    profile_index: int,
    m: int,
    trial: int,
    population: bool,
    timing: bool,
) -> list[TrialRecord]:
    spec = config.profiles[profile_index]
    profile = spec.build(config.k)
    ss = trial_seed_sequence(config.master_seed, profile_index, m, trial)
    seed64 = int(ss.generate_state(1, dtype=np.uint64)[0])
    rng = np.random.default_rng(ss)

    support = np.sort(rng.choice(config.n, size=config.k, replace=False))
    signs = rng.choice(np.array([-1.0, 1.0]), size=config.k)
    model = embed_spike(profile, config.n, support=support, signs=signs, theta=config.theta)
    if population:
        gamma = population_gamma(model)
    else:
        gamma = centered_gamma(draw_samples(model, m, rng))

    base = dict(profile=spec.label, n=config.n, k=config.k, m=m,
                theta=config.theta, trial=trial, seed=seed64)
    records: list[TrialRecord] = []
    for algo in est.ALGORITHMS:
        if algo not in config.algorithms:
            continue
        t0 = time.perf_counter() if timing else 0.0
        try:
            if algo == "dt":
                result = est.dt_estimate(gamma, config.k)
            elif algo == "single-peak":
                result = est.single_peak_estimate(gamma, config.k)
            else:
                result = est.sep_estimate(gamma, config.k)
            pre_ms = (time.perf_counter() - t0) * 1e3 if timing else 0.0
            records.append(TrialRecord(
                algorithm=algo, stage="pre",
                sin_error=sin_angle(result.v_hat, model.spike),
                recall=support_recall(result.support, model.support),
                refine_T=0, operator="", wall_ms=pre_ms, status="ok", **base,
            ))
        except SepcaError:
            records.append(TrialRecord(
                algorithm=algo, stage="pre", sin_error=None, recall=None,
                refine_T=0, operator="", wall_ms=0.0, status="failed", **base,
            ))
            if config.refine.enabled:
                records.append(TrialRecord(
                    algorithm=algo, stage="post", sin_error=None, recall=None,
                    refine_T=config.refine.T, operator=config.refine.operator,
                    wall_ms=0.0, status="failed", **base,
                ))
            continue

        if config.refine.enabled:
            t1 = time.perf_counter() if timing else 0.0
            try:
                refined = est.tpower_refine(
                    gamma, result.v_hat, config.refine.k_prime,
                    config.refine.T, config.refine.operator,
                )
                post_ms = (time.perf_counter() - t1) * 1e3 if timing else 0.0
                w = refined.w_final
                records.append(TrialRecord(
                    algorithm=algo, stage="post",
                    sin_error=sin_angle(w, model.spike),
                    recall=support_recall(np.flatnonzero(w), model.support),
                    refine_T=config.refine.T, operator=config.refine.operator,
                    wall_ms=post_ms, status="ok", **base,
                ))
            except SepcaError:
                records.append(TrialRecord(
                    algorithm=algo, stage="post", sin_error=None, recall=None,
                    refine_T=config.refine.T, operator=config.refine.operator,
                    wall_ms=0.0, status="failed", **base,
                ))
    return records


def _run_batch(args) -> list[TrialRecord]:
    config, profile_index, m, trials, population, timing = args
    out: list[TrialRecord] = []
    for trial in range(trials):
        out.extend(_run_one_trial(config, profile_index, m, trial, population, timing))
    return out


def sort_canonically(records, config: ExperimentConfig) -> list[TrialRecord]:
    profile_order = {spec.label: i for i, spec in enumerate(config.profiles)}
    return sorted(
        records,
        key=lambda r: (profile_order[r.profile], r.m, r.trial,
                       _ALGO_ORDER[r.algorithm], _STAGE_ORDER[r.stage]),
    )


def run_experiment(
    config: ExperimentConfig,
    population: bool = False,
    timing: bool = False,
    progress=None,
) -> list[TrialRecord]:
    """Run the full sweep and return canonically ordered records.

    Parameters
    ----------
    config : ExperimentConfig
    population : bool
        Replace the sampled matrix with the noiseless population
        surrogate (an m = infinity stand-in; m is recorded as
        configured).
    timing : bool
        Measure per-invocation wall time. Off by default: timings are
        not reproducible, and the determinism contract covers the
        whole record.
    progress : callable, optional
        Called with a one-line string after each completed batch.
    """
    tasks = [
        (config, pi, m, config.trials, population, timing)
        for pi in range(len(config.profiles))
        for m in config.m_values
    ]
    records: list[TrialRecord] = []
    n_threads = config.resolved_threads()
    if n_threads <= 1 or len(tasks) == 1:
        for i, task in enumerate(tasks):
            records.extend(_run_batch(task))
            if progress:
                progress(f"batch {i + 1}/{len(tasks)} done")
    else:
        with ProcessPoolExecutor(max_workers=n_threads) as pool:
            for i, batch in enumerate(pool.map(_run_batch, tasks)):
                records.extend(batch)
                if progress:
                    progress(f"batch {i + 1}/{len(tasks)} done")
    return sort_canonically(records, config)


def _fmt_float(x: float | None) -> str:
    if x is None:
        return ""
    return f"{x:.9g}"


def _record_to_row(r: TrialRecord) -> list[str]:
    return [
        r.profile, r.algorithm, str(r.n), str(r.k), str(r.m), _fmt_float(r.theta),
        str(r.trial), str(r.seed), r.stage, _fmt_float(r.sin_error),
        _fmt_float(r.recall), str(r.refine_T), r.operator,
        _fmt_float(r.wall_ms), r.status,
    ]


def write_csv(records, path_or_file) -> None:
    """Serialize records (already canonically ordered) as UTF-8 CSV."""
    own = isinstance(path_or_file, str)
    fh = open(path_or_file, "w", encoding="utf-8", newline="") if own else path_or_file
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(_CSV_FIELDS)
        for r in records:
            writer.writerow(_record_to_row(r))
    finally:
        if own:
            fh.close()


def csv_bytes(records) -> bytes:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue().encode("utf-8")


def _parse_opt_float(s: str) -> float | None:
    return None if s == "" else float(s)


def read_csv(path_or_file) -> list[TrialRecord]:
    """Parse a harness CSV back into records."""
    own = isinstance(path_or_file, str)
    fh = open(path_or_file, "r", encoding="utf-8", newline="") if own else path_or_file
    try:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != _CSV_FIELDS:
            raise ValueError(f"unexpected CSV header: {header!r}")
        out = []
        for row in reader:
            if len(row) != len(_CSV_FIELDS):
                raise ValueError(f"malformed CSV row: {row!r}")
            out.append(TrialRecord(
                profile=row[0], algorithm=row[1], n=int(row[2]), k=int(row[3]),
                m=int(row[4]), theta=float(row[5]), trial=int(row[6]),
                seed=int(row[7]), stage=row[8],
                sin_error=_parse_opt_float(row[9]), recall=_parse_opt_float(row[10]),
                refine_T=int(row[11]), operator=row[12],
                wall_ms=float(row[13]) if row[13] else 0.0, status=row[14],
            ))
        return out
    finally:
        if own:
            fh.close()


REFINE_STUDY_HEADER = "profile,initializer,n,k,m,theta,trial,seed,operator,t,sin_error,status"


def _refine_study_batch(args) -> list[tuple]:
    config, profile_index, m, trials = args
    spec = config.profiles[profile_index]
    profile = spec.build(config.k)
    rows: list[tuple] = []
    for trial in range(trials):
        ss = trial_seed_sequence(config.master_seed, profile_index, m, trial)
        seed64 = int(ss.generate_state(1, dtype=np.uint64)[0])
        rng = np.random.default_rng(ss)
        support = np.sort(rng.choice(config.n, size=config.k, replace=False))
        signs = rng.choice(np.array([-1.0, 1.0]), size=config.k)
        model = embed_spike(profile, config.n, support=support, signs=signs,
                            theta=config.theta)
        gamma = centered_gamma(draw_samples(model, m, rng))
        for operator in est.OPERATOR_MODES:
            try:
                init = est.dt_estimate(gamma, config.k)
                refined = est.tpower_refine(gamma, init.v_hat, config.refine.k_prime,
                                            config.refine.T, operator)
                for t, w in enumerate(refined.iterates):
                    rows.append((spec.label, "dt", config.n, config.k, m, config.theta,
                                 trial, seed64, operator, t,
                                 sin_angle(w, model.spike), "ok"))
            except SepcaError:
                rows.append((spec.label, "dt", config.n, config.k, m, config.theta,
                             trial, seed64, operator, 0, None, "failed"))
    return rows


def run_refine_study(config: ExperimentConfig, progress=None) -> list[tuple]:
    """Per-iteration refinement trajectories from a diagonal-screening
    initializer, for both operator modes.

    Returns rows matching ``REFINE_STUDY_HEADER``; the sweep follows
    the config's profiles, m grid, trial count, and refine.T / refine.k_prime.
    """
    tasks = [
        (config, pi, m, config.trials)
        for pi in range(len(config.profiles))
        for m in config.m_values
    ]
    rows: list[tuple] = []
    n_threads = config.resolved_threads()
    if n_threads <= 1 or len(tasks) == 1:
        for i, task in enumerate(tasks):
            rows.extend(_refine_study_batch(task))
            if progress:
                progress(f"batch {i + 1}/{len(tasks)} done")
    else:
        with ProcessPoolExecutor(max_workers=n_threads) as pool:
            for i, batch in enumerate(pool.map(_refine_study_batch, tasks)):
                rows.extend(batch)
                if progress:
                    progress(f"batch {i + 1}/{len(tasks)} done")
    profile_order = {spec.label: i for i, spec in enumerate(config.profiles)}
    op_order = {op: i for i, op in enumerate(est.OPERATOR_MODES)}
    rows.sort(key=lambda r: (profile_order[r[0]], r[4], r[6], op_order[r[8]], r[9]))
    return rows


def write_refine_study_csv(rows, path_or_file) -> None:
    own = isinstance(path_or_file, str)
    fh = open(path_or_file, "w", encoding="utf-8", newline="") if own else path_or_file
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(REFINE_STUDY_HEADER.split(","))
        for r in rows:
            writer.writerow([
                r[0], r[1], str(r[2]), str(r[3]), str(r[4]), _fmt_float(r[5]),
                str(r[6]), str(r[7]), r[8], str(r[9]), _fmt_float(r[10]), r[11],
            ])
    finally:
        if own:
            fh.close()


def print_progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)
