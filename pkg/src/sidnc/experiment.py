"""Monte-Carlo sweeps over the receiver count and CSV emission."""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from .algorithms import bron_kerbosch, optimal_solution_search
from .graphs import build_sidnc_graph
from .schemes import order_for_transmission, run_scheme
from .analytics import solution_apdd
from .state import BroadcastConfig, ErasureChannel, systematic_phase

LIMITS = "limits"  # pseudo-scheme: oracle U_s and erasure-free delay, no channel


@dataclass(frozen=True)
class ExperimentSpec:
    """One sweep: fixed K/Pe/trials, varying receiver count per scheme."""

    config: BroadcastConfig
    sweep: tuple  # receiver counts
    schemes: tuple  # SchemeSpec instances and/or the LIMITS marker
    coded_phase_erasure: float | None = None  # override Pe after the systematic phase
    confidence: bool = False

    def __post_init__(self):
        object.__setattr__(self, "sweep", tuple(int(n) for n in self.sweep))
        object.__setattr__(self, "schemes", tuple(self.schemes))
        if not self.sweep or not self.schemes:
            raise ValueError("sweep and schemes must be nonempty")
        if self.confidence and self.config.trials < 30:
            raise ValueError("confidence intervals need at least 30 trials")


@dataclass
class ResultRow:
    scheme: str
    algorithm: str
    receivers: int
    packets: int
    erasure_prob: float
    trials: int
    completed_trials: int
    incomplete_trials: int
    mean_completion: float | None
    stderr_completion: float | None
    mean_delay: float | None
    stderr_delay: float | None
    mean_rounds: float | None
    mean_solution_size: float | None


CSV_FIELDS = [f for f in ResultRow.__dataclass_fields__]  # declaration order


def _limits_trial(sfm):
    """Oracle minimum completion time and best erasure-free delay."""
    if sfm.is_complete:
        return 0, None, None
    wanted = [k for k in range(sfm.packets) if int(sfm.target_counts[k])]
    family = optimal_solution_search(bron_kerbosch(build_sidnc_graph(sfm)), wanted)
    delay = min(
        solution_apdd(sfm, order_for_transmission(s, sfm)) for s in family
    )
    return family.size, delay, family.size


def run_single_trial(config, receivers, scheme_entry, trial, coded_phase_erasure):
    """One (scheme, N, trial) simulation; returns plain numbers for pooling."""
    channel = ErasureChannel.for_trial(config.erasure_prob, config.seed, receivers, trial)
    cfg = replace(config, receivers=receivers)
    sfm = systematic_phase(cfg, channel)
    if scheme_entry == LIMITS:
        completion, delay, size = _limits_trial(sfm)
        return True, completion, delay, None, size
    if coded_phase_erasure is not None:
        channel = channel.with_erasure_prob(coded_phase_erasure)
    log = run_scheme(sfm, scheme_entry, channel)
    delay = log.apdd_value if (log.completed and log.initial_wants) else None
    rounds = len(log.round_lengths) if log.round_lengths is not None else None
    size = log.solution_sizes[0] if log.solution_sizes else None
    return log.completed, log.completion_time, delay, rounds, size


def _mean_stderr(values):
    vals = [v for v in values if v is not None]
    if not vals:
        return None, None
    mean = math.fsum(vals) / len(vals)
    if len(vals) < 2:
        return mean, 0.0
    var = math.fsum((v - mean) ** 2 for v in vals) / (len(vals) - 1)
    return mean, math.sqrt(var / len(vals))


def _aggregate(scheme_entry, receivers, config, outcomes) -> ResultRow:
    if scheme_entry == LIMITS:
        name, algorithm = LIMITS, "optimal"
    else:
        name, algorithm = scheme_entry.scheme, scheme_entry.algorithm
    done = [o for o in outcomes if o[0]]
    mean_u, se_u = _mean_stderr([o[1] for o in done])
    mean_d, se_d = _mean_stderr([o[2] for o in done])
    mean_r, _ = _mean_stderr([o[3] for o in done])
    mean_s, _ = _mean_stderr([o[4] for o in done])
    return ResultRow(
        scheme=name,
        algorithm=algorithm,
        receivers=receivers,
        packets=config.packets,
        erasure_prob=config.erasure_prob,
        trials=config.trials,
        completed_trials=len(done),
        incomplete_trials=len(outcomes) - len(done),
        mean_completion=mean_u,
        stderr_completion=se_u,
        mean_delay=mean_d,
        stderr_delay=se_d,
        mean_rounds=mean_r,
        mean_solution_size=mean_s,
    )


def run_experiment(spec: ExperimentSpec, workers: int = 1, progress=None) -> list:
    """One ResultRow per (receiver count, scheme), in sweep order.

    Trial substreams depend only on (seed, N, trial), so the systematic
    phase is shared across schemes and results are identical for any
    worker count.
    """
    rows = []
    jobs = [
        (n, entry)
        for n in spec.sweep
        for entry in spec.schemes
    ]
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for n, entry in jobs:
            args = [
                (spec.config, n, entry, trial, spec.coded_phase_erasure)
                for trial in range(spec.config.trials)
            ]
            if pool is not None:
                outcomes = list(pool.map(_trial_star, args, chunksize=32))
            else:
                outcomes = [run_single_trial(*a) for a in args]
            row = _aggregate(entry, n, spec.config, outcomes)
            rows.append(row)
            if progress is not None:
                progress(row)
    finally:
        if pool is not None:
            pool.shutdown()
    return rows


def _trial_star(args):
    return run_single_trial(*args)


def _format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.10g}"
    return str(v)


def emit_csv(rows, out) -> None:
    """Write rows in ResultRow field order; ``out`` is a path or text file."""
    if isinstance(out, (str, bytes)) or hasattr(out, "__fspath__"):
        with open(out, "w", encoding="utf-8", newline="") as fh:
            emit_csv(rows, fh)
        return
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for row in rows:
        writer.writerow([_format_value(getattr(row, f)) for f in CSV_FIELDS])


def csv_text(rows) -> str:
    buf = io.StringIO()
    emit_csv(rows, buf)
    return buf.getvalue()


def parse_csv(text: str) -> list:
    """Inverse of emit_csv, used for round-trip checks."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if header != CSV_FIELDS:
        raise ValueError("unexpected CSV header")
    rows = []
    ints = {"receivers", "packets", "trials", "completed_trials", "incomplete_trials"}
    strs = {"scheme", "algorithm"}
    for rec in reader:
        kwargs = {}
        for name, raw in zip(CSV_FIELDS, rec):
            if name in strs:
                kwargs[name] = raw
            elif raw == "":
                kwargs[name] = None
            elif name in ints:
                kwargs[name] = int(raw)
            else:
                kwargs[name] = float(raw)
        rows.append(ResultRow(**kwargs))
    return rows
