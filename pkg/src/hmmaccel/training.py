"""Baum-Welch/EM training, classical and cluster-weighted.

Both trainers run the same accumulation code: every sequence contributes
its expected counts (state occupancies and transition posteriors from the
forward-backward pass) multiplied by a weight. Classical training is the
weight-1 case over the full dataset; weighted training feeds cluster
representatives with their frequencies. Multiplying by 1.0 is exact, so
the classical trainer is bit-identical to the weighted one on an all-ones
table, and the numerical behavior of the two modes can be compared at
tight tolerances.

Re-estimation per iteration, with w_m the weight of sequence m:

    pi_i    <- sum_m w_m gamma_1^m(i) / sum_m w_m
    a_ij    <- sum_m w_m sum_t xi_t^m(i,j) / sum_m w_m sum_t gamma_t^m(i)   (t < T_m)
    b_j(k)  <- sum_m w_m sum_{t: o_t=k} gamma_t^m(j) / sum_m w_m sum_t gamma_t^m(j)

A state with zero expected occupancy keeps its previous A and B rows; that
event is recorded on the trace rather than silently renormalized away.
"""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass, field

import numpy as np

from .clustering import ClusterTable
from .inference import ImpossibleSequenceError, forward_backward
from .model import Dataset, HmmModel, require_valid


@dataclass
class TrainingConfig:
    iterations: int = 50
    seed: int = 0
    ll_tolerance: float | None = None
    mode: str = "classical"  # bookkeeping for traces/CLI; trainers don't branch on it


@dataclass
class TrainingTrace:
    """Per-iteration log-likelihoods (of the pre-update model), timings,
    the final model, and any zero-occupancy events."""

    per_iteration_log_likelihood: list[float]
    per_iteration_seconds: list[float]  # cumulative wall clock after each iteration
    final_model: HmmModel
    wall_time_seconds: float
    warnings: list[str] = field(default_factory=list)


def initialize_model(n_states: int, n_symbols: int, seed: int) -> HmmModel:
    """Random valid model with strictly positive entries, deterministic in seed.

    Rows are drawn uniformly on [0.1, 1) and normalized, which bounds every
    probability away from zero.
    """
    if n_states < 1 or n_symbols < 1:
        raise ValueError("n_states and n_symbols must be >= 1")
    rng = np.random.default_rng(seed)
    pi = rng.uniform(0.1, 1.0, n_states)
    a = rng.uniform(0.1, 1.0, (n_states, n_states))
    b = rng.uniform(0.1, 1.0, (n_states, n_symbols))
    pi /= pi.sum()
    a /= a.sum(axis=1, keepdims=True)
    b /= b.sum(axis=1, keepdims=True)
    return HmmModel(n_states, n_symbols, pi, a, b)


def em_train(
    init: HmmModel, data: Dataset, config: TrainingConfig, on_iteration=None
) -> TrainingTrace:
    """Classical multi-sequence Baum-Welch for `config.iterations` steps."""
    seqs = [np.asarray(s, dtype=np.int64) for s in data.sequences]
    return _run_em(init, seqs, [1.0] * len(seqs), config, on_iteration)


def weighted_em_train(
    init: HmmModel, table: ClusterTable, config: TrainingConfig, on_iteration=None
) -> TrainingTrace:
    """Baum-Welch over cluster representatives, counts scaled by weights."""
    if not table.entries:
        raise ValueError("empty cluster table")
    seqs = [np.asarray(e.representative, dtype=np.int64) for e in table.entries]
    weights = [float(e.weight) for e in table.entries]
    return _run_em(init, seqs, weights, config, on_iteration)


def _run_em(init, seqs, weights, config, on_iteration=None) -> TrainingTrace:
    if config.iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {config.iterations}")
    if config.ll_tolerance is not None and config.ll_tolerance < 0:
        raise ValueError(f"ll_tolerance must be >= 0, got {config.ll_tolerance}")
    require_valid(init)
    if not seqs:
        raise ValueError("no training sequences")
    for idx, seq in enumerate(seqs, start=1):
        if seq.size == 0:
            raise ValueError(f"sequence {idx} is empty")
        if int(seq.min()) < 0 or int(seq.max()) >= init.n_symbols:
            raise ValueError(
                f"sequence {idx} uses symbols outside [0, {init.n_symbols})"
            )

    n, m = init.n_states, init.n_symbols
    w_total = float(sum(weights))
    model = init
    lls: list[float] = []
    cum_seconds: list[float] = []
    notes: list[str] = []
    start = time.perf_counter()

    for it in range(1, config.iterations + 1):
        pi_num = np.zeros(n)
        a_num = np.zeros((n, n))
        b_num_mt = np.zeros((m, n))  # indexed [symbol, state]
        total_ll = 0.0

        for idx, (seq, w) in enumerate(zip(seqs, weights), start=1):
            try:
                fb = forward_backward(model, seq)
            except ImpossibleSequenceError as exc:
                raise ImpossibleSequenceError(
                    f"sequence {idx} is impossible under the model at iteration {it}"
                ) from exc
            total_ll += w * fb.log_likelihood
            wg = w * fb.gamma
            pi_num += wg[0]
            if seq.shape[0] > 1:
                a_num += w * fb.xi.sum(axis=0)
            np.add.at(b_num_mt, seq, wg)

        # denominators are the numerators' own marginals, so each quotient
        # stays inside [0, 1] even after rounding
        a_den = a_num.sum(axis=1)
        b_den = b_num_mt.sum(axis=0)

        new_pi = pi_num / w_total
        new_a = np.empty((n, n))
        new_b = np.empty((n, m))
        for i in range(n):
            if a_den[i] > 0.0:
                new_a[i] = a_num[i] / a_den[i]
            else:
                new_a[i] = model.a[i]
                notes.append(
                    f"iteration {it}: state {i} has zero expected transition "
                    "count; A row carried over"
                )
            if b_den[i] > 0.0:
                new_b[i] = b_num_mt[:, i] / b_den[i]
            else:
                new_b[i] = model.b[i]
                notes.append(
                    f"iteration {it}: state {i} has zero expected occupancy; "
                    "B row carried over"
                )

        model = HmmModel(n, m, new_pi, new_a, new_b)
        lls.append(total_ll)
        cum_seconds.append(time.perf_counter() - start)
        if on_iteration is not None:
            on_iteration(it, model, total_ll)
        if (
            config.ll_tolerance is not None
            and len(lls) >= 2
            and lls[-1] - lls[-2] < config.ll_tolerance
        ):
            break

    return TrainingTrace(
        per_iteration_log_likelihood=lls,
        per_iteration_seconds=cum_seconds,
        final_model=model,
        wall_time_seconds=time.perf_counter() - start,
        warnings=notes,
    )


def write_trace_csv(trace: TrainingTrace, path) -> None:
    """Trace as CSV: iteration, log_likelihood, cumulative_seconds."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["iteration", "log_likelihood", "cumulative_seconds"])
        for i, (ll, sec) in enumerate(
            zip(trace.per_iteration_log_likelihood, trace.per_iteration_seconds),
            start=1,
        ):
            writer.writerow([i, repr(ll), f"{sec:.6g}"])
