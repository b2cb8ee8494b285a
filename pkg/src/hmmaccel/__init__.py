"""Discrete-HMM training toolkit with cluster-weighted Baum-Welch.

Redundant training sequences are grouped into weighted representatives
(exact-match Euclidean or warp-tolerant DTW), and the frequency weights
multiply the expected counts during EM re-estimation, cutting training
time without changing the fitted parameters.
"""

from .bench import BenchReport, bench_row, run_bench
from .clustering import (
    ClusterEntry,
    ClusterTable,
    build_clusters,
    filter_low_weight,
    load_cluster_table,
    save_cluster_table,
)
from .dtw import DtwResult, dtw_distance, euclidean_distance, local_cost, run_length_collapse
from .inference import (
    ForwardBackwardResult,
    ImpossibleSequenceError,
    forward_backward,
    likelihood,
    viterbi,
)
from .model import (
    Dataset,
    HmmModel,
    load_model,
    load_sequences,
    sample_sequences,
    save_model,
    save_sequences,
    validate_model,
)
from .training import (
    TrainingConfig,
    TrainingTrace,
    em_train,
    initialize_model,
    weighted_em_train,
    write_trace_csv,
)

__version__ = "0.1.0"

__all__ = [
    "BenchReport",
    "ClusterEntry",
    "ClusterTable",
    "Dataset",
    "DtwResult",
    "ForwardBackwardResult",
    "HmmModel",
    "ImpossibleSequenceError",
    "TrainingConfig",
    "TrainingTrace",
    "bench_row",
    "build_clusters",
    "dtw_distance",
    "em_train",
    "euclidean_distance",
    "filter_low_weight",
    "forward_backward",
    "initialize_model",
    "likelihood",
    "load_cluster_table",
    "load_model",
    "load_sequences",
    "local_cost",
    "run_bench",
    "run_length_collapse",
    "sample_sequences",
    "save_cluster_table",
    "save_model",
    "save_sequences",
    "validate_model",
    "viterbi",
    "weighted_em_train",
    "write_trace_csv",
]
