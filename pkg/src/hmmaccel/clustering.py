"""Frequency-weighted clustering of training sequences.

Scans a category's sequences in order. Each incoming sequence is compared
against the existing cluster representatives in insertion order and merged
into the first one at distance exactly zero; otherwise it opens a new
cluster. Weights count how many sequences each representative stands for,
so no information is lost: the weights always sum to the input count.

With the Euclidean distance only bit-identical sequences merge; with DTW,
sequences whose run-length-collapsed forms coincide merge.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .dtw import dtw_distance, euclidean_distance

DISTANCES = ("dtw", "euclidean")


@dataclass(frozen=True)
class ClusterEntry:
    representative: np.ndarray
    weight: int


@dataclass(frozen=True)
class ClusterTable:
    category_id: int
    entries: list[ClusterEntry]

    @property
    def total_weight(self) -> int:
        return sum(e.weight for e in self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def _key(seq: np.ndarray) -> bytes:
    return np.ascontiguousarray(seq, dtype=np.int64).tobytes()


def build_clusters(data, distance: str = "dtw", dedup: bool = True) -> ClusterTable:
    """Cluster a Dataset into weighted representatives.

    distance: "dtw" or "euclidean" (the latter requires all sequences to
    share one length). dedup enables an exact-duplicate hash shortcut that
    skips distance scans for sequences seen before; it never changes the
    resulting table, only the time taken to build it.
    """
    if distance not in DISTANCES:
        raise ValueError(f"unknown distance {distance!r}, expected one of {DISTANCES}")
    sequences = data.sequences
    if not sequences:
        raise ValueError("empty dataset")
    if distance == "euclidean":
        length = len(sequences[0])
        for pos, seq in enumerate(sequences, start=1):
            if len(seq) != length:
                raise ValueError(
                    f"sequence {pos} has length {len(seq)} but sequence 1 has "
                    f"length {length}; euclidean clustering requires one length"
                )
        dist = euclidean_distance
    else:
        dist = lambda x, y: dtw_distance(x, y).distance  # noqa: E731

    reps: list[np.ndarray] = []
    weights: list[int] = []
    seen: dict[bytes, int] = {}

    for seq in sequences:
        key = _key(seq)
        if dedup:
            hit = seen.get(key)
            if hit is not None:
                weights[hit] += 1
                continue
        for idx, rep in enumerate(reps):
            if dist(seq, rep) == 0.0:
                weights[idx] += 1
                seen[key] = idx
                break
        else:
            seen[key] = len(reps)
            reps.append(np.array(seq, dtype=np.int64))
            weights.append(1)

    entries = [ClusterEntry(r, w) for r, w in zip(reps, weights)]
    return ClusterTable(category_id=data.category_id, entries=entries)


def filter_low_weight(table: ClusterTable, min_weight: int) -> ClusterTable:
    """Drop entries below min_weight; total_weight shrinks accordingly.

    The default training pipeline never calls this: low-weight clusters can
    be legitimate rare behaviors, so removal is an explicit operator choice.
    """
    if min_weight < 1:
        raise ValueError(f"min_weight must be >= 1, got {min_weight}")
    kept = [e for e in table.entries if e.weight >= min_weight]
    if not kept:
        raise ValueError("all clusters filtered")
    return ClusterTable(category_id=table.category_id, entries=kept)


def save_cluster_table(table: ClusterTable, path) -> None:
    doc = {
        "category_id": table.category_id,
        "total_weight": table.total_weight,
        "clusters": [
            {"representative": [int(v) for v in e.representative], "weight": e.weight}
            for e in table.entries
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def load_cluster_table(path) -> ClusterTable:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    try:
        entries = [
            ClusterEntry(np.array(c["representative"], dtype=np.int64), int(c["weight"]))
            for c in doc["clusters"]
        ]
        table = ClusterTable(category_id=int(doc["category_id"]), entries=entries)
        declared = int(doc["total_weight"])
    except KeyError as exc:
        raise ValueError(f"cluster file {path} is missing key {exc}") from None
    if not entries:
        raise ValueError(f"cluster file {path} has no clusters")
    for i, e in enumerate(entries):
        if e.weight < 1:
            raise ValueError(f"cluster file {path}: cluster {i} has weight {e.weight}")
        if e.representative.size == 0:
            raise ValueError(f"cluster file {path}: cluster {i} is empty")
    if declared != table.total_weight:
        raise ValueError(
            f"cluster file {path}: total_weight {declared} does not match "
            f"sum of weights {table.total_weight}"
        )
    return table
