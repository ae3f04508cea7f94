#!/usr/bin/env python3
"""Benchmark harness: fit + eval over a manifest of local datasets.

No downloading happens here; point the manifest at files you already have.
Each manifest entry:

    {
      "name": "spirals",
      "points": "data/spirals.csv",       # CSV of features
      "label_col": 2,                      # ground-truth column in that CSV
      "k": 3,                              # optional: also run a topk:K cut
      "metric": "euclidean",               # optional, default euclidean
      "approx": false                      # optional, default exact single
    }

Usage:
    python benchmarks/run_benchmarks.py manifest.json
"""

import json
import sys
import time
from pathlib import Path

from torquecluster import Dataset, Linkage, Metric, acc, ami, apply_cut, auto_cut
from torquecluster import nmi, run, topk_cut
from torquecluster.io import load_points_csv


def run_entry(entry):
    data, truth = load_points_csv(entry["points"], entry.get("label_col"))
    if truth is None:
        raise SystemExit(f"{entry['name']}: manifest entry needs a label_col")
    linkage = Linkage.MEAN_REPRESENTATIVE if entry.get("approx") else Linkage.SINGLE
    start = time.perf_counter()
    result = run(data, metric=Metric(entry.get("metric", "euclidean")),
                 linkage=linkage)
    elapsed = time.perf_counter() - start
    rows = []
    cuts = {"auto": auto_cut(result.connections)}
    if entry.get("k"):
        cuts[f"topk:{entry['k']}"] = topk_cut(result.connections, int(entry["k"]))
    for cut_name, removed in cuts.items():
        partition = apply_cut(result, removed)
        rows.append({
            "dataset": entry["name"],
            "cut": cut_name,
            "k": partition.k,
            "nmi": round(nmi(partition.labels, truth), 4),
            "acc": round(acc(partition.labels, truth), 4),
            "ami": round(ami(partition.labels, truth), 4),
            "rounds": result.merge_round_count,
            "seconds": round(elapsed, 2),
        })
    return rows


def main():
    if len(sys.argv) != 2:
        raise SystemExit(__doc__)
    manifest = json.loads(Path(sys.argv[1]).read_text())
    all_rows = []
    for entry in manifest:
        all_rows.extend(run_entry(entry))
    header = ["dataset", "cut", "k", "nmi", "acc", "ami", "rounds", "seconds"]
    print("\t".join(header))
    for row in all_rows:
        print("\t".join(str(row[h]) for h in header))


if __name__ == "__main__":
    main()
