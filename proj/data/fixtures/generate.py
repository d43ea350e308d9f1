#!/usr/bin/env python3
# Copyright 2026 The Rulesift Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the bundled test fixtures.

Leaf class counts are obtained by routing the full CSV through each tree, so
every model is consistent with its dataset. Output is deterministic.
"""

import csv
import json
import pathlib
import random

import numpy as np
from sklearn.ensemble import RandomForestClassifier

HERE = pathlib.Path(__file__).resolve().parent


def write_csv(path, names, rows):
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(names + ["y"])
        for r in rows:
            w.writerow([f"{v:.2f}" for v in r[:-1]] + [r[-1]])


def route(nodes, row):
    by_id = {n["id"]: n for n in nodes}
    n = by_id[0]
    while n["kind"] == "internal":
        n = by_id[n["left"] if row[n["feature"]] <= n["threshold"] else n["right"]]
    return n["id"]


def fill_counts(nodes, rows, n_classes=2):
    for n in nodes:
        if n["kind"] == "leaf":
            n["class_counts"] = [0] * n_classes
    by_id = {n["id"]: n for n in nodes}
    for r in rows:
        by_id[route(nodes, r)]["class_counts"][r[-1]] += 1


def internal(i, feature, threshold, left, right):
    return {"id": i, "kind": "internal", "feature": feature, "op": "le",
            "threshold": threshold, "left": left, "right": right}


def leaf(i):
    return {"id": i, "kind": "leaf"}


def continuous(names):
    return [{"name": n, "kind": "continuous"} for n in names]


def dump(path, doc):
    path.write_text(json.dumps(doc, indent=1) + "\n")


def fig2():
    rng = random.Random(2)
    u = lambda lo, hi: round(rng.uniform(lo, hi), 2)
    # (x1 range, x2 range, x3 range, x4 range, #y=1, #y=0) per region.
    regions = [
        ((0.0, 0.19), (0.0, 4.4), (0.0, 3.0), (0.0, 1.9), 8, 2),
        ((0.0, 0.19), (0.0, 4.4), (0.0, 3.0), (2.1, 5.0), 1, 4),
        ((0.0, 0.19), (4.6, 9.0), (0.0, 3.0), (0.0, 5.0), 2, 4),
        ((0.21, 1.0), (0.0, 9.0), (0.0, 0.9), (0.0, 5.0), 6, 2),
        ((0.21, 1.0), (0.0, 9.0), (1.1, 3.0), (0.0, 5.0), 2, 7),
    ]
    rows = []
    for a, b, c, d, pos, neg in regions:
        for y in [1] * pos + [0] * neg:
            rows.append([u(*a), u(*b), u(*c), u(*d), y])
    names = ["x1", "x2", "x3", "x4"]
    write_csv(HERE / "fig2.csv", names, rows)

    # Left tree of the figure: 4 internal nodes, 5 leaves.
    left = [internal(0, 0, 0.2, 1, 6), internal(1, 1, 4.5, 2, 5),
            internal(2, 3, 2.0, 3, 4), leaf(3), leaf(4), leaf(5),
            internal(6, 2, 1.0, 7, 8), leaf(7), leaf(8)]
    right = [internal(0, 2, 1.5, 1, 2), leaf(1),
             internal(2, 0, 0.5, 3, 4), leaf(3), leaf(4)]
    fill_counts(left, rows)
    fill_counts(right, rows)
    dump(HERE / "fig2_ensemble.json", {
        "n_classes": 2, "aggregation": "majority_vote",
        "features": continuous(names),
        "trees": [{"tree_id": 0, "root": 0, "nodes": left},
                  {"tree_id": 1, "root": 0, "nodes": right}]})


def desk():
    rng = np.random.default_rng(11)
    n, d = 300, 6
    x = np.round(rng.uniform(0.0, 1.0, size=(n, d)), 2)
    # Both classes get a short, competitive rule. Dominance compares rules
    # across classes, so concepts where one class only has weak rules leave
    # that class without a candidate and the folds become infeasible.
    y = ((x[:, 0] > 0.4) & (x[:, 2] > 0.3)).astype(int)
    flip = rng.uniform(size=n) < 0.08
    y = np.where(flip, 1 - y, y)
    names = [f"f{i + 1}" for i in range(d)]
    rows = [list(map(float, x[i])) + [int(y[i])] for i in range(n)]
    write_csv(HERE / "desk.csv", names, rows)

    forest = RandomForestClassifier(n_estimators=10, max_depth=4,
                                    min_samples_leaf=5, random_state=7)
    forest.fit(x, y)
    trees = []
    for k, est in enumerate(forest.estimators_):
        t = est.tree_
        nodes = []
        for i in range(t.node_count):
            if t.children_left[i] < 0:
                nodes.append(leaf(i))
            else:
                # Midpoints of two-decimal values; three decimals keep them
                # strictly between the neighbouring data values.
                nodes.append(internal(i, int(t.feature[i]),
                                      round(float(t.threshold[i]), 3),
                                      int(t.children_left[i]),
                                      int(t.children_right[i])))
        fill_counts(nodes, rows)
        trees.append({"tree_id": k, "root": 0, "nodes": nodes})
    schema = continuous(names)
    dump(HERE / "desk_forest.json", {
        "n_classes": 2, "aggregation": "majority_vote",
        "features": schema, "trees": trees})

    # Degenerate forest: every tree is a single leaf.
    counts = [int((y == 0).sum()), int((y == 1).sum())]
    dump(HERE / "leaf_only.json", {
        "n_classes": 2, "aggregation": "majority_vote", "features": schema,
        "trees": [{"tree_id": k, "root": 0,
                   "nodes": [{"id": 0, "kind": "leaf", "class_counts": counts}]}
                  for k in range(3)]})


if __name__ == "__main__":
    fig2()
    desk()
