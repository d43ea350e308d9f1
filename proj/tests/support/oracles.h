/*
 * Copyright 2026 The Rulesift Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// Independent reference implementations used only by tests. They favour
// obviousness over speed and share no code paths with the library beyond
// its data types.

#ifndef RULESIFT_TESTS_SUPPORT_ORACLES_H_
#define RULESIFT_TESTS_SUPPORT_ORACLES_H_

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "rulesift/dataset.h"
#include "rulesift/ensemble.h"
#include "rulesift/metrics.h"
#include "rulesift/selection.h"

namespace rulesift::oracle {

using Rng = std::mt19937_64;

// Schema with `n_continuous` features x0.. and one categorical feature "c"
// holding categories {a, b, c, d}.
FeatureSchema MixedSchema(int n_continuous);

// Continuous values are integers in [0, 9]; categorical codes in [0, 3].
Dataset RandomDataset(Rng& rng, const FeatureSchema& schema, int n_rows,
                      int n_classes);

// Random majority-vote tree of depth <= max_depth whose every path is
// satisfiable: thresholds fall strictly inside the interval left open by the
// ancestors, categorical splits keep a nonempty set on both sides.
Tree RandomTree(Rng& rng, int tree_id, const FeatureSchema& schema,
                int max_depth, int n_classes);

// Rows whose root-to-leaf walk passes through each node, keyed by node id.
std::vector<std::set<std::size_t>> RoutedRows(const Tree& tree,
                                              const Dataset& data,
                                              std::vector<int>* node_ids);

// Whole-dataset confusion matrix of "predict `cls` when covered".
struct Confusion {
  std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;
};
Confusion ConfusionOf(const std::set<std::size_t>& covered, const Dataset& data,
                      int cls);

// round-half-up(100 * num / den) via quotient and remainder.
int Percent(std::int64_t num, std::int64_t den);

RuleMetrics MetricsOf(int rule_id, int size, int cls,
                      const std::set<std::size_t>& covered, const Dataset& data);

// y dominates x under `criteria`.
bool Dominates(const RuleMetrics& y, const RuleMetrics& x,
               const std::vector<DominanceCriterion>& criteria);

// Ids (ascending) not dominated by any other rule of the given set.
std::vector<int> NonDominated(const std::vector<ScoredRule>& rules,
                              const std::vector<int>& ids,
                              const std::vector<DominanceCriterion>& criteria);

// Overlap by explicit tuple enumeration.
std::int64_t Overlap(const std::vector<std::vector<int>>& bodies,
                     OverlapMode mode);

struct Optimum {
  bool feasible = false;
  ObjectiveVector objective;
  std::vector<int> selected;  // Lexicographically smallest optimal id list.
};

// Objective vector computed term by term.
ObjectiveVector Objective(const SelectionProblem& problem,
                          const std::vector<int>& selected);

// Checks per-class bounds (with the empty-class exemption) and the size cap.
bool Feasible(const SelectionProblem& problem, const std::vector<int>& selected);

// Enumerates every subset of valid, non-dominated rules.
Optimum Exhaustive(const SelectionProblem& problem);

// Random selection instance with exactly `n_valid` rules meeting
// min_support plus a few invalid ones; two classes.
SelectionProblem RandomProblem(Rng& rng, int n_valid, bool random_objectives);

}  // namespace rulesift::oracle

#endif  // RULESIFT_TESTS_SUPPORT_ORACLES_H_
