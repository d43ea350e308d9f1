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

#ifndef RULESIFT_METRICS_H_
#define RULESIFT_METRICS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "rulesift/dataset.h"
#include "rulesift/rules.h"

namespace rulesift {

// Per-rule meta-data. Ratios are integer percents rounded half-up from the
// exact counts. The rule is scored as a one-vs-rest classifier: predict its
// class on covered instances, anything else elsewhere.
struct RuleMetrics {
  int rule_id = 0;
  std::int64_t support = 0;
  int size = 0;
  int accuracy = 0;
  int error_rate = 0;
  int precision = 0;
  int recall = 0;
  int f1 = 0;
  int predicted_class = 0;

  bool operator==(const RuleMetrics&) const = default;
};

// round(100 * numerator / denominator), halves rounded up. denominator > 0.
int PercentHalfUp(std::int64_t numerator, std::int64_t denominator);

// From the rule's per-class coverage counts and the per-class totals of the
// same dataset. Throws ZeroCoverage when the rule covers nothing.
RuleMetrics MetricsFromCounts(int rule_id, int size, int predicted_class,
                              std::span<const std::int64_t> coverage_counts,
                              std::span<const std::int64_t> class_totals);

// Recomputes coverage of `rule` on `train` and scores it.
RuleMetrics ComputeMetrics(const Rule& rule, const AtomTable& atoms,
                           const Dataset& train);

// Scores every candidate against its own (training) coverage counts.
std::vector<RuleMetrics> ComputeAllMetrics(const CandidateSet& candidates,
                                           const Dataset& train);

}  // namespace rulesift

#endif  // RULESIFT_METRICS_H_
