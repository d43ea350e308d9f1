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

#include "rulesift/metrics.h"

#include <numeric>

#include "rulesift/error.h"

namespace rulesift {

int PercentHalfUp(std::int64_t numerator, std::int64_t denominator) {
  // floor((100 n / d) + 1/2) = floor((200 n + d) / 2d)
  return static_cast<int>((200 * numerator + denominator) / (2 * denominator));
}

RuleMetrics MetricsFromCounts(int rule_id, int size, int predicted_class,
                              std::span<const std::int64_t> coverage_counts,
                              std::span<const std::int64_t> class_totals) {
  const std::int64_t support = std::accumulate(
      coverage_counts.begin(), coverage_counts.end(), std::int64_t{0});
  if (support == 0) {
    throw Error(ErrorCode::kZeroCoverage,
                "rule " + std::to_string(rule_id) + " covers no instance");
  }
  const std::int64_t n = std::accumulate(class_totals.begin(),
                                         class_totals.end(), std::int64_t{0});
  const std::int64_t tp = coverage_counts[predicted_class];
  const std::int64_t fp = support - tp;
  const std::int64_t fn = class_totals[predicted_class] - tp;
  const std::int64_t tn = n - tp - fp - fn;

  RuleMetrics m;
  m.rule_id = rule_id;
  m.support = support;
  m.size = size;
  m.predicted_class = predicted_class;
  m.accuracy = PercentHalfUp(tp + tn, n);
  m.error_rate = 100 - m.accuracy;
  m.precision = PercentHalfUp(tp, tp + fp);
  m.recall = tp + fn > 0 ? PercentHalfUp(tp, tp + fn) : 0;
  // 2PR / (P + R) with P = tp/(tp+fp), R = tp/(tp+fn) is 2tp / (2tp+fp+fn).
  m.f1 = tp > 0 ? PercentHalfUp(2 * tp, 2 * tp + fp + fn) : 0;
  return m;
}

RuleMetrics ComputeMetrics(const Rule& rule, const AtomTable& atoms,
                           const Dataset& train) {
  CoverageIndex index(train, atoms);
  const auto counts = index.ClassCounts(index.BodyMask(rule.atoms));
  return MetricsFromCounts(rule.id, static_cast<int>(rule.atoms.size()),
                           rule.predicted_class, counts, train.ClassCounts());
}

std::vector<RuleMetrics> ComputeAllMetrics(const CandidateSet& candidates,
                                           const Dataset& train) {
  const auto totals = train.ClassCounts();
  std::vector<RuleMetrics> out;
  out.reserve(candidates.rules.size());
  for (const Rule& rule : candidates.rules) {
    out.push_back(MetricsFromCounts(rule.id, static_cast<int>(rule.atoms.size()),
                                    rule.predicted_class, rule.coverage_counts,
                                    totals));
  }
  return out;
}

}  // namespace rulesift
