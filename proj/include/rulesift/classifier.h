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


#ifndef RULESIFT_CLASSIFIER_H_
#define RULESIFT_CLASSIFIER_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rulesift/dataset.h"
#include "rulesift/ensemble.h"
#include "rulesift/metrics.h"
#include "rulesift/rules.h"
#include "rulesift/selection.h"

namespace rulesift {

// Order in which selected rules are tried.
enum class OrderPolicy {
  kPrecision,  // Precision desc, then support desc, then rule id asc.
  kSupport,    // Support desc, then precision desc, then rule id asc.
  kSelection,  // As given.
};

std::string_view OrderPolicyName(OrderPolicy policy);
OrderPolicy ParseOrderPolicy(std::string_view name);  // Throws ConfigError.

struct ClassifierRule {
  RuleMetrics metrics;  // rule_id and predicted_class live here.
  std::vector<SplitCondition> body;

  int rule_id() const { return metrics.rule_id; }
  int predicted_class() const { return metrics.predicted_class; }
};

// First-match decision list with a default class.
class RuleSetClassifier {
 public:
  // Rules are kept in the given order. Throws RangeError on bad classes or
  // feature ids and SchemaError on an empty body.
  RuleSetClassifier(FeatureSchema schema, int n_classes,
                    std::vector<ClassifierRule> rules, int default_class);

  const FeatureSchema& schema() const { return schema_; }
  int n_classes() const { return n_classes_; }
  std::span<const ClassifierRule> rules() const { return rules_; }
  int default_class() const { return default_class_; }

  // Position of the first rule whose body holds, or -1. Throws
  // FeatureMismatch on wrong arity or non-finite values.
  int FiringRule(std::span<const double> instance) const;
  int Classify(std::span<const double> instance) const;

  // Predictions for every row, plus the firing position per row (-1 when the
  // default applied).
  std::vector<int> ClassifyAll(const Dataset& dataset,
                               std::vector<int>* firing = nullptr) const;

 private:
  FeatureSchema schema_;
  int n_classes_;
  std::vector<ClassifierRule> rules_;
  int default_class_;
};

void SortRules(std::vector<ClassifierRule>& rules, OrderPolicy policy);

// Builds the classifier from selected rules, ordered by `policy`, falling
// back to the majority class of `train`. Throws EmptySelection when
// `selected` is empty and `allow_empty` is false.
RuleSetClassifier BuildClassifier(std::span<const ScoredRule> selected,
                                  const AtomTable& atoms, const Dataset& train,
                                  OrderPolicy policy, bool allow_empty);

// Binary scores with label 1 as the positive class. Undefined ratios
// (empty denominators) are reported as 0.
struct BinaryScores {
  double accuracy = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

BinaryScores ScorePredictions(std::span<const int> predicted,
                              std::span<const int> actual);

// Classifier score divided by ensemble score; empty when the latter is 0.
struct ScoreRatios {
  std::optional<double> accuracy;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
};

struct EvalReport {
  std::size_t num_instances = 0;
  BinaryScores classifier;
  BinaryScores ensemble;
  ScoreRatios ratios;
  std::map<int, std::int64_t> fired_rule_histogram;  // Every rule, by id.
  std::int64_t fallback_count = 0;
};

EvalReport Evaluate(const RuleSetClassifier& classifier,
                    const Ensemble& ensemble, const Dataset& fold);

}  // namespace rulesift

#endif  // RULESIFT_CLASSIFIER_H_
