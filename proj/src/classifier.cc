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


#include "rulesift/classifier.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <tuple>

#include "rulesift/error.h"
#include "rulesift/kernels.h"

namespace rulesift {

std::string_view OrderPolicyName(OrderPolicy policy) {
  switch (policy) {
    case OrderPolicy::kPrecision: return "precision";
    case OrderPolicy::kSupport: return "support";
    case OrderPolicy::kSelection: return "selection";
  }
  return "?";
}

OrderPolicy ParseOrderPolicy(std::string_view name) {
  if (name == "precision") return OrderPolicy::kPrecision;
  if (name == "support") return OrderPolicy::kSupport;
  if (name == "selection") return OrderPolicy::kSelection;
  throw Error(ErrorCode::kConfig, "unknown rule order '" + std::string(name) + "'");
}

RuleSetClassifier::RuleSetClassifier(FeatureSchema schema, int n_classes,
                                     std::vector<ClassifierRule> rules,
                                     int default_class)
    : schema_(std::move(schema)),
      n_classes_(n_classes),
      rules_(std::move(rules)),
      default_class_(default_class) {
  if (n_classes_ < 2) throw Error(ErrorCode::kRange, "need at least two classes");
  if (default_class_ < 0 || default_class_ >= n_classes_) {
    throw Error(ErrorCode::kRange, "default class out of range");
  }
  for (const ClassifierRule& r : rules_) {
    if (r.body.empty()) {
      throw Error(ErrorCode::kSchema,
                  "rule " + std::to_string(r.rule_id()) + " has an empty body");
    }
    if (r.predicted_class() < 0 || r.predicted_class() >= n_classes_) {
      throw Error(ErrorCode::kRange,
                  "rule " + std::to_string(r.rule_id()) + " predicts a bad class");
    }
    for (const SplitCondition& c : r.body) {
      if (c.feature < 0 || static_cast<std::size_t>(c.feature) >= schema_.size()) {
        throw Error(ErrorCode::kRange,
                    "rule " + std::to_string(r.rule_id()) + " uses an unknown feature");
      }
    }
  }
}

int RuleSetClassifier::FiringRule(std::span<const double> instance) const {
  if (instance.size() != schema_.size()) {
    throw Error(ErrorCode::kFeatureMismatch,
                "instance has " + std::to_string(instance.size()) +
                    " features, expected " + std::to_string(schema_.size()));
  }
  for (double v : instance) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kFeatureMismatch, "non-finite feature value");
    }
  }
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const auto& body = rules_[i].body;
    if (std::all_of(body.begin(), body.end(), [&](const SplitCondition& c) {
          return c.Evaluate(instance);
        })) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

int RuleSetClassifier::Classify(std::span<const double> instance) const {
  const int pos = FiringRule(instance);
  return pos < 0 ? default_class_ : rules_[pos].predicted_class();
}

std::vector<int> RuleSetClassifier::ClassifyAll(const Dataset& dataset,
                                                std::vector<int>* firing) const {
  if (dataset.num_features() != schema_.size()) {
    throw Error(ErrorCode::kFeatureMismatch, "dataset does not match the rule schema");
  }
  for (std::size_t f = 0; f < dataset.num_features(); ++f) {
    for (double v : dataset.column(f)) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kFeatureMismatch, "non-finite feature value");
      }
    }
  }
  const std::size_t n = dataset.num_rows();
  std::vector<int> predicted(n, default_class_);
  std::vector<int> fired(n, -1);

  Mask pending(kernels::WordsFor(n), ~std::uint64_t{0});
  if (n % 64 != 0) pending.back() = (std::uint64_t{1} << (n % 64)) - 1;
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    Mask hit = pending;
    for (const SplitCondition& c : rules_[i].body) {
      kernels::AndInPlace(hit, ConditionMask(c, dataset));
    }
    for (std::size_t w = 0; w < hit.size(); ++w) {
      for (std::uint64_t bits = hit[w]; bits != 0; bits &= bits - 1) {
        const std::size_t row = w * 64 + std::countr_zero(bits);
        predicted[row] = rules_[i].predicted_class();
        fired[row] = static_cast<int>(i);
      }
    }
    kernels::AndNotInPlace(pending, hit);
  }
  if (firing != nullptr) *firing = std::move(fired);
  return predicted;
}

void SortRules(std::vector<ClassifierRule>& rules, OrderPolicy policy) {
  auto key = [policy](const ClassifierRule& r) {
    const RuleMetrics& m = r.metrics;
    // Negated so that ascending order puts the preferred rule first.
    return policy == OrderPolicy::kPrecision
               ? std::make_tuple(-std::int64_t{m.precision}, -m.support, m.rule_id)
               : std::make_tuple(-m.support, -std::int64_t{m.precision}, m.rule_id);
  };
  if (policy == OrderPolicy::kSelection) return;
  std::stable_sort(rules.begin(), rules.end(),
                   [&](const ClassifierRule& a, const ClassifierRule& b) {
                     return key(a) < key(b);
                   });
}

RuleSetClassifier BuildClassifier(std::span<const ScoredRule> selected,
                                  const AtomTable& atoms, const Dataset& train,
                                  OrderPolicy policy, bool allow_empty) {
  if (selected.empty() && !allow_empty) {
    throw Error(ErrorCode::kEmptySelection, "no rule was selected");
  }
  std::vector<ClassifierRule> rules;
  rules.reserve(selected.size());
  for (const ScoredRule& s : selected) {
    ClassifierRule r;
    r.metrics = s.metrics;
    for (int atom : s.atoms) r.body.push_back(atoms.condition(atom));
    rules.push_back(std::move(r));
  }
  SortRules(rules, policy);
  return RuleSetClassifier(train.schema(), train.n_classes(), std::move(rules),
                           MajorityClass(train));
}

BinaryScores ScorePredictions(std::span<const int> predicted,
                              std::span<const int> actual) {
  std::int64_t tp = 0, fp = 0, fn = 0, correct = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const bool p = predicted[i] == 1;
    const bool a = actual[i] == 1;
    tp += p && a;
    fp += p && !a;
    fn += !p && a;
    correct += predicted[i] == actual[i];
  }
  auto ratio = [](std::int64_t num, std::int64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  BinaryScores s;
  s.accuracy = ratio(correct, static_cast<std::int64_t>(predicted.size()));
  s.precision = ratio(tp, tp + fp);
  s.recall = ratio(tp, tp + fn);
  s.f1 = ratio(2 * tp, 2 * tp + fp + fn);
  return s;
}

EvalReport Evaluate(const RuleSetClassifier& classifier,
                    const Ensemble& ensemble, const Dataset& fold) {
  EvalReport report;
  report.num_instances = fold.num_rows();
  std::vector<int> firing;
  const std::vector<int> predicted = classifier.ClassifyAll(fold, &firing);

  std::vector<int> reference(fold.num_rows());
  for (std::size_t i = 0; i < fold.num_rows(); ++i) {
    reference[i] = ensemble.Predict(fold.Row(i));
  }
  report.classifier = ScorePredictions(predicted, fold.labels());
  report.ensemble = ScorePredictions(reference, fold.labels());

  auto ratio = [](double num, double den) -> std::optional<double> {
    if (den == 0) return std::nullopt;
    return num / den;
  };
  report.ratios.accuracy = ratio(report.classifier.accuracy, report.ensemble.accuracy);
  report.ratios.precision = ratio(report.classifier.precision, report.ensemble.precision);
  report.ratios.recall = ratio(report.classifier.recall, report.ensemble.recall);
  report.ratios.f1 = ratio(report.classifier.f1, report.ensemble.f1);

  for (const ClassifierRule& r : classifier.rules()) {
    report.fired_rule_histogram[r.rule_id()] = 0;
  }
  for (int pos : firing) {
    if (pos < 0) {
      ++report.fallback_count;
    } else {
      ++report.fired_rule_histogram[classifier.rules()[pos].rule_id()];
    }
  }
  return report;
}

}  // namespace rulesift
