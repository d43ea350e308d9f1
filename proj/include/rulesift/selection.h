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

#ifndef RULESIFT_SELECTION_H_
#define RULESIFT_SELECTION_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rulesift/metrics.h"
#include "rulesift/rules.h"

namespace rulesift {

enum class Metric {
  kAccuracy,
  kErrorRate,
  kPrecision,
  kRecall,
  kF1,
  kSupport,
  kSize,
  kOverlap,  // Objective only; a property of a rule set, not of one rule.
};

enum class Direction { kMax, kMin };

std::string_view MetricName(Metric metric);
Metric ParseMetric(std::string_view name);  // Throws ConfigError.
std::int64_t MetricValue(const RuleMetrics& metrics, Metric metric);

struct DominanceCriterion {
  Metric metric;
  Direction direction;
  bool operator==(const DominanceCriterion&) const = default;
};

enum class OverlapMode {
  kTupleSet,     // Each rule counts each distinct nonzero overlap size once.
  kPairwiseSum,  // Sum of shared atoms over all ordered pairs.
};

// Constraint set: local validity, pairwise dominance, global bounds.
struct SelectionConfig {
  int min_support = 10;
  int per_class_min = 1;
  int per_class_max = 10;
  int total_size_cap = 30;
  bool dominance_enabled = true;
  std::vector<DominanceCriterion> dominance_criteria = {
      {Metric::kF1, Direction::kMax},
      {Metric::kSize, Direction::kMin},
      {Metric::kSupport, Direction::kMax},
  };
  // A class without any valid rule is exempt from per_class_min.
  bool allow_empty_class = false;
  // Largest per-class candidate count solved exactly by Solve().
  int exact_search_cap = 40;
  bool force_exact = false;
  OverlapMode overlap_mode = OverlapMode::kTupleSet;

  void Validate() const;  // Throws ConfigError.
};

struct ObjectiveTerm {
  Metric metric;
  Direction direction;
  int weight = 1;
  int priority = 0;
  bool operator==(const ObjectiveTerm&) const = default;
};

// Objective set. Terms sharing a priority are summed into one cost level;
// levels are compared lexicographically, highest priority first. Every score
// is on a minimization scale (maximized metrics enter negated).
struct ObjectiveConfig {
  std::vector<ObjectiveTerm> terms = {
      {Metric::kAccuracy, Direction::kMax, 1, 0},
      {Metric::kSupport, Direction::kMax, 1, 0},
      {Metric::kSize, Direction::kMin, 1, 0},
      {Metric::kOverlap, Direction::kMin, 1, 0},
  };

  void Validate() const;  // Throws ConfigError.
  std::vector<int> Priorities() const;  // Distinct, descending.
};

using ObjectiveVector = std::vector<std::int64_t>;

// Strict lexicographic order on equally long vectors.
bool LexLess(std::span<const std::int64_t> a, std::span<const std::int64_t> b);

// A candidate rule together with its meta-data.
struct ScoredRule {
  int rule_id = 0;
  int predicted_class = 0;
  std::vector<int> atoms;  // Ascending.
  RuleMetrics metrics;
};

std::vector<ScoredRule> ScoreRules(const CandidateSet& candidates,
                                   std::span<const RuleMetrics> metrics);

class SelectionProblem {
 public:
  // Validates configuration and that rule ids are unique, metrics belong to
  // their rule and classes lie in [0, n_classes).
  SelectionProblem(std::vector<ScoredRule> rules, SelectionConfig config,
                   ObjectiveConfig objectives, int n_classes);

  std::span<const ScoredRule> rules() const { return rules_; }
  const ScoredRule& rule(int rule_id) const { return rules_[index_.at(rule_id)]; }
  bool contains(int rule_id) const { return index_.contains(rule_id); }
  const SelectionConfig& config() const { return config_; }
  const ObjectiveConfig& objectives() const { return objectives_; }
  int n_classes() const { return n_classes_; }

 private:
  std::vector<ScoredRule> rules_;
  std::unordered_map<int, std::size_t> index_;
  SelectionConfig config_;
  ObjectiveConfig objectives_;
  int n_classes_;
};

enum class Proof { kExact, kGreedy, kExternal };
std::string_view ProofName(Proof proof);

struct RuleSetSolution {
  std::vector<int> selected;  // Ascending rule ids.
  ObjectiveVector objective;
  Proof proof = Proof::kExact;
};

// Ids (ascending) of rules with support >= min_support.
std::vector<int> ApplyLocalConstraints(std::span<const ScoredRule> rules,
                                       const SelectionConfig& config);

// Pareto filter over `candidate_ids`: a rule is dropped iff another candidate
// is at least as good on every criterion and strictly better on one. Returns
// the survivors ascending; the result does not depend on input order.
std::vector<int> DominanceFilter(std::span<const ScoredRule> rules,
                                 std::span<const int> candidate_ids,
                                 std::span<const DominanceCriterion> criteria);

// Number of atoms two ascending id lists share.
int SharedAtoms(std::span<const int> a, std::span<const int> b);

// Overlap of a selection given as atom bodies.
std::int64_t OverlapPenalty(std::span<const std::vector<int>> bodies,
                            OverlapMode mode);

// Score vector of `selected` (rule ids), one entry per priority level.
ObjectiveVector ObjectiveValue(const SelectionProblem& problem,
                               std::span<const int> selected);

// Valid and non-dominated ids (dominance only when enabled), ascending.
std::vector<int> SelectionCandidates(const SelectionProblem& problem);

// Checks per-class bounds and the size cap; the exemption for classes with
// no valid rule applies when allow_empty_class is set.
bool SatisfiesConstraints(const SelectionProblem& problem,
                          std::span<const int> selected);

// Branch-and-bound over candidate inclusion. Among optimal selections the
// lexicographically smallest id list is returned. Throws Infeasible, or
// SearchCapExceeded when `enforce_cap` and some class has more than
// exact_search_cap candidates.
RuleSetSolution SolveExact(const SelectionProblem& problem,
                           bool enforce_cap = true);

// First fills every class up to per_class_min with the least costly
// additions, then keeps adding the best strictly improving rule.
RuleSetSolution SolveGreedy(const SelectionProblem& problem);

// Exact within the search cap (or when forced), greedy beyond it.
RuleSetSolution Solve(const SelectionProblem& problem);

}  // namespace rulesift

#endif  // RULESIFT_SELECTION_H_
