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

#include "rulesift/selection.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "rulesift/error.h"

namespace rulesift {

std::string_view MetricName(Metric metric) {
  switch (metric) {
    case Metric::kAccuracy: return "accuracy";
    case Metric::kErrorRate: return "error_rate";
    case Metric::kPrecision: return "precision";
    case Metric::kRecall: return "recall";
    case Metric::kF1: return "f1";
    case Metric::kSupport: return "support";
    case Metric::kSize: return "size";
    case Metric::kOverlap: return "overlap";
  }
  return "?";
}

Metric ParseMetric(std::string_view name) {
  for (Metric m : {Metric::kAccuracy, Metric::kErrorRate, Metric::kPrecision,
                   Metric::kRecall, Metric::kF1, Metric::kSupport, Metric::kSize,
                   Metric::kOverlap}) {
    if (MetricName(m) == name) return m;
  }
  if (name == "f1_score") return Metric::kF1;
  throw Error(ErrorCode::kConfig, "unknown metric '" + std::string(name) + "'");
}

std::int64_t MetricValue(const RuleMetrics& m, Metric metric) {
  switch (metric) {
    case Metric::kAccuracy: return m.accuracy;
    case Metric::kErrorRate: return m.error_rate;
    case Metric::kPrecision: return m.precision;
    case Metric::kRecall: return m.recall;
    case Metric::kF1: return m.f1;
    case Metric::kSupport: return m.support;
    case Metric::kSize: return m.size;
    case Metric::kOverlap: break;
  }
  throw Error(ErrorCode::kConfig, "overlap is not a per-rule metric");
}

void SelectionConfig::Validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::kConfig, msg); };
  if (min_support < 0) fail("min_support must be >= 0");
  if (per_class_min < 0) fail("per_class_min must be >= 0");
  if (per_class_max < 1) fail("per_class_max must be >= 1");
  if (per_class_min > per_class_max) fail("per_class_min exceeds per_class_max");
  if (total_size_cap < 1) fail("total_size_cap must be >= 1");
  if (exact_search_cap < 1) fail("exact_search_cap must be >= 1");
  if (dominance_enabled) {
    if (dominance_criteria.empty()) fail("dominance criteria are empty");
    std::set<Metric> seen;
    for (const auto& c : dominance_criteria) {
      if (c.metric == Metric::kOverlap) fail("overlap cannot be a dominance criterion");
      if (!seen.insert(c.metric).second) fail("duplicate dominance criterion");
    }
  }
}

void ObjectiveConfig::Validate() const {
  if (terms.empty()) throw Error(ErrorCode::kConfig, "objective has no terms");
  for (const auto& t : terms) {
    if (t.weight < 1) throw Error(ErrorCode::kConfig, "objective weights must be >= 1");
  }
}

std::vector<int> ObjectiveConfig::Priorities() const {
  std::set<int, std::greater<>> levels;
  for (const auto& t : terms) levels.insert(t.priority);
  return {levels.begin(), levels.end()};
}

bool LexLess(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<ScoredRule> ScoreRules(const CandidateSet& candidates,
                                   std::span<const RuleMetrics> metrics) {
  if (metrics.size() != candidates.rules.size()) {
    throw Error(ErrorCode::kConfig, "metrics do not match the candidate rules");
  }
  std::vector<ScoredRule> out;
  out.reserve(metrics.size());
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    const Rule& r = candidates.rules[i];
    out.push_back({r.id, r.predicted_class, r.atoms, metrics[i]});
  }
  return out;
}

std::string_view ProofName(Proof proof) {
  switch (proof) {
    case Proof::kExact: return "exact";
    case Proof::kGreedy: return "greedy";
    case Proof::kExternal: return "external";
  }
  return "?";
}

SelectionProblem::SelectionProblem(std::vector<ScoredRule> rules,
                                   SelectionConfig config,
                                   ObjectiveConfig objectives, int n_classes)
    : rules_(std::move(rules)),
      config_(std::move(config)),
      objectives_(std::move(objectives)),
      n_classes_(n_classes) {
  config_.Validate();
  objectives_.Validate();
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const ScoredRule& r = rules_[i];
    if (!index_.emplace(r.rule_id, i).second) {
      throw Error(ErrorCode::kConfig, "duplicate rule id " + std::to_string(r.rule_id));
    }
    if (r.metrics.rule_id != r.rule_id) {
      throw Error(ErrorCode::kConfig,
                  "rule " + std::to_string(r.rule_id) + " has no metrics");
    }
    if (r.predicted_class < 0 || r.predicted_class >= n_classes_) {
      throw Error(ErrorCode::kRange,
                  "rule " + std::to_string(r.rule_id) + " predicts an unknown class");
    }
  }
}

// --- Local and pairwise constraints -----------------------------------------

std::vector<int> ApplyLocalConstraints(std::span<const ScoredRule> rules,
                                       const SelectionConfig& config) {
  std::vector<int> valid;
  for (const ScoredRule& r : rules) {
    if (r.metrics.support >= config.min_support) valid.push_back(r.rule_id);
  }
  std::sort(valid.begin(), valid.end());
  return valid;
}

namespace {

// Signed so that larger is always better.
std::int64_t Preference(const RuleMetrics& m, const DominanceCriterion& c) {
  const std::int64_t v = MetricValue(m, c.metric);
  return c.direction == Direction::kMax ? v : -v;
}

bool Dominates(const RuleMetrics& a, const RuleMetrics& b,
               std::span<const DominanceCriterion> criteria) {
  bool strict = false;
  for (const auto& c : criteria) {
    const std::int64_t pa = Preference(a, c), pb = Preference(b, c);
    if (pa < pb) return false;
    if (pa > pb) strict = true;
  }
  return strict;
}

}  // namespace

std::vector<int> DominanceFilter(std::span<const ScoredRule> rules,
                                 std::span<const int> candidate_ids,
                                 std::span<const DominanceCriterion> criteria) {
  std::unordered_map<int, const ScoredRule*> by_id;
  for (const ScoredRule& r : rules) by_id.emplace(r.rule_id, &r);
  std::vector<const ScoredRule*> order;
  for (int id : candidate_ids) order.push_back(by_id.at(id));

  // Sort-filter skyline: after sorting by preference, a dominator always
  // precedes what it dominates, so each rule is checked against the
  // survivors so far only.
  std::sort(order.begin(), order.end(), [&](const ScoredRule* a, const ScoredRule* b) {
    for (const auto& c : criteria) {
      const std::int64_t pa = Preference(a->metrics, c);
      const std::int64_t pb = Preference(b->metrics, c);
      if (pa != pb) return pa > pb;
    }
    return a->rule_id < b->rule_id;
  });
  std::vector<const ScoredRule*> skyline;
  for (const ScoredRule* r : order) {
    const bool dominated = std::any_of(
        skyline.begin(), skyline.end(), [&](const ScoredRule* s) {
          return Dominates(s->metrics, r->metrics, criteria);
        });
    if (!dominated) skyline.push_back(r);
  }
  std::vector<int> out;
  for (const ScoredRule* r : skyline) out.push_back(r->rule_id);
  std::sort(out.begin(), out.end());
  return out;
}

// --- Objective --------------------------------------------------------------

int SharedAtoms(std::span<const int> a, std::span<const int> b) {
  int shared = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++shared;
      ++i;
      ++j;
    }
  }
  return shared;
}

namespace {

// Overlap over k rules whose pairwise shared-atom counts come from `shared`.
template <typename SharedFn>
std::int64_t OverlapCore(std::size_t k, SharedFn shared, OverlapMode mode) {
  std::int64_t total = 0;
  std::vector<int> sizes;
  for (std::size_t x = 0; x < k; ++x) {
    sizes.clear();
    for (std::size_t y = 0; y < k; ++y) {
      if (x == y) continue;
      const int cn = shared(x, y);
      if (cn == 0) continue;
      if (mode == OverlapMode::kPairwiseSum) {
        total += cn;
      } else {
        sizes.push_back(cn);
      }
    }
    if (mode == OverlapMode::kTupleSet) {
      std::sort(sizes.begin(), sizes.end());
      sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
      total += std::accumulate(sizes.begin(), sizes.end(), std::int64_t{0});
    }
  }
  return total;
}

// Objective terms folded per priority level: per-rule additive coefficients
// plus one coefficient on the overlap of the whole selection.
struct LevelModel {
  std::vector<int> priorities;
  std::vector<std::vector<std::pair<Metric, std::int64_t>>> additive;
  std::vector<std::int64_t> overlap_coef;

  explicit LevelModel(const ObjectiveConfig& objectives)
      : priorities(objectives.Priorities()),
        additive(priorities.size()),
        overlap_coef(priorities.size(), 0) {
    for (const auto& t : objectives.terms) {
      const std::size_t level =
          std::find(priorities.begin(), priorities.end(), t.priority) -
          priorities.begin();
      const std::int64_t signed_weight =
          t.direction == Direction::kMin ? t.weight : -t.weight;
      if (t.metric == Metric::kOverlap) {
        overlap_coef[level] += signed_weight;
      } else {
        additive[level].emplace_back(t.metric, signed_weight);
      }
    }
  }

  std::size_t levels() const { return priorities.size(); }

  std::int64_t Contribution(const RuleMetrics& m, std::size_t level) const {
    std::int64_t sum = 0;
    for (const auto& [metric, w] : additive[level]) sum += w * MetricValue(m, metric);
    return sum;
  }
};

std::vector<int> RequiredPerClass(const SelectionProblem& problem) {
  const SelectionConfig& config = problem.config();
  std::vector<int> required(problem.n_classes(), config.per_class_min);
  if (config.allow_empty_class) {
    std::vector<char> has_valid(problem.n_classes(), 0);
    for (int id : ApplyLocalConstraints(problem.rules(), config)) {
      has_valid[problem.rule(id).predicted_class] = 1;
    }
    for (int k = 0; k < problem.n_classes(); ++k) {
      if (!has_valid[k]) required[k] = 0;
    }
  }
  return required;
}

}  // namespace

std::int64_t OverlapPenalty(std::span<const std::vector<int>> bodies,
                            OverlapMode mode) {
  return OverlapCore(
      bodies.size(),
      [&](std::size_t x, std::size_t y) { return SharedAtoms(bodies[x], bodies[y]); },
      mode);
}

ObjectiveVector ObjectiveValue(const SelectionProblem& problem,
                               std::span<const int> selected) {
  const LevelModel model(problem.objectives());
  ObjectiveVector value(model.levels(), 0);
  std::vector<std::vector<int>> bodies;
  for (int id : selected) {
    const ScoredRule& r = problem.rule(id);
    for (std::size_t l = 0; l < model.levels(); ++l) {
      value[l] += model.Contribution(r.metrics, l);
    }
    bodies.push_back(r.atoms);
  }
  const std::int64_t overlap =
      OverlapPenalty(bodies, problem.config().overlap_mode);
  for (std::size_t l = 0; l < model.levels(); ++l) {
    value[l] += model.overlap_coef[l] * overlap;
  }
  return value;
}

std::vector<int> SelectionCandidates(const SelectionProblem& problem) {
  const SelectionConfig& config = problem.config();
  std::vector<int> valid = ApplyLocalConstraints(problem.rules(), config);
  if (!config.dominance_enabled) return valid;
  return DominanceFilter(problem.rules(), valid, config.dominance_criteria);
}

bool SatisfiesConstraints(const SelectionProblem& problem,
                          std::span<const int> selected) {
  const SelectionConfig& config = problem.config();
  const std::vector<int> required = RequiredPerClass(problem);
  std::vector<int> per_class(problem.n_classes(), 0);
  std::int64_t size = 0;
  for (int id : selected) {
    const ScoredRule& r = problem.rule(id);
    ++per_class[r.predicted_class];
    size += r.metrics.size;
  }
  for (int k = 0; k < problem.n_classes(); ++k) {
    if (per_class[k] < required[k] || per_class[k] > config.per_class_max) {
      return false;
    }
  }
  return size <= config.total_size_cap;
}

// --- Exact search -----------------------------------------------------------

namespace {

void CheckEveryClassCoverable(const SelectionProblem& problem,
                              const std::vector<int>& required) {
  std::vector<char> has_valid(problem.n_classes(), 0);
  for (int id : ApplyLocalConstraints(problem.rules(), problem.config())) {
    has_valid[problem.rule(id).predicted_class] = 1;
  }
  for (int k = 0; k < problem.n_classes(); ++k) {
    if (required[k] > 0 && !has_valid[k]) {
      throw Error(ErrorCode::kInfeasible,
                  "no valid rule for class " + std::to_string(k));
    }
  }
}

class BranchAndBound {
 public:
  BranchAndBound(const SelectionProblem& problem, std::vector<int> ids,
                 std::vector<int> required)
      : model_(problem.objectives()),
        mode_(problem.config().overlap_mode),
        n_(ids.size()),
        n_classes_(problem.n_classes()),
        per_class_max_(problem.config().per_class_max),
        size_cap_(problem.config().total_size_cap),
        ids_(std::move(ids)),
        required_(std::move(required)),
        class_count_(n_classes_, 0),
        add_sum_(model_.levels(), 0) {
    for (int id : ids_) {
      const ScoredRule& r = problem.rule(id);
      class_.push_back(r.predicted_class);
      size_.push_back(r.metrics.size);
      std::vector<std::int64_t> add(model_.levels());
      for (std::size_t l = 0; l < model_.levels(); ++l) {
        add[l] = model_.Contribution(r.metrics, l);
      }
      add_.push_back(std::move(add));
    }
    shared_.assign(n_, std::vector<int>(n_, 0));
    for (std::size_t a = 0; a < n_; ++a) {
      for (std::size_t b = a + 1; b < n_; ++b) {
        shared_[a][b] = shared_[b][a] = SharedAtoms(problem.rule(ids_[a]).atoms,
                                                    problem.rule(ids_[b]).atoms);
      }
    }
    suffix_count_.assign(n_ + 1, std::vector<int>(n_classes_, 0));
    for (std::size_t i = n_; i-- > 0;) {
      suffix_count_[i] = suffix_count_[i + 1];
      ++suffix_count_[i][class_[i]];
    }
  }

  bool Run() {
    Visit(0);
    return found_;
  }
  const ObjectiveVector& best_objective() const { return best_objective_; }
  const std::vector<int>& best_ids() const { return best_ids_; }

 private:
  std::int64_t Overlap(const std::vector<std::size_t>& members) const {
    return OverlapCore(
        members.size(),
        [&](std::size_t x, std::size_t y) { return shared_[members[x]][members[y]]; },
        mode_);
  }

  // Each class still short of its minimum must be completable from the
  // remaining candidates, within the remaining size budget.
  bool Completable(std::size_t i) const {
    int mandatory_size = 0;
    std::vector<int> sizes;
    for (int k = 0; k < n_classes_; ++k) {
      const int missing = required_[k] - class_count_[k];
      if (missing <= 0) continue;
      if (suffix_count_[i][k] < missing) return false;
      sizes.clear();
      for (std::size_t j = i; j < n_; ++j) {
        if (class_[j] == k) sizes.push_back(size_[j]);
      }
      std::partial_sort(sizes.begin(), sizes.begin() + missing, sizes.end());
      mandatory_size += std::accumulate(sizes.begin(), sizes.begin() + missing, 0);
    }
    return size_sum_ + mandatory_size <= size_cap_;
  }

  // Componentwise lower bound on the objective of every completion of the
  // current partial selection using candidates i..n-1.
  ObjectiveVector LowerBound(std::size_t i) const {
    const int budget = size_cap_ - size_sum_;
    ObjectiveVector bound(model_.levels());
    std::vector<std::int64_t> values;
    std::vector<std::pair<std::int64_t, int>> gains;  // (gain, size)
    std::vector<std::size_t> everything;
    for (std::size_t l = 0; l < model_.levels(); ++l) {
      // Cardinality relaxation: per class take the mandatory cheapest
      // additions, then any further improving ones up to the class cap.
      std::int64_t by_count = add_sum_[l];
      for (int k = 0; k < n_classes_; ++k) {
        values.clear();
        for (std::size_t j = i; j < n_; ++j) {
          if (class_[j] == k && size_[j] <= budget) values.push_back(add_[j][l]);
        }
        std::sort(values.begin(), values.end());
        const int must = std::max(0, required_[k] - class_count_[k]);
        const int room = per_class_max_ - class_count_[k];
        for (int t = 0; t < room && t < static_cast<int>(values.size()); ++t) {
          if (t >= must && values[t] >= 0) break;
          by_count += values[t];
        }
      }
      // Size relaxation: fractional knapsack over improving additions.
      gains.clear();
      for (std::size_t j = i; j < n_; ++j) {
        if (add_[j][l] < 0 && size_[j] <= budget) gains.emplace_back(-add_[j][l], size_[j]);
      }
      std::sort(gains.begin(), gains.end(), [](const auto& a, const auto& b) {
        return a.first * b.second > b.first * a.second;
      });
      std::int64_t by_size = add_sum_[l];
      int left = budget;
      for (const auto& [gain, size] : gains) {
        if (size <= left) {
          by_size -= gain;
          left -= size;
        } else {
          by_size -= (gain * left + size - 1) / size;
          break;
        }
      }
      bound[l] = std::max(by_count, by_size);

      const std::int64_t coef = model_.overlap_coef[l];
      if (coef > 0) {
        bound[l] += coef * Overlap(chosen_);
      } else if (coef < 0) {
        if (everything.empty()) {
          everything = chosen_;
          for (std::size_t j = i; j < n_; ++j) everything.push_back(j);
        }
        bound[l] += coef * Overlap(everything);
      }
    }
    return bound;
  }

  void Visit(std::size_t i) {
    if (!Completable(i)) return;
    if (i == n_) {
      Record();
      return;
    }
    if (found_) {
      const ObjectiveVector bound = LowerBound(i);
      if (LexLess(best_objective_, bound)) return;
    }
    const int k = class_[i];
    if (class_count_[k] < per_class_max_ && size_sum_ + size_[i] <= size_cap_) {
      chosen_.push_back(i);
      ++class_count_[k];
      size_sum_ += size_[i];
      for (std::size_t l = 0; l < model_.levels(); ++l) add_sum_[l] += add_[i][l];
      Visit(i + 1);
      for (std::size_t l = 0; l < model_.levels(); ++l) add_sum_[l] -= add_[i][l];
      size_sum_ -= size_[i];
      --class_count_[k];
      chosen_.pop_back();
    }
    Visit(i + 1);
  }

  void Record() {
    ObjectiveVector value = add_sum_;
    const std::int64_t overlap = Overlap(chosen_);
    for (std::size_t l = 0; l < model_.levels(); ++l) {
      value[l] += model_.overlap_coef[l] * overlap;
    }
    std::vector<int> ids;
    for (std::size_t c : chosen_) ids.push_back(ids_[c]);
    if (!found_ || LexLess(value, best_objective_) ||
        (value == best_objective_ &&
         std::lexicographical_compare(ids.begin(), ids.end(), best_ids_.begin(),
                                      best_ids_.end()))) {
      found_ = true;
      best_objective_ = std::move(value);
      best_ids_ = std::move(ids);
    }
  }

  const LevelModel model_;
  const OverlapMode mode_;
  const std::size_t n_;
  const int n_classes_;
  const int per_class_max_;
  const int size_cap_;
  std::vector<int> ids_;
  std::vector<int> required_;
  std::vector<int> class_;
  std::vector<int> size_;
  std::vector<std::vector<std::int64_t>> add_;
  std::vector<std::vector<int>> shared_;
  std::vector<std::vector<int>> suffix_count_;

  std::vector<std::size_t> chosen_;
  std::vector<int> class_count_;
  int size_sum_ = 0;
  ObjectiveVector add_sum_;

  bool found_ = false;
  ObjectiveVector best_objective_;
  std::vector<int> best_ids_;
};

}  // namespace

RuleSetSolution SolveExact(const SelectionProblem& problem, bool enforce_cap) {
  const std::vector<int> required = RequiredPerClass(problem);
  CheckEveryClassCoverable(problem, required);
  std::vector<int> candidates = SelectionCandidates(problem);
  if (enforce_cap) {
    std::vector<int> per_class(problem.n_classes(), 0);
    for (int id : candidates) ++per_class[problem.rule(id).predicted_class];
    for (int k = 0; k < problem.n_classes(); ++k) {
      if (per_class[k] > problem.config().exact_search_cap) {
        throw Error(ErrorCode::kSearchCapExceeded,
                    "class " + std::to_string(k) + " has " +
                        std::to_string(per_class[k]) + " candidates (cap " +
                        std::to_string(problem.config().exact_search_cap) + ")");
      }
    }
  }
  BranchAndBound search(problem, std::move(candidates), required);
  if (!search.Run()) {
    throw Error(ErrorCode::kInfeasible,
                "no selection satisfies the class bounds and size cap");
  }
  return {search.best_ids(), search.best_objective(), Proof::kExact};
}

// --- Greedy -----------------------------------------------------------------

RuleSetSolution SolveGreedy(const SelectionProblem& problem) {
  const SelectionConfig& config = problem.config();
  const std::vector<int> required = RequiredPerClass(problem);
  CheckEveryClassCoverable(problem, required);
  const std::vector<int> candidates = SelectionCandidates(problem);

  std::vector<int> selected;
  std::vector<int> per_class(problem.n_classes(), 0);
  int size = 0;
  ObjectiveVector current = ObjectiveValue(problem, selected);

  // Best addition among `eligible` by marginal objective (ties: lower id).
  auto best_addition = [&](auto eligible) {
    int best_id = -1;
    ObjectiveVector best_delta;
    for (int id : candidates) {
      if (std::binary_search(selected.begin(), selected.end(), id)) continue;
      const ScoredRule& r = problem.rule(id);
      if (per_class[r.predicted_class] >= config.per_class_max) continue;
      if (size + r.metrics.size > config.total_size_cap) continue;
      if (!eligible(r)) continue;
      std::vector<int> trial = selected;
      trial.insert(std::lower_bound(trial.begin(), trial.end(), id), id);
      ObjectiveVector delta = ObjectiveValue(problem, trial);
      for (std::size_t l = 0; l < delta.size(); ++l) delta[l] -= current[l];
      if (best_id < 0 || LexLess(delta, best_delta)) {
        best_id = id;
        best_delta = std::move(delta);
      }
    }
    return std::make_pair(best_id, best_delta);
  };
  auto add = [&](int id) {
    const ScoredRule& r = problem.rule(id);
    selected.insert(std::lower_bound(selected.begin(), selected.end(), id), id);
    ++per_class[r.predicted_class];
    size += r.metrics.size;
    current = ObjectiveValue(problem, selected);
  };

  for (;;) {
    auto [id, delta] = best_addition([&](const ScoredRule& r) {
      return per_class[r.predicted_class] < required[r.predicted_class];
    });
    if (id < 0) break;
    add(id);
  }
  for (int k = 0; k < problem.n_classes(); ++k) {
    if (per_class[k] < required[k]) {
      throw Error(ErrorCode::kInfeasible,
                  "greedy search could not satisfy the bounds of class " +
                      std::to_string(k));
    }
  }
  const ObjectiveVector zero(current.size(), 0);
  for (;;) {
    auto [id, delta] = best_addition([](const ScoredRule&) { return true; });
    if (id < 0 || !LexLess(delta, zero)) break;
    add(id);
  }
  return {selected, current, Proof::kGreedy};
}

RuleSetSolution Solve(const SelectionProblem& problem) {
  const SelectionConfig& config = problem.config();
  if (config.force_exact) return SolveExact(problem, /*enforce_cap=*/false);
  try {
    return SolveExact(problem, /*enforce_cap=*/true);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kSearchCapExceeded) throw;
  }
  return SolveGreedy(problem);
}

}  // namespace rulesift
