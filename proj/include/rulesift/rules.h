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

#ifndef RULESIFT_RULES_H_
#define RULESIFT_RULES_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "rulesift/dataset.h"
#include "rulesift/ensemble.h"

namespace rulesift {

// Interning registry for canonical split conditions. Ids start at 1 and are
// handed out in first-seen order; equal conditions (thresholds by bit
// pattern) always map to the same id. Not thread-safe.
class AtomTable {
 public:
  int Intern(const SplitCondition& condition);
  const SplitCondition& condition(int atom_id) const {
    return atoms_[atom_id - 1];
  }
  std::size_t size() const { return atoms_.size(); }

 private:
  using Key = std::tuple<int, int, std::uint64_t, std::vector<int>>;
  static Key KeyOf(const SplitCondition& condition);

  std::vector<SplitCondition> atoms_;
  std::map<Key, int> index_;
};

// Collapses the conditions of one root-to-node path into the tightest
// equivalent set: per continuous feature the smallest `le` and the largest
// `gt` bound; per categorical feature a single `in` set (intersection minus
// any excluded codes) or, without one, a single `not_in` union. Output is
// ordered by (feature, op). Throws ContradictoryPath if some feature admits
// no value.
std::vector<SplitCondition> Canonicalize(
    std::span<const SplitCondition> conditions, const FeatureSchema& schema);

struct RuleOrigin {
  int tree_id = 0;
  int node_id = 0;
  bool operator==(const RuleOrigin&) const = default;
};

struct Rule {
  int id = 0;
  std::vector<int> atoms;  // Ascending atom ids; never empty.
  int predicted_class = 0;
  std::vector<RuleOrigin> origins;
  std::vector<std::int64_t> coverage_counts;  // Per class, on training data.

  std::int64_t support() const;
};

struct CandidateSet {
  AtomTable atoms;
  std::vector<Rule> rules;
};

using Mask = std::vector<std::uint64_t>;

// Coverage bitmasks of atoms and rule bodies over one dataset. Atom masks are
// computed on first use and cached.
class CoverageIndex {
 public:
  CoverageIndex(const Dataset& dataset, const AtomTable& atoms);

  std::size_t num_rows() const { return dataset_.num_rows(); }
  std::size_t num_words() const { return words_; }

  std::span<const std::uint64_t> AtomMask(int atom_id);
  Mask BodyMask(std::span<const int> atom_ids);
  std::span<const std::uint64_t> LabelMask(int label) const {
    return label_masks_[label];
  }
  std::vector<std::int64_t> ClassCounts(std::span<const std::uint64_t> mask) const;

 private:
  const Dataset& dataset_;
  const AtomTable& atoms_;
  std::size_t words_;
  std::vector<Mask> atom_masks_;
  std::vector<char> atom_ready_;
  std::vector<Mask> label_masks_;
};

// Coverage mask of a single condition over a dataset.
Mask ConditionMask(const SplitCondition& condition, const Dataset& dataset);

// Enumerates the candidate rules of an ensemble: one per root-to-node path
// prefix (the root itself excluded) of every tree, canonicalized, merged
// across identical bodies, labeled with the majority training class of the
// instances it covers. Rules covering no training instance are dropped. Rule
// ids are assigned from 1 in (tree_id, preorder) order of first occurrence.
// Throws EmptyRuleSet when nothing remains (e.g. only leaf-only trees).
CandidateSet ExtractCandidateRules(const Ensemble& ensemble,
                                   const Dataset& train);

// "x2 > 4.5", "x4 <= 2", "colour in {red, blue}".
std::string RenderCondition(const SplitCondition& condition,
                            const FeatureSchema& schema);

// One JSON object per line:
// {"rule_id", "atoms":[{"feature","op","value"}], "class", "origins"}.
std::string DumpRulesJsonl(const CandidateSet& candidates,
                           const FeatureSchema& schema);

std::string FormatNumber(double value);

}  // namespace rulesift

#endif  // RULESIFT_RULES_H_
