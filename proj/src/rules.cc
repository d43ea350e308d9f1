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

#include "rulesift/rules.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <limits>
#include <numeric>

#include <nlohmann/json.hpp>

#include "rulesift/error.h"
#include "rulesift/kernels.h"

namespace rulesift {

AtomTable::Key AtomTable::KeyOf(const SplitCondition& c) {
  return {c.feature, static_cast<int>(c.op),
          c.IsCategorical() ? 0 : std::bit_cast<std::uint64_t>(c.threshold),
          c.IsCategorical() ? c.categories : std::vector<int>{}};
}

int AtomTable::Intern(const SplitCondition& condition) {
  auto [it, inserted] =
      index_.emplace(KeyOf(condition), static_cast<int>(atoms_.size()) + 1);
  if (inserted) atoms_.push_back(condition);
  return it->second;
}

std::int64_t Rule::support() const {
  return std::accumulate(coverage_counts.begin(), coverage_counts.end(),
                         std::int64_t{0});
}

std::vector<SplitCondition> Canonicalize(
    std::span<const SplitCondition> conditions, const FeatureSchema& schema) {
  struct Bounds {
    bool has_le = false, has_gt = false;
    double le = 0, gt = 0;
    bool has_in = false, has_not_in = false;
    std::vector<int> in, not_in;
  };
  std::map<int, Bounds> by_feature;
  for (const SplitCondition& c : conditions) {
    Bounds& b = by_feature[c.feature];
    switch (c.op) {
      case SplitOp::kLe:
        b.le = b.has_le ? std::min(b.le, c.threshold) : c.threshold;
        b.has_le = true;
        break;
      case SplitOp::kGt:
        b.gt = b.has_gt ? std::max(b.gt, c.threshold) : c.threshold;
        b.has_gt = true;
        break;
      case SplitOp::kInSet:
        if (b.has_in) {
          std::vector<int> both;
          std::set_intersection(b.in.begin(), b.in.end(), c.categories.begin(),
                                c.categories.end(), std::back_inserter(both));
          b.in = std::move(both);
        } else {
          b.in = c.categories;
        }
        b.has_in = true;
        break;
      case SplitOp::kNotInSet: {
        std::vector<int> either;
        std::set_union(b.not_in.begin(), b.not_in.end(), c.categories.begin(),
                       c.categories.end(), std::back_inserter(either));
        b.not_in = std::move(either);
        b.has_not_in = true;
        break;
      }
    }
  }

  std::vector<SplitCondition> out;
  for (auto& [feature, b] : by_feature) {
    const std::string name = schema[feature].name;
    if (b.has_le && b.has_gt && !(b.gt < b.le)) {
      throw Error(ErrorCode::kContradictoryPath,
                  "empty interval on '" + name + "'");
    }
    if (b.has_le) out.push_back({feature, SplitOp::kLe, b.le, {}});
    if (b.has_gt) out.push_back({feature, SplitOp::kGt, b.gt, {}});
    if (b.has_in) {
      std::vector<int> kept;
      std::set_difference(b.in.begin(), b.in.end(), b.not_in.begin(),
                          b.not_in.end(), std::back_inserter(kept));
      if (kept.empty()) {
        throw Error(ErrorCode::kContradictoryPath,
                    "empty category set on '" + name + "'");
      }
      out.push_back({feature, SplitOp::kInSet, 0.0, std::move(kept)});
    } else if (b.has_not_in) {
      if (b.not_in.size() >= schema[feature].categories.size()) {
        throw Error(ErrorCode::kContradictoryPath,
                    "every category excluded on '" + name + "'");
      }
      out.push_back({feature, SplitOp::kNotInSet, 0.0, std::move(b.not_in)});
    }
  }
  return out;
}

// --- Coverage ---------------------------------------------------------------

Mask ConditionMask(const SplitCondition& c, const Dataset& dataset) {
  const std::size_t n = dataset.num_rows();
  Mask mask(kernels::WordsFor(n));
  const auto column = dataset.column(c.feature);
  switch (c.op) {
    case SplitOp::kLe:
      kernels::LessEqualMask(column, c.threshold, mask);
      break;
    case SplitOp::kGt:
      kernels::GreaterMask(column, c.threshold, mask);
      break;
    case SplitOp::kInSet:
    case SplitOp::kNotInSet: {
      const std::vector<double> codes(c.categories.begin(), c.categories.end());
      kernels::InSetMask(column, codes, mask);
      if (c.op == SplitOp::kNotInSet) {
        for (auto& w : mask) w = ~w;
        if (n % 64 != 0) mask.back() &= (std::uint64_t{1} << (n % 64)) - 1;
      }
      break;
    }
  }
  return mask;
}

CoverageIndex::CoverageIndex(const Dataset& dataset, const AtomTable& atoms)
    : dataset_(dataset),
      atoms_(atoms),
      words_(kernels::WordsFor(dataset.num_rows())),
      atom_masks_(atoms.size()),
      atom_ready_(atoms.size(), 0),
      label_masks_(dataset.n_classes(), Mask(words_, 0)) {
  for (std::size_t r = 0; r < dataset.num_rows(); ++r) {
    label_masks_[dataset.label(r)][r >> 6] |= std::uint64_t{1} << (r & 63);
  }
}

std::span<const std::uint64_t> CoverageIndex::AtomMask(int atom_id) {
  const std::size_t slot = static_cast<std::size_t>(atom_id - 1);
  if (slot >= atom_masks_.size()) {
    atom_masks_.resize(atoms_.size());
    atom_ready_.resize(atoms_.size(), 0);
  }
  if (!atom_ready_[slot]) {
    atom_masks_[slot] = ConditionMask(atoms_.condition(atom_id), dataset_);
    atom_ready_[slot] = 1;
  }
  return atom_masks_[slot];
}

Mask CoverageIndex::BodyMask(std::span<const int> atom_ids) {
  Mask mask(words_, ~std::uint64_t{0});
  const std::size_t n = dataset_.num_rows();
  if (n % 64 != 0) mask.back() = (std::uint64_t{1} << (n % 64)) - 1;
  for (int id : atom_ids) kernels::AndInPlace(mask, AtomMask(id));
  return mask;
}

std::vector<std::int64_t> CoverageIndex::ClassCounts(
    std::span<const std::uint64_t> mask) const {
  std::vector<std::int64_t> counts(label_masks_.size());
  for (std::size_t c = 0; c < label_masks_.size(); ++c) {
    counts[c] = static_cast<std::int64_t>(kernels::AndPopCount(mask, label_masks_[c]));
  }
  return counts;
}

// --- Extraction -------------------------------------------------------------

CandidateSet ExtractCandidateRules(const Ensemble& ensemble,
                                   const Dataset& train) {
  if (train.num_features() != ensemble.num_features()) {
    throw Error(ErrorCode::kFeatureMismatch,
                "training data does not match the ensemble schema");
  }
  const FeatureSchema& schema = ensemble.schema();
  CandidateSet out;
  std::vector<Rule> drafts;
  std::map<std::vector<int>, std::size_t> by_body;

  std::vector<const Tree*> trees;
  for (const Tree& t : ensemble.trees()) trees.push_back(&t);
  std::stable_sort(trees.begin(), trees.end(),
                   [](const Tree* a, const Tree* b) { return a->id() < b->id(); });

  for (const Tree* tree : trees) {
    // Preorder walk carrying the path conditions; visiting children in
    // left-then-right order reproduces Tree::preorder().
    struct Frame {
      int node_id;
      std::vector<SplitCondition> path;
    };
    std::vector<Frame> stack;
    stack.push_back({tree->root_id(), {}});
    while (!stack.empty()) {
      Frame frame = std::move(stack.back());
      stack.pop_back();
      const Node& node = tree->node(frame.node_id);
      if (!frame.path.empty()) {
        std::vector<int> body;
        for (const SplitCondition& c : Canonicalize(frame.path, schema)) {
          body.push_back(out.atoms.Intern(c));
        }
        std::sort(body.begin(), body.end());
        auto [it, inserted] = by_body.emplace(body, drafts.size());
        if (inserted) {
          Rule rule;
          rule.atoms = std::move(body);
          drafts.push_back(std::move(rule));
        }
        drafts[it->second].origins.push_back({tree->id(), node.id});
      }
      if (!node.is_leaf()) {
        std::vector<SplitCondition> right_path = frame.path;
        right_path.push_back(node.condition.Negated());
        frame.path.push_back(node.condition);
        stack.push_back({node.right, std::move(right_path)});
        stack.push_back({node.left, std::move(frame.path)});
      }
    }
  }
  if (drafts.empty()) {
    throw Error(ErrorCode::kEmptyRuleSet,
                "no split conditions in any tree (leaf-only ensemble)");
  }

  CoverageIndex index(train, out.atoms);
  for (Rule& rule : drafts) {
    const Mask mask = index.BodyMask(rule.atoms);
    rule.coverage_counts = index.ClassCounts(mask);
    if (rule.support() == 0) continue;
    rule.predicted_class = ArgMax(rule.coverage_counts);
    rule.id = static_cast<int>(out.rules.size()) + 1;
    out.rules.push_back(std::move(rule));
  }
  if (out.rules.empty()) {
    throw Error(ErrorCode::kEmptyRuleSet,
                "no candidate rule covers any training instance");
  }
  return out;
}

// --- Rendering --------------------------------------------------------------

std::string FormatNumber(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string RenderCondition(const SplitCondition& c,
                            const FeatureSchema& schema) {
  const FeatureSpec& spec = schema[c.feature];
  switch (c.op) {
    case SplitOp::kLe: return spec.name + " <= " + FormatNumber(c.threshold);
    case SplitOp::kGt: return spec.name + " > " + FormatNumber(c.threshold);
    case SplitOp::kInSet:
    case SplitOp::kNotInSet: {
      std::string out = spec.name + (c.op == SplitOp::kInSet ? " in {" : " not in {");
      for (std::size_t i = 0; i < c.categories.size(); ++i) {
        if (i > 0) out += ", ";
        out += spec.categories[c.categories[i]];
      }
      return out + "}";
    }
  }
  return {};
}

std::string DumpRulesJsonl(const CandidateSet& candidates,
                           const FeatureSchema& schema) {
  std::string out;
  for (const Rule& rule : candidates.rules) {
    nlohmann::ordered_json atoms = nlohmann::ordered_json::array();
    for (int id : rule.atoms) {
      const SplitCondition& c = candidates.atoms.condition(id);
      nlohmann::ordered_json value;
      if (c.IsCategorical()) {
        value = nlohmann::ordered_json::array();
        for (int code : c.categories) {
          value.push_back(schema[c.feature].categories[code]);
        }
      } else {
        value = c.threshold;
      }
      atoms.push_back({{"feature", schema[c.feature].name},
                       {"op", SplitOpName(c.op)},
                       {"value", value}});
    }
    nlohmann::ordered_json origins = nlohmann::ordered_json::array();
    for (const RuleOrigin& o : rule.origins) {
      origins.push_back({o.tree_id, o.node_id});
    }
    const nlohmann::ordered_json line = {{"rule_id", rule.id},
                                 {"atoms", atoms},
                                 {"class", rule.predicted_class},
                                 {"origins", origins}};
    out += line.dump() + "\n";
  }
  return out;
}

}  // namespace rulesift
