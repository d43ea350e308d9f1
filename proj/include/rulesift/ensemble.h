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

#ifndef RULESIFT_ENSEMBLE_H_
#define RULESIFT_ENSEMBLE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rulesift {

enum class FeatureKind { kContinuous, kCategorical };

struct FeatureSpec {
  std::string name;
  FeatureKind kind = FeatureKind::kContinuous;
  // Category dictionary; a categorical value is stored as its index here.
  std::vector<std::string> categories;

  // Index of `label` in the dictionary, or -1.
  int CategoryCode(std::string_view label) const;
};

using FeatureSchema = std::vector<FeatureSpec>;

enum class SplitOp { kLe, kGt, kInSet, kNotInSet };

std::string_view SplitOpName(SplitOp op);  // "le", "gt", "in", "not_in"

struct SplitCondition {
  int feature = 0;
  SplitOp op = SplitOp::kLe;
  double threshold = 0.0;       // kLe / kGt only.
  std::vector<int> categories;  // kInSet / kNotInSet only; sorted, unique.

  bool IsCategorical() const {
    return op == SplitOp::kInSet || op == SplitOp::kNotInSet;
  }

  bool Evaluate(std::span<const double> instance) const;

  // Condition satisfied exactly by the instances that fail this one.
  SplitCondition Negated() const;

  // Thresholds compare by bit pattern.
  bool operator==(const SplitCondition& other) const;
};

enum class NodeKind { kInternal, kLeaf };

struct Node {
  int id = 0;
  NodeKind kind = NodeKind::kLeaf;
  SplitCondition condition;  // Internal only. True routes left.
  int left = -1;
  int right = -1;
  std::vector<std::int64_t> class_counts;  // Required on majority-vote leaves.
  std::optional<double> leaf_value;        // Required on additive leaves.

  bool is_leaf() const { return kind == NodeKind::kLeaf; }
};

class Tree {
 public:
  // Validates the node graph: unique ids, resolvable children, every node
  // reachable from the root exactly once. Throws StructureError.
  Tree(int tree_id, int root_id, std::vector<Node> nodes);

  int id() const { return tree_id_; }
  int root_id() const { return root_id_; }
  const Node& root() const { return node(root_id_); }
  const Node& node(int node_id) const;
  std::span<const Node> nodes() const { return nodes_; }

  int depth() const { return depth_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  int leaf_count() const { return leaf_count_; }

  // Node ids in preorder (node, left subtree, right subtree).
  const std::vector<int>& preorder() const { return preorder_; }

  const Node& Route(std::span<const double> instance) const;

 private:
  int tree_id_;
  int root_id_;
  std::vector<Node> nodes_;
  std::unordered_map<int, std::size_t> index_;
  std::vector<int> preorder_;
  int depth_ = 0;
  int leaf_count_ = 0;
};

enum class Aggregation { kMajorityVote, kAdditiveLogit };

class Ensemble {
 public:
  // Validates cross-references: feature ids and category codes against the
  // schema (RangeError), leaf payloads against the aggregation (SchemaError).
  Ensemble(Aggregation aggregation, int n_classes, FeatureSchema schema,
           double base_score, std::vector<Tree> trees);

  Aggregation aggregation() const { return aggregation_; }
  int n_classes() const { return n_classes_; }
  const FeatureSchema& schema() const { return schema_; }
  std::size_t num_features() const { return schema_.size(); }
  double base_score() const { return base_score_; }
  std::span<const Tree> trees() const { return trees_; }

  // Throws FeatureMismatch on wrong arity, non-finite values or category
  // codes outside the dictionary.
  void ValidateInstance(std::span<const double> instance) const;

  // Per-class vote tally; each tree votes the argmax of its leaf counts.
  // Majority-vote ensembles only.
  std::vector<int> Votes(std::span<const double> instance) const;

  // base_score + sum of leaf values. Additive ensembles only.
  double Margin(std::span<const double> instance) const;

  int Predict(std::span<const double> instance) const;

 private:
  Aggregation aggregation_;
  int n_classes_;
  FeatureSchema schema_;
  double base_score_;
  std::vector<Tree> trees_;
};

// Index of the largest count; the lowest index wins ties.
int ArgMax(std::span<const std::int64_t> counts);
int ArgMax(std::span<const int> counts);

// Canonical ensemble JSON.
Ensemble ParseEnsembleJson(std::string_view document);
std::string EnsembleToJson(const Ensemble& ensemble);

// LightGBM text model dump (binary objective). Leaf values are taken as
// already shrunk; the result is an additive_logit ensemble.
Ensemble ParseLightGbmModel(std::string_view text);

// Dispatches on content: '{' selects the JSON reader, "tree" the LightGBM one.
Ensemble ParseEnsemble(std::string_view document);
Ensemble LoadEnsembleFile(const std::string& path);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace rulesift

#endif  // RULESIFT_ENSEMBLE_H_
