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

#include "rulesift/ensemble.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rulesift/error.h"

namespace rulesift {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace

int FeatureSpec::CategoryCode(std::string_view label) const {
  for (std::size_t i = 0; i < categories.size(); ++i) {
    if (categories[i] == label) return static_cast<int>(i);
  }
  return -1;
}

std::string_view SplitOpName(SplitOp op) {
  switch (op) {
    case SplitOp::kLe: return "le";
    case SplitOp::kGt: return "gt";
    case SplitOp::kInSet: return "in";
    case SplitOp::kNotInSet: return "not_in";
  }
  return "?";
}

bool SplitCondition::Evaluate(std::span<const double> instance) const {
  const double value = instance[feature];
  switch (op) {
    case SplitOp::kLe: return value <= threshold;
    case SplitOp::kGt: return value > threshold;
    case SplitOp::kInSet:
    case SplitOp::kNotInSet: {
      const bool member = std::binary_search(
          categories.begin(), categories.end(), static_cast<int>(value));
      return (op == SplitOp::kInSet) == member;
    }
  }
  return false;
}

SplitCondition SplitCondition::Negated() const {
  SplitCondition negated = *this;
  switch (op) {
    case SplitOp::kLe: negated.op = SplitOp::kGt; break;
    case SplitOp::kGt: negated.op = SplitOp::kLe; break;
    case SplitOp::kInSet: negated.op = SplitOp::kNotInSet; break;
    case SplitOp::kNotInSet: negated.op = SplitOp::kInSet; break;
  }
  return negated;
}

bool SplitCondition::operator==(const SplitCondition& other) const {
  if (feature != other.feature || op != other.op) return false;
  if (IsCategorical()) return categories == other.categories;
  return std::bit_cast<std::uint64_t>(threshold) ==
         std::bit_cast<std::uint64_t>(other.threshold);
}

int ArgMax(std::span<const std::int64_t> counts) {
  int best = 0;
  for (std::size_t i = 1; i < counts.size(); ++i) {
    if (counts[i] > counts[best]) best = static_cast<int>(i);
  }
  return best;
}

int ArgMax(std::span<const int> counts) {
  int best = 0;
  for (std::size_t i = 1; i < counts.size(); ++i) {
    if (counts[i] > counts[best]) best = static_cast<int>(i);
  }
  return best;
}

// --- Tree -------------------------------------------------------------------

Tree::Tree(int tree_id, int root_id, std::vector<Node> nodes)
    : tree_id_(tree_id), root_id_(root_id), nodes_(std::move(nodes)) {
  const std::string where = "tree " + std::to_string(tree_id_);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!index_.emplace(nodes_[i].id, i).second) {
      Fail(ErrorCode::kStructure,
           where + ": duplicate node id " + std::to_string(nodes_[i].id));
    }
  }
  if (!index_.contains(root_id_)) {
    Fail(ErrorCode::kStructure,
         where + ": root " + std::to_string(root_id_) + " not found");
  }
  for (const Node& n : nodes_) {
    if (n.is_leaf()) {
      if (n.left != -1 || n.right != -1) {
        Fail(ErrorCode::kStructure, where + ": leaf " + std::to_string(n.id) +
                                        " has children");
      }
      continue;
    }
    for (int child : {n.left, n.right}) {
      if (!index_.contains(child)) {
        Fail(ErrorCode::kStructure, where + ": node " + std::to_string(n.id) +
                                        " references missing child " +
                                        std::to_string(child));
      }
    }
  }

  // Iterative preorder walk; a node seen twice means a cycle or a shared
  // subtree, either of which breaks the tree property.
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<std::pair<int, int>> stack = {{root_id_, 0}};
  while (!stack.empty()) {
    const auto [id, depth] = stack.back();
    stack.pop_back();
    const std::size_t pos = index_.at(id);
    if (seen[pos]) {
      Fail(ErrorCode::kStructure, where + ": node " + std::to_string(id) +
                                      " reached twice (cycle or shared child)");
    }
    seen[pos] = 1;
    preorder_.push_back(id);
    depth_ = std::max(depth_, depth);
    const Node& n = nodes_[pos];
    if (n.is_leaf()) {
      ++leaf_count_;
    } else {
      stack.emplace_back(n.right, depth + 1);
      stack.emplace_back(n.left, depth + 1);
    }
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!seen[i]) {
      Fail(ErrorCode::kStructure, where + ": orphan node " +
                                      std::to_string(nodes_[i].id));
    }
  }
}

const Node& Tree::node(int node_id) const {
  return nodes_[index_.at(node_id)];
}

const Node& Tree::Route(std::span<const double> instance) const {
  const Node* current = &root();
  while (!current->is_leaf()) {
    current = &node(current->condition.Evaluate(instance) ? current->left
                                                          : current->right);
  }
  return *current;
}

// --- Ensemble ---------------------------------------------------------------

Ensemble::Ensemble(Aggregation aggregation, int n_classes, FeatureSchema schema,
                   double base_score, std::vector<Tree> trees)
    : aggregation_(aggregation),
      n_classes_(n_classes),
      schema_(std::move(schema)),
      base_score_(base_score),
      trees_(std::move(trees)) {
  if (n_classes_ < 2) Fail(ErrorCode::kSchema, "n_classes must be >= 2");
  if (trees_.empty()) Fail(ErrorCode::kSchema, "ensemble has no trees");
  if (aggregation_ == Aggregation::kAdditiveLogit && n_classes_ != 2) {
    Fail(ErrorCode::kSchema,
         "additive_logit aggregation supports binary classification only");
  }
  for (const FeatureSpec& f : schema_) {
    if (f.kind == FeatureKind::kCategorical && f.categories.empty()) {
      Fail(ErrorCode::kSchema,
           "categorical feature '" + f.name + "' has no categories");
    }
  }
  for (const Tree& tree : trees_) {
    for (const Node& n : tree.nodes()) {
      const std::string where = "tree " + std::to_string(tree.id()) +
                                " node " + std::to_string(n.id);
      if (n.is_leaf()) {
        if (aggregation_ == Aggregation::kMajorityVote) {
          if (n.class_counts.size() != static_cast<std::size_t>(n_classes_)) {
            Fail(ErrorCode::kSchema,
                 where + ": class_counts must have n_classes entries");
          }
        } else if (!n.leaf_value.has_value()) {
          Fail(ErrorCode::kSchema, where + ": leaf_value required");
        }
        for (std::int64_t c : n.class_counts) {
          if (c < 0) Fail(ErrorCode::kSchema, where + ": negative class count");
        }
        continue;
      }
      const SplitCondition& cond = n.condition;
      if (cond.feature < 0 ||
          static_cast<std::size_t>(cond.feature) >= schema_.size()) {
        Fail(ErrorCode::kRange, where + ": feature id " +
                                    std::to_string(cond.feature) +
                                    " out of range");
      }
      const FeatureSpec& spec = schema_[cond.feature];
      if (cond.IsCategorical()) {
        if (spec.kind != FeatureKind::kCategorical) {
          Fail(ErrorCode::kSchema,
               where + ": set split on continuous feature '" + spec.name + "'");
        }
        for (int code : cond.categories) {
          if (code < 0 || static_cast<std::size_t>(code) >=
                              spec.categories.size()) {
            Fail(ErrorCode::kRange, where + ": category code " +
                                        std::to_string(code) + " out of range");
          }
        }
      } else if (!std::isfinite(cond.threshold)) {
        Fail(ErrorCode::kSchema, where + ": non-finite threshold");
      }
    }
  }
}

void Ensemble::ValidateInstance(std::span<const double> instance) const {
  if (instance.size() != schema_.size()) {
    Fail(ErrorCode::kFeatureMismatch,
         "instance has " + std::to_string(instance.size()) +
             " values, schema has " + std::to_string(schema_.size()));
  }
  for (std::size_t f = 0; f < instance.size(); ++f) {
    const double v = instance[f];
    if (!std::isfinite(v)) {
      Fail(ErrorCode::kFeatureMismatch,
           "missing or non-finite value for '" + schema_[f].name + "'");
    }
    if (schema_[f].kind == FeatureKind::kCategorical &&
        (v < 0 || v != std::floor(v) ||
         v >= static_cast<double>(schema_[f].categories.size()))) {
      Fail(ErrorCode::kFeatureMismatch,
           "unknown category code for '" + schema_[f].name + "'");
    }
  }
}

std::vector<int> Ensemble::Votes(std::span<const double> instance) const {
  std::vector<int> votes(n_classes_, 0);
  for (const Tree& tree : trees_) {
    ++votes[ArgMax(tree.Route(instance).class_counts)];
  }
  return votes;
}

double Ensemble::Margin(std::span<const double> instance) const {
  double margin = base_score_;
  for (const Tree& tree : trees_) margin += *tree.Route(instance).leaf_value;
  return margin;
}

int Ensemble::Predict(std::span<const double> instance) const {
  ValidateInstance(instance);
  if (aggregation_ == Aggregation::kMajorityVote) {
    return ArgMax(Votes(instance));
  }
  const double probability = 1.0 / (1.0 + std::exp(-Margin(instance)));
  return probability >= 0.5 ? 1 : 0;
}

// --- Canonical JSON ---------------------------------------------------------

namespace {

void CheckKeys(const json& object, std::initializer_list<std::string_view> allowed,
               const std::string& where) {
  if (!object.is_object()) Fail(ErrorCode::kSchema, where + ": expected object");
  for (const auto& [key, value] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      Fail(ErrorCode::kSchema, where + ": unexpected field '" + key + "'");
    }
  }
}

const json& Require(const json& object, const char* key,
                    const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) {
    Fail(ErrorCode::kSchema, where + ": missing field '" + key + "'");
  }
  return *it;
}

template <typename T>
T As(const json& value, const std::string& where, const char* key) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    Fail(ErrorCode::kSchema, where + ": field '" + key + "' has wrong type");
  }
}

int AsInt(const json& value, const std::string& where, const char* key) {
  if (!value.is_number_integer()) {
    Fail(ErrorCode::kSchema, where + ": field '" + key + "' must be an integer");
  }
  return value.get<int>();
}

SplitOp ParseOp(const std::string& op, const std::string& where) {
  if (op == "le") return SplitOp::kLe;
  if (op == "gt") return SplitOp::kGt;
  if (op == "in") return SplitOp::kInSet;
  if (op == "not_in") return SplitOp::kNotInSet;
  Fail(ErrorCode::kSchema, where + ": unknown op '" + op + "'");
}

Node ParseNode(const json& j, const std::string& tree_where) {
  CheckKeys(j,
            {"id", "kind", "feature", "op", "threshold", "set", "left",
             "right", "class_counts", "leaf_value"},
            tree_where);
  Node node;
  node.id = AsInt(Require(j, "id", tree_where), tree_where, "id");
  const std::string where = tree_where + " node " + std::to_string(node.id);
  const auto kind = As<std::string>(Require(j, "kind", where), where, "kind");
  if (kind == "leaf") {
    node.kind = NodeKind::kLeaf;
    for (const char* key : {"feature", "op", "threshold", "set", "left", "right"}) {
      if (j.contains(key)) {
        Fail(ErrorCode::kSchema,
             where + ": leaf must not carry '" + key + "'");
      }
    }
  } else if (kind == "internal") {
    node.kind = NodeKind::kInternal;
    node.condition.feature = AsInt(Require(j, "feature", where), where, "feature");
    node.condition.op =
        ParseOp(As<std::string>(Require(j, "op", where), where, "op"), where);
    node.left = AsInt(Require(j, "left", where), where, "left");
    node.right = AsInt(Require(j, "right", where), where, "right");
    if (node.condition.IsCategorical()) {
      if (j.contains("threshold")) {
        Fail(ErrorCode::kSchema, where + ": set split must not carry threshold");
      }
      auto codes = As<std::vector<int>>(Require(j, "set", where), where, "set");
      std::sort(codes.begin(), codes.end());
      codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
      node.condition.categories = std::move(codes);
    } else {
      if (j.contains("set")) {
        Fail(ErrorCode::kSchema, where + ": threshold split must not carry set");
      }
      const json& t = Require(j, "threshold", where);
      if (!t.is_number()) {
        Fail(ErrorCode::kSchema, where + ": threshold must be a number");
      }
      node.condition.threshold = t.get<double>();
    }
  } else {
    Fail(ErrorCode::kSchema, where + ": unknown node kind '" + kind + "'");
  }
  if (auto it = j.find("class_counts"); it != j.end()) {
    node.class_counts = As<std::vector<std::int64_t>>(*it, where, "class_counts");
  }
  if (auto it = j.find("leaf_value"); it != j.end()) {
    if (!it->is_number()) {
      Fail(ErrorCode::kSchema, where + ": leaf_value must be a number");
    }
    node.leaf_value = it->get<double>();
  }
  return node;
}

}  // namespace

Ensemble ParseEnsembleJson(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    Fail(ErrorCode::kSchema, std::string("malformed JSON: ") + e.what());
  }
  const std::string where = "ensemble";
  CheckKeys(doc, {"n_classes", "aggregation", "base_score", "features", "trees"},
            where);
  const int n_classes = AsInt(Require(doc, "n_classes", where), where, "n_classes");
  const auto agg_name =
      As<std::string>(Require(doc, "aggregation", where), where, "aggregation");
  Aggregation aggregation;
  if (agg_name == "majority_vote") {
    aggregation = Aggregation::kMajorityVote;
  } else if (agg_name == "additive_logit") {
    aggregation = Aggregation::kAdditiveLogit;
  } else {
    Fail(ErrorCode::kSchema, "unsupported aggregation '" + agg_name + "'");
  }
  double base_score = 0.0;
  if (auto it = doc.find("base_score"); it != doc.end() && !it->is_null()) {
    if (!it->is_number()) Fail(ErrorCode::kSchema, "base_score must be a number");
    base_score = it->get<double>();
  } else if (aggregation == Aggregation::kAdditiveLogit) {
    Fail(ErrorCode::kSchema, "additive_logit requires base_score");
  }

  FeatureSchema schema;
  const json& features = Require(doc, "features", where);
  if (!features.is_array()) Fail(ErrorCode::kSchema, "features must be an array");
  for (const json& f : features) {
    CheckKeys(f, {"name", "kind", "categories"}, "feature");
    FeatureSpec spec;
    spec.name = As<std::string>(Require(f, "name", "feature"), "feature", "name");
    const std::string fw = "feature '" + spec.name + "'";
    const auto kind = As<std::string>(Require(f, "kind", fw), fw, "kind");
    if (kind == "continuous") {
      spec.kind = FeatureKind::kContinuous;
      if (f.contains("categories")) {
        Fail(ErrorCode::kSchema, fw + ": continuous feature with categories");
      }
    } else if (kind == "categorical") {
      spec.kind = FeatureKind::kCategorical;
      spec.categories = As<std::vector<std::string>>(
          Require(f, "categories", fw), fw, "categories");
    } else {
      Fail(ErrorCode::kSchema, fw + ": unknown kind '" + kind + "'");
    }
    schema.push_back(std::move(spec));
  }

  std::vector<Tree> trees;
  const json& tree_docs = Require(doc, "trees", where);
  if (!tree_docs.is_array()) Fail(ErrorCode::kSchema, "trees must be an array");
  for (const json& t : tree_docs) {
    CheckKeys(t, {"tree_id", "root", "nodes"}, "tree");
    const int tree_id = AsInt(Require(t, "tree_id", "tree"), "tree", "tree_id");
    const std::string tw = "tree " + std::to_string(tree_id);
    const int root = AsInt(Require(t, "root", tw), tw, "root");
    const json& node_docs = Require(t, "nodes", tw);
    if (!node_docs.is_array()) Fail(ErrorCode::kSchema, tw + ": nodes must be an array");
    std::vector<Node> nodes;
    nodes.reserve(node_docs.size());
    for (const json& n : node_docs) nodes.push_back(ParseNode(n, tw));
    trees.emplace_back(tree_id, root, std::move(nodes));
  }
  return Ensemble(aggregation, n_classes, std::move(schema), base_score,
                  std::move(trees));
}

std::string EnsembleToJson(const Ensemble& ensemble) {
  json doc;
  doc["n_classes"] = ensemble.n_classes();
  doc["aggregation"] = ensemble.aggregation() == Aggregation::kMajorityVote
                           ? "majority_vote"
                           : "additive_logit";
  doc["base_score"] = ensemble.base_score();
  json features = json::array();
  for (const FeatureSpec& f : ensemble.schema()) {
    json jf = {{"name", f.name}};
    if (f.kind == FeatureKind::kCategorical) {
      jf["kind"] = "categorical";
      jf["categories"] = f.categories;
    } else {
      jf["kind"] = "continuous";
    }
    features.push_back(std::move(jf));
  }
  doc["features"] = std::move(features);
  json trees = json::array();
  for (const Tree& tree : ensemble.trees()) {
    json nodes = json::array();
    for (const Node& n : tree.nodes()) {
      json jn = {{"id", n.id}};
      if (n.is_leaf()) {
        jn["kind"] = "leaf";
      } else {
        jn["kind"] = "internal";
        jn["feature"] = n.condition.feature;
        jn["op"] = SplitOpName(n.condition.op);
        if (n.condition.IsCategorical()) {
          jn["set"] = n.condition.categories;
        } else {
          jn["threshold"] = n.condition.threshold;
        }
        jn["left"] = n.left;
        jn["right"] = n.right;
      }
      if (!n.class_counts.empty()) jn["class_counts"] = n.class_counts;
      if (n.leaf_value) jn["leaf_value"] = *n.leaf_value;
      nodes.push_back(std::move(jn));
    }
    trees.push_back(
        {{"tree_id", tree.id()}, {"root", tree.root_id()}, {"nodes", nodes}});
  }
  doc["trees"] = std::move(trees);
  return doc.dump(2) + "\n";
}

// --- LightGBM text dump -----------------------------------------------------

namespace {

std::vector<std::string_view> SplitWs(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t') ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T ParseNumber(std::string_view token, const std::string& where) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    Fail(ErrorCode::kSchema,
         where + ": bad number '" + std::string(token) + "'");
  }
  return value;
}

template <typename T>
std::vector<T> ParseList(const std::unordered_map<std::string, std::string>& kv,
                         const std::string& key, const std::string& where) {
  auto it = kv.find(key);
  if (it == kv.end()) Fail(ErrorCode::kSchema, where + ": missing '" + key + "'");
  std::vector<T> out;
  for (std::string_view tok : SplitWs(it->second)) {
    out.push_back(ParseNumber<T>(tok, where + " " + key));
  }
  return out;
}

// Parses "key=value" lines of one block into a map.
std::unordered_map<std::string, std::string> ParseBlock(
    const std::vector<std::string_view>& lines) {
  std::unordered_map<std::string, std::string> kv;
  for (std::string_view line : lines) {
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) continue;
    kv.emplace(std::string(line.substr(0, eq)), std::string(line.substr(eq + 1)));
  }
  return kv;
}

}  // namespace

Ensemble ParseLightGbmModel(std::string_view text) {
  // Blocks are separated by blank lines: header, one block per tree, trailer.
  std::vector<std::vector<std::string_view>> blocks(1);
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      if (!blocks.back().empty()) blocks.emplace_back();
    } else {
      blocks.back().push_back(line);
    }
    pos = end + 1;
  }
  if (blocks.front().empty() || blocks.front().front() != "tree") {
    Fail(ErrorCode::kSchema, "not a LightGBM text model");
  }
  const auto header = ParseBlock(blocks.front());
  auto header_value = [&](const std::string& key) -> const std::string& {
    auto it = header.find(key);
    if (it == header.end()) Fail(ErrorCode::kSchema, "lightgbm: missing '" + key + "'");
    return it->second;
  };
  if (header_value("num_class") != "1" ||
      header_value("objective").rfind("binary", 0) != 0) {
    Fail(ErrorCode::kSchema, "lightgbm: only binary objectives are supported");
  }
  const auto names = SplitWs(header_value("feature_names"));
  const auto infos = SplitWs(header_value("feature_infos"));
  if (names.size() != infos.size()) {
    Fail(ErrorCode::kSchema, "lightgbm: feature_names / feature_infos mismatch");
  }

  // Categorical features list their observed raw codes ("a:b:c"); numerical
  // ones give a range "[min:max]" or "none".
  FeatureSchema schema;
  std::vector<std::vector<int>> raw_codes(names.size());
  for (std::size_t f = 0; f < names.size(); ++f) {
    FeatureSpec spec;
    spec.name = std::string(names[f]);
    const std::string_view info = infos[f];
    if (!info.empty() && info.front() != '[' && info != "none") {
      spec.kind = FeatureKind::kCategorical;
      std::size_t p = 0;
      while (p <= info.size()) {
        std::size_t q = info.find(':', p);
        if (q == std::string_view::npos) q = info.size();
        raw_codes[f].push_back(ParseNumber<int>(info.substr(p, q - p), "feature_infos"));
        p = q + 1;
      }
      std::sort(raw_codes[f].begin(), raw_codes[f].end());
      for (int code : raw_codes[f]) spec.categories.push_back(std::to_string(code));
    }
    schema.push_back(std::move(spec));
  }

  std::vector<Tree> trees;
  for (std::size_t b = 1; b < blocks.size(); ++b) {
    if (blocks[b].empty() || blocks[b].front().rfind("Tree=", 0) != 0) continue;
    const auto kv = ParseBlock(blocks[b]);
    const int tree_id = ParseNumber<int>(kv.at("Tree"), "Tree");
    const std::string where = "lightgbm tree " + std::to_string(tree_id);
    const auto leaf_values = ParseList<double>(kv, "leaf_value", where);
    const int num_leaves = ParseNumber<int>(kv.at("num_leaves"), where);
    if (static_cast<int>(leaf_values.size()) != num_leaves) {
      Fail(ErrorCode::kSchema, where + ": leaf_value count mismatch");
    }
    const int num_internal = num_leaves - 1;
    std::vector<Node> nodes;
    auto leaf_node = [&](int leaf) {
      Node n;
      n.id = num_internal + leaf;
      n.kind = NodeKind::kLeaf;
      n.leaf_value = leaf_values[leaf];
      return n;
    };
    if (num_leaves == 1) {
      nodes.push_back(leaf_node(0));
      trees.emplace_back(tree_id, 0, std::move(nodes));
      continue;
    }
    const auto split_feature = ParseList<int>(kv, "split_feature", where);
    const auto threshold = ParseList<double>(kv, "threshold", where);
    const auto decision_type = ParseList<int>(kv, "decision_type", where);
    const auto left = ParseList<int>(kv, "left_child", where);
    const auto right = ParseList<int>(kv, "right_child", where);
    std::vector<int> cat_boundaries;
    std::vector<std::uint32_t> cat_threshold;
    if (kv.contains("cat_boundaries")) {
      cat_boundaries = ParseList<int>(kv, "cat_boundaries", where);
      cat_threshold = ParseList<std::uint32_t>(kv, "cat_threshold", where);
    }
    for (const auto* list : {&split_feature, &decision_type, &left, &right}) {
      if (static_cast<int>(list->size()) != num_internal) {
        Fail(ErrorCode::kSchema, where + ": split array length mismatch");
      }
    }
    // Negative child -k refers to leaf k - 1.
    auto child_id = [num_internal](int child) {
      return child >= 0 ? child : num_internal + (~child);
    };
    for (int i = 0; i < num_internal; ++i) {
      Node n;
      n.id = i;
      n.kind = NodeKind::kInternal;
      n.left = child_id(left[i]);
      n.right = child_id(right[i]);
      const int f = split_feature[i];
      if (f < 0 || static_cast<std::size_t>(f) >= schema.size()) {
        Fail(ErrorCode::kRange, where + ": split feature out of range");
      }
      n.condition.feature = f;
      const int type = decision_type[i];
      const int missing_type = (type >> 2) & 3;
      if (type & 1) {
        const int idx = static_cast<int>(threshold[i]);
        if (idx < 0 || idx + 1 >= static_cast<int>(cat_boundaries.size())) {
          Fail(ErrorCode::kSchema, where + ": bad categorical threshold index");
        }
        n.condition.op = SplitOp::kInSet;
        for (std::size_t code = 0; code < raw_codes[f].size(); ++code) {
          const int raw = raw_codes[f][code];
          const int word = cat_boundaries[idx] + raw / 32;
          if (raw >= 0 && word < cat_boundaries[idx + 1] &&
              ((cat_threshold[word] >> (raw % 32)) & 1u)) {
            n.condition.categories.push_back(static_cast<int>(code));
          }
        }
      } else {
        // Zero-as-missing would route real zeros along the default branch.
        if (missing_type == 1) {
          Fail(ErrorCode::kSchema,
               where + ": zero-as-missing splits are not supported");
        }
        n.condition.op = SplitOp::kLe;
        n.condition.threshold = threshold[i];
      }
      nodes.push_back(std::move(n));
    }
    for (int leaf = 0; leaf < num_leaves; ++leaf) nodes.push_back(leaf_node(leaf));
    trees.emplace_back(tree_id, 0, std::move(nodes));
  }
  return Ensemble(Aggregation::kAdditiveLogit, 2, std::move(schema), 0.0,
                  std::move(trees));
}

Ensemble ParseEnsemble(std::string_view document) {
  const auto first = document.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && document[first] == '{') {
    return ParseEnsembleJson(document);
  }
  if (document.substr(first == std::string_view::npos ? 0 : first, 4) == "tree") {
    return ParseLightGbmModel(document.substr(first));
  }
  Fail(ErrorCode::kSchema, "unrecognized model format");
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorCode::kIo, "cannot write '" + path + "'");
  out << contents;
  if (!out) Fail(ErrorCode::kIo, "write failed for '" + path + "'");
}

Ensemble LoadEnsembleFile(const std::string& path) {
  return ParseEnsemble(ReadFile(path));
}

}  // namespace rulesift
