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

#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "rulesift/error.h"

namespace rulesift {
namespace {

// x0 <= 1.5 ? (x1 in {a} ? leaf 3 : leaf 4) : leaf 2
constexpr char kVoteModel[] = R"({
  "n_classes": 2,
  "aggregation": "majority_vote",
  "features": [
    {"name": "x0", "kind": "continuous"},
    {"name": "x1", "kind": "categorical", "categories": ["a", "b", "c"]}
  ],
  "trees": [
    {"tree_id": 0, "root": 0, "nodes": [
      {"id": 0, "kind": "internal", "feature": 0, "op": "le", "threshold": 1.5,
       "left": 1, "right": 2},
      {"id": 1, "kind": "internal", "feature": 1, "op": "in", "set": [0],
       "left": 3, "right": 4},
      {"id": 2, "kind": "leaf", "class_counts": [1, 9]},
      {"id": 3, "kind": "leaf", "class_counts": [7, 2]},
      {"id": 4, "kind": "leaf", "class_counts": [3, 3]}
    ]},
    {"tree_id": 1, "root": 5, "nodes": [
      {"id": 5, "kind": "leaf", "class_counts": [0, 4]}
    ]}
  ]
})";

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kIo;
}

std::string Replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return s.replace(pos, from.size(), to);
}

TEST(EnsembleTest, ParsesCanonicalJson) {
  const Ensemble e = ParseEnsembleJson(kVoteModel);
  ASSERT_EQ(e.trees().size(), 2u);
  EXPECT_EQ(e.aggregation(), Aggregation::kMajorityVote);
  const Tree& t = e.trees()[0];
  EXPECT_EQ(t.node_count(), 5);
  EXPECT_EQ(t.leaf_count(), 3);
  EXPECT_EQ(t.depth(), 2);
  EXPECT_EQ(t.preorder(), (std::vector<int>{0, 1, 3, 4, 2}));
  EXPECT_EQ(e.schema()[1].CategoryCode("c"), 2);
}

TEST(EnsembleTest, MajorityVoteCountsTreeArgmaxAndBreaksTiesLow) {
  const Ensemble e = ParseEnsembleJson(kVoteModel);
  // Leaf 3 votes 0, the stump votes 1: tie goes to class 0.
  EXPECT_EQ(e.Votes(std::vector<double>{1.0, 0}), (std::vector<int>{1, 1}));
  EXPECT_EQ(e.Predict(std::vector<double>{1.0, 0}), 0);
  // Leaf 4 has tied counts and votes 0.
  EXPECT_EQ(e.Votes(std::vector<double>{1.0, 2}), (std::vector<int>{1, 1}));
  EXPECT_EQ(e.Predict(std::vector<double>{2.0, 0}), 1);
}

TEST(EnsembleTest, RejectsMalformedDocuments) {
  const std::string ok = kVoteModel;
  EXPECT_EQ(CodeOf([&] { ParseEnsembleJson(Replace(ok, "\"n_classes\": 2,", "")); }),
            ErrorCode::kSchema);
  EXPECT_EQ(CodeOf([&] {
              ParseEnsembleJson(Replace(ok, "\"n_classes\": 2,", "\"n_classes\": 2, \"extra\": 1,"));
            }),
            ErrorCode::kSchema);
  EXPECT_EQ(CodeOf([&] { ParseEnsembleJson(Replace(ok, "\"left\": 3", "\"left\": 9")); }),
            ErrorCode::kStructure);
  EXPECT_EQ(CodeOf([&] { ParseEnsembleJson(Replace(ok, "\"left\": 3", "\"left\": 0")); }),
            ErrorCode::kStructure);
  EXPECT_EQ(CodeOf([&] { ParseEnsembleJson(Replace(ok, "\"left\": 3", "\"left\": 4")); }),
            ErrorCode::kStructure);
  EXPECT_EQ(CodeOf([&] { ParseEnsembleJson(Replace(ok, "\"feature\": 0", "\"feature\": 5")); }),
            ErrorCode::kRange);
  EXPECT_EQ(CodeOf([&] { ParseEnsembleJson(Replace(ok, "\"set\": [0]", "\"set\": [3]")); }),
            ErrorCode::kRange);
  EXPECT_EQ(CodeOf([&] {
              ParseEnsembleJson(Replace(ok, "\"class_counts\": [1, 9]", "\"leaf_value\": 1"));
            }),
            ErrorCode::kSchema);
  EXPECT_EQ(CodeOf([&] { ParseEnsembleJson("{"); }), ErrorCode::kSchema);
}

TEST(EnsembleTest, ValidatesInstances) {
  const Ensemble e = ParseEnsembleJson(kVoteModel);
  EXPECT_EQ(CodeOf([&] { e.Predict(std::vector<double>{1.0}); }),
            ErrorCode::kFeatureMismatch);
  EXPECT_EQ(CodeOf([&] { e.Predict(std::vector<double>{NAN, 0}); }),
            ErrorCode::kFeatureMismatch);
  EXPECT_EQ(CodeOf([&] { e.Predict(std::vector<double>{1.0, 3}); }),
            ErrorCode::kFeatureMismatch);
}

TEST(EnsembleTest, JsonRoundTripPreservesPredictions) {
  const Ensemble e = ParseEnsembleJson(kVoteModel);
  const Ensemble again = ParseEnsembleJson(EnsembleToJson(e));
  EXPECT_EQ(EnsembleToJson(again), EnsembleToJson(e));
  for (double x0 : {0.0, 1.5, 1.6, 3.0}) {
    for (double x1 : {0.0, 1.0, 2.0}) {
      const std::vector<double> row = {x0, x1};
      EXPECT_EQ(e.Predict(row), again.Predict(row));
    }
  }
}

constexpr char kAdditiveModel[] = R"({
  "n_classes": 2, "aggregation": "additive_logit", "base_score": -0.25,
  "features": [{"name": "x0", "kind": "continuous"}],
  "trees": [{"tree_id": 0, "root": 0, "nodes": [
    {"id": 0, "kind": "internal", "feature": 0, "op": "le", "threshold": 0.5,
     "left": 1, "right": 2},
    {"id": 1, "kind": "leaf", "leaf_value": -0.5},
    {"id": 2, "kind": "leaf", "leaf_value": 0.25}]}]
})";

TEST(EnsembleTest, AdditiveLogitThresholdsAtHalf) {
  const Ensemble e = ParseEnsembleJson(kAdditiveModel);
  EXPECT_DOUBLE_EQ(e.Margin(std::vector<double>{0.0}), -0.75);
  EXPECT_EQ(e.Predict(std::vector<double>{0.0}), 0);
  // Margin exactly 0 is probability 0.5, which counts as class 1.
  EXPECT_DOUBLE_EQ(e.Margin(std::vector<double>{1.0}), 0.0);
  EXPECT_EQ(e.Predict(std::vector<double>{1.0}), 1);
}

constexpr char kLightGbm[] =
    "tree\n"
    "version=v4\n"
    "num_class=1\n"
    "num_tree_per_iteration=1\n"
    "label_index=0\n"
    "max_feature_idx=1\n"
    "objective=binary sigmoid:1\n"
    "feature_names=age colour\n"
    "feature_infos=[18:90] 0:2:5\n"
    "\n"
    "Tree=0\n"
    "num_leaves=3\n"
    "num_cat=1\n"
    "split_feature=0 1\n"
    "threshold=40.5 0\n"
    "decision_type=2 1\n"
    "left_child=-1 -2\n"
    "right_child=1 -3\n"
    "leaf_value=-0.4 0.3 0.9\n"
    "cat_boundaries=0 1\n"
    "cat_threshold=36\n"
    "shrinkage=1\n"
    "\n"
    "Tree=1\n"
    "num_leaves=1\n"
    "leaf_value=0.1\n"
    "\n"
    "end of trees\n";

TEST(EnsembleTest, ReadsLightGbmTextDump) {
  const Ensemble e = ParseEnsemble(kLightGbm);
  EXPECT_EQ(e.aggregation(), Aggregation::kAdditiveLogit);
  ASSERT_EQ(e.schema().size(), 2u);
  EXPECT_EQ(e.schema()[1].kind, FeatureKind::kCategorical);
  EXPECT_EQ(e.schema()[1].categories, (std::vector<std::string>{"0", "2", "5"}));
  const Node& cat_split = e.trees()[0].node(1);
  // Bitset 36 = bits 2 and 5 set: raw codes 2 and 5, dictionary codes 1 and 2.
  EXPECT_EQ(cat_split.condition.op, SplitOp::kInSet);
  EXPECT_EQ(cat_split.condition.categories, (std::vector<int>{1, 2}));
  // Hand-traced margins.
  EXPECT_DOUBLE_EQ(e.Margin(std::vector<double>{30, 0}), -0.4 + 0.1);
  EXPECT_DOUBLE_EQ(e.Margin(std::vector<double>{50, 1}), 0.3 + 0.1);
  EXPECT_DOUBLE_EQ(e.Margin(std::vector<double>{50, 0}), 0.9 + 0.1);
  EXPECT_EQ(e.Predict(std::vector<double>{30, 0}), 0);
  EXPECT_EQ(e.Predict(std::vector<double>{50, 0}), 1);
}

TEST(EnsembleTest, RejectsUnsupportedLightGbmModels) {
  std::string multi = kLightGbm;
  multi = Replace(multi, "num_class=1", "num_class=3");
  EXPECT_EQ(CodeOf([&] { ParseEnsemble(multi); }), ErrorCode::kSchema);
  std::string zero_missing = kLightGbm;
  zero_missing = Replace(zero_missing, "decision_type=2 1", "decision_type=6 1");
  EXPECT_EQ(CodeOf([&] { ParseEnsemble(zero_missing); }), ErrorCode::kSchema);
  EXPECT_EQ(CodeOf([&] { ParseEnsemble("garbage"); }), ErrorCode::kSchema);
}

TEST(EnsembleTest, NegatedConditionIsComplement) {
  const SplitCondition le{0, SplitOp::kLe, 2.0, {}};
  const SplitCondition in{1, SplitOp::kInSet, 0, {0, 2}};
  for (double x0 : {1.0, 2.0, 3.0}) {
    for (double x1 : {0.0, 1.0, 2.0}) {
      const std::vector<double> row = {x0, x1};
      EXPECT_NE(le.Evaluate(row), le.Negated().Evaluate(row));
      EXPECT_NE(in.Evaluate(row), in.Negated().Evaluate(row));
    }
  }
  EXPECT_EQ(le.Negated().op, SplitOp::kGt);
  EXPECT_EQ(in.Negated().op, SplitOp::kNotInSet);
}

}  // namespace
}  // namespace rulesift
