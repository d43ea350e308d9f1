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


#include "rulesift/harness.h"

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "rulesift/error.h"
#include "rulesift/report.h"
#include "support/oracles.h"

namespace rulesift {
namespace {

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIo;
}

const std::string kFixtures = RULESIFT_FIXTURE_DIR;

TEST(ManifestTest, ResolvesPathsAgainstBaseDir) {
  const Manifest m = ParseManifest(
      R"({"dataset": "d.csv", "label": "y", "folds": [{"model": "a.json"},
          {"model": "/abs/b.json"}], "k": 2, "seed": 9, "config": "c.toml"})",
      "/base");
  EXPECT_EQ(m.dataset, "/base/d.csv");
  EXPECT_EQ(m.label, "y");
  EXPECT_EQ(m.models, (std::vector<std::string>{"/base/a.json", "/abs/b.json"}));
  EXPECT_EQ(m.k, 2);
  EXPECT_EQ(m.seed, 9u);
  EXPECT_EQ(m.config, "/base/c.toml");
}

TEST(ManifestTest, RejectsMalformedDocuments) {
  EXPECT_EQ(CodeOf([] { ParseManifest("{", "/"); }), ErrorCode::kSchema);
  EXPECT_EQ(CodeOf([] {
              ParseManifest(R"({"dataset": "d", "label": "y", "folds": [], "k": 2,
                                "seed": 1, "colour": "red"})",
                            "/");
            }),
            ErrorCode::kSchema);
  EXPECT_EQ(CodeOf([] {
              ParseManifest(R"({"dataset": "d", "label": "y",
                                "folds": [{"model": "a"}, {"model": "b"}, {"model": "c"}],
                                "k": 2, "seed": 1})",
                            "/");
            }),
            ErrorCode::kFoldCountMismatch);
}

class DeskTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    forest_ = new Ensemble(LoadEnsembleFile(kFixtures + "/desk_forest.json"));
    data_ = new Dataset(LoadCsvFile(kFixtures + "/desk.csv", forest_->schema(), "y", 2));
  }
  static void TearDownTestSuite() {
    delete data_;
    delete forest_;
  }
  static Ensemble* forest_;
  static Dataset* data_;
};

Ensemble* DeskTest::forest_ = nullptr;
Dataset* DeskTest::data_ = nullptr;

TEST_F(DeskTest, RunSelectionSatisfiesConstraints) {
  const PipelineConfig config;
  const SelectionRun run = RunSelection(*forest_, *data_, config);
  ASSERT_FALSE(run.selected.empty());
  EXPECT_EQ(run.scored.size(), run.candidates.rules.size());
  EXPECT_EQ(run.solution.proof, Proof::kExact);
  const SelectionProblem problem(run.scored, config.selection, config.objectives, 2);
  EXPECT_TRUE(oracle::Feasible(problem, run.solution.selected));
  for (const ScoredRule& r : run.selected) {
    EXPECT_TRUE(std::binary_search(run.admissible.begin(), run.admissible.end(), r.rule_id));
  }
}

TEST_F(DeskTest, FoldCountMismatch) {
  const std::vector<Ensemble> two = {*forest_, *forest_};
  EXPECT_EQ(CodeOf([&] { RunCrossVal(two, *data_, 5, 1, PipelineConfig()); }),
            ErrorCode::kFoldCountMismatch);
}

TEST_F(DeskTest, ThreadCountDoesNotChangeReport) {
  const std::vector<Ensemble> one = {*forest_};
  const CrossValReport a = RunCrossVal(one, *data_, 5, 20260101, PipelineConfig(), 1);
  const CrossValReport b = RunCrossVal(one, *data_, 5, 20260101, PipelineConfig(), 4);
  EXPECT_TRUE(a.shared_model);
  EXPECT_EQ(a.folds.size(), 5u);
  EXPECT_EQ(CrossValToJson(a), CrossValToJson(b));
  EXPECT_EQ(CrossValTable(a), CrossValTable(b));
}

TEST_F(DeskTest, LeafOnlyFoldIsReportedAsHyphen) {
  const CrossValReport r = RunManifest(LoadManifestFile(kFixtures + "/failure_manifest.json"), 2);
  ASSERT_EQ(r.folds.size(), 5u);
  EXPECT_FALSE(r.shared_model);
  double candidates = 0, selected = 0, accuracy = 0;
  int ok = 0;
  for (const FoldOutcome& f : r.folds) {
    if (f.fold == 2) {  // Zero-based; the third manifest entry.
      EXPECT_EQ(f.failure, "EmptyRuleSet");
      continue;
    }
    ASSERT_FALSE(f.failure.has_value()) << *f.failure;
    ++ok;
    candidates += static_cast<double>(f.candidate_count);
    selected += static_cast<double>(f.selected.size());
    accuracy += *f.eval.ratios.accuracy;
  }
  ASSERT_EQ(ok, 4);
  EXPECT_DOUBLE_EQ(*r.mean_candidates, candidates / ok);
  EXPECT_DOUBLE_EQ(*r.mean_selected, selected / ok);
  EXPECT_NEAR(*r.mean_ratios.accuracy, accuracy / ok, 1e-12);

  const std::string table = CrossValTable(r);
  EXPECT_NE(table.find("desk     3         -       -     -      -     -     -"),
            std::string::npos)
      << table;
}

TEST(ReportTest, RenderRule) {
  const FeatureSchema schema = {{"x1", FeatureKind::kContinuous, {}},
                                {"x2", FeatureKind::kContinuous, {}},
                                {"colour", FeatureKind::kCategorical, {"red", "green", "blue"}}};
  ClassifierRule rule;
  rule.metrics = {.rule_id = 3, .support = 10, .size = 3, .precision = 75, .predicted_class = 1};
  rule.body = {{1, SplitOp::kGt, 4.5, {}},
               {0, SplitOp::kLe, 2, {}},
               {2, SplitOp::kInSet, 0, {0, 2}}};
  EXPECT_EQ(RenderRule(rule, schema),
            "IF x2 > 4.5 AND x1 <= 2 AND colour in {red, blue} THEN class=1 "
            "(support=10, precision=75%)");
  const RuleSetClassifier c(schema, 2, {rule}, 0);
  EXPECT_EQ(RenderClassifier(c),
            "IF x2 > 4.5 AND x1 <= 2 AND colour in {red, blue} THEN class=1 "
            "(support=10, precision=75%)\nELSE class=0\n");
}

TEST(ReportTest, RuleSetJsonRoundTrip) {
  const FeatureSchema schema = {{"a", FeatureKind::kContinuous, {}},
                                {"c", FeatureKind::kCategorical, {"p", "q"}}};
  ClassifierRule r1;
  r1.metrics = {.rule_id = 4, .support = 12, .size = 2, .accuracy = 80, .error_rate = 20,
                .precision = 90, .recall = 50, .f1 = 64, .predicted_class = 1};
  r1.body = {{0, SplitOp::kGt, 0.125, {}}, {1, SplitOp::kNotInSet, 0, {1}}};
  RuleSetDocument doc{RuleSetClassifier(schema, 2, {r1}, 0), OrderPolicy::kSupport, 17,
                      {-95}, Proof::kGreedy};
  const std::string json = RuleSetToJson(doc);
  const RuleSetDocument back = RuleSetFromJson(json);
  EXPECT_EQ(RuleSetToJson(back), json);
  EXPECT_EQ(back.order, OrderPolicy::kSupport);
  EXPECT_EQ(back.candidate_count, 17u);
  EXPECT_EQ(back.proof, Proof::kGreedy);
  ASSERT_EQ(back.classifier.rules().size(), 1u);
  EXPECT_EQ(back.classifier.rules()[0].metrics, r1.metrics);
  EXPECT_EQ(back.classifier.rules()[0].body, r1.body);
  EXPECT_EQ(CodeOf([] { RuleSetFromJson(R"({"rules": 3})"); }), ErrorCode::kSchema);
}

TEST(ReportTest, TableShowsUndefinedRatios) {
  CrossValReport r;
  r.dataset = "toy";
  r.k = 2;
  FoldOutcome ok;
  ok.fold = 1;
  ok.candidate_count = 10;
  ok.eval.ratios.accuracy = 1.0;
  ok.eval.ratios.precision = 0.5;
  FoldOutcome failed;
  failed.fold = 2;
  failed.failure = "Infeasible";
  r.folds = {ok, failed};
  r.mean_candidates = 10;
  r.mean_selected = 0;
  r.mean_ratios.accuracy = 1.0;
  r.mean_ratios.precision = 0.5;
  const std::string table = CrossValTable(r);
  EXPECT_NE(table.find("n/a"), std::string::npos) << table;
  EXPECT_NE(table.find("0.50"), std::string::npos) << table;
  EXPECT_NE(table.find("10.0"), std::string::npos) << table;
}

}  // namespace
}  // namespace rulesift
