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


#include "rulesift/config.h"

#include <gtest/gtest.h>

#include "rulesift/error.h"

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

TEST(ConfigTest, EmptyTextKeepsDefaults) {
  const PipelineConfig c = ParseConfig("");
  const SelectionConfig defaults;
  EXPECT_EQ(c.selection.min_support, defaults.min_support);
  EXPECT_EQ(c.selection.per_class_max, defaults.per_class_max);
  EXPECT_EQ(c.selection.dominance_criteria, defaults.dominance_criteria);
  EXPECT_EQ(c.objectives.terms, ObjectiveConfig().terms);
  EXPECT_EQ(c.order, OrderPolicy::kPrecision);
  EXPECT_EQ(c.solver.backend, Backend::kNative);
  EXPECT_EQ(c.solver.timeout_s, 600);
}

TEST(ConfigTest, ParsesEverySection) {
  const PipelineConfig c = ParseConfig(R"(
# comment
[constraints]
min_support = 25   # trailing comment
per_class_min = 0
per_class_max = 3
total_size_cap = 12
dominance = false
dominance_criteria = "accuracy:max, size:min"
allow_empty_class = true
exact_search_cap = 20
force_exact = true
overlap_mode = "pairwise_sum"

[objectives]
terms = "f1:max:2:1, overlap:min"

[classifier]
order = "support"

[solver]
backend = "asp"
path = "/opt/clingo"
timeout = 30
)");
  EXPECT_EQ(c.selection.min_support, 25);
  EXPECT_EQ(c.selection.per_class_min, 0);
  EXPECT_EQ(c.selection.per_class_max, 3);
  EXPECT_EQ(c.selection.total_size_cap, 12);
  EXPECT_FALSE(c.selection.dominance_enabled);
  EXPECT_EQ(c.selection.dominance_criteria,
            (std::vector<DominanceCriterion>{{Metric::kAccuracy, Direction::kMax},
                                             {Metric::kSize, Direction::kMin}}));
  EXPECT_TRUE(c.selection.allow_empty_class);
  EXPECT_EQ(c.selection.exact_search_cap, 20);
  EXPECT_TRUE(c.selection.force_exact);
  EXPECT_EQ(c.selection.overlap_mode, OverlapMode::kPairwiseSum);
  EXPECT_EQ(c.objectives.terms,
            (std::vector<ObjectiveTerm>{{Metric::kF1, Direction::kMax, 2, 1},
                                        {Metric::kOverlap, Direction::kMin, 1, 0}}));
  EXPECT_EQ(c.order, OrderPolicy::kSupport);
  EXPECT_EQ(c.solver.backend, Backend::kAsp);
  EXPECT_EQ(c.solver.path, "/opt/clingo");
  EXPECT_EQ(c.solver.timeout_s, 30);
}

TEST(ConfigTest, FormatRoundTrips) {
  PipelineConfig c;
  c.selection.min_support = 7;
  c.selection.overlap_mode = OverlapMode::kPairwiseSum;
  c.objectives.terms = {{Metric::kRecall, Direction::kMax, 3, 2}};
  c.order = OrderPolicy::kSelection;
  c.solver.timeout_s = 9;
  const std::string text = FormatConfig(c);
  const PipelineConfig back = ParseConfig(text);
  EXPECT_EQ(FormatConfig(back), text);
  EXPECT_EQ(back.selection.min_support, 7);
  EXPECT_EQ(back.objectives.terms, c.objectives.terms);
  EXPECT_EQ(back.order, OrderPolicy::kSelection);
}

TEST(ConfigTest, DeskFixtureIsTheDefaultConfiguration) {
  const PipelineConfig fixture = LoadConfigFile(RULESIFT_FIXTURE_DIR "/desk.toml");
  EXPECT_EQ(FormatConfig(fixture), FormatConfig(PipelineConfig()));
}

TEST(ConfigTest, RejectsMalformedInput) {
  const char* bad[] = {
      "[constraints]\nmin_supprt = 3\n",
      "[weights]\nx = 1\n",
      "min_support = 3\n",
      "[constraints]\nmin_support = 3\nmin_support = 4\n",
      "[constraints]\nmin_support = three\n",
      "[constraints]\nmin_support = -1\n",
      "[constraints]\nper_class_min = 5\nper_class_max = 2\n",
      "[constraints]\ndominance = maybe\n",
      "[constraints]\ndominance_criteria = \"f1:up\"\n",
      "[constraints]\ndominance_criteria = \"overlap:min\"\n",
      "[constraints]\noverlap_mode = \"triples\"\n",
      "[objectives]\nterms = \"\"\n",
      "[objectives]\nterms = \"accuracy:max:0\"\n",
      "[objectives]\nterms = \"novelty:max\"\n",
      "[classifier]\norder = \"random\"\n",
      "[solver]\nbackend = \"cplex\"\n",
      "[constraints\nmin_support = 3\n",
      "[constraints]\nmin_support\n",
  };
  for (const char* text : bad) {
    EXPECT_EQ(CodeOf([&] { ParseConfig(text); }), ErrorCode::kConfig) << text;
  }
}

TEST(ConfigTest, MissingFileIsIoError) {
  EXPECT_EQ(CodeOf([] { LoadConfigFile("/nonexistent/rulesift.toml"); }), ErrorCode::kIo);
}

}  // namespace
}  // namespace rulesift
