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


#include "rulesift/asp.h"

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>

#include <gtest/gtest.h>

#include "rulesift/error.h"

namespace rulesift {
namespace {

ScoredRule MakeRule(int id, int cls, std::vector<int> atoms, std::int64_t support,
                    int accuracy) {
  ScoredRule r;
  r.rule_id = id;
  r.predicted_class = cls;
  r.atoms = std::move(atoms);
  RuleMetrics& m = r.metrics;
  m.rule_id = id;
  m.predicted_class = cls;
  m.size = static_cast<int>(r.atoms.size());
  m.support = support;
  m.accuracy = accuracy;
  m.error_rate = 100 - accuracy;
  m.precision = 40;
  m.recall = 30;
  m.f1 = 34;
  return r;
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIo;
}

bool Contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

TEST(EmitFactsTest, FactBlockShape) {
  const std::vector<ScoredRule> rules = {MakeRule(1, 1, {1, 2, 3}, 10, 50)};
  EXPECT_EQ(EmitFacts(rules, 2),
            "class(0).\n"
            "class(1).\n"
            "accuracy(1,50).\n"
            "condition(1,1).\n"
            "condition(1,2).\n"
            "condition(1,3).\n"
            "error_rate(1,50).\n"
            "f1_score(1,34).\n"
            "precision(1,40).\n"
            "predict_class(1,1).\n"
            "recall(1,30).\n"
            "rule(1).\n"
            "size(1,3).\n"
            "support(1,10).\n");
}

TEST(EmitFactsTest, EmptyRuleListHasOnlyClasses) {
  EXPECT_EQ(EmitFacts({}, 3), "class(0).\nclass(1).\nclass(2).\n");
}

TEST(EmitFactsTest, SharedAtomIsVisibleInBothRules) {
  const std::vector<ScoredRule> rules = {MakeRule(2, 0, {7, 9}, 12, 60),
                                         MakeRule(1, 1, {3, 7}, 11, 70)};
  const std::string facts = EmitFacts(rules, 2);
  EXPECT_TRUE(Contains(facts, "condition(1,7).\n"));
  EXPECT_TRUE(Contains(facts, "condition(2,7).\n"));
  // Rules appear by ascending id regardless of input order.
  EXPECT_LT(facts.find("rule(1)."), facts.find("rule(2)."));
}

TEST(EmitProgramTest, DefaultsGolden) {
  const std::string program = EmitProgram(SelectionConfig(), ObjectiveConfig());
  EXPECT_EQ(program,
            "% local constraints\n"
            "valid(X) :- rule(X), not invalid(X).\n"
            "invalid(X) :- rule(X), support(X,S), S < 10.\n"
            "\n"
            "% pairwise constraints\n"
            ":- dominated.\n"
            "ge_f1_leq_size_geq_sup(Y) :- selected(X), valid(Y), size(X,Sx), size(Y,Sy),\n"
            "    f1_score(X,Fx), f1_score(Y,Fy), support(X,Spx), support(Y,Spy),\n"
            "    Fx < Fy, Sx >= Sy, Spx <= Spy.\n"
            "geq_f1_le_size_geq_sup(Y) :- selected(X), valid(Y), size(X,Sx), size(Y,Sy),\n"
            "    f1_score(X,Fx), f1_score(Y,Fy), support(X,Spx), support(Y,Spy),\n"
            "    Fx <= Fy, Sx > Sy, Spx <= Spy.\n"
            "geq_f1_leq_size_ge_sup(Y) :- selected(X), valid(Y), size(X,Sx), size(Y,Sy),\n"
            "    f1_score(X,Fx), f1_score(Y,Fy), support(X,Spx), support(Y,Spy),\n"
            "    Fx <= Fy, Sx >= Sy, Spx < Spy.\n"
            "dominated :- valid(Y), ge_f1_leq_size_geq_sup(Y).\n"
            "dominated :- valid(Y), geq_f1_le_size_geq_sup(Y).\n"
            "dominated :- valid(Y), geq_f1_leq_size_ge_sup(Y).\n"
            "\n"
            "% global constraints\n"
            "1 { selected(X) :  predict_class(X, K), valid(X) } 10 :- class(K).\n"
            ":- #sum { S,X : size(X,S), selected(X) } > 30.\n"
            "\n"
            "% optimization\n"
            "#maximize { A,X,accuracy : selected(X), accuracy(X,A)}.\n"
            "#maximize { S,X,support : selected(X), support(X,S)}.\n"
            "#minimize { L,X,size : selected(X), size(X,L)}.\n"
            "rule_overlap(X,Y,Cn) :- selected(X), selected(Y), X!=Y,\n"
            "    Cn = #count { Cx : Cx=Cy, condition(X,Cx), condition(Y,Cy) }.\n"
            "#minimize { Cn,X,overlap : selected(X), selected(Y), rule_overlap(X,Y,Cn) }.\n"
            "\n"
            "#show selected/1.\n");
}

TEST(EmitProgramTest, SubstitutesConfiguration) {
  SelectionConfig config;
  config.min_support = 25;
  config.per_class_min = 2;
  config.per_class_max = 4;
  config.total_size_cap = 12;
  const std::string program = EmitProgram(config, ObjectiveConfig());
  EXPECT_TRUE(Contains(program, "S < 25."));
  EXPECT_TRUE(Contains(program, "2 { selected(X) :  predict_class(X, K), valid(X) } 4"));
  EXPECT_TRUE(Contains(program, "> 12."));
}

TEST(EmitProgramTest, NoDominanceBlockWhenDisabled) {
  SelectionConfig config;
  config.dominance_enabled = false;
  const std::string program = EmitProgram(config, ObjectiveConfig());
  EXPECT_FALSE(Contains(program, "dominated"));
  EXPECT_FALSE(Contains(program, "pairwise constraints"));
}

TEST(EmitProgramTest, AllowEmptyClassRelaxesGenerator) {
  SelectionConfig config;
  config.allow_empty_class = true;
  const std::string program = EmitProgram(config, ObjectiveConfig());
  EXPECT_TRUE(Contains(program, "has_valid(K)"));
}

TEST(EmitProgramTest, WeightsPrioritiesAndPairwiseOverlap) {
  SelectionConfig config;
  config.overlap_mode = OverlapMode::kPairwiseSum;
  ObjectiveConfig objectives;
  objectives.terms = {{Metric::kF1, Direction::kMax, 3, 2},
                      {Metric::kOverlap, Direction::kMin, 1, 0}};
  const std::string program = EmitProgram(config, objectives);
  EXPECT_TRUE(Contains(program, "#maximize { F*3@2,X,f1 : selected(X), f1_score(X,F)}."))
      << program;
  EXPECT_TRUE(Contains(program, "Cn,X,Y,overlap"));
}

TEST(EmitDocumentTest, DeterministicBytes) {
  const std::vector<ScoredRule> rules = {MakeRule(3, 0, {1, 2}, 20, 55),
                                         MakeRule(1, 1, {2, 4}, 30, 65)};
  const SelectionProblem a(rules, SelectionConfig(), ObjectiveConfig(), 2);
  const SelectionProblem b({rules[1], rules[0]}, SelectionConfig(), ObjectiveConfig(), 2);
  EXPECT_EQ(EmitDocument(a).facts, EmitDocument(b).facts);
  EXPECT_EQ(EmitDocument(a).program, EmitDocument(b).program);
}

TEST(ParseSolverOutputTest, OptimumFound) {
  const SolverResult r = ParseSolverOutput(
      "clingo version 5.6.2\n"
      "Reading from rules.lp ...\n"
      "Solving...\n"
      "Answer: 1\n"
      "selected(4) selected(2)\n"
      "Optimization: -120\n"
      "Answer: 2\n"
      "selected(7) selected(3)\n"
      "Optimization: -130 5\n"
      "OPTIMUM FOUND\n"
      "\n"
      "Models       : 2\n"
      "  Optimum    : yes\n"
      "Optimization : -130 5\n");
  EXPECT_EQ(r.selected, (std::vector<int>{3, 7}));
  EXPECT_EQ(r.cost, (ObjectiveVector{-130, 5}));
  EXPECT_TRUE(r.optimal);
  EXPECT_FALSE(r.interrupted);
}

TEST(ParseSolverOutputTest, InterruptedKeepsBestKnown) {
  const SolverResult r = ParseSolverOutput(
      "Answer: 1\r\nselected(1)\r\nOptimization: -3\r\nSATISFIABLE\r\n"
      "INTERRUPTED  : 1\r\n");
  EXPECT_EQ(r.selected, (std::vector<int>{1}));
  EXPECT_FALSE(r.optimal);
  EXPECT_TRUE(r.interrupted);
}

TEST(ParseSolverOutputTest, Failures) {
  EXPECT_EQ(CodeOf([] { ParseSolverOutput("Solving...\nUNSATISFIABLE\n"); }),
            ErrorCode::kInfeasible);
  EXPECT_EQ(CodeOf([] { ParseSolverOutput("Solving...\nUNKNOWN\n"); }),
            ErrorCode::kSolverTimeout);
  EXPECT_EQ(CodeOf([] { ParseSolverOutput("segmentation fault\n"); }),
            ErrorCode::kSolverOutput);
  EXPECT_EQ(CodeOf([] { ParseSolverOutput("Answer: 1\nselected(x)\n"); }),
            ErrorCode::kSolverOutput);
  EXPECT_EQ(CodeOf([] { ParseSolverOutput("Answer: 1\nselected(1)\nOptimization: 4 z\n"); }),
            ErrorCode::kSolverOutput);
}

TEST(ParseSolverOutputTest, EmptyAnswerSelectsNothing) {
  const SolverResult r = ParseSolverOutput("Answer: 1\n\nSATISFIABLE\n");
  EXPECT_TRUE(r.selected.empty());
}

class ExternalSolverTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("rulesift_asp_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string WriteScript(const std::string& name, const std::string& body) {
    const std::filesystem::path path = dir_ / name;
    std::ofstream(path) << "#!/bin/sh\n" << body;
    std::filesystem::permissions(path, std::filesystem::perms::owner_all);
    return path.string();
  }

  std::filesystem::path dir_;
};

TEST_F(ExternalSolverTest, InvokesSolverWithDocumentFiles) {
  // The stand-in solver checks its arguments and the written files.
  const std::string solver = WriteScript(
      "fake_solver",
      "[ \"$(basename \"$1\")\" = rules.lp ] && [ \"$(basename \"$2\")\" = select.lp ] &&\n"
      "[ \"$3\" = --quiet=1 ] && [ \"$4\" = --time-limit=7 ] &&\n"
      "grep -q 'rule(5).' \"$1\" && grep -q '#show selected/1.' \"$2\" || exit 1\n"
      "printf 'Answer: 1\\nselected(5)\\nOptimization: -9\\nOPTIMUM FOUND\\n'\n"
      "exit 30\n");
  const std::filesystem::path work = dir_ / "work";
  std::filesystem::create_directories(work);
  const AspDocument doc{"rule(5).\n", "#show selected/1.\n"};
  const SolverResult r = RunExternalSolver(doc, solver, 7, work.string());
  EXPECT_EQ(r.selected, (std::vector<int>{5}));
  EXPECT_EQ(r.cost, (ObjectiveVector{-9}));
  EXPECT_TRUE(r.optimal);
}

TEST_F(ExternalSolverTest, MissingBinary) {
  const AspDocument doc{"", ""};
  EXPECT_EQ(CodeOf([&] {
              RunExternalSolver(doc, (dir_ / "no_such_solver").string(), 5, dir_.string());
            }),
            ErrorCode::kSolverNotFound);
}

TEST_F(ExternalSolverTest, UnsatisfiableIsInfeasible) {
  const std::string solver = WriteScript("unsat", "echo UNSATISFIABLE\nexit 20\n");
  const AspDocument doc{"", ""};
  EXPECT_EQ(CodeOf([&] { RunExternalSolver(doc, solver, 5, dir_.string()); }),
            ErrorCode::kInfeasible);
}

TEST(FindExecutableTest, FindsShellAndMissesNonsense) {
  EXPECT_FALSE(FindExecutable("sh").empty());
  EXPECT_TRUE(FindExecutable("rulesift-no-such-binary-xyz").empty());
}

}  // namespace
}  // namespace rulesift
