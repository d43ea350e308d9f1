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

#ifndef RULESIFT_ASP_H_
#define RULESIFT_ASP_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rulesift/selection.h"

namespace rulesift {

struct AspDocument {
  std::string facts;    // rules.lp
  std::string program;  // select.lp
};

// class/1 facts, then per rule (ascending id) one atom per line ordered by
// predicate name and argument: accuracy, condition, error_rate, f1_score,
// precision, predict_class, recall, rule, size, support.
std::string EmitFacts(std::span<const ScoredRule> rules, int n_classes);

// Validity, dominance, generator, size cap and optimization statements with
// the configuration substituted.
std::string EmitProgram(const SelectionConfig& config,
                        const ObjectiveConfig& objectives);

AspDocument EmitDocument(const SelectionProblem& problem);

struct SolverResult {
  std::vector<int> selected;  // Ascending.
  ObjectiveVector cost;       // Highest priority first, as printed.
  bool optimal = false;
  bool interrupted = false;
};

// Reads clingo's text protocol and keeps the last "Answer:" block. Throws
// Infeasible on UNSATISFIABLE and OutputParseError on anything unreadable.
SolverResult ParseSolverOutput(std::string_view output);

// Writes rules.lp / select.lp into `work_dir` and runs
//   <solver_path> rules.lp select.lp --quiet=1 --time-limit=<timeout_s>
// Throws SolverNotFound, SolverTimeout (no model before the limit),
// OutputParseError or Infeasible.
SolverResult RunExternalSolver(const AspDocument& document,
                               const std::string& solver_path, int timeout_s,
                               const std::string& work_dir);

// Searches PATH for an executable named `name`; empty when absent.
std::string FindExecutable(std::string_view name);

}  // namespace rulesift

#endif  // RULESIFT_ASP_H_
