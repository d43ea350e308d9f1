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


#ifndef RULESIFT_HARNESS_H_
#define RULESIFT_HARNESS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rulesift/classifier.h"
#include "rulesift/config.h"
#include "rulesift/dataset.h"
#include "rulesift/ensemble.h"
#include "rulesift/rules.h"
#include "rulesift/selection.h"

namespace rulesift {

// Everything one extraction + selection run produces.
struct SelectionRun {
  CandidateSet candidates;
  std::vector<ScoredRule> scored;      // One per candidate, by rule id.
  std::vector<int> admissible;         // Valid and non-dominated ids.
  RuleSetSolution solution;
  std::vector<ScoredRule> selected;    // Ascending rule id.
};

// Extracts candidates from `ensemble` on `train`, scores them and selects a
// rule set with the configured backend. The external backend writes its
// documents below `work_dir` (a fresh temporary directory when empty).
SelectionRun RunSelection(const Ensemble& ensemble, const Dataset& train,
                          const PipelineConfig& config,
                          const std::string& work_dir = "");

struct FoldOutcome {
  int fold = 0;  // Zero-based.
  std::size_t train_rows = 0;
  std::size_t test_rows = 0;
  // Name of the error that stopped the fold (EmptyRuleSet, Infeasible,
  // EmptySelection); such folds carry no numbers.
  std::optional<std::string> failure;
  std::size_t candidate_count = 0;
  std::vector<ScoredRule> selected;
  ObjectiveVector objective;
  Proof proof = Proof::kExact;
  EvalReport eval;
};

struct CrossValReport {
  std::string dataset;
  int k = 0;
  std::uint64_t seed = 0;
  bool shared_model = false;  // One ensemble reused for every fold.
  std::vector<FoldOutcome> folds;
  // Means over successful folds only; empty when every fold failed.
  std::optional<double> mean_candidates;
  std::optional<double> mean_selected;
  ScoreRatios mean_ratios;
};

// Runs the pipeline on each stratified fold: the fold's model is applied to
// its training split and the classifier is scored on the held-out rows.
// `models` holds k ensembles, or one that is reused for every fold (its
// training data then overlaps the held-out rows). Throws FoldCountMismatch
// otherwise. Up to `threads` folds run concurrently; the report does not
// depend on the thread count.
CrossValReport RunCrossVal(std::span<const Ensemble> models,
                           const Dataset& dataset, int k, std::uint64_t seed,
                           const PipelineConfig& config, int threads = 1);

// {"dataset", "label", "folds": [{"model"}], "k", "seed", "config"}; paths
// are relative to the manifest's directory. "config" is optional.
struct Manifest {
  std::string dataset;
  std::string label;
  std::vector<std::string> models;
  int k = 5;
  std::uint64_t seed = 0;
  std::string config;
};

Manifest ParseManifest(std::string_view json, const std::string& base_dir);
Manifest LoadManifestFile(const std::string& path);

// Loads every artifact a manifest names and runs the cross-validation.
// `seed` overrides the manifest seed when set.
CrossValReport RunManifest(const Manifest& manifest, int threads,
                           std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace rulesift

#endif  // RULESIFT_HARNESS_H_
