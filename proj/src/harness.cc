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

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "rulesift/asp.h"
#include "rulesift/error.h"
#include "rulesift/metrics.h"

namespace rulesift {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string FreshWorkDir() {
  static std::atomic<int> counter{0};
  const fs::path dir = fs::temp_directory_path() /
                       ("rulesift-" + std::to_string(::getpid()) + "-" +
                        std::to_string(counter.fetch_add(1)));
  fs::create_directories(dir);
  return dir.string();
}

bool SameSchema(const FeatureSchema& a, const FeatureSchema& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].name != b[i].name || a[i].kind != b[i].kind ||
        a[i].categories != b[i].categories) {
      return false;
    }
  }
  return true;
}

bool IsFoldFailure(ErrorCode code) {
  return code == ErrorCode::kEmptyRuleSet || code == ErrorCode::kInfeasible ||
         code == ErrorCode::kEmptySelection;
}

FoldOutcome RunFold(const Ensemble& model, const Dataset& dataset,
                    const FoldPlan& plan, int fold, const PipelineConfig& config) {
  const std::vector<std::size_t> train_rows = plan.TrainIndices(fold);
  const Dataset train = dataset.Subset(train_rows);
  const Dataset test = dataset.Subset(plan.folds[fold]);
  FoldOutcome out;
  out.fold = fold;
  out.train_rows = train.num_rows();
  out.test_rows = test.num_rows();
  try {
    SelectionRun run = RunSelection(model, train, config);
    out.candidate_count = run.candidates.rules.size();
    const RuleSetClassifier classifier =
        BuildClassifier(run.selected, run.candidates.atoms, train, config.order,
                        config.selection.allow_empty_class);
    out.eval = Evaluate(classifier, model, test);
    out.selected = std::move(run.selected);
    out.objective = std::move(run.solution.objective);
    out.proof = run.solution.proof;
  } catch (const Error& e) {
    if (!IsFoldFailure(e.code())) throw;
    out = FoldOutcome{};
    out.fold = fold;
    out.train_rows = train.num_rows();
    out.test_rows = test.num_rows();
    out.failure = std::string(ErrorCodeName(e.code()));
  }
  return out;
}

std::optional<double> Mean(const std::vector<double>& values) {
  if (values.empty()) return std::nullopt;
  double sum = 0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

SelectionRun RunSelection(const Ensemble& ensemble, const Dataset& train,
                          const PipelineConfig& config,
                          const std::string& work_dir) {
  SelectionRun run;
  run.candidates = ExtractCandidateRules(ensemble, train);
  const std::vector<RuleMetrics> metrics = ComputeAllMetrics(run.candidates, train);
  run.scored = ScoreRules(run.candidates, metrics);
  const SelectionProblem problem(run.scored, config.selection, config.objectives,
                                 train.n_classes());
  run.admissible = SelectionCandidates(problem);
  if (config.solver.backend == Backend::kAsp) {
    const std::string dir = work_dir.empty() ? FreshWorkDir() : work_dir;
    const SolverResult result = RunExternalSolver(
        EmitDocument(problem), config.solver.path, config.solver.timeout_s, dir);
    if (work_dir.empty()) fs::remove_all(dir);
    for (int id : result.selected) {
      if (!problem.contains(id)) {
        throw Error(ErrorCode::kSolverOutput,
                    "solver selected unknown rule " + std::to_string(id));
      }
    }
    run.solution.selected = result.selected;
    run.solution.objective = ObjectiveValue(problem, result.selected);
    run.solution.proof = Proof::kExternal;
  } else {
    run.solution = Solve(problem);
  }
  for (int id : run.solution.selected) run.selected.push_back(problem.rule(id));
  return run;
}

CrossValReport RunCrossVal(std::span<const Ensemble> models,
                           const Dataset& dataset, int k, std::uint64_t seed,
                           const PipelineConfig& config, int threads) {
  if (models.size() != static_cast<std::size_t>(k) && models.size() != 1) {
    throw Error(ErrorCode::kFoldCountMismatch,
                std::to_string(models.size()) + " models for " +
                    std::to_string(k) + " folds");
  }
  for (const Ensemble& m : models) {
    if (!SameSchema(m.schema(), dataset.schema()) ||
        m.n_classes() != dataset.n_classes()) {
      throw Error(ErrorCode::kFeatureMismatch,
                  "fold models disagree with the dataset schema");
    }
  }
  const FoldPlan plan = StratifiedKFold(dataset, k, seed);

  CrossValReport report;
  report.k = k;
  report.seed = seed;
  report.shared_model = models.size() == 1;
  report.folds.resize(k);

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int f = next.fetch_add(1); f < k; f = next.fetch_add(1)) {
      try {
        const Ensemble& model = models[report.shared_model ? 0 : f];
        report.folds[f] = RunFold(model, dataset, plan, f, config);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int workers = std::clamp(threads, 1, k);
  std::vector<std::thread> pool;
  for (int i = 1; i < workers; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::vector<double> candidates, selected, acc, prec, rec, f1;
  for (const FoldOutcome& f : report.folds) {
    if (f.failure) continue;
    candidates.push_back(static_cast<double>(f.candidate_count));
    selected.push_back(static_cast<double>(f.selected.size()));
    if (f.eval.ratios.accuracy) acc.push_back(*f.eval.ratios.accuracy);
    if (f.eval.ratios.precision) prec.push_back(*f.eval.ratios.precision);
    if (f.eval.ratios.recall) rec.push_back(*f.eval.ratios.recall);
    if (f.eval.ratios.f1) f1.push_back(*f.eval.ratios.f1);
  }
  report.mean_candidates = Mean(candidates);
  report.mean_selected = Mean(selected);
  report.mean_ratios = {Mean(acc), Mean(prec), Mean(rec), Mean(f1)};
  return report;
}

Manifest ParseManifest(std::string_view text, const std::string& base_dir) {
  Manifest m;
  auto resolve = [&](const std::string& p) {
    const fs::path path(p);
    return path.is_absolute() ? p : (fs::path(base_dir) / path).string();
  };
  try {
    const json doc = json::parse(text);
    for (const auto& [key, value] : doc.items()) {
      if (key != "dataset" && key != "label" && key != "folds" && key != "k" &&
          key != "seed" && key != "config") {
        throw Error(ErrorCode::kSchema, "unknown manifest key '" + key + "'");
      }
    }
    m.dataset = resolve(doc.at("dataset").get<std::string>());
    m.label = doc.at("label").get<std::string>();
    for (const json& fold : doc.at("folds")) {
      if (fold.size() != 1) throw Error(ErrorCode::kSchema, "fold entries hold only a model");
      m.models.push_back(resolve(fold.at("model").get<std::string>()));
    }
    m.k = doc.value("k", 5);
    m.seed = doc.value("seed", std::uint64_t{0});
    if (doc.contains("config")) m.config = resolve(doc.at("config").get<std::string>());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("manifest: ") + e.what());
  }
  if (m.models.size() != static_cast<std::size_t>(m.k) && m.models.size() != 1) {
    throw Error(ErrorCode::kFoldCountMismatch,
                "manifest lists " + std::to_string(m.models.size()) +
                    " models for k=" + std::to_string(m.k));
  }
  return m;
}

Manifest LoadManifestFile(const std::string& path) {
  return ParseManifest(ReadFile(path), fs::path(path).parent_path().string());
}

CrossValReport RunManifest(const Manifest& manifest, int threads,
                           std::optional<std::uint64_t> seed) {
  std::vector<Ensemble> models;
  for (const std::string& path : manifest.models) {
    models.push_back(LoadEnsembleFile(path));
  }
  const PipelineConfig config =
      manifest.config.empty() ? PipelineConfig{} : LoadConfigFile(manifest.config);
  const Dataset dataset = LoadCsvFile(manifest.dataset, models.front().schema(),
                                      manifest.label, models.front().n_classes());
  CrossValReport report = RunCrossVal(models, dataset, manifest.k,
                                      seed.value_or(manifest.seed), config, threads);
  report.dataset = fs::path(manifest.dataset).stem().string();
  return report;
}

}  // namespace rulesift
