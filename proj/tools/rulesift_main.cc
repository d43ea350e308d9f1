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


// rulesift: distills a tree ensemble into a small rule set.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rulesift/asp.h"
#include "rulesift/classifier.h"
#include "rulesift/config.h"
#include "rulesift/dataset.h"
#include "rulesift/ensemble.h"
#include "rulesift/error.h"
#include "rulesift/harness.h"
#include "rulesift/metrics.h"
#include "rulesift/report.h"
#include "rulesift/rules.h"
#include "rulesift/selection.h"

namespace {

using namespace rulesift;  // NOLINT

struct Options {
  std::string model;
  std::string data;
  std::string label = "y";
  std::string config;
  std::string out;
  std::string ruleset;
  std::string manifest;
  std::string solver_path;
  std::string backend;
  std::string order;
  std::optional<std::uint64_t> seed;
  std::optional<int> timeout;
  int threads = 1;
};

PipelineConfig ResolveConfig(const Options& o) {
  PipelineConfig config = o.config.empty() ? PipelineConfig{} : LoadConfigFile(o.config);
  if (!o.solver_path.empty()) config.solver.path = o.solver_path;
  if (o.timeout) config.solver.timeout_s = *o.timeout;
  if (o.backend == "asp") config.solver.backend = Backend::kAsp;
  if (o.backend == "native") config.solver.backend = Backend::kNative;
  if (!o.order.empty()) config.order = ParseOrderPolicy(o.order);
  return config;
}

void Emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    WriteFile(path, text);
  }
}

Dataset LoadData(const Options& o, const Ensemble& ensemble) {
  return LoadCsvFile(o.data, ensemble.schema(), o.label, ensemble.n_classes());
}

int RunExtract(const Options& o) {
  const Ensemble ensemble = LoadEnsembleFile(o.model);
  const Dataset train = LoadData(o, ensemble);
  const CandidateSet candidates = ExtractCandidateRules(ensemble, train);
  Emit(o.out, DumpRulesJsonl(candidates, ensemble.schema()));
  std::cerr << candidates.rules.size() << " candidate rules, "
            << candidates.atoms.size() << " distinct conditions\n";
  return 0;
}

int RunSelect(const Options& o) {
  const Ensemble ensemble = LoadEnsembleFile(o.model);
  const Dataset train = LoadData(o, ensemble);
  const PipelineConfig config = ResolveConfig(o);
  const SelectionRun run = RunSelection(ensemble, train, config);
  RuleSetDocument doc{
      BuildClassifier(run.selected, run.candidates.atoms, train, config.order,
                      config.selection.allow_empty_class),
      config.order, run.candidates.rules.size(), run.solution.objective,
      run.solution.proof};
  Emit(o.out.empty() ? "ruleset.json" : o.out, RuleSetToJson(doc));

  std::cout << "candidate rules: " << run.candidates.rules.size() << "\n"
            << "valid, non-dominated: " << run.admissible.size() << "\n"
            << "selected: " << run.selected.size() << " ("
            << ProofName(run.solution.proof) << ")\n"
            << "objective:";
  for (std::int64_t v : run.solution.objective) std::cout << " " << v;
  std::cout << "\n\n" << RenderClassifier(doc.classifier);
  return 0;
}

int RunEmitAsp(const Options& o) {
  const Ensemble ensemble = LoadEnsembleFile(o.model);
  const Dataset train = LoadData(o, ensemble);
  const PipelineConfig config = ResolveConfig(o);
  const CandidateSet candidates = ExtractCandidateRules(ensemble, train);
  const SelectionProblem problem(
      ScoreRules(candidates, ComputeAllMetrics(candidates, train)),
      config.selection, config.objectives, train.n_classes());
  const AspDocument doc = EmitDocument(problem);
  const std::filesystem::path dir = o.out.empty() ? "." : o.out;
  std::filesystem::create_directories(dir);
  WriteFile((dir / "rules.lp").string(), doc.facts);
  WriteFile((dir / "select.lp").string(), doc.program);
  std::cerr << "wrote " << (dir / "rules.lp").string() << " and "
            << (dir / "select.lp").string() << "\n";
  return 0;
}

int RunClassify(const Options& o) {
  const RuleSetDocument doc = RuleSetFromJson(ReadFile(o.ruleset));
  const RuleSetClassifier& classifier = doc.classifier;
  const Dataset data =
      LoadCsvFile(o.data, classifier.schema(), o.label, classifier.n_classes());
  std::vector<int> firing;
  const std::vector<int> predicted = classifier.ClassifyAll(data, &firing);
  std::string csv = "row,predicted,rule_id\n";
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    csv += std::to_string(i) + "," + std::to_string(predicted[i]) + ",";
    if (firing[i] >= 0) csv += std::to_string(classifier.rules()[firing[i]].rule_id());
    csv += "\n";
  }
  Emit(o.out, csv);
  if (!o.model.empty()) {
    const Ensemble ensemble = LoadEnsembleFile(o.model);
    std::cerr << EvalReportToJson(Evaluate(classifier, ensemble, data));
  } else {
    const BinaryScores s = ScorePredictions(predicted, data.labels());
    std::cerr << "accuracy " << s.accuracy << ", precision " << s.precision
              << ", recall " << s.recall << ", f1 " << s.f1 << "\n";
  }
  return 0;
}

int RunCrossValCommand(const Options& o) {
  const Manifest manifest = LoadManifestFile(o.manifest);
  const CrossValReport report = RunManifest(manifest, o.threads, o.seed);
  if (!o.out.empty()) WriteFile(o.out, CrossValToJson(report));
  std::cout << CrossValTable(report);
  if (report.shared_model) {
    std::cout << "note: one model serves every fold, so its training data "
                 "includes the held-out rows\n";
  }
  return 0;
}

int RunInspect(const Options& o) {
  const RuleSetDocument doc = RuleSetFromJson(ReadFile(o.ruleset));
  std::cout << "rules: " << doc.classifier.rules().size() << " of "
            << doc.candidate_count << " candidates (" << ProofName(doc.proof)
            << "), order: " << OrderPolicyName(doc.order) << "\n";
  std::cout << RenderClassifier(doc.classifier);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distills tree ensembles into compact rule sets"};
  app.require_subcommand(1);
  Options o;

  auto add_model_data = [&](CLI::App* cmd) {
    cmd->add_option("--model", o.model, "Ensemble JSON or LightGBM text dump")
        ->required()->check(CLI::ExistingFile);
    cmd->add_option("--data", o.data, "Training CSV")->required()->check(CLI::ExistingFile);
    cmd->add_option("--label", o.label, "Label column name")->capture_default_str();
  };
  auto add_selection = [&](CLI::App* cmd) {
    cmd->add_option("--config", o.config, "Configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--solver-path", o.solver_path, "Answer-set solver executable");
    cmd->add_option("--timeout", o.timeout, "Solver time limit in seconds")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--backend", o.backend, "Selection backend")
        ->check(CLI::IsMember({"native", "asp"}));
    cmd->add_option("--order", o.order, "Rule order of the classifier")
        ->check(CLI::IsMember({"precision", "support", "selection"}));
  };

  auto* extract = app.add_subcommand("extract", "Dump candidate rules as JSON lines");
  add_model_data(extract);
  extract->add_option("--out", o.out, "Output file (default stdout)");

  auto* select = app.add_subcommand("select", "Select a rule set");
  add_model_data(select);
  add_selection(select);
  select->add_option("--out", o.out, "Rule set file (default ruleset.json)");

  auto* emit = app.add_subcommand("emit-asp", "Write rules.lp and select.lp");
  add_model_data(emit);
  add_selection(emit);
  emit->add_option("--out", o.out, "Output directory (default .)");

  auto* classify = app.add_subcommand("classify", "Score a CSV with a rule set");
  classify->add_option("--ruleset", o.ruleset, "Rule set file")
      ->required()->check(CLI::ExistingFile);
  classify->add_option("--data", o.data, "CSV to score")->required()->check(CLI::ExistingFile);
  classify->add_option("--label", o.label, "Label column name")->capture_default_str();
  classify->add_option("--model", o.model, "Ensemble to compare against")
      ->check(CLI::ExistingFile);
  classify->add_option("--out", o.out, "Predictions CSV (default stdout)");

  auto* crossval = app.add_subcommand("crossval", "Run stratified cross-validation");
  crossval->add_option("--manifest", o.manifest, "Harness manifest")
      ->required()->check(CLI::ExistingFile);
  crossval->add_option("--seed", o.seed, "Override the manifest seed");
  crossval->add_option("--threads", o.threads, "Folds run concurrently")
      ->check(CLI::PositiveNumber);
  crossval->add_option("--out", o.out, "JSON report file");

  auto* inspect = app.add_subcommand("inspect", "Print a rule set as IF-THEN rules");
  inspect->add_option("--ruleset", o.ruleset, "Rule set file")
      ->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : 1;
  }

  try {
    if (*extract) return RunExtract(o);
    if (*select) return RunSelect(o);
    if (*emit) return RunEmitAsp(o);
    if (*classify) return RunClassify(o);
    if (*crossval) return RunCrossValCommand(o);
    if (*inspect) return RunInspect(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
