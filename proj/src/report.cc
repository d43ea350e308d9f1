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


#include "rulesift/report.h"

#include <algorithm>
#include <cstdio>
#include <vector>

#include <nlohmann/json.hpp>

#include "rulesift/error.h"
#include "rulesift/rules.h"

namespace rulesift {
namespace {

using ojson = nlohmann::ordered_json;

ojson SchemaToJson(const FeatureSchema& schema) {
  ojson features = ojson::array();
  for (const FeatureSpec& f : schema) {
    ojson jf;
    jf["name"] = f.name;
    if (f.kind == FeatureKind::kCategorical) {
      jf["kind"] = "categorical";
      jf["categories"] = f.categories;
    } else {
      jf["kind"] = "continuous";
    }
    features.push_back(std::move(jf));
  }
  return features;
}

FeatureSchema SchemaFromJson(const ojson& features) {
  FeatureSchema schema;
  for (const ojson& jf : features) {
    FeatureSpec spec;
    spec.name = jf.at("name").get<std::string>();
    const std::string kind = jf.at("kind").get<std::string>();
    if (kind == "categorical") {
      spec.kind = FeatureKind::kCategorical;
      spec.categories = jf.at("categories").get<std::vector<std::string>>();
    } else if (kind != "continuous") {
      throw Error(ErrorCode::kSchema, "unknown feature kind '" + kind + "'");
    }
    schema.push_back(std::move(spec));
  }
  return schema;
}

ojson ConditionToJson(const SplitCondition& c) {
  ojson j;
  j["feature"] = c.feature;
  j["op"] = std::string(SplitOpName(c.op));
  if (c.IsCategorical()) {
    j["set"] = c.categories;
  } else {
    j["threshold"] = c.threshold;
  }
  return j;
}

SplitCondition ConditionFromJson(const ojson& j) {
  SplitCondition c;
  c.feature = j.at("feature").get<int>();
  const std::string op = j.at("op").get<std::string>();
  if (op == "le") c.op = SplitOp::kLe;
  else if (op == "gt") c.op = SplitOp::kGt;
  else if (op == "in") c.op = SplitOp::kInSet;
  else if (op == "not_in") c.op = SplitOp::kNotInSet;
  else throw Error(ErrorCode::kSchema, "unknown split op '" + op + "'");
  if (c.IsCategorical()) {
    c.categories = j.at("set").get<std::vector<int>>();
    std::sort(c.categories.begin(), c.categories.end());
  } else {
    c.threshold = j.at("threshold").get<double>();
  }
  return c;
}

ojson MetricsToJson(const RuleMetrics& m) {
  ojson j;
  j["support"] = m.support;
  j["size"] = m.size;
  j["accuracy"] = m.accuracy;
  j["error_rate"] = m.error_rate;
  j["precision"] = m.precision;
  j["recall"] = m.recall;
  j["f1_score"] = m.f1;
  return j;
}

ojson ScoresToJson(const BinaryScores& s) {
  ojson j;
  j["accuracy"] = s.accuracy;
  j["precision"] = s.precision;
  j["recall"] = s.recall;
  j["f1"] = s.f1;
  return j;
}

ojson RatiosToJson(const ScoreRatios& r) {
  auto opt = [](const std::optional<double>& v) { return v ? ojson(*v) : ojson(); };
  ojson j;
  j["accuracy"] = opt(r.accuracy);
  j["precision"] = opt(r.precision);
  j["recall"] = opt(r.recall);
  j["f1"] = opt(r.f1);
  return j;
}

ojson EvalToJson(const EvalReport& report) {
  ojson j;
  j["instances"] = report.num_instances;
  j["classifier"] = ScoresToJson(report.classifier);
  j["ensemble"] = ScoresToJson(report.ensemble);
  j["ratios"] = RatiosToJson(report.ratios);
  ojson histogram = ojson::object();
  for (const auto& [id, count] : report.fired_rule_histogram) {
    histogram[std::to_string(id)] = count;
  }
  j["fired_rule_histogram"] = std::move(histogram);
  j["fallback_count"] = report.fallback_count;
  return j;
}

std::string Fixed(double v, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string Ratio(const std::optional<double>& v) {
  return v ? Fixed(*v, 2) : "n/a";
}

}  // namespace

std::string RuleSetToJson(const RuleSetDocument& document) {
  const RuleSetClassifier& c = document.classifier;
  ojson doc;
  doc["n_classes"] = c.n_classes();
  doc["features"] = SchemaToJson(c.schema());
  doc["default_class"] = c.default_class();
  doc["order"] = std::string(OrderPolicyName(document.order));
  doc["candidate_rules"] = document.candidate_count;
  doc["proof"] = std::string(ProofName(document.proof));
  doc["objective"] = document.objective;
  ojson rules = ojson::array();
  for (const ClassifierRule& r : c.rules()) {
    ojson jr;
    jr["rule_id"] = r.rule_id();
    jr["class"] = r.predicted_class();
    ojson body = ojson::array();
    for (const SplitCondition& cond : r.body) body.push_back(ConditionToJson(cond));
    jr["body"] = std::move(body);
    jr["text"] = RenderRule(r, c.schema());
    jr["metrics"] = MetricsToJson(r.metrics);
    rules.push_back(std::move(jr));
  }
  doc["rules"] = std::move(rules);
  return doc.dump(2) + "\n";
}

RuleSetDocument RuleSetFromJson(std::string_view text) {
  try {
    const ojson doc = ojson::parse(text);
    FeatureSchema schema = SchemaFromJson(doc.at("features"));
    std::vector<ClassifierRule> rules;
    for (const ojson& jr : doc.at("rules")) {
      ClassifierRule r;
      r.metrics.rule_id = jr.at("rule_id").get<int>();
      r.metrics.predicted_class = jr.at("class").get<int>();
      const ojson& m = jr.at("metrics");
      r.metrics.support = m.at("support").get<std::int64_t>();
      r.metrics.size = m.at("size").get<int>();
      r.metrics.accuracy = m.at("accuracy").get<int>();
      r.metrics.error_rate = m.at("error_rate").get<int>();
      r.metrics.precision = m.at("precision").get<int>();
      r.metrics.recall = m.at("recall").get<int>();
      r.metrics.f1 = m.at("f1_score").get<int>();
      for (const ojson& jc : jr.at("body")) r.body.push_back(ConditionFromJson(jc));
      rules.push_back(std::move(r));
    }
    const std::string proof = doc.at("proof").get<std::string>();
    RuleSetDocument out{
        RuleSetClassifier(std::move(schema), doc.at("n_classes").get<int>(),
                          std::move(rules), doc.at("default_class").get<int>()),
        ParseOrderPolicy(doc.at("order").get<std::string>()),
        doc.at("candidate_rules").get<std::size_t>(),
        doc.at("objective").get<ObjectiveVector>(),
        proof == "exact"    ? Proof::kExact
        : proof == "greedy" ? Proof::kGreedy
                            : Proof::kExternal};
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("rule set: ") + e.what());
  }
}

std::string RenderRule(const ClassifierRule& rule, const FeatureSchema& schema) {
  std::string out = "IF ";
  for (std::size_t i = 0; i < rule.body.size(); ++i) {
    if (i > 0) out += " AND ";
    out += RenderCondition(rule.body[i], schema);
  }
  out += " THEN class=" + std::to_string(rule.predicted_class());
  out += " (support=" + std::to_string(rule.metrics.support) +
         ", precision=" + std::to_string(rule.metrics.precision) + "%)";
  return out;
}

std::string RenderClassifier(const RuleSetClassifier& classifier) {
  std::string out;
  for (const ClassifierRule& r : classifier.rules()) {
    out += RenderRule(r, classifier.schema()) + "\n";
  }
  out += "ELSE class=" + std::to_string(classifier.default_class()) + "\n";
  return out;
}

std::string EvalReportToJson(const EvalReport& report) {
  return EvalToJson(report).dump(2) + "\n";
}

std::string CrossValToJson(const CrossValReport& report) {
  ojson doc;
  doc["dataset"] = report.dataset;
  doc["k"] = report.k;
  doc["seed"] = report.seed;
  doc["shared_model"] = report.shared_model;
  ojson folds = ojson::array();
  for (const FoldOutcome& f : report.folds) {
    ojson jf;
    jf["fold"] = f.fold + 1;
    jf["train_rows"] = f.train_rows;
    jf["test_rows"] = f.test_rows;
    if (f.failure) {
      jf["failure"] = *f.failure;
    } else {
      jf["candidate_rules"] = f.candidate_count;
      std::vector<int> ids;
      for (const ScoredRule& r : f.selected) ids.push_back(r.rule_id);
      jf["selected"] = ids;
      jf["objective"] = f.objective;
      jf["proof"] = std::string(ProofName(f.proof));
      jf["eval"] = EvalToJson(f.eval);
    }
    folds.push_back(std::move(jf));
  }
  doc["folds"] = std::move(folds);
  auto opt = [](const std::optional<double>& v) { return v ? ojson(*v) : ojson(); };
  ojson mean;
  mean["candidate_rules"] = opt(report.mean_candidates);
  mean["selected_rules"] = opt(report.mean_selected);
  mean["ratios"] = RatiosToJson(report.mean_ratios);
  doc["mean"] = std::move(mean);
  return doc.dump(2) + "\n";
}

std::string CrossValTable(const CrossValReport& report) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"Dataset", "Fold", "|R|", "# rule", "Acc.", "Prec.", "Rec.", "F1"});
  for (const FoldOutcome& f : report.folds) {
    std::vector<std::string> row = {report.dataset, std::to_string(f.fold + 1)};
    if (f.failure) {
      row.insert(row.end(), 6, "-");
    } else {
      const ScoreRatios& r = f.eval.ratios;
      row.push_back(std::to_string(f.candidate_count));
      row.push_back(std::to_string(f.selected.size()));
      row.push_back(Ratio(r.accuracy));
      row.push_back(Ratio(r.precision));
      row.push_back(Ratio(r.recall));
      row.push_back(Ratio(r.f1));
    }
    rows.push_back(std::move(row));
  }
  {
    const ScoreRatios& r = report.mean_ratios;
    auto mean = [](const std::optional<double>& v) { return v ? Fixed(*v, 1) : "-"; };
    auto ratio = [](const std::optional<double>& v) { return v ? Fixed(*v, 2) : "-"; };
    rows.push_back({report.dataset, "mean", mean(report.mean_candidates),
                    mean(report.mean_selected), ratio(r.accuracy),
                    ratio(r.precision), ratio(r.recall), ratio(r.f1)});
  }
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) line += "  ";
      // Text columns align left, numbers right.
      const std::string pad(width[i] - row[i].size(), ' ');
      line += i < 2 ? row[i] + pad : pad + row[i];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

}  // namespace rulesift
