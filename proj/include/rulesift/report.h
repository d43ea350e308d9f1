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


#ifndef RULESIFT_REPORT_H_
#define RULESIFT_REPORT_H_

#include <cstddef>
#include <string>
#include <string_view>

#include "rulesift/classifier.h"
#include "rulesift/harness.h"
#include "rulesift/selection.h"

namespace rulesift {

// The artifact written by `select` and read by `classify` / `inspect`.
struct RuleSetDocument {
  RuleSetClassifier classifier;
  OrderPolicy order = OrderPolicy::kPrecision;
  std::size_t candidate_count = 0;
  ObjectiveVector objective;
  Proof proof = Proof::kExact;
};

std::string RuleSetToJson(const RuleSetDocument& document);
RuleSetDocument RuleSetFromJson(std::string_view text);  // Throws SchemaError.

// IF x2 > 4.5 AND x4 <= 2 THEN class=1 (support=10, precision=75%)
std::string RenderRule(const ClassifierRule& rule, const FeatureSchema& schema);

// One line per rule in firing order, then "ELSE class=<default>".
std::string RenderClassifier(const RuleSetClassifier& classifier);

std::string EvalReportToJson(const EvalReport& report);
std::string CrossValToJson(const CrossValReport& report);

// Aligned table: Dataset, Fold, |R|, # rule and the Acc./Prec./Rec./F1
// ratios. Failed folds show "-" in every numeric cell; undefined ratios show
// "n/a". The last row holds the means over successful folds.
std::string CrossValTable(const CrossValReport& report);

}  // namespace rulesift

#endif  // RULESIFT_REPORT_H_
