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


#ifndef RULESIFT_CONFIG_H_
#define RULESIFT_CONFIG_H_

#include <string>
#include <string_view>

#include "rulesift/classifier.h"
#include "rulesift/selection.h"

namespace rulesift {

enum class Backend { kNative, kAsp };

struct SolverSettings {
  Backend backend = Backend::kNative;
  std::string path = "clingo";
  int timeout_s = 600;
};

struct PipelineConfig {
  SelectionConfig selection;
  ObjectiveConfig objectives;
  OrderPolicy order = OrderPolicy::kPrecision;
  SolverSettings solver;
};

// Reads a flat TOML-style file:
//
//   [constraints]
//   min_support = 10
//   dominance_criteria = "f1:max, size:min, support:max"
//   [objectives]
//   terms = "accuracy:max:1:0, support:max:1:0, size:min:1:0, overlap:min:1:0"
//   [classifier]
//   order = "precision"
//   [solver]
//   backend = "native"
//
// Keys not given keep their defaults. Unknown sections or keys, duplicate
// keys and malformed values raise ConfigError.
PipelineConfig ParseConfig(std::string_view text);
PipelineConfig LoadConfigFile(const std::string& path);

// Inverse of ParseConfig; lists every key.
std::string FormatConfig(const PipelineConfig& config);

}  // namespace rulesift

#endif  // RULESIFT_CONFIG_H_
