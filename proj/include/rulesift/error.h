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

#ifndef RULESIFT_ERROR_H_
#define RULESIFT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace rulesift {

// Failure categories surfaced by the library. The CLI maps them onto exit
// codes (see ExitCodeFor).
enum class ErrorCode {
  kSchema,             // Missing, extra or mistyped fields in an input document.
  kStructure,          // Malformed tree graph (cycle, orphan, bad child ref).
  kRange,              // Feature id or class label out of range.
  kFeatureMismatch,    // Instance arity or category code does not fit schema.
  kParse,              // Malformed CSV / text input.
  kUnknownCategory,    // Category string absent from the schema dictionary.
  kMissingLabel,       // Label column absent or empty label cell.
  kTooFewInstances,    // Stratification impossible for the requested k.
  kContradictoryPath,  // Root-to-node path with an empty feature region.
  kEmptyRuleSet,       // No candidate rule could be extracted.
  kZeroCoverage,       // Metrics requested for a rule that covers nothing.
  kInfeasible,         // Selection constraints cannot be satisfied.
  kSearchCapExceeded,  // Exact search refused: too many candidates.
  kEmptySelection,     // Classifier requested from an empty selection.
  kConfig,             // Invalid selection / objective configuration.
  kFoldCountMismatch,  // Harness manifest inconsistent with k.
  kSolverNotFound,
  kSolverTimeout,
  kSolverOutput,       // External solver output could not be parsed.
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Process exit status for a failure: 2 data error, 3 infeasible / no rules,
// 4 external solver error.
int ExitCodeFor(ErrorCode code);

}  // namespace rulesift

#endif  // RULESIFT_ERROR_H_
