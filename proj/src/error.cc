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

#include "rulesift/error.h"

namespace rulesift {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSchema: return "SchemaError";
    case ErrorCode::kStructure: return "StructureError";
    case ErrorCode::kRange: return "RangeError";
    case ErrorCode::kFeatureMismatch: return "FeatureMismatch";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kUnknownCategory: return "UnknownCategory";
    case ErrorCode::kMissingLabel: return "MissingLabel";
    case ErrorCode::kTooFewInstances: return "TooFewInstances";
    case ErrorCode::kContradictoryPath: return "ContradictoryPath";
    case ErrorCode::kEmptyRuleSet: return "EmptyRuleSet";
    case ErrorCode::kZeroCoverage: return "ZeroCoverage";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kSearchCapExceeded: return "SearchCapExceeded";
    case ErrorCode::kEmptySelection: return "EmptySelection";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kFoldCountMismatch: return "FoldCountMismatch";
    case ErrorCode::kSolverNotFound: return "SolverNotFound";
    case ErrorCode::kSolverTimeout: return "SolverTimeout";
    case ErrorCode::kSolverOutput: return "OutputParseError";
    case ErrorCode::kIo: return "IoError";
  }
  return "Error";
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInfeasible:
    case ErrorCode::kEmptyRuleSet:
    case ErrorCode::kEmptySelection:
      return 3;
    case ErrorCode::kSolverNotFound:
    case ErrorCode::kSolverTimeout:
    case ErrorCode::kSolverOutput:
      return 4;
    default:
      return 2;
  }
}

}  // namespace rulesift
