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

#ifndef RULESIFT_DATASET_H_
#define RULESIFT_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rulesift/ensemble.h"

namespace rulesift {

// Labeled tabular data stored column-major so that a split condition can be
// evaluated over a whole column at once. Categorical values hold their
// dictionary index.
class Dataset {
 public:
  Dataset(FeatureSchema schema, int n_classes,
          std::vector<std::vector<double>> columns, std::vector<int> labels);

  const FeatureSchema& schema() const { return schema_; }
  int n_classes() const { return n_classes_; }
  std::size_t num_rows() const { return labels_.size(); }
  std::size_t num_features() const { return columns_.size(); }

  std::span<const double> column(std::size_t feature) const {
    return columns_[feature];
  }
  double value(std::size_t row, std::size_t feature) const {
    return columns_[feature][row];
  }
  std::span<const int> labels() const { return labels_; }
  int label(std::size_t row) const { return labels_[row]; }

  std::vector<double> Row(std::size_t row) const;
  std::vector<std::int64_t> ClassCounts() const;

  // Rows in the given order; indices must be in range.
  Dataset Subset(std::span<const std::size_t> rows) const;

  bool operator==(const Dataset& other) const;

 private:
  FeatureSchema schema_;
  int n_classes_;
  std::vector<std::vector<double>> columns_;
  std::vector<int> labels_;
};

// Parses an RFC-4180 style CSV with a header row. Feature columns are matched
// to the schema by name; other columns are ignored. Labels are integer class
// indices. Empty cells are rejected.
Dataset LoadCsv(std::string_view text, const FeatureSchema& schema,
                std::string_view label_column, int n_classes);
Dataset LoadCsvFile(const std::string& path, const FeatureSchema& schema,
                    std::string_view label_column, int n_classes);

// Inverse of LoadCsv: schema columns in order, then the label column.
std::string WriteCsv(const Dataset& dataset, std::string_view label_column);

struct FoldPlan {
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<std::size_t>> folds;  // Each sorted ascending.

  // Complement of fold `fold`, ascending.
  std::vector<std::size_t> TrainIndices(int fold) const;
};

// Per class (ascending label), the class's row indices are shuffled with a
// std::mt19937_64 seeded by `seed` and dealt round-robin across the folds;
// the deal position carries over from one class to the next. Bounded draws
// use rejection sampling on raw 64-bit outputs, so the plan is identical on
// every standard library.
FoldPlan StratifiedKFold(const Dataset& dataset, int k, std::uint64_t seed);

// Most frequent label; the lowest class index wins ties.
int MajorityClass(const Dataset& dataset);

}  // namespace rulesift

#endif  // RULESIFT_DATASET_H_
