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

#include "rulesift/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <unordered_map>

#include "rulesift/error.h"

namespace rulesift {

Dataset::Dataset(FeatureSchema schema, int n_classes,
                 std::vector<std::vector<double>> columns,
                 std::vector<int> labels)
    : schema_(std::move(schema)),
      n_classes_(n_classes),
      columns_(std::move(columns)),
      labels_(std::move(labels)) {
  if (columns_.size() != schema_.size()) {
    throw Error(ErrorCode::kFeatureMismatch, "column count differs from schema");
  }
  if (labels_.empty()) throw Error(ErrorCode::kParse, "dataset has no rows");
  for (const auto& col : columns_) {
    if (col.size() != labels_.size()) {
      throw Error(ErrorCode::kParse, "ragged columns");
    }
  }
  for (int y : labels_) {
    if (y < 0 || y >= n_classes_) {
      throw Error(ErrorCode::kRange, "label " + std::to_string(y) +
                                         " outside [0, n_classes)");
    }
  }
}

std::vector<double> Dataset::Row(std::size_t row) const {
  std::vector<double> out(columns_.size());
  for (std::size_t f = 0; f < columns_.size(); ++f) out[f] = columns_[f][row];
  return out;
}

std::vector<std::int64_t> Dataset::ClassCounts() const {
  std::vector<std::int64_t> counts(n_classes_, 0);
  for (int y : labels_) ++counts[y];
  return counts;
}

Dataset Dataset::Subset(std::span<const std::size_t> rows) const {
  std::vector<std::vector<double>> columns(columns_.size());
  for (std::size_t f = 0; f < columns_.size(); ++f) {
    columns[f].reserve(rows.size());
    for (std::size_t r : rows) columns[f].push_back(columns_[f][r]);
  }
  std::vector<int> labels;
  labels.reserve(rows.size());
  for (std::size_t r : rows) labels.push_back(labels_[r]);
  return Dataset(schema_, n_classes_, std::move(columns), std::move(labels));
}

bool Dataset::operator==(const Dataset& other) const {
  if (n_classes_ != other.n_classes_ || labels_ != other.labels_ ||
      schema_.size() != other.schema_.size()) {
    return false;
  }
  for (std::size_t f = 0; f < schema_.size(); ++f) {
    if (schema_[f].name != other.schema_[f].name ||
        schema_[f].kind != other.schema_[f].kind ||
        schema_[f].categories != other.schema_[f].categories) {
      return false;
    }
  }
  return columns_ == other.columns_;
}

// --- CSV --------------------------------------------------------------------

namespace {

// Splits one CSV document into records of fields. Quoted fields may contain
// separators, doubled quotes and line breaks.
std::vector<std::vector<std::string>> ParseRecords(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;
  auto end_record = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
    // Skip fully blank lines.
    if (!(record.size() == 1 && record.front().empty())) {
      records.push_back(std::move(record));
    }
    record.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started) {
          throw Error(ErrorCode::kParse,
                      "stray quote on line " + std::to_string(line));
        }
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
        break;
      case '\r':
        break;
      case '\n':
        ++line;
        end_record();
        break;
      default:
        field.push_back(c);
        field_started = true;
    }
  }
  if (in_quotes) throw Error(ErrorCode::kParse, "unterminated quoted field");
  if (field_started || !field.empty() || !record.empty()) end_record();
  return records;
}

std::string FormatDouble(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string QuoteIfNeeded(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos && !s.empty()) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

Dataset LoadCsv(std::string_view text, const FeatureSchema& schema,
                std::string_view label_column, int n_classes) {
  auto records = ParseRecords(text);
  if (records.empty()) throw Error(ErrorCode::kParse, "missing header row");
  const auto& header = records.front();
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t c = 0; c < header.size(); ++c) position.emplace(header[c], c);

  const auto label_it = position.find(std::string(label_column));
  if (label_it == position.end()) {
    throw Error(ErrorCode::kMissingLabel,
                "label column '" + std::string(label_column) + "' not found");
  }
  std::vector<std::size_t> feature_pos;
  for (const FeatureSpec& f : schema) {
    auto it = position.find(f.name);
    if (it == position.end()) {
      throw Error(ErrorCode::kParse, "feature column '" + f.name + "' not found");
    }
    feature_pos.push_back(it->second);
  }
  const std::size_t n = records.size() - 1;
  if (n == 0) throw Error(ErrorCode::kParse, "no data rows (n=0)");

  std::vector<std::vector<double>> columns(schema.size());
  for (auto& col : columns) col.reserve(n);
  std::vector<int> labels;
  labels.reserve(n);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const std::string where = "row " + std::to_string(r);
    if (rec.size() != header.size()) {
      throw Error(ErrorCode::kParse, where + ": expected " +
                                         std::to_string(header.size()) +
                                         " fields, got " +
                                         std::to_string(rec.size()));
    }
    for (std::size_t f = 0; f < schema.size(); ++f) {
      const std::string& cell = rec[feature_pos[f]];
      if (cell.empty()) {
        throw Error(ErrorCode::kParse,
                    where + ": missing value for '" + schema[f].name + "'");
      }
      if (schema[f].kind == FeatureKind::kCategorical) {
        const int code = schema[f].CategoryCode(cell);
        if (code < 0) {
          throw Error(ErrorCode::kUnknownCategory,
                      where + ": '" + cell + "' not in dictionary of '" +
                          schema[f].name + "'");
        }
        columns[f].push_back(code);
      } else {
        double v = 0;
        const auto [ptr, ec] =
            std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (ec != std::errc() || ptr != cell.data() + cell.size() ||
            !std::isfinite(v)) {
          throw Error(ErrorCode::kParse, where + ": bad number '" + cell +
                                             "' for '" + schema[f].name + "'");
        }
        columns[f].push_back(v);
      }
    }
    const std::string& cell = rec[label_it->second];
    if (cell.empty()) throw Error(ErrorCode::kMissingLabel, where + ": empty label");
    int y = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), y);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
      throw Error(ErrorCode::kParse, where + ": bad label '" + cell + "'");
    }
    labels.push_back(y);
  }
  return Dataset(schema, n_classes, std::move(columns), std::move(labels));
}

Dataset LoadCsvFile(const std::string& path, const FeatureSchema& schema,
                    std::string_view label_column, int n_classes) {
  return LoadCsv(ReadFile(path), schema, label_column, n_classes);
}

std::string WriteCsv(const Dataset& dataset, std::string_view label_column) {
  std::string out;
  for (const FeatureSpec& f : dataset.schema()) out += QuoteIfNeeded(f.name) + ",";
  out += QuoteIfNeeded(std::string(label_column)) + "\n";
  for (std::size_t r = 0; r < dataset.num_rows(); ++r) {
    for (std::size_t f = 0; f < dataset.num_features(); ++f) {
      const FeatureSpec& spec = dataset.schema()[f];
      const double v = dataset.value(r, f);
      out += spec.kind == FeatureKind::kCategorical
                 ? QuoteIfNeeded(spec.categories[static_cast<std::size_t>(v)])
                 : FormatDouble(v);
      out += ",";
    }
    out += std::to_string(dataset.label(r)) + "\n";
  }
  return out;
}

// --- Folds ------------------------------------------------------------------

namespace {

// Uniform draw in [0, bound) by rejection on raw generator output.
std::uint64_t UniformBelow(std::mt19937_64& gen, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = gen();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

std::vector<std::size_t> FoldPlan::TrainIndices(int fold) const {
  std::vector<std::size_t> out;
  for (int f = 0; f < k; ++f) {
    if (f != fold) out.insert(out.end(), folds[f].begin(), folds[f].end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

FoldPlan StratifiedKFold(const Dataset& dataset, int k, std::uint64_t seed) {
  if (k < 2) throw Error(ErrorCode::kTooFewInstances, "k must be >= 2");
  std::vector<std::vector<std::size_t>> by_class(dataset.n_classes());
  for (std::size_t r = 0; r < dataset.num_rows(); ++r) {
    by_class[dataset.label(r)].push_back(r);
  }
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    if (!by_class[c].empty() && by_class[c].size() < static_cast<std::size_t>(k)) {
      throw Error(ErrorCode::kTooFewInstances,
                  "class " + std::to_string(c) + " has " +
                      std::to_string(by_class[c].size()) + " instances, k=" +
                      std::to_string(k));
    }
  }
  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.folds.resize(k);
  std::mt19937_64 gen(seed);
  std::size_t deal = 0;
  for (auto& rows : by_class) {
    for (std::size_t i = rows.size(); i > 1; --i) {
      std::swap(rows[i - 1], rows[UniformBelow(gen, i)]);
    }
    for (std::size_t r : rows) {
      plan.folds[deal % k].push_back(r);
      ++deal;
    }
  }
  for (auto& fold : plan.folds) std::sort(fold.begin(), fold.end());
  return plan;
}

int MajorityClass(const Dataset& dataset) {
  return ArgMax(dataset.ClassCounts());
}

}  // namespace rulesift
