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


#include "rulesift/config.h"

#include <charconv>
#include <set>
#include <vector>

#include "rulesift/ensemble.h"
#include "rulesift/error.h"

namespace rulesift {
namespace {

[[noreturn]] void Fail(int line, const std::string& message) {
  throw Error(ErrorCode::kConfig,
              (line > 0 ? "line " + std::to_string(line) + ": " : "") + message);
}

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> SplitList(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t end = s.find(sep, pos);
    if (end == std::string_view::npos) end = s.size();
    out.push_back(Trim(s.substr(pos, end - pos)));
    pos = end + 1;
  }
  return out;
}

// Drops a trailing comment that is not inside a quoted string.
std::string_view StripComment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

struct Value {
  std::string text;
  bool quoted = false;
  int line = 0;
};

int AsInt(const Value& v, const std::string& key) {
  int out = 0;
  const char* end = v.text.data() + v.text.size();
  const auto [ptr, ec] = std::from_chars(v.text.data(), end, out);
  if (v.quoted || ec != std::errc() || ptr != end) {
    Fail(v.line, key + " expects an integer");
  }
  return out;
}

bool AsBool(const Value& v, const std::string& key) {
  if (!v.quoted && v.text == "true") return true;
  if (!v.quoted && v.text == "false") return false;
  Fail(v.line, key + " expects true or false");
}

Direction ParseDirection(std::string_view s, int line) {
  if (s == "max") return Direction::kMax;
  if (s == "min") return Direction::kMin;
  Fail(line, "direction must be max or min, got '" + std::string(s) + "'");
}

std::vector<DominanceCriterion> ParseCriteria(const Value& v) {
  std::vector<DominanceCriterion> out;
  for (std::string_view item : SplitList(v.text, ',')) {
    const auto parts = SplitList(item, ':');
    if (parts.size() != 2) Fail(v.line, "criterion must read metric:direction");
    out.push_back({ParseMetric(parts[0]), ParseDirection(parts[1], v.line)});
  }
  return out;
}

std::vector<ObjectiveTerm> ParseTerms(const Value& v) {
  std::vector<ObjectiveTerm> out;
  if (Trim(v.text).empty()) return out;
  for (std::string_view item : SplitList(v.text, ',')) {
    const auto parts = SplitList(item, ':');
    if (parts.size() < 2 || parts.size() > 4) {
      Fail(v.line, "objective term must read metric:direction[:weight[:priority]]");
    }
    ObjectiveTerm term{ParseMetric(parts[0]), ParseDirection(parts[1], v.line)};
    for (std::size_t i = 2; i < parts.size(); ++i) {
      const Value part{std::string(parts[i]), false, v.line};
      (i == 2 ? term.weight : term.priority) = AsInt(part, "objective term");
    }
    out.push_back(term);
  }
  return out;
}

std::string_view OverlapModeName(OverlapMode mode) {
  return mode == OverlapMode::kTupleSet ? "tuple_set" : "pairwise_sum";
}

}  // namespace

PipelineConfig ParseConfig(std::string_view text) {
  PipelineConfig config;
  SelectionConfig& sel = config.selection;
  std::string section;
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = Trim(StripComment(text.substr(pos, end - pos)));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') Fail(line_no, "unterminated section header");
      section = std::string(Trim(line.substr(1, line.size() - 2)));
      if (section != "constraints" && section != "objectives" &&
          section != "classifier" && section != "solver") {
        Fail(line_no, "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) Fail(line_no, "expected key = value");
    const std::string key(Trim(line.substr(0, eq)));
    std::string_view raw = Trim(line.substr(eq + 1));
    Value v{std::string(raw), false, line_no};
    if (!raw.empty() && raw.front() == '"') {
      if (raw.size() < 2 || raw.back() != '"') Fail(line_no, "unterminated string");
      v.text = std::string(raw.substr(1, raw.size() - 2));
      v.quoted = true;
    }
    if (section.empty()) Fail(line_no, "key outside of a section");
    if (!seen.insert(section + "." + key).second) {
      Fail(line_no, "duplicate key " + section + "." + key);
    }

    if (section == "constraints") {
      if (key == "min_support") sel.min_support = AsInt(v, key);
      else if (key == "per_class_min") sel.per_class_min = AsInt(v, key);
      else if (key == "per_class_max") sel.per_class_max = AsInt(v, key);
      else if (key == "total_size_cap") sel.total_size_cap = AsInt(v, key);
      else if (key == "dominance") sel.dominance_enabled = AsBool(v, key);
      else if (key == "dominance_criteria") sel.dominance_criteria = ParseCriteria(v);
      else if (key == "allow_empty_class") sel.allow_empty_class = AsBool(v, key);
      else if (key == "exact_search_cap") sel.exact_search_cap = AsInt(v, key);
      else if (key == "force_exact") sel.force_exact = AsBool(v, key);
      else if (key == "overlap_mode") {
        if (v.text == "tuple_set") sel.overlap_mode = OverlapMode::kTupleSet;
        else if (v.text == "pairwise_sum") sel.overlap_mode = OverlapMode::kPairwiseSum;
        else Fail(line_no, "overlap_mode must be tuple_set or pairwise_sum");
      } else {
        Fail(line_no, "unknown key constraints." + key);
      }
    } else if (section == "objectives") {
      if (key == "terms") config.objectives.terms = ParseTerms(v);
      else Fail(line_no, "unknown key objectives." + key);
    } else if (section == "classifier") {
      if (key == "order") config.order = ParseOrderPolicy(v.text);
      else Fail(line_no, "unknown key classifier." + key);
    } else {
      if (key == "backend") {
        if (v.text == "native") config.solver.backend = Backend::kNative;
        else if (v.text == "asp") config.solver.backend = Backend::kAsp;
        else Fail(line_no, "backend must be native or asp");
      } else if (key == "path") {
        config.solver.path = v.text;
      } else if (key == "timeout") {
        config.solver.timeout_s = AsInt(v, key);
        if (config.solver.timeout_s <= 0) Fail(line_no, "timeout must be positive");
      } else {
        Fail(line_no, "unknown key solver." + key);
      }
    }
  }
  config.selection.Validate();
  config.objectives.Validate();
  return config;
}

PipelineConfig LoadConfigFile(const std::string& path) {
  return ParseConfig(ReadFile(path));
}

std::string FormatConfig(const PipelineConfig& config) {
  const SelectionConfig& s = config.selection;
  auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  auto dir = [](Direction d) { return std::string(d == Direction::kMax ? "max" : "min"); };
  std::string criteria;
  for (const DominanceCriterion& c : s.dominance_criteria) {
    if (!criteria.empty()) criteria += ", ";
    criteria += std::string(MetricName(c.metric)) + ":" + dir(c.direction);
  }
  std::string terms;
  for (const ObjectiveTerm& t : config.objectives.terms) {
    if (!terms.empty()) terms += ", ";
    terms += std::string(MetricName(t.metric)) + ":" + dir(t.direction) + ":" +
             std::to_string(t.weight) + ":" + std::to_string(t.priority);
  }
  std::string out = "[constraints]\n";
  out += "min_support = " + std::to_string(s.min_support) + "\n";
  out += "per_class_min = " + std::to_string(s.per_class_min) + "\n";
  out += "per_class_max = " + std::to_string(s.per_class_max) + "\n";
  out += "total_size_cap = " + std::to_string(s.total_size_cap) + "\n";
  out += "dominance = " + b(s.dominance_enabled) + "\n";
  out += "dominance_criteria = \"" + criteria + "\"\n";
  out += "allow_empty_class = " + b(s.allow_empty_class) + "\n";
  out += "exact_search_cap = " + std::to_string(s.exact_search_cap) + "\n";
  out += "force_exact = " + b(s.force_exact) + "\n";
  out += "overlap_mode = \"" + std::string(OverlapModeName(s.overlap_mode)) + "\"\n";
  out += "\n[objectives]\nterms = \"" + terms + "\"\n";
  out += "\n[classifier]\norder = \"" + std::string(OrderPolicyName(config.order)) + "\"\n";
  out += "\n[solver]\nbackend = \"";
  out += config.solver.backend == Backend::kNative ? "native" : "asp";
  out += "\"\npath = \"" + config.solver.path + "\"\n";
  out += "timeout = " + std::to_string(config.solver.timeout_s) + "\n";
  return out;
}

}  // namespace rulesift
