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

#include "rulesift/asp.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "rulesift/error.h"

namespace rulesift {
namespace {

// Fact predicate and rule-level variable name of each metric.
struct MetricSymbols {
  const char* predicate;
  const char* variable;  // Used in optimize statements.
  const char* dominance_var;
  const char* dominance_tag;
};

MetricSymbols SymbolsOf(Metric metric) {
  switch (metric) {
    case Metric::kAccuracy: return {"accuracy", "A", "A", "acc"};
    case Metric::kErrorRate: return {"error_rate", "E", "E", "err"};
    case Metric::kPrecision: return {"precision", "P", "P", "prec"};
    case Metric::kRecall: return {"recall", "R", "R", "rec"};
    case Metric::kF1: return {"f1_score", "F", "F", "f1"};
    case Metric::kSupport: return {"support", "S", "Sp", "sup"};
    case Metric::kSize: return {"size", "L", "S", "size"};
    case Metric::kOverlap: return {"rule_overlap", "Cn", "Cn", "overlap"};
  }
  return {"?", "?", "?", "?"};
}

void Fact(std::string& out, const char* predicate, int a, std::int64_t b) {
  out += predicate;
  out += "(" + std::to_string(a) + "," + std::to_string(b) + ").\n";
}

std::string DominanceClauses(const SelectionConfig& config) {
  const auto& criteria = config.dominance_criteria;
  // Body atoms follow a fixed metric order; size comes first.
  static constexpr Metric kAtomOrder[] = {
      Metric::kSize,     Metric::kF1,     Metric::kSupport,  Metric::kAccuracy,
      Metric::kPrecision, Metric::kRecall, Metric::kErrorRate};
  std::vector<std::string> atom_groups;
  for (Metric m : kAtomOrder) {
    if (std::none_of(criteria.begin(), criteria.end(),
                     [m](const DominanceCriterion& c) { return c.metric == m; })) {
      continue;
    }
    const MetricSymbols s = SymbolsOf(m);
    atom_groups.push_back(std::string(s.predicate) + "(X," + s.dominance_var +
                          "x), " + s.predicate + "(Y," + s.dominance_var + "y)");
  }

  std::string out = ":- dominated.\n";
  std::vector<std::string> names;
  for (std::size_t strict = 0; strict < criteria.size(); ++strict) {
    std::string name;
    std::string comparisons;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
      const DominanceCriterion& c = criteria[i];
      const MetricSymbols s = SymbolsOf(c.metric);
      const bool max = c.direction == Direction::kMax;
      if (i > 0) {
        name += "_";
        comparisons += ", ";
      }
      name += std::string(max ? (i == strict ? "ge" : "geq")
                              : (i == strict ? "le" : "leq")) +
              "_" + s.dominance_tag;
      const char* op = max ? (i == strict ? " < " : " <= ")
                           : (i == strict ? " > " : " >= ");
      comparisons += std::string(s.dominance_var) + "x" + op + s.dominance_var + "y";
    }
    out += name + "(Y) :- selected(X), valid(Y), " + atom_groups.front() + ",\n";
    if (atom_groups.size() > 1) {
      out += "    ";
      for (std::size_t g = 1; g < atom_groups.size(); ++g) {
        out += atom_groups[g] + (g + 1 < atom_groups.size() ? ", " : ",\n");
      }
    }
    out += "    " + comparisons + ".\n";
    names.push_back(name);
  }
  for (const std::string& name : names) {
    out += "dominated :- valid(Y), " + name + "(Y).\n";
  }
  return out;
}

std::string WeightTerm(const char* variable, const ObjectiveTerm& t) {
  std::string w = variable;
  if (t.weight != 1) w += "*" + std::to_string(t.weight);
  if (t.priority != 0) w += "@" + std::to_string(t.priority);
  return w;
}

}  // namespace

std::string EmitFacts(std::span<const ScoredRule> rules, int n_classes) {
  std::string out;
  for (int k = 0; k < n_classes; ++k) out += "class(" + std::to_string(k) + ").\n";
  std::vector<const ScoredRule*> ordered;
  for (const ScoredRule& r : rules) ordered.push_back(&r);
  std::sort(ordered.begin(), ordered.end(),
            [](const ScoredRule* a, const ScoredRule* b) { return a->rule_id < b->rule_id; });
  for (const ScoredRule* r : ordered) {
    const RuleMetrics& m = r->metrics;
    const int x = r->rule_id;
    Fact(out, "accuracy", x, m.accuracy);
    for (int atom : r->atoms) Fact(out, "condition", x, atom);
    Fact(out, "error_rate", x, m.error_rate);
    Fact(out, "f1_score", x, m.f1);
    Fact(out, "precision", x, m.precision);
    Fact(out, "predict_class", x, r->predicted_class);
    Fact(out, "recall", x, m.recall);
    out += "rule(" + std::to_string(x) + ").\n";
    Fact(out, "size", x, m.size);
    Fact(out, "support", x, m.support);
  }
  return out;
}

std::string EmitProgram(const SelectionConfig& config,
                        const ObjectiveConfig& objectives) {
  config.Validate();
  objectives.Validate();
  std::string out;
  out += "% local constraints\n";
  out += "valid(X) :- rule(X), not invalid(X).\n";
  out += "invalid(X) :- rule(X), support(X,S), S < " +
         std::to_string(config.min_support) + ".\n\n";

  if (config.dominance_enabled) {
    out += "% pairwise constraints\n";
    out += DominanceClauses(config) + "\n";
  }

  out += "% global constraints\n";
  const std::string bounds_lo = std::to_string(config.per_class_min);
  const std::string bounds_hi = std::to_string(config.per_class_max);
  if (config.allow_empty_class) {
    out += "has_valid(K) :- predict_class(X,K), valid(X).\n";
    out += bounds_lo + " { selected(X) :  predict_class(X, K), valid(X) } " +
           bounds_hi + " :- class(K), has_valid(K).\n";
  } else {
    out += bounds_lo + " { selected(X) :  predict_class(X, K), valid(X) } " +
           bounds_hi + " :- class(K).\n";
  }
  out += ":- #sum { S,X : size(X,S), selected(X) } > " +
         std::to_string(config.total_size_cap) + ".\n\n";

  out += "% optimization\n";
  bool overlap_defined = false;
  for (const ObjectiveTerm& t : objectives.terms) {
    const char* statement = t.direction == Direction::kMax ? "#maximize" : "#minimize";
    const MetricSymbols s = SymbolsOf(t.metric);
    if (t.metric == Metric::kOverlap) {
      if (!overlap_defined) {
        out += "rule_overlap(X,Y,Cn) :- selected(X), selected(Y), X!=Y,\n"
               "    Cn = #count { Cx : Cx=Cy, condition(X,Cx), condition(Y,Cy) }.\n";
        overlap_defined = true;
      }
      const char* tuple =
          config.overlap_mode == OverlapMode::kTupleSet ? ",X,overlap" : ",X,Y,overlap";
      out += std::string(statement) + " { " + WeightTerm("Cn", t) + tuple +
             " : selected(X), selected(Y), rule_overlap(X,Y,Cn) }.\n";
      continue;
    }
    // The trailing tag keeps tuples of different statements distinct, so
    // equal weights on the same rule are not merged across statements.
    out += std::string(statement) + " { " + WeightTerm(s.variable, t) + ",X," +
           std::string(MetricName(t.metric)) + " : selected(X), " + s.predicate +
           "(X," + s.variable + ")}.\n";
  }
  out += "\n#show selected/1.\n";
  return out;
}

AspDocument EmitDocument(const SelectionProblem& problem) {
  return {EmitFacts(problem.rules(), problem.n_classes()),
          EmitProgram(problem.config(), problem.objectives())};
}

// --- Output parsing ---------------------------------------------------------

SolverResult ParseSolverOutput(std::string_view output) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= output.size()) {
    std::size_t end = output.find('\n', pos);
    if (end == std::string_view::npos) end = output.size();
    std::string_view line = output.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }

  SolverResult result;
  bool have_answer = false;
  bool unsat = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view line = lines[i];
    if (line.rfind("Answer:", 0) == 0) {
      have_answer = true;
      result.selected.clear();
      result.cost.clear();
      const std::string_view model = i + 1 < lines.size() ? lines[++i] : "";
      std::size_t p = 0;
      while ((p = model.find("selected(", p)) != std::string_view::npos) {
        p += 9;
        int id = 0;
        const auto [ptr, ec] = std::from_chars(model.data() + p, model.data() + model.size(), id);
        if (ec != std::errc() || ptr == model.data() + model.size() || *ptr != ')') {
          throw Error(ErrorCode::kSolverOutput,
                      "unreadable atom in model line: " + std::string(model));
        }
        result.selected.push_back(id);
        p = static_cast<std::size_t>(ptr - model.data());
      }
      std::sort(result.selected.begin(), result.selected.end());
    } else if (line.rfind("Optimization:", 0) == 0 && have_answer) {
      result.cost.clear();
      std::istringstream costs{std::string(line.substr(13))};
      std::int64_t c;
      while (costs >> c) result.cost.push_back(c);
      if (!costs.eof()) {
        throw Error(ErrorCode::kSolverOutput,
                    "unreadable cost line: " + std::string(line));
      }
    } else if (line == "OPTIMUM FOUND") {
      result.optimal = true;
    } else if (line == "UNSATISFIABLE") {
      unsat = true;
    } else if (line.find("INTERRUPTED") != std::string_view::npos ||
               line.rfind("TIME LIMIT", 0) == 0 || line == "UNKNOWN") {
      result.interrupted = true;
    }
  }
  if (!have_answer) {
    if (unsat) throw Error(ErrorCode::kInfeasible, "solver reports UNSATISFIABLE");
    if (result.interrupted) {
      throw Error(ErrorCode::kSolverTimeout, "no model found before the time limit");
    }
    throw Error(ErrorCode::kSolverOutput, "no answer set in solver output");
  }
  return result;
}

// --- Subprocess -------------------------------------------------------------

std::string FindExecutable(std::string_view name) {
  if (name.find('/') != std::string_view::npos) {
    const std::string path(name);
    return ::access(path.c_str(), X_OK) == 0 ? path : std::string();
  }
  const char* env = std::getenv("PATH");
  if (env == nullptr) return {};
  std::string_view dirs(env);
  std::size_t pos = 0;
  while (pos <= dirs.size()) {
    std::size_t end = dirs.find(':', pos);
    if (end == std::string_view::npos) end = dirs.size();
    std::string candidate(dirs.substr(pos, end - pos));
    if (!candidate.empty()) {
      candidate += "/";
      candidate += name;
      struct stat st {};
      if (::stat(candidate.c_str(), &st) == 0 && S_ISREG(st.st_mode) &&
          ::access(candidate.c_str(), X_OK) == 0) {
        return candidate;
      }
    }
    pos = end + 1;
  }
  return {};
}

SolverResult RunExternalSolver(const AspDocument& document,
                               const std::string& solver_path, int timeout_s,
                               const std::string& work_dir) {
  const std::string solver = FindExecutable(solver_path);
  if (solver.empty()) {
    throw Error(ErrorCode::kSolverNotFound, "no executable '" + solver_path + "'");
  }
  std::filesystem::create_directories(work_dir);
  const std::string rules_path = (std::filesystem::path(work_dir) / "rules.lp").string();
  const std::string select_path = (std::filesystem::path(work_dir) / "select.lp").string();
  WriteFile(rules_path, document.facts);
  WriteFile(select_path, document.program);

  int pipe_fds[2];
  if (::pipe(pipe_fds) != 0) throw Error(ErrorCode::kIo, "pipe() failed");
  const std::string time_limit = "--time-limit=" + std::to_string(timeout_s);
  const pid_t pid = ::fork();
  if (pid < 0) throw Error(ErrorCode::kIo, "fork() failed");
  if (pid == 0) {
    ::dup2(pipe_fds[1], STDOUT_FILENO);
    const int devnull = ::open("/dev/null", O_WRONLY);
    if (devnull >= 0) ::dup2(devnull, STDERR_FILENO);
    ::close(pipe_fds[0]);
    ::close(pipe_fds[1]);
    const char* argv[] = {solver.c_str(), rules_path.c_str(), select_path.c_str(),
                          "--quiet=1", time_limit.c_str(), nullptr};
    ::execv(solver.c_str(), const_cast<char* const*>(argv));
    ::_exit(127);
  }
  ::close(pipe_fds[1]);

  // The solver enforces its own limit; the grace period only guards against
  // a process that ignores it.
  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::seconds(timeout_s + 10);
  std::string output;
  char buffer[4096];
  bool killed = false;
  for (;;) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      ::kill(pid, SIGKILL);
      killed = true;
      break;
    }
    pollfd pfd{pipe_fds[0], POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(std::min<long long>(left.count(), 1000)));
    if (ready < 0 && errno != EINTR) break;
    if (ready <= 0) continue;
    const ssize_t got = ::read(pipe_fds[0], buffer, sizeof(buffer));
    if (got <= 0) break;
    output.append(buffer, static_cast<std::size_t>(got));
  }
  ::close(pipe_fds[0]);
  int status = 0;
  ::waitpid(pid, &status, 0);
  if (!killed && WIFEXITED(status) && WEXITSTATUS(status) == 127) {
    throw Error(ErrorCode::kSolverNotFound, "could not execute '" + solver + "'");
  }
  SolverResult result = ParseSolverOutput(output);
  if (killed) result.interrupted = true;
  if (result.interrupted) result.optimal = false;
  return result;
}

}  // namespace rulesift
