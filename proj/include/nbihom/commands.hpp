#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nbihom/derivations.hpp"

namespace nbihom {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitValidation = 3,
  kExitHypothesis = 4,
  kExitFailure = 5,
};

struct CommandOptions {
  std::string command;
  std::vector<std::string> inputs;
  std::string output;
  std::string format = "text";

  std::string algebra, algebra2, module, assoc, bihom_assoc, subspace, map, map2, name;
  std::string construction;
  std::string kind = "der";
  std::string queries;
  std::string property = "all";
  std::string mode = "split";
  std::string variant = "der";
  std::vector<std::string> vectors;
  std::vector<std::size_t> slots;  // 1-based, as typed
  unsigned power = 1;
  std::size_t depth = 3;
  bool relaxed_slot = false;
  bool override_grading = false;
};

struct CommandResult {
  int exit_code = kExitOk;
  std::string out;  // report or document text
  std::string err;  // diagnostics
};

// One query: powers (k, r) and an optional degree list (empty = every candidate).
struct QuerySpec {
  unsigned k = 0;
  unsigned r = 0;
  std::vector<GroupElement> degrees;
};

// "k,r[,d1|d2];k,r…" with degree coordinates separated by '.'. Empty text gives
// k, r ∈ {0, 1} over all degrees. Throws std::invalid_argument.
std::vector<QuerySpec> parse_queries(const std::string& text, const GradingGroup& G);
QuerySet to_query_set(const std::vector<QuerySpec>& specs);

CommandResult run_command(const CommandOptions& opts);

}  // namespace nbihom
