#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mulbasis/serialize.hpp"

namespace mulbasis {

inline constexpr const char* kVersion = "0.1.0";

struct RunConfig {
  std::string command;
  Json params = Json::object();
  u64 seed = 0;
  unsigned jobs = 1;
  std::string format = "auto";  // json, csv, text; auto picks per command
  u64 budget_nodes = 10'000'000;
};

// Parses {command, params, seed, jobs, format, budget_nodes}.
RunConfig config_from_json(const Json& j);

struct RunReport {
  RunConfig config;
  Json results = Json::array();
  std::vector<InequalityReport> checks;
  // False when a search stopped on its budget.
  bool complete = true;
  // Rows for csv output; the checks table is used when this is null.
  Json table;
  std::vector<std::string> table_columns;
  std::string default_format = "json";

  int exit_code() const;
  std::string render(std::string_view format = "auto") const;
};

const std::vector<std::string>& command_names();

// Throws ArgumentError for unknown commands and bad parameters.
RunReport run_command(const RunConfig& config);

// Seeded instance generators. Each (seed, trial) pair fixes the instance.
struct SumsetInstance {
  std::vector<TernaryVector> X;
  std::vector<TernaryVector> Y;
};
SumsetInstance lemma5_instance(std::size_t n, std::size_t x_size, std::size_t y_size, u64 seed, u64 trial);
SumsetInstance remark_instance(std::size_t n, std::size_t a_size, std::size_t b_size, u64 seed, u64 trial);

// A covering pair {a + m d} with a common prime power pushed into a and d so
// that gcd(v, g) > 1.
ReducedPair synthetic_unreduced_pair(u64 seed, u64 trial);

struct Lemma2Params {
  u64 u, v, M;
};
Lemma2Params lemma2_params(u64 seed, u64 trial, u64 u_max, u64 v_max, u64 M_max);

}  // namespace mulbasis
