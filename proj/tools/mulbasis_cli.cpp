// Batch driver over the mulbasis C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mulbasis/mulbasis.h"

namespace {

enum class Kind { Int, Str, List, Flag };

struct Option {
  const char* flag;  // long name without dashes
  const char* key;   // parameter name passed to the library
  Kind kind;
  const char* help;
};

struct Spec {
  const char* name;
  const char* help;
  std::vector<Option> options;
};

const std::vector<Spec>& specs() {
  static const std::vector<Spec> table = {
      {"primes", "Sieve primes and factorize values",
       {{"limit", "limit", Kind::Int, "sieve limit"},
        {"list", "list", Kind::Flag, "print every prime (limit <= 10^6)"},
        {"factor", "factor", Kind::List, "comma-separated values to factorize"}}},
      {"min-basis", "Exact minimum multiplicative basis",
       {{"interval", "interval", Kind::Int, "target set [1..M]"},
        {"set", "set", Kind::List, "explicit comma-separated target set"},
        {"a", "a", Kind::Int, "progression offset"},
        {"d", "d", Kind::Int, "progression step"},
        {"M", "M", Kind::Int, "progression length"}}},
      {"interval-basis", "Construct and verify the interval basis",
       {{"M", "M", Kind::Int, "interval length"}, {"list", "list", Kind::Flag, "include basis and witness"}}},
      {"mbp-search", "Smallest basis over a range of progressions",
       {{"M", "M", Kind::Int, "progression length"},
        {"a-max", "a_max", Kind::Int, "largest offset (default 2M)"},
        {"d-max", "d_max", Kind::Int, "largest step (default 2M)"}}},
      {"reduce", "Reduce a (progression, basis) pair",
       {{"a", "a", Kind::Int, "progression offset"},
        {"d", "d", Kind::Int, "progression step"},
        {"M", "M", Kind::Int, "progression length"},
        {"basis", "basis", Kind::List, "comma-separated basis"},
        {"certify", "certify", Kind::Flag, "certify a lower bound on the reduced pair"},
        {"trials", "trials", Kind::Int, "run seeded synthetic pairs instead"}}},
      {"lemma2-check", "Divisibility of the surviving product into (M-1)!",
       {{"u", "u", Kind::Int, "offset"},
        {"v", "v", Kind::Int, "step"},
        {"M", "M", Kind::Int, "length"},
        {"trials", "trials", Kind::Int, "seeded random (u, v, M) instead"},
        {"u-max", "u_max", Kind::Int, "largest random u"},
        {"v-max", "v_max", Kind::Int, "largest random v"},
        {"M-max", "M_max", Kind::Int, "largest random M"}}},
      {"sphere-enumerate", "Enumerate a Hamming sphere",
       {{"n", "n", Kind::Int, "dimension"},
        {"k", "k", Kind::Int, "weight"},
        {"list", "list", Kind::Flag, "print the vectors"}}},
      {"sphere-cases", "Census of differences of weight-3 vectors",
       {{"n", "n", Kind::Int, "dimension"},
        {"n-min", "n_min", Kind::Int, "first dimension"},
        {"n-max", "n_max", Kind::Int, "last dimension"},
        {"case", "case", Kind::Str, "only this case: 0, 1, 2 or 3"}}},
      {"sphere-min-basis", "Exact minimum additive basis of the 3-sphere",
       {{"n", "n", Kind::Int, "dimension (<= 6)"}}},
      {"sphere-construct", "Verify the S1 + S2 construction",
       {{"n", "n", Kind::Int, "dimension"},
        {"n-min", "n_min", Kind::Int, "first dimension"},
        {"n-max", "n_max", Kind::Int, "last dimension"}}},
      {"lemma5-check", "Seeded trials of the sumset bound on S2",
       {{"n", "n", Kind::Int, "dimension"},
        {"x-size", "x_size", Kind::Int, "|X|"},
        {"y-size", "y_size", Kind::Int, "|Y| (default n^2/100)"},
        {"trials", "trials", Kind::Int, "number of trials"}}},
      {"remark-check", "Seeded trials of the tight and loose S2 sumset bounds",
       {{"n", "n", Kind::Int, "dimension"},
        {"a-size", "a_size", Kind::Int, "|A|"},
        {"b-size", "b_size", Kind::Int, "|B|"},
        {"trials", "trials", Kind::Int, "number of trials"}}},
      {"lemma4-report", "Pairing-graph inequalities for a sphere basis",
       {{"n", "n", Kind::Int, "dimension"}, {"basis", "basis", Kind::Str, "s1s2 (default) or full"}}},
      {"theorem1-analyze", "End-to-end lower bound for the interval basis",
       {{"M", "M", Kind::Int, "interval length"}}},
  };
  return table;
}

int status_exit(mb_status s) {
  switch (s) {
    case MB_OK: return 0;
    case MB_CHECK_FAILED:
    case MB_ERR_INVARIANT:
    case MB_ERR_INTERNAL: return 1;
    default: return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiplicative and additive basis experiments"};
  app.require_subcommand(0, 1);

  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string format = "auto";
  std::optional<std::uint64_t> budget;
  std::string out_path;
  bool version = false;
  app.add_option("--seed", seed, "seed for randomized checks")->capture_default_str();
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
  app.add_option("--format", format, "json, csv, text or auto")
      ->check(CLI::IsMember({"auto", "json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("--budget-nodes", budget, "search node budget");
  app.add_option("--out", out_path, "write the report to FILE");
  app.add_flag("--version", version, "print the library version");

  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::map<std::string, bool>> flags;
  std::vector<std::pair<const Spec*, CLI::App*>> subs;
  for (const auto& spec : specs()) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    sub->fallthrough();
    for (const auto& opt : spec.options) {
      const std::string name = std::string("--") + opt.flag;
      if (opt.kind == Kind::Flag)
        sub->add_flag(name, flags[spec.name][opt.key], opt.help);
      else
        sub->add_option(name, values[spec.name][opt.key], opt.help);
    }
    subs.emplace_back(&spec, sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (version) {
    std::cout << mb_version() << "\n";
    return 0;
  }

  const Spec* chosen = nullptr;
  CLI::App* chosen_app = nullptr;
  for (auto& [spec, sub] : subs)
    if (sub->parsed()) {
      chosen = spec;
      chosen_app = sub;
    }
  if (!chosen) {
    std::cerr << app.help();
    return 2;
  }

  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& opt : chosen->options) {
    const std::string name = std::string("--") + opt.flag;
    if (chosen_app->count(name) == 0) continue;
    switch (opt.kind) {
      case Kind::Flag: params[opt.key] = flags[chosen->name][opt.key]; break;
      case Kind::Str:
      case Kind::List: params[opt.key] = values[chosen->name][opt.key]; break;
      case Kind::Int: {
        const std::string& text = values[chosen->name][opt.key];
        try {
          std::size_t pos = 0;
          if (text.empty() || text[0] == '-') throw std::invalid_argument(text);
          const unsigned long long x = std::stoull(text, &pos);
          if (pos != text.size()) throw std::invalid_argument(text);
          params[opt.key] = static_cast<std::uint64_t>(x);
        } catch (const std::exception&) {
          std::cerr << "error: " << name << " expects a nonnegative integer, got '" << text << "'\n";
          return 2;
        }
        break;
      }
    }
  }

  nlohmann::ordered_json config{{"command", chosen->name}, {"params", params}, {"seed", seed}, {"jobs", jobs},
                                {"format", format}};
  if (budget) config["budget_nodes"] = *budget;

  mb_report* report = nullptr;
  const mb_status status = mb_run(config.dump().c_str(), &report);
  if (status != MB_OK) {
    std::cerr << "error: " << mb_last_error() << "\n";
    if (status == MB_ERR_ARGUMENT) std::cerr << chosen_app->help();
    return status_exit(status);
  }
  const char* text = mb_report_render(report, nullptr);
  if (!text) {
    std::cerr << "error: " << mb_last_error() << "\n";
    mb_report_destroy(report);
    return 2;
  }
  if (out_path.empty()) {
    std::fputs(text, stdout);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << text;
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      mb_report_destroy(report);
      return 2;
    }
  }
  const int code = mb_report_exit_code(report);
  mb_report_destroy(report);
  return code;
}
