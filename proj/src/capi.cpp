#include "mulbasis/mulbasis.h"

#include <cstring>
#include <new>

#include "mulbasis/commands.hpp"
#include "mulbasis/error.hpp"

struct mb_prime_table {
  mulbasis::PrimeTable table;
};

struct mb_report {
  mulbasis::RunReport report;
  std::string rendered;
};

namespace {

thread_local std::string last_error;

template <class F>
mb_status guard(F&& fn) {
  try {
    last_error.clear();
    return fn();
  } catch (const mulbasis::IncompleteTableError& e) {
    last_error = e.what();
    return MB_ERR_INCOMPLETE_TABLE;
  } catch (const mulbasis::ArgumentError& e) {
    last_error = e.what();
    return MB_ERR_ARGUMENT;
  } catch (const mulbasis::ResourceError& e) {
    last_error = e.what();
    return MB_ERR_RESOURCE;
  } catch (const mulbasis::InvariantViolation& e) {
    last_error = e.what();
    return MB_ERR_INVARIANT;
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("malformed JSON: ") + e.what();
    return MB_ERR_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return MB_ERR_RESOURCE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return MB_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return MB_ERR_INTERNAL;
  }
}

mb_status null_argument(const char* what) {
  last_error = std::string(what) + " must not be null";
  return MB_ERR_ARGUMENT;
}

}  // namespace

extern "C" {

const char* mb_version(void) { return mulbasis::kVersion; }

const char* mb_last_error(void) { return last_error.c_str(); }

mb_status mb_prime_table_create(uint64_t limit, mb_prime_table** out) {
  if (!out) return null_argument("out");
  return guard([&] {
    *out = new mb_prime_table{mulbasis::sieve(limit)};
    return MB_OK;
  });
}

void mb_prime_table_destroy(mb_prime_table* table) { delete table; }

uint64_t mb_prime_table_limit(const mb_prime_table* table) { return table ? table->table.limit() : 0; }

uint64_t mb_prime_count(const mb_prime_table* table, uint64_t x) {
  return table ? table->table.prime_count(x) : 0;
}

mb_status mb_factorize(const mb_prime_table* table, uint64_t x, uint64_t* primes, unsigned* exponents,
                       size_t capacity, size_t* count) {
  if (!table) return null_argument("table");
  if (!count) return null_argument("count");
  if (capacity && (!primes || !exponents)) return null_argument("output arrays");
  return guard([&] {
    const auto f = mulbasis::factorize(x, table->table);
    std::size_t i = 0;
    for (auto [p, e] : f.factors) {
      if (i < capacity) {
        primes[i] = p;
        exponents[i] = e;
      }
      ++i;
    }
    *count = i;
    return MB_OK;
  });
}

mb_status mb_valuation(uint64_t p, uint64_t x, unsigned* out) {
  if (!out) return null_argument("out");
  return guard([&] {
    *out = mulbasis::valuation(p, x);
    return MB_OK;
  });
}

mb_status mb_shift_into_interval(uint64_t x, uint64_t a, uint64_t M, unsigned* k) {
  if (!k) return null_argument("k");
  return guard([&] {
    *k = mulbasis::shift_into_interval(x, a, M);
    return MB_OK;
  });
}

mb_status mb_verify_cover(const uint64_t* targets, size_t n_targets, const uint64_t* basis, size_t n_basis,
                          int* covered, uint64_t* uncovered) {
  if (!covered) return null_argument("covered");
  if ((n_targets && !targets) || (n_basis && !basis)) return null_argument("input arrays");
  return guard([&] {
    const auto r = mulbasis::verify_cover(std::span<const uint64_t>(targets, n_targets),
                                          std::span<const uint64_t>(basis, n_basis));
    *covered = r.ok() ? 1 : 0;
    if (uncovered) *uncovered = r.ok() ? 0 : *r.uncovered;
    return MB_OK;
  });
}

mb_status mb_run(const char* config_json, mb_report** report) {
  if (!config_json) return null_argument("config_json");
  if (!report) return null_argument("report");
  *report = nullptr;
  return guard([&] {
    const auto config = mulbasis::config_from_json(mulbasis::Json::parse(config_json));
    *report = new mb_report{mulbasis::run_command(config), {}};
    return MB_OK;
  });
}

int mb_report_exit_code(const mb_report* report) { return report ? report->report.exit_code() : 2; }

const char* mb_report_render(mb_report* report, const char* format) {
  if (!report) {
    null_argument("report");
    return nullptr;
  }
  const mb_status s = guard([&] {
    report->rendered = report->report.render(format ? format : "auto");
    return MB_OK;
  });
  return s == MB_OK ? report->rendered.c_str() : nullptr;
}

void mb_report_destroy(mb_report* report) { delete report; }

const char* mb_command_names(void) {
  static const std::string names = [] {
    std::string out;
    for (const auto& n : mulbasis::command_names()) {
      out += n;
      out.push_back('\0');
    }
    return out;
  }();
  return names.c_str();
}

}  // extern "C"
