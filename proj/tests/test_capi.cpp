#include <doctest.h>

#include <algorithm>
#include <cstring>
#include <string>
#include <vector>

#include "mulbasis/mulbasis.h"

TEST_CASE("version and command list") {
  CHECK(std::string(mb_version()) == "0.1.0");
  std::vector<std::string> names;
  for (const char* p = mb_command_names(); *p; p += std::strlen(p) + 1) names.emplace_back(p);
  CHECK(names.size() == 14);
  CHECK(std::find(names.begin(), names.end(), "theorem1-analyze") != names.end());
}

TEST_CASE("prime table handle") {
  mb_prime_table* t = nullptr;
  REQUIRE(mb_prime_table_create(1000, &t) == MB_OK);
  CHECK(mb_prime_table_limit(t) == 1000);
  CHECK(mb_prime_count(t, 1000) == 168);

  uint64_t primes[4];
  unsigned exps[4];
  size_t count = 0;
  REQUIRE(mb_factorize(t, 360, primes, exps, 4, &count) == MB_OK);
  REQUIRE(count == 3);
  CHECK(primes[0] == 2);
  CHECK(exps[0] == 3);
  CHECK(primes[2] == 5);
  CHECK(mb_factorize(t, 1009ull * 1013ull, primes, exps, 4, &count) == MB_ERR_INCOMPLETE_TABLE);
  CHECK(std::string(mb_last_error()).find("cofactor") != std::string::npos);
  CHECK(mb_factorize(t, 0, primes, exps, 4, &count) == MB_ERR_ARGUMENT);
  CHECK(mb_factorize(nullptr, 6, primes, exps, 4, &count) == MB_ERR_ARGUMENT);
  mb_prime_table_destroy(t);

  CHECK(mb_prime_table_create(0, &t) == MB_ERR_ARGUMENT);
  CHECK(mb_prime_table_create(UINT64_MAX, &t) == MB_ERR_RESOURCE);
}

TEST_CASE("scalar helpers") {
  unsigned v = 0;
  REQUIRE(mb_valuation(2, 48, &v) == MB_OK);
  CHECK(v == 4);
  CHECK(mb_valuation(6, 48, &v) == MB_ERR_ARGUMENT);
  unsigned k = 0;
  REQUIRE(mb_shift_into_interval(3, 10, 20, &k) == MB_OK);
  CHECK(k == 2);
  CHECK(mb_shift_into_interval(0, 10, 20, &k) == MB_ERR_ARGUMENT);
}

TEST_CASE("cover check") {
  const uint64_t targets[] = {1, 2, 3, 4, 5, 6};
  const uint64_t good[] = {1, 2, 3, 5};
  const uint64_t bad[] = {1, 2, 5};
  int covered = -1;
  uint64_t missed = 0;
  REQUIRE(mb_verify_cover(targets, 6, good, 4, &covered, &missed) == MB_OK);
  CHECK(covered == 1);
  REQUIRE(mb_verify_cover(targets, 6, bad, 3, &covered, &missed) == MB_OK);
  CHECK(covered == 0);
  CHECK(missed == 3);
}

TEST_CASE("run and render") {
  mb_report* r = nullptr;
  REQUIRE(mb_run(R"({"command":"interval-basis","params":{"M":1000}})", &r) == MB_OK);
  CHECK(mb_report_exit_code(r) == 0);
  const std::string json = mb_report_render(r, "json");
  CHECK(json.find("\"version\": \"0.1.0\"") != std::string::npos);
  const std::string csv = mb_report_render(r, "csv");
  CHECK(csv.rfind("name,lhs,rhs,hypotheses_ok,holds\n", 0) == 0);
  CHECK(mb_report_render(r, "yaml") == nullptr);
  CHECK(mb_last_error()[0] != '\0');
  mb_report_destroy(r);

  CHECK(mb_run("{not json", &r) == MB_ERR_ARGUMENT);
  CHECK(r == nullptr);
  CHECK(mb_run(R"({"command":"nope"})", &r) == MB_ERR_ARGUMENT);
  CHECK(mb_run(nullptr, &r) == MB_ERR_ARGUMENT);
  CHECK(mb_report_exit_code(nullptr) == 2);
}

TEST_CASE("errors are per thread and cleared on success") {
  mb_report* r = nullptr;
  CHECK(mb_run(R"({"command":"nope"})", &r) == MB_ERR_ARGUMENT);
  CHECK(mb_last_error()[0] != '\0');
  unsigned v = 0;
  CHECK(mb_valuation(3, 9, &v) == MB_OK);
  CHECK(mb_last_error()[0] == '\0');
}
