#include <doctest.h>

#include <numeric>
#include <set>

#include "mulbasis/commands.hpp"
#include "mulbasis/error.hpp"
#include "mulbasis/reduction.hpp"
#include "oracles.hpp"

using namespace mulbasis;

namespace {

bool naive_cover(const IntSet& A, const IntSet& B) {
  for (u64 a : A) {
    bool ok = false;
    for (u64 b : B)
      if (a % b == 0 && std::binary_search(B.begin(), B.end(), a / b)) ok = true;
    if (!ok) return false;
  }
  return true;
}

mpz_class naive_product(const IntSet& B) {
  mpz_class p = 1;
  for (u64 b : B) p *= static_cast<unsigned long>(b);
  return p;
}

}  // namespace

TEST_CASE("progression normal form") {
  const auto ap = APSpec::from_progression(12, 18, 4);
  CHECK(ap.g == 6);
  CHECK(ap.u == 2);
  CHECK(ap.v == 3);
  CHECK(ap.elements() == IntSet{30, 48, 66, 84});
  CHECK(ap.normalized());
  CHECK_FALSE(ap.reduced());
  CHECK(APSpec::from_progression(0, 1, 5).reduced());
  CHECK_THROWS_AS(APSpec::from_progression(1, 0, 5), ArgumentError);
}

TEST_CASE("reduction of a worked example") {
  ReducedPair in;
  in.ap = APSpec::from_progression(4, 8, 3);  // 12, 20, 28
  in.basis = {2, 6, 10, 14};
  const auto out = reduce_pair(in);
  CHECK(out.reduced);
  CHECK(out.ap.elements() == IntSet{3, 5, 7});
  CHECK(out.basis == IntSet{1, 3, 5, 7});
  REQUIRE(out.steps.size() == 1);
  CHECK(out.steps[0].prime == 2);
  CHECK(out.steps[0].product_before == "1680");
  CHECK(out.steps[0].product_after == "105");
}

TEST_CASE("reduction rejects a non-cover") {
  ReducedPair in;
  in.ap = APSpec::from_progression(4, 8, 3);
  in.basis = {2, 6};
  CHECK_THROWS_AS(reduce_pair(in), ArgumentError);
}

TEST_CASE("seeded synthetic pairs reduce soundly") {
  for (u64 t = 0; t < 200; ++t) {
    const auto in = synthetic_unreduced_pair(11, t);
    CAPTURE(t);
    REQUIRE(naive_cover(in.ap.elements(), in.basis));
    CHECK_FALSE(in.ap.reduced());
    const auto out = reduce_pair(in);
    CHECK(std::gcd(out.ap.v, out.ap.g) == 1);
    CHECK(out.ap.M == in.ap.M);
    CHECK(naive_cover(out.ap.elements(), out.basis));
    CHECK(out.basis.size() <= in.basis.size());
    CHECK(naive_product(out.basis) < naive_product(in.basis));
    // Terms shrink by one common factor.
    const auto before = in.ap.elements(), after = out.ap.elements();
    REQUIRE(before.size() == after.size());
    const u64 factor = before[0] / after[0];
    for (std::size_t i = 0; i < before.size(); ++i) CHECK(before[i] == after[i] * factor);
    for (const auto& s : out.steps) CHECK(mpz_class(s.product_after) < mpz_class(s.product_before));
    const auto again = reduce_pair(out);
    CHECK(again.steps.size() == out.steps.size());
    CHECK(again.ap == out.ap);
    CHECK(again.basis == out.basis);
  }
}

TEST_CASE("lower bound certificate on [1..10]") {
  ReducedPair pair;
  pair.ap = APSpec::from_progression(0, 1, 10);
  pair.basis = oracle::min_interval_basis(10).basis;
  MarkingSet marks;
  marks.entries = {{5, 5}, {7, 7}};
  const auto cert = certify_lower_bound(pair, marks);
  CHECK(cert.verified);
  CHECK(cert.bound == 2);
  CHECK(cert.target_rank == 2);
  CHECK(cert.bound <= pair.basis.size());

  MarkingSet bad;
  bad.entries = {{5, 5}, {10, 5}};
  CHECK_THROWS_WITH_AS(certify_lower_bound(pair, bad), doctest::Contains("m=5, m'=10, p=5"), ArgumentError);
  MarkingSet twice;
  twice.entries = {{7, 7}, {7, 7}};
  CHECK_THROWS_AS(certify_lower_bound(pair, twice), ArgumentError);
  MarkingSet wrong;
  wrong.entries = {{4, 3}};
  CHECK_THROWS_AS(certify_lower_bound(pair, wrong), ArgumentError);
}

TEST_CASE("private prime marks give a verified certificate") {
  const PrimeTable t = sieve(1000);
  ReducedPair pair;
  pair.ap = APSpec::from_progression(0, 1, 60);
  pair.basis = construct_interval_basis(60, t).basis;
  const auto marks = private_prime_marks(pair.ap, t);
  // Primes p with 2p > 60 divide exactly one of 1..60.
  std::size_t expected = 0;
  for (u64 p : t.primes())
    if (p <= 60 && 2 * p > 60) ++expected;
  CHECK(marks.entries.size() == expected);
  const auto cert = certify_lower_bound(pair, marks);
  CHECK(cert.verified);
  CHECK(cert.bound == expected);
}

TEST_CASE("surviving-term divisibility on a hand example") {
  const PrimeTable t = sieve(100);
  const auto c = lemma2_divisibility_check(1, 1, 6, t);
  CHECK(c.large_prime_indices == std::vector<u64>{6});
  CHECK(c.extremal_indices == std::vector<u64>{2, 3, 4});
  CHECK(c.surviving_indices == std::vector<u64>{1, 5});
  CHECK(c.product == "12");
  CHECK(c.divides);
  CHECK_THROWS_AS(lemma2_divisibility_check(2, 4, 6, t), ArgumentError);
}

TEST_CASE("surviving terms match a trial-division recount") {
  const PrimeTable t = sieve(20000);
  for (u64 trial = 0; trial < 60; ++trial) {
    const auto p = lemma2_params(5, trial, 1000, 50, 200);
    const auto c = lemma2_divisibility_check(p.u, p.v, p.M, t);
    const auto surviving = oracle::lemma2_survivors(p.u, p.v, p.M);
    mpz_class prod = 1;
    for (u64 m : surviving) prod *= static_cast<unsigned long>(p.u + m * p.v);
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), p.M - 1);
    CAPTURE(p.u);
    CAPTURE(p.v);
    CAPTURE(p.M);
    CHECK(c.surviving_indices == surviving);
    CHECK(c.product == prod.get_str());
    CHECK(mpz_divisible_p(fact.get_mpz_t(), prod.get_mpz_t()) != 0);
    CHECK(c.divides);
  }
}

TEST_CASE("marking sets") {
  const PrimeTable t = sieve(20000);
  SUBCASE("M = 100") {
    const auto ms = build_marking_sets(100, 0, t);
    CHECK(ms.large_primes.size() == 23);
    CHECK(ms.small_primes == std::vector<u64>{3});
    CHECK(ms.singles.entries.size() == 23);
    CHECK(ms.triples.empty());
  }
  for (u64 u : {0ull, 37ull, 10000ull}) {
    const u64 M = 10000;
    const auto ms = build_marking_sets(M, u, t);
    CHECK(ms.small_primes == std::vector<u64>{3, 5, 7, 11, 13, 17, 19});
    std::size_t triples = 0;
    const auto& sp = ms.small_primes;
    for (std::size_t i = 0; i < sp.size(); ++i)
      for (std::size_t j = i + 1; j < sp.size(); ++j)
        for (std::size_t k = j + 1; k < sp.size(); ++k)
          if (sp[i] * sp[j] * sp[k] <= M) ++triples;
    CHECK(ms.triples.size() == triples);
    CHECK(triples == 35);
    std::set<u64> used;
    for (std::size_t i = 0; i < ms.singles.entries.size(); ++i) {
      const auto& e = ms.singles.entries[i];
      CHECK(e.m >= 1);
      CHECK(e.m <= M);
      CHECK(u + e.m == (e.prime << ms.single_shifts[i]));
      CHECK(used.insert(e.m).second);
    }
    for (const auto& tm : ms.triples) {
      CHECK(tm.value == tm.primes[0] * tm.primes[1] * tm.primes[2]);
      CHECK(u + tm.m == (tm.value << tm.shift));
      CHECK(used.insert(tm.m).second);
    }
  }
  CHECK_THROWS_AS(build_marking_sets(10, 11, t), ArgumentError);
}
