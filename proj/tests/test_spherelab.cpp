#include <doctest.h>

#include <set>

#include "mulbasis/commands.hpp"
#include "mulbasis/error.hpp"
#include "mulbasis/parallel.hpp"
#include "mulbasis/spherelab.hpp"
#include "oracles.hpp"

using namespace mulbasis;

namespace {

u64 choose(u64 n, u64 k) {
  if (k > n) return 0;
  u64 r = 1;
  for (u64 i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("sphere enumeration") {
  for (std::size_t n = 1; n <= 9; ++n)
    for (std::size_t k = 0; k <= n; ++k) {
      const auto s = enumerate_sphere(n, k);
      CHECK(s.size() == choose(n, k));
      std::set<std::string> seen;
      for (const auto& v : s) {
        CHECK(v.weight() == k);
        CHECK(v.count_twos() == 0);
        seen.insert(v.str());
      }
      CHECK(seen.size() == s.size());
    }
  CHECK(enumerate_sphere(4, 2).front().str() == "1100");
  CHECK(enumerate_sphere(4, 2).back().str() == "0011");
  CHECK_THROWS_AS(enumerate_sphere(3, 4), ArgumentError);
  CHECK(binomial(30, 3) == 4060);
}

TEST_CASE("difference classification and closed forms match brute counts") {
  for (unsigned n = 3; n <= 10; ++n) {
    const auto counts = oracle::difference_counts(n);
    for (const auto& [key, count] : counts) {
      const auto d = TernaryVector::parse(key);
      CAPTURE(key);
      CHECK(count_difference_solutions(d) == count);
      const auto kind = classify_difference(d);
      CHECK(kind != DifferenceCase::Other);
      if (kind == DifferenceCase::Case1) CHECK(count == 1);
      if (kind == DifferenceCase::Case2) CHECK(count == n - 4);
      if (kind == DifferenceCase::Case3) CHECK(count == choose(n - 2, 2));
    }
  }
  CHECK(classify_difference(TernaryVector::parse("1000")) == DifferenceCase::Other);
  CHECK(count_difference_solutions(TernaryVector::parse("1000")) == 0);
}

TEST_CASE("census rows") {
  for (std::size_t n = 5; n <= 9; ++n) {
    const auto cs = case_census(n);
    CHECK(cs.holds());
    CHECK(cs.never_other);
    CHECK(cs.total_pairs == choose(n, 3) * choose(n, 3));
    for (const auto& row : cs.rows) CHECK(row.enumerated_count == row.formula_count);
  }
}

TEST_CASE("construction covers S3") {
  for (std::size_t n = 3; n <= 20; ++n) {
    const auto sol = sphere_basis_construct(n);
    CHECK(sol.basis.size() == n * (n + 1) / 2);
    CHECK(sphere_cover_verify(sol.basis, n).ok());
    for (const auto& w : sol.witness) CHECK(w.first + w.second == w.target);
  }
}

TEST_CASE("cover verification reports a miss") {
  const auto s3 = enumerate_sphere(4, 3);
  const std::vector<TernaryVector> basis{TernaryVector::parse("2220")};
  const auto r = cover_targets(basis, s3);
  CHECK_FALSE(r.ok());
}

TEST_CASE("exact sphere basis for small n matches subset enumeration") {
  CHECK(sphere_counting_bound(4) == 3);
  for (unsigned n = 3; n <= 4; ++n) {
    const auto sol = sphere_min_basis(n, 10'000'000);
    CHECK(sol.optimal);
    CHECK(sol.basis.size() == oracle::min_sphere_basis(n, 4));
    CHECK(sphere_cover_verify(sol.basis, n).ok());
  }
  CHECK_THROWS_AS(sphere_min_basis(kSphereSearchMaxDim + 1, 10), ArgumentError);
}

TEST_CASE("S2 sums counted against a set") {
  CounterRng rng(8, 0);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 6 + rng.below(5);
    std::vector<TernaryVector> A, B;
    for (int i = 0; i < 4; ++i) {
      std::vector<std::uint8_t> a(n), b(n);
      for (auto& x : a) x = static_cast<std::uint8_t>(rng.below(3) == 0 ? rng.below(3) : 0);
      for (auto& x : b) x = static_cast<std::uint8_t>(rng.below(3) == 0 ? rng.below(3) : 0);
      A.push_back(TernaryVector::from_coords(a));
      B.push_back(TernaryVector::from_coords(b));
    }
    std::set<std::string> hits;
    for (const auto& a : A)
      for (const auto& b : B) {
        const auto s = a + b;
        if (s.weight() == 2 && s.count_twos() == 0) hits.insert(s.str());
      }
    CHECK(count_sphere2_sums(A, B) == hits.size());
  }
}

TEST_CASE("sparse sumset checks evaluate hypotheses") {
  const auto inst = lemma5_instance(2048, 2, 500, 1, 0);
  const auto rep = check_lemma5(inst.X, inst.Y, 2048);
  CHECK(rep.hypotheses_ok);
  CHECK(rep.holds);
  CHECK(rep.bound == doctest::Approx(2048.0 * 2048.0 / 50));
  const auto small_inst = lemma5_instance(1024, 1, 200, 1, 0);
  const auto small = check_lemma5(small_inst.X, small_inst.Y, 1024);
  CHECK(small.x_small);
  CHECK_FALSE(small.large_n);
  CHECK_FALSE(small.hypotheses_ok);

  const auto r = remark_instance(1100, 1, 300, 1, 0);
  const auto rr = check_remark_bound(r.X, r.Y, 1100);
  CHECK(rr.holds);
  CHECK(rr.lhs <= rr.rhs_tight);
  CHECK(rr.rhs_tight <= rr.rhs_loose);
  CHECK(rr.rhs_loose == 1100 * 1 + 300);
  CHECK_THROWS_AS(check_remark_bound(r.X, r.Y, 1000), ArgumentError);
}
