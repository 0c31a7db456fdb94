#include "mulbasis/productsets.hpp"

#include <algorithm>

#include "mulbasis/error.hpp"
#include "mulbasis/parallel.hpp"

namespace mulbasis {

IntSet make_set(std::span<const u64> values) {
  IntSet out(values.begin(), values.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (!out.empty() && out.front() == 0) throw ArgumentError("sets must contain positive integers only");
  return out;
}

IntSet product_set(std::span<const u64> basis) {
  const IntSet b = make_set(basis);
  IntSet out;
  out.reserve(b.size() * (b.size() + 1) / 2);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i; j < b.size(); ++j) out.push_back(mul_checked(b[i], b[j]));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace detail {

CoverResult verify_cover_scan(const IntSet& targets, const IntSet& basis) {
  CoverResult result;
  result.witness.pairs.reserve(targets.size());
  for (u64 a : targets) {
    bool found = false;
    for (u64 b : basis) {
      if (b > a / b) break;
      if (a % b == 0 && std::binary_search(basis.begin(), basis.end(), a / b)) {
        result.witness.pairs.push_back({a, b, a / b});
        found = true;
        break;
      }
    }
    if (!found) {
      result.uncovered = a;
      result.witness.pairs.clear();
      return result;
    }
  }
  return result;
}

CoverResult verify_cover_divisors(const IntSet& targets, const IntSet& basis) {
  CoverResult result;
  if (targets.empty()) return result;
  const u64 top = targets.back();
  const PrimeTable table(std::max<u64>(top, 2));
  std::vector<char> member(top + 1, 0);
  for (u64 b : basis) {
    if (b > top) break;
    member[b] = 1;
  }
  result.witness.pairs.reserve(targets.size());
  for (u64 a : targets) {
    bool found = false;
    for (u64 b : divisors(factorize(a, table))) {
      if (b > a / b) break;
      if (member[b] && member[a / b]) {
        result.witness.pairs.push_back({a, b, a / b});
        found = true;
        break;
      }
    }
    if (!found) {
      result.uncovered = a;
      result.witness.pairs.clear();
      return result;
    }
  }
  return result;
}

}  // namespace detail

CoverResult verify_cover(std::span<const u64> targets, std::span<const u64> basis) {
  const IntSet a = make_set(targets);
  const IntSet b = make_set(basis);
  if (a.empty()) return {};
  const u64 top = a.back();
  const u64 small = static_cast<u64>(
      std::upper_bound(b.begin(), b.end(), floor_sqrt(top)) - b.begin());
  // Scanning costs |A| * |B ∩ [1, sqrt(max A)]|; past a few million steps the
  // sieve-backed divisor walk is cheaper.
  if (top <= 50'000'000 && top <= sieve_limit_cap() && a.size() * small > 4'000'000)
    return detail::verify_cover_divisors(a, b);
  return detail::verify_cover_scan(a, b);
}

IntSet progression(u64 a, u64 d, u64 M) {
  IntSet out;
  out.reserve(M);
  for (u64 m = 1; m <= M; ++m) out.push_back(a + mul_checked(m, d));
  if (!out.empty() && out.front() == 0) throw ArgumentError("progression must be positive");
  return out;
}

BasisSolution construct_interval_basis(u64 M, const PrimeTable& table) {
  if (M == 0) throw ArgumentError("construct_interval_basis: M must be >= 1");
  if (table.limit() < M) throw ArgumentError("construct_interval_basis: prime table too small");
  const u64 small_max = floor_two_thirds(M);
  const u64 cube_root = floor_cbrt(M);

  IntSet basis;
  for (u64 x = 1; x <= small_max; ++x) basis.push_back(x);
  for (u64 p : table.primes()) {
    if (p > M) break;
    if (p > cube_root && p > small_max) basis.push_back(p);
  }

  BasisSolution sol;
  sol.witness.pairs.reserve(M);
  for (u64 a = 1; a <= M; ++a) {
    const Factorization f = factorize(a, table);
    const u64 largest = f.factors.empty() ? 1 : f.factors.rbegin()->first;
    u64 first;
    if (largest > cube_root) {
      first = largest;
    } else {
      // a is M^(1/3)-smooth: a maximal divisor d <= M^(2/3) exceeds M^(1/3),
      // which leaves a/d below M^(2/3).
      const auto divs = divisors(f);
      first = *std::prev(std::upper_bound(divs.begin(), divs.end(), small_max));
    }
    const u64 second = a / first;
    sol.witness.pairs.push_back({a, std::min(first, second), std::max(first, second)});
  }
  sol.basis = std::move(basis);
  return sol;
}

MbpRecord mbp_empirical(u64 M, u64 a_max, u64 d_max, u64 budget_nodes, unsigned jobs) {
  if (M == 0 || d_max == 0) throw ArgumentError("mbp_empirical requires M >= 1 and d_max >= 1");
  const u64 count = (a_max + 1) * d_max;
  std::vector<BasisSolution> solutions(count);
  parallel_for(count, jobs, [&](std::size_t idx) {
    const u64 a = idx / d_max;
    const u64 d = idx % d_max + 1;
    MinBasisOptions opts;
    opts.budget_nodes = budget_nodes;
    solutions[idx] = exact_min_basis(progression(a, d, M), opts);
  });

  MbpRecord rec;
  rec.M = M;
  rec.progressions = count;
  std::size_t best = 0;
  for (std::size_t idx = 0; idx < count; ++idx) {
    rec.all_optimal = rec.all_optimal && solutions[idx].optimal;
    if (solutions[idx].basis.size() < solutions[best].basis.size()) best = idx;
  }
  rec.a = best / d_max;
  rec.d = best % d_max + 1;
  rec.solution = std::move(solutions[best]);
  return rec;
}

}  // namespace mulbasis
