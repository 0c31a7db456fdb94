#include "mulbasis/spherelab.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "mulbasis/error.hpp"

namespace mulbasis {

u64 binomial(u64 n, u64 k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u64 out = 1;
  for (u64 i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

std::vector<TernaryVector> enumerate_sphere(std::size_t n, std::size_t k) {
  if (k > n) throw ArgumentError("enumerate_sphere: weight exceeds dimension");
  std::vector<TernaryVector> out;
  out.reserve(binomial(n, k));
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    TernaryVector v(n);
    for (auto i : idx) v.set(i, 1);
    out.push_back(std::move(v));
    // Advance to the next k-subset in lexicographic order.
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
  return out;
}

std::string_view to_string(DifferenceCase c) {
  switch (c) {
    case DifferenceCase::Zero: return "zero";
    case DifferenceCase::Case1: return "case1";
    case DifferenceCase::Case2: return "case2";
    case DifferenceCase::Case3: return "case3";
    case DifferenceCase::Other: return "other";
  }
  return "other";
}

DifferenceCase classify_difference(const TernaryVector& d) {
  const std::size_t ones = d.count_ones();
  const std::size_t twos = d.count_twos();
  if (ones != twos) return DifferenceCase::Other;
  switch (ones) {
    case 0: return DifferenceCase::Zero;
    case 1: return DifferenceCase::Case3;
    case 2: return DifferenceCase::Case2;
    case 3: return DifferenceCase::Case1;
    default: return DifferenceCase::Other;
  }
}

u64 count_difference_solutions(const TernaryVector& d) {
  const u64 n = d.size();
  switch (classify_difference(d)) {
    case DifferenceCase::Case1: return 1;
    case DifferenceCase::Case2: return n >= 4 ? n - 4 : 0;
    case DifferenceCase::Case3: return binomial(n - 2, 2);
    case DifferenceCase::Zero: return binomial(n, 3);
    case DifferenceCase::Other: return 0;
  }
  return 0;
}

bool CaseCensus::holds() const {
  const u64 s3 = binomial(n, 3);
  return never_other && total_pairs == s3 * s3 &&
         std::all_of(rows.begin(), rows.end(), [](const CaseCensusRow& r) { return r.holds; });
}

CaseCensus case_census(std::size_t n) {
  const auto sphere = n >= 3 ? enumerate_sphere(n, 3) : std::vector<TernaryVector>{};
  std::unordered_map<TernaryVector, u64, TernaryVectorHash> counts;
  for (const auto& a : sphere)
    for (const auto& b : sphere) ++counts[a - b];

  CaseCensus census;
  census.n = n;
  struct Tally {
    u64 distinct = 0, min = UINT64_MAX, max = 0;
  };
  std::unordered_map<int, Tally> tally;
  for (const auto& [d, c] : counts) {
    census.total_pairs += c;
    const auto kind = classify_difference(d);
    if (kind == DifferenceCase::Other) census.never_other = false;
    auto& t = tally[static_cast<int>(kind)];
    ++t.distinct;
    t.min = std::min(t.min, c);
    t.max = std::max(t.max, c);
  }

  const u64 nn = n;
  struct Shape {
    DifferenceCase kind;
    u64 formula, bound, expected;
    bool strict;
  };
  const Shape shapes[] = {
      {DifferenceCase::Zero, binomial(nn, 3), binomial(nn, 3), 1, false},
      {DifferenceCase::Case1, 1, 1, binomial(nn, 3) * binomial(nn - std::min<u64>(nn, 3), 3), false},
      {DifferenceCase::Case2, nn >= 4 ? nn - 4 : 0, nn, binomial(nn, 2) * binomial(nn - std::min<u64>(nn, 2), 2), true},
      {DifferenceCase::Case3, nn >= 2 ? binomial(nn - 2, 2) : 0, nn * nn, nn * (nn >= 1 ? nn - 1 : 0), true},
  };
  for (const auto& s : shapes) {
    if (s.expected == 0 || (s.kind == DifferenceCase::Zero && n < 3)) continue;
    CaseCensusRow row;
    row.n = n;
    row.kind = s.kind;
    row.formula_count = s.formula;
    row.paper_bound = s.bound;
    row.strict = s.strict;
    row.expected_differences = s.expected;
    const Tally t = tally.count(static_cast<int>(s.kind)) ? tally[static_cast<int>(s.kind)] : Tally{};
    row.distinct_differences = t.distinct;
    row.enumerated_count = t.distinct ? t.max : 0;
    bool match;
    if (s.formula > 0)
      match = t.distinct == s.expected && t.min == s.formula && t.max == s.formula;
    else
      match = t.distinct == 0;
    const bool bounded = s.strict ? row.enumerated_count < s.bound : row.enumerated_count <= s.bound;
    row.holds = match && bounded;
    census.rows.push_back(row);
  }
  return census;
}

SphereCoverResult cover_targets(std::span<const TernaryVector> basis,
                                std::span<const TernaryVector> targets) {
  std::vector<TernaryVector> sorted(basis.begin(), basis.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const std::unordered_set<TernaryVector, TernaryVectorHash> members(sorted.begin(), sorted.end());

  SphereCoverResult result;
  result.witness.reserve(targets.size());
  for (const auto& t : targets) {
    bool found = false;
    for (const auto& b : sorted) {
      if (b.size() != t.size()) throw ArgumentError("cover_targets: dimension mismatch");
      TernaryVector partner = t - b;
      if (members.contains(partner)) {
        result.witness.push_back({t, b, std::move(partner)});
        found = true;
        break;
      }
    }
    if (!found) {
      result.uncovered = t;
      result.witness.clear();
      return result;
    }
  }
  return result;
}

SphereCoverResult sphere_cover_verify(std::span<const TernaryVector> basis, std::size_t n,
                                      std::size_t k) {
  for (const auto& b : basis)
    if (b.size() != n) throw ArgumentError("sphere_cover_verify: basis vector of wrong dimension");
  const auto targets = enumerate_sphere(n, k);
  return cover_targets(basis, targets);
}

SphereBasisSolution sphere_basis_construct(std::size_t n) {
  if (n < 3) throw ArgumentError("sphere_basis_construct requires n >= 3");
  SphereBasisSolution sol;
  sol.basis = enumerate_sphere(n, 1);
  auto pairs = enumerate_sphere(n, 2);
  sol.basis.insert(sol.basis.end(), pairs.begin(), pairs.end());
  std::sort(sol.basis.begin(), sol.basis.end());
  for (auto& t : enumerate_sphere(n, 3)) {
    const auto s = t.support();
    TernaryVector rest(n);
    rest.set(s[1], 1);
    rest.set(s[2], 1);
    sol.witness.push_back({t, TernaryVector::unit(n, s[0]), std::move(rest)});
  }
  return sol;
}

u64 sphere_counting_bound(std::size_t n) {
  const u64 targets = binomial(n, 3);
  u64 k = 0;
  while (k * (k + 1) / 2 < targets) ++k;
  return k;
}

u64 count_sphere2_sums(std::span<const TernaryVector> A, std::span<const TernaryVector> B) {
  std::vector<u64> hits;
  for (const auto& a : A) {
    for (const auto& b : B) {
      const TernaryVector s = a + b;
      if (s.count_twos() != 0 || s.count_ones() != 2) continue;
      const auto sup = s.support();
      hits.push_back(static_cast<u64>(sup[0]) * s.size() + sup[1]);
    }
  }
  std::sort(hits.begin(), hits.end());
  return static_cast<u64>(std::unique(hits.begin(), hits.end()) - hits.begin());
}

namespace {
std::vector<TernaryVector> dedupe(std::span<const TernaryVector> v, std::size_t n) {
  std::vector<TernaryVector> out(v.begin(), v.end());
  for (const auto& x : out)
    if (x.size() != n) throw ArgumentError("vector of wrong dimension");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}
}  // namespace

RemarkReport check_remark_bound(std::span<const TernaryVector> A_in, std::span<const TernaryVector> B_in,
                                std::size_t n) {
  const auto A = dedupe(A_in, n);
  const auto B = dedupe(B_in, n);
  if (A.size() * 1024 > n)
    throw ArgumentError("check_remark_bound: |A| = " + std::to_string(A.size()) +
                        " exceeds n / 2^10 for n = " + std::to_string(n));
  RemarkReport r;
  r.n = n;
  r.a_size = A.size();
  r.b_size = B.size();
  r.lhs = count_sphere2_sums(A, B);
  r.rhs_tight = binomial(n, 2) - binomial(n - A.size(), 2) + B.size();
  r.rhs_loose = n * A.size() + B.size();
  r.holds = r.lhs <= r.rhs_tight && r.rhs_tight <= r.rhs_loose;
  return r;
}

Lemma5Report check_lemma5(std::span<const TernaryVector> X_in, std::span<const TernaryVector> Y_in,
                          std::size_t n) {
  const auto X = dedupe(X_in, n);
  const auto Y = dedupe(Y_in, n);
  Lemma5Report r;
  r.n = n;
  r.x_size = X.size();
  r.y_size = Y.size();
  r.x_small = X.size() * 1024 <= n;
  r.y_small = static_cast<u64>(Y.size()) * 100 <= static_cast<u64>(n) * n;
  r.large_n = n >= kLemma5MinDimension;
  r.hypotheses_ok = r.x_small && r.y_small && r.large_n;
  r.lhs = count_sphere2_sums(X, Y);
  r.bound = static_cast<double>(n) * static_cast<double>(n) / 50.0;
  r.holds = static_cast<double>(r.lhs) <= r.bound;
  return r;
}

}  // namespace mulbasis
