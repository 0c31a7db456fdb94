#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mulbasis/ternary.hpp"

namespace mulbasis {

using u64 = std::uint64_t;

u64 binomial(u64 n, u64 k);

// Weight-k 0/1 vectors of GF(3)^n in lexicographic order of their support
// sets. Throws ArgumentError when k > n.
std::vector<TernaryVector> enumerate_sphere(std::size_t n, std::size_t k);

// Shapes a difference a - a' of two weight-3 0/1 vectors can take.
//   Case1: three 1s and three 2s
//   Case2: two 1s and two 2s
//   Case3: one 1 and one 2
enum class DifferenceCase { Zero, Case1, Case2, Case3, Other };

std::string_view to_string(DifferenceCase c);
DifferenceCase classify_difference(const TernaryVector& d);

// Number of ordered pairs (a, a') in S3 x S3 with a - a' = d, in closed form:
// 1, n-4, C(n-2,2), C(n,3) for Case1/2/3/Zero and 0 otherwise.
u64 count_difference_solutions(const TernaryVector& d);

struct CaseCensusRow {
  std::size_t n = 0;
  DifferenceCase kind = DifferenceCase::Zero;
  u64 formula_count = 0;
  // Common per-difference count seen in the enumeration (0 if none seen).
  u64 enumerated_count = 0;
  // Upper bound the count must respect: 1 for Case1 (unique), n for Case2
  // (strict), n^2 for Case3 (strict), C(n,3) for Zero.
  u64 paper_bound = 0;
  bool strict = false;
  u64 distinct_differences = 0;
  u64 expected_differences = 0;
  bool holds = false;
};

struct CaseCensus {
  std::size_t n = 0;
  std::vector<CaseCensusRow> rows;
  u64 total_pairs = 0;     // sum of all enumerated counts
  bool never_other = true; // no S3 difference fell outside the four shapes
  bool holds() const;
};

// Full enumeration of S3(n) x S3(n) checked against the closed forms. Rows
// are emitted only for shapes that exist in dimension n.
CaseCensus case_census(std::size_t n);

struct SphereWitness {
  TernaryVector target;
  TernaryVector first;
  TernaryVector second;
};

struct SphereCoverResult {
  std::vector<SphereWitness> witness;
  std::optional<TernaryVector> uncovered;
  bool ok() const { return !uncovered; }
};

// For each target, the lexicographically smallest (b1, b2) in B x B with
// b1 + b2 = target; or the first uncovered target.
SphereCoverResult cover_targets(std::span<const TernaryVector> basis,
                                std::span<const TernaryVector> targets);
SphereCoverResult sphere_cover_verify(std::span<const TernaryVector> basis, std::size_t n,
                                      std::size_t k = 3);

struct SphereBasisSolution {
  std::vector<TernaryVector> basis;
  std::vector<SphereWitness> witness;
  bool optimal = false;
  u64 nodes_explored = 0;
};

// S1 ∪ S2, each target e_i+e_j+e_k (i<j<k) witnessed by (e_i, e_j+e_k).
SphereBasisSolution sphere_basis_construct(std::size_t n);

inline constexpr std::size_t kSphereSearchMaxDim = 6;

// Smallest k with k(k+1)/2 >= C(n,3).
u64 sphere_counting_bound(std::size_t n);

// Exact minimum |B| with S3 ⊆ B+B for n <= kSphereSearchMaxDim. Partial bases
// are deduplicated up to coordinate permutation; the returned basis is the
// lexicographically smallest permutation image of the one found.
SphereBasisSolution sphere_min_basis(std::size_t n, u64 budget_nodes);

// |(A+B) ∩ S2|, counting distinct sums.
u64 count_sphere2_sums(std::span<const TernaryVector> A, std::span<const TernaryVector> B);

struct RemarkReport {
  std::size_t n = 0;
  std::size_t a_size = 0;
  std::size_t b_size = 0;
  u64 lhs = 0;
  u64 rhs_tight = 0;
  u64 rhs_loose = 0;
  bool holds = false;
};

// Requires |A| <= n / 2^10 (ArgumentError otherwise).
RemarkReport check_remark_bound(std::span<const TernaryVector> A, std::span<const TernaryVector> B,
                                std::size_t n);

inline constexpr std::size_t kLemma5MinDimension = 2048;

struct Lemma5Report {
  std::size_t n = 0;
  std::size_t x_size = 0;
  std::size_t y_size = 0;
  u64 lhs = 0;
  double bound = 0;
  bool x_small = false;  // |X| <= n / 2^10
  bool y_small = false;  // |Y| <= n^2 / 100
  bool large_n = false;  // n >= kLemma5MinDimension
  bool hypotheses_ok = false;
  bool holds = false;
};

// Hypotheses are evaluated and reported, never assumed.
Lemma5Report check_lemma5(std::span<const TernaryVector> X, std::span<const TernaryVector> Y,
                          std::size_t n);

}  // namespace mulbasis
