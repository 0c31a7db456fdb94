#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mulbasis/numtheory.hpp"

namespace mulbasis {

// Sorted, duplicate-free set of positive integers.
using IntSet = std::vector<u64>;

IntSet make_set(std::span<const u64> values);

// { b*b' : b, b' in B }, ascending.
IntSet product_set(std::span<const u64> basis);

struct CoverPair {
  u64 target;
  u64 first;
  u64 second;
  friend bool operator==(const CoverPair&, const CoverPair&) = default;
};

// One pair per target, ordered by target.
struct CoverWitness {
  std::vector<CoverPair> pairs;
};

struct CoverResult {
  CoverWitness witness;
  std::optional<u64> uncovered;
  bool ok() const { return !uncovered; }
};

// For each a in A the lexicographically smallest (b, b') with b <= b',
// b*b' = a, both in B; or the smallest uncovered a.
CoverResult verify_cover(std::span<const u64> targets, std::span<const u64> basis);

namespace detail {
// The two strategies behind verify_cover; exposed so tests can cross-check.
CoverResult verify_cover_scan(const IntSet& targets, const IntSet& basis);
CoverResult verify_cover_divisors(const IntSet& targets, const IntSet& basis);
}  // namespace detail

struct BasisSolution {
  IntSet basis;
  CoverWitness witness;
  bool optimal = false;
  u64 nodes_explored = 0;
};

struct MinBasisOptions {
  u64 budget_nodes = 10'000'000;
  // Candidate elements; defaults to every divisor of every target.
  std::optional<IntSet> pool;
};

// Minimum-cardinality B within the pool with A ⊆ B·B. Among minimum bases the
// lexicographically smallest (as a sorted list) is returned. When the node
// budget runs out the best basis seen so far comes back with optimal=false.
BasisSolution exact_min_basis(std::span<const u64> targets, const MinBasisOptions& options = {});

// {1} ∪ [2, floor(M^(2/3))] ∪ {primes p : p^3 > M, p <= M} with the witness
// that splits off a large prime factor when there is one and otherwise takes
// the largest divisor <= M^(2/3).
BasisSolution construct_interval_basis(u64 M, const PrimeTable& table);

struct MbpRecord {
  u64 M = 0;
  u64 a = 0;
  u64 d = 0;
  BasisSolution solution;
  u64 progressions = 0;
  // Every per-progression search finished within budget.
  bool all_optimal = true;
};

// Upper bound on MBP(M): the minimum of exact_min_basis over the progressions
// {a + m d : 1 <= m <= M} with 0 <= a <= a_max, 1 <= d <= d_max. Ties go to
// the smallest (a, d).
MbpRecord mbp_empirical(u64 M, u64 a_max, u64 d_max, u64 budget_nodes, unsigned jobs = 1);

// {a + m d : 1 <= m <= M}.
IntSet progression(u64 a, u64 d, u64 M);

}  // namespace mulbasis
