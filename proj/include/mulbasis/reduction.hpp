#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mulbasis/numtheory.hpp"
#include "mulbasis/productsets.hpp"

namespace mulbasis {

// The progression { g (u + v m) : 1 <= m <= M }.
struct APSpec {
  u64 g = 1;
  u64 u = 0;
  u64 v = 1;
  u64 M = 1;

  // From the first-term offset a and step d of { a + m d }: g = gcd(a, d).
  static APSpec from_progression(u64 a, u64 d, u64 M);

  u64 offset() const { return g * u; }
  u64 step() const { return g * v; }
  u64 term(u64 m) const;
  IntSet elements() const;
  bool normalized() const;  // gcd(u, v) == 1
  bool reduced() const;     // gcd(v, g) == 1

  friend bool operator==(const APSpec&, const APSpec&) = default;
};

struct ReductionStep {
  u64 prime = 0;
  unsigned e = 0;  // valuation of the step d
  unsigned f = 0;  // valuation of the offset a
  bool squared = false;  // divided by p^2 (f >= 2) rather than p
  std::string product_before;
  std::string product_after;
};

// A progression together with a basis covering it.
struct ReducedPair {
  APSpec ap;
  IntSet basis;
  bool reduced = false;
  std::vector<ReductionStep> steps;
};

// Repeatedly strips a prime p with v_p(d) > v_p(a) >= 1 until gcd(v, g) = 1.
// The cover is re-verified after every step and the product of the basis
// must strictly drop; either failing raises InvariantViolation. An input that
// is not a cover raises ArgumentError.
ReducedPair reduce_pair(const ReducedPair& pair);

// Marked indices m, each owning a prime p_m that divides u + v m and no other
// marked term. Entry order fixes the coordinate order of the embedding.
struct MarkingSet {
  struct Entry {
    u64 m;
    u64 prime;
  };
  std::vector<Entry> entries;
};

struct LowerBoundCertificate {
  u64 q = 3;
  u64 bound = 0;
  std::size_t basis_size = 0;
  std::size_t embedded_basis_size = 0;
  std::size_t target_rank = 0;
  bool targets_unit = true;     // each target has one nonzero coordinate, its own
  bool targets_in_sumset = true;
  bool verified = false;
};

// Span certificate |B| >= |marks|: embeds valuations at the marked primes
// modulo q (smallest odd prime above every marked valuation), shifts the basis
// by half the embedding of g, and checks every target lies in the shifted
// basis sumset with full rank. Throws ArgumentError naming (m, m', p) when
// the marking property fails.
LowerBoundCertificate certify_lower_bound(const ReducedPair& pair, const MarkingSet& marks);

// Every m whose term u + v m has a prime factor dividing no other term, marked
// with the smallest such prime. Requires table.limit() >= u + M v.
MarkingSet private_prime_marks(const APSpec& ap, const PrimeTable& table);

struct Lemma2Check {
  u64 u = 0, v = 1, M = 1;
  std::vector<u64> large_prime_indices;  // m whose term has a prime factor >= M
  std::vector<u64> extremal_indices;     // per prime p < M, first m maximizing v_p
  std::vector<u64> surviving_indices;
  std::string product;                   // product of surviving terms
  bool divides = false;                  // product | (M-1)!
};

// Requires gcd(u, v) = 1 and table.limit() >= u + M v.
Lemma2Check lemma2_divisibility_check(u64 u, u64 v, u64 M, const PrimeTable& table);

struct TripleMark {
  u64 m;
  u64 value;           // x = p_i p_j p_k
  u64 primes[3];
  unsigned shift;      // u + m = 2^shift x
};

struct MarkingSets {
  u64 M = 0;
  u64 u = 0;
  std::vector<u64> large_primes;  // odd primes p with p^3 > M, p <= M
  std::vector<u64> small_primes;  // primes 3 <= p with p^3 <= M
  MarkingSet singles;             // m_p for the large primes, in prime order
  std::vector<unsigned> single_shifts;
  std::vector<TripleMark> triples;  // distinct small-prime triples with product <= M
};

// Places every large prime and every small-prime triple product x into
// [u+1, u+M] as 2^k x. Requires u <= M.
MarkingSets build_marking_sets(u64 M, u64 u, const PrimeTable& table);

}  // namespace mulbasis
