#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace mulbasis {

using u64 = std::uint64_t;

// Sieve limit used when MULBASIS_SIEVE_LIMIT is not set. The table keeps a
// 32-bit smallest-prime-factor entry per integer, so this is ~400 MB.
inline constexpr u64 kDefaultSieveCap = 100'000'000;

// Current cap on PrimeTable limits (MULBASIS_SIEVE_LIMIT or the default).
u64 sieve_limit_cap();

// All primes up to `limit`, with a smallest-prime-factor table for fast
// factorization below the limit. Immutable once built.
class PrimeTable {
 public:
  explicit PrimeTable(u64 limit);

  u64 limit() const { return limit_; }
  const std::vector<u64>& primes() const { return primes_; }

  // Number of primes <= x. Requires x <= limit().
  u64 prime_count(u64 x) const;
  bool is_prime(u64 x) const;
  // Smallest prime factor of 2 <= x <= limit().
  u64 smallest_factor(u64 x) const;

 private:
  u64 limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<u64> primes_;
};

// Throws ResourceError when limit exceeds sieve_limit_cap().
PrimeTable sieve(u64 limit);

struct Factorization {
  u64 value = 1;
  std::map<u64, unsigned> factors;

  u64 exponent(u64 p) const {
    auto it = factors.find(p);
    return it == factors.end() ? 0 : it->second;
  }
};

// Uses the table's smallest-prime-factor array below the limit and trial
// division by the table's primes above it. Throws IncompleteTableError when a
// prime factor exceeds the limit.
Factorization factorize(u64 x, const PrimeTable& table);

// Divisors of the factored value, ascending.
std::vector<u64> divisors(const Factorization& f);

// Deterministic trial-division primality; fine for the 64-bit values used
// as primes throughout (they are all below a few million).
bool is_prime_trial(u64 x);

// Largest f with p^f | x. Throws ArgumentError if p is not prime or x == 0.
unsigned valuation(u64 p, u64 x);

struct ValuationVector {
  std::vector<u64> primes;
  u64 modulus = 3;
  std::vector<std::uint32_t> coords;
};

// Coordinate i is valuation(primes[i], x) mod q. Prime factors of x outside
// the list are ignored. q must be an odd prime.
ValuationVector rho_vector(u64 x, std::span<const u64> primes, u64 q);

// Smallest k >= 0 with a+1 <= 2^k x <= a+M. Requires 1 <= x <= M, a <= M.
unsigned shift_into_interval(u64 x, u64 a, u64 M);

// Dimension of the span over GF(q) of equal-length coordinate rows.
std::size_t rank_mod_q(std::span<const std::vector<std::uint32_t>> rows, u64 q);
std::size_t rank_mod_q(std::span<const ValuationVector> vectors, u64 q);

u64 inverse_mod(u64 a, u64 q);

// Multiprecision helpers for products that overflow 64 bits.
mpz_class product(std::span<const u64> values);
mpz_class factorial(u64 n);

u64 floor_sqrt(u64 x);
// floor(M^(1/3)) and floor(M^(2/3)), exact in integer arithmetic.
u64 floor_cbrt(u64 M);
u64 floor_two_thirds(u64 M);

// x*y, throwing ArgumentError on 64-bit overflow.
u64 mul_checked(u64 x, u64 y);

}  // namespace mulbasis
