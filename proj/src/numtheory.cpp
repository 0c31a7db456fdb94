#include "mulbasis/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "mulbasis/error.hpp"

namespace mulbasis {

u64 sieve_limit_cap() {
  if (const char* env = std::getenv("MULBASIS_SIEVE_LIMIT")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultSieveCap;
}

PrimeTable::PrimeTable(u64 limit) : limit_(limit) {
  if (limit == 0) throw ArgumentError("sieve limit must be >= 1");
  if (limit > sieve_limit_cap())
    throw ResourceError("sieve limit " + std::to_string(limit) + " exceeds cap " +
                        std::to_string(sieve_limit_cap()) + " (MULBASIS_SIEVE_LIMIT)");
  if (limit > 0xFFFFFFFFull) throw ResourceError("sieve limit must fit in 32 bits");

  // Linear sieve: every composite is struck exactly once by its smallest prime.
  spf_.assign(limit + 1, 0);
  for (u64 i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(i);
    }
    for (u64 p : primes_) {
      if (p > spf_[i] || p * i > limit) break;
      spf_[p * i] = static_cast<std::uint32_t>(p);
    }
  }
}

u64 PrimeTable::prime_count(u64 x) const {
  if (x > limit_)
    throw ArgumentError("prime_count(" + std::to_string(x) + ") beyond table limit " +
                        std::to_string(limit_));
  return static_cast<u64>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

bool PrimeTable::is_prime(u64 x) const {
  if (x > limit_) throw ArgumentError("is_prime beyond table limit");
  return x >= 2 && spf_[x] == x;
}

u64 PrimeTable::smallest_factor(u64 x) const {
  if (x < 2 || x > limit_) throw ArgumentError("smallest_factor out of range");
  return spf_[x];
}

PrimeTable sieve(u64 limit) { return PrimeTable(limit); }

Factorization factorize(u64 x, const PrimeTable& table) {
  if (x == 0) throw ArgumentError("cannot factorize 0");
  Factorization f;
  f.value = x;
  u64 r = x;
  if (r <= table.limit()) {
    while (r > 1) {
      u64 p = table.smallest_factor(r);
      r /= p;
      ++f.factors[p];
    }
    return f;
  }
  for (u64 p : table.primes()) {
    if (p * p > r) break;
    while (r % p == 0) {
      r /= p;
      ++f.factors[p];
    }
  }
  if (r > 1) {
    // A leftover r <= limit is prime: some table prime in (sqrt(r), r] ended
    // the loop. Anything larger holds a prime factor above the limit.
    if (r > table.limit()) throw IncompleteTableError(x, r, table.limit());
    ++f.factors[r];
  }
  return f;
}

std::vector<u64> divisors(const Factorization& f) {
  std::vector<u64> out{1};
  for (auto [p, e] : f.factors) {
    const std::size_t base = out.size();
    u64 pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_prime_trial(u64 x) {
  if (x < 2) return false;
  if (x % 2 == 0) return x == 2;
  for (u64 d = 3; d <= x / d; d += 2)
    if (x % d == 0) return false;
  return true;
}

unsigned valuation(u64 p, u64 x) {
  if (!is_prime_trial(p)) throw ArgumentError("valuation: " + std::to_string(p) + " is not prime");
  if (x == 0) throw ArgumentError("valuation of 0 is unbounded");
  unsigned f = 0;
  while (x % p == 0) {
    x /= p;
    ++f;
  }
  return f;
}

ValuationVector rho_vector(u64 x, std::span<const u64> primes, u64 q) {
  if (q == 2) throw ArgumentError("rho_vector: modulus 2 leaves division by 2 undefined");
  if (!is_prime_trial(q)) throw ArgumentError("rho_vector: modulus must be an odd prime");
  std::vector<u64> sorted(primes.begin(), primes.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ArgumentError("rho_vector: primes must be distinct");

  ValuationVector out;
  out.primes.assign(primes.begin(), primes.end());
  out.modulus = q;
  out.coords.reserve(primes.size());
  for (u64 p : primes) out.coords.push_back(static_cast<std::uint32_t>(valuation(p, x) % q));
  return out;
}

unsigned shift_into_interval(u64 x, u64 a, u64 M) {
  if (M == 0 || x == 0 || x > M || a > M)
    throw ArgumentError("shift_into_interval requires 1 <= x <= M and 0 <= a <= M");
  unsigned k = 0;
  u64 y = x;
  while (y < a + 1) {
    y <<= 1;
    ++k;
  }
  if (y > a + M) throw InvariantViolation("shift_into_interval overshot the interval");
  return k;
}

u64 inverse_mod(u64 a, u64 q) {
  // Extended Euclid on signed 128-bit values.
  __int128 t = 0, new_t = 1, r = q, new_r = a % q;
  while (new_r != 0) {
    __int128 quo = r / new_r;
    t -= quo * new_t;
    std::swap(t, new_t);
    r -= quo * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw ArgumentError("inverse_mod: value not invertible");
  if (t < 0) t += q;
  return static_cast<u64>(t);
}

std::size_t rank_mod_q(std::span<const std::vector<std::uint32_t>> rows, u64 q) {
  if (!is_prime_trial(q)) throw ArgumentError("rank_mod_q: modulus must be prime");
  if (rows.empty()) return 0;
  const std::size_t width = rows.front().size();
  std::vector<std::vector<u64>> m;
  m.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.size() != width) throw ArgumentError("rank_mod_q: rows of mixed length");
    m.emplace_back(r.begin(), r.end());
    for (auto& c : m.back()) c %= q;
  }

  std::size_t rank = 0;
  for (std::size_t col = 0; col < width && rank < m.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    const u64 inv = inverse_mod(m[rank][col], q);
    for (auto& c : m[rank]) c = c * inv % q;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == rank || m[i][col] == 0) continue;
      const u64 factor = m[i][col];
      for (std::size_t j = col; j < width; ++j) m[i][j] = (m[i][j] + (q - factor) * m[rank][j]) % q;
    }
    ++rank;
  }
  return rank;
}

std::size_t rank_mod_q(std::span<const ValuationVector> vectors, u64 q) {
  std::vector<std::vector<std::uint32_t>> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) rows.push_back(v.coords);
  return rank_mod_q(rows, q);
}

mpz_class product(std::span<const u64> values) {
  // Balanced product tree keeps operand sizes even; the association order is
  // fixed so results never depend on scheduling.
  if (values.empty()) return 1;
  std::vector<mpz_class> level;
  level.reserve(values.size());
  for (u64 v : values) {
    mpz_class z;
    mpz_import(z.get_mpz_t(), 1, -1, sizeof(u64), 0, 0, &v);
    level.push_back(z);
  }
  while (level.size() > 1) {
    std::vector<mpz_class> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(level[i] * level[i + 1]);
    if (level.size() % 2) next.push_back(level.back());
    level = std::move(next);
  }
  return level.front();
}

mpz_class factorial(u64 n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

u64 floor_sqrt(u64 x) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(x)));
  while (r > 0 && static_cast<unsigned __int128>(r) * r > x) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= x) ++r;
  return r;
}

namespace {
// Largest c with c^3 <= n, for n up to 2^128.
u64 floor_cbrt128(unsigned __int128 n) {
  u64 c = static_cast<u64>(std::cbrt(static_cast<long double>(n)));
  auto cube = [](u64 v) { return static_cast<unsigned __int128>(v) * v * v; };
  while (c > 0 && cube(c) > n) --c;
  while (cube(c + 1) <= n) ++c;
  return c;
}
}  // namespace

u64 floor_cbrt(u64 M) { return floor_cbrt128(M); }

u64 floor_two_thirds(u64 M) { return floor_cbrt128(static_cast<unsigned __int128>(M) * M); }

u64 mul_checked(u64 x, u64 y) {
  u64 out;
  if (__builtin_mul_overflow(x, y, &out))
    throw ArgumentError("64-bit overflow in " + std::to_string(x) + " * " + std::to_string(y));
  return out;
}

}  // namespace mulbasis
