#include "mulbasis/reduction.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "mulbasis/error.hpp"

namespace mulbasis {

APSpec APSpec::from_progression(u64 a, u64 d, u64 M) {
  if (d == 0 || M == 0) throw ArgumentError("progression needs d >= 1 and M >= 1");
  const u64 g = std::gcd(a, d);
  return APSpec{g, a / g, d / g, M};
}

u64 APSpec::term(u64 m) const { return mul_checked(g, u + mul_checked(v, m)); }

IntSet APSpec::elements() const {
  IntSet out;
  out.reserve(M);
  for (u64 m = 1; m <= M; ++m) out.push_back(term(m));
  return out;
}

bool APSpec::normalized() const { return std::gcd(u, v) == 1; }
bool APSpec::reduced() const { return std::gcd(v, g) == 1; }

namespace {

u64 smallest_prime_factor(u64 x) {
  for (u64 p = 2; p <= x / p; ++p)
    if (x % p == 0) return p;
  return x;
}

unsigned val(u64 p, u64 x) {
  unsigned f = 0;
  while (x % p == 0) {
    x /= p;
    ++f;
  }
  return f;
}

u64 power(u64 p, unsigned e) {
  u64 out = 1;
  for (unsigned i = 0; i < e; ++i) out = mul_checked(out, p);
  return out;
}

}  // namespace

ReducedPair reduce_pair(const ReducedPair& pair) {
  ReducedPair cur = pair;
  cur.basis = make_set(pair.basis);
  if (!verify_cover(cur.ap.elements(), cur.basis).ok())
    throw ArgumentError("reduce_pair: basis does not cover the progression");

  for (;;) {
    const u64 a = cur.ap.offset();
    const u64 d = cur.ap.step();
    const u64 common = std::gcd(cur.ap.v, cur.ap.g);
    if (a == 0 || common == 1) break;

    const u64 p = smallest_prime_factor(common);
    const unsigned e = val(p, d);
    const unsigned f = val(p, a);
    if (!(e > f && f >= 1)) throw InvariantViolation("reduce_pair: expected v_p(d) > v_p(a) >= 1");

    ReductionStep step{p, e, f, f >= 2, {}, {}};
    const mpz_class before = product(cur.basis);
    IntSet next;
    for (u64 b : cur.basis) {
      const unsigned vb = val(p, b);
      if (vb == 0)
        next.push_back(b);
      else if (f == 1 && vb == 1)
        next.push_back(b / p);
      else if (f >= 2 && vb < f)
        next.push_back(b / p);
      else if (f >= 2)
        next.push_back(b / (p * p));
      // f == 1 and v_p(b) >= 2: never part of a representation, dropped.
    }
    next = make_set(next);
    const unsigned shift = f == 1 ? 1 : 2;
    const u64 ps = power(p, shift);
    cur.ap = APSpec::from_progression(a / ps, d / ps, cur.ap.M);
    cur.basis = std::move(next);

    const mpz_class after = product(cur.basis);
    step.product_before = before.get_str();
    step.product_after = after.get_str();
    if (!(after < before)) throw InvariantViolation("reduce_pair: basis product did not decrease");
    if (!verify_cover(cur.ap.elements(), cur.basis).ok())
      throw InvariantViolation("reduce_pair: step at p = " + std::to_string(p) + " broke the cover");
    cur.steps.push_back(std::move(step));
  }
  cur.reduced = cur.ap.reduced();
  return cur;
}

LowerBoundCertificate certify_lower_bound(const ReducedPair& pair, const MarkingSet& marks) {
  const APSpec& ap = pair.ap;
  auto term = [&](u64 m) { return ap.u + mul_checked(ap.v, m); };

  LowerBoundCertificate cert;
  cert.basis_size = make_set(pair.basis).size();
  const auto& entries = marks.entries;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto [m, p] = entries[i];
    if (m < 1 || m > ap.M) throw ArgumentError("marking index " + std::to_string(m) + " outside [1, M]");
    if (!is_prime_trial(p)) throw ArgumentError("marking prime " + std::to_string(p) + " is not prime");
    if (term(m) % p != 0)
      throw ArgumentError("marking violated at (m=" + std::to_string(m) + ", m'=" + std::to_string(m) +
                          ", p=" + std::to_string(p) + "): p does not divide u+vm");
    for (std::size_t j = 0; j < entries.size(); ++j) {
      if (j == i) continue;
      const auto& other = entries[j];
      if (other.m == m) throw ArgumentError("marking index " + std::to_string(m) + " listed twice");
      if (term(other.m) % p == 0)
        throw ArgumentError("marking violated at (m=" + std::to_string(m) + ", m'=" + std::to_string(other.m) +
                            ", p=" + std::to_string(p) + ")");
    }
  }
  cert.bound = marks.entries.size();
  if (marks.entries.empty()) {
    cert.verified = true;
    return cert;
  }

  unsigned top = 0;
  std::vector<u64> primes;
  for (const auto& [m, p] : marks.entries) {
    top = std::max(top, valuation(p, term(m)));
    primes.push_back(p);
  }
  u64 q = 3;
  while (q <= top || !is_prime_trial(q)) q += 2;
  cert.q = q;

  const u64 half = inverse_mod(2, q);
  const auto rho_g = rho_vector(ap.g, primes, q).coords;
  auto shifted = [&](u64 b) {
    auto r = rho_vector(b, primes, q).coords;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<std::uint32_t>((r[i] + (q - rho_g[i]) * half) % q);
    return r;
  };

  std::map<std::vector<std::uint32_t>, int> embedded;
  std::unordered_map<u64, std::vector<std::uint32_t>> shifted_of;
  for (u64 b : make_set(pair.basis)) {
    shifted_of[b] = shifted(b);
    embedded[shifted_of[b]] = 1;
  }
  cert.embedded_basis_size = embedded.size();

  const auto cover = verify_cover(ap.elements(), pair.basis);
  std::unordered_map<u64, CoverPair> witness;
  for (const auto& w : cover.witness.pairs) witness[w.target] = w;

  std::vector<std::vector<std::uint32_t>> targets;
  for (std::size_t i = 0; i < marks.entries.size(); ++i) {
    const u64 m = marks.entries[i].m;
    auto t = rho_vector(term(m), primes, q).coords;
    for (std::size_t j = 0; j < t.size(); ++j)
      if ((t[j] != 0) != (j == i)) cert.targets_unit = false;
    auto it = witness.find(ap.term(m));
    if (it == witness.end()) {
      cert.targets_in_sumset = false;
    } else {
      const auto& x = shifted_of.at(it->second.first);
      const auto& y = shifted_of.at(it->second.second);
      for (std::size_t j = 0; j < t.size(); ++j)
        if ((x[j] + y[j]) % q != t[j]) cert.targets_in_sumset = false;
    }
    targets.push_back(std::move(t));
  }
  cert.target_rank = rank_mod_q(targets, q);
  cert.verified = cert.targets_unit && cert.targets_in_sumset && cert.target_rank == cert.bound &&
                  cert.embedded_basis_size >= cert.bound && cert.basis_size >= cert.bound;
  return cert;
}

MarkingSet private_prime_marks(const APSpec& ap, const PrimeTable& table) {
  if (ap.u + mul_checked(ap.v, ap.M) > table.limit()) throw ArgumentError("prime table limit below u + M v");
  std::vector<Factorization> terms;
  std::unordered_map<u64, u64> hits;
  for (u64 m = 1; m <= ap.M; ++m) {
    terms.push_back(factorize(ap.u + ap.v * m, table));
    for (const auto& [p, e] : terms.back().factors) ++hits[p];
  }
  MarkingSet out;
  for (u64 m = 1; m <= ap.M; ++m)
    for (const auto& [p, e] : terms[m - 1].factors)
      if (hits[p] == 1) {
        out.entries.push_back({m, p});
        break;
      }
  return out;
}

Lemma2Check lemma2_divisibility_check(u64 u, u64 v, u64 M, const PrimeTable& table) {
  if (v == 0 || M == 0) throw ArgumentError("lemma2_divisibility_check needs v >= 1 and M >= 1");
  if (std::gcd(u, v) != 1) throw ArgumentError("lemma2_divisibility_check needs gcd(u, v) = 1");
  const u64 top = u + mul_checked(M, v);
  if (top > table.limit()) throw ArgumentError("prime table limit below u + M v");

  Lemma2Check out{u, v, M, {}, {}, {}, {}, false};
  std::vector<char> excluded(M + 1, 0);
  std::map<u64, std::pair<unsigned, u64>> best;  // p -> (valuation, first m)
  for (u64 m = 1; m <= M; ++m) {
    const auto f = factorize(u + m * v, table);
    if (!f.factors.empty() && f.factors.rbegin()->first >= M) {
      out.large_prime_indices.push_back(m);
      excluded[m] = 1;
    }
    for (auto [p, e] : f.factors) {
      if (p >= M) continue;
      auto it = best.find(p);
      if (it == best.end() || e > it->second.first) best[p] = {e, m};
    }
  }
  // Primes dividing no term contribute nothing to the product; they get no m_p.
  for (const auto& [p, vm] : best) out.extremal_indices.push_back(vm.second);
  std::sort(out.extremal_indices.begin(), out.extremal_indices.end());
  out.extremal_indices.erase(std::unique(out.extremal_indices.begin(), out.extremal_indices.end()),
                             out.extremal_indices.end());
  for (u64 m : out.extremal_indices) excluded[m] = 1;

  std::vector<u64> terms;
  for (u64 m = 1; m <= M; ++m) {
    if (excluded[m]) continue;
    out.surviving_indices.push_back(m);
    terms.push_back(u + m * v);
  }
  const mpz_class prod = product(terms);
  out.product = prod.get_str();
  out.divides = mpz_divisible_p(factorial(M - 1).get_mpz_t(), prod.get_mpz_t()) != 0;
  return out;
}

MarkingSets build_marking_sets(u64 M, u64 u, const PrimeTable& table) {
  if (M == 0) throw ArgumentError("build_marking_sets needs M >= 1");
  if (u > M) throw ArgumentError("build_marking_sets needs u <= M");
  if (table.limit() < M) throw ArgumentError("prime table limit below M");

  MarkingSets out;
  out.M = M;
  out.u = u;
  const u64 root = floor_cbrt(M);
  for (u64 p : table.primes()) {
    if (p > M) break;
    if (p == 2) continue;  // 2 carries the power-of-two shift and cannot be marked
    if (p > root)
      out.large_primes.push_back(p);
    else
      out.small_primes.push_back(p);
  }
  for (u64 p : out.large_primes) {
    const unsigned k = shift_into_interval(p, u, M);
    out.singles.entries.push_back({(p << k) - u, p});
    out.single_shifts.push_back(k);
  }
  const auto& s = out.small_primes;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      for (std::size_t k = j + 1; k < s.size(); ++k) {
        const u64 x = s[i] * s[j] * s[k];
        if (x > M) break;
        const unsigned shift = shift_into_interval(x, u, M);
        out.triples.push_back({(x << shift) - u, x, {s[i], s[j], s[k]}, shift});
      }
  return out;
}

}  // namespace mulbasis
