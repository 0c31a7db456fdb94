// Brute-force reference computations shared by the unit and acceptance tests.
// Nothing here calls into the search code it is used to check.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

struct Best {
  std::size_t size = 0;
  std::vector<u64> basis;  // lexicographically smallest among the minimum ones
};

// Minimum B within [1..M] with [1..M] ⊆ B·B, by listing every subset of each
// size in turn. M <= 26.
inline Best min_interval_basis(unsigned M) {
  std::vector<std::vector<std::uint32_t>> pairs(M + 1);
  for (unsigned a = 1; a <= M; ++a)
    for (unsigned d = 1; d * d <= a; ++d)
      if (a % d == 0) pairs[a].push_back((1u << (d - 1)) | (1u << (a / d - 1)));
  auto covers = [&](std::uint32_t mask) {
    for (unsigned a = 1; a <= M; ++a) {
      bool ok = false;
      for (auto pm : pairs[a])
        if ((mask & pm) == pm) {
          ok = true;
          break;
        }
      if (!ok) return false;
    }
    return true;
  };
  auto as_list = [](std::uint32_t mask) {
    std::vector<u64> out;
    for (unsigned i = 0; i < 32; ++i)
      if (mask >> i & 1u) out.push_back(i + 1);
    return out;
  };
  for (unsigned k = 1; k <= M; ++k) {
    Best best;
    const std::uint64_t end = 1ull << M;
    for (std::uint64_t m = (1ull << k) - 1; m < end;) {
      if (covers(static_cast<std::uint32_t>(m))) {
        auto list = as_list(static_cast<std::uint32_t>(m));
        if (best.basis.empty() || list < best.basis) best.basis = list;
      }
      const std::uint64_t c = m & (0 - m), r = m + c;  // next subset of the same size
      m = (((r ^ m) >> 2) / c) | r;
    }
    if (!best.basis.empty()) {
      best.size = k;
      return best;
    }
  }
  return {};
}

// Minimum B among divisors of the targets with targets ⊆ B·B, by listing
// index combinations of increasing size. Small inputs only.
inline Best min_basis(const std::vector<u64>& targets) {
  std::vector<u64> pool;
  for (u64 t : targets)
    for (u64 d = 1; d <= t; ++d)
      if (t % d == 0) pool.push_back(d);
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  auto covers = [&](const std::vector<u64>& B) {
    for (u64 t : targets) {
      bool ok = false;
      for (u64 b : B)
        if (t % b == 0 && std::binary_search(B.begin(), B.end(), t / b)) ok = true;
      if (!ok) return false;
    }
    return true;
  };
  for (std::size_t k = 1; k <= pool.size(); ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      std::vector<u64> B;
      for (auto i : idx) B.push_back(pool[i]);
      // Combinations come out in lexicographic order, so the first hit is the smallest.
      if (covers(B)) return {k, B};
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == pool.size() - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return {};
}

// Vectors of F3^n as digit arrays, index = base-3 number.
inline std::vector<std::vector<int>> all_vectors(unsigned n) {
  unsigned total = 1;
  for (unsigned i = 0; i < n; ++i) total *= 3;
  std::vector<std::vector<int>> out(total, std::vector<int>(n));
  for (unsigned x = 0; x < total; ++x) {
    unsigned y = x;
    for (unsigned i = 0; i < n; ++i) {
      out[x][i] = static_cast<int>(y % 3);
      y /= 3;
    }
  }
  return out;
}

// Smallest k <= max_k such that some k-subset B of F3^n has every weight-3
// 0/1 vector in B + B; 0 if none up to max_k.
inline std::size_t min_sphere_basis(unsigned n, std::size_t max_k) {
  const auto vs = all_vectors(n);
  const unsigned total = static_cast<unsigned>(vs.size());
  auto index_of = [&](const std::vector<int>& v) {
    unsigned x = 0;
    for (unsigned i = n; i-- > 0;) x = x * 3 + static_cast<unsigned>(v[i]);
    return x;
  };
  std::vector<unsigned> targets;
  for (unsigned x = 0; x < total; ++x) {
    int ones = 0, twos = 0;
    for (int c : vs[x]) {
      ones += c == 1;
      twos += c == 2;
    }
    if (ones == 3 && twos == 0) targets.push_back(x);
  }
  auto sum = [&](unsigned a, unsigned b) {
    std::vector<int> s(n);
    for (unsigned i = 0; i < n; ++i) s[i] = (vs[a][i] + vs[b][i]) % 3;
    return index_of(s);
  };
  for (std::size_t k = 1; k <= max_k; ++k) {
    std::vector<unsigned> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<unsigned>(i);
    for (;;) {
      std::vector<bool> hit(total, false);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) hit[sum(idx[i], idx[j])] = true;
      bool ok = true;
      for (unsigned t : targets) ok = ok && hit[t];
      if (ok) return k;
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == total - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return 0;
}

// Ordered pairs (a, a') of weight-3 0/1 vectors grouped by the digit string
// of a - a' mod 3.
inline std::map<std::string, u64> difference_counts(unsigned n) {
  std::vector<std::vector<int>> s3;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j)
      for (unsigned k = j + 1; k < n; ++k) {
        std::vector<int> v(n, 0);
        v[i] = v[j] = v[k] = 1;
        s3.push_back(v);
      }
  std::map<std::string, u64> out;
  for (const auto& a : s3)
    for (const auto& b : s3) {
      std::string key(n, '0');
      for (unsigned i = 0; i < n; ++i) key[i] = static_cast<char>('0' + (a[i] - b[i] + 3) % 3);
      ++out[key];
    }
  return out;
}

// Indices m in [1, M] left after removing every m whose term u + m v has a
// prime factor >= M, and for each prime p < M dividing some term the first m
// of largest p-valuation. Trial division throughout.
inline std::vector<u64> lemma2_survivors(u64 u, u64 v, u64 M) {
  std::vector<bool> removed(M + 1, false);
  std::map<u64, std::pair<unsigned, u64>> best;  // prime -> (valuation, first m)
  auto note = [&](u64 q, unsigned e, u64 m) {
    if (q >= M) removed[m] = true;
    else if (!best.count(q) || best[q].first < e) best[q] = {e, m};
  };
  for (u64 m = 1; m <= M; ++m) {
    u64 x = u + m * v;
    for (u64 q = 2; q * q <= x; ++q) {
      unsigned e = 0;
      while (x % q == 0) {
        x /= q;
        ++e;
      }
      if (e) note(q, e, m);
    }
    if (x > 1) note(x, 1, m);
  }
  for (const auto& [q, em] : best) removed[em.second] = true;
  std::vector<u64> out;
  for (u64 m = 1; m <= M; ++m)
    if (!removed[m]) out.push_back(m);
  return out;
}

}  // namespace oracle
