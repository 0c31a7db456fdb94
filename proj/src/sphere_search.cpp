// Exact minimum additive basis for the 3-sphere in small dimension.
//
// Elements of GF(3)^n are indexed 0..3^n-1 (base-3 digits, coordinate 0
// lowest). For a fixed size k the search branches on the first uncovered
// target t: either add the partner t-b of some chosen b (one new element),
// add -t (t = -t + -t), or add a fresh pair {c, t-c} (two new elements).
// Every completion of the current basis covers t in one of these ways, so
// the branching is complete. Partial bases are remembered in canonical form
// (minimum image under coordinate permutations), which removes both the
// reorderings and the n! symmetric copies of each state.

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "mulbasis/error.hpp"
#include "mulbasis/spherelab.hpp"

namespace mulbasis {
namespace {

struct BudgetExhausted {};

using Key = std::vector<std::uint16_t>;

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (auto x : k) h = (h ^ x) * 0x100000001b3ull;
    return static_cast<std::size_t>(h);
  }
};

class SphereSearch {
 public:
  SphereSearch(std::size_t n, u64 budget) : n_(n), budget_(budget) {
    size_ = 1;
    for (std::size_t i = 0; i < n; ++i) size_ *= 3;
    digits_.assign(size_, std::vector<std::uint8_t>(n));
    for (std::uint32_t x = 0; x < size_; ++x) {
      std::uint32_t y = x;
      for (std::size_t i = 0; i < n; ++i) {
        digits_[x][i] = static_cast<std::uint8_t>(y % 3);
        y /= 3;
      }
    }
    add_.assign(static_cast<std::size_t>(size_) * size_, 0);
    neg_.assign(size_, 0);
    lex_.assign(size_, 0);
    for (std::uint32_t x = 0; x < size_; ++x) {
      std::vector<std::uint8_t> d(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = static_cast<std::uint8_t>((3 - digits_[x][i]) % 3);
      neg_[x] = encode(d);
      std::uint32_t key = 0;
      for (std::size_t i = 0; i < n; ++i) key = key * 3 + digits_[x][i];
      lex_[x] = static_cast<std::uint16_t>(key);
      for (std::uint32_t y = 0; y < size_; ++y) {
        for (std::size_t i = 0; i < n; ++i) d[i] = static_cast<std::uint8_t>((digits_[x][i] + digits_[y][i]) % 3);
        add_[static_cast<std::size_t>(x) * size_ + y] = static_cast<std::uint16_t>(encode(d));
      }
    }
    for (const auto& t : enumerate_sphere(n, 3)) {
      std::vector<std::uint8_t> d(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = t[i];
      targets_.push_back(encode(d));
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<std::uint16_t> img(size_);
      std::vector<std::uint8_t> d(n);
      for (std::uint32_t x = 0; x < size_; ++x) {
        for (std::size_t i = 0; i < n; ++i) d[perm[i]] = digits_[x][i];
        img[x] = static_cast<std::uint16_t>(encode(d));
      }
      perms_.push_back(std::move(img));
    } while (std::next_permutation(perm.begin(), perm.end()));
    in_.assign(size_, 0);
  }

  u64 nodes() const { return nodes_; }

  bool feasible(std::size_t k) {
    k_ = k;
    failed_.clear();
    chosen_.clear();
    std::fill(in_.begin(), in_.end(), 0);
    return dfs();
  }

  // Lexicographically smallest permutation image of the current basis.
  std::vector<TernaryVector> canonical_solution() const {
    Key best;
    for (const auto& img : perms_) {
      Key k;
      for (auto x : chosen_) k.push_back(lex_[img[x]]);
      std::sort(k.begin(), k.end());
      if (best.empty() || k < best) best = std::move(k);
    }
    std::vector<TernaryVector> out;
    for (auto key : best) {
      TernaryVector v(n_);
      for (std::size_t i = n_; i-- > 0;) {
        v.set(i, static_cast<std::uint8_t>(key % 3));
        key /= 3;
      }
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  std::uint32_t encode(const std::vector<std::uint8_t>& d) const {
    std::uint32_t x = 0;
    for (std::size_t i = n_; i-- > 0;) x = x * 3 + d[i];
    return x;
  }

  std::uint32_t sum(std::uint32_t x, std::uint32_t y) const {
    return add_[static_cast<std::size_t>(x) * size_ + y];
  }

  bool covered(std::uint32_t t) const {
    for (auto b : chosen_)
      if (in_[sum(t, neg_[b])]) return true;
    return false;
  }

  Key canonical_key() const {
    Key best;
    Key k;
    for (const auto& img : perms_) {
      k.clear();
      for (auto x : chosen_) k.push_back(img[x]);
      std::sort(k.begin(), k.end());
      if (best.empty() || k < best) best = k;
    }
    return best;
  }

  void push(std::uint32_t x) {
    in_[x] = 1;
    chosen_.push_back(x);
  }
  void pop() {
    in_[chosen_.back()] = 0;
    chosen_.pop_back();
  }

  bool dfs() {
    if (++nodes_ > budget_) throw BudgetExhausted{};
    std::size_t uncovered = 0;
    std::uint32_t first = 0;
    for (auto t : targets_) {
      if (!covered(t)) {
        if (uncovered++ == 0) first = t;
      }
    }
    if (uncovered == 0) return true;
    const std::size_t s = chosen_.size();
    if (s >= k_) return false;
    const std::size_t r = k_ - s;
    if (uncovered > r * s + r * (r + 1) / 2) return false;

    Key key = canonical_key();
    if (failed_.contains(key)) return false;

    const std::uint32_t t = first;
    std::vector<std::vector<std::uint32_t>> options;
    std::vector<std::uint32_t> singles;
    for (auto b : chosen_) singles.push_back(sum(t, neg_[b]));
    if (!in_[neg_[t]]) singles.push_back(neg_[t]);
    std::sort(singles.begin(), singles.end(), [&](auto a, auto b) { return lex_[a] < lex_[b]; });
    singles.erase(std::unique(singles.begin(), singles.end()), singles.end());
    for (auto x : singles) options.push_back({x});
    if (r >= 2) {
      std::vector<std::pair<std::uint32_t, std::uint32_t>> doubles;
      for (std::uint32_t c = 0; c < size_; ++c) {
        const std::uint32_t d = sum(t, neg_[c]);
        if (in_[c] || in_[d] || lex_[c] >= lex_[d]) continue;
        doubles.emplace_back(c, d);
      }
      std::sort(doubles.begin(), doubles.end(),
                [&](auto a, auto b) { return lex_[a.first] < lex_[b.first]; });
      for (auto [c, d] : doubles) options.push_back({c, d});
    }

    for (const auto& opt : options) {
      for (auto x : opt) push(x);
      if (dfs()) return true;
      for (std::size_t i = 0; i < opt.size(); ++i) pop();
    }
    failed_.insert(std::move(key));
    return false;
  }

  std::size_t n_;
  u64 budget_;
  u64 nodes_ = 0;
  std::uint32_t size_ = 0;
  std::size_t k_ = 0;
  std::vector<std::vector<std::uint8_t>> digits_;
  std::vector<std::uint16_t> add_;
  std::vector<std::uint32_t> neg_;
  std::vector<std::uint16_t> lex_;
  std::vector<std::uint32_t> targets_;
  std::vector<std::vector<std::uint16_t>> perms_;
  std::vector<char> in_;
  std::vector<std::uint32_t> chosen_;
  std::unordered_set<Key, KeyHash> failed_;
};

}  // namespace

SphereBasisSolution sphere_min_basis(std::size_t n, u64 budget_nodes) {
  if (n > kSphereSearchMaxDim)
    throw ArgumentError("sphere_min_basis: n = " + std::to_string(n) + " above exact-search limit " +
                        std::to_string(kSphereSearchMaxDim));
  SphereBasisSolution sol;
  if (n < 3) {
    sol.optimal = true;
    return sol;
  }

  SphereSearch search(n, budget_nodes);
  const u64 upper = n * (n + 1) / 2;
  try {
    for (u64 k = std::max<u64>(1, sphere_counting_bound(n)); k <= upper; ++k) {
      if (search.feasible(k)) {
        sol.basis = search.canonical_solution();
        sol.optimal = true;
        break;
      }
    }
  } catch (const BudgetExhausted&) {
    sol.optimal = false;
  }
  if (!sol.optimal) sol.basis = sphere_basis_construct(n).basis;
  sol.nodes_explored = search.nodes();

  auto cover = sphere_cover_verify(sol.basis, n, 3);
  if (!cover.ok()) throw InvariantViolation("sphere_min_basis produced a non-covering basis");
  sol.witness = std::move(cover.witness);
  return sol;
}

}  // namespace mulbasis
