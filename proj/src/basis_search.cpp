// Exact minimum multiplicative basis search.
//
// The search answers "is there a basis of size <= k that contains `forced`
// and avoids `forbidden`?" by branching on the uncovered target with the
// fewest affordable factorizations. Two bounds prune a node: the counting
// bound (r new elements add at most r*s + r(r+1)/2 products to a basis of
// size s) and a packing bound (uncovered targets whose candidate new
// elements are pairwise disjoint each need their own new element). Failed
// partial bases are remembered for the rest of the query.
//
// exact_min_basis raises k from the root lower bound until the answer is
// yes, then fixes elements in ascending order whenever the query stays
// feasible; that greedy pass yields the lexicographically smallest optimum.

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "mulbasis/error.hpp"
#include "mulbasis/productsets.hpp"

namespace mulbasis {
namespace {

struct BudgetExhausted {};

struct Option {
  std::uint32_t lo;
  std::uint32_t hi;
};

struct Instance {
  IntSet targets;
  IntSet pool;
  std::vector<std::vector<Option>> options;  // per target
  // per pool element: (target, partner) for every option using it
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> uses;
};

IntSet divisor_pool(const IntSet& targets) {
  IntSet pool;
  for (u64 a : targets) {
    for (u64 d = 1; d <= a / d; ++d) {
      if (a % d == 0) {
        pool.push_back(d);
        pool.push_back(a / d);
      }
    }
  }
  return make_set(pool);
}

Instance build_instance(const IntSet& targets, const IntSet& pool) {
  Instance inst{targets, pool, {}, {}};
  inst.options.resize(targets.size());
  inst.uses.resize(pool.size());
  for (std::uint32_t t = 0; t < targets.size(); ++t) {
    const u64 a = targets[t];
    for (std::uint32_t i = 0; i < pool.size() && pool[i] <= a / pool[i]; ++i) {
      if (a % pool[i]) continue;
      auto it = std::lower_bound(pool.begin(), pool.end(), a / pool[i]);
      if (it == pool.end() || *it != a / pool[i]) continue;
      const auto j = static_cast<std::uint32_t>(it - pool.begin());
      inst.options[t].push_back({i, j});
      inst.uses[i].emplace_back(t, j);
      if (j != i) inst.uses[j].emplace_back(t, i);
    }
    if (inst.options[t].empty())
      throw ArgumentError("target " + std::to_string(a) + " has no factorization within the pool");
  }
  return inst;
}

struct BitsHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (auto w : v) h = (h ^ w) * 0x100000001b3ull;
    return static_cast<std::size_t>(h);
  }
};

class CoverSearch {
 public:
  CoverSearch(const Instance& inst, u64 budget)
      : inst_(inst),
        budget_(budget),
        chosen_(inst.pool.size(), 0),
        forbidden_(inst.pool.size(), 0),
        cover_(inst.targets.size(), 0),
        mark_(inst.pool.size(), 0) {}

  u64 nodes() const { return nodes_; }

  // Throws BudgetExhausted.
  bool feasible(std::size_t k, const std::vector<std::uint32_t>& forced,
                const std::vector<std::uint32_t>& forbidden) {
    reset();
    for (auto x : forbidden) forbidden_[x] = 1;
    for (auto x : forced) add(x);
    k_ = k;
    failed_.clear();
    return dfs();
  }

  // Smallest number of new elements the empty basis provably needs.
  std::size_t root_lower_bound() {
    reset();
    k_ = inst_.pool.size();
    return new_elements_needed();
  }

  IntSet solution() const {
    IntSet out;
    for (auto x : chosen_list_) out.push_back(inst_.pool[x]);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void reset() {
    while (!chosen_list_.empty()) remove(chosen_list_.back());
    std::fill(forbidden_.begin(), forbidden_.end(), 0);
  }

  void add(std::uint32_t x) {
    chosen_[x] = 1;
    chosen_list_.push_back(x);
    for (auto [t, partner] : inst_.uses[x])
      if (chosen_[partner]) ++cover_[t];
  }

  void remove(std::uint32_t x) {
    for (auto [t, partner] : inst_.uses[x])
      if (chosen_[partner]) --cover_[t];
    chosen_[x] = 0;
    chosen_list_.pop_back();
  }

  std::size_t new_cost(const Option& o) const {
    if (o.lo == o.hi) return chosen_[o.lo] ? 0 : 1;
    return (chosen_[o.lo] ? 0 : 1) + (chosen_[o.hi] ? 0 : 1);
  }

  bool viable(const Option& o) const { return !forbidden_[o.lo] && !forbidden_[o.hi]; }

  // Lower bound on elements still to add; SIZE_MAX if some target is dead.
  std::size_t new_elements_needed() {
    uncovered_.clear();
    for (std::uint32_t t = 0; t < cover_.size(); ++t)
      if (!cover_[t]) uncovered_.push_back(t);
    if (uncovered_.empty()) return 0;

    const std::size_t s = chosen_list_.size();
    std::size_t r = 1;
    while (r * s + r * (r + 1) / 2 < uncovered_.size()) ++r;

    // Candidate new elements per uncovered target, for the packing bound.
    cands_.clear();
    for (auto t : uncovered_) {
      std::vector<std::uint32_t> c;
      for (const auto& o : inst_.options[t]) {
        if (!viable(o)) continue;
        if (!chosen_[o.lo]) c.push_back(o.lo);
        if (!chosen_[o.hi]) c.push_back(o.hi);
      }
      if (c.empty()) return SIZE_MAX;
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
      cands_.push_back(std::move(c));
    }
    std::vector<std::size_t> order(cands_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return cands_[a].size() < cands_[b].size(); });
    std::size_t packed = 0;
    std::vector<std::uint32_t> touched;
    for (auto i : order) {
      bool disjoint = std::none_of(cands_[i].begin(), cands_[i].end(), [&](auto x) { return mark_[x]; });
      if (!disjoint) continue;
      ++packed;
      for (auto x : cands_[i]) {
        mark_[x] = 1;
        touched.push_back(x);
      }
    }
    for (auto x : touched) mark_[x] = 0;
    return std::max(r, packed);
  }

  bool dfs() {
    if (++nodes_ > budget_) throw BudgetExhausted{};
    const std::size_t need = new_elements_needed();
    if (need == 0) return true;
    const std::size_t s = chosen_list_.size();
    if (s >= k_ || need == SIZE_MAX || need > k_ - s) return false;
    const std::size_t r = k_ - s;

    std::vector<std::uint64_t> key((chosen_.size() + 63) / 64, 0);
    for (auto x : chosen_list_) key[x / 64] |= std::uint64_t{1} << (x % 64);
    if (failed_.contains(key)) return false;

    // Fail-first: the uncovered target with the fewest affordable options.
    std::uint32_t best_t = 0;
    std::size_t best_count = SIZE_MAX;
    for (auto t : uncovered_) {
      std::size_t count = 0;
      for (const auto& o : inst_.options[t])
        if (viable(o) && new_cost(o) <= r) ++count;
      if (count < best_count) {
        best_count = count;
        best_t = t;
      }
    }

    std::vector<Option> opts;
    for (const auto& o : inst_.options[best_t])
      if (viable(o) && new_cost(o) <= r) opts.push_back(o);
    std::stable_sort(opts.begin(), opts.end(),
                     [&](const Option& a, const Option& b) { return new_cost(a) < new_cost(b); });

    for (const auto& o : opts) {
      std::vector<std::uint32_t> added;
      if (!chosen_[o.lo]) added.push_back(o.lo);
      if (o.hi != o.lo && !chosen_[o.hi]) added.push_back(o.hi);
      for (auto x : added) add(x);
      const bool ok = dfs();
      if (ok) return true;
      for (auto it = added.rbegin(); it != added.rend(); ++it) remove(*it);
    }
    failed_.insert(std::move(key));
    return false;
  }

  const Instance& inst_;
  u64 budget_;
  u64 nodes_ = 0;
  std::size_t k_ = 0;
  std::vector<char> chosen_;
  std::vector<char> forbidden_;
  std::vector<std::uint32_t> cover_;
  std::vector<char> mark_;
  std::vector<std::uint32_t> chosen_list_;
  std::vector<std::uint32_t> uncovered_;
  std::vector<std::vector<std::uint32_t>> cands_;
  std::unordered_set<std::vector<std::uint64_t>, BitsHash> failed_;
};

// Cheapest option per target in ascending target order.
IntSet greedy_basis(const Instance& inst) {
  std::vector<char> in(inst.pool.size(), 0);
  for (std::size_t t = 0; t < inst.targets.size(); ++t) {
    const Option* best = nullptr;
    std::size_t best_cost = 3;
    for (const auto& o : inst.options[t]) {
      const std::size_t cost = (in[o.lo] ? 0 : 1) + (o.hi != o.lo && !in[o.hi] ? 1 : 0);
      if (cost < best_cost) {
        best_cost = cost;
        best = &o;
      }
    }
    in[best->lo] = in[best->hi] = 1;
  }
  IntSet out;
  for (std::size_t i = 0; i < in.size(); ++i)
    if (in[i]) out.push_back(inst.pool[i]);
  return out;
}

}  // namespace

BasisSolution exact_min_basis(std::span<const u64> targets_in, const MinBasisOptions& options) {
  const IntSet targets = make_set(targets_in);
  if (targets.empty()) throw ArgumentError("exact_min_basis: target set is empty");
  const IntSet pool = options.pool ? make_set(*options.pool) : divisor_pool(targets);
  const Instance inst = build_instance(targets, pool);

  CoverSearch search(inst, options.budget_nodes);
  BasisSolution sol;
  sol.basis = greedy_basis(inst);

  try {
    std::size_t k = std::max<std::size_t>(1, search.root_lower_bound());
    std::size_t best_k = sol.basis.size();
    for (; k < best_k; ++k) {
      if (search.feasible(k, {}, {})) {
        best_k = k;
        sol.basis = search.solution();
        break;
      }
    }
    // best_k is now the minimum size. Fix elements in ascending order while
    // a size-best_k completion still exists.
    std::vector<std::uint32_t> forced, forbidden;
    for (std::uint32_t x = 0; x < pool.size() && forced.size() < best_k; ++x) {
      forced.push_back(x);
      if (search.feasible(best_k, forced, forbidden)) {
        if (search.solution().size() == forced.size()) break;
      } else {
        forced.pop_back();
        forbidden.push_back(x);
      }
    }
    IntSet lex;
    for (auto x : forced) lex.push_back(pool[x]);
    sol.basis = lex;
    sol.optimal = true;
  } catch (const BudgetExhausted&) {
    sol.optimal = false;
  }
  sol.nodes_explored = search.nodes();

  auto cover = verify_cover(targets, sol.basis);
  if (!cover.ok())
    throw InvariantViolation("exact_min_basis produced a non-covering basis (uncovered " +
                             std::to_string(*cover.uncovered) + ")");
  sol.witness = std::move(cover.witness);
  return sol;
}

}  // namespace mulbasis
