#include "mulbasis/certificates.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "mulbasis/error.hpp"
#include "mulbasis/spherelab.hpp"

namespace mulbasis {

namespace {

std::vector<TernaryVector> sorted_unique(std::span<const TernaryVector> v) {
  std::vector<TernaryVector> out(v.begin(), v.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_sphere3(const TernaryVector& t) { return t.count_twos() == 0 && t.count_ones() == 3; }

// Right-vertex view of a set of edges.
std::map<std::size_t, std::vector<std::size_t>> by_right(const PairingGraph& G, std::span<const std::size_t> edges) {
  std::map<std::size_t, std::vector<std::size_t>> out;
  for (auto e : edges) out[G.edges[e].right].push_back(G.edges[e].left);
  return out;
}

double sum_squares(const std::map<std::size_t, std::vector<std::size_t>>& adj) {
  double s = 0;
  for (const auto& [w, nb] : adj) s += static_cast<double>(nb.size()) * static_cast<double>(nb.size());
  return s;
}

struct CaseSums {
  double zero = 0, case1 = 0, case2 = 0, case3 = 0, other = 0;
  double total() const { return zero + case1 + case2 + case3 + other; }
};

// Common-neighbour counts over ordered left pairs, gathered at each right vertex.
CaseSums case_sums(const PairingGraph& G, const std::map<std::size_t, std::vector<std::size_t>>& adj) {
  CaseSums s;
  for (const auto& [w, nb] : adj)
    for (auto v1 : nb)
      for (auto v2 : nb) {
        switch (classify_difference(G.vertices[v1] - G.vertices[v2])) {
          case DifferenceCase::Zero: s.zero += 1; break;
          case DifferenceCase::Case1: s.case1 += 1; break;
          case DifferenceCase::Case2: s.case2 += 1; break;
          case DifferenceCase::Case3: s.case3 += 1; break;
          case DifferenceCase::Other: s.other += 1; break;
        }
      }
  return s;
}

}  // namespace

PairingGraph build_pairing_graph(std::span<const TernaryVector> basis, std::span<const TernaryVector> targets) {
  PairingGraph G;
  G.vertices = sorted_unique(basis);
  std::unordered_map<TernaryVector, std::size_t, TernaryVectorHash> index;
  for (std::size_t i = 0; i < G.vertices.size(); ++i) index.emplace(G.vertices[i], i);

  G.edges.reserve(targets.size());
  for (const auto& t : targets) {
    bool found = false;
    for (std::size_t i = 0; i < G.vertices.size() && !found; ++i) {
      if (G.vertices[i].size() != t.size()) throw ArgumentError("build_pairing_graph: dimension mismatch");
      auto it = index.find(t - G.vertices[i]);
      if (it != index.end()) {
        G.edges.push_back({i, it->second, t});
        found = true;
      }
    }
    if (!found) throw ArgumentError("build_pairing_graph: target " + t.str() + " is not a sum of two basis elements");
  }
  return G;
}

std::vector<Subgraph> decompose_by_coordinate(const PairingGraph& G, std::size_t n) {
  std::vector<Subgraph> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i].coordinate = i;
  for (std::size_t e = 0; e < G.edges.size(); ++e) {
    const auto& t = G.edges[e].target;
    if (t.size() != n || !is_sphere3(t))
      throw ArgumentError("decompose_by_coordinate: target " + t.str() + " is not in the 3-sphere");
    for (auto i : t.support()) out[i].edges.push_back(e);
  }
  return out;
}

PruneResult prune_heavy(const PairingGraph& G, const Subgraph& H, u64 threshold) {
  std::map<std::size_t, u64> degree;
  for (auto e : H.edges) ++degree[G.edges[e].right];
  PruneResult out;
  out.kept.coordinate = H.coordinate;
  for (const auto& [w, d] : degree)
    if (d > threshold) {
      out.heavy.push_back(w);
      out.removed_edges += d;
    }
  for (auto e : H.edges)
    if (!std::binary_search(out.heavy.begin(), out.heavy.end(), G.edges[e].right)) out.kept.edges.push_back(e);
  return out;
}

Lemma4Analysis lemma4_report(std::span<const TernaryVector> basis_in, std::size_t n,
                             std::optional<std::span<const TernaryVector>> targets_in) {
  const auto basis = sorted_unique(basis_in);
  for (const auto& b : basis)
    if (b.size() != n) throw ArgumentError("lemma4_report: basis vector of wrong dimension");
  std::vector<TernaryVector> targets;
  if (targets_in)
    targets.assign(targets_in->begin(), targets_in->end());
  else if (n >= 3)
    targets = enumerate_sphere(n, 3);

  const PairingGraph G = build_pairing_graph(basis, targets);
  const double nn = static_cast<double>(n);
  const double B = static_cast<double>(basis.size());

  Lemma4Analysis out;
  out.n = n;
  out.basis_size = basis.size();
  out.edges = G.edges.size();
  auto& reports = out.reports;

  std::vector<std::size_t> all(G.edges.size());
  std::iota(all.begin(), all.end(), 0);
  const auto adj = by_right(G, all);

  // Left side of the identity straight from neighbourhood intersections.
  std::vector<std::vector<std::size_t>> nbr(G.vertices.size());
  for (const auto& e : G.edges) nbr[e.left].push_back(e.right);
  std::vector<std::size_t> lefts;
  for (std::size_t v = 0; v < nbr.size(); ++v)
    if (!nbr[v].empty()) {
      std::sort(nbr[v].begin(), nbr[v].end());
      lefts.push_back(v);
    }
  double lhs = 0, case1_max = 0, case1_total = 0, case3_total = 0;
  std::unordered_map<TernaryVector, double, TernaryVectorHash> case3_by_diff;
  std::vector<std::size_t> common;
  for (auto v1 : lefts)
    for (auto v2 : lefts) {
      common.clear();
      std::set_intersection(nbr[v1].begin(), nbr[v1].end(), nbr[v2].begin(), nbr[v2].end(),
                            std::back_inserter(common));
      if (common.empty()) continue;
      const double c = static_cast<double>(common.size());
      lhs += c;
      const TernaryVector diff = G.vertices[v1] - G.vertices[v2];
      switch (classify_difference(diff)) {
        case DifferenceCase::Case1:
          case1_total += c;
          case1_max = std::max(case1_max, c);
          break;
        case DifferenceCase::Case3:
          case3_total += c;
          case3_by_diff[diff] += c;
          break;
        default: break;
      }
    }
  const double sq = sum_squares(adj);
  check_eq(reports, "cssum", lhs, sq);

  const CaseSums split = case_sums(G, adj);
  check_eq(reports, "cssum.split", split.total(), sq);
  reports.push_back(check_le("other_pairs", split.other, 0));
  reports.push_back(check_le("case1.pair", case1_max, 1));
  reports.push_back(check_le("case1.total", case1_total, B * B));
  double case3_max = 0;
  for (const auto& [d, c] : case3_by_diff) case3_max = std::max(case3_max, c);
  reports.push_back(check_le("case3.per_difference", case3_max, nn * nn));
  reports.push_back(check_le("case3.total", case3_total, nn * nn * nn * nn));

  // Split by coordinate and prune heavy right vertices.
  const bool small_basis = B < nn * nn / 100.0;
  const auto parts = n >= 3 ? decompose_by_coordinate(G, n) : std::vector<Subgraph>{};
  std::vector<PruneResult> pruned;
  std::vector<char> kept_somewhere(G.edges.size(), 0);
  double removed_max = 0;
  for (const auto& H : parts) {
    pruned.push_back(prune_heavy(G, H, default_prune_threshold(n)));
    removed_max = std::max(removed_max, static_cast<double>(pruned.back().removed_edges));
    for (auto e : pruned.back().kept.edges) kept_somewhere[e] = 1;
  }
  reports.push_back(check_le("sublemma", removed_max, nn * nn / 50.0, small_basis));

  double worst_lhs = 0, worst_rhs = 0, worst_gap = -1e300, case2_parts = 0;
  for (std::size_t i = 0; i < pruned.size(); ++i) {
    const auto adj_i = by_right(G, pruned[i].kept.edges);
    const double l = sum_squares(adj_i);
    const double r = 1024.0 * nn * static_cast<double>(parts[i].edges.size());
    if (l - r > worst_gap) {
      worst_gap = l - r;
      worst_lhs = l;
      worst_rhs = r;
    }
    case2_parts += case_sums(G, adj_i).case2;
  }
  if (!pruned.empty()) reports.push_back(check_le("case2bound", worst_lhs, worst_rhs));

  // H' is the union of the pruned pieces.
  std::vector<std::size_t> kept;
  for (std::size_t e = 0; e < G.edges.size(); ++e)
    if (kept_somewhere[e] || parts.empty()) kept.push_back(e);
  out.kept_edges = kept.size();
  const double E = static_cast<double>(G.edges.size());
  const double Ep = static_cast<double>(kept.size());
  reports.push_back(check_le("edgenumber", E - nn * nn * nn / 50.0, Ep, small_basis));

  const auto adj_p = by_right(G, kept);
  const double sq_p = sum_squares(adj_p);
  const CaseSums split_p = case_sums(G, adj_p);
  check_eq(reports, "degree_square_split", split_p.total(), sq_p);
  reports.push_back(check_le("case2estimate", split_p.case2, case2_parts));

  // Two edges of H' at a common w from a Case 2 pair must share a surviving H'_i.
  std::vector<std::vector<std::size_t>> kept_in(G.edges.size());
  for (const auto& p : pruned)
    for (auto e : p.kept.edges) kept_in[e].push_back(p.kept.coordinate);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_at;
  for (auto e : kept) edge_at[{G.edges[e].left, G.edges[e].right}] = e;
  double routing_failures = 0;
  for (const auto& [w, nb] : adj_p)
    for (auto v1 : nb)
      for (auto v2 : nb) {
        if (classify_difference(G.vertices[v1] - G.vertices[v2]) != DifferenceCase::Case2) continue;
        const auto& c1 = kept_in[edge_at.at({v1, w})];
        const auto& c2 = kept_in[edge_at.at({v2, w})];
        bool shared = false;
        for (auto i : c1) shared = shared || std::find(c2.begin(), c2.end(), i) != c2.end();
        if (!shared) routing_failures += 1;
      }
  reports.push_back(check_le("case2.routing", routing_failures, 0));

  reports.push_back(check_le("cauchy_schwarz", Ep * Ep, B * sq_p));
  out.implied_lower_bound = sq_p > 0 ? Ep * Ep / sq_p : 0;
  reports.push_back(check_le("implied_lower_bound", out.implied_lower_bound, B));
  return out;
}

ComponentAnalysis theorem1_component_analysis(const PairingGraph& G, std::size_t p1, std::size_t p2) {
  for (const auto& e : G.edges) {
    const auto& t = e.target;
    if (t.size() != p1 + p2 || t.slice(0, p1).weight() != 1 || !t.slice(p1, p1 + p2).is_zero())
      throw ArgumentError("theorem1_component_analysis: target " + t.str() +
                          " is not a unit vector in the first block");
  }
  const std::size_t V = G.vertices.size();
  std::vector<std::vector<std::size_t>> adj(V);
  std::vector<char> used(V, 0);
  for (const auto& e : G.edges) {
    adj[e.left].push_back(e.right);
    if (e.left != e.right) adj[e.right].push_back(e.left);
    used[e.left] = used[e.right] = 1;
  }

  ComponentAnalysis out;
  std::vector<int> colour(V, -1);
  std::vector<std::size_t> comp_of(V, SIZE_MAX);
  std::size_t total_edges = 0;
  std::vector<TernaryVector> all_proj;
  for (std::size_t s = 0; s < V; ++s) {
    if (!used[s] || comp_of[s] != SIZE_MAX) continue;
    ComponentSummary c;
    c.id = out.components.size();
    bool bipartite = true;
    std::size_t degree_sum = 0, loops = 0;
    std::queue<std::size_t> q;
    q.push(s);
    comp_of[s] = c.id;
    colour[s] = 0;
    while (!q.empty()) {
      const auto x = q.front();
      q.pop();
      ++c.vertices;
      out.vertex_ids.push_back(x);
      c.p2_projections.push_back(G.vertices[x].slice(p1, p1 + p2));
      for (auto y : adj[x]) {
        if (y == x) {
          ++loops;
          bipartite = false;
          continue;
        }
        ++degree_sum;
        if (comp_of[y] == SIZE_MAX) {
          comp_of[y] = c.id;
          colour[y] = 1 - colour[x];
          q.push(y);
        } else if (colour[y] == colour[x]) {
          bipartite = false;
        }
      }
    }
    c.edges = degree_sum / 2 + loops;
    const std::size_t cyclomatic = c.edges + 1 - c.vertices;
    c.is_tree = cyclomatic == 0;
    c.has_odd_cycle = !bipartite;
    c.has_even_cycle = bipartite && cyclomatic >= 1;
    c.excess_cycles = cyclomatic >= 2;
    std::sort(c.p2_projections.begin(), c.p2_projections.end());
    c.p2_projections.erase(std::unique(c.p2_projections.begin(), c.p2_projections.end()), c.p2_projections.end());
    all_proj.insert(all_proj.end(), c.p2_projections.begin(), c.p2_projections.end());
    total_edges += c.edges;
    if (c.is_tree) ++out.trees;
    out.components.push_back(std::move(c));
  }
  std::sort(out.vertex_ids.begin(), out.vertex_ids.end());
  out.covered_vertices = out.vertex_ids.size();
  std::sort(all_proj.begin(), all_proj.end());
  all_proj.erase(std::unique(all_proj.begin(), all_proj.end()), all_proj.end());
  out.projection_count = all_proj.size();

  double bad_projections = 0, even = 0, excess = 0;
  for (const auto& c : out.components) {
    const auto& p = c.p2_projections;
    bool ok = p.size() <= 2 && (p.size() < 2 || p[0] == -p[1]);
    if (p.size() == 1 && (c.has_odd_cycle || c.edges > 0)) ok = ok && p[0].is_zero();
    if (!ok) bad_projections += 1;
    if (c.has_even_cycle) even += 1;
    if (c.excess_cycles) excess += 1;
  }
  const double T = static_cast<double>(out.trees);
  out.reports.push_back(check_le("treebound", static_cast<double>(out.projection_count), 2 * T + 1));
  out.reports.push_back(
      check_le("tree_estimate", static_cast<double>(total_edges) + T, static_cast<double>(out.covered_vertices)));
  out.reports.push_back(check_le("components.projections", bad_projections, 0));
  out.reports.push_back(check_le("components.even_cycles", even, 0));
  out.reports.push_back(check_le("components.excess_cycles", excess, 0));
  return out;
}

EndToEndResult end_to_end_lower_bound(const ReducedPair& pair, const PrimeTable& table) {
  auto stage_error = [](const char* stage, const std::string& what) {
    return ArgumentError(std::string("[") + stage + "] " + what);
  };
  const APSpec& ap = pair.ap;
  const u64 M = ap.M;
  if (ap.v != 1) throw stage_error("verify", "progression step must reduce to v = 1");
  if (ap.u > M) throw stage_error("verify", "offset u exceeds M");
  const IntSet basis = make_set(pair.basis);
  if (auto cover = verify_cover(ap.elements(), basis); !cover.ok())
    throw stage_error("verify", "basis misses " + std::to_string(*cover.uncovered));

  MarkingSets marks;
  try {
    marks = build_marking_sets(M, ap.u, table);
  } catch (const ArgumentError& e) {
    throw stage_error("marking", e.what());
  }

  const std::size_t p1 = marks.large_primes.size();
  const std::size_t p2 = marks.small_primes.size();
  const std::size_t dim = p1 + p2;
  std::unordered_map<u64, std::size_t> coord;
  for (std::size_t i = 0; i < p1; ++i) coord[marks.large_primes[i]] = i;
  for (std::size_t i = 0; i < p2; ++i) coord[marks.small_primes[i]] = p1 + i;
  auto embed = [&](u64 x) {
    TernaryVector v(dim);
    for (auto [p, e] : factorize(x, table).factors)
      if (auto it = coord.find(p); it != coord.end()) v.set(it->second, static_cast<std::uint8_t>(e % 3));
    return v;
  };

  // Halving in F3 is doubling, so B' = rho(B) - 2 rho(g).
  const TernaryVector half_g = embed(ap.g).scaled(2);
  std::vector<TernaryVector> embedded;
  embedded.reserve(basis.size());
  for (u64 b : basis) embedded.push_back(embed(b) - half_g);
  std::sort(embedded.begin(), embedded.end());
  embedded.erase(std::unique(embedded.begin(), embedded.end()), embedded.end());

  std::vector<TernaryVector> m1_targets, m2_targets;
  for (const auto& [m, p] : marks.singles.entries) m1_targets.push_back(embed(ap.u + m));
  for (const auto& t : marks.triples) m2_targets.push_back(embed(ap.u + t.m).slice(p1, dim));

  PairingGraph G;
  ComponentAnalysis comp;
  try {
    G = build_pairing_graph(embedded, m1_targets);
    comp = theorem1_component_analysis(G, p1, p2);
  } catch (const ArgumentError& e) {
    throw stage_error("components", e.what());
  }

  std::vector<char> in_h(G.vertices.size(), 0);
  for (auto id : comp.vertex_ids) in_h[id] = 1;
  std::vector<TernaryVector> rest_proj, all_proj;
  for (std::size_t i = 0; i < G.vertices.size(); ++i) {
    auto proj = G.vertices[i].slice(p1, dim);
    if (!in_h[i]) rest_proj.push_back(proj);
    all_proj.push_back(std::move(proj));
  }
  rest_proj = sorted_unique(rest_proj);
  all_proj = sorted_unique(all_proj);

  EndToEndResult out;
  out.M = M;
  out.basis_size = basis.size();
  out.embedded_size = embedded.size();
  out.large_primes = p1;
  out.small_primes = p2;
  out.m1 = marks.singles.entries.size();
  out.m2 = marks.triples.size();
  out.trees = comp.trees;
  out.covered_vertices = comp.covered_vertices;
  out.covered_projections = comp.projection_count;
  out.rest_projections = rest_proj.size();
  out.sphere_basis_size = all_proj.size();

  auto& chain = out.chain;
  const double Bsz = static_cast<double>(out.basis_size);
  const double Bp = static_cast<double>(out.embedded_size);
  const double m1 = static_cast<double>(out.m1);
  const double T = static_cast<double>(out.trees);
  const double E = static_cast<double>(G.edges.size());
  const double VH = static_cast<double>(out.covered_vertices);
  const double rest = static_cast<double>(out.rest_projections);
  const double covered = static_cast<double>(out.covered_projections);

  chain.push_back(check_le("embedding", Bp, Bsz));
  check_eq(chain, "m1.edges", E, m1);
  const double pi_diff = static_cast<double>(table.prime_count(M) - table.prime_count(floor_cbrt(M)));
  chain.push_back(check_le("m1.prime_count", pi_diff, m1, M >= 8));
  chain.insert(chain.end(), comp.reports.begin(), comp.reports.end());
  check_eq(chain, "partition", VH + static_cast<double>(G.vertices.size() - comp.covered_vertices), Bp);
  const double step1 = E + T + rest;
  chain.push_back(check_le("chain.vertices", step1, Bp));
  out.bound = m1 + 0.5 * (covered + rest) - 1;
  chain.push_back(check_le("chain.projections", out.bound, step1));
  chain.push_back(check_le("s3estimate", static_cast<double>(out.sphere_basis_size), rest + covered));

  if (p2 >= 3 && !m2_targets.empty()) {
    try {
      auto sphere = lemma4_report(all_proj, p2, std::span<const TernaryVector>(m2_targets));
      for (auto r : sphere.reports) {
        r.name = "sphere." + r.name;
        chain.push_back(std::move(r));
      }
    } catch (const ArgumentError& e) {
      throw stage_error("sphere", e.what());
    }
  }
  chain.push_back(check_le("soundness", out.bound, Bsz));
  chain.push_back(check_le("floor", m1 - 1, out.bound));
  return out;
}

}  // namespace mulbasis
