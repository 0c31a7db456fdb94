#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mulbasis/numtheory.hpp"
#include "mulbasis/reduction.hpp"
#include "mulbasis/report.hpp"
#include "mulbasis/ternary.hpp"

namespace mulbasis {

// Bipartite graph on two copies of the same vertex list. Each target gets one
// edge, the lexicographically smallest (left, right) with left + right equal
// to it; left <= right.
struct PairingGraph {
  struct Edge {
    std::size_t left;
    std::size_t right;
    TernaryVector target;
  };
  std::vector<TernaryVector> vertices;  // sorted, distinct
  std::vector<Edge> edges;
};

// Throws ArgumentError naming the first unrepresentable target.
PairingGraph build_pairing_graph(std::span<const TernaryVector> basis,
                                 std::span<const TernaryVector> targets);

// Edge indices of G whose target has coordinate i equal to 1.
struct Subgraph {
  std::size_t coordinate = 0;
  std::vector<std::size_t> edges;
};

// One subgraph per coordinate. Targets must be weight-3 0/1 vectors.
std::vector<Subgraph> decompose_by_coordinate(const PairingGraph& G, std::size_t n);

struct PruneResult {
  Subgraph kept;
  std::vector<std::size_t> heavy;  // right vertices above the threshold
  u64 removed_edges = 0;
};

inline u64 default_prune_threshold(std::size_t n) { return u64{1024} * n; }

// Removes every edge at a right vertex whose degree in H exceeds threshold.
PruneResult prune_heavy(const PairingGraph& G, const Subgraph& H, u64 threshold);

struct Lemma4Analysis {
  std::size_t n = 0;
  std::size_t basis_size = 0;
  u64 edges = 0;
  u64 kept_edges = 0;
  double implied_lower_bound = 0;
  std::vector<InequalityReport> reports;
};

// Pairing graph of B against the targets (all of S3 by default), followed by
// every counting step of the sphere lower bound evaluated on it.
Lemma4Analysis lemma4_report(std::span<const TernaryVector> basis, std::size_t n,
                             std::optional<std::span<const TernaryVector>> targets = std::nullopt);

struct ComponentSummary {
  std::size_t id = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  bool is_tree = false;
  bool has_odd_cycle = false;
  bool has_even_cycle = false;  // bipartite with a cycle
  bool excess_cycles = false;   // more than one independent cycle
  std::vector<TernaryVector> p2_projections;
};

struct ComponentAnalysis {
  std::vector<ComponentSummary> components;
  std::size_t trees = 0;
  std::size_t covered_vertices = 0;     // |V(H')|
  std::size_t projection_count = 0;     // |V(H')| restricted to the P2 block
  std::vector<std::size_t> vertex_ids;  // V(H') as indices into G.vertices
  std::vector<InequalityReport> reports;
};

// G's vertices live in F3^(p1 + p2); every edge target must have a single
// nonzero coordinate in the first p1 and none in the last p2.
ComponentAnalysis theorem1_component_analysis(const PairingGraph& G, std::size_t p1, std::size_t p2);

struct EndToEndResult {
  u64 M = 0;
  std::size_t basis_size = 0;
  std::size_t embedded_size = 0;   // |B'|
  std::size_t large_primes = 0;    // |P1|
  std::size_t small_primes = 0;    // |P2|
  std::size_t m1 = 0;
  std::size_t m2 = 0;
  std::size_t trees = 0;
  std::size_t covered_vertices = 0;
  std::size_t covered_projections = 0;
  std::size_t rest_projections = 0;
  std::size_t sphere_basis_size = 0;  // |B_S restricted to P2|
  double bound = 0;
  std::vector<InequalityReport> chain;
};

// Lower-bound pipeline for a basis of { g (u + m) : 1 <= m <= M } with
// u <= M. Stage failures raise ArgumentError prefixed with the stage name.
EndToEndResult end_to_end_lower_bound(const ReducedPair& pair, const PrimeTable& table);

}  // namespace mulbasis
