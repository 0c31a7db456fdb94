#include "mulbasis/serialize.hpp"

#include <cmath>

#include "mulbasis/error.hpp"

namespace mulbasis {

Json number(double x) {
  if (std::isfinite(x) && x == std::floor(x) && std::fabs(x) < 9007199254740992.0)
    return Json(static_cast<std::int64_t>(x));
  return Json(x);
}

std::string format_number(double x) { return number(x).dump(); }

Json to_json(const TernaryVector& v) { return v.str(); }

Json to_json(const std::vector<TernaryVector>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(v.str());
  return out;
}

Json to_json(const Factorization& f) {
  Json factors = Json::array();
  for (auto [p, e] : f.factors) factors.push_back(Json::array({p, e}));
  return Json{{"value", f.value}, {"factors", factors}};
}

Json to_json(const CoverWitness& w) {
  Json out = Json::array();
  for (const auto& p : w.pairs) out.push_back(Json::array({p.target, p.first, p.second}));
  return out;
}

Json to_json(const BasisSolution& s) {
  return Json{{"size", s.basis.size()},
              {"optimal", s.optimal},
              {"nodes_explored", s.nodes_explored},
              {"basis", s.basis},
              {"witness", to_json(s.witness)}};
}

Json to_json(const MbpRecord& r) {
  return Json{{"M", r.M},
              {"a", r.a},
              {"d", r.d},
              {"size", r.solution.basis.size()},
              {"progressions", r.progressions},
              {"all_optimal", r.all_optimal},
              {"basis", r.solution.basis}};
}

Json to_json(const APSpec& ap) {
  return Json{{"g", ap.g}, {"u", ap.u}, {"v", ap.v}, {"M", ap.M}};
}

Json to_json(const ReducedPair& p) {
  Json steps = Json::array();
  for (const auto& s : p.steps)
    steps.push_back(Json{{"prime", s.prime},
                         {"e", s.e},
                         {"f", s.f},
                         {"squared", s.squared},
                         {"product_before", s.product_before},
                         {"product_after", s.product_after}});
  return Json{{"ap", to_json(p.ap)}, {"basis", p.basis}, {"reduced", p.reduced}, {"steps", steps}};
}

Json to_json(const MarkingSet& m) {
  Json out = Json::array();
  for (const auto& e : m.entries) out.push_back(Json{{"m", e.m}, {"prime", e.prime}});
  return out;
}

Json to_json(const MarkingSets& m) {
  Json triples = Json::array();
  for (const auto& t : m.triples)
    triples.push_back(Json{{"m", t.m},
                           {"value", t.value},
                           {"primes", Json::array({t.primes[0], t.primes[1], t.primes[2]})},
                           {"shift", t.shift}});
  return Json{{"M", m.M},
              {"u", m.u},
              {"large_primes", m.large_primes},
              {"small_primes", m.small_primes},
              {"singles", to_json(m.singles)},
              {"single_shifts", m.single_shifts},
              {"triples", triples}};
}

Json to_json(const LowerBoundCertificate& c) {
  return Json{{"q", c.q},
              {"bound", c.bound},
              {"basis_size", c.basis_size},
              {"embedded_basis_size", c.embedded_basis_size},
              {"target_rank", c.target_rank},
              {"targets_unit", c.targets_unit},
              {"targets_in_sumset", c.targets_in_sumset},
              {"verified", c.verified}};
}

Json to_json(const Lemma2Check& c) {
  return Json{{"u", c.u},
              {"v", c.v},
              {"M", c.M},
              {"large_prime_indices", c.large_prime_indices},
              {"extremal_indices", c.extremal_indices},
              {"surviving", c.surviving_indices.size()},
              {"product", c.product},
              {"divides", c.divides}};
}

Json to_json(const CaseCensusRow& r) {
  return Json{{"n", r.n},
              {"case", std::string(to_string(r.kind))},
              {"formula_count", r.formula_count},
              {"enumerated_count", r.enumerated_count},
              {"paper_bound", r.paper_bound},
              {"strict", r.strict},
              {"distinct_differences", r.distinct_differences},
              {"expected_differences", r.expected_differences},
              {"holds", r.holds}};
}

Json to_json(const SphereBasisSolution& s) {
  Json witness = Json::array();
  for (const auto& w : s.witness) witness.push_back(Json::array({w.target.str(), w.first.str(), w.second.str()}));
  return Json{{"size", s.basis.size()},
              {"optimal", s.optimal},
              {"nodes_explored", s.nodes_explored},
              {"basis", to_json(s.basis)},
              {"witness", witness}};
}

Json to_json(const RemarkReport& r) {
  return Json{{"n", r.n},        {"a_size", r.a_size},       {"b_size", r.b_size}, {"lhs", r.lhs},
              {"rhs_tight", r.rhs_tight}, {"rhs_loose", r.rhs_loose}, {"holds", r.holds}};
}

Json to_json(const Lemma5Report& r) {
  return Json{{"n", r.n},
              {"x_size", r.x_size},
              {"y_size", r.y_size},
              {"lhs", r.lhs},
              {"bound", number(r.bound)},
              {"hypotheses_ok", r.hypotheses_ok},
              {"holds", r.holds}};
}

Json to_json(const InequalityReport& r) {
  return Json{{"name", r.name},
              {"lhs", number(r.lhs)},
              {"rhs", number(r.rhs)},
              {"hypotheses_ok", r.hypotheses_ok},
              {"holds", r.holds}};
}

Json to_json(const std::vector<InequalityReport>& rs) {
  Json out = Json::array();
  for (const auto& r : rs) out.push_back(to_json(r));
  return out;
}

Json to_json(const ComponentSummary& c) {
  return Json{{"id", c.id},
              {"vertices", c.vertices},
              {"edges", c.edges},
              {"is_tree", c.is_tree},
              {"has_odd_cycle", c.has_odd_cycle},
              {"has_even_cycle", c.has_even_cycle},
              {"excess_cycles", c.excess_cycles},
              {"p2_projections", to_json(c.p2_projections)}};
}

Json to_json(const EndToEndResult& r) {
  return Json{{"M", r.M},
              {"basis_size", r.basis_size},
              {"embedded_size", r.embedded_size},
              {"large_primes", r.large_primes},
              {"small_primes", r.small_primes},
              {"m1", r.m1},
              {"m2", r.m2},
              {"trees", r.trees},
              {"covered_vertices", r.covered_vertices},
              {"covered_projections", r.covered_projections},
              {"rest_projections", r.rest_projections},
              {"sphere_basis_size", r.sphere_basis_size},
              {"bound", number(r.bound)}};
}

ReducedPair reduced_pair_from_json(const Json& j) {
  try {
    ReducedPair p;
    const auto& ap = j.at("ap");
    p.ap = APSpec{ap.at("g").get<u64>(), ap.at("u").get<u64>(), ap.at("v").get<u64>(), ap.at("M").get<u64>()};
    p.basis = make_set(j.at("basis").get<std::vector<u64>>());
    p.reduced = j.value("reduced", false);
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("malformed reduced pair: ") + e.what());
  }
}

MarkingSet marking_set_from_json(const Json& j) {
  try {
    MarkingSet m;
    for (const auto& e : j) m.entries.push_back({e.at("m").get<u64>(), e.at("prime").get<u64>()});
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("malformed marking set: ") + e.what());
  }
}

}  // namespace mulbasis
