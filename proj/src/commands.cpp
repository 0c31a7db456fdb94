#include "mulbasis/commands.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "mulbasis/error.hpp"
#include "mulbasis/parallel.hpp"

namespace mulbasis {

namespace {

// ---- parameters ----

bool has(const Json& p, const char* key) { return p.contains(key) && !p[key].is_null(); }

u64 to_u64(const Json& v, const char* key) {
  if (v.is_number_unsigned()) return v.get<u64>();
  if (v.is_number_integer()) {
    const auto x = v.get<std::int64_t>();
    if (x >= 0) return static_cast<u64>(x);
  }
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    std::size_t pos = 0;
    try {
      if (!s.empty() && s[0] != '-') {
        const u64 x = std::stoull(s, &pos);
        if (pos == s.size()) return x;
      }
    } catch (const std::exception&) {
    }
  }
  throw ArgumentError(std::string("parameter ") + key + " must be a nonnegative integer");
}

u64 get_u64(const Json& p, const char* key) {
  if (!has(p, key)) throw ArgumentError(std::string("missing parameter ") + key);
  return to_u64(p[key], key);
}

u64 get_u64(const Json& p, const char* key, u64 fallback) { return has(p, key) ? to_u64(p[key], key) : fallback; }

bool get_flag(const Json& p, const char* key) {
  if (!has(p, key)) return false;
  if (p[key].is_boolean()) return p[key].get<bool>();
  return to_u64(p[key], key) != 0;
}

std::string get_str(const Json& p, const char* key, std::string fallback) {
  if (!has(p, key)) return fallback;
  if (!p[key].is_string()) throw ArgumentError(std::string("parameter ") + key + " must be a string");
  return p[key].get<std::string>();
}

std::vector<u64> get_list(const Json& p, const char* key) {
  if (!has(p, key)) throw ArgumentError(std::string("missing parameter ") + key);
  const Json& v = p[key];
  std::vector<u64> out;
  if (v.is_array()) {
    for (const auto& x : v) out.push_back(to_u64(x, key));
    return out;
  }
  if (!v.is_string()) throw ArgumentError(std::string("parameter ") + key + " must be a list of integers");
  std::stringstream ss(v.get<std::string>());
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
    if (!item.empty()) out.push_back(to_u64(Json(item), key));
  }
  return out;
}

std::size_t get_dim(const Json& p, const char* key) {
  const u64 n = get_u64(p, key);
  if (n > 100'000) throw ResourceError(std::string("parameter ") + key + " too large");
  return static_cast<std::size_t>(n);
}

double violations(bool ok) { return ok ? 0 : 1; }

// ---- random vectors ----

TernaryVector random_sparse(CounterRng& rng, std::size_t n, std::size_t w_lo, std::size_t w_hi) {
  TernaryVector v(n);
  const std::size_t w = rng.between(w_lo, std::min(w_hi, n));
  while (v.weight() < w) v.set(rng.below(n), static_cast<std::uint8_t>(rng.between(1, 2)));
  return v;
}

TernaryVector random_sphere2(CounterRng& rng, std::size_t n) {
  TernaryVector v(n);
  const std::size_t i = rng.below(n);
  std::size_t j = rng.below(n - 1);
  if (j >= i) ++j;
  v.set(i, 1);
  v.set(j, 1);
  return v;
}

std::vector<TernaryVector> distinct_sparse(CounterRng& rng, std::size_t n, std::size_t count) {
  std::vector<TernaryVector> out;
  std::unordered_set<TernaryVector, TernaryVectorHash> seen;
  while (out.size() < count) {
    auto v = random_sparse(rng, n, 1, 3);
    if (seen.insert(v).second) out.push_back(std::move(v));
  }
  return out;
}

// Y is biased toward S2 - span(X) so that many sums land on the sphere.
std::vector<TernaryVector> adversarial_partner(CounterRng& rng, std::size_t n, const std::vector<TernaryVector>& X,
                                              std::size_t count) {
  std::vector<TernaryVector> out;
  std::unordered_set<TernaryVector, TernaryVectorHash> seen;
  u64 attempts = 0;
  while (out.size() < count) {
    if (++attempts > 64 * count + 1024) throw ArgumentError("could not draw enough distinct vectors");
    TernaryVector y(n);
    switch (rng.below(4)) {
      case 0:
      case 1: {
        TernaryVector x(n);
        for (const auto& g : X) x += g.scaled(static_cast<std::uint8_t>(rng.below(3)));
        y = random_sphere2(rng, n) - x;
        break;
      }
      case 2: y = random_sphere2(rng, n); break;
      default: y = random_sparse(rng, n, 1, 4); break;
    }
    if (seen.insert(y).second) out.push_back(std::move(y));
  }
  return out;
}

std::vector<u64> divisors_of(u64 x) {
  std::vector<u64> out;
  for (u64 r = 1; r * r <= x; ++r)
    if (x % r == 0) {
      out.push_back(r);
      if (r * r != x) out.push_back(x / r);
    }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- commands ----

using Handler = std::function<void(const RunConfig&, RunReport&)>;

struct Command {
  std::vector<std::string> params;
  Handler run;
};

void cmd_primes(const RunConfig& c, RunReport& r) {
  const u64 limit = get_u64(c.params, "limit");
  const PrimeTable table = sieve(limit);
  Json res{{"limit", limit}, {"count", table.primes().size()}};
  if (!table.primes().empty()) res["largest"] = table.primes().back();
  if (get_flag(c.params, "list")) {
    if (limit > 1'000'000) throw ArgumentError("--list is limited to limit <= 1000000");
    res["primes"] = table.primes();
  }
  r.results.push_back(res);
  if (has(c.params, "factor"))
    for (u64 x : get_list(c.params, "factor")) r.results.push_back(to_json(factorize(x, table)));
}

void cmd_min_basis(const RunConfig& c, RunReport& r) {
  const auto& p = c.params;
  IntSet targets;
  Json head = Json::object();
  std::optional<u64> interval;
  if (has(p, "interval")) {
    interval = get_u64(p, "interval");
    if (*interval == 0) throw ArgumentError("--interval needs M >= 1");
    targets = progression(0, 1, *interval);
    head["M"] = *interval;
  } else if (has(p, "set")) {
    targets = make_set(get_list(p, "set"));
    if (targets.empty()) throw ArgumentError("--set is empty");
  } else if (has(p, "M")) {
    const u64 a = get_u64(p, "a", 0), d = get_u64(p, "d", 1), M = get_u64(p, "M");
    if (d == 0 || M == 0) throw ArgumentError("progression needs d >= 1 and M >= 1");
    targets = progression(a, d, M);
    head = Json{{"M", M}, {"a", a}, {"d", d}};
  } else {
    throw ArgumentError("min-basis needs --interval, --set or --M");
  }
  MinBasisOptions opt;
  opt.budget_nodes = c.budget_nodes;
  const BasisSolution sol = exact_min_basis(targets, opt);
  Json res = head;
  const Json body = to_json(sol);
  for (auto& [k, v] : body.items()) res[k] = v;
  r.results.push_back(res);
  r.complete = sol.optimal;
  if (interval) {
    const u64 M = *interval;
    const PrimeTable table = sieve(std::max<u64>(M, 2));
    const double size = static_cast<double>(sol.basis.size());
    r.checks.push_back(check_le("forced_elements", static_cast<double>(table.prime_count(M) + 1), size));
    const auto cons = construct_interval_basis(M, table);
    r.checks.push_back(check_le("construction", size, static_cast<double>(cons.basis.size())));
  }
}

void cmd_interval_basis(const RunConfig& c, RunReport& r) {
  const u64 M = get_u64(c.params, "M");
  if (M == 0) throw ArgumentError("--M must be positive");
  const PrimeTable table = sieve(std::max<u64>(M, 2));
  const BasisSolution sol = construct_interval_basis(M, table);
  const auto cover = verify_cover(progression(0, 1, M), sol.basis);
  const double bound = static_cast<double>(table.prime_count(M) + floor_two_thirds(M) + 1);
  Json res{{"M", M},
           {"size", sol.basis.size()},
           {"bound", number(bound)},
           {"covered", cover.ok()}};
  if (!cover.ok()) res["uncovered"] = *cover.uncovered;
  if (get_flag(c.params, "list")) {
    res["basis"] = sol.basis;
    res["witness"] = to_json(sol.witness);
  }
  r.results.push_back(res);
  r.checks.push_back(check_le("cover", violations(cover.ok()), 0));
  r.checks.push_back(check_le("size", static_cast<double>(sol.basis.size()), bound));
}

void cmd_mbp_search(const RunConfig& c, RunReport& r) {
  const u64 M = get_u64(c.params, "M");
  const u64 a_max = get_u64(c.params, "a_max", 2 * M);
  const u64 d_max = get_u64(c.params, "d_max", 2 * M);
  if (M == 0 || d_max == 0) throw ArgumentError("mbp-search needs M >= 1 and d_max >= 1");
  const MbpRecord rec = mbp_empirical(M, a_max, d_max, c.budget_nodes, c.jobs);
  r.results.push_back(to_json(rec));
  r.complete = rec.all_optimal;
  MinBasisOptions opt;
  opt.budget_nodes = c.budget_nodes;
  const auto interval = exact_min_basis(progression(0, 1, M), opt);
  r.checks.push_back(check_le("interval_upper", static_cast<double>(rec.solution.basis.size()),
                              static_cast<double>(interval.basis.size())));
}

struct ReduceOutcome {
  ReducedPair out;
  bool reduced = false, smaller = false, decreasing = true, idempotent = false, cardinality = false;
};

ReduceOutcome reduce_and_check(const ReducedPair& in) {
  ReduceOutcome o;
  o.out = reduce_pair(in);
  o.reduced = o.out.reduced && o.out.ap.reduced();
  o.smaller = o.out.basis.size() <= make_set(in.basis).size();
  for (const auto& s : o.out.steps)
    o.decreasing = o.decreasing && mpz_class(s.product_after) < mpz_class(s.product_before);
  const auto again = reduce_pair(o.out);
  o.idempotent = again.steps.size() == o.out.steps.size() && again.ap == o.out.ap && again.basis == o.out.basis;
  o.cardinality = make_set(o.out.ap.elements()).size() == in.ap.M;
  return o;
}

void cmd_reduce(const RunConfig& c, RunReport& r) {
  const auto& p = c.params;
  if (has(p, "trials")) {
    const u64 trials = get_u64(p, "trials");
    std::vector<ReduceOutcome> outs(trials);
    std::vector<ReducedPair> ins(trials);
    parallel_for(trials, c.jobs, [&](std::size_t t) {
      ins[t] = synthetic_unreduced_pair(c.seed, t);
      outs[t] = reduce_and_check(ins[t]);
    });
    double bad_reduced = 0, bad_size = 0, bad_product = 0, bad_idem = 0, bad_card = 0;
    for (u64 t = 0; t < trials; ++t) {
      const auto& o = outs[t];
      r.results.push_back(Json{{"trial", t},
                               {"input", to_json(ins[t].ap)},
                               {"basis_before", ins[t].basis.size()},
                               {"output", to_json(o.out.ap)},
                               {"basis_after", o.out.basis.size()},
                               {"steps", o.out.steps.size()}});
      bad_reduced += violations(o.reduced);
      bad_size += violations(o.smaller);
      bad_product += violations(o.decreasing);
      bad_idem += violations(o.idempotent);
      bad_card += violations(o.cardinality);
    }
    r.checks.push_back(check_le("reduced.failures", bad_reduced, 0));
    r.checks.push_back(check_le("basis_size.failures", bad_size, 0));
    r.checks.push_back(check_le("product_decrease.failures", bad_product, 0));
    r.checks.push_back(check_le("idempotence.failures", bad_idem, 0));
    r.checks.push_back(check_le("cardinality.failures", bad_card, 0));
    return;
  }
  ReducedPair in;
  in.ap = APSpec::from_progression(get_u64(p, "a"), get_u64(p, "d"), get_u64(p, "M"));
  in.basis = make_set(get_list(p, "basis"));
  const auto o = reduce_and_check(in);
  Json res = to_json(o.out);
  r.checks.push_back(check_le("reduced", violations(o.reduced), 0));
  r.checks.push_back(check_le("basis_size", static_cast<double>(o.out.basis.size()),
                              static_cast<double>(in.basis.size())));
  r.checks.push_back(check_le("product_decrease", violations(o.decreasing), 0));
  r.checks.push_back(check_le("idempotence", violations(o.idempotent), 0));
  if (get_flag(p, "certify")) {
    const PrimeTable table = sieve(std::max<u64>(2, o.out.ap.u + o.out.ap.v * o.out.ap.M));
    const MarkingSet marks = private_prime_marks(o.out.ap, table);
    const auto cert = certify_lower_bound(o.out, marks);
    res["marks"] = to_json(marks);
    res["certificate"] = to_json(cert);
    r.checks.push_back(check_le("certificate.bound", static_cast<double>(cert.bound),
                                static_cast<double>(o.out.basis.size())));
    r.checks.push_back(check_le("certificate.verified", violations(cert.verified), 0));
  }
  r.results.push_back(res);
}

void cmd_lemma2(const RunConfig& c, RunReport& r) {
  const auto& p = c.params;
  std::vector<Lemma2Params> cases;
  if (has(p, "trials")) {
    const u64 trials = get_u64(p, "trials");
    const u64 u_max = get_u64(p, "u_max", 1000), v_max = get_u64(p, "v_max", 50), M_max = get_u64(p, "M_max", 200);
    for (u64 t = 0; t < trials; ++t) cases.push_back(lemma2_params(c.seed, t, u_max, v_max, M_max));
  } else {
    cases.push_back({get_u64(p, "u"), get_u64(p, "v"), get_u64(p, "M")});
  }
  u64 limit = 2;
  for (const auto& k : cases) limit = std::max(limit, k.u + mul_checked(k.v, k.M));
  const PrimeTable table = sieve(limit);
  std::vector<Lemma2Check> out(cases.size());
  parallel_for(cases.size(), c.jobs,
               [&](std::size_t i) { out[i] = lemma2_divisibility_check(cases[i].u, cases[i].v, cases[i].M, table); });
  double failures = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    Json res = to_json(out[i]);
    if (cases.size() > 1) res.erase("product");
    r.results.push_back(res);
    failures += violations(out[i].divides);
  }
  r.checks.push_back(check_le("divides.failures", failures, 0));
}

void cmd_sphere_enumerate(const RunConfig& c, RunReport& r) {
  const std::size_t n = get_dim(c.params, "n");
  const std::size_t k = get_dim(c.params, "k");
  const u64 expected = binomial(n, k);
  if (expected > 5'000'000) throw ResourceError("sphere too large to enumerate");
  const auto sphere = enumerate_sphere(n, k);
  Json res{{"n", n}, {"k", k}, {"count", sphere.size()}};
  if (get_flag(c.params, "list")) res["vectors"] = to_json(sphere);
  r.results.push_back(res);
  check_eq(r.checks, "count", static_cast<double>(sphere.size()), static_cast<double>(expected));
}

std::pair<std::size_t, std::size_t> dim_range(const Json& p) {
  if (has(p, "n")) {
    const auto n = get_dim(p, "n");
    return {n, n};
  }
  const auto lo = get_dim(p, "n_min"), hi = get_dim(p, "n_max");
  if (lo > hi) throw ArgumentError("n_min exceeds n_max");
  return {lo, hi};
}

void cmd_sphere_cases(const RunConfig& c, RunReport& r) {
  const auto [lo, hi] = dim_range(c.params);
  if (hi > 40) throw ResourceError("sphere-cases enumerates S3(n)^2; n <= 40 supported");
  std::optional<DifferenceCase> only;
  if (has(c.params, "case")) {
    const std::string s = c.params["case"].is_string() ? c.params["case"].get<std::string>()
                                                        : std::to_string(to_u64(c.params["case"], "case"));
    if (s == "0" || s == "zero") only = DifferenceCase::Zero;
    else if (s == "1" || s == "case1") only = DifferenceCase::Case1;
    else if (s == "2" || s == "case2") only = DifferenceCase::Case2;
    else if (s == "3" || s == "case3") only = DifferenceCase::Case3;
    else throw ArgumentError("--case must be one of 0, 1, 2, 3");
  }
  std::vector<CaseCensus> census(hi - lo + 1);
  parallel_for(census.size(), c.jobs, [&](std::size_t i) { census[i] = case_census(lo + i); });
  r.table = Json::array();
  for (const auto& cs : census) {
    for (const auto& row : cs.rows) {
      if (only && row.kind != *only) continue;
      Json j = to_json(row);
      r.results.push_back(j);
      r.table.push_back(j);
    }
    const std::string tag = "census.n" + std::to_string(cs.n);
    double bad = violations(cs.never_other);
    for (const auto& row : cs.rows)
      if (!only || row.kind == *only) bad += violations(row.holds);
    r.checks.push_back(check_le(tag, bad, 0));
    const double s3 = static_cast<double>(binomial(cs.n, 3));
    check_eq(r.checks, tag + ".total_pairs", static_cast<double>(cs.total_pairs), s3 * s3);
  }
  r.table_columns = {"n", "case", "formula_count", "enumerated_count", "paper_bound", "holds"};
  r.default_format = "csv";
}

void cmd_sphere_min_basis(const RunConfig& c, RunReport& r) {
  const std::size_t n = get_dim(c.params, "n");
  const auto sol = sphere_min_basis(n, c.budget_nodes);
  Json res{{"n", n}, {"counting_bound", sphere_counting_bound(n)}};
  const Json body = to_json(sol);
  for (auto& [k, v] : body.items()) res[k] = v;
  r.results.push_back(res);
  r.complete = sol.optimal;
  const double size = static_cast<double>(sol.basis.size());
  if (n >= 3) {
    r.checks.push_back(check_le("counting_bound", static_cast<double>(sphere_counting_bound(n)), size));
    r.checks.push_back(check_le("construction", size, static_cast<double>(n * (n + 1) / 2)));
  }
}

void cmd_sphere_construct(const RunConfig& c, RunReport& r) {
  const auto [lo, hi] = dim_range(c.params);
  if (lo < 3) throw ArgumentError("sphere-construct needs n >= 3");
  if (hi > 200) throw ResourceError("sphere-construct supports n <= 200");
  std::vector<std::pair<std::size_t, bool>> rows(hi - lo + 1);
  parallel_for(rows.size(), c.jobs, [&](std::size_t i) {
    const std::size_t n = lo + i;
    const auto sol = sphere_basis_construct(n);
    rows[i] = {sol.basis.size(), sphere_cover_verify(sol.basis, n, 3).ok()};
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t n = lo + i;
    r.results.push_back(Json{{"n", n}, {"size", rows[i].first}, {"covered", rows[i].second}});
    const std::string tag = "construct.n" + std::to_string(n);
    r.checks.push_back(check_le(tag + ".cover", violations(rows[i].second), 0));
    check_eq(r.checks, tag + ".size", static_cast<double>(rows[i].first), static_cast<double>(n * (n + 1) / 2));
  }
}

void cmd_lemma5(const RunConfig& c, RunReport& r) {
  const std::size_t n = get_dim(c.params, "n");
  const u64 nn = n;
  const std::size_t x_size = get_u64(c.params, "x_size", 1);
  const std::size_t y_size = get_u64(c.params, "y_size", nn * nn / 100);
  const u64 trials = get_u64(c.params, "trials", 1);
  if (x_size * 1024 > n)
    throw ArgumentError("hypothesis |X| <= n/1024 unsatisfiable for |X| = " + std::to_string(x_size) +
                        ", n = " + std::to_string(n));
  if (static_cast<u64>(y_size) * 100 > nn * nn)
    throw ArgumentError("hypothesis |Y| <= n^2/100 unsatisfiable for |Y| = " + std::to_string(y_size));
  std::vector<Lemma5Report> out(trials);
  parallel_for(trials, c.jobs, [&](std::size_t t) {
    const auto inst = lemma5_instance(n, x_size, y_size, c.seed, t);
    out[t] = check_lemma5(inst.X, inst.Y, n);
  });
  for (u64 t = 0; t < trials; ++t) {
    Json res = to_json(out[t]);
    res["trial"] = t;
    r.results.push_back(res);
    r.checks.push_back(check_le("lemma5.trial" + std::to_string(t), static_cast<double>(out[t].lhs), out[t].bound,
                                out[t].hypotheses_ok));
  }
}

void cmd_remark(const RunConfig& c, RunReport& r) {
  const std::size_t n = get_dim(c.params, "n");
  const std::size_t a_size = get_u64(c.params, "a_size", 1);
  const std::size_t b_size = get_u64(c.params, "b_size");
  const u64 trials = get_u64(c.params, "trials", 1);
  if (a_size * 1024 > n)
    throw ArgumentError("hypothesis |A| <= n/1024 unsatisfiable for |A| = " + std::to_string(a_size) +
                        ", n = " + std::to_string(n));
  std::vector<RemarkReport> out(trials);
  parallel_for(trials, c.jobs, [&](std::size_t t) {
    const auto inst = remark_instance(n, a_size, b_size, c.seed, t);
    out[t] = check_remark_bound(inst.X, inst.Y, n);
  });
  for (u64 t = 0; t < trials; ++t) {
    Json res = to_json(out[t]);
    res["trial"] = t;
    r.results.push_back(res);
    const std::string tag = "remark.trial" + std::to_string(t);
    const double lhs = static_cast<double>(out[t].lhs);
    r.checks.push_back(check_le(tag + ".tight", lhs, static_cast<double>(out[t].rhs_tight)));
    r.checks.push_back(check_le(tag + ".loose", lhs, static_cast<double>(out[t].rhs_loose)));
  }
}

void cmd_lemma4(const RunConfig& c, RunReport& r) {
  const std::size_t n = get_dim(c.params, "n");
  const std::string kind = get_str(c.params, "basis", "s1s2");
  std::vector<TernaryVector> basis;
  if (kind == "s1s2") {
    if (n < 3) throw ArgumentError("lemma4-report needs n >= 3");
    basis = sphere_basis_construct(n).basis;
  } else if (kind == "full") {
    if (n > 8) throw ResourceError("--basis full supports n <= 8");
    u64 size = 1;
    for (std::size_t i = 0; i < n; ++i) size *= 3;
    for (u64 x = 0; x < size; ++x) {
      TernaryVector v(n);
      u64 y = x;
      for (std::size_t i = n; i-- > 0; y /= 3) v.set(i, static_cast<std::uint8_t>(y % 3));
      basis.push_back(std::move(v));
    }
  } else {
    throw ArgumentError("--basis must be s1s2 or full");
  }
  const auto a = lemma4_report(basis, n);
  r.results.push_back(Json{{"n", n},
                           {"basis", kind},
                           {"basis_size", a.basis_size},
                           {"edges", a.edges},
                           {"kept_edges", a.kept_edges},
                           {"implied_lower_bound", number(a.implied_lower_bound)}});
  r.checks = a.reports;
}

void cmd_theorem1(const RunConfig& c, RunReport& r) {
  const u64 M = get_u64(c.params, "M");
  if (M == 0) throw ArgumentError("--M must be positive");
  const PrimeTable table = sieve(std::max<u64>(M, 2));
  ReducedPair pair;
  pair.ap = APSpec::from_progression(0, 1, M);
  pair.basis = construct_interval_basis(M, table).basis;
  pair.reduced = true;
  const auto e2e = end_to_end_lower_bound(pair, table);
  const auto marks = build_marking_sets(M, 0, table);
  const auto cert = certify_lower_bound(pair, marks.singles);
  Json res = to_json(e2e);
  res["certificate"] = to_json(cert);
  r.results.push_back(res);
  r.checks = e2e.chain;
  r.checks.push_back(check_le("certificate.bound", static_cast<double>(cert.bound),
                              static_cast<double>(pair.basis.size())));
  r.checks.push_back(check_le("certificate.verified", violations(cert.verified), 0));
}

const std::map<std::string, Command>& commands() {
  static const std::map<std::string, Command> table = {
      {"primes", {{"limit", "list", "factor"}, cmd_primes}},
      {"min-basis", {{"interval", "set", "a", "d", "M"}, cmd_min_basis}},
      {"interval-basis", {{"M", "list"}, cmd_interval_basis}},
      {"mbp-search", {{"M", "a_max", "d_max"}, cmd_mbp_search}},
      {"reduce", {{"a", "d", "M", "basis", "certify", "trials"}, cmd_reduce}},
      {"lemma2-check", {{"u", "v", "M", "trials", "u_max", "v_max", "M_max"}, cmd_lemma2}},
      {"sphere-enumerate", {{"n", "k", "list"}, cmd_sphere_enumerate}},
      {"sphere-cases", {{"n", "n_min", "n_max", "case"}, cmd_sphere_cases}},
      {"sphere-min-basis", {{"n"}, cmd_sphere_min_basis}},
      {"sphere-construct", {{"n", "n_min", "n_max"}, cmd_sphere_construct}},
      {"lemma5-check", {{"n", "x_size", "y_size", "trials"}, cmd_lemma5}},
      {"remark-check", {{"n", "a_size", "b_size", "trials"}, cmd_remark}},
      {"lemma4-report", {{"n", "basis"}, cmd_lemma4}},
      {"theorem1-analyze", {{"M"}, cmd_theorem1}},
  };
  return table;
}

std::string csv_cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string render_csv(const Json& rows, const std::vector<std::string>& cols) {
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + csv_cell(row.at(cols[i]));
    out += "\n";
  }
  return out;
}

Json config_json(const RunConfig& c) {
  return Json{{"command", c.command}, {"params", c.params}, {"seed", c.seed}, {"budget_nodes", c.budget_nodes}};
}

}  // namespace

RunConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ArgumentError("run configuration must be a JSON object");
  RunConfig c;
  if (!j.contains("command") || !j["command"].is_string()) throw ArgumentError("missing command");
  c.command = j["command"].get<std::string>();
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw ArgumentError("params must be an object");
    c.params = j["params"];
  }
  c.seed = get_u64(j, "seed", 0);
  const u64 jobs = get_u64(j, "jobs", 1);
  if (jobs == 0 || jobs > 1024) throw ArgumentError("jobs must be in [1, 1024]");
  c.jobs = static_cast<unsigned>(jobs);
  c.format = get_str(j, "format", "auto");
  c.budget_nodes = get_u64(j, "budget_nodes", c.budget_nodes);
  return c;
}

int RunReport::exit_code() const { return complete && all_hold(checks) ? 0 : 1; }

std::string RunReport::render(std::string_view format) const {
  std::string f(format == "auto" ? std::string_view(config.format) : format);
  if (f == "auto") f = default_format;
  if (f == "json") {
    Json j{{"config", config_json(config)}, {"results", results}, {"checks", to_json(checks)}, {"version", kVersion}};
    return j.dump(2) + "\n";
  }
  if (f == "csv") {
    if (!table.is_null()) return render_csv(table, table_columns);
    return render_csv(to_json(checks), {"name", "lhs", "rhs", "hypotheses_ok", "holds"});
  }
  if (f == "text") {
    std::string out = config.command + " (seed " + std::to_string(config.seed) + ")\n";
    for (const auto& res : results) out += "  " + res.dump() + "\n";
    for (const auto& c : checks) {
      const char* tag = !c.hypotheses_ok ? "skip" : c.holds ? "ok  " : "FAIL";
      out += std::string(tag) + " " + c.name + ": " + format_number(c.lhs) + " <= " + format_number(c.rhs) + "\n";
    }
    out += complete ? "" : "search stopped on budget; result not proven optimal\n";
    return out;
  }
  throw ArgumentError("unknown format " + f);
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, cmd] : commands()) out.push_back(name);
    return out;
  }();
  return names;
}

RunReport run_command(const RunConfig& config) {
  const auto& table = commands();
  auto it = table.find(config.command);
  if (it == table.end()) throw ArgumentError("unknown command " + config.command);
  if (!config.params.is_object()) throw ArgumentError("params must be an object");
  for (const auto& [key, value] : config.params.items())
    if (std::find(it->second.params.begin(), it->second.params.end(), key) == it->second.params.end())
      throw ArgumentError("unknown parameter " + key + " for " + config.command);
  if (config.format != "auto" && config.format != "json" && config.format != "csv" && config.format != "text")
    throw ArgumentError("unknown format " + config.format);
  RunReport r;
  r.config = config;
  it->second.run(config, r);
  return r;
}

SumsetInstance lemma5_instance(std::size_t n, std::size_t x_size, std::size_t y_size, u64 seed, u64 trial) {
  CounterRng rng(seed, trial);
  SumsetInstance inst;
  inst.X = distinct_sparse(rng, n, x_size);
  inst.Y = adversarial_partner(rng, n, inst.X, y_size);
  return inst;
}

SumsetInstance remark_instance(std::size_t n, std::size_t a_size, std::size_t b_size, u64 seed, u64 trial) {
  return lemma5_instance(n, a_size, b_size, seed ^ 0x5bd1e9955bd1e995ull, trial);
}

ReducedPair synthetic_unreduced_pair(u64 seed, u64 trial) {
  CounterRng rng(seed, trial);
  static constexpr u64 kPrimes[] = {2, 3, 5, 7};
  // One or two distinct primes pushed into both a and d, with v_p(d) > v_p(a) >= 1.
  const std::size_t count = rng.between(1, 2);
  std::vector<u64> chosen;
  while (chosen.size() < count) {
    const u64 p = kPrimes[rng.below(4)];
    if (std::find(chosen.begin(), chosen.end(), p) == chosen.end()) chosen.push_back(p);
  }
  std::sort(chosen.begin(), chosen.end());
  std::vector<unsigned> f(count);
  u64 scale = 1, d0 = 1;
  for (std::size_t i = 0; i < count; ++i) {
    f[i] = static_cast<unsigned>(rng.between(1, 3));
    for (unsigned k = 0; k < f[i]; ++k) scale *= chosen[i];
    const unsigned extra = static_cast<unsigned>(rng.between(1, 2));
    for (unsigned k = 0; k < extra; ++k) d0 *= chosen[i];
  }
  d0 *= rng.between(1, 5);
  u64 a0;
  do a0 = rng.between(1, 30);
  while (std::gcd(a0, d0) != 1);
  const u64 M = rng.between(2, 10);

  ReducedPair pair;
  pair.ap = APSpec::from_progression(scale * a0, scale * d0, M);
  std::vector<u64> basis;
  for (u64 m = 1; m <= M; ++m) {
    const u64 y = a0 + m * d0;
    const auto divs = divisors_of(y);
    const u64 r = divs[rng.below(divs.size())];
    u64 left = r, right = y / r;
    for (std::size_t i = 0; i < count; ++i) {
      const unsigned split = static_cast<unsigned>(rng.between(0, f[i]));
      for (unsigned k = 0; k < f[i]; ++k) (k < split ? left : right) *= chosen[i];
    }
    basis.push_back(left);
    basis.push_back(right);
  }
  const u64 noise = rng.between(0, 5);
  for (u64 k = 0; k < noise; ++k) {
    u64 x = rng.between(1, 500);
    if (rng.below(2)) x *= chosen[rng.below(count)];
    basis.push_back(x);
  }
  pair.basis = make_set(basis);
  return pair;
}

Lemma2Params lemma2_params(u64 seed, u64 trial, u64 u_max, u64 v_max, u64 M_max) {
  if (u_max == 0 || v_max == 0 || M_max == 0) throw ArgumentError("lemma2 ranges must be positive");
  CounterRng rng(seed, trial);
  for (;;) {
    const u64 u = rng.between(1, u_max), v = rng.between(1, v_max), M = rng.between(1, M_max);
    if (std::gcd(u, v) == 1) return {u, v, M};
  }
}

}  // namespace mulbasis
