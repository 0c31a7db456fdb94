// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only if all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mulbasis/certificates.hpp"
#include "mulbasis/commands.hpp"
#include "mulbasis/productsets.hpp"
#include "mulbasis/reduction.hpp"
#include "mulbasis/spherelab.hpp"
#include "oracles.hpp"

using namespace mulbasis;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

RunConfig config(const std::string& command, Json params, unsigned jobs = 1, u64 seed = 0) {
  RunConfig c;
  c.command = command;
  c.params = std::move(params);
  c.jobs = jobs;
  c.seed = seed;
  return c;
}

// Commands rerun under a different worker count for the determinism check.
std::vector<RunConfig>& replay() {
  static std::vector<RunConfig> v;
  return v;
}
std::vector<std::string>& replay_output() {
  static std::vector<std::string> v;
  return v;
}

RunReport run_recorded(const RunConfig& c) {
  auto r = run_command(c);
  replay().push_back(c);
  replay_output().push_back(r.render("json"));
  return r;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

u64 choose(u64 n, u64 k) {
  u64 r = 1;
  for (u64 i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Outcome census() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (unsigned n = 5; n <= 14; ++n) {
    const std::string tag = "n=" + std::to_string(n) + ": ";
    const auto cs = case_census(n);
    o.require(cs.holds(), tag + "census reports a mismatch");
    const auto counts = oracle::difference_counts(n);
    for (const auto& [key, count] : counts) {
      const auto d = TernaryVector::parse(key);
      const auto kind = classify_difference(d);
      o.require(count_difference_solutions(d) == count, tag + "formula differs at " + key);
      switch (kind) {
        case DifferenceCase::Case1: o.require(count == 1, tag + "case1 count"); break;
        case DifferenceCase::Case2: o.require(count == n - 4 && count < n, tag + "case2 count"); break;
        case DifferenceCase::Case3:
          o.require(count == choose(n - 2, 2) && count < u64{n} * n, tag + "case3 count");
          break;
        case DifferenceCase::Zero: o.require(count == choose(n, 3), tag + "zero count"); break;
        case DifferenceCase::Other: o.require(false, tag + "difference outside the four shapes"); break;
      }
    }
  }
  run_recorded(config("sphere-cases", Json{{"n_min", 5}, {"n_max", 14}}));
  const double s = seconds_since(t0);
  o.require(s < 10, "runtime " + std::to_string(s) + " s");
  if (o.pass) o.detail = "n = 5..14";
  return o;
}

Outcome sphere_sandwich() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto s3 = sphere_min_basis(3, 10'000'000);
  o.require(s3.optimal && s3.basis.size() == 1, "n=3 value " + std::to_string(s3.basis.size()));
  const auto s4 = sphere_min_basis(4, 100'000'000);
  const double t4 = seconds_since(t0);
  const std::size_t expected = oracle::min_sphere_basis(4, 6);
  o.require(s4.optimal, "n=4 search did not finish");
  o.require(s4.basis.size() == expected,
            "n=4 value " + std::to_string(s4.basis.size()) + " vs oracle " + std::to_string(expected));
  o.require(s4.basis.size() >= sphere_counting_bound(4) && sphere_counting_bound(4) == 3, "n=4 below counting bound");
  o.require(t4 < 600, "n=4 runtime");
  for (std::size_t n = 3; n <= 32; ++n) {
    const auto c = sphere_basis_construct(n);
    o.require(sphere_cover_verify(c.basis, n).ok(), "construction misses at n=" + std::to_string(n));
    o.require(c.basis.size() == n * (n + 1) / 2, "construction size at n=" + std::to_string(n));
  }
  run_recorded(config("sphere-min-basis", Json{{"n", 4}}));
  run_recorded(config("sphere-construct", Json{{"n_min", 3}, {"n_max", 32}}));
  if (o.pass) o.detail = "MB(3)=1, MB(4)=" + std::to_string(expected) + " (oracle), construction n=3..32";
  return o;
}

Outcome sumset_suites() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<RunConfig> runs = {
      config("lemma5-check", Json{{"n", 2048}, {"x_size", 2}, {"y_size", 41943}, {"trials", 100}}),
      config("remark-check", Json{{"n", 1100}, {"a_size", 1}, {"b_size", 12100}, {"trials", 100}}),
      config("remark-check", Json{{"n", 2500}, {"a_size", 2}, {"b_size", 62500}, {"trials", 100}}),
  };
  for (const auto& c : runs) {
    const auto r = run_recorded(c);
    std::size_t trials = 0;
    for (const auto& chk : r.checks) {
      o.require(chk.hypotheses_ok, c.command + " hypotheses unmet in " + chk.name);
      o.require(chk.holds, c.command + " fails " + chk.name);
      ++trials;
    }
    const std::size_t expected = c.command == "lemma5-check" ? 100 : 200;
    o.require(trials == expected, c.command + " ran " + std::to_string(trials) + " checks");
    o.require(r.exit_code() == 0, c.command + " exit code");
  }
  const double s = seconds_since(t0);
  o.require(s < 300, "runtime " + std::to_string(s) + " s");
  if (o.pass) o.detail = "300 trials, " + std::to_string(static_cast<int>(s)) + " s";
  return o;
}

Outcome exact_values() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const PrimeTable table = sieve(100);
  std::string values;
  for (unsigned M = 1; M <= 24; ++M) {
    const std::string tag = "M=" + std::to_string(M) + ": ";
    const auto sol = exact_min_basis(progression(0, 1, M));
    const auto expected = oracle::min_interval_basis(M);
    o.require(sol.optimal, tag + "search did not finish");
    o.require(sol.basis.size() == expected.size,
              tag + std::to_string(sol.basis.size()) + " vs oracle " + std::to_string(expected.size));
    o.require(table.prime_count(M) + 1 <= sol.basis.size(), tag + "below forced elements");
    o.require(sol.basis.size() <= construct_interval_basis(M, table).basis.size(), tag + "above construction");
    values += (M > 1 ? "," : "") + std::to_string(sol.basis.size());
  }
  run_recorded(config("min-basis", Json{{"interval", 24}}));
  const double s = seconds_since(t0);
  o.require(s < 300, "runtime " + std::to_string(s) + " s");
  if (o.pass) o.detail = "MB(1..24) = " + values;
  return o;
}

Outcome interval_construction() {
  Outcome o;
  const PrimeTable table = sieve(1'000'000);
  std::string sizes;
  for (u64 M : {1'000ull, 10'000ull, 100'000ull, 1'000'000ull}) {
    const std::string tag = "M=" + std::to_string(M) + ": ";
    const auto sol = construct_interval_basis(M, table);
    const auto cover = verify_cover(progression(0, 1, M), sol.basis);
    o.require(cover.ok(), tag + "uncovered " + std::to_string(cover.uncovered.value_or(0)));
    const u64 bound = table.prime_count(M) + floor_two_thirds(M) + 1;
    o.require(sol.basis.size() <= bound, tag + "size " + std::to_string(sol.basis.size()) + " > " +
                                             std::to_string(bound));
    sizes += (sizes.empty() ? "" : ", ") + std::to_string(sol.basis.size()) + "<=" + std::to_string(bound);
    if (M <= 100'000) run_recorded(config("interval-basis", Json{{"M", M}}));
  }
  if (o.pass) o.detail = sizes;
  return o;
}

bool naive_cover(const IntSet& A, const IntSet& B) {
  for (u64 a : A) {
    bool ok = false;
    for (u64 b : B)
      if (a % b == 0 && std::binary_search(B.begin(), B.end(), a / b)) ok = true;
    if (!ok) return false;
  }
  return true;
}

Outcome reduction() {
  Outcome o;
  std::size_t steps = 0;
  for (u64 t = 0; t < 500; ++t) {
    const std::string tag = "trial " + std::to_string(t) + ": ";
    const auto in = synthetic_unreduced_pair(0, t);
    o.require(naive_cover(in.ap.elements(), in.basis) && !in.ap.reduced(), tag + "bad synthetic input");
    const auto out = reduce_pair(in);
    o.require(std::gcd(out.ap.v, out.ap.g) == 1, tag + "not reduced");
    o.require(naive_cover(out.ap.elements(), out.basis), tag + "cover lost");
    o.require(out.ap.elements().size() == in.ap.elements().size(), tag + "progression length changed");
    o.require(out.basis.size() <= in.basis.size(), tag + "basis grew");
    mpz_class prev;
    bool first = true;
    for (const auto& s : out.steps) {
      const mpz_class before(s.product_before), after(s.product_after);
      o.require(after < before, tag + "product did not drop");
      o.require(first || before == prev, tag + "steps do not chain");
      prev = after;
      first = false;
    }
    o.require(!out.steps.empty(), tag + "no step taken");
    steps += out.steps.size();
    // A second pass over a reduced pair takes no further step.
    const auto again = reduce_pair(out);
    o.require(again.steps.size() == out.steps.size() && again.ap == out.ap && again.basis == out.basis,
              tag + "not idempotent");
  }
  const auto r = run_recorded(config("reduce", Json{{"trials", 500}}));
  o.require(r.exit_code() == 0, "reduce command reports a failure");
  if (o.pass) o.detail = "500 pairs, " + std::to_string(steps) + " steps";
  return o;
}

Outcome divisibility() {
  Outcome o;
  const PrimeTable table = sieve(1000 + 50 * 200);
  for (u64 t = 0; t < 200; ++t) {
    const auto p = lemma2_params(0, t, 1000, 50, 200);
    const std::string tag = "(u,v,M)=(" + std::to_string(p.u) + "," + std::to_string(p.v) + "," +
                            std::to_string(p.M) + "): ";
    o.require(std::gcd(p.u, p.v) == 1 && p.M <= 200, tag + "parameters out of range");
    const auto c = lemma2_divisibility_check(p.u, p.v, p.M, table);
    const auto surviving = oracle::lemma2_survivors(p.u, p.v, p.M);
    o.require(c.surviving_indices == surviving, tag + "survivor set differs from recount");
    mpz_class prod = 1, fact;
    for (u64 m : surviving) prod *= static_cast<unsigned long>(p.u + m * p.v);
    mpz_fac_ui(fact.get_mpz_t(), p.M - 1);
    o.require(mpz_divisible_p(fact.get_mpz_t(), prod.get_mpz_t()) != 0, tag + "product does not divide");
    o.require(c.divides && c.product == prod.get_str(), tag + "library result differs");
  }
  const auto r = run_recorded(config("lemma2-check", Json{{"trials", 200}}));
  o.require(r.exit_code() == 0, "lemma2-check command reports a failure");
  if (o.pass) o.detail = "200 triples";
  return o;
}

const InequalityReport* find(const std::vector<InequalityReport>& rs, const std::string& name) {
  for (const auto& r : rs)
    if (r.name == name) return &r;
  return nullptr;
}

Outcome certificates() {
  Outcome o;
  std::string detail;
  for (std::size_t n : {8u, 16u, 24u}) {
    const std::string tag = "n=" + std::to_string(n) + ": ";
    const auto basis = sphere_basis_construct(n).basis;
    const auto a = lemma4_report(basis, n);
    const auto* le = find(a.reports, "cssum.le");
    const auto* ge = find(a.reports, "cssum.ge");
    o.require(le && ge && le->holds && ge->holds && le->lhs == le->rhs, tag + "CSSUM not an equality");
    for (const auto& r : a.reports) o.require(!r.hypotheses_ok || r.holds, tag + r.name + " violated");
    o.require(a.implied_lower_bound <= static_cast<double>(basis.size()), tag + "implied bound above |B|");
    detail += tag + format_number(a.implied_lower_bound) + "<=" + std::to_string(basis.size()) + "; ";
    run_recorded(config("lemma4-report", Json{{"n", n}}));
  }
  const PrimeTable table = sieve(10'000);
  for (u64 M : {100ull, 10'000ull}) {
    const std::string tag = "M=" + std::to_string(M) + ": ";
    ReducedPair pair;
    pair.ap = APSpec::from_progression(0, 1, M);
    pair.basis = construct_interval_basis(M, table).basis;
    const auto r = end_to_end_lower_bound(pair, table);
    o.require(r.bound <= static_cast<double>(r.basis_size), tag + "bound above |B|");
    o.require(r.bound >= static_cast<double>(r.m1) - 1, tag + "bound below |M1| - 1");
    for (const char* name : {"treebound", "tree_estimate"}) {
      const auto* rep = find(r.chain, name);
      o.require(rep && rep->hypotheses_ok && rep->holds, tag + name + " not verified");
    }
    for (const auto& c : r.chain) o.require(!c.hypotheses_ok || c.holds, tag + c.name + " violated");
    detail += tag + format_number(r.bound) + " in [" + std::to_string(r.m1 - 1) + ", " +
              std::to_string(r.basis_size) + "]; ";
    run_recorded(config("theorem1-analyze", Json{{"M", M}}));
  }
  if (o.pass) o.detail = detail.substr(0, detail.size() - 2);
  return o;
}

Outcome determinism() {
  Outcome o;
  for (std::size_t i = 0; i < replay().size(); ++i) {
    RunConfig c = replay()[i];
    c.jobs = 4;
    o.require(run_command(c).render("json") == replay_output()[i], c.command + " differs with 4 jobs");
  }
  if (o.pass) o.detail = std::to_string(replay().size()) + " commands, jobs 1 vs 4";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"case census exactness", census},
      {"sphere basis sandwich", sphere_sandwich},
      {"sparse sumset suites", sumset_suites},
      {"exact interval basis values", exact_values},
      {"interval basis construction", interval_construction},
      {"reduction invariants", reduction},
      {"surviving-term divisibility", divisibility},
      {"certificate soundness and identities", certificates},
      {"determinism across worker counts", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %zu %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
