// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// Set HSP_FULL_SIEVE=1 to also run the sieve up to 10^9 (about 1 GB of memory).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <tuple>

#include "hsp/algorithm.hpp"
#include "hsp/bounds.hpp"
#include "hsp/commands.hpp"
#include "test_groups.hpp"

using namespace hsp;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Suite {
  int failures = 0;
  std::map<int, bool> results;

  void run(int id, const char* title, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %d (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
    std::fflush(stdout);
    results[id] = o.pass;
    failures += o.pass ? 0 : 1;
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct TestGroup {
  std::string spec;
  std::shared_ptr<const GroupContext> ctx;
  std::vector<Subgroup> subgroups;
};

std::vector<TestGroup> load_groups() {
  std::vector<TestGroup> out;
  for (auto& [spec, g] : fixtures::small_test_groups()) out.push_back({spec, make_context(g), all_subgroups(g)});
  return out;
}

std::string where(const std::string& spec, const Subgroup& h) {
  std::ostringstream s;
  s << spec << " H={";
  for (std::size_t i = 0; i < h.members().size(); ++i) s << (i ? "," : "") << h.members()[i];
  s << "}";
  return s.str();
}

Outcome law_vs_statevector(const std::vector<TestGroup>& groups) {
  double worst = 0;
  std::size_t instances = 0;
  for (const auto& tg : groups) {
    if (!tg.ctx->matrices) return {false, tg.spec + " has no irrep matrices"};
    for (const auto& h : tg.subgroups) {
      const HspInstance inst = make_instance(tg.ctx, h);
      const double d = max_abs_difference(measurement_distribution(inst), statevector_distribution(inst));
      worst = std::max(worst, d);
      ++instances;
      if (d > 1e-9) return {false, where(tg.spec, h) + " differs by " + fmt("%.3e", d)};
    }
  }
  return {true, std::to_string(groups.size()) + " groups, " + std::to_string(instances) +
                    " instances, max entrywise difference " + fmt("%.2e", worst)};
}

Outcome containment(const std::vector<TestGroup>& groups) {
  double worst = 0;
  std::size_t pairs = 0;
  for (const auto& tg : groups) {
    const Group& g = tg.ctx->group;
    std::vector<Subgroup> normals;
    for (const auto& s : tg.subgroups)
      if (is_normal(g, s)) normals.push_back(s);
    for (const auto& h : tg.subgroups) {
      const HspInstance inst = make_instance(tg.ctx, h);
      const IrrepDistribution dist = measurement_distribution(inst);
      for (const auto& n : normals) {
        const auto meet = static_cast<std::int64_t>(intersect(n, h).order());
        const auto nn = static_cast<std::int64_t>(n.order());
        const double expect = static_cast<double>(meet) / static_cast<double>(nn);
        const double got = prob_kernel_contains_by_sum(inst, dist, n);
        worst = std::max(worst, std::abs(got - expect));
        ++pairs;
        if (std::abs(got - expect) > 1e-9) return {false, where(tg.spec, h) + " |N|=" + std::to_string(nn) + " off"};
        const Rational snapped = snap_rational(got, static_cast<std::int64_t>(g.order()));
        const std::int64_t gcd = std::gcd(meet, nn);
        if (!(snapped == Rational{meet / gcd, nn / gcd}))
          return {false, where(tg.spec, h) + " rational snap mismatch"};
        if (!h.contains(n) && got > 0.5 + 1e-9) return {false, where(tg.spec, h) + " exceeds 1/2 with N not in H"};
      }
      const double core = prob_kernel_contains_by_sum(inst, dist, inst.core());
      if (std::abs(core - 1.0) > 1e-9) return {false, where(tg.spec, h) + " P(Y contains core) != 1"};
    }
  }
  return {true, std::to_string(pairs) + " (H, N) pairs, max |diff| " + fmt("%.2e", worst) +
                    ", exact after snapping, core case = 1, N not in H <= 1/2"};
}

Outcome sum_identity(const std::vector<TestGroup>& groups) {
  double worst = 0;
  std::size_t elements = 0;
  for (const auto& tg : groups) {
    for (Element x = 0; x < tg.ctx->group.order(); ++x) {
      const double r = check_sum_identity(*tg.ctx->table, x);
      worst = std::max(worst, r);
      ++elements;
      if (r >= 1e-8) return {false, tg.spec + " element " + std::to_string(x) + " residual " + fmt("%.3e", r)};
    }
  }
  return {true, std::to_string(elements) + " elements, max residual " + fmt("%.2e", worst)};
}

// Exact success probability from a distribution: propagate the law of the
// running kernel intersection.
double exact_success(const HspInstance& inst, const IrrepDistribution& d, std::size_t n) {
  const KernelLattice lat(inst);
  std::vector<double> law(lat.size(), 0.0);
  law[0] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> next(lat.size(), 0.0);
    for (std::size_t node = 0; node < lat.size(); ++node)
      for (std::size_t rho = 0; rho < d.size(); ++rho) next[lat.step(node, rho)] += law[node] * d[rho];
    law = std::move(next);
  }
  double p = 0;
  for (std::size_t node = 0; node < lat.size(); ++node) p += lat.is_core(node) ? law[node] : 0.0;
  return p;
}

Outcome worked_instances() {
  const Group s3 = make_symmetric(3);
  const HspInstance a = make_instance(s3, subgroup_generate(s3, std::vector<Element>{1}));
  const IrrepDistribution da = measurement_distribution(a);
  const double want[3] = {1.0 / 3, 0.0, 2.0 / 3};
  for (std::size_t i = 0; i < 3; ++i)
    if (std::abs(da[i] - want[i]) > 1e-12) return {false, "S_3 distribution off at irrep " + std::to_string(i)};
  const Group z4 = make_cyclic(4);
  const HspInstance b = make_instance(z4, subgroup_generate(z4, std::vector<Element>{2}));

  // The named Monte Carlo points decide the criterion. The n = 1..4 sweep is
  // reported alongside; it is eight simultaneous 95% checks, so an occasional
  // miss there is expected and is shown rather than hidden.
  const std::uint64_t seed = 7;
  std::ostringstream detail;
  bool named_ok = true;
  std::size_t inside = 0, total = 0;
  for (auto [inst, q, name, named_n] : {std::tuple{&a, 1.0 / 3, "S_3", std::size_t{2}},
                                        std::tuple{&b, 0.5, "Z_4", std::size_t{3}}}) {
    const IrrepDistribution oracle = statevector_distribution(*inst);
    for (std::size_t n = 1; n <= 4; ++n) {
      const double closed = 1.0 - std::pow(q, static_cast<double>(n));
      if (std::abs(exact_success(*inst, oracle, n) - closed) > 1e-12)
        return {false, std::string(name) + " closed form disagrees with oracle at n=" + std::to_string(n)};
      const SuccessEstimate est = estimate_success(*inst, n, 10000, seed);
      const bool in = closed >= est.wilson.lo && closed <= est.wilson.hi;
      inside += in;
      ++total;
      if (n == named_n) {
        named_ok = named_ok && in;
        detail << name << " n=" << n << ": rate " << fmt("%.4f", est.rate) << " vs " << fmt("%.4f", closed)
               << " in [" << fmt("%.4f", est.wilson.lo) << ", " << fmt("%.4f", est.wilson.hi) << "] "
               << (in ? "inside" : "OUTSIDE") << "; ";
      } else if (!in) {
        detail << "sweep miss " << name << " n=" << n << " rate " << fmt("%.4f", est.rate) << " vs "
               << fmt("%.4f", closed) << "; ";
      }
    }
  }
  return {named_ok, "distribution (1/3, 0, 2/3); " + detail.str() + "n=1..4 sweep " + std::to_string(inside) + "/" +
                        std::to_string(total) + " inside; seed 7, 10^4 trials"};
}

struct TheoremCheck {
  Outcome theorem;
  Outcome chain;
};

TheoremCheck theorem_statistics(const std::vector<TestGroup>& groups) {
  std::size_t runs = 0, traces = 0;
  double min_margin = 1e9;
  std::string min_where;
  std::size_t max_ratio_num = 0, max_ratio_den = 1;
  std::uint64_t seed = 1000;
  TheoremCheck out;
  std::size_t chain_violations = 0;
  for (const auto& tg : groups) {
    const std::uint64_t omega = big_omega(tg.ctx->group.order());
    for (const auto& h : tg.subgroups) {
      const HspInstance inst = make_instance(tg.ctx, h);
      for (std::uint64_t n = 2 * omega + 1; n <= 2 * omega + 10; ++n) {
        const SuccessEstimate est = estimate_success(inst, n, 10000, ++seed);
        const double bound = *est.theorem_bound;
        const double se = est.standard_error();
        const double margin = est.rate - (bound - 3 * se);
        if (margin < min_margin) {
          min_margin = margin;
          min_where = where(tg.spec, h) + " n=" + std::to_string(n);
        }
        if (margin < 0 && out.theorem.pass) {
          out.theorem = {false, where(tg.spec, h) + " n=" + std::to_string(n) + " rate " + fmt("%.4f", est.rate) +
                                    " below bound " + fmt("%.4f", bound)};
        }
        const std::size_t max_drops = est.strict_inclusion_histogram.size() - 1;
        if (max_drops > omega) ++chain_violations;
        if (omega > 0 && max_drops * max_ratio_den > max_ratio_num * omega) {
          max_ratio_num = max_drops;
          max_ratio_den = omega;
        }
        if (est.core_violations != 0) ++chain_violations;
        ++runs;
        traces += est.trials;
      }
    }
  }
  if (out.theorem.pass) {
    out.theorem.detail = std::to_string(runs) + " (instance, n) runs of 10^4 trials, tightest margin " +
                         fmt("%.4f", min_margin) + " at " + min_where;
  }
  out.chain = {chain_violations == 0,
               std::to_string(traces) + " traces, " + std::to_string(chain_violations) +
                   " violations, max strict inclusions / Omega = " + std::to_string(max_ratio_num) + "/" +
                   std::to_string(max_ratio_den)};
  return out;
}

Outcome arithmetic_identities() {
  double worst_t = 0, worst_c = 0;
  for (int k = 3; k <= 20; ++k) {
    const double got = theorem_bound(1ULL << k, 4.0 * k);
    const double expect = 1.0 - std::exp(-(2.0 / 9.0) * std::log2(std::ldexp(1.0, k)));
    worst_t = std::max(worst_t, std::abs(got - expect) / expect);
  }
  for (double order : {1e3, 1e6, 1e9}) {
    const double got = corollary_bound(static_cast<std::uint64_t>(order), 18.0 * std::log(std::log(order)), 3.5);
    const double expect = 1.0 - 1.0 / std::log(order);
    worst_c = std::max(worst_c, std::abs(got - expect) / expect);
  }
  const bool ok = worst_t <= 1e-12 && worst_c <= 1e-12;
  return {ok, "power-of-two theorem identity max rel err " + fmt("%.2e", worst_t) +
                  ", corollary identity max rel err " + fmt("%.2e", worst_c)};
}

Outcome sieve() {
  SieveOptions opts;
  opts.budget_bytes = std::max<std::uint64_t>(sieve_budget_from_env(), 10'000'000);
  const auto start = std::chrono::steady_clock::now();
  const SieveReport a = normal_order_fraction(10'000'000, 3.5, opts);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const SieveReport b = normal_order_fraction(10'000'000, 3.5, opts);
  if (a.satisfied != b.satisfied || a.counted != b.counted) return {false, "two runs at 10^7 disagree"};
  if (secs >= 60) return {false, "10^7 sieve took " + fmt("%.1f", secs) + "s"};
  const SieveReport m = normal_order_fraction(1'000'000, 3.5, opts);
  double prev = 0;
  for (double eps : {0.5, 1.0, 2.0, 3.0, 3.5, 4.0, 6.0}) {
    const double f = normal_order_fraction(1'000'000, eps, opts).fraction;
    if (f < prev) return {false, "fraction decreased at eps " + fmt("%.1f", eps)};
    prev = f;
  }
  std::string detail = "fraction(10^6) = " + fmt("%.6f", m.fraction) + ", fraction(10^7) = " + fmt("%.6f", a.fraction) +
                       " in " + fmt("%.2f", secs) + "s, deterministic, eps-monotone";
  const char* full = std::getenv("HSP_FULL_SIEVE");
  if (full && std::string(full) == "1") {
    opts.budget_bytes = 1'000'000'000;
    const SieveReport big = normal_order_fraction(1'000'000'000, 3.5, opts);
    // The published figure is a two-decimal truncation: 99.927...% reads as 99.92%.
    const double pct = std::floor(big.fraction * 1e4) / 100.0;
    detail += ", fraction(10^9) = " + fmt("%.6f", big.fraction);
    if (big.fraction < 0.9992 || std::abs(pct - 99.92) > 1e-9) return {false, detail + " does not give 99.92%"};
  } else {
    detail += "; 10^9 run not enabled (HSP_FULL_SIEVE=1)";
  }
  return {true, detail};
}

Outcome martingale() {
  const Group s3 = make_symmetric(3);
  const HspInstance inst = make_instance(s3, subgroup_generate(s3, std::vector<Element>{1}));
  const MartingaleReport rep = martingale_diagnostics(inst, 8, 10000, 7);
  std::size_t checked = 0;
  for (const auto& b : rep.bins) checked += b.checked;
  return {rep.passed(), std::to_string(checked) + " bins checked, " + std::to_string(rep.skipped_bins()) +
                            " skipped, Z_n mean " + fmt("%.4f", rep.zn_mean) + " (3 sigma = " +
                            fmt("%.4f", 3 * rep.zn_sigma) + ")"};
}

}  // namespace

int main() {
  Suite suite;
  const std::vector<TestGroup> groups = load_groups();
  suite.run(1, "kernel-intersection law vs state vector", [&] { return law_vs_statevector(groups); });
  suite.run(2, "normal-subgroup containment probability", [&] { return containment(groups); });
  suite.run(3, "character sum identity", [&] { return sum_identity(groups); });
  suite.run(4, "worked instances", worked_instances);
  TheoremCheck tc{{}, {false, "criterion 5 did not complete"}};
  suite.run(5, "success rate above the theorem bound", [&] {
    tc = theorem_statistics(groups);
    return tc.theorem;
  });
  suite.run(6, "bound simplifications", arithmetic_identities);
  suite.run(7, "strict inclusions at most Omega", [&] { return tc.chain; });
  suite.run(8, "normal-order sieve", sieve);
  suite.run(9, "martingale diagnostics", martingale);
  suite.run(10, "large orders", [&] {
    const bool ok = suite.results[5] && suite.results[7];
    return Outcome{ok, "not reproducible at desk scale; rests on criteria 5 and 7"};
  });
  std::printf("%d of 10 criteria failed\n", suite.failures);
  return suite.failures == 0 ? 0 : 1;
}
