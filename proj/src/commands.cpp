#include "hsp/commands.hpp"

#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "hsp/group_spec.hpp"

namespace hsp {

Rational snap_rational(double x, std::int64_t denominator) {
  const auto num = static_cast<std::int64_t>(std::llround(x * static_cast<double>(denominator)));
  const std::int64_t g = std::gcd(num, denominator);
  return {num / g, denominator / g};
}

Json config_json(const ExperimentConfig& cfg) {
  Json j = {
      {"group", cfg.group_spec},
      {"subgroup", cfg.subgroup_gens},
      {"trials", cfg.trials},
      {"seed", cfg.seed},
      {"output", cfg.output == OutputFormat::Json ? "json" : "csv"},
      {"tolerance", cfg.tolerance},
      {"workers", cfg.workers},
  };
  auto opt = [](const auto& v) { return v ? Json(*v) : Json(nullptr); };
  j["n"] = opt(cfg.n);
  j["epsilon"] = opt(cfg.epsilon);
  j["character_table"] = cfg.character_table;
  j["martingale"] = cfg.martingale;
  j["order"] = opt(cfg.order);
  j["n_from_corollary"] = cfg.n_from_corollary;
  j["n_from_theorem"] = cfg.n_from_theorem;
  j["target"] = opt(cfg.target);
  j["sieve"] = opt(cfg.sieve_limit);
  j["allow_large_sieve"] = cfg.allow_large_sieve;
  j["max_violations"] = cfg.max_violations;
  j["subgroup_cap"] = cfg.subgroup_cap;
  return j;
}

namespace {

Json header(const ExperimentConfig& cfg, const char* command) {
  return {{"tool", kToolName}, {"version", kToolVersion}, {"command", command}, {"config", config_json(cfg)}};
}

HspInstance instance_from(const ExperimentConfig& cfg) {
  const Group g = parse_group_spec(cfg.group_spec);
  const Subgroup h = subgroup_generate(g, cfg.subgroup_gens);
  return make_instance(g, h);
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int cmd_distribution(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const HspInstance inst = instance_from(cfg);
    const IrrepDistribution dist = measurement_distribution(inst, cfg.tolerance);
    std::optional<IrrepDistribution> oracle;
    if (inst.matrices()) oracle = statevector_distribution(inst);

    if (cfg.output == OutputFormat::Csv) {
      out << "irrep,dim,prob" << (oracle ? ",statevector_prob" : "") << "\n";
      out << std::setprecision(17);
      for (std::size_t rho = 0; rho < dist.size(); ++rho) {
        out << rho << "," << inst.table().dim(rho) << "," << dist[rho];
        if (oracle) out << "," << (*oracle)[rho];
        out << "\n";
      }
      return 0;
    }
    Json j = header(cfg, "distribution");
    j["distribution"] = distribution_json(cfg.group_spec, inst, dist);
    if (oracle) {
      Json probs = Json::array();
      for (double p : oracle->probs()) probs.push_back(p);
      j["statevector"] = {{"probs", std::move(probs)}, {"max_discrepancy", max_abs_difference(dist, *oracle)}};
    } else {
      j["statevector"] = {{"skipped", inst.context().matrices_note}};
    }
    if (cfg.character_table) j["character_table"] = character_table_json(inst.table());
    out << j.dump(2) << "\n";
    return 0;
  });
}

int cmd_simulate(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!cfg.n || *cfg.n == 0) throw std::invalid_argument("simulate needs --n >= 1");
    if (cfg.trials == 0) throw std::invalid_argument("simulate needs --trials >= 1");
    const HspInstance inst = instance_from(cfg);
    if (cfg.output == OutputFormat::Csv) {
      // Per-trial dump on the same streams as the estimate.
      out << "trial,success,strict_inclusions,result_order,irreps\n";
      for (std::size_t t = 0; t < cfg.trials; ++t) {
        RandomStream rng = RandomStream::derive(cfg.seed, t);
        const RunTrace trace = run_once(inst, *cfg.n, rng);
        out << t << "," << (trace.success ? 1 : 0) << "," << trace.strict_inclusions << "," << trace.result().order()
            << ",";
        for (std::size_t i = 0; i < trace.sampled_irreps.size(); ++i) out << (i ? ";" : "") << trace.sampled_irreps[i];
        out << "\n";
      }
      return 0;
    }
    const SuccessEstimate est =
        estimate_success(inst, *cfg.n, cfg.trials, cfg.seed, {cfg.epsilon, cfg.workers});
    Json j = header(cfg, "simulate");
    j["estimate"] = estimate_json(cfg.group_spec, inst, est);
    if (cfg.martingale) j["martingale"] = martingale_json(martingale_diagnostics(inst, *cfg.n, cfg.trials, cfg.seed));
    out << j.dump(2) << "\n";
    return 0;
  });
}

namespace {

class CheckLog {
 public:
  explicit CheckLog(std::ostream& out) : out_(out) {}

  void record(const std::string& name, bool ok, const std::string& detail) {
    out_ << (ok ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
    failed_ = failed_ || !ok;
  }
  void skip(const std::string& name, const std::string& why) { out_ << "SKIP " << name << ": " << why << "\n"; }
  bool failed() const { return failed_; }

 private:
  std::ostream& out_;
  bool failed_ = false;
};

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << v;
  return os.str();
}

std::string members_str(const Subgroup& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.members().size(); ++i) out += (i ? "," : "") + std::to_string(s.members()[i]);
  return out + "}";
}

}  // namespace

int cmd_verify(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const double tol = cfg.tolerance;
    const Group g = parse_group_spec(cfg.group_spec);
    out << "# " << kToolName << " " << kToolVersion << " verify " << config_json(cfg).dump() << "\n";
    CheckLog log(out);

    {
      std::vector<Element> table(g.table().begin(), g.table().end());
      Group::from_table(std::move(table));
      log.record("group_axioms", true, "order " + std::to_string(g.order()) + ", " + g.family().describe());
    }

    const auto ctx = make_context(g);
    const CharacterTable& t = *ctx->table;
    log.record("irreps_match_classes", t.num_irreps() == t.num_classes(),
               std::to_string(t.num_irreps()) + " irreps, " + std::to_string(t.num_classes()) + " classes");
    std::size_t sum_sq = 0;
    bool dims_exact = true;
    for (std::size_t rho = 0; rho < t.num_irreps(); ++rho) {
      sum_sq += t.dim(rho) * t.dim(rho);
      dims_exact = dims_exact && t.value(rho, 0) == Complex(static_cast<double>(t.dim(rho)), 0.0);
    }
    log.record("dimension_sum", sum_sq == g.order(), "sum d^2 = " + std::to_string(sum_sq));
    log.record("identity_values", dims_exact, "chi(e) = d for every irrep");
    bool trivial_first = true;
    for (Complex z : t.row(0)) trivial_first = trivial_first && z == Complex(1.0, 0.0);
    log.record("trivial_first", trivial_first, "row 0 is the trivial character");
    const double orth = orthogonality_residual(t);
    log.record("row_orthogonality", orth < tol, "max residual " + sci(orth));

    {
      double worst = 0.0;
      std::optional<Element> bad;
      for (Element x = 0; x < g.order(); ++x) {
        const double r = check_sum_identity(t, x);
        worst = std::max(worst, r);
        if (r >= tol && !bad) bad = x;
      }
      log.record("sum_identity", !bad,
                 bad ? "first counterexample element " + std::to_string(*bad)
                     : std::to_string(g.order()) + " elements, max residual " + sci(worst));
    }
    {
      std::optional<std::size_t> bad;
      for (std::size_t rho = 0; rho < t.num_irreps() && !bad; ++rho)
        if (!is_normal(g, ctx->kernel(rho))) bad = rho;
      log.record("kernels_normal", !bad, bad ? "kernel of irrep " + std::to_string(*bad) + " not normal" : "all kernels normal");
    }

    std::vector<Subgroup> subgroups;
    if (g.order() <= cfg.subgroup_cap) {
      subgroups = all_subgroups(g, cfg.subgroup_cap);
    } else {
      subgroups = {trivial_subgroup(g), whole_group(g)};
      log.skip("subgroup_enumeration", "order above cap " + std::to_string(cfg.subgroup_cap) +
                                           "; testing H in {e, G} only");
    }
    std::vector<Subgroup> normals;
    for (const auto& s : subgroups)
      if (is_normal(g, s)) normals.push_back(s);
    for (const auto& k : ctx->kernels)
      if (std::find(normals.begin(), normals.end(), k) == normals.end()) normals.push_back(k);

    std::string contain_bad, exact_bad, core_bad, half_bad;
    double contain_worst = 0.0;
    for (const auto& h : subgroups) {
      const HspInstance inst = make_instance(ctx, h);
      const IrrepDistribution dist = measurement_distribution(inst, tol);
      for (const auto& nsub : normals) {
        const double closed = prob_kernel_contains(inst, nsub);
        const double summed = prob_kernel_contains_by_sum(inst, dist, nsub);
        contain_worst = std::max(contain_worst, std::abs(closed - summed));
        const std::string where = "H=" + members_str(h) + " N=" + members_str(nsub);
        if (std::abs(closed - summed) >= kNormalizationTolerance && contain_bad.empty()) contain_bad = where;
        const Rational expect{static_cast<std::int64_t>(intersect(nsub, h).order()),
                              static_cast<std::int64_t>(nsub.order())};
        const Rational snapped = snap_rational(summed, static_cast<std::int64_t>(g.order()));
        const Rational reduced = snap_rational(static_cast<double>(expect.num) / static_cast<double>(expect.den),
                                               static_cast<std::int64_t>(g.order()));
        if (!(snapped == reduced) && exact_bad.empty()) exact_bad = where;
        if (!h.contains(nsub) && summed > 0.5 + kNormalizationTolerance && half_bad.empty()) half_bad = where;
      }
      const double core_prob = prob_kernel_contains_by_sum(inst, dist, inst.core());
      if (std::abs(core_prob - 1.0) >= kNormalizationTolerance && core_bad.empty()) core_bad = "H=" + members_str(h);
    }
    const std::string scope = std::to_string(subgroups.size()) + " subgroups x " + std::to_string(normals.size()) +
                              " normal subgroups";
    log.record("containment_dual_path", contain_bad.empty(),
               contain_bad.empty() ? scope + ", max |diff| " + sci(contain_worst) : "counterexample " + contain_bad);
    log.record("containment_rational", exact_bad.empty(), exact_bad.empty() ? scope : "counterexample " + exact_bad);
    log.record("core_always_contained", core_bad.empty(),
               core_bad.empty() ? "P(Y contains H^G) = 1 for every H" : "counterexample " + core_bad);
    log.record("non_contained_at_most_half", half_bad.empty(),
               half_bad.empty() ? "P(Y contains N) <= 1/2 whenever N not in H" : "counterexample " + half_bad);

    if (!ctx->matrices) {
      log.skip("statevector_oracle", ctx->matrices_note);
    } else {
      const IrrepMatrices& m = *ctx->matrices;
      const double hom = homomorphism_residual(m), uni = unitarity_residual(m), tr = trace_residual(m, t);
      log.record("irrep_homomorphism", hom < tol, "max residual " + sci(hom));
      log.record("irrep_unitary", uni < tol, "max residual " + sci(uni));
      log.record("irrep_traces", tr < tol, "max residual " + sci(tr));
      const double fu = unitarity_residual(fourier_unitary(m));
      log.record("fourier_unitary", fu < tol, "max |F F* - I| " + sci(fu));
      double worst = 0.0;
      std::string bad;
      for (const auto& h : subgroups) {
        const HspInstance inst = make_instance(ctx, h);
        const double d = max_abs_difference(measurement_distribution(inst, tol), statevector_distribution(inst));
        worst = std::max(worst, d);
        if (d >= kNormalizationTolerance && bad.empty()) bad = "H=" + members_str(h);
      }
      log.record("statevector_oracle", bad.empty(),
                 bad.empty() ? std::to_string(subgroups.size()) + " subgroups, max discrepancy " + sci(worst)
                             : "counterexample " + bad);
    }
    return log.failed() ? 1 : 0;
  });
}

int cmd_bounds(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Json j = header(cfg, "bounds");
    std::optional<SieveReport> sieve;
    if (cfg.order) {
      const std::uint64_t order = *cfg.order;
      if (cfg.n_from_corollary) {
        if (!cfg.epsilon) throw std::invalid_argument("--n-from-corollary needs --epsilon");
        const double eps = *cfg.epsilon;
        const double loglog = std::log(std::log(static_cast<double>(order)));
        // n = 4 (1 + eps) log log |G| gives the bound 1 - (log |G|)^(-2 (1 + eps) / 9).
        const double n_real = 4.0 * (1.0 + eps) * loglog;
        const auto n_int = static_cast<std::uint64_t>(std::ceil(n_real));
        j["n_from_corollary"] = {
            {"n_real", n_real},
            {"n", n_int},
            {"bound_at_n_real", corollary_bound(order, n_real, eps)},
            {"closed_form", 1.0 - std::pow(std::log(static_cast<double>(order)), -2.0 * (1.0 + eps) / 9.0)},
            {"bound_at_n", corollary_bound(order, static_cast<double>(n_int), eps)},
        };
      }
      if (cfg.n_from_theorem) {
        const double n_real = 4.0 * std::log2(static_cast<double>(order));
        const auto n_int = static_cast<std::uint64_t>(std::ceil(n_real));
        Json t = {{"n_real", n_real}, {"n", n_int}};
        t["bound_at_n"] = static_cast<double>(n_int) > theorem_threshold(order)
                              ? Json(theorem_bound(order, static_cast<double>(n_int)))
                              : Json("vacuous");
        t["closed_form_power_of_two"] = 1.0 - std::exp(-(2.0 / 9.0) * std::log2(static_cast<double>(order)));
        j["n_from_theorem"] = std::move(t);
      }
      if (cfg.n) {
        const auto n = static_cast<double>(*cfg.n);
        theorem_bound(order, n);  // threshold violations are errors here
        if (cfg.epsilon) corollary_bound(order, n, *cfg.epsilon);
        j["bounds"] = bound_report_json(bound_report(order, n, cfg.epsilon));
      }
      if (cfg.target) {
        Json ms = {{"target", *cfg.target}, {"theorem", min_samples(order, *cfg.target, BoundMode::Theorem)}};
        if (cfg.epsilon) ms["corollary"] = min_samples(order, *cfg.target, BoundMode::Corollary, *cfg.epsilon);
        j["min_samples"] = std::move(ms);
      }
      if (!cfg.n && !cfg.n_from_corollary && !cfg.n_from_theorem && !cfg.target) {
        j["bounds"] = {{"group_order", order}, {"omega", big_omega(order)}, {"threshold", theorem_threshold(order)}};
      }
    }
    if (cfg.sieve_limit) {
      const double eps = cfg.epsilon.value_or(3.5);
      SieveOptions so;
      so.budget_bytes = sieve_budget_from_env();
      if (cfg.allow_large_sieve) so.budget_bytes = std::max<std::uint64_t>(so.budget_bytes, 1'000'000'001ULL);
      so.max_violations = cfg.max_violations;
      sieve = normal_order_fraction(*cfg.sieve_limit, eps, so);
      j["sieve"] = sieve_json(*sieve, true);
    }
    if (!cfg.order && !cfg.sieve_limit) throw std::invalid_argument("bounds needs --order and/or --sieve");

    if (cfg.output == OutputFormat::Csv) {
      if (!sieve) throw std::invalid_argument("--output csv is only available with --sieve");
      out << "n,omega\n";
      for (const auto& [n, omega] : sieve->violations) out << n << "," << omega << "\n";
      return 0;
    }
    out << j.dump(2) << "\n";
    return 0;
  });
}

}  // namespace hsp
