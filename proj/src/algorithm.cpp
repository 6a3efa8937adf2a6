#include "hsp/algorithm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

#include "hsp/bounds.hpp"

namespace hsp {

RunTrace run_once(const HspInstance& inst, std::size_t n, RandomStream& rng) {
  if (n == 0) throw std::invalid_argument("run_once: n must be at least 1");
  const IrrepDistribution dist = measurement_distribution(inst);
  RunTrace trace;
  trace.chain.reserve(n + 1);
  trace.chain.push_back(whole_group(inst.group()));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t rho = sample_irrep(dist, rng);
    trace.sampled_irreps.push_back(rho);
    Subgroup next = intersect(trace.chain.back(), inst.context().kernel(rho));
    if (next.order() != trace.chain.back().order()) ++trace.strict_inclusions;
    trace.chain.push_back(std::move(next));
  }
  trace.success = trace.result() == inst.core();
  return trace;
}

KernelLattice::KernelLattice(const HspInstance& inst) : num_irreps_(inst.table().num_irreps()) {
  std::map<std::vector<Element>, std::size_t> index;
  auto node_of = [&](Subgroup s) {
    std::vector<Element> key(s.members().begin(), s.members().end());
    auto [it, inserted] = index.emplace(std::move(key), nodes_.size());
    if (inserted) nodes_.push_back(std::move(s));
    return it->second;
  };
  node_of(whole_group(inst.group()));
  for (std::size_t node = 0; node < nodes_.size(); ++node) {
    for (std::size_t rho = 0; rho < num_irreps_; ++rho) {
      const std::size_t nxt = node_of(intersect(nodes_[node], inst.context().kernel(rho)));
      next_.push_back(nxt);
    }
  }
  for (std::size_t node = 0; node < nodes_.size(); ++node) {
    const Subgroup& s = nodes_[node];
    inside_hidden_.push_back(inst.hidden().contains(s));
    prob_contains_.push_back(static_cast<double>(intersect(s, inst.hidden()).order()) /
                             static_cast<double>(s.order()));
    if (s == inst.core()) core_node_ = node;
  }
}

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) throw std::invalid_argument("wilson_interval: no trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double SuccessEstimate::standard_error() const {
  return std::sqrt(rate * (1.0 - rate) / static_cast<double>(trials));
}

namespace {

struct TrialTally {
  std::size_t successes = 0;
  std::size_t core_violations = 0;
  std::vector<std::size_t> histogram;
};

void run_trials(const KernelLattice& lattice, const IrrepDistribution& dist,
                const std::vector<bool>& contains_core, std::size_t n, std::uint64_t seed, std::size_t begin,
                std::size_t end, TrialTally& tally) {
  tally.histogram.assign(n + 1, 0);
  for (std::size_t t = begin; t < end; ++t) {
    RandomStream rng = RandomStream::derive(seed, t);
    std::size_t node = 0, strict = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t next = lattice.step(node, sample_irrep(dist, rng));
      if (next != node) ++strict;
      node = next;
    }
    if (lattice.is_core(node)) ++tally.successes;
    if (!contains_core[node]) ++tally.core_violations;
    ++tally.histogram[strict];
  }
}

}  // namespace

SuccessEstimate estimate_success(const HspInstance& inst, std::size_t n, std::size_t trials, std::uint64_t seed,
                                 const EstimateOptions& opts) {
  if (n == 0) throw std::invalid_argument("estimate_success: n must be at least 1");
  if (trials == 0) throw std::invalid_argument("estimate_success: trials must be at least 1");
  const IrrepDistribution dist = measurement_distribution(inst);
  const KernelLattice lattice(inst);
  std::vector<bool> contains_core;
  for (std::size_t node = 0; node < lattice.size(); ++node) {
    contains_core.push_back(lattice.subgroup(node).contains(inst.core()));
  }

  unsigned workers = opts.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opts.workers;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, trials));
  std::vector<TrialTally> tallies(workers);
  if (workers == 1) {
    run_trials(lattice, dist, contains_core, n, seed, 0, trials, tallies[0]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = trials * w / workers, end = trials * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] {
        run_trials(lattice, dist, contains_core, n, seed, begin, end, tallies[w]);
      });
    }
    for (auto& th : pool) th.join();
  }

  SuccessEstimate est;
  est.n = n;
  est.trials = trials;
  est.seed = seed;
  est.strict_inclusion_histogram.assign(n + 1, 0);
  for (const auto& t : tallies) {
    est.successes += t.successes;
    est.core_violations += t.core_violations;
    for (std::size_t k = 0; k < t.histogram.size(); ++k) est.strict_inclusion_histogram[k] += t.histogram[k];
  }
  while (est.strict_inclusion_histogram.size() > 1 && est.strict_inclusion_histogram.back() == 0) {
    est.strict_inclusion_histogram.pop_back();
  }
  est.rate = static_cast<double>(est.successes) / static_cast<double>(trials);
  est.wilson = wilson_interval(est.successes, trials);

  const std::uint64_t order = inst.group().order();
  est.omega = big_omega(order);
  const auto dn = static_cast<double>(n);
  if (dn > theorem_threshold(order)) est.theorem_bound = theorem_bound(order, dn);
  if (opts.epsilon && order >= 16 && dn > corollary_threshold(order, *opts.epsilon)) {
    est.corollary_bound = corollary_bound(order, dn, *opts.epsilon);
  }
  return est;
}

ChainStatistics chain_statistics(const std::vector<RunTrace>& traces) {
  if (traces.empty()) throw std::invalid_argument("chain_statistics: no traces");
  ChainStatistics stats;
  stats.omega = big_omega(traces.front().chain.front().parent().order());
  for (const auto& t : traces) {
    if (t.strict_inclusions >= stats.histogram.size()) stats.histogram.resize(t.strict_inclusions + 1, 0);
    ++stats.histogram[t.strict_inclusions];
    stats.max_strict = std::max(stats.max_strict, t.strict_inclusions);
  }
  if (stats.max_strict > stats.omega) {
    throw std::logic_error("chain has " + std::to_string(stats.max_strict) + " strict inclusions, above Omega(|G|) = " +
                           std::to_string(stats.omega));
  }
  return stats;
}

std::size_t MartingaleReport::skipped_bins() const {
  return static_cast<std::size_t>(std::count_if(bins.begin(), bins.end(), [](const auto& b) { return !b.checked; }));
}

bool MartingaleReport::passed() const {
  return zn_pass && std::all_of(bins.begin(), bins.end(), [](const auto& b) { return b.pass; });
}

MartingaleReport martingale_diagnostics(const HspInstance& inst, std::size_t n, std::size_t trials,
                                        std::uint64_t seed, std::size_t min_observations) {
  if (n == 0) throw std::invalid_argument("martingale_diagnostics: n must be at least 1");
  if (trials < 1000) throw std::invalid_argument("martingale_diagnostics: needs at least 1000 trials");
  const IrrepDistribution dist = measurement_distribution(inst);
  const KernelLattice lattice(inst);

  std::vector<std::size_t> obs(lattice.size(), 0), ones(lattice.size(), 0);
  std::vector<double> z_sum(n + 1, 0.0);
  double zn_sq = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    RandomStream rng = RandomStream::derive(seed, t);
    std::size_t node = 0;
    double z = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      const std::size_t next = lattice.step(node, sample_irrep(dist, rng));
      const bool outside = !lattice.inside_hidden(node);
      const int indicator = (next == node && outside) ? 1 : 0;
      const double expected = outside ? lattice.prob_contains(node) : 0.0;
      z += indicator - expected;
      ++obs[node];
      ones[node] += static_cast<std::size_t>(indicator);
      z_sum[i] += z;
      node = next;
    }
    zn_sq += z * z;
  }

  MartingaleReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.seed = seed;
  rep.min_observations = min_observations;
  const auto tr = static_cast<double>(trials);
  for (double s : z_sum) rep.z_means.push_back(s / tr);
  rep.zn_mean = rep.z_means.back();
  const double var = std::max(0.0, zn_sq / tr - rep.zn_mean * rep.zn_mean) * tr / std::max(1.0, tr - 1.0);
  rep.zn_sigma = std::sqrt(var / tr);
  rep.zn_pass = std::abs(rep.zn_mean) <= 3.0 * rep.zn_sigma + 1e-12;

  for (std::size_t node = 0; node < lattice.size(); ++node) {
    if (obs[node] == 0) continue;
    MartingaleBin bin{lattice.subgroup(node)};
    bin.observations = obs[node];
    bin.ones = ones[node];
    bin.mean = static_cast<double>(bin.ones) / static_cast<double>(bin.observations);
    bin.exact = lattice.inside_hidden(node) ? 0.0 : lattice.prob_contains(node);
    bin.sigma = std::sqrt(0.25 / static_cast<double>(bin.observations));
    bin.checked = bin.observations >= min_observations;
    bin.pass = !bin.checked || (bin.mean >= 0.0 && bin.mean <= 0.5 + 3.0 * bin.sigma);
    rep.bins.push_back(std::move(bin));
  }
  return rep;
}

}  // namespace hsp
