#pragma once

// The kernel-intersection algorithm: sample n irreps, intersect their kernels,
// compare with the normal core. Monte Carlo estimates and the chain/martingale
// diagnostics live here too.

#include <cstdint>
#include <optional>
#include <vector>

#include "hsp/instance.hpp"

namespace hsp {

struct RunTrace {
  std::vector<std::size_t> sampled_irreps;
  std::vector<Subgroup> chain;  // chain[i] = Y_0 cap ... cap Y_i, chain[0] = G
  bool success = false;         // chain.back() == H^G
  std::size_t strict_inclusions = 0;

  const Subgroup& result() const { return chain.back(); }
};

RunTrace run_once(const HspInstance& inst, std::size_t n, RandomStream& rng);

/// Memoized intersections of kernels reachable from G. Node 0 is G.
class KernelLattice {
 public:
  explicit KernelLattice(const HspInstance& inst);

  std::size_t size() const { return nodes_.size(); }
  std::size_t step(std::size_t node, std::size_t rho) const { return next_[node * num_irreps_ + rho]; }
  const Subgroup& subgroup(std::size_t node) const { return nodes_[node]; }
  bool is_core(std::size_t node) const { return node == core_node_; }
  bool inside_hidden(std::size_t node) const { return inside_hidden_[node]; }
  /// 1 / [N : N cap H] for the node's subgroup N.
  double prob_contains(std::size_t node) const { return prob_contains_[node]; }

 private:
  std::size_t num_irreps_;
  std::vector<Subgroup> nodes_;
  std::vector<std::size_t> next_;
  std::vector<bool> inside_hidden_;
  std::vector<double> prob_contains_;
  std::size_t core_node_ = SIZE_MAX;
};

struct WilsonInterval {
  double lo = 0, hi = 1;
};

inline constexpr double kZ95 = 1.959963984540054;

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z = kZ95);

struct SuccessEstimate {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t successes = 0;
  double rate = 0;
  WilsonInterval wilson;
  std::uint64_t omega = 0;
  std::optional<double> theorem_bound;    // empty when n <= 2 Omega(|G|)
  std::optional<double> corollary_bound;  // set only when epsilon is given and the bound applies
  std::vector<std::size_t> strict_inclusion_histogram;  // [k] = traces with k strict drops
  std::size_t core_violations = 0;                      // traces whose result missed H^G

  double standard_error() const;
};

struct EstimateOptions {
  std::optional<double> epsilon;
  unsigned workers = 1;  // 0 = hardware concurrency
};

/// Trial t uses RandomStream::derive(seed, t), so the estimate does not depend
/// on how trials are spread across workers.
SuccessEstimate estimate_success(const HspInstance& inst, std::size_t n, std::size_t trials, std::uint64_t seed,
                                 const EstimateOptions& opts = {});

struct ChainStatistics {
  std::vector<std::size_t> histogram;
  std::size_t max_strict = 0;
  std::uint64_t omega = 0;
};

/// Throws std::logic_error if any trace has more than Omega(|G|) strict drops.
ChainStatistics chain_statistics(const std::vector<RunTrace>& traces);

struct MartingaleBin {
  Subgroup prefix;            // running intersection before the step
  std::size_t observations = 0;
  std::size_t ones = 0;       // steps with I_i = 1
  double mean = 0;
  double exact = 0;           // [N not in H] / [N : N cap H]
  double sigma = 0;           // binomial standard error at p = 1/2
  bool checked = false;       // enough observations to test
  bool pass = true;
};

struct MartingaleReport {
  std::size_t n = 0, trials = 0;
  std::uint64_t seed = 0;
  std::size_t min_observations = 0;
  std::vector<MartingaleBin> bins;
  std::vector<double> z_means;  // empirical E(Z_i), i = 0..n
  double zn_mean = 0;
  double zn_sigma = 0;          // standard error of the Z_n mean
  bool zn_pass = false;

  std::size_t skipped_bins() const;
  bool passed() const;
};

/// I_i = [chain flat at step i] * [prefix not inside H]; Z_n = sum (I_i - E(I_i | past))
/// with the exact conditional expectation. Needs at least 1000 trials.
MartingaleReport martingale_diagnostics(const HspInstance& inst, std::size_t n, std::size_t trials,
                                        std::uint64_t seed, std::size_t min_observations = 30);

}  // namespace hsp
