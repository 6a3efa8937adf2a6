#pragma once

// Command implementations behind the `hsp` executable. Each writes its report
// to `out`, diagnostics to `err`, and returns the process exit status.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hsp/report.hpp"

namespace hsp {

enum class OutputFormat { Json, Csv };

inline constexpr std::uint64_t kDefaultSeed = 1;

struct ExperimentConfig {
  std::string group_spec = "z1";
  std::vector<Element> subgroup_gens;
  std::optional<std::uint64_t> n;
  std::size_t trials = 1000;
  std::uint64_t seed = kDefaultSeed;
  OutputFormat output = OutputFormat::Json;
  std::optional<double> epsilon;
  double tolerance = kDefaultTolerance;
  unsigned workers = 1;

  bool character_table = false;  // distribution: embed the character table
  bool martingale = false;       // simulate: add martingale diagnostics

  // bounds
  std::optional<std::uint64_t> order;
  bool n_from_corollary = false;
  bool n_from_theorem = false;
  std::optional<double> target;
  std::optional<std::uint64_t> sieve_limit;
  bool allow_large_sieve = false;
  std::size_t max_violations = 1000;

  // verify
  std::size_t subgroup_cap = 128;
};

Json config_json(const ExperimentConfig& cfg);

int cmd_distribution(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_simulate(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bounds(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

struct Rational {
  std::int64_t num = 0, den = 1;
  bool operator==(const Rational&) const = default;
};

/// Nearest p/q to x with q dividing `denominator`, in lowest terms.
Rational snap_rational(double x, std::int64_t denominator);

}  // namespace hsp
