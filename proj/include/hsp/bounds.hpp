#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hsp {

/// Thrown when a bound is requested at or below its sample-count threshold.
class VacuousBound : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Number of prime factors of m counted with multiplicity.
std::uint64_t big_omega(std::uint64_t m);

/// 2 * Omega(order); the success bound needs n strictly above it.
double theorem_threshold(std::uint64_t order);
/// 1 - exp(-8 (n/2 - Omega(order))^2 / (9 n)).
double theorem_bound(std::uint64_t order, double n);

/// 2 (1 + epsilon) log log order, natural logarithms.
double corollary_threshold(std::uint64_t order, double epsilon);
/// 1 - exp(-8 (n/2 - (1 + epsilon) log log order)^2 / (9 n)). Needs order >= 16.
double corollary_bound(std::uint64_t order, double n, double epsilon);

enum class BoundMode { Theorem, Corollary };

/// Smallest integer n whose bound reaches `target`, scanning up from the threshold.
std::uint64_t min_samples(std::uint64_t order, double target, BoundMode mode, double epsilon = 0.0);

struct BoundReport {
  std::uint64_t group_order = 0;
  std::uint64_t omega = 0;
  double n = 0;
  std::optional<double> theorem_value;    // empty when vacuous
  std::optional<double> corollary_value;  // empty when vacuous or not requested
  std::optional<double> epsilon;
};

BoundReport bound_report(std::uint64_t order, double n, std::optional<double> epsilon = std::nullopt);

inline constexpr std::uint64_t kDefaultSieveBudget = 100'000'000;  // bytes, one per integer

struct SieveOptions {
  std::uint64_t budget_bytes = kDefaultSieveBudget;
  std::size_t max_violations = 0;  // how many (n, Omega(n)) violations to keep
};

struct SieveReport {
  std::uint64_t limit = 0;
  double epsilon = 0;
  std::uint64_t satisfied = 0;       // n with Omega(n) <= (1 + eps) log log n
  std::uint64_t counted = 0;         // 3 <= n <= limit
  std::uint64_t excluded_small = 0;  // n in {1, 2}: log log n <= 0
  double fraction = 0;
  std::vector<std::pair<std::uint64_t, unsigned>> violations;
  bool violations_truncated = false;
};

/// Linear sieve of Omega up to `limit`, then the fraction of counted n that
/// satisfy the normal-order inequality.
SieveReport normal_order_fraction(std::uint64_t limit, double epsilon, const SieveOptions& opts = {});

/// Omega(n) for 0 <= n <= limit (entry 0 unused), by linear sieve.
std::vector<std::uint8_t> omega_sieve(std::uint64_t limit);

/// HSP_SIEVE_BUDGET if set and valid, otherwise kDefaultSieveBudget.
std::uint64_t sieve_budget_from_env();

}  // namespace hsp
