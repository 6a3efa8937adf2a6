#include "hsp/bounds.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <string>

namespace hsp {

std::uint64_t big_omega(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("big_omega: argument must be positive");
  std::uint64_t count = 0;
  for (std::uint64_t p : {2ULL, 3ULL}) {
    while (m % p == 0) {
      m /= p;
      ++count;
    }
  }
  for (std::uint64_t p = 5; p <= m / p; p += 6) {
    while (m % p == 0) {
      m /= p;
      ++count;
    }
    const std::uint64_t q = p + 2;
    while (m % q == 0) {
      m /= q;
      ++count;
    }
  }
  if (m > 1) ++count;
  return count;
}

namespace {

double azuma_tail(double n, double offset) {
  const double a = n / 2.0 - offset;
  return std::exp(-8.0 * a * a / (9.0 * n));
}

}  // namespace

double theorem_threshold(std::uint64_t order) { return 2.0 * static_cast<double>(big_omega(order)); }

double theorem_bound(std::uint64_t order, double n) {
  const double threshold = theorem_threshold(order);
  if (!(n > threshold)) {
    throw VacuousBound("bound vacuous below threshold: need n > 2*Omega(|G|) = " + std::to_string(threshold));
  }
  return 1.0 - azuma_tail(n, static_cast<double>(big_omega(order)));
}

double corollary_threshold(std::uint64_t order, double epsilon) {
  if (order < 16) throw std::invalid_argument("corollary bound needs |G| >= 16");
  if (!(epsilon > 0)) throw std::invalid_argument("corollary bound needs epsilon > 0");
  return 2.0 * (1.0 + epsilon) * std::log(std::log(static_cast<double>(order)));
}

double corollary_bound(std::uint64_t order, double n, double epsilon) {
  const double threshold = corollary_threshold(order, epsilon);
  if (!(n > threshold)) {
    throw VacuousBound("bound vacuous below threshold: need n > 2(1+eps) log log |G| = " +
                       std::to_string(threshold));
  }
  return 1.0 - azuma_tail(n, threshold / 2.0);
}

std::uint64_t min_samples(std::uint64_t order, double target, BoundMode mode, double epsilon) {
  if (!(target > 0.0 && target < 1.0)) throw std::invalid_argument("min_samples: target must lie in (0, 1)");
  const double threshold =
      mode == BoundMode::Theorem ? theorem_threshold(order) : corollary_threshold(order, epsilon);
  auto bound = [&](double n) {
    return mode == BoundMode::Theorem ? theorem_bound(order, n) : corollary_bound(order, n, epsilon);
  };
  auto n = static_cast<std::uint64_t>(std::floor(threshold)) + 1;
  while (bound(static_cast<double>(n)) < target) ++n;
  return n;
}

BoundReport bound_report(std::uint64_t order, double n, std::optional<double> epsilon) {
  BoundReport r;
  r.group_order = order;
  r.omega = big_omega(order);
  r.n = n;
  r.epsilon = epsilon;
  if (n > theorem_threshold(order)) r.theorem_value = theorem_bound(order, n);
  if (epsilon && order >= 16 && n > corollary_threshold(order, *epsilon)) {
    r.corollary_value = corollary_bound(order, n, *epsilon);
  }
  return r;
}

std::vector<std::uint8_t> omega_sieve(std::uint64_t limit) {
  std::vector<std::uint8_t> omega(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  // Every composite c is reached exactly once, as i * p with p its least prime factor.
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (omega[i] == 0) {
      omega[i] = 1;
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes) {
      const std::uint64_t c = i * p;
      if (c > limit) break;
      omega[c] = static_cast<std::uint8_t>(omega[i] + 1);
      if (i % p == 0) break;
    }
  }
  return omega;
}

SieveReport normal_order_fraction(std::uint64_t limit, double epsilon, const SieveOptions& opts) {
  if (limit < 16) throw std::invalid_argument("normal_order_fraction: limit must be at least 16");
  if (!(epsilon > 0)) throw std::invalid_argument("normal_order_fraction: epsilon must be positive");
  if (limit > opts.budget_bytes) {
    throw std::invalid_argument("limit " + std::to_string(limit) + " exceeds sieve budget of " +
                                std::to_string(opts.budget_bytes) + " bytes");
  }
  if (limit >= (1ULL << 32)) throw std::invalid_argument("limit must be below 2^32");

  const std::vector<std::uint8_t> omega = omega_sieve(limit);

  // first_ok[k] = least n >= 3 with (1 + eps) log log n >= k, evaluated exactly as
  // the inequality itself so the test below agrees with direct evaluation.
  auto rhs = [&](std::uint64_t n) { return (1.0 + epsilon) * std::log(std::log(static_cast<double>(n))); };
  std::array<std::uint64_t, 64> first_ok{};
  for (std::size_t k = 0; k < first_ok.size(); ++k) {
    std::uint64_t lo = 3, hi = limit + 1;  // hi means "never within range"
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (rhs(mid) >= static_cast<double>(k)) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    first_ok[k] = lo;
  }

  SieveReport r;
  r.limit = limit;
  r.epsilon = epsilon;
  r.excluded_small = 2;
  for (std::uint64_t n = 3; n <= limit; ++n) {
    ++r.counted;
    if (n >= first_ok[omega[n]]) {
      ++r.satisfied;
    } else if (r.violations.size() < opts.max_violations) {
      r.violations.emplace_back(n, omega[n]);
    } else {
      r.violations_truncated = r.violations_truncated || opts.max_violations > 0;
    }
  }
  r.fraction = static_cast<double>(r.satisfied) / static_cast<double>(r.counted);
  return r;
}

std::uint64_t sieve_budget_from_env() {
  if (const char* v = std::getenv("HSP_SIEVE_BUDGET")) {
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(v, &end, 10);
    if (end != v && *end == '\0' && parsed > 0) return parsed;
  }
  return kDefaultSieveBudget;
}

}  // namespace hsp
