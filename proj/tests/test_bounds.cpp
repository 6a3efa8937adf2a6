#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "hsp/bounds.hpp"

using namespace hsp;

namespace {

unsigned naive_omega(std::uint64_t m) {
  unsigned count = 0;
  for (std::uint64_t p = 2; m > 1; ++p)
    while (m % p == 0) {
      m /= p;
      ++count;
    }
  return count;
}

}  // namespace

TEST(Bounds, BigOmegaExamples) {
  EXPECT_EQ(big_omega(1), 0u);
  EXPECT_EQ(big_omega(12), 3u);
  EXPECT_EQ(big_omega(1024), 10u);
  EXPECT_EQ(big_omega(1'000'000'000), 18u);
  EXPECT_EQ(big_omega(9'223'372'036'854'775'783ULL), 1u);  // largest prime below 2^63
  EXPECT_EQ(big_omega(1ULL << 62), 62u);
  EXPECT_THROW(big_omega(0), std::invalid_argument);
  for (std::uint64_t m = 1; m <= 5000; ++m) EXPECT_EQ(big_omega(m), naive_omega(m)) << m;
}

TEST(Bounds, BigOmegaIsCompletelyAdditive) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint64_t> dist(1, 3'000'000);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t a = dist(rng), b = dist(rng);
    EXPECT_EQ(big_omega(a * b), big_omega(a) + big_omega(b));
  }
}

TEST(Bounds, TheoremBound) {
  EXPECT_DOUBLE_EQ(theorem_bound(64, 24), 1.0 - std::exp(-4.0 / 3.0));
  EXPECT_NEAR(theorem_bound(64, 24), 0.7364, 1e-4);
  EXPECT_DOUBLE_EQ(theorem_threshold(64), 12.0);
  EXPECT_THROW(theorem_bound(64, 12), VacuousBound);
  EXPECT_THROW(theorem_bound(64, 1), VacuousBound);
  try {
    theorem_bound(64, 12);
  } catch (const VacuousBound& e) {
    EXPECT_NE(std::string(e.what()).find("bound vacuous below threshold"), std::string::npos);
  }
  EXPECT_GT(theorem_bound(64, 12.000001), 0.0);
  EXPECT_LT(theorem_bound(64, 12.000001), 1e-9);
}

TEST(Bounds, MonotoneAndInsideUnitInterval) {
  for (std::uint64_t order : {6ULL, 64ULL, 360ULL, 1ULL << 20}) {
    double prev = 0.0;
    for (double n = std::floor(theorem_threshold(order)) + 1; n < 500; n += 1) {
      const double b = theorem_bound(order, n);
      // Strict while the gap to 1 is resolvable in double precision.
      if (1.0 - prev > 1e-12) {
        EXPECT_GT(b, prev) << order << " " << n;
      }
      EXPECT_GE(b, prev);
      EXPECT_GT(b, 0.0);
      EXPECT_LE(b, 1.0);
      prev = b;
    }
  }
  for (std::uint64_t order : {16ULL, 1000ULL, 1'000'000'000ULL}) {
    double prev = 0.0;
    for (double n = std::floor(corollary_threshold(order, 0.5)) + 1; n < 400; n += 1) {
      const double b = corollary_bound(order, n, 0.5);
      if (1.0 - prev > 1e-12) {
        EXPECT_GT(b, prev);
      }
      EXPECT_GE(b, prev);
      EXPECT_LE(b, 1.0);
      prev = b;
    }
  }
}

TEST(Bounds, PowerOfTwoSimplification) {
  for (int k = 3; k <= 20; ++k) {
    const std::uint64_t order = 1ULL << k;
    const double got = theorem_bound(order, 4.0 * k);
    const double expect = 1.0 - std::exp(-(2.0 / 9.0) * k);
    EXPECT_LE(std::abs(got - expect), 1e-12 * expect) << k;
  }
}

TEST(Bounds, CorollarySimplification) {
  for (double order : {1e3, 1e6, 1e9}) {
    const auto o = static_cast<std::uint64_t>(order);
    const double loglog = std::log(std::log(order));
    // 8 (9L - 4.5L)^2 / (9 * 18L) = L
    EXPECT_NEAR(8.0 * std::pow(9 * loglog - 4.5 * loglog, 2) / (9.0 * 18 * loglog), loglog, 1e-12);
    const double got = corollary_bound(o, 18.0 * loglog, 3.5);
    const double expect = 1.0 - 1.0 / std::log(order);
    EXPECT_LE(std::abs(got - expect), 1e-12 * expect);
  }
  EXPECT_THROW(corollary_bound(15, 100, 1.0), std::invalid_argument);
  EXPECT_THROW(corollary_bound(1000, 1.0, 3.5), VacuousBound);
  EXPECT_THROW(corollary_bound(1000, 100, 0.0), std::invalid_argument);
  EXPECT_DOUBLE_EQ(corollary_threshold(1000, 3.5), 9.0 * std::log(std::log(1000.0)));
}

TEST(Bounds, MinSamples) {
  EXPECT_EQ(min_samples(64, 1e-300, BoundMode::Theorem), 13u);
  EXPECT_LE(min_samples(64, 0.73, BoundMode::Theorem), 24u);
  for (double target : {0.1, 0.5, 0.9, 0.999}) {
    for (std::uint64_t order : {6ULL, 64ULL, 1000ULL}) {
      const std::uint64_t n = min_samples(order, target, BoundMode::Theorem);
      EXPECT_GE(theorem_bound(order, static_cast<double>(n)), target);
      if (static_cast<double>(n - 1) > theorem_threshold(order)) {
        EXPECT_LT(theorem_bound(order, static_cast<double>(n - 1)), target);
      }
      const std::uint64_t c = min_samples(order < 16 ? 16 : order, target, BoundMode::Corollary, 1.0);
      const std::uint64_t oc = order < 16 ? 16 : order;
      EXPECT_GE(corollary_bound(oc, static_cast<double>(c), 1.0), target);
      if (static_cast<double>(c - 1) > corollary_threshold(oc, 1.0)) {
        EXPECT_LT(corollary_bound(oc, static_cast<double>(c - 1), 1.0), target);
      }
    }
  }
  EXPECT_THROW(min_samples(64, 1.0, BoundMode::Theorem), std::invalid_argument);
}

TEST(Bounds, BoundReport) {
  const BoundReport r = bound_report(64, 24);
  EXPECT_EQ(r.omega, 6u);
  ASSERT_TRUE(r.theorem_value);
  EXPECT_DOUBLE_EQ(*r.theorem_value, 1.0 - std::exp(-4.0 / 3.0));
  EXPECT_FALSE(bound_report(64, 5).theorem_value);
  const BoundReport c = bound_report(1000, 60, 3.5);
  ASSERT_TRUE(c.corollary_value);
  EXPECT_DOUBLE_EQ(*c.corollary_value, corollary_bound(1000, 60, 3.5));
}

TEST(Bounds, OmegaSieveMatchesTrialDivision) {
  const auto omega = omega_sieve(100000);
  ASSERT_EQ(omega.size(), 100001u);
  for (std::uint64_t n = 1; n <= 100000; ++n) ASSERT_EQ(omega[n], naive_omega(n)) << n;
}

TEST(Bounds, SieveSmallLimitIsExact) {
  SieveOptions opts;
  opts.max_violations = 1000;
  const SieveReport r = normal_order_fraction(100, 3.5, opts);
  std::vector<std::pair<std::uint64_t, unsigned>> expect;
  std::uint64_t satisfied = 0;
  for (std::uint64_t n = 3; n <= 100; ++n) {
    const unsigned w = naive_omega(n);
    if (w <= 4.5 * std::log(std::log(static_cast<double>(n)))) ++satisfied;
    else expect.emplace_back(n, w);
  }
  EXPECT_EQ(r.violations, expect);
  EXPECT_EQ(r.counted, 98u);
  EXPECT_EQ(r.excluded_small, 2u);
  EXPECT_EQ(r.satisfied, satisfied);
  EXPECT_DOUBLE_EQ(r.fraction, static_cast<double>(satisfied) / 98.0);
  EXPECT_FALSE(r.violations_truncated);

  opts.max_violations = 1;
  const SieveReport t = normal_order_fraction(100, 3.5, opts);
  EXPECT_EQ(t.violations.size(), 1u);
  EXPECT_TRUE(t.violations_truncated);
  EXPECT_EQ(t.satisfied, r.satisfied);
}

TEST(Bounds, SieveLargeEpsilonIsEverything) {
  EXPECT_DOUBLE_EQ(normal_order_fraction(10000, 50.0).fraction, 1.0);
}

TEST(Bounds, SieveMonotoneInEpsilon) {
  double prev = 0.0;
  for (double eps : {0.1, 0.5, 1.0, 2.0, 3.5, 5.0, 10.0}) {
    const double f = normal_order_fraction(200000, eps).fraction;
    EXPECT_GE(f, prev) << eps;
    prev = f;
  }
}

TEST(Bounds, SieveRejectsBadArguments) {
  EXPECT_THROW(normal_order_fraction(15, 3.5), std::invalid_argument);
  EXPECT_THROW(normal_order_fraction(100, 0.0), std::invalid_argument);
  SieveOptions small;
  small.budget_bytes = 1000;
  EXPECT_THROW(normal_order_fraction(5000, 3.5, small), std::invalid_argument);
}

TEST(Bounds, SieveBudgetFromEnvironment) {
  ::unsetenv("HSP_SIEVE_BUDGET");
  EXPECT_EQ(sieve_budget_from_env(), kDefaultSieveBudget);
  ::setenv("HSP_SIEVE_BUDGET", "12345", 1);
  EXPECT_EQ(sieve_budget_from_env(), 12345u);
  ::setenv("HSP_SIEVE_BUDGET", "lots", 1);
  EXPECT_EQ(sieve_budget_from_env(), kDefaultSieveBudget);
  ::unsetenv("HSP_SIEVE_BUDGET");
}
