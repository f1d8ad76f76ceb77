#include <cmath>
#include <map>

#include "doctest.h"

#include "bpmed/error.hpp"
#include "bpmed/inverse.hpp"
#include "bpmed/random_stats.hpp"
#include "bpmed/serialize.hpp"
#include "bpmed/verify/oracles.hpp"

using namespace bpmed;

namespace {
BigRational q(long long a, long long b) { return BigRational(a, b); }
bool within_4se(double value, double target, double se) { return std::abs(value - target) <= 4 * se; }
}  // namespace

TEST_CASE("closed-form moments at small n") {
  CHECK(expected_common_closed(3) == q(4, 3));
  CHECK(variance_distance_closed(3) == q(2, 9));
  CHECK(expected_distance_closed(3) == q(2, 3));
  CHECK(expected_common_closed(2) == 1);
  CHECK(variance_distance_closed(2) == 0);
  CHECK_THROWS_AS(expected_common_closed(1), ValidationError);
  CHECK_THROWS_AS(variance_distance_closed(0), ValidationError);
  const auto m = moments_closed(5);
  CHECK(m.expected_distance == 4 - m.expected_common);
}

TEST_CASE("closed forms match exhaustive enumeration for n = 2..7") {
  for (int n = 2; n <= 7; ++n) {
    const auto ex = oracle::exhaustive_moments(n);
    REQUIRE(ex.mean == expected_common_closed(n));
    REQUIRE(n - 1 - ex.mean == expected_distance_closed(n));
    REQUIRE(ex.variance == variance_distance_closed(n));
  }
}

TEST_CASE("both variance forms agree for n = 2..50") {
  for (int n = 2; n <= 50; ++n) {
    REQUIRE(variance_distance_closed(n) == variance_distance_expanded(n));
    REQUIRE(variance_distance_closed(n) >= 0);
  }
}

TEST_CASE("large-n limits") {
  const auto m = moments_closed(1000000);
  CHECK(std::abs(static_cast<double>(m.expected_common) - 2.0) < 1e-4);
  CHECK(std::abs(static_cast<double>(m.variance) - 2.0) < 1e-4);
}

TEST_CASE("uniform permutations") {
  TrialRng a(7, 3), b(7, 3), c(7, 4);
  const auto pa = uniform_permutation(9, a);
  CHECK(pa == uniform_permutation(9, b));
  CHECK_FALSE(pa == uniform_permutation(9, c));
  TrialRng one(1, 1);
  for (int i = 0; i < 10; ++i) CHECK(uniform_permutation(1, one) == Permutation{1});
  TrialRng r(5, 0);
  for (int i = 0; i < 1000; ++i) REQUIRE(r.below(7) < 7);
  CHECK(r.below(1) == 0);
}

TEST_CASE("uniformity over S_4 by chi-square") {
  std::map<Permutation, std::uint64_t> counts;
  const std::uint64_t draws = 1000000;
  for (std::uint64_t t = 0; t < draws; ++t) {
    TrialRng rng(2026, t);
    ++counts[uniform_permutation(4, rng)];
  }
  REQUIRE(counts.size() == 24);
  const double expect = static_cast<double>(draws) / 24;
  double chi2 = 0;
  for (const auto& [p, c] : counts) chi2 += (c - expect) * (c - expect) / expect;
  // Upper 0.001 quantile of chi-square with 23 degrees of freedom.
  CHECK(chi2 < 49.728);
}

TEST_CASE("Monte-Carlo moments") {
  TrialConfig cfg;
  cfg.n = 3;
  cfg.trials = 100000;
  cfg.seed = 42;
  const auto m3 = mc_moments(cfg);
  REQUIRE(m3.std_error);
  CHECK(within_4se(m3.mean, 4.0 / 3.0, *m3.std_error));
  CHECK(m3.closed_mean == doctest::Approx(4.0 / 3.0));
  CHECK(m3.closed_variance == doctest::Approx(2.0 / 9.0));
  std::uint64_t total = 0;
  for (auto h : m3.histogram) total += h;
  CHECK(total == cfg.trials);
  REQUIRE(m3.z);
  CHECK(std::abs(*m3.z) <= 4);

  cfg.n = 100;
  const auto m100 = mc_moments(cfg);
  CHECK(within_4se(m100.mean, 2.0 * 99 / 100, *m100.std_error));

  cfg.trials = 1;
  const auto single = mc_moments(cfg);
  CHECK_FALSE(single.std_error.has_value());
  CHECK_FALSE(single.z.has_value());
  CHECK(single.variance == 0);

  cfg.trials = 0;
  CHECK_THROWS_AS(mc_moments(cfg), ValidationError);
}

TEST_CASE("tail fractions") {
  TrialConfig cfg;
  cfg.trials = 100000;
  cfg.seed = 3;
  cfg.epsilon = 1;
  double prev = 2;
  for (int n : {64, 256, 1024}) {
    cfg.n = n;
    const auto t = tail_fraction(cfg);
    CHECK(t.threshold == doctest::Approx(std::log2(n)));
    CHECK(t.fraction < prev);
    CHECK(t.fraction <= t.chebyshev_bound + 4 * t.std_error);
    prev = t.fraction;
  }
  cfg.n = 10;
  cfg.trials = 2000;
  cfg.threshold_scale = 10;
  CHECK(tail_fraction(cfg).fraction == 0);
  cfg.epsilon = 0;
  CHECK(tail_fraction(cfg).fraction == 1);
  cfg.epsilon = -1;
  CHECK(tail_fraction(cfg).fraction == 1);
}

TEST_CASE("median probability estimates") {
  const auto id3 = Permutation::identity(3);
  TrialConfig cfg;
  cfg.n = 3;
  cfg.k = 2;
  cfg.trials = 100000;
  cfg.seed = 17;
  const auto est = mc_median_probability(id3, 0, cfg);
  const double exact = static_cast<double>(m_inverse_count_brute(id3, 2)) / 36;
  CHECK(within_4se(est.estimate, exact, est.std_error));
  CHECK(est.l_probability.to_string() == "7/9");
  CHECK(est.max_excess <= est.slack);
  CHECK(est.dominated);
  CHECK(est.estimate <= 7.0 / 9.0 + 4 * est.std_error);

  cfg.k = 1;
  const auto e1 = mc_median_probability(id3, 0, cfg);
  CHECK(within_4se(e1.estimate, 2.0 / 6.0, e1.std_error));
  CHECK(e1.max_excess == 0);

  cfg.n = 10;
  CHECK_THROWS_AS(mc_median_probability(Permutation::identity(10), 0, cfg), SizeLimitError);
}

TEST_CASE("csv rows") {
  CHECK(csv_header() == "n,setting,estimate,stderr,closed_form,z");
  CHECK(csv_row(3, "mean", 1.5, 0.25, 4.0 / 3, std::nullopt) == "3,mean,1.5,0.25,1.333333333,");
}
