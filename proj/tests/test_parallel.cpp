// OpenMP kernels against their serial references, at several thread counts.
#include <random>

#include "doctest.h"

#include "bpmed/counting.hpp"
#include "bpmed/inverse.hpp"
#include "bpmed/median.hpp"
#include "bpmed/random_stats.hpp"
#include "bpmed/verify/oracles.hpp"

using namespace bpmed;

namespace {
const Parallelism kThreadCounts[] = {{1}, {2}, {4}, {7}};
}

TEST_CASE("median scan") {
  std::mt19937_64 rng(21);
  for (int n : {5, 7, 8}) {
    std::vector<Permutation> xs;
    for (int i = 0; i < 3; ++i) xs.push_back(oracle::random_permutation(n, rng));
    const auto ref = medians_brute_serial(xs);
    for (auto par : kThreadCounts) {
      const auto r = medians_brute(xs, {}, par);
      REQUIRE(r.mu == ref.mu);
      REQUIRE(r.medians == ref.medians);
      REQUIRE(r.excess == ref.excess);
    }
  }
}

TEST_CASE("brute H counts") {
  std::mt19937_64 rng(22);
  for (int r = 0; r < 6; ++r) {
    const auto p = oracle::random_permutation(7, rng);
    const auto base = oracle::random_sub_segment_set(p, rng);
    const BigInt ref = h_count_brute_serial(p, base);
    for (auto par : kThreadCounts) REQUIRE(h_count_brute(p, base, {}, par) == ref);
  }
}

TEST_CASE("inverse counts") {
  const auto p = Permutation{2, 5, 1, 4, 3, 6};
  for (int k = 1; k <= 3; ++k) {
    const BigInt ref = l_inverse_count_serial(p, k, 1);
    for (auto par : kThreadCounts) REQUIRE(l_inverse_count(p, k, 1, {}, par) == ref);
  }
  const auto id4 = Permutation::identity(4);
  const BigInt lb = l_inverse_count_brute(id4, 2, 1, {}, {1});
  const BigInt mb = m_inverse_count_brute(id4, 2, {}, {1});
  const auto v = restricted_v_counts(id4, 2, {}, {1});
  for (auto par : kThreadCounts) {
    REQUIRE(l_inverse_count_brute(id4, 2, 1, {}, par) == lb);
    REQUIRE(m_inverse_count_brute(id4, 2, {}, par) == mb);
    REQUIRE(restricted_v_counts(id4, 2, {}, par) == v);
  }
}

TEST_CASE("Monte-Carlo results do not depend on the thread count") {
  TrialConfig cfg;
  cfg.n = 40;
  cfg.trials = 20000;
  cfg.seed = 99;
  const auto m1 = mc_moments(cfg, {1});
  const auto t1 = tail_fraction(cfg, {1});
  TrialConfig mcfg;
  mcfg.n = 5;
  mcfg.k = 3;
  mcfg.trials = 3000;
  const auto p = Permutation::identity(5);
  const auto e1 = mc_median_probability(p, 1, mcfg, {}, {1});
  for (auto par : kThreadCounts) {
    const auto m = mc_moments(cfg, par);
    REQUIRE(m.histogram == m1.histogram);
    REQUIRE(m.mean == m1.mean);
    REQUIRE(m.variance == m1.variance);
    REQUIRE(tail_fraction(cfg, par).hits == t1.hits);
    const auto e = mc_median_probability(p, 1, mcfg, {}, par);
    REQUIRE(e.hits == e1.hits);
    REQUIRE(e.max_excess == e1.max_excess);
  }
}
