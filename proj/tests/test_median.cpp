#include <algorithm>
#include <random>

#include "doctest.h"

#include "bpmed/error.hpp"
#include "bpmed/inverse.hpp"
#include "bpmed/median.hpp"
#include "bpmed/serialize.hpp"
#include "bpmed/verify/oracles.hpp"

using namespace bpmed;

namespace {
const Permutation id9 = Permutation::identity(9);
const Permutation px{2, 7, 5, 6, 8, 3, 9, 4, 1};
const Permutation ppi{6, 8, 9, 3, 4, 1, 2, 7, 5};

std::vector<Permutation> sorted(std::vector<Permutation> v) {
  std::sort(v.begin(), v.end());
  return v;
}
}  // namespace

TEST_CASE("medians of a single permutation") {
  const Permutation p{2, 4, 1, 3};
  const Permutation xs[] = {p};
  const auto r = medians_brute(xs);
  CHECK(r.mu == 0);
  CHECK(r.medians == sorted({p, reverse_of(p)}));
  CHECK(r.excess == std::vector<int>{0, 0});
  CHECK(is_median(p, xs));
  CHECK(coverage_criterion(p, xs));
}

TEST_CASE("medians of 123 and 132") {
  const Permutation xs[] = {Permutation{1, 2, 3}, Permutation{1, 3, 2}};
  const auto r = medians_brute(xs);
  CHECK(r.mu == 1);
  CHECK(r.medians == sorted({Permutation{1, 2, 3}, Permutation{3, 2, 1}, Permutation{1, 3, 2}, Permutation{2, 3, 1}}));
  int mu = -1;
  CHECK(oracle::median_set({xs[0], xs[1]}, &mu) == r.medians);
  CHECK(mu == 1);
  CHECK(median_value(xs) == 1);
}

TEST_CASE("n = 9 pair") {
  CHECK(bp_distance(id9, px) == 7);
  CHECK(bp_distance(id9, ppi) == 5);
  CHECK(bp_distance(ppi, px) == 3);
  const auto cert = is_geodesic(ppi, id9, px);
  CHECK_FALSE(cert.geodesic);
  CHECK_FALSE(cert.distance_identity);
  CHECK(cert.missing_common.to_string() == "{5,6}");
  CHECK(cert.foreign.empty());
  const Permutation xs[] = {id9, px};
  CHECK(coverage_criterion(ppi, xs));
  CHECK(median_excess(ppi, xs) == 0);
  CHECK(l_membership(ppi, xs, 0));
  CHECK_FALSE(is_median(ppi, xs));
  CHECK(median_value(xs) == 7);
}

TEST_CASE("geodesic basics") {
  const Permutation x{3, 1, 4, 5, 2};
  const Permutation y{5, 4, 1, 2, 3};
  CHECK(is_geodesic(x, x, y).geodesic);
  CHECK(is_geodesic(reverse_of(x), x, y).geodesic);
  CHECK(is_geodesic(y, x, y).geodesic);
  CHECK_THROWS_AS(is_geodesic(x, Permutation{1, 2}, y), ValidationError);
}

TEST_CASE("medians agree with the oracle scan") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 5; ++n)
    for (int k = 1; k <= 4; ++k)
      for (int t = 0; t < 15; ++t) {
        std::vector<Permutation> xs;
        for (int i = 0; i < k; ++i) xs.push_back(oracle::random_permutation(n, rng));
        int mu = -1;
        const auto expect = oracle::median_set(xs, &mu);
        const auto r = medians_brute(xs);
        REQUIRE(r.mu == mu);
        REQUIRE(r.medians == expect);
        REQUIRE(r.excess.size() == r.medians.size());
        for (std::size_t i = 0; i < r.medians.size(); ++i) {
          REQUIRE(r.excess[i] == median_excess(r.medians[i], xs));
          REQUIRE(is_median(r.medians[i], xs));
        }
      }
}

TEST_CASE("medians of a pair are its geodesic points, n <= 5") {
  for (int n = 1; n <= 5; ++n) {
    const auto all = enumerate_permutations(n);
    for (const auto& x : all)
      for (const auto& y : all) {
        const Permutation xs[] = {x, y};
        std::vector<Permutation> geo;
        for (const auto& z : all)
          if (is_geodesic(z, x, y).geodesic) geo.push_back(z);
        REQUIRE(medians_brute(xs).medians == geo);
      }
  }
}

TEST_CASE("median translation") {
  std::mt19937_64 rng(5);
  for (int n = 2; n <= 5; ++n)
    for (int t = 0; t < 30; ++t) {
      const int k = 1 + t % 4;
      std::vector<Permutation> xs, zxs;
      const auto z = oracle::random_permutation(n, rng);
      for (int i = 0; i < k; ++i) {
        xs.push_back(oracle::random_permutation(n, rng));
        zxs.push_back(compose(z, xs.back()));
      }
      const auto r = medians_brute(xs);
      const auto zr = medians_brute(zxs);
      REQUIRE(r.mu == zr.mu);
      std::vector<Permutation> moved;
      for (const auto& m : r.medians) moved.push_back(compose(z, m));
      REQUIRE(sorted(moved) == zr.medians);
    }
}

TEST_CASE("median total distance is at most that of any input") {
  std::mt19937_64 rng(8);
  for (int n = 2; n <= 5; ++n)
    for (int t = 0; t < 40; ++t) {
      std::vector<Permutation> xs;
      for (int i = 0; i < 1 + t % 5; ++i) xs.push_back(oracle::random_permutation(n, rng));
      int best = total_distance(xs[0], xs);
      for (const auto& x : xs) best = std::min(best, total_distance(x, xs));
      for (const auto& m : medians_brute(xs).medians) REQUIRE(total_distance(m, xs) <= best);
    }
}

TEST_CASE("coverage criterion on max-distance sets") {
  const auto pairs4 = oracle::max_distance_sets(4, 2, 50);
  CHECK(pairs4.size() >= 5);
  CHECK(oracle::max_distance_sets(4, 3, 5).empty());
  // Three pairwise-disjoint adjacency sets need 3(n-1) <= n(n-1)/2, so n >= 6.
  CHECK(oracle::max_distance_sets(5, 3, 5).empty());
  const auto pairs5 = oracle::max_distance_sets(5, 2, 40);
  CHECK(pairs5.size() >= 5);
  const auto triples6 = oracle::max_distance_sets(6, 3, 10);
  CHECK(triples6.size() >= 5);
  for (const auto* sets : {&pairs4, &pairs5, &triples6})
    for (const auto& xs : *sets) {
      REQUIRE(is_max_distance_set(xs));
      const auto check = extreme_median_check(xs);
      REQUIRE(check.equal);
      REQUIRE(check.covered == check.medians);
    }
  const Permutation bad[] = {Permutation{1, 2, 3, 4}, Permutation{1, 2, 4, 3}};
  CHECK_THROWS_AS(extreme_median_check(bad), ValidationError);
}

TEST_CASE("median guard") {
  const Permutation xs[] = {Permutation::identity(10)};
  CHECK_THROWS_AS(medians_brute(xs), SizeLimitError);
  Limits wide;
  wide.max_n = 10;
  CHECK_THROWS_AS(medians_brute(xs, Limits{.max_n = 3}), SizeLimitError);
  const Permutation mixed[] = {Permutation{1, 2}, Permutation{1, 2, 3}};
  CHECK_THROWS_AS(medians_brute(mixed), ValidationError);
}

TEST_CASE("median report json") {
  const Permutation xs[] = {Permutation{1, 2, 3}, Permutation{1, 3, 2}};
  const auto j = to_json(medians_brute(xs));
  CHECK(j.dump() == R"({"excess":[0,0,0,0],"medians":["1 2 3","1 3 2","2 3 1","3 2 1"],"mu":1})");
}
