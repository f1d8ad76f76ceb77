#include <random>

#include "doctest.h"

#include "bpmed/error.hpp"
#include "bpmed/permutation.hpp"
#include "bpmed/verify/oracles.hpp"

using namespace bpmed;

namespace {
AdjacencySet pairs(int n, std::initializer_list<std::pair<int, int>> ps) {
  std::vector<Adjacency> v;
  for (auto [a, b] : ps) v.emplace_back(a, b);
  return AdjacencySet(n, v);
}

const Permutation id6 = Permutation::identity(6);
const Permutation rx{4, 6, 5, 1, 3, 2};
const Permutation ry{4, 2, 6, 5, 1, 3};
}  // namespace

TEST_CASE("parse_permutation accepts spaces and commas") {
  CHECK(parse_permutation("1 2 3") == Permutation{1, 2, 3});
  CHECK(parse_permutation("4 6 5 1 3 2") == rx);
  CHECK(parse_permutation(" 4,6 ,5,1 3,2 ") == rx);
}

TEST_CASE("parse_permutation rejects bad input and names the token") {
  auto message = [](const char* text) {
    try {
      (void)parse_permutation(text);
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("1 1 2").find("duplicate token '1'") != std::string::npos);
  CHECK(message("1 4 2").find("token '4'") != std::string::npos);
  CHECK(message("1 x 2").find("'x'") != std::string::npos);
  CHECK(message("").find("empty") != std::string::npos);
}

TEST_CASE("permutation lists skip comments and blank lines") {
  auto ps = parse_permutation_list("# header\n1 2 3\n\n  # indented\n3,1,2\n");
  REQUIRE(ps.size() == 2);
  CHECK(ps[1] == Permutation{3, 1, 2});
  CHECK_THROWS_AS(parse_permutation_list("1 2\n2 2\n"), ValidationError);
}

TEST_CASE("adjacencies") {
  CHECK(adjacencies(Permutation{1, 2, 3}) == pairs(3, {{1, 2}, {2, 3}}));
  CHECK(adjacencies(Permutation{2, 1}) == pairs(2, {{1, 2}}));
  CHECK(adjacencies(Permutation{1}).empty());
}

TEST_CASE("common adjacencies of the six-element example") {
  const Permutation idx[] = {id6, rx};
  CHECK(common_adjacencies(idx) == pairs(6, {{2, 3}, {5, 6}}));
  const Permutation idy[] = {id6, ry};
  CHECK(common_adjacencies(idy) == pairs(6, {{5, 6}}));
  const Permutation xy[] = {rx, ry};
  CHECK(common_adjacencies(xy) == pairs(6, {{5, 6}, {1, 5}, {1, 3}}));
  const Permutation all[] = {id6, rx, ry};
  CHECK(common_adjacencies(all) == pairs(6, {{5, 6}}));
  const Permutation one[] = {rx};
  CHECK(common_adjacencies(one) == adjacencies(rx));
  const Permutation mixed[] = {rx, Permutation{1, 2}};
  CHECK_THROWS_AS(common_adjacencies(mixed), ValidationError);
}

TEST_CASE("breakpoint distance") {
  CHECK(bp_distance(Permutation::identity(9), Permutation{2, 7, 5, 6, 8, 3, 9, 4, 1}) == 7);
  CHECK(bp_distance(id6, rx) == 3);
  CHECK(bp_distance(rx, reverse_of(rx)) == 0);
  CHECK(bp_distance(Permutation{1}, Permutation{1}) == 0);
  CHECK_THROWS_AS(bp_distance(id6, Permutation{1, 2, 3}), ValidationError);
}

TEST_CASE("total distance") {
  const Permutation xs[] = {id6, rx, ry};
  CHECK(total_distance(id6, xs) == 7);
  CHECK(total_distance(rx, xs) == 5);
  CHECK(total_distance(ry, xs) == 6);
  const Permutation self[] = {rx};
  CHECK(total_distance(rx, self) == 0);
}

TEST_CASE("reversal and classes") {
  CHECK(reverse_of(Permutation{1, 2, 3}) == Permutation{3, 2, 1});
  CHECK(canonical_class(Permutation{3, 2, 1}).representative() == Permutation{1, 2, 3});
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    auto p = oracle::random_permutation(1 + t % 8, rng);
    CHECK(canonical_class(p) == canonical_class(reverse_of(p)));
    CHECK(canonical_class(p).representative() <= reverse_of(canonical_class(p).representative()));
  }
}

TEST_CASE("enumeration sizes, order and guard") {
  CHECK(enumerate_permutations(3).size() == 6);
  CHECK(enumerate_classes(3).size() == 3);
  CHECK(enumerate_permutations(1).size() == 1);
  CHECK(enumerate_classes(1).size() == 1);
  auto s4 = enumerate_permutations(4);
  CHECK(std::is_sorted(s4.begin(), s4.end()));
  CHECK(std::adjacent_find(s4.begin(), s4.end()) == s4.end());
  for (std::uint64_t r = 0; r < s4.size(); ++r) CHECK(unrank_permutation(4, r) == s4[r]);
  CHECK_THROWS_AS(enumerate_permutations(10), SizeLimitError);
  Limits wide;
  wide.max_n = 10;
  CHECK_NOTHROW(PermutationStream(10, wide));

  // A sub-range stream matches the corresponding slice of the full stream.
  PermutationStream part(4, 5, 7);
  Permutation p;
  std::size_t i = 5;
  while (part.next(p)) CHECK(p == s4[i++]);
  CHECK(i == 12);
}

TEST_CASE("max-distance sets") {
  const Permutation shares[] = {Permutation{1, 2, 3}, Permutation{2, 1, 3}};
  CHECK_FALSE(is_max_distance_set(shares));
  const Permutation single[] = {rx};
  CHECK(is_max_distance_set(single));
  const Permutation triple[] = {id6, rx, ry};
  CHECK_FALSE(is_max_distance_set(triple));
  const Permutation far[] = {Permutation{1, 2, 3, 4}, Permutation{2, 4, 1, 3}};
  CHECK(is_max_distance_set(far));
}

TEST_CASE("pseudometric axioms hold exhaustively for n <= 5") {
  for (int n = 1; n <= 5; ++n) {
    const auto perms = enumerate_permutations(n);
    for (const auto& x : perms)
      for (const auto& y : perms) {
        const int dxy = bp_distance(x, y);
        REQUIRE(dxy == bp_distance(y, x));
        REQUIRE((dxy == 0) == (y == x || y == reverse_of(x)));
        REQUIRE(dxy == oracle::adjacency_pairs(x).size() -
                           [&] {
                             auto a = oracle::adjacency_pairs(x), b = oracle::adjacency_pairs(y);
                             std::vector<std::pair<int, int>> c;
                             std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c));
                             return c.size();
                           }());
        if (n <= 4)
          for (const auto& z : perms) REQUIRE(bp_distance(x, z) <= dxy + bp_distance(y, z));
      }
  }
  // Triangle inequality at n = 5 on a deterministic sample.
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20000; ++t) {
    auto x = oracle::random_permutation(5, rng), y = oracle::random_permutation(5, rng),
         z = oracle::random_permutation(5, rng);
    REQUIRE(bp_distance(x, z) <= bp_distance(x, y) + bp_distance(y, z));
  }
}

TEST_CASE("left invariance under composition") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 2000; ++t) {
    const int n = 2 + t % 6;
    auto x = oracle::random_permutation(n, rng), y = oracle::random_permutation(n, rng),
         z = oracle::random_permutation(n, rng);
    REQUIRE(bp_distance(x, y) == bp_distance(compose(z, x), compose(z, y)));
  }
  CHECK(compose(Permutation{2, 3, 1}, Permutation{1, 2, 3}) == Permutation{2, 3, 1});
  CHECK(compose(Permutation{2, 3, 1}, Permutation{3, 1, 2}) == Permutation{1, 2, 3});
}

TEST_CASE("adjacency counts and monotone intersection") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + t % 9;
    std::vector<Permutation> ps;
    std::size_t prev = static_cast<std::size_t>(n);
    for (int j = 0; j < 5; ++j) {
      ps.push_back(oracle::random_permutation(n, rng));
      REQUIRE(adjacencies(ps.back()).size() == static_cast<std::size_t>(n - 1));
      const auto c = common_adjacencies(ps).size();
      REQUIRE(c <= prev);
      prev = c;
    }
  }
}
