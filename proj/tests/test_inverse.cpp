#include <random>

#include "doctest.h"

#include "bpmed/error.hpp"
#include "bpmed/inverse.hpp"
#include "bpmed/median.hpp"
#include "bpmed/serialize.hpp"
#include "bpmed/verify/oracles.hpp"

using namespace bpmed;

namespace {
const Permutation id3 = Permutation::identity(3);
const Permutation id6 = Permutation::identity(6);
const Permutation rx{4, 6, 5, 1, 3, 2};
const Permutation ry{4, 2, 6, 5, 1, 3};

LabelMask all_labels(int k) { return (LabelMask{1} << k) - 1; }

int common_size(const std::vector<Permutation>& xs, LabelMask u) {
  std::vector<Permutation> sub;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (u >> i & 1) sub.push_back(xs[i]);
  return static_cast<int>(common_adjacencies(sub).size());
}

void check_b_table(const std::vector<Permutation>& xs) {
  const auto t = b_decomposition(xs);
  const int k = static_cast<int>(xs.size());
  const auto exact = oracle::exact_owner_sets(xs);
  for (LabelMask u = 1; u <= all_labels(k); ++u) {
    if (std::popcount(u) < 2) continue;
    int up = 0;
    for (LabelMask v = u; v <= all_labels(k); v = (v + 1) | u) {
      up += static_cast<int>(t.b(v).size());
      if (v == all_labels(k)) break;
    }
    REQUIRE(up == common_size(xs, u));
    const auto it = exact.find(u);
    REQUIRE(static_cast<int>(t.b(u).size()) == (it == exact.end() ? 0 : static_cast<int>(it->second.size())));
  }
  // Disjointness follows from the sizes above; check it directly too.
  for (const auto& [u, bu] : t.entries())
    for (const auto& [v, bv] : t.entries())
      if (u < v) REQUIRE(bu.intersect(bv).empty());
}

std::vector<Permutation> random_tuple(int n, int k, std::mt19937_64& rng) {
  std::vector<Permutation> xs;
  for (int i = 0; i < k; ++i) xs.push_back(oracle::random_permutation(n, rng));
  return xs;
}
}  // namespace

TEST_CASE("B decomposition of the six-element triple") {
  const Permutation xs[] = {id6, rx, ry};
  const auto t = b_decomposition(xs);
  CHECK(t.b(0b011).to_string() == "{2,3}");
  CHECK(t.b(0b101).empty());
  CHECK(t.b(0b110).to_string() == "{1,3} {1,5}");
  CHECK(t.b(0b111).to_string() == "{5,6}");
  CHECK(t.total_distances() == std::vector<int>{7, 5, 6});
  CHECK(t.anchor() == 1);
  CHECK(t.order() == std::vector<int>{0, 2, 1});
  CHECK(bound_O(t) == 0);
  CHECK(epsilon_bar(id6, t, 0b110) == 0);
  CHECK(epsilon_bar(id6, t, 0b111) == 1);
  CHECK_THROWS_AS(t.b(0b001), ValidationError);
  CHECK_THROWS_AS(t.b(0b1000), ValidationError);
  CHECK_THROWS_AS(epsilon_bar(id6, t, 0b100), ValidationError);
  const Permutation one[] = {id6};
  CHECK_THROWS_AS(b_decomposition(one), ValidationError);
}

TEST_CASE("B decomposition basics") {
  const Permutation p2[] = {Permutation{1, 2, 3, 4}, Permutation{2, 1, 3, 4}};
  CHECK(b_decomposition(p2).b(0b11) == common_adjacencies(p2));
  for (const auto& xs : oracle::max_distance_sets(6, 3, 3)) {
    const auto t = b_decomposition(xs);
    for (const auto& [u, bu] : t.entries()) REQUIRE(bu.empty());
  }
  std::mt19937_64 rng(3);
  for (int n = 2; n <= 7; ++n)
    for (int k = 2; k <= 5; ++k)
      for (int r = 0; r < 10; ++r) check_b_table(random_tuple(n, k, rng));
}

TEST_CASE("epsilon bar is bounded by the block size") {
  std::mt19937_64 rng(4);
  for (int r = 0; r < 100; ++r) {
    const auto xs = random_tuple(6, 3 + r % 3, rng);
    const auto t = b_decomposition(xs);
    const auto p = oracle::random_permutation(6, rng);
    for (const auto& [u, bu] : t.entries()) REQUIRE(epsilon_bar(p, t, u) <= static_cast<int>(bu.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) REQUIRE(median_excess(xs[i], xs) == 0);
  }
}

TEST_CASE("L membership") {
  std::mt19937_64 rng(6);
  for (int r = 0; r < 50; ++r) {
    const auto xs = random_tuple(5, 2, rng);
    const auto p = oracle::random_permutation(5, rng);
    CHECK(l_membership(xs[0], xs, 0));
    CHECK(l_membership(p, xs, 4));
    CHECK(l_membership(p, xs, median_excess(p, xs)) );
  }
}

TEST_CASE("excess bounds hold for every n = 4 triple of classes") {
  const auto classes = enumerate_classes(4);
  std::vector<Permutation> reps;
  for (const auto& c : classes) reps.push_back(c.representative());
  int sets = 0;
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = a + 1; b < reps.size(); ++b)
      for (std::size_t c = b + 1; c < reps.size(); ++c) {
        const std::vector<Permutation> xs{reps[a], reps[b], reps[c]};
        const auto t = b_decomposition(xs);
        const int o = bound_O(t);
        for (const auto& m : medians_brute(xs).medians) {
          const int tight = bound_tight(m, t);
          REQUIRE(median_excess(m, xs) <= tight);
          REQUIRE(tight <= o);
        }
        ++sets;
      }
  CHECK(sets == 220);
}

TEST_CASE("pair bound on the excess bound") {
  std::mt19937_64 rng(9);
  for (int r = 0; r < 300; ++r) {
    const int k = 2 + r % 4;
    const auto xs = random_tuple(6, k, rng);
    const auto t = b_decomposition(xs);
    int pair_sum = 0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        if (i != t.anchor() && j != t.anchor()) pair_sum += common_adjacency_count(xs[i], xs[j]);
    REQUIRE(bound_O(t) <= pair_sum);
  }
}

TEST_CASE("cover tuples") {
  CHECK(count_cover_tuples(id3, 2, 0) == 9);
  CHECK(enumerate_cover_tuples(id3, 2, 0).size() == 9);
  const auto single = enumerate_cover_tuples(Permutation::identity(5), 1, 0);
  REQUIRE(single.size() == 1);
  CHECK(single[0][0].adjacencies() == adjacencies(Permutation::identity(5)));
  CHECK(count_cover_tuples(Permutation::identity(4), 2, 3) == 64);
  CHECK(count_cover_tuples(Permutation::identity(4), 3, 7) == 512);
  // Each uncovered adjacency pattern: k=2, n=4, c=1 gives 3^3 + 3*3^2.
  CHECK(count_cover_tuples(Permutation::identity(4), 2, 1) == 27 + 27);
  CHECK_THROWS_AS(count_cover_tuples(Permutation::identity(9), 5, 0), SizeLimitError);
  CHECK_THROWS_AS(count_cover_tuples(id3, 0, 0), ValidationError);
  CHECK_THROWS_AS(count_cover_tuples(id3, 2, -1), ValidationError);
}

TEST_CASE("inverse counts: fixed values") {
  CHECK(l_inverse_count(id3, 2, 0) == 28);
  CHECK(l_inverse_count_brute(id3, 2, 0) == 28);
  CHECK(l_inverse_probability(id3, 2, 0).to_string() == "7/9");
  CHECK(l_inverse_count(Permutation::identity(5), 1, 0) == 2);
  CHECK(l_inverse_count(id3, 1, 2) == 6);
  CHECK(m_inverse_count_brute(Permutation{2, 4, 1, 3}, 1) == 2);
  for (int n = 2; n <= 14; ++n) CHECK(l_inverse_count_fast(Permutation::identity(n), 1, 0) == 2);
  CHECK(l_inverse_count_fast(Permutation::identity(12), 3, 11) == pow(factorial(12), 3));
}

TEST_CASE("inverse counts agree with the S_n^k scan") {
  for (int n = 1; n <= 4; ++n)
    for (const auto& c : enumerate_classes(n))
      for (int k = 1; k <= 2; ++k)
        for (int slack = 0; slack <= 2; ++slack) {
          const auto& p = c.representative();
          const BigInt ref = l_inverse_count(p, k, slack);
          REQUIRE(ref == l_inverse_count_brute(p, k, slack));
          REQUIRE(ref == l_inverse_count_serial(p, k, slack));
          REQUIRE(ref == l_inverse_count_fast(p, k, slack));
        }
  const auto id5 = Permutation::identity(5);
  for (int slack = 0; slack <= 1; ++slack) CHECK(l_inverse_count(id5, 2, slack) == l_inverse_count_brute(id5, 2, slack));
  CHECK(l_inverse_count(Permutation::identity(4), 3, 0) == l_inverse_count_brute(Permutation::identity(4), 3, 0));
}

TEST_CASE("inverse counts are monotone in the slack and bounded by the tuple count") {
  const auto p = Permutation{3, 1, 4, 2, 6, 5};
  for (int k = 1; k <= 3; ++k) {
    BigInt prev = 0;
    for (int slack = 0; slack <= 6; ++slack) {
      const BigInt cur = l_inverse_count_fast(p, k, slack);
      REQUIRE(prev <= cur);
      prev = cur;
      const auto pr = l_inverse_probability(p, k, slack);
      REQUIRE(pr.num() <= pr.den());
    }
    CHECK(prev == pow(factorial(6), static_cast<unsigned>(k)));
  }
}

TEST_CASE("label independence") {
  std::mt19937_64 rng(12);
  const BigInt l0 = l_inverse_count(Permutation::identity(4), 2, 1);
  const BigInt m0 = m_inverse_count_brute(Permutation::identity(4), 2);
  const BigInt f0 = l_inverse_count_fast(Permutation::identity(7), 3, 2);
  for (int r = 0; r < 10; ++r) {
    const auto p = oracle::random_permutation(4, rng);
    REQUIRE(l_inverse_count(p, 2, 1) == l0);
    REQUIRE(m_inverse_count_brute(p, 2) == m0);
    REQUIRE(l_inverse_count_fast(oracle::random_permutation(7, rng), 3, 2) == f0);
  }
}

TEST_CASE("medians sit inside L_0 on max-distance tuples") {
  for (int n = 3; n <= 4; ++n) {
    const auto p = Permutation::identity(n);
    const auto [m, l] = restricted_v_counts(p, 2);
    CHECK(m == l);
    // At n = 3 every two permutations share an adjacency, so V is empty.
    CHECK((m > 0) == (n == 4));
  }
  const auto [m1, l1] = restricted_v_counts(Permutation{2, 1, 3}, 1);
  CHECK(m1 == 2);
  CHECK(l1 == 2);
  CHECK(m_inverse_count_brute(id3, 2) <= l_inverse_count(id3, 2, 0));
}

TEST_CASE("median inverse brute guard") {
  Limits tight;
  tight.max_tuple_work = 1000;
  CHECK_THROWS_AS(m_inverse_count_brute(Permutation::identity(5), 2, tight), SizeLimitError);
}

TEST_CASE("inverse report json") {
  const auto j = inverse_report_json(28, ExactProbability(28, 36), 3, 2, 0);
  CHECK(j.dump() ==
        R"({"count":"28","params":{"c":0,"k":2,"n":3},"probability":{"decimal":"0.777777777777778","den":"9","num":"7"}})");
}
