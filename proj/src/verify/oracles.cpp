#include "bpmed/verify/oracles.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

namespace bpmed::oracle {

std::vector<std::pair<int, int>> adjacency_pairs(const Permutation& p) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i + 1 < p.size(); ++i) out.emplace_back(std::min(p[i], p[i + 1]), std::max(p[i], p[i + 1]));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<Permutation> all_perms(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  std::vector<Permutation> out;
  do out.emplace_back(v);
  while (std::next_permutation(v.begin(), v.end()));
  return out;
}

int distance(const Permutation& x, const Permutation& y) {
  auto ax = adjacency_pairs(x), ay = adjacency_pairs(y);
  std::vector<std::pair<int, int>> both;
  std::set_intersection(ax.begin(), ax.end(), ay.begin(), ay.end(), std::back_inserter(both));
  return x.size() - 1 - static_cast<int>(both.size());
}

}  // namespace

std::vector<std::uint64_t> overlap_histogram(const Permutation& p) {
  const int n = p.size();
  std::vector<std::uint64_t> counts(std::size_t{1} << std::max(0, n - 1), 0);
  for (const auto& x : all_perms(n)) {
    const auto ax = adjacency_pairs(x);
    std::uint64_t mask = 0;
    for (int i = 0; i + 1 < n; ++i) {
      std::pair<int, int> a{std::min(p[i], p[i + 1]), std::max(p[i], p[i + 1])};
      if (std::binary_search(ax.begin(), ax.end(), a)) mask |= std::uint64_t{1} << i;
    }
    ++counts[mask];
  }
  return counts;
}

std::vector<Permutation> median_set(const std::vector<Permutation>& xs, int* mu) {
  const int n = xs.front().size();
  int best = 1 << 30;
  std::vector<Permutation> out;
  for (const auto& p : all_perms(n)) {
    int total = 0;
    for (const auto& x : xs) total += distance(p, x);
    if (total < best) {
      best = total;
      out.clear();
    }
    if (total == best) out.push_back(p);
  }
  if (mu) *mu = best;
  return out;
}

std::map<std::uint32_t, std::vector<std::pair<int, int>>> exact_owner_sets(const std::vector<Permutation>& xs) {
  std::map<std::pair<int, int>, std::uint32_t> owners;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (const auto& a : adjacency_pairs(xs[i])) owners[a] |= std::uint32_t{1} << i;
  std::map<std::uint32_t, std::vector<std::pair<int, int>>> out;
  for (std::uint32_t u = 1; u < (std::uint32_t{1} << xs.size()); ++u)
    if (std::popcount(u) >= 2) out[u];
  for (const auto& [a, u] : owners)
    if (std::popcount(u) >= 2) out[u].push_back(a);
  return out;
}

ExactMoments exhaustive_moments(int n) {
  BigInt s1 = 0, s2 = 0, count = 0;
  for (const auto& x : all_perms(n)) {
    int c = 0;
    for (int i = 0; i + 1 < n; ++i) c += std::abs(x[i] - x[i + 1]) == 1;
    s1 += c;
    s2 += c * c;
    count += 1;
  }
  const BigRational mean(s1, count);
  return {mean, BigRational(s2, count) - mean * mean};
}

std::map<std::string, std::uint64_t> type_histogram(const Permutation& p, const SegmentSet& base) {
  const int slots = p.size() - 1;
  std::uint64_t base_mask = 0;
  for (int i = 0; i < slots; ++i)
    if (base.adjacencies().contains(Adjacency(p[i], p[i + 1]))) base_mask |= std::uint64_t{1} << i;
  std::map<std::string, std::uint64_t> hist;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << slots); ++m) {
    if ((m & base_mask) != base_mask) continue;
    // Walk the slots left to right, cutting gaps at base slots.
    std::string key;
    int taken = 0, runs = 0, lt = 0, rt = 0;
    bool prev_taken = false, gap_open = true, left_is_base = false;
    int gap_len = 0, last_in_gap_taken = 0;
    auto close_gap = [&](bool right_is_base) {
      if (gap_len > 0) rt = right_is_base && last_in_gap_taken;
      if (!key.empty()) key += ' ';
      key += '(' + std::to_string(taken) + ',' + std::to_string(runs) + ',' + std::to_string(lt) + ',' +
             std::to_string(rt) + ')';
      taken = runs = lt = rt = gap_len = last_in_gap_taken = 0;
      prev_taken = false;
    };
    for (int i = 0; i < slots; ++i) {
      const bool is_base = base_mask >> i & 1;
      if (is_base) {
        if (gap_open) close_gap(true);
        gap_open = false;
        left_is_base = true;
        continue;
      }
      if (!gap_open) gap_open = true;
      const bool t = m >> i & 1;
      if (gap_len == 0) lt = left_is_base && t;
      ++gap_len;
      taken += t;
      if (t && !prev_taken) ++runs;
      prev_taken = t;
      last_in_gap_taken = t;
    }
    close_gap(false);
    ++hist[key];
  }
  return hist;
}

std::vector<std::vector<Permutation>> max_distance_sets(int n, int size, std::size_t limit) {
  std::vector<Permutation> reps;
  for (const auto& p : all_perms(n))
    if (p < reverse_of(p) || n == 1) reps.push_back(p);
  std::vector<std::vector<Permutation>> out;
  std::vector<std::size_t> pick;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (out.size() >= limit) return;
    if (static_cast<int>(pick.size()) == size) {
      std::vector<Permutation> xs;
      for (auto i : pick) xs.push_back(reps[i]);
      out.push_back(xs);
      return;
    }
    for (std::size_t i = from; i < reps.size() && out.size() < limit; ++i) {
      bool ok = true;
      for (auto j : pick) ok = ok && distance(reps[i], reps[j]) == n - 1;
      if (!ok) continue;
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

Permutation random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation(std::move(v));
}

SegmentSet random_sub_segment_set(const Permutation& p, std::mt19937_64& rng) {
  std::vector<Adjacency> pairs;
  for (int i = 0; i + 1 < p.size(); ++i)
    if (rng() & 1) pairs.emplace_back(p[i], p[i + 1]);
  return segment_set_from_adjacencies(AdjacencySet(p.size(), std::move(pairs)));
}

}  // namespace bpmed::oracle
