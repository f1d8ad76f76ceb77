#include "bpmed/median.hpp"

#include <omp.h>

#include <algorithm>
#include <climits>

#include "bpmed/error.hpp"

namespace bpmed {

namespace {

struct ScanState {
  int best = INT_MAX;
  std::vector<Permutation> argmin;  // class representatives
};

void check_inputs(std::span<const Permutation> xs, const Limits& limits, const char* what) {
  if (xs.empty()) throw ValidationError(std::string(what) + ": empty input set");
  require_same_length(xs, what);
  if (xs.front().size() > limits.max_n)
    throw SizeLimitError(std::string(what) + ": n=" + std::to_string(xs.front().size()) + " exceeds limit " +
                         std::to_string(limits.max_n));
}

// Total distance from `values` to X is k(n-1) minus shared adjacencies.
int shared_total(std::span<const int> values, const std::vector<AdjacencyIndex>& idx) {
  int s = 0;
  for (const auto& ix : idx) s += ix.shared_with(values);
  return s;
}

void scan_range(int n, std::uint64_t first, std::uint64_t count, const std::vector<AdjacencyIndex>& idx,
                int base_total, const Limits& limits, ScanState& st, bool collect) {
  PermutationStream s(n, first, count, limits);
  Permutation p;
  while (s.next(p)) {
    if (!is_class_representative(p)) continue;
    const int total = base_total - shared_total(p.values(), idx);
    if (total < st.best) {
      st.best = total;
      st.argmin.clear();
    }
    if (collect && total == st.best) st.argmin.push_back(p);
  }
}

std::vector<AdjacencyIndex> build_index(std::span<const Permutation> xs) {
  std::vector<AdjacencyIndex> idx;
  idx.reserve(xs.size());
  for (const auto& x : xs) idx.emplace_back(x);
  return idx;
}

MedianReport finish(std::span<const Permutation> xs, ScanState st) {
  MedianReport r;
  r.inputs.assign(xs.begin(), xs.end());
  r.mu = st.best;
  for (const auto& rep : st.argmin) {
    r.medians.push_back(rep);
    if (rep.size() > 1) r.medians.push_back(reverse_of(rep));
  }
  std::sort(r.medians.begin(), r.medians.end());
  r.medians.erase(std::unique(r.medians.begin(), r.medians.end()), r.medians.end());
  const AdjacencySet uni = united_adjacencies(xs);
  for (const auto& m : r.medians) r.excess.push_back(static_cast<int>(adjacencies(m).minus(uni).size()));
  return r;
}

}  // namespace

MedianReport medians_brute_serial(std::span<const Permutation> xs, const Limits& limits) {
  check_inputs(xs, limits, "medians_brute");
  const int n = xs.front().size();
  const auto idx = build_index(xs);
  const int base_total = static_cast<int>(xs.size()) * (n - 1);
  ScanState st;
  scan_range(n, 0, factorial_u64(n), idx, base_total, limits, st, true);
  return finish(xs, std::move(st));
}

MedianReport medians_brute(std::span<const Permutation> xs, const Limits& limits, Parallelism par) {
  check_inputs(xs, limits, "medians_brute");
  const int n = xs.front().size();
  const auto idx = build_index(xs);
  const int base_total = static_cast<int>(xs.size()) * (n - 1);
  const std::uint64_t total = factorial_u64(n);
  const std::uint64_t chunk = std::max<std::uint64_t>(total / 128, 720);
  const auto chunks = static_cast<long long>((total + chunk - 1) / chunk);
  std::vector<ScanState> parts(static_cast<std::size_t>(chunks));
  const int threads = par.threads > 0 ? par.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long long c = 0; c < chunks; ++c)
    scan_range(n, static_cast<std::uint64_t>(c) * chunk, chunk, idx, base_total, limits,
               parts[static_cast<std::size_t>(c)], true);
  // Chunks are merged in rank order so the argmin list is already lexicographic.
  ScanState st;
  for (auto& part : parts) {
    if (part.best < st.best) {
      st.best = part.best;
      st.argmin = std::move(part.argmin);
    } else if (part.best == st.best) {
      st.argmin.insert(st.argmin.end(), part.argmin.begin(), part.argmin.end());
    }
  }
  return finish(xs, std::move(st));
}

int median_value(std::span<const Permutation> xs, const Limits& limits) {
  check_inputs(xs, limits, "median_value");
  const int n = xs.front().size();
  const auto idx = build_index(xs);
  ScanState st;
  scan_range(n, 0, factorial_u64(n), idx, static_cast<int>(xs.size()) * (n - 1), limits, st, false);
  return st.best;
}

bool is_median(const Permutation& p, std::span<const Permutation> xs, const Limits& limits) {
  check_inputs(xs, limits, "is_median");
  if (p.size() != xs.front().size()) throw ValidationError("is_median: mixed lengths");
  return total_distance(p, xs) == median_value(xs, limits);
}

GeodesicCertificate is_geodesic(const Permutation& z, const Permutation& x, const Permutation& y) {
  const Permutation trio[] = {z, x, y};
  require_same_length(trio, "is_geodesic");
  GeodesicCertificate c;
  c.distance_identity = bp_distance(x, y) == bp_distance(x, z) + bp_distance(z, y);
  const AdjacencySet az = adjacencies(z), ax = adjacencies(x), ay = adjacencies(y);
  c.missing_common = ax.intersect(ay).minus(az);
  c.foreign = az.minus(ax.unite(ay));
  c.geodesic = c.missing_common.empty() && c.foreign.empty();
  if (c.geodesic != c.distance_identity)
    throw VerificationError("geodesic characterizations disagree for z=" + z.to_string() + " x=" + x.to_string() +
                            " y=" + y.to_string());
  return c;
}

bool coverage_criterion(const Permutation& p, std::span<const Permutation> xs) {
  require_same_length(xs, "coverage_criterion");
  return adjacencies(p).is_subset_of(united_adjacencies(xs));
}

ExtremeMedianCheck extreme_median_check(std::span<const Permutation> xs, const Limits& limits, Parallelism par) {
  if (!is_max_distance_set(xs))
    throw ValidationError("extreme_median_check: input is not a pairwise maximum-distance set");
  ExtremeMedianCheck r;
  r.medians = medians_brute(xs, limits, par).medians;
  const int n = xs.front().size();
  const AdjacencyIndex uni(united_adjacencies(xs));
  PermutationStream s(n, limits);
  Permutation p;
  while (s.next(p))
    if (uni.shared_with(p.values()) == n - 1) r.covered.push_back(p);
  r.equal = r.covered == r.medians;
  return r;
}

}  // namespace bpmed
