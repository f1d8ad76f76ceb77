#include "bpmed/inverse.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>

#include "bpmed/error.hpp"

namespace bpmed {

const AdjacencySet& BTable::b(LabelMask u) const {
  auto it = b_.find(u);
  if (it == b_.end())
    throw ValidationError("B table has no entry for label set mask " + std::to_string(u) +
                          " (needs >= 2 of " + std::to_string(arity()) + " labels)");
  return it->second;
}

BTable b_decomposition(std::span<const Permutation> xs) {
  const int k = static_cast<int>(xs.size());
  if (k < 2) throw ValidationError("b_decomposition needs at least two permutations");
  if (k > 16) throw SizeLimitError("b_decomposition supports at most 16 permutations");
  require_same_length(xs, "b_decomposition");

  BTable t;
  t.inputs_.assign(xs.begin(), xs.end());
  for (const auto& x : xs) t.totals_.push_back(total_distance(x, xs));
  const int anchor = static_cast<int>(std::min_element(t.totals_.begin(), t.totals_.end()) - t.totals_.begin());
  for (int i = 0; i < k; ++i)
    if (i != anchor) t.order_.push_back(i);
  t.order_.push_back(anchor);

  std::vector<AdjacencySet> adj;
  for (const auto& x : xs) adj.push_back(adjacencies(x));
  std::vector<LabelMask> masks;
  for (LabelMask u = 1; u < (LabelMask{1} << k); ++u)
    if (std::popcount(u) >= 2) masks.push_back(u);
  std::stable_sort(masks.begin(), masks.end(),
                   [](LabelMask a, LabelMask b) { return std::popcount(a) > std::popcount(b); });
  for (LabelMask u : masks) {
    AdjacencySet common;
    bool first = true;
    for (int i = 0; i < k; ++i)
      if (u >> i & 1) {
        common = first ? adj[static_cast<std::size_t>(i)] : common.intersect(adj[static_cast<std::size_t>(i)]);
        first = false;
      }
    for (const auto& [v, bv] : t.b_)
      if ((v & u) == u && v != u) common = common.minus(bv);
    t.b_.emplace(u, std::move(common));
  }
  return t;
}

int epsilon_bar(const Permutation& p, const BTable& table, LabelMask u) {
  return static_cast<int>(adjacencies(p).intersect(table.b(u)).size());
}

int median_excess(const Permutation& p, std::span<const Permutation> xs) {
  require_same_length(xs, "median_excess");
  return static_cast<int>(adjacencies(p).minus(united_adjacencies(xs)).size());
}

int bound_tight(const Permutation& p, const BTable& table) {
  const AdjacencySet ap = adjacencies(p);
  const LabelMask anchor_bit = LabelMask{1} << table.anchor();
  int bound = 0;
  for (const auto& [u, bu] : table.entries()) {
    const int w = std::popcount(u) - 1;
    bound += w * static_cast<int>(ap.intersect(bu).size());
    if (u & anchor_bit) bound -= w * static_cast<int>(bu.size());
  }
  return bound;
}

int bound_O(const BTable& table) {
  const LabelMask anchor_bit = LabelMask{1} << table.anchor();
  int bound = 0;
  for (const auto& [u, bu] : table.entries())
    if (!(u & anchor_bit)) bound += (std::popcount(u) - 1) * static_cast<int>(bu.size());
  return bound;
}

bool l_membership(const Permutation& p, std::span<const Permutation> xs, int slack) {
  if (slack < 0) throw ValidationError("slack c must be >= 0");
  return median_excess(p, xs) <= slack;
}

namespace {

struct CoverShape {
  int slots = 0;
  int bits = 0;
  std::uint64_t full = 0;
};

CoverShape cover_shape(const Permutation& p, int k, int slack, const Limits& limits) {
  if (k < 1) throw ValidationError("k must be >= 1");
  if (slack < 0) throw ValidationError("slack c must be >= 0");
  CoverShape s;
  s.slots = std::max(0, p.size() - 1);
  s.bits = s.slots * k;
  if (s.bits > limits.max_cover_bits || s.bits > 62)
    throw SizeLimitError("cover tuples over (n-1)k=" + std::to_string(s.bits) + " bits exceed limit " +
                         std::to_string(limits.max_cover_bits));
  s.full = s.slots == 0 ? 0 : (std::uint64_t{1} << s.slots) - 1;
  return s;
}

inline void decode_tuple(std::uint64_t t, const CoverShape& s, std::span<std::uint64_t> out, std::uint64_t& uni) {
  uni = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = s.slots == 0 ? 0 : (t >> (static_cast<int>(i) * s.slots)) & s.full;
    uni |= out[i];
  }
}

template <class Acc>
Acc cover_sum_range(const std::vector<Acc>& h, const CoverShape& s, int k, int slack, std::uint64_t lo,
                    std::uint64_t hi) {
  std::vector<std::uint64_t> parts(static_cast<std::size_t>(k));
  Acc sum = 0;
  for (std::uint64_t t = lo; t < hi; ++t) {
    std::uint64_t uni = 0;
    decode_tuple(t, s, parts, uni);
    if (std::popcount(s.full & ~uni) > slack) continue;
    Acc prod = h[parts[0]];
    for (int i = 1; i < k && prod != 0; ++i) prod *= h[parts[static_cast<std::size_t>(i)]];
    sum += prod;
  }
  return sum;
}

BigInt u128_to_big(unsigned __int128 v) {
  BigInt r = static_cast<std::uint64_t>(v >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(v);
  return r;
}

// The total is at most (n!)^k, so 128-bit accumulation is exact whenever that fits.
bool fits_u128(int n, int k) { return boost::multiprecision::msb(factorial(n)) * k + k < 126 || n <= 1; }

BigInt cover_sum(const Permutation& p, int k, int slack, const Limits& limits, int threads) {
  const CoverShape s = cover_shape(p, k, slack, limits);
  const std::vector<BigInt> h = h_count_table(p, limits);
  const std::uint64_t total = std::uint64_t{1} << s.bits;
  const std::uint64_t chunk = std::max<std::uint64_t>(total / 256, 4096);
  const auto chunks = static_cast<long long>((total + chunk - 1) / chunk);

  if (fits_u128(p.size(), k)) {
    std::vector<unsigned __int128> h128;
    for (const auto& v : h) h128.push_back(static_cast<unsigned __int128>(static_cast<std::uint64_t>(v)));
    std::vector<unsigned __int128> partial(static_cast<std::size_t>(chunks), 0);
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (threads > 1)
    for (long long c = 0; c < chunks; ++c) {
      const std::uint64_t lo = static_cast<std::uint64_t>(c) * chunk;
      partial[static_cast<std::size_t>(c)] = cover_sum_range(h128, s, k, slack, lo, std::min(total, lo + chunk));
    }
    unsigned __int128 sum = 0;
    for (auto v : partial) sum += v;
    return u128_to_big(sum);
  }
  std::vector<BigInt> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (threads > 1)
  for (long long c = 0; c < chunks; ++c) {
    const std::uint64_t lo = static_cast<std::uint64_t>(c) * chunk;
    partial[static_cast<std::size_t>(c)] = cover_sum_range(h, s, k, slack, lo, std::min(total, lo + chunk));
  }
  BigInt sum = 0;
  for (const auto& v : partial) sum += v;
  return sum;
}

}  // namespace

void for_each_cover_tuple(const Permutation& p, int k, int slack, const Limits& limits,
                          const std::function<void(std::span<const std::uint64_t>)>& fn) {
  const CoverShape s = cover_shape(p, k, slack, limits);
  std::vector<std::uint64_t> parts(static_cast<std::size_t>(k));
  for (std::uint64_t t = 0; t < (std::uint64_t{1} << s.bits); ++t) {
    std::uint64_t uni = 0;
    decode_tuple(t, s, parts, uni);
    if (std::popcount(s.full & ~uni) <= slack) fn(parts);
  }
}

std::uint64_t count_cover_tuples(const Permutation& p, int k, int slack, const Limits& limits) {
  std::uint64_t count = 0;
  for_each_cover_tuple(p, k, slack, limits, [&](std::span<const std::uint64_t>) { ++count; });
  return count;
}

std::vector<std::vector<SegmentSet>> enumerate_cover_tuples(const Permutation& p, int k, int slack,
                                                            const Limits& limits) {
  std::vector<std::vector<SegmentSet>> out;
  for_each_cover_tuple(p, k, slack, limits, [&](std::span<const std::uint64_t> parts) {
    std::vector<SegmentSet> tuple;
    for (auto m : parts) tuple.push_back(segment_set_from_adjacencies(slots_to_adjacencies(p, m)));
    out.push_back(std::move(tuple));
  });
  return out;
}

BigInt l_inverse_count(const Permutation& p, int k, int slack, const Limits& limits, Parallelism par) {
  return cover_sum(p, k, slack, limits, par.threads > 0 ? par.threads : omp_get_max_threads());
}

BigInt l_inverse_count_serial(const Permutation& p, int k, int slack, const Limits& limits) {
  return cover_sum(p, k, slack, limits, 1);
}

BigInt l_inverse_count_fast(const Permutation& p, int k, int slack, const Limits& limits) {
  if (k < 1) throw ValidationError("k must be >= 1");
  if (slack < 0) throw ValidationError("slack c must be >= 0");
  const int m = std::max(0, p.size() - 1);
  // F(S) = Σ_{J ⊆ S} H(J): permutations whose overlap with p lies inside S.
  std::vector<BigInt> f = h_count_table(p, limits);
  const std::size_t size = f.size();
  for (int b = 0; b < m; ++b)
    for (std::size_t s = 0; s < size; ++s)
      if (s >> b & 1) f[s] += f[s ^ (std::size_t{1} << b)];
  // F(S)^k counts tuples whose union lies inside S; Möbius gives union exactly S.
  for (auto& v : f) v = boost::multiprecision::pow(v, static_cast<unsigned>(k));
  for (int b = 0; b < m; ++b)
    for (std::size_t s = 0; s < size; ++s)
      if (s >> b & 1) f[s] -= f[s ^ (std::size_t{1} << b)];
  BigInt sum = 0;
  for (std::size_t s = 0; s < size; ++s)
    if (m - std::popcount(s) <= slack) sum += f[s];
  return sum;
}

ExactProbability l_inverse_probability(const Permutation& p, int k, int slack, const Limits& limits, Parallelism par) {
  BigInt den = boost::multiprecision::pow(factorial(p.size()), static_cast<unsigned>(k));
  return ExactProbability(l_inverse_count(p, k, slack, limits, par), den);
}

namespace {

// Precomputed pairwise overlap data for the S_n^k oracles.
struct TupleScan {
  int n = 0;
  std::vector<Permutation> perms;
  std::vector<int> class_ids;                 // indices into perms that are class representatives
  std::vector<unsigned char> pair_common;     // |A_x ∩ A_y| for all x, y
  std::vector<std::uint64_t> overlap_with_p;  // slot mask of A_p ∩ A_x
  std::uint64_t full = 0;
};

TupleScan prepare_scan(const Permutation& p, int k, const Limits& limits, bool need_medians, const char* what) {
  if (k < 1) throw ValidationError("k must be >= 1");
  const int n = p.size();
  if (n > limits.max_n || n > 12)
    throw SizeLimitError(std::string(what) + ": n=" + std::to_string(n) + " exceeds limit");
  const double nf = static_cast<double>(factorial_u64(n));
  double work = 1;
  for (int i = 0; i < k; ++i) work *= nf;
  if (need_medians) work *= nf / 2;
  if (work > static_cast<double>(limits.max_tuple_work))
    throw SizeLimitError(std::string(what) + ": (n!)^k work " + std::to_string(work) + " exceeds limit " +
                         std::to_string(limits.max_tuple_work));
  TupleScan t;
  t.n = n;
  t.perms = enumerate_permutations(n, limits);
  const std::size_t np = t.perms.size();
  for (std::size_t i = 0; i < np; ++i)
    if (is_class_representative(t.perms[i])) t.class_ids.push_back(static_cast<int>(i));
  t.pair_common.resize(np * np);
  for (std::size_t i = 0; i < np; ++i) {
    const AdjacencyIndex ix(t.perms[i]);
    for (std::size_t j = 0; j < np; ++j)
      t.pair_common[i * np + j] = static_cast<unsigned char>(ix.shared_with(t.perms[j].values()));
  }
  t.full = n <= 1 ? 0 : (std::uint64_t{1} << (n - 1)) - 1;
  for (const auto& x : t.perms) t.overlap_with_p.push_back(slot_mask(p, adjacencies(p).intersect(adjacencies(x))));
  return t;
}

std::size_t index_of(const TupleScan& t, const Permutation& p) {
  return static_cast<std::size_t>(std::lower_bound(t.perms.begin(), t.perms.end(), p) - t.perms.begin());
}

// With v_only set, only tuples in V are tallied at all.
struct TupleTally {
  std::uint64_t l_members = 0;
  std::uint64_t medians = 0;
};

// Walks all tuples whose first coordinate is `first`, odometer over the rest.
void tally_first(const TupleScan& t, std::size_t target, int k, int slack, bool medians, bool v_only, std::size_t first,
                 TupleTally& out) {
  const std::size_t np = t.perms.size();
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  idx[0] = first;
  for (;;) {
    std::uint64_t covered = 0;
    for (auto i : idx) covered |= t.overlap_with_p[i];
    const int uncovered = std::popcount(t.full & ~covered);
    bool in_v = true;
    if (v_only)
      for (int a = 0; a < k && in_v; ++a)
        for (int b = a + 1; b < k && in_v; ++b)
          in_v = t.pair_common[idx[static_cast<std::size_t>(a)] * np + idx[static_cast<std::size_t>(b)]] == 0;
    if (!v_only || in_v) {
      if (uncovered <= slack) ++out.l_members;
      if (medians) {
        // A median maximizes the total number of shared adjacencies.
        int best = -1;
        for (int c : t.class_ids) {
          int shared = 0;
          for (auto i : idx) shared += t.pair_common[i * np + static_cast<std::size_t>(c)];
          best = std::max(best, shared);
        }
        int mine = 0;
        for (auto i : idx) mine += t.pair_common[i * np + target];
        if (mine == best) ++out.medians;
      }
    }
    std::size_t pos = 1;
    while (pos < idx.size() && ++idx[pos] == np) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
}

TupleTally tally_all(const TupleScan& t, const Permutation& p, int k, int slack, bool medians, bool v_only,
                     Parallelism par) {
  const std::size_t target = index_of(t, p);
  const auto np = static_cast<long long>(t.perms.size());
  std::vector<TupleTally> parts(static_cast<std::size_t>(np));
  const int threads = par.threads > 0 ? par.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long long f = 0; f < np; ++f)
    tally_first(t, target, k, slack, medians, v_only, static_cast<std::size_t>(f), parts[static_cast<std::size_t>(f)]);
  TupleTally sum;
  for (const auto& q : parts) {
    sum.l_members += q.l_members;
    sum.medians += q.medians;
  }
  return sum;
}

}  // namespace

BigInt l_inverse_count_brute(const Permutation& p, int k, int slack, const Limits& limits, Parallelism par) {
  if (slack < 0) throw ValidationError("slack c must be >= 0");
  const TupleScan t = prepare_scan(p, k, limits, false, "l_inverse_count_brute");
  return tally_all(t, p, k, slack, false, false, par).l_members;
}

BigInt m_inverse_count_brute(const Permutation& p, int k, const Limits& limits, Parallelism par) {
  const TupleScan t = prepare_scan(p, k, limits, true, "m_inverse_count_brute");
  return tally_all(t, p, k, 0, true, false, par).medians;
}

std::pair<BigInt, BigInt> restricted_v_counts(const Permutation& p, int k, const Limits& limits, Parallelism par) {
  const TupleScan t = prepare_scan(p, k, limits, true, "restricted_v_counts");
  const TupleTally tally = tally_all(t, p, k, 0, true, true, par);
  return {BigInt(tally.medians), BigInt(tally.l_members)};
}

}  // namespace bpmed
