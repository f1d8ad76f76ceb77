#include "bpmed/counting.hpp"

#include <omp.h>

#include <bit>

#include "bpmed/error.hpp"

namespace bpmed {

BigInt factorial(int n) {
  if (n < 0) return 0;
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt binomial(long long a, long long b) {
  if (a < 0 || b < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  BigInt r = 1;
  for (long long i = 1; i <= b; ++i) {
    r *= a - b + i;
    r /= i;
  }
  return r;
}

BigInt pow2(long long e) {
  if (e < 0) throw ValidationError("pow2: negative exponent");
  BigInt r = 1;
  r <<= static_cast<unsigned>(e);
  return r;
}

ExactProbability::ExactProbability(BigInt num, BigInt den) {
  if (den <= 0) throw ValidationError("probability denominator must be positive");
  if (num < 0 || num > den) throw VerificationError("probability outside [0,1]: " + num.str() + "/" + den.str());
  BigInt g = boost::multiprecision::gcd(num, den);
  if (g == 0) g = 1;
  num_ = num / g;
  den_ = den / g;
}

std::string ExactProbability::decimal(int digits) const {
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt scaled = (num_ * scale * 2 + den_) / (den_ * 2);
  BigInt whole = scaled / scale;
  std::string frac = BigInt(scaled % scale).str();
  if (digits == 0) return whole.str();
  return whole.str() + "." + std::string(static_cast<std::size_t>(digits) - frac.size(), '0') + frac;
}

std::string ExactProbability::to_string() const { return num_.str() + "/" + den_.str(); }

double ExactProbability::to_double() const {
  return static_cast<double>(BigRational(num_, den_));
}

BigInt permutations_containing(const SegmentSet& j, int n) {
  if (j.adjacency_count() > n - 1)
    throw ValidationError("segment set with " + std::to_string(j.adjacency_count()) + " adjacencies exceeds n-1=" +
                          std::to_string(n - 1));
  if (j.ambient() > n) throw ValidationError("segment set ambient size exceeds n");
  return pow2(j.component_count()) * factorial(n - j.adjacency_count());
}

BigInt permutations_containing_by_type(const GapDecomposition& d, const TypeVector& t) {
  validate_type(d, t);
  const int n = d.host().size();
  const long long comps = d.base().component_count() + t.total_runs() - t.total_touches();
  return pow2(comps) * factorial(n - d.base().adjacency_count() - t.total_taken());
}

BigInt permutations_containing_by_type_literal(const GapDecomposition& d, const TypeVector& t) {
  validate_type(d, t);
  const int n = d.host().size();
  const long long e = d.base().adjacency_count() + t.total_runs() - t.total_touches();
  return pow2(e) * factorial(n - d.base().adjacency_count() - t.total_taken());
}

namespace {

std::uint64_t count_exact_overlap(const Permutation& p, std::uint64_t target, std::uint64_t first, std::uint64_t count,
                                  const Limits& limits) {
  const int n = p.size();
  std::vector<int> where(static_cast<std::size_t>(n) + 1);
  PermutationStream s(n, first, count, limits);
  Permutation x;
  std::uint64_t hits = 0;
  while (s.next(x)) {
    for (int i = 0; i < n; ++i) where[static_cast<std::size_t>(x[i])] = i;
    std::uint64_t mask = 0;
    for (int i = 0; i + 1 < n; ++i) {
      const int d = where[static_cast<std::size_t>(p[i])] - where[static_cast<std::size_t>(p[i + 1])];
      if (d == 1 || d == -1) mask |= std::uint64_t{1} << i;
    }
    hits += mask == target;
  }
  return hits;
}

std::uint64_t brute_target(const Permutation& p, const SegmentSet& base, const Limits& limits) {
  if (p.size() > limits.max_n)
    throw SizeLimitError("h_count_brute: n=" + std::to_string(p.size()) + " exceeds limit " + std::to_string(limits.max_n));
  return slot_mask(p, base.adjacencies());
}

}  // namespace

BigInt h_count_brute_serial(const Permutation& p, const SegmentSet& base, const Limits& limits) {
  const std::uint64_t target = brute_target(p, base, limits);
  return count_exact_overlap(p, target, 0, factorial_u64(p.size()), limits);
}

BigInt h_count_brute(const Permutation& p, const SegmentSet& base, const Limits& limits, Parallelism par) {
  const std::uint64_t target = brute_target(p, base, limits);
  const std::uint64_t total = factorial_u64(p.size());
  const std::uint64_t chunk = std::max<std::uint64_t>(total / 64, 720);
  const auto chunks = static_cast<long long>((total + chunk - 1) / chunk);
  std::uint64_t hits = 0;
  const int threads = par.threads > 0 ? par.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) reduction(+ : hits) num_threads(threads)
  for (long long c = 0; c < chunks; ++c)
    hits += count_exact_overlap(p, target, static_cast<std::uint64_t>(c) * chunk, chunk, limits);
  return hits;
}

BigInt h_count_inclusion_exclusion(const Permutation& p, const SegmentSet& base, const Limits& limits) {
  const int n = p.size();
  const std::uint64_t base_mask = slot_mask(p, base.adjacencies());
  std::vector<int> free_slots;
  for (int i = 0; i + 1 < n; ++i)
    if (!(base_mask >> i & 1)) free_slots.push_back(i);
  const int m = static_cast<int>(free_slots.size());
  if (m > limits.max_free_slots)
    throw SizeLimitError("inclusion-exclusion over " + std::to_string(m) + " free slots exceeds limit " +
                         std::to_string(limits.max_free_slots));
  BigInt sum = 0;
  for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << m); ++sub) {
    std::uint64_t mask = base_mask;
    for (int b = 0; b < m; ++b)
      if (sub >> b & 1) mask |= std::uint64_t{1} << free_slots[static_cast<std::size_t>(b)];
    // ||J|| = number of maximal runs of set slots in the mask.
    const int len = std::popcount(mask);
    const int runs = std::popcount(mask & ~(mask << 1));
    BigInt term = pow2(runs) * factorial(n - len);
    if (std::popcount(sub) & 1)
      sum -= term;
    else
      sum += term;
  }
  if (sum < 0) throw VerificationError("inclusion-exclusion produced a negative count");
  return sum;
}

std::vector<TypeTerm> h_count_type_terms(const Permutation& p, const SegmentSet& base, CountingMode mode) {
  const GapDecomposition d(p, base);
  std::vector<TypeTerm> terms;
  for_each_type(d, [&](const TypeVector& t) {
    TypeTerm term{t, type_multiplicity(d, t, mode),
                  mode == CountingMode::corrected ? permutations_containing_by_type(d, t)
                                                  : permutations_containing_by_type_literal(d, t),
                  0};
    term.signed_term = term.multiplicity * term.containing;
    if (t.total_taken() & 1) term.signed_term = -term.signed_term;
    terms.push_back(std::move(term));
  });
  return terms;
}

BigInt h_count_by_type(const Permutation& p, const SegmentSet& base, CountingMode mode) {
  const GapDecomposition d(p, base);
  const int n = p.size();
  const int base_len = base.adjacency_count();
  const int base_comps = base.component_count();
  BigInt sum = 0;
  for_each_type(d, [&](const TypeVector& t) {
    BigInt mult = type_multiplicity(d, t, mode);
    if (mult == 0) return;
    const long long e = (mode == CountingMode::corrected ? base_comps : base_len) + t.total_runs() - t.total_touches();
    BigInt term = mult * pow2(e) * factorial(n - base_len - t.total_taken());
    if (t.total_taken() & 1)
      sum -= term;
    else
      sum += term;
  });
  if (mode == CountingMode::corrected && sum < 0) throw VerificationError("type sum produced a negative count");
  return sum;
}

std::vector<BigInt> h_count_table(const Permutation& p, const Limits& limits) {
  const int slots = std::max(0, p.size() - 1);
  if (slots > limits.max_free_slots || slots > 62)
    throw SizeLimitError("h_count_table over " + std::to_string(slots) + " slots exceeds limit " +
                         std::to_string(limits.max_free_slots));
  std::vector<BigInt> table(std::size_t{1} << slots);
  for (std::uint64_t mask = 0; mask < table.size(); ++mask)
    table[mask] = h_count_by_type(p, segment_set_from_adjacencies(slots_to_adjacencies(p, mask)));
  return table;
}

}  // namespace bpmed
