#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "bpmed/bigint.hpp"
#include "bpmed/counting.hpp"
#include "bpmed/limits.hpp"
#include "bpmed/permutation.hpp"
#include "bpmed/segment.hpp"

namespace bpmed {

/// Subsets U of the labelled input are bitmasks over original indices 0..k-1.
using LabelMask = std::uint32_t;

/// B_U^X for every |U| >= 2: the adjacencies shared by exactly the members of U.
class BTable {
 public:
  const std::vector<Permutation>& inputs() const noexcept { return inputs_; }
  int arity() const noexcept { return static_cast<int>(inputs_.size()); }
  /// Relabelling: order()[i] is the original index placed at position i.
  /// The last position holds the minimal-total-distance element (lowest index on ties).
  const std::vector<int>& order() const noexcept { return order_; }
  int anchor() const noexcept { return order_.back(); }
  const std::vector<int>& total_distances() const noexcept { return totals_; }

  /// ValidationError when U has fewer than two members or names an unknown label.
  const AdjacencySet& b(LabelMask u) const;
  const std::map<LabelMask, AdjacencySet>& entries() const noexcept { return b_; }

 private:
  friend BTable b_decomposition(std::span<const Permutation> xs);
  std::vector<Permutation> inputs_;
  std::vector<int> order_;
  std::vector<int> totals_;
  std::map<LabelMask, AdjacencySet> b_;
};

/// Top-down from U = X: B_U = A_U \ ⋃_{V ⊋ U} B_V. Requires 2 <= |X| <= 16.
BTable b_decomposition(std::span<const Permutation> xs);

/// |A_p ∩ B_U|.
int epsilon_bar(const Permutation& p, const BTable& table, LabelMask u);

/// |A_p \ ⋃_{x∈X} A_x|.
int median_excess(const Permutation& p, std::span<const Permutation> xs);

/// Σ_{|U|>=2} (|U|-1) ε̄_U(p) − Σ_{U ∋ anchor} (|U|-1) |B_U|. Bounds the
/// excess of p when p is a median of X.
int bound_tight(const Permutation& p, const BTable& table);

/// Σ_{|U|>=2, anchor ∉ U} (|U|-1) |B_U|; depends only on X.
int bound_O(const BTable& table);

bool l_membership(const Permutation& p, std::span<const Permutation> xs, int slack);

/// k-tuples of slot masks over A_p (bit i = slot {p_i, p_{i+1}}) leaving at
/// most `slack` adjacencies of p uncovered. Requires (n-1)k <= limits.max_cover_bits.
void for_each_cover_tuple(const Permutation& p, int k, int slack, const Limits& limits,
                          const std::function<void(std::span<const std::uint64_t>)>& fn);
std::uint64_t count_cover_tuples(const Permutation& p, int k, int slack, const Limits& limits = {});
std::vector<std::vector<SegmentSet>> enumerate_cover_tuples(const Permutation& p, int k, int slack,
                                                            const Limits& limits = {});

/// Σ over cover tuples of Π_i |H_p(J_i)|; the reference bitmask sum, OpenMP over tuple ranges.
BigInt l_inverse_count(const Permutation& p, int k, int slack, const Limits& limits = {}, Parallelism par = {});
BigInt l_inverse_count_serial(const Permutation& p, int k, int slack, const Limits& limits = {});
/// Same value through a zeta/Möbius transform over subsets of A_p; O(2^{n-1}(n-1)).
BigInt l_inverse_count_fast(const Permutation& p, int k, int slack, const Limits& limits = {});

ExactProbability l_inverse_probability(const Permutation& p, int k, int slack, const Limits& limits = {},
                                       Parallelism par = {});

/// Exhaustive S_n^k oracles.
BigInt l_inverse_count_brute(const Permutation& p, int k, int slack, const Limits& limits = {}, Parallelism par = {});
BigInt m_inverse_count_brute(const Permutation& p, int k, const Limits& limits = {}, Parallelism par = {});

/// (|M^{-1} ∩ V|, |L^{-1}_0 ∩ V|) where V holds the tuples with all pairwise distances n-1.
std::pair<BigInt, BigInt> restricted_v_counts(const Permutation& p, int k, const Limits& limits = {},
                                              Parallelism par = {});

}  // namespace bpmed
