#pragma once

// Brute-force references. Each one recomputes its quantity from definitions
// over S_n (or S_n^k) and shares no code path with the routine it checks
// beyond Permutation itself.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "bpmed/bigint.hpp"
#include "bpmed/permutation.hpp"
#include "bpmed/segment.hpp"

namespace bpmed::oracle {

/// Sorted adjacency pairs of p, by definition.
std::vector<std::pair<int, int>> adjacency_pairs(const Permutation& p);

/// counts[mask] = #{x in S_n : slots of A_p shared with x == mask}.
std::vector<std::uint64_t> overlap_histogram(const Permutation& p);

/// Medians by scanning every permutation of S_n with the distance computed from its definition.
std::vector<Permutation> median_set(const std::vector<Permutation>& xs, int* mu = nullptr);

/// B_U for |U| >= 2: adjacencies whose owner set within X is exactly U.
std::map<std::uint32_t, std::vector<std::pair<int, int>>> exact_owner_sets(const std::vector<Permutation>& xs);

/// Mean and variance of |A_{id,ξ}| over all of S_n.
struct ExactMoments {
  BigRational mean;
  BigRational variance;
};
ExactMoments exhaustive_moments(int n);

/// Number of J with I ⊆ J ⊆ A_p whose restriction to the free slots matches
/// the given per-gap run counts / flags, found by enumerating slot subsets.
/// Keyed by the type's string form.
std::map<std::string, std::uint64_t> type_histogram(const Permutation& p, const SegmentSet& base);

/// Subsets X of canonical classes of the given size with all pairwise distances n-1.
std::vector<std::vector<Permutation>> max_distance_sets(int n, int size, std::size_t limit);

/// Sampling helpers for property tests.
Permutation random_permutation(int n, std::mt19937_64& rng);
SegmentSet random_sub_segment_set(const Permutation& p, std::mt19937_64& rng);

}  // namespace bpmed::oracle
