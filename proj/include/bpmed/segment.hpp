#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "bpmed/bigint.hpp"
#include "bpmed/permutation.hpp"

namespace bpmed {

/// [n0, ..., nk] with k >= 1 distinct nodes-minus-one adjacencies; stored
/// with the smaller endpoint first since a segment equals its reversal.
class Segment {
 public:
  explicit Segment(std::vector<int> nodes);

  const std::vector<int>& nodes() const noexcept { return nodes_; }
  int length() const noexcept { return static_cast<int>(nodes_.size()) - 1; }
  std::vector<Adjacency> adjacencies() const;
  std::string to_string() const;  // "[1,2,3]"

  auto operator<=>(const Segment&) const = default;

 private:
  std::vector<int> nodes_;
};

/// Union of pairwise strongly disjoint segments over the alphabet 1..n.
class SegmentSet {
 public:
  SegmentSet() = default;
  /// Throws ValidationError if two components share a node.
  SegmentSet(int n, std::vector<Segment> components);

  static SegmentSet empty(int n) { return SegmentSet(n, {}); }

  int ambient() const noexcept { return n_; }
  const std::vector<Segment>& components() const noexcept { return components_; }
  const AdjacencySet& adjacencies() const noexcept { return adj_; }
  int component_count() const noexcept { return static_cast<int>(components_.size()); }  // ||I||
  int adjacency_count() const noexcept { return static_cast<int>(adj_.size()); }        // |I|
  bool empty() const noexcept { return components_.empty(); }

  std::string to_string() const;  // "[1,2,3] [5,6]", "[]" when empty

  bool operator==(const SegmentSet& o) const { return n_ == o.n_ && components_ == o.components_; }

 private:
  int n_ = 0;
  std::vector<Segment> components_;
  AdjacencySet adj_;
};

/// Splits a pair set into maximal paths. Fails with ValidationError naming
/// the node when some node has degree >= 3 or lies on a cycle.
SegmentSet segment_set_from_adjacencies(const AdjacencySet& pairs);

/// Accepts "[1,2,3] [5,6]", "{1,2} {2,3}" or a mix; "" and "[]" denote the empty set.
SegmentSet parse_segment_set(std::string_view text, int n);

bool consistent(const SegmentSet& a, const SegmentSet& b);
SegmentSet union_segment_sets(const SegmentSet& a, const SegmentSet& b);

/// Slot i of p is the adjacency {p_i, p_{i+1}}. Bit i is set when that slot
/// belongs to s. Requires n - 1 <= 64 and s ⊆ A_p (ValidationError otherwise).
std::uint64_t slot_mask(const Permutation& p, const AdjacencySet& s);
AdjacencySet slots_to_adjacencies(const Permutation& p, std::uint64_t mask);

/// A maximal run of A_p \ I, addressed by slot range.
struct Gap {
  int first_slot = 0;
  int length = 0;           // |gap|, may be 0 for the first and last gap
  bool left_abuts = false;  // an I-component sits directly to the left
  bool right_abuts = false;
};

class GapDecomposition {
 public:
  /// Throws ValidationError unless base ⊆ A_host.
  GapDecomposition(Permutation host, SegmentSet base);

  const Permutation& host() const noexcept { return host_; }
  const SegmentSet& base() const noexcept { return base_; }
  const std::vector<Gap>& gaps() const noexcept { return gaps_; }
  /// Node sequence of gap i in left-to-right order of the host; empty for an empty gap.
  std::vector<int> gap_nodes(std::size_t i) const;
  AdjacencySet gap_adjacencies(std::size_t i) const;

 private:
  Permutation host_;
  SegmentSet base_;
  std::vector<Gap> gaps_;
};

GapDecomposition gap_decomposition(const Permutation& p, const SegmentSet& base);

/// One gap's share of a type: adjacencies taken, runs formed, and whether the
/// runs touch the I-component on the left / right.
struct GapType {
  int taken = 0;
  int runs = 0;
  int left_touch = 0;
  int right_touch = 0;

  auto operator<=>(const GapType&) const = default;
};

struct TypeVector {
  std::vector<GapType> entries;

  int total_taken() const;
  int total_runs() const;
  int total_touches() const;
  std::string to_string() const;  // "(0,0,0,0) (1,1,1,0)"

  bool operator==(const TypeVector&) const = default;
};

/// Requires I ⊆ J ⊆ A_p; ValidationError otherwise.
TypeVector type_of(const GapDecomposition& d, const AdjacencySet& superset);
TypeVector type_of(const Permutation& p, const SegmentSet& base, const SegmentSet& superset);

/// Throws ValidationError unless t has one entry per gap and satisfies the
/// per-gap range and flag constraints.
void validate_type(const GapDecomposition& d, const TypeVector& t);

/// Every admissible type exactly once, odometer order over the gaps.
void for_each_type(const GapDecomposition& d, const std::function<void(const TypeVector&)>& fn);
std::vector<TypeVector> enumerate_types(const GapDecomposition& d);

enum class EndMode { touch, strict, free };
enum class CountingMode { corrected, literal };

/// Number of ways to choose `taken` adjacencies forming exactly `runs` runs in
/// a gap of `length` adjacencies, with each end constrained by its mode:
/// touch = the end adjacency is taken, strict = it is not, free = no constraint
/// (a permutation end). literal ignores the modes' end handling and
/// evaluates C(a-1, b-1) * C(m-a-1, b - touches) without end handling.
BigInt placements_of_type(int length, int taken, int runs, EndMode left, EndMode right,
                          CountingMode mode = CountingMode::corrected);

EndMode left_mode(const Gap& g, const GapType& t);
EndMode right_mode(const Gap& g, const GapType& t);

/// Product of per-gap placements; the number of J of type t when mode is corrected.
BigInt type_multiplicity(const GapDecomposition& d, const TypeVector& t,
                         CountingMode mode = CountingMode::corrected);

}  // namespace bpmed
