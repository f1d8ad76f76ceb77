#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bpmed/limits.hpp"

namespace bpmed {

/// A bijection on {1..n}, stored one-line: values[i] is the image of i+1.
class Permutation {
 public:
  Permutation() = default;
  /// Throws ValidationError unless values is exactly a rearrangement of 1..n.
  explicit Permutation(std::vector<int> values);
  Permutation(std::initializer_list<int> values) : Permutation(std::vector<int>(values)) {}

  static Permutation identity(int n);

  int size() const noexcept { return static_cast<int>(values_.size()); }
  int operator[](int i) const noexcept { return values_[static_cast<std::size_t>(i)]; }
  std::span<const int> values() const noexcept { return values_; }

  std::string to_string() const;  // "1 2 3"

  auto operator<=>(const Permutation&) const = default;

 private:
  struct Unchecked {};
  Permutation(std::vector<int> values, Unchecked) : values_(std::move(values)) {}
  friend class PermutationStream;
  friend Permutation unrank_permutation(int, std::uint64_t);
  friend Permutation reverse_of(const Permutation&);
  friend Permutation compose(const Permutation&, const Permutation&);

  std::vector<int> values_;
};

std::ostream& operator<<(std::ostream& os, const Permutation& p);

/// Unordered pair {lo, hi} with lo < hi.
struct Adjacency {
  int lo = 0;
  int hi = 0;

  Adjacency() = default;
  Adjacency(int a, int b) : lo(a < b ? a : b), hi(a < b ? b : a) {}

  auto operator<=>(const Adjacency&) const = default;
};

/// A set of adjacencies over the ambient alphabet 1..n, kept sorted.
class AdjacencySet {
 public:
  AdjacencySet() = default;
  /// Throws ValidationError on a self-pair or an out-of-range value; duplicates collapse.
  AdjacencySet(int n, std::vector<Adjacency> pairs);

  int ambient() const noexcept { return n_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }
  const std::vector<Adjacency>& pairs() const noexcept { return pairs_; }
  auto begin() const noexcept { return pairs_.begin(); }
  auto end() const noexcept { return pairs_.end(); }

  bool contains(Adjacency a) const;
  bool is_subset_of(const AdjacencySet& other) const;

  AdjacencySet intersect(const AdjacencySet& other) const;
  AdjacencySet unite(const AdjacencySet& other) const;
  AdjacencySet minus(const AdjacencySet& other) const;

  std::string to_string() const;  // "{1,2} {2,3}"

  bool operator==(const AdjacencySet& other) const { return pairs_ == other.pairs_; }

 private:
  int n_ = 0;
  std::vector<Adjacency> pairs_;
};

/// A permutation up to reversal. The representative is the lexicographically
/// smaller of the two orientations.
class PermClass {
 public:
  explicit PermClass(const Permutation& p);
  const Permutation& representative() const noexcept { return rep_; }
  auto operator<=>(const PermClass&) const = default;

 private:
  Permutation rep_;
};

/// Accepts integers separated by whitespace and/or commas.
Permutation parse_permutation(std::string_view text);

/// One permutation per line; blank lines and lines starting with '#' are skipped.
std::vector<Permutation> parse_permutation_list(std::string_view text);
std::vector<Permutation> read_permutation_file(const std::string& path);

AdjacencySet adjacencies(const Permutation& p);
AdjacencySet common_adjacencies(std::span<const Permutation> ps);
AdjacencySet united_adjacencies(std::span<const Permutation> ps);

/// |A_x ∩ A_y| in O(n) without materializing either set.
int common_adjacency_count(const Permutation& x, const Permutation& y);

int bp_distance(const Permutation& x, const Permutation& y);
int total_distance(const Permutation& x, std::span<const Permutation> xs);

Permutation reverse_of(const Permutation& p);
PermClass canonical_class(const Permutation& p);
/// True when p is its class representative, i.e. p <= reverse(p).
bool is_class_representative(const Permutation& p);

/// (z∘x)(i) = z(x(i)).
Permutation compose(const Permutation& z, const Permutation& x);

bool is_max_distance_set(std::span<const Permutation> xs);

/// Throws ValidationError if the permutations do not all have the same length.
void require_same_length(std::span<const Permutation> ps, std::string_view what);

std::uint64_t factorial_u64(int n);  // n <= 20

/// Lexicographic rank -> permutation (factorial number system).
Permutation unrank_permutation(int n, std::uint64_t rank);

/// Lexicographic stream over S_n. Throws SizeLimitError when n > limits.max_n.
class PermutationStream {
 public:
  explicit PermutationStream(int n, const Limits& limits = {});
  /// Starts at lexicographic rank `first` and yields at most `count` items.
  PermutationStream(int n, std::uint64_t first, std::uint64_t count, const Limits& limits = {});

  /// Advances; returns false when exhausted.
  bool next(Permutation& out);

 private:
  std::vector<int> cur_;
  std::uint64_t remaining_ = 0;
  bool started_ = false;
};

std::vector<Permutation> enumerate_permutations(int n, const Limits& limits = {});
/// Class representatives in lexicographic order; n!/2 of them for n >= 2, one for n = 1.
std::vector<PermClass> enumerate_classes(int n, const Limits& limits = {});

/// Dense n x n lookup of a fixed adjacency set; used by the scan kernels to
/// score a candidate against a reference permutation in n-1 lookups.
class AdjacencyIndex {
 public:
  AdjacencyIndex() = default;
  explicit AdjacencyIndex(const Permutation& p);
  explicit AdjacencyIndex(const AdjacencySet& s);

  bool has(int a, int b) const noexcept {
    return bits_[static_cast<std::size_t>((a - 1) * n_ + (b - 1))] != 0;
  }
  /// Number of adjacencies of `values` present in the index.
  int shared_with(std::span<const int> values) const noexcept;

 private:
  int n_ = 0;
  std::vector<unsigned char> bits_;
};

}  // namespace bpmed
