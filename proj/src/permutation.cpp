#include "bpmed/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "bpmed/error.hpp"

namespace bpmed {

Permutation::Permutation(std::vector<int> values) : values_(std::move(values)) {
  const int n = size();
  if (n == 0) throw ValidationError("permutation is empty");
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  for (int v : values_) {
    if (v < 1 || v > n)
      throw ValidationError("value " + std::to_string(v) + " outside 1.." + std::to_string(n));
    if (seen[static_cast<std::size_t>(v)]++)
      throw ValidationError("duplicate value " + std::to_string(v));
  }
}

Permutation Permutation::identity(int n) {
  if (n < 1) throw ValidationError("identity needs n >= 1");
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v), Unchecked{});
}

std::string Permutation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(values_[i]);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Permutation& p) { return os << p.to_string(); }

AdjacencySet::AdjacencySet(int n, std::vector<Adjacency> pairs) : n_(n), pairs_(std::move(pairs)) {
  for (const auto& a : pairs_) {
    if (a.lo == a.hi) throw ValidationError("self-adjacency {" + std::to_string(a.lo) + "," + std::to_string(a.hi) + "}");
    if (a.lo < 1 || a.hi > n)
      throw ValidationError("adjacency {" + std::to_string(a.lo) + "," + std::to_string(a.hi) + "} outside 1.." +
                            std::to_string(n));
  }
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

bool AdjacencySet::contains(Adjacency a) const { return std::binary_search(pairs_.begin(), pairs_.end(), a); }

bool AdjacencySet::is_subset_of(const AdjacencySet& other) const {
  return std::includes(other.pairs_.begin(), other.pairs_.end(), pairs_.begin(), pairs_.end());
}

AdjacencySet AdjacencySet::intersect(const AdjacencySet& other) const {
  AdjacencySet r;
  r.n_ = std::max(n_, other.n_);
  std::set_intersection(pairs_.begin(), pairs_.end(), other.pairs_.begin(), other.pairs_.end(),
                        std::back_inserter(r.pairs_));
  return r;
}

AdjacencySet AdjacencySet::unite(const AdjacencySet& other) const {
  AdjacencySet r;
  r.n_ = std::max(n_, other.n_);
  std::set_union(pairs_.begin(), pairs_.end(), other.pairs_.begin(), other.pairs_.end(), std::back_inserter(r.pairs_));
  return r;
}

AdjacencySet AdjacencySet::minus(const AdjacencySet& other) const {
  AdjacencySet r;
  r.n_ = n_;
  std::set_difference(pairs_.begin(), pairs_.end(), other.pairs_.begin(), other.pairs_.end(),
                      std::back_inserter(r.pairs_));
  return r;
}

std::string AdjacencySet::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (i) out += ' ';
    out += '{' + std::to_string(pairs_[i].lo) + ',' + std::to_string(pairs_[i].hi) + '}';
  }
  return out;
}

PermClass::PermClass(const Permutation& p) : rep_(std::min(p, reverse_of(p))) {}

Permutation parse_permutation(std::string_view text) {
  std::vector<int> values;
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ',' || std::isspace(static_cast<unsigned char>(text[i])))) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ',' && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) tokens.emplace_back(text.substr(i, j - i));
    i = j;
  }
  if (tokens.empty()) throw ValidationError("empty permutation");
  for (const auto& tok : tokens) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) throw ValidationError("not an integer: '" + tok + "'");
    values.push_back(v);
  }
  const int n = static_cast<int>(values.size());
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t k = 0; k < values.size(); ++k) {
    const int v = values[k];
    if (v < 1 || v > n)
      throw ValidationError("token '" + tokens[k] + "' outside 1.." + std::to_string(n));
    if (seen[static_cast<std::size_t>(v)]++) throw ValidationError("duplicate token '" + tokens[k] + "'");
  }
  return Permutation(std::move(values));
}

std::vector<Permutation> parse_permutation_list(std::string_view text) {
  std::vector<Permutation> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      out.push_back(parse_permutation(line));
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<Permutation> read_permutation_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_permutation_list(ss.str());
}

AdjacencySet adjacencies(const Permutation& p) {
  std::vector<Adjacency> pairs;
  pairs.reserve(static_cast<std::size_t>(std::max(0, p.size() - 1)));
  for (int i = 0; i + 1 < p.size(); ++i) pairs.emplace_back(p[i], p[i + 1]);
  return AdjacencySet(p.size(), std::move(pairs));
}

void require_same_length(std::span<const Permutation> ps, std::string_view what) {
  for (const auto& p : ps)
    if (p.size() != ps.front().size())
      throw ValidationError(std::string(what) + ": mixed permutation lengths " + std::to_string(ps.front().size()) +
                            " and " + std::to_string(p.size()));
}

AdjacencySet common_adjacencies(std::span<const Permutation> ps) {
  if (ps.empty()) throw ValidationError("common_adjacencies: empty list");
  require_same_length(ps, "common_adjacencies");
  AdjacencySet acc = adjacencies(ps.front());
  for (std::size_t i = 1; i < ps.size(); ++i) acc = acc.intersect(adjacencies(ps[i]));
  return acc;
}

AdjacencySet united_adjacencies(std::span<const Permutation> ps) {
  if (ps.empty()) return {};
  require_same_length(ps, "united_adjacencies");
  AdjacencySet acc = adjacencies(ps.front());
  for (std::size_t i = 1; i < ps.size(); ++i) acc = acc.unite(adjacencies(ps[i]));
  return acc;
}

int common_adjacency_count(const Permutation& x, const Permutation& y) {
  const int n = x.size();
  std::vector<int> pos(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(y[i])] = i;
  int shared = 0;
  for (int i = 0; i + 1 < n; ++i) {
    const int d = pos[static_cast<std::size_t>(x[i])] - pos[static_cast<std::size_t>(x[i + 1])];
    shared += (d == 1 || d == -1);
  }
  return shared;
}

int bp_distance(const Permutation& x, const Permutation& y) {
  if (x.size() != y.size())
    throw ValidationError("bp_distance: mixed lengths " + std::to_string(x.size()) + " and " + std::to_string(y.size()));
  if (x.size() <= 1) return 0;
  return x.size() - 1 - common_adjacency_count(x, y);
}

int total_distance(const Permutation& x, std::span<const Permutation> xs) {
  int total = 0;
  for (const auto& y : xs) total += bp_distance(x, y);
  return total;
}

Permutation reverse_of(const Permutation& p) {
  std::vector<int> v(p.values().rbegin(), p.values().rend());
  return Permutation(std::move(v), Permutation::Unchecked{});
}

PermClass canonical_class(const Permutation& p) { return PermClass(p); }

bool is_class_representative(const Permutation& p) { return p.size() <= 1 || p[0] < p[p.size() - 1]; }

Permutation compose(const Permutation& z, const Permutation& x) {
  if (z.size() != x.size()) throw ValidationError("compose: mixed lengths");
  std::vector<int> v(static_cast<std::size_t>(x.size()));
  for (int i = 0; i < x.size(); ++i) v[static_cast<std::size_t>(i)] = z[x[i] - 1];
  return Permutation(std::move(v), Permutation::Unchecked{});
}

bool is_max_distance_set(std::span<const Permutation> xs) {
  if (xs.empty()) return true;
  require_same_length(xs, "is_max_distance_set");
  const int n = xs.front().size();
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (bp_distance(xs[i], xs[j]) != n - 1) return false;
  return true;
}

std::uint64_t factorial_u64(int n) {
  if (n < 0 || n > 20) throw SizeLimitError("factorial_u64 supports 0..20, got " + std::to_string(n));
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

Permutation unrank_permutation(int n, std::uint64_t rank) {
  if (n < 1 || n > 20) throw SizeLimitError("unrank_permutation supports 1..20");
  if (rank >= factorial_u64(n)) throw ValidationError("rank out of range");
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<int> out;
  out.reserve(pool.size());
  for (int i = n - 1; i >= 0; --i) {
    const std::uint64_t f = factorial_u64(i);
    const auto idx = static_cast<std::size_t>(rank / f);
    rank %= f;
    out.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return Permutation(std::move(out), Permutation::Unchecked{});
}

namespace {
void check_enumeration_limit(int n, const Limits& limits) {
  if (n < 1) throw ValidationError("enumeration needs n >= 1");
  if (n > limits.max_n || n > 20)
    throw SizeLimitError("n=" + std::to_string(n) + " exceeds enumeration limit " + std::to_string(limits.max_n));
}
}  // namespace

PermutationStream::PermutationStream(int n, const Limits& limits) {
  check_enumeration_limit(n, limits);
  cur_.resize(static_cast<std::size_t>(n));
  std::iota(cur_.begin(), cur_.end(), 1);
  remaining_ = factorial_u64(n);
}

PermutationStream::PermutationStream(int n, std::uint64_t first, std::uint64_t count, const Limits& limits) {
  check_enumeration_limit(n, limits);
  const std::uint64_t total = factorial_u64(n);
  if (first >= total) {
    remaining_ = 0;
    return;
  }
  cur_ = unrank_permutation(n, first).values_;
  remaining_ = std::min(count, total - first);
}

bool PermutationStream::next(Permutation& out) {
  if (remaining_ == 0) return false;
  if (started_) std::next_permutation(cur_.begin(), cur_.end());
  started_ = true;
  --remaining_;
  out.values_ = cur_;
  return true;
}

std::vector<Permutation> enumerate_permutations(int n, const Limits& limits) {
  PermutationStream s(n, limits);
  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(factorial_u64(n)));
  Permutation p;
  while (s.next(p)) out.push_back(p);
  return out;
}

std::vector<PermClass> enumerate_classes(int n, const Limits& limits) {
  PermutationStream s(n, limits);
  std::vector<PermClass> out;
  Permutation p;
  while (s.next(p))
    if (is_class_representative(p)) out.emplace_back(p);
  return out;
}

AdjacencyIndex::AdjacencyIndex(const Permutation& p)
    : n_(p.size()), bits_(static_cast<std::size_t>(n_ * n_), 0) {
  for (int i = 0; i + 1 < n_; ++i) {
    bits_[static_cast<std::size_t>((p[i] - 1) * n_ + (p[i + 1] - 1))] = 1;
    bits_[static_cast<std::size_t>((p[i + 1] - 1) * n_ + (p[i] - 1))] = 1;
  }
}

AdjacencyIndex::AdjacencyIndex(const AdjacencySet& s)
    : n_(s.ambient()), bits_(static_cast<std::size_t>(n_ * n_), 0) {
  for (const auto& a : s) {
    bits_[static_cast<std::size_t>((a.lo - 1) * n_ + (a.hi - 1))] = 1;
    bits_[static_cast<std::size_t>((a.hi - 1) * n_ + (a.lo - 1))] = 1;
  }
}

int AdjacencyIndex::shared_with(std::span<const int> values) const noexcept {
  int shared = 0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) shared += has(values[i], values[i + 1]);
  return shared;
}

}  // namespace bpmed
