#include "bpmed/segment.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "bpmed/error.hpp"

namespace bpmed {

Segment::Segment(std::vector<int> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw ValidationError("a segment needs at least two nodes");
  std::vector<int> sorted = nodes_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ValidationError("segment repeats a node: " + std::to_string(*std::adjacent_find(sorted.begin(), sorted.end())));
  if (nodes_.front() > nodes_.back()) std::reverse(nodes_.begin(), nodes_.end());
}

std::vector<Adjacency> Segment::adjacencies() const {
  std::vector<Adjacency> out;
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) out.emplace_back(nodes_[i], nodes_[i + 1]);
  return out;
}

std::string Segment::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(nodes_[i]);
  }
  return out + "]";
}

SegmentSet::SegmentSet(int n, std::vector<Segment> components) : n_(n), components_(std::move(components)) {
  std::vector<char> used(static_cast<std::size_t>(std::max(n, 0)) + 1, 0);
  std::vector<Adjacency> pairs;
  for (const auto& s : components_) {
    for (int v : s.nodes()) {
      if (v < 1 || v > n) throw ValidationError("segment node " + std::to_string(v) + " outside 1.." + std::to_string(n));
      if (used[static_cast<std::size_t>(v)]++)
        throw ValidationError("segments are not strongly disjoint: node " + std::to_string(v) + " reused");
    }
    auto adj = s.adjacencies();
    pairs.insert(pairs.end(), adj.begin(), adj.end());
  }
  std::sort(components_.begin(), components_.end());
  adj_ = AdjacencySet(n, std::move(pairs));
}

std::string SegmentSet::to_string() const {
  if (components_.empty()) return "[]";
  std::string out;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) out += ' ';
    out += components_[i].to_string();
  }
  return out;
}

SegmentSet segment_set_from_adjacencies(const AdjacencySet& pairs) {
  const int n = pairs.ambient();
  std::map<int, std::vector<int>> nbr;
  for (const auto& a : pairs) {
    nbr[a.lo].push_back(a.hi);
    nbr[a.hi].push_back(a.lo);
  }
  for (const auto& [v, ns] : nbr)
    if (ns.size() >= 3) throw ValidationError("not a segment set: node " + std::to_string(v) + " has degree " +
                                              std::to_string(ns.size()));
  std::map<int, bool> visited;
  std::vector<Segment> comps;
  for (const auto& [start, ns] : nbr) {
    if (ns.size() != 1 || visited[start]) continue;
    std::vector<int> path{start};
    visited[start] = true;
    int prev = 0, cur = start;
    for (;;) {
      const auto& cn = nbr[cur];
      int next = 0;
      for (int w : cn)
        if (w != prev) next = w;
      if (next == 0) break;
      path.push_back(next);
      visited[next] = true;
      prev = cur;
      cur = next;
      if (nbr[cur].size() == 1) break;
    }
    comps.emplace_back(std::move(path));
  }
  for (const auto& [v, ns] : nbr)
    if (!visited[v]) throw ValidationError("not a segment set: node " + std::to_string(v) + " lies on a cycle");
  return SegmentSet(n, std::move(comps));
}

namespace {

std::vector<int> parse_int_list(std::string_view body, std::string_view whole) {
  std::vector<int> out;
  std::size_t i = 0;
  while (i < body.size()) {
    while (i < body.size() && (body[i] == ',' || body[i] == ' ' || body[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < body.size() && body[j] != ',' && body[j] != ' ' && body[j] != '\t') ++j;
    if (j > i) {
      int v = 0;
      auto [ptr, ec] = std::from_chars(body.data() + i, body.data() + j, v);
      if (ec != std::errc{} || ptr != body.data() + j)
        throw ValidationError("bad integer '" + std::string(body.substr(i, j - i)) + "' in '" + std::string(whole) + "'");
      out.push_back(v);
    }
    i = j;
  }
  return out;
}

}  // namespace

SegmentSet parse_segment_set(std::string_view text, int n) {
  std::vector<Adjacency> pairs;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == ',' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    if (c != '[' && c != '{') throw ValidationError("expected '[' or '{' in segment set '" + std::string(text) + "'");
    const char close = c == '[' ? ']' : '}';
    const auto end = text.find(close, i);
    if (end == std::string_view::npos) throw ValidationError("unterminated '" + std::string(1, c) + "' in '" + std::string(text) + "'");
    auto nodes = parse_int_list(text.substr(i + 1, end - i - 1), text);
    if (c == '{' && nodes.size() != 2)
      throw ValidationError("adjacency '{...}' needs exactly two values in '" + std::string(text) + "'");
    if (c == '[' && nodes.size() == 1)
      throw ValidationError("segment needs at least two nodes in '" + std::string(text) + "'");
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
      if (nodes[k] == nodes[k + 1]) throw ValidationError("self-adjacency in '" + std::string(text) + "'");
      pairs.emplace_back(nodes[k], nodes[k + 1]);
    }
    i = end + 1;
  }
  return segment_set_from_adjacencies(AdjacencySet(n, std::move(pairs)));
}

bool consistent(const SegmentSet& a, const SegmentSet& b) {
  try {
    (void)union_segment_sets(a, b);
    return true;
  } catch (const ValidationError&) {
    return false;
  }
}

SegmentSet union_segment_sets(const SegmentSet& a, const SegmentSet& b) {
  if (a.ambient() != b.ambient()) throw ValidationError("union_segment_sets: different ambient sizes");
  return segment_set_from_adjacencies(a.adjacencies().unite(b.adjacencies()));
}

std::uint64_t slot_mask(const Permutation& p, const AdjacencySet& s) {
  if (p.size() - 1 > 64) throw SizeLimitError("slot masks support n <= 65");
  std::uint64_t mask = 0;
  std::size_t found = 0;
  for (int i = 0; i + 1 < p.size(); ++i)
    if (s.contains(Adjacency(p[i], p[i + 1]))) {
      mask |= std::uint64_t{1} << i;
      ++found;
    }
  if (found != s.size()) throw ValidationError("adjacency set " + s.to_string() + " is not contained in " + p.to_string());
  return mask;
}

AdjacencySet slots_to_adjacencies(const Permutation& p, std::uint64_t mask) {
  std::vector<Adjacency> pairs;
  for (int i = 0; i + 1 < p.size(); ++i)
    if (mask >> i & 1) pairs.emplace_back(p[i], p[i + 1]);
  return AdjacencySet(p.size(), std::move(pairs));
}

GapDecomposition::GapDecomposition(Permutation host, SegmentSet base) : host_(std::move(host)), base_(std::move(base)) {
  const int slots = std::max(0, host_.size() - 1);
  std::vector<char> in_base(static_cast<std::size_t>(slots), 0);
  std::size_t found = 0;
  for (int i = 0; i < slots; ++i)
    if (base_.adjacencies().contains(Adjacency(host_[i], host_[i + 1]))) {
      in_base[static_cast<std::size_t>(i)] = 1;
      ++found;
    }
  if (found != base_.adjacencies().size())
    throw ValidationError("segment set " + base_.to_string() + " is not contained in " + host_.to_string());

  Gap cur{0, 0, false, false};
  for (int i = 0; i < slots; ++i) {
    if (in_base[static_cast<std::size_t>(i)]) {
      // The first slot of a new I-run closes the current gap.
      if (i == 0 || !in_base[static_cast<std::size_t>(i - 1)]) {
        cur.right_abuts = true;
        gaps_.push_back(cur);
      }
      cur = Gap{i + 1, 0, true, false};
    } else {
      ++cur.length;
    }
  }
  gaps_.push_back(cur);
}

std::vector<int> GapDecomposition::gap_nodes(std::size_t i) const {
  const Gap& g = gaps_.at(i);
  if (g.length == 0) return {};
  auto v = host_.values();
  return {v.begin() + g.first_slot, v.begin() + g.first_slot + g.length + 1};
}

AdjacencySet GapDecomposition::gap_adjacencies(std::size_t i) const {
  const Gap& g = gaps_.at(i);
  std::vector<Adjacency> pairs;
  for (int s = g.first_slot; s < g.first_slot + g.length; ++s) pairs.emplace_back(host_[s], host_[s + 1]);
  return AdjacencySet(host_.size(), std::move(pairs));
}

GapDecomposition gap_decomposition(const Permutation& p, const SegmentSet& base) { return GapDecomposition(p, base); }

int TypeVector::total_taken() const {
  int s = 0;
  for (const auto& e : entries) s += e.taken;
  return s;
}

int TypeVector::total_runs() const {
  int s = 0;
  for (const auto& e : entries) s += e.runs;
  return s;
}

int TypeVector::total_touches() const {
  int s = 0;
  for (const auto& e : entries) s += e.left_touch + e.right_touch;
  return s;
}

std::string TypeVector::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (i) out += ' ';
    out += '(' + std::to_string(e.taken) + ',' + std::to_string(e.runs) + ',' + std::to_string(e.left_touch) + ',' +
           std::to_string(e.right_touch) + ')';
  }
  return out;
}

TypeVector type_of(const GapDecomposition& d, const AdjacencySet& superset) {
  const Permutation& p = d.host();
  if (!d.base().adjacencies().is_subset_of(superset))
    throw ValidationError("type_of: " + d.base().to_string() + " is not contained in " + superset.to_string());
  const std::uint64_t mask = slot_mask(p, superset);
  TypeVector t;
  for (const Gap& g : d.gaps()) {
    GapType e;
    bool prev = false;
    for (int s = g.first_slot; s < g.first_slot + g.length; ++s) {
      const bool in = mask >> s & 1;
      e.taken += in;
      if (in && !prev) ++e.runs;
      prev = in;
    }
    if (g.length > 0) {
      e.left_touch = g.left_abuts && (mask >> g.first_slot & 1);
      e.right_touch = g.right_abuts && (mask >> (g.first_slot + g.length - 1) & 1);
    }
    t.entries.push_back(e);
  }
  return t;
}

TypeVector type_of(const Permutation& p, const SegmentSet& base, const SegmentSet& superset) {
  return type_of(GapDecomposition(p, base), superset.adjacencies());
}

void validate_type(const GapDecomposition& d, const TypeVector& t) {
  const auto& gaps = d.gaps();
  if (t.entries.size() != gaps.size())
    throw ValidationError("type has " + std::to_string(t.entries.size()) + " entries, expected " +
                          std::to_string(gaps.size()));
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    const Gap& g = gaps[i];
    const GapType& e = t.entries[i];
    auto bad = [&](const char* why) {
      throw ValidationError("type entry " + std::to_string(i + 1) + " " + t.to_string() + ": " + why);
    };
    if (e.taken < 0 || e.taken > g.length) bad("taken out of range");
    if ((e.runs == 0) != (e.taken == 0)) bad("runs must be zero exactly when nothing is taken");
    if (e.runs > std::min(e.taken, g.length + 1 - e.taken)) bad("too many runs");
    if (e.left_touch < 0 || e.left_touch > 1 || e.right_touch < 0 || e.right_touch > 1) bad("flags must be 0 or 1");
    if (e.left_touch && (!g.left_abuts || e.taken == 0)) bad("left flag set where no component abuts");
    if (e.right_touch && (!g.right_abuts || e.taken == 0)) bad("right flag set where no component abuts");
  }
}

namespace {

std::vector<GapType> gap_options(const Gap& g) {
  std::vector<GapType> opts{GapType{}};
  for (int a = 1; a <= g.length; ++a)
    for (int b = 1; b <= std::min(a, g.length + 1 - a); ++b)
      for (int l = 0; l <= (g.left_abuts ? 1 : 0); ++l)
        for (int r = 0; r <= (g.right_abuts ? 1 : 0); ++r) opts.push_back(GapType{a, b, l, r});
  return opts;
}

}  // namespace

void for_each_type(const GapDecomposition& d, const std::function<void(const TypeVector&)>& fn) {
  std::vector<std::vector<GapType>> options;
  for (const Gap& g : d.gaps()) options.push_back(gap_options(g));
  std::vector<std::size_t> idx(options.size(), 0);
  TypeVector t;
  t.entries.resize(options.size());
  for (;;) {
    for (std::size_t i = 0; i < options.size(); ++i) t.entries[i] = options[i][idx[i]];
    fn(t);
    std::size_t i = 0;
    while (i < options.size() && ++idx[i] == options[i].size()) idx[i++] = 0;
    if (i == options.size()) break;
  }
}

std::vector<TypeVector> enumerate_types(const GapDecomposition& d) {
  std::vector<TypeVector> out;
  for_each_type(d, [&](const TypeVector& t) { out.push_back(t); });
  return out;
}

BigInt placements_of_type(int length, int taken, int runs, EndMode left, EndMode right, CountingMode mode) {
  if (length < 0) return 0;
  if (taken == 0 && runs == 0) {
    if (left == EndMode::touch || right == EndMode::touch) return 0;
    return 1;
  }
  if (runs < 1 || taken < runs || taken > length) return 0;
  const BigInt run_shapes = binomial(taken - 1, runs - 1);
  if (mode == CountingMode::literal) {
    const int touches = (left == EndMode::touch) + (right == EndMode::touch);
    return run_shapes * binomial(length - taken - 1, runs - touches);
  }
  // Distribute the length - taken untaken slots over runs + 1 spacers:
  // interior spacers >= 1, end spacers fixed by their mode.
  long long slack = length - taken - (runs - 1);
  slack -= (left == EndMode::strict) + (right == EndMode::strict);
  if (slack < 0) return 0;
  const long long vars = (runs - 1) + (left != EndMode::touch) + (right != EndMode::touch);
  if (vars == 0) return slack == 0 ? run_shapes : BigInt(0);
  return run_shapes * binomial(slack + vars - 1, vars - 1);
}

EndMode left_mode(const Gap& g, const GapType& t) {
  if (!g.left_abuts) return EndMode::free;
  return t.left_touch ? EndMode::touch : EndMode::strict;
}

EndMode right_mode(const Gap& g, const GapType& t) {
  if (!g.right_abuts) return EndMode::free;
  return t.right_touch ? EndMode::touch : EndMode::strict;
}

BigInt type_multiplicity(const GapDecomposition& d, const TypeVector& t, CountingMode mode) {
  BigInt prod = 1;
  for (std::size_t i = 0; i < d.gaps().size() && prod != 0; ++i) {
    const Gap& g = d.gaps()[i];
    const GapType& e = t.entries[i];
    prod *= placements_of_type(g.length, e.taken, e.runs, left_mode(g, e), right_mode(g, e), mode);
  }
  return prod;
}

}  // namespace bpmed
