#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bpmed/counting.hpp"
#include "bpmed/error.hpp"
#include "bpmed/inverse.hpp"
#include "bpmed/median.hpp"
#include "bpmed/random_stats.hpp"
#include "bpmed/segment.hpp"
#include "bpmed/serialize.hpp"
#include "bpmed/verify/acceptance.hpp"

namespace bpmed::cli {

const std::vector<Subcommand>& dispatch_table() {
  static const std::vector<Subcommand> table{
      {"adj", "adjacency sets, common adjacencies, classes and segment-set consistency",
       {"adjacencies", "common_adjacencies", "reverse_of", "canonical_class", "segment_set_from_adjacencies",
        "consistent", "union_segment_sets"},
       {"parse_permutation", "read_permutation_file", "parse_segment_set"}},
      {"dist", "breakpoint distance, total distance, max-distance test",
       {"bp_distance", "total_distance", "is_max_distance_set"},
       {"parse_permutation", "read_permutation_file"}},
      {"median", "brute-force medians; median and coverage tests for --pi",
       {"medians_brute", "is_median", "coverage_criterion", "extreme_median_check"},
       {"parse_permutation", "read_permutation_file", "enumerate_classes", "to_json"}},
      {"geodesic", "is z between x and y, with certificate", {"is_geodesic"}, {"parse_permutation"}},
      {"bdecomp", "B_U blocks of a labelled input and ε̄ for --pi", {"b_decomposition", "epsilon_bar"},
       {"parse_permutation", "read_permutation_file"}},
      {"bound", "median excess and its bounds", {"median_excess", "bound_tight", "bound_O", "l_membership"},
       {"parse_permutation", "read_permutation_file"}},
      {"hcount", "H_p(I) by brute force, inclusion-exclusion or type sums",
       {"h_count_brute", "h_count_inclusion_exclusion", "h_count_by_type", "gap_decomposition", "type_of",
        "enumerate_types", "placements_of_type", "permutations_containing", "permutations_containing_by_type"},
       {"parse_permutation", "parse_segment_set", "enumerate_permutations", "factorial", "binomial"}},
      {"covers", "k-tuples of subsets of A_p covering it up to slack c", {"enumerate_cover_tuples"},
       {"parse_permutation"}},
      {"linv-count", "|L^-1_{n,k,c}(p)|", {"l_inverse_count", "l_inverse_count_brute"},
       {"parse_permutation", "enumerate_permutations", "factorial"}},
      {"linv-prob", "|L^-1_{n,k,c}(p)| / (n!)^k", {"l_inverse_probability"}, {"parse_permutation", "to_json"}},
      {"minv-brute", "k-tuples with p as a median, and the max-distance restriction",
       {"m_inverse_count_brute", "restricted_v_counts"}, {"parse_permutation", "enumerate_permutations", "factorial"}},
      {"moments", "closed-form moments of d(id, ξ)", {"expected_distance_closed", "variance_distance_closed"},
       {}},
      {"mc", "Monte-Carlo moments, or median probability with --k", {"mc_moments", "mc_median_probability"},
       {"uniform_permutation", "parse_permutation"}},
      {"tail", "tail fractions of |A_{id,ξ}|", {"tail_fraction"}, {"uniform_permutation"}},
      {"verify", "acceptance suite", {"acceptance::run"}, {}},
  };
  return table;
}

const std::vector<std::string_view>& catalog_operations() {
  static const std::vector<std::string_view> ops{
      "adjacencies", "common_adjacencies", "bp_distance", "total_distance", "reverse_of", "canonical_class",
      "is_max_distance_set", "segment_set_from_adjacencies", "consistent", "union_segment_sets",
      "gap_decomposition", "type_of", "enumerate_types", "placements_of_type", "permutations_containing",
      "permutations_containing_by_type", "h_count_brute", "h_count_inclusion_exclusion", "h_count_by_type",
      "medians_brute", "is_median", "is_geodesic", "coverage_criterion", "extreme_median_check",
      "b_decomposition", "epsilon_bar", "median_excess", "bound_tight", "bound_O", "l_membership",
      "enumerate_cover_tuples", "l_inverse_count", "l_inverse_probability", "l_inverse_count_brute",
      "m_inverse_count_brute", "restricted_v_counts", "expected_distance_closed", "variance_distance_closed",
      "mc_moments", "tail_fraction", "mc_median_probability", "acceptance::run",
  };
  return ops;
}

const std::vector<std::string_view>& shared_operations() {
  static const std::vector<std::string_view> ops{
      "parse_permutation", "read_permutation_file", "parse_segment_set", "enumerate_permutations",
      "enumerate_classes", "factorial", "binomial", "uniform_permutation", "to_json",
  };
  return ops;
}

namespace {

using nlohmann::json;

struct Args {
  std::optional<int> n, k, c, max_n, threads;
  std::optional<std::string> pi, I, J, X, method;
  std::optional<std::uint64_t> seed;
  std::uint64_t trials = 100000;
  std::uint64_t limit = 20;
  double epsilon = 1;
  std::optional<double> scale;
  bool json_out = false;
  bool csv_out = false;
  bool types = false;
  bool literal = false;
  std::string level = "quick";
  std::vector<std::string> positional;
};

class Runner {
 public:
  Runner(const Args& a, std::ostream& out, std::ostream& err) : a_(a), out_(out), err_(err) {}

  int adj();
  int dist();
  int median();
  int geodesic();
  int bdecomp();
  int bound();
  int hcount();
  int covers();
  int linv_count();
  int linv_prob();
  int minv_brute();
  int moments();
  int mc();
  int tail();
  int verify();

 private:
  Limits limits() const {
    Limits l;
    if (const char* env = std::getenv("BPMED_MAX_N"); env && *env) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (*end != '\0' || v < 1 || v > 20) throw ValidationError(std::string("BPMED_MAX_N: invalid value '") + env + "'");
      l.max_n = static_cast<int>(v);
    }
    if (a_.max_n) {
      if (*a_.max_n < 1 || *a_.max_n > 20) throw ValidationError("--max-n must lie in 1..20");
      l.max_n = *a_.max_n;
    }
    return l;
  }
  Parallelism par() const { return Parallelism{a_.threads.value_or(0)}; }

  std::vector<Permutation> inputs(std::size_t at_least = 1) const {
    std::vector<Permutation> xs;
    if (a_.X) xs = read_permutation_file(*a_.X);
    for (const auto& s : a_.positional) xs.push_back(parse_permutation(s));
    if (xs.size() < at_least)
      throw ValidationError("expected at least " + std::to_string(at_least) +
                            " permutation(s), inline or via --X");
    return xs;
  }

  /// --pi, or the identity of size --n.
  Permutation target() const {
    if (a_.pi) {
      auto p = parse_permutation(*a_.pi);
      if (a_.n && *a_.n != p.size())
        throw ValidationError("--n " + std::to_string(*a_.n) + " does not match --pi of length " +
                              std::to_string(p.size()));
      return p;
    }
    if (a_.n) {
      if (*a_.n < 1) throw ValidationError("--n must be positive");
      return Permutation::identity(*a_.n);
    }
    throw ValidationError("--pi or --n is required");
  }
  int need_n() const {
    if (!a_.n) throw ValidationError("--n is required");
    if (*a_.n < 1) throw ValidationError("--n must be positive");
    return *a_.n;
  }
  int k_or(int fallback) const {
    const int k = a_.k.value_or(fallback);
    if (k < 1) throw ValidationError("--k must be at least 1");
    return k;
  }
  int c_or(int fallback) const {
    const int c = a_.c.value_or(fallback);
    if (c < 0) throw ValidationError("--c must be nonnegative");
    return c;
  }
  TrialConfig trial_config(int n) const {
    if (a_.trials < 1) throw ValidationError("--trials must be at least 1");
    TrialConfig cfg;
    cfg.n = n;
    cfg.trials = a_.trials;
    cfg.seed = a_.seed.value_or(1);
    cfg.epsilon = a_.epsilon;
    cfg.threshold_scale = a_.scale;
    return cfg;
  }
  void emit(const json& j) const { out_ << j.dump(2) << '\n'; }
  static std::string yes(bool b) { return b ? "yes" : "no"; }

  const Args& a_;
  std::ostream& out_;
  std::ostream& err_;
};

int Runner::adj() {
  std::vector<Permutation> xs;
  if (a_.X || !a_.positional.empty()) xs = inputs();
  json j;
  for (const auto& p : xs) {
    const auto a = adjacencies(p);
    const auto cls = canonical_class(p).representative();
    if (a_.json_out) {
      j["inputs"].push_back({{"permutation", p.to_string()},
                             {"adjacencies", a.to_string()},
                             {"reverse", reverse_of(p).to_string()},
                             {"class", cls.to_string()}});
    } else if (xs.size() == 1) {
      out_ << a.to_string() << '\n';
    } else {
      out_ << p.to_string() << ": " << a.to_string() << "  class " << cls.to_string() << '\n';
    }
  }
  if (xs.size() > 1) {
    const auto common = common_adjacencies(xs);
    const auto segs = segment_set_from_adjacencies(common);
    if (a_.json_out) {
      j["common"] = common.to_string();
      j["common_segments"] = segs.to_string();
    } else {
      out_ << "common: " << common.to_string() << "  segments " << segs.to_string() << '\n';
    }
  }
  if (a_.I || a_.J) {
    if (!a_.I || !a_.J) throw ValidationError("--I and --J go together");
    const int n = xs.empty() ? need_n() : xs.front().size();
    const auto si = parse_segment_set(*a_.I, n);
    const auto sj = parse_segment_set(*a_.J, n);
    const bool ok = consistent(si, sj);
    const std::string uni = ok ? union_segment_sets(si, sj).to_string() : "";
    if (a_.json_out) {
      j["consistent"] = ok;
      if (ok) j["union"] = uni;
    } else {
      out_ << "consistent: " << yes(ok) << '\n';
      if (ok) out_ << "union: " << uni << '\n';
    }
  }
  if (xs.empty() && !a_.I) throw ValidationError("nothing to do: give permutations or --I/--J");
  if (a_.json_out) emit(j);
  return 0;
}

int Runner::dist() {
  const auto xs = inputs(a_.pi ? 1 : 2);
  json j;
  if (a_.pi) {
    const auto p = parse_permutation(*a_.pi);
    const int t = total_distance(p, xs);
    if (a_.json_out) {
      j["total_distance"] = t;
    } else {
      out_ << t << '\n';
    }
  } else if (xs.size() == 2) {
    const int d = bp_distance(xs[0], xs[1]);
    if (a_.json_out) {
      j["distance"] = d;
      j["max_distance"] = is_max_distance_set(xs);
    } else {
      out_ << d << '\n';
    }
  } else {
    json rows = json::array();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      std::vector<int> row;
      for (std::size_t k = 0; k < xs.size(); ++k) row.push_back(bp_distance(xs[i], xs[k]));
      rows.push_back(row);
      if (!a_.json_out) {
        for (std::size_t k = 0; k < row.size(); ++k) out_ << (k ? " " : "") << row[k];
        out_ << '\n';
      }
    }
    const bool maxd = is_max_distance_set(xs);
    if (a_.json_out) {
      j["distances"] = rows;
      j["max_distance"] = maxd;
    } else {
      out_ << "max-distance set: " << yes(maxd) << '\n';
    }
  }
  if (a_.json_out) emit(j);
  return 0;
}

int Runner::median() {
  const auto xs = inputs();
  const auto lim = limits();
  const auto report = medians_brute(xs, lim, par());
  json j = to_json(report);
  if (!a_.json_out) {
    out_ << "mu = " << report.mu << '\n';
    for (std::size_t i = 0; i < report.medians.size(); ++i)
      out_ << report.medians[i].to_string() << "  excess " << report.excess[i] << '\n';
  }
  if (a_.pi) {
    const auto p = parse_permutation(*a_.pi);
    const bool med = is_median(p, xs, lim);
    const bool cov = coverage_criterion(p, xs);
    if (a_.json_out) {
      j["pi"] = {{"permutation", p.to_string()}, {"median", med}, {"covered", cov}};
    } else {
      out_ << p.to_string() << ": median " << yes(med) << ", covered by the inputs " << yes(cov) << '\n';
    }
  }
  if (xs.size() >= 2 && is_max_distance_set(xs)) {
    const auto check = extreme_median_check(xs, lim, par());
    if (a_.json_out) {
      j["max_distance_check"] = check.equal;
    } else {
      out_ << "max-distance input; covered set equals median set: " << yes(check.equal) << '\n';
    }
    if (!check.equal) {
      if (a_.json_out) emit(j);
      throw VerificationError("covered set (" + std::to_string(check.covered.size()) + ") differs from median set (" +
                              std::to_string(check.medians.size()) + ")");
    }
  }
  if (a_.json_out) emit(j);
  return 0;
}

int Runner::geodesic() {
  if (a_.positional.size() != 3) throw ValidationError("geodesic takes three permutations: z x y");
  const auto z = parse_permutation(a_.positional[0]);
  const auto x = parse_permutation(a_.positional[1]);
  const auto y = parse_permutation(a_.positional[2]);
  const auto cert = is_geodesic(z, x, y);
  if (a_.json_out) {
    emit({{"geodesic", cert.geodesic},
          {"distance_identity", cert.distance_identity},
          {"missing_common", cert.missing_common.to_string()},
          {"foreign", cert.foreign.to_string()}});
    return 0;
  }
  out_ << yes(cert.geodesic) << '\n';
  if (!cert.missing_common.empty()) out_ << "common adjacencies of x and y missing from z: " << cert.missing_common.to_string() << '\n';
  if (!cert.foreign.empty()) out_ << "adjacencies of z in neither x nor y: " << cert.foreign.to_string() << '\n';
  return 0;
}

std::string label_set(LabelMask u) {
  std::string s = "{";
  for (int i = 0; i < 32; ++i)
    if (u >> i & 1) s += (s.size() > 1 ? "," : "") + std::to_string(i + 1);
  return s + "}";
}

int Runner::bdecomp() {
  const auto xs = inputs(2);
  const auto t = b_decomposition(xs);
  std::optional<Permutation> p;
  if (a_.pi) p = parse_permutation(*a_.pi);
  json j;
  j["anchor"] = t.anchor() + 1;
  j["total_distances"] = t.total_distances();
  if (!a_.json_out) {
    out_ << "total distances:";
    for (int d : t.total_distances()) out_ << ' ' << d;
    out_ << "\nanchor: x" << t.anchor() + 1 << '\n';
  }
  for (const auto& [u, b] : t.entries()) {
    json row{{"U", label_set(u)}, {"B", b.to_string()}};
    if (p) row["epsilon_bar"] = epsilon_bar(*p, t, u);
    if (a_.json_out) {
      j["blocks"].push_back(row);
    } else {
      out_ << "B" << label_set(u) << " = " << (b.empty() ? "∅" : b.to_string());
      if (p) out_ << "  ε̄ = " << row["epsilon_bar"].get<int>();
      out_ << '\n';
    }
  }
  if (a_.json_out) emit(j);
  return 0;
}

int Runner::bound() {
  const auto xs = inputs(2);
  if (!a_.pi) throw ValidationError("--pi is required");
  const auto p = parse_permutation(*a_.pi);
  const auto t = b_decomposition(xs);
  const int ex = median_excess(p, xs);
  const int tight = bound_tight(p, t);
  const int o = bound_O(t);
  json j{{"excess", ex}, {"bound_tight", tight}, {"bound_O", o}};
  if (a_.c) j["in_L"] = l_membership(p, xs, c_or(0));
  if (a_.json_out) {
    emit(j);
    return 0;
  }
  out_ << "excess = " << ex << "\nbound_tight = " << tight << "\nbound_O = " << o << '\n';
  if (a_.c) out_ << "excess <= " << *a_.c << ": " << yes(j["in_L"].get<bool>()) << '\n';
  return 0;
}

int Runner::hcount() {
  const auto p = target();
  const int n = p.size();
  const auto base = a_.I ? parse_segment_set(*a_.I, n) : SegmentSet::empty(n);
  const auto mode = a_.literal ? CountingMode::literal : CountingMode::corrected;
  const std::string method = a_.method.value_or("type");
  const auto lim = limits();
  json j;

  if (a_.types) {
    const auto d = gap_decomposition(p, base);
    json gaps = json::array();
    for (std::size_t i = 0; i < d.gaps().size(); ++i) {
      const auto& g = d.gaps()[i];
      gaps.push_back({{"length", g.length}, {"left_abuts", g.left_abuts}, {"right_abuts", g.right_abuts}});
      if (!a_.json_out)
        out_ << "gap " << i << ": length " << g.length << (g.left_abuts ? ", abuts left" : "")
             << (g.right_abuts ? ", abuts right" : "") << '\n';
    }
    j["gaps"] = gaps;
    for (const auto& t : enumerate_types(d)) {
      BigInt mult = 1;
      for (std::size_t i = 0; i < t.entries.size(); ++i) {
        const auto& g = d.gaps()[i];
        const auto& e = t.entries[i];
        if (e.taken > 0)
          mult *= placements_of_type(g.length, e.taken, e.runs, left_mode(g, e), right_mode(g, e), mode);
      }
      const BigInt contain = permutations_containing_by_type(d, t);
      if (a_.json_out) {
        j["types"].push_back({{"type", t.to_string()}, {"multiplicity", mult.str()}, {"containing", contain.str()}});
      } else {
        out_ << t.to_string() << "  multiplicity " << mult << "  containing " << contain << '\n';
      }
    }
  }
  if (a_.J) {
    const auto sj = parse_segment_set(*a_.J, n);
    const auto t = type_of(p, base, sj);
    const BigInt r = permutations_containing(sj, n);
    if (a_.json_out) {
      j["J"] = {{"type", t.to_string()}, {"containing", r.str()}};
    } else {
      out_ << "J = " << sj.to_string() << ": type " << t.to_string() << ", containing " << r << '\n';
    }
  }

  BigInt value;
  if (method == "brute") {
    value = h_count_brute(p, base, lim, par());
  } else if (method == "ie") {
    value = h_count_inclusion_exclusion(p, base, lim);
  } else if (method == "type") {
    value = h_count_by_type(p, base, mode);
  } else if (method == "all") {
    const BigInt b = h_count_brute(p, base, lim, par());
    const BigInt ie = h_count_inclusion_exclusion(p, base, lim);
    const BigInt ty = h_count_by_type(p, base, mode);
    const bool agree = b == ie && ie == ty;
    j["brute"] = b.str();
    j["ie"] = ie.str();
    j["type"] = ty.str();
    j["agree"] = agree;
    if (!agree) {
      err_ << "disagreement at p=(" << p.to_string() << ") I=" << base.to_string() << ": brute=" << b
           << " ie=" << ie << " type=" << ty << '\n';
      for (const auto& term : h_count_type_terms(p, base, mode))
        err_ << "  " << term.type.to_string() << "  multiplicity " << term.multiplicity << "  containing "
             << term.containing << "  term " << term.signed_term << '\n';
      if (a_.json_out) emit(j);
      return 4;
    }
    value = b;
    if (!a_.json_out) out_ << b << " (brute=" << b << " ie=" << ie << " type=" << ty << ": agree)\n";
  } else {
    throw ValidationError("--method must be brute, ie, type or all (got '" + method + "')");
  }
  if (a_.json_out) {
    j["count"] = value.str();
    emit(j);
  } else if (method != "all") {
    out_ << value << '\n';
  }
  return 0;
}

int Runner::covers() {
  const auto p = target();
  const int k = k_or(1);
  const int c = c_or(0);
  const auto lim = limits();
  const std::uint64_t total = count_cover_tuples(p, k, c, lim);
  json j{{"count", std::to_string(total)}};
  std::uint64_t shown = 0;
  if (a_.limit > 0) {
    for (const auto& tuple : enumerate_cover_tuples(p, k, c, lim)) {
      if (shown++ == a_.limit) break;
      std::string row = "(";
      for (std::size_t i = 0; i < tuple.size(); ++i) row += (i ? ", " : "") + tuple[i].to_string();
      row += ")";
      if (a_.json_out) {
        j["tuples"].push_back(row);
      } else {
        out_ << row << '\n';
      }
    }
  }
  if (a_.json_out) {
    emit(j);
  } else {
    out_ << total << " tuples" << (a_.limit > 0 && total > a_.limit ? " (first " + std::to_string(a_.limit) + " shown)" : "") << '\n';
  }
  return 0;
}

int Runner::linv_count() {
  const auto p = target();
  const int k = k_or(1);
  const int c = c_or(0);
  const auto lim = limits();
  const std::string method = a_.method.value_or("reference");
  BigInt value;
  if (method == "reference") {
    value = l_inverse_count(p, k, c, lim, par());
  } else if (method == "fast") {
    value = l_inverse_count_fast(p, k, c, lim);
  } else if (method == "brute") {
    value = l_inverse_count_brute(p, k, c, lim, par());
  } else if (method == "all") {
    const BigInt ref = l_inverse_count(p, k, c, lim, par());
    const BigInt fast = l_inverse_count_fast(p, k, c, lim);
    const BigInt brute = l_inverse_count_brute(p, k, c, lim, par());
    if (ref != fast || ref != brute) {
      err_ << "disagreement at p=(" << p.to_string() << ") k=" << k << " c=" << c << ": reference=" << ref
           << " fast=" << fast << " brute=" << brute << '\n';
      return 4;
    }
    value = ref;
  } else {
    throw ValidationError("--method must be reference, fast, brute or all (got '" + method + "')");
  }
  if (a_.json_out) {
    emit(inverse_report_json(value, ExactProbability(value, pow(factorial(p.size()), static_cast<unsigned>(k))),
                             p.size(), k, c));
  } else {
    out_ << value << '\n';
  }
  return 0;
}

int Runner::linv_prob() {
  const auto p = target();
  const int k = k_or(1);
  const int c = c_or(0);
  const auto lim = limits();
  const auto prob = l_inverse_probability(p, k, c, lim, par());
  if (a_.json_out) {
    emit(inverse_report_json(prob.num() * (pow(factorial(p.size()), static_cast<unsigned>(k)) / prob.den()), prob,
                             p.size(), k, c));
  } else {
    out_ << prob.to_string() << '\n';
  }
  return 0;
}

int Runner::minv_brute() {
  const auto p = target();
  const int k = k_or(1);
  const auto lim = limits();
  const BigInt m = m_inverse_count_brute(p, k, lim, par());
  const auto [vm, vl] = restricted_v_counts(p, k, lim, par());
  const ExactProbability prob(m, pow(factorial(p.size()), static_cast<unsigned>(k)));
  if (a_.json_out) {
    emit({{"count", m.str()},
          {"probability", to_json(prob)},
          {"restricted_v", {{"medians", vm.str()}, {"l0", vl.str()}}}});
  } else {
    out_ << m << '\n' << "probability " << prob.to_string() << '\n'
         << "restricted to max-distance tuples: medians " << vm << ", L_0 " << vl << '\n';
  }
  if (vm != vl) {
    err_ << "restricted counts differ: " << vm << " vs " << vl << '\n';
    return 4;
  }
  return 0;
}

int Runner::moments() {
  const int n = need_n();
  const auto m = moments_closed(n);
  if (variance_distance_closed(n) != variance_distance_expanded(n))
    throw VerificationError("variance forms disagree at n=" + std::to_string(n));
  if (a_.csv_out) {
    out_ << csv_header() << '\n';
    const auto row = [&](const char* name, const BigRational& v) {
      const double d = static_cast<double>(v);
      out_ << csv_row(n, name, d, std::nullopt, d, std::nullopt) << '\n';
    };
    row("expected_common", m.expected_common);
    row("expected_distance", m.expected_distance);
    row("variance", m.variance);
  } else if (a_.json_out) {
    const auto s = [](const BigRational& v) {
      std::ostringstream os;
      os << v;
      return os.str();
    };
    emit({{"n", n},
          {"expected_common", s(m.expected_common)},
          {"expected_distance", s(m.expected_distance)},
          {"variance", s(m.variance)}});
  } else {
    out_ << "E|A| = " << m.expected_common << "\nE d = " << m.expected_distance << "\nvar = " << m.variance << '\n';
  }
  return 0;
}

int Runner::mc() {
  if (a_.k) {
    const auto p = target();
    auto cfg = trial_config(p.size());
    cfg.k = k_or(1);
    const auto est = mc_median_probability(p, c_or(0), cfg, limits(), par());
    if (a_.csv_out) {
      out_ << csv_header() << '\n'
           << csv_row(p.size(), "median k=" + std::to_string(cfg.k) + " c=" + std::to_string(est.slack), est.estimate,
                      est.std_error, est.l_probability.to_double(), std::nullopt)
           << '\n';
    } else if (a_.json_out) {
      emit({{"trials", est.trials},
            {"hits", est.hits},
            {"estimate", est.estimate},
            {"stderr", est.std_error},
            {"max_excess", est.max_excess},
            {"slack", est.slack},
            {"l_probability", to_json(est.l_probability)},
            {"dominated", est.dominated}});
    } else {
      out_ << "estimate " << est.estimate << " ± " << est.std_error << " (" << est.hits << "/" << est.trials << ")\n"
           << "L-probability at c=" << est.slack << ": " << est.l_probability.to_string() << '\n'
           << "max median excess " << est.max_excess << ", dominated " << yes(est.dominated) << '\n';
    }
    return 0;
  }
  const auto m = mc_moments(trial_config(need_n()), par());
  if (a_.csv_out) {
    out_ << csv_header() << '\n'
         << csv_row(need_n(), "mean", m.mean, m.std_error, m.closed_mean, m.z) << '\n'
         << csv_row(need_n(), "variance", m.variance, std::nullopt, m.closed_variance, std::nullopt) << '\n';
  } else if (a_.json_out) {
    json j{{"trials", m.trials},
           {"mean", m.mean},
           {"variance", m.variance},
           {"closed_mean", m.closed_mean},
           {"closed_variance", m.closed_variance},
           {"histogram", m.histogram}};
    j["stderr"] = m.std_error ? json(*m.std_error) : json(nullptr);
    j["z"] = m.z ? json(*m.z) : json(nullptr);
    emit(j);
  } else {
    out_ << "mean " << m.mean;
    if (m.std_error) out_ << " ± " << *m.std_error;
    out_ << " (closed " << m.closed_mean << ")";
    if (m.z) out_ << "  z = " << *m.z;
    out_ << "\nvariance " << m.variance << " (closed " << m.closed_variance << ")\n";
  }
  return 0;
}

int Runner::tail() {
  std::vector<int> ns;
  for (const auto& s : a_.positional) {
    try {
      std::size_t used = 0;
      ns.push_back(std::stoi(s, &used));
      if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::logic_error&) {
      throw ValidationError("tail: '" + s + "' is not an integer");
    }
  }
  if (ns.empty()) ns.push_back(need_n());
  json rows = json::array();
  if (a_.csv_out) out_ << csv_header() << '\n';
  for (int n : ns) {
    if (n < 2) throw ValidationError("tail: n must be at least 2");
    const auto t = tail_fraction(trial_config(n), par());
    if (a_.csv_out) {
      out_ << csv_row(n, "tail", t.fraction, t.std_error, t.chebyshev_bound, std::nullopt) << '\n';
    } else if (a_.json_out) {
      rows.push_back({{"n", n},
                      {"threshold", t.threshold},
                      {"hits", t.hits},
                      {"trials", t.trials},
                      {"fraction", t.fraction},
                      {"stderr", t.std_error},
                      {"chebyshev_bound", t.chebyshev_bound}});
    } else {
      out_ << "n=" << n << " threshold " << t.threshold << " fraction " << t.fraction << " ± " << t.std_error
           << " (bound " << t.chebyshev_bound << ")\n";
    }
  }
  if (a_.json_out) emit(rows);
  return 0;
}

int Runner::verify() {
  const auto level = acceptance::parse_level(a_.level);
  if (!level) throw ValidationError("--level must be quick or full (got '" + a_.level + "')");
  acceptance::Options opts;
  opts.level = *level;
  opts.force_literal = a_.literal;
  opts.par = par();
  if (a_.seed) opts.seed = *a_.seed;
  json rows = json::array();
  int failed = 0;
  acceptance::run(opts, [&](const acceptance::CriterionResult& r) {
    failed += !r.passed;
    if (a_.json_out) {
      rows.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    } else {
      out_ << acceptance::format(r) << std::endl;
    }
  });
  if (a_.json_out) emit(rows);
  return failed ? 4 : 0;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  Args a;
  CLI::App app{"Breakpoint medians and median inverses of permutations"};
  app.name(argv.empty() ? "bpmed" : argv.front());
  app.fallthrough();
  app.require_subcommand(1);

  app.add_option("--n", a.n, "permutation length");
  app.add_option("--k", a.k, "tuple arity");
  app.add_option("--c", a.c, "slack: uncovered adjacencies allowed");
  app.add_option("--pi", a.pi, "target permutation, e.g. \"1 2 3\"");
  app.add_option("--I", a.I, "segment set, e.g. \"[1,2,3] [5,6]\"");
  app.add_option("--J", a.J, "second segment set");
  app.add_option("--X", a.X, "file of permutations, one per line")->check(CLI::ExistingFile);
  app.add_option("--method", a.method, "algorithm choice (see subcommand)");
  app.add_option("--seed", a.seed, "64-bit seed");
  app.add_option("--trials", a.trials, "Monte-Carlo trials");
  app.add_option("--threads", a.threads, "OpenMP threads (0 = runtime default)");
  app.add_option("--max-n", a.max_n, "largest n for S_n scans (also BPMED_MAX_N)");
  app.add_option("--epsilon", a.epsilon, "tail threshold factor");
  app.add_option("--scale", a.scale, "a_n for the tail threshold (default log2 n)");
  app.add_option("--limit", a.limit, "tuples to list in covers");
  app.add_option("--level", a.level, "verify level: quick or full");
  app.add_flag("--literal,--force-literal", a.literal, "uncorrected placement formula for type sums");
  app.add_flag("--types", a.types, "hcount: list the gap decomposition and types");
  auto* json_flag = app.add_flag("--json", a.json_out, "JSON output");
  app.add_flag("--csv", a.csv_out, "CSV output")->excludes(json_flag);

  Runner runner(a, out, err);
  using Handler = int (Runner::*)();
  const std::pair<std::string_view, Handler> handlers[] = {
      {"adj", &Runner::adj},         {"dist", &Runner::dist},         {"median", &Runner::median},
      {"geodesic", &Runner::geodesic}, {"bdecomp", &Runner::bdecomp}, {"bound", &Runner::bound},
      {"hcount", &Runner::hcount},   {"covers", &Runner::covers},     {"linv-count", &Runner::linv_count},
      {"linv-prob", &Runner::linv_prob}, {"minv-brute", &Runner::minv_brute}, {"moments", &Runner::moments},
      {"mc", &Runner::mc},           {"tail", &Runner::tail},         {"verify", &Runner::verify},
  };
  std::vector<std::pair<CLI::App*, Handler>> subs;
  for (const auto& cmd : dispatch_table()) {
    auto* sub = app.add_subcommand(std::string(cmd.name), std::string(cmd.summary));
    sub->add_option("inputs", a.positional, "permutations (or n values for tail)");
    const auto it = std::find_if(std::begin(handlers), std::end(handlers),
                                 [&](const auto& h) { return h.first == cmd.name; });
    subs.emplace_back(sub, it->second);
  }

  try {
    std::vector<std::string> rev(argv.rbegin(), argv.rend() - (argv.empty() ? 0 : 1));
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    for (const auto& [sub, handler] : subs)
      if (sub->parsed()) return (runner.*handler)();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace bpmed::cli
