#include "bpmed/verify/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>

#include "bpmed/counting.hpp"
#include "bpmed/error.hpp"
#include "bpmed/inverse.hpp"
#include "bpmed/median.hpp"
#include "bpmed/random_stats.hpp"
#include "bpmed/segment.hpp"
#include "bpmed/verify/oracles.hpp"

namespace bpmed::acceptance {
namespace {

struct Failure {
  std::string what;
};

template <class... Parts>
std::string cat(const Parts&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

std::string list(const std::vector<Permutation>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", (" : "(") + xs[i].to_string() + ")";
  return s + "}";
}

SegmentSet from_mask(const Permutation& p, std::uint64_t m) {
  return segment_set_from_adjacencies(slots_to_adjacencies(p, m));
}

std::vector<Permutation> class_reps(int n) {
  std::vector<Permutation> out;
  for (const auto& c : enumerate_classes(n)) out.push_back(c.representative());
  return out;
}

struct Context {
  const Options& opts;
  bool full() const { return opts.level == Level::full; }
  CountingMode mode() const { return opts.force_literal ? CountingMode::literal : CountingMode::corrected; }
  std::mt19937_64 rng(int criterion) const { return std::mt19937_64(opts.seed * 1000003ULL + criterion); }
};

// 1 ------------------------------------------------------------------------
std::string fixed_examples(const Context&) {
  const auto id9 = Permutation::identity(9);
  const Permutation x{2, 7, 5, 6, 8, 3, 9, 4, 1};
  const Permutation pi{6, 8, 9, 3, 4, 1, 2, 7, 5};
  expect(bp_distance(id9, x) == 7, "d(id9, x) != 7");
  expect(bp_distance(id9, pi) == 5, "d(id9, pi) != 5");
  expect(bp_distance(pi, x) == 3, "d(pi, x) != 3");
  const auto cert = is_geodesic(pi, id9, x);
  expect(!cert.geodesic, "pi reported as a geodesic point of id9 and x");
  expect(cert.missing_common.to_string() == "{5,6}", "certificate: missing " + cert.missing_common.to_string());

  const auto id6 = Permutation::identity(6);
  const Permutation rx{4, 6, 5, 1, 3, 2};
  const Permutation ry{4, 2, 6, 5, 1, 3};
  const auto common = [](std::vector<Permutation> v) { return common_adjacencies(v).to_string(); };
  expect(common({id6, rx}) == "{2,3} {5,6}", "A_{id,x} = " + common({id6, rx}));
  expect(common({id6, ry}) == "{5,6}", "A_{id,y} = " + common({id6, ry}));
  expect(common({rx, ry}) == "{1,3} {1,5} {5,6}", "A_{x,y} = " + common({rx, ry}));
  expect(common({id6, rx, ry}) == "{5,6}", "A_{id,x,y} = " + common({id6, rx, ry}));
  const auto rest = common_adjacencies(std::vector{id6, ry}).minus(common_adjacencies(std::vector{id6, rx, ry}));
  expect(rest.empty(), "A_{id,y} \\ A_{id,x,y} = " + rest.to_string());
  const std::vector<Permutation> xs{id6, rx, ry};
  const int dt[] = {total_distance(id6, xs), total_distance(rx, xs), total_distance(ry, xs)};
  expect(dt[0] == 7 && dt[1] == 5 && dt[2] == 6, cat("d_T = (", dt[0], ",", dt[1], ",", dt[2], ")"));
  const int o = bound_O(b_decomposition(xs));
  expect(o == 0, cat("O_n(X) = ", o));
  return "n=9 distances 7/5/3, certificate {5,6}; n=6 sets, d_T=(7,5,6), O_n=0";
}

// 2 ------------------------------------------------------------------------
void h_agree(const Context& ctx, const Permutation& p, const SegmentSet& base) {
  const BigInt brute = h_count_brute(p, base, {}, ctx.opts.par);
  const BigInt ie = h_count_inclusion_exclusion(p, base);
  const BigInt type = h_count_by_type(p, base, ctx.mode());
  expect(brute == ie && ie == type, cat("p=(", p.to_string(), ") I=", base.to_string(), ": brute=", brute,
                                        " ie=", ie, " type=", type));
}

std::string h_triple(const Context& ctx) {
  std::uint64_t checked = 0;
  const int top = ctx.full() ? 5 : 4;
  for (int n = 3; n <= top; ++n)
    for (const auto& p : class_reps(n))
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << (n - 1)); ++m, ++checked) h_agree(ctx, p, from_mask(p, m));
  std::string detail = cat("n=3..", top, " all classes and I (", checked, " pairs)");
  if (ctx.full()) {
    const auto id6 = Permutation::identity(6);
    for (std::uint64_t m = 0; m < 32; ++m) h_agree(ctx, id6, from_mask(id6, m));
    detail += "; id6 all 32 I";
  }
  auto rng = ctx.rng(2);
  const int samples = ctx.full() ? 200 : 20;
  for (int t = 0; t < samples; ++t) {
    const auto p = oracle::random_permutation(7, rng);
    h_agree(ctx, p, oracle::random_sub_segment_set(p, rng));
  }
  return detail + cat("; ", samples, " random (p,I) at n=7");
}

// 3 ------------------------------------------------------------------------
std::string partition_moebius(const Context& ctx) {
  const int n = ctx.full() ? 5 : 4;
  const auto reps = class_reps(n);
  for (const auto& p : reps) {
    const auto h = h_count_table(p);
    BigInt total = 0;
    for (const auto& v : h) total += v;
    expect(total == factorial(n), cat("p=(", p.to_string(), "): sum of H = ", total));
    for (std::uint64_t im = 0; im < h.size(); ++im) {
      BigInt up = 0;
      for (std::uint64_t jm = 0; jm < h.size(); ++jm)
        if ((jm & im) == im) up += h[jm];
      const auto base = from_mask(p, im);
      const BigInt direct = pow2(base.component_count()) * factorial(n - base.adjacency_count());
      expect(up == direct, cat("p=(", p.to_string(), ") I=", base.to_string(), ": sum over J ⊇ I = ", up,
                               ", expected ", direct));
    }
  }
  return cat("all ", reps.size(), " classes of S_", n, ", all I");
}

// 4 ------------------------------------------------------------------------
std::string inverse_oracle(const Context& ctx) {
  const auto par = ctx.opts.par;
  const auto id3 = Permutation::identity(3);
  const BigInt c28 = l_inverse_count(id3, 2, 0, {}, par);
  expect(c28 == 28, cat("|L^-1_{3,2,0}(id3)| = ", c28));
  const auto prob = l_inverse_probability(id3, 2, 0, {}, par);
  expect(prob.to_string() == "7/9", "probability " + prob.to_string());
  int cases = 0;
  const int top = ctx.full() ? 4 : 3;
  for (int n = 3; n <= top; ++n)
    for (const auto& p : class_reps(n))
      for (int k = 1; k <= 2; ++k)
        for (int c = 0; c <= 2; ++c, ++cases) {
          const BigInt ref = l_inverse_count(p, k, c, {}, par);
          const BigInt brute = l_inverse_count_brute(p, k, c, {}, par);
          expect(ref == brute, cat("p=(", p.to_string(), ") k=", k, " c=", c, ": count=", ref, " brute=", brute));
          expect(ref == l_inverse_count_fast(p, k, c), cat("fast path disagrees at p=(", p.to_string(), ") k=", k));
        }
  if (ctx.full())
    for (const auto& p : class_reps(4)) {
      const BigInt ref = l_inverse_count(p, 3, 0, {}, par);
      const BigInt brute = l_inverse_count_brute(p, 3, 0, {}, par);
      expect(ref == brute, cat("p=(", p.to_string(), ") k=3 c=0: count=", ref, " brute=", brute));
      ++cases;
    }
  for (int n = 3; n <= top; ++n) {
    const auto [m, l] = restricted_v_counts(Permutation::identity(n), 2, {}, par);
    expect(m == l, cat("n=", n, " restricted to V: M=", m, " L0=", l));
  }
  return cat("28 and 7/9 at (3,2,0); ", cases, " oracle comparisons; V identity at n=3..", top);
}

// 5 ------------------------------------------------------------------------
void excess_bound(const std::vector<Permutation>& xs, Parallelism par) {
  const auto t = b_decomposition(xs);
  const int o = bound_O(t);
  for (const auto& m : medians_brute(xs, {}, par).medians) {
    const int ex = median_excess(m, xs);
    const int tight = bound_tight(m, t);
    expect(ex <= tight && tight <= o,
           cat("X=", list(xs), " median (", m.to_string(), "): excess=", ex, " tight=", tight, " O=", o));
  }
}

std::string excess_bounds_check(const Context& ctx) {
  const auto reps = class_reps(4);
  int exhaustive = 0;
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = a + 1; b < reps.size(); ++b)
      for (std::size_t c = b + 1; c < reps.size(); ++c, ++exhaustive)
        excess_bound({reps[a], reps[b], reps[c]}, ctx.opts.par);
  auto rng = ctx.rng(5);
  const std::pair<int, int> plan_full[] = {{5, 500}, {6, 500}, {7, 10000}};
  const std::pair<int, int> plan_quick[] = {{5, 50}};
  std::string detail = cat(exhaustive, " class triples at n=4");
  for (auto [n, count] : ctx.full() ? std::span<const std::pair<int, int>>(plan_full)
                                    : std::span<const std::pair<int, int>>(plan_quick)) {
    for (int t = 0; t < count; ++t)
      excess_bound({oracle::random_permutation(n, rng), oracle::random_permutation(n, rng),
                    oracle::random_permutation(n, rng)},
                   ctx.opts.par);
    detail += cat("; ", count, " at n=", n);
  }
  return detail + "; zero violations";
}

// 6 ------------------------------------------------------------------------
std::string extreme_medians(const Context& ctx) {
  struct Search {
    int n, size;
    std::size_t limit;
  };
  std::vector<Search> plan{{4, 2, 20}, {5, 2, 20}};
  if (ctx.full()) plan.push_back({6, 3, 10});
  std::string detail;
  for (auto s : plan) {
    const auto sets = oracle::max_distance_sets(s.n, s.size, s.limit);
    expect(sets.size() >= 5, cat("only ", sets.size(), " max-distance sets of size ", s.size, " at n=", s.n));
    for (const auto& xs : sets) {
      const auto check = extreme_median_check(xs, {}, ctx.opts.par);
      expect(check.equal, cat("X=", list(xs), ": ", check.covered.size(), " covered vs ", check.medians.size(),
                              " medians"));
    }
    detail += cat(detail.empty() ? "" : "; ", sets.size(), " sets of size ", s.size, " at n=", s.n);
  }
  return detail;
}

// 7 ------------------------------------------------------------------------
std::string moments(const Context& ctx) {
  const int top = ctx.full() ? 7 : 5;
  for (int n = 2; n <= top; ++n) {
    const auto ex = oracle::exhaustive_moments(n);
    expect(ex.mean == expected_common_closed(n), cat("n=", n, ": mean ", ex.mean, " vs ", expected_common_closed(n)));
    expect(n - 1 - ex.mean == expected_distance_closed(n), cat("n=", n, ": expected distance"));
    expect(ex.variance == variance_distance_closed(n),
           cat("n=", n, ": variance ", ex.variance, " vs ", variance_distance_closed(n)));
  }
  expect(variance_distance_closed(3) == BigRational(2, 9), "variance at n=3 is not 2/9");
  TrialConfig cfg;
  cfg.trials = ctx.full() ? 100000 : 10000;
  cfg.seed = ctx.opts.seed;
  std::string detail = cat("exact for n=2..", top);
  for (int n : {3, 100}) {
    cfg.n = n;
    const auto m = mc_moments(cfg, ctx.opts.par);
    expect(m.z && std::abs(*m.z) <= 4, cat("n=", n, ": mean ", m.mean, " vs ", m.closed_mean, ", z=", m.z.value_or(0)));
    char buf[64];
    std::snprintf(buf, sizeof buf, "; n=%d z=%.2f", n, *m.z);
    detail += buf;
  }
  return detail + cat(" (", cfg.trials, " trials)");
}

// 8 ------------------------------------------------------------------------
std::string tail_proxy(const Context& ctx) {
  TrialConfig cfg;
  cfg.trials = 100000;
  cfg.seed = ctx.opts.seed;
  cfg.epsilon = 1;
  double prev = 2;
  std::string detail = "tails";
  for (int n : {64, 256, 1024}) {
    cfg.n = n;
    const auto t = tail_fraction(cfg, ctx.opts.par);
    expect(t.fraction < prev, cat("tail fraction at n=", n, " is ", t.fraction, ", previous ", prev));
    prev = t.fraction;
    char buf[48];
    std::snprintf(buf, sizeof buf, " %.5f", t.fraction);
    detail += buf;
  }
  TrialConfig mc;
  mc.n = 3;
  mc.k = 2;
  mc.trials = 100000;
  mc.seed = ctx.opts.seed;
  const auto est = mc_median_probability(Permutation::identity(3), 0, mc, {}, ctx.opts.par);
  expect(est.l_probability.to_string() == "7/9", "L-probability " + est.l_probability.to_string());
  expect(est.slack >= est.max_excess, cat("observed median excess ", est.max_excess, " above slack 0"));
  expect(est.dominated, cat("median estimate ", est.estimate, " exceeds 7/9 by more than 4 SE"));
  char buf[96];
  std::snprintf(buf, sizeof buf, "; median estimate %.4f <= 7/9 + 4 SE", est.estimate);
  return detail + buf;
}

// 9 ------------------------------------------------------------------------
std::string documented_deviation(const Context& ctx) {
  const auto id5 = Permutation::identity(5);
  const auto base = parse_segment_set("[1,2]", 5);
  const BigInt brute = h_count_brute(id5, base, {}, ctx.opts.par);
  const BigInt literal = h_count_by_type(id5, base, CountingMode::literal);
  const BigInt working = h_count_by_type(id5, base, ctx.mode());
  expect(literal != brute, cat("literal count ", literal, " matches brute force ", brute));
  expect(working == brute, cat("p=(1 2 3 4 5) I=[1,2]: ", ctx.opts.force_literal ? "literal" : "corrected",
                               " type sum ", working, " vs brute force ", brute));
  return cat("id5, I=[1,2]: brute ", brute, ", corrected ", working, ", literal ", literal);
}

}  // namespace

std::optional<Level> parse_level(std::string_view text) {
  if (text == "quick") return Level::quick;
  if (text == "full") return Level::full;
  return std::nullopt;
}

std::vector<CriterionResult> run(const Options& opts, const std::function<void(const CriterionResult&)>& on_result) {
  using Check = std::string (*)(const Context&);
  const std::pair<const char*, Check> criteria[] = {
      {"fixed examples", fixed_examples},
      {"H-count triple agreement", h_triple},
      {"partition and Möbius identities", partition_moebius},
      {"inverse-count oracle", inverse_oracle},
      {"median excess bounds", excess_bounds_check},
      {"coverage criterion on max-distance sets", extreme_medians},
      {"moments", moments},
      {"tail proxy and median dominance", tail_proxy},
      {"literal type counting deviation", documented_deviation},
  };
  const Context ctx{opts};
  std::vector<CriterionResult> out;
  int id = 0;
  for (const auto& [name, check] : criteria) {
    CriterionResult r;
    r.id = ++id;
    r.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
      r.detail = check(ctx);
      r.passed = true;
    } catch (const Failure& f) {
      r.detail = f.what;
    } catch (const std::exception& e) {
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format(const CriterionResult& r) {
  char head[160];
  std::snprintf(head, sizeof head, "%s  %d  %s  (%.2f s)  ", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds);
  return head + r.detail;
}

}  // namespace bpmed::acceptance
