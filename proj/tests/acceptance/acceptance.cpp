// Acceptance run: prints one PASS/FAIL line per criterion and exits non-zero
// when any criterion fails. Pass criterion ids (e.g. "AC-3 AC-6") to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ecd/analysis.hpp"
#include "ecd/benchgen.hpp"
#include "ecd/endisco.hpp"
#include "ecd/ensemble.hpp"
#include "ecd/medoc.hpp"
#include "ecd/metrics.hpp"
#include "ecd/selection.hpp"
#include "oracles.hpp"
#include "planted.hpp"
#include "toy.hpp"

namespace {

using namespace ecd;

// Pinned tolerances and limits.
constexpr double kToyTolerance = 1e-12;
constexpr double kRowSumTolerance = 1e-9;
constexpr double kOracleTolerance = 1e-9;
constexpr double kReductionTolerance = 1e-6;
constexpr double kThresholdTolerance = 1e-12;
constexpr double kBaseSlack = 0.02;
constexpr double kAbsoluteFloor = 0.90;
constexpr std::size_t kStrictWinsNeeded = 7;
constexpr double kSelectionSlack = 0.05;
constexpr double kSelectionFraction = 0.6;

constexpr double kAc1Seconds = 1.0;
constexpr double kAc2Seconds = 1.0;
constexpr double kAc3Seconds = 300.0;
constexpr double kAc5Seconds = 30.0;
constexpr double kAc7Seconds = 600.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome toy_regression() {
  const auto t = testing::load_toy();
  std::vector<VertexSet> mc1{t.set("ABCD"), t.set("ABC"), t.set("ABC")};
  const std::vector<std::pair<std::string, std::pair<double, double>>> checks{
      {"RCC(D,C12)", {involvement_rcc(t.graph, t.id('D'), t.set("EFG")), 0.75}},
      {"IDC(D,C12)", {involvement_idc(t.graph, t.id('D'), t.set("EFG")), 0.5}},
      {"JC(C11,C21)", {match_jc(t.set("ABCD"), t.set("ABC")), 0.75}},
      {"AP(C11,C21)", {match_ap(t.set("ABCD"), t.set("ABC")), 0.875}},
      {"F(A,MC1)", {assoc_simple(t.id('A'), mc1), 1.0}},
      {"Fw(A,MC1)", {assoc_weighted(t.id('A'), mc1), 0.75}},
  };
  Outcome o{true, ""};
  for (const auto& [name, v] : checks) {
    const bool ok = std::abs(v.first - v.second) <= kToyTolerance;
    o.pass = o.pass && ok;
    o.detail += fmt("%s=%.15g%s ", name.c_str(), v.first, ok ? "" : "(!)");
  }
  return o;
}

Outcome posterior_algebra() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> width(1, 64);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_sum = 0.0, smallest = 1.0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> f(width(rng));
    for (auto& x : f) x = u(rng) < 0.1 ? 1.0 : u(rng);  // include saturated distances
    const auto p = posterior(f);
    double s = 0.0;
    for (double x : p) {
      s += x;
      smallest = std::min(smallest, x);
    }
    worst_sum = std::max(worst_sum, std::abs(s - 1.0));
  }
  return {worst_sum <= kRowSumTolerance && smallest > 0.0,
          fmt("max |row sum - 1| = %.2e, min entry = %.3e over 1000 profiles", worst_sum, smallest)};
}

// Desk-scale comparison shared by AC-3 and AC-4.
struct DeskRun {
  std::map<std::string, double> base_mean;  // per detector, averaged over seeds and orderings
  std::vector<double> base_best_per_seed;   // best detector mean NMI in each seed
  std::vector<double> endisco, medoc;       // per seed
};

DeskRun desk_run(double mu) {
  constexpr std::size_t kSeeds = 10, kOrderings = 10, kN = 500;
  const auto detectors = default_detectors();
  DeskRun r;
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    const auto bench = gen_disjoint(testing::desk_config(kN, mu, seed));
    const auto set = generate_base_solutions(bench.graph, detectors, kOrderings, seed);
    std::map<std::string, std::pair<double, double>> per;
    std::vector<Partition> bases;
    for (const auto& s : set.solutions) {
      auto& acc = per[s.algorithm];
      acc.first += nmi(s.partition, bench.truth);
      acc.second += 1.0;
      bases.push_back(s.partition);
    }
    double best = 0.0;
    for (const auto& [name, acc] : per) {
      r.base_mean[name] += acc.first / acc.second / kSeeds;
      best = std::max(best, acc.first / acc.second);
    }
    r.base_best_per_seed.push_back(best);
    r.endisco.push_back(nmi(endisco_from_solutions(bench.graph, bases, seed), bench.truth));
    r.medoc.push_back(nmi(medoc_from_solutions(bench.graph, bases, seed).disjoint, bench.truth));
  }
  return r;
}

double mean(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return x.empty() ? 0.0 : s / static_cast<double>(x.size());
}

std::string base_summary(const DeskRun& r) {
  std::string s = "bases[";
  for (const auto& [name, m] : r.base_mean) s += fmt("%s %.4f ", name.c_str(), m);
  s.back() = ']';
  return s;
}

double best_base(const DeskRun& r) {
  double b = 0.0;
  for (const auto& [name, m] : r.base_mean) b = std::max(b, m);
  return b;
}

Outcome ensemble_vs_bases() {
  const auto r = desk_run(0.1);
  const double need = std::max(best_base(r) - kBaseSlack, kAbsoluteFloor);
  const double e = mean(r.endisco), m = mean(r.medoc);
  return {e >= need && m >= need,
          fmt("EnDisCo %.4f, MeDOC++ %.4f, need >= %.4f; %s", e, m, need, base_summary(r).c_str())};
}

Outcome degradation() {
  const auto r = desk_run(0.4);
  const double best = best_base(r);
  auto wins = [&](const std::vector<double>& x) {
    std::size_t w = 0;
    for (std::size_t i = 0; i < x.size(); ++i) w += x[i] > r.base_best_per_seed[i];
    return w;
  };
  const double e = mean(r.endisco), m = mean(r.medoc);
  const auto we = wins(r.endisco), wm = wins(r.medoc);
  const bool pass = e >= best && m >= best && we >= kStrictWinsNeeded && wm >= kStrictWinsNeeded;
  return {pass, fmt("EnDisCo %.4f (%zu/10 strict wins), MeDOC++ %.4f (%zu/10), best base %.4f; %s", e, we, m, wm,
                    best, base_summary(r).c_str())};
}

Outcome metric_oracles() {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::size_t> size(4, 30);
  std::uniform_int_distribution<std::uint32_t> k(1, 6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double err_nmi = 0, err_ari = 0, err_omega = 0, err_onmi = 0, err_fri = 0;
  double red_omega = 0, red_onmi = 0;
  bool identity_exact = true;
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = size(rng);
    const auto x = oracle::random_labels(n, k(rng), rng), y = oracle::random_labels(n, k(rng), rng);
    const Partition a(x), b(y);
    err_nmi = std::max(err_nmi, std::abs(nmi(a, b) - oracle::nmi(x, y)));
    err_ari = std::max(err_ari, std::abs(ari(a, b) - oracle::ari(x, y)));
    const auto ca = Cover::from_partition(a), cb = Cover::from_partition(b);
    red_omega = std::max(red_omega, std::abs(omega(ca, cb) - ari(a, b)));
    red_onmi = std::max(red_onmi, std::abs(onmi(ca, cb) - nmi(a, b)));

    const auto cx = oracle::random_cover(n, k(rng) + 1, 3, rng), cy = oracle::random_cover(n, k(rng) + 1, 3, rng);
    const Cover covx(n, cx), covy(n, cy);
    err_omega = std::max(err_omega, std::abs(omega(covx, covy) - oracle::omega(n, cx, cy)));
    err_onmi = std::max(err_onmi, std::abs(onmi(covx, covy) - oracle::onmi(n, cx, cy)));

    const std::uint32_t width = k(rng) + 1;
    auto fuzzy = [&] {
      std::vector<FuzzyAssignment::Row> rows(n);
      std::vector<std::vector<double>> dense(n, std::vector<double>(width, 0.0));
      for (std::size_t v = 0; v < n; ++v) {
        double s = 0.0;
        for (std::uint32_t c = 0; c < width; ++c) s += dense[v][c] = u(rng) < 0.6 ? u(rng) + 1e-3 : 0.0;
        if (s == 0.0) s = dense[v][0] = 1.0;
        for (std::uint32_t c = 0; c < width; ++c) {
          dense[v][c] /= s;
          if (dense[v][c] > 0.0) rows[v].emplace_back(c, dense[v][c]);
        }
      }
      return std::make_pair(FuzzyAssignment(width, rows), dense);
    };
    const auto [fa, da] = fuzzy();
    const auto [fb, db] = fuzzy();
    err_fri = std::max(err_fri, std::abs(fuzzy_rand(fa, fb) - oracle::fuzzy_rand(da, db)));

    identity_exact = identity_exact && nmi(a, a) == 1.0 && ari(a, a) == 1.0 && omega(covx, covx) == 1.0 &&
                     onmi(covx, covx) == 1.0 && fuzzy_rand(fa, fa) == 1.0;
  }
  const bool oracles_ok = std::max({err_nmi, err_ari, err_omega, err_onmi, err_fri}) <= kOracleTolerance;
  const bool reductions_ok = red_omega <= kReductionTolerance && red_onmi <= kReductionTolerance;
  return {oracles_ok && reductions_ok && identity_exact,
          fmt("oracle err nmi %.1e ari %.1e omega %.1e onmi %.1e fri %.1e; |omega-ari| %.1e, |onmi-nmi| %.1e; "
              "identity exact %s",
              err_nmi, err_ari, err_omega, err_onmi, err_fri, red_omega, red_onmi, identity_exact ? "yes" : "no")};
}

Outcome threshold_formula() {
  const double want[3] = {0.5, std::exp(0.25) / (1.0 + std::exp(0.25)), std::exp(1.0) / (1.0 + std::exp(1.0))};
  const double as[3] = {0.0, 0.5, 1.0};
  double err = 0.0;
  for (int i = 0; i < 3; ++i) err = std::max(err, std::abs(membership_probability(as[i]) - want[i]));

  const auto t = testing::load_toy();
  const auto mg = build_meta_graph(t.bases, Matching::kJaccard);
  const auto meta = meta_cluster(mg, detector_by_name("louvain"), 1);
  const auto a = association_matrix(7, mg, meta, Association::kSimple);
  const auto cover = auto_threshold_cover(a, t.graph);
  bool d_kept_out = true;
  std::size_t dc1_size = 0;
  for (const auto& c : cover.communities()) {
    if (std::binary_search(c.begin(), c.end(), t.id('A'))) {
      dc1_size = c.size();
      d_kept_out = d_kept_out && !std::binary_search(c.begin(), c.end(), t.id('D'));
    }
  }
  return {err <= kThresholdTolerance && d_kept_out && dc1_size == 3,
          fmt("max |P - closed form| = %.1e; D %s DC1 (|DC1| = %zu)", err, d_kept_out ? "not in" : "in", dc1_size)};
}

Outcome selection_efficiency() {
  constexpr std::size_t kSeeds = 5, kOrderings = 10;
  const auto detectors = default_detectors();
  double full = 0.0, vrrw = 0.0, combined = 0.0;
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    const auto bench = gen_disjoint(testing::desk_config(300, 0.3, seed));
    const auto set = generate_base_solutions(bench.graph, detectors, kOrderings, seed);
    std::vector<Partition> all;
    for (const auto& s : set.solutions) all.push_back(s.partition);
    const auto s = static_cast<std::size_t>(std::llround(kSelectionFraction * static_cast<double>(all.size())));
    const auto sb = score_solutions(all);
    auto run = [&](const std::vector<std::size_t>& pick) {
      std::vector<Partition> sub;
      for (auto i : pick) sub.push_back(all[i]);
      return nmi(medoc_from_solutions(bench.graph, sub, seed).disjoint, bench.truth);
    };
    full += nmi(medoc_from_solutions(bench.graph, all, seed).disjoint, bench.truth) / kSeeds;
    vrrw += run(select_vrrw(sb, s).selected) / kSeeds;
    combined += run(select_combined(sb, s, 0.5)) / kSeeds;
  }
  const bool pass = vrrw >= full - kSelectionSlack && combined >= full - kSelectionSlack;
  return {pass, fmt("MeDOC++ NMI full %.4f, VRRW(60%%) %.4f (%+.4f), combined(60%%) %.4f (%+.4f) over %zu seeds; "
                    "a selection may lose at most %.2f",
                    full, vrrw, vrrw - full, combined, combined - full, kSeeds, kSelectionSlack)};
}

Outcome degeneracy() {
  constexpr std::size_t kRuns = 20, kOrderings = 10;
  const auto bench = gen_disjoint(testing::desk_config(300, 0.3, 1));
  const auto detectors = default_detectors();
  std::vector<DegeneracySubject> subjects;
  for (const auto& d : detectors) subjects.push_back(degeneracy_subject(d));
  subjects.push_back({"endisco", [&](const Graph& g, std::size_t, std::uint64_t seed) {
                        return endisco(g, detectors, kOrderings, seed);
                      }});
  subjects.push_back({"medoc", [&](const Graph& g, std::size_t, std::uint64_t seed) {
                        return medoc(g, detectors, kOrderings, seed).disjoint;
                      }});
  const auto rows = degeneracy_report(bench.graph, subjects, kRuns, 11);
  double base_min_iqr = 1e300;
  std::string detail;
  for (const auto& r : rows) {
    detail += fmt("%s IQR %.4f (median %.4f) ", r.name.c_str(), r.iqr(), r.median);
    if (r.name != "endisco" && r.name != "medoc") base_min_iqr = std::min(base_min_iqr, r.iqr());
  }
  const bool pass = rows[4].iqr() < base_min_iqr && rows[5].iqr() < base_min_iqr;
  return {pass, detail};
}

Outcome runtime() {
  constexpr std::size_t kOrderings = 10, kRepeats = 3;
  const auto bench = gen_disjoint(testing::desk_config(1000, 0.3, 1));
  const auto detectors = default_detectors();
  auto median_theta = [&](EnsembleMethod m) {
    std::vector<double> th;
    for (std::size_t i = 0; i < kRepeats; ++i) th.push_back(runtime_ratio(bench.graph, m, detectors, kOrderings, 3).theta);
    std::sort(th.begin(), th.end());
    return th[kRepeats / 2];
  };
  const double te = median_theta(EnsembleMethod::kEndisco);
  const double tm = median_theta(EnsembleMethod::kMedoc);
  const double tc = median_theta(EnsembleMethod::kConsensus);
  return {te < tc && tm < tc, fmt("theta EnDisCo %.3f, MeDOC++ %.3f, consensus %.3f (median of 3)", te, tm, tc)};
}

Outcome fuzzy_pipeline() {
  constexpr std::size_t kSeeds = 10, kOrderings = 10;
  const auto detectors = default_detectors();
  double fuzzy = 0.0, crisp = 0.0;
  std::size_t wins = 0;
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    auto cfg = testing::desk_config(300, 0.3, seed);
    cfg.overlap_fraction = 0.1;
    const auto bench = gen_fuzzy(cfg);
    const auto r = medoc(bench.graph, detectors, kOrderings, seed);
    const double f = fuzzy_rand(r.fuzzy, bench.truth);
    const double c = fuzzy_rand(FuzzyAssignment::from_partition(r.disjoint), bench.truth);
    fuzzy += f / kSeeds;
    crisp += c / kSeeds;
    wins += f >= c;
  }
  return {fuzzy >= crisp, fmt("mean FRI fuzzy %.4f vs one-hot argmax %.4f (fuzzy >= one-hot in %zu/10 seeds)", fuzzy,
                              crisp, wins)};
}

struct Criterion {
  const char* id;
  const char* title;
  std::function<Outcome()> run;
  double time_limit;  // seconds; 0 = none
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"AC-1", "toy regression", toy_regression, kAc1Seconds},
      {"AC-2", "posterior algebra", posterior_algebra, kAc2Seconds},
      {"AC-3", "ensemble vs bases, mu=0.1", ensemble_vs_bases, kAc3Seconds},
      {"AC-4", "degradation robustness, mu=0.4", degradation, 0.0},
      {"AC-5", "metric oracles", metric_oracles, kAc5Seconds},
      {"AC-6", "threshold formula", threshold_formula, 0.0},
      {"AC-7", "selection efficiency", selection_efficiency, kAc7Seconds},
      {"AC-8", "degeneracy", degeneracy, 0.0},
      {"AC-9", "runtime ratio", runtime, 0.0},
      {"AC-10", "fuzzy pipeline", fuzzy_pipeline, 0.0},
  };
  std::set<std::string> only(argv + 1, argv + argc);
  int failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.time_limit <= 0.0 || secs < c.time_limit;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("%-5s %s  %s: %s [%.2f s%s]\n", c.id, pass ? "PASS" : "FAIL", c.title, o.detail.c_str(), secs,
                in_time ? "" : ", over time limit");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
