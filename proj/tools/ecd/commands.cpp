#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "ecd/analysis.hpp"
#include "ecd/benchgen.hpp"
#include "ecd/endisco.hpp"
#include "ecd/ensemble.hpp"
#include "ecd/error.hpp"
#include "ecd/io.hpp"
#include "ecd/medoc.hpp"
#include "ecd/metrics.hpp"
#include "ecd/selection.hpp"
#include "run_manifest.hpp"

namespace ecd::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string part; std::getline(in, part, sep);)
    if (!part.empty()) out.push_back(part);
  return out;
}

fs::path manifest_path_for(const Globals& g, const fs::path& primary_output) {
  if (!g.run_manifest.empty()) return g.run_manifest;
  if (primary_output.empty()) return {};
  return fs::path(primary_output.string() + ".run.json");
}

void finish(const Globals& g, RunManifest& m, const fs::path& primary_output) {
  const auto path = manifest_path_for(g, primary_output);
  if (!path.empty()) m.save(path);
}

struct LoadedGraph {
  Graph graph;
  SymbolTable table;
};

LoadedGraph load_graph(const fs::path& path, RunManifest& m) {
  m.add_input(path);
  auto file = m.stage("load_graph", [&] { return load_edge_list(path); });
  m.set_result("graph", {{"vertices", file.graph.num_vertices()},
                         {"edges", file.graph.num_edges()},
                         {"self_loops_dropped", file.self_loops_dropped},
                         {"duplicates_dropped", file.duplicates_dropped}});
  auto table = SymbolTable::from_graph(file.graph);
  return {std::move(file.graph), std::move(table)};
}

/// Where the base partitions of an ensemble come from: a saved solution set,
/// or fresh detector runs.
struct BaseSource {
  std::string bases;  // manifest path
  std::string algos = "louvain,lpa,cnm,walktrap";
  std::size_t k = 0;  // 0: default ordering count for the graph size
  unsigned walk_length = kWalktrapDefaultLength;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--bases", bases, "Solution-set manifest to reuse instead of running detectors");
    cmd->add_option("--algos", algos, "Comma-separated base detectors")->capture_default_str();
    cmd->add_option("--k", k, "Orderings per detector (0 = min(ceil(0.2|V|), 50))")->capture_default_str();
    cmd->add_option("--walk-length", walk_length, "Walktrap random-walk length")->capture_default_str();
  }

  std::vector<BaseDetector> detectors() const {
    std::vector<BaseDetector> out;
    for (const auto& name : split(algos, ',')) out.push_back(detector_by_name(name, walk_length));
    if (out.empty()) throw InvalidArgument("--algos names no detector");
    return out;
  }

  std::size_t orderings(const Graph& g) const { return k > 0 ? k : default_ordering_count(g.num_vertices()); }

  void echo(RunManifest& m) const {
    m.config()["bases"] = bases;
    m.config()["algos"] = algos;
    m.config()["k"] = k;
    m.config()["walk_length"] = walk_length;
  }

  BaseSolutionSet load(const LoadedGraph& lg, const Globals& g, RunManifest& m) const {
    if (!bases.empty()) {
      std::vector<fs::path> files;
      auto set = m.stage("load_bases", [&] { return load_solution_set(bases, lg.table, &files); });
      m.add_input(bases);
      for (const auto& f : files) m.add_input(f);
      return set;
    }
    const auto ds = detectors();
    const auto k_used = orderings(lg.graph);
    m.config()["k_resolved"] = k_used;
    return m.stage("base_detection",
                   [&] { return generate_base_solutions(lg.graph, ds, k_used, g.seed, g.threads); });
  }
};

std::vector<Partition> partitions_of(const BaseSolutionSet& set) {
  std::vector<Partition> out;
  out.reserve(set.size());
  for (const auto& s : set.solutions) out.push_back(s.partition);
  return out;
}

template <typename Write>
void emit(const std::string& out, RunManifest& m, Write&& write) {
  if (out.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream f(out);
  if (!f) throw Error("cannot write " + out);
  write(f);
  m.add_output(out);
}

// ---------------------------------------------------------------- generate

void add_generate(CLI::App& app, Globals& g, std::function<int()>& action) {
  struct Opts {
    std::string kind = "disjoint";
    BenchConfig cfg;
    bool large = false;
    std::string prefix;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("generate", "Write a planted-community benchmark graph and its ground truth");
  cmd->add_option("--kind", o->kind, "Ground-truth type")
      ->check(CLI::IsMember({"disjoint", "overlapping", "fuzzy"}))
      ->capture_default_str();
  cmd->add_flag("--large", o->large, "Start from the n=10000 preset (other flags still override)");
  cmd->add_option("--n", o->cfg.n, "Vertices")->capture_default_str();
  cmd->add_option("--k-avg", o->cfg.k_avg, "Mean degree")->capture_default_str();
  cmd->add_option("--k-max", o->cfg.k_max, "Maximum degree")->capture_default_str();
  cmd->add_option("--mu", o->cfg.mu, "Mixing parameter")->capture_default_str();
  cmd->add_option("--c-min", o->cfg.c_min, "Smallest community")->capture_default_str();
  cmd->add_option("--c-max", o->cfg.c_max, "Largest community")->capture_default_str();
  cmd->add_option("--overlap", o->cfg.overlap_fraction, "Fraction of vertices with several memberships")
      ->capture_default_str();
  cmd->add_option("--memberships", o->cfg.overlap_memberships, "Memberships per overlapping vertex")
      ->capture_default_str();
  cmd->add_option("--out", o->prefix, "Output prefix: writes PREFIX.edges and PREFIX.truth")->required();
  cmd->callback([cmd, o, &g, &action] {
    action = [cmd, o, &g] {
      BenchConfig cfg = o->cfg;
      if (o->large) {
        const auto big = large_bench_config();
        auto pick = [&](const char* flag, auto& field, auto preset) {
          if (cmd->count(flag) == 0) field = preset;
        };
        pick("--n", cfg.n, big.n);
        pick("--k-avg", cfg.k_avg, big.k_avg);
        pick("--k-max", cfg.k_max, big.k_max);
        pick("--mu", cfg.mu, big.mu);
        pick("--c-min", cfg.c_min, big.c_min);
        pick("--c-max", cfg.c_max, big.c_max);
      }
      cfg.seed = g.seed;
      RunManifest m("generate", g.argv);
      m.set_seed(g.seed);
      m.config() = {{"kind", o->kind},       {"n", cfg.n},         {"k_avg", cfg.k_avg},
                    {"k_max", cfg.k_max},    {"mu", cfg.mu},       {"c_min", cfg.c_min},
                    {"c_max", cfg.c_max},    {"overlap", cfg.overlap_fraction},
                    {"memberships", cfg.overlap_memberships},
                    {"degree_exponent", cfg.degree_exponent}, {"size_exponent", cfg.size_exponent}};
      const std::string edges = o->prefix + ".edges", truth = o->prefix + ".truth";
      BenchStats stats;
      auto save = [&](const Graph& graph, auto&& write_truth) {
        m.stage("write", [&] {
          save_edge_list(edges, graph);
          write_truth(SymbolTable::from_graph(graph));
        });
      };
      if (o->kind == "disjoint") {
        auto b = m.stage("generate", [&] { return gen_disjoint(cfg); });
        stats = b.stats;
        save(b.graph, [&](const SymbolTable& t) { save_partition(truth, b.truth, t); });
      } else if (o->kind == "overlapping") {
        auto b = m.stage("generate", [&] { return gen_overlapping(cfg); });
        stats = b.stats;
        save(b.graph, [&](const SymbolTable& t) { save_cover(truth, b.truth, t); });
      } else {
        auto b = m.stage("generate", [&] { return gen_fuzzy(cfg); });
        stats = b.stats;
        save(b.graph, [&](const SymbolTable& t) { save_fuzzy(truth, b.truth, t); });
      }
      m.add_output(edges);
      m.add_output(truth);
      m.set_result("stats", {{"mean_degree", stats.mean_degree},
                             {"mixing", stats.mixing},
                             {"edges", stats.edges},
                             {"dropped_stubs", stats.dropped_stubs},
                             {"clamped_vertices", stats.clamped_vertices},
                             {"p1", stats.p1},
                             {"p0", stats.p0},
                             {"expected_edges", stats.expected_edges}});
      std::cerr << "generated " << stats.edges << " edges, mean degree " << stats.mean_degree << ", mixing "
                << stats.mixing << '\n';
      finish(g, m, edges);
      return 0;
    };
  });
}

// ------------------------------------------------------------------ detect

void add_detect(CLI::App& app, Globals& g, std::function<int()>& action) {
  struct Opts {
    std::string graph, out;
    BaseSource src;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("detect", "Run base detectors over K vertex orderings and save the solution set");
  cmd->add_option("--graph", o->graph, "Edge list")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", o->out, "Output directory (partition files plus manifest.json)")->required();
  cmd->add_option("--algos", o->src.algos, "Comma-separated base detectors")->capture_default_str();
  cmd->add_option("--k", o->src.k, "Orderings per detector (0 = min(ceil(0.2|V|), 50))")->capture_default_str();
  cmd->add_option("--walk-length", o->src.walk_length, "Walktrap random-walk length")->capture_default_str();
  cmd->callback([o, &g, &action] {
    action = [o, &g] {
      RunManifest m("detect", g.argv);
      m.set_seed(g.seed);
      o->src.echo(m);
      const auto lg = load_graph(o->graph, m);
      const auto set = o->src.load(lg, g, m);
      m.stage("write", [&] { save_solution_set(o->out, set, lg.table); });
      const auto manifest = fs::path(o->out) / "manifest.json";
      m.add_output(manifest);
      {
        std::ifstream in(manifest);
        const auto j = json::parse(in);
        for (const auto& s : j.at("solutions")) m.add_output(fs::path(o->out) / s.at("file").get<std::string>());
      }
      for (const auto& s : set.solutions) m.add_derived_seed(s.algorithm + "/" + std::to_string(s.ordering_index), s.seed);
      m.set_result("solutions", set.size());
      m.set_result("failures", set.failure_messages);
      finish(g, m, manifest);
      return 0;
    };
  });
}

// ----------------------------------------------------------------- endisco

void add_endisco(CLI::App& app, Globals& g, std::function<int()>& action) {
  struct Opts {
    std::string graph, out, inv = "rcc", sim = "cos", ralgo = "louvain";
    BaseSource src;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("endisco", "Disjoint ensemble detection by re-clustering vertex involvement profiles");
  cmd->add_option("--graph", o->graph, "Edge list")->required()->check(CLI::ExistingFile);
  o->src.add_to(cmd);
  cmd->add_option("--inv", o->inv, "Involvement measure")->check(CLI::IsMember({"rcc", "idc"}))->capture_default_str();
  cmd->add_option("--sim", o->sim, "Profile similarity")->check(CLI::IsMember({"cos", "cheb"}))->capture_default_str();
  cmd->add_option("--ralgo", o->ralgo, "Re-clustering detector")->capture_default_str();
  cmd->add_option("--out", o->out, "Partition file (default: stdout)");
  cmd->callback([o, &g, &action] {
    action = [o, &g] {
      RunManifest m("endisco", g.argv);
      m.set_seed(g.seed);
      o->src.echo(m);
      m.config()["inv"] = o->inv;
      m.config()["sim"] = o->sim;
      m.config()["ralgo"] = o->ralgo;
      EndiscoOptions opts;
      opts.involvement = o->inv == "rcc" ? Involvement::kRcc : Involvement::kIdc;
      opts.similarity = o->sim == "cos" ? Similarity::kCosine : Similarity::kChebyshev;
      opts.reclusterer = detector_by_name(o->ralgo, o->src.walk_length);
      opts.threads = g.threads;
      const auto lg = load_graph(o->graph, m);
      const auto set = o->src.load(lg, g, m);
      const auto bases = partitions_of(set);
      const auto p = m.stage("ensemble", [&] { return endisco_from_solutions(lg.graph, bases, g.seed, opts); });
      m.set_result("communities", p.num_communities());
      m.set_result("base_solutions", bases.size());
      emit(o->out, m, [&](std::ostream& out) { write_partition(out, p, lg.table); });
      finish(g, m, o->out);
      return 0;
    };
  });
}

// ------------------------------------------------------------------- medoc

void add_medoc(CLI::App& app, Globals& g, std::function<int()>& action) {
  struct Opts {
    std::string graph, out, mode = "disjoint", match = "jc", assoc = "weighted", ralgo = "louvain";
    BaseSource src;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("medoc", "Meta-community ensemble detection (disjoint, overlapping or fuzzy output)");
  cmd->add_option("--graph", o->graph, "Edge list")->required()->check(CLI::ExistingFile);
  o->src.add_to(cmd);
  cmd->add_option("--mode", o->mode, "Output structure")
      ->check(CLI::IsMember({"disjoint", "overlapping", "fuzzy"}))
      ->capture_default_str();
  cmd->add_option("--match", o->match, "Community matching")->check(CLI::IsMember({"jc", "ap"}))->capture_default_str();
  cmd->add_option("--assoc", o->assoc, "Vertex association")
      ->check(CLI::IsMember({"simple", "weighted"}))
      ->capture_default_str();
  cmd->add_option("--ralgo", o->ralgo, "Meta-graph re-clustering detector")->capture_default_str();
  cmd->add_option("--out", o->out, "Output file (default: stdout)");
  cmd->callback([o, &g, &action] {
    action = [o, &g] {
      RunManifest m("medoc", g.argv);
      m.set_seed(g.seed);
      o->src.echo(m);
      m.config()["mode"] = o->mode;
      m.config()["match"] = o->match;
      m.config()["assoc"] = o->assoc;
      m.config()["ralgo"] = o->ralgo;
      MedocOptions opts;
      opts.matching = o->match == "jc" ? Matching::kJaccard : Matching::kAveragePrecision;
      opts.association = o->assoc == "simple" ? Association::kSimple : Association::kWeighted;
      opts.reclusterer = detector_by_name(o->ralgo, o->src.walk_length);
      opts.threads = g.threads;
      const auto lg = load_graph(o->graph, m);
      const auto set = o->src.load(lg, g, m);
      const auto bases = partitions_of(set);
      const auto r = m.stage("ensemble", [&] { return medoc_from_solutions(lg.graph, bases, g.seed, opts); });
      m.set_result("meta_communities", r.meta_communities.num_communities());
      m.set_result("base_solutions", bases.size());
      emit(o->out, m, [&](std::ostream& out) {
        if (o->mode == "disjoint") write_partition(out, r.disjoint, lg.table);
        else if (o->mode == "overlapping") write_cover(out, r.overlapping, lg.table);
        else write_fuzzy(out, r.fuzzy, lg.table);
      });
      finish(g, m, o->out);
      return 0;
    };
  });
}

// --------------------------------------------------------------- consensus

void add_consensus(CLI::App& app, Globals& g, std::function<int()>& action) {
  struct Opts {
    std::string graph, out;
    ConsensusOptions copts;
    BaseSource src;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("consensus", "Iterated consensus clustering over the base solutions");
  cmd->add_option("--graph", o->graph, "Edge list")->required()->check(CLI::ExistingFile);
  o->src.add_to(cmd);
  cmd->add_option("--threshold", o->copts.threshold, "Drop co-occurrence below this")->capture_default_str();
  cmd->add_option("--max-rounds", o->copts.max_rounds, "Round cap")->capture_default_str();
  cmd->add_option("--out", o->out, "Partition file (default: stdout)");
  cmd->callback([o, &g, &action] {
    action = [o, &g] {
      RunManifest m("consensus", g.argv);
      m.set_seed(g.seed);
      o->src.echo(m);
      m.config()["threshold"] = o->copts.threshold;
      m.config()["max_rounds"] = o->copts.max_rounds;
      auto copts = o->copts;
      copts.threads = g.threads;
      const auto lg = load_graph(o->graph, m);
      const auto set = o->src.load(lg, g, m);
      const auto bases = partitions_of(set);
      const auto ds = o->src.detectors();
      const auto k = set.num_orderings > 0 ? set.num_orderings : o->src.orderings(lg.graph);
      const auto r = m.stage("ensemble", [&] { return consensus_from_solutions(bases, ds, k, g.seed, copts); });
      m.set_result("rounds", r.rounds);
      m.set_result("converged", r.converged);
      m.set_result("communities", r.partition.num_communities());
      if (!r.converged) std::cerr << "warning: consensus did not converge in " << r.rounds << " rounds\n";
      emit(o->out, m, [&](std::ostream& out) { write_partition(out, r.partition, lg.table); });
      finish(g, m, o->out);
      return 0;
    };
  });
}

// ---------------------------------------------------------------- evaluate

StructureFormat format_named(const std::string& s) {
  if (s == "partition") return StructureFormat::kPartition;
  if (s == "cover") return StructureFormat::kCover;
  return StructureFormat::kFuzzy;
}

Cover read_as_cover(const fs::path& path, StructureFormat f, const SymbolTable& t) {
  if (f == StructureFormat::kPartition) return Cover::from_partition(import_partition(path, t));
  if (f == StructureFormat::kCover) return load_cover(path, t);
  throw InvalidArgument("a fuzzy assignment cannot be scored as a cover");
}

FuzzyAssignment read_as_fuzzy(const fs::path& path, StructureFormat f, const SymbolTable& t) {
  if (f == StructureFormat::kPartition) return FuzzyAssignment::from_partition(import_partition(path, t));
  if (f == StructureFormat::kFuzzy) return load_fuzzy(path, t);
  throw InvalidArgument("a crisp cover cannot be scored with the fuzzy Rand index");
}

void add_evaluate(CLI::App& app, Globals& g, std::function<int()>& action) {
  struct Opts {
    std::string metric = "nmi", truth, detected, truth_format, detected_format;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("evaluate", "Score a detected structure against ground truth; prints one number");
  cmd->add_option("--metric", o->metric, "Similarity measure")
      ->check(CLI::IsMember({"nmi", "ari", "onmi", "omega", "fri"}))
      ->capture_default_str();
  cmd->add_option("truth", o->truth, "Ground-truth file")->required()->check(CLI::ExistingFile);
  cmd->add_option("detected", o->detected, "Detected-structure file")->required()->check(CLI::ExistingFile);
  const std::vector<std::string> formats{"partition", "cover", "fuzzy"};
  cmd->add_option("--truth-format", o->truth_format, "Override the format implied by the metric")
      ->check(CLI::IsMember(formats));
  cmd->add_option("--detected-format", o->detected_format, "Override the format implied by the metric")
      ->check(CLI::IsMember(formats));
  cmd->callback([o, &g, &action] {
    action = [o, &g] {
      RunManifest m("evaluate", g.argv);
      m.config() = {{"metric", o->metric}};
      const std::string implied = o->metric == "nmi" || o->metric == "ari" ? "partition"
                                  : o->metric == "fri"                     ? "fuzzy"
                                                                           : "cover";
      const auto ft = format_named(o->truth_format.empty() ? implied : o->truth_format);
      const auto fd = format_named(o->detected_format.empty() ? implied : o->detected_format);
      SymbolTable table;
      collect_vertex_names(o->truth, ft, table);
      collect_vertex_names(o->detected, fd, table);
      m.add_input(o->truth);
      m.add_input(o->detected);
      const double value = m.stage("score", [&] {
        if (o->metric == "nmi" || o->metric == "ari") {
          if (ft != StructureFormat::kPartition || fd != StructureFormat::kPartition)
            throw InvalidArgument(o->metric + " needs two partitions");
          const auto a = import_partition(o->truth, table), b = import_partition(o->detected, table);
          return o->metric == "nmi" ? nmi(a, b) : ari(a, b);
        }
        if (o->metric == "fri") return fuzzy_rand(read_as_fuzzy(o->truth, ft, table), read_as_fuzzy(o->detected, fd, table));
        const auto a = read_as_cover(o->truth, ft, table), b = read_as_cover(o->detected, fd, table);
        return o->metric == "onmi" ? onmi(a, b) : omega(a, b);
      });
      m.set_result(o->metric, value);
      std::cout.precision(17);
      std::cout << value << '\n';
      finish(g, m, {});
      return 0;
    };
  });
}

// ------------------------------------------------------------------ select

void add_select(CLI::App& app, Globals& g, std::function<int()>& action) {
  struct Opts {
    std::string manifest, out, strategy = "vrrw", graph;
    double s_frac = 0.6;
    double alpha = 0.5;
    VrrwOptions vrrw;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("select", "Keep a subset of a solution set and write a filtered manifest");
  cmd->add_option("--manifest", o->manifest, "Input solution-set manifest")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", o->out, "Filtered manifest path")->required();
  cmd->add_option("--strategy", o->strategy, "Selection rule")
      ->check(CLI::IsMember({"quality", "diversity", "combined", "vrrw"}))
      ->capture_default_str();
  cmd->add_option("--s-frac", o->s_frac, "Fraction of solutions to keep")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--alpha", o->alpha, "Quality weight for the combined rule")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--lambda", o->vrrw.lambda, "VRRW damping")->capture_default_str();
  cmd->add_option("--graph", o->graph, "Edge list naming the vertices (default: names from the partition files)");
  cmd->callback([o, &g, &action] {
    action = [o, &g] {
      RunManifest m("select", g.argv);
      m.set_seed(g.seed);
      m.config() = {{"strategy", o->strategy}, {"s_frac", o->s_frac}, {"alpha", o->alpha}, {"lambda", o->vrrw.lambda}};
      SymbolTable table;
      if (!o->graph.empty()) {
        table = load_graph(o->graph, m).table;
      } else {
        std::ifstream in(o->manifest);
        json j;
        try {
          in >> j;
        } catch (const json::exception& e) {
          throw ParseError(o->manifest, 0, e.what());
        }
        const auto base = fs::path(o->manifest).parent_path();
        for (const auto& s : j.at("solutions"))
          collect_vertex_names(base / s.at("file").get<std::string>(), StructureFormat::kPartition, table);
      }
      std::vector<fs::path> files;
      auto set = m.stage("load", [&] { return load_solution_set(o->manifest, table, &files); });
      m.add_input(o->manifest);
      if (set.size() == 0) throw InvalidArgument("solution set is empty");
      const auto s = std::max<std::size_t>(
          1, static_cast<std::size_t>(std::llround(o->s_frac * static_cast<double>(set.size()))));
      const auto parts = partitions_of(set);
      const auto sb = m.stage("score", [&] { return score_solutions(parts, g.threads); });
      auto chosen = m.stage("select", [&]() -> std::vector<std::size_t> {
        if (o->strategy == "quality") return select_quality(sb, s);
        if (o->strategy == "diversity") return select_diversity(sb, s);
        if (o->strategy == "combined") return select_combined(sb, s, o->alpha);
        auto r = select_vrrw(sb, s, o->vrrw);
        m.set_result("vrrw_converged", r.converged);
        m.set_result("vrrw_iterations", r.iterations);
        return r.selected;
      });
      std::sort(chosen.begin(), chosen.end());
      BaseSolutionSet kept = set;
      kept.solutions.clear();
      std::vector<fs::path> kept_files;
      for (auto i : chosen) {
        kept.solutions.push_back(set.solutions[i]);
        kept_files.push_back(fs::absolute(files[i]));
      }
      fs::path out = o->out;
      if (out.has_parent_path()) fs::create_directories(out.parent_path());
      write_manifest(out, kept, kept_files);
      m.add_output(out);
      m.set_result("selected", chosen);
      m.set_result("kept", chosen.size());
      m.set_result("of", set.size());
      finish(g, m, out);
      return 0;
    };
  });
}

// ----------------------------------------------------------------- analyze

/// Loads snapshot edge lists into one vertex id space (names unioned in order
/// of first appearance across the files).
std::vector<Graph> load_snapshots(const std::vector<std::string>& paths, RunManifest& m, SymbolTable& table) {
  std::vector<EdgeListFile> files;
  for (const auto& p : paths) {
    m.add_input(p);
    files.push_back(load_edge_list(p));
    const auto& gr = files.back().graph;
    for (VertexId v = 0; v < gr.num_vertices(); ++v) table.intern(gr.name(v));
  }
  std::vector<Graph> out;
  for (const auto& f : files) {
    GraphBuilder b(table.size());
    for (const auto& e : f.graph.edges()) {
      b.add_edge(*table.find(f.graph.name(e.u)), *table.find(f.graph.name(e.v)), e.weight);
    }
    out.push_back(b.build(table.names()));
  }
  return out;
}

void add_analyze(CLI::App& app, Globals& g, std::function<int()>& action) {
  struct Opts {
    std::string task, graph, out;
    std::vector<std::string> snapshots;
    std::size_t runs = 20;
    BaseSource src;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("analyze", "Post-hoc analyses; writes long-format CSV (method,statistic,value)");
  cmd->add_option("task", o->task, "Analysis to run")
      ->required()
      ->check(CLI::IsMember({"core-periphery", "degeneracy", "runtime", "stable"}));
  cmd->add_option("--graph", o->graph, "Edge list (all tasks except stable)")->check(CLI::ExistingFile);
  cmd->add_option("--snapshots", o->snapshots, "Edge lists of consecutive snapshots (stable)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--runs", o->runs, "Orderings per subject (degeneracy) or repeats (runtime)")->capture_default_str();
  cmd->add_option("--algos", o->src.algos, "Comma-separated base detectors")->capture_default_str();
  cmd->add_option("--k", o->src.k, "Orderings per detector inside each ensemble")->capture_default_str();
  cmd->add_option("--out", o->out, "CSV file (default: stdout)");
  cmd->callback([o, &g, &action] {
    action = [o, &g] {
      RunManifest m("analyze", g.argv);
      m.set_seed(g.seed);
      o->src.echo(m);
      m.config()["task"] = o->task;
      m.config()["runs"] = o->runs;
      const auto ds = o->src.detectors();
      std::vector<CsvRow> rows;
      auto need_graph = [&] {
        if (o->graph.empty()) throw InvalidArgument("analyze " + o->task + " needs --graph");
        return load_graph(o->graph, m);
      };
      if (o->task == "stable") {
        if (o->snapshots.size() < 2) throw InvalidArgument("analyze stable needs at least two --snapshots");
        SymbolTable table;
        const auto snaps = load_snapshots(o->snapshots, m, table);
        const auto k = o->src.k > 0 ? o->src.k : default_ordering_count(table.size());
        const auto report = m.stage("analyze", [&] { return stable_communities(snaps, ds, k, g.seed); });
        for (std::size_t t = 0; t < report.snapshots.size(); ++t)
          rows.push_back({"t" + std::to_string(t), "stable_vertices", double(report.snapshots[t].vertices.size())});
        for (std::size_t t = 0; t < report.consecutive.size(); ++t) {
          const auto& c = report.consecutive[t];
          const auto label = "t" + std::to_string(t) + "-t" + std::to_string(t + 1);
          rows.push_back({label, "shared", double(c.shared_vertices)});
          rows.push_back({label, "nmi", c.nmi.value_or(std::nan(""))});
          rows.push_back({label, "ari", c.ari.value_or(std::nan(""))});
        }
      } else if (o->task == "core-periphery") {
        const auto lg = need_graph();
        const auto k = o->src.orderings(lg.graph);
        const auto r = m.stage("medoc", [&] { return medoc(lg.graph, ds, k, g.seed); });
        const auto prof = m.stage("analyze", [&] { return core_periphery_profile(lg.graph, r); });
        for (std::size_t c = 0; c < prof.size(); ++c) {
          const auto label = "community" + std::to_string(c);
          rows.push_back({label, "size", double(prof[c].members.size())});
          for (std::size_t t = 0; t < kShellTiers; ++t)
            for (std::size_t b = 0; b < kAssociationBuckets; ++b)
              rows.push_back({label, "tier" + std::to_string(t) + "_bucket" + std::to_string(b),
                              double(prof[c].table[t][b])});
          std::vector<double> shell(prof[c].shell.begin(), prof[c].shell.end());
          rows.push_back({label, "spearman", spearman(shell, prof[c].association).value_or(std::nan(""))});
        }
      } else if (o->task == "degeneracy") {
        const auto lg = need_graph();
        const auto k = o->src.orderings(lg.graph);
        std::vector<DegeneracySubject> subjects;
        for (const auto& d : ds) subjects.push_back(degeneracy_subject(d));
        subjects.push_back({"endisco", [&](const Graph& gr, std::size_t, std::uint64_t s) { return endisco(gr, ds, k, s); }});
        subjects.push_back(
            {"medoc", [&](const Graph& gr, std::size_t, std::uint64_t s) { return medoc(gr, ds, k, s).disjoint; }});
        subjects.push_back({"consensus", [&](const Graph& gr, std::size_t, std::uint64_t s) {
                              return consensus_clustering(gr, ds, k, s).partition;
                            }});
        const auto report = m.stage("analyze", [&] { return degeneracy_report(lg.graph, subjects, o->runs, g.seed, g.threads); });
        for (const auto& r : report) {
          for (auto [stat, v] : {std::pair{"min", r.min}, {"q1", r.q1}, {"median", r.median}, {"q3", r.q3},
                                 {"max", r.max}, {"iqr", r.iqr()}})
            rows.push_back({r.name, stat, v});
        }
      } else {
        const auto lg = need_graph();
        const auto k = o->src.orderings(lg.graph);
        for (auto method : {EnsembleMethod::kEndisco, EnsembleMethod::kMedoc, EnsembleMethod::kConsensus}) {
          std::vector<double> theta;
          const auto name = ensemble_method_name(method);
          m.stage(std::string("runtime_") + name, [&] {
            for (std::size_t i = 0; i < std::max<std::size_t>(1, o->runs); ++i)
              theta.push_back(runtime_ratio(lg.graph, method, ds, k, g.seed).theta);
          });
          rows.push_back({name, "theta_median", quantile(theta, 0.5)});
          rows.push_back({name, "theta_min", quantile(theta, 0.0)});
          rows.push_back({name, "theta_max", quantile(theta, 1.0)});
        }
      }
      emit(o->out, m, [&](std::ostream& out) { write_csv(out, rows); });
      finish(g, m, o->out);
      return 0;
    };
  });
}

}  // namespace

void register_commands(CLI::App& app, Globals& globals, std::function<int()>& action) {
  add_generate(app, globals, action);
  add_detect(app, globals, action);
  add_endisco(app, globals, action);
  add_medoc(app, globals, action);
  add_consensus(app, globals, action);
  add_evaluate(app, globals, action);
  add_select(app, globals, action);
  add_analyze(app, globals, action);
}

}  // namespace ecd::cli
