#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "twsplit/error.hpp"
#include "twsplit/experiments.hpp"
#include "twsplit/graph.hpp"
#include "twsplit/hypothesis_test.hpp"
#include "twsplit/io.hpp"
#include "twsplit/metrics.hpp"
#include "twsplit/partition.hpp"
#include "twsplit/random_models.hpp"
#include "twsplit/rng.hpp"
#include "twsplit/version.hpp"

namespace fs = std::filesystem;
using namespace twsplit;

namespace {

enum ExitCode { kOk = 0, kInputError = 2, kDegenerate = 3, kSolverFailure = 4 };

constexpr const char* kManifestName = "manifest.json";

std::size_t default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

class Manifest {
 public:
  Manifest(std::string subcommand, std::uint64_t seed) : start_(std::chrono::steady_clock::now()) {
    json_["subcommand"] = std::move(subcommand);
    json_["seed"] = seed;
    json_["version"] = std::string(kVersion);
    json_["config"] = Json::object();
    json_["inputs"] = Json::array();
    json_["outputs"] = Json::array();
    json_["started_at"] = utc_timestamp();
  }

  template <class T>
  void config(const std::string& key, const T& value) {
    json_["config"][key] = value;
  }
  void input(const fs::path& path) {
    json_["inputs"].push_back({{"path", path.string()}, {"digest", file_digest(path)}});
  }
  void output(const fs::path& path) { json_["outputs"].push_back(path.filename().string()); }

  Json finish() const {
    Json j = json_;
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
    j["wall_clock_seconds"] = elapsed.count();
    return j;
  }

 private:
  Json json_;
  std::chrono::steady_clock::time_point start_;
};

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body, Manifest* manifest) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  body(out);
  if (!out) throw InputError("failed writing '" + path.string() + "'");
  if (manifest) manifest->output(path);
}

// CSV outputs point back at the manifest in a leading comment line.
void write_csv(const fs::path& path, const std::function<void(std::ostream&)>& body, Manifest& manifest) {
  write_file(path, [&](std::ostream& out) {
    out << "# manifest: " << kManifestName << '\n';
    body(out);
  }, &manifest);
}

void finish_directory(const fs::path& dir, const Manifest& manifest) {
  write_file(dir / kManifestName, [&](std::ostream& out) { out << manifest.finish().dump(2) << '\n'; }, nullptr);
}

void make_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create '" + dir.string() + "': " + ec.message());
}

std::string csv(double x) { return format_double(x); }

// ---------------------------------------------------------------- test

struct TestOptions {
  std::string graph;
  std::string statistic = "adjacency";
  std::size_t bootstrap_samples = 50;
  std::uint64_t seed = 0;
  std::size_t jobs = default_jobs();
  std::string out;
};

int cmd_test(const TestOptions& o) {
  Manifest manifest("test", o.seed);
  manifest.input(o.graph);
  manifest.config("statistic", o.statistic);
  manifest.config("bootstrap_samples", o.bootstrap_samples);
  manifest.config("jobs", o.jobs);

  const LoadedGraph loaded = read_edge_list_file(o.graph);
  const IsolatedRemoval stripped = remove_isolated_nodes(loaded.graph);
  if (stripped.graph.num_nodes() < 2) throw DegenerateError("graph has fewer than two non-isolated nodes");

  TestConfig cfg;
  cfg.bootstrap_samples = o.bootstrap_samples;
  cfg.variant = parse_statistic_variant(o.statistic);
  cfg.seed = o.seed;
  cfg.jobs = o.jobs;
  const TestReport report = test_graph(stripped.graph, cfg);

  Json j = to_json(report);
  j["removed_isolated"] = stripped.removed.size();
  j["duplicate_edges"] = loaded.diagnostics.duplicate_edges;
  j["manifest"] = manifest.finish();
  if (o.out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    write_file(o.out, [&](std::ostream& out) { out << j.dump(2) << '\n'; }, nullptr);
  }
  return kOk;
}

// ---------------------------------------------------------------- cluster

struct ClusterOptions {
  std::string graph;
  double alpha = 0.01;
  std::size_t min_size = 10;
  std::string statistic = "adjacency";
  std::size_t bootstrap_samples = 50;
  std::uint64_t seed = 0;
  std::size_t jobs = default_jobs();
  std::string out;
};

int cmd_cluster(const ClusterOptions& o) {
  Manifest manifest("cluster", o.seed);
  manifest.input(o.graph);
  manifest.config("alpha", o.alpha);
  manifest.config("min_size", o.min_size);
  manifest.config("statistic", o.statistic);
  manifest.config("bootstrap_samples", o.bootstrap_samples);
  manifest.config("jobs", o.jobs);

  const LoadedGraph loaded = read_edge_list_file(o.graph);
  PartitionConfig cfg;
  cfg.alpha = o.alpha;
  cfg.min_size = o.min_size;
  cfg.test.bootstrap_samples = o.bootstrap_samples;
  cfg.test.variant = parse_statistic_variant(o.statistic);
  cfg.test.seed = o.seed;
  cfg.test.jobs = o.jobs;
  const ClusterTree tree = recursive_bipartition(loaded.graph, cfg);

  const auto problems = validate_tree(tree, loaded.graph.num_nodes());
  if (!problems.empty()) throw std::logic_error("internal error: invalid tree: " + problems.front());

  std::cerr << "leaves: " << count_leaves(tree) << '\n';
  const Json tree_json = tree_to_json(tree, loaded.graph);
  if (o.out.empty()) {
    std::cout << Json{{"manifest", manifest.finish()}, {"tree", tree_json}}.dump(2) << '\n';
    return kOk;
  }
  const fs::path dir(o.out);
  make_directory(dir);
  const DensityOrdering ordering = density_ordering(tree);
  write_file(dir / "tree.json", [&](std::ostream& out) {
    out << Json{{"manifest", kManifestName}, {"tree", tree_json}}.dump(2) << '\n';
  }, &manifest);
  write_file(dir / "ordering.txt", [&](std::ostream& out) {
    out << "# manifest: " << kManifestName << '\n';
    write_permutation(out, ordering, loaded.graph);
  }, &manifest);
  write_csv(dir / "blocks.csv", [&](std::ostream& out) { write_blocks_csv(out, ordering); }, manifest);
  finish_directory(dir, manifest);
  return kOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
  std::string recipe;
  std::optional<std::size_t> runs;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = default_jobs();
  std::string out = "twsplit-out";
  std::string recipes_dir;
};

fs::path default_recipe_dir() {
  if (const char* env = std::getenv("TWSPLIT_RECIPE_DIR")) return env;
  return TWSPLIT_DEFAULT_RECIPE_DIR;
}

std::vector<std::string> available_recipes(const fs::path& dir) {
  std::vector<std::string> names;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.path().extension() == ".conf") names.push_back(entry.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

fs::path resolve_recipe(const std::string& name, const fs::path& dir) {
  if (fs::is_regular_file(name)) return name;
  const fs::path candidate = dir / (name + ".conf");
  if (fs::is_regular_file(candidate)) return candidate;
  std::string list;
  for (const auto& r : available_recipes(dir)) list += "\n  " + r;
  if (list.empty()) list = " (none found in " + dir.string() + ")";
  throw InputError("unknown recipe '" + name + "'; available:" + list);
}

struct SimContext {
  const KeyValueConfig& recipe;
  std::uint64_t seed;
  std::size_t jobs;
  std::optional<std::size_t> runs_override;
  fs::path dir;
  Manifest& manifest;

  std::size_t runs(std::size_t fallback) const {
    return runs_override ? *runs_override : recipe.get_size_or("runs", fallback);
  }
};

std::string file_safe(std::string s) {
  std::replace(s.begin(), s.end(), ':', '_');
  return s;
}

void sim_tw_convergence(const SimContext& ctx) {
  const auto& r = ctx.recipe;
  const std::size_t runs = ctx.runs(1000);
  const std::size_t small = r.get_size_or("small_samples", 50);
  const StatisticVariant variant = parse_statistic_variant(r.get_or("statistic", "adjacency"));
  Histogram h{r.get_double_or("hist_lo", -8.0), r.get_double_or("hist_hi", 6.0), r.get_size_or("bins", 70)};
  if (!(h.hi > h.lo) || h.bins == 0) throw InputError(r.source() + ": bad histogram range");

  std::vector<ConvergenceStudy> studies;
  const auto cases = r.get_words("cases");
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const ConvergenceCase c = parse_convergence_case(cases[k]);
    studies.push_back(tw_convergence(c, runs, small, variant, derive_seed(ctx.seed, k), ctx.jobs));
    const ConvergenceStudy& s = studies.back();
    const std::string stem = file_safe(to_string(c));
    write_csv(ctx.dir / (stem + "_values.csv"), [&](std::ostream& out) {
      out << "run,raw,corrected_full,corrected_small\n";
      for (std::size_t i = 0; i < s.raw.size(); ++i) {
        out << i << ',' << csv(s.raw[i]) << ',' << csv(s.corrected_full[i]) << ',' << csv(s.corrected_small[i]) << '\n';
      }
    }, ctx.manifest);
    write_csv(ctx.dir / (stem + "_histogram.csv"), [&](std::ostream& out) {
      write_histogram_csv(out, h, {{"raw", s.raw}, {"corrected_full", s.corrected_full}, {"corrected_small", s.corrected_small}});
    }, ctx.manifest);
  }
  write_csv(ctx.dir / "summary.csv", [&](std::ostream& out) {
    out << "case,statistic,runs,small_samples,mean,sd,small_mean,small_sd,ks_raw,ks_full,ks_small\n";
    for (const auto& s : studies) {
      out << to_string(s.setting) << ',' << to_string(variant) << ',' << runs << ',' << small << ','
          << csv(s.full_moments.mean) << ',' << csv(s.full_moments.sd) << ',' << csv(s.small_moments.mean) << ','
          << csv(s.small_moments.sd) << ',' << csv(s.ks_raw) << ',' << csv(s.ks_full) << ',' << csv(s.ks_small) << '\n';
    }
  }, ctx.manifest);
  std::cout << std::setprecision(5) << std::left << std::setw(16) << "case" << std::setw(12) << "ks_raw" << std::setw(12) << "ks_full"
            << "ks_small\n";
  for (const auto& s : studies) {
    std::cout << std::setw(16) << to_string(s.setting) << std::setw(12) << s.ks_raw << std::setw(12) << s.ks_full
              << s.ks_small << '\n';
  }
}

void write_sweep(const SimContext& ctx, const std::string& stem, const std::vector<SweepRow>& rows) {
  write_csv(ctx.dir / (stem + ".csv"), [&](std::ostream& out) {
    out << "param,mean_pvalue,sd_pvalue,runs\n";
    for (const auto& row : rows) {
      out << csv(row.param) << ',' << csv(row.mean_pvalue) << ',' << csv(row.sd_pvalue) << ',' << row.runs << '\n';
    }
  }, ctx.manifest);
  write_csv(ctx.dir / (stem + "_runs.csv"), [&](std::ostream& out) {
    out << "param,run,p_value\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.pvalues.size(); ++i) out << csv(row.param) << ',' << i << ',' << csv(row.pvalues[i]) << '\n';
    }
  }, ctx.manifest);
  std::cout << std::setprecision(5) << stem << "\n  param        mean_pvalue  sd_pvalue\n";
  for (const auto& row : rows) {
    std::cout << "  " << std::left << std::setw(13) << row.param << std::setw(13) << row.mean_pvalue << row.sd_pvalue << '\n';
  }
}

TestConfig recipe_test_config(const SimContext& ctx) {
  TestConfig cfg;
  cfg.bootstrap_samples = ctx.recipe.get_size_or("bootstrap_samples", 50);
  cfg.variant = parse_statistic_variant(ctx.recipe.get_or("statistic", "adjacency"));
  cfg.seed = ctx.seed;
  cfg.jobs = ctx.jobs;
  return cfg;
}

void sim_planted_cluster(const SimContext& ctx) {
  const auto& r = ctx.recipe;
  const std::size_t runs = ctx.runs(50);
  const TestConfig cfg = recipe_test_config(ctx);
  SweepSpec spec;
  spec.n = r.get_size_or("n", 1000);
  spec.b11 = r.get_double_or("b11", 0.15);
  spec.b12 = r.get_double_or("b12", 0.05);
  spec.b22 = r.get_double_or("b22", -1.0);
  if (r.has("n1_values")) {
    spec.parameter = SweepSpec::Parameter::PlantedSize;
    spec.values = r.get_doubles("n1_values");
    write_sweep(ctx, "n1_sweep", pvalue_sweep(spec, runs, cfg));
  }
  if (r.has("b12_values")) {
    spec.parameter = SweepSpec::Parameter::CrossProbability;
    spec.n1 = r.get_size_or("b12_sweep_n1", 100);
    spec.values = r.get_doubles("b12_values");
    write_sweep(ctx, "b12_sweep", pvalue_sweep(spec, runs, cfg));
  }
}

void sim_null_calibration(const SimContext& ctx) {
  const auto& r = ctx.recipe;
  const std::size_t runs = ctx.runs(500);
  const double level = r.get_double_or("level", 0.05);
  const NullCalibration cal = null_calibration(r.get_size("n"), r.get_double("p"), runs, level, recipe_test_config(ctx));
  write_csv(ctx.dir / "pvalues.csv", [&](std::ostream& out) {
    out << "run,p_value\n";
    for (std::size_t i = 0; i < cal.pvalues.size(); ++i) out << i << ',' << csv(cal.pvalues[i]) << '\n';
  }, ctx.manifest);
  write_csv(ctx.dir / "summary.csv", [&](std::ostream& out) {
    out << "runs,level,rejection_rate,ks_uniform\n"
        << runs << ',' << csv(level) << ',' << csv(cal.rejection_rate) << ',' << csv(cal.ks_uniform) << '\n';
  }, ctx.manifest);
  std::cout << "rejection rate at " << level << ": " << cal.rejection_rate << "\nKS vs uniform: " << cal.ks_uniform << '\n';
}

void sim_nested_sbm(const SimContext& ctx) {
  const auto& r = ctx.recipe;
  const std::size_t runs = ctx.runs(50);
  NestedSbmSpec spec;
  spec.a = r.get_double_or("a", spec.a);
  spec.b = r.get_double_or("b", spec.b);
  spec.c = r.get_double_or("c", spec.c);
  spec.d = r.get_double_or("d", spec.d);
  if (r.has("sizes")) {
    spec.sizes.clear();
    for (double s : r.get_doubles("sizes")) spec.sizes.push_back(static_cast<std::size_t>(s));
  }
  PartitionConfig cfg;
  cfg.alpha = r.get_double_or("alpha", 0.01);
  cfg.min_size = r.get_size_or("min_size", 10);
  cfg.test = recipe_test_config(ctx);

  struct Point {
    double rho;
    double degree;
    std::vector<ClusteringRun> runs;
  };
  std::vector<Point> points;
  const auto rhos = r.get_doubles("rho");
  for (std::size_t k = 0; k < rhos.size(); ++k) {
    const SbmParams params = nested_sbm_params(spec, rhos[k]);
    points.push_back({rhos[k], expected_average_degree(params),
                      clustering_runs(params, runs, cfg, derive_seed(ctx.seed, k), ctx.jobs)});
  }
  write_csv(ctx.dir / "ari_runs.csv", [&](std::ostream& out) {
    out << "rho,run,ari,leaves\n";
    for (const auto& p : points) {
      for (std::size_t i = 0; i < p.runs.size(); ++i) {
        out << csv(p.rho) << ',' << i << ',' << csv(p.runs[i].ari) << ',' << p.runs[i].leaves << '\n';
      }
    }
  }, ctx.manifest);
  std::cout << std::setprecision(5) << "rho    avg_degree  mean_ari    sd_ari      mean_leaves\n";
  write_csv(ctx.dir / "ari.csv", [&](std::ostream& out) {
    out << "rho,avg_degree,mean_ari,sd_ari,mean_leaves,runs\n";
    for (const auto& p : points) {
      std::vector<double> aris, leaves;
      for (const auto& run : p.runs) {
        aris.push_back(run.ari);
        leaves.push_back(static_cast<double>(run.leaves));
      }
      const SampleSummary a = summarize(aris);
      const SampleSummary l = summarize(leaves);
      out << csv(p.rho) << ',' << csv(p.degree) << ',' << csv(a.mean) << ',' << csv(a.sd) << ',' << csv(l.mean) << ','
          << p.runs.size() << '\n';
      std::cout << std::left << std::setw(7) << p.rho << std::setw(12) << p.degree << std::setw(12) << a.mean
                << std::setw(12) << a.sd << l.mean << '\n';
    }
  }, ctx.manifest);
}

void sim_sample(const SimContext& ctx) {
  const SbmParams params = model_from_config(ctx.recipe);
  const bool shuffle = ctx.recipe.get_or("shuffle_labels", "false") == "true";
  const SbmSample sample = sample_sbm(params, ctx.seed, shuffle);
  write_file(ctx.dir / "graph.edges", [&](std::ostream& out) {
    out << "# manifest: " << kManifestName << '\n';
    write_edge_list(out, sample.graph);
  }, &ctx.manifest);
  write_file(ctx.dir / "labels.txt", [&](std::ostream& out) {
    out << "# manifest: " << kManifestName << '\n';
    for (NodeIndex i = 0; i < sample.graph.num_nodes(); ++i) out << i << ' ' << sample.true_labels[i] << '\n';
  }, &ctx.manifest);
  std::cout << sample.graph.num_nodes() << " nodes, " << sample.graph.num_edges() << " edges\n";
}

int cmd_simulate(const SimulateOptions& o) {
  const fs::path dir = o.recipes_dir.empty() ? default_recipe_dir() : fs::path(o.recipes_dir);
  const fs::path path = resolve_recipe(o.recipe, dir);
  const KeyValueConfig recipe = KeyValueConfig::load(path);
  const std::uint64_t seed = o.seed ? *o.seed : static_cast<std::uint64_t>(recipe.get_size_or("seed", 1));

  Manifest manifest("simulate", seed);
  manifest.input(path);
  for (const auto& [key, value] : recipe.values()) manifest.config(key, value);
  if (o.runs) manifest.config("runs", *o.runs);
  manifest.config("jobs", o.jobs);

  const fs::path out(o.out);
  make_directory(out);
  const SimContext ctx{recipe, seed, o.jobs, o.runs, out, manifest};
  const std::string kind = recipe.get("recipe");
  if (kind == "tw-convergence") {
    sim_tw_convergence(ctx);
  } else if (kind == "planted-cluster") {
    sim_planted_cluster(ctx);
  } else if (kind == "null-calibration") {
    sim_null_calibration(ctx);
  } else if (kind == "nested-sbm") {
    sim_nested_sbm(ctx);
  } else if (kind == "sample") {
    sim_sample(ctx);
  } else {
    throw InputError(path.string() + ": unknown recipe kind '" + kind + "'");
  }
  finish_directory(out, manifest);
  return kOk;
}

// ---------------------------------------------------------------- eval / validate

Json load_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  try {
    Json j = Json::parse(in);
    if (j.contains("tree")) return j["tree"];
    return j;
  } catch (const Json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::vector<std::vector<std::string>> truth_as_sets(const fs::path& path, const std::string& format) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  if (format == "sets") return read_truth_sets(in);
  std::map<std::string, std::vector<std::string>> by_cluster;
  for (auto& [node, cluster] : read_flat_labels(in)) by_cluster[cluster].push_back(node);
  std::vector<std::vector<std::string>> sets;
  for (auto& [cluster, nodes] : by_cluster) sets.push_back(std::move(nodes));
  return sets;
}

struct EvalOptions {
  std::string tree;
  std::string truth;
  std::string metric;
  std::string truth_format;
};

int cmd_eval(const EvalOptions& o) {
  const LoadedTree loaded = tree_from_json(load_json(o.tree));
  const std::string format = o.truth_format.empty() ? (o.metric == "ari" ? "flat" : "sets") : o.truth_format;
  const auto truth = truth_as_sets(o.truth, format);
  const std::size_t n = loaded.ids.size();

  if (o.metric == "ari") {
    std::vector<int> truth_labels(n, -1);
    std::size_t covered = 0;
    for (std::size_t c = 0; c < truth.size(); ++c) {
      for (const auto& id : truth[c]) {
        const NodeIndex i = loaded.ids.at(id, "truth node not in the tree's universe");
        if (truth_labels[i] != -1) throw InputError("truth node '" + id + "' is in two clusters");
        truth_labels[i] = static_cast<int>(c);
        ++covered;
      }
    }
    if (covered != n) {
      throw InputError("truth covers " + std::to_string(covered) + " of the tree's " + std::to_string(n) +
                       " nodes; ari needs a complete flat labeling");
    }
    const auto found = partition_labels(flatten_leaves(loaded.tree), n);
    std::cout << format_double(adjusted_rand_index(found, truth_labels)) << '\n';
    return kOk;
  }

  std::vector<std::vector<NodeIndex>> sets;
  std::size_t unknown = 0;
  for (const auto& raw : truth) {
    std::vector<NodeIndex> s;
    for (const auto& id : raw) {
      if (const auto i = loaded.ids.find(id)) {
        s.push_back(*i);
      } else {
        ++unknown;
      }
    }
    if (!s.empty()) sets.push_back(std::move(s));
  }
  if (unknown > 0) std::cerr << "warning: ignored " << unknown << " truth entries not in the tree\n";
  if (sets.empty()) throw InputError("no truth cluster overlaps the tree's nodes");
  std::cout << format_double(hierarchical_f_measure(sets, loaded.tree)) << '\n';
  return kOk;
}

struct ValidateOptions {
  std::string tree;
  std::string graph;
};

int cmd_validate(const ValidateOptions& o) {
  std::optional<IdMap> ids;
  if (!o.graph.empty()) ids = IdMap::for_graph(read_edge_list_file(o.graph).graph);
  const LoadedTree loaded = tree_from_json(load_json(o.tree), ids ? &*ids : nullptr);
  const auto problems = validate_tree(loaded.tree, loaded.ids.size());
  if (problems.empty()) {
    std::cout << "valid: " << count_leaves(loaded.tree) << " leaves over " << loaded.ids.size() << " nodes\n";
    return kOk;
  }
  for (const auto& p : problems) std::cout << "invalid: " << p << '\n';
  return kInputError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Community count selection by recursive bipartitioning with a Tracy-Widom test"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  TestOptions test_opts;
  auto* test = app.add_subcommand("test", "Test a graph against the Erdos-Renyi null; prints a JSON report");
  test->add_option("graph", test_opts.graph, "Edge-list file")->required();
  test->add_option("--statistic", test_opts.statistic, "adjacency or laplacian")
      ->check(CLI::IsMember({"adjacency", "laplacian"}))->capture_default_str();
  test->add_option("--bootstrap-samples", test_opts.bootstrap_samples)->check(CLI::Range(2, 1000000))->capture_default_str();
  test->add_option("--seed", test_opts.seed)->capture_default_str();
  test->add_option("--jobs", test_opts.jobs)->check(CLI::PositiveNumber);
  test->add_option("--out", test_opts.out, "Write the report here instead of stdout");

  ClusterOptions cluster_opts;
  auto* cluster = app.add_subcommand("cluster", "Recursive bipartitioning; prints the tree or writes an output directory");
  cluster->add_option("graph", cluster_opts.graph, "Edge-list file")->required();
  cluster->add_option("--alpha", cluster_opts.alpha, "Significance level")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  cluster->add_option("--min-size", cluster_opts.min_size, "Smallest subgraph that is tested; 0 disables")->capture_default_str();
  cluster->add_option("--statistic", cluster_opts.statistic)
      ->check(CLI::IsMember({"adjacency", "laplacian"}))->capture_default_str();
  cluster->add_option("--bootstrap-samples", cluster_opts.bootstrap_samples)->check(CLI::Range(2, 1000000))->capture_default_str();
  cluster->add_option("--seed", cluster_opts.seed)->capture_default_str();
  cluster->add_option("--jobs", cluster_opts.jobs)->check(CLI::PositiveNumber);
  cluster->add_option("--out", cluster_opts.out, "Directory for tree.json, ordering.txt, blocks.csv, manifest.json");

  SimulateOptions sim_opts;
  auto* simulate = app.add_subcommand("simulate", "Run a recipe: tw-convergence, laplacian-fit, planted-cluster, nested-sbm, ...");
  simulate->add_option("recipe", sim_opts.recipe, "Recipe name or path to a recipe file")->required();
  simulate->add_option("--runs", sim_opts.runs, "Override the recipe's run count")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim_opts.seed, "Override the recipe's seed");
  simulate->add_option("--jobs", sim_opts.jobs)->check(CLI::PositiveNumber);
  simulate->add_option("--out", sim_opts.out, "Output directory")->capture_default_str();
  simulate->add_option("--recipes-dir", sim_opts.recipes_dir, "Directory searched for <recipe>.conf");

  EvalOptions eval_opts;
  auto* eval = app.add_subcommand("eval", "Score a tree against ground truth");
  eval->add_option("tree", eval_opts.tree, "Tree JSON from cluster")->required();
  eval->add_option("truth", eval_opts.truth, "Ground-truth file")->required();
  eval->add_option("--metric", eval_opts.metric, "ari (flat leaves) or hf (hierarchical F)")
      ->check(CLI::IsMember({"ari", "hf"}))->required();
  eval->add_option("--truth-format", eval_opts.truth_format,
                   "flat ('node cluster' lines) or sets (one cluster per line); default flat for ari, sets for hf")
      ->check(CLI::IsMember({"flat", "sets"}));

  ValidateOptions validate_opts;
  auto* validate = app.add_subcommand("validate", "Check the structure of a tree JSON");
  validate->add_option("tree", validate_opts.tree, "Tree JSON")->required();
  validate->add_option("--graph", validate_opts.graph, "Edge list whose nodes the root must cover");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*test) return cmd_test(test_opts);
    if (*cluster) return cmd_cluster(cluster_opts);
    if (*simulate) return cmd_simulate(sim_opts);
    if (*eval) return cmd_eval(eval_opts);
    if (*validate) return cmd_validate(validate_opts);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const DegenerateError& e) {
    std::cerr << "degenerate: " << e.what() << '\n';
    return kDegenerate;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << " (best estimate " << e.best_estimate() << ")\n";
    return kSolverFailure;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
