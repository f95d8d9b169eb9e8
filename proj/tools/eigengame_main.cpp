// Experiment runner: dataset synthesis, streaming eigendecomposition runs,
// graph-Laplacian runs, and the dense oracle, all emitting reproducible
// manifests next to their outputs.

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "eigengame/data.hpp"
#include "eigengame/errors.hpp"
#include "eigengame/graph.hpp"
#include "eigengame/io.hpp"
#include "eigengame/linalg.hpp"
#include "eigengame/metrics.hpp"
#include "eigengame/solver.hpp"

namespace fs = std::filesystem;
using namespace eigengame;

namespace {

// Largest graph for which the dense ground-truth decomposition is computed
// automatically to fill the trace metrics.
constexpr std::size_t kAutoOracleNodes = 1024;

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, v);
  return buf;
}

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("expected a boolean, got '" + s + "'");
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

// Applies key=value pairs from a config or manifest file underneath any
// flags given on the command line (flags win, file beats built-in defaults).
// Keys containing '.' are manifest metadata and are skipped.
class KvApplier {
 public:
  KvApplier(CLI::App* cmd, std::string command_name)
      : cmd_(cmd), command_name_(std::move(command_name)) {}

  void on(const std::string& key, std::function<void(const std::string&)> set) {
    setters_[key] = std::move(set);
  }

  void apply(const KvPairs& kv) const {
    for (const auto& [key, value] : kv) {
      if (key.find('.') != std::string::npos) continue;
      if (key == "command") {
        if (value != command_name_)
          throw ConfigError("manifest was written by '" + value +
                            "', not by '" + command_name_ + "'");
        continue;
      }
      const auto it = setters_.find(key);
      if (it == setters_.end())
        throw ConfigError("unknown config key '" + key + "'");
      if (cmd_->count("--" + key) > 0) continue;  // command line wins
      it->second(value);
    }
  }

  bool file_or_cli_sets(const KvPairs& kv, const std::string& key) const {
    if (cmd_->count("--" + key) > 0) return true;
    for (const auto& [k, v] : kv)
      if (k == key) return true;
    return false;
  }

 private:
  CLI::App* cmd_;
  std::string command_name_;
  std::map<std::string, std::function<void(const std::string&)>> setters_;
};

KvPairs load_layer_file(const std::string& config_path,
                        const std::string& manifest_path) {
  if (!config_path.empty() && !manifest_path.empty())
    throw ConfigError("--config and --from-manifest cannot be combined");
  if (!config_path.empty()) return load_kv(config_path);
  if (!manifest_path.empty()) return load_kv(manifest_path);
  return {};
}

struct ManifestWriter {
  explicit ManifestWriter(std::string command) {
    kv.emplace_back("command", std::move(command));
    start = iso8601_utc_now();
  }
  void field(const std::string& key, const std::string& value) {
    kv.emplace_back(key, value);
  }
  void input(const std::string& flag, const fs::path& path) {
    kv.emplace_back("input." + flag + ".fnv1a64", hex64(fnv1a64_file(path)));
  }
  void artifact(const std::string& name, const fs::path& path) {
    kv.emplace_back("artifact." + name, path.string());
  }
  void write(const fs::path& out_dir) {
    kv.emplace_back("time.start", start);
    kv.emplace_back("time.end", iso8601_utc_now());
    save_kv(out_dir / "manifest.txt", kv);
  }
  KvPairs kv;
  std::string start;
};

bool matrix_is_symmetric(const Mat& m) {
  if (m.rows() != m.cols()) return false;
  const double tol = 1e-8 * std::max(1.0, max_abs(m));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r + 1; c < m.cols(); ++c)
      if (std::abs(m(r, c) - m(c, r)) > tol) return false;
  return true;
}

std::string format_v_measure(double v) {
  std::string s = format_double(v);
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find("nan") == std::string::npos)
    s += ".0";
  return s;
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
  long d = 50;
  std::string spectrum = "exp";
  double lambda1 = 1.0;
  double ratio = 0.9;
  double lambda_d = 0.0;  // 0 = default lambda1 / d
  std::uint64_t seed = 0;
  std::string out;
  std::string config_path, manifest_path;
};

int run_synth(const SynthArgs& args) {
  if (args.d < 1) throw ConfigError("synth: --d must be >= 1");
  Spectrum spec;
  if (args.spectrum == "exp") {
    spec = Spectrum::exponential(static_cast<std::size_t>(args.d), args.lambda1,
                                 args.ratio);
  } else if (args.spectrum == "linear") {
    const double lam_d = args.lambda_d > 0.0
                             ? args.lambda_d
                             : args.lambda1 / static_cast<double>(args.d);
    spec = Spectrum::linear(static_cast<std::size_t>(args.d), args.lambda1, lam_d);
  } else {
    throw ConfigError("synth: --spectrum must be 'exp' or 'linear'");
  }
  spec.eigenvalues();  // validate before touching the filesystem

  ManifestWriter manifest("synth");
  const SynthCovariance synth = synth_covariance(spec, args.seed);

  fs::create_directories(args.out);
  const fs::path out(args.out);
  save_matrix(out / "sigma.egm", synth.sigma);
  Mat values(synth.truth.eigenvalues.size(), 1);
  for (std::size_t i = 0; i < synth.truth.eigenvalues.size(); ++i)
    values(i, 0) = synth.truth.eigenvalues[i];
  save_matrix(out / "truth_values.egm", values);
  save_matrix(out / "truth_vectors.egm", synth.truth.eigenvectors);

  manifest.field("d", std::to_string(args.d));
  manifest.field("spectrum", args.spectrum);
  manifest.field("lambda1", format_double(args.lambda1));
  if (args.spectrum == "exp")
    manifest.field("ratio", format_double(args.ratio));
  else
    manifest.field("lambda-d", format_double(args.lambda_d));
  manifest.field("seed", std::to_string(args.seed));
  manifest.field("out", args.out);
  manifest.artifact("sigma", out / "sigma.egm");
  manifest.artifact("truth-values", out / "truth_values.egm");
  manifest.artifact("truth-vectors", out / "truth_vectors.egm");
  manifest.write(out);
  return 0;
}

// ---------------------------------------------------------------------------
// pca

struct PcaArgs {
  std::string data;
  std::string truth;
  SolverConfig solver;
  std::string rule = "mu";
  std::string schedule = "constant";
  std::string profile;
  std::string out;
  std::string config_path, manifest_path;
};

void add_solver_flags(CLI::App* cmd, KvApplier& kv, SolverConfig& cfg,
                      std::string& rule, std::string& schedule) {
  cmd->add_option("--rule", rule, "update rule: mu, alpha, gha, mu-grad");
  kv.on("rule", [&](const std::string& v) { rule = v; });
  cmd->add_option("--steps", cfg.steps, "iterations T");
  kv.on("steps", [&](const std::string& v) { cfg.steps = std::stol(v); });
  cmd->add_option("--batch-size", cfg.batch_size,
                  "samples per iteration (0 = full batch)");
  kv.on("batch-size", [&](const std::string& v) { cfg.batch_size = std::stol(v); });
  cmd->add_option("--shards", cfg.shards, "parallel data shards per iteration");
  kv.on("shards", [&](const std::string& v) { cfg.shards = std::stoi(v); });
  cmd->add_option("--lr", cfg.lr, "step size (constant) or eta0 (inv-t)");
  kv.on("lr", [&](const std::string& v) { cfg.lr = std::stod(v); });
  cmd->add_option("--schedule", schedule, "step schedule: constant, inv-t");
  kv.on("schedule", [&](const std::string& v) { schedule = v; });
  cmd->add_option("--momentum", cfg.momentum, "momentum factor in [0,1)");
  kv.on("momentum", [&](const std::string& v) { cfg.momentum = std::stod(v); });
  cmd->add_flag("--nesterov", cfg.nesterov, "use Nesterov momentum");
  kv.on("nesterov", [&](const std::string& v) { cfg.nesterov = parse_bool(v); });
  cmd->add_flag("--riemannian-projection", cfg.riemannian_projection,
                "project directions onto the sphere tangent space");
  kv.on("riemannian-projection",
        [&](const std::string& v) { cfg.riemannian_projection = parse_bool(v); });
  cmd->add_option("--seed", cfg.seed, "master seed");
  kv.on("seed", [&](const std::string& v) { cfg.seed = std::stoull(v); });
  cmd->add_option("--eval-every", cfg.eval_every, "trace row cadence");
  kv.on("eval-every", [&](const std::string& v) { cfg.eval_every = std::stol(v); });
}

void solver_manifest_fields(ManifestWriter& manifest, const SolverConfig& cfg) {
  manifest.field("rule", to_string(cfg.rule));
  manifest.field("steps", std::to_string(cfg.steps));
  manifest.field("batch-size", std::to_string(cfg.batch_size));
  manifest.field("shards", std::to_string(cfg.shards));
  manifest.field("lr", format_double(cfg.lr));
  manifest.field("schedule", to_string(cfg.schedule));
  manifest.field("momentum", format_double(cfg.momentum));
  manifest.field("nesterov", bool_str(cfg.nesterov));
  manifest.field("riemannian-projection", bool_str(cfg.riemannian_projection));
  manifest.field("seed", std::to_string(cfg.seed));
  manifest.field("eval-every", std::to_string(cfg.eval_every));
}

int run_pca(PcaArgs& args) {
  if (args.data.empty()) throw ConfigError("pca: --data is required");
  if (args.out.empty()) throw ConfigError("pca: --out is required");
  args.solver.rule = parse_update_rule(args.rule);
  args.solver.schedule = parse_schedule(args.schedule);
  args.solver.validate();
  if (args.solver.k < 1) throw ConfigError("pca: --k must be >= 1");

  ManifestWriter manifest("pca");
  const Mat data = load_matrix(args.data);

  CovarianceSource source =
      matrix_is_symmetric(data)
          ? CovarianceSource::explicit_sigma(data)
          : CovarianceSource::row_dataset(Dataset::from_rows(data));

  std::optional<SymEig> truth;
  if (!args.truth.empty()) {
    SymEig t;
    t.eigenvectors = load_matrix(args.truth);
    t.eigenvalues.assign(t.eigenvectors.cols(),
                         std::numeric_limits<double>::quiet_NaN());
    truth = std::move(t);
  } else {
    std::cerr << "warning: no --truth given; streak and subspace-distance "
                 "columns will be nan\n";
  }

  const RunResult result =
      run(args.solver, source, truth ? &*truth : nullptr);

  fs::create_directories(args.out);
  const fs::path out(args.out);
  save_matrix(out / "vectors.egm", result.state.vectors);
  save_trace_csv(out / "trace.csv", result.trace);

  manifest.field("data", args.data);
  if (!args.truth.empty()) manifest.field("truth", args.truth);
  manifest.field("k", std::to_string(args.solver.k));
  solver_manifest_fields(manifest, args.solver);
  if (!args.profile.empty()) manifest.field("profile", args.profile);
  manifest.field("out", args.out);
  manifest.input("data", args.data);
  if (!args.truth.empty()) manifest.input("truth", args.truth);
  manifest.artifact("vectors", out / "vectors.egm");
  manifest.artifact("trace", out / "trace.csv");
  manifest.write(out);
  return 0;
}

// ---------------------------------------------------------------------------
// graph

struct GraphArgs {
  std::string edges;
  GraphConfig graph;
  std::string rule = "mu";
  std::string schedule = "constant";
  std::string lambda_star = "fixed2v";
  int cluster = 0;
  std::string labels;
  std::string out;
  std::string config_path, manifest_path;
};

int run_graph_cmd(GraphArgs& args) {
  if (args.edges.empty()) throw ConfigError("graph: --edges is required");
  if (args.out.empty()) throw ConfigError("graph: --out is required");
  args.graph.base.rule = parse_update_rule(args.rule);
  args.graph.base.schedule = parse_schedule(args.schedule);
  args.graph.lambda_star_mode = parse_lambda_star_mode(args.lambda_star);
  if (args.graph.base.k < 1) throw ConfigError("graph: --k must be >= 1");
  if (args.cluster < 0) throw ConfigError("graph: --cluster must be >= 0");
  ManifestWriter manifest("graph");

  const EdgeList edges = load_edges(args.edges);
  if (static_cast<std::size_t>(args.graph.base.k) >= edges.num_nodes())
    throw ConfigError("graph: --k must be below the node count");

  std::optional<SymEig> truth;
  if (edges.num_nodes() <= kAutoOracleNodes) {
    truth = jacobi_eigh(dense_laplacian(edges));
  } else {
    std::cerr << "warning: graph too large for the dense oracle; trace "
                 "metrics will be nan\n";
  }

  const GraphRunResult result =
      run_graph(args.graph, edges, truth ? &*truth : nullptr);

  fs::create_directories(args.out);
  const fs::path out(args.out);
  save_matrix(out / "vectors.egm", result.vectors);
  save_trace_csv(out / "trace.csv", result.trace);

  manifest.field("edges", args.edges);
  manifest.field("k", std::to_string(args.graph.base.k));
  manifest.field("lambda-star", to_string(args.graph.lambda_star_mode));
  solver_manifest_fields(manifest, args.graph.base);
  if (args.cluster > 0) manifest.field("cluster", std::to_string(args.cluster));
  if (!args.labels.empty()) manifest.field("labels", args.labels);
  manifest.field("out", args.out);
  manifest.input("edges", args.edges);
  manifest.artifact("vectors", out / "vectors.egm");
  manifest.artifact("trace", out / "trace.csv");

  if (args.cluster > 0) {
    const KMeansResult km =
        kmeans(result.vectors, args.cluster, args.graph.base.seed);
    save_labels(out / "labels.csv", km.labeling);
    manifest.artifact("labels", out / "labels.csv");
    if (!args.labels.empty()) {
      const std::vector<int> truth_labels = load_labels(args.labels);
      if (truth_labels.size() != edges.num_nodes())
        throw ConfigError("graph: label file covers " +
                          std::to_string(truth_labels.size()) + " nodes, graph has " +
                          std::to_string(edges.num_nodes()));
      Labeling lt;
      lt.assignments = truth_labels;
      lt.num_clusters = 0;
      for (int a : truth_labels) lt.num_clusters = std::max(lt.num_clusters, a + 1);
      const double v = v_measure(lt, km.labeling);
      std::cout << "v_measure=" << format_v_measure(v) << "\n";
      manifest.input("labels", args.labels);
    }
  }
  manifest.write(out);
  return 0;
}

// ---------------------------------------------------------------------------
// oracle

struct OracleArgs {
  std::string data;
  std::string laplacian;
  bool gram = false;
  std::string out;
  std::string config_path, manifest_path;
};

int run_oracle(OracleArgs& args) {
  if (args.out.empty()) throw ConfigError("oracle: --out is required");
  if (args.data.empty() == args.laplacian.empty())
    throw ConfigError("oracle: pass exactly one of --data or --laplacian");
  ManifestWriter manifest("oracle");

  Mat subject;
  if (!args.laplacian.empty()) {
    subject = dense_laplacian(load_edges(args.laplacian));
  } else {
    const Mat data = load_matrix(args.data);
    if (data.rows() != data.cols() || args.gram) {
      // Gram form: eigendecomposition of X^T X / n.
      subject = matmul_tn(data, data);
      const double inv = 1.0 / static_cast<double>(data.rows());
      for (std::size_t i = 0; i < subject.rows() * subject.cols(); ++i)
        subject.data()[i] *= inv;
    } else if (matrix_is_symmetric(data)) {
      subject = data;
    } else {
      throw ConfigError(
          "oracle: square input is not symmetric; pass --gram to decompose "
          "X^T X / n instead");
    }
  }

  const SymEig eig = jacobi_eigh(subject);

  fs::create_directories(args.out);
  const fs::path out(args.out);
  Mat values(eig.eigenvalues.size(), 1);
  for (std::size_t i = 0; i < eig.eigenvalues.size(); ++i)
    values(i, 0) = eig.eigenvalues[i];
  save_matrix(out / "eigenvalues.csv", values);
  save_matrix(out / "eigenvectors.egm", eig.eigenvectors);

  if (!args.data.empty()) {
    manifest.field("data", args.data);
    manifest.input("data", args.data);
  }
  if (!args.laplacian.empty()) {
    manifest.field("laplacian", args.laplacian);
    manifest.input("laplacian", args.laplacian);
  }
  manifest.field("gram", bool_str(args.gram));
  manifest.field("out", args.out);
  manifest.artifact("eigenvalues", out / "eigenvalues.csv");
  manifest.artifact("eigenvectors", out / "eigenvectors.egm");
  manifest.write(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"streaming top-k eigendecomposition experiments"};
  app.require_subcommand(1);

  SynthArgs synth_args;
  PcaArgs pca_args;
  GraphArgs graph_args;
  OracleArgs oracle_args;

  CLI::App* synth = app.add_subcommand("synth", "synthesize a covariance with a known spectrum");
  KvApplier synth_kv(synth, "synth");
  synth->add_option("--d", synth_args.d, "dimension");
  synth_kv.on("d", [&](const std::string& v) { synth_args.d = std::stol(v); });
  synth->add_option("--spectrum", synth_args.spectrum, "exp or linear");
  synth_kv.on("spectrum", [&](const std::string& v) { synth_args.spectrum = v; });
  synth->add_option("--lambda1", synth_args.lambda1, "largest eigenvalue");
  synth_kv.on("lambda1", [&](const std::string& v) { synth_args.lambda1 = std::stod(v); });
  synth->add_option("--ratio", synth_args.ratio, "exponential decay ratio in (0,1)");
  synth_kv.on("ratio", [&](const std::string& v) { synth_args.ratio = std::stod(v); });
  synth->add_option("--lambda-d", synth_args.lambda_d, "smallest eigenvalue (linear)");
  synth_kv.on("lambda-d", [&](const std::string& v) { synth_args.lambda_d = std::stod(v); });
  synth->add_option("--seed", synth_args.seed, "rotation seed");
  synth_kv.on("seed", [&](const std::string& v) { synth_args.seed = std::stoull(v); });
  synth->add_option("--out", synth_args.out, "output directory");
  synth_kv.on("out", [&](const std::string& v) { synth_args.out = v; });
  synth->add_option("--config", synth_args.config_path, "key=value config file");
  synth->add_option("--from-manifest", synth_args.manifest_path,
                    "reproduce a previous run from its manifest");

  CLI::App* pca = app.add_subcommand("pca", "run a streaming top-k eigensolver");
  KvApplier pca_kv(pca, "pca");
  pca->add_option("--data", pca_args.data,
                  "matrix file; symmetric squares are treated as covariances, "
                  "anything else as sample rows");
  pca_kv.on("data", [&](const std::string& v) { pca_args.data = v; });
  pca->add_option("--truth", pca_args.truth, "ground-truth eigenvector matrix");
  pca_kv.on("truth", [&](const std::string& v) { pca_args.truth = v; });
  pca->add_option("--k", pca_args.solver.k, "number of eigenvectors");
  pca_kv.on("k", [&](const std::string& v) { pca_args.solver.k = std::stoi(v); });
  add_solver_flags(pca, pca_kv, pca_args.solver, pca_args.rule, pca_args.schedule);
  pca->add_option("--profile", pca_args.profile,
                  "named preset (meena: lr 5e-5, momentum 0.9, nesterov)");
  pca_kv.on("profile", [&](const std::string& v) { pca_args.profile = v; });
  pca->add_option("--out", pca_args.out, "output directory");
  pca_kv.on("out", [&](const std::string& v) { pca_args.out = v; });
  pca->add_option("--config", pca_args.config_path, "key=value config file");
  pca->add_option("--from-manifest", pca_args.manifest_path,
                  "reproduce a previous run from its manifest");

  CLI::App* graph = app.add_subcommand("graph", "bottom-k Laplacian eigenvectors from an edge stream");
  KvApplier graph_kv(graph, "graph");
  graph->add_option("--edges", graph_args.edges, "edge list file");
  graph_kv.on("edges", [&](const std::string& v) { graph_args.edges = v; });
  graph->add_option("--k", graph_args.graph.base.k, "number of eigenvectors");
  graph_kv.on("k", [&](const std::string& v) { graph_args.graph.base.k = std::stoi(v); });
  graph->add_option("--lambda-star", graph_args.lambda_star,
                    "shift policy: fixed2v or tracked");
  graph_kv.on("lambda-star", [&](const std::string& v) { graph_args.lambda_star = v; });
  add_solver_flags(graph, graph_kv, graph_args.graph.base, graph_args.rule,
                   graph_args.schedule);
  graph->add_option("--cluster", graph_args.cluster,
                    "run k-means with this many clusters on the result");
  graph_kv.on("cluster", [&](const std::string& v) { graph_args.cluster = std::stoi(v); });
  graph->add_option("--labels", graph_args.labels,
                    "ground-truth labels for the V-measure");
  graph_kv.on("labels", [&](const std::string& v) { graph_args.labels = v; });
  graph->add_option("--out", graph_args.out, "output directory");
  graph_kv.on("out", [&](const std::string& v) { graph_args.out = v; });
  graph->add_option("--config", graph_args.config_path, "key=value config file");
  graph->add_option("--from-manifest", graph_args.manifest_path,
                    "reproduce a previous run from its manifest");

  CLI::App* oracle = app.add_subcommand("oracle", "dense eigendecomposition ground truth");
  KvApplier oracle_kv(oracle, "oracle");
  oracle->add_option("--data", oracle_args.data, "matrix file");
  oracle_kv.on("data", [&](const std::string& v) { oracle_args.data = v; });
  oracle->add_option("--laplacian", oracle_args.laplacian,
                     "edge list file; decomposes its dense Laplacian");
  oracle_kv.on("laplacian", [&](const std::string& v) { oracle_args.laplacian = v; });
  oracle->add_flag("--gram", oracle_args.gram,
                   "decompose X^T X / n even for square input");
  oracle_kv.on("gram", [&](const std::string& v) { oracle_args.gram = parse_bool(v); });
  oracle->add_option("--out", oracle_args.out, "output directory");
  oracle_kv.on("out", [&](const std::string& v) { oracle_args.out = v; });
  oracle->add_option("--config", oracle_args.config_path, "key=value config file");
  oracle->add_option("--from-manifest", oracle_args.manifest_path,
                     "reproduce a previous run from its manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(synth)) {
      synth_kv.apply(load_layer_file(synth_args.config_path, synth_args.manifest_path));
      if (synth_args.out.empty()) throw ConfigError("synth: --out is required");
      return run_synth(synth_args);
    }
    if (app.got_subcommand(pca)) {
      const KvPairs kv = load_layer_file(pca_args.config_path, pca_args.manifest_path);
      pca_kv.apply(kv);
      if (!pca_args.profile.empty()) {
        if (pca_args.profile != "meena")
          throw ConfigError("unknown profile '" + pca_args.profile + "'");
        const SolverConfig preset = SolverConfig::meena_profile();
        if (!pca_kv.file_or_cli_sets(kv, "lr")) pca_args.solver.lr = preset.lr;
        if (!pca_kv.file_or_cli_sets(kv, "momentum"))
          pca_args.solver.momentum = preset.momentum;
        if (!pca_kv.file_or_cli_sets(kv, "nesterov"))
          pca_args.solver.nesterov = preset.nesterov;
      }
      return run_pca(pca_args);
    }
    if (app.got_subcommand(graph)) {
      graph_kv.apply(load_layer_file(graph_args.config_path, graph_args.manifest_path));
      return run_graph_cmd(graph_args);
    }
    if (app.got_subcommand(oracle)) {
      oracle_kv.apply(load_layer_file(oracle_args.config_path, oracle_args.manifest_path));
      return run_oracle(oracle_args);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
