/*
 * Copyright (c) 2026, The balancekit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "balancekit/balancekit.h"

namespace {

struct Failure {
  int status;
  std::string message;
};

void check(bk_status s) {
  if (s != BK_OK) throw Failure{static_cast<int>(s), bk_last_error()};
}

struct GraphDeleter {
  void operator()(bk_graph* g) const { bk_graph_free(g); }
};
using GraphPtr = std::unique_ptr<bk_graph, GraphDeleter>;

struct Common {
  std::string input;
  bool directed = false;
  bool undirected = false;
  std::string dedup = "sum";
  std::uint64_t seed = 42;
  double tol = 1e-8;
  std::string dump_matrix;
  std::string matrix = "L";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("file", c.input, "Edge list: u v sign [time]")->required()->check(CLI::ExistingFile);
  auto* d = cmd->add_flag("--directed", c.directed, "Read arcs as directed");
  auto* u = cmd->add_flag("--undirected", c.undirected, "Read edges as undirected (default)");
  d->excludes(u);
  cmd->add_option("--dedup", c.dedup, "Duplicate rule")
      ->check(CLI::IsMember({"sum", "first", "last"}))
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  cmd->add_option("--tol", c.tol, "Relative eigensolver tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--dump-matrix", c.dump_matrix, "Write a MatrixMarket dump of --matrix to this path");
  cmd->add_option("--matrix", c.matrix, "Matrix for --dump-matrix")
      ->check(CLI::IsMember({"A", "L", "N", "Z"}))
      ->capture_default_str();
}

GraphPtr load(const Common& c) {
  bk_load_options o{c.directed ? 1 : 0, BK_DEDUP_SUM};
  if (c.dedup == "first") o.dedup = BK_DEDUP_FIRST;
  if (c.dedup == "last") o.dedup = BK_DEDUP_LAST;
  bk_graph* g = nullptr;
  check(bk_graph_load(c.input.c_str(), &o, &g));
  GraphPtr out(g);
  if (!c.dump_matrix.empty()) {
    static const std::map<std::string, bk_matrix> kinds = {{"A", BK_MATRIX_ADJACENCY},
                                                           {"L", BK_MATRIX_LAPLACIAN},
                                                           {"N", BK_MATRIX_NORMALIZED_ADJACENCY},
                                                           {"Z", BK_MATRIX_NORMALIZED_LAPLACIAN}};
    check(bk_matrix_write(out.get(), kinds.at(c.matrix), c.dump_matrix.c_str()));
  }
  return out;
}

bk_eigen_options eigen(const Common& c) {
  bk_eigen_options o = bk_eigen_options_default();
  o.tol = c.tol;
  o.seed = c.seed;
  return o;
}

std::string network_name(const std::string& path) { return std::filesystem::path(path).stem().string(); }

std::string fmt(double v, const char* spec = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// Writes to the named file, or stdout for "" and "-".
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw Failure{BK_IO_ERROR, "cannot write " + path};
    }
  }
  std::ostream& get() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

int run_stats(const Common& c) {
  auto g = load(c);
  bk_load_stats s{};
  check(bk_graph_load_stats(g.get(), &s));
  std::cout << "network\tvertices\tedges\tnegative\tcomponents\tdirected\ttimestamps\trecords\tself_loops\t"
               "duplicates\tcancelled\n"
            << network_name(c.input) << '\t' << bk_graph_vertex_count(g.get()) << '\t'
            << bk_graph_edge_count(g.get()) << '\t' << bk_graph_negative_edge_count(g.get()) << '\t'
            << bk_graph_component_count(g.get()) << '\t' << bk_graph_is_directed(g.get()) << '\t'
            << bk_graph_has_timestamps(g.get()) << '\t' << s.records << '\t' << s.self_loops_dropped << '\t'
            << s.duplicates_merged << '\t' << s.pairs_cancelled << '\n';
  return 0;
}

int run_clusco(const Common& c) {
  auto g = load(c);
  bk_clustering r{};
  check(bk_clustering_coefficients(g.get(), &r));
  std::cout << "network\tc\tc_s\tS";
  if (r.has_directed) std::cout << "\tc_dir\tc_s_dir\tS_dir";
  std::cout << "\n" << network_name(c.input) << '\t' << fmt(r.c) << '\t' << fmt(r.c_signed) << '\t'
            << (r.has_relative ? fmt(r.relative) : "NA");
  if (r.has_directed)
    std::cout << '\t' << fmt(r.directed_c) << '\t' << fmt(r.directed_c_signed) << '\t'
              << (r.has_directed_relative ? fmt(r.directed_relative) : "NA");
  std::cout << '\n';
  return 0;
}

int run_balance(const Common& c, const std::string& certificate) {
  auto g = load(c);
  bk_balance* raw = nullptr;
  check(bk_balance_test(g.get(), &raw));
  std::unique_ptr<bk_balance, void (*)(bk_balance*)> b(raw, bk_balance_free);
  const bool balanced = bk_balance_is_balanced(b.get());
  std::cout << "network\tbalanced\tcycle_length\n"
            << network_name(c.input) << '\t' << (balanced ? "yes" : "no") << '\t'
            << bk_balance_cycle_length(b.get()) << '\n';
  if (certificate.empty()) return 0;
  Sink sink(certificate);
  auto& out = sink.get();
  if (balanced) {
    const int* x = bk_balance_switching(b.get());
    out << "vertex\tswitching\n";
    for (std::size_t v = 0; v < bk_graph_vertex_count(g.get()); ++v)
      out << bk_graph_label(g.get(), static_cast<std::uint32_t>(v)) << '\t' << x[v] << '\n';
  } else {
    out << "step\tu\tv\tsign\n";
    for (std::size_t i = 0; i < bk_balance_cycle_length(b.get()); ++i) {
      std::uint32_t u = 0, v = 0;
      int s = 0;
      check(bk_balance_cycle_edge(b.get(), i, &u, &v, &s));
      out << i + 1 << '\t' << bk_graph_label(g.get(), u) << '\t' << bk_graph_label(g.get(), v) << '\t' << s << '\n';
    }
  }
  return 0;
}

int run_conflict(const Common& c, double threshold) {
  auto g = load(c);
  const auto opts = eigen(c);
  double xi = 0.0;
  std::size_t balanced = 0;
  check(bk_algebraic_conflict(g.get(), threshold, &opts, &xi, &balanced));
  std::cout << "network\tvertices\tedges\txi\tbalanced_components\tthreshold\n"
            << network_name(c.input) << '\t' << bk_graph_vertex_count(g.get()) << '\t'
            << bk_graph_edge_count(g.get()) << '\t' << fmt(xi, "%.6g") << '\t' << balanced << '\t'
            << fmt(threshold, "%.3g") << '\n';
  return 0;
}

int run_spectrum(const Common& c, std::size_t k, bool k_given, const std::string& tsv, const std::string& svg) {
  auto g = load(c);
  if (!k_given) k = std::min(k, bk_graph_vertex_count(g.get()));
  const auto opts = eigen(c);
  std::vector<double> values(k);
  std::size_t count = 0;
  check(bk_laplacian_spectrum(g.get(), k, &opts, values.data(), &count));
  values.resize(count);
  Sink sink(tsv);
  sink.get() << "index\teigenvalue\n";
  for (std::size_t i = 0; i < count; ++i) sink.get() << i + 1 << '\t' << fmt(values[i], "%.12g") << '\n';
  if (!svg.empty()) check(bk_spectrum_svg(values.data(), count, svg.c_str()));
  return 0;
}

int run_embed(const Common& c, const std::string& strategy, double mix, const std::string& tsv,
              const std::string& svg) {
  static const std::map<std::string, bk_strategy> names = {{"auto", BK_STRATEGY_AUTO},
                                                           {"first2", BK_STRATEGY_FIRST_TWO},
                                                           {"skip1", BK_STRATEGY_SKIP_FIRST},
                                                           {"combined", BK_STRATEGY_COMBINED}};
  auto g = load(c);
  const auto opts = eigen(c);
  const std::size_t n = bk_graph_vertex_count(g.get());
  std::vector<double> x(n), y(n);
  check(bk_embed(g.get(), names.at(strategy), mix, &opts, x.data(), y.data(), nullptr, 0));
  Sink sink(tsv);
  sink.get() << "vertex_label\tx\ty\n";
  for (std::size_t v = 0; v < n; ++v)
    sink.get() << bk_graph_label(g.get(), static_cast<std::uint32_t>(v)) << '\t' << fmt(x[v], "%.10g") << '\t'
               << fmt(y[v], "%.10g") << '\n';
  if (!svg.empty()) check(bk_embed_svg(g.get(), x.data(), y.data(), svg.c_str()));
  return 0;
}

int run_cluster(const Common& c, const std::string& objective, const std::string& summary) {
  static const std::map<std::string, bk_objective> names = {
      {"ratio", BK_OBJECTIVE_RATIO}, {"ncut", BK_OBJECTIVE_NCUT}, {"adjacency", BK_OBJECTIVE_ADJACENCY}};
  auto g = load(c);
  const auto opts = eigen(c);
  const std::size_t n = bk_graph_vertex_count(g.get());
  std::vector<std::uint8_t> side(n);
  bk_cut_report r{};
  check(bk_cluster(g.get(), names.at(objective), &opts, side.data(), &r));
  std::cout << "vertex\tside\n";
  for (std::size_t v = 0; v < n; ++v)
    std::cout << bk_graph_label(g.get(), static_cast<std::uint32_t>(v)) << '\t' << int(side[v]) << '\n';

  std::ostringstream s;
  s << "objective\tcut_pos\tcut_neg_within\tsigned_cut\tsigned_ratio_cut\tsigned_normalized_cut\n"
    << objective << '\t' << fmt(r.cut_pos, "%.10g") << '\t' << fmt(r.cut_neg_within, "%.10g") << '\t'
    << fmt(r.signed_cut, "%.10g") << '\t' << fmt(r.signed_ratio_cut, "%.10g") << '\t'
    << fmt(r.signed_normalized_cut, "%.10g") << '\n';
  if (summary.empty()) {
    std::cerr << s.str();
  } else {
    Sink sink(summary);
    sink.get() << s.str();
  }
  return 0;
}

std::vector<std::pair<std::string, std::string>> read_pairs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{BK_IO_ERROR, "cannot read " + path};
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '%' || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string a, b;
    if (!(fields >> a >> b)) throw Failure{BK_PARSE_ERROR, "pairs file needs two columns: " + line};
    out.emplace_back(a, b);
  }
  return out;
}

int run_predict(const Common& c, const std::string& kernel, const std::optional<double>& alpha,
                std::size_t rank, std::size_t grid_points, const std::string& pairs_path) {
  auto g = load(c);
  const auto opts = eigen(c);
  const auto pairs = read_pairs(pairs_path);
  std::vector<std::uint32_t> us, vs;
  for (const auto& [a, b] : pairs) {
    std::uint32_t u = 0, v = 0;
    check(bk_graph_find_vertex(g.get(), a.c_str(), &u));
    check(bk_graph_find_vertex(g.get(), b.c_str(), &v));
    us.push_back(u);
    vs.push_back(v);
  }
  bk_kernel* raw = nullptr;
  if (alpha)
    check(bk_kernel_build(g.get(), kernel.c_str(), *alpha, rank, &opts, &raw));
  else
    check(bk_kernel_build_grid(g.get(), kernel.c_str(), rank, grid_points, c.seed, &opts, &raw));
  std::unique_ptr<bk_kernel, void (*)(bk_kernel*)> k(raw, bk_kernel_free);
  std::vector<double> scores(pairs.size());
  check(bk_kernel_score_many(k.get(), pairs.size(), us.data(), vs.data(), scores.data()));
  std::cout << "u\tv\tscore\n";
  for (std::size_t i = 0; i < pairs.size(); ++i)
    std::cout << pairs[i].first << '\t' << pairs[i].second << '\t' << fmt(scores[i], "%.12g") << '\n';
  return 0;
}

struct EvalArgs {
  std::string kernels = "exp,neu,n-exp,n-neu,resi,heat,n-resi";
  std::string split = "auto";
  double train_frac = 0.75;
  std::size_t rank = 128;
  std::optional<double> alpha;
  std::size_t grid_points = 16;
  std::string details;
  std::string name;
};

int run_eval(const Common& c, const EvalArgs& a) {
  auto g = load(c);
  bk_eval_options o = bk_eval_options_default();
  o.train_fraction = a.train_frac;
  o.split = a.split == "time" ? BK_SPLIT_TIME : a.split == "random" ? BK_SPLIT_RANDOM : BK_SPLIT_AUTO;
  o.seed = c.seed;
  o.rank = a.rank;
  o.has_alpha = a.alpha.has_value();
  o.alpha = a.alpha.value_or(0.0);
  o.grid_points = a.grid_points;
  o.eigen = eigen(c);
  bk_eval* raw = nullptr;
  check(bk_evaluate(g.get(), a.kernels.c_str(), &o, &raw));
  std::unique_ptr<bk_eval, void (*)(bk_eval*)> e(raw, bk_eval_free);
  char* text = nullptr;
  check(bk_eval_table(e.get(), (a.name.empty() ? network_name(c.input) : a.name).c_str(), &text));
  std::cout << text;
  bk_string_free(text);
  if (!a.details.empty()) {
    check(bk_eval_details(e.get(), &text));
    Sink sink(a.details);
    sink.get() << text;
    bk_string_free(text);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structural balance analysis of signed graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(bk_version()));
  app.footer("Worker threads are capped by BALANCEKIT_THREADS.");

  std::map<std::string, Common> common;
  auto sub = [&](const char* name, const char* help) {
    auto* cmd = app.add_subcommand(name, help);
    add_common(cmd, common[name]);
    return cmd;
  };

  auto* stats = sub("stats", "Vertex, edge and ingestion counts");
  auto* clusco = sub("clusco", "Clustering coefficients c, c_s and S");

  auto* balance = sub("balance", "Structural balance test");
  std::string certificate;
  balance->add_option("--certificate", certificate, "Write the switching vector or a negative cycle here");

  auto* conflict = sub("conflict", "Algebraic conflict: smallest signed Laplacian eigenvalue");
  double threshold = 1e-6;
  conflict->add_option("--threshold", threshold, "Eigenvalues at or below this count as zero")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  auto* spectrum = sub("spectrum", "Smallest signed Laplacian eigenvalues");
  std::size_t k = 10;
  std::string spectrum_tsv, spectrum_svg;
  auto* k_opt = spectrum->add_option("-k", k, "Number of eigenvalues (at most the vertex count)")
                    ->check(CLI::PositiveNumber)
                    ->capture_default_str();
  spectrum->add_option("--tsv", spectrum_tsv, "Output TSV (stdout by default)");
  spectrum->add_option("--svg", spectrum_svg, "Output SVG plot");

  auto* embed = sub("embed", "Two-dimensional spectral drawing");
  std::string strategy = "auto", embed_tsv, embed_svg;
  double mix = 0.3;
  embed->add_option("--strategy", strategy, "auto|first2|skip1|combined")
      ->check(CLI::IsMember({"auto", "first2", "skip1", "combined"}))
      ->capture_default_str();
  embed->add_option("--mix", mix, "Weight of the third eigenvector in the combined drawing")->capture_default_str();
  embed->add_option("--tsv", embed_tsv, "Output TSV (stdout by default)");
  embed->add_option("--svg", embed_svg, "Output SVG drawing");

  auto* cluster = sub("cluster", "Spectral two-way signed clustering");
  std::string objective = "ratio", summary;
  cluster->add_option("--objective", objective, "ratio|ncut|adjacency")
      ->check(CLI::IsMember({"ratio", "ncut", "adjacency"}))
      ->capture_default_str();
  cluster->add_option("--summary", summary, "Write the cut report here (stderr by default)");

  auto* predict = sub("predict", "Score vertex pairs with a link prediction kernel");
  std::string kernel;
  std::optional<double> alpha;
  bool alpha_grid = false;
  std::size_t rank = 128, grid_points = 16;
  std::string pairs;
  predict->add_option("--kernel", kernel, "exp|neu|n-exp|n-neu|resi|heat|n-resi")
      ->required()
      ->check(CLI::IsMember({"exp", "neu", "n-exp", "n-neu", "resi", "heat", "n-resi"}));
  auto* alpha_opt = predict->add_option("--alpha", alpha, "Kernel parameter");
  predict->add_flag("--alpha-grid", alpha_grid,
                    "Choose alpha by validation AUC over a 16-point log grid starting at 1e-3 (default)")
      ->excludes(alpha_opt);
  predict->add_option("--rank", rank, "Eigenpairs kept")->check(CLI::PositiveNumber)->capture_default_str();
  predict->add_option("--grid-points", grid_points, "Alpha grid size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  predict->add_option("--pairs", pairs, "TSV of vertex label pairs")->required()->check(CLI::ExistingFile);

  auto* eval = sub("eval", "Link prediction AUC table");
  EvalArgs ea;
  eval->add_option("--kernels", ea.kernels, "Comma-separated kernels")->capture_default_str();
  eval->add_option("--split", ea.split, "auto|time|random; auto uses time when every edge has a timestamp")
      ->check(CLI::IsMember({"auto", "time", "random"}))
      ->capture_default_str();
  eval->add_option("--train-frac", ea.train_frac, "Training fraction")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  eval->add_option("--rank", ea.rank, "Eigenpairs kept")->check(CLI::PositiveNumber)->capture_default_str();
  eval->add_option("--alpha", ea.alpha, "Fixed alpha for every kernel; otherwise grid search on a validation split");
  eval->add_option("--grid-points", ea.grid_points, "Alpha grid size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  eval->add_option("--details", ea.details, "Write per-kernel runs here");
  eval->add_option("--name", ea.name, "Network column (file stem by default)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (stats->parsed()) return run_stats(common["stats"]);
    if (clusco->parsed()) return run_clusco(common["clusco"]);
    if (balance->parsed()) return run_balance(common["balance"], certificate);
    if (conflict->parsed()) return run_conflict(common["conflict"], threshold);
    if (spectrum->parsed()) return run_spectrum(common["spectrum"], k, k_opt->count() > 0, spectrum_tsv, spectrum_svg);
    if (embed->parsed()) return run_embed(common["embed"], strategy, mix, embed_tsv, embed_svg);
    if (cluster->parsed()) return run_cluster(common["cluster"], objective, summary);
    if (predict->parsed()) return run_predict(common["predict"], kernel, alpha, rank, grid_points, pairs);
    if (eval->parsed()) return run_eval(common["eval"], ea);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.status;
  }
  return 1;
}
